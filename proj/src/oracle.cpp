#include "treepack/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

#include "treepack/errors.hpp"
#include "treepack/matching.hpp"
#include "treepack/rng.hpp"
#include "treepack/starpath.hpp"

namespace treepack {

namespace {

using Clock = std::chrono::steady_clock;

struct Searcher {
    int n;                                  // host order
    std::vector<const Tree*> order;         // largest first
    std::vector<int> color_of;              // search rank -> original color
    std::vector<std::vector<char>> used;    // host edges taken so far
    SearchStats stats;
    Clock::time_point deadline;
    bool timed_out = false;

    // per-tree BFS orders and parents
    std::vector<std::vector<int>> bfs, parent;
    std::vector<std::vector<int>> image;   // per rank, tree vertex -> host
    std::vector<std::vector<char>> taken;  // per rank, host vertex claimed

    bool out_of_time() {
        if (timed_out) return true;
        if ((stats.nodes & 0xfff) == 0 && Clock::now() > deadline) timed_out = true;
        return timed_out;
    }

    bool place(int rank, int pos, int depth) {
        ++stats.nodes;
        stats.max_depth = std::max(stats.max_depth, depth);
        if (out_of_time()) return false;
        if (pos == static_cast<int>(bfs[rank].size())) {
            if (rank + 1 == static_cast<int>(order.size())) return true;
            return place(rank + 1, 0, depth + 1);
        }
        const Tree& t = *order[rank];
        int v = bfs[rank][pos];
        int par = parent[rank][v];
        int host_lo = 0, host_hi = n;
        if (rank == 0 && pos == 0) host_lo = 0, host_hi = 1;  // pin the first root
        for (int hst = host_lo; hst < host_hi; ++hst) {
            if (taken[rank][hst]) continue;
            if (par != -1) {
                int ph = image[rank][par];
                if (used[ph][hst]) continue;
            }
            // all placed neighbors must be reachable over free edges
            bool ok = true;
            for (int w : t.adj[v])
                if (w != par && image[rank][w] != -1 && used[image[rank][w]][hst]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            image[rank][v] = hst;
            taken[rank][hst] = 1;
            std::vector<int> claimed;
            for (int w : t.adj[v])
                if (image[rank][w] != -1 && w != v) {
                    int ph = image[rank][w];
                    used[ph][hst] = used[hst][ph] = 1;
                    claimed.push_back(ph);
                }
            if (place(rank, pos + 1, depth + 1)) return true;
            for (int ph : claimed) used[ph][hst] = used[hst][ph] = 0;
            taken[rank][hst] = 0;
            image[rank][v] = -1;
            if (timed_out) return false;
        }
        return false;
    }
};

}  // namespace

ExactPackResult exact_pack(const std::vector<Tree>& trees, int host_order,
                           double time_limit_ms) {
    long edge_sum = 0;
    for (const Tree& t : trees) edge_sum += t.m - 1;
    if (edge_sum > 1L * host_order * (host_order - 1) / 2)
        throw malformed_input("trees carry more edges than the host clique");

    Searcher s;
    s.n = host_order;
    std::vector<int> ranks(trees.size());
    std::iota(ranks.begin(), ranks.end(), 0);
    std::stable_sort(ranks.begin(), ranks.end(),
                     [&](int a, int b) { return trees[a].m > trees[b].m; });
    for (int r : ranks) {
        s.order.push_back(&trees[r]);
        s.color_of.push_back(r + 1);
    }
    s.used.assign(host_order, std::vector<char>(host_order, 0));
    s.deadline = Clock::now() + std::chrono::microseconds(
                                    static_cast<long>(time_limit_ms * 1000));

    for (const Tree* t : s.order) {
        // BFS from the highest-degree vertex, lowest label first
        int root = 0;
        for (int v = 0; v < t->m; ++v)
            if (t->deg[v] > t->deg[root]) root = v;
        std::vector<int> bfs{root}, par(t->m, -1);
        std::vector<char> seen(t->m, 0);
        seen[root] = 1;
        for (std::size_t i = 0; i < bfs.size(); ++i)
            for (int w : t->adj[bfs[i]])
                if (!seen[w]) {
                    seen[w] = 1;
                    par[w] = bfs[i];
                    bfs.push_back(w);
                }
        s.bfs.push_back(std::move(bfs));
        s.parent.push_back(std::move(par));
        s.image.emplace_back(t->m, -1);
        s.taken.emplace_back(host_order, 0);
    }

    auto start = Clock::now();
    bool found = !trees.empty() ? s.place(0, 0, 0) : true;
    ExactPackResult out;
    out.stats = s.stats;
    out.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (found) {
        out.stats.outcome = SearchStats::Outcome::packed;
        EdgeColoring col(host_order);
        for (std::size_t r = 0; r < s.order.size(); ++r) {
            const Tree& t = *s.order[r];
            for (auto [u, v] : t.edges())
                col.color_edge(s.image[r][u], s.image[r][v], s.color_of[r]);
        }
        out.coloring = std::move(col);
    } else if (s.timed_out) {
        out.stats.outcome = SearchStats::Outcome::timeout;
    } else {
        out.stats.outcome = SearchStats::Outcome::unsat;
    }
    return out;
}

std::vector<Tree> unlabeled_trees(int m) {
    if (m == 1) return {Tree(1)};
    if (m == 2) return {prufer_decode({}, 2)};
    std::map<std::string, Tree> reps;
    std::vector<int> seq(m - 2, 0);
    while (true) {
        Tree t = prufer_decode(seq, m);
        reps.try_emplace(ahu_canonical(t), std::move(t));
        int pos = m - 3;
        while (pos >= 0 && seq[pos] == m - 1) seq[pos--] = 0;
        if (pos < 0) break;
        ++seq[pos];
    }
    std::vector<Tree> out;
    out.reserve(reps.size());
    for (auto& [code, tree] : reps) out.push_back(std::move(tree));
    return out;
}

TpcReport tpc_exhaust(int n, double per_instance_limit_ms) {
    TpcReport rep;
    rep.n = n;
    std::vector<std::vector<Tree>> shapes;  // shapes[i]: trees on n-i vertices
    for (int order = n; order >= 2; --order) shapes.push_back(unlabeled_trees(order));

    std::vector<std::size_t> pick(shapes.size(), 0);
    while (true) {
        std::vector<Tree> seq;
        seq.reserve(shapes.size());
        for (std::size_t i = 0; i < shapes.size(); ++i) seq.push_back(shapes[i][pick[i]]);
        auto res = exact_pack(seq, n, per_instance_limit_ms);
        ++rep.sequences;
        rep.nodes += res.stats.nodes;
        switch (res.stats.outcome) {
            case SearchStats::Outcome::packed: ++rep.packed; break;
            case SearchStats::Outcome::unsat: ++rep.unsat; break;
            case SearchStats::Outcome::timeout: ++rep.timeout; break;
        }
        int pos = static_cast<int>(pick.size()) - 1;
        while (pos >= 0 && pick[pos] + 1 == shapes[pos].size()) pick[pos--] = 0;
        if (pos < 0) break;
        ++pick[pos];
    }
    return rep;
}

// ---------------------------------------------------------------------------
// claim grids
// ---------------------------------------------------------------------------

namespace {

// random spanning forest of the complete bipartite graph on a+b vertices
std::vector<std::vector<char>> random_bipartite_forest(int a, int b, Rng& rng) {
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) all.emplace_back(i, j);
    rng.shuffle(all);
    std::vector<int> uf(a + b);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    std::vector<std::vector<char>> in(a, std::vector<char>(b, 0));
    for (auto [i, j] : all) {
        int ra = find(i), rb = find(a + j);
        if (ra != rb) {
            uf[rb] = ra;
            in[i][j] = 1;
        }
    }
    return in;
}

}  // namespace

GridReport claim_grid_stars(int max_k, int max_a, int max_b, int trials, std::uint64_t seed) {
    GridReport rep;
    for (int k = 0; k <= max_k; ++k)
        for (int a = k + 1; a <= max_a; ++a)
            for (int b = a + 1; b <= max_b; ++b) {
                ++rep.cells;
                for (int trial = 0; trial < trials; ++trial) {
                    ++rep.trials;
                    Rng rng(mix64(seed, mix64(k * 1000 + a * 100 + b, trial)));
                    // every A-vertex loses exactly k random B-neighbors
                    std::vector<std::vector<char>> avail(a, std::vector<char>(b, 1));
                    for (int i = 0; i < a; ++i) {
                        std::vector<int> cols(b);
                        std::iota(cols.begin(), cols.end(), 0);
                        rng.shuffle(cols);
                        for (int j = 0; j < k; ++j) avail[i][cols[j]] = 0;
                    }
                    // random demands, sometimes at the b-k boundary
                    int budget = b - k;
                    std::vector<int> c(a, 0);
                    if (trial % 2 == 0) {
                        for (int left = budget, i = 0; i < a; ++i) {
                            c[i] = i + 1 == a ? left : rng.below(left + 1);
                            left -= c[i];
                        }
                    } else {
                        for (int i = 0; i < a && budget > 0; ++i) {
                            c[i] = rng.below(budget + 1) / 2;
                            budget -= c[i];
                        }
                    }
                    StarDemand d;
                    for (int i = 0; i < a; ++i) {
                        d.centers.push_back(i);
                        d.leaf_counts.push_back(c[i]);
                    }
                    BipartiteAvail g{a, b, [&](int i, int j) { return avail[i][j] == 1; }};
                    try {
                        auto leaves = pack_star_forest(g, d, k);
                        std::vector<char> claimed(b, 0);
                        for (int i = 0; i < a; ++i) {
                            if (static_cast<int>(leaves[i].size()) != c[i])
                                throw infeasible("demand not met");
                            for (int j : leaves[i]) {
                                if (claimed[j] || !avail[i][j])
                                    throw infeasible("leaf reuse or unavailable edge");
                                claimed[j] = 1;
                            }
                        }
                    } catch (const error& ex) {
                        rep.discrepancies.push_back("stars k=" + std::to_string(k) + " a=" +
                                                    std::to_string(a) + " b=" + std::to_string(b) +
                                                    " trial=" + std::to_string(trial) + ": " +
                                                    ex.what());
                    }
                }
            }
    return rep;
}

GridReport claim_grid_matching(int max_a, int max_b, int trials, std::uint64_t seed) {
    GridReport rep;
    for (int k = 1; k <= 2; ++k)
        for (int a = 4 * k * k + 1; a <= max_a; ++a)
            for (int b = a + k + 1; b <= max_b; ++b) {
                ++rep.cells;
                for (int trial = 0; trial < trials; ++trial) {
                    ++rep.trials;
                    Rng rng(mix64(seed, mix64(k * 10000 + a * 100 + b, trial)));
                    std::vector<std::vector<char>> removed(a, std::vector<char>(b, 0));
                    for (int f = 0; f < k; ++f) {
                        auto forest = random_bipartite_forest(a, b, rng);
                        for (int i = 0; i < a; ++i)
                            for (int j = 0; j < b; ++j)
                                if (forest[i][j]) removed[i][j] = 1;
                    }
                    BipartiteAvail g{a, b, [&](int i, int j) { return !removed[i][j]; }};
                    try {
                        auto dm = matching_after_forests(g, k);
                        for (auto [i, j] : dm.matching)
                            if (removed[i][j])
                                throw infeasible("matched pair uses a removed edge");
                        if (static_cast<int>(dm.matching.size()) < a - k)
                            throw infeasible("matching below a-k");
                    } catch (const error& ex) {
                        rep.discrepancies.push_back("matching k=" + std::to_string(k) + " a=" +
                                                    std::to_string(a) + " b=" + std::to_string(b) +
                                                    " trial=" + std::to_string(trial) + ": " +
                                                    ex.what());
                    }
                }
            }
    return rep;
}

GridReport claim_grid_matching2(int max_a, int trials, std::uint64_t seed) {
    GridReport rep;
    for (int a = 2; a <= max_a; ++a)
        for (int k = 0; 2 * k <= a; ++k) {
            ++rep.cells;
            for (int trial = 0; trial < trials; ++trial) {
                ++rep.trials;
                Rng rng(mix64(seed, mix64(a * 100 + k, trial)));
                std::vector<std::vector<char>> removed(a, std::vector<char>(a, 0));
                for (int f = 0; f < k; ++f) {
                    std::vector<int> perm(a);
                    std::iota(perm.begin(), perm.end(), 0);
                    rng.shuffle(perm);
                    for (int i = 0; i < a; ++i) removed[i][perm[i]] = 1;
                }
                BipartiteAvail g{a, a, [&](int i, int j) { return !removed[i][j]; }};
                try {
                    auto pm = perfect_matching_after_matchings(g, k);
                    if (static_cast<int>(pm.size()) != a) throw infeasible("not perfect");
                    for (auto [i, j] : pm)
                        if (removed[i][j]) throw infeasible("uses a removed edge");
                } catch (const error& ex) {
                    rep.discrepancies.push_back("matching2 a=" + std::to_string(a) + " k=" +
                                                std::to_string(k) + " trial=" +
                                                std::to_string(trial) + ": " + ex.what());
                }
            }
        }
    return rep;
}

GridReport claim_grid_starspaths(int max_k, int pin_trials, std::uint64_t seed) {
    GridReport rep;
    for (int k = 1; k <= max_k; ++k) {
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            ++rep.cells;
            StarPathRequest req;
            req.k = k;
            for (int r = 0; r < k; ++r)
                req.shapes.emplace_back((mask >> r) & 1 ? ShapeKind::Star : ShapeKind::Path,
                                        3 * k - r);
            auto attempt = [&](const StarPathRequest& r2, const std::string& label) {
                ++rep.trials;
                try {
                    StarPathLayout layout = pack_stars_paths(r2);
                    check_layout(r2, layout);
                } catch (const error& ex) {
                    rep.discrepancies.push_back("starspaths k=" + std::to_string(k) + " mask=" +
                                                std::to_string(mask) + " " + label + ": " +
                                                ex.what());
                }
            };
            attempt(req, "plain");
            // pin random distinct centers on the star items
            for (int trial = 0; trial < pin_trials; ++trial) {
                Rng rng(mix64(seed, mix64(k * 1000 + mask, trial)));
                StarPathRequest pinned = req;
                std::vector<int> verts(3 * k);
                std::iota(verts.begin(), verts.end(), 0);
                rng.shuffle(verts);
                int next = 0;
                for (int r = 0; r < k; ++r)
                    if (pinned.shapes[r].first == ShapeKind::Star && rng.below(2) == 0)
                        pinned.star_center_pins[r] = verts[next++];
                attempt(pinned, "pinned trial " + std::to_string(trial));
            }
        }
    }
    return rep;
}

}  // namespace treepack
