#include "treepack/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "treepack/errors.hpp"
#include "treepack/matching.hpp"
#include "treepack/rng.hpp"
#include "treepack/starpath.hpp"
#include "treepack/verify.hpp"
#include "treepack/verify_plan.hpp"

namespace treepack {

namespace {

// floor(x^(1/k)) on non-negative integers
long iroot(long x, int k) {
    if (x < 0) return 0;
    long r = static_cast<long>(std::pow(static_cast<double>(x), 1.0 / k));
    while (r > 0 && [&] {
               long p = 1;
               for (int j = 0; j < k; ++j) p *= r;
               return p > x;
           }())
        --r;
    while (true) {
        long p = 1;
        for (int j = 0; j < k; ++j) p *= (r + 1);
        if (p <= x)
            ++r;
        else
            break;
    }
    return r;
}

void fail_check(bool ok, bool strict, const std::string& name, std::vector<std::string>& warn) {
    if (ok) return;
    if (strict) throw infeasible("strict profile check failed: " + name);
    warn.push_back("profile inequality does not hold at this scale: " + name);
}

}  // namespace

ScaleProfile make_profile(int n, Mode mode, bool strict, const ProfileOverrides& ov) {
    if (n < 2) throw malformed_input("profile requires n >= 2");
    ScaleProfile pf;
    pf.mode = mode;
    pf.n = n;
    pf.strict = strict;

    long n13 = iroot(n, 3);
    long n23 = iroot(1L * n * n, 3);
    long n12 = iroot(n, 2);
    long n14 = iroot(n, 4);
    long n34 = iroot(1L * n * n * n, 4);

    int t_default = mode == Mode::thm1 ? static_cast<int>(n13 / 4) : static_cast<int>(n14 / 10);
    pf.t = ov.t.value_or(t_default);
    if (pf.t < 1) throw infeasible("profile requires t >= 1 (n too small for the default)");
    bool desk = pf.t != t_default;

    if (mode == Mode::thm1) {
        pf.hub_size = 8 * pf.t;
        pf.reserve_size = 8 * pf.t;
        pf.h = desk ? std::max<int>(static_cast<int>(3 * n23 / 4), 12 * pf.t * pf.t)
                    : static_cast<int>(3 * n23 / 4);
        pf.extra_vertex = false;
        if (desk) {
            pf.thresholds.cover_size = std::max<int>(static_cast<int>(n13), 4 * pf.t);
            pf.thresholds.leaf_count = pf.h + 12 * pf.t;
            int main_sz = n - pf.h - pf.reserve_size;
            pf.thresholds.high_degree =
                std::max(1, std::min<int>(static_cast<int>(n23), main_sz / (3 * pf.t) - 1));
        } else {
            pf.thresholds.cover_size = static_cast<int>(n13);
            pf.thresholds.leaf_count = static_cast<int>(n23);
            pf.thresholds.high_degree = static_cast<int>(n23);
        }
        pf.thresholds.bare_path_len = 3 * pf.t + 2;
        pf.thresholds.spaced_count = desk ? pf.h : static_cast<int>(n12);
    } else {
        pf.hub_size = 25 * pf.t;
        pf.reserve_size = 25 * pf.t;
        pf.h = desk ? 50 * pf.t * pf.t : static_cast<int>(n12 / 2);
        pf.extra_vertex = true;
        if (desk) {
            pf.thresholds.cover_size = 10 * pf.t;
            pf.thresholds.leaf_count = pf.h + 33 * pf.t;
            int main_sz = n - pf.h - pf.reserve_size;
            pf.thresholds.high_degree =
                std::max(1, std::min<int>(static_cast<int>(n34), main_sz / (3 * pf.t) - 1));
        } else {
            pf.thresholds.cover_size = static_cast<int>(n14);
            pf.thresholds.leaf_count = static_cast<int>(n12);
            pf.thresholds.high_degree = static_cast<int>(n34);
        }
        pf.thresholds.bare_path_len = 3 * pf.t + 2;
        pf.thresholds.spaced_count = desk ? pf.h : static_cast<int>(n12);
    }

    if (ov.h) pf.h = *ov.h;
    if (ov.extra_vertex) pf.extra_vertex = *ov.extra_vertex;
    if (ov.cover_size) pf.thresholds.cover_size = *ov.cover_size;
    if (ov.leaf_count) pf.thresholds.leaf_count = *ov.leaf_count;
    if (ov.high_degree) pf.thresholds.high_degree = *ov.high_degree;
    if (ov.spaced_count) pf.thresholds.spaced_count = *ov.spaced_count;

    // hard geometry, any profile
    int t = pf.t, h = pf.h;
    if (1L * pf.hub_size * t >= h)
        throw infeasible("profile: hub_size*t = " + std::to_string(pf.hub_size * t) +
                         " must stay below h = " + std::to_string(h));
    if (n - h - pf.reserve_size <= 0) throw infeasible("profile: zones exceed the host order");
    if (mode == Mode::thm2 && h < 37 * t)
        throw infeasible("profile: h must be at least 37t for the completion targets");
    if (mode == Mode::thm1 && h < 8 * t + t)
        throw infeasible("profile: h must be at least 9t for the completion targets");

    // asymptotic inequalities: errors in strict mode, warnings otherwise
    auto& warn = pf.warnings;
    long hd = pf.thresholds.high_degree;
    if (mode == Mode::thm1) {
        fail_check(8L * t * t < h, strict, "8t^2 < h", warn);
        for (int i = 2; i <= t; ++i) {
            fail_check(4L * (i - 1) * (i - 1) <= 8L * t * (i - 1), strict,
                       "4(i-1)^2 <= 8t(i-1)", warn);
            fail_check(8L * t * (i - 1) + (i - 1) < h - (t - 1) - (i - 1), strict,
                       "|hubs(<i)| + (i-1) < |N_i|", warn);
        }
        for (int i = 1; i <= t; ++i) {
            long a2 = h - 8L * t * i;
            long unfinished = (h - (t - 1) - (i - 1)) - std::max(0L, 8L * t * (i - 1) - (i - 1));
            fail_check(4L * (t - 1) * (t - 1) < a2, strict, "4(t-1)^2 < h - 8ti", warn);
            fail_check(a2 + (t - 1) < unfinished, strict, "h - 8ti + (t-1) < unfinished N_i",
                       warn);
        }
        fail_check(3L * t * hd < n - h - 8L * t, strict, "3t*high_degree < n - h - 8t", warn);
    } else {
        fail_check(25L * t * t < h, strict, "25t^2 < h", warn);
        fail_check(4L * (t - 1) * (t - 1) < h - 25L * t, strict, "4(t-1)^2 < h - 25t", warn);
        fail_check(16L * (t - 1) * (t - 1) < h - 28L * t, strict, "16(t-1)^2 < h - 28t", warn);
        for (int i = 1; i <= t; ++i) {
            fail_check(h - 25L * t < (h - 2L * t - (i - 1)) - (t - 1), strict,
                       "h - 25t < |N_i| - (t-1)", warn);
            fail_check(h - 28L * t < (h - 3L * t - 8L * t - (i - 1)) - 2L * (t - 1), strict,
                       "h - 28t < |N_i'| - 2(t-1)", warn);
        }
        fail_check(h >= 30L * t, strict, "h >= 30t", warn);
        fail_check(3L * t * hd < n - h - 25L * t, strict, "3t*high_degree < n - h - 25t", warn);
    }
    return pf;
}

TreeClass classify_for(const Tree& t, const ScaleProfile& pf) {
    return classify(t, pf.thresholds);
}

// ---------------------------------------------------------------------------
// partition
// ---------------------------------------------------------------------------

namespace {

// Completes `H` up to `target` vertices from `eligible` candidates,
// preferring vertices outside `protect` (the completion-leaf supply).
void pad_hub(std::vector<int>& H, std::vector<char>& in_H, int target,
             const std::vector<char>& eligible, const std::vector<char>& protect, int m,
             int index) {
    for (int pass = 0; pass < 2 && static_cast<int>(H.size()) < target; ++pass)
        for (int v = 0; v < m && static_cast<int>(H.size()) < target; ++v) {
            if (in_H[v] || !eligible[v]) continue;
            if (pass == 0 && protect[v]) continue;
            in_H[v] = 1;
            H.push_back(v);
        }
    if (static_cast<int>(H.size()) != target)
        throw infeasible("partition: tree " + std::to_string(index) + " cannot fill a hub of " +
                         std::to_string(target) + " vertices");
}

std::vector<int> high_degree_vertices(const Tree& t, int threshold) {
    std::vector<int> out;
    for (int v = 0; v < t.m; ++v)
        if (t.deg[v] > threshold) out.push_back(v);
    return out;
}

}  // namespace

PlanEntry partition_tree(const Tree& tr, int index, const TreeClass& cls, const ScaleProfile& pf,
                         int tp, int tpp, int pp) {
    PlanEntry e;
    e.tag = cls.tag;
    e.star = cls.star;
    e.tp = tp;
    e.tpp = tpp;
    e.pp = pp;
    const int m = tr.m;
    const int t = pf.t, h = pf.h, hub = pf.hub_size;
    if (m != pf.n - index + 1)
        throw malformed_input("partition: tree " + std::to_string(index) + " has wrong order");

    std::vector<char> in_H(m, 0), used(m, 0);  // used = S/Y/v/P members
    auto put_H = [&](int v) {
        if (!in_H[v]) {
            in_H[v] = 1;
            e.H.push_back(v);
        }
    };

    if (cls.tag == TreeTag::TypeI) {
        std::vector<int> own_leaves;  // leaves of x, ascending
        if (pf.mode == Mode::thm2) {
            e.x = cls.cover.empty() ? -1 : cls.cover[0];
            if (e.x < 0) throw infeasible("partition: type I tree without a cover");
            for (int w : tr.adj[e.x])
                if (tr.deg[w] == 1) own_leaves.push_back(w);
            int s_size = 3 * t - (tp + pp) - 1;
            int y_size = 2 * t;
            int need = s_size + y_size + (cls.star ? 1 : 0);
            if (static_cast<int>(own_leaves.size()) < need)
                throw infeasible("partition: tree " + std::to_string(index) + " center has " +
                                 std::to_string(own_leaves.size()) + " leaves, needs " +
                                 std::to_string(need));
            e.S.assign(own_leaves.begin(), own_leaves.begin() + s_size);
            e.Y.assign(own_leaves.begin() + s_size, own_leaves.begin() + s_size + y_size);
            if (cls.star) {
                e.v = own_leaves[s_size + y_size];
            } else {
                for (int w = 0; w < m && e.u == -1; ++w) {
                    if (w == e.x || tr.deg[w] == 1) continue;
                    for (int z : tr.adj[w])
                        if (tr.deg[z] == 1) {
                            e.u = w;
                            e.v = z;
                            break;
                        }
                }
                if (e.u == -1)
                    throw invariant_violation("non-star tree has all leaves at one vertex");
            }
            for (int w : e.S) used[w] = 1;
            for (int w : e.Y) used[w] = 1;
            used[e.v] = 1;
            put_H(e.x);
            if (e.u != -1) put_H(e.u);
        }
        for (int w : high_degree_vertices(tr, pf.thresholds.high_degree)) put_H(w);
        for (int w : cls.cover)
            if (!used[w]) put_H(w);
        if (static_cast<int>(e.H.size()) > hub)
            throw infeasible("partition: tree " + std::to_string(index) + " needs " +
                             std::to_string(e.H.size()) + " required hub vertices, hub holds " +
                             std::to_string(hub));
        std::vector<char> eligible(m, 0), protect(m, 0);
        for (int v = 0; v < m; ++v) {
            eligible[v] = !used[v];
            protect[v] = tr.deg[v] == 1;  // any leaf may still serve the completion
        }
        pad_hub(e.H, in_H, hub, eligible, protect, m, index);

        int l_size = h - static_cast<int>(e.S.size()) - static_cast<int>(e.Y.size()) -
                     (e.v >= 0 ? 1 : 0) - (index - 1);
        if (l_size < 0)
            throw infeasible("partition: negative completion-leaf demand for tree " +
                             std::to_string(index));
        for (int v = 0; v < m && static_cast<int>(e.L.size()) < l_size; ++v) {
            if (tr.deg[v] != 1 || used[v] || in_H[v]) continue;
            if (in_H[tr.adj[v][0]]) e.L.push_back(v);
        }
        if (static_cast<int>(e.L.size()) < l_size)
            throw infeasible("partition: tree " + std::to_string(index) + " supplies " +
                             std::to_string(e.L.size()) + " hub-adjacent leaves, needs " +
                             std::to_string(l_size));
        for (int v : e.L) e.N.push_back(tr.adj[v][0]);  // centers, all in H
    } else if (cls.tag == TreeTag::TypeII) {
        int y_size = pf.mode == Mode::thm1 ? t - 1 : 2 * t;
        if (static_cast<int>(cls.indep_leaves.size()) < y_size)
            throw infeasible("partition: tree " + std::to_string(index) +
                             " lacks independent leaves for Y");
        e.Y.assign(cls.indep_leaves.begin(), cls.indep_leaves.begin() + y_size);
        for (int y : e.Y) {
            used[y] = 1;
            e.X.push_back(tr.adj[y][0]);
            put_H(e.X.back());
        }
        for (int w : high_degree_vertices(tr, pf.thresholds.high_degree)) put_H(w);
        if (static_cast<int>(e.H.size()) > hub)
            throw infeasible("partition: tree " + std::to_string(index) +
                             " required hub part exceeds hub size");
        std::vector<char> eligible(m, 0), protect(m, 0);
        for (int v = 0; v < m; ++v) eligible[v] = !used[v];
        for (std::size_t j = y_size; j < cls.indep_leaves.size(); ++j) {
            int leaf = cls.indep_leaves[j];
            protect[leaf] = 1;
            protect[tr.adj[leaf][0]] = 1;  // padding here would disqualify the leaf
        }
        pad_hub(e.H, in_H, hub, eligible, protect, m, index);

        int l_size = h - y_size - (index - 1);
        for (std::size_t j = y_size;
             j < cls.indep_leaves.size() && static_cast<int>(e.L.size()) < l_size; ++j) {
            int leaf = cls.indep_leaves[j];
            if (in_H[leaf] || in_H[tr.adj[leaf][0]]) continue;
            e.L.push_back(leaf);
            e.N.push_back(tr.adj[leaf][0]);
        }
        if (static_cast<int>(e.L.size()) < l_size)
            throw infeasible("partition: tree " + std::to_string(index) + " supplies " +
                             std::to_string(e.L.size()) + " independent completion leaves, needs " +
                             std::to_string(l_size));
        for (int v : e.L) used[v] = 1;
    } else {  // PathLike
        int p_size = 3 * t - (tp + pp);
        if (static_cast<int>(cls.bare_path.size()) < p_size)
            throw infeasible("partition: bare-path certificate shorter than required");
        e.P.assign(cls.bare_path.begin(), cls.bare_path.begin() + p_size);
        for (int v : e.P) used[v] = 1;
        // outside neighbors of the window ends
        auto outer = [&](int end, int inner) {
            for (int w : tr.adj[end])
                if (w != inner) return w;
            return -1;
        };
        e.path_outer[0] = outer(e.P.front(), p_size > 1 ? e.P[1] : -1);
        e.path_outer[1] = outer(e.P.back(), p_size > 1 ? e.P[p_size - 2] : -1);
        if (e.path_outer[0] < 0 || e.path_outer[1] < 0 || e.path_outer[0] == e.path_outer[1])
            throw invariant_violation("bare path window lacks distinct outside neighbors");
        put_H(e.path_outer[0]);
        put_H(e.path_outer[1]);

        int y_size = 8 * t;
        if (static_cast<int>(cls.spaced.size()) < y_size)
            throw infeasible("partition: spaced certificate too small for Y");
        e.Y.assign(cls.spaced.begin(), cls.spaced.begin() + y_size);
        for (int y : e.Y) {
            used[y] = 1;
            e.X.push_back(tr.adj[y][0]);
            e.X.push_back(tr.adj[y][1]);
            put_H(tr.adj[y][0]);
            put_H(tr.adj[y][1]);
        }
        if (static_cast<int>(e.X.size()) != 2 * y_size)
            throw invariant_violation("spaced family produced shared neighbors");
        for (int w : high_degree_vertices(tr, pf.thresholds.high_degree)) put_H(w);
        if (static_cast<int>(e.H.size()) > hub)
            throw infeasible("partition: tree " + std::to_string(index) +
                             " required hub part exceeds hub size");
        std::vector<char> eligible(m, 0), protect(m, 0);
        for (int v = 0; v < m; ++v) eligible[v] = !used[v];
        for (std::size_t j = y_size; j < cls.spaced.size(); ++j) {
            int d2 = cls.spaced[j];
            protect[d2] = 1;
            for (int w : tr.adj[d2]) protect[w] = 1;
        }
        pad_hub(e.H, in_H, hub, eligible, protect, m, index);

        int l_size = h - p_size - y_size - (index - 1);
        for (std::size_t j = y_size; j < cls.spaced.size() && static_cast<int>(e.L.size()) < l_size;
             ++j) {
            int d2 = cls.spaced[j];
            if (in_H[d2] || in_H[tr.adj[d2][0]] || in_H[tr.adj[d2][1]]) continue;
            e.L.push_back(d2);
            e.N.push_back(tr.adj[d2][0]);
            e.N.push_back(tr.adj[d2][1]);
        }
        if (static_cast<int>(e.L.size()) < l_size)
            throw infeasible("partition: tree " + std::to_string(index) + " supplies " +
                             std::to_string(e.L.size()) + " spaced completion vertices, needs " +
                             std::to_string(l_size));
        for (int v : e.L) used[v] = 1;
    }

    // the remainder is the forest part; its size is forced by the arithmetic
    std::vector<char> taken(m, 0);
    for (int v : e.H) taken[v] = 1;
    for (int v : e.S) taken[v] = 1;
    for (int v : e.Y) taken[v] = 1;
    for (int v : e.L) taken[v] = 1;
    for (int v : e.P) taken[v] = 1;
    if (e.v >= 0) taken[e.v] = 1;
    std::vector<int> tree_of;
    std::vector<int> forest_label(m, -1);
    for (int v = 0; v < m; ++v)
        if (!taken[v]) {
            forest_label[v] = static_cast<int>(tree_of.size());
            tree_of.push_back(v);
        }
    int expect = pf.n - h - pf.reserve_size;
    if (static_cast<int>(tree_of.size()) != expect)
        throw invariant_violation("partition arithmetic broken: forest part has " +
                                  std::to_string(tree_of.size()) + " vertices, expected " +
                                  std::to_string(expect));
    std::vector<std::pair<int, int>> fedges;
    for (int v = 0; v < m; ++v) {
        if (taken[v]) continue;
        for (int w : tr.adj[v])
            if (!taken[w] && v < w) fedges.emplace_back(forest_label[v], forest_label[w]);
    }
    e.F = Forest::from_edges(expect, std::move(fedges));
    e.forest_to_tree = std::move(tree_of);
    // every completion neighbor must sit in the forest part (type II /
    // path-like) or the hub (type I)
    for (int w : e.N)
        if (cls.tag == TreeTag::TypeI ? !in_H[w] : taken[w])
            throw invariant_violation("completion neighbor landed in the wrong part");
    e.img.assign(m, -1);
    return e;
}

// ---------------------------------------------------------------------------
// pack
// ---------------------------------------------------------------------------

namespace {

struct Ctx {
    const TreeFamily& fam;
    const ScaleProfile& pf;
    EdgeColoring col;
    HostZones z;
    std::vector<PlanEntry> plans;                 // index 0 = tree 1
    std::vector<std::vector<int>> colordeg;       // per color, per host vertex
    std::vector<int> k3t_slots;                   // host slots of the star/path clique
    std::vector<char> in_k3t;                     // per host vertex
    std::vector<char> in_some_hub;                // per host vertex
    std::vector<int> x_slot;                      // per tree, -1 unless type I (thm2)
    std::vector<std::string>* log;

    Ctx(const TreeFamily& f, const ScaleProfile& p, std::vector<std::string>* log)
        : fam(f), pf(p), col(f.host_order()), log(log) {
        z = HostZones::make(f.host_order(), p.h, p.reserve_size, p.extra_vertex);
        colordeg.assign(p.t + 1, std::vector<int>(f.host_order(), 0));
        in_k3t.assign(f.host_order(), 0);
        in_some_hub.assign(f.host_order(), 0);
        x_slot.assign(p.t + 1, -1);
    }

    void note(const std::string& s) {
        if (log) log->push_back(s);
    }

    void paint(int hu, int hv, int c) {
        col.color_edge(hu, hv, c);
        ++colordeg[c][hu];
        ++colordeg[c][hv];
    }

    int hub_free_count(int c) const {
        int free_slots = 0;
        for (int s = z.hub_begin; s < z.hub_end; ++s)
            if (colordeg[c][s] == 0) ++free_slots;
        return free_slots;
    }

    void assert_hub_free(int i, int expected) const {
        int got = hub_free_count(i);
        if (got != expected)
            throw invariant_violation("accounting: color " + std::to_string(i) + " leaves " +
                                      std::to_string(got) + " hub vertices unfinished, expected " +
                                      std::to_string(expected));
    }
};

// stage 2: forests into the main zone
void stage_forests(Ctx& c, const EmbedBudget& budget) {
    std::vector<Forest> forests;
    forests.reserve(c.pf.t);
    for (auto& e : c.plans) forests.push_back(e.F);
    std::vector<std::string> warn;
    auto maps = pack_forests(forests, c.z.main_size(), budget, c.col, c.z.main_begin, &warn);
    for (const auto& w : warn) c.note("stage=forests warn=\"" + w + "\"");
    for (int i = 0; i < c.pf.t; ++i) {
        PlanEntry& e = c.plans[i];
        for (int fl = 0; fl < e.F.m; ++fl) e.img[e.forest_to_tree[fl]] = maps[i][fl];
        for (auto [u, v] : e.F.edges) {
            ++c.colordeg[i + 1][maps[i][u]];
            ++c.colordeg[i + 1][maps[i][v]];
        }
    }
}

// stage 3: hubs on disjoint hub slots; color all hub-hub and hub-forest
// edges of each tree
void stage_hubs(Ctx& c) {
    for (int i = 1; i <= c.pf.t; ++i) {
        PlanEntry& e = c.plans[i - 1];
        std::vector<int> members = e.H;
        std::sort(members.begin(), members.end());
        int base = c.z.hub_begin + (i - 1) * c.pf.hub_size;
        for (std::size_t r = 0; r < members.size(); ++r) {
            e.img[members[r]] = base + static_cast<int>(r);
            c.in_some_hub[base + static_cast<int>(r)] = 1;
        }
        if (e.x >= 0) c.x_slot[i] = e.img[e.x];
        std::vector<char> in_H(c.fam.trees[i - 1].m, 0);
        for (int v : e.H) in_H[v] = 1;
        const Tree& tr = c.fam.trees[i - 1];
        for (int v : e.H)
            for (int w : tr.adj[v]) {
                bool forest_side = e.img[w] != -1 && c.z.in_main(e.img[w]);
                if ((in_H[w] && v < w) || forest_side) c.paint(e.img[v], e.img[w], i);
            }
    }
}

// stage 4 (thm2): pack the star/path clique, embed it into the hub zone
// pinning each type I center on its hub slot, color the items and their
// path connectors, then settle the leftover leaf of every type I tree
// (case A: on the connector partner when the center ends a path, else on
// a fresh hub slot; case B, stars only: on the extra vertex).
void stage_starpath(Ctx& c) {
    std::vector<int> item_tree;  // item rank -> tree index
    for (int i = 1; i <= c.pf.t; ++i)
        if (c.plans[i - 1].tag != TreeTag::TypeII) item_tree.push_back(i);
    if (item_tree.empty()) return;

    StarPathRequest req;
    req.k = c.pf.t;
    for (std::size_t r = 0; r < item_tree.size(); ++r) {
        const PlanEntry& e = c.plans[item_tree[r] - 1];
        int order = 3 * c.pf.t - static_cast<int>(r);
        if (e.tag == TreeTag::TypeI) {
            if (static_cast<int>(e.S.size()) + 1 != order)
                throw invariant_violation("star item order mismatch");
            req.shapes.emplace_back(ShapeKind::Star, order);
        } else {
            if (static_cast<int>(e.P.size()) != order)
                throw invariant_violation("path item order mismatch");
            req.shapes.emplace_back(ShapeKind::Path, order);
        }
    }
    StarPathLayout layout = pack_stars_paths(req);

    // local -> host: centers ride on their trees' x slots, the rest on
    // fresh hub slots outside every hub part
    int n3 = 3 * c.pf.t;
    std::vector<int> to_host(n3, -1);
    for (std::size_t r = 0; r < item_tree.size(); ++r)
        if (layout.star_centers[r] >= 0)
            to_host[layout.star_centers[r]] = c.x_slot[item_tree[r]];
    int cursor = c.z.hub_begin;
    for (int local = 0; local < n3; ++local) {
        if (to_host[local] != -1) continue;
        while (cursor < c.z.hub_end && c.in_some_hub[cursor]) ++cursor;
        if (cursor >= c.z.hub_end)
            throw infeasible("hub zone cannot absorb the star/path clique");
        to_host[local] = cursor++;
    }
    for (int local = 0; local < n3; ++local) c.in_k3t[to_host[local]] = 1;
    c.k3t_slots.assign(n3, -1);
    for (int local = 0; local < n3; ++local) c.k3t_slots[local] = to_host[local];

    // color items and remember connector partners per path end
    std::vector<std::pair<int, int>> end_partner;  // (endpoint host, partner hub slot)
    for (std::size_t r = 0; r < item_tree.size(); ++r) {
        int i = item_tree[r];
        PlanEntry& e = c.plans[i - 1];
        const std::vector<int>& item = layout.item_vertices[r];
        if (e.tag == TreeTag::TypeI) {
            for (std::size_t j = 1; j < item.size(); ++j) {
                int slot = to_host[item[j]];
                c.paint(to_host[item[0]], slot, i);
                e.img[e.S[j - 1]] = slot;
            }
        } else {
            for (std::size_t j = 0; j < item.size(); ++j) e.img[e.P[j]] = to_host[item[j]];
            for (std::size_t j = 0; j + 1 < item.size(); ++j)
                c.paint(to_host[item[j]], to_host[item[j + 1]], i);
            int q0 = to_host[item.front()], q1 = to_host[item.back()];
            c.paint(q0, e.img[e.path_outer[0]], i);
            c.paint(q1, e.img[e.path_outer[1]], i);
            end_partner.emplace_back(q0, e.img[e.path_outer[0]]);
            end_partner.emplace_back(q1, e.img[e.path_outer[1]]);
        }
    }

    // case A / case B
    for (std::size_t r = 0; r < item_tree.size(); ++r) {
        int i = item_tree[r];
        PlanEntry& e = c.plans[i - 1];
        if (e.tag != TreeTag::TypeI) continue;
        if (e.star) {
            if (c.z.extra < 0)
                throw infeasible("a star tree needs the extra host vertex (kn1 variant)");
            e.img[e.v] = c.z.extra;
            c.paint(c.x_slot[i], c.z.extra, i);
            continue;
        }
        int partner = -1;
        for (auto [endpoint, hub_nb] : end_partner)
            if (endpoint == c.x_slot[i]) partner = hub_nb;
        if (partner != -1) {
            e.img[e.v] = partner;
            c.paint(e.img[e.u], partner, i);
        } else {
            int q = -1;
            for (int s = c.z.hub_begin; s < c.z.hub_end && q == -1; ++s)
                if (!c.in_some_hub[s] && !c.in_k3t[s] && c.colordeg[i][s] == 0 &&
                    c.col.uncolored(e.img[e.u], s))
                    q = s;
            if (q == -1) throw infeasible("no fresh hub slot for the leftover leaf");
            e.img[e.v] = q;
            c.paint(e.img[e.u], q, i);
        }
    }
}

// Selects a sub-matching so that exactly `target_miss` A-slots stay
// unmatched, dropping the highest-labeled matched slots first.
Matching trim_matching(Matching m, const std::vector<int>& a_slots, int target_miss,
                       int a_size) {
    int want = a_size - target_miss;
    if (want < 0 || want > static_cast<int>(m.size()))
        throw invariant_violation("matching cannot reach the prescribed miss count");
    std::sort(m.begin(), m.end(), [&](const auto& p, const auto& q) {
        return a_slots[p.first] < a_slots[q.first];
    });
    m.resize(want);
    return m;
}

// completion of one type II tree (both modes share steps 2..4; thm1 adds
// the first matching against the hubs of the larger trees)
void complete_type_ii(Ctx& c, int i) {
    PlanEntry& e = c.plans[i - 1];
    const int t = c.pf.t;
    std::vector<char> done(e.L.size(), 0);

    auto avail_pool = [&](const std::vector<int>& slots) {
        return [&c, &e, &slots, i](int a, int b) {
            return c.colordeg[i][slots[a]] == 0 &&
                   c.col.uncolored(slots[a], e.img[e.N[b]]);
        };
    };
    auto color_selected = [&](const Matching& sel, const std::vector<int>& slots) {
        for (auto [a, b] : sel) {
            c.paint(slots[a], e.img[e.N[b]], i);
            e.img[e.L[b]] = slots[a];
            done[b] = 1;
        }
    };
    auto pending = [&]() {
        std::vector<int> out;
        for (std::size_t j = 0; j < e.L.size(); ++j)
            if (!done[j]) out.push_back(static_cast<int>(j));
        return out;
    };

    if (c.pf.mode == Mode::thm1) {
        // leaves onto the hubs of the larger trees, all but i-1 of them
        std::vector<int> slots;
        for (int j = 1; j < i; ++j) {
            int base = c.z.hub_begin + (j - 1) * c.pf.hub_size;
            for (int s = base; s < base + c.pf.hub_size; ++s) slots.push_back(s);
        }
        std::sort(slots.begin(), slots.end());
        if (!slots.empty()) {
            BipartiteAvail g{static_cast<int>(slots.size()), static_cast<int>(e.L.size()),
                             avail_pool(slots)};
            auto dm = matching_after_forests(g, i - 1);
            color_selected(trim_matching(dm.matching, slots, i - 1, g.a_size), slots);
        }
        // then all but t-1 of the rest of the hub zone
        std::vector<int> rest;
        int covered_end = c.z.hub_begin + i * c.pf.hub_size;
        for (int s = covered_end; s < c.z.hub_end; ++s) rest.push_back(s);
        std::vector<int> open = pending();
        BipartiteAvail g2{static_cast<int>(rest.size()), static_cast<int>(open.size()),
                          [&](int a, int b) {
                              return c.colordeg[i][rest[a]] == 0 &&
                                     c.col.uncolored(rest[a], e.img[e.N[open[b]]]);
                          }};
        auto dm2 = matching_after_forests(g2, t - 1);
        Matching sel = trim_matching(dm2.matching, rest, t - 1, g2.a_size);
        for (auto [a, b] : sel) {
            c.paint(rest[a], e.img[e.N[open[b]]], i);
            e.img[e.L[open[b]]] = rest[a];
            done[open[b]] = 1;
        }
        // Y rides on the exact t-1 slots left open; those edges are fresh
        std::vector<int> free_slots;
        for (int s : rest)
            if (c.colordeg[i][s] == 0) free_slots.push_back(s);
        if (static_cast<int>(free_slots.size()) != t - 1 ||
            static_cast<int>(e.Y.size()) != t - 1)
            throw invariant_violation("type II round: late-leaf slot count is off");
        for (std::size_t j = 0; j < e.Y.size(); ++j) {
            if (!c.col.uncolored(e.img[e.X[j]], free_slots[j]))
                throw invariant_violation("type II round: reserved edge already colored");
            c.paint(e.img[e.X[j]], free_slots[j], i);
            e.img[e.Y[j]] = free_slots[j];
        }
    } else {
        // all but 2t+(i-1) of the hub zone outside this tree's own hub
        std::vector<int> slots;
        int own = c.z.hub_begin + (i - 1) * c.pf.hub_size;
        for (int s = c.z.hub_begin; s < c.z.hub_end; ++s)
            if (s < own || s >= own + c.pf.hub_size) slots.push_back(s);
        BipartiteAvail g{static_cast<int>(slots.size()), static_cast<int>(e.L.size()),
                         avail_pool(slots)};
        auto dm = matching_after_forests(g, t - 1);
        color_selected(trim_matching(dm.matching, slots, 2 * t + (i - 1), g.a_size), slots);

        // Y: 2t of the freed slots, skipping the centers of larger type I
        // trees and preferring slots outside the star/path clique
        std::vector<char> is_larger_x(c.fam.host_order(), 0);
        for (int j = 1; j < i; ++j)
            if (c.x_slot[j] >= 0) is_larger_x[c.x_slot[j]] = 1;
        std::vector<int> y_slots;
        for (int pass = 0; pass < 2; ++pass)
            for (int s : slots) {
                if (static_cast<int>(y_slots.size()) == 2 * t) break;
                if (c.colordeg[i][s] != 0 || is_larger_x[s]) continue;
                if (pass == 0 && c.in_k3t[s]) continue;
                if (pass == 1 && !c.in_k3t[s]) continue;
                y_slots.push_back(s);
            }
        if (static_cast<int>(y_slots.size()) != 2 * t)
            throw infeasible("type II round: not enough unfinished hub slots for Y");
        BipartiteAvail gy{2 * t, 2 * t, [&](int a, int b) {
                              return c.col.uncolored(e.img[e.X[a]], y_slots[b]);
                          }};
        Matching pm = perfect_matching_after_matchings(gy, t - 1);
        for (auto [a, b] : pm) {
            c.paint(e.img[e.X[a]], y_slots[b], i);
            e.img[e.Y[a]] = y_slots[b];
        }
    }

    // the remaining leaves finish on the reserve clique
    std::vector<int> open = pending();
    int r = c.z.reserve_size();
    if (static_cast<int>(open.size()) != r)
        throw invariant_violation("type II round: " + std::to_string(open.size()) +
                                  " unfinished leaves, reserve holds " + std::to_string(r));
    std::vector<int> res;
    for (int s = c.z.reserve_begin; s < c.z.reserve_end; ++s) res.push_back(s);
    BipartiteAvail gr{r, r, [&](int a, int b) {
                          return c.col.uncolored(e.img[e.N[open[a]]], res[b]) &&
                                 c.colordeg[i][res[b]] == 0;
                      }};
    Matching pm = perfect_matching_after_matchings(gr, std::min(e.tpp, r / 2));
    for (auto [a, b] : pm) {
        c.paint(e.img[e.N[open[a]]], res[b], i);
        e.img[e.L[open[a]]] = res[b];
        done[open[a]] = 1;
    }
    c.assert_hub_free(i, i - 1);
}

// completion of one path-like tree (thm2 only): pairs of neighbors are
// contracted, an available contracted edge needs both halves uncolored
void complete_path_like(Ctx& c, int i) {
    PlanEntry& e = c.plans[i - 1];
    const int t = c.pf.t;
    std::vector<char> done(e.L.size(), 0);

    std::vector<int> slots;  // hub minus own hub minus the star/path clique
    int own = c.z.hub_begin + (i - 1) * c.pf.hub_size;
    for (int s = c.z.hub_begin; s < c.z.hub_end; ++s) {
        if (s >= own && s < own + c.pf.hub_size) continue;
        if (c.in_k3t[s]) continue;
        slots.push_back(s);
    }
    BipartiteAvail g{static_cast<int>(slots.size()), static_cast<int>(e.L.size()),
                     [&](int a, int b) {
                         return c.colordeg[i][slots[a]] == 0 &&
                                c.col.uncolored(slots[a], e.img[e.N[2 * b]]) &&
                                c.col.uncolored(slots[a], e.img[e.N[2 * b + 1]]);
                     }};
    auto dm = matching_after_forests(g, 2 * (t - 1));
    Matching sel = trim_matching(dm.matching, slots, 8 * t + e.tpp, g.a_size);
    for (auto [a, b] : sel) {
        c.paint(slots[a], e.img[e.N[2 * b]], i);
        c.paint(slots[a], e.img[e.N[2 * b + 1]], i);
        e.img[e.L[b]] = slots[a];
        done[b] = 1;
    }

    // Y on 8t of the freed slots via the contracted neighbor pairs
    std::vector<int> y_slots;
    for (int s : slots)
        if (c.colordeg[i][s] == 0 && static_cast<int>(y_slots.size()) < 8 * t)
            y_slots.push_back(s);
    if (static_cast<int>(y_slots.size()) != 8 * t)
        throw infeasible("path-like round: not enough unfinished hub slots for Y");
    BipartiteAvail gy{8 * t, 8 * t, [&](int a, int b) {
                          return c.col.uncolored(e.img[e.X[2 * a]], y_slots[b]) &&
                                 c.col.uncolored(e.img[e.X[2 * a + 1]], y_slots[b]);
                      }};
    Matching pm = perfect_matching_after_matchings(gy, std::min(4 * (t - 1), 4 * t));
    for (auto [a, b] : pm) {
        c.paint(e.img[e.X[2 * a]], y_slots[b], i);
        c.paint(e.img[e.X[2 * a + 1]], y_slots[b], i);
        e.img[e.Y[a]] = y_slots[b];
    }

    // remaining pairs finish on the reserve clique
    std::vector<int> open;
    for (std::size_t j = 0; j < e.L.size(); ++j)
        if (!done[j]) open.push_back(static_cast<int>(j));
    int r = c.z.reserve_size();
    if (static_cast<int>(open.size()) != r)
        throw invariant_violation("path-like round: " + std::to_string(open.size()) +
                                  " unfinished pairs, reserve holds " + std::to_string(r));
    std::vector<int> res;
    for (int s = c.z.reserve_begin; s < c.z.reserve_end; ++s) res.push_back(s);
    BipartiteAvail gr{r, r, [&](int a, int b) {
                          return c.col.uncolored(e.img[e.N[2 * open[a]]], res[b]) &&
                                 c.col.uncolored(e.img[e.N[2 * open[a] + 1]], res[b]) &&
                                 c.colordeg[i][res[b]] == 0;
                      }};
    Matching pr = perfect_matching_after_matchings(gr, std::min(2 * e.tpp + 4 * e.pp, r / 2));
    for (auto [a, b] : pr) {
        c.paint(e.img[e.N[2 * open[a]]], res[b], i);
        c.paint(e.img[e.N[2 * open[a] + 1]], res[b], i);
        e.img[e.L[open[a]]] = res[b];
    }
    c.assert_hub_free(i, i - 1);
}

// completion of one type I tree: the removed leaf star-forest goes onto
// the reserve clique first, then the hub zone (sparing the star/path
// clique so its centers keep their budget); thm2 finishes with the 2t
// late leaves of the center on unfinished hub slots
void complete_type_i(Ctx& c, int i) {
    PlanEntry& e = c.plans[i - 1];
    const int t = c.pf.t;

    std::vector<int> centers = e.H;
    std::sort(centers.begin(), centers.end());
    std::vector<int> center_slots;
    for (int v : centers) center_slots.push_back(e.img[v]);
    std::vector<int> demand(centers.size(), 0);
    std::vector<std::vector<int>> leaves_at(centers.size());
    for (std::size_t j = 0; j < e.L.size(); ++j) {
        int center = e.N[j];
        int idx = static_cast<int>(std::lower_bound(centers.begin(), centers.end(), center) -
                                   centers.begin());
        ++demand[idx];
        leaves_at[idx].push_back(e.L[j]);
    }

    // pool order: reserve, hub outside this tree's hub and the star/path
    // clique, then the clique's own unfinished slots as a last resort
    std::vector<int> pool;
    for (int s = c.z.reserve_begin; s < c.z.reserve_end; ++s) pool.push_back(s);
    int own = c.z.hub_begin + (i - 1) * c.pf.hub_size;
    for (int s = c.z.hub_begin; s < c.z.hub_end; ++s)
        if ((s < own || s >= own + c.pf.hub_size) && !c.in_k3t[s]) pool.push_back(s);
    for (int s = c.z.hub_begin; s < c.z.hub_end; ++s)
        if ((s < own || s >= own + c.pf.hub_size) && c.in_k3t[s]) pool.push_back(s);

    BipartiteAvail g{static_cast<int>(center_slots.size()), static_cast<int>(pool.size()),
                     [&](int a, int b) {
                         return c.colordeg[i][pool[b]] == 0 &&
                                c.col.uncolored(center_slots[a], pool[b]);
                     }};
    StarDemand d;
    for (std::size_t a = 0; a < centers.size(); ++a) {
        d.centers.push_back(static_cast<int>(a));
        d.leaf_counts.push_back(demand[a]);
    }
    int k = c.pf.mode == Mode::thm1 ? i - 1 : 2 * (t - 1);
    auto leaf_slots = pack_star_forest(g, d, k);
    for (std::size_t a = 0; a < centers.size(); ++a)
        for (std::size_t j = 0; j < leaf_slots[a].size(); ++j) {
            int slot = pool[leaf_slots[a][j]];
            c.paint(center_slots[a], slot, i);
            e.img[leaves_at[a][j]] = slot;
        }

    if (c.pf.mode == Mode::thm2) {
        // late leaves of the center on hub slots outside the clique
        std::vector<int> y_slots;
        for (int s = c.z.hub_begin; s < c.z.hub_end; ++s) {
            if (static_cast<int>(y_slots.size()) == static_cast<int>(e.Y.size())) break;
            if (c.in_k3t[s] || c.colordeg[i][s] != 0) continue;
            if (!c.col.uncolored(c.x_slot[i], s)) continue;
            y_slots.push_back(s);
        }
        if (y_slots.size() != e.Y.size())
            throw infeasible("type I round: not enough unfinished hub slots for the center's "
                             "late leaves");
        for (std::size_t j = 0; j < e.Y.size(); ++j) {
            c.paint(c.x_slot[i], y_slots[j], i);
            e.img[e.Y[j]] = y_slots[j];
        }
    }
    c.assert_hub_free(i, (i - 1) + (c.pf.mode == Mode::thm2 && e.star ? 1 : 0));
}

void final_checks(Ctx& c) {
    for (int i = 1; i <= c.pf.t; ++i) {
        const Tree& tr = c.fam.trees[i - 1];
        const PlanEntry& e = c.plans[i - 1];
        std::vector<char> seen(c.fam.host_order(), 0);
        for (int v = 0; v < tr.m; ++v) {
            if (e.img[v] < 0)
                throw invariant_violation("tree " + std::to_string(i) + " vertex " +
                                          std::to_string(v) + " never placed");
            if (seen[e.img[v]])
                throw invariant_violation("tree " + std::to_string(i) + " image not injective");
            seen[e.img[v]] = 1;
            if (c.colordeg[i][e.img[v]] != tr.deg[v])
                throw invariant_violation("tree " + std::to_string(i) + " vertex " +
                                          std::to_string(v) + " finished at degree " +
                                          std::to_string(c.colordeg[i][e.img[v]]) + " of " +
                                          std::to_string(tr.deg[v]));
        }
    }
}

PackReport run_pipeline(const TreeFamily& fam, const ScaleProfile& pf,
                        const EmbedBudget& budget) {
    PackReport rep;
    rep.coloring = EdgeColoring(fam.host_order());

    // classify and partition up front; these are deterministic, so their
    // failures are final (no retry)
    std::vector<TreeClass> classes;
    classes.reserve(pf.t);
    for (int i = 1; i <= pf.t; ++i) {
        classes.push_back(classify_for(fam.trees[i - 1], pf));
        if (pf.mode == Mode::thm1 && classes.back().tag == TreeTag::PathLike)
            throw malformed_input("tree " + std::to_string(i) +
                                  " is path-like; this scheme needs a leaf cover or independent "
                                  "leaves in every tree");
    }

    const int global_retries = 5;
    std::string last_failure;
    for (int attempt = 0; attempt < global_retries; ++attempt) {
        Ctx c(fam, pf, &rep.log);
        try {
            int tp = 0, tpp = 0, pp = 0;
            for (int i = 1; i <= pf.t; ++i) {
                c.plans.push_back(partition_tree(fam.trees[i - 1], i, classes[i - 1], pf, tp, tpp,
                                                 pp));
                switch (classes[i - 1].tag) {
                    case TreeTag::TypeI: ++tp; break;
                    case TreeTag::TypeII: ++tpp; break;
                    case TreeTag::PathLike: ++pp; break;
                }
            }
            c.note("stage=zones main=" + std::to_string(c.z.main_size()) +
                   " hub=" + std::to_string(c.z.hub_size()) +
                   " reserve=" + std::to_string(c.z.reserve_size()) +
                   " extra=" + std::to_string(c.z.extra >= 0 ? 1 : 0));

            EmbedBudget b = budget;
            b.rng_seed = mix64(budget.rng_seed, attempt);
            stage_forests(c, b);
            c.note("stage=forests colored=" + std::to_string(c.col.colored_count()));
            stage_hubs(c);
            c.note("stage=hubs colored=" + std::to_string(c.col.colored_count()));
            if (pf.mode == Mode::thm2) {
                stage_starpath(c);
                c.note("stage=starpath colored=" + std::to_string(c.col.colored_count()));
            }

            if (pf.mode == Mode::thm1) {
                for (int i = 1; i <= pf.t; ++i)
                    if (c.plans[i - 1].tag == TreeTag::TypeII) complete_type_ii(c, i);
                for (int i = 1; i <= pf.t; ++i)
                    if (c.plans[i - 1].tag == TreeTag::TypeI) complete_type_i(c, i);
            } else {
                for (int i = 1; i <= pf.t; ++i)
                    if (c.plans[i - 1].tag == TreeTag::TypeII) complete_type_ii(c, i);
                for (int i = 1; i <= pf.t; ++i)
                    if (c.plans[i - 1].tag == TreeTag::PathLike) complete_path_like(c, i);
                for (int i = 1; i <= pf.t; ++i)
                    if (c.plans[i - 1].tag == TreeTag::TypeI) complete_type_i(c, i);
            }
            c.note("stage=completion colored=" + std::to_string(c.col.colored_count()));

            final_checks(c);
            Verdict v = verify(fam, c.col);
            if (!v.ok)
                throw invariant_violation("verifier rejected a finished packing: " +
                                          v.failures.front().detail);
            Verdict vc = verify_claim_certificates(fam, pf, c.plans);
            if (!vc.ok)
                throw invariant_violation("plan certificates rejected: " +
                                          vc.failures.front().detail);
            c.note("stage=verify ok=1");

            rep.outcome = PackReport::Outcome::packed;
            rep.coloring = std::move(c.col);
            rep.zones = c.z;
            rep.plans = std::move(c.plans);
            return rep;
        } catch (const embed_failure& ex) {
            last_failure = ex.what();
            rep.log.push_back("stage=forests attempt=" + std::to_string(attempt) +
                              " fail=\"" + last_failure + "\"");
            rep.outcome = PackReport::Outcome::embed_failed;
        } catch (const infeasible& ex) {
            last_failure = ex.what();
            rep.log.push_back("attempt=" + std::to_string(attempt) + " fail=\"" + last_failure +
                              "\"");
            rep.outcome = PackReport::Outcome::infeasible_profile;
            // matchings downstream of the embedder are seed-dependent, so
            // a fresh seed may cure this as well
        }
    }
    rep.failure = last_failure;
    return rep;
}

}  // namespace

PackReport pack(const TreeFamily& fam, const ScaleProfile& pf, const EmbedBudget& budget) {
    fam.validate();
    if (fam.n != pf.n) throw malformed_input("instance and profile disagree on n");
    if (fam.t() != pf.t) throw malformed_input("instance has " + std::to_string(fam.t()) +
                                               " trees, profile expects " + std::to_string(pf.t));
    if (fam.extra_vertex != pf.extra_vertex)
        throw malformed_input("instance variant does not match the profile");
    return run_pipeline(fam, pf, budget);
}

PackReport pack_prop(const TreeFamily& fam, const ScaleProfile& pf, const EmbedBudget& budget) {
    fam.validate();
    if (pf.mode != Mode::thm2 || pf.extra_vertex)
        throw malformed_input("the star-free variant runs the thm2 scheme without the extra "
                              "vertex");
    if (fam.extra_vertex) throw malformed_input("star-free variant packs into kn, not kn1");
    if (fam.n != pf.n || fam.t() != pf.t)
        throw malformed_input("instance and profile disagree");
    for (int i = 1; i <= fam.t(); ++i) {
        const Tree& tr = fam.trees[i - 1];
        bool star = false;
        for (int v = 0; v < tr.m && !star; ++v)
            if (tr.deg[v] == tr.m - 1) star = true;
        if (star)
            throw malformed_input("tree " + std::to_string(i) +
                                  " is a star; the star-free variant rejects it");
    }
    return run_pipeline(fam, pf, budget);
}

}  // namespace treepack
