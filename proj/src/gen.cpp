#include "treepack/gen.hpp"

#include <algorithm>
#include <numeric>

#include "treepack/errors.hpp"

namespace treepack {

Tree gen_star(int m) {
    Tree t(m);
    for (int v = 1; v < m; ++v) t.add_edge(0, v);
    t.sort_adjacency();
    return t;
}

Tree gen_path(int m) {
    Tree t(m);
    for (int v = 0; v + 1 < m; ++v) t.add_edge(v, v + 1);
    t.sort_adjacency();
    return t;
}

Tree gen_spider(int m, int legs) {
    if (legs < 1 || legs > m - 1) throw malformed_input("spider legs out of range");
    Tree t(m);
    int next = 1;
    for (int l = 0; l < legs; ++l) {
        int len = (m - 1) / legs + (l < (m - 1) % legs ? 1 : 0);
        int prev = 0;
        for (int j = 0; j < len; ++j) {
            t.add_edge(prev, next);
            prev = next++;
        }
    }
    t.sort_adjacency();
    return t;
}

Tree gen_broom(int m, int bristles) {
    if (bristles < 0 || bristles > m - 2) throw malformed_input("broom bristles out of range");
    Tree t(m);
    int handle = m - bristles;
    for (int v = 0; v + 1 < handle; ++v) t.add_edge(v, v + 1);
    for (int b = 0; b < bristles; ++b) t.add_edge(handle - 1, handle + b);
    t.sort_adjacency();
    return t;
}

Tree gen_caterpillar(int m, int leaves, Rng& rng) {
    int spine = m - leaves;
    if (leaves < 0 || spine < 1 || leaves > spine)
        throw malformed_input("caterpillar needs leaves <= spine");
    Tree t(m);
    for (int v = 0; v + 1 < spine; ++v) t.add_edge(v, v + 1);
    std::vector<int> hosts(spine);
    std::iota(hosts.begin(), hosts.end(), 0);
    rng.shuffle(hosts);
    for (int j = 0; j < leaves; ++j) t.add_edge(hosts[j], spine + j);
    t.sort_adjacency();
    return t;
}

Tree gen_random_tree(int m, Rng& rng) {
    if (m == 1) return Tree(1);
    std::vector<int> seq(std::max(0, m - 2));
    for (int& s : seq) s = rng.below(m);
    return prufer_decode(seq, m);
}

namespace {

// random tree with every degree capped; rejects oversized Pruefer entries
Tree gen_capped_tree(int m, int cap, Rng& rng) {
    if (m <= 2) return gen_path(m);
    std::vector<int> seq;
    std::vector<int> uses(m, 0);
    seq.reserve(m - 2);
    while (static_cast<int>(seq.size()) < m - 2) {
        int v = rng.below(m);
        if (uses[v] + 2 > cap) continue;
        ++uses[v];
        seq.push_back(v);
    }
    return prufer_decode(seq, m);
}

// a tree glued from parts given as edge lists over fresh blocks
struct Assembler {
    int m;
    std::vector<std::pair<int, int>> edges;
    explicit Assembler(int m) : m(m) {}
    void edge(int u, int v) { edges.emplace_back(u, v); }
    Tree build() { return Tree::from_edges(m, edges); }
};

int heavy_degree_floor(const ScaleProfile& pf) {
    if (pf.mode == Mode::thm1) {
        // every shaped tree carries a vertex of degree well above 2n^(2/3)
        long n23 = 1;
        while ((n23 + 1) * (n23 + 1) * (n23 + 1) <= 1L * pf.n * pf.n) ++n23;
        return static_cast<int>(2 * n23 + 8);
    }
    return 0;
}

}  // namespace

Tree gen_type_i_tree(int m, const ScaleProfile& pf, Rng& rng, bool as_star) {
    if (as_star) return gen_star(m);
    int k = pf.thresholds.leaf_count + pf.hub_size + 6 * pf.t + rng.below(pf.t + 1);
    k = std::max(k, heavy_degree_floor(pf));
    if (k + 3 > m)
        throw malformed_input("tree order " + std::to_string(m) +
                              " too small for a shaped heavy-cover tree (needs > " +
                              std::to_string(k + 3) + ")");
    // hub vertex 0 with k leaves, plus a random low-degree tail
    Assembler a(m);
    for (int v = 1; v <= k; ++v) a.edge(0, v);
    int tail = m - 1 - k;
    Tree tail_tree = gen_capped_tree(tail, 8, rng);
    for (auto [u, v] : tail_tree.edges()) a.edge(k + 1 + u, k + 1 + v);
    a.edge(0, k + 1);
    return a.build();
}

Tree gen_type_ii_tree(int m, const ScaleProfile& pf, Rng& rng) {
    if (pf.mode == Mode::thm2) {
        int leaves = pf.thresholds.leaf_count + pf.hub_size + 2 * pf.t + 16 + rng.below(16);
        if (2 * leaves + 2 > m)
            throw malformed_input("tree order too small for a shaped caterpillar");
        return gen_caterpillar(m, leaves, rng);
    }
    // a heavy spider: the center's neighbors are all internal, their tips
    // supply the independent leaves
    int legs = std::max(pf.thresholds.leaf_count + pf.hub_size + 8, heavy_degree_floor(pf));
    if (2 * legs + 3 > m) throw malformed_input("tree order too small for a shaped spider");
    Assembler a(m);
    for (int l = 0; l < legs; ++l) {
        a.edge(0, 1 + l);            // mid
        a.edge(1 + l, 1 + legs + l); // tip
    }
    int base = 1 + 2 * legs;
    int tail = m - base;
    if (tail > 0) {
        Tree tail_tree = gen_capped_tree(tail, 8, rng);
        for (auto [u, v] : tail_tree.edges()) a.edge(base + u, base + v);
        a.edge(1 + legs, base);  // hang the tail off the first tip
    }
    return a.build();
}

Tree gen_path_like_tree(int m, const ScaleProfile& pf, Rng& rng) {
    int pendants = pf.t + rng.below(pf.t + 1);
    int spine = m - pendants;
    if (spine < 8 * (pendants + 2) + pf.thresholds.bare_path_len)
        throw malformed_input("tree order too small for a shaped near-path");
    Tree t(m);
    for (int v = 0; v + 1 < spine; ++v) t.add_edge(v, v + 1);
    // pendants spread far apart so long bare runs survive
    int gap = spine / (pendants + 1);
    for (int j = 0; j < pendants; ++j) t.add_edge((j + 1) * gap, spine + j);
    t.sort_adjacency();
    return t;
}

GenKind parse_gen_kind(const std::string& name) {
    if (name == "random") return GenKind::Random;
    if (name == "star") return GenKind::Star;
    if (name == "path") return GenKind::Path;
    if (name == "spider") return GenKind::Spider;
    if (name == "broom") return GenKind::Broom;
    if (name == "caterpillar") return GenKind::Caterpillar;
    if (name == "mixed") return GenKind::Mixed;
    throw malformed_input("unknown generator kind '" + name + "'");
}

TreeFamily gen_instance(GenKind kind, int n, int t, bool extra_vertex, std::uint64_t seed,
                        const ScaleProfile& pf) {
    if (t < 1 || t > n - 1) throw malformed_input("generator requires 1 <= t <= n-1");
    TreeFamily fam;
    fam.n = n;
    fam.extra_vertex = extra_vertex;
    for (int i = 1; i <= t; ++i) {
        int m = n - i + 1;
        Rng rng(mix64(seed, i));
        switch (kind) {
            case GenKind::Random: fam.trees.push_back(gen_random_tree(m, rng)); break;
            case GenKind::Star: fam.trees.push_back(gen_star(m)); break;
            case GenKind::Path: fam.trees.push_back(gen_path(m)); break;
            case GenKind::Spider:
                fam.trees.push_back(gen_spider(m, std::max(2, (m - 1) / 3)));
                break;
            case GenKind::Broom:
                fam.trees.push_back(gen_broom(m, std::max(1, m / 4)));
                break;
            case GenKind::Caterpillar:
                fam.trees.push_back(gen_caterpillar(m, std::max(1, m / 3), rng));
                break;
            case GenKind::Mixed: {
                // round-robin over the classes this scheme supports, so all
                // of them appear once t >= 3
                TreeTag want;
                if (pf.mode == Mode::thm1)
                    want = (i % 2 == 1) ? TreeTag::TypeI : TreeTag::TypeII;
                else
                    want = (i % 3 == 1) ? TreeTag::TypeI
                                        : (i % 3 == 2 ? TreeTag::TypeII : TreeTag::PathLike);
                bool as_star = extra_vertex && want == TreeTag::TypeI && rng.below(3) == 0;
                Tree shaped;
                bool ok = false;
                for (int retry = 0; retry < 20 && !ok; ++retry) {
                    Rng sub(mix64(seed, mix64(i, retry)));
                    switch (want) {
                        case TreeTag::TypeI:
                            shaped = gen_type_i_tree(m, pf, sub, as_star);
                            break;
                        case TreeTag::TypeII: shaped = gen_type_ii_tree(m, pf, sub); break;
                        case TreeTag::PathLike: shaped = gen_path_like_tree(m, pf, sub); break;
                    }
                    ok = classify(shaped, pf.thresholds).tag == want;
                }
                if (!ok)
                    throw infeasible("generator could not shape the requested class at n = " +
                                     std::to_string(n));
                fam.trees.push_back(std::move(shaped));
                break;
            }
        }
    }
    fam.validate();
    return fam;
}

}  // namespace treepack
