#include "treepack/verify.hpp"

#include <algorithm>
#include <map>

#include "treepack/errors.hpp"
#include "treepack/tree.hpp"

namespace treepack {

const char* fail_reason_name(FailReason r) {
    switch (r) {
        case FailReason::WrongEdgeCount: return "wrong-edge-count";
        case FailReason::NotATree: return "not-a-tree";
        case FailReason::NotIsomorphic: return "not-isomorphic";
        case FailReason::Overlap: return "overlap";
    }
    return "?";
}

Verdict verify(const TreeFamily& fam, const EdgeColoring& col) {
    Verdict out;
    auto fail = [&](int color, FailReason r, std::string detail) {
        out.ok = false;
        out.failures.push_back({color, r, std::move(detail)});
    };
    if (col.order() != fam.host_order()) {
        fail(0, FailReason::Overlap, "coloring order " + std::to_string(col.order()) +
                                         " does not match host order " +
                                         std::to_string(fam.host_order()));
        return out;
    }

    auto classes = col.all_classes(fam.t());
    // Disjointness is structural (one cell per edge); re-check by counting.
    std::size_t total = 0;
    for (int i = 1; i <= fam.t(); ++i) total += classes[i].size();
    if (total != col.colored_count())
        fail(0, FailReason::Overlap, "colored cells " + std::to_string(col.colored_count()) +
                                         " exceed the classes (stray colors present)");

    for (int i = 1; i <= fam.t(); ++i) {
        const Tree& want = fam.trees[i - 1];
        const auto& edges = classes[i];
        if (static_cast<int>(edges.size()) != want.m - 1) {
            fail(i, FailReason::WrongEdgeCount,
                 "color " + std::to_string(i) + " has " + std::to_string(edges.size()) +
                     " edges, expected " + std::to_string(want.m - 1));
            continue;
        }
        // relabel the spanned vertices and check tree-ness
        std::map<int, int> label;
        for (auto [u, v] : edges) {
            label.emplace(u, static_cast<int>(label.size()));
            label.emplace(v, static_cast<int>(label.size()));
        }
        if (static_cast<int>(label.size()) != want.m) {
            fail(i, FailReason::NotATree,
                 "color " + std::to_string(i) + " spans " + std::to_string(label.size()) +
                     " vertices with " + std::to_string(edges.size()) + " edges");
            continue;
        }
        std::vector<std::pair<int, int>> relabeled;
        relabeled.reserve(edges.size());
        for (auto [u, v] : edges) relabeled.emplace_back(label[u], label[v]);
        Tree got;
        try {
            got = Tree::from_edges(want.m, relabeled);
        } catch (const error&) {
            fail(i, FailReason::NotATree, "color " + std::to_string(i) + " contains a cycle or "
                                          "is disconnected");
            continue;
        }
        if (ahu_canonical(got) != ahu_canonical(want))
            fail(i, FailReason::NotIsomorphic,
                 "color " + std::to_string(i) + " spans a tree not isomorphic to T_" +
                     std::to_string(i));
    }
    return out;
}

}  // namespace treepack
