#pragma once

#include <utility>
#include <vector>

#include "treepack/tree.hpp"

namespace treepack {

enum class TreeTag { TypeI, TypeII, PathLike };

// Numeric knobs for the taxonomy. A tree is type I when some cover of at
// most cover_size vertices has at least leaf_count leaves in its joint
// neighborhood; type II when it has at least leaf_count independent leaves
// (and is not type I); path-like otherwise. high_degree is the threshold
// above which a vertex must be pulled into the hub.
struct Thresholds {
    int cover_size = 1;
    int leaf_count = 1;
    int high_degree = 1;
    int bare_path_len = 1;  // vertex count of the certified bare window
    int spaced_count = 1;
};

// Classification result with the witnessing structures attached. The
// certificate is everything the partition step later consumes, so it is
// re-checkable without re-running classification.
struct TreeClass {
    TreeTag tag = TreeTag::TypeI;
    bool star = false;

    // type I
    std::vector<int> cover;
    long covered_leaves = 0;

    // type II: a maximum family of leaves with pairwise-distinct neighbors
    std::vector<int> indep_leaves;

    // path-like
    std::vector<int> bare_path;  // bare_path_len vertices, all of degree 2
    std::vector<int> spaced;     // degree-2 family, pairwise distance >= 3
};

// One leaf per leaf-adjacent vertex (the smallest-labeled), which is a
// maximum independent leaf set because a leaf has a single neighbor.
std::vector<int> independent_leaves(const Tree& t);

// Up to max_cover vertices chosen by descending leaf-neighbor count, and
// the total number of leaves they cover. Exact, not just greedy: distinct
// vertices cover disjoint leaf sets.
std::pair<std::vector<int>, long> greedy_leaf_cover(const Tree& t, int max_cover);

// A run of `len` consecutive degree-2 vertices; the run always extends by
// one more vertex on each side, so it sits inside a path on len+2
// vertices. Throws not_found when no such run exists.
std::vector<int> extract_bare_path(const Tree& t, int len);

// Greedy family of degree-2 vertices that pairwise share no neighbors and
// are not adjacent to each other (distance >= 3), all disjoint from and
// non-adjacent to `forbidden`. The stronger distance-3 spacing keeps the
// neighbor pairs of distinct family members disjoint, which the packing
// rounds rely on.
std::vector<int> extract_spaced_all(const Tree& t, const std::vector<int>& forbidden);

// First `count` members of the greedy family; not_found if supply is short.
std::vector<int> extract_spaced(const Tree& t, int count, const std::vector<int>& forbidden);

// Total, ordered taxonomy: type I tested first, then type II, else
// path-like (with both path-like certificates extracted and embedded).
// Throws infeasible when a path-like tree cannot supply its certificates
// at the given thresholds.
TreeClass classify(const Tree& t, const Thresholds& th);

}  // namespace treepack
