#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "treepack/errors.hpp"

namespace treepack {

// A bipartite availability view: classes A and B with a predicate saying
// which cross edges may still be used. Views compose; a contracted pair,
// for instance, is available against b exactly when both constituents are.
struct BipartiteAvail {
    int a_size = 0;
    int b_size = 0;
    std::function<bool(int, int)> available;
};

using Matching = std::vector<std::pair<int, int>>;  // (a, b) pairs

// Maximum matching by augmenting paths (greedy seed + Kuhn). B-vertices
// are scanned in ascending label so identical inputs give identical
// matchings.
Matching max_matching(const BipartiteAvail& g);

struct DefectiveMatching {
    Matching matching;
    std::vector<int> uncovered_a;
};

// A matching covering all but at most k vertices of A, guaranteed whenever
// the unavailable edges form at most k forests and 4k^2 < |A| < |B| - k.
// Implemented as plain maximum matching plus a size assertion: when the
// guarantee fails the thrown infeasible carries a deficiency witness
// S (A-labels with |N(S)| < |S| - k) for diagnosis.
DefectiveMatching matching_after_forests(const BipartiteAvail& g, int k);

// A perfect matching, guaranteed when |A| = |B| = a >= 2k and the
// unavailable edges form at most k matchings. Same engine, same witness
// on failure.
Matching perfect_matching_after_matchings(const BipartiteAvail& g, int k);

// Star-forest demands: centers[i] (an A-vertex) wants exactly
// leaf_counts[i] pairwise-disjoint leaves in B.
struct StarDemand {
    std::vector<int> centers;
    std::vector<int> leaf_counts;
};

// Greedy star-forest packing: each center takes its lowest-indexed
// available, unclaimed B-vertices. Cannot strand a center when every
// center has >= |B| - k available neighbors and the demands sum to at
// most |B| - k. Returns one leaf list per center.
std::vector<std::vector<int>> pack_star_forest(const BipartiteAvail& g, const StarDemand& d,
                                               int k);

}  // namespace treepack
