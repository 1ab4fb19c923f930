#pragma once

#include <array>
#include <map>
#include <vector>

#include "treepack/coloring.hpp"

namespace treepack {

enum class ShapeKind { Star, Path };

// A request to pack k' <= k stars and paths of orders 3k, 3k-1, ...,
// 3k-k'+1 into a clique on 3k vertices, with the extra guarantee that all
// path endpoints land on pairwise-distinct vertices. Star centers may be
// pinned to specific host vertices.
struct StarPathRequest {
    int k = 0;
    std::vector<std::pair<ShapeKind, int>> shapes;  // item r has order 3k - r
    std::map<int, int> star_center_pins;            // item index -> vertex

    void validate() const;
};

struct StarPathLayout {
    EdgeColoring coloring;                           // item r holds color r+1
    std::vector<std::vector<int>> item_vertices;     // star: center then leaves; path: sequence
    std::vector<std::array<int, 2>> path_endpoints;  // {-1,-1} for stars
    std::vector<int> star_centers;                   // -1 for paths

    StarPathLayout() : coloring(1) {}
};

// Packs the request. A rotational construction is attempted first (paths
// as zigzag sequences around Z_{3k}, stars on leftover edges); any failure
// falls through to a backtracking engine that treats endpoint
// disjointness and pins as hard constraints. Throws infeasible when the
// fallback search exhausts.
StarPathLayout pack_stars_paths(const StarPathRequest& req);

// Re-derives every layout invariant from the coloring alone (shapes,
// orders, endpoint disjointness, pins) and throws on any mismatch.
void check_layout(const StarPathRequest& req, const StarPathLayout& layout);

}  // namespace treepack
