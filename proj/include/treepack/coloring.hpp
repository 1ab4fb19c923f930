#pragma once

#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

namespace treepack {

// A symmetric edge coloring of a clique on N vertices, stored as one cell
// per unordered pair. Color 0 means uncolored. Cells are write-once: once
// an edge holds a nonzero color it can never change. That single rule is
// what makes the color classes pairwise edge-disjoint by construction.
class EdgeColoring {
public:
    explicit EdgeColoring(int n);

    int order() const { return n_; }

    int color(int u, int v) const { return cells_[index(u, v)]; }
    bool uncolored(int u, int v) const { return cells_[index(u, v)] == 0; }

    // Assigns color c (c >= 1) to the uncolored edge {u,v}. Throws
    // invariant_violation on self-loops, recolor attempts, or c < 1.
    void color_edge(int u, int v, int c);

    // All edges of color c, lexicographically sorted.
    std::vector<std::pair<int, int>> color_class(int c) const;

    // Edge lists for colors 1..max_color in one pass over the cells.
    std::vector<std::vector<std::pair<int, int>>> all_classes(int max_color) const;

    std::size_t colored_count() const { return colored_; }

private:
    std::size_t index(int u, int v) const;

    int n_;
    std::size_t colored_ = 0;
    std::vector<std::uint16_t> cells_;
};

// Splits the host vertex set [0, N) into four consecutive zones:
// main | hub | reserve | extra. The extra zone is a single vertex or empty.
struct HostZones {
    int n = 0;  // host order including the extra vertex
    int main_begin = 0, main_end = 0;
    int hub_begin = 0, hub_end = 0;
    int reserve_begin = 0, reserve_end = 0;
    int extra = -1;  // -1 when absent

    static HostZones make(int n, int hub_order, int reserve_order, bool extra_vertex);

    int main_size() const { return main_end - main_begin; }
    int hub_size() const { return hub_end - hub_begin; }
    int reserve_size() const { return reserve_end - reserve_begin; }
    bool in_hub(int v) const { return v >= hub_begin && v < hub_end; }
    bool in_reserve(int v) const { return v >= reserve_begin && v < reserve_end; }
    bool in_main(int v) const { return v >= main_begin && v < main_end; }
};

}  // namespace treepack
