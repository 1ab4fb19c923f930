#include "treepack/coloring.hpp"

#include <string>

#include "treepack/errors.hpp"

namespace treepack {

EdgeColoring::EdgeColoring(int n) : n_(n) {
    if (n < 1) throw malformed_input("coloring order must be positive");
    cells_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
}

std::size_t EdgeColoring::index(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
        throw invariant_violation("bad edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (u > v) std::swap(u, v);
    return static_cast<std::size_t>(u) * (2 * n_ - u - 1) / 2 + (v - u - 1);
}

void EdgeColoring::color_edge(int u, int v, int c) {
    if (c < 1 || c > 0xffff) throw invariant_violation("color out of range");
    std::size_t i = index(u, v);
    if (cells_[i] != 0)
        throw invariant_violation("recolor attempt on edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + "): holds " + std::to_string(cells_[i]) +
                                  ", got " + std::to_string(c));
    cells_[i] = static_cast<std::uint16_t>(c);
    ++colored_;
}

std::vector<std::pair<int, int>> EdgeColoring::color_class(int c) const {
    if (c < 1) throw invariant_violation("color_class requires c >= 1");
    std::vector<std::pair<int, int>> out;
    std::size_t i = 0;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v, ++i)
            if (cells_[i] == c) out.emplace_back(u, v);
    return out;
}

std::vector<std::vector<std::pair<int, int>>> EdgeColoring::all_classes(int max_color) const {
    std::vector<std::vector<std::pair<int, int>>> out(max_color + 1);
    std::size_t i = 0;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v, ++i) {
            int c = cells_[i];
            if (c >= 1 && c <= max_color) out[c].emplace_back(u, v);
        }
    return out;
}

HostZones HostZones::make(int n, int hub_order, int reserve_order, bool extra_vertex) {
    int without_extra = extra_vertex ? n - 1 : n;
    int main_order = without_extra - hub_order - reserve_order;
    if (hub_order < 0 || reserve_order < 0 || main_order < 0)
        throw malformed_input("zone sizes do not fit the host order");
    HostZones z;
    z.n = n;
    z.main_begin = 0;
    z.main_end = main_order;
    z.hub_begin = main_order;
    z.hub_end = main_order + hub_order;
    z.reserve_begin = z.hub_end;
    z.reserve_end = z.hub_end + reserve_order;
    z.extra = extra_vertex ? n - 1 : -1;
    return z;
}

}  // namespace treepack
