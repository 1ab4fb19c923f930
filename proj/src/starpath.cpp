#include "treepack/starpath.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "treepack/errors.hpp"

namespace treepack {

void StarPathRequest::validate() const {
    if (k < 1) throw malformed_input("star/path request needs k >= 1");
    if (static_cast<int>(shapes.size()) > k) throw malformed_input("more than k items");
    for (std::size_t r = 0; r < shapes.size(); ++r) {
        int expect = 3 * k - static_cast<int>(r);
        if (shapes[r].second != expect)
            throw malformed_input("item " + std::to_string(r) + " must have order " +
                                  std::to_string(expect));
    }
    std::vector<int> pins;
    for (auto [item, v] : star_center_pins) {
        if (item < 0 || item >= static_cast<int>(shapes.size()) ||
            shapes[item].first != ShapeKind::Star)
            throw malformed_input("pin on a non-star item");
        if (v < 0 || v >= 3 * k) throw malformed_input("pin vertex out of range");
        pins.push_back(v);
    }
    std::sort(pins.begin(), pins.end());
    if (std::adjacent_find(pins.begin(), pins.end()) != pins.end())
        throw malformed_input("pinned centers must be distinct");
}

namespace {

struct Builder {
    int n;  // 3k
    std::vector<std::vector<char>> used;
    std::vector<std::vector<int>> items;

    explicit Builder(int n) : n(n), used(n, std::vector<char>(n, 0)) {}

    bool take(int u, int v) {
        if (u == v || used[u][v]) return false;
        used[u][v] = used[v][u] = 1;
        return true;
    }
    void release(int u, int v) { used[u][v] = used[v][u] = 0; }
    bool free_edge(int u, int v) const { return u != v && !used[u][v]; }
};

// Zigzag path from start s: s, s+1, s-1, s+2, s-2, ... (mod n), truncated
// to `order` vertices. Distinct starts in [0, k) give edge-disjoint paths.
std::vector<int> zigzag(int n, int start, int order) {
    std::vector<int> seq;
    seq.reserve(order);
    for (int j = 0; j < order; ++j) {
        int off = (j % 2 == 0) ? -(j / 2) : (j + 1) / 2;
        seq.push_back(((start + off) % n + n) % n);
    }
    return seq;
}

std::optional<StarPathLayout> engine_rotational(const StarPathRequest& req) {
    int n = 3 * req.k;
    Builder b(n);
    b.items.assign(req.shapes.size(), {});

    std::vector<char> on_path(n, 0);
    std::vector<char> endpoint_used(n, 0);
    for (std::size_t r = 0; r < req.shapes.size(); ++r) {
        if (req.shapes[r].first != ShapeKind::Path) continue;
        std::vector<int> seq = zigzag(n, static_cast<int>(r), req.shapes[r].second);
        if (endpoint_used[seq.front()] || endpoint_used[seq.back()] ||
            seq.front() == seq.back())
            return std::nullopt;
        endpoint_used[seq.front()] = endpoint_used[seq.back()] = 1;
        for (std::size_t j = 0; j + 1 < seq.size(); ++j)
            if (!b.take(seq[j], seq[j + 1])) return std::nullopt;
        for (int v : seq) on_path[v] = 1;
        b.items[r] = std::move(seq);
    }

    std::vector<char> center_used(n, 0);
    for (std::size_t r = 0; r < req.shapes.size(); ++r) {
        if (req.shapes[r].first != ShapeKind::Star) continue;
        int order = req.shapes[r].second;
        int center = -1;
        auto pin = req.star_center_pins.find(static_cast<int>(r));
        if (pin != req.star_center_pins.end()) {
            center = pin->second;
        } else {
            // prefer vertices untouched by paths, lowest label first
            for (int pass = 0; pass < 2 && center == -1; ++pass)
                for (int v = 0; v < n; ++v)
                    if (!center_used[v] && (pass == 1 || !on_path[v])) {
                        center = v;
                        break;
                    }
        }
        if (center == -1 || center_used[center]) return std::nullopt;
        center_used[center] = 1;
        std::vector<int> item{center};
        for (int v = 0; v < n && static_cast<int>(item.size()) < order; ++v)
            if (b.free_edge(center, v)) {
                b.take(center, v);
                item.push_back(v);
            }
        if (static_cast<int>(item.size()) < order) return std::nullopt;
        b.items[r] = std::move(item);
    }

    StarPathLayout out;
    out.coloring = EdgeColoring(n);
    out.item_vertices = b.items;
    out.path_endpoints.assign(req.shapes.size(), {-1, -1});
    out.star_centers.assign(req.shapes.size(), -1);
    for (std::size_t r = 0; r < req.shapes.size(); ++r) {
        const auto& item = b.items[r];
        if (req.shapes[r].first == ShapeKind::Path) {
            out.path_endpoints[r] = {item.front(), item.back()};
            for (std::size_t j = 0; j + 1 < item.size(); ++j)
                out.coloring.color_edge(item[j], item[j + 1], static_cast<int>(r) + 1);
        } else {
            out.star_centers[r] = item[0];
            for (std::size_t j = 1; j < item.size(); ++j)
                out.coloring.color_edge(item[0], item[j], static_cast<int>(r) + 1);
        }
    }
    return out;
}

// Backtracking fallback. Stars are placed first (largest first), branching
// over centers with greedily chosen leaves; paths follow with a complete
// DFS over extensions, endpoint disjointness enforced as the path closes.
struct Backtracker {
    const StarPathRequest& req;
    int n;
    Builder b;
    std::vector<char> endpoint_used, center_used;
    std::vector<int> item_order;  // stars first, then paths, sizes descending
    long nodes = 0;
    static constexpr long node_cap = 4'000'000;

    explicit Backtracker(const StarPathRequest& r) : req(r), n(3 * r.k), b(n) {
        b.items.assign(req.shapes.size(), {});
        endpoint_used.assign(n, 0);
        center_used.assign(n, 0);
        for (std::size_t r2 = 0; r2 < req.shapes.size(); ++r2)
            if (req.shapes[r2].first == ShapeKind::Star) item_order.push_back(static_cast<int>(r2));
        for (std::size_t r2 = 0; r2 < req.shapes.size(); ++r2)
            if (req.shapes[r2].first == ShapeKind::Path) item_order.push_back(static_cast<int>(r2));
    }

    bool place_star(int item, int next) {
        int order = req.shapes[item].second;
        auto pin = req.star_center_pins.find(item);
        for (int center = 0; center < n; ++center) {
            if (pin != req.star_center_pins.end() && center != pin->second) continue;
            if (center_used[center]) continue;
            if (++nodes > node_cap) return false;
            std::vector<int> leaves;
            for (int v = 0; v < n && static_cast<int>(leaves.size()) < order - 1; ++v)
                if (b.free_edge(center, v)) leaves.push_back(v);
            if (static_cast<int>(leaves.size()) < order - 1) continue;
            for (int v : leaves) b.take(center, v);
            center_used[center] = 1;
            b.items[item] = {center};
            b.items[item].insert(b.items[item].end(), leaves.begin(), leaves.end());
            if (solve(next)) return true;
            center_used[center] = 0;
            for (int v : leaves) b.release(center, v);
            b.items[item].clear();
        }
        return false;
    }

    bool extend_path(int item, int next, std::vector<int>& seq, std::vector<char>& in_seq) {
        int order = req.shapes[item].second;
        if (static_cast<int>(seq.size()) == order) {
            if (endpoint_used[seq.back()]) return false;
            endpoint_used[seq.back()] = 1;
            b.items[item] = seq;
            if (solve(next)) return true;
            endpoint_used[seq.back()] = 0;
            b.items[item].clear();
            return false;
        }
        if (++nodes > node_cap) return false;
        int tail = seq.back();
        for (int v = 0; v < n; ++v) {
            if (in_seq[v] || !b.free_edge(tail, v)) continue;
            // the final vertex must still be a fresh endpoint; interior is free
            b.take(tail, v);
            seq.push_back(v);
            in_seq[v] = 1;
            if (extend_path(item, next, seq, in_seq)) return true;
            in_seq[v] = 0;
            seq.pop_back();
            b.release(tail, v);
        }
        return false;
    }

    bool place_path(int item, int next) {
        for (int start = 0; start < n; ++start) {
            if (endpoint_used[start]) continue;
            endpoint_used[start] = 1;
            std::vector<int> seq{start};
            std::vector<char> in_seq(n, 0);
            in_seq[start] = 1;
            if (extend_path(item, next, seq, in_seq)) return true;
            endpoint_used[start] = 0;
            if (nodes > node_cap) return false;
        }
        return false;
    }

    bool solve(int idx) {
        if (idx == static_cast<int>(item_order.size())) return true;
        int item = item_order[idx];
        return req.shapes[item].first == ShapeKind::Star ? place_star(item, idx + 1)
                                                         : place_path(item, idx + 1);
    }

    StarPathLayout layout() const {
        StarPathLayout out;
        out.coloring = EdgeColoring(n);
        out.item_vertices = b.items;
        out.path_endpoints.assign(req.shapes.size(), {-1, -1});
        out.star_centers.assign(req.shapes.size(), -1);
        for (std::size_t r = 0; r < req.shapes.size(); ++r) {
            const auto& item = b.items[r];
            if (item.empty()) continue;
            if (req.shapes[r].first == ShapeKind::Path) {
                out.path_endpoints[r] = {item.front(), item.back()};
                for (std::size_t j = 0; j + 1 < item.size(); ++j)
                    out.coloring.color_edge(item[j], item[j + 1], static_cast<int>(r) + 1);
            } else {
                out.star_centers[r] = item[0];
                for (std::size_t j = 1; j < item.size(); ++j)
                    out.coloring.color_edge(item[0], item[j], static_cast<int>(r) + 1);
            }
        }
        return out;
    }
};

}  // namespace

StarPathLayout pack_stars_paths(const StarPathRequest& req) {
    req.validate();
    if (auto fast = engine_rotational(req)) {
        try {
            check_layout(req, *fast);
            return std::move(*fast);
        } catch (const error&) {
            // fall through to the backtracking engine
        }
    }
    Backtracker bt(req);
    if (!bt.solve(0))
        throw infeasible("star/path search exhausted after " + std::to_string(bt.nodes) +
                         " nodes");
    StarPathLayout out = bt.layout();
    check_layout(req, out);
    return out;
}

void check_layout(const StarPathRequest& req, const StarPathLayout& layout) {
    int n = 3 * req.k;
    if (layout.coloring.order() != n) throw invariant_violation("layout on wrong host order");
    std::vector<int> endpoints;
    std::vector<int> centers_seen;
    for (std::size_t r = 0; r < req.shapes.size(); ++r) {
        auto edges = layout.coloring.color_class(static_cast<int>(r) + 1);
        int order = req.shapes[r].second;
        if (static_cast<int>(edges.size()) != order - 1)
            throw invariant_violation("item " + std::to_string(r) + " has wrong size");
        std::vector<int> degree(n, 0);
        int span = 0;
        for (auto [u, v] : edges) {
            if (degree[u]++ == 0) ++span;
            if (degree[v]++ == 0) ++span;
        }
        if (span != order) throw invariant_violation("item " + std::to_string(r) + " wrong span");
        if (req.shapes[r].first == ShapeKind::Star) {
            int center = -1;
            for (int v = 0; v < n; ++v)
                if (degree[v] == order - 1) center = v;
            if (order == 2) center = std::min(edges[0].first, edges[0].second);
            if (center == -1)
                throw invariant_violation("item " + std::to_string(r) + " is not a star");
            auto pin = req.star_center_pins.find(static_cast<int>(r));
            if (pin != req.star_center_pins.end() && layout.star_centers[r] != pin->second)
                throw invariant_violation("pinned center not respected");
            if (layout.star_centers[r] >= 0 && degree[layout.star_centers[r]] != order - 1 &&
                order > 2)
                throw invariant_violation("recorded center mismatch");
            centers_seen.push_back(layout.star_centers[r]);
        } else {
            // a path: two degree-1 vertices, the rest degree 2
            int ones = 0;
            for (int v = 0; v < n; ++v) {
                if (degree[v] == 1)
                    ++ones;
                else if (degree[v] != 0 && degree[v] != 2)
                    throw invariant_violation("item " + std::to_string(r) + " is not a path");
            }
            if (ones != 2) throw invariant_violation("item " + std::to_string(r) + " is not a path");
            // connectivity: walk from one end
            int start = -1;
            for (int v = 0; v < n && start == -1; ++v)
                if (degree[v] == 1) start = v;
            std::vector<std::vector<int>> nbr(n);
            for (auto [u, v] : edges) {
                nbr[u].push_back(v);
                nbr[v].push_back(u);
            }
            int length = 1, prev = -1, cur = start;
            while (true) {
                int next = -1;
                for (int w : nbr[cur])
                    if (w != prev) next = w;
                if (next == -1) break;
                prev = cur;
                cur = next;
                ++length;
            }
            if (length != order)
                throw invariant_violation("item " + std::to_string(r) + " is disconnected");
            for (int e : {start, cur}) endpoints.push_back(e);
            // endpoints recorded in the layout must be the derived ones
            std::array<int, 2> rec = layout.path_endpoints[r];
            if ((rec[0] != start || rec[1] != cur) && (rec[0] != cur || rec[1] != start))
                throw invariant_violation("recorded endpoints mismatch");
        }
    }
    std::sort(endpoints.begin(), endpoints.end());
    if (std::adjacent_find(endpoints.begin(), endpoints.end()) != endpoints.end())
        throw invariant_violation("path endpoints collide");
    std::sort(centers_seen.begin(), centers_seen.end());
    if (std::adjacent_find(centers_seen.begin(), centers_seen.end()) != centers_seen.end())
        throw invariant_violation("star centers collide");
}

}  // namespace treepack
