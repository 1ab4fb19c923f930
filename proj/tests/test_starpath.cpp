#include <doctest.h>

#include <functional>
#include <set>

#include "treepack/errors.hpp"
#include "treepack/rng.hpp"
#include "treepack/starpath.hpp"

using namespace treepack;

namespace {

StarPathRequest make_request(int k, unsigned star_mask) {
    StarPathRequest req;
    req.k = k;
    for (int r = 0; r < k; ++r)
        req.shapes.emplace_back((star_mask >> r) & 1 ? ShapeKind::Star : ShapeKind::Path,
                                3 * k - r);
    return req;
}

// independent existence check for small path-only layouts: depth-first
// search over edge-disjoint path placements with distinct endpoints
bool paths_exist_brute(int n, const std::vector<int>& orders) {
    std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
    std::vector<char> endpoint(n, 0);
    std::function<bool(std::size_t)> place = [&](std::size_t item) -> bool {
        if (item == orders.size()) return true;
        int len = orders[item];
        std::vector<int> seq;
        std::vector<char> in(n, 0);
        std::function<bool()> extend = [&]() -> bool {
            if (static_cast<int>(seq.size()) == len) {
                if (endpoint[seq.back()]) return false;
                endpoint[seq.front()] = endpoint[seq.back()] = 1;
                if (place(item + 1)) return true;
                endpoint[seq.front()] = endpoint[seq.back()] = 0;
                return false;
            }
            for (int v = 0; v < n; ++v) {
                if (in[v]) continue;
                if (!seq.empty() && used[seq.back()][v]) continue;
                int prev = seq.empty() ? -1 : seq.back();
                if (prev != -1) used[prev][v] = used[v][prev] = 1;
                in[v] = 1;
                seq.push_back(v);
                if (extend()) return true;
                seq.pop_back();
                in[v] = 0;
                if (prev != -1) used[prev][v] = used[v][prev] = 0;
            }
            return false;
        };
        for (int start = 0; start < n; ++start) {
            if (endpoint[start]) continue;
            seq.assign(1, start);
            in.assign(n, 0);
            in[start] = 1;
            if (extend()) return true;
        }
        return false;
    };
    return place(0);
}

}  // namespace

TEST_CASE("single path fills the tiny host") {
    auto layout = pack_stars_paths(make_request(1, 0));
    check_layout(make_request(1, 0), layout);
    CHECK(layout.coloring.color_class(1).size() == 2);
}

TEST_CASE("star plus path on six vertices") {
    auto req = make_request(2, 0b01);  // item 0 star of order 6, item 1 path of order 5
    auto layout = pack_stars_paths(req);
    check_layout(req, layout);
    CHECK(layout.coloring.color_class(1).size() == 5);
    CHECK(layout.coloring.color_class(2).size() == 4);
}

TEST_CASE("three paths in a nine-vertex host have six distinct endpoints") {
    auto req = make_request(3, 0);
    auto layout = pack_stars_paths(req);
    check_layout(req, layout);
    std::set<int> endpoints;
    for (auto& ep : layout.path_endpoints) {
        endpoints.insert(ep[0]);
        endpoints.insert(ep[1]);
    }
    CHECK(endpoints.size() == 6);
    // the same shapes are reachable by an independent brute-force search
    CHECK(paths_exist_brute(9, {9, 8, 7}));
}

TEST_CASE("all shape patterns succeed for k up to 4") {
    for (int k = 1; k <= 4; ++k)
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            auto req = make_request(k, mask);
            auto layout = pack_stars_paths(req);
            CHECK_NOTHROW(check_layout(req, layout));
        }
}

TEST_CASE("pinned centers are honored") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        int k = 2 + rng.below(3);
        unsigned mask = rng.below(1 << k);
        auto req = make_request(k, mask);
        std::vector<int> verts(3 * k);
        for (int v = 0; v < 3 * k; ++v) verts[v] = v;
        rng.shuffle(verts);
        int next = 0;
        for (int r = 0; r < k; ++r)
            if (req.shapes[r].first == ShapeKind::Star && rng.below(2) == 0)
                req.star_center_pins[r] = verts[next++];
        auto layout = pack_stars_paths(req);
        check_layout(req, layout);
        for (auto [item, pin] : req.star_center_pins) CHECK(layout.star_centers[item] == pin);
    }
}

TEST_CASE("request validation") {
    StarPathRequest bad;
    bad.k = 2;
    bad.shapes.emplace_back(ShapeKind::Path, 5);  // must start at 3k = 6
    CHECK_THROWS_AS(pack_stars_paths(bad), malformed_input);

    auto req = make_request(2, 0b11);
    req.star_center_pins[0] = 0;
    req.star_center_pins[1] = 0;  // duplicate pin
    CHECK_THROWS_AS(pack_stars_paths(req), malformed_input);
}
