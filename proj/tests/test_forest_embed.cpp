#include <doctest.h>

#include "treepack/errors.hpp"
#include "treepack/forest_embed.hpp"
#include "treepack/gen.hpp"
#include "treepack/io.hpp"
#include "treepack/rng.hpp"

using namespace treepack;

namespace {

// checks that color c restricted to the zone is exactly the forest's image
void check_embedding(const Forest& f, const std::vector<int>& map, const EdgeColoring& col,
                     int c) {
    std::vector<char> seen(col.order(), 0);
    for (int v = 0; v < f.m; ++v) {
        CHECK(!seen[map[v]]);
        seen[map[v]] = 1;
    }
    std::size_t colored = 0;
    for (auto e : col.color_class(c)) {
        (void)e;
        ++colored;
    }
    CHECK(colored >= f.edges.size());
    for (auto [u, v] : f.edges) CHECK(col.color(map[u], map[v]) == c);
}

Forest forest_of_tree(const Tree& t) { return Forest::from_edges(t.m, t.edges()); }

}  // namespace

TEST_CASE("a perfect matching forest lands on disjoint uncolored edges") {
    Forest f = Forest::from_edges(10, {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}});
    EdgeColoring col(10);
    EmbedBudget b;
    auto maps = pack_forests({f}, 10, b, col, 0);
    check_embedding(f, maps[0], col, 1);
    CHECK(col.colored_count() == 5);
}

TEST_CASE("two spanning paths pack into a five-clique") {
    Forest p = forest_of_tree(gen_path(5));
    EdgeColoring col(5);
    EmbedBudget b;
    auto maps = pack_forests({p, p}, 5, b, col, 0);
    check_embedding(p, maps[0], col, 1);
    check_embedding(p, maps[1], col, 2);
    CHECK(col.colored_count() == 8);
}

TEST_CASE("three random forests of bounded degree at order 300") {
    int success = 0;
    for (int seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        std::vector<Forest> forests;
        for (int i = 0; i < 3; ++i) {
            // random tree, redrawn until the degree bound holds
            Tree t;
            do {
                t = gen_random_tree(300, rng);
            } while (*std::max_element(t.deg.begin(), t.deg.end()) > 33);
            forests.push_back(forest_of_tree(t));
        }
        EdgeColoring col(300);
        EmbedBudget b;
        b.rng_seed = seed;
        try {
            auto maps = pack_forests(forests, 300, b, col, 0);
            for (int i = 0; i < 3; ++i) check_embedding(forests[i], maps[i], col, i + 1);
            ++success;
        } catch (const embed_failure&) {
        }
    }
    CHECK(success >= 99);  // regression baseline
}

TEST_CASE("a spanning star cannot embed once every candidate center lost an edge") {
    EdgeColoring col(6);
    for (int v = 0; v < 6; ++v) col.color_edge(v, (v + 1) % 6, 7);  // a 6-cycle of foreign color
    Forest star = forest_of_tree(gen_star(6));
    EmbedBudget b;
    b.max_restarts_per_forest = 3;
    CHECK_THROWS_AS(embed_one_forest(star, col, 0, 6, 1, b, 0), embed_failure);
}

TEST_CASE("fifty-vertex forest into a clique carrying one prior forest") {
    int success = 0;
    for (int seed = 0; seed < 100; ++seed) {
        Rng rng(900 + seed);
        EdgeColoring col(50);
        EmbedBudget b;
        b.rng_seed = seed;
        Forest first = forest_of_tree(gen_random_tree(50, rng));
        pack_forests({first}, 50, b, col, 0);
        Forest second = forest_of_tree(gen_random_tree(50, rng));
        try {
            auto map = embed_one_forest(second, col, 0, 50, 2, b, 77);
            check_embedding(second, map, col, 2);
            ++success;
        } catch (const embed_failure&) {
        }
    }
    CHECK(success >= 95);
}

TEST_CASE("identical budgets and seeds reproduce identical embeddings") {
    Rng rng(3);
    Forest f = forest_of_tree(gen_random_tree(80, rng));
    EmbedBudget b;
    b.rng_seed = 123;
    EdgeColoring c1(80), c2(80);
    auto m1 = pack_forests({f}, 80, b, c1, 0);
    auto m2 = pack_forests({f}, 80, b, c2, 0);
    CHECK(m1 == m2);
}

TEST_CASE("degree-hypothesis violations are reported as warnings") {
    Forest star = forest_of_tree(gen_star(30));
    EdgeColoring col(30);
    EmbedBudget b;
    std::vector<std::string> warn;
    pack_forests({star}, 30, b, col, 0, &warn);
    CHECK(!warn.empty());
}
