#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "treepack/errors.hpp"
#include "treepack/rng.hpp"
#include "treepack/tree.hpp"

using namespace treepack;

TEST_CASE("prufer_decode on the stated examples") {
    Tree edge = prufer_decode({}, 2);
    CHECK(edge.m == 2);
    CHECK(edge.edges() == std::vector<std::pair<int, int>>{{0, 1}});

    Tree star = prufer_decode({0, 0}, 4);
    CHECK(star.deg[0] == 3);
    for (int v = 1; v < 4; ++v) CHECK(star.deg[v] == 1);

    // enumerate all 16 labeled trees on 4 vertices independently and find
    // the one whose sequence is (1,2)
    auto all = testoracle::all_labeled_trees(4);
    CHECK(all.size() == 16);
    Tree got = prufer_decode({1, 2}, 4);
    bool matched = false;
    for (auto& edges : all) {
        Tree t = Tree::from_edges(4, edges);
        if (prufer_encode(t) == std::vector<int>{1, 2}) {
            CHECK(t.edges() == got.edges());
            matched = true;
        }
    }
    CHECK(matched);
    // and that tree is the path 0-1-2-3
    CHECK(got.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
}

TEST_CASE("prufer_encode on the stated examples") {
    Tree star = Tree::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(prufer_encode(star) == std::vector<int>{0, 0});
    Tree path = Tree::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(prufer_encode(path) == std::vector<int>{1, 2});
    Tree edge = Tree::from_edges(2, {{0, 1}});
    CHECK(prufer_encode(edge).empty());
}

TEST_CASE("prufer errors") {
    CHECK_THROWS_AS(prufer_decode({4}, 3), malformed_input);
    CHECK_THROWS_AS(prufer_decode({-1}, 3), malformed_input);
    CHECK_THROWS_AS(prufer_decode({0, 0}, 3), malformed_input);  // wrong length
    CHECK_THROWS_AS(prufer_decode({}, 1), malformed_input);
}

TEST_CASE("prufer round trip over random sequences") {
    Rng rng(20240901);
    for (int m = 2; m <= 12; ++m) {
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<int> seq(m - 2);
            for (int& s : seq) s = rng.below(m);
            Tree t = prufer_decode(seq, m);
            CHECK(t.is_valid());
            CHECK(prufer_encode(t) == seq);
        }
    }
}

TEST_CASE("ahu codes match isomorphism") {
    Tree p1 = Tree::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    Tree p2 = Tree::from_edges(4, {{2, 0}, {0, 3}, {3, 1}});  // relabeled path
    CHECK(ahu_canonical(p1) == ahu_canonical(p2));
    Tree star = Tree::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(ahu_canonical(star) != ahu_canonical(p1));
}

TEST_CASE("ahu buckets labeled trees into the unlabeled counts") {
    // distinct unlabeled trees on m = 2..8 vertices
    const std::map<int, std::size_t> expected{{2, 1}, {3, 1}, {4, 2}, {5, 3},
                                              {6, 6}, {7, 11}, {8, 23}};
    for (auto [m, count] : expected) {
        std::set<std::string> codes;
        std::vector<int> seq(std::max(0, m - 2), 0);
        while (true) {
            codes.insert(ahu_canonical(prufer_decode(seq, m)));
            int pos = m - 3;
            while (pos >= 0 && seq[pos] == m - 1) seq[pos--] = 0;
            if (pos < 0) break;
            ++seq[pos];
        }
        CHECK(codes.size() == count);
    }
}

TEST_CASE("ahu buckets are pairwise non-isomorphic (independent check)") {
    // one representative per code; distinct codes must be genuinely
    // non-isomorphic under brute-force permutation search
    for (int m = 4; m <= 7; ++m) {
        std::map<std::string, Tree> reps;
        std::vector<int> seq(m - 2, 0);
        while (true) {
            Tree t = prufer_decode(seq, m);
            reps.try_emplace(ahu_canonical(t), std::move(t));
            int pos = m - 3;
            while (pos >= 0 && seq[pos] == m - 1) seq[pos--] = 0;
            if (pos < 0) break;
            ++seq[pos];
        }
        std::vector<Tree> all;
        for (auto& [code, t] : reps) all.push_back(t);
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                CHECK(!testoracle::isomorphic_brute(all[i], all[j]));
    }
}

TEST_CASE("ahu separates the six trees on six vertices") {
    std::set<std::string> codes;
    std::vector<int> seq(4, 0);
    while (true) {
        codes.insert(ahu_canonical(prufer_decode(seq, 6)));
        int pos = 3;
        while (pos >= 0 && seq[pos] == 5) seq[pos--] = 0;
        if (pos < 0) break;
        ++seq[pos];
    }
    CHECK(codes.size() == 6);
}

TEST_CASE("tree centers") {
    Tree path5 = Tree::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(tree_centers(path5) == std::vector<int>{2});
    Tree path4 = Tree::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(tree_centers(path4) == std::vector<int>{1, 2});
}

TEST_CASE("forest validation") {
    Forest f = Forest::from_edges(5, {{0, 1}, {2, 3}});
    CHECK(f.components == 3);
    CHECK_THROWS_AS(Forest::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}), malformed_input);
}
