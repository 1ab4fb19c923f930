#include <doctest.h>

#include <algorithm>
#include <set>

#include "treepack/errors.hpp"
#include "treepack/gen.hpp"
#include "treepack/pipeline.hpp"
#include "treepack/verify.hpp"
#include "treepack/verify_plan.hpp"

using namespace treepack;

TEST_CASE("default profiles reproduce the scheme constants") {
    ScaleProfile p1 = make_profile(4096, Mode::thm1, true);
    CHECK(p1.t == 4);
    CHECK(p1.h == 192);
    CHECK(p1.hub_size == 32);
    CHECK(p1.reserve_size == 32);
    CHECK(8 * p1.t * p1.t == 128);
    CHECK(p1.h - 64 == 128);  // 8t^2 = h - n^(2/3)/4
    CHECK(p1.thresholds.cover_size == 16);
    CHECK(p1.thresholds.leaf_count == 256);
    CHECK(p1.thresholds.high_degree == 256);
    CHECK(!p1.extra_vertex);

    ScaleProfile p2 = make_profile(10000, Mode::thm2, false);
    CHECK(p2.t == 1);
    CHECK(p2.h == 50);
    CHECK(p2.hub_size == 25);
    CHECK(p2.reserve_size == 25);
    CHECK(25 * p2.t * p2.t * 2 == p2.h);  // 25t^2 = h/2
    CHECK(p2.extra_vertex);
}

TEST_CASE("desk overrides are accepted outside strict mode") {
    ProfileOverrides ov;
    ov.t = 3;
    ScaleProfile p = make_profile(10000, Mode::thm2, false, ov);
    CHECK(p.t == 3);
    CHECK(p.h == 450);
    CHECK(p.hub_size == 75);
    CHECK(25 * p.t * p.t < p.h);
}

TEST_CASE("strict mode rejects a profile that breaks an inequality") {
    ProfileOverrides ov;
    ov.h = 150;
    CHECK_THROWS_AS(make_profile(4096, Mode::thm1, true, ov), infeasible);
    // too small for the default t
    CHECK_THROWS_AS(make_profile(500, Mode::thm2, true), infeasible);
}

TEST_CASE("partition of a star under the default thm2 profile") {
    ScaleProfile pf = make_profile(10000, Mode::thm2, false);
    Tree star = gen_star(10000);
    TreeClass cls = classify_for(star, pf);
    REQUIRE(cls.tag == TreeTag::TypeI);
    REQUIRE(cls.star);
    PlanEntry e = partition_tree(star, 1, cls, pf, 0, 0, 0);
    CHECK(e.x == 0);
    CHECK(e.S.size() == 2);   // 3t - 1
    CHECK(e.Y.size() == 2);   // 2t
    CHECK(e.v >= 0);
    CHECK(e.u == -1);
    CHECK(e.H.size() == 25);
    CHECK(e.L.size() == 45);  // h - |S| - |Y| - 1 - (i-1)
    CHECK(e.F.m == 9925);     // n - h - 25t
}

TEST_CASE("partition of a near-path tree records the path machinery") {
    ProfileOverrides ov;
    ov.t = 2;
    ScaleProfile pf = make_profile(2000, Mode::thm2, false, ov);
    Tree p = gen_path(2000);
    TreeClass cls = classify_for(p, pf);
    REQUIRE(cls.tag == TreeTag::PathLike);
    PlanEntry e = partition_tree(p, 1, cls, pf, 0, 0, 0);
    CHECK(e.P.size() == 6);    // 3t
    CHECK(e.Y.size() == 16);   // 8t
    CHECK(e.X.size() == 32);   // 16t
    CHECK(e.H.size() == 50);   // 25t
    CHECK(e.L.size() == static_cast<std::size_t>(pf.h - 6 - 16));
    // both outside neighbors of the window sit in the hub part
    for (int o : {e.path_outer[0], e.path_outer[1]})
        CHECK(std::find(e.H.begin(), e.H.end(), o) != e.H.end());
}

TEST_CASE("partition of a type II tree under the thm1 profile") {
    ScaleProfile pf = make_profile(4096, Mode::thm1, false);
    Rng rng(17);
    Tree cat = gen_type_ii_tree(4096, pf, rng);
    TreeClass cls = classify_for(cat, pf);
    REQUIRE(cls.tag == TreeTag::TypeII);
    PlanEntry e = partition_tree(cat, 1, cls, pf, 0, 0, 0);
    CHECK(e.Y.size() == 3);  // t - 1
    CHECK(e.X.size() == 3);
    CHECK(e.H.size() == 32);
    CHECK(e.L.size() == static_cast<std::size_t>(pf.h - 3));
    std::set<int> hub(e.H.begin(), e.H.end());
    for (std::size_t j = 0; j < e.L.size(); ++j) CHECK(!hub.count(e.N[j]));
}

TEST_CASE("end-to-end: star plus path packs into kn1 and uses the extra "
          "vertex exactly once") {
    ProfileOverrides ov;
    ov.t = 2;
    ScaleProfile pf = make_profile(1000, Mode::thm2, false, ov);
    TreeFamily fam;
    fam.n = 1000;
    fam.extra_vertex = true;
    fam.trees.push_back(gen_star(1000));
    fam.trees.push_back(gen_path(999));
    EmbedBudget budget;
    PackReport rep = pack(fam, pf, budget);
    REQUIRE(rep.outcome == PackReport::Outcome::packed);
    CHECK(verify(fam, rep.coloring).ok);
    CHECK(verify_claim_certificates(fam, pf, rep.plans).ok);
    // the extra vertex carries exactly one edge (the star's spare leaf)
    int extra = rep.zones.extra;
    REQUIRE(extra >= 0);
    int extra_deg = 0;
    for (int v = 0; v < rep.coloring.order(); ++v)
        if (v != extra && rep.coloring.color(extra, v) != 0) ++extra_deg;
    CHECK(extra_deg == 1);
}

TEST_CASE("end-to-end: the star-free variant packs the same sizes into kn") {
    ProfileOverrides ov;
    ov.t = 2;
    ov.extra_vertex = false;
    ScaleProfile pf = make_profile(1000, Mode::thm2, false, ov);
    TreeFamily fam;
    fam.n = 1000;
    fam.extra_vertex = false;
    fam.trees.push_back(gen_broom(1000, 400));
    fam.trees.push_back(gen_path(999));
    EmbedBudget budget;
    PackReport rep = pack_prop(fam, pf, budget);
    REQUIRE(rep.outcome == PackReport::Outcome::packed);
    CHECK(rep.coloring.order() == 1000);  // no extra vertex anywhere
    CHECK(verify(fam, rep.coloring).ok);
}

TEST_CASE("star-free variant rejects stars") {
    ProfileOverrides ov;
    ov.t = 2;
    ov.extra_vertex = false;
    ScaleProfile pf = make_profile(1000, Mode::thm2, false, ov);
    TreeFamily fam;
    fam.n = 1000;
    fam.extra_vertex = false;
    fam.trees.push_back(gen_star(1000));
    fam.trees.push_back(gen_path(999));
    CHECK_THROWS_AS(pack_prop(fam, pf, EmbedBudget{}), malformed_input);
}

TEST_CASE("scheme 1 rejects path-like trees before coloring anything") {
    ProfileOverrides ov;
    ov.t = 2;
    ScaleProfile pf = make_profile(1000, Mode::thm1, false, ov);
    TreeFamily fam;
    fam.n = 1000;
    fam.extra_vertex = false;
    fam.trees.push_back(gen_path(1000));
    fam.trees.push_back(gen_path(999));
    CHECK_THROWS_AS(pack(fam, pf, EmbedBudget{}), malformed_input);
}

TEST_CASE("end-to-end mixed instances with all three classes") {
    ProfileOverrides ov;
    ov.t = 3;
    ScaleProfile pf = make_profile(2000, Mode::thm2, false, ov);
    TreeFamily fam = gen_instance(GenKind::Mixed, 2000, 3, true, 42, pf);
    std::set<TreeTag> tags;
    for (const Tree& t : fam.trees) tags.insert(classify_for(t, pf).tag);
    CHECK(tags.size() == 3);
    PackReport rep = pack(fam, pf, EmbedBudget{});
    REQUIRE(rep.outcome == PackReport::Outcome::packed);
    CHECK(verify(fam, rep.coloring).ok);
}

TEST_CASE("end-to-end scheme 1 at the exact default scale") {
    ScaleProfile pf = make_profile(4096, Mode::thm1, false);
    TreeFamily fam = gen_instance(GenKind::Mixed, 4096, 4, false, 7, pf);
    for (const Tree& t : fam.trees)
        CHECK(*std::max_element(t.deg.begin(), t.deg.end()) >= 512);
    PackReport rep = pack(fam, pf, EmbedBudget{});
    REQUIRE(rep.outcome == PackReport::Outcome::packed);
    CHECK(verify(fam, rep.coloring).ok);
    CHECK(verify_claim_certificates(fam, pf, rep.plans).ok);
}
