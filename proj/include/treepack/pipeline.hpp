#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treepack/classify.hpp"
#include "treepack/coloring.hpp"
#include "treepack/forest_embed.hpp"
#include "treepack/io.hpp"

namespace treepack {

// The two packing schemes. thm1 packs t ~ n^(1/3)/4 trees into K_n when
// every tree has a small leaf cover or many independent leaves; thm2
// packs t ~ n^(1/4)/10 unrestricted trees into K_{n+1} (or K_n when no
// tree is a star).
enum class Mode { thm1, thm2 };

struct ProfileOverrides {
    std::optional<int> t;
    std::optional<int> h;
    std::optional<bool> extra_vertex;
    std::optional<int> cover_size;
    std::optional<int> leaf_count;
    std::optional<int> high_degree;
    std::optional<int> spaced_count;
};

// All numeric knobs of a run: either the defaults derived from n, or a
// desk-scale override where t is chosen by hand and the dependent sizes
// are recomputed so the exact accounting identities still hold. Strict
// mode additionally enforces the asymptotic inequalities and rejects n
// too small for them.
struct ScaleProfile {
    Mode mode = Mode::thm2;
    int n = 0;
    int t = 0;
    int h = 0;
    int hub_size = 0;
    int reserve_size = 0;
    bool extra_vertex = false;
    bool strict = false;
    Thresholds thresholds;
    std::vector<std::string> warnings;
};

ScaleProfile make_profile(int n, Mode mode, bool strict, const ProfileOverrides& ov = {});

// Per-tree partition record: the vertex classes, the distinguished
// vertices, the derived completion-neighbor sets, and the host image of
// every tree vertex as it gets placed.
struct PlanEntry {
    TreeTag tag = TreeTag::TypeI;
    bool star = false;
    int tp = 0, tpp = 0, pp = 0;  // counts of earlier type I / type II / path-like trees

    std::vector<int> H;           // hub part, size hub_size
    std::vector<int> S;           // star leaves packed with x (type I)
    std::vector<int> Y;           // late leaves / spaced degree-2 set
    std::vector<int> X;           // neighbors of Y, aligned (path-like: 2 per Y)
    std::vector<int> L;           // completion leaves / degree-2 set
    std::vector<int> N;           // neighbors of L, aligned (path-like: 2 per L)
    std::vector<int> P;           // bare path (path-like)
    int path_outer[2] = {-1, -1}; // the two outside neighbors of P, both in H
    int x = -1, u = -1, v = -1;

    Forest F;
    std::vector<int> forest_to_tree;

    std::vector<int> img;  // tree vertex -> host vertex, -1 until placed
};

struct PackReport {
    enum class Outcome { packed, embed_failed, infeasible_profile };
    Outcome outcome = Outcome::infeasible_profile;
    EdgeColoring coloring;
    HostZones zones;
    std::vector<PlanEntry> plans;
    std::vector<std::string> log;
    std::string failure;

    PackReport() : coloring(1) {}
};

// Classifies with the profile's thresholds.
TreeClass classify_for(const Tree& t, const ScaleProfile& pf);

// Splits tree i into its parts. Counter arguments are the numbers of
// type I / type II / path-like trees among trees 1..i-1. Selection within
// certificates is lowest-labels-first; hub padding prefers vertices that
// do not eat into the completion-leaf supply. Throws infeasible when a
// certificate is too small for the required part sizes.
PlanEntry partition_tree(const Tree& t, int index, const TreeClass& cls, const ScaleProfile& pf,
                         int tp, int tpp, int pp);

// End-to-end packer. Stages: zones, forests into the main zone, hubs,
// (thm2) the star/path clique with its two special cases, then the
// completion rounds in order (thm1: type II then type I; thm2: type II,
// path-like, type I), and a full verifier run. Any stage failure yields a
// report with outcome != packed and the failing stage's diagnostic.
PackReport pack(const TreeFamily& fam, const ScaleProfile& pf, const EmbedBudget& budget);

// The star-free variant: thm2 machinery aimed at K_n, extra vertex
// absent. Rejects instances containing a star.
PackReport pack_prop(const TreeFamily& fam, const ScaleProfile& pf, const EmbedBudget& budget);

}  // namespace treepack
