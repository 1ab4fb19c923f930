#include "treepack/verify_plan.hpp"

#include <algorithm>
#include <string>

namespace treepack {

namespace {

bool disjoint_cover(const Tree& tr, const PlanEntry& e, std::string& why) {
    std::vector<int> owner(tr.m, 0);
    auto mark = [&](const std::vector<int>& part) {
        for (int v : part) ++owner[v];
    };
    mark(e.H);
    mark(e.S);
    mark(e.Y);
    mark(e.L);
    mark(e.P);
    if (e.v >= 0) ++owner[e.v];
    for (int v : e.forest_to_tree) ++owner[v];
    for (int v = 0; v < tr.m; ++v)
        if (owner[v] != 1) {
            why = "vertex " + std::to_string(v) + " covered " + std::to_string(owner[v]) +
                  " times";
            return false;
        }
    return true;
}

}  // namespace

Verdict verify_claim_certificates(const TreeFamily& fam, const ScaleProfile& pf,
                                  const std::vector<PlanEntry>& plans) {
    Verdict out;
    auto fail = [&](int i, std::string detail) {
        out.ok = false;
        out.failures.push_back({i, FailReason::Overlap, std::move(detail)});
    };
    if (static_cast<int>(plans.size()) != fam.t()) {
        if (!plans.empty() || fam.t() != 0) fail(0, "plan count does not match the instance");
        return out;
    }
    int tp = 0, tpp = 0, pp = 0;
    for (int i = 1; i <= fam.t(); ++i) {
        const Tree& tr = fam.trees[i - 1];
        const PlanEntry& e = plans[i - 1];
        std::string why;
        if (e.tp != tp || e.tpp != tpp || e.pp != pp)
            fail(i, "class counters do not match the running tally");
        if (static_cast<int>(e.H.size()) != pf.hub_size)
            fail(i, "hub part has " + std::to_string(e.H.size()) + " vertices, expected " +
                        std::to_string(pf.hub_size));
        if (e.F.m != pf.n - pf.h - pf.reserve_size)
            fail(i, "forest part has wrong order");
        if (!disjoint_cover(tr, e, why)) fail(i, "parts are not a partition: " + why);

        std::vector<char> in_H(tr.m, 0);
        for (int v : e.H) in_H[v] = 1;
        for (int v = 0; v < tr.m; ++v)
            if (tr.deg[v] > pf.thresholds.high_degree && !in_H[v])
                fail(i, "high-degree vertex " + std::to_string(v) + " escaped the hub");

        int expected_l = 0;
        switch (e.tag) {
            case TreeTag::TypeI: {
                expected_l = pf.h - static_cast<int>(e.S.size()) - static_cast<int>(e.Y.size()) -
                             (e.v >= 0 ? 1 : 0) - (i - 1);
                if (pf.mode == Mode::thm2) {
                    if (static_cast<int>(e.S.size()) != 3 * pf.t - (tp + pp) - 1)
                        fail(i, "star part has the wrong size");
                    if (static_cast<int>(e.Y.size()) != 2 * pf.t)
                        fail(i, "late-leaf part has the wrong size");
                    if (e.x < 0 || e.v < 0) fail(i, "type I tree lacks its special vertices");
                    for (int w : e.S)
                        if (tr.deg[w] != 1 || tr.adj[w][0] != e.x)
                            fail(i, "star part member is not a leaf of the center");
                    for (int w : e.Y)
                        if (tr.deg[w] != 1 || tr.adj[w][0] != e.x)
                            fail(i, "late leaf is not a leaf of the center");
                    if (e.star) {
                        if (tr.deg[e.v] != 1 || tr.adj[e.v][0] != e.x)
                            fail(i, "the spare leaf of a star must hang off the center");
                    } else if (e.u < 0 || tr.deg[e.v] != 1 || tr.adj[e.v][0] != e.u ||
                               e.u == e.x) {
                        fail(i, "the spare leaf must hang off a second vertex");
                    }
                }
                for (std::size_t j = 0; j < e.L.size(); ++j)
                    if (tr.deg[e.L[j]] != 1 || !in_H[tr.adj[e.L[j]][0]] ||
                        e.N[j] != tr.adj[e.L[j]][0])
                        fail(i, "completion leaf " + std::to_string(e.L[j]) +
                                    " is not a hub-adjacent leaf");
                break;
            }
            case TreeTag::TypeII: {
                int y_size = pf.mode == Mode::thm1 ? pf.t - 1 : 2 * pf.t;
                expected_l = pf.h - y_size - (i - 1);
                if (static_cast<int>(e.Y.size()) != y_size) fail(i, "Y part has the wrong size");
                std::vector<char> host_seen(tr.m, 0);
                for (std::size_t j = 0; j < e.Y.size(); ++j) {
                    int y = e.Y[j];
                    if (tr.deg[y] != 1 || e.X[j] != tr.adj[y][0]) fail(i, "Y member invalid");
                    if (host_seen[tr.adj[y][0]]) fail(i, "Y leaves share a neighbor");
                    host_seen[tr.adj[y][0]] = 1;
                }
                for (std::size_t j = 0; j < e.L.size(); ++j) {
                    int leaf = e.L[j];
                    if (tr.deg[leaf] != 1 || e.N[j] != tr.adj[leaf][0])
                        fail(i, "completion leaf invalid");
                    if (in_H[tr.adj[leaf][0]]) fail(i, "completion leaf is adjacent to the hub");
                    if (host_seen[tr.adj[leaf][0]]) fail(i, "completion leaves share a neighbor");
                    host_seen[tr.adj[leaf][0]] = 1;
                }
                break;
            }
            case TreeTag::PathLike: {
                expected_l = pf.h - static_cast<int>(e.P.size()) - static_cast<int>(e.Y.size()) -
                             (i - 1);
                if (static_cast<int>(e.P.size()) != 3 * pf.t - (tp + pp))
                    fail(i, "bare path has the wrong size");
                if (static_cast<int>(e.Y.size()) != 8 * pf.t)
                    fail(i, "spaced part has the wrong size");
                for (std::size_t j = 0; j < e.P.size(); ++j) {
                    if (tr.deg[e.P[j]] != 2) fail(i, "bare path member has degree != 2");
                    if (j + 1 < e.P.size()) {
                        const auto& a = tr.adj[e.P[j]];
                        if (std::find(a.begin(), a.end(), e.P[j + 1]) == a.end())
                            fail(i, "bare path is not a path");
                    }
                }
                if (e.path_outer[0] < 0 || e.path_outer[1] < 0 || !in_H[e.path_outer[0]] ||
                    !in_H[e.path_outer[1]])
                    fail(i, "path outside neighbors must sit in the hub");
                // Y and L: degree 2, no shared neighbors, L not hub-adjacent
                std::vector<char> nb_seen(tr.m, 0);
                auto check_d2 = [&](int v, bool forbid_hub, const char* what) {
                    if (tr.deg[v] != 2) fail(i, std::string(what) + " member has degree != 2");
                    for (int w : tr.adj[v]) {
                        if (nb_seen[w]) fail(i, std::string(what) + " members share a neighbor");
                        nb_seen[w] = 1;
                        if (forbid_hub && in_H[w])
                            fail(i, std::string(what) + " member is adjacent to the hub");
                    }
                };
                for (std::size_t j = 0; j < e.Y.size(); ++j) {
                    check_d2(e.Y[j], false, "spaced");
                    if (e.X[2 * j] != tr.adj[e.Y[j]][0] || e.X[2 * j + 1] != tr.adj[e.Y[j]][1])
                        fail(i, "spaced neighbor pairs misrecorded");
                }
                for (std::size_t j = 0; j < e.L.size(); ++j) {
                    check_d2(e.L[j], true, "completion");
                    if (e.N[2 * j] != tr.adj[e.L[j]][0] || e.N[2 * j + 1] != tr.adj[e.L[j]][1])
                        fail(i, "completion neighbor pairs misrecorded");
                }
                break;
            }
        }
        if (static_cast<int>(e.L.size()) != expected_l)
            fail(i, "completion part has " + std::to_string(e.L.size()) + " members, expected " +
                        std::to_string(expected_l));
        switch (e.tag) {
            case TreeTag::TypeI: ++tp; break;
            case TreeTag::TypeII: ++tpp; break;
            case TreeTag::PathLike: ++pp; break;
        }
    }
    return out;
}

}  // namespace treepack
