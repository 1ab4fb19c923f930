#include "treepack/classify.hpp"

#include <algorithm>
#include <string>

#include "treepack/errors.hpp"

namespace treepack {

std::vector<int> independent_leaves(const Tree& t) {
    std::vector<int> out;
    if (t.m == 2) return {0};
    std::vector<char> host_taken(t.m, 0);
    for (int v = 0; v < t.m; ++v) {
        if (t.deg[v] != 1) continue;
        int host = t.adj[v][0];
        if (!host_taken[host]) {
            host_taken[host] = 1;
            out.push_back(v);
        }
    }
    return out;
}

std::pair<std::vector<int>, long> greedy_leaf_cover(const Tree& t, int max_cover) {
    if (max_cover < 1) throw malformed_input("max_cover must be >= 1");
    std::vector<int> leaf_nb(t.m, 0);
    for (int v = 0; v < t.m; ++v)
        if (t.deg[v] == 1) ++leaf_nb[t.adj[v][0]];
    std::vector<int> order;
    for (int v = 0; v < t.m; ++v)
        if (leaf_nb[v] > 0) order.push_back(v);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return leaf_nb[a] != leaf_nb[b] ? leaf_nb[a] > leaf_nb[b] : a < b; });
    if (static_cast<int>(order.size()) > max_cover) order.resize(max_cover);
    long covered = 0;
    for (int v : order) covered += leaf_nb[v];
    return {std::move(order), covered};
}

std::vector<int> extract_bare_path(const Tree& t, int len) {
    if (len < 1) throw malformed_input("bare path length must be >= 1");
    std::vector<char> visited(t.m, 0);
    for (int v = 0; v < t.m; ++v) {
        if (t.deg[v] != 2 || visited[v]) continue;
        // walk to one end of the degree-2 run containing v
        int end = v, prev = -1;
        while (true) {
            int next = -1;
            for (int w : t.adj[end])
                if (w != prev && t.deg[w] == 2) {
                    next = w;
                    break;
                }
            if (next == -1 || next == v) break;  // the run cannot be a cycle in a tree
            prev = end;
            end = next;
        }
        // linearize the run from that end; orient from the smaller endpoint
        std::vector<int> run;
        prev = -1;
        int cur = end;
        while (cur != -1) {
            run.push_back(cur);
            visited[cur] = 1;
            int next = -1;
            for (int w : t.adj[cur])
                if (w != prev && t.deg[w] == 2 && !visited[w]) {
                    next = w;
                    break;
                }
            prev = cur;
            cur = next;
        }
        if (run.size() > 1 && run.back() < run.front()) std::reverse(run.begin(), run.end());
        if (static_cast<int>(run.size()) >= len) {
            run.resize(len);
            return run;
        }
    }
    throw not_found("no bare path of " + std::to_string(len) + " vertices");
}

std::vector<int> extract_spaced_all(const Tree& t, const std::vector<int>& forbidden) {
    // mark[v]: v is chosen, adjacent to a chosen vertex, or blocked by the
    // forbidden set. A candidate needs itself and its whole neighborhood
    // unmarked, which enforces pairwise distance >= 3 among the family.
    std::vector<char> blocked(t.m, 0), mark(t.m, 0);
    for (int f : forbidden) {
        blocked[f] = 1;
        for (int w : t.adj[f]) blocked[w] = 1;
    }
    std::vector<int> out;
    for (int v = 0; v < t.m; ++v) {
        if (t.deg[v] != 2 || blocked[v] || mark[v]) continue;
        bool ok = true;
        for (int w : t.adj[v])
            if (mark[w]) {
                ok = false;
                break;
            }
        if (!ok) continue;
        out.push_back(v);
        mark[v] = 1;
        for (int w : t.adj[v]) mark[w] = 1;
    }
    return out;
}

std::vector<int> extract_spaced(const Tree& t, int count, const std::vector<int>& forbidden) {
    std::vector<int> all = extract_spaced_all(t, forbidden);
    if (static_cast<int>(all.size()) < count)
        throw not_found("spaced degree-2 supply " + std::to_string(all.size()) +
                        " below requested " + std::to_string(count));
    all.resize(count);
    return all;
}

TreeClass classify(const Tree& t, const Thresholds& th) {
    TreeClass c;
    auto [cover, covered] = greedy_leaf_cover(t, th.cover_size);
    // star: every leaf hangs off one center
    c.star = false;
    for (int v = 0; v < t.m && !c.star; ++v)
        if (t.deg[v] == t.m - 1) c.star = true;
    if (covered >= th.leaf_count) {
        c.tag = TreeTag::TypeI;
        c.cover = std::move(cover);
        c.covered_leaves = covered;
        return c;
    }
    std::vector<int> indep = independent_leaves(t);
    if (static_cast<int>(indep.size()) >= th.leaf_count) {
        c.tag = TreeTag::TypeII;
        c.indep_leaves = std::move(indep);
        return c;
    }
    c.tag = TreeTag::PathLike;
    try {
        c.bare_path = extract_bare_path(t, th.bare_path_len);
    } catch (const not_found& e) {
        throw infeasible(std::string("classification failure: ") + e.what() +
                         " (thresholds inconsistent with instance scale)");
    }
    // forbid the window plus its two outer neighbors
    std::vector<int> forb = c.bare_path;
    for (int end : {c.bare_path.front(), c.bare_path.back()})
        for (int w : t.adj[end]) {
            if (std::find(c.bare_path.begin(), c.bare_path.end(), w) == c.bare_path.end())
                forb.push_back(w);
        }
    try {
        c.spaced = extract_spaced(t, th.spaced_count, forb);
    } catch (const not_found& e) {
        throw infeasible(std::string("classification failure: ") + e.what() +
                         " (thresholds inconsistent with instance scale)");
    }
    return c;
}

}  // namespace treepack
