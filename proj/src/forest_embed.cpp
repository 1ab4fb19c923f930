#include "treepack/forest_embed.hpp"

#include <algorithm>
#include <numeric>

#include "treepack/errors.hpp"
#include "treepack/rng.hpp"

namespace treepack {

namespace {

struct Component {
    std::vector<int> bfs_order;  // first vertex is the root
    int size() const { return static_cast<int>(bfs_order.size()); }
};

std::vector<Component> split_components(const Forest& f,
                                        const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(f.m, 0);
    std::vector<Component> comps;
    for (int v = 0; v < f.m; ++v) {
        if (seen[v]) continue;
        std::vector<int> members{v};
        seen[v] = 1;
        for (std::size_t i = 0; i < members.size(); ++i)
            for (int w : adj[members[i]])
                if (!seen[w]) {
                    seen[w] = 1;
                    members.push_back(w);
                }
        // BFS from the max-degree vertex of the component
        int root = members[0];
        for (int u : members)
            if (adj[u].size() > adj[root].size() ||
                (adj[u].size() == adj[root].size() && u < root))
                root = u;
        Component c;
        std::vector<char> in(f.m, 0);
        c.bfs_order.push_back(root);
        in[root] = 1;
        for (std::size_t i = 0; i < c.bfs_order.size(); ++i)
            for (int w : adj[c.bfs_order[i]])
                if (!in[w]) {
                    in[w] = 1;
                    c.bfs_order.push_back(w);
                }
        comps.push_back(std::move(c));
    }
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.bfs_order[0] < b.bfs_order[0];
    });
    return comps;
}

// Places one forest into the zone without touching the coloring; the
// caller replays the edges on success. A partial placement can never
// collide with itself: every new mapped edge is incident to a host that
// carries none of this forest's edges yet.
struct Embedder {
    const EdgeColoring& col;
    int zb, zs;
    const std::vector<std::vector<int>>& adj;
    std::vector<int> free_deg;   // uncolored zone degree minus our own usage
    std::vector<int> image;      // forest vertex -> host offset, -1 unplaced
    std::vector<int> host_owner; // host offset -> forest vertex, -1 free
    std::vector<std::vector<int>> placed_nbr;
    int repair_depth;

    Embedder(const EdgeColoring& col, int zb, int zs,
             const std::vector<std::vector<int>>& adj, int repair_depth)
        : col(col), zb(zb), zs(zs), adj(adj), repair_depth(repair_depth) {
        free_deg.assign(zs, 0);
        for (int u = 0; u < zs; ++u)
            for (int v = u + 1; v < zs; ++v)
                if (col.uncolored(zb + u, zb + v)) {
                    ++free_deg[u];
                    ++free_deg[v];
                }
    }

    bool edge_free(int hu, int hv) const { return col.uncolored(zb + hu, zb + hv); }

    bool compatible(int v, int h) const {
        for (int p : placed_nbr[v])
            if (!edge_free(h, image[p])) return false;
        return true;
    }

    int pick_host(int v) const {
        int best = -1;
        for (int h = 0; h < zs; ++h) {
            if (host_owner[h] != -1 || !compatible(v, h)) continue;
            if (best == -1 || free_deg[h] > free_deg[best]) best = h;
        }
        return best;
    }

    void attach(int v, int h) {
        image[v] = h;
        host_owner[h] = v;
        for (int p : placed_nbr[v]) {
            --free_deg[h];
            --free_deg[image[p]];
        }
        for (int w : adj[v]) placed_nbr[w].push_back(v);
    }

    void detach(int v) {
        int h = image[v];
        for (int w : adj[v]) {
            auto& pn = placed_nbr[w];
            pn.erase(std::find(pn.begin(), pn.end(), v));
        }
        for (int p : placed_nbr[v]) {
            ++free_deg[h];
            ++free_deg[image[p]];
        }
        host_owner[h] = -1;
        image[v] = -1;
    }

    // Dead end at v: evict some placed vertex u whose host suits v, if u
    // itself can relocate (recursively, up to `depth` evictions).
    bool repair(int v, int depth) {
        if (depth <= 0) return false;
        for (int h = 0; h < zs; ++h) {
            int u = host_owner[h];
            if (u == -1) continue;
            // compatibility is only meaningful once u is out of the way;
            // u may itself be a placed neighbor of v
            detach(u);
            if (!compatible(v, h)) {
                attach(u, h);
                continue;
            }
            attach(v, h);
            int h2 = pick_host(u);
            if (h2 != -1) {
                attach(u, h2);
                return true;
            }
            if (repair(u, depth - 1)) return true;
            detach(v);
            attach(u, h);
        }
        return false;
    }

    bool run(const std::vector<Component>& comps, Rng& rng, bool shuffle_hosts) {
        image.assign(adj.size(), -1);
        host_owner.assign(zs, -1);
        placed_nbr.assign(adj.size(), {});
        std::vector<int> host_pref(zs);
        std::iota(host_pref.begin(), host_pref.end(), 0);
        if (shuffle_hosts) rng.shuffle(host_pref);

        for (const Component& c : comps) {
            for (int v : c.bfs_order) {
                int h = -1;
                if (placed_nbr[v].empty() && shuffle_hosts) {
                    for (int cand : host_pref)
                        if (host_owner[cand] == -1) {
                            h = cand;
                            break;
                        }
                } else {
                    h = pick_host(v);
                }
                if (h == -1) {
                    if (!repair(v, repair_depth)) return false;
                    continue;
                }
                attach(v, h);
            }
        }
        return true;
    }
};

}  // namespace

std::vector<int> embed_one_forest(const Forest& f, EdgeColoring& col, int zone_begin,
                                  int zone_size, int color, const EmbedBudget& budget,
                                  std::uint64_t stream) {
    if (f.m != zone_size) throw malformed_input("forest order must equal the zone size");
    std::vector<std::vector<int>> adj(f.m);
    for (auto [u, v] : f.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    std::vector<Component> comps = split_components(f, adj);

    for (int attempt = 0; attempt <= budget.max_restarts_per_forest; ++attempt) {
        Rng rng(mix64(budget.rng_seed, mix64(stream, attempt)));
        Embedder e(col, zone_begin, zone_size, adj, budget.max_repair_depth);
        if (e.run(comps, rng, attempt > 0)) {
            for (auto [u, v] : f.edges)
                col.color_edge(zone_begin + e.image[u], zone_begin + e.image[v], color);
            std::vector<int> map(f.m);
            for (int v = 0; v < f.m; ++v) map[v] = zone_begin + e.image[v];
            return map;
        }
    }
    throw embed_failure("forest embedding budget exhausted for color " + std::to_string(color),
                        color - 1, -1);
}

std::vector<std::vector<int>> pack_forests(const std::vector<Forest>& forests, int zone_size,
                                           const EmbedBudget& budget, EdgeColoring& col,
                                           int zone_begin, std::vector<std::string>* warnings) {
    int t = static_cast<int>(forests.size());
    for (int i = 0; i < t; ++i) {
        const Forest& f = forests[i];
        if (f.m != zone_size)
            throw malformed_input("forest " + std::to_string(i + 1) + " has order " +
                                  std::to_string(f.m) + ", zone has " + std::to_string(zone_size));
        int max_deg = 0;
        std::vector<int> deg(f.m, 0);
        for (auto [u, v] : f.edges) max_deg = std::max({max_deg, ++deg[u], ++deg[v]});
        if (t > 0 && 3L * t * max_deg >= zone_size && warnings)
            warnings->push_back("forest " + std::to_string(i + 1) + " max degree " +
                                std::to_string(max_deg) + " exceeds zone/(3t) = " +
                                std::to_string(zone_size / (3 * t)));
    }
    std::vector<std::vector<int>> maps;
    maps.reserve(t);
    for (int i = 0; i < t; ++i)
        maps.push_back(embed_one_forest(forests[i], col, zone_begin, zone_size, i + 1, budget,
                                        static_cast<std::uint64_t>(i)));
    return maps;
}

}  // namespace treepack
