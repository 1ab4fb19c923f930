#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treepack/coloring.hpp"
#include "treepack/tree.hpp"

namespace treepack {

// Budget knobs for the randomized embedder.
struct EmbedBudget {
    int max_restarts_per_forest = 20;
    int max_repair_depth = 16;
    std::uint64_t rng_seed = 0;
};

// Embeds one forest of order `zone_size` into the host zone
// [zone_begin, zone_begin + zone_size), using only uncolored edges, and
// colors its image with `color`. Components are placed largest first,
// vertices in BFS order from each component's highest-degree vertex; every
// vertex goes on the free host with the most remaining uncolored zone
// degree, with a bounded swap repair on dead ends and seeded restarts.
// Returns the vertex map (forest label -> host vertex).
std::vector<int> embed_one_forest(const Forest& f, EdgeColoring& col, int zone_begin,
                                  int zone_size, int color, const EmbedBudget& budget,
                                  std::uint64_t stream);

// Embeds forests[0..t) edge-disjointly, coloring forest i with color i+1.
// Each forest must have order exactly `zone_size`; maps are bijections
// onto the zone. Hypothesis violations (a forest with maximum degree
// >= zone_size / (3t)) are reported through `warnings` and embedding
// proceeds anyway; the verifier has the final word.
std::vector<std::vector<int>> pack_forests(const std::vector<Forest>& forests, int zone_size,
                                           const EmbedBudget& budget, EdgeColoring& col,
                                           int zone_begin,
                                           std::vector<std::string>* warnings = nullptr);

}  // namespace treepack
