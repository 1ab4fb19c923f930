#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treepack/coloring.hpp"
#include "treepack/tree.hpp"

namespace treepack {

struct SearchStats {
    enum class Outcome { packed, unsat, timeout };
    Outcome outcome = Outcome::unsat;
    std::uint64_t nodes = 0;
    int max_depth = 0;
    double elapsed_ms = 0;
};

struct ExactPackResult {
    SearchStats stats;
    std::optional<EdgeColoring> coloring;  // present iff packed
};

// Exhaustive backtracking packer for tiny hosts. Trees are embedded
// largest first; the only symmetry breaking is pinning the first tree's
// root on host vertex 0, which every packing can be relabeled to satisfy.
// UNSAT is reported only after full exploration.
ExactPackResult exact_pack(const std::vector<Tree>& trees, int host_order,
                           double time_limit_ms);

// One representative per isomorphism class of trees on m vertices.
std::vector<Tree> unlabeled_trees(int m);

struct TpcReport {
    int n = 0;
    long sequences = 0;
    long packed = 0;
    long unsat = 0;
    long timeout = 0;
    std::uint64_t nodes = 0;
};

// Runs exact_pack on every sequence of tree shapes T_n..T_2
// (|T_i| = n-i+1, one shape choice per order) against a host clique on n
// vertices.
TpcReport tpc_exhaust(int n, double per_instance_limit_ms);

struct GridReport {
    long cells = 0;
    long trials = 0;
    std::vector<std::string> discrepancies;
    bool ok() const { return discrepancies.empty(); }
};

// Exhaustive parameter grids for the matching kernels, checked against
// the guarantees they advertise (and against brute-force maximum
// matchings where the sizes allow).
GridReport claim_grid_stars(int max_k, int max_a, int max_b, int trials, std::uint64_t seed);
GridReport claim_grid_matching(int max_a, int max_b, int trials, std::uint64_t seed);
GridReport claim_grid_matching2(int max_a, int trials, std::uint64_t seed);
GridReport claim_grid_starspaths(int max_k, int pin_trials, std::uint64_t seed);

}  // namespace treepack
