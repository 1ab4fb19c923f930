#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace treepack {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed files, out-of-range values, inconsistent sizes.
class malformed_input : public error {
public:
    using error::error;
};

// Internal contract broken (write-once coloring, accounting identities).
// Seeing this means a pipeline bug, not a user error.
class invariant_violation : public error {
public:
    using error::error;
};

// A requested certificate or structure does not exist in the given tree.
class not_found : public error {
public:
    using error::error;
};

// A matching or packing step could not be completed. Carries a witness
// set (labels on the deficient side) when one is available.
class infeasible : public error {
public:
    explicit infeasible(const std::string& msg, std::vector<int> witness = {})
        : error(msg), witness(std::move(witness)) {}

    std::vector<int> witness;
};

// The randomized embedder ran out of budget.
class embed_failure : public error {
public:
    embed_failure(const std::string& msg, int forest_index, int blocked_vertex)
        : error(msg), forest_index(forest_index), blocked_vertex(blocked_vertex) {}

    int forest_index;
    int blocked_vertex;
};

}  // namespace treepack
