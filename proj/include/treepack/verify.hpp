#pragma once

#include <string>
#include <vector>

#include "treepack/coloring.hpp"
#include "treepack/io.hpp"

namespace treepack {

enum class FailReason { WrongEdgeCount, NotATree, NotIsomorphic, Overlap };

struct Failure {
    int color = 0;
    FailReason reason = FailReason::WrongEdgeCount;
    std::string detail;
};

struct Verdict {
    bool ok = true;
    std::vector<Failure> failures;
};

// The acceptance authority: a coloring is a valid packing of the instance
// iff for every i the class of color i has exactly |T_i|-1 edges, spans a
// tree, and is isomorphic to T_i. Deliberately shares nothing with the
// construction pipeline beyond the core graph types.
Verdict verify(const TreeFamily& fam, const EdgeColoring& col);

const char* fail_reason_name(FailReason r);

}  // namespace treepack
