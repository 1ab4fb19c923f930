#pragma once

#include "treepack/pipeline.hpp"
#include "treepack/verify.hpp"

namespace treepack {

// White-box check of the partition records: re-derives every part size
// and structural property (hub completeness, leaf independence, spacing,
// bare-path degrees, disjointness and coverage) from the trees and the
// profile. Lives apart from verify() so the black-box verifier keeps no
// pipeline dependencies.
Verdict verify_claim_certificates(const TreeFamily& fam, const ScaleProfile& pf,
                                  const std::vector<PlanEntry>& plans);

}  // namespace treepack
