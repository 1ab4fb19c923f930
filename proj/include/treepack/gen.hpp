#pragma once

#include <cstdint>
#include <string>

#include "treepack/io.hpp"
#include "treepack/pipeline.hpp"
#include "treepack/rng.hpp"

namespace treepack {

Tree gen_star(int m);
Tree gen_path(int m);
Tree gen_spider(int m, int legs);
Tree gen_broom(int m, int bristles);
Tree gen_caterpillar(int m, int leaves, Rng& rng);
Tree gen_random_tree(int m, Rng& rng);

// Shaped trees guaranteed (by construction and a classify re-check) to
// land in a specific class under the given profile.
Tree gen_type_i_tree(int m, const ScaleProfile& pf, Rng& rng, bool as_star);
Tree gen_type_ii_tree(int m, const ScaleProfile& pf, Rng& rng);
Tree gen_path_like_tree(int m, const ScaleProfile& pf, Rng& rng);

enum class GenKind { Random, Star, Path, Spider, Broom, Caterpillar, Mixed };

GenKind parse_gen_kind(const std::string& name);

// Builds a full instance. `mixed` draws tree classes round-robin so every
// class appears when t >= 3 (stars only in the kn1 variant); thm1 profiles
// shape every tree to carry a heavy vertex, so each satisfies the leaf
// conditions that scheme requires. Other kinds repeat one shape.
TreeFamily gen_instance(GenKind kind, int n, int t, bool extra_vertex, std::uint64_t seed,
                        const ScaleProfile& pf);

}  // namespace treepack
