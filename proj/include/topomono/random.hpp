#pragma once

#include <cstdint>
#include <random>

#include "topomono/semisimple.hpp"

namespace topomono {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 7;

struct RandomObjectOptions {
  int max_multiplicity = 2;
  int max_total = 6;
};

/// Nonzero object with random support and multiplicities.
SemisimpleObject random_object(const RingPtr& ring, Rng& rng, const RandomObjectOptions& opts = {});

/// Invertible deformation with complex Gaussian blocks, redrawn until every
/// block has condition number below 1e4.
ConjugateDeformation random_deformation(const SemisimpleObject& obj, Rng& rng);

/// Deformation with Haar-like random unitary blocks (T^* T = id).
ConjugateDeformation random_unitary_deformation(const SemisimpleObject& obj, Rng& rng);

}  // namespace topomono
