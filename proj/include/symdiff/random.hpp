#pragma once

#include <cstdint>
#include <random>

#include "symdiff/poly.hpp"

namespace symdiff {

using Rng = std::mt19937_64;

struct RandomShape {
  unsigned max_degree = 3;
  unsigned max_terms = 4;
  /// Bound on integer numerators and denominators.
  long coeff_bound = 5;
  /// Allow non-integer coefficients (fractions, rational functions of t).
  bool fractions = true;
};

Scalar random_scalar(const DomainSpec& d, Rng& rng, const RandomShape& shape = {});
/// Random nonzero-or-zero polynomial with up to max_terms terms.
Polynomial random_polynomial(const RingPtr& ring, Rng& rng, const RandomShape& shape = {});

} // namespace symdiff
