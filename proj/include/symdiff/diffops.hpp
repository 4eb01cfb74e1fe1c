#pragma once

#include <string>
#include <vector>

#include "symdiff/groebner.hpp"
#include "symdiff/poly.hpp"

namespace symdiff {

/// BaseLinear: linear over the coefficient ring (K or V).
/// ZLinear: additive only, so derivatives in t are allowed too.
enum class Linearity { BaseLinear, ZLinear };

std::string to_string(Linearity lin);

/// A free generator of the order-filtered differential operators: the Hasse
/// derivative with the given multi-index.
struct DiffOperator {
  MultiIndex idx;

  static DiffOperator identity(std::size_t nvars) { return {MultiIndex{Exponents(nvars, 0), 0}}; }
  std::uint32_t order() const { return idx.total(); }
  friend bool operator==(const DiffOperator&, const DiffOperator&) = default;
};

/// delta^delta_count composed after `diff`.
struct MixedOperator {
  unsigned delta_count = 0;
  DiffOperator diff;
  LiftSpec lift;

  std::uint32_t order() const { return delta_count + diff.order(); }
};

/// All generators of order <= max_order, ordered by total order and then
/// descending lexicographic multi-index. The count is the number of lattice
/// points in the simplex of the allowed directions.
std::vector<DiffOperator> enumerate_operators(const Ring& ring, Linearity linearity, unsigned max_order);

Polynomial apply(const DiffOperator& op, const Polynomial& f);
Polynomial apply(const MixedOperator& op, const Polynomial& f);

/// Text form, e.g. "D_t^(1) D_x^(3)", "δ^2 ∘ D_x^(1)", "id".
std::string to_string(const DiffOperator& op, const Ring& ring);
std::string to_string(const MixedOperator& op, const Ring& ring);

/// Accepts the printed form and the ASCII spelling ("delta^2 o D_x^(1)").
/// Throws ParseError or UndeclaredVariable.
MixedOperator parse_operator(const std::string& text, const Ring& ring);

struct LoweringReport {
  bool passed = true;
  std::size_t trials = 0;
  /// First sampled element of I^n whose image escaped I^(n - order).
  std::optional<Polynomial> counterexample;
};

/// Samples random R-combinations of the generators of I^n, applies `op`, and
/// checks that the result lies in I^(n - order(op)).
LoweringReport operator_lowers_powers_check(const Ideal& ideal, const DiffOperator& op, unsigned n,
                                            std::size_t trials, std::uint64_t seed);

} // namespace symdiff
