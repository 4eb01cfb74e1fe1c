#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "symdiff/poly.hpp"

namespace symdiff {

/// A Groebner basis over a field, or a strong Groebner basis over Z_(p) and
/// Z[t]_(p): every ideal element has a leading term divisible, coefficient
/// included, by the leading term of some basis element.
struct GroebnerBasis {
  MonomialOrder order;
  std::vector<Polynomial> elements;
  /// elements[i].terms() re-sorted descending by `order`.
  std::vector<std::vector<Term>> sorted;
};

namespace detail {
struct BasisCache;
}

class Ideal {
public:
  /// Zero generators are dropped. Throws RingMismatch.
  Ideal(RingPtr ring, std::vector<Polynomial> generators);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const& { return gens_; }
  std::vector<Polynomial> generators() && { return std::move(gens_); }
  bool is_zero() const { return gens_.empty(); }

  /// Basis for `order` (default: the ring order). Computed once per order and
  /// shared by every copy of this ideal; safe to call from several threads.
  std::shared_ptr<const GroebnerBasis> groebner(const std::optional<MonomialOrder>& order = {}) const;

private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<detail::BasisCache> cache_;
};

/// input = sum(quotients[i] * basis[i]) + normal_form.
struct ReductionTrace {
  Polynomial input;
  std::vector<Polynomial> quotients;
  Polynomial normal_form;
};

/// Buchberger completion followed by minimization and tail reduction. Field
/// bases are monic; over a DVR leading coefficients are powers of p.
std::vector<Polynomial> groebner_basis(const Ideal& ideal, const MonomialOrder& order);

ReductionTrace normal_form(const Polynomial& f, const Ideal& ideal,
                           const std::optional<MonomialOrder>& order = {});
/// Normal form without the quotient bookkeeping.
Polynomial reduce(const Polynomial& f, const Ideal& ideal,
                  const std::optional<MonomialOrder>& order = {});
bool ideal_member(const Polynomial& f, const Ideal& ideal);

/// S-polynomial of two polynomials under `order` (coefficient-aware over a DVR).
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);
/// Remainder of `f` by the list `basis` under `order`.
Polynomial reduce_by(const Polynomial& f, const std::vector<Polynomial>& basis,
                     const MonomialOrder& order);

Ideal unit_ideal(const RingPtr& ring);
/// All n-fold products of generators.
Ideal ideal_power(const Ideal& ideal, unsigned n);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_sum(const Ideal& a, const Ideal& b);
/// Elimination of u from u*I + (1-u)*J.
Ideal intersect(const Ideal& a, const Ideal& b);
/// (I : f) = { g : g f in I }. Throws DivisionByZero for f = 0.
Ideal quotient(const Ideal& ideal, const Polynomial& f);
/// True iff every generator of `sub` reduces to zero modulo `ideal`.
bool ideal_contains(const Ideal& ideal, const Ideal& sub);
bool is_proper(const Ideal& ideal);

} // namespace symdiff
