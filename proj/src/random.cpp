#include "symdiff/random.hpp"

namespace symdiff {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

std::vector<mpz_class> random_int_poly(Rng& rng, unsigned deg, long bound) {
  std::vector<mpz_class> c;
  for (unsigned k = 0; k <= deg; ++k) c.emplace_back(uniform(rng, -bound, bound));
  return c;
}

} // namespace

Scalar random_scalar(const DomainSpec& d, Rng& rng, const RandomShape& shape) {
  const long b = std::max(1L, shape.coeff_bound);
  const auto p = static_cast<long>(d.p());
  switch (d.kind()) {
  case DomainKind::RationalsQ:
    return Scalar::from_fraction(d, uniform(rng, -b, b), shape.fractions ? uniform(rng, 1, b) : 1);
  case DomainKind::PrimeFieldFp: return Scalar::from_int(d, uniform(rng, 0, p - 1));
  case DomainKind::PLocalIntegersZp: {
    long den = 1;
    if (shape.fractions)
      do den = uniform(rng, 1, b);
      while (den % p == 0);
    return Scalar::from_fraction(d, uniform(rng, -b, b), den);
  }
  case DomainKind::RationalFunctionsFpT:
  case DomainKind::PLocalPolyFracZtp: {
    auto num = Scalar::from_t_poly(d, random_int_poly(rng, static_cast<unsigned>(uniform(rng, 0, 2)), b));
    if (!shape.fractions || uniform(rng, 0, 2) != 0) return num;
    // Denominator t + c, a unit in both domains.
    auto den = Scalar::from_t_poly(d, {mpz_class(uniform(rng, -b, b)), mpz_class(1)});
    return num / den;
  }
  }
  return Scalar::zero(d);
}

Polynomial random_polynomial(const RingPtr& ring, Rng& rng, const RandomShape& shape) {
  const auto n = ring->nvars();
  std::vector<Term> ts;
  const auto count = static_cast<unsigned>(uniform(rng, 1, std::max(1u, shape.max_terms)));
  for (unsigned k = 0; k < count; ++k) {
    Exponents e(n, 0);
    auto budget = static_cast<unsigned>(uniform(rng, 0, shape.max_degree));
    for (unsigned s = 0; s < budget && n > 0; ++s) ++e[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1))];
    ts.push_back({std::move(e), random_scalar(ring->domain, rng, shape)});
  }
  return Polynomial(ring, std::move(ts));
}

} // namespace symdiff
