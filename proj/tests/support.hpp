#pragma once

// Test-only helpers: random generators and independent oracles that do not
// go through the Groebner engine.

#include <algorithm>
#include <optional>
#include <vector>

#include "symdiff/groebner.hpp"
#include "symdiff/random.hpp"

namespace symdiff::testing {

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// All exponent vectors of total degree exactly d in n variables.
inline std::vector<Exponents> monomials_of_degree(std::size_t n, unsigned d) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (n == 0) {
    if (d == 0) out.push_back(e);
    return out;
  }
  rec(rec, 0, d);
  return out;
}

/// Random homogeneous polynomial of degree d with up to `max_terms` terms.
inline Polynomial random_homogeneous(const RingPtr& ring, Rng& rng, unsigned d, unsigned max_terms,
                                     const RandomShape& shape = {}) {
  const auto monos = monomials_of_degree(ring->nvars(), d);
  std::vector<Term> ts;
  const auto count = static_cast<unsigned>(uniform(rng, 1, max_terms));
  for (unsigned k = 0; k < count; ++k) {
    const auto& m = monos[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(monos.size()) - 1))];
    ts.push_back({m, random_scalar(ring->domain, rng, shape)});
  }
  return Polynomial(ring, std::move(ts));
}

inline bool is_homogeneous(const Polynomial& f) {
  if (f.is_zero()) return true;
  const auto d = terms::degree(f.terms().front().exp);
  return std::all_of(f.terms().begin(), f.terms().end(), [&](const Term& t) { return terms::degree(t.exp) == d; });
}

/// Dense Gauss-Jordan elimination over a field of Scalars; returns a solution
/// of A x = b or nothing.
inline std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b,
                                                       const DomainSpec& d) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(a[r], a[sel]);
    std::swap(b[r], b[sel]);
    const auto inv = Scalar::one(d) / a[r][c];
    for (auto& x : a[r]) x = x * inv;
    b[r] = b[r] * inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || a[k][c].is_zero()) continue;
      const auto m = a[k][c];
      for (std::size_t j = c; j < cols; ++j) a[k][j] = a[k][j] - m * a[r][j];
      b[k] = b[k] - m * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t k = r; k < rows; ++k)
    if (!b[k].is_zero()) return std::nullopt;
  std::vector<Scalar> x(cols, Scalar::zero(d));
  for (std::size_t k = 0; k < r; ++k) x[pivot_col[k]] = b[k];
  return x;
}

/// Cofactors h with f = sum h_i g_i, each h_i homogeneous of degree
/// deg f - deg g_i. For homogeneous g_i and f over a field this decides
/// membership exactly.
inline std::optional<std::vector<Polynomial>> homogeneous_cofactors(const std::vector<Polynomial>& gens,
                                                                    const Polynomial& f) {
  const auto& ring = f.ring();
  const auto& d = ring->domain;
  if (f.is_zero()) return std::vector<Polynomial>(gens.size(), Polynomial(ring));
  const auto deg = terms::degree(f.terms().front().exp);

  struct Unknown {
    std::size_t gen;
    Exponents mono;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    const auto gd = terms::degree(gens[i].terms().front().exp);
    if (gd > deg) continue;
    for (auto& m : monomials_of_degree(ring->nvars(), deg - gd)) unknowns.push_back({i, std::move(m)});
  }
  const auto rows_monos = monomials_of_degree(ring->nvars(), deg);
  auto row_of = [&](const Exponents& e) {
    return static_cast<std::size_t>(std::find(rows_monos.begin(), rows_monos.end(), e) - rows_monos.begin());
  };
  std::vector<std::vector<Scalar>> a(rows_monos.size(), std::vector<Scalar>(unknowns.size(), Scalar::zero(d)));
  std::vector<Scalar> b(rows_monos.size(), Scalar::zero(d));
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (const auto& t : gens[unknowns[u].gen].terms()) {
      auto& cell = a[row_of(terms::product(t.exp, unknowns[u].mono))][u];
      cell = cell + t.coeff;
    }
  for (const auto& t : f.terms()) b[row_of(t.exp)] = t.coeff;
  const auto x = solve_linear(std::move(a), std::move(b), d);
  if (!x) return std::nullopt;
  std::vector<std::vector<Term>> parts(gens.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    if (!(*x)[u].is_zero()) parts[unknowns[u].gen].push_back({unknowns[u].mono, (*x)[u]});
  std::vector<Polynomial> out;
  for (auto& p : parts) out.emplace_back(ring, std::move(p));
  return out;
}

/// Univariate gcd over Q by the Euclidean algorithm on dense coefficient
/// vectors (lowest degree first), made monic.
inline std::vector<mpq_class> univariate_gcd(std::vector<mpq_class> a, std::vector<mpq_class> b) {
  auto trim = [](std::vector<mpq_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size() && !a.empty()) {
      const mpq_class c = a.back() / b.back();
      const auto shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
      trim(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const mpq_class lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

/// Generators of I ∩ k[vars without the first], by elimination through a
/// Groebner basis of I in a ring whose first variable is eliminated.
inline Ideal eliminate_first(const Ideal& ideal, const RingPtr& target) {
  const auto gb = ideal.groebner();
  std::vector<Polynomial> out;
  for (const auto& g : gb->elements) {
    if (std::any_of(g.terms().begin(), g.terms().end(), [](const Term& t) { return t.exp[0] != 0; })) continue;
    std::vector<Term> ts;
    for (const auto& t : g.terms()) ts.push_back({Exponents(t.exp.begin() + 1, t.exp.end()), t.coeff});
    out.emplace_back(target, std::move(ts));
  }
  return Ideal(target, std::move(out));
}

/// Random element of the ideal: sum of random multiples of its generators.
inline Polynomial random_combination(const Ideal& ideal, Rng& rng, const RandomShape& shape = {2, 3, 4, true}) {
  Polynomial acc(ideal.ring());
  for (const auto& g : ideal.generators()) acc += random_polynomial(ideal.ring(), rng, shape) * g;
  return acc;
}

} // namespace symdiff::testing
