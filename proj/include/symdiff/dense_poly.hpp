#pragma once

// Dense univariate polynomials over a field, used for the rational-function
// coefficient domains. Coefficients are stored lowest degree first and the
// vector is always trimmed (no trailing zeros; the zero polynomial is empty).

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace symdiff::detail {

struct RationalField {
  using value_type = mpq_class;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(const mpz_class& v) const { return mpq_class(v); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return 1 / a; }
};

struct PrimeField {
  std::uint64_t p;

  using value_type = std::uint64_t;

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  value_type from_int(const mpz_class& v) const {
    mpz_class r = v % mpz_class(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
  }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p ? s - p : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p - b; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type pow(value_type a, std::uint64_t e) const {
    value_type r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  value_type inv(value_type a) const { return pow(a, p - 2); }
};

template <class F>
using Dense = std::vector<typename F::value_type>;

template <class F>
void trim(const F& field, Dense<F>& a) {
  while (!a.empty() && field.is_zero(a.back())) a.pop_back();
}

template <class F>
int degree(const Dense<F>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class F>
Dense<F> add(const F& field, const Dense<F>& a, const Dense<F>& b) {
  Dense<F> r(std::max(a.size(), b.size()), field.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = field.add(r[i], b[i]);
  trim(field, r);
  return r;
}

template <class F>
Dense<F> sub(const F& field, const Dense<F>& a, const Dense<F>& b) {
  Dense<F> r(std::max(a.size(), b.size()), field.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = field.sub(r[i], b[i]);
  trim(field, r);
  return r;
}

template <class F>
Dense<F> mul(const F& field, const Dense<F>& a, const Dense<F>& b) {
  if (a.empty() || b.empty()) return {};
  Dense<F> r(a.size() + b.size() - 1, field.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (field.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = field.add(r[i + j], field.mul(a[i], b[j]));
  }
  trim(field, r);
  return r;
}

template <class F>
Dense<F> scale(const F& field, const Dense<F>& a, const typename F::value_type& c) {
  Dense<F> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(field.mul(x, c));
  trim(field, r);
  return r;
}

/// Euclidean division; `b` must be nonzero.
template <class F>
std::pair<Dense<F>, Dense<F>> divmod(const F& field, const Dense<F>& a, const Dense<F>& b) {
  Dense<F> rem = a;
  if (rem.size() < b.size()) return {{}, rem};
  Dense<F> quo(rem.size() - b.size() + 1, field.zero());
  const auto lead_inv = field.inv(b.back());
  while (!rem.empty() && rem.size() >= b.size()) {
    const std::size_t shift = rem.size() - b.size();
    const auto c = field.mul(rem.back(), lead_inv);
    quo[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j)
      rem[shift + j] = field.sub(rem[shift + j], field.mul(c, b[j]));
    trim(field, rem);
  }
  trim(field, quo);
  return {quo, rem};
}

template <class F>
Dense<F> monic(const F& field, const Dense<F>& a) {
  if (a.empty()) return a;
  return scale(field, a, field.inv(a.back()));
}

/// Monic gcd (zero if both inputs are zero).
template <class F>
Dense<F> gcd(const F& field, Dense<F> a, Dense<F> b) {
  while (!b.empty()) {
    auto r = divmod(field, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(field, a);
}

} // namespace symdiff::detail
