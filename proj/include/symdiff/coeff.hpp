#pragma once

// Exact coefficient domains: Q, F_p, F_p(t), Z_(p) and Z[t]_(p).
//
// The two local rings are discrete valuation rings with uniformizer p. Z_(p)
// stands in for the complete ring of p-adic integers; every operation the
// engine performs on explicit inputs stays inside it.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "symdiff/error.hpp"

namespace symdiff {

enum class DomainKind {
  RationalsQ,
  PrimeFieldFp,
  RationalFunctionsFpT,
  PLocalIntegersZp,
  PLocalPolyFracZtp,
};

class DomainSpec {
public:
  static DomainSpec rationals();
  /// Throws InvalidArgument unless `p` is a prime below 2^32.
  static DomainSpec prime_field(std::uint64_t p);
  static DomainSpec rational_functions(std::uint64_t p);
  static DomainSpec local_integers(std::uint64_t p);
  static DomainSpec local_poly_fractions(std::uint64_t p);
  static DomainSpec make(DomainKind kind, std::uint64_t p);

  DomainKind kind() const noexcept { return kind_; }
  /// 0 for the rationals.
  std::uint64_t p() const noexcept { return p_; }

  bool is_dvr() const noexcept {
    return kind_ == DomainKind::PLocalIntegersZp || kind_ == DomainKind::PLocalPolyFracZtp;
  }
  bool is_field() const noexcept { return !is_dvr(); }
  bool has_t() const noexcept {
    return kind_ == DomainKind::RationalFunctionsFpT || kind_ == DomainKind::PLocalPolyFracZtp;
  }
  std::uint64_t characteristic() const noexcept {
    return (kind_ == DomainKind::PrimeFieldFp || kind_ == DomainKind::RationalFunctionsFpT) ? p_ : 0;
  }

  /// Short human name, e.g. "F_5(t)".
  std::string name() const;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

private:
  DomainSpec(DomainKind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  DomainKind kind_;
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

/// Reduced fraction of polynomials in t over F_p; the denominator is monic.
struct FpFraction {
  std::vector<std::uint64_t> num;
  std::vector<std::uint64_t> den;
  friend bool operator==(const FpFraction&, const FpFraction&) = default;
};

/// Reduced fraction of integer polynomials in t. The numerator and denominator
/// share no factor in Q[t], their coefficients have no common integer factor,
/// and the denominator has a positive leading coefficient.
struct IntFraction {
  std::vector<mpz_class> num;
  std::vector<mpz_class> den;
  friend bool operator==(const IntFraction&, const IntFraction&) = default;
};

/// Valuation of zero.
inline constexpr unsigned kInfiniteValuation = std::numeric_limits<unsigned>::max();

class Scalar {
public:
  using Rep = std::variant<mpq_class, std::uint64_t, FpFraction, IntFraction>;

  static Scalar zero(const DomainSpec& d);
  static Scalar one(const DomainSpec& d);
  static Scalar from_int(const DomainSpec& d, const mpz_class& v);
  static Scalar from_int(const DomainSpec& d, long v) { return from_int(d, mpz_class(v)); }
  /// num/den mapped into the domain. Throws DivisionByZero or NonUnitDivisor.
  static Scalar from_fraction(const DomainSpec& d, const mpz_class& num, const mpz_class& den);
  /// The parameter t. Throws NoParameterT for domains without it.
  static Scalar parameter(const DomainSpec& d);
  /// Polynomial in t with integer coefficients (lowest degree first).
  static Scalar from_t_poly(const DomainSpec& d, const std::vector<mpz_class>& coeffs);

  const DomainSpec& domain() const noexcept { return domain_; }
  const Rep& rep() const noexcept { return rep_; }

  bool is_zero() const;
  bool is_one() const;
  /// Nonzero in a field; valuation zero in a DVR.
  bool is_unit() const;
  /// Representable as a ratio of integers (no t).
  bool is_rational_number() const;

  Scalar operator-() const;
  Scalar pow(unsigned e) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  /// Division; in a DVR the quotient must stay in the ring.
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.domain_ == b.domain_ && a.rep_ == b.rep_;
  }

  /// Text form accepted back by the expression parser.
  std::string to_string() const;

  /// Re-normalizes the stored representation. The result equals *this for
  /// any Scalar built through the public API.
  Scalar canonicalized() const;

private:
  Scalar(DomainSpec d, Rep r) : domain_(d), rep_(std::move(r)) {}
  friend Scalar make_scalar(const DomainSpec&, Rep);

  DomainSpec domain_;
  Rep rep_;
};

/// Builds a Scalar from a raw (possibly unreduced) representation.
Scalar make_scalar(const DomainSpec& d, Scalar::Rep rep);

enum class ArithOp { Add, Sub, Mul, Div };
Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op);

/// Largest k with a in p^k V; kInfiniteValuation for zero. NotDVRDomain
/// outside Z_(p) and Z[t]_(p).
unsigned p_valuation(const Scalar& a);

/// The unit u with a = p^k u (a nonzero, DVR domain).
Scalar unit_part(const Scalar& a);

/// Image of t under a Frobenius lift on the coefficient ring. Absent means
/// t -> t^p. Ignored on Z_(p), where the only lift is the identity.
struct ScalarLift {
  std::optional<Scalar> t_image;
};

/// Throws InvalidLift unless the image of t is congruent to t^p modulo p.
void validate_lift(const DomainSpec& d, const ScalarLift& lift);

Scalar scalar_frobenius(const Scalar& a, const ScalarLift& lift = {});
/// (phi(a) - a^p) / p.
Scalar scalar_delta(const Scalar& a, const ScalarLift& lift = {});

/// Hasse derivative D_t^(k) of a coefficient. Throws NoParameterT.
Scalar scalar_hasse_t(const Scalar& a, unsigned k);

/// Integer binomial coefficient mapped into the domain.
Scalar binomial_scalar(const DomainSpec& d, unsigned long n, unsigned long k);

} // namespace symdiff
