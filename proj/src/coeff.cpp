#include "symdiff/coeff.hpp"

#include <algorithm>
#include <sstream>

#include "symdiff/dense_poly.hpp"

namespace symdiff {

namespace {

using IntPoly = std::vector<mpz_class>;
using FpPoly = std::vector<std::uint64_t>;
using QPoly = detail::Dense<detail::RationalField>;

constexpr detail::RationalField kQ{};

void trim(IntPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

IntPoly int_add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

IntPoly int_neg(const IntPoly& a) {
  IntPoly r = a;
  for (auto& c : r) c = -c;
  return r;
}

IntPoly int_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

mpz_class content(const IntPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

bool divisible_by(const mpz_class& v, std::uint64_t p) {
  return mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
}

unsigned count_p(const mpz_class& v, std::uint64_t p) {
  if (sgn(v) == 0) return kInfiniteValuation;
  mpz_class rest;
  const mpz_class pz(static_cast<unsigned long>(p));
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t()));
}

/// Canonical form of num/den in Q(t), den nonzero.
IntFraction normalize_int_fraction(IntPoly num, IntPoly den) {
  trim(num);
  trim(den);
  if (den.empty()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  if (num.empty()) return {{}, {mpz_class(1)}};
  QPoly qn(num.begin(), num.end());
  QPoly qd(den.begin(), den.end());
  if (den.size() > 1) {
    auto g = detail::gcd(kQ, qn, qd);
    if (g.size() > 1) {
      qn = detail::divmod(kQ, qn, g).first;
      qd = detail::divmod(kQ, qd, g).first;
    }
  }
  mpz_class l = 1;
  for (const auto& c : qn) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& c : qd) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IntPoly n2, d2;
  for (const auto& c : qn) n2.push_back(mpz_class(c * l));
  for (const auto& c : qd) d2.push_back(mpz_class(c * l));
  mpz_class g = content(n2);
  const mpz_class gd = content(d2);
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gd.get_mpz_t());
  if (sgn(d2.back()) < 0) g = -g;
  for (auto& c : n2) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  for (auto& c : d2) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  trim(n2);
  return {std::move(n2), std::move(d2)};
}

FpFraction normalize_fp_fraction(const detail::PrimeField& f, FpPoly num, FpPoly den) {
  detail::trim(f, num);
  detail::trim(f, den);
  if (den.empty()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  if (num.empty()) return {{}, {1}};
  if (den.size() > 1) {
    auto g = detail::gcd(f, num, den);
    if (g.size() > 1) {
      num = detail::divmod(f, num, g).first;
      den = detail::divmod(f, den, g).first;
    }
  }
  const auto inv = f.inv(den.back());
  return {detail::scale(f, num, inv), detail::scale(f, den, inv)};
}

void check_local_integer(const mpq_class& q, std::uint64_t p) {
  if (divisible_by(q.get_den(), p))
    throw Error(ErrorCode::NonUnitDivisor, "value " + q.get_str() + " is not in Z_(" +
                                               std::to_string(p) + ")");
}

void check_local_fraction(const IntFraction& a, std::uint64_t p) {
  if (divisible_by(content(a.den), p))
    throw Error(ErrorCode::NonUnitDivisor,
                "denominator vanishes modulo " + std::to_string(p));
}

std::string term_coeff_prefix(const std::string& c, bool constant) {
  if (constant) return c;
  if (c == "1") return "";
  if (c == "-1") return "-";
  return c + "*";
}

template <class Coeffs, class ToStr>
std::string t_poly_string(const Coeffs& a, ToStr to_str) {
  if (a.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = a.size(); k-- > 0;) {
    std::string c = to_str(a[k]);
    if (c == "0") continue;
    bool neg = c[0] == '-';
    if (neg) c = c.substr(1);
    std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    std::string piece = term_coeff_prefix(c, k == 0) + mono;
    if (first) {
      out += (neg ? "-" : "") + piece;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  }
  return out;
}

template <class Coeffs>
std::size_t nonzero_terms(const Coeffs& a) {
  std::size_t n = 0;
  for (const auto& c : a)
    if (c != 0) ++n;
  return n;
}

template <class Coeffs, class ToStr>
std::string fraction_string(const Coeffs& num, const Coeffs& den, ToStr to_str) {
  std::string n = t_poly_string(num, to_str);
  if (den.size() == 1 && to_str(den[0]) == "1") return n;
  if (nonzero_terms(num) > 1) n = "(" + n + ")";
  std::string d = t_poly_string(den, to_str);
  const bool den_plain = den.size() == 1 || (nonzero_terms(den) == 1 && to_str(den.back()) == "1");
  if (!den_plain) d = "(" + d + ")";
  return n + "/" + d;
}

detail::PrimeField field_of(const DomainSpec& d) { return detail::PrimeField{d.p()}; }

void require_same(const Scalar& a, const Scalar& b) {
  if (!(a.domain() == b.domain()))
    throw Error(ErrorCode::DomainMismatch, a.domain().name() + " vs " + b.domain().name());
}

void require_dvr(const DomainSpec& d, const char* what) {
  if (!d.is_dvr())
    throw Error(ErrorCode::NotDVRDomain, std::string(what) + " needs Z_(p) or Z[t]_(p), got " +
                                             d.name());
}

/// Numerator and denominator as polynomial Scalars.
std::pair<Scalar, Scalar> split_fraction(const Scalar& a) {
  const auto& d = a.domain();
  if (const auto* f = std::get_if<FpFraction>(&a.rep()))
    return {make_scalar(d, FpFraction{f->num, {1}}), make_scalar(d, FpFraction{f->den, {1}})};
  if (const auto* f = std::get_if<IntFraction>(&a.rep()))
    return {make_scalar(d, IntFraction{f->num, {mpz_class(1)}}),
            make_scalar(d, IntFraction{f->den, {mpz_class(1)}})};
  throw Error(ErrorCode::NoParameterT, d.name() + " has no parameter t");
}

/// D_t^(k) of a Scalar whose denominator is 1.
Scalar hasse_t_poly(const Scalar& a, unsigned k) {
  const auto& d = a.domain();
  if (const auto* f = std::get_if<FpFraction>(&a.rep())) {
    auto field = field_of(d);
    FpPoly r;
    for (std::size_t m = k; m < f->num.size(); ++m) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), m, k);
      r.push_back(field.mul(f->num[m], field.from_int(b)));
    }
    return make_scalar(d, FpFraction{r, {1}});
  }
  const auto& f = std::get<IntFraction>(a.rep());
  IntPoly r;
  for (std::size_t m = k; m < f.num.size(); ++m) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), m, k);
    r.push_back(f.num[m] * b);
  }
  return make_scalar(d, IntFraction{r, {mpz_class(1)}});
}

} // namespace

// ---------------------------------------------------------------------------
// DomainSpec

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

DomainSpec DomainSpec::rationals() { return {DomainKind::RationalsQ, 0}; }

DomainSpec DomainSpec::make(DomainKind kind, std::uint64_t p) {
  if (kind == DomainKind::RationalsQ) return rationals();
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p))
    throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not a prime below 2^32");
  return {kind, p};
}

DomainSpec DomainSpec::prime_field(std::uint64_t p) { return make(DomainKind::PrimeFieldFp, p); }
DomainSpec DomainSpec::rational_functions(std::uint64_t p) {
  return make(DomainKind::RationalFunctionsFpT, p);
}
DomainSpec DomainSpec::local_integers(std::uint64_t p) {
  return make(DomainKind::PLocalIntegersZp, p);
}
DomainSpec DomainSpec::local_poly_fractions(std::uint64_t p) {
  return make(DomainKind::PLocalPolyFracZtp, p);
}

std::string DomainSpec::name() const {
  const auto ps = std::to_string(p_);
  switch (kind_) {
  case DomainKind::RationalsQ: return "Q";
  case DomainKind::PrimeFieldFp: return "F_" + ps;
  case DomainKind::RationalFunctionsFpT: return "F_" + ps + "(t)";
  case DomainKind::PLocalIntegersZp: return "Z_(" + ps + ")";
  case DomainKind::PLocalPolyFracZtp: return "Z[t]_(" + ps + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Scalar construction

Scalar make_scalar(const DomainSpec& d, Scalar::Rep rep) {
  switch (d.kind()) {
  case DomainKind::RationalsQ: {
    auto q = std::get<mpq_class>(std::move(rep));
    q.canonicalize();
    return Scalar(d, std::move(q));
  }
  case DomainKind::PLocalIntegersZp: {
    auto q = std::get<mpq_class>(std::move(rep));
    q.canonicalize();
    check_local_integer(q, d.p());
    return Scalar(d, std::move(q));
  }
  case DomainKind::PrimeFieldFp: return Scalar(d, std::get<std::uint64_t>(rep) % d.p());
  case DomainKind::RationalFunctionsFpT: {
    auto f = std::get<FpFraction>(std::move(rep));
    return Scalar(d, normalize_fp_fraction(field_of(d), std::move(f.num), std::move(f.den)));
  }
  case DomainKind::PLocalPolyFracZtp: {
    auto f = std::get<IntFraction>(std::move(rep));
    auto n = normalize_int_fraction(std::move(f.num), std::move(f.den));
    check_local_fraction(n, d.p());
    return Scalar(d, std::move(n));
  }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown domain");
}

Scalar Scalar::zero(const DomainSpec& d) { return from_int(d, mpz_class(0)); }
Scalar Scalar::one(const DomainSpec& d) { return from_int(d, mpz_class(1)); }

Scalar Scalar::from_int(const DomainSpec& d, const mpz_class& v) {
  switch (d.kind()) {
  case DomainKind::RationalsQ:
  case DomainKind::PLocalIntegersZp: return Scalar(d, mpq_class(v));
  case DomainKind::PrimeFieldFp: return Scalar(d, field_of(d).from_int(v));
  case DomainKind::RationalFunctionsFpT: {
    FpPoly n{field_of(d).from_int(v)};
    if (n[0] == 0) n.clear();
    return Scalar(d, FpFraction{std::move(n), {1}});
  }
  case DomainKind::PLocalPolyFracZtp: {
    IntPoly n{v};
    trim(n);
    return Scalar(d, IntFraction{std::move(n), {mpz_class(1)}});
  }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown domain");
}

Scalar Scalar::from_fraction(const DomainSpec& d, const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw Error(ErrorCode::DivisionByZero, "fraction with zero denominator");
  switch (d.kind()) {
  case DomainKind::RationalsQ:
  case DomainKind::PLocalIntegersZp: return make_scalar(d, mpq_class(num, den));
  case DomainKind::PrimeFieldFp:
  case DomainKind::RationalFunctionsFpT: {
    auto b = from_int(d, den);
    if (b.is_zero())
      throw Error(ErrorCode::DivisionByZero,
                  den.get_str() + " vanishes in " + d.name());
    return from_int(d, num) / b;
  }
  case DomainKind::PLocalPolyFracZtp: return make_scalar(d, IntFraction{{num}, {den}});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown domain");
}

Scalar Scalar::parameter(const DomainSpec& d) {
  if (d.kind() == DomainKind::RationalFunctionsFpT) return Scalar(d, FpFraction{{0, 1}, {1}});
  if (d.kind() == DomainKind::PLocalPolyFracZtp)
    return Scalar(d, IntFraction{{mpz_class(0), mpz_class(1)}, {mpz_class(1)}});
  throw Error(ErrorCode::NoParameterT, d.name() + " has no parameter t");
}

Scalar Scalar::from_t_poly(const DomainSpec& d, const std::vector<mpz_class>& coeffs) {
  if (d.kind() == DomainKind::RationalFunctionsFpT) {
    auto f = field_of(d);
    FpPoly n;
    for (const auto& c : coeffs) n.push_back(f.from_int(c));
    return make_scalar(d, FpFraction{std::move(n), {1}});
  }
  if (d.kind() == DomainKind::PLocalPolyFracZtp) return make_scalar(d, IntFraction{coeffs, {1}});
  if (coeffs.size() > 1) throw Error(ErrorCode::NoParameterT, d.name() + " has no parameter t");
  return coeffs.empty() ? zero(d) : from_int(d, coeffs[0]);
}

Scalar Scalar::canonicalized() const { return make_scalar(domain_, rep_); }

// ---------------------------------------------------------------------------
// Predicates

bool Scalar::is_zero() const {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, mpq_class>) return sgn(v) == 0;
        else if constexpr (std::is_same_v<T, std::uint64_t>) return v == 0;
        else return v.num.empty();
      },
      rep_);
}

bool Scalar::is_one() const { return *this == one(domain_); }

bool Scalar::is_unit() const {
  if (is_zero()) return false;
  if (domain_.is_field()) return true;
  return p_valuation(*this) == 0;
}

bool Scalar::is_rational_number() const {
  if (const auto* f = std::get_if<FpFraction>(&rep_)) return f->num.size() <= 1 && f->den.size() == 1;
  if (const auto* f = std::get_if<IntFraction>(&rep_)) return f->num.size() <= 1 && f->den.size() == 1;
  return true;
}

// ---------------------------------------------------------------------------
// Arithmetic

Scalar Scalar::operator-() const { return Scalar::zero(domain_) - *this; }

Scalar Scalar::pow(unsigned e) const {
  Scalar r = one(domain_);
  Scalar b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) { return scalar_arith(a, b, ArithOp::Add); }
Scalar operator-(const Scalar& a, const Scalar& b) { return scalar_arith(a, b, ArithOp::Sub); }
Scalar operator*(const Scalar& a, const Scalar& b) { return scalar_arith(a, b, ArithOp::Mul); }
Scalar operator/(const Scalar& a, const Scalar& b) { return scalar_arith(a, b, ArithOp::Div); }

Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op) {
  require_same(a, b);
  const auto& d = a.domain();
  if (op == ArithOp::Div && b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  switch (d.kind()) {
  case DomainKind::RationalsQ:
  case DomainKind::PLocalIntegersZp: {
    const auto& x = std::get<mpq_class>(a.rep());
    const auto& y = std::get<mpq_class>(b.rep());
    mpq_class r;
    switch (op) {
    case ArithOp::Add: r = x + y; break;
    case ArithOp::Sub: r = x - y; break;
    case ArithOp::Mul: r = x * y; break;
    case ArithOp::Div: r = x / y; break;
    }
    return make_scalar(d, std::move(r));
  }
  case DomainKind::PrimeFieldFp: {
    const auto f = field_of(d);
    const auto x = std::get<std::uint64_t>(a.rep());
    const auto y = std::get<std::uint64_t>(b.rep());
    switch (op) {
    case ArithOp::Add: return make_scalar(d, f.add(x, y));
    case ArithOp::Sub: return make_scalar(d, f.sub(x, y));
    case ArithOp::Mul: return make_scalar(d, f.mul(x, y));
    case ArithOp::Div: return make_scalar(d, f.mul(x, f.inv(y)));
    }
    break;
  }
  case DomainKind::RationalFunctionsFpT: {
    const auto f = field_of(d);
    const auto& x = std::get<FpFraction>(a.rep());
    const auto& y = std::get<FpFraction>(b.rep());
    using detail::mul;
    switch (op) {
    case ArithOp::Add:
    case ArithOp::Sub: {
      const bool same_den = x.den == y.den;
      auto l = same_den ? x.num : mul(f, x.num, y.den);
      auto r = same_den ? y.num : mul(f, y.num, x.den);
      auto n = op == ArithOp::Add ? detail::add(f, l, r) : detail::sub(f, l, r);
      return make_scalar(d, FpFraction{std::move(n), same_den ? x.den : mul(f, x.den, y.den)});
    }
    case ArithOp::Mul:
      return make_scalar(d, FpFraction{mul(f, x.num, y.num), mul(f, x.den, y.den)});
    case ArithOp::Div:
      return make_scalar(d, FpFraction{mul(f, x.num, y.den), mul(f, x.den, y.num)});
    }
    break;
  }
  case DomainKind::PLocalPolyFracZtp: {
    const auto& x = std::get<IntFraction>(a.rep());
    const auto& y = std::get<IntFraction>(b.rep());
    switch (op) {
    case ArithOp::Add:
    case ArithOp::Sub: {
      const bool same_den = x.den == y.den;
      auto l = same_den ? x.num : int_mul(x.num, y.den);
      auto r = same_den ? y.num : int_mul(y.num, x.den);
      auto n = int_add(l, op == ArithOp::Add ? r : int_neg(r));
      return make_scalar(d, IntFraction{std::move(n), same_den ? x.den : int_mul(x.den, y.den)});
    }
    case ArithOp::Mul:
      return make_scalar(d, IntFraction{int_mul(x.num, y.num), int_mul(x.den, y.den)});
    case ArithOp::Div:
      return make_scalar(d, IntFraction{int_mul(x.num, y.den), int_mul(x.den, y.num)});
    }
    break;
  }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown domain");
}

// ---------------------------------------------------------------------------
// Valuation

unsigned p_valuation(const Scalar& a) {
  const auto& d = a.domain();
  require_dvr(d, "p_valuation");
  if (a.is_zero()) return kInfiniteValuation;
  if (const auto* q = std::get_if<mpq_class>(&a.rep())) return count_p(q->get_num(), d.p());
  return count_p(content(std::get<IntFraction>(a.rep()).num), d.p());
}

Scalar unit_part(const Scalar& a) {
  const unsigned v = p_valuation(a);
  if (v == kInfiniteValuation) throw Error(ErrorCode::DivisionByZero, "unit part of zero");
  if (v == 0) return a;
  return a / Scalar::from_int(a.domain(), mpz_class(static_cast<unsigned long>(a.domain().p()))).pow(v);
}

// ---------------------------------------------------------------------------
// Frobenius lift and p-derivation on coefficients

namespace {

Scalar t_image_or_default(const DomainSpec& d, const ScalarLift& lift) {
  if (lift.t_image) return *lift.t_image;
  return Scalar::parameter(d).pow(static_cast<unsigned>(d.p()));
}

/// Evaluates an integer polynomial in t at `x` (Horner).
Scalar eval_int_poly(const DomainSpec& d, const IntPoly& coeffs, const Scalar& x) {
  Scalar r = Scalar::zero(d);
  for (std::size_t k = coeffs.size(); k-- > 0;) r = r * x + Scalar::from_int(d, coeffs[k]);
  return r;
}

} // namespace

void validate_lift(const DomainSpec& d, const ScalarLift& lift) {
  require_dvr(d, "Frobenius lift");
  if (d.kind() != DomainKind::PLocalPolyFracZtp || !lift.t_image) return;
  if (!(lift.t_image->domain() == d))
    throw Error(ErrorCode::InvalidLift, "lift image lives in " + lift.t_image->domain().name());
  const auto diff = *lift.t_image - Scalar::parameter(d).pow(static_cast<unsigned>(d.p()));
  if (p_valuation(diff) < 1)
    throw Error(ErrorCode::InvalidLift,
                "image of t " + lift.t_image->to_string() + " is not congruent to t^p mod p");
}

Scalar scalar_frobenius(const Scalar& a, const ScalarLift& lift) {
  const auto& d = a.domain();
  validate_lift(d, lift);
  if (d.kind() == DomainKind::PLocalIntegersZp) return a;
  const auto& f = std::get<IntFraction>(a.rep());
  const auto tau = t_image_or_default(d, lift);
  const auto image = eval_int_poly(d, f.num, tau) / eval_int_poly(d, f.den, tau);
  if (p_valuation(image - a.pow(static_cast<unsigned>(d.p()))) < 1)
    throw Error(ErrorCode::InvalidLift, "Frobenius congruence failed for " + a.to_string());
  return image;
}

Scalar scalar_delta(const Scalar& a, const ScalarLift& lift) {
  const auto& d = a.domain();
  const auto diff = scalar_frobenius(a, lift) - a.pow(static_cast<unsigned>(d.p()));
  return diff / Scalar::from_int(d, mpz_class(static_cast<unsigned long>(d.p())));
}

// ---------------------------------------------------------------------------
// Hasse derivative in t

Scalar scalar_hasse_t(const Scalar& a, unsigned k) {
  if (!a.domain().has_t())
    throw Error(ErrorCode::NoParameterT, a.domain().name() + " has no parameter t");
  if (k == 0) return a;
  auto [u, v] = split_fraction(a);
  if (v.is_one()) return hasse_t_poly(u, k);
  // D^(j)(u/v) = (D^(j)(u) - sum_{i=1..j} D^(i)(v) D^(j-i)(u/v)) / v
  std::vector<Scalar> w{a};
  std::vector<Scalar> dv{v};
  for (unsigned j = 1; j <= k; ++j) dv.push_back(hasse_t_poly(v, j));
  for (unsigned j = 1; j <= k; ++j) {
    Scalar acc = hasse_t_poly(u, j);
    for (unsigned i = 1; i <= j; ++i) acc -= dv[i] * w[j - i];
    w.push_back(acc / v);
  }
  return w[k];
}

Scalar binomial_scalar(const DomainSpec& d, unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Scalar::from_int(d, b);
}

// ---------------------------------------------------------------------------
// Printing

std::string Scalar::to_string() const {
  return std::visit(
      [this](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, mpq_class>) return v.get_str();
        else if constexpr (std::is_same_v<T, std::uint64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, FpFraction>)
          return fraction_string(v.num, v.den, [](std::uint64_t c) { return std::to_string(c); });
        else
          return fraction_string(v.num, v.den, [](const mpz_class& c) { return c.get_str(); });
      },
      rep_);
}

} // namespace symdiff
