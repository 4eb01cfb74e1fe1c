#include "symdiff/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace symdiff {

// ---------------------------------------------------------------------------
// MonomialOrder

MonomialOrder MonomialOrder::lex(std::size_t nvars) { return blocks({{nvars, Kind::Lex}}); }

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  return blocks({{nvars, Kind::GRevLex}});
}

MonomialOrder MonomialOrder::blocks(std::vector<Block> bs) {
  MonomialOrder o;
  std::erase_if(bs, [](const Block& b) { return b.size == 0; });
  o.blocks_ = std::move(bs);
  o.perm_.resize(o.nvars());
  std::iota(o.perm_.begin(), o.perm_.end(), std::size_t{0});
  return o;
}

MonomialOrder MonomialOrder::eliminating_first() const {
  MonomialOrder o;
  o.blocks_.push_back({1, Kind::Lex});
  o.blocks_.insert(o.blocks_.end(), blocks_.begin(), blocks_.end());
  o.perm_.push_back(0);
  for (auto v : perm_) o.perm_.push_back(v + 1);
  return o;
}

MonomialOrder MonomialOrder::with_permutation(std::vector<std::size_t> perm) const {
  auto sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() != nvars())
      throw Error(ErrorCode::InvalidArgument, "not a permutation of the ring variables");
  MonomialOrder o = *this;
  o.perm_ = std::move(perm);
  return o;
}

std::size_t MonomialOrder::nvars() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.size;
  return n;
}

int MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
  std::size_t pos = 0;
  for (const auto& blk : blocks_) {
    if (blk.kind == Kind::Lex) {
      for (std::size_t i = pos; i < pos + blk.size; ++i) {
        const auto va = a[perm_[i]], vb = b[perm_[i]];
        if (va != vb) return va < vb ? -1 : 1;
      }
    } else {
      std::uint64_t da = 0, db = 0;
      for (std::size_t i = pos; i < pos + blk.size; ++i) {
        da += a[perm_[i]];
        db += b[perm_[i]];
      }
      if (da != db) return da < db ? -1 : 1;
      for (std::size_t i = pos + blk.size; i-- > pos;) {
        const auto va = a[perm_[i]], vb = b[perm_[i]];
        if (va != vb) return va < vb ? 1 : -1;
      }
    }
    pos += blk.size;
  }
  return 0;
}

std::string MonomialOrder::to_string() const {
  std::string s;
  for (const auto& b : blocks_) {
    if (!s.empty()) s += ",";
    s += (b.kind == Kind::Lex ? "lex" : "grevlex") + std::string("(") + std::to_string(b.size) + ")";
  }
  s += "[";
  for (std::size_t i = 0; i < perm_.size(); ++i) s += (i ? "," : "") + std::to_string(perm_[i]);
  return s + "]";
}

// ---------------------------------------------------------------------------
// Rings

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

} // namespace

RingPtr make_ring(const DomainSpec& domain, std::vector<std::string> vars,
                  std::optional<MonomialOrder> order) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!valid_identifier(v)) throw Error(ErrorCode::InvalidArgument, "bad variable name '" + v + "'");
    if (domain.has_t() && v == "t")
      throw Error(ErrorCode::InvalidArgument, "'t' is the coefficient parameter of " + domain.name());
    if (v == "delta" || v == "id" || v == "o" || v.starts_with("D_"))
      throw Error(ErrorCode::InvalidArgument, "'" + v + "' is reserved for operator syntax");
    if (!seen.insert(v).second) throw Error(ErrorCode::InvalidArgument, "duplicate variable " + v);
  }
  MonomialOrder ord = order ? *order : MonomialOrder::grevlex(vars.size());
  if (ord.nvars() != vars.size())
    throw Error(ErrorCode::InvalidArgument, "monomial order has the wrong number of variables");
  return std::make_shared<const Ring>(Ring{domain, std::move(vars), std::move(ord)});
}

RingPtr elimination_ring(const RingPtr& base, const std::string& name) {
  std::vector<std::string> vars{name};
  vars.insert(vars.end(), base->vars.begin(), base->vars.end());
  return std::make_shared<const Ring>(Ring{base->domain, std::move(vars), base->order.eliminating_first()});
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

namespace {

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) throw Error(ErrorCode::RingMismatch, "polynomials live in different rings");
}

Scalar p_scalar(const DomainSpec& d) {
  return Scalar::from_int(d, mpz_class(static_cast<unsigned long>(d.p())));
}

} // namespace

// ---------------------------------------------------------------------------
// MultiIndex

std::uint32_t MultiIndex::total() const {
  return std::accumulate(exps.begin(), exps.end(), t_order);
}

bool enumeration_less(const MultiIndex& a, const MultiIndex& b) {
  const auto ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  for (std::size_t i = 0; i < std::min(a.exps.size(), b.exps.size()); ++i)
    if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
  if (a.exps.size() != b.exps.size()) return a.exps.size() < b.exps.size();
  return a.t_order > b.t_order;
}

// ---------------------------------------------------------------------------
// Term helpers

namespace terms {

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponents quotient(const Exponents& b, const Exponents& a) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

Exponents product(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::uint32_t degree(const Exponents& a) {
  return std::accumulate(a.begin(), a.end(), std::uint32_t{0});
}

void sort(std::vector<Term>& ts, const MonomialOrder& ord) {
  std::sort(ts.begin(), ts.end(),
            [&](const Term& x, const Term& y) { return ord.compare(x.exp, y.exp) > 0; });
}

std::vector<Term> sub_scaled(const std::vector<Term>& a, const Scalar& c, const Exponents& shift,
                             const std::vector<Term>& b, const MonomialOrder& ord) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  Exponents bj;
  while (i < a.size() || j < b.size()) {
    if (j < b.size()) bj = product(b[j].exp, shift);
    const int cmp = i == a.size() ? -1 : (j == b.size() ? 1 : ord.compare(a[i].exp, bj));
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(bj), -(c * b[j++].coeff)});
    } else {
      auto v = a[i].coeff - c * b[j].coeff;
      if (!v.is_zero()) out.push_back({a[i].exp, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

} // namespace terms

// ---------------------------------------------------------------------------
// Polynomial

namespace {

/// Sorts by `ord`, merges equal monomials and drops zeros.
std::vector<Term> canonical_terms(std::vector<Term> ts, const MonomialOrder& ord) {
  terms::sort(ts, ord);
  std::vector<Term> out;
  out.reserve(ts.size());
  for (auto& t : ts) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  return out;
}

} // namespace

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> ts) : ring_(std::move(ring)) {
  for (const auto& t : ts) {
    if (!(t.coeff.domain() == ring_->domain))
      throw Error(ErrorCode::DomainMismatch,
                  "coefficient in " + t.coeff.domain().name() + ", ring over " + ring_->domain.name());
    if (t.exp.size() != ring_->nvars())
      throw Error(ErrorCode::InvalidArgument, "exponent vector has the wrong length");
  }
  terms_ = canonical_terms(std::move(ts), ring_->order);
}

Polynomial Polynomial::constant(RingPtr ring, const Scalar& c) {
  const auto n = ring->nvars();
  return Polynomial(std::move(ring), {Term{Exponents(n, 0), c}});
}

Polynomial Polynomial::constant(RingPtr ring, long c) {
  const auto d = ring->domain;
  return constant(std::move(ring), Scalar::from_int(d, c));
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  Exponents e(ring->nvars(), 0);
  e.at(index) = 1;
  const auto d = ring->domain;
  return Polynomial(std::move(ring), {Term{std::move(e), Scalar::one(d)}});
}

Polynomial Polynomial::monomial(RingPtr ring, Exponents exp, const Scalar& c) {
  return Polynomial(std::move(ring), {Term{std::move(exp), c}});
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms::degree(terms_[0].exp) == 0);
}

Scalar Polynomial::constant_term() const {
  for (const auto& t : terms_)
    if (terms::degree(t.exp) == 0) return t.coeff;
  return Scalar::zero(domain());
}

std::uint32_t Polynomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, terms::degree(t.exp));
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = constant(ring_, 1);
  Polynomial b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  Polynomial r(a.ring_);
  r.terms_ = terms::sub_scaled(a.terms_, -Scalar::one(a.domain()), Exponents(a.ring_->nvars(), 0),
                               b.terms_, a.ring_->order);
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  Polynomial r(a.ring_);
  r.terms_ = terms::sub_scaled(a.terms_, Scalar::one(a.domain()), Exponents(a.ring_->nvars(), 0),
                               b.terms_, a.ring_->order);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  std::vector<Term> ts;
  ts.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) ts.push_back({terms::product(x.exp, y.exp), x.coeff * y.coeff});
  Polynomial r(a.ring_);
  r.terms_ = canonical_terms(std::move(ts), a.ring_->order);
  return r;
}

Polynomial operator*(const Scalar& c, const Polynomial& a) {
  if (!(c.domain() == a.domain())) throw Error(ErrorCode::DomainMismatch, "scalar domain differs");
  Polynomial r(a.ring_);
  if (c.is_zero()) return r;
  r.terms_ = a.terms_;
  for (auto& t : r.terms_) t.coeff = c * t.coeff;
  std::erase_if(r.terms_, [](const Term& t) { return t.coeff.is_zero(); });
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_, b.ring_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  return true;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  const auto& ord = a.ring_->order;
  const auto& lead = b.terms_.front();
  std::vector<Term> rem = a.terms_;
  std::vector<Term> quo;
  while (!rem.empty()) {
    const auto& lt = rem.front();
    if (!terms::divides(lead.exp, lt.exp))
      throw Error(ErrorCode::InexactDivision, b.to_string() + " does not divide " + a.to_string());
    Scalar c = Scalar::zero(a.domain());
    try {
      c = lt.coeff / lead.coeff;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonUnitDivisor) throw;
      throw Error(ErrorCode::InexactDivision, b.to_string() + " does not divide " + a.to_string());
    }
    auto shift = terms::quotient(lt.exp, lead.exp);
    quo.push_back({shift, c});
    rem = terms::sub_scaled(rem, c, shift, b.terms_, ord);
  }
  return Polynomial(a.ring_, std::move(quo));
}

Polynomial Polynomial::in_ring(RingPtr other) const {
  if (!(other->domain == ring_->domain) || other->nvars() != ring_->nvars())
    throw Error(ErrorCode::RingMismatch, "target ring is not compatible");
  return Polynomial(std::move(other), terms_);
}

Polynomial poly_arith(const Polynomial& f, const Polynomial& g, PolyOp op) {
  switch (op) {
  case PolyOp::Add: return f + g;
  case PolyOp::Sub: return f - g;
  case PolyOp::Mul: return f * g;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown polynomial operation");
}

// ---------------------------------------------------------------------------
// Printing

std::string monomial_string(const Ring& ring, const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

namespace {

bool has_top_level_sum(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (depth == 0 && (s[i] == '+' || s[i] == '-') && s[i - 1] == ' ') return true;
  }
  return false;
}

} // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    const std::string mono = monomial_string(*ring_, t.exp);
    std::string c = t.coeff.to_string();
    std::string piece;
    if (mono.empty()) {
      piece = has_top_level_sum(c) ? "(" + c + ")" : c;
    } else if (c == "1") {
      piece = mono;
    } else if (c == "-1") {
      piece = "-" + mono;
    } else if (has_top_level_sum(c)) {
      piece = "(" + c + ")*" + mono;
    } else {
      piece = c + "*" + mono;
    }
    if (k == 0) out = piece;
    else if (piece[0] == '-') out += " - " + piece.substr(1);
    else out += " + " + piece;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hasse derivatives

Polynomial hasse_derivative(const Polynomial& f, const MultiIndex& idx) {
  const auto& ring = f.ring();
  if (idx.exps.size() != ring->nvars())
    throw Error(ErrorCode::InvalidArgument, "multi-index has the wrong number of variables");
  if (idx.t_order > 0 && !ring->domain.has_t())
    throw Error(ErrorCode::NoParameterT, ring->domain.name() + " has no parameter t");
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    if (!terms::divides(idx.exps, t.exp)) continue;
    mpz_class b = 1;
    for (std::size_t i = 0; i < idx.exps.size(); ++i) {
      mpz_class bi;
      mpz_bin_uiui(bi.get_mpz_t(), t.exp[i], idx.exps[i]);
      b *= bi;
    }
    Scalar c = Scalar::from_int(ring->domain, b) * t.coeff;
    if (c.is_zero()) continue;
    if (idx.t_order > 0) c = scalar_hasse_t(c, idx.t_order);
    if (c.is_zero()) continue;
    out.push_back({terms::quotient(t.exp, idx.exps), std::move(c)});
  }
  return Polynomial(ring, std::move(out));
}

// ---------------------------------------------------------------------------
// Frobenius lifts

bool LiftSpec::is_default() const {
  if (t_image) return false;
  return std::all_of(var_images.begin(), var_images.end(), [](const auto& v) { return !v; });
}

namespace {

void require_congruent(const Polynomial& image, const Polynomial& expected, const std::string& what) {
  const auto diff = image - expected;
  for (const auto& t : diff.terms())
    if (p_valuation(t.coeff) < 1)
      throw Error(ErrorCode::InvalidLift,
                  "image of " + what + " (" + image.to_string() + ") is not congruent to " + what +
                      "^p mod p");
}

} // namespace

void validate_lift(const RingPtr& ring, const LiftSpec& lift) {
  const auto& d = ring->domain;
  if (!d.is_dvr())
    throw Error(ErrorCode::NotDVRDomain, "Frobenius lifts need Z_(p) or Z[t]_(p), got " + d.name());
  const auto p = static_cast<unsigned>(d.p());
  if (lift.var_images.size() > ring->nvars())
    throw Error(ErrorCode::InvalidLift, "more variable images than variables");
  for (std::size_t i = 0; i < lift.var_images.size(); ++i) {
    if (!lift.var_images[i]) continue;
    const auto& img = *lift.var_images[i];
    if (!same_ring(img.ring(), ring)) throw Error(ErrorCode::InvalidLift, "lift image in another ring");
    require_congruent(img, Polynomial::variable(ring, i).pow(p), ring->vars[i]);
  }
  if (lift.t_image) {
    if (!d.has_t()) throw Error(ErrorCode::InvalidLift, d.name() + " has no parameter t to lift");
    if (!same_ring(lift.t_image->ring(), ring))
      throw Error(ErrorCode::InvalidLift, "lift image in another ring");
    require_congruent(*lift.t_image, Polynomial::constant(ring, Scalar::parameter(d).pow(p)), "t");
  }
}

Polynomial frobenius_apply(const Polynomial& f, const LiftSpec& lift) {
  const auto& ring = f.ring();
  validate_lift(ring, lift);
  const auto& d = ring->domain;
  const auto p = static_cast<unsigned>(d.p());
  const auto n = ring->nvars();

  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < lift.var_images.size() && lift.var_images[i]) images.push_back(*lift.var_images[i]);
    else images.push_back(Polynomial::variable(ring, i).pow(p));
  }
  // Powers of each image, filled on demand.
  std::vector<std::vector<Polynomial>> powers(n);
  auto image_power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(ring, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };

  const bool scalar_t = !lift.t_image || lift.t_image->is_constant();
  ScalarLift slift;
  if (lift.t_image) slift.t_image = lift.t_image->constant_term();
  std::vector<Polynomial> t_powers;
  auto t_power = [&](std::size_t e) -> const Polynomial& {
    if (t_powers.empty()) t_powers.push_back(Polynomial::constant(ring, 1));
    while (t_powers.size() <= e) t_powers.push_back(t_powers.back() * *lift.t_image);
    return t_powers[e];
  };
  auto eval_at_t = [&](const std::vector<mpz_class>& coeffs) {
    Polynomial r(ring);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (sgn(coeffs[k]) != 0) r += Scalar::from_int(d, coeffs[k]) * t_power(k);
    return r;
  };

  Polynomial result(ring);
  for (const auto& t : f.terms()) {
    Polynomial coeff_image(ring);
    if (scalar_t) {
      coeff_image = Polynomial::constant(ring, scalar_frobenius(t.coeff, slift));
    } else {
      const auto& frac = std::get<IntFraction>(t.coeff.rep());
      const auto den = eval_at_t(frac.den);
      if (!den.is_constant() || den.is_zero())
        throw Error(ErrorCode::InvalidLift, "lift of t sends the denominator of " +
                                                t.coeff.to_string() + " outside the units");
      coeff_image = eval_at_t(frac.num);
      coeff_image = (Scalar::one(d) / den.constant_term()) * coeff_image;
    }
    Polynomial mono = Polynomial::constant(ring, 1);
    for (std::size_t i = 0; i < n; ++i)
      if (t.exp[i]) mono = mono * image_power(i, t.exp[i]);
    result += coeff_image * mono;
  }
  return result;
}

Polynomial poly_delta(const Polynomial& f, const LiftSpec& lift) {
  const auto& ring = f.ring();
  const auto diff = frobenius_apply(f, lift) - f.pow(static_cast<unsigned>(ring->domain.p()));
  const auto p = p_scalar(ring->domain);
  std::vector<Term> out;
  for (const auto& t : diff.terms()) {
    if (p_valuation(t.coeff) < 1)
      throw Error(ErrorCode::InexactDivision,
                  "Frobenius difference not divisible by p at coefficient " + t.coeff.to_string());
    out.push_back({t.exp, t.coeff / p});
  }
  return Polynomial(ring, std::move(out));
}

// ---------------------------------------------------------------------------
// Taylor expansion

std::vector<MultiIndex> multi_indices(std::size_t nvars, unsigned n, bool with_t) {
  const std::size_t slots = nvars + (with_t ? 1 : 0);
  std::vector<MultiIndex> out;
  std::vector<std::uint32_t> cur(slots, 0);
  auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
    if (pos == slots) {
      MultiIndex m;
      m.exps.assign(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(nvars));
      m.t_order = with_t ? cur[nvars] : 0;
      out.push_back(std::move(m));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      cur[pos] = k;
      self(self, pos + 1, left - k);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, n);
  std::sort(out.begin(), out.end(), enumeration_less);
  return out;
}

TaylorExpansion taylor_expansion(const Polynomial& f, unsigned n, bool with_t) {
  TaylorExpansion out;
  const bool t_dir = with_t && f.domain().has_t();
  for (auto& idx : multi_indices(f.ring()->nvars(), n, t_dir)) {
    auto value = hasse_derivative(f, idx);
    out.emplace(std::move(idx), std::move(value));
  }
  return out;
}

} // namespace symdiff
