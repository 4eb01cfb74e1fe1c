#include "symdiff/groebner.hpp"

#include <algorithm>
#include <mutex>

namespace symdiff {

namespace detail {

struct BasisCache {
  std::mutex mutex;
  std::vector<std::shared_ptr<const GroebnerBasis>> entries;

  std::shared_ptr<const GroebnerBasis> find(const MonomialOrder& ord) {
    for (const auto& e : entries)
      if (e->order == ord) return e;
    return nullptr;
  }
};

} // namespace detail

namespace {

using TermList = std::vector<Term>;

/// Leading-coefficient divisibility: always in a field, by valuation in a DVR.
bool coeff_divides(const Scalar& a, const Scalar& b) {
  if (a.domain().is_field()) return !a.is_zero();
  return p_valuation(a) <= p_valuation(b);
}

struct Element {
  TermList terms;
  unsigned lc_valuation = 0;

  const Term& lead() const { return terms.front(); }
};

Element make_element(TermList ts) {
  Element e{std::move(ts), 0};
  const auto& c = e.lead().coeff;
  if (c.domain().is_dvr()) e.lc_valuation = p_valuation(c);
  return e;
}

/// Scales so the leading coefficient is 1 (field) or a power of p (DVR).
TermList normalize(TermList ts) {
  const auto& lc = ts.front().coeff;
  const Scalar factor = lc.domain().is_field() ? Scalar::one(lc.domain()) / lc
                                               : Scalar::one(lc.domain()) / unit_part(lc);
  if (factor.is_one()) return ts;
  for (auto& t : ts) t.coeff = factor * t.coeff;
  return ts;
}

TermList sorted_terms(const Polynomial& f, const MonomialOrder& ord) {
  TermList ts = f.terms();
  if (!(ord == f.ring()->order)) terms::sort(ts, ord);
  return ts;
}

const Element* find_reducer(const Term& t, const std::vector<const Element*>& basis, bool dvr) {
  unsigned v = 0;
  if (dvr) v = p_valuation(t.coeff);
  for (const auto* g : basis)
    if (terms::divides(g->lead().exp, t.exp) && (!dvr || g->lc_valuation <= v)) return g;
  return nullptr;
}

/// Full reduction. When `quotients` is non-null, quotient terms for basis[i]
/// are appended to (*quotients)[i].
TermList full_reduce(TermList f, const std::vector<const Element*>& basis, const MonomialOrder& ord,
                     std::vector<TermList>* quotients = nullptr) {
  TermList rem;
  if (f.empty()) return rem;
  const bool dvr = f.front().coeff.domain().is_dvr();
  std::size_t start = 0;
  while (start < f.size()) {
    const Term& lt = f[start];
    const Element* g = find_reducer(lt, basis, dvr);
    if (!g) {
      rem.push_back(lt);
      ++start;
      continue;
    }
    const Scalar c = lt.coeff / g->lead().coeff;
    auto shift = terms::quotient(lt.exp, g->lead().exp);
    if (quotients) {
      const auto idx = static_cast<std::size_t>(std::find(basis.begin(), basis.end(), g) - basis.begin());
      (*quotients)[idx].push_back({shift, c});
    }
    TermList tail(f.begin() + static_cast<std::ptrdiff_t>(start), f.end());
    f = terms::sub_scaled(tail, c, shift, g->terms, ord);
    start = 0;
  }
  return rem;
}

TermList spoly_terms(const TermList& f, const TermList& g, const MonomialOrder& ord) {
  const auto& a = f.front();
  const auto& b = g.front();
  const auto l = terms::lcm(a.exp, b.exp);
  const auto& d = a.coeff.domain();
  Scalar ca = Scalar::one(d), cb = Scalar::one(d);
  if (coeff_divides(b.coeff, a.coeff)) cb = a.coeff / b.coeff;
  else ca = b.coeff / a.coeff;
  // ca * (l/a) * f - cb * (l/b) * g
  TermList scaled_f;
  const auto sa = terms::quotient(l, a.exp);
  for (const auto& t : f) scaled_f.push_back({terms::product(t.exp, sa), ca * t.coeff});
  return terms::sub_scaled(scaled_f, cb, terms::quotient(l, b.exp), g, ord);
}

struct Pair {
  std::size_t i, j;
  Exponents lcm;
  std::uint32_t degree;
};

class Buchberger {
public:
  Buchberger(const MonomialOrder& ord, bool dvr) : ord_(ord), dvr_(dvr) {}

  void add_generator(const TermList& f) {
    auto r = full_reduce(f, active_view(), ord_);
    if (!r.empty()) insert(normalize(std::move(r)));
  }

  void run() {
    while (!pairs_.empty()) {
      const auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& x, const Pair& y) {
        if (x.degree != y.degree) return x.degree < y.degree;
        const int c = ord_.compare(x.lcm, y.lcm);
        if (c != 0) return c < 0;
        return std::tie(x.i, x.j) < std::tie(y.i, y.j);
      });
      const Pair p = *best;
      pairs_.erase(best);
      auto s = spoly_terms(elems_[p.i].terms, elems_[p.j].terms, ord_);
      auto r = full_reduce(std::move(s), active_view(), ord_);
      if (!r.empty()) insert(normalize(std::move(r)));
    }
  }

  /// Minimal, tail-reduced basis sorted ascending by leading term.
  std::vector<TermList> result() const {
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (active_[i]) cand.push_back(i);
    std::vector<std::size_t> kept;
    for (auto i : cand) {
      bool redundant = false;
      for (auto j : cand) {
        if (i == j || !lead_divides(elems_[j], elems_[i])) continue;
        const bool mutual = lead_divides(elems_[i], elems_[j]);
        if (!mutual || j < i) {
          redundant = true;
          break;
        }
      }
      if (!redundant) kept.push_back(i);
    }
    std::vector<TermList> out;
    for (auto i : kept) {
      std::vector<const Element*> others;
      for (auto j : kept)
        if (j != i) others.push_back(&elems_[j]);
      const auto& e = elems_[i];
      TermList tail(e.terms.begin() + 1, e.terms.end());
      TermList reduced{e.lead()};
      for (auto& t : full_reduce(std::move(tail), others, ord_)) reduced.push_back(std::move(t));
      out.push_back(normalize(std::move(reduced)));
    }
    std::sort(out.begin(), out.end(), [&](const TermList& a, const TermList& b) {
      const int c = ord_.compare(a.front().exp, b.front().exp);
      if (c != 0) return c < 0;
      if (dvr_) return p_valuation(a.front().coeff) > p_valuation(b.front().coeff);
      return false;
    });
    return out;
  }

private:
  bool lead_divides(const Element& a, const Element& b) const {
    return terms::divides(a.lead().exp, b.lead().exp) && (!dvr_ || a.lc_valuation <= b.lc_valuation);
  }

  std::vector<const Element*> active_view() const {
    std::vector<const Element*> v;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (active_[i]) v.push_back(&elems_[i]);
    return v;
  }

  static bool disjoint(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] && b[i]) return false;
    return true;
  }

  Pair make_pair(std::size_t i, std::size_t j) const {
    auto l = terms::lcm(elems_[i].lead().exp, elems_[j].lead().exp);
    const auto d = terms::degree(l);
    return {i, j, std::move(l), d};
  }

  void insert(TermList h) {
    elems_.push_back(make_element(std::move(h)));
    active_.push_back(true);
    const std::size_t k = elems_.size() - 1;
    if (dvr_) update_dvr(k);
    else update_field(k);
  }

  // Over a DVR only the product criterion for unit leading coefficients is used.
  void update_dvr(std::size_t k) {
    const auto& hk = elems_[k];
    for (std::size_t i = 0; i < k; ++i) {
      const auto& gi = elems_[i];
      if (gi.lc_valuation == 0 && hk.lc_valuation == 0 && disjoint(gi.lead().exp, hk.lead().exp))
        continue;
      pairs_.push_back(make_pair(i, k));
    }
  }

  // Gebauer-Moeller installation of the new element k.
  void update_field(std::size_t k) {
    const auto& lm_h = elems_[k].lead().exp;
    std::vector<Pair> c;
    for (std::size_t i = 0; i < k; ++i)
      if (active_[i]) c.push_back(make_pair(i, k));
    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      const auto& p = c[a];
      bool keep = disjoint(elems_[p.i].lead().exp, lm_h);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < c.size() && keep; ++b)
          if (terms::divides(c[b].lcm, p.lcm)) keep = false;
        for (const auto& q : d)
          if (keep && terms::divides(q.lcm, p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    std::erase_if(d, [&](const Pair& p) { return disjoint(elems_[p.i].lead().exp, lm_h); });
    std::erase_if(pairs_, [&](const Pair& p) {
      if (!terms::divides(lm_h, p.lcm)) return false;
      const auto li = terms::lcm(elems_[p.i].lead().exp, lm_h);
      const auto lj = terms::lcm(elems_[p.j].lead().exp, lm_h);
      return li != p.lcm && lj != p.lcm;
    });
    for (auto& p : d) pairs_.push_back(std::move(p));
    for (std::size_t i = 0; i < k; ++i)
      if (active_[i] && terms::divides(lm_h, elems_[i].lead().exp)) active_[i] = false;
  }

  const MonomialOrder& ord_;
  bool dvr_;
  std::vector<Element> elems_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

std::shared_ptr<const GroebnerBasis> compute_basis(const Ideal& ideal, const MonomialOrder& ord) {
  auto gb = std::make_shared<GroebnerBasis>();
  gb->order = ord;
  const auto& ring = ideal.ring();
  if (ord.nvars() != ring->nvars())
    throw Error(ErrorCode::InvalidArgument, "monomial order has the wrong number of variables");
  Buchberger alg(ord, ring->domain.is_dvr());
  for (const auto& g : ideal.generators()) alg.add_generator(sorted_terms(g, ord));
  alg.run();
  for (auto& ts : alg.result()) {
    gb->elements.emplace_back(ring, ts);
    gb->sorted.push_back(std::move(ts));
  }
  return gb;
}

std::vector<Element> elements_of(const GroebnerBasis& gb) {
  std::vector<Element> out;
  for (const auto& ts : gb.sorted) out.push_back(make_element(ts));
  return out;
}

std::vector<const Element*> view_of(const std::vector<Element>& es) {
  std::vector<const Element*> v;
  for (const auto& e : es) v.push_back(&e);
  return v;
}

void require_same(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) throw Error(ErrorCode::RingMismatch, "ideal and polynomial rings differ");
}

} // namespace

// ---------------------------------------------------------------------------
// Ideal

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<detail::BasisCache>()) {
  for (auto& g : generators) {
    require_same(ring_, g.ring());
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

std::shared_ptr<const GroebnerBasis> Ideal::groebner(const std::optional<MonomialOrder>& order) const {
  const MonomialOrder& ord = order ? *order : ring_->order;
  {
    std::lock_guard lock(cache_->mutex);
    if (auto hit = cache_->find(ord)) return hit;
  }
  auto gb = compute_basis(*this, ord);
  std::lock_guard lock(cache_->mutex);
  if (auto hit = cache_->find(ord)) return hit;
  cache_->entries.push_back(gb);
  return gb;
}

std::vector<Polynomial> groebner_basis(const Ideal& ideal, const MonomialOrder& order) {
  return ideal.groebner(order)->elements;
}

// ---------------------------------------------------------------------------
// Reduction

ReductionTrace normal_form(const Polynomial& f, const Ideal& ideal, const std::optional<MonomialOrder>& order) {
  require_same(f.ring(), ideal.ring());
  auto gb = ideal.groebner(order);
  const auto es = elements_of(*gb);
  std::vector<TermList> q(es.size());
  auto rem = full_reduce(sorted_terms(f, gb->order), view_of(es), gb->order, &q);
  ReductionTrace trace{f, {}, Polynomial(f.ring(), std::move(rem))};
  for (auto& ts : q) trace.quotients.emplace_back(f.ring(), std::move(ts));
  return trace;
}

Polynomial reduce(const Polynomial& f, const Ideal& ideal, const std::optional<MonomialOrder>& order) {
  require_same(f.ring(), ideal.ring());
  auto gb = ideal.groebner(order);
  const auto es = elements_of(*gb);
  return Polynomial(f.ring(), full_reduce(sorted_terms(f, gb->order), view_of(es), gb->order));
}

bool ideal_member(const Polynomial& f, const Ideal& ideal) { return reduce(f, ideal).is_zero(); }

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  require_same(f.ring(), g.ring());
  if (f.is_zero() || g.is_zero()) return Polynomial(f.ring());
  return Polynomial(f.ring(), spoly_terms(sorted_terms(f, order), sorted_terms(g, order), order));
}

Polynomial reduce_by(const Polynomial& f, const std::vector<Polynomial>& basis, const MonomialOrder& order) {
  std::vector<Element> es;
  for (const auto& b : basis)
    if (!b.is_zero()) es.push_back(make_element(sorted_terms(b, order)));
  return Polynomial(f.ring(), full_reduce(sorted_terms(f, order), view_of(es), order));
}

// ---------------------------------------------------------------------------
// Ideal arithmetic

Ideal unit_ideal(const RingPtr& ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }

Ideal ideal_power(const Ideal& ideal, unsigned n) {
  if (n == 0) return unit_ideal(ideal.ring());
  const auto& g = ideal.generators();
  std::vector<Polynomial> out;
  std::vector<std::size_t> idx(n, 0);
  // Non-decreasing index tuples enumerate multisets of generators.
  auto rec = [&](auto&& self, std::size_t pos, std::size_t from, const Polynomial& acc) -> void {
    if (pos == n) {
      out.push_back(acc);
      return;
    }
    for (std::size_t i = from; i < g.size(); ++i) self(self, pos + 1, i, acc * g[i]);
  };
  if (!g.empty()) rec(rec, 0, 0, Polynomial::constant(ideal.ring(), 1));
  return Ideal(ideal.ring(), std::move(out));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same(a.ring(), b.ring());
  std::vector<Polynomial> out;
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) out.push_back(f * g);
  return Ideal(a.ring(), std::move(out));
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same(a.ring(), b.ring());
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ring(), std::move(gens));
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  require_same(a.ring(), b.ring());
  const auto& ring = a.ring();
  if (a.is_zero() || b.is_zero()) return Ideal(ring, {});
  const auto ext = elimination_ring(ring, "_elim");
  auto lift = [&](const Polynomial& f) {
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
      Exponents e{0};
      e.insert(e.end(), t.exp.begin(), t.exp.end());
      ts.push_back({std::move(e), t.coeff});
    }
    return Polynomial(ext, std::move(ts));
  };
  const auto u = Polynomial::variable(ext, 0);
  const auto one_minus_u = Polynomial::constant(ext, 1) - u;
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(u * lift(f));
  for (const auto& g : b.generators()) gens.push_back(one_minus_u * lift(g));
  const auto basis = groebner_basis(Ideal(ext, std::move(gens)), ext->order);
  std::vector<Polynomial> out;
  for (const auto& f : basis) {
    const bool free_of_u = std::all_of(f.terms().begin(), f.terms().end(),
                                       [](const Term& t) { return t.exp[0] == 0; });
    if (!free_of_u) continue;
    std::vector<Term> ts;
    for (const auto& t : f.terms()) ts.push_back({Exponents(t.exp.begin() + 1, t.exp.end()), t.coeff});
    out.emplace_back(ring, std::move(ts));
  }
  return Ideal(ring, std::move(out));
}

Ideal quotient(const Ideal& ideal, const Polynomial& f) {
  require_same(ideal.ring(), f.ring());
  if (f.is_zero()) throw Error(ErrorCode::DivisionByZero, "ideal quotient by zero");
  const auto both = intersect(ideal, Ideal(ideal.ring(), {f}));
  std::vector<Polynomial> out;
  for (const auto& g : both.generators()) out.push_back(divide_exact(g, f));
  return Ideal(ideal.ring(), std::move(out));
}

bool ideal_contains(const Ideal& ideal, const Ideal& sub) {
  require_same(ideal.ring(), sub.ring());
  return std::all_of(sub.generators().begin(), sub.generators().end(),
                     [&](const Polynomial& g) { return ideal_member(g, ideal); });
}

bool is_proper(const Ideal& ideal) {
  return !ideal_member(Polynomial::constant(ideal.ring(), 1), ideal);
}

} // namespace symdiff
