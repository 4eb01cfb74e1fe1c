#include "symdiff/powers.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <thread>
#include <tuple>

namespace symdiff {

// ---------------------------------------------------------------------------
// PowerKind

PowerKind PowerKind::ordinary(unsigned n) { return {Type::Ordinary, n, Linearity::ZLinear, {}}; }
PowerKind PowerKind::symbolic(unsigned n) { return {Type::Symbolic, n, Linearity::ZLinear, {}}; }
PowerKind PowerKind::differential(unsigned n, Linearity lin) { return {Type::Differential, n, lin, {}}; }
PowerKind PowerKind::delta(unsigned s, LiftSpec lift) {
  return {Type::DeltaPower, s, Linearity::ZLinear, std::move(lift)};
}
PowerKind PowerKind::mixed(unsigned n, LiftSpec lift, Linearity lin) {
  return {Type::Mixed, n, lin, std::move(lift)};
}

std::string PowerKind::to_string() const {
  const auto ns = std::to_string(n);
  switch (type) {
  case Type::Ordinary: return "ordinary(" + ns + ")";
  case Type::Symbolic: return "symbolic(" + ns + ")";
  case Type::Differential: return "differential(" + ns + ", " + symdiff::to_string(linearity) + ")";
  case Type::DeltaPower: return "delta(" + ns + ")";
  case Type::Mixed:
    return linearity == Linearity::ZLinear ? "mixed(" + ns + ")" : "mixed(" + ns + ", base)";
  }
  return "?";
}

PowerKind parse_power_kind(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto fail = [&](const std::string& why) -> PowerKind {
    throw ParseError(ErrorCode::ParseError, why + " in power kind '" + text + "'", 1, 1);
  };
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') return fail("expected name(n[, linearity])");
  const std::string name = s.substr(0, open);
  std::string args = s.substr(open + 1, s.size() - open - 2);
  std::string lin_text;
  if (auto comma = args.find(','); comma != std::string::npos) {
    lin_text = args.substr(comma + 1);
    args = args.substr(0, comma);
  }
  if (args.empty() || !std::all_of(args.begin(), args.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return fail("bad order");
  const auto n = static_cast<unsigned>(std::stoul(args));
  if (n < 1) return fail("order must be at least 1");
  Linearity lin = Linearity::ZLinear;
  if (!lin_text.empty()) {
    if (lin_text == "base" || lin_text == "baselinear") lin = Linearity::BaseLinear;
    else if (lin_text == "zlinear" || lin_text == "z") lin = Linearity::ZLinear;
    else return fail("unknown linearity '" + lin_text + "'");
  }
  if (name == "ordinary" && lin_text.empty()) return PowerKind::ordinary(n);
  if (name == "symbolic" && lin_text.empty()) return PowerKind::symbolic(n);
  if (name == "differential") return PowerKind::differential(n, lin);
  if (name == "delta" && lin_text.empty()) return PowerKind::delta(n);
  if (name == "mixed") return PowerKind::mixed(n, {}, lin);
  return fail("unknown power kind '" + name + "'");
}

// ---------------------------------------------------------------------------
// PowerEngine

PowerEngine::PowerEngine(Ideal q) : q_(std::move(q)) {
  if (!is_proper(q_)) throw Error(ErrorCode::NonProperIdeal, "1 lies in Q");
}

Ideal PowerEngine::power(unsigned n) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = powers_.find(n); it != powers_.end()) return it->second;
  }
  Ideal p = n == 1 ? q_ : ideal_power(q_, n);
  std::lock_guard lock(mutex_);
  return powers_.emplace(n, std::move(p)).first->second;
}

std::vector<std::string> PowerEngine::caveats_for(const PowerKind& kind) const {
  std::vector<std::string> out;
  if (kind.type != PowerKind::Type::Ordinary)
    out.push_back("conditional on Q being prime (primality is not verified)");
  const auto& d = ring()->domain;
  if ((kind.type == PowerKind::Type::Mixed || kind.type == PowerKind::Type::DeltaPower) && d.is_dvr()) {
    out.push_back("desk-scale model of the complete DVR: " + d.name() + " stands in for its completion");
    const auto p = Polynomial::constant(ring(), Scalar::from_int(d, mpz_class(static_cast<unsigned long>(d.p()))));
    if (!in_q(p)) out.push_back("p is not in Q; the mixed characterization assumes it is");
  }
  return out;
}

OperatorWitness PowerEngine::evaluate(const MixedOperator& op, const Polynomial& f) const {
  auto value = apply(op, f);
  auto mod = reduce(value, q_);
  return {op, to_string(op, *ring()), std::move(value), std::move(mod)};
}

std::optional<OperatorWitness> PowerEngine::scan_operators(const PowerKind& kind, const Polynomial& f) const {
  if (kind.n < 1) throw Error(ErrorCode::InvalidArgument, "power order must be at least 1");
  const auto& r = *ring();
  const unsigned top = kind.n - 1;
  if (kind.type == PowerKind::Type::Differential) {
    for (const auto& d : enumerate_operators(r, kind.linearity, top)) {
      auto value = apply(d, f);
      auto mod = reduce(value, q_);
      if (!mod.is_zero()) {
        MixedOperator op{0, d, {}};
        return OperatorWitness{op, to_string(op, r), std::move(value), std::move(mod)};
      }
    }
    return std::nullopt;
  }
  if (kind.type != PowerKind::Type::Mixed)
    throw Error(ErrorCode::InvalidArgument, "operator scan needs a differential or mixed kind");
  if (!r.domain.is_dvr()) throw Error(ErrorCode::NotDVRDomain, "mixed powers need Z_(p) or Z[t]_(p)");
  validate_lift(ring(), kind.lift);
  const auto ops = enumerate_operators(r, kind.linearity, top);
  // iterates[i][a] = delta^a(ops[i](f)), extended lazily.
  std::vector<std::vector<Polynomial>> iterates(ops.size());
  for (unsigned total = 0; total <= top; ++total) {
    for (unsigned a = 0; a <= total; ++a) {
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].order() != total - a) continue;
        auto& it = iterates[i];
        if (it.empty()) it.push_back(apply(ops[i], f));
        while (it.size() <= a) it.push_back(poly_delta(it.back(), kind.lift));
        auto mod = reduce(it[a], q_);
        if (!mod.is_zero()) {
          MixedOperator op{a, ops[i], kind.lift};
          return OperatorWitness{op, to_string(op, r), it[a], std::move(mod)};
        }
      }
    }
  }
  return std::nullopt;
}

Verdict PowerEngine::symbolic(unsigned n, const Polynomial& f) const {
  const auto qn = power(n);
  if (reduce(f, qn).is_zero()) return {true, MultiplierWitness{Polynomial::constant(ring(), 1)}, {}};
  const auto colon = quotient(qn, f);
  for (const auto& g : colon.generators())
    if (!in_q(g)) return {true, MultiplierWitness{g}, {}};
  return {false, ContainmentWitness{colon.generators()}, {}};
}

Verdict PowerEngine::member(const PowerKind& kind, const Polynomial& f) const {
  if (!same_ring(f.ring(), ring())) throw Error(ErrorCode::RingMismatch, "f is not in the ring of Q");
  if (kind.n < 1) throw Error(ErrorCode::InvalidArgument, "power order must be at least 1");
  Verdict v;
  switch (kind.type) {
  case PowerKind::Type::Ordinary: {
    auto nf = reduce(f, power(kind.n));
    v.member = nf.is_zero();
    if (!v.member) v.witness = RemainderWitness{std::move(nf)};
    break;
  }
  case PowerKind::Type::Symbolic: v = symbolic(kind.n, f); break;
  case PowerKind::Type::Differential:
  case PowerKind::Type::Mixed: {
    auto w = scan_operators(kind, f);
    v.member = !w;
    if (w) v.witness = std::move(*w);
    break;
  }
  case PowerKind::Type::DeltaPower: {
    if (!ring()->domain.is_dvr()) throw Error(ErrorCode::NotDVRDomain, "delta-powers need Z_(p) or Z[t]_(p)");
    v.member = true;
    Polynomial g = f;
    for (unsigned a = 0; a < kind.n; ++a) {
      if (a > 0) g = poly_delta(g, kind.lift);
      auto mod = reduce(g, q_);
      if (!mod.is_zero()) {
        MixedOperator op{a, DiffOperator::identity(ring()->nvars()), kind.lift};
        v.member = false;
        v.witness = OperatorWitness{op, to_string(op, *ring()), g, std::move(mod)};
        break;
      }
    }
    break;
  }
  }
  v.caveats = caveats_for(kind);
  return v;
}

std::optional<MixedOperator> PowerEngine::find_separating_operator(const PowerKind& kind,
                                                                   const Polynomial& f) const {
  if (kind.type != PowerKind::Type::Differential && kind.type != PowerKind::Type::Mixed)
    throw Error(ErrorCode::InvalidArgument, "separating operators exist only for differential and mixed kinds");
  auto w = scan_operators(kind, f);
  if (!w) return std::nullopt;
  return w->op;
}

Verdict PowerEngine::mixed_intersection_form(unsigned n, const LiftSpec& lift, const Polynomial& f,
                                             Linearity lin) const {
  const auto& r = *ring();
  if (!r.domain.is_dvr()) throw Error(ErrorCode::NotDVRDomain, "mixed powers need Z_(p) or Z[t]_(p)");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "power order must be at least 1");
  validate_lift(ring(), lift);
  Verdict v;
  v.member = true;
  v.caveats = caveats_for(PowerKind::mixed(n, lift, lin));
  // f lies in (Q^<s>_delta)^<t> iff D(f) lies in the s-th delta-power for
  // every D of order <= t-1.
  for (unsigned s = 1; s <= n && v.member; ++s) {
    for (unsigned t = 1; s + t <= n + 1 && v.member; ++t) {
      for (const auto& d : enumerate_operators(r, lin, t - 1)) {
        Polynomial g = apply(d, f);
        unsigned a = 0;
        for (; a < s; ++a) {
          if (a > 0) g = poly_delta(g, lift);
          if (!in_q(g)) break;
        }
        if (a < s) {
          MixedOperator op{a, d, lift};
          v.member = false;
          v.witness = OperatorWitness{op, to_string(op, r), g, reduce(g, q_)};
          break;
        }
      }
    }
  }
  return v;
}

Verdict member(const Ideal& q, const PowerKind& kind, const Polynomial& f) {
  return PowerEngine(q).member(kind, f);
}

std::optional<MixedOperator> find_separating_operator(const Ideal& q, const PowerKind& kind,
                                                      const Polynomial& f) {
  return PowerEngine(q).find_separating_operator(kind, f);
}

Verdict mixed_intersection_form(const Ideal& q, unsigned n, const LiftSpec& lift, const Polynomial& f,
                                Linearity lin) {
  return PowerEngine(q).mixed_intersection_form(n, lift, f, lin);
}

// ---------------------------------------------------------------------------
// Comparison tables

CompareReport compare_report(const PowerEngine& engine, const std::vector<PowerKind>& kinds,
                             const std::vector<Polynomial>& corpus, unsigned threads) {
  CompareReport rep;
  rep.kinds = kinds;
  rep.corpus = corpus;
  rep.cells.assign(corpus.size(), std::vector<CompareCell>(kinds.size()));
  const std::size_t total = corpus.size() * kinds.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const auto row = k / kinds.size(), col = k % kinds.size();
      auto& cell = rep.cells[row][col];
      try {
        cell.verdict = engine.member(kinds[col], corpus[row]);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };
  const unsigned nthreads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  }
  for (std::size_t row = 0; row < corpus.size(); ++row) {
    for (std::size_t a = 0; a < kinds.size(); ++a) {
      if (!rep.cells[row][a].verdict) {
        ++rep.error_count;
        continue;
      }
      for (std::size_t b = a + 1; b < kinds.size(); ++b) {
        if (kinds[a].n != kinds[b].n || !rep.cells[row][b].verdict) continue;
        if (rep.cells[row][a].verdict->member != rep.cells[row][b].verdict->member)
          rep.disagreements.push_back({row, a, b});
      }
    }
  }
  return rep;
}

CompareReport compare_report(const Ideal& q, const std::vector<PowerKind>& kinds,
                             const std::vector<Polynomial>& corpus, unsigned threads) {
  return compare_report(PowerEngine(q), kinds, corpus, threads);
}

// ---------------------------------------------------------------------------
// Degree-truncated generators of differential powers

namespace {

using Matrix = std::vector<std::vector<Scalar>>;

/// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][c].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Scalar inv = Scalar::one(m[row][c].domain()) / m[row][c];
    for (auto& x : m[row]) x = x * inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      const Scalar factor = m[r][c];
      for (std::size_t k = 0; k < cols; ++k)
        if (!m[row][k].is_zero()) m[r][k] = m[r][k] - factor * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  return pivots;
}

/// Coordinates of c in the basis 1, t, ..., t^(q-1) of F_p(t) over F_p(t^q).
std::vector<Scalar> subfield_coordinates(const Scalar& c, unsigned q) {
  if (q == 1) return {c};
  const auto& d = c.domain();
  const auto& frac = std::get<FpFraction>(c.rep());
  const auto u = make_scalar(d, FpFraction{frac.num, {1}});
  const auto v = make_scalar(d, FpFraction{frac.den, {1}});
  // c = u v^(q-1) / v^q, and v^q is a polynomial in t^q.
  const auto w = u * v.pow(q - 1);
  const auto vq = v.pow(q);
  const auto& wn = std::get<FpFraction>(w.rep()).num;
  std::vector<Scalar> out;
  for (unsigned j = 0; j < q; ++j) {
    std::vector<std::uint64_t> part;
    for (std::size_t k = j; k < wn.size(); k += q) {
      part.resize(k - j + 1, 0);
      part[k - j] = wn[k];
    }
    out.push_back(make_scalar(d, FpFraction{std::move(part), {1}}) / vq);
  }
  return out;
}

std::vector<Exponents> monomials_up_to(std::size_t nvars, unsigned degree) {
  std::vector<Exponents> out;
  for (const auto& idx : multi_indices(nvars, degree, false)) out.push_back(idx.exps);
  return out;
}

} // namespace

DiffPowerGenerators diff_power_generators(const Ideal& ideal, unsigned n, Linearity lin, unsigned degree_bound) {
  const auto& ring = ideal.ring();
  const auto& d = ring->domain;
  if (d.is_dvr())
    throw Error(ErrorCode::UnsupportedDomain, "generator search needs a field of coefficients, got " + d.name());
  if (n < 1 || degree_bound < 1) throw Error(ErrorCode::InvalidArgument, "n and the degree bound must be positive");

  // D_t^(a) is F_p(t^q)-linear for a < q, so over F_p(t) the conditions are
  // linear over that subfield once each coefficient is split along 1..t^(q-1).
  unsigned q = 1;
  if (lin == Linearity::ZLinear && d.has_t())
    while (q <= n - 1) q *= static_cast<unsigned>(d.p());

  const auto ops = enumerate_operators(*ring, lin, n - 1);
  auto monos = monomials_up_to(ring->nvars(), degree_bound);
  std::sort(monos.begin(), monos.end(), [&](const Exponents& a, const Exponents& b) { return ring->order.less(b, a); });
  const Scalar t = q > 1 ? Scalar::parameter(d) : Scalar::one(d);

  // Unknown (m, j) multiplies t^j x^m; rows are (operator, monomial, coordinate).
  std::map<std::tuple<std::size_t, Exponents, unsigned>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> columns;
  for (const auto& m : monos) {
    for (unsigned j = 0; j < q; ++j) {
      const auto unknown = Polynomial::monomial(ring, m, t.pow(j));
      std::vector<std::pair<std::size_t, Scalar>> col;
      for (std::size_t o = 0; o < ops.size(); ++o) {
        const auto residue = reduce(apply(ops[o], unknown), ideal);
        for (const auto& term : residue.terms()) {
          const auto coords = subfield_coordinates(term.coeff, q);
          for (unsigned k = 0; k < q; ++k) {
            if (coords[k].is_zero()) continue;
            const auto key = std::make_tuple(o, term.exp, k);
            auto it = row_of.find(key);
            if (it == row_of.end()) it = row_of.emplace(key, row_of.size()).first;
            col.emplace_back(it->second, coords[k]);
          }
        }
      }
      columns.push_back(std::move(col));
    }
  }

  const std::size_t ncols = columns.size();
  Matrix system(row_of.size(), std::vector<Scalar>(ncols, Scalar::zero(d)));
  for (std::size_t c = 0; c < ncols; ++c)
    for (const auto& [r, v] : columns[c]) system[r][c] = system[r][c] + v;
  const auto pivots = rref(system, ncols);

  // Kernel basis: one vector per free column.
  std::vector<Polynomial> kernel;
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> x(ncols, Scalar::zero(d));
    x[free] = Scalar::one(d);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -system[r][free];
    std::vector<Term> ts;
    for (std::size_t c = 0; c < ncols; ++c)
      if (!x[c].is_zero()) ts.push_back({monos[c / q], x[c] * t.pow(static_cast<unsigned>(c % q))});
    kernel.emplace_back(ring, std::move(ts));
  }

  // Reduce to a basis over the full coefficient field.
  Matrix span;
  for (const auto& f : kernel) {
    std::vector<Scalar> row(monos.size(), Scalar::zero(d));
    for (const auto& term : f.terms()) {
      const auto pos = static_cast<std::size_t>(std::find(monos.begin(), monos.end(), term.exp) - monos.begin());
      row[pos] = term.coeff;
    }
    span.push_back(std::move(row));
  }
  rref(span, monos.size());
  std::vector<Polynomial> gens;
  for (const auto& row : span) {
    std::vector<Term> ts;
    for (std::size_t c = 0; c < monos.size(); ++c)
      if (!row[c].is_zero()) ts.push_back({monos[c], row[c]});
    gens.emplace_back(ring, std::move(ts));
  }
  return {Ideal(ring, std::move(gens)), degree_bound, true};
}

} // namespace symdiff
