#pragma once

// Membership oracles for the five power notions of a prime ideal Q:
//
//   ordinary      Q^n
//   symbolic      Q^(n) = { f : s f in Q^n for some s not in Q }
//   differential  { f : D(f) in Q for every operator D of order <= n-1 }
//   delta         { f : delta^a(f) in Q for a <= s-1 }
//   mixed         { f : (delta^a o D)(f) in Q for a + order(D) <= n-1 }
//
// Each notion is decided by its own route so the known equalities between
// them can be checked rather than assumed.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symdiff/diffops.hpp"
#include "symdiff/groebner.hpp"

namespace symdiff {

struct PowerKind {
  enum class Type { Ordinary, Symbolic, Differential, DeltaPower, Mixed };

  Type type = Type::Ordinary;
  unsigned n = 1;
  Linearity linearity = Linearity::ZLinear;
  LiftSpec lift;

  static PowerKind ordinary(unsigned n);
  static PowerKind symbolic(unsigned n);
  static PowerKind differential(unsigned n, Linearity lin);
  static PowerKind delta(unsigned s, LiftSpec lift = {});
  static PowerKind mixed(unsigned n, LiftSpec lift = {}, Linearity lin = Linearity::ZLinear);

  /// e.g. "symbolic(2)", "differential(2, zlinear)", "mixed(3)", "mixed(2, base)".
  std::string to_string() const;
};

/// Parses the to_string() form. Throws ParseError.
PowerKind parse_power_kind(const std::string& text);

/// f is outside the power: the operator's value on f is nonzero modulo Q.
struct OperatorWitness {
  MixedOperator op;
  std::string op_text;
  Polynomial value;
  Polynomial value_mod_q;
};

/// Symbolic membership: s is outside Q and s f lies in Q^n.
struct MultiplierWitness {
  Polynomial s;
};

/// Symbolic non-membership: every generator of (Q^n : f) reduces to 0 mod Q.
struct ContainmentWitness {
  std::vector<Polynomial> quotient_generators;
};

/// Ordinary non-membership: the normal form modulo Q^n.
struct RemainderWitness {
  Polynomial normal_form;
};

using Witness =
    std::variant<std::monostate, OperatorWitness, MultiplierWitness, ContainmentWitness, RemainderWitness>;

struct Verdict {
  bool member = false;
  Witness witness;
  std::vector<std::string> caveats;
};

/// Membership engine for one ideal Q. Powers of Q and their bases are computed
/// once and shared between queries; all methods are safe to call concurrently.
class PowerEngine {
public:
  /// Throws NonProperIdeal when 1 lies in Q. Primality is not verified.
  explicit PowerEngine(Ideal q);

  const Ideal& ideal() const { return q_; }
  const RingPtr& ring() const { return q_.ring(); }

  Verdict member(const PowerKind& kind, const Polynomial& f) const;

  /// First enumerated operator (total order, then delta count, then
  /// multi-index) whose value on f is nonzero mod Q. Only Differential and
  /// Mixed kinds. Empty exactly when f is a member.
  std::optional<MixedOperator> find_separating_operator(const PowerKind& kind, const Polynomial& f) const;

  /// Mixed membership through the intersection over s + t <= n + 1 of the
  /// t-th differential power of the s-th delta-power, evaluated literally.
  Verdict mixed_intersection_form(unsigned n, const LiftSpec& lift, const Polynomial& f,
                                  Linearity lin = Linearity::ZLinear) const;

  /// Value of a (replayed) operator on f, reduced modulo Q.
  OperatorWitness evaluate(const MixedOperator& op, const Polynomial& f) const;

  /// Q^n, cached.
  Ideal power(unsigned n) const;

private:
  std::optional<OperatorWitness> scan_operators(const PowerKind& kind, const Polynomial& f) const;
  Verdict symbolic(unsigned n, const Polynomial& f) const;
  bool in_q(const Polynomial& g) const { return reduce(g, q_).is_zero(); }
  std::vector<std::string> caveats_for(const PowerKind& kind) const;

  Ideal q_;
  mutable std::mutex mutex_;
  mutable std::map<unsigned, Ideal> powers_;
};

Verdict member(const Ideal& q, const PowerKind& kind, const Polynomial& f);
std::optional<MixedOperator> find_separating_operator(const Ideal& q, const PowerKind& kind,
                                                      const Polynomial& f);
Verdict mixed_intersection_form(const Ideal& q, unsigned n, const LiftSpec& lift, const Polynomial& f,
                                Linearity lin = Linearity::ZLinear);

struct CompareCell {
  std::optional<Verdict> verdict;
  std::string error;
};

struct Disagreement {
  std::size_t row;
  std::size_t kind_a;
  std::size_t kind_b;
};

struct CompareReport {
  std::vector<PowerKind> kinds;
  std::vector<Polynomial> corpus;
  /// cells[row][kind]
  std::vector<std::vector<CompareCell>> cells;
  /// Rows where two kinds with the same n disagree.
  std::vector<Disagreement> disagreements;
  std::size_t error_count = 0;
};

/// Evaluates every (corpus element, kind) cell, using up to `threads` workers.
CompareReport compare_report(const PowerEngine& engine, const std::vector<PowerKind>& kinds,
                             const std::vector<Polynomial>& corpus, unsigned threads = 1);
CompareReport compare_report(const Ideal& q, const std::vector<PowerKind>& kinds,
                             const std::vector<Polynomial>& corpus, unsigned threads = 1);

struct DiffPowerGenerators {
  Ideal ideal;
  unsigned degree_bound;
  /// Always true: only elements of degree <= degree_bound are found.
  bool truncated = true;
};

/// Basis of { f : deg f <= D, D(f) in I for all enumerated D of order <= n-1 }
/// as a vector space, solved exactly. Field coefficient domains only.
DiffPowerGenerators diff_power_generators(const Ideal& ideal, unsigned n, Linearity lin, unsigned degree_bound);

} // namespace symdiff
