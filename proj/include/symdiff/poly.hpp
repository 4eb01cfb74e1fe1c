#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symdiff/coeff.hpp"

namespace symdiff {

using Exponents = std::vector<std::uint32_t>;

/// A monomial order built from consecutive blocks of variables, each ordered
/// lexicographically or by graded reverse lex. Blocks compare left to right.
/// `perm[i]` names the ring variable that sits at position i.
class MonomialOrder {
public:
  enum class Kind { Lex, GRevLex };

  struct Block {
    std::size_t size;
    Kind kind;
    friend bool operator==(const Block&, const Block&) = default;
  };

  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder grevlex(std::size_t nvars);
  static MonomialOrder blocks(std::vector<Block> blocks);

  /// Same order with one extra variable placed in front, in its own block.
  MonomialOrder eliminating_first() const;
  MonomialOrder with_permutation(std::vector<std::size_t> perm) const;

  /// Negative, zero or positive as a is smaller, equal or larger than b.
  int compare(const Exponents& a, const Exponents& b) const;
  bool less(const Exponents& a, const Exponents& b) const { return compare(a, b) < 0; }

  std::size_t nvars() const;
  const std::vector<Block>& block_list() const { return blocks_; }
  const std::vector<std::size_t>& permutation() const { return perm_; }
  std::string to_string() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
  std::vector<Block> blocks_;
  std::vector<std::size_t> perm_;
};

/// Coefficient domain, variable names and the order terms are printed in.
struct Ring {
  DomainSpec domain;
  std::vector<std::string> vars;
  MonomialOrder order;

  std::size_t nvars() const { return vars.size(); }
  friend bool operator==(const Ring&, const Ring&) = default;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Throws InvalidArgument on duplicate or reserved variable names.
RingPtr make_ring(const DomainSpec& domain, std::vector<std::string> vars,
                  std::optional<MonomialOrder> order = std::nullopt);

/// Ring with one extra variable in front, ordered to eliminate it.
RingPtr elimination_ring(const RingPtr& base, const std::string& name);

bool same_ring(const RingPtr& a, const RingPtr& b);

/// Orders of a Hasse derivative: one per ring variable plus one for t.
struct MultiIndex {
  Exponents exps;
  std::uint32_t t_order = 0;

  std::uint32_t total() const;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Total order first, then descending lexicographic on (exps..., t_order).
bool enumeration_less(const MultiIndex& a, const MultiIndex& b);

struct Term {
  Exponents exp;
  Scalar coeff;
};

class Polynomial {
public:
  explicit Polynomial(RingPtr ring);
  Polynomial(RingPtr ring, std::vector<Term> terms);

  static Polynomial constant(RingPtr ring, const Scalar& c);
  static Polynomial constant(RingPtr ring, long c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, Exponents exp, const Scalar& c);

  const RingPtr& ring() const { return ring_; }
  const DomainSpec& domain() const { return ring_->domain; }
  /// Terms sorted descending by the ring's order, no zero coefficients.
  const std::vector<Term>& terms() const& { return terms_; }
  std::vector<Term> terms() && { return std::move(terms_); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant coefficient (zero when absent).
  Scalar constant_term() const;
  std::uint32_t total_degree() const;
  std::size_t size() const { return terms_.size(); }

  Polynomial operator-() const;
  Polynomial pow(unsigned e) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Scalar& c, const Polynomial& a);
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Exact quotient a / b. Throws InexactDivision if b does not divide a.
  friend Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

  /// Canonical text form; reparses to an equal polynomial.
  std::string to_string() const;

  /// Same terms viewed in a structurally identical ring.
  Polynomial in_ring(RingPtr other) const;

private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

enum class PolyOp { Add, Sub, Mul };
Polynomial poly_arith(const Polynomial& f, const Polynomial& g, PolyOp op);

/// D_t^(t_order) applied after the divided partials D_{x_i}^(e_i).
Polynomial hasse_derivative(const Polynomial& f, const MultiIndex& idx);

/// Images of the ring variables and of t under a Frobenius lift. Missing
/// entries take the default x_i -> x_i^p and t -> t^p.
struct LiftSpec {
  std::optional<Polynomial> t_image;
  std::vector<std::optional<Polynomial>> var_images;

  bool is_default() const;
};

/// Throws InvalidLift unless every image is congruent to the p-th power of its
/// generator modulo p, and NotDVRDomain outside the local rings.
void validate_lift(const RingPtr& ring, const LiftSpec& lift);

Polynomial frobenius_apply(const Polynomial& f, const LiftSpec& lift = {});
/// (phi(f) - f^p) / p, checked exact coefficient by coefficient.
Polynomial poly_delta(const Polynomial& f, const LiftSpec& lift = {});

struct MultiIndexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const { return enumeration_less(a, b); }
};

using TaylorExpansion = std::map<MultiIndex, Polynomial, MultiIndexLess>;

/// All multi-indices of total order at most n, in enumeration order.
/// `with_t` adds the t direction (only meaningful on domains with t).
std::vector<MultiIndex> multi_indices(std::size_t nvars, unsigned n, bool with_t);

/// Coordinates of the universal order-n operator: every Hasse derivative of
/// total order <= n. `with_t` includes the t direction when the domain has t.
TaylorExpansion taylor_expansion(const Polynomial& f, unsigned n, bool with_t = false);

/// Term-wise helpers shared with the Groebner engine.
namespace terms {

bool divides(const Exponents& a, const Exponents& b);
Exponents lcm(const Exponents& a, const Exponents& b);
Exponents quotient(const Exponents& b, const Exponents& a);
Exponents product(const Exponents& a, const Exponents& b);
std::uint32_t degree(const Exponents& a);

void sort(std::vector<Term>& ts, const MonomialOrder& ord);
/// a - c * x^shift * b; both inputs sorted descending by `ord`.
std::vector<Term> sub_scaled(const std::vector<Term>& a, const Scalar& c, const Exponents& shift,
                             const std::vector<Term>& b, const MonomialOrder& ord);

} // namespace terms

std::string monomial_string(const Ring& ring, const Exponents& e);

} // namespace symdiff
