#include "symdiff/diffops.hpp"

#include <cctype>

#include "symdiff/random.hpp"

namespace symdiff {

std::string to_string(Linearity lin) { return lin == Linearity::BaseLinear ? "base" : "zlinear"; }

std::vector<DiffOperator> enumerate_operators(const Ring& ring, Linearity linearity, unsigned max_order) {
  const bool with_t = linearity == Linearity::ZLinear && ring.domain.has_t();
  std::vector<DiffOperator> out;
  for (auto& idx : multi_indices(ring.nvars(), max_order, with_t)) out.push_back({std::move(idx)});
  return out;
}

Polynomial apply(const DiffOperator& op, const Polynomial& f) { return hasse_derivative(f, op.idx); }

Polynomial apply(const MixedOperator& op, const Polynomial& f) {
  auto g = apply(op.diff, f);
  if (op.delta_count > 0 && !f.domain().is_dvr())
    throw Error(ErrorCode::NotDVRDomain, "p-derivations need Z_(p) or Z[t]_(p)");
  for (unsigned a = 0; a < op.delta_count; ++a) g = poly_delta(g, op.lift);
  return g;
}

// ---------------------------------------------------------------------------
// Text form

std::string to_string(const DiffOperator& op, const Ring& ring) {
  std::string s;
  auto part = [&](const std::string& name, std::uint32_t k) {
    if (!s.empty()) s += " ";
    s += "D_" + name + "^(" + std::to_string(k) + ")";
  };
  if (op.idx.t_order > 0) part("t", op.idx.t_order);
  for (std::size_t i = 0; i < op.idx.exps.size(); ++i)
    if (op.idx.exps[i] > 0) part(ring.vars[i], op.idx.exps[i]);
  return s.empty() ? "id" : s;
}

std::string to_string(const MixedOperator& op, const Ring& ring) {
  const auto diff = to_string(op.diff, ring);
  if (op.delta_count == 0) return diff;
  const std::string delta = "δ^" + std::to_string(op.delta_count);
  return diff == "id" ? delta : delta + " ∘ " + diff;
}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> split_operator(const std::string& text) {
  static const std::string kCompose = "∘";
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*') {
      ++i;
      continue;
    }
    if (text.compare(i, kCompose.size(), kCompose) == 0) {
      i += kCompose.size();
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '*' &&
           text.compare(i, kCompose.size(), kCompose) != 0)
      ++i;
    std::string tok = text.substr(start, i - start);
    if (tok != "o") out.push_back({std::move(tok), start + 1});
  }
  return out;
}

/// Parses an optional "^k" or "^(k)" suffix; returns 1 when absent.
unsigned parse_power(const std::string& s, std::size_t pos, const Token& tok) {
  if (pos == s.size()) return 1;
  auto fail = [&] {
    throw ParseError(ErrorCode::ParseError, "bad exponent in operator '" + tok.text + "'", 1, tok.column);
  };
  if (s[pos] != '^') fail();
  std::string digits = s.substr(pos + 1);
  if (digits.size() >= 2 && digits.front() == '(' && digits.back() == ')')
    digits = digits.substr(1, digits.size() - 2);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail();
  return static_cast<unsigned>(std::stoul(digits));
}

} // namespace

MixedOperator parse_operator(const std::string& text, const Ring& ring) {
  static const std::string kDelta = "δ";
  MixedOperator op;
  op.diff = DiffOperator::identity(ring.nvars());
  bool seen_diff = false;
  for (const auto& tok : split_operator(text)) {
    const auto& s = tok.text;
    if (s == "id" || s == "1") {
      seen_diff = true;
      continue;
    }
    std::size_t dlen = 0;
    if (s.starts_with(kDelta)) dlen = kDelta.size();
    else if (s.starts_with("delta")) dlen = 5;
    if (dlen) {
      if (seen_diff || op.delta_count > 0)
        throw ParseError(ErrorCode::ParseError, "δ must come first, once", 1, tok.column);
      op.delta_count = parse_power(s, dlen, tok);
      continue;
    }
    if (!s.starts_with("D_"))
      throw ParseError(ErrorCode::ParseError, "unknown operator token '" + s + "'", 1, tok.column);
    seen_diff = true;
    std::size_t end = 2;
    while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_')) ++end;
    const std::string name = s.substr(2, end - 2);
    const unsigned k = parse_power(s, end, tok);
    if (name == "t" && ring.domain.has_t()) {
      op.diff.idx.t_order += k;
      continue;
    }
    const auto it = std::find(ring.vars.begin(), ring.vars.end(), name);
    if (it == ring.vars.end())
      throw ParseError(ErrorCode::UndeclaredVariable, "unknown variable '" + name + "'", 1, tok.column + 2);
    op.diff.idx.exps[static_cast<std::size_t>(it - ring.vars.begin())] += k;
  }
  return op;
}

// ---------------------------------------------------------------------------
// Lowering of powers

LoweringReport operator_lowers_powers_check(const Ideal& ideal, const DiffOperator& op, unsigned n,
                                            std::size_t trials, std::uint64_t seed) {
  if (op.order() > n) throw Error(ErrorCode::InvalidArgument, "operator order exceeds n");
  const auto& ring = ideal.ring();
  const auto power = ideal_power(ideal, n);
  const auto target = ideal_power(ideal, n - op.order());
  Rng rng(seed);
  RandomShape shape{2, 3, 4, true};
  LoweringReport report;
  for (std::size_t k = 0; k < trials; ++k) {
    Polynomial sample(ring);
    for (const auto& g : power.generators()) sample += random_polynomial(ring, rng, shape) * g;
    ++report.trials;
    if (!ideal_member(apply(op, sample), target)) {
      report.passed = false;
      report.counterexample = sample;
      break;
    }
  }
  return report;
}

} // namespace symdiff
