#pragma once

// Line-oriented job files:
//
//   # comment
//   [ring]
//   domain = Fp(t)          Q | Fp | Fp(t) | Z(p) | Z[t](p)
//   p = 5
//   vars = x, y
//   order = grevlex         grevlex | lex
//   lift.t = x^25 - (x^5 - t)^5
//
//   [ideal Q]
//   gens = x^5 - t; x*y     (or one `gen =` line per generator)
//
//   [query]
//   type = member           member | separate | compare | generators | verify-paper
//   ideal = Q
//   kind = symbolic(2)
//   f = x^5 - t
//
// `separate` takes an optional `operator =` to replay. `compare` takes
// `kinds`, `corpus` (or repeated `f =`), `random = <count>` and
// `expect = equal`. `generators` takes `n`, `linearity` and `degree_bound`.
// `verify-paper` takes an optional `p`.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symdiff/powers.hpp"

namespace symdiff {

struct Query {
  enum class Type { Member, Separate, Compare, Generators, VerifyPaper };

  Type type = Type::Member;
  /// 1-based position in the file and line of its section header.
  std::size_t index = 0;
  std::size_t line = 0;
  std::string ideal;
  /// One kind for member/separate; any number for compare.
  std::vector<PowerKind> kinds;
  /// `f` for member/separate; the explicit corpus for compare.
  std::vector<Polynomial> polys;
  std::optional<MixedOperator> replay;
  unsigned random_count = 0;
  bool expect_equal = false;
  unsigned n = 2;
  Linearity linearity = Linearity::ZLinear;
  std::optional<unsigned> degree_bound;
  std::optional<std::uint64_t> p;
};

struct JobSpec {
  /// Absent for files holding only verify-paper queries.
  RingPtr ring;
  LiftSpec lift;
  std::map<std::string, Ideal> ideals;
  std::vector<Query> queries;
};

/// Throws ParseError (with line and column), UndeclaredVariable, InvalidLift.
JobSpec parse_job(std::string_view text);

struct RunOptions {
  bool json = false;
  std::uint64_t seed = 1;
  std::optional<unsigned> degree_bound;
  unsigned threads = 1;
};

/// 0 when every query ran, 2 when a verify-paper check or a declared
/// expectation failed, 1 when a query raised an error. Output is emitted in
/// file order even when queries run concurrently.
int run_job(const JobSpec& job, const RunOptions& options, std::ostream& out);

struct ReferenceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Worked examples for the prime p: the F_p(t) field example, the Z_(p)
/// mixed example and the Z[t]_(p) example with an x-dependent lift of t.
std::vector<ReferenceCheck> reference_checks(std::uint64_t p);

/// Prints the checks; returns 0 when all pass, 2 otherwise.
int run_reference_checks(std::uint64_t p, bool json, std::ostream& out);

} // namespace symdiff
