#include "doctest.h"

#include "support.hpp"
#include "symdiff/parser.hpp"

using namespace symdiff;
using namespace symdiff::testing;

namespace {

Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(r, s); }

MultiIndex idx(std::vector<std::uint32_t> e, std::uint32_t t = 0) { return {std::move(e), t}; }

} // namespace

TEST_CASE("ring construction") {
  const auto q = DomainSpec::rationals();
  CHECK_THROWS_AS(make_ring(q, {"x", "x"}), Error);
  CHECK_THROWS_AS(make_ring(q, {"2x"}), Error);
  CHECK_THROWS_AS(make_ring(DomainSpec::rational_functions(3), {"t"}), Error);
  CHECK_NOTHROW(make_ring(q, {"t"}));
  CHECK_THROWS_AS(make_ring(q, {"delta"}), Error);
}

TEST_CASE("arithmetic examples") {
  const auto r = make_ring(DomainSpec::rationals(), {"x", "y"});
  CHECK((P(r, "x + y") * P(r, "x - y")) == P(r, "x^2 - y^2"));
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const auto f = make_ring(DomainSpec::prime_field(p), {"x"});
    CHECK(P(f, "x + 1").pow(static_cast<unsigned>(p)) == P(f, "x^" + std::to_string(p) + " + 1"));
  }
  const auto z = P(r, "x") * Polynomial(r);
  CHECK(z.is_zero());
  CHECK(z.terms().empty());
  CHECK(divide_exact(P(r, "x^2 - y^2"), P(r, "x - y")) == P(r, "x + y"));
  CHECK_THROWS_AS(divide_exact(P(r, "x^2 + y"), P(r, "x - y")), Error);
}

TEST_CASE("monomial orders") {
  const auto lex = MonomialOrder::lex(2);
  const auto grevlex = MonomialOrder::grevlex(3);
  CHECK(lex.less({0, 5}, {1, 0}));
  CHECK(grevlex.less({1, 0, 0}, {0, 0, 2}));
  // x*z < y^2 in grevlex
  CHECK(grevlex.less({1, 0, 1}, {0, 2, 0}));
  const auto elim = grevlex.eliminating_first();
  CHECK(elim.nvars() == 4);
  CHECK(elim.less({0, 5, 5, 5}, {1, 0, 0, 0}));
  const auto r = make_ring(DomainSpec::rationals(), {"x", "y"}, MonomialOrder::lex(2));
  CHECK(P(r, "y^3 + x").to_string() == "x + y^3");
}

TEST_CASE("printing") {
  const auto r = make_ring(DomainSpec::local_poly_fractions(2), {"x"});
  CHECK(P(r, "(2*t + 4)/(t + 1)*x^2 - 1").to_string() == "((2*t + 4)/(t + 1))*x^2 - 1");
  const auto q = make_ring(DomainSpec::rationals(), {"x", "y"});
  CHECK(P(q, "-x*y + 3/2").to_string() == "-x*y + 3/2");
  CHECK(Polynomial(q).to_string() == "0");
}

TEST_CASE("hasse derivative examples") {
  for (std::uint64_t p : {2, 3, 5}) {
    const auto ps = std::to_string(p);
    const auto fp = make_ring(DomainSpec::prime_field(p), {"x"});
    CHECK(hasse_derivative(P(fp, "x^" + ps), idx({1})).is_zero());
    CHECK(hasse_derivative(P(fp, "x^" + ps), idx({static_cast<std::uint32_t>(p)})) == Polynomial::constant(fp, 1));
    const auto ft = make_ring(DomainSpec::rational_functions(p), {"x"});
    CHECK(hasse_derivative(P(ft, "x^" + ps + " - t"), idx({0}, 1)) == Polynomial::constant(ft, -1));
  }
  const auto q = make_ring(DomainSpec::rationals(), {"x", "y"});
  CHECK(hasse_derivative(P(q, "x^4*y"), idx({2, 1})) == P(q, "6*x^2"));
  CHECK_THROWS_AS(hasse_derivative(P(q, "x"), idx({0, 0}, 1)), Error);
}

TEST_CASE("frobenius and delta examples") {
  const auto z2 = make_ring(DomainSpec::local_integers(2), {"x"});
  CHECK(frobenius_apply(P(z2, "x")) == P(z2, "x^2"));
  CHECK(poly_delta(P(z2, "x")).is_zero());
  const auto z3 = make_ring(DomainSpec::local_integers(3), {"x"});
  CHECK(frobenius_apply(P(z3, "x + 1")) == P(z3, "x^3 + 1"));
  for (std::uint64_t p : {2, 3, 5}) {
    const auto r = make_ring(DomainSpec::local_integers(p), {"x"});
    const auto pp = Polynomial::constant(r, static_cast<long>(p));
    CHECK(poly_delta(pp) == Polynomial::constant(r, 1) - pp.pow(static_cast<unsigned>(p) - 1));
  }
  for (std::uint64_t p : {2, 3}) {
    const auto ps = std::to_string(p);
    const auto r = make_ring(DomainSpec::local_poly_fractions(p), {"x"});
    LiftSpec lift;
    lift.t_image = P(r, "x^" + std::to_string(p * p) + " - (x^" + ps + " - t)^" + ps);
    lift.var_images.assign(1, std::nullopt);
    CHECK_NOTHROW(validate_lift(r, lift));
    CHECK(frobenius_apply(P(r, "t"), lift) == *lift.t_image);
    CHECK(poly_delta(P(r, "x^" + ps + " - t"), lift).is_zero());
    // A denominator in t would have to map to a unit.
    CHECK_THROWS_AS(frobenius_apply(P(r, "1/(t + 1)"), lift), Error);
  }
}

TEST_CASE("invalid lifts") {
  const auto r = make_ring(DomainSpec::local_integers(3), {"x", "y"});
  LiftSpec lift;
  lift.var_images = {P(r, "x^2"), std::nullopt};
  CHECK_THROWS_AS(validate_lift(r, lift), Error);
  lift.var_images = {P(r, "x^3 + 3*y^2"), std::nullopt};
  CHECK_NOTHROW(validate_lift(r, lift));
  const auto q = make_ring(DomainSpec::rationals(), {"x"});
  CHECK_THROWS_AS(validate_lift(q, LiftSpec{}), Error);
}

TEST_CASE("taylor expansion examples") {
  const auto q = make_ring(DomainSpec::rationals(), {"x"});
  const auto e = taylor_expansion(P(q, "x^2"), 1);
  CHECK(e.size() == 2);
  CHECK(e.at(idx({0})) == P(q, "x^2"));
  CHECK(e.at(idx({1})) == P(q, "2*x"));

  const auto ft = make_ring(DomainSpec::rational_functions(5), {"x"});
  const auto z = taylor_expansion(P(ft, "x^5 - t"), 1, true);
  CHECK(z.size() == 3);
  CHECK(z.at(idx({0})) == P(ft, "x^5 - t"));
  CHECK(z.at(idx({1})).is_zero());
  CHECK(z.at(idx({0}, 1)) == Polynomial::constant(ft, -1));

  const auto c = taylor_expansion(Polynomial::constant(q, 7), 3);
  for (const auto& [k, v] : c) CHECK((k.total() == 0 ? v == Polynomial::constant(q, 7) : v.is_zero()));
}

TEST_CASE("multi-index enumeration order") {
  const auto m = multi_indices(2, 1, true);
  REQUIRE(m.size() == 4);
  CHECK(m[0].total() == 0);
  CHECK(m[1] == idx({1, 0}));
  CHECK(m[2] == idx({0, 1}));
  CHECK(m[3] == idx({0, 0}, 1));
  CHECK(multi_indices(3, 2, false).size() == 10);
}

namespace {

std::vector<DomainSpec> domains() {
  return {DomainSpec::rationals(), DomainSpec::prime_field(3), DomainSpec::rational_functions(3),
          DomainSpec::local_integers(2), DomainSpec::local_poly_fractions(2)};
}

} // namespace

TEST_CASE("property: hasse composition and leibniz") {
  Rng rng(21);
  const auto ds = domains();
  for (int i = 0; i < 500; ++i) {
    const auto& d = ds[static_cast<std::size_t>(i) % ds.size()];
    const auto r = make_ring(d, {"x", "y"});
    const auto f = random_polynomial(r, rng, {6, 4, 4, true});
    const auto g = random_polynomial(r, rng, {4, 3, 4, true});
    const bool in_t = d.has_t() && i % 2 == 0;
    const auto v = static_cast<std::size_t>(uniform(rng, 0, 1));
    auto dir = [&](unsigned k) {
      MultiIndex m{{0, 0}, 0};
      if (in_t) m.t_order = k;
      else m.exps[v] = k;
      return m;
    };
    const auto a = static_cast<unsigned>(uniform(rng, 0, 3)), b = static_cast<unsigned>(uniform(rng, 0, 3));
    REQUIRE(hasse_derivative(hasse_derivative(f, dir(a)), dir(b)) ==
            binomial_scalar(d, a + b, a) * hasse_derivative(f, dir(a + b)));
    const auto k = static_cast<unsigned>(uniform(rng, 0, 4));
    Polynomial sum(r);
    for (unsigned j = 0; j <= k; ++j) sum += hasse_derivative(f, dir(j)) * hasse_derivative(g, dir(k - j));
    REQUIRE(hasse_derivative(f * g, dir(k)) == sum);
  }
}

TEST_CASE("property: taylor expansion shape") {
  Rng rng(22);
  const auto ds = domains();
  for (int i = 0; i < 100; ++i) {
    const auto& d = ds[static_cast<std::size_t>(i) % ds.size()];
    const auto r = make_ring(d, {"x", "y"});
    const auto f = random_polynomial(r, rng);
    const auto n = static_cast<unsigned>(uniform(rng, 0, 3));
    const auto e = taylor_expansion(f, n, d.has_t());
    REQUIRE(e.at(idx({0, 0})) == f);
    for (const auto& [k, v] : e) REQUIRE(k.total() <= n);
    REQUIRE(e.size() == multi_indices(2, n, d.has_t()).size());
  }
}

TEST_CASE("property: frobenius homomorphism and delta axioms") {
  Rng rng(23);
  std::vector<std::pair<RingPtr, LiftSpec>> cases;
  for (std::uint64_t p : {2, 3}) {
    const auto r = make_ring(DomainSpec::local_integers(p), {"x", "y"});
    cases.push_back({r, {}});
    LiftSpec l;
    l.var_images = {std::nullopt, P(r, "y^" + std::to_string(p) + " + " + std::to_string(p) + "*x")};
    cases.push_back({r, l});
    cases.push_back({make_ring(DomainSpec::local_poly_fractions(p), {"x"}), {}});
  }
  for (int i = 0; i < 500; ++i) {
    const auto& [r, lift] = cases[static_cast<std::size_t>(i) % cases.size()];
    const auto p = static_cast<unsigned>(r->domain.p());
    const auto pp = Polynomial::constant(r, static_cast<long>(p));
    const auto a = random_polynomial(r, rng, {2, 3, 4, true});
    const auto b = random_polynomial(r, rng, {2, 3, 4, true});
    REQUIRE(frobenius_apply(a + b, lift) == frobenius_apply(a, lift) + frobenius_apply(b, lift));
    REQUIRE(frobenius_apply(a * b, lift) == frobenius_apply(a, lift) * frobenius_apply(b, lift));
    const auto da = poly_delta(a, lift), db = poly_delta(b, lift);
    REQUIRE(poly_delta(Polynomial::constant(r, 1), lift).is_zero());
    REQUIRE(poly_delta(a * b, lift) == a.pow(p) * db + da * b.pow(p) + pp * da * db);
    REQUIRE(poly_delta(a + b, lift) == da + db + divide_exact(a.pow(p) + b.pow(p) - (a + b).pow(p), pp));
  }
}

TEST_CASE("property: ring laws and exact division") {
  Rng rng(24);
  const auto ds = domains();
  for (int i = 0; i < 300; ++i) {
    const auto r = make_ring(ds[static_cast<std::size_t>(i) % ds.size()], {"x", "y", "z"});
    const auto a = random_polynomial(r, rng), b = random_polynomial(r, rng), c = random_polynomial(r, rng);
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a - b) + b == a);
    REQUIRE(a * b == b * a);
    if (!b.is_zero()) REQUIRE(divide_exact(a * b, b) == a);
  }
}
