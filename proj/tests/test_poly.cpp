// Unit tests for exact polynomial arithmetic, Sturm-based root counting and
// the coefficient-sequence property report.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chowcalc/errors.hpp"
#include "chowcalc/poly.hpp"

using namespace chowcalc;

static IntPoly P(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return IntPoly(std::move(v));
}

TEST_CASE("basic arithmetic and normalization") {
  CHECK(IntPoly{}.is_zero());
  CHECK(P({0, 0}).is_zero());
  CHECK(P({1, 2}).degree() == 1);
  CHECK(P({1, 2, 3}) + P({0, -2, -3}) == P({1}));
  CHECK(P({1, 1}) * P({1, 1}) == P({1, 2, 1}));
  CHECK(P({1, 1}).pow(3) == P({1, 3, 3, 1}));
  CHECK(IntPoly::geometric(1, 3) == P({0, 1, 1, 1}));
  CHECK(IntPoly::geometric(2, 1).is_zero());
  CHECK(P({1, 2, 1}).eval(Int(3)) == 16);
  CHECK(P({1, 2, 1}).at_one() == 4);
  CHECK(P({2, 4}).content() == 2);
  CHECK(P({-3, 9}).content() == 3);
  CHECK(P({1, -2, 1}).str() == "1 - 2x + x^2");
}

TEST_CASE("exact division") {
  // (x-1)(x^4+x^3-x^2-x-1) = x^5 - 2x^3 + 1... check the actual identity:
  // chi = x^5 - 2x^3 + 1 factors as (x-1)(x^4 + x^3 - x^2 - x - 1)
  IntPoly chi = P({1, 0, 0, -2, 0, 1});
  IntPoly q = exact_divide(chi, P({-1, 1}));
  CHECK(q == P({-1, -1, -1, 1, 1}));
  CHECK_THROWS_AS(exact_divide(P({1, 1, 1}), P({-1, 1})), Error);
  CHECK_THROWS_AS(exact_divide(P({1, 2}), P({0, 2})), Error);  // quotient 1/2...
  CHECK(exact_divide(P({2, 4}), P({2})) == P({1, 2}));
}

TEST_CASE("gcd and squarefree part") {
  IntPoly a = P({-1, 1}) * P({-1, 1}) * P({2, 1});
  CHECK(gcd_poly(a, a.derivative()) == P({-1, 1}));
  CHECK(squarefree_part(a) == P({-1, 1}) * P({2, 1}));
  CHECK(squarefree_part(P({0, 0, 0, 5})) == P({0, 1}));
  CHECK(gcd_poly(P({0, 2}), IntPoly{}) == P({0, 1}));
}

TEST_CASE("real root counts via Sturm chains") {
  CHECK(count_real_roots(P({-1, 0, 1})) == 2);        // x^2 - 1
  CHECK(count_real_roots(P({1, 0, 1})) == 0);         // x^2 + 1
  CHECK(count_real_roots(P({1, -2, 1})) == 1);        // (x-1)^2: one distinct
  CHECK(count_real_roots(P({0, 1})) == 1);
  CHECK(count_real_roots(P({7})) == 0);
  CHECK(count_real_roots(P({0, -6, 11, -6, 1})) == 4);  // x(x-1)(x-2)(x-3)
  CHECK(count_real_roots(P({1, 3, 1})) == 2);           // disc 5 > 0
  CHECK(count_real_roots(P({1, 1, 1})) == 0);           // disc -3 < 0
  CHECK(count_real_roots(P({1, 5, 1})) == 2);
  // degree 5 with exactly 3 distinct real roots: (x^2+1)(x)(x-1)(x+2)
  CHECK(count_real_roots(P({0, 1}) * P({-1, 1}) * P({2, 1}) * P({1, 0, 1})) == 3);
  CHECK_THROWS_AS(count_real_roots(IntPoly{}), Error);
}

TEST_CASE("property report") {
  auto rep = check_properties(P({1, 4, 5, 4, 1}));
  CHECK(rep.palindromic);
  CHECK(rep.unimodal);
  CHECK(rep.log_concave);
  CHECK_FALSE(rep.first_violation_index.has_value());
  REQUIRE(rep.gamma.has_value());
  // 1+4x+5x^2+4x^3+x^4 = (1+x)^4 - x^2  -> gamma (1, 0, -1)
  CHECK(*rep.gamma == std::vector<Int>{1, 0, -1});
  CHECK_FALSE(*rep.gamma_positive);

  rep = check_properties(P({1, 5, 1}));
  CHECK(rep.palindromic);
  REQUIRE(rep.gamma.has_value());
  CHECK(*rep.gamma == std::vector<Int>{1, 3});
  CHECK(*rep.gamma_positive);
  CHECK(rep.real_rooted);  // disc 21 > 0

  rep = check_properties(P({1, 1, 1}));
  REQUIRE(rep.gamma.has_value());
  CHECK(*rep.gamma == std::vector<Int>{1, -1});
  CHECK_FALSE(*rep.gamma_positive);
  CHECK_FALSE(rep.real_rooted);

  rep = check_properties(P({1, 2, 2, 1}));
  CHECK(rep.palindromic);
  CHECK(*rep.gamma == std::vector<Int>{1, -1});

  rep = check_properties(P({1, 3, 2}));
  CHECK_FALSE(rep.palindromic);
  CHECK_FALSE(rep.gamma.has_value());
  CHECK(rep.unimodal);
  CHECK(rep.log_concave);
  CHECK(rep.real_rooted);

  // non-unimodal
  rep = check_properties(P({1, 5, 2, 5, 1}));
  CHECK_FALSE(rep.unimodal);
  CHECK_FALSE(rep.log_concave);

  // unimodal but not log-concave: 1, 1, 2, 1 -> a1^2 = 1 < a0 a2 = 2
  rep = check_properties(P({1, 1, 2, 1}));
  CHECK(rep.unimodal);
  CHECK_FALSE(rep.log_concave);
  CHECK(rep.first_violation_index == 1);

  // internal zero coefficient kills log-concavity
  rep = check_properties(P({1, 0, 1}));
  CHECK_FALSE(rep.log_concave);
  CHECK(rep.first_violation_index == 1);
  CHECK_FALSE(rep.unimodal);

  CHECK_THROWS_AS(check_properties(IntPoly{}), Error);
  CHECK_THROWS_AS(check_properties(P({1, -1, 1})), Error);
}

TEST_CASE("real-rootedness of products of linear factors") {
  // (1+x)^5 scaled: all roots real
  CHECK(check_properties(P({1, 1}).pow(5)).real_rooted);
  // (1+x)^2 (1+3x+x^2)
  IntPoly p = P({1, 1}).pow(2) * P({1, 3, 1});
  CHECK(check_properties(p).real_rooted);
}

TEST_CASE("rational polynomials") {
  RatPoly h = RatPoly(P({1, 2})) * Rat(1, 2);
  CHECK(h.coeff(0) == Rat(1, 2));
  CHECK_FALSE(h.is_integral());
  CHECK_THROWS_AS(h.to_int(), Error);
  RatPoly g = h + h;
  CHECK(g.is_integral());
  CHECK(g.to_int() == P({1, 2}));
  CHECK((h * RatPoly(P({2}))).to_int() == P({1, 2}));
  CHECK(rat_from_string("-3/6") == Rat(-1, 2));
  CHECK(rat_to_string(Rat(-1, 2)) == "-1/2");
  CHECK(rat_to_string(Rat(4)) == "4");
}

TEST_CASE("series arithmetic and composition") {
  int N = 6;
  // exp-like test with rational coefficients: E = sum t^k/k!, L = log(1+t)
  Series E(N), L(N);
  E.set_coeff(0, RatPoly::constant(Rat(1)));
  for (int k = 1; k <= N; ++k) {
    E.set_coeff(k, RatPoly::constant(Rat(1) / Rat(factorial(k))));
    L.set_coeff(k, RatPoly::constant(Rat((k % 2) ? 1 : -1) / Rat(k)));
  }
  Series Em1 = E - Series(N);  // still E
  CHECK(Em1 == E);
  Series Eminus1 = E;
  Eminus1.set_coeff(0, RatPoly{});
  Series t = Series::t(N);
  CHECK(Series::compose(L, Eminus1) == t);
  // compose(E-1 as outer, L) = t as well
  Series Eshift(N);
  for (int k = 1; k <= N; ++k) Eshift.set_coeff(k, E.coeff(k));
  CHECK(Series::compose(Eshift, L) == t);
  // scale by a polynomial in x
  Series xt = t.scale(RatPoly(P({0, 1})));
  CHECK(xt.coeff(1) == RatPoly(P({0, 1})));
}

TEST_CASE("factorials and binomials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 7) == 0);
  CHECK(binomial(45, 2) == 990);
}
