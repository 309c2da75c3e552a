#include <doctest.h>

#include <random>

#include "jetdbar/jet.hpp"
#include "jetdbar/parse.hpp"

using namespace jetdbar;

TEST_CASE("leq is componentwise") {
  CHECK(leq(MultiIndex{1, 0}, MultiIndex{2, 1}));
  CHECK_FALSE(leq(MultiIndex{1, 0}, MultiIndex{0, 1}));
  CHECK(leq(MultiIndex{0, 0}, MultiIndex{0, 0}));
  CHECK_THROWS_AS(leq(MultiIndex{1}, MultiIndex{1, 0}), ShapeError);
}

TEST_CASE("negative entries and bad shapes are rejected") {
  CHECK_THROWS(MultiIndex({-1, 0}));
  CHECK_THROWS_AS(SpaceShape(1, 2, MultiIndex{1}), ShapeError);
  CHECK_THROWS_AS(SpaceShape(1, 0, MultiIndex{}), ShapeError);
}

TEST_CASE("normal form examples") {
  SpaceShape s1 = SpaceShape::with_caps(1, MultiIndex{1});
  MonomialIdeal I1 = MonomialIdeal::complete_intersection(s1);
  CHECK(normal_form(JetPoly::parse("t1^3", s1), I1).is_zero());

  SpaceShape s2 = SpaceShape::with_caps(1, MultiIndex{1, 1});
  MonomialIdeal J(s2, {MultiIndex{2, 0}, MultiIndex{1, 1}, MultiIndex{0, 2}});
  CHECK(normal_form(JetPoly::parse("t1*t2", s2), J).is_zero());
  CHECK(normal_form(JetPoly::parse("t1", s2), J) == JetPoly::parse("t1", s2));

  JetPoly p = JetPoly::parse("1 + z1*t1", s1);
  CHECK(jet_mul(p, p, I1) == JetPoly::parse("1 + 2*z1*t1", s1));
}

TEST_CASE("jet_mul examples") {
  SpaceShape s = SpaceShape::with_caps(1, MultiIndex{1});
  MonomialIdeal I = MonomialIdeal::complete_intersection(s);
  JetPoly p = JetPoly::parse("z1 + (2+i)*zb1*t1", s);
  CHECK(jet_mul(JetPoly::parse("1", s), p, I) == p);
  CHECK(jet_mul(JetPoly::parse("t1", s), JetPoly::parse("t1", s), I).is_zero());

  SpaceShape s3 = SpaceShape::with_caps(1, MultiIndex{2});
  MonomialIdeal I3 = MonomialIdeal::complete_intersection(s3);
  CHECK(jet_mul(JetPoly::parse("z1 + t1", s3), JetPoly::parse("z1 - t1", s3), I3) ==
        JetPoly::parse("z1^2 - t1^2", s3));
}

TEST_CASE("standard monomial examples") {
  SpaceShape s1 = SpaceShape::with_caps(1, MultiIndex{1});
  auto b1 = standard_monomials(MonomialIdeal::complete_intersection(s1));
  REQUIRE(b1.size() == 2);
  CHECK(b1[0] == MultiIndex{0});
  CHECK(b1[1] == MultiIndex{1});

  SpaceShape s2 = SpaceShape::with_caps(1, MultiIndex{1, 1});
  auto b2 = standard_monomials(MonomialIdeal(s2, {MultiIndex{2, 0}, MultiIndex{1, 1}, MultiIndex{0, 2}}));
  REQUIRE(b2.size() == 3);
  CHECK(b2[0] == MultiIndex{0, 0});
  CHECK(b2[1] == MultiIndex{1, 0});
  CHECK(b2[2] == MultiIndex{0, 1});

  SpaceShape s3 = SpaceShape::with_caps(1, MultiIndex{1, 2});
  CHECK(standard_monomials(MonomialIdeal::complete_intersection(s3)).size() == 6);
}

TEST_CASE("ideal must contain the cap powers") {
  SpaceShape s = SpaceShape::with_caps(1, MultiIndex{1, 1});
  CHECK_THROWS(MonomialIdeal(s, {MultiIndex{3, 0}, MultiIndex{0, 2}}));
  // Redundant generators are pruned.
  MonomialIdeal J(s, {MultiIndex{2, 0}, MultiIndex{2, 1}, MultiIndex{0, 2}});
  CHECK(J.generators().size() == 2);
}

TEST_CASE("standard monomials: count and order ideal property") {
  for (auto M : {MultiIndex{2}, MultiIndex{1, 1}, MultiIndex{2, 1}, MultiIndex{1, 1, 2}, MultiIndex{0, 3}}) {
    SpaceShape s = SpaceShape::with_caps(1, M);
    auto b = standard_monomials(MonomialIdeal::complete_intersection(s));
    long expect = 1;
    for (int j = 0; j < M.size(); ++j) expect *= M[j] + 1;
    CHECK(static_cast<long>(b.size()) == expect);
  }
  SpaceShape s = SpaceShape::with_caps(1, MultiIndex{2, 2});
  MonomialIdeal J(s, {MultiIndex{3, 0}, MultiIndex{2, 1}, MultiIndex{0, 2}});
  auto b = standard_monomials(J);
  for (const auto& m : b) {
    for (const auto& d : box(m)) {
      CHECK(std::find(b.begin(), b.end(), d) != b.end());
    }
  }
}

namespace {

JetPoly random_jet(std::mt19937& rng, const SpaceShape& s) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2);
  Poly p;
  for (int t = 0; t < 5; ++t) {
    Monomial m;
    m.set_exponent({VarKind::Zeta, 0}, deg(rng));
    m.set_exponent({VarKind::ZetaBar, 0}, deg(rng) / 2);
    for (int j = 0; j < s.kappa; ++j) m.set_exponent({VarKind::Tau, j}, deg(rng) + (t % 2));
    p += Poly::term(GaussRational(coef(rng), coef(rng)), m);
  }
  return JetPoly(s, p);
}

}  // namespace

TEST_CASE("normal form: idempotent and multiplicative on random batteries") {
  std::mt19937 rng(7);
  SpaceShape s = SpaceShape::with_caps(1, MultiIndex{1, 2});
  MonomialIdeal J(s, {MultiIndex{2, 0}, MultiIndex{1, 2}, MultiIndex{0, 3}});
  for (int trial = 0; trial < 40; ++trial) {
    JetPoly p = random_jet(rng, s), q = random_jet(rng, s), r = random_jet(rng, s);
    JetPoly np = normal_form(p, J);
    CHECK(normal_form(np, J) == np);
    for (const auto& [m, c] : np.terms()) CHECK_FALSE(J.contains(m));
    CHECK(normal_form(p * q, J) == jet_mul(p, q, J));
    CHECK(jet_mul(p, q + r, J) == jet_mul(p, q, J) + jet_mul(p, r, J));
    CHECK(jet_mul(p, q, J) == jet_mul(q, p, J));
    CHECK(jet_mul(jet_mul(p, q, J), r, J) == jet_mul(p, jet_mul(q, r, J), J));
  }
}

TEST_CASE("parser: grammar and errors") {
  Poly p = parse_poly("(1/2+3*i)*z1^2 - zb1*t2 + 4");
  CHECK(p.degree_in({VarKind::Zeta, 0}) == 2);
  CHECK(parse_poly(p.to_string()) == p);
  RatFunc r = parse_rational("(z1 - t1)/(z1^2 - t1^2)");
  CHECK(r == RatFunc::quotient(Poly(1), parse_poly("z1 + t1")));
  CHECK_THROWS_AS(parse_poly("z1 +* 2"), ParseError);
  CHECK_THROWS_AS(parse_poly("q1"), ParseError);
  CHECK_THROWS_AS(parse_poly("1/z1"), ParseError);
  try {
    parse_poly("z1 + )");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}
