#include <doctest.h>

#include "jetdbar/hefer.hpp"
#include "jetdbar/parse.hpp"

using namespace jetdbar;

namespace {

FormExpr poly(const char* s) { return FormExpr(parse_poly(s, NameTable::full())); }
FormExpr dzeta(int j) { return FormExpr::differential(VarKind::Zeta, j); }
FormExpr dtau(int j) { return FormExpr::differential(VarKind::Tau, j); }

bool all_ok(const std::vector<IdentityCheck>& checks) {
  bool ok = true;
  for (const auto& c : checks) {
    if (!c.ok) {
      MESSAGE(c.name << ": " << c.residual);
      ok = false;
    }
  }
  return ok;
}

}  // namespace

TEST_CASE("koszul resolution examples") {
  Resolution r1 = koszul_resolution(MultiIndex{0});
  REQUIRE(r1.length() == 1);
  CHECK(r1.f[1](0, 0) == parse_poly("tau1", NameTable::full()));

  Resolution r2 = koszul_resolution(MultiIndex{1, 1});
  CHECK(r2.ranks == std::vector<int>{1, 2, 1});
  CHECK(r2.f[2](0, 0) == parse_poly("-tau2^2", NameTable::full()));
  CHECK(r2.f[2](1, 0) == parse_poly("tau1^2", NameTable::full()));
  for (auto M : {MultiIndex{2, 1}, MultiIndex{1, 1, 1}, MultiIndex{0, 2, 1}}) {
    Resolution r = koszul_resolution(M);
    for (int k = 1; k < r.length(); ++k) CHECK((r.f[k] * r.f[k + 1]).is_zero());
  }
}

TEST_CASE("koszul hefer examples") {
  Resolution r0 = koszul_resolution(MultiIndex{0});
  HeferFamily h0 = koszul_hefer(r0);
  CHECK(h0.get(r0, 0, 1)(0, 0) == dtau(0).times_2pii(-1));
  CHECK(h0.get(r0, 0, 1)(0, 0).delta_eta() == poly("tau1 - w1"));

  Resolution r1 = koszul_resolution(MultiIndex{1});
  HeferFamily h1 = koszul_hefer(r1);
  CHECK(h1.get(r1, 0, 1)(0, 0).delta_eta() == poly("tau1^2 - w1^2"));

  Resolution r00 = koszul_resolution(MultiIndex{0, 0});
  CHECK(all_ok(check_hefer(r00, koszul_hefer(r00))));
}

TEST_CASE("koszul hefer relations hold for every small M") {
  for (auto M : {MultiIndex{3}, MultiIndex{2, 1}, MultiIndex{1, 1, 1}, MultiIndex{2, 0, 2}}) {
    Resolution r = koszul_resolution(M);
    CHECK(all_ok(check_hefer(r, koszul_hefer(r))));
  }
}

TEST_CASE("top hefer form against the residue matches the closed form") {
  for (auto M : {MultiIndex{1}, MultiIndex{1, 1}, MultiIndex{2, 1}, MultiIndex{1, 0, 1}}) {
    auto [current, sign] = hefer_times_residue(M, 1);
    CHECK(current.terms().size() == static_cast<std::size_t>(box(M).size()));
    CHECK((sign == 1 || sign == -1));
  }
}

TEST_CASE("hefer_divide examples") {
  FormExpr c = hefer_divide(poly("zeta1^2 - z1^2"));
  CHECK(c == (poly("zeta1 + z1") * dzeta(0)).times_2pii(-1));
  CHECK(hefer_divide(FormExpr()).is_zero());
  CHECK_THROWS_AS(hefer_divide(dzeta(0)), NotClosedError);
  CHECK_THROWS_AS(hefer_divide(poly("zeta1")), NotClosedError);
  FormExpr g = (poly("zeta1 - z1") * dzeta(1) - poly("zeta2 - z2") * dzeta(0)).times_2pii(1);
  CHECK(hefer_divide(g).delta_eta() == g);
}

TEST_CASE("gamma_form examples") {
  CHECK(gamma_form(parse_poly("tau1", NameTable::full())) == dtau(0).times_2pii(-1));
  CHECK(gamma_form(parse_poly("tau1*tau2", NameTable::full())) ==
        (poly("tau2") * dtau(0) + poly("w1") * dtau(1)).times_2pii(-1));
  CHECK(gamma_form(Poly(5)).is_zero());
}

TEST_CASE("generic hefer family by division") {
  Example9 ex = example9_data();
  HeferFamily h = hefer_family(ex.res);
  CHECK(all_ok(check_hefer(ex.res, h)));
  // A complete intersection with a non-monomial generator.
  std::vector<Poly> gens{parse_poly("tau1^2", NameTable::full()),
                         parse_poly("zeta1*tau1 + tau2^2", NameTable::full())};
  Resolution ci = koszul_resolution(gens, 1, 2);
  CHECK(all_ok(check_hefer(ci, koszul_hefer(ci))));
}

TEST_CASE("comparison morphism examples") {
  Resolution r = koszul_resolution(MultiIndex{1, 1}, 1);
  ComparisonData id = comparison_morphism(r, r);
  CHECK(id.a[1] == PolyMatrix::identity(2));
  CHECK(id.a[2] == PolyMatrix::identity(1));
  for (const auto& [lk, C] : id.C) CHECK(C.is_zero());

  Resolution big = koszul_resolution(MultiIndex{3});
  Resolution small = koszul_resolution(MultiIndex{1});
  ComparisonData d = comparison_morphism(big, small);
  CHECK(d.a[1](0, 0) == parse_poly("tau1^2", NameTable::full()));
  CHECK(all_ok(check_comparison(big, small, koszul_hefer(big), koszul_hefer(small), d)));
}

TEST_CASE("lift failure reports the generator") {
  PolyMatrix f(1, 1, {parse_poly("tau1^2", NameTable::full())});
  CHECK_THROWS_AS(lift_through(f, {parse_poly("tau1", NameTable::full())}, 0, 1), LiftError);
}

TEST_CASE("worked example identities") {
  Example9 ex = example9_data();
  auto checks = example9_checks(ex, "all");
  CHECK(all_ok(checks));
  CHECK(checks.size() >= 6);
  CHECK_THROWS(example9_checks(ex, "bogus"));
}
