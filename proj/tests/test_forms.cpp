#include <doctest.h>

#include <random>

#include "jetdbar/form.hpp"
#include "jetdbar/parse.hpp"

using namespace jetdbar;

namespace {

FormExpr dz(int j) { return FormExpr::differential(VarKind::Zeta, j); }
FormExpr dt(int j) { return FormExpr::differential(VarKind::Tau, j); }
FormExpr poly(const char* s) { return FormExpr(parse_poly(s, NameTable::full())); }

FormExpr random_form(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-4, 4), pick(0, 5), deg(0, 2);
  const VarKind kinds[] = {VarKind::Zeta, VarKind::Tau, VarKind::Z, VarKind::W};
  FormExpr f;
  for (int t = 0; t < 3; ++t) {
    Monomial m;
    for (int a = 0; a < 2; ++a) m.set_exponent({kinds[pick(rng) % 4], a}, deg(rng));
    FormExpr term(Poly::term(GaussRational(coef(rng), coef(rng)), m));
    int k = pick(rng) % 3;
    for (int g = 0; g < k; ++g) {
      term = term * (pick(rng) % 2 ? dz(pick(rng) % 2) : dt(pick(rng) % 2));
    }
    f += term;
  }
  return f;
}

}  // namespace

TEST_CASE("wedge sign and nilpotency") {
  CHECK(dz(0) * dz(1) == -(dz(1) * dz(0)));
  CHECK((dz(0) * dz(0)).is_zero());
  CHECK(wedge_sign(0b10, 0b01) == -1);
  CHECK(wedge_sign(0b01, 0b10) == 1);
  CHECK(wedge_sign(0b11, 0b01) == 0);
}

TEST_CASE("delta_eta examples") {
  // (1/2 pi i) dzeta1 -> zeta1 - z1
  CHECK(dz(0).times_2pii(-1).delta_eta() == poly("zeta1 - z1"));
  // dzeta1 ^ dzeta2 -> 2 pi i [(zeta1 - z1) dzeta2 - (zeta2 - z2) dzeta1]
  FormExpr expect = (poly("zeta1 - z1") * dz(1) - poly("zeta2 - z2") * dz(0)).times_2pii(1);
  CHECK((dz(0) * dz(1)).delta_eta() == expect);
  // conjugate differentials are ignored
  CHECK(FormExpr::differential(VarKind::ZetaBar, 0).delta_eta().is_zero());
}

TEST_CASE("delta_eta squares to zero and is an odd derivation") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    FormExpr a = random_form(rng), b = random_form(rng);
    CHECK(a.delta_eta().delta_eta().is_zero());
    // Leibniz on homogeneous pieces.
    for (int da = 0; da <= 2; ++da) {
      FormExpr ah;
      for (const auto& [k, c] : a.terms()) {
        if (std::popcount(k.word) == da) ah += FormExpr::monomial(c, word_bits(k.word), k.pow);
      }
      FormExpr lhs = (ah * b).delta_eta();
      FormExpr rhs = ah.delta_eta() * b + (da % 2 ? -(ah * b.delta_eta()) : ah * b.delta_eta());
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("dbar places the new differential on the left") {
  FormExpr f = FormExpr(parse_poly("zb1*zb2", NameTable::jet())) * dz(0);
  FormExpr expect = FormExpr(parse_poly("zb2")) * FormExpr::differential(VarKind::ZetaBar, 0) * dz(0) +
                    FormExpr(parse_poly("zb1")) * FormExpr::differential(VarKind::ZetaBar, 1) * dz(0);
  CHECK(f.dbar() == expect);
  CHECK(f.dbar().dbar().is_zero());
  CHECK(FormExpr(parse_poly("z1*t1")).dbar().is_zero());
}

TEST_CASE("rename and to_output keep signs consistent") {
  FormExpr f = dt(0) * dz(1);
  FormExpr g = f.to_output();
  CHECK(g == FormExpr::differential(VarKind::W, 0) * FormExpr::differential(VarKind::Z, 1));
}

TEST_CASE("json round trip") {
  FormExpr f = (poly("zeta1^2 - 3*w2") * dz(0) * dt(1)).times_2pii(-1) + poly("i*zetab1");
  auto j = f.to_json(NameTable::full());
  CHECK(FormExpr::from_json(j, NameTable::full()) == f);
  CHECK_THROWS_AS(FormExpr::from_json(nlohmann::json::parse(R"([{"coeff":"1","wedge":["dq1"]}])")), ParseError);
}

TEST_CASE("numeric evaluation substitutes 2 pi i") {
  FormExpr f = poly("zeta1").times_2pii(1);
  auto v = f.evaluate([](Var) { return std::complex<double>(0.5, 0.0); });
  CHECK(std::abs(v[0] - std::complex<double>(0, M_PI)) < 1e-12);
}
