#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jetdbar/bench.hpp"
#include "jetdbar/koppelman.hpp"
#include "jetdbar/parse.hpp"

using namespace jetdbar;

namespace {

constexpr double pi = std::numbers::pi;

FormExpr poly(const char* s) { return FormExpr(parse_poly(s)); }
FormExpr dzb(int j) { return FormExpr::differential(VarKind::ZetaBar, j); }

struct Setup {
  std::shared_ptr<const Grid> g;
  KoppelmanSolver K;
  explicit Setup(int n, int points)
      : g(std::make_shared<const Grid>(GridSpec{n, 1.0, points, 0.5})), K(g, KernelSpec::for_grid(g->spec())) {}
};

std::vector<cd> values(const Grid& g, const Poly& p) {
  CompiledPoly c(p);
  std::vector<cd> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::array<cd, 2> z{g.zeta(i, 0), g.n() == 2 ? g.zeta(i, 1) : cd(0)};
    out[i] = c(z.data(), g.n());
  }
  return out;
}

double max_diff(const std::vector<cd>& a, const std::vector<cd>& b, const std::vector<std::uint8_t>& mask) {
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (mask[i]) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

// u - P u - K dbar u on the output mask
double function_identity(const Setup& s, const char* text) {
  Poly u = parse_poly(text);
  SpaceShape flat(s.g->n(), 1, MultiIndex{0});
  GridJetForm du = sample(FormExpr(u).dbar({VarKind::ZetaBar}), flat, 1, s.g);
  GridJetForm Ku = solve_reduced(du, s.K);
  auto uv = values(*s.g, u);
  auto inner = s.g->ball_mask(0.5);
  double e = 0;
  for (std::size_t i = 0; i < s.g->size(); ++i)
    if (inner[i]) e = std::max(e, std::abs(uv[i] - s.K.project_at(uv, i) - Ku.data[0][0][i]));
  return e;
}

}  // namespace

TEST_CASE("cutoff profile") {
  KernelSpec k;
  CHECK(cutoff(k, 0.0) == 1.0);
  CHECK(cutoff(k, 0.49) == 1.0);
  CHECK(cutoff(k, 0.95 * 0.95) == 0.0);
  CHECK(cutoff_derivative(k, 0.3) == 0.0);
  double t = 0.7;
  double fd = (cutoff(k, t + 1e-6) - cutoff(k, t - 1e-6)) / 2e-6;
  CHECK(cutoff_derivative(k, t) == doctest::Approx(fd).epsilon(1e-5));
  CHECK_THROWS_AS((KernelSpec{1, 0.8, 0.7, 0.95}.validate()), std::invalid_argument);
}

TEST_CASE("weight values") {
  KernelSpec k;
  std::vector<cd> z{cd(0.1, 0.2)};
  auto w = weight_g(k, {cd(0.3, 0.0)}, z);
  CHECK(w.g00 == 1.0);
  CHECK(w.top == cd(0));
  CHECK_THROWS_AS(weight_g(k, {cd(0.3, 0.0)}, {cd(0.6, 0.0)}), std::domain_error);
}

TEST_CASE("Bochner-Martinelli coefficients") {
  std::vector<cd> a{cd(0.2, 0.1), cd(-0.3, 0.4)}, b{cd(0.0, 0.1), cd(0.1, -0.2)};
  CHECK(bm_kernel(2, a, a).singular);
  auto B = bm_kernel(2, a, b);
  REQUIRE_FALSE(B.singular);
  cd v0 = a[0] - b[0], v1 = a[1] - b[1];
  double r2 = std::norm(v0) + std::norm(v1);
  // sum_j v_j K_j = -|v|^2 / (pi^2 |v|^4)
  CHECK(std::abs(v0 * B.coeff[0] + v1 * B.coeff[1] + 1.0 / (pi * pi * r2)) < 1e-12);
  double mod = std::sqrt(std::norm(B.coeff[0]) + std::norm(B.coeff[1]));
  CHECK(mod * std::pow(r2, 1.5) == doctest::Approx(1 / (pi * pi)));
  auto C = bm_kernel(1, {cd(0.5, 0.5)}, {cd(0.25, 0.0)});
  CHECK(std::abs(C.coeff[0] + 1.0 / (pi * cd(0.25, 0.5))) < 1e-12);
}

TEST_CASE("singular cube integrals") {
  CHECK(cube_singular_integral(2, 0) == doctest::Approx(1.0));
  // int over the centred unit square of 1/|u| = 4 ln(1 + sqrt 2)
  CHECK(cube_singular_integral(2, 1) == doctest::Approx(4 * std::log(1 + std::sqrt(2.0))).epsilon(1e-8));
}

TEST_CASE("K of dzetabar is zetabar") {
  Setup s(1, 64);
  SpaceShape flat(1, 1, MultiIndex{0});
  auto u = solve_reduced(sample(dzb(0), flat, 1, s.g), s.K);
  std::vector<cd> expect(s.g->size());
  for (std::size_t i = 0; i < s.g->size(); ++i) expect[i] = std::conj(s.g->zeta(i, 0));
  CHECK(max_diff(u.data[0][0], expect, s.g->ball_mask(0.5)) < 1e-6);
}

TEST_CASE("holomorphic projection reproduces holomorphic functions") {
  std::vector<cd> p{cd(0.2, -0.1)};
  double prev = 1;
  for (int P : {64, 128}) {
    Setup s(1, P);
    auto one = values(*s.g, Poly(1));
    auto z3 = values(*s.g, parse_poly("z1^3 - i*z1"));
    double err = std::abs(s.K.project(one, p) - 1.0) + std::abs(s.K.project(z3, p) - (std::pow(p[0], 3) - cd(0, 1) * p[0]));
    CHECK(err < prev / 3);
    prev = err;
  }
  CHECK(prev < 5e-5);
}

TEST_CASE("Koppelman identity for functions") {
  CHECK(function_identity(Setup(1, 128), "zb1^2*z1 + zb1 + 3*z1") < 1e-5);
  Setup s(2, 12);
  CHECK(function_identity(s, "zb1*z2 + zb2^2*z1 + zb1") < 1e-2);
}

TEST_CASE("Koppelman residual converges for forms") {
  SpaceShape s(1, 1, MultiIndex{1});
  FormExpr phi = poly("z1^2*zb1 + t1*zb1^2 + i*z1*t1") * dzb(0);
  double r32 = koppelman_residual(phi, s, Setup(1, 32).K);
  double r64 = koppelman_residual(phi, s, Setup(1, 64).K);
  CHECK(r64 < 1e-2);
  CHECK(r32 / r64 > 3.0);
}

TEST_CASE("convolution paths agree") {
  Setup s(2, 12);
  SpaceShape flat(2, 1, MultiIndex{0});
  FormExpr phi = poly("z1*zb2") * dzb(0) + poly("zb1^2") * dzb(1);
  auto f = sample(phi, flat, 1, s.g);
  auto u = solve_reduced(f, s.K);
  std::size_t idx = s.g->index({6, 5, 7, 6});
  CHECK(std::abs(s.K.apply_at(f.data[0], 1, idx)[0] - u.data[0][0][idx]) < 1e-12);
}

TEST_CASE("K is linear and rejects functions") {
  Setup s(1, 32);
  SpaceShape flat(1, 1, MultiIndex{0});
  auto a = sample(poly("z1*zb1") * dzb(0), flat, 1, s.g);
  auto b = sample(poly("zb1^2 - 2*z1") * dzb(0), flat, 1, s.g);
  auto ab = sample(poly("2*z1*zb1 + i*zb1^2 - 2*i*z1") * dzb(0), flat, 1, s.g);
  auto Ka = solve_reduced(a, s.K), Kb = solve_reduced(b, s.K), Kab = solve_reduced(ab, s.K);
  std::vector<cd> comb(s.g->size());
  for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = 2.0 * Ka.data[0][0][i] + cd(0, 1) * Kb.data[0][0][i];
  CHECK(max_diff(Kab.data[0][0], comb, Kab.valid) < 1e-12);
  auto zero = solve_reduced(sample(FormExpr(), flat, 1, s.g), s.K);
  CHECK(max_diff(zero.data[0][0], std::vector<cd>(s.g->size()), zero.valid) == 0.0);
  CHECK(koppelman_residual(FormExpr(), flat, s.K) == 0.0);
  auto fn = sample(poly("z1"), flat, 0, s.g);
  CHECK_THROWS_AS(solve_reduced(fn, s.K), std::invalid_argument);
  SpaceShape jet(1, 1, MultiIndex{1});
  CHECK_THROWS_AS(solve_reduced(sample(dzb(0), jet, 1, s.g), s.K), ShapeError);
}

TEST_CASE("jet shifts commute with K-hat") {
  Setup s(1, 32);
  SpaceShape sh(1, 1, MultiIndex{2});
  FormExpr psi = poly("z1*zb1 + t1*zb1^2 + t1^2") * dzb(0);
  auto base = solve_hat(sample(psi, sh, 1, s.g), s.K);
  JetPoly t = JetPoly::monomial(sh, MultiIndex{1});
  auto via = solve_embedded(psi, sh, {t}, s.K);
  REQUIRE(via.size() == 1);
  auto shifted = shift_jets(base, MultiIndex{1});
  CHECK(via[0].max_abs_diff(shifted) < 1e-12);
  // the top coefficient falls off the box
  CHECK(shifted.at(MultiIndex{0})[0][s.g->index({16, 16, 0, 0})] == cd(0));
  CHECK_THROWS_AS(solve_embedded(psi, sh, {}, s.K), std::invalid_argument);
}

TEST_CASE("exact sample shift") {
  auto g = std::make_shared<const Grid>(GridSpec{1, 1.0, 16, 0.5});
  SpaceShape sh(1, 1, MultiIndex{2});
  FormExpr psi = poly("z1 + t1*zb1") * dzb(0);
  auto a = shift_jets(sample(psi, sh, 1, g), MultiIndex{1});
  auto b = sample(poly("t1*z1 + t1^2*zb1") * dzb(0), sh, 1, g);
  CHECK(a.max_abs_diff(b) == 0.0);
}

TEST_CASE("worked example kernels") {
  Setup s(2, 12);
  std::vector<std::size_t> pts{s.g->index({7, 6, 5, 6}), s.g->index({6, 7, 6, 4})};
  // L phi = 0 kills the third kernel exactly
  auto smp = example9_kernels(poly("z2*t1 - z1*t2") * dzb(0) + poly("zb1") * dzb(1), s.K, pts);
  REQUIRE(smp.size() == 2);
  for (const auto& r : smp) {
    CHECK(r.k3_value == cd(0));
    CHECK(std::isfinite(r.k2_norm));
    CHECK(r.k2_norm <= r.k2_majorant);
  }
  auto t = example9_kernels(poly("t1") * dzb(0), s.K, pts);
  for (const auto& r : t) {
    CHECK(r.k3_norm > 0);
    CHECK(r.k3_norm <= r.k3_majorant);
  }
  CHECK_THROWS_AS(example9_kernels(dzb(0), s.K, {s.g->index({0, 6, 6, 6})}), std::domain_error);
}

TEST_CASE("bench ratios are reproducible") {
  BenchConfig c;
  c.shape = SpaceShape::with_caps(1, MultiIndex{1});
  c.points = 32;
  c.ps = {1, 2, kInf};
  c.trials = 3;
  auto a = bench_lp(c), b = bench_lp(c);
  REQUIRE(a.rows.size() == 9);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].ratio == b.rows[i].ratio);
  for (auto& [p, m] : a.max_ratio) CHECK((m > 0 && m < 10));
  c.trials = 0;
  CHECK_THROWS_AS(bench_lp(c), std::invalid_argument);
  c.trials = 1;
  c.ps.clear();
  CHECK_THROWS_AS(bench_lp(c), std::invalid_argument);
}
