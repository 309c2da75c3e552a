#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "jetdbar/grid.hpp"
#include "jetdbar/parse.hpp"

using namespace jetdbar;

namespace {

FormExpr poly(const char* s) { return FormExpr(parse_poly(s)); }
FormExpr dzb(int j) { return FormExpr::differential(VarKind::ZetaBar, j); }

std::shared_ptr<const Grid> grid(int n, int points) {
  return std::make_shared<const Grid>(GridSpec{n, 1.0, points, 0.5});
}

}  // namespace

TEST_CASE("grid layout") {
  auto g = grid(2, 8);
  CHECK(g->size() == 4096);
  CHECK(g->stride(3) == 1);
  CHECK(g->stride(0) == 512);
  std::array<int, 4> c{1, 2, 3, 4};
  CHECK(g->lattice(g->index(c)) == c);
  CHECK(g->coord(0) == doctest::Approx(-1 + 0.125));
  CHECK_THROWS_AS(Grid(GridSpec{3, 1.0, 16, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Grid(GridSpec{1, 1.0, 16, 1.5}), std::invalid_argument);
}

TEST_CASE("lp norm of the constant on the disc") {
  auto g = grid(1, 128);
  std::vector<double> one(g->size(), 1.0);
  CHECK(lp_norm(one, *g, 2, Domain::Outer) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(0.01));
  CHECK(lp_norm(one, *g, 1, Domain::Inner) == doctest::Approx(std::numbers::pi / 4).epsilon(0.01));
  CHECK(lp_norm(one, *g, kInf, Domain::Inner) == 1.0);
}

TEST_CASE("lp norm errors") {
  auto g = grid(1, 16);
  std::vector<double> v(g->size(), 1.0);
  CHECK_THROWS_AS(lp_norm(v, *g, 0.5, Domain::Outer), std::domain_error);
  v[g->index({8, 8, 0, 0})] = std::nan("");
  CHECK_THROWS_AS(lp_norm(v, *g, 2, Domain::Inner), std::domain_error);
}

TEST_CASE("lp norm converges under refinement") {
  // int_{|z|<1/2} |z|^2 = pi/32
  double prev = 1;
  for (int P : {32, 64, 128}) {
    auto g = grid(1, P);
    std::vector<double> r(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) r[i] = std::sqrt(g->norm2(i));
    double err = std::abs(lp_norm(r, *g, 2, Domain::Inner) - std::sqrt(std::numbers::pi / 32));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 5e-3);
}

TEST_CASE("Holder and Minkowski on random data") {
  auto g = grid(1, 32);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> f(g->size()), h(g->size()), fh(g->size()), s(g->size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = u(rng);
      h[i] = u(rng);
      fh[i] = f[i] * h[i];
      s[i] = f[i] + h[i];
    }
    for (double p : {1.0, 2.0, 3.5, kInf}) {
      double q = p == 1 ? kInf : (p == kInf ? 1.0 : p / (p - 1));
      CHECK(lp_norm(fh, *g, 1, Domain::Outer) <= lp_norm(f, *g, p, Domain::Outer) * lp_norm(h, *g, q, Domain::Outer) + 1e-12);
      CHECK(lp_norm(s, *g, p, Domain::Outer) <= lp_norm(f, *g, p, Domain::Outer) + lp_norm(h, *g, p, Domain::Outer) + 1e-12);
    }
  }
}

TEST_CASE("pointwise norm of simple jets") {
  SpaceShape s1(1, 1, MultiIndex{1});
  std::vector<cd> z{cd(0.3, -0.4)};
  CHECK(pointwise_norm_hat(poly("z1*t1") * dzb(0), s1, z) == doctest::Approx(0.5));
  // tau^2 carries the factor 2! and the zeta-derivative of order 0
  SpaceShape s2(1, 1, MultiIndex{2});
  CHECK(pointwise_norm_hat(poly("t1^2") * dzb(0), s2, z) == doctest::Approx(2.0));
  // m = 0 sees derivatives up to order 2
  CHECK(pointwise_norm_hat(poly("z1^2") * dzb(0), s2, z) == doctest::Approx(0.25 + 2 * 0.5 + 2));
  // beyond the box
  CHECK(pointwise_norm_hat(poly("t1^3") * dzb(0), s2, z) == 0.0);
}

TEST_CASE("norm through gamma") {
  SpaceShape s(1, 1, MultiIndex{1});
  std::vector<cd> z{cd(0.2, 0.1)};
  FormExpr psi = poly("z1 + zb1*t1") * dzb(0);
  JetPoly one = JetPoly::monomial(s, MultiIndex{0});
  CHECK(pointwise_norm_via_gamma(psi, {one}, s, z) == doctest::Approx(pointwise_norm_hat(psi, s, z)));
  // tau psi drops the top coefficient and shifts the rest
  JetPoly t = JetPoly::monomial(s, MultiIndex{1});
  double expected = pointwise_norm_hat(poly("z1*t1") * dzb(0), s, z);
  CHECK(pointwise_norm_via_gamma(psi, {t}, s, z) == doctest::Approx(expected));
  CHECK_THROWS_AS(pointwise_norm_via_gamma(psi, {}, s, z), std::invalid_argument);
}

TEST_CASE("worked example norm") {
  std::vector<cd> z{cd(0.3, 0.1), cd(-0.2, 0.25)};
  CHECK(pointwise_norm_example9(poly("t1") * dzb(0), z) == doctest::Approx(std::abs(z[0])));
  CHECK(pointwise_norm_example9(poly("z2*t1 - z1*t2") * dzb(0), z) == doctest::Approx(0.0));
  double zn = std::sqrt(std::norm(z[0]) + std::norm(z[1]));
  CHECK(pointwise_norm_example9(poly("z1") * dzb(1), z) == doctest::Approx(std::abs(z[0]) + zn));
}

TEST_CASE("grid norm agrees with the symbolic norm") {
  SpaceShape s(1, 1, MultiIndex{2});
  FormExpr psi = poly("z1^2*zb1^2 + z1^3*zb1*t1 + z1*zb1*t1^2") * dzb(0);
  double prev = 1;
  for (int P : {32, 64}) {
    auto g = grid(1, P);
    GridJetForm f = sample(psi, s, 1, g);
    auto inner = g->ball_mask(0.5);
    auto fd = pointwise_norm_hat(f, inner);
    auto ex = pointwise_norm_hat(psi, s, *g, inner);
    double err = 0;
    for (std::size_t i = 0; i < g->size(); ++i)
      if (inner[i]) err = std::max(err, std::abs(fd[i] - ex[i]));
    CHECK(err < prev / 3);
    prev = err;
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("grid norm refuses stencils leaving the valid set") {
  SpaceShape s(1, 1, MultiIndex{1});
  auto g = grid(1, 16);
  GridJetForm f = sample(poly("z1") * dzb(0), s, 1, g);
  f.valid = g->ball_mask(0.5);
  CHECK_THROWS_AS(pointwise_norm_hat(f, g->ball_mask(0.5)), std::domain_error);
  CHECK_NOTHROW(pointwise_norm_hat(f, g->ball_mask(0.3)));
}
