#include "jetdbar/koppelman.hpp"

#include <fftw3.h>

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <optional>

#include "jetdbar/currents.hpp"
#include "jetdbar/parallel.hpp"

namespace jetdbar {

namespace {

constexpr double kPi = std::numbers::pi;
const cd kI(0, 1);

// Orientation of the (0,2) -> (0,1) kernel on C^2, fixed by
// phi = dbar K phi + K dbar phi for non-closed (0,1)-forms.
constexpr double kTopSign = 1.0;

std::vector<std::size_t> mask_points(const std::vector<std::uint8_t>& m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) out.push_back(i);
  return out;
}

std::array<cd, 4> point(const Grid& g, std::size_t idx) {
  std::array<cd, 4> z{};
  for (int j = 0; j < g.n(); ++j) z[j] = g.zeta(idx, j);
  return z;
}

double euclid(const std::array<cd, 4>& z, int n) {
  double s = 0;
  for (int j = 0; j < n; ++j) s += std::norm(z[j]);
  return std::sqrt(s);
}

bool interior(const Grid& g, std::size_t idx, int reach) {
  auto c = g.lattice(idx);
  for (int a = 0; a < g.axes(); ++a)
    if (c[a] - reach < 0 || c[a] + reach >= g.points()) return false;
  return true;
}

}  // namespace

void KernelSpec::validate() const {
  if (n < 1 || n > 2) throw std::invalid_argument("kernel: only n = 1 and n = 2 are supported");
  if (!(inner > 0 && inner < cut_start && cut_start < cut_end)) {
    throw std::invalid_argument("kernel: need 0 < inner < cut_start < cut_end");
  }
}

KernelSpec KernelSpec::for_grid(const GridSpec& g) {
  KernelSpec s;
  s.n = g.n;
  s.inner = g.inner_radius;
  s.cut_start = 0.7 * g.radius;
  s.cut_end = 0.95 * g.radius;
  s.validate();
  return s;
}

double cutoff(const KernelSpec& s, double t) {
  double a = s.cut_start * s.cut_start, b = s.cut_end * s.cut_end;
  double x = std::clamp((t - a) / (b - a), 0.0, 1.0);
  return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

double cutoff_derivative(const KernelSpec& s, double t) {
  double a = s.cut_start * s.cut_start, b = s.cut_end * s.cut_end;
  double x = (t - a) / (b - a);
  if (x <= 0 || x >= 1) return 0.0;
  return -30.0 * x * x * (1 - x) * (1 - x) / (b - a);
}

namespace {

/// Top-degree weight density; z must lie where chi is 1.
cd weight_density(const KernelSpec& s, const cd* zeta, const cd* z) {
  double t = 0;
  cd pair = 0;
  for (int j = 0; j < s.n; ++j) {
    t += std::norm(zeta[j]);
    pair += std::conj(zeta[j]) * z[j];
  }
  double dchi = cutoff_derivative(s, t);
  if (dchi == 0.0) return 0.0;
  cd den = t - pair;
  return s.n == 1 ? -dchi * t / (kPi * den) : -dchi * t / (kPi * kPi * den * den);
}

}  // namespace

WeightValue weight_g(const KernelSpec& s, const std::vector<cd>& zeta, const std::vector<cd>& z) {
  s.validate();
  if (static_cast<int>(zeta.size()) != s.n || static_cast<int>(z.size()) != s.n) throw ShapeError("weight: point dimension differs from n");
  double zn = 0, t = 0;
  for (int j = 0; j < s.n; ++j) {
    zn += std::norm(z[j]);
    t += std::norm(zeta[j]);
  }
  if (std::sqrt(zn) > s.inner) throw std::domain_error("weight: z lies outside the inner domain");
  return {cutoff(s, t), weight_density(s, zeta.data(), z.data())};
}

BMKernel bm_kernel(int n, const std::vector<cd>& zeta, const std::vector<cd>& z) {
  if (n < 1 || n > 2) throw std::invalid_argument("bm_kernel: only n = 1 and n = 2 are supported");
  if (static_cast<int>(zeta.size()) != n || static_cast<int>(z.size()) != n) throw ShapeError("bm_kernel: point dimension differs from n");
  BMKernel k;
  k.coeff.assign(n, 0.0);
  double r2 = 0;
  for (int j = 0; j < n; ++j) r2 += std::norm(zeta[j] - z[j]);
  if (r2 == 0) {
    k.singular = true;
    return k;
  }
  double c = n == 1 ? -1.0 / kPi : -1.0 / (kPi * kPi);
  for (int j = 0; j < n; ++j) k.coeff[j] = c * std::conj(zeta[j] - z[j]) / std::pow(r2, n);
  return k;
}

double cube_singular_integral(int d, double s) {
  if (d < 1 || !(s >= 0 && s < d)) throw std::invalid_argument("cube_singular_integral: need 0 <= s < d");
  using Q = boost::math::quadrature::gauss<double, 20>;
  // Pyramids over the 2d faces: each contributes (1/2) / (d - s) * int_face |p|^-s.
  auto face = [&](auto&& self, int left, double acc) -> double {
    if (left == 0) return std::pow(0.25 + acc, -s / 2);
    return Q::integrate([&](double y) { return self(self, left - 1, acc + y * y); }, -0.5, 0.5);
  };
  return 2.0 * d * 0.5 / (d - s) * face(face, d - 1, 0.0);
}

KoppelmanSolver::KoppelmanSolver(std::shared_ptr<const Grid> grid, KernelSpec spec)
    : grid_(std::move(grid)), spec_(spec) {
  if (!grid_) throw std::invalid_argument("solver without a grid");
  spec_.validate();
  if (spec_.n != grid_->n()) throw ShapeError("kernel and grid dimensions differ");
  if (spec_.cut_end > grid_->spec().radius) throw std::invalid_argument("cutoff support exceeds the grid");
  chi_.resize(grid_->size());
  for (std::size_t i = 0; i < grid_->size(); ++i) chi_[i] = cutoff(spec_, grid_->norm2(i));
  int n = spec_.n;
  self_integral_ = std::pow(grid_->h(), 2) * cube_singular_integral(2 * n, 2 * n - 2);
}

std::vector<std::uint8_t> KoppelmanSolver::output_mask(int order) const {
  int m = fd_margin(order);
  double r = spec_.inner + std::sqrt(static_cast<double>(m) * order) * grid_->h() + 1e-12;
  if (r >= spec_.cut_start) {
    throw std::domain_error("grid too coarse: derivative stencils reach the cutoff region");
  }
  return grid_->ball_mask(r);
}

std::vector<KoppelmanSolver::Term> KoppelmanSolver::terms(int degree) const {
  if (degree < 1) throw std::invalid_argument("Koppelman operator needs a form of degree at least 1");
  if (spec_.n == 1 && degree == 1) return {{0, 0, 0, -1.0 / kPi}};
  double c = 1.0 / (kPi * kPi);
  if (spec_.n == 2 && degree == 1) return {{0, 0, 0, -c}, {0, 1, 1, -c}};
  if (spec_.n == 2 && degree == 2) return {{0, 0, 1, kTopSign * c}, {1, 0, 0, -kTopSign * c}};
  throw std::invalid_argument("form degree exceeds n");
}

KoppelmanSolver::Components KoppelmanSolver::cut(const Components& phi) const {
  Components F = phi;
  for (auto& arr : F) {
    if (arr.size() != grid_->size()) throw ShapeError("component array size differs from grid");
    for (std::size_t i = 0; i < arr.size(); ++i) arr[i] *= chi_[i];
  }
  return F;
}

KoppelmanSolver::Components KoppelmanSolver::singular_fft(const Components& F, int degree) const {
  const Grid& g = *grid_;
  const int P = g.points(), L = 2 * P, rank = g.axes();
  std::size_t total = 1;
  for (int a = 0; a < rank; ++a) total *= L;
  std::vector<int> dims(rank, L);
  std::vector<std::size_t> pstride(rank);
  {
    std::size_t s = 1;
    for (int a = rank - 1; a >= 0; --a) {
      pstride[a] = s;
      s *= L;
    }
  }
  auto fft = [&](std::vector<cd>& data, int sign) {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = fftw_plan_dft(rank, dims.data(), p, p, sign, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  };
  auto kernel = [&](int j) -> const std::vector<cd>& {
    if (kernel_hat_.size() <= static_cast<std::size_t>(j)) kernel_hat_.resize(j + 1);
    auto& kh = kernel_hat_[j];
    if (!kh.empty()) return kh;
    kh.assign(total, 0.0);
    const double h = g.h();
    for (std::size_t i = 0; i < total; ++i) {
      std::array<int, 4> o{};
      bool zero = true, skip = false;
      for (int a = 0; a < rank; ++a) {
        int c = static_cast<int>(i / pstride[a] % L);
        o[a] = c < P ? c : c - L;
        if (c == P) skip = true;
        if (o[a] != 0) zero = false;
      }
      if (zero || skip) continue;
      // entry at offset o = s - t holds k(zeta_t - z_s) = k(-o h)
      double r2 = 0;
      for (int a = 0; a < rank; ++a) r2 += std::pow(o[a] * h, 2);
      cd v(-o[2 * j] * h, -o[2 * j + 1] * h);
      kh[i] = std::conj(v) / std::pow(r2, spec_.n);
    }
    fft(kh, FFTW_FORWARD);
    return kh;
  };
  auto pad = [&](const std::vector<cd>& src) {
    std::vector<cd> out(total, 0.0);
    for (std::size_t i = 0; i < src.size(); ++i) {
      auto c = g.lattice(i);
      std::size_t k = 0;
      for (int a = 0; a < rank; ++a) k += static_cast<std::size_t>(c[a]) * pstride[a];
      out[k] = src[i];
    }
    fft(out, FFTW_FORWARD);
    return out;
  };
  auto ts = terms(degree);
  int outs = 0, ins = static_cast<int>(F.size());
  for (const auto& t : ts) outs = std::max(outs, t.out + 1);
  std::vector<std::vector<cd>> Fh(ins);
  for (int c = 0; c < ins; ++c) Fh[c] = pad(F[c]);
  Components res(outs, std::vector<cd>(g.size(), 0.0));
  const double scale = g.cell_volume() / static_cast<double>(total);
  for (int o = 0; o < outs; ++o) {
    std::vector<cd> acc(total, 0.0);
    for (const auto& t : ts) {
      if (t.out != o) continue;
      const auto& kh = kernel(t.kernel);
      const auto& fh = Fh[t.in];
      for (std::size_t i = 0; i < total; ++i) acc[i] += t.coef * kh[i] * fh[i];
    }
    fft(acc, FFTW_BACKWARD);
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto c = g.lattice(i);
      std::size_t k = 0;
      for (int a = 0; a < rank; ++a) k += static_cast<std::size_t>(c[a]) * pstride[a];
      res[o][i] = acc[k] * scale;
    }
  }
  return res;
}

KoppelmanSolver::Components KoppelmanSolver::singular_direct(const Components& F, int degree,
                                                              const std::vector<std::uint8_t>& out) const {
  const Grid& g = *grid_;
  const int n = spec_.n;
  auto ts = terms(degree);
  int outs = 0;
  for (const auto& t : ts) outs = std::max(outs, t.out + 1);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (chi_[i] != 0.0) support.push_back(i);
  std::vector<std::array<cd, 4>> zs(support.size());
  for (std::size_t k = 0; k < support.size(); ++k) zs[k] = point(g, support[k]);
  auto targets = mask_points(out);
  Components res(outs, std::vector<cd>(g.size(), 0.0));
  const double vol = g.cell_volume();
  parallel_for(targets.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t q = b; q < e; ++q) {
      std::size_t s = targets[q];
      auto z = point(g, s);
      std::array<cd, 2> acc{};
      for (std::size_t k = 0; k < support.size(); ++k) {
        std::size_t t = support[k];
        if (t == s) continue;
        std::array<cd, 4> v{};
        double r2 = 0;
        for (int j = 0; j < n; ++j) {
          v[j] = zs[k][j] - z[j];
          r2 += std::norm(v[j]);
        }
        double inv = 1.0 / (n == 1 ? r2 : r2 * r2);
        for (const auto& tm : ts) acc[tm.out] += tm.coef * std::conj(v[tm.kernel]) * inv * F[tm.in][t];
      }
      for (int o = 0; o < outs; ++o) res[o][s] = acc[o] * vol;
    }
  });
  return res;
}

void KoppelmanSolver::add_self_cells(const Components& F, int degree, const std::vector<std::uint8_t>& out,
                                     Components& res) const {
  const Grid& g = *grid_;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (!out[s] || !interior(g, s, 1)) continue;
    for (const auto& t : terms(degree)) {
      std::vector<int> beta(spec_.n, 0);
      beta[t.kernel] = 1;
      res[t.out][s] += t.coef * self_integral_ / spec_.n * fd_holomorphic(F[t.in], g, beta, s);
    }
  }
}

void KoppelmanSolver::add_weight_term(const Components& phi, const std::vector<std::uint8_t>& out,
                                      Components& res) const {
  // chi~' (zb1 vb2 - zb2 vb1)(zeta1 phi2 - zeta2 phi1) / ((|zeta|^2 - zetabar.z) |v|^2) / pi^2
  const Grid& g = *grid_;
  struct Src {
    cd z1, z2, a;
    double t;
  };
  std::vector<Src> src;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double t = g.norm2(i);
    double d = cutoff_derivative(spec_, t);
    if (d == 0.0) continue;
    cd z1 = g.zeta(i, 0), z2 = g.zeta(i, 1);
    cd lam = z1 * phi[1][i] - z2 * phi[0][i];
    if (lam == 0.0) continue;
    src.push_back({z1, z2, d * lam * g.cell_volume() / (kPi * kPi), t});
  }
  auto targets = mask_points(out);
  parallel_for(targets.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t q = b; q < e; ++q) {
      std::size_t s = targets[q];
      cd w1 = g.zeta(s, 0), w2 = g.zeta(s, 1);
      cd acc = 0;
      for (const auto& p : src) {
        cd v1 = p.z1 - w1, v2 = p.z2 - w2;
        cd num = std::conj(p.z1) * std::conj(v2) - std::conj(p.z2) * std::conj(v1);
        cd den = (p.t - std::conj(p.z1) * w1 - std::conj(p.z2) * w2) * (std::norm(v1) + std::norm(v2));
        acc += p.a * num / den;
      }
      res[0][s] += acc;
    }
  });
}

KoppelmanSolver::Components KoppelmanSolver::apply(const Components& phi, int degree,
                                                   const std::vector<std::uint8_t>& out) const {
  const Grid& g = *grid_;
  if (out.size() != g.size()) throw ShapeError("output mask size differs from grid");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (out[i] && g.norm2(i) >= spec_.cut_start * spec_.cut_start) {
      throw std::domain_error("Koppelman outputs must lie where the cutoff equals 1");
    }
  }
  auto ts = terms(degree);
  if (phi.size() != koszul_basis(spec_.n, degree).size()) throw ShapeError("wrong number of form components");
  Components F = cut(phi);
  std::size_t padded = 1;
  for (int a = 0; a < g.axes(); ++a) padded *= 2 * g.points();
  Components res = padded <= kFftLimit ? singular_fft(F, degree) : singular_direct(F, degree, out);
  for (auto& arr : res)
    for (std::size_t i = 0; i < arr.size(); ++i)
      if (!out[i]) arr[i] = 0.0;
  add_self_cells(F, degree, out, res);
  if (spec_.n == 2 && degree == 1) add_weight_term(phi, out, res);
  return res;
}

std::vector<cd> KoppelmanSolver::apply_at(const Components& phi, int degree, std::size_t idx) const {
  std::vector<std::uint8_t> out(grid_->size(), 0);
  out.at(idx) = 1;
  if (grid_->norm2(idx) >= spec_.cut_start * spec_.cut_start) {
    throw std::domain_error("Koppelman outputs must lie where the cutoff equals 1");
  }
  Components F = cut(phi);
  Components res = singular_direct(F, degree, out);
  add_self_cells(F, degree, out, res);
  if (spec_.n == 2 && degree == 1) add_weight_term(phi, out, res);
  std::vector<cd> r;
  for (auto& arr : res) r.push_back(arr[idx]);
  return r;
}

cd KoppelmanSolver::project(const std::vector<cd>& u, const std::vector<cd>& z) const {
  const Grid& g = *grid_;
  if (static_cast<int>(z.size()) != spec_.n) throw ShapeError("point dimension differs from n");
  double zn = 0;
  for (auto c : z) zn += std::norm(c);
  if (std::sqrt(zn) > spec_.inner) throw std::domain_error("projection point outside the inner domain");
  std::vector<cd> terms;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (u[i] == 0.0) continue;
    auto zeta = point(g, i);
    cd d = weight_density(spec_, zeta.data(), z.data());
    if (d != 0.0) terms.push_back(d * u[i]);
  }
  std::vector<double> re(terms.size()), im(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    re[k] = terms[k].real();
    im[k] = terms[k].imag();
  }
  return cd(pairwise_sum(re.data(), re.size()), pairwise_sum(im.data(), im.size())) * g.cell_volume();
}

cd KoppelmanSolver::project_at(const std::vector<cd>& u, std::size_t idx) const {
  std::vector<cd> z;
  for (int j = 0; j < spec_.n; ++j) z.push_back(grid_->zeta(idx, j));
  return project(u, z);
}

GridJetForm solve_hat(const GridJetForm& phi, const KoppelmanSolver& K, int derivative_order) {
  if (phi.grid != K.grid_ptr()) throw ShapeError("form and solver use different grids");
  if (phi.q < 1) throw std::invalid_argument("Koppelman operator needs a form of degree at least 1");
  int order = derivative_order < 0 ? phi.shape.M.degree() : derivative_order;
  auto out = K.output_mask(std::max(order, 1));
  GridJetForm res(phi.shape, phi.q - 1, phi.grid);
  for (std::size_t m = 0; m < phi.jets.size(); ++m) res.data[m] = K.apply(phi.data[m], phi.q, out);
  res.valid = out;
  return res;
}

GridJetForm solve_reduced(const GridJetForm& phi, const KoppelmanSolver& K) {
  if (phi.shape.M.degree() != 0) throw ShapeError("solve_reduced expects forms without fiber jets");
  return solve_hat(phi, K);
}

GridJetForm shift_jets(const GridJetForm& psi, const MultiIndex& g) {
  if (g.size() != psi.shape.kappa) throw ShapeError("shift length differs from kappa");
  GridJetForm out(psi.shape, psi.q, psi.grid);
  out.valid = psi.valid;
  for (std::size_t m = 0; m < psi.jets.size(); ++m) {
    MultiIndex t = psi.jets[m] + g;
    if (leq(t, psi.shape.M)) out.at(t) = psi.data[m];
  }
  return out;
}

std::vector<GridJetForm> solve_embedded(const FormExpr& psi, const SpaceShape& shape, const std::vector<JetPoly>& gammas,
                                        const KoppelmanSolver& K) {
  if (gammas.empty()) throw std::invalid_argument("solve_embedded: empty gamma set");
  int q = psi.form_degree();
  if (q < 1) throw std::invalid_argument("solve_embedded: input must be a (0,q)-form with q >= 1");
  std::vector<GridJetForm> out;
  for (const auto& g : gammas) out.push_back(solve_hat(sample(times_jet(psi, g, shape), shape, q, K.grid_ptr()), K));
  return out;
}

double koppelman_residual(const FormExpr& phi, const SpaceShape& shape, const KoppelmanSolver& K) {
  const Grid& g = K.grid();
  if (phi.is_zero()) return 0.0;
  if (phi.form_degree() != 1) throw std::invalid_argument("koppelman_residual expects a (0,1)-form");
  auto gp = K.grid_ptr();
  GridJetForm f = sample(phi, shape, 1, gp);
  GridJetForm u = solve_hat(f, K, 1);
  std::optional<GridJetForm> v;
  if (shape.n == 2) {
    FormExpr d = phi.dbar({VarKind::ZetaBar});
    GridJetForm df = sample(d, shape, 2, gp);
    v = solve_hat(df, K, 1);
  }
  auto inner = g.ball_mask(K.spec().inner);
  double worst = 0;
  const double h2 = 2 * g.h();
  for (std::size_t m = 0; m < f.jets.size(); ++m) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!inner[i]) continue;
      for (int j = 0; j < shape.n; ++j) {
        const auto& U = u.data[m][0];
        auto at = [&](int axis, int s) { return U[i + s * static_cast<std::ptrdiff_t>(g.stride(axis))]; };
        cd dzb = 0.5 * ((at(2 * j, 1) - at(2 * j, -1)) / h2 + kI * (at(2 * j + 1, 1) - at(2 * j + 1, -1)) / h2);
        cd r = f.data[m][j][i] - dzb;
        if (v) r -= v->data[m][j][i];
        worst = std::max(worst, std::abs(r));
      }
    }
  }
  return worst;
}

std::vector<Monomial> base_monomials(int n, int degree) {
  std::vector<Var> vars;
  for (int j = 0; j < n; ++j) vars.push_back({VarKind::Zeta, j});
  for (int j = 0; j < n; ++j) vars.push_back({VarKind::ZetaBar, j});
  std::vector<Monomial> out;
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k == vars.size()) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur.set_exponent(vars[k], e);
      self(self, k + 1, left - e);
    }
    cur.set_exponent(vars[k], 0);
  };
  rec(rec, 0, degree);
  return out;
}

namespace {

Poly random_poly(int n, std::mt19937_64& rng, int degree, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  Poly p;
  for (const auto& m : base_monomials(n, degree)) {
    int re = dist(rng), im = dist(rng);
    p += Poly::term(GaussRational(mpq_class(re), mpq_class(im)), m);
  }
  return p;
}

Poly tau_power(const MultiIndex& m) {
  Poly p(1);
  for (int j = 0; j < m.size(); ++j) p *= Poly::var(VarKind::Tau, j).pow(m[j]);
  return p;
}

}  // namespace

std::vector<std::pair<MultiIndex, Poly>> random_potentials(const SpaceShape& shape, std::mt19937_64& rng, int degree,
                                                           int bound) {
  std::vector<std::pair<MultiIndex, Poly>> out;
  for (const auto& m : box(shape.M)) out.emplace_back(m, random_poly(shape.n, rng, degree, bound));
  return out;
}

FormExpr closed_form_from(const std::vector<std::pair<MultiIndex, Poly>>& potentials) {
  FormExpr out;
  for (const auto& [m, u] : potentials) out += FormExpr(u).dbar({VarKind::ZetaBar}) * FormExpr(tau_power(m));
  return out;
}

FormExpr random_closed_form(const SpaceShape& shape, std::mt19937_64& rng, int degree, int bound) {
  return closed_form_from(random_potentials(shape, rng, degree, bound));
}

FormExpr random_form(const SpaceShape& shape, std::mt19937_64& rng, int degree, int bound) {
  FormExpr out;
  for (const auto& m : box(shape.M)) {
    for (int j = 0; j < shape.n; ++j) {
      out += FormExpr(random_poly(shape.n, rng, degree, bound) * tau_power(m)) *
             FormExpr::differential(VarKind::ZetaBar, j);
    }
  }
  return out;
}

std::vector<Example9KernelSample> example9_kernels(const FormExpr& phi, const KoppelmanSolver& K,
                                                   const std::vector<std::size_t>& points) {
  const Grid& g = K.grid();
  if (g.n() != 2) throw ShapeError("the example kernels live over C^2");
  auto gp = K.grid_ptr();
  SpaceShape flat(2, 1, MultiIndex{0});
  FormExpr base = phi.kill_kind(VarKind::TauBar);
  if (base.form_degree() != 1) throw std::invalid_argument("example kernels expect a (0,1)-form");
  FormExpr phi0 = base.kill_kind(VarKind::Tau);
  FormExpr L;
  for (int j = 0; j < 2; ++j) {
    Var t{VarKind::Tau, j};
    L += base.map_coefficients([t](const RatFunc& c) { return c.derivative(t); })
             .scaled(RatFunc(Poly::var(VarKind::Zeta, j)));
  }
  L = L.kill_kind(VarKind::Tau);
  auto p0 = sample(phi0, flat, 1, gp).data[0];
  auto Ls = sample(L, flat, 1, gp).data[0];
  std::array<KoppelmanSolver::Components, 2> dp0;
  for (int i = 0; i < 2; ++i) {
    Var v{VarKind::Zeta, i};
    dp0[i] = sample(phi0.map_coefficients([v](const RatFunc& c) { return c.derivative(v); }), flat, 1, gp).data[0];
  }
  const std::size_t N = g.size();
  std::vector<double> normX(N, 0.0);
  std::array<KoppelmanSolver::Components, 2> D;
  for (int j = 0; j < 2; ++j) D[j].assign(2, std::vector<cd>(N));
  for (std::size_t t = 0; t < N; ++t) {
    auto zeta = point(g, t);
    double r = euclid(zeta, 2);
    double s = 0;
    for (int c = 0; c < 2; ++c) s += std::abs(p0[c][t]) + std::abs(Ls[c][t]) + r * (std::abs(dp0[0][c][t]) + std::abs(dp0[1][c][t]));
    normX[t] = s;
    for (int j = 0; j < 2; ++j)
      for (int c = 0; c < 2; ++c) D[j][c][t] = std::conj(zeta[j]) * Ls[c][t] / (r * r);
  }
  const double vol = g.cell_volume(), h = g.h();
  const double self3 = h * cube_singular_integral(4, 3);
  const double self1 = h * h * h * cube_singular_integral(4, 1);
  std::vector<Example9KernelSample> out;
  for (std::size_t idx : points) {
    if (!interior(g, idx, 1)) throw std::domain_error("example point too close to the grid boundary");
    auto z = point(g, idx);
    double zn = euclid(z, 2);
    if (zn == 0.0 || zn > K.spec().inner) throw std::domain_error("example points must satisfy 0 < |z| <= inner radius");
    Example9KernelSample smp;
    smp.z = {z[0], z[1]};
    cd k0 = K.apply_at(p0, 1, idx)[0];
    double deriv = 0;
    for (int i = 0; i < 2; ++i) {
      auto nb = [&](int axis, int s) {
        return K.apply_at(p0, 1, idx + s * static_cast<std::ptrdiff_t>(g.stride(axis)))[0];
      };
      cd dx = (nb(2 * i, 1) - nb(2 * i, -1)) / (2 * h);
      cd dy = (nb(2 * i + 1, 1) - nb(2 * i + 1, -1)) / (2 * h);
      deriv += std::abs(0.5 * (dx - kI * dy));
    }
    cd lk2 = 0;
    for (int j = 0; j < 2; ++j) lk2 += z[j] * K.apply_at(D[j], 1, idx)[0];
    smp.k2_norm = std::abs(k0) + zn * deriv + std::abs(lk2);

    cd k3 = 0;
    double m2 = 0, m3 = 0;
    for (std::size_t t = 0; t < N; ++t) {
      double chi = cutoff(K.spec(), g.norm2(t));
      if (chi == 0.0 || t == idx) continue;
      auto zeta = point(g, t);
      cd v1 = zeta[0] - z[0], v2 = zeta[1] - z[1];
      double v = std::sqrt(std::norm(v1) + std::norm(v2));
      double r = euclid(zeta, 2);
      cd zl = std::conj(zeta[0]) * Ls[0][t] + std::conj(zeta[1]) * Ls[1][t];
      cd zv = z[0] * std::conj(v1) + z[1] * std::conj(v2);
      k3 += chi * zv * zl / (v * v * std::pow(r, 4));
      m2 += std::pow(v, -3) * (1 + zn / r) * normX[t];
      m3 += normX[t] / (v * r * r * r);
    }
    smp.k3_value = k3 * vol / (kPi * kPi);
    smp.k3_norm = std::abs(smp.k3_value);
    smp.k2_majorant = m2 * vol + 2 * normX[idx] * self3;
    smp.k3_majorant = zn * (m3 * vol + normX[idx] * self1 / std::pow(zn, 3));
    out.push_back(smp);
  }
  return out;
}

}  // namespace jetdbar
