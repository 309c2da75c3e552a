#include "jetdbar/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jetdbar/currents.hpp"
#include "jetdbar/hefer.hpp"

namespace jetdbar {

void GridSpec::validate() const {
  if (n < 1 || n > 2) throw std::invalid_argument("grid: only n = 1 and n = 2 are supported");
  if (points < 8) throw std::invalid_argument("grid: at least 8 points per axis are required");
  if (!(radius > 0)) throw std::invalid_argument("grid: radius must be positive");
  if (!(inner_radius > 0 && inner_radius < radius)) {
    throw std::invalid_argument("grid: inner radius must lie strictly between 0 and the outer radius");
  }
}

Grid::Grid(GridSpec spec) : spec_(spec) {
  spec_.validate();
  h_ = 2.0 * spec_.radius / spec_.points;
  vol_ = std::pow(h_, 2 * spec_.n);
  size_ = 1;
  for (int a = 0; a < axes(); ++a) size_ *= spec_.points;
  std::size_t s = 1;
  for (int a = axes() - 1; a >= 0; --a) {
    strides_[a] = s;
    s *= spec_.points;
  }
}

std::array<int, 4> Grid::lattice(std::size_t idx) const {
  std::array<int, 4> c{};
  for (int a = 0; a < axes(); ++a) c[a] = static_cast<int>(idx / strides_[a] % spec_.points);
  return c;
}

std::size_t Grid::index(const std::array<int, 4>& c) const {
  std::size_t idx = 0;
  for (int a = 0; a < axes(); ++a) idx += static_cast<std::size_t>(c[a]) * strides_[a];
  return idx;
}

cd Grid::zeta(std::size_t idx, int j) const {
  int kx = static_cast<int>(idx / strides_[2 * j] % spec_.points);
  int ky = static_cast<int>(idx / strides_[2 * j + 1] % spec_.points);
  return {coord(kx), coord(ky)};
}

double Grid::norm2(std::size_t idx) const {
  double s = 0;
  for (int a = 0; a < axes(); ++a) {
    double x = coord(static_cast<int>(idx / strides_[a] % spec_.points));
    s += x * x;
  }
  return s;
}

std::vector<std::uint8_t> Grid::ball_mask(double r) const {
  std::vector<std::uint8_t> m(size_);
  for (std::size_t i = 0; i < size_; ++i) m[i] = norm2(i) <= r * r ? 1 : 0;
  return m;
}

double pairwise_sum(const double* x, std::size_t count) {
  if (count <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < count; ++i) s += x[i];
    return s;
  }
  std::size_t half = count / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, count - half);
}

GridJetForm::GridJetForm(SpaceShape shape_, int q_, std::shared_ptr<const Grid> grid_)
    : shape(std::move(shape_)), q(q_), grid(std::move(grid_)) {
  if (!grid) throw std::invalid_argument("grid jet form without a grid");
  if (grid->n() != shape.n) throw ShapeError("grid dimension differs from the space dimension");
  if (q < 0 || q > shape.n) throw ShapeError("form degree out of range");
  jets = box(shape.M);
  components = koszul_basis(shape.n, q);
  data.assign(jets.size(), std::vector<std::vector<cd>>(components.size(), std::vector<cd>(grid->size())));
  valid.assign(grid->size(), 1);
}

int GridJetForm::jet_index(const MultiIndex& m) const {
  auto it = std::find(jets.begin(), jets.end(), m);
  if (it == jets.end()) throw ShapeError("jet index " + m.to_string() + " outside the box");
  return static_cast<int>(it - jets.begin());
}

GridJetForm& GridJetForm::operator+=(const GridJetForm& o) {
  if (!(shape == o.shape) || q != o.q || grid != o.grid) throw ShapeError("grid jet forms differ in shape");
  for (std::size_t m = 0; m < data.size(); ++m) {
    for (std::size_t c = 0; c < data[m].size(); ++c) {
      auto& a = data[m][c];
      const auto& b = o.data[m][c];
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    }
  }
  for (std::size_t i = 0; i < valid.size(); ++i) valid[i] = valid[i] && o.valid[i];
  return *this;
}

GridJetForm GridJetForm::scaled(cd c) const {
  GridJetForm r = *this;
  for (auto& comps : r.data)
    for (auto& arr : comps)
      for (auto& v : arr) v *= c;
  return r;
}

double GridJetForm::max_abs_diff(const GridJetForm& o) const {
  if (!(shape == o.shape) || q != o.q || grid != o.grid) throw ShapeError("grid jet forms differ in shape");
  double d = 0;
  for (std::size_t m = 0; m < data.size(); ++m) {
    for (std::size_t c = 0; c < data[m].size(); ++c) {
      for (std::size_t i = 0; i < valid.size(); ++i) {
        if (valid[i] && o.valid[i]) d = std::max(d, std::abs(data[m][c][i] - o.data[m][c][i]));
      }
    }
  }
  return d;
}

std::uint64_t dbar_word(const std::vector<int>& comp) {
  std::uint64_t w = 0;
  for (int j : comp) w |= std::uint64_t{1} << gen::d(VarKind::ZetaBar, j);
  return w;
}

CompiledPoly::CompiledPoly(const Poly& p) {
  for (const auto& [mono, c] : p.terms()) {
    Term t;
    t.c = c.to_complex();
    for (int j = 0; j < kMaxAxis; ++j) {
      t.a[j] = mono.exponent(Var{VarKind::Zeta, j});
      t.b[j] = mono.exponent(Var{VarKind::ZetaBar, j});
      maxdeg_ = std::max({maxdeg_, t.a[j], t.b[j]});
    }
    int own = 0;
    for (int j = 0; j < kMaxAxis; ++j) own += t.a[j] + t.b[j];
    if (own != mono.degree()) {
      throw UnsupportedInput("numeric evaluation supports zeta and zetabar only: " + p.to_string());
    }
    terms_.push_back(t);
  }
}

cd CompiledPoly::operator()(const cd* zeta, int n) const {
  if (terms_.empty()) return 0;
  std::array<std::array<cd, 16>, 4> pa{};
  std::array<std::array<cd, 16>, 4> pb{};
  if (maxdeg_ >= 16) throw UnsupportedInput("polynomial degree too large for numeric evaluation");
  for (int j = 0; j < n; ++j) {
    pa[j][0] = pb[j][0] = 1;
    cd zb = std::conj(zeta[j]);
    for (int e = 1; e <= maxdeg_; ++e) {
      pa[j][e] = pa[j][e - 1] * zeta[j];
      pb[j][e] = pb[j][e - 1] * zb;
    }
  }
  cd s = 0;
  for (const auto& t : terms_) {
    cd v = t.c;
    for (int j = 0; j < n; ++j) v *= pa[j][t.a[j]] * pb[j][t.b[j]];
    s += v;
  }
  return s;
}

namespace {

cd two_pi_i_pow(int p) { return std::pow(cd(0, 2 * std::numbers::pi), p); }

/// Truncate a polynomial to tau-exponents inside the box of M.
Poly truncate_tau(const Poly& p, const SpaceShape& sh) {
  Poly out;
  for (const auto& [exps, part] : p.split_by(VarKind::Tau, sh.kappa)) {
    if (!leq(MultiIndex(exps), sh.M)) continue;
    Poly mono(1);
    for (int j = 0; j < sh.kappa; ++j) mono *= Poly::var(VarKind::Tau, j).pow(exps[j]);
    out += part * mono;
  }
  return out;
}

struct Piece {
  MultiIndex m;
  std::uint64_t word;
  cd factor;
  Poly coeff;
};

/// Split a symbolic jet form into tau-coefficients per dzetabar word.
std::vector<Piece> split_jet_form(const FormExpr& phi, const SpaceShape& sh) {
  std::uint64_t allowed = 0;
  for (int j = 0; j < sh.n; ++j) allowed |= std::uint64_t{1} << gen::d(VarKind::ZetaBar, j);
  std::vector<Piece> out;
  FormExpr base = phi.kill_kind(VarKind::TauBar);
  for (const auto& [key, c] : base.terms()) {
    if (!c.is_polynomial()) throw UnsupportedInput("numeric jet forms need polynomial coefficients");
    if (key.word & ~allowed) throw UnsupportedInput("numeric jet forms may only contain dzetabar differentials");
    for (const auto& [exps, part] : c.numerator().split_by(VarKind::Tau, sh.kappa)) {
      MultiIndex m(exps);
      if (!leq(m, sh.M)) continue;
      out.push_back({m, key.word, two_pi_i_pow(key.pow), part});
    }
  }
  return out;
}

std::vector<std::vector<int>> betas_up_to(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> b(n, 0);
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == n) {
      out.push_back(b);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      b[j] = e;
      self(self, j + 1, left - e);
    }
    b[j] = 0;
  };
  rec(rec, 0, d);
  return out;
}

/// Every term of the pointwise norm as weight * |sum factor_i * poly_i(zeta)|.
struct NormPlan {
  struct Group {
    double weight;
    std::vector<std::pair<cd, CompiledPoly>> parts;
  };
  std::vector<Group> groups;
  int n;

  NormPlan(const FormExpr& psi, const SpaceShape& sh) : n(sh.n) {
    std::map<std::pair<MultiIndex, std::uint64_t>, std::vector<std::pair<cd, Poly>>> by_key;
    for (auto& p : split_jet_form(psi, sh)) by_key[{p.m, p.word}].push_back({p.factor, p.coeff});
    for (const auto& [key, parts] : by_key) {
      const MultiIndex& m = key.first;
      int reach = (sh.M - m).degree();
      for (const auto& beta : betas_up_to(sh.n, reach)) {
        Group g{static_cast<double>(m.factorial()), {}};
        for (const auto& [f, poly] : parts) {
          Poly d = poly;
          for (int j = 0; j < sh.n; ++j)
            for (int e = 0; e < beta[j]; ++e) d = d.derivative(Var{VarKind::Zeta, j});
          if (!d.is_zero()) g.parts.emplace_back(f, CompiledPoly(d));
        }
        if (!g.parts.empty()) groups.push_back(std::move(g));
      }
    }
  }

  double operator()(const cd* zeta) const {
    double s = 0;
    for (const auto& g : groups) {
      cd v = 0;
      for (const auto& [f, p] : g.parts) v += f * p(zeta, n);
      s += g.weight * std::abs(v);
    }
    return s;
  }
};

/// Offsets touched by a derivative stencil of the given order: at most
/// fd_margin(order) cells per axis and `order` cells in total.
std::vector<std::ptrdiff_t> stencil_offsets(const Grid& g, int order, std::vector<std::array<int, 4>>* raw = nullptr) {
  int m = fd_margin(order);
  std::vector<std::ptrdiff_t> out;
  std::array<int, 4> o{};
  auto rec = [&](auto&& self, int a, int used) -> void {
    if (a == g.axes()) {
      std::ptrdiff_t off = 0;
      for (int b = 0; b < g.axes(); ++b) off += o[b] * static_cast<std::ptrdiff_t>(g.stride(b));
      out.push_back(off);
      if (raw) raw->push_back(o);
      return;
    }
    for (int s = -m; s <= m; ++s) {
      if (used + std::abs(s) > order) continue;
      o[a] = s;
      self(self, a + 1, used + std::abs(s));
    }
    o[a] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

bool stencil_ok(const Grid& g, const std::vector<std::uint8_t>& valid, std::size_t idx, int order) {
  std::vector<std::array<int, 4>> raw;
  auto offs = stencil_offsets(g, order, &raw);
  auto c = g.lattice(idx);
  for (std::size_t k = 0; k < offs.size(); ++k) {
    for (int a = 0; a < g.axes(); ++a) {
      int x = c[a] + raw[k][a];
      if (x < 0 || x >= g.points()) return false;
    }
    if (!valid[idx + offs[k]]) return false;
  }
  return true;
}

cd at_offset(const std::vector<cd>& f, const Grid& g, std::size_t idx, int axis, int s) {
  return f[idx + s * static_cast<std::ptrdiff_t>(g.stride(axis))];
}

cd at_offset2(const std::vector<cd>& f, const Grid& g, std::size_t idx, int a, int sa, int b, int sb) {
  return f[idx + sa * static_cast<std::ptrdiff_t>(g.stride(a)) + sb * static_cast<std::ptrdiff_t>(g.stride(b))];
}

/// Real second derivative d_a d_b with +-h stencils.
cd second_real(const std::vector<cd>& f, const Grid& g, std::size_t idx, int a, int b) {
  double h = g.h();
  if (a == b) return (at_offset(f, g, idx, a, 1) - 2.0 * f[idx] + at_offset(f, g, idx, a, -1)) / (h * h);
  return (at_offset2(f, g, idx, a, 1, b, 1) - at_offset2(f, g, idx, a, 1, b, -1) -
          at_offset2(f, g, idx, a, -1, b, 1) + at_offset2(f, g, idx, a, -1, b, -1)) /
         (4 * h * h);
}

}  // namespace

GridJetForm sample(const FormExpr& phi, const SpaceShape& shape, int q, std::shared_ptr<const Grid> grid) {
  GridJetForm out(shape, q, grid);
  std::vector<std::uint64_t> words;
  for (const auto& c : out.components) words.push_back(dbar_word(c));
  std::vector<std::tuple<int, int, cd, CompiledPoly>> plan;
  for (auto& p : split_jet_form(phi, shape)) {
    auto it = std::find(words.begin(), words.end(), p.word);
    if (it == words.end()) throw ShapeError("form term of the wrong degree for a (0," + std::to_string(q) + ")-form");
    plan.emplace_back(out.jet_index(p.m), static_cast<int>(it - words.begin()), p.factor, CompiledPoly(p.coeff));
  }
  std::array<cd, 4> z{};
  for (std::size_t i = 0; i < grid->size(); ++i) {
    for (int j = 0; j < shape.n; ++j) z[j] = grid->zeta(i, j);
    for (const auto& [m, c, f, poly] : plan) out.data[m][c][i] += f * poly(z.data(), shape.n);
  }
  return out;
}

int fd_margin(int order) { return order == 0 ? 0 : order <= 2 ? 1 : order - 1; }

cd fd_holomorphic(const std::vector<cd>& f, const Grid& g, const std::vector<int>& beta, std::size_t idx) {
  int order = 0;
  for (int b : beta) order += b;
  if (order == 0) return f[idx];
  const cd I(0, 1);
  if (order == 1) {
    int j = static_cast<int>(std::find(beta.begin(), beta.end(), 1) - beta.begin());
    double h2 = 2 * g.h();
    cd dx = (at_offset(f, g, idx, 2 * j, 1) - at_offset(f, g, idx, 2 * j, -1)) / h2;
    cd dy = (at_offset(f, g, idx, 2 * j + 1, 1) - at_offset(f, g, idx, 2 * j + 1, -1)) / h2;
    return 0.5 * (dx - I * dy);
  }
  if (order == 2) {
    int j = -1, k = -1;
    for (int t = 0; t < static_cast<int>(beta.size()); ++t) {
      for (int e = 0; e < beta[t]; ++e) (j < 0 ? j : k) = t;
    }
    int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
    return 0.25 * (second_real(f, g, idx, xj, xk) - I * second_real(f, g, idx, xj, yk) -
                   I * second_real(f, g, idx, yj, xk) - second_real(f, g, idx, yj, yk));
  }
  int j = static_cast<int>(std::find_if(beta.begin(), beta.end(), [](int b) { return b > 0; }) - beta.begin());
  std::vector<int> rest = beta;
  --rest[j];
  double h2 = 2 * g.h();
  auto shifted = [&](int axis, int s) {
    return fd_holomorphic(f, g, rest, idx + s * static_cast<std::ptrdiff_t>(g.stride(axis)));
  };
  cd dx = (shifted(2 * j, 1) - shifted(2 * j, -1)) / h2;
  cd dy = (shifted(2 * j + 1, 1) - shifted(2 * j + 1, -1)) / h2;
  return 0.5 * (dx - I * dy);
}

double pointwise_norm_hat(const FormExpr& psi, const SpaceShape& shape, const std::vector<cd>& zeta) {
  if (static_cast<int>(zeta.size()) != shape.n) throw ShapeError("point dimension differs from n");
  return NormPlan(psi, shape)(zeta.data());
}

std::vector<double> pointwise_norm_hat(const FormExpr& psi, const SpaceShape& shape, const Grid& g,
                                       const std::vector<std::uint8_t>& where) {
  NormPlan plan(psi, shape);
  std::vector<double> out(g.size(), 0.0);
  std::array<cd, 4> z{};
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!where[i]) continue;
    for (int j = 0; j < shape.n; ++j) z[j] = g.zeta(i, j);
    out[i] = plan(z.data());
  }
  return out;
}

std::vector<double> pointwise_norm_hat(const GridJetForm& psi, const std::vector<std::uint8_t>& where) {
  const Grid& g = *psi.grid;
  const SpaceShape& sh = psi.shape;
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!where[i]) continue;
    if (!stencil_ok(g, psi.valid, i, sh.M.degree())) throw std::domain_error("pointwise norm: derivative stencil leaves the sampled region");
  }
  for (std::size_t mi = 0; mi < psi.jets.size(); ++mi) {
    const MultiIndex& m = psi.jets[mi];
    double weight = static_cast<double>(m.factorial());
    for (const auto& beta : betas_up_to(sh.n, (sh.M - m).degree())) {
      for (const auto& arr : psi.data[mi]) {
        for (std::size_t i = 0; i < g.size(); ++i) {
          if (where[i]) out[i] += weight * std::abs(fd_holomorphic(arr, g, beta, i));
        }
      }
    }
  }
  return out;
}

FormExpr times_jet(const FormExpr& psi, const JetPoly& gamma, const SpaceShape& shape) {
  FormExpr prod = psi * FormExpr(gamma.to_poly());
  return prod.map_coefficients([&](const RatFunc& c) {
    if (c.denominator_involves(VarKind::Tau)) throw UnsupportedInput("tau in a denominator of a jet form");
    Poly num = truncate_tau(c.numerator(), shape);
    return c.is_polynomial() ? RatFunc(num) : RatFunc::quotient(num, c.denominator_product());
  });
}

double pointwise_norm_via_gamma(const FormExpr& psi, const std::vector<JetPoly>& gammas, const SpaceShape& shape,
                                const std::vector<cd>& zeta) {
  if (gammas.empty()) throw std::invalid_argument("pointwise_norm_via_gamma: empty gamma set");
  double s = 0;
  for (const auto& g : gammas) s += pointwise_norm_hat(times_jet(psi, g, shape), shape, zeta);
  return s;
}

double pointwise_norm_example9(const FormExpr& phi, const std::vector<cd>& z) {
  if (z.size() != 2) throw ShapeError("the example norm lives over C^2");
  auto value = [&](Var v) -> cd {
    switch (v.kind) {
      case VarKind::Zeta: return z.at(v.index);
      case VarKind::ZetaBar: return std::conj(z.at(v.index));
      default: return 0.0;
    }
  };
  auto abs_sum = [&](const FormExpr& f) {
    double s = 0;
    for (const auto& [w, c] : f.evaluate(value)) s += std::abs(c);
    return s;
  };
  FormExpr base = phi.kill_kind(VarKind::TauBar);
  FormExpr at0 = base.kill_kind(VarKind::Tau);
  double s = abs_sum(at0);
  double zn = std::sqrt(std::norm(z[0]) + std::norm(z[1]));
  for (int i = 0; i < 2; ++i) {
    Var v{VarKind::Zeta, i};
    s += zn * abs_sum(at0.map_coefficients([v](const RatFunc& c) { return c.derivative(v); }));
  }
  FormExpr L;
  for (int j = 0; j < 2; ++j) {
    Var t{VarKind::Tau, j};
    L += base.map_coefficients([t](const RatFunc& c) { return c.derivative(t); }).scaled(RatFunc(Poly::var(VarKind::Zeta, j)));
  }
  s += abs_sum(L.kill_kind(VarKind::Tau));
  return s;
}

double lp_norm(const std::vector<double>& pointwise, const Grid& g, double p, const std::vector<std::uint8_t>& mask) {
  if (!(p >= 1)) throw std::domain_error("lp_norm: p must be at least 1");
  if (pointwise.size() != g.size() || mask.size() != g.size()) throw ShapeError("lp_norm: array size differs from grid");
  std::vector<double> vals;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!mask[i]) continue;
    if (std::isnan(pointwise[i])) throw std::domain_error("lp_norm: undefined pointwise value inside the domain");
    vals.push_back(std::abs(pointwise[i]));
  }
  if (vals.empty()) return 0.0;
  if (std::isinf(p)) return *std::max_element(vals.begin(), vals.end());
  for (auto& v : vals) v = std::pow(v, p);
  return std::pow(pairwise_sum(vals.data(), vals.size()) * g.cell_volume(), 1.0 / p);
}

double lp_norm(const std::vector<double>& pointwise, const Grid& g, double p, Domain domain) {
  double r = domain == Domain::Inner ? g.spec().inner_radius : g.spec().radius;
  return lp_norm(pointwise, g, p, g.ball_mask(r));
}

}  // namespace jetdbar
