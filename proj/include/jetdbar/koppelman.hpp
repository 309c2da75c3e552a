#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "jetdbar/grid.hpp"
#include "jetdbar/hefer.hpp"

namespace jetdbar {

/// Cutoff chi(zeta) = chi~(|zeta|^2): 1 on |zeta| <= cut_start, 0 beyond
/// cut_end, quintic smoothstep in |zeta|^2 between.
struct KernelSpec {
  int n = 1;
  double inner = 0.5;
  double cut_start = 0.7;
  double cut_end = 0.95;
  void validate() const;
  /// Radii scaled to a grid: cut at 0.7 and 0.95 of the outer radius.
  static KernelSpec for_grid(const GridSpec& g);
};

double cutoff(const KernelSpec& s, double t);
double cutoff_derivative(const KernelSpec& s, double t);

/// Weight g(zeta, z) for the ball: g_00 = chi and the top-degree part as a
/// density against Lebesgue measure in zeta.
struct WeightValue {
  double g00;
  cd top;
};
WeightValue weight_g(const KernelSpec& s, const std::vector<cd>& zeta, const std::vector<cd>& z);

/// Bochner-Martinelli kernel: coefficient of the (0,1)-data pairing
/// K_j = -((n-1)!/pi^n) conj(zeta_j - z_j) / |zeta - z|^(2n).
struct BMKernel {
  bool singular = false;
  std::vector<cd> coeff;
};
BMKernel bm_kernel(int n, const std::vector<cd>& zeta, const std::vector<cd>& z);

/// int_{[-1/2,1/2]^d} |u|^(-s) du for 0 <= s < d.
double cube_singular_integral(int d, double s);

/// Koppelman operator K for the ball weight on a grid. (0,q+1)-forms are
/// given as component arrays (dzetabar subsets in lex order).
class KoppelmanSolver {
public:
  using Components = std::vector<std::vector<cd>>;

  KoppelmanSolver(std::shared_ptr<const Grid> grid, KernelSpec spec);
  const Grid& grid() const { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
  const KernelSpec& spec() const { return spec_; }

  /// Lattice points where outputs carry enough neighbours for derivatives of
  /// order `order` inside the inner ball.
  std::vector<std::uint8_t> output_mask(int order) const;

  /// K phi on the mask. `degree` is the form degree of phi (>= 1).
  Components apply(const Components& phi, int degree, const std::vector<std::uint8_t>& out) const;
  /// K phi at one lattice point by direct summation.
  std::vector<cd> apply_at(const Components& phi, int degree, std::size_t idx) const;
  /// Holomorphic projection int g u for a function u at one lattice point.
  cd project_at(const std::vector<cd>& u, std::size_t idx) const;
  /// Same at an arbitrary point of the inner ball.
  cd project(const std::vector<cd>& u, const std::vector<cd>& z) const;

  /// Use FFT convolution when the padded grid is at most this many points.
  static constexpr std::size_t kFftLimit = std::size_t{1} << 24;

private:
  struct Term {
    int out, in, kernel;
    double coef;
  };
  std::vector<Term> terms(int degree) const;
  Components singular_fft(const Components& F, int degree) const;
  Components singular_direct(const Components& F, int degree, const std::vector<std::uint8_t>& out) const;
  void add_self_cells(const Components& F, int degree, const std::vector<std::uint8_t>& out, Components& res) const;
  void add_weight_term(const Components& phi, const std::vector<std::uint8_t>& out, Components& res) const;
  Components cut(const Components& phi) const;

  std::shared_ptr<const Grid> grid_;
  KernelSpec spec_;
  std::vector<double> chi_;
  double self_integral_;  // integral of |v|^(2-2n) over one cell
  mutable std::vector<std::vector<cd>> kernel_hat_;
};

/// K on a form with no fiber jets (M = 0); degree must be at least 1.
GridJetForm solve_reduced(const GridJetForm& phi, const KoppelmanSolver& K);
/// K-hat: K applied to each tau-coefficient; the output jets are in w.
GridJetForm solve_hat(const GridJetForm& phi, const KoppelmanSolver& K, int derivative_order = -1);
/// w^g times a jet form, truncated to the box of M.
GridJetForm shift_jets(const GridJetForm& psi, const MultiIndex& g);
/// K-hat of gamma_j psi for every gamma_j.
std::vector<GridJetForm> solve_embedded(const FormExpr& psi, const SpaceShape& shape, const std::vector<JetPoly>& gammas,
                                        const KoppelmanSolver& K);

/// Sup over the inner ball of phi - dbar K phi - K dbar phi (coefficient
/// moduli), for phi a (0,1)-form jet on C^1.
double koppelman_residual(const FormExpr& phi, const SpaceShape& shape, const KoppelmanSolver& K);

/// Random dbar-closed (0,1)-form jet sum_m tau^m dbar(u_m) with u_m of degree
/// <= degree and Gaussian-integer coefficients bounded by `bound`.
FormExpr random_closed_form(const SpaceShape& shape, std::mt19937_64& rng, int degree = 3, int bound = 8);
/// The potentials u_m behind random_closed_form, in box order.
std::vector<std::pair<MultiIndex, Poly>> random_potentials(const SpaceShape& shape, std::mt19937_64& rng, int degree = 3,
                                                           int bound = 8);
/// sum_m tau^m dbar(u_m).
FormExpr closed_form_from(const std::vector<std::pair<MultiIndex, Poly>>& potentials);
/// Monomials in zeta, zetabar of total degree <= degree.
std::vector<Monomial> base_monomials(int n, int degree);
/// Random (0,1)-form jet with polynomial coefficients (not closed).
FormExpr random_form(const SpaceShape& shape, std::mt19937_64& rng, int degree = 3, int bound = 8);

/// Kernels of the worked C^2 example at lattice points z.
struct Example9KernelSample {
  std::vector<cd> z;
  double k2_norm = 0;      // |K2 phi|_X at (z, 0)
  double k3_norm = 0;      // |K3 phi|_X at (z, 0)
  double k2_majorant = 0;  // int |v|^-3 (1 + |z|/|zeta|) |phi|_X
  double k3_majorant = 0;  // |z| int |v|^-1 |zeta|^-3 |phi|_X
  cd k3_value = 0;         // (L K3 phi)(z, 0)
};
std::vector<Example9KernelSample> example9_kernels(const FormExpr& phi, const KoppelmanSolver& K,
                                                   const std::vector<std::size_t>& points);

}  // namespace jetdbar
