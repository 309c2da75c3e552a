#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "jetdbar/form.hpp"
#include "jetdbar/jet.hpp"

namespace jetdbar {

using cd = std::complex<double>;

/// Cell-centred uniform grid on the cube [-radius, radius]^(2n).
struct GridSpec {
  int n = 1;
  double radius = 1.0;
  int points = 64;  // per real axis
  double inner_radius = 0.5;
  void validate() const;
};

class Grid {
public:
  explicit Grid(GridSpec spec);

  const GridSpec& spec() const { return spec_; }
  int n() const { return spec_.n; }
  int points() const { return spec_.points; }
  double h() const { return h_; }
  double cell_volume() const { return vol_; }
  std::size_t size() const { return size_; }
  int axes() const { return 2 * spec_.n; }
  std::size_t stride(int axis) const { return strides_[axis]; }
  /// Real coordinate of lattice index k along any axis.
  double coord(int k) const { return -spec_.radius + (k + 0.5) * h_; }
  std::array<int, 4> lattice(std::size_t idx) const;
  std::size_t index(const std::array<int, 4>& c) const;
  cd zeta(std::size_t idx, int j) const;
  double norm2(std::size_t idx) const;
  /// Points with |zeta| <= r.
  std::vector<std::uint8_t> ball_mask(double r) const;

private:
  GridSpec spec_;
  double h_;
  double vol_;
  std::size_t size_;
  std::array<std::size_t, 4> strides_{};
};

/// Pairwise (tree-order) sum; the result does not depend on thread count.
double pairwise_sum(const double* x, std::size_t count);

/// Sampled (0,q)-form jet: for every tau-exponent m <= M and every
/// dzetabar-component a complex array over the grid.
struct GridJetForm {
  SpaceShape shape;
  int q = 0;
  std::shared_ptr<const Grid> grid;
  std::vector<MultiIndex> jets;                // box(M)
  std::vector<std::vector<int>> components;    // subsets of {0..n-1} of size q
  std::vector<std::vector<std::vector<cd>>> data;  // [jet][component][point]
  std::vector<std::uint8_t> valid;             // points carrying meaningful values

  GridJetForm(SpaceShape shape, int q, std::shared_ptr<const Grid> grid);
  int jet_index(const MultiIndex& m) const;
  std::vector<std::vector<cd>>& at(const MultiIndex& m) { return data[jet_index(m)]; }
  const std::vector<std::vector<cd>>& at(const MultiIndex& m) const { return data[jet_index(m)]; }
  GridJetForm& operator+=(const GridJetForm& o);
  GridJetForm scaled(cd c) const;
  /// Largest absolute difference over valid points (both forms' masks).
  double max_abs_diff(const GridJetForm& o) const;
};

/// Component words of (0,q)-forms in dzetabar, ordered like the component list.
std::uint64_t dbar_word(const std::vector<int>& comp);

/// Evaluate a symbolic jet form on the grid. Conjugate fiber terms are dropped.
GridJetForm sample(const FormExpr& phi, const SpaceShape& shape, int q, std::shared_ptr<const Grid> grid);

/// Holomorphic derivative d^beta/dzeta^beta by centred differences at a point.
cd fd_holomorphic(const std::vector<cd>& f, const Grid& g, const std::vector<int>& beta, std::size_t idx);
/// Number of cells a derivative stencil of order |beta| reaches.
int fd_margin(int order);

/// Pointwise |psi|_Xhat: sum over m <= M, |beta| <= |M-m| and components of
/// |m! d^beta psi_m|. Symbolic path (exact derivatives).
double pointwise_norm_hat(const FormExpr& psi, const SpaceShape& shape, const std::vector<cd>& zeta);
/// Grid path (finite differences); nan where the stencil leaves the valid set.
std::vector<double> pointwise_norm_hat(const GridJetForm& psi, const std::vector<std::uint8_t>& where);
/// Symbolic pointwise norm evaluated at every grid point in `where`.
std::vector<double> pointwise_norm_hat(const FormExpr& psi, const SpaceShape& shape, const Grid& g,
                                       const std::vector<std::uint8_t>& where);

/// sum_j |gamma_j psi|_Xhat with gamma_j monomial jets.
double pointwise_norm_via_gamma(const FormExpr& psi, const std::vector<JetPoly>& gammas, const SpaceShape& shape,
                                const std::vector<cd>& zeta);
/// Multiply a symbolic form by a jet and reduce modulo <tau^(M+1)>.
FormExpr times_jet(const FormExpr& psi, const JetPoly& gamma, const SpaceShape& shape);

/// |phi(z,0)| + |z| sum_i |d phi/dz_i (z,0)| + |(L phi)(z,0)| with L = z1 d/dw1 + z2 d/dw2.
/// phi is written in (zeta, tau); z is a point of C^2.
double pointwise_norm_example9(const FormExpr& phi, const std::vector<cd>& z);

enum class Domain { Inner, Outer };
/// (sum pointwise^p * cell volume)^(1/p) over the domain; sup for p = inf.
double lp_norm(const std::vector<double>& pointwise, const Grid& g, double p, Domain domain);
double lp_norm(const std::vector<double>& pointwise, const Grid& g, double p, const std::vector<std::uint8_t>& mask);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Polynomial compiled for fast evaluation at grid points (zeta, zetabar only).
class CompiledPoly {
public:
  explicit CompiledPoly(const Poly& p);
  cd operator()(const cd* zeta, int n) const;
  bool is_zero() const { return terms_.empty(); }

private:
  struct Term {
    cd c;
    std::array<int, 4> a{};  // zeta exponents
    std::array<int, 4> b{};  // zetabar exponents
  };
  std::vector<Term> terms_;
  int maxdeg_ = 0;
};

}  // namespace jetdbar
