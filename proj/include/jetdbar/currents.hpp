#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "jetdbar/form.hpp"
#include "jetdbar/jet.hpp"
#include "jetdbar/matrix.hpp"

namespace jetdbar {

/// Input outside the supported class (non-polynomial, tau in a denominator, ...).
class UnsupportedInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Finite sum  sum_alpha a_alpha * dbar(dtau / tau^(alpha+1)) ^ dzeta
/// with coefficients depending on the base variables only.
class CHCurrent {
public:
  using Terms = std::map<MultiIndex, FormExpr>;

  explicit CHCurrent(SpaceShape shape) : shape_(std::move(shape)) {}
  /// The single term alpha with coefficient c.
  static CHCurrent basis(const SpaceShape& shape, const MultiIndex& alpha, const FormExpr& c = FormExpr(1));
  /// dbar(dtau / tau^(M+1)) ^ dzeta for the shape's cap M.
  static CHCurrent mu_hat(const SpaceShape& shape) { return basis(shape, shape.M); }

  const SpaceShape& shape() const { return shape_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  FormExpr coefficient(const MultiIndex& alpha) const;
  void add_term(const MultiIndex& alpha, const FormExpr& c);

  CHCurrent& operator+=(const CHCurrent& o);
  CHCurrent& operator-=(const CHCurrent& o);
  friend CHCurrent operator+(CHCurrent a, const CHCurrent& b) { return a += b; }
  friend CHCurrent operator-(CHCurrent a, const CHCurrent& b) { return a -= b; }
  CHCurrent operator-() const;
  bool operator==(const CHCurrent& o) const { return (*this - o).is_zero(); }

  /// tau^beta * mu.
  CHCurrent mul_monomial(const MultiIndex& beta) const;
  /// p * mu for a jet polynomial p.
  CHCurrent multiply(const JetPoly& p) const;
  /// s ^ mu for a smooth form s: conjugate fiber variables and d(taubar) act
  /// as zero, the remaining tau-dependence acts by index shifts.
  CHCurrent multiply(const FormExpr& s) const;
  /// Coefficientwise dbar in the base variables.
  CHCurrent dbar() const;
  /// Multiply every coefficient by (-1)^(form degree); the sign an odd
  /// morphism picks up when passing the coefficient.
  CHCurrent parity_twisted() const;

  nlohmann::json to_json() const;
  static CHCurrent from_json(const nlohmann::json& j, const SpaceShape& shape);

private:
  void check_shape(const CHCurrent& o) const;
  SpaceShape shape_;
  Terms terms_;
};

/// Fiberwise pairing density sum_alpha a_alpha ^ (2 pi i)^kappa / alpha! d^alpha_tau phi(zeta,0) ^ dzeta.
FormExpr pair(const CHCurrent& mu, const FormExpr& phi);
bool annihilates(const CHCurrent& mu, const JetPoly& p);
/// Minimal monomials gamma (as jets) with gamma * J contained in <tau^(M+1)>.
std::vector<JetPoly> annihilator_basis(const MonomialIdeal& J);

/// Vector (column) of currents: an E-valued current.
using CurrentVector = std::vector<CHCurrent>;
/// Matrix of smooth forms applied to a current vector. When `odd` is set the
/// matrix is treated as an odd morphism and each current coefficient is
/// passed with its degree sign.
CurrentVector apply_matrix(const Matrix<FormExpr>& m, const CurrentVector& v, bool odd = false);
bool is_zero(const CurrentVector& v);
CurrentVector dbar(const CurrentVector& v);
CurrentVector operator-(const CurrentVector& a, const CurrentVector& b);

}  // namespace jetdbar
