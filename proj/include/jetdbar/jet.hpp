#pragma once

#include <map>
#include <string>

#include "jetdbar/multiindex.hpp"
#include "jetdbar/poly.hpp"

namespace jetdbar {

/// Polynomial in tau with coefficients in (zeta, zetabar): sum c_m(zeta) tau^m.
class JetPoly {
public:
  using Terms = std::map<MultiIndex, Poly>;

  explicit JetPoly(SpaceShape shape) : shape_(std::move(shape)) {}
  JetPoly(SpaceShape shape, const Poly& p);
  static JetPoly monomial(const SpaceShape& shape, const MultiIndex& m, const Poly& coeff = Poly(1));
  static JetPoly parse(const std::string& text, const SpaceShape& shape);

  const SpaceShape& shape() const { return shape_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Poly coefficient(const MultiIndex& m) const;
  /// Back to a single polynomial in zeta, zetabar and tau.
  Poly to_poly() const;

  JetPoly& operator+=(const JetPoly& o);
  JetPoly& operator-=(const JetPoly& o);
  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  /// Product without reduction.
  friend JetPoly operator*(const JetPoly& a, const JetPoly& b);
  bool operator==(const JetPoly& o) const { return shape_ == o.shape_ && terms_ == o.terms_; }

  std::string to_string() const { return to_poly().to_string(); }

private:
  void add(const MultiIndex& m, const Poly& c);
  void check_shape(const JetPoly& o) const;
  SpaceShape shape_;
  Terms terms_;
};

/// Representative with no tau-monomial in J.
JetPoly normal_form(const JetPoly& p, const MonomialIdeal& J);
/// Product in O/J.
JetPoly jet_mul(const JetPoly& p, const JetPoly& q, const MonomialIdeal& J);

}  // namespace jetdbar
