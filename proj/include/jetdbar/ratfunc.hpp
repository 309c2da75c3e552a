#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "jetdbar/poly.hpp"

namespace jetdbar {

/// Rational function num / prod(factor_i ^ e_i) over Q(i).
///
/// Denominator factors are kept separately (normalized to leading
/// coefficient 1) and every arithmetic result cancels any factor that
/// divides the numerator exactly, so a value is zero iff its numerator is.
class RatFunc {
public:
  using Factor = std::pair<Poly, int>;

  RatFunc() = default;
  RatFunc(long c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  RatFunc(GaussRational c) : num_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Poly p) : num_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  /// num / den^power; den must be nonzero.
  static RatFunc quotient(Poly num, const Poly& den, int power = 1);

  const Poly& numerator() const { return num_; }
  const std::vector<Factor>& denominator() const { return den_; }
  Poly denominator_product() const;
  bool is_polynomial() const { return den_.empty(); }
  bool is_zero() const { return num_.is_zero(); }
  bool involves(VarKind k) const;
  bool denominator_involves(VarKind k) const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  RatFunc operator-() const;
  RatFunc scaled(const GaussRational& c) const;
  /// Divide by a nonzero polynomial.
  RatFunc divided_by(const Poly& d, int power = 1) const;
  /// Exact inverse; numerator becomes a single denominator factor.
  RatFunc inverse() const;
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return (a - b).is_zero(); }

  RatFunc derivative(Var v) const;
  /// Substitute a polynomial for a variable in numerator and denominator.
  RatFunc substitute(Var v, const Poly& value) const;
  RatFunc rename(VarKind from, VarKind to) const;
  RatFunc to_output() const;
  /// Set every variable of kind k to zero.
  RatFunc zero_kind(VarKind k) const;

  std::complex<double> evaluate(const std::function<std::complex<double>(Var)>& value) const;
  std::string to_string(const NameTable& names = NameTable::jet()) const;

private:
  void normalize();
  Poly num_;
  std::vector<Factor> den_;
};

}  // namespace jetdbar
