#pragma once

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jetdbar/gauss_rational.hpp"

namespace jetdbar {

/// Families of commuting variables. (Zeta, Tau) are integration coordinates
/// on U, (Z, W) the matching output coordinates on U'.
enum class VarKind : std::uint8_t { Zeta = 0, ZetaBar, Tau, TauBar, Z, ZBar, W, WBar };

inline constexpr int kMaxAxis = 4;
inline constexpr int kNumKinds = 8;
inline constexpr int kNumVars = kNumKinds * kMaxAxis;

struct Var {
  VarKind kind;
  int index;  // 0-based axis

  int slot() const { return static_cast<int>(kind) * kMaxAxis + index; }
  static Var from_slot(int s) { return {static_cast<VarKind>(s / kMaxAxis), s % kMaxAxis}; }
  friend bool operator==(const Var&, const Var&) = default;
};

bool is_conjugate(VarKind k);
VarKind conjugate(VarKind k);
/// Zeta->Z, Tau->W and the same for conjugates; identity on output kinds.
VarKind output_partner(VarKind k);

/// Power product of the variables. Ordered graded-lexicographically by slot.
class Monomial {
public:
  Monomial() { exps_.fill(0); }
  static Monomial of(Var v, int power = 1);

  int exponent(Var v) const { return exps_[v.slot()]; }
  int exponent_slot(int s) const { return exps_[s]; }
  void set_exponent(Var v, int e);
  int degree() const;
  bool empty() const { return degree() == 0; }
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& o) const;
  /// Only valid when divides(o) holds for the divisor.
  Monomial operator/(const Monomial& o) const;
  bool involves(VarKind k) const;

  std::strong_ordering operator<=>(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

private:
  std::array<std::uint8_t, kNumVars> exps_;
};

/// Variable naming used for printing and parsing.
struct NameTable {
  std::string zeta = "z", zeta_bar = "zb", tau = "t", tau_bar = "tb";
  std::string z = "x", z_bar = "xb", w = "w", w_bar = "wb";
  std::string name(VarKind k) const;
  /// User-facing jet grammar: z, zb, t, tb (integration/base coordinates).
  static const NameTable& jet();
  /// Full naming used when both coordinate sets appear: zeta, zetab, tau, taub, z, zb, w, wb.
  static const NameTable& full();
};

/// Multivariate polynomial over Q(i).
class Poly {
public:
  using Terms = std::map<Monomial, GaussRational>;

  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  Poly(GaussRational c);  // NOLINT(google-explicit-constructor)
  static Poly var(Var v);
  static Poly var(VarKind k, int index) { return var(Var{k, index}); }
  static Poly term(GaussRational c, Monomial m);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussRational constant_term() const;
  int total_degree() const;
  int degree_in(Var v) const;
  bool involves(VarKind k) const;
  bool involves(Var v) const { return degree_in(v) > 0; }
  /// Leading term under the monomial order (largest monomial).
  std::pair<Monomial, GaussRational> leading() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const GaussRational& c) const;
  Poly pow(int e) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly derivative(Var v) const;
  Poly substitute(Var v, const Poly& value) const;
  /// Rename every variable of kind `from` to kind `to` (same index).
  Poly rename(VarKind from, VarKind to) const;
  /// (zeta,tau,conjugates) -> (z,w,conjugates).
  Poly to_output() const;
  /// Drop every term containing a variable of kind k.
  Poly drop(VarKind k) const;
  /// Exact division; nullopt when the divisor does not divide.
  std::optional<Poly> divide_exact(const Poly& d) const;
  /// Coefficient polynomial of each power of the variables of kind k.
  std::map<std::vector<int>, Poly> split_by(VarKind k, int count) const;

  std::complex<double> evaluate(const std::function<std::complex<double>(Var)>& value) const;
  std::string to_string(const NameTable& names = NameTable::jet()) const;

private:
  void add_term(const Monomial& m, const GaussRational& c);
  Terms terms_;
};

}  // namespace jetdbar
