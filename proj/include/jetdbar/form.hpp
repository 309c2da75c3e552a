#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "jetdbar/ratfunc.hpp"

namespace jetdbar {

/// Anticommuting generators, encoded as bit positions of a 64-bit word.
/// Bits 0..31 are the differentials d(var) (same slot layout as Var),
/// bits 32..35 frame symbols e_j and bits 36..39 their duals e_j*.
namespace gen {
inline constexpr int kFrameBase = 32;
inline constexpr int kDualBase = 36;
inline constexpr int kCount = 40;
inline int d(Var v) { return v.slot(); }
inline int d(VarKind k, int index) { return Var{k, index}.slot(); }
inline int e(int j) { return kFrameBase + j; }
inline int e_dual(int j) { return kDualBase + j; }
inline bool is_differential(int bit) { return bit < kFrameBase; }
std::string name(int bit, const NameTable& names);
/// Inverse of name(); -1 when the token is not a generator.
int lookup(const std::string& token, const NameTable& names);
}  // namespace gen

/// Element of the exterior algebra over rational functions, with a tracked
/// integer power of the unit 2*pi*i per term. Words are stored in ascending
/// bit order; the sign of reordering is applied on construction.
class FormExpr {
public:
  struct Key {
    std::uint64_t word = 0;
    int pow = 0;  // power of (2*pi*i)
    auto operator<=>(const Key&) const = default;
  };
  using Terms = std::map<Key, RatFunc>;

  FormExpr() = default;
  FormExpr(long c) : FormExpr(RatFunc(c)) {}  // NOLINT(google-explicit-constructor)
  FormExpr(const Poly& c) : FormExpr(RatFunc(c)) {}  // NOLINT(google-explicit-constructor)
  FormExpr(const RatFunc& c);  // NOLINT(google-explicit-constructor)
  static FormExpr generator(int bit);
  static FormExpr differential(VarKind k, int index) { return generator(gen::d(k, index)); }
  /// c * (2*pi*i)^pow * (product of generators in the given order).
  static FormExpr monomial(const RatFunc& c, const std::vector<int>& bits, int pow = 0);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Number of generators in every term; -1 if mixed, 0 for zero.
  int degree() const;
  /// Number of differential generators in every term; -1 if mixed.
  int form_degree() const;
  bool involves_generator(int bit) const;

  FormExpr& operator+=(const FormExpr& o);
  FormExpr& operator-=(const FormExpr& o);
  friend FormExpr operator+(FormExpr a, const FormExpr& b) { return a += b; }
  friend FormExpr operator-(FormExpr a, const FormExpr& b) { return a -= b; }
  FormExpr operator-() const;
  /// Wedge product.
  friend FormExpr operator*(const FormExpr& a, const FormExpr& b);
  FormExpr& operator*=(const FormExpr& o) { return *this = *this * o; }
  FormExpr scaled(const RatFunc& c) const;
  FormExpr times_2pii(int k) const;
  friend bool operator==(const FormExpr& a, const FormExpr& b) { return (a - b).is_zero(); }

  /// Graded contraction removing `bit`: the generator at position p
  /// contributes (-1)^p * value * (2*pi*i)^pow_shift.
  FormExpr contract(int bit, const RatFunc& value, int pow_shift = 0) const;
  /// Contraction by 2*pi*i * sum (zeta_j - z_j) d/dzeta_j + (tau_j - w_j) d/dtau_j.
  FormExpr delta_eta() const;
  /// dbar in the conjugate variables of the listed kinds; d(xbar) goes on the left.
  FormExpr dbar(const std::vector<VarKind>& kinds = {VarKind::ZetaBar, VarKind::TauBar,
                                                     VarKind::ZBar, VarKind::WBar}) const;

  FormExpr map_coefficients(const std::function<RatFunc(const RatFunc&)>& fn) const;
  FormExpr substitute(Var v, const Poly& value) const;
  FormExpr rename(VarKind from, VarKind to) const;
  FormExpr to_output() const;
  /// Set variables of kind k to zero and drop every word containing d(k).
  FormExpr kill_kind(VarKind k) const;
  /// Keep only the terms whose word contains all bits of `mask`.
  FormExpr filter_containing(std::uint64_t mask) const;
  /// Coefficient of a word collected over all 2*pi*i powers (as a form with empty word).
  FormExpr coefficient_of(std::uint64_t word) const;

  /// Numeric value of each word's coefficient, 2*pi*i substituted.
  std::map<std::uint64_t, std::complex<double>> evaluate(
      const std::function<std::complex<double>(Var)>& value) const;

  std::string to_string(const NameTable& names = NameTable::jet()) const;
  nlohmann::json to_json(const NameTable& names = NameTable::jet()) const;
  static FormExpr from_json(const nlohmann::json& j, const NameTable& names = NameTable::jet());

private:
  void add(const Key& k, const RatFunc& c);
  Terms terms_;
};

/// Sign (+1/-1) of wedging word a before word b, 0 if they share a generator.
int wedge_sign(std::uint64_t a, std::uint64_t b);
std::vector<int> word_bits(std::uint64_t word);

}  // namespace jetdbar
