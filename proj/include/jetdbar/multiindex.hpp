#pragma once

#include <compare>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetdbar {

/// Length or dimension mismatch between objects that must share a shape.
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Exponent vector of a monomial in the fiber variables tau_1..tau_kappa.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}
  static MultiIndex zeros(int length) { return MultiIndex(std::vector<int>(length, 0)); }
  static MultiIndex unit(int length, int axis);

  int size() const { return static_cast<int>(e_.size()); }
  int operator[](int j) const { return e_.at(j); }
  const std::vector<int>& entries() const { return e_; }
  int degree() const;
  long factorial() const;

  MultiIndex operator+(const MultiIndex& o) const;
  /// Componentwise difference; requires o <= *this.
  MultiIndex operator-(const MultiIndex& o) const;

  /// Graded order listing tau_1 before tau_2 within one degree.
  std::strong_ordering operator<=>(const MultiIndex& o) const;
  bool operator==(const MultiIndex& o) const = default;

  std::string to_string() const;

private:
  std::vector<int> e_;
};

/// a_j <= b_j for all j.
bool leq(const MultiIndex& a, const MultiIndex& b);
/// Every multi-index m with m <= cap, in graded order.
std::vector<MultiIndex> box(const MultiIndex& cap);

/// Base dimension n, fiber codimension kappa and cap degrees M.
struct SpaceShape {
  int n = 1;
  int kappa = 1;
  MultiIndex M;

  SpaceShape() = default;
  SpaceShape(int n_, int kappa_, MultiIndex M_);
  static SpaceShape with_caps(int n_, MultiIndex M_) {
    int k = M_.size();
    return {n_, k, std::move(M_)};
  }
  int N() const { return n + kappa; }
  MultiIndex M_plus_one() const;
  bool operator==(const SpaceShape&) const = default;
};

/// Monomial ideal in tau containing tau^(M+1) for the shape's caps.
class MonomialIdeal {
public:
  MonomialIdeal(SpaceShape shape, std::vector<MultiIndex> generators);
  /// I = <tau_1^(M_1+1), ..., tau_kappa^(M_kappa+1)>.
  static MonomialIdeal complete_intersection(const SpaceShape& shape);

  const SpaceShape& shape() const { return shape_; }
  const std::vector<MultiIndex>& generators() const { return gens_; }
  bool contains(const MultiIndex& m) const;
  /// Whether the ideal contains a pure power of every tau_j.
  bool is_artinian() const;
  bool operator==(const MonomialIdeal& o) const { return shape_ == o.shape_ && gens_ == o.gens_; }
  std::string to_string() const;

private:
  SpaceShape shape_;
  std::vector<MultiIndex> gens_;
};

/// Exponents of the monomials outside J, in graded order.
std::vector<MultiIndex> standard_monomials(const MonomialIdeal& J);

}  // namespace jetdbar
