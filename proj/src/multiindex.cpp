#include "jetdbar/multiindex.hpp"

#include <algorithm>
#include <functional>

namespace jetdbar {

MultiIndex::MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {
  for (int v : e_) {
    if (v < 0) throw std::invalid_argument("multi-index entries must be non-negative");
  }
}

MultiIndex MultiIndex::unit(int length, int axis) {
  std::vector<int> e(length, 0);
  e.at(axis) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::degree() const {
  int d = 0;
  for (int v : e_) d += v;
  return d;
}

long MultiIndex::factorial() const {
  long f = 1;
  for (int v : e_) {
    for (int k = 2; k <= v; ++k) f *= k;
  }
  return f;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (size() != o.size()) throw ShapeError("multi-index length mismatch");
  std::vector<int> r(e_);
  for (int j = 0; j < size(); ++j) r[j] += o.e_[j];
  return MultiIndex(std::move(r));
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  if (size() != o.size()) throw ShapeError("multi-index length mismatch");
  std::vector<int> r(e_);
  for (int j = 0; j < size(); ++j) r[j] -= o.e_[j];
  return MultiIndex(std::move(r));
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& o) const {
  if (auto c = size() <=> o.size(); c != 0) return c;
  if (auto c = degree() <=> o.degree(); c != 0) return c;
  // Within one degree, larger tau_1 exponent comes first.
  for (int j = 0; j < size(); ++j) {
    if (e_[j] != o.e_[j]) return o.e_[j] <=> e_[j];
  }
  return std::strong_ordering::equal;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (int j = 0; j < size(); ++j) {
    if (j) s += ",";
    s += std::to_string(e_[j]);
  }
  return s + ")";
}

bool leq(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw ShapeError("leq: multi-index length mismatch");
  for (int j = 0; j < a.size(); ++j) {
    if (a[j] > b[j]) return false;
  }
  return true;
}

std::vector<MultiIndex> box(const MultiIndex& cap) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(cap.size(), 0);
  std::function<void(int)> rec = [&](int j) {
    if (j == cap.size()) {
      out.emplace_back(cur);
      return;
    }
    for (int v = 0; v <= cap[j]; ++v) {
      cur[j] = v;
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

SpaceShape::SpaceShape(int n_, int kappa_, MultiIndex M_) : n(n_), kappa(kappa_), M(std::move(M_)) {
  if (n < 0) throw ShapeError("base dimension n must be >= 0");
  if (kappa < 1) throw ShapeError("fiber codimension kappa must be >= 1");
  if (M.size() != kappa) throw ShapeError("cap multi-index M must have length kappa");
}

MultiIndex SpaceShape::M_plus_one() const {
  std::vector<int> e(M.entries());
  for (int& v : e) ++v;
  return MultiIndex(std::move(e));
}

MonomialIdeal::MonomialIdeal(SpaceShape shape, std::vector<MultiIndex> generators) : shape_(std::move(shape)) {
  for (const auto& g : generators) {
    if (g.size() != shape_.kappa) throw ShapeError("ideal generator length differs from kappa");
  }
  // Keep only minimal generators.
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (const auto& g : generators) {
    bool redundant = std::any_of(gens_.begin(), gens_.end(), [&](const MultiIndex& h) { return leq(h, g); });
    if (!redundant) gens_.push_back(g);
  }
  MultiIndex top = shape_.M_plus_one();
  for (int j = 0; j < shape_.kappa; ++j) {
    std::vector<int> e(shape_.kappa, 0);
    e[j] = top[j];
    if (!contains(MultiIndex(e))) {
      throw std::invalid_argument("ideal must contain tau_" + std::to_string(j + 1) + "^(M_" +
                                  std::to_string(j + 1) + "+1)");
    }
  }
}

MonomialIdeal MonomialIdeal::complete_intersection(const SpaceShape& shape) {
  std::vector<MultiIndex> gens;
  MultiIndex top = shape.M_plus_one();
  for (int j = 0; j < shape.kappa; ++j) {
    std::vector<int> e(shape.kappa, 0);
    e[j] = top[j];
    gens.emplace_back(e);
  }
  return {shape, gens};
}

bool MonomialIdeal::contains(const MultiIndex& m) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const MultiIndex& g) { return leq(g, m); });
}

bool MonomialIdeal::is_artinian() const {
  for (int j = 0; j < shape_.kappa; ++j) {
    bool pure = std::any_of(gens_.begin(), gens_.end(), [&](const MultiIndex& g) {
      for (int k = 0; k < g.size(); ++k) {
        if (k != j && g[k] != 0) return false;
      }
      return true;
    });
    if (!pure) return false;
  }
  return true;
}

std::string MonomialIdeal::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ",";
    std::string mono;
    for (int j = 0; j < gens_[i].size(); ++j) {
      if (gens_[i][j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "t" + std::to_string(j + 1);
      if (gens_[i][j] > 1) mono += "^" + std::to_string(gens_[i][j]);
    }
    s += mono.empty() ? "1" : mono;
  }
  return s + ">";
}

std::vector<MultiIndex> standard_monomials(const MonomialIdeal& J) {
  if (!J.is_artinian()) throw std::invalid_argument("standard_monomials: ideal is not Artinian in tau");
  // Every standard monomial lies below the pure powers.
  std::vector<int> cap(J.shape().kappa, 0);
  for (const auto& g : J.generators()) {
    for (int j = 0; j < g.size(); ++j) cap[j] = std::max(cap[j], g[j]);
  }
  std::vector<MultiIndex> out;
  for (auto& m : box(MultiIndex(cap))) {
    if (!J.contains(m)) out.push_back(m);
  }
  return out;
}

}  // namespace jetdbar
