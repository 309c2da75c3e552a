#include "jetdbar/ratfunc.hpp"

#include <algorithm>
#include <stdexcept>

namespace jetdbar {

namespace {

// Scale a nonzero polynomial to leading coefficient 1; returns the scale removed.
GaussRational make_monic(Poly& p) {
  GaussRational lc = p.leading().second;
  if (!lc.is_one()) p = p.scaled(lc.inverse());
  return lc;
}

}  // namespace

RatFunc RatFunc::quotient(Poly num, const Poly& den, int power) {
  RatFunc r(std::move(num));
  return r.divided_by(den, power);
}

Poly RatFunc::denominator_product() const {
  Poly d(1);
  for (const auto& [f, e] : den_) d *= f.pow(e);
  return d;
}

bool RatFunc::involves(VarKind k) const { return num_.involves(k) || denominator_involves(k); }

bool RatFunc::denominator_involves(VarKind k) const {
  return std::any_of(den_.begin(), den_.end(), [k](const Factor& f) { return f.first.involves(k); });
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  std::vector<Factor> merged;
  for (auto& [f, e] : den_) {
    if (e == 0) continue;
    if (f.is_constant()) {
      num_ = num_.scaled(f.constant_term().inverse());
      // constant^e with e > 1
      for (int k = 1; k < e; ++k) num_ = num_.scaled(f.constant_term().inverse());
      continue;
    }
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Factor& g) { return g.first == f; });
    if (it == merged.end()) {
      merged.emplace_back(std::move(f), e);
    } else {
      it->second += e;
    }
  }
  for (auto& [f, e] : merged) {
    while (e > 0) {
      auto q = num_.divide_exact(f);
      if (!q) break;
      num_ = std::move(*q);
      --e;
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Factor& f) { return f.second == 0; }),
               merged.end());
  std::sort(merged.begin(), merged.end(), [](const Factor& a, const Factor& b) {
    return a.first.to_string(NameTable::full()) < b.first.to_string(NameTable::full());
  });
  den_ = std::move(merged);
}

RatFunc RatFunc::divided_by(const Poly& d, int power) const {
  if (d.is_zero()) throw std::domain_error("rational function division by zero");
  if (power < 0) throw std::domain_error("negative denominator power");
  RatFunc r = *this;
  if (power == 0) return r;
  Poly f = d;
  GaussRational lc = make_monic(f);
  GaussRational s = lc.inverse();
  GaussRational scale = 1;
  for (int k = 0; k < power; ++k) scale *= s;
  r.num_ = r.num_.scaled(scale);
  r.den_.emplace_back(std::move(f), power);
  r.normalize();
  return r;
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero rational function");
  RatFunc r(denominator_product());
  return r.divided_by(num_);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  // Common denominator: union of factors with max exponents.
  std::vector<Factor> lcm = den_;
  for (const auto& [f, e] : o.den_) {
    auto it = std::find_if(lcm.begin(), lcm.end(), [&](const Factor& g) { return g.first == f; });
    if (it == lcm.end()) {
      lcm.emplace_back(f, e);
    } else {
      it->second = std::max(it->second, e);
    }
  }
  auto lift = [&](const RatFunc& x) {
    Poly n = x.num_;
    for (const auto& [f, e] : lcm) {
      auto it = std::find_if(x.den_.begin(), x.den_.end(), [&](const Factor& g) { return g.first == f; });
      int have = it == x.den_.end() ? 0 : it->second;
      if (e > have) n *= f.pow(e - have);
    }
    return n;
  };
  num_ = lift(*this) + lift(o);
  den_ = std::move(lcm);
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ *= o.num_;
  if (num_.is_zero()) {
    den_.clear();
    return *this;
  }
  den_.insert(den_.end(), o.den_.begin(), o.den_.end());
  normalize();
  return *this;
}

RatFunc RatFunc::operator-() const { return scaled(GaussRational(-1)); }

RatFunc RatFunc::scaled(const GaussRational& c) const {
  RatFunc r = *this;
  r.num_ = r.num_.scaled(c);
  if (r.num_.is_zero()) r.den_.clear();
  return r;
}

RatFunc RatFunc::derivative(Var v) const {
  // d(N / prod F^e) = (N' prod F - N sum e F' prod_{j!=i} F) / (D prod F)
  if (den_.empty()) return RatFunc(num_.derivative(v));
  Poly prod(1);
  for (const auto& [f, e] : den_) prod *= f;
  Poly top = num_.derivative(v) * prod;
  for (std::size_t i = 0; i < den_.size(); ++i) {
    Poly others(1);
    for (std::size_t j = 0; j < den_.size(); ++j) {
      if (j != i) others *= den_[j].first;
    }
    top -= num_ * den_[i].first.derivative(v).scaled(GaussRational(den_[i].second)) * others;
  }
  RatFunc r(std::move(top));
  r.den_ = den_;
  for (auto& [f, e] : r.den_) ++e;
  r.normalize();
  return r;
}

RatFunc RatFunc::substitute(Var v, const Poly& value) const {
  RatFunc r(num_.substitute(v, value));
  for (const auto& [f, e] : den_) {
    Poly g = f.substitute(v, value);
    if (g.is_zero()) throw std::domain_error("substitution makes a denominator vanish");
    r = r.divided_by(g, e);
  }
  return r;
}

RatFunc RatFunc::rename(VarKind from, VarKind to) const {
  RatFunc r(num_.rename(from, to));
  for (const auto& [f, e] : den_) r = r.divided_by(f.rename(from, to), e);
  return r;
}

RatFunc RatFunc::to_output() const {
  RatFunc r(num_.to_output());
  for (const auto& [f, e] : den_) r = r.divided_by(f.to_output(), e);
  return r;
}

RatFunc RatFunc::zero_kind(VarKind k) const {
  RatFunc r(num_.drop(k));
  for (const auto& [f, e] : den_) {
    Poly g = f.drop(k);
    if (g.is_zero()) throw std::domain_error("denominator vanishes when variables are set to zero");
    r = r.divided_by(g, e);
  }
  return r;
}

std::complex<double> RatFunc::evaluate(const std::function<std::complex<double>(Var)>& value) const {
  std::complex<double> v = num_.evaluate(value);
  for (const auto& [f, e] : den_) {
    std::complex<double> d = f.evaluate(value);
    for (int k = 0; k < e; ++k) v /= d;
  }
  return v;
}

std::string RatFunc::to_string(const NameTable& names) const {
  if (den_.empty()) return num_.to_string(names);
  std::string out = "(" + num_.to_string(names) + ")/(";
  bool first = true;
  for (const auto& [f, e] : den_) {
    if (!first) out += "*";
    first = false;
    out += "(" + f.to_string(names) + ")";
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out + ")";
}

}  // namespace jetdbar
