#include "jetdbar/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace jetdbar {

bool is_conjugate(VarKind k) {
  return k == VarKind::ZetaBar || k == VarKind::TauBar || k == VarKind::ZBar ||
         k == VarKind::WBar;
}

VarKind conjugate(VarKind k) {
  switch (k) {
    case VarKind::Zeta: return VarKind::ZetaBar;
    case VarKind::ZetaBar: return VarKind::Zeta;
    case VarKind::Tau: return VarKind::TauBar;
    case VarKind::TauBar: return VarKind::Tau;
    case VarKind::Z: return VarKind::ZBar;
    case VarKind::ZBar: return VarKind::Z;
    case VarKind::W: return VarKind::WBar;
    case VarKind::WBar: return VarKind::W;
  }
  return k;
}

VarKind output_partner(VarKind k) {
  switch (k) {
    case VarKind::Zeta: return VarKind::Z;
    case VarKind::ZetaBar: return VarKind::ZBar;
    case VarKind::Tau: return VarKind::W;
    case VarKind::TauBar: return VarKind::WBar;
    default: return k;
  }
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Var v, int power) {
  Monomial m;
  m.set_exponent(v, power);
  return m;
}

void Monomial::set_exponent(Var v, int e) {
  if (e < 0 || e > 255) {
    throw std::out_of_range("monomial exponent out of range");
  }
  exps_[v.slot()] = static_cast<std::uint8_t>(e);
}

int Monomial::degree() const {
  int d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (int s = 0; s < kNumVars; ++s) {
    if (exps_[s] > other.exps_[s]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int s = 0; s < kNumVars; ++s) {
    int e = exps_[s] + o.exps_[s];
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    r.exps_[s] = static_cast<std::uint8_t>(e);
  }
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (int s = 0; s < kNumVars; ++s) {
    r.exps_[s] = static_cast<std::uint8_t>(exps_[s] - o.exps_[s]);
  }
  return r;
}

bool Monomial::involves(VarKind k) const {
  int base = static_cast<int>(k) * kMaxAxis;
  for (int i = 0; i < kMaxAxis; ++i) {
    if (exps_[base + i] != 0) return true;
  }
  return false;
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
  int da = degree(), db = o.degree();
  if (da != db) return da <=> db;
  // Lower slot dominates: among equal degrees, a higher power of an earlier
  // variable is larger.
  for (int s = 0; s < kNumVars; ++s) {
    if (exps_[s] != o.exps_[s]) return exps_[s] <=> o.exps_[s];
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- NameTable

std::string NameTable::name(VarKind k) const {
  switch (k) {
    case VarKind::Zeta: return zeta;
    case VarKind::ZetaBar: return zeta_bar;
    case VarKind::Tau: return tau;
    case VarKind::TauBar: return tau_bar;
    case VarKind::Z: return z;
    case VarKind::ZBar: return z_bar;
    case VarKind::W: return w;
    case VarKind::WBar: return w_bar;
  }
  return "?";
}

const NameTable& NameTable::jet() {
  static const NameTable t{};
  return t;
}

const NameTable& NameTable::full() {
  static const NameTable t{"zeta", "zetab", "tau", "taub", "z", "zb", "w", "wb"};
  return t;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(long c) {
  if (c != 0) terms_.emplace(Monomial{}, GaussRational(c));
}

Poly::Poly(GaussRational c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

Poly Poly::var(Var v) {
  if (v.index < 0 || v.index >= kMaxAxis) {
    throw std::out_of_range("variable index out of range");
  }
  return term(GaussRational(1), Monomial::of(v));
}

Poly Poly::term(GaussRational c, Monomial m) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(m, std::move(c));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

GaussRational Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? GaussRational{} : it->second;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int Poly::degree_in(Var v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

bool Poly::involves(VarKind k) const {
  for (const auto& [m, c] : terms_) {
    if (m.involves(k)) return true;
  }
  return false;
}

std::pair<Monomial, GaussRational> Poly::leading() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return *terms_.rbegin();
}

void Poly::add_term(const Monomial& m, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      r.add_term(ma * mb, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::operator-() const { return scaled(GaussRational(-1)); }

Poly Poly::scaled(const GaussRational& c) const {
  Poly r;
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::domain_error("negative polynomial power");
  Poly r(1), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Poly Poly::derivative(Var v) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (e == 0) continue;
    Monomial d = m;
    d.set_exponent(v, e - 1);
    r.add_term(d, c * GaussRational(e));
  }
  return r;
}

Poly Poly::substitute(Var v, const Poly& value) const {
  Poly r;
  std::map<int, Poly> powers;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    Monomial rest = m;
    rest.set_exponent(v, 0);
    if (e == 0) {
      r.add_term(rest, c);
      continue;
    }
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, value.pow(e)).first;
    r += Poly::term(c, rest) * it->second;
  }
  return r;
}

Poly Poly::rename(VarKind from, VarKind to) const {
  if (from == to) return *this;
  Poly r;
  for (const auto& [m, c] : terms_) {
    Monomial n = m;
    for (int i = 0; i < kMaxAxis; ++i) {
      int e = m.exponent({from, i});
      if (e == 0) continue;
      n.set_exponent({from, i}, 0);
      n.set_exponent({to, i}, n.exponent({to, i}) + e);
    }
    r.add_term(n, c);
  }
  return r;
}

Poly Poly::to_output() const {
  return rename(VarKind::Zeta, VarKind::Z)
      .rename(VarKind::ZetaBar, VarKind::ZBar)
      .rename(VarKind::Tau, VarKind::W)
      .rename(VarKind::TauBar, VarKind::WBar);
}

Poly Poly::drop(VarKind k) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    if (!m.involves(k)) r.terms_.emplace(m, c);
  }
  return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (is_zero()) return Poly{};
  auto [lm, lc] = d.leading();
  GaussRational lc_inv = lc.inverse();
  Poly rem = *this;
  Poly quot;
  while (!rem.is_zero()) {
    auto [rm, rc] = rem.leading();
    if (!lm.divides(rm)) return std::nullopt;
    Poly t = Poly::term(rc * lc_inv, rm / lm);
    quot += t;
    rem -= t * d;
  }
  return quot;
}

std::map<std::vector<int>, Poly> Poly::split_by(VarKind k, int count) const {
  std::map<std::vector<int>, Poly> out;
  for (const auto& [m, c] : terms_) {
    std::vector<int> key(count);
    Monomial rest = m;
    for (int i = 0; i < kMaxAxis; ++i) {
      int e = m.exponent({k, i});
      if (e == 0) continue;
      if (i >= count) throw std::out_of_range("variable index beyond split count");
      key[i] = e;
      rest.set_exponent({k, i}, 0);
    }
    out[key].add_term(rest, c);
  }
  return out;
}

std::complex<double> Poly::evaluate(const std::function<std::complex<double>(Var)>& value) const {
  std::array<std::complex<double>, kNumVars> vals{};
  std::array<bool, kNumVars> have{};
  std::complex<double> sum = 0.0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (int s = 0; s < kNumVars; ++s) {
      int e = m.exponent_slot(s);
      if (e == 0) continue;
      if (!have[s]) {
        vals[s] = value(Var::from_slot(s));
        have[s] = true;
      }
      for (int k = 0; k < e; ++k) t *= vals[s];
    }
    sum += t;
  }
  return sum;
}

std::string Poly::to_string(const NameTable& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest monomial first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string coef = c.to_string();
    bool neg = false;
    if (c.is_real() && sgn(c.re()) < 0) {
      neg = true;
      coef = (-c).to_string();
    }
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string body;
    for (int s = 0; s < kNumVars; ++s) {
      int e = m.exponent_slot(s);
      if (e == 0) continue;
      Var v = Var::from_slot(s);
      if (!body.empty()) body += "*";
      body += names.name(v.kind) + std::to_string(v.index + 1);
      if (e > 1) body += "^" + std::to_string(e);
    }
    if (body.empty()) {
      os << coef;
    } else if (coef == "1") {
      os << body;
    } else {
      os << coef << "*" << body;
    }
  }
  return os.str();
}

}  // namespace jetdbar
