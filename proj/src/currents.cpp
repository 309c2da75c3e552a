#include "jetdbar/currents.hpp"

#include <algorithm>
#include <bit>

#include "jetdbar/parse.hpp"

namespace jetdbar {

namespace {

bool contains_fiber_data(const FormExpr& c) {
  for (const auto& [k, v] : c.terms()) {
    for (int j = 0; j < kMaxAxis; ++j) {
      if (k.word >> gen::d(VarKind::Tau, j) & 1) return true;
      if (k.word >> gen::d(VarKind::TauBar, j) & 1) return true;
    }
    if (v.involves(VarKind::Tau) || v.involves(VarKind::TauBar)) return true;
  }
  return false;
}

FormExpr zeta_volume(int n) {
  FormExpr v(1);
  for (int j = 0; j < n; ++j) v = v * FormExpr::differential(VarKind::Zeta, j);
  return v;
}

}  // namespace

CHCurrent CHCurrent::basis(const SpaceShape& shape, const MultiIndex& alpha, const FormExpr& c) {
  CHCurrent mu(shape);
  mu.add_term(alpha, c);
  return mu;
}

FormExpr CHCurrent::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? FormExpr{} : it->second;
}

void CHCurrent::add_term(const MultiIndex& alpha, const FormExpr& c) {
  if (alpha.size() != shape_.kappa) throw ShapeError("current index length differs from kappa");
  if (c.is_zero()) return;
  if (contains_fiber_data(c)) throw UnsupportedInput("current coefficients may not involve tau, taubar or their differentials");
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void CHCurrent::check_shape(const CHCurrent& o) const {
  if (!(shape_ == o.shape_)) throw ShapeError("currents have different shapes");
}

CHCurrent& CHCurrent::operator+=(const CHCurrent& o) {
  check_shape(o);
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

CHCurrent& CHCurrent::operator-=(const CHCurrent& o) {
  check_shape(o);
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

CHCurrent CHCurrent::operator-() const {
  CHCurrent r(shape_);
  for (const auto& [a, c] : terms_) r.terms_.emplace(a, -c);
  return r;
}

CHCurrent CHCurrent::mul_monomial(const MultiIndex& beta) const {
  if (beta.size() != shape_.kappa) throw ShapeError("monomial length differs from kappa");
  CHCurrent r(shape_);
  for (const auto& [a, c] : terms_) {
    if (leq(beta, a)) r.terms_.emplace(a - beta, c);
  }
  return r;
}

CHCurrent CHCurrent::multiply(const JetPoly& p) const {
  if (p.shape().kappa != shape_.kappa) throw ShapeError("jet and current differ in kappa");
  CHCurrent r(shape_);
  for (const auto& [m, c] : p.terms()) {
    CHCurrent shifted = mul_monomial(m);
    for (const auto& [a, coeff] : shifted.terms_) r.add_term(a, FormExpr(c) * coeff);
  }
  return r;
}

CHCurrent CHCurrent::multiply(const FormExpr& s) const {
  CHCurrent r(shape_);
  FormExpr base = s.kill_kind(VarKind::TauBar);
  for (const auto& [key, c] : base.terms()) {
    for (int j = 0; j < kMaxAxis; ++j) {
      if (key.word >> gen::d(VarKind::Tau, j) & 1) {
        throw UnsupportedInput("dtau in a smooth multiplier of a current");
      }
    }
    if (c.denominator_involves(VarKind::Tau)) throw UnsupportedInput("tau in the denominator of a current multiplier");
    Poly den = c.denominator_product();
    for (const auto& [exps, part] : c.numerator().split_by(VarKind::Tau, shape_.kappa)) {
      RatFunc coeff = RatFunc::quotient(part, den);
      FormExpr factor = FormExpr::monomial(coeff, word_bits(key.word), key.pow);
      CHCurrent shifted = mul_monomial(MultiIndex(exps));
      for (const auto& [a, ca] : shifted.terms_) r.add_term(a, factor * ca);
    }
  }
  return r;
}

CHCurrent CHCurrent::dbar() const {
  CHCurrent r(shape_);
  for (const auto& [a, c] : terms_) r.add_term(a, c.dbar({VarKind::ZetaBar, VarKind::ZBar}));
  return r;
}

CHCurrent CHCurrent::parity_twisted() const {
  CHCurrent r(shape_);
  for (const auto& [a, c] : terms_) {
    FormExpr t;
    for (const auto& [k, v] : c.terms()) {
      int deg = std::popcount(k.word);
      t += FormExpr::monomial(deg % 2 ? -v : v, word_bits(k.word), k.pow);
    }
    r.add_term(a, t);
  }
  return r;
}

nlohmann::json CHCurrent::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [a, c] : terms_) {
    for (const auto& term : c.to_json()) {
      nlohmann::json t = term;
      t["alpha"] = a.entries();
      out.push_back(t);
    }
  }
  return out;
}

CHCurrent CHCurrent::from_json(const nlohmann::json& j, const SpaceShape& shape) {
  if (!j.is_array()) throw ParseError("current must be a JSON array of terms", 0);
  CHCurrent mu(shape);
  std::size_t idx = 0;
  for (const auto& t : j) {
    if (!t.contains("alpha")) throw ParseError("current term without 'alpha'", idx);
    MultiIndex a(t.at("alpha").get<std::vector<int>>());
    mu.add_term(a, FormExpr::from_json(nlohmann::json::array({t})));
    ++idx;
  }
  return mu;
}

FormExpr pair(const CHCurrent& mu, const FormExpr& phi) {
  const SpaceShape& sh = mu.shape();
  FormExpr f = phi.kill_kind(VarKind::TauBar);
  for (const auto& [k, c] : f.terms()) {
    if (!c.is_polynomial()) throw UnsupportedInput("pair: test form coefficients must be polynomial");
  }
  FormExpr dzeta = zeta_volume(sh.n);
  FormExpr out;
  for (const auto& [alpha, a] : mu.terms()) {
    FormExpr d = f;
    for (int j = 0; j < sh.kappa; ++j) {
      for (int e = 0; e < alpha[j]; ++e) {
        d = d.map_coefficients([j](const RatFunc& c) { return c.derivative(Var{VarKind::Tau, j}); });
      }
    }
    d = d.kill_kind(VarKind::Tau);
    if (d.is_zero()) continue;
    RatFunc scale = RatFunc(GaussRational(mpq_class(mpz_class(1), mpz_class(alpha.factorial()))));
    out += (a * d.scaled(scale) * dzeta).times_2pii(sh.kappa);
  }
  return out;
}

bool annihilates(const CHCurrent& mu, const JetPoly& p) { return mu.multiply(p).is_zero(); }

std::vector<JetPoly> annihilator_basis(const MonomialIdeal& J) {
  if (!J.is_artinian()) throw UnsupportedInput("annihilator_basis: ideal is not Artinian in tau");
  const SpaceShape& sh = J.shape();
  MonomialIdeal I = MonomialIdeal::complete_intersection(sh);
  std::vector<MultiIndex> quotient;
  for (const auto& g : box(sh.M)) {
    bool ok = std::all_of(J.generators().begin(), J.generators().end(),
                          [&](const MultiIndex& p) { return I.contains(g + p); });
    if (ok) quotient.push_back(g);
  }
  std::vector<JetPoly> out;
  for (const auto& g : quotient) {
    bool minimal = std::none_of(quotient.begin(), quotient.end(),
                                [&](const MultiIndex& h) { return !(h == g) && leq(h, g); });
    if (minimal) out.push_back(JetPoly::monomial(sh, g));
  }
  return out;
}

CurrentVector apply_matrix(const Matrix<FormExpr>& m, const CurrentVector& v, bool odd) {
  if (m.cols() != static_cast<int>(v.size())) throw ShapeError("matrix/current vector size mismatch");
  if (v.empty()) throw ShapeError("empty current vector");
  CurrentVector out;
  for (int i = 0; i < m.rows(); ++i) {
    CHCurrent acc(v[0].shape());
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      acc += (odd ? v[j].parity_twisted() : v[j]).multiply(m(i, j));
    }
    out.push_back(acc);
  }
  return out;
}

bool is_zero(const CurrentVector& v) {
  return std::all_of(v.begin(), v.end(), [](const CHCurrent& c) { return c.is_zero(); });
}

CurrentVector dbar(const CurrentVector& v) {
  CurrentVector out;
  for (const auto& c : v) out.push_back(c.dbar());
  return out;
}

CurrentVector operator-(const CurrentVector& a, const CurrentVector& b) {
  if (a.size() != b.size()) throw ShapeError("current vector size mismatch");
  CurrentVector out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

}  // namespace jetdbar
