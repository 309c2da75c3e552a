#include "jetdbar/jet.hpp"

#include "jetdbar/parse.hpp"

namespace jetdbar {

JetPoly::JetPoly(SpaceShape shape, const Poly& p) : shape_(std::move(shape)) {
  for (VarKind k : {VarKind::TauBar, VarKind::Z, VarKind::ZBar, VarKind::W, VarKind::WBar}) {
    if (p.involves(k)) throw std::invalid_argument("jet polynomial may only involve zeta, zetabar and tau");
  }
  for (int j = shape_.kappa; j < kMaxAxis; ++j) {
    if (p.involves(Var{VarKind::Tau, j})) throw ShapeError("tau index exceeds kappa");
  }
  for (int j = shape_.n; j < kMaxAxis; ++j) {
    if (p.involves(Var{VarKind::Zeta, j}) || p.involves(Var{VarKind::ZetaBar, j})) {
      throw ShapeError("zeta index exceeds n");
    }
  }
  for (auto& [key, c] : p.split_by(VarKind::Tau, shape_.kappa)) add(MultiIndex(key), c);
}

JetPoly JetPoly::monomial(const SpaceShape& shape, const MultiIndex& m, const Poly& coeff) {
  if (m.size() != shape.kappa) throw ShapeError("monomial exponent length differs from kappa");
  JetPoly r(shape);
  r.add(m, coeff);
  return r;
}

JetPoly JetPoly::parse(const std::string& text, const SpaceShape& shape) {
  return JetPoly(shape, parse_poly(text));
}

Poly JetPoly::coefficient(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Poly{} : it->second;
}

Poly JetPoly::to_poly() const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    Monomial t;
    for (int j = 0; j < m.size(); ++j) t.set_exponent({VarKind::Tau, j}, m[j]);
    r += c * Poly::term(1, t);
  }
  return r;
}

void JetPoly::add(const MultiIndex& m, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void JetPoly::check_shape(const JetPoly& o) const {
  if (!(shape_ == o.shape_)) throw ShapeError("jet polynomials have different shapes");
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
  check_shape(o);
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
  check_shape(o);
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
  a.check_shape(b);
  JetPoly r(a.shape_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add(ma + mb, ca * cb);
  }
  return r;
}

JetPoly normal_form(const JetPoly& p, const MonomialIdeal& J) {
  if (!(p.shape() == J.shape())) throw ShapeError("normal_form: shape mismatch");
  JetPoly r(p.shape());
  for (const auto& [m, c] : p.terms()) {
    if (!J.contains(m)) r += JetPoly::monomial(p.shape(), m, c);
  }
  return r;
}

JetPoly jet_mul(const JetPoly& p, const JetPoly& q, const MonomialIdeal& J) {
  return normal_form(normal_form(p, J) * normal_form(q, J), J);
}

}  // namespace jetdbar
