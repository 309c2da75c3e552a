#include "jetdbar/hefer.hpp"

#include <algorithm>
#include <functional>

namespace jetdbar {

namespace {

Poly zeta(int j) { return Poly::var(VarKind::Zeta, j); }
Poly tau(int j) { return Poly::var(VarKind::Tau, j); }
Poly zeta_bar(int j) { return Poly::var(VarKind::ZetaBar, j); }
Poly tau_bar(int j) { return Poly::var(VarKind::TauBar, j); }
Poly out_w(int j) { return Poly::var(VarKind::W, j); }
FormExpr dzeta(int j) { return FormExpr::differential(VarKind::Zeta, j); }
FormExpr dtau(int j) { return FormExpr::differential(VarKind::Tau, j); }

std::string first_nonzero(const FormMatrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) {
        return "[" + std::to_string(i) + "," + std::to_string(j) + "] " + m(i, j).to_string(NameTable::full());
      }
    }
  }
  return "0";
}

IdentityCheck zero_check(const std::string& name, const FormMatrix& residual) {
  bool ok = residual.is_zero();
  return {name, ok, ok ? "0" : first_nonzero(residual)};
}

int rank_of(const Resolution& r, int k) { return (k < 0 || k > r.length()) ? 0 : r.ranks[k]; }

long factorial(int r) {
  long f = 1;
  for (int k = 2; k <= r; ++k) f *= k;
  return f;
}

std::vector<Monomial> monomials_up_to(const std::vector<Var>& vars, int degree) {
  std::vector<Monomial> out;
  std::function<void(std::size_t, int, Monomial)> rec = [&](std::size_t i, int left, Monomial m) {
    if (i == vars.size()) {
      out.push_back(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      Monomial t = m;
      t.set_exponent(vars[i], e);
      rec(i + 1, left - e, t);
    }
  };
  rec(0, degree, Monomial{});
  return out;
}

}  // namespace

// ---------------------------------------------------------------- resolutions

PolyMatrix Resolution::map(int k) const {
  if (k >= 1 && k <= length()) return f[k];
  return PolyMatrix(rank_of(*this, k - 1), rank_of(*this, k));
}

std::vector<std::vector<int>> koszul_basis(int kappa, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int j = start; j < kappa; ++j) {
      cur.push_back(j);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Resolution koszul_resolution(const std::vector<Poly>& generators, int n, int kappa) {
  Resolution r;
  r.n = n;
  r.kappa = kappa;
  r.koszul = true;
  r.generators = generators;
  int len = static_cast<int>(generators.size());
  r.f.resize(len + 1);
  for (int k = 0; k <= len; ++k) r.ranks.push_back(static_cast<int>(koszul_basis(len, k).size()));
  for (int k = 1; k <= len; ++k) {
    auto rows = koszul_basis(len, k - 1);
    auto cols = koszul_basis(len, k);
    PolyMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      for (std::size_t pos = 0; pos < cols[c].size(); ++pos) {
        std::vector<int> rest = cols[c];
        rest.erase(rest.begin() + static_cast<long>(pos));
        int row = static_cast<int>(std::find(rows.begin(), rows.end(), rest) - rows.begin());
        Poly entry = generators[cols[c][pos]];
        m(row, static_cast<int>(c)) += (pos % 2 ? -entry : entry);
      }
    }
    r.f[k] = m;
  }
  return r;
}

Resolution koszul_resolution(const MultiIndex& M, int n) {
  std::vector<Poly> gens;
  for (int j = 0; j < M.size(); ++j) gens.push_back(tau(j).pow(M[j] + 1));
  return koszul_resolution(gens, n, M.size());
}

FormMatrix HeferFamily::get(const Resolution& res, int l, int k) const {
  if (k == l && l >= 0 && l <= res.length()) {
    return FormMatrix::identity(res.ranks[l]);
  }
  auto it = table.find({l, k});
  if (it != table.end()) return it->second;
  return FormMatrix(rank_of(res, l), rank_of(res, k));
}

// ---------------------------------------------------------------- matrices

PolyMatrix to_output(const PolyMatrix& m) {
  return m.map([](const Poly& p) { return p.to_output(); });
}

FormMatrix to_forms(const PolyMatrix& m) {
  return m.map([](const Poly& p) { return FormExpr(p); });
}

FormMatrix delta_eta(const FormMatrix& m) {
  return m.map([](const FormExpr& f) { return f.delta_eta(); });
}

FormMatrix signed_matrix(const FormMatrix& m, int sign_exponent) {
  return (sign_exponent % 2 == 0) ? m : -m;
}

// ---------------------------------------------------------------- division

FormExpr hefer_divide(const FormExpr& G) {
  for (const auto& [k, c] : G.terms()) {
    if (!c.is_polynomial()) throw UnsupportedInput("hefer_divide: coefficients must be polynomial");
  }
  if (!G.delta_eta().is_zero()) throw NotClosedError("hefer_divide: delta_eta G is not zero");
  FormExpr total;
  FormExpr cur = G;
  for (VarKind kind : {VarKind::Zeta, VarKind::Tau}) {
    for (int j = 0; j < kMaxAxis; ++j) {
      Var x{kind, j};
      Var y{output_partner(kind), j};
      int bit = gen::d(x);
      std::uint64_t mask = std::uint64_t{1} << bit;
      Poly py = Poly::var(y);
      Poly diff = Poly::var(x) - py;
      FormExpr projected;
      for (const auto& [key, c] : cur.terms()) {
        if (key.word & mask) continue;
        Poly p = c.numerator();
        Poly at = p.substitute(x, py);
        auto q = (p - at).divide_exact(diff);
        if (!q) throw std::logic_error("hefer_divide: divided difference not exact");
        if (!q->is_zero()) {
          total += (FormExpr::generator(bit) * FormExpr::monomial(RatFunc(*q), word_bits(key.word), key.pow))
                       .times_2pii(-1);
        }
        projected += FormExpr::monomial(RatFunc(at), word_bits(key.word), key.pow);
      }
      cur = projected;
    }
  }
  if (!cur.is_zero()) throw NotClosedError("hefer_divide: G does not vanish on the diagonal");
  if (!(total.delta_eta() == G)) throw std::logic_error("hefer_divide: self-check failed");
  return total;
}

FormMatrix hefer_divide(const FormMatrix& G) {
  return G.map([](const FormExpr& g) { return hefer_divide(g); });
}

FormExpr gamma_form(const Poly& gamma) { return hefer_divide(FormExpr(gamma - gamma.to_output())); }

// ---------------------------------------------------------------- Hefer families

HeferFamily koszul_hefer(const Resolution& koszul) {
  if (!koszul.koszul) throw std::invalid_argument("koszul_hefer: resolution is not a Koszul complex");
  int len = koszul.length();
  std::vector<FormExpr> h;
  for (const auto& g : koszul.generators) h.push_back(hefer_divide(FormExpr(g - g.to_output())));

  auto frame = [](const std::vector<int>& I) {
    FormExpr x(1);
    for (int j : I) x = x * FormExpr::generator(gen::e(j));
    return x;
  };
  auto contract_h = [&](const FormExpr& x) {
    FormExpr r;
    for (int j = 0; j < len; ++j) r += h[j] * x.contract(gen::e(j), RatFunc(1));
    return r;
  };

  HeferFamily H;
  for (int k = 1; k <= len; ++k) {
    auto cols = koszul_basis(len, k);
    for (int l = 0; l < k; ++l) {
      auto rows = koszul_basis(len, l);
      FormMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) {
        FormExpr x = frame(cols[c]);
        for (int r = 0; r < k - l; ++r) x = contract_h(x);
        x = x.scaled(RatFunc(GaussRational(mpq_class(mpz_class(1), mpz_class(factorial(k - l))))));
        for (std::size_t rr = 0; rr < rows.size(); ++rr) {
          std::uint64_t fmask = 0;
          for (int j : rows[rr]) fmask |= std::uint64_t{1} << gen::e(j);
          FormExpr entry;
          for (const auto& [key, coeff] : x.terms()) {
            if ((key.word >> gen::kFrameBase) != (fmask >> gen::kFrameBase)) continue;
            // Frame bits sit after every differential, so stripping them keeps the sign.
            entry += FormExpr::monomial(coeff, word_bits(key.word & ~fmask), key.pow);
          }
          m(static_cast<int>(rr), static_cast<int>(c)) = entry;
        }
      }
      H.table[{l, k}] = m;
    }
  }
  return H;
}

HeferFamily koszul_hefer(const MultiIndex& M, int n) { return koszul_hefer(koszul_resolution(M, n)); }

HeferFamily hefer_family(const Resolution& res) {
  if (res.koszul) return koszul_hefer(res);
  HeferFamily H;
  int N = res.length();
  for (int d = 1; d <= N; ++d) {
    for (int l = 0; l + d <= N; ++l) {
      int k = l + d;
      FormMatrix G = H.get(res, l, k - 1) * to_forms(res.map(k)) -
                     signed_matrix(to_forms(to_output(res.map(l + 1))) * H.get(res, l + 1, k), k - l - 1);
      H.table[{l, k}] = hefer_divide(G);
    }
  }
  return H;
}

std::vector<IdentityCheck> check_hefer(const Resolution& res, const HeferFamily& H) {
  std::vector<IdentityCheck> out;
  int N = res.length();
  for (int k = 1; k <= N; ++k) {
    for (int l = 0; l < k; ++l) {
      FormMatrix lhs = delta_eta(H.get(res, l, k));
      FormMatrix rhs = H.get(res, l, k - 1) * to_forms(res.map(k)) -
                       signed_matrix(to_forms(to_output(res.map(l + 1))) * H.get(res, l + 1, k), k - l - 1);
      out.push_back(zero_check("hefer H^" + std::to_string(l) + "_" + std::to_string(k), lhs - rhs));
    }
  }
  return out;
}

std::pair<CHCurrent, int> hefer_times_residue(const MultiIndex& M, int n) {
  int kappa = M.size();
  SpaceShape shape(n, kappa, M);
  Resolution kz = koszul_resolution(M, n);
  HeferFamily H = koszul_hefer(kz);
  FormExpr top = H.get(kz, 0, kappa)(0, 0);
  std::uint64_t dt = 0;
  for (int j = 0; j < kappa; ++j) dt |= std::uint64_t{1} << gen::d(VarKind::Tau, j);
  for (const auto& [key, c] : top.terms()) {
    if (key.word != dt) throw std::logic_error("top Hefer form has a component other than dtau");
  }
  CHCurrent result = CHCurrent::mu_hat(shape).multiply(top.coefficient_of(dt));
  CHCurrent expected(shape);
  for (const auto& alpha : box(M)) {
    Poly wa(1);
    for (int j = 0; j < kappa; ++j) wa = wa * out_w(j).pow(alpha[j]);
    expected.add_term(alpha, FormExpr(wa).times_2pii(-kappa));
  }
  if (result == expected) return {result, 1};
  if (result == -expected) return {result, -1};
  throw std::logic_error("top Hefer form times residue does not match the closed form");
}

// ---------------------------------------------------------------- comparison

std::vector<Poly> lift_through(const PolyMatrix& f, const std::vector<Poly>& y, int n, int kappa) {
  if (static_cast<int>(y.size()) != f.rows()) throw ShapeError("lift_through: size mismatch");
  std::vector<Var> vars;
  for (int j = 0; j < n; ++j) vars.push_back({VarKind::Zeta, j});
  for (int j = 0; j < kappa; ++j) vars.push_back({VarKind::Tau, j});
  int ydeg = 0;
  bool all_zero = true;
  for (const auto& p : y) {
    if (!p.is_zero()) {
      all_zero = false;
      ydeg = std::max(ydeg, p.total_degree());
    }
  }
  if (all_zero) return std::vector<Poly>(f.cols());

  struct Row {
    std::map<int, GaussRational> a;
    GaussRational rhs;
  };
  for (int D = 0; D <= ydeg; ++D) {
    auto monos = monomials_up_to(vars, D);
    int nm = static_cast<int>(monos.size());
    std::map<std::pair<int, Monomial>, Row> eqs;
    for (int r = 0; r < f.rows(); ++r) {
      for (int i = 0; i < f.cols(); ++i) {
        for (const auto& [m, c] : f(r, i).terms()) {
          for (int u = 0; u < nm; ++u) {
            Row& row = eqs[{r, m * monos[u]}];
            row.a[i * nm + u] += c;
          }
        }
      }
      for (const auto& [m, c] : y[r].terms()) eqs[{r, m}].rhs += c;
    }
    std::vector<Row> rows;
    for (auto& [key, row] : eqs) {
      std::erase_if(row.a, [](const auto& kv) { return kv.second.is_zero(); });
      rows.push_back(std::move(row));
    }
    // Reduced row echelon form; free unknowns are set to zero.
    int unknowns = f.cols() * nm;
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (int col = 0; col < unknowns && rank < rows.size(); ++col) {
      std::size_t p = rank;
      while (p < rows.size() && !rows[p].a.count(col)) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[rank], rows[p]);
      GaussRational inv = rows[rank].a.at(col).inverse();
      for (auto& [c, v] : rows[rank].a) v *= inv;
      rows[rank].rhs *= inv;
      for (std::size_t q = 0; q < rows.size(); ++q) {
        if (q == rank) continue;
        auto it = rows[q].a.find(col);
        if (it == rows[q].a.end()) continue;
        GaussRational factor = it->second;
        for (const auto& [c, v] : rows[rank].a) {
          GaussRational& t = rows[q].a[c];
          t -= factor * v;
        }
        std::erase_if(rows[q].a, [](const auto& kv) { return kv.second.is_zero(); });
        rows[q].rhs -= factor * rows[rank].rhs;
      }
      pivot_col.push_back(col);
      ++rank;
    }
    bool consistent = true;
    for (std::size_t q = rank; q < rows.size(); ++q) {
      if (!rows[q].rhs.is_zero()) consistent = false;
    }
    if (!consistent) continue;
    std::vector<Poly> x(f.cols());
    for (std::size_t q = 0; q < rank; ++q) {
      int col = pivot_col[q];
      x[col / nm] += Poly::term(rows[q].rhs, monos[col % nm]);
    }
    return x;
  }
  std::string shown;
  for (const auto& p : y) shown += (shown.empty() ? "" : ", ") + p.to_string(NameTable::full());
  throw LiftError("no lift of [" + shown + "] within degree " + std::to_string(ydeg));
}

ComparisonData comparison_morphism(const Resolution& Fhat, const Resolution& F, const HeferFamily& Hhat,
                                   const HeferFamily& H) {
  if (rank_of(Fhat, 0) != 1 || rank_of(F, 0) != 1) throw ShapeError("comparison: E_0 must have rank 1");
  int n = std::max(Fhat.n, F.n);
  int kappa = std::max(Fhat.kappa, F.kappa);
  ComparisonData data;
  data.a.push_back(PolyMatrix::identity(1));
  for (int k = 1; k <= Fhat.length(); ++k) {
    PolyMatrix Y = data.a[k - 1] * Fhat.map(k);
    PolyMatrix fk = F.map(k);
    PolyMatrix ak(rank_of(F, k), rank_of(Fhat, k));
    for (int c = 0; c < Y.cols(); ++c) {
      std::vector<Poly> col;
      for (int r = 0; r < Y.rows(); ++r) col.push_back(Y(r, c));
      if (fk.cols() == 0) {
        bool zero = std::all_of(col.begin(), col.end(), [](const Poly& p) { return p.is_zero(); });
        if (!zero) throw LiftError("comparison: target complex too short at degree " + std::to_string(k));
        continue;
      }
      auto x = lift_through(fk, col, n, kappa);
      for (int r = 0; r < ak.rows(); ++r) ak(r, c) = x[r];
    }
    data.a.push_back(ak);
  }
  auto a_at = [&](int k) {
    return (k >= 0 && k < static_cast<int>(data.a.size())) ? data.a[k] : PolyMatrix(rank_of(F, k), rank_of(Fhat, k));
  };
  auto C_at = [&](int l, int k) {
    auto it = data.C.find({l, k});
    return it != data.C.end() ? it->second : FormMatrix(rank_of(F, l), rank_of(Fhat, k));
  };
  int Nhat = Fhat.length();
  for (int d = 0; d <= Nhat; ++d) {
    for (int l = 0; l + d <= Nhat && l <= F.length(); ++l) {
      int k = l + d;
      FormMatrix G = H.get(F, l, k) * to_forms(a_at(k)) - to_forms(to_output(a_at(l))) * Hhat.get(Fhat, l, k) -
                     C_at(l, k - 1) * to_forms(Fhat.map(k)) -
                     signed_matrix(to_forms(to_output(F.map(l + 1))) * C_at(l + 1, k), k - l);
      data.C[{l, k}] = hefer_divide(G);
    }
  }
  return data;
}

ComparisonData comparison_morphism(const Resolution& Fhat, const Resolution& F) {
  return comparison_morphism(Fhat, F, hefer_family(Fhat), hefer_family(F));
}

std::vector<IdentityCheck> check_comparison(const Resolution& Fhat, const Resolution& F, const HeferFamily& Hhat,
                                            const HeferFamily& H, const ComparisonData& data) {
  std::vector<IdentityCheck> out;
  for (int k = 1; k < static_cast<int>(data.a.size()); ++k) {
    PolyMatrix lhs = data.a[k - 1] * Fhat.map(k);
    PolyMatrix rhs = F.map(k) * data.a[k];
    out.push_back(zero_check("chain map a_" + std::to_string(k), to_forms(lhs - rhs)));
  }
  auto a_at = [&](int k) {
    return k < static_cast<int>(data.a.size()) ? data.a[k] : PolyMatrix(rank_of(F, k), rank_of(Fhat, k));
  };
  auto C_at = [&](int l, int k) {
    auto it = data.C.find({l, k});
    return it != data.C.end() ? it->second : FormMatrix(rank_of(F, l), rank_of(Fhat, k));
  };
  for (const auto& [lk, C] : data.C) {
    auto [l, k] = lk;
    FormMatrix rhs = H.get(F, l, k) * to_forms(a_at(k)) - to_forms(to_output(a_at(l))) * Hhat.get(Fhat, l, k) -
                     C_at(l, k - 1) * to_forms(Fhat.map(k)) -
                     signed_matrix(to_forms(to_output(F.map(l + 1))) * C_at(l + 1, k), k - l);
    out.push_back(zero_check("comparison C^" + std::to_string(l) + "_" + std::to_string(k), delta_eta(C) - rhs));
  }
  return out;
}

// ---------------------------------------------------------------- worked example

Example9 example9_data() {
  Example9 ex{SpaceShape(2, 2, MultiIndex{1, 1}), {}, {}, {}, CHCurrent(SpaceShape(2, 2, MultiIndex{1, 1})),
              CHCurrent(SpaceShape(2, 2, MultiIndex{1, 1})), CHCurrent(SpaceShape(2, 2, MultiIndex{1, 1})),
              {}, {}, {}, {}, {}, {}};
  const SpaceShape& sh = ex.shape;

  Resolution& r = ex.res;
  r.n = 2;
  r.kappa = 2;
  r.ranks = {1, 4, 4, 1};
  r.f.resize(4);
  r.f[1] = PolyMatrix(1, 4, {tau(0).pow(2), tau(0) * tau(1), tau(1).pow(2), zeta(1) * tau(0) - zeta(0) * tau(1)});
  r.f[2] = PolyMatrix(4, 4, {zeta(1), 0, -tau(1), 0,          //
                             -zeta(0), zeta(1), tau(0), -tau(1),  //
                             0, -zeta(0), 0, tau(0),              //
                             -tau(0), -tau(1), 0, 0});
  r.f[3] = PolyMatrix(4, 1, {tau(1), -tau(0), zeta(1), -zeta(0)});
  ex.koszul = koszul_resolution(MultiIndex{1, 1}, 2);

  // Hand-computed Hefer table; the first entry of H^0_1 is (tau1 + w1) dtau1.
  FormExpr w1 = FormExpr(out_w(0)), w2 = FormExpr(out_w(1));
  FormExpr z1 = FormExpr(zeta(0)), z2 = FormExpr(zeta(1));
  FormExpr t1 = FormExpr(tau(0));
  auto P = [](const FormExpr& f, int k) { return f.times_2pii(-k); };
  FormExpr O;
  ex.printed.table[{0, 1}] = FormMatrix(1, 4, {P((t1 + w1) * dtau(0), 1), P(t1 * dtau(1) + w2 * dtau(0), 1),
                                               P((FormExpr(tau(1)) + w2) * dtau(1), 1),
                                               P(-(z1 * dtau(1)) + z2 * dtau(0) + w1 * dzeta(1) - w2 * dzeta(0), 1)});
  ex.printed.table[{1, 2}] = FormMatrix(4, 4, {P(dzeta(1), 1), O, P(-dtau(1), 1), O,                           //
                                               P(-dzeta(0), 1), P(dzeta(1), 1), P(dtau(0), 1), P(-dtau(1), 1),  //
                                               O, P(-dzeta(0), 1), O, P(dtau(0), 1),                            //
                                               P(-dtau(0), 1), P(-dtau(1), 1), O, O});
  ex.printed.table[{2, 3}] = FormMatrix(4, 1, {P(dtau(1), 1), P(-dtau(0), 1), P(dzeta(1), 1), P(-dzeta(0), 1)});
  ex.printed.table[{0, 2}] = FormMatrix(
      1, 4,
      {P(w1 * dzeta(1) * dtau(0) - w2 * dzeta(0) * dtau(0), 2),
       P(z2 * dtau(0) * dtau(1) + w1 * dzeta(1) * dtau(1) - w2 * dzeta(0) * dtau(1), 2),
       P((t1 + w1) * dtau(0) * dtau(1), 2), P(w2 * dtau(0) * dtau(1), 2)});
  ex.printed.table[{1, 3}] = FormMatrix(4, 1, {P(-(dzeta(1) * dtau(1)), 2), P(dzeta(0) * dtau(1) + dzeta(1) * dtau(0), 2),
                                               P(-(dzeta(0) * dtau(0)), 2), P(dtau(0) * dtau(1), 2)});
  ex.printed.table[{0, 3}] =
      FormMatrix(1, 1, {P(w1 * dzeta(1) * dtau(0) * dtau(1) - w2 * dzeta(0) * dtau(0) * dtau(1), 3)});

  ex.mu0 = CHCurrent::basis(sh, MultiIndex{1, 1});
  ex.mu1 = CHCurrent::basis(sh, MultiIndex{0, 0});
  ex.mu2 = CHCurrent::basis(sh, MultiIndex{1, 0}, FormExpr(zeta(0))) +
           CHCurrent::basis(sh, MultiIndex{0, 1}, FormExpr(zeta(1)));

  Poly norm2 = zeta(0) * zeta_bar(0) + zeta(1) * zeta_bar(1);
  auto over = [&](const Poly& p, int power) { return FormExpr(RatFunc::quotient(p, norm2, power)); };
  ex.R2 = {ex.mu1.multiply(over(zeta_bar(0), 1)), ex.mu1.multiply(over(zeta_bar(1), 1)),
           ex.mu2.multiply(over(zeta_bar(0), 1)), ex.mu2.multiply(over(zeta_bar(1), 1))};
  FormExpr r3 = over(zeta_bar(0), 2) * FormExpr::differential(VarKind::ZetaBar, 1) -
                over(zeta_bar(1), 2) * FormExpr::differential(VarKind::ZetaBar, 0);
  ex.R3 = {ex.mu2.multiply(r3)};

  Poly full2 = norm2 + tau(0) * tau_bar(0) + tau(1) * tau_bar(1);
  ex.sigma3 = Matrix<RatFunc>(1, 4, {RatFunc::quotient(tau_bar(1), full2), RatFunc::quotient(-tau_bar(0), full2),
                                     RatFunc::quotient(zeta_bar(1), full2), RatFunc::quotient(-zeta_bar(0), full2)});
  ex.a0 = PolyMatrix::identity(1);
  ex.a1 = PolyMatrix(4, 2, {1, 0, 0, 0, 0, 1, 0, 0});
  ex.a2 = PolyMatrix(4, 1, {0, 0, tau(1), tau(0)});
  return ex;
}

std::vector<IdentityCheck> example9_checks(const Example9& ex, const std::string& group) {
  bool all = group == "all";
  if (!all && group != "complex" && group != "hefer" && group != "currents") {
    throw std::invalid_argument("unknown example9 check group '" + group + "'");
  }
  std::vector<IdentityCheck> out;
  auto current_check = [](const std::string& name, const CurrentVector& v) {
    bool ok = is_zero(v);
    std::string witness = "0";
    if (!ok) {
      for (const auto& c : v) {
        if (!c.is_zero()) {
          witness = c.to_json().dump();
          break;
        }
      }
    }
    return IdentityCheck{name, ok, witness};
  };
  const Resolution& r = ex.res;
  if (all || group == "complex") {
    out.push_back(zero_check("f1*f2 = 0", to_forms(r.f[1] * r.f[2])));
    out.push_back(zero_check("f2*f3 = 0", to_forms(r.f[2] * r.f[3])));
    Matrix<RatFunc> f3 = r.f[3].map([](const Poly& p) { return RatFunc(p); });
    Matrix<RatFunc> prod = ex.sigma3 * f3;
    prod(0, 0) -= RatFunc(1);
    out.push_back(zero_check("sigma3*f3 = 1", prod.map([](const RatFunc& c) { return FormExpr(c); })));
  }
  if (all || group == "currents") {
    FormMatrix f2 = to_forms(r.f[2]);
    FormMatrix f3 = to_forms(r.f[3]);
    out.push_back(current_check("f2*R2 = 0", apply_matrix(f2, ex.R2)));
    out.push_back(current_check("f3*R3 = dbar R2", apply_matrix(f3, ex.R3, true) - dbar(ex.R2)));
    CurrentVector a2mu0;
    for (int i = 0; i < 4; ++i) a2mu0.push_back(ex.mu0.multiply(FormExpr(ex.a2(i, 0))));
    FormMatrix proj(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        RatFunc v = RatFunc(r.f[3](i, 0)) * ex.sigma3(0, j);
        proj(i, j) = FormExpr(i == j ? RatFunc(1) - v : -v);
      }
    }
    out.push_back(current_check("R2 = (I - f3*sigma3)*a2*mu0", apply_matrix(proj, a2mu0) - ex.R2));
  }
  if (all || group == "hefer") {
    for (auto& c : check_hefer(r, ex.printed)) {
      c.name = "printed " + c.name;
      out.push_back(c);
    }
    ComparisonData cmp = comparison_morphism(ex.koszul, r, koszul_hefer(ex.koszul), ex.printed);
    out.push_back(zero_check("comparison a_1 matches", to_forms(cmp.a[1] - ex.a1)));
    out.push_back(zero_check("comparison a_2 matches", to_forms(cmp.a[2] - ex.a2)));
    for (auto& c : check_comparison(ex.koszul, r, koszul_hefer(ex.koszul), ex.printed, cmp)) out.push_back(c);
    FormMatrix g = to_forms(r.f[1]) - to_forms(to_output(r.f[1]));
    FormMatrix h01 = hefer_divide(g);
    out.push_back(zero_check("divided H^0_1 satisfies delta H = f1(zeta) - f1(z)", delta_eta(h01) - g));
  }
  return out;
}

}  // namespace jetdbar
