#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetdbar/currents.hpp"
#include "jetdbar/form.hpp"
#include "jetdbar/matrix.hpp"
#include "jetdbar/multiindex.hpp"

namespace jetdbar {

using PolyMatrix = Matrix<Poly>;
using FormMatrix = Matrix<FormExpr>;

/// delta_eta applied to a form is not zero where it must be.
class NotClosedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Membership lift not found within the degree bound.
class LiftError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Free resolution 0 -> E_N -> ... -> E_0 with matrices f_k : E_k -> E_{k-1}
/// whose entries are polynomials in (zeta, tau).
struct Resolution {
  int n = 0;
  int kappa = 1;
  std::vector<int> ranks;       // ranks[k] = rank of E_k
  std::vector<PolyMatrix> f;    // f[k] for k >= 1; f[0] unused
  bool koszul = false;
  std::vector<Poly> generators;  // Koszul generators when koszul is set

  int length() const { return static_cast<int>(ranks.size()) - 1; }
  /// f_k, or a zero matrix of the right shape outside 1..length.
  PolyMatrix map(int k) const;
};

/// Koszul complex of tau_j^(M_j+1), j = 1..kappa, over C^n x C^kappa.
Resolution koszul_resolution(const MultiIndex& M, int n = 0);
/// Koszul complex of arbitrary generators (a complete intersection).
Resolution koszul_resolution(const std::vector<Poly>& generators, int n, int kappa);
/// Basis subsets of Lambda^k in the order used for matrix indices.
std::vector<std::vector<int>> koszul_basis(int kappa, int k);

/// Table (l, k) -> H^l_k : E_k -> E_l, matrices of holomorphic forms.
struct HeferFamily {
  std::map<std::pair<int, int>, FormMatrix> table;
  /// H^l_k, identity for k == l, zero outside the table.
  FormMatrix get(const Resolution& res, int l, int k) const;
};

struct IdentityCheck {
  std::string name;
  bool ok = false;
  std::string residual;  // "0" or the offending expression
};

PolyMatrix to_output(const PolyMatrix& m);
FormMatrix to_forms(const PolyMatrix& m);
FormMatrix delta_eta(const FormMatrix& m);
/// (-1)^sign times the matrix.
FormMatrix signed_matrix(const FormMatrix& m, int sign_exponent);

/// C with delta_eta C = G by axis-wise telescoping; verified before returning.
FormExpr hefer_divide(const FormExpr& G);
FormMatrix hefer_divide(const FormMatrix& G);
/// Gamma with delta_eta Gamma = gamma(zeta,tau) - gamma(z,w).
FormExpr gamma_form(const Poly& gamma);

/// Hefer forms of a Koszul resolution by contraction with powers of h.
HeferFamily koszul_hefer(const Resolution& koszul);
HeferFamily koszul_hefer(const MultiIndex& M, int n = 0);
/// Hefer forms for any resolution, built inductively with hefer_divide.
HeferFamily hefer_family(const Resolution& res);
/// The relation delta H^l_k = H^l_{k-1} f_k(zeta) - (-1)^(k-l-1) f_{l+1}(z) H^{l+1}_k for all l < k.
std::vector<IdentityCheck> check_hefer(const Resolution& res, const HeferFamily& H);
/// The top Koszul Hefer form contracted against mu-hat: a current with
/// coefficients in w. Returns also the global sign relative to
/// (2 pi i)^-kappa sum_alpha w^alpha [alpha].
std::pair<CHCurrent, int> hefer_times_residue(const MultiIndex& M, int n);

struct ComparisonData {
  std::vector<PolyMatrix> a;  // a[k] : Fhat_k -> F_k
  std::map<std::pair<int, int>, FormMatrix> C;
};

/// Chain map with a_0 = identity and correction forms for a : (Fhat,fhat) -> (F,f).
ComparisonData comparison_morphism(const Resolution& Fhat, const Resolution& F, const HeferFamily& Hhat,
                                   const HeferFamily& H);
ComparisonData comparison_morphism(const Resolution& Fhat, const Resolution& F);
std::vector<IdentityCheck> check_comparison(const Resolution& Fhat, const Resolution& F, const HeferFamily& Hhat,
                                            const HeferFamily& H, const ComparisonData& data);

/// Solve f x = y for a polynomial column x (bounded-degree linear algebra).
std::vector<Poly> lift_through(const PolyMatrix& f, const std::vector<Poly>& y, int n, int kappa);

/// Worked non-Cohen-Macaulay example over C^2 x C^2 with
/// J = <tau1^2, tau1 tau2, tau2^2, zeta2 tau1 - zeta1 tau2>.
struct Example9 {
  SpaceShape shape;  // n = 2, kappa = 2, M = (1,1)
  Resolution res;
  Resolution koszul;
  HeferFamily printed;  // the hand-computed Hefer table
  CHCurrent mu0, mu1, mu2;
  CurrentVector R2, R3;
  Matrix<RatFunc> sigma3;
  PolyMatrix a0, a1, a2;
};

Example9 example9_data();
/// Named identity checks; group is one of complex, hefer, currents, all.
std::vector<IdentityCheck> example9_checks(const Example9& ex, const std::string& group = "all");

}  // namespace jetdbar
