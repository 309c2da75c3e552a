#include "jetdbar/suites.hpp"

#include <algorithm>

namespace jetdbar {

namespace {

std::string idx(const MultiIndex& m) {
  std::string s = "(";
  for (int j = 0; j < m.size(); ++j) s += (j ? "," : "") + std::to_string(m[j]);
  return s + ")";
}

MultiIndex exponent(const JetPoly& g) {
  if (g.terms().size() != 1) throw UnsupportedInput("annihilator element is not a monomial");
  return g.terms().begin()->first;
}

}  // namespace

std::vector<MultiIndex> caps_up_to(int max_kappa, int max_degree) {
  std::vector<MultiIndex> out;
  for (int kappa = 1; kappa <= max_kappa; ++kappa)
    for (const auto& M : box(MultiIndex(std::vector<int>(kappa, max_degree))))
      if (M.degree() <= max_degree) out.push_back(M);
  return out;
}

std::vector<IdentityCheck> duality_suite(const MultiIndex& M, int n) {
  SpaceShape s = SpaceShape::with_caps(n, M);
  MonomialIdeal I = MonomialIdeal::complete_intersection(s);
  CHCurrent mu = CHCurrent::mu_hat(s);
  std::vector<IdentityCheck> out;
  for (const auto& beta : box(s.M_plus_one())) {
    bool kills = annihilates(mu, JetPoly::monomial(s, beta));
    bool member = I.contains(beta);
    out.push_back({"M=" + idx(M) + " beta=" + idx(beta), kills == member,
                   kills == member ? "0" : (kills ? "annihilated but not in the ideal" : "in the ideal but not annihilated")});
  }
  return out;
}

std::vector<IdentityCheck> hefer_suite(const MultiIndex& M, int n) {
  Resolution r = koszul_resolution(M, n);
  auto checks = check_hefer(r, koszul_hefer(r));
  for (auto& c : checks) c.name = "M=" + idx(M) + " " + c.name;
  return checks;
}

std::vector<IdentityCheck> annihilator_suite(const MonomialIdeal& J) {
  const SpaceShape& s = J.shape();
  MonomialIdeal I = MonomialIdeal::complete_intersection(s);
  auto annihilating = [&](const MultiIndex& g) {
    return std::all_of(J.generators().begin(), J.generators().end(),
                       [&](const MultiIndex& p) { return I.contains(g + p); });
  };
  std::vector<MultiIndex> gammas;
  for (const auto& g : annihilator_basis(J)) gammas.push_back(exponent(g));
  std::vector<IdentityCheck> out;
  const std::string tag = J.to_string() + " ";
  for (const auto& g : gammas) {
    out.push_back({tag + "gamma=" + idx(g) + " annihilates", annihilating(g), annihilating(g) ? "0" : idx(g)});
    bool minimal = true;
    for (int j = 0; j < g.size(); ++j)
      if (g[j] > 0 && annihilating(g - MultiIndex::unit(g.size(), j))) minimal = false;
    out.push_back({tag + "gamma=" + idx(g) + " minimal", minimal, minimal ? "0" : idx(g)});
  }
  // Complete: the cap box M+1 holds every minimal annihilator.
  for (const auto& b : box(s.M_plus_one())) {
    if (!annihilating(b)) continue;
    bool covered = std::any_of(gammas.begin(), gammas.end(), [&](const MultiIndex& g) { return leq(g, b); });
    if (!covered) out.push_back({tag + "complete", false, idx(b)});
  }
  out.push_back({tag + "nonempty", !gammas.empty(), gammas.empty() ? "empty basis" : "0"});
  return out;
}

bool all_pass(const std::vector<IdentityCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.ok; });
}

}  // namespace jetdbar
