#pragma once

#include <vector>

#include "jetdbar/currents.hpp"
#include "jetdbar/hefer.hpp"

namespace jetdbar {

/// Every cap M with 1 <= kappa <= max_kappa and |M| <= max_degree.
std::vector<MultiIndex> caps_up_to(int max_kappa, int max_degree);

/// annihilates(mu-hat, tau^beta) against membership in <tau^(M+1)> for every
/// beta <= M + 1.
std::vector<IdentityCheck> duality_suite(const MultiIndex& M, int n = 1);
/// The Hefer relations of the Koszul Hefer family for M.
std::vector<IdentityCheck> hefer_suite(const MultiIndex& M, int n = 0);
/// gamma J inside <tau^(M+1)> for every basis element, each gamma minimal
/// and every annihilating monomial divisible by some gamma.
std::vector<IdentityCheck> annihilator_suite(const MonomialIdeal& J);

bool all_pass(const std::vector<IdentityCheck>& checks);

}  // namespace jetdbar
