#include "jetdbar/bench.hpp"

#include <algorithm>
#include <cmath>

namespace jetdbar {

void BenchConfig::validate() const {
  if (ps.empty()) throw std::invalid_argument("bench: empty p list");
  for (double p : ps)
    if (!(p >= 1)) throw std::invalid_argument("bench: every p must be at least 1");
  if (trials < 1) throw std::invalid_argument("bench: at least one trial is required");
  if (degree < 1 || bound < 1) throw std::invalid_argument("bench: degree and coefficient bound must be positive");
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

BenchResult bench_lp(const BenchConfig& cfg) {
  cfg.validate();
  const SpaceShape& sh = cfg.shape;
  auto grid = std::make_shared<const Grid>(GridSpec{sh.n, 1.0, cfg.points, 0.5});
  KoppelmanSolver K(grid, KernelSpec::for_grid(grid->spec()));
  auto out = K.output_mask(std::max(sh.M.degree(), 1));
  auto inner = grid->ball_mask(grid->spec().inner_radius);
  auto outer = grid->ball_mask(grid->spec().radius);

  // K-hat acts coefficientwise, so K of dbar of every potential monomial is
  // computed once and trials are linear combinations.
  SpaceShape flat(sh.n, 1, MultiIndex{0});
  std::map<Monomial, std::vector<cd>> basis;
  for (const auto& mono : base_monomials(sh.n, cfg.degree)) {
    FormExpr d = FormExpr(Poly::term(1, mono)).dbar({VarKind::ZetaBar});
    if (d.is_zero()) continue;
    basis.emplace(mono, K.apply(sample(d, flat, 1, grid).data[0], 1, out)[0]);
  }

  BenchResult res;
  for (int t = 0; t < cfg.trials; ++t) {
    auto rng = trial_rng(cfg.seed, t);
    auto pots = random_potentials(sh, rng, cfg.degree, cfg.bound);
    FormExpr phi = closed_form_from(pots);
    GridJetForm u(sh, 0, grid);
    u.valid = out;
    for (const auto& [m, poly] : pots) {
      auto& arr = u.at(m)[0];
      for (const auto& [mono, c] : poly.terms()) {
        auto it = basis.find(mono);
        if (it == basis.end()) continue;
        cd w = c.to_complex();
        for (std::size_t i = 0; i < arr.size(); ++i) arr[i] += w * it->second[i];
      }
    }
    auto in_norm = pointwise_norm_hat(phi, sh, *grid, outer);
    auto out_norm = pointwise_norm_hat(u, inner);
    for (double p : cfg.ps) {
      double den = lp_norm(in_norm, *grid, p, outer);
      double num = lp_norm(out_norm, *grid, p, inner);
      double r = den > 0 ? num / den : 0.0;
      res.rows.push_back({t, p, r});
      auto [it, fresh] = res.max_ratio.emplace(p, r);
      if (!fresh) it->second = std::max(it->second, r);
    }
  }
  return res;
}

KernelBattery example9_battery(const FormExpr& phi, int points, int samples, std::uint64_t seed, double min_radius) {
  if (samples < 1) throw std::invalid_argument("example battery: at least one sample is required");
  auto grid = std::make_shared<const Grid>(GridSpec{2, 1.0, points, 0.5});
  KoppelmanSolver K(grid, KernelSpec::for_grid(grid->spec()));
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    double r = std::sqrt(grid->norm2(i));
    if (r >= min_radius && r <= K.spec().inner) candidates.push_back(i);
  }
  if (candidates.size() < static_cast<std::size_t>(samples)) throw std::domain_error("example battery: grid too coarse");
  auto rng = trial_rng(seed, 0);
  std::vector<std::size_t> pick;
  for (int s = 0; s < samples; ++s) {
    std::uniform_int_distribution<std::size_t> u(s, candidates.size() - 1);
    std::swap(candidates[s], candidates[u(rng)]);
    pick.push_back(candidates[s]);
  }
  KernelBattery out;
  out.samples = example9_kernels(phi, K, pick);
  for (const auto& r : out.samples) {
    if (r.k2_majorant > 0) out.k2_ratio_max = std::max(out.k2_ratio_max, r.k2_norm / r.k2_majorant);
    if (r.k3_majorant > 0) out.k3_ratio_max = std::max(out.k3_ratio_max, r.k3_norm / r.k3_majorant);
    out.k3_value_max = std::max(out.k3_value_max, std::abs(r.k3_value));
  }
  return out;
}

}  // namespace jetdbar
