#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "jetdbar/koppelman.hpp"

namespace jetdbar {

/// L^p ratio battery ||K-hat phi||_{L^p(inner)} / ||phi||_{L^p(outer)} over
/// random dbar-closed jets.
struct BenchConfig {
  SpaceShape shape;
  int points = 64;
  std::vector<double> ps;
  int trials = 50;
  std::uint64_t seed = 42;
  int degree = 3;
  int bound = 8;
  void validate() const;
};

struct BenchRow {
  int trial;
  double p;
  double ratio;
};

struct BenchResult {
  std::vector<BenchRow> rows;       // ordered by trial, then p
  std::map<double, double> max_ratio;
};

BenchResult bench_lp(const BenchConfig& cfg);

/// Kernel bounds of the worked C^2 example at `samples` random lattice points
/// with min_radius <= |z| <= inner radius.
struct KernelBattery {
  std::vector<Example9KernelSample> samples;
  double k2_ratio_max = 0;  // max |K2 phi|_X / majorant
  double k3_ratio_max = 0;
  double k3_value_max = 0;  // max |(L K3 phi)(z, 0)|
};
KernelBattery example9_battery(const FormExpr& phi, int points, int samples, std::uint64_t seed,
                               double min_radius = 0.1);

/// Per-trial generator: independent of how trials are scheduled.
std::mt19937_64 trial_rng(std::uint64_t seed, int trial);

}  // namespace jetdbar
