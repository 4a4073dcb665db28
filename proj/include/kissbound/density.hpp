#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "kissbound/config.hpp"
#include "kissbound/spherical_caps.hpp"

namespace kissbound {

// Density of three pairwise tangent caps inside the triangle spanned by
// their centres, with cap areas weighted by K:
//   D = (K(x) ∠x + K(y) ∠y + K(z) ∠z) / (2 pi (∠x + ∠y + ∠z - pi)).
struct TriangleDensity {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  TriangleAngles angles;
  double density = 0.0;
};

TriangleDensity density(const RhoGeometry& geom, double x, double y, double z);

// Noexcept variant for search loops; empty outside [alpha_min, alpha_max]^3
// or for degenerate triangles.
std::optional<double> try_density(const RhoGeometry& geom, double x, double y, double z) noexcept;

// 8 rho / (-rho^2 + 4 rho - 3): converts a bound on the covered fraction of
// S_rho(B) into a bound on the average degree.
double degree_factor(double rho);

struct SearchConfig {
  double start_step = defaults::kSearchStep;  // multistart grid spacing, radians
  double tolerance = defaults::kSearchTolerance;
  int max_evaluations = defaults::kSearchMaxEvaluations;
  unsigned workers = 1;
};

struct SweepResult {
  double rho = 0.0;
  double max_density = 0.0;
  std::array<double, 3> argmax{};  // sorted ascending
  double objective = 0.0;
  std::size_t starts = 0;
  std::size_t failed_starts = 0;
  bool pruned = false;
};

// Multistart seeds: every point of the grid alpha_min + i*step (plus
// alpha_max itself) with x <= y <= z.
std::vector<std::array<double, 3>> multistart_points(const RhoGeometry& geom, double step);

// Best local maximum of D over [alpha_min, alpha_max]^3 reached from the
// given seeds. Ties are broken towards the lexicographically smallest
// sorted triple, so the result does not depend on the order of `starts`.
SweepResult maximize_from(const RhoGeometry& geom, const std::vector<std::array<double, 3>>& starts,
                          const SearchConfig& cfg);

SweepResult max_density(const RhoGeometry& geom, const SearchConfig& cfg = {});

// D(alpha_0, alpha_0, alpha_0) * degree_factor(rho): a cheap lower bound on
// the objective used to discard hopeless rho values.
double pruning_value(double rho);

// Points in [lo, hi] where pruning_value crosses `threshold`, located by
// scanning with `scan_step` and bisecting to `tolerance`.
std::vector<double> pruning_crossings(double lo, double hi, double threshold,
                                      double scan_step = 0.01, double tolerance = 1e-9);

// Evaluates max_density on the grid lo + i*step, i = 0.. while <= hi.
// With a prune threshold, rho values whose pruning_value reaches it are not
// searched; their rows carry the alpha_0 triple and are flagged `pruned`.
std::vector<SweepResult> sweep_rho(double lo, double hi, double step, const SearchConfig& cfg,
                                   std::optional<double> prune_threshold = std::nullopt);

// Row of the sweep with the smallest objective (first on ties).
const SweepResult& best_of(const std::vector<SweepResult>& rows);

// CSV: rho,max_density,x,y,z,objective with 12 significant digits, plus a
// trailing `pruned` column when requested.
void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& rows,
                     bool pruned_column = false);

}  // namespace kissbound
