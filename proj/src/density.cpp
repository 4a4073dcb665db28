#include "kissbound/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "kissbound/errors.hpp"
#include "kissbound/nelder_mead.hpp"
#include "kissbound/parallel.hpp"

namespace kissbound {
namespace {

bool inside(const RhoGeometry& g, double a) { return a >= g.alpha_min && a <= g.alpha_max; }

std::optional<TriangleDensity> evaluate(const RhoGeometry& geom, double x, double y,
                                        double z) noexcept {
  if (!inside(geom, x) || !inside(geom, y) || !inside(geom, z)) return std::nullopt;
  if (!(x + y < kPi) || !(y + z < kPi) || !(x + z < kPi)) return std::nullopt;
  const SideTrig yz = side_trig(y + z);
  const SideTrig xz = side_trig(x + z);
  const SideTrig xy = side_trig(x + y);
  const auto ax = vertex_angle(yz, xz, xy);
  const auto ay = vertex_angle(xz, xy, yz);
  const auto az = vertex_angle(xy, xz, yz);
  if (!ax || !ay || !az) return std::nullopt;

  TriangleDensity t;
  t.x = x;
  t.y = y;
  t.z = z;
  t.angles = {x, y, z, *ax, *ay, *az, *ax + *ay + *az - kPi};
  if (!(t.angles.area > 0.0)) return std::nullopt;
  const double weighted = actual_cap_area(geom, x) * *ax + actual_cap_area(geom, y) * *ay +
                          actual_cap_area(geom, z) * *az;
  t.density = weighted / (2.0 * kPi * t.angles.area);
  return t;
}

bool better(const SweepResult& candidate, const SweepResult& incumbent) {
  if (candidate.max_density != incumbent.max_density) {
    return candidate.max_density > incumbent.max_density;
  }
  return candidate.argmax < incumbent.argmax;
}

}  // namespace

TriangleDensity density(const RhoGeometry& geom, double x, double y, double z) {
  for (double a : {x, y, z}) {
    if (!inside(geom, a)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "cap radius " << a << " outside [" << geom.alpha_min << ", " << geom.alpha_max << "]";
      throw DomainError(msg.str());
    }
  }
  if (auto t = evaluate(geom, x, y, z)) return *t;
  // Reproduce the specific degeneracy error.
  triangle_angles(x, y, z);
  throw DegenerateTriangleError("degenerate cap triangle");
}

std::optional<double> try_density(const RhoGeometry& geom, double x, double y, double z) noexcept {
  if (auto t = evaluate(geom, x, y, z)) return t->density;
  return std::nullopt;
}

double degree_factor(double rho) { return 2.0 / pair_sum_floor(rho); }

std::vector<std::array<double, 3>> multistart_points(const RhoGeometry& geom, double step) {
  if (!(step > 0.0)) throw DomainError("multistart grid step must be positive");
  std::vector<double> axis;
  for (int i = 0;; ++i) {
    const double a = geom.alpha_min + i * step;
    if (a >= geom.alpha_max - 1e-12) break;
    axis.push_back(a);
  }
  axis.push_back(geom.alpha_max);

  std::vector<std::array<double, 3>> points;
  for (std::size_t i = 0; i < axis.size(); ++i)
    for (std::size_t j = i; j < axis.size(); ++j)
      for (std::size_t k = j; k < axis.size(); ++k) points.push_back({axis[i], axis[j], axis[k]});
  return points;
}

SweepResult maximize_from(const RhoGeometry& geom, const std::vector<std::array<double, 3>>& starts,
                          const SearchConfig& cfg) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  struct Local {
    bool ok = false;
    double value = 0.0;
    std::array<double, 3> point{};
  };
  std::vector<Local> locals(starts.size());

  // Once 3 alpha_max >= pi the cube contains triples with x + y + z = pi,
  // where the triangle area vanishes while the weighted angle sum does not:
  // the supremum of D is infinite.
  if (3.0 * geom.alpha_max >= kPi) {
    SweepResult r;
    r.rho = geom.rho;
    r.starts = starts.size();
    r.max_density = kInf;
    r.argmax = {geom.alpha_max, geom.alpha_max, geom.alpha_max};
    r.objective = kInf;
    return r;
  }

  const double step = 0.5 * cfg.start_step;
  auto objective = [&geom](const std::array<double, 3>& p) {
    const auto d = try_density(geom, p[0], p[1], p[2]);
    return d ? -*d : kInf;
  };

  parallel_for(starts.size(), resolve_workers(cfg.workers), [&](std::size_t s) {
    const auto& start = starts[s];
    if (!std::isfinite(objective(start))) return;
    std::array<double, 3> steps{};
    for (std::size_t k = 0; k < 3; ++k) steps[k] = start[k] + step > geom.alpha_max ? -step : step;
    const auto r = simplex_minimize<3>(objective, start, steps, cfg.tolerance, cfg.max_evaluations);
    if (!r.converged || !std::isfinite(r.value)) return;
    auto p = r.point;
    std::sort(p.begin(), p.end());
    locals[s] = {true, -r.value, p};
  });

  SweepResult best;
  best.rho = geom.rho;
  best.starts = starts.size();
  bool any = false;
  for (const Local& l : locals) {
    if (!l.ok) {
      ++best.failed_starts;
      continue;
    }
    SweepResult candidate = best;
    candidate.max_density = l.value;
    candidate.argmax = l.point;
    if (!any || better(candidate, best)) best = candidate;
    any = true;
  }
  if (!any) {
    std::ostringstream msg;
    msg << "density search failed from every start at rho=" << geom.rho;
    throw DomainError(msg.str());
  }
  best.objective = best.max_density * degree_factor(geom.rho);
  return best;
}

SweepResult max_density(const RhoGeometry& geom, const SearchConfig& cfg) {
  return maximize_from(geom, multistart_points(geom, cfg.start_step), cfg);
}

double pruning_value(double rho) {
  const RhoGeometry geom = RhoGeometry::from_rho(rho);
  const double a0 = geom.alpha_zero;
  return density(geom, a0, a0, a0).density * degree_factor(rho);
}

std::vector<double> pruning_crossings(double lo, double hi, double threshold, double scan_step,
                                      double tolerance) {
  if (!(lo < hi) || !(scan_step > 0.0)) throw DomainError("invalid pruning scan interval");
  std::vector<double> crossings;
  auto excess = [threshold](double rho) { return pruning_value(rho) - threshold; };
  double a = lo;
  double fa = excess(a);
  while (a < hi) {
    const double b = std::min(hi, a + scan_step);
    const double fb = excess(b);
    if ((fa < 0.0) != (fb < 0.0)) {
      double left = a, right = b, fleft = fa;
      while (right - left > tolerance) {
        const double mid = 0.5 * (left + right);
        const double fm = excess(mid);
        if ((fm < 0.0) == (fleft < 0.0)) {
          left = mid;
          fleft = fm;
        } else {
          right = mid;
        }
      }
      crossings.push_back(0.5 * (left + right));
    }
    a = b;
    fa = fb;
  }
  return crossings;
}

std::vector<SweepResult> sweep_rho(double lo, double hi, double step, const SearchConfig& cfg,
                                   std::optional<double> prune_threshold) {
  if (!(lo > 1.0) || !(hi < 3.0) || !(lo <= hi)) {
    throw DomainError("sweep interval must satisfy 1 < lo <= hi < 3");
  }
  if (!(step > 0.0)) throw DomainError("sweep step must be positive");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;

  std::vector<SweepResult> rows;
  rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double rho = lo + static_cast<double>(i) * step;
    const RhoGeometry geom = RhoGeometry::from_rho(rho);
    if (prune_threshold) {
      const double floor_value = pruning_value(rho);
      if (floor_value >= *prune_threshold) {
        SweepResult r;
        r.rho = rho;
        r.argmax = {geom.alpha_zero, geom.alpha_zero, geom.alpha_zero};
        r.max_density = floor_value / degree_factor(rho);
        r.objective = floor_value;
        r.pruned = true;
        rows.push_back(r);
        continue;
      }
    }
    rows.push_back(max_density(geom, cfg));
  }
  if (rows.empty()) throw DomainError("empty rho grid");
  return rows;
}

const SweepResult& best_of(const std::vector<SweepResult>& rows) {
  if (rows.empty()) throw DomainError("empty sweep");
  const SweepResult* best = &rows.front();
  for (const auto& r : rows) {
    if (r.objective < best->objective) best = &r;
  }
  return *best;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& rows, bool pruned_column) {
  out << "rho,max_density,x,y,z,objective" << (pruned_column ? ",pruned" : "") << '\n';
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g", r.rho, r.max_density,
                  r.argmax[0], r.argmax[1], r.argmax[2], r.objective);
    out << buf;
    if (pruned_column) out << ',' << (r.pruned ? 1 : 0);
    out << '\n';
  }
}

}  // namespace kissbound
