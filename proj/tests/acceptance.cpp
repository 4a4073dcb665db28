// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kissbound/certifier.hpp"
#include "kissbound/density.hpp"
#include "kissbound/highdim_bounds.hpp"
#include "kissbound/packing.hpp"
#include "kissbound/spherical_caps.hpp"

using namespace kissbound;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

class Checker {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      if (!out_.detail.empty()) out_.detail += "; ";
      out_.detail += what;
    }
  }
  void note(const std::string& what) { notes_ += (notes_.empty() ? "" : "; ") + what; }
  Outcome done() {
    if (out_.pass) out_.detail = notes_;
    return out_;
  }

 private:
  Outcome out_;
  std::string notes_;
};

std::mt19937_64 gen(20240613);
double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

// The full-resolution certificate, shared by criteria 6 and 9.
std::optional<Certificate> g_full;

Outcome area_bound_three() {
  Checker c;
  const double a3 = area_bound(3);
  c.require(std::abs(a3 - (8.0 + 4.0 * std::sqrt(3.0))) < 1e-9, fmt("a(3) = %.15g", a3));
  c.note(fmt("a(3) = %.15g", a3));
  return c.done();
}

Outcome area_bounds_four_to_eight() {
  Checker c;
  const double a4 = area_bound(4), a5 = area_bound(5);
  c.require(a4 <= 34.681, fmt("a(4) = %.9g", a4));
  c.require(a5 <= 77.757, fmt("a(5) = %.9g", a5));
  const double listed[] = {170.579, 368.736, 788.645};
  for (int d = 6; d <= 8; ++d) {
    const double v = area_bound(d);
    const double off = std::abs(v - listed[d - 6]);
    char buf[160];
    std::snprintf(buf, sizeof buf, "a(%d) = %.9f differs from %.3f by %.3g", d, v, listed[d - 6], off);
    c.require(off <= 1e-3, buf);
  }
  c.note(fmt("a(4) = %.9g", a4) + fmt(", a(5) = %.9g", a5));
  return c.done();
}

Outcome pair_sum_identity() {
  Checker c;
  double worst = 0.0;
  int one_sided_failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const double rho = uniform(1.0001, 2.9999);
    const double r1 = log_uniform(1e-3, 1e3);
    const double lo = (rho - 1.0) / 2.0;
    const double r2 = r1 * log_uniform(lo, 1.0 / lo);
    const double floor = (-rho * rho + 4.0 * rho - 3.0) / (4.0 * rho);
    worst = std::max(worst, std::abs(pair_sum(rho, r1, r2) - floor));
    const double empty = r1 * lo * uniform(0.01, 0.999);
    if (!(pair_sum(rho, r1, empty) >= floor)) ++one_sided_failures;
  }
  c.require(worst < 1e-12, fmt("max deviation %.3g", worst));
  c.require(one_sided_failures == 0, fmt("%g one-sided failures", one_sided_failures));
  c.note(fmt("max deviation %.3g over 10^4 samples", worst));
  return c.done();
}

Outcome k_function() {
  Checker c;
  double worst_min = 0.0, worst_branch = 0.0, worst_cov = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double rho = uniform(1.01, 2.99);
    const RhoGeometry g = RhoGeometry::from_rho(rho);
    worst_min = std::max(worst_min, std::abs(actual_cap_area(g, g.alpha_min)));
    // Cone branch written out at alpha_0 versus the plain cap area there.
    const double a0 = g.alpha_zero;
    const double cone = 2.0 * kPi *
                        (1.0 - ((rho * rho - 1.0) * (std::cos(a0) / rho -
                                                     std::sqrt(1.0 - 1.0 / (rho * rho)) * std::sin(a0) + 1.0) +
                                4.0) /
                                   (4.0 * rho));
    worst_branch = std::max(worst_branch, std::abs(cone - 2.0 * kPi * (1.0 - std::cos(a0))));
    const double lo = (rho - 1.0) / 2.0, hi = (rho * rho - 1.0) / 4.0;
    const double r2 = i % 2 ? uniform(lo, hi) : log_uniform(hi, 100.0);
    const double k = actual_cap_area(g, aux_cap_radius(rho, 1.0, r2));
    worst_cov = std::max(worst_cov, std::abs(k - 4.0 * kPi * coverage_fraction(rho, 1.0, r2)));
  }
  c.require(worst_min < 1e-12, fmt("K(alpha_min) up to %.3g", worst_min));
  c.require(worst_branch < 1e-12, fmt("branch gap up to %.3g", worst_branch));
  c.require(worst_cov < 1e-12, fmt("K-coverage gap up to %.3g", worst_cov));
  c.note(fmt("worst K-coverage gap %.3g", worst_cov));
  return c.done();
}

Outcome optimization() {
  Checker c;
  const auto rows = sweep_rho(1.70, 1.80, 0.005, SearchConfig{});
  const SweepResult& best = best_of(rows);
  c.require(std::abs(best.rho - 1.755) <= 0.005 + 1e-12, fmt("argmin rho = %.6f", best.rho));
  c.require(std::abs(best.objective - 13.908778) <= 1e-3, fmt("min objective = %.9f", best.objective));
  c.note(fmt("argmin rho = %.3f", best.rho) + fmt(", min objective = %.9f", best.objective));
  return c.done();
}

Outcome certification() {
  Checker c;
  g_full = certify(1.755, 0.0005, 13.955, defaults::kFpSlack);
  c.require(g_full && g_full->passed, g_full ? summary_line(*g_full) : "no certificate");
  if (g_full) {
    c.require(std::abs(static_cast<double>(g_full->boxes_checked) - 7.6e8) < 0.1e8,
              fmt("%.0f boxes", static_cast<double>(g_full->boxes_checked)));
  }
  double bounds[3];
  const double deltas[3] = {0.004, 0.002, 0.001};
  for (int i = 0; i < 3; ++i) bounds[i] = certify(1.755, deltas[i], 14.5, defaults::kFpSlack)->certified_bound;
  c.require(bounds[2] <= bounds[1] && bounds[1] <= bounds[0],
            fmt("refinement not monotone: %.9g", bounds[0]) + fmt(" %.9g", bounds[1]) + fmt(" %.9g", bounds[2]));
  if (g_full) c.note(summary_line(*g_full));
  c.note(fmt("bounds at delta 0.004/0.002/0.001: %.6f", bounds[0]) + fmt(" / %.6f", bounds[1]) +
         fmt(" / %.6f", bounds[2]));
  return c.done();
}

Outcome soundness() {
  Checker c;
  long violations = 0, pairs = 0;
  for (int b = 0; b < 100000; ++b) {
    const double rho = b % 2 ? 1.755 : uniform(1.5, 1.95);
    const RhoGeometry g = RhoGeometry::from_rho(rho);
    const double delta = log_uniform(1e-5, 0.05);
    Box box;
    box.delta = delta;
    for (int a = 0; a < 3; ++a) {
      box.lo[a] = uniform(g.alpha_min, g.alpha_max - delta);
      box.hi[a] = box.lo[a] + delta;
    }
    const double bound = box_density_upper(g, box);
    for (int s = 0; s < 10; ++s) {
      const auto d = try_density(g, uniform(box.lo[0], box.hi[0]), uniform(box.lo[1], box.hi[1]),
                                 uniform(box.lo[2], box.hi[2]));
      if (!d) continue;
      ++pairs;
      if (*d > bound) ++violations;
    }
  }
  c.require(pairs == 1000000, fmt("only %.0f valid pairs", static_cast<double>(pairs)));
  c.require(violations == 0, fmt("%.0f violations", static_cast<double>(violations)));
  c.note(fmt("%.0f pairs, 0 violations", static_cast<double>(pairs)));
  return c.done();
}

Outcome gen_property() {
  Checker c;
  long failures = 0;
  for (int d = 4; d <= 8; ++d) {
    for (int i = 0; i < 100; ++i) {
      const double C = uniform(1.0 + 1e-9, 2.0);
      const double mid = g_profile(d, C, C / 2.0);
      for (int s = 0; s < 100; ++s) {
        const double x = uniform(C - 1.0, 1.0);
        if (!(mid <= g_profile(d, C, x) * (1.0 + 1e-14))) ++failures;
      }
    }
  }
  double spread = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double C = uniform(1.0 + 1e-9, 2.0);
    const double ref = g_profile(3, C, C / 2.0);
    for (int s = 0; s < 100; ++s) spread = std::max(spread, std::abs(g_profile(3, C, uniform(C - 1.0, 1.0)) - ref));
  }
  c.require(failures == 0, fmt("%.0f minimum violations", static_cast<double>(failures)));
  c.require(spread < 1e-10, fmt("d=3 spread %.3g", spread));
  c.note(fmt("d=3 spread %.3g", spread));
  return c.done();
}

Outcome packing_audit() {
  Checker c;
  const Packing p = fcc_fragment(2);
  const ContactGraph g = contact_graph(p);
  const double cap = g_full ? g_full->max_box_bound : max_density(RhoGeometry::from_rho(1.755)).max_density;
  const CoverageAudit audit = coverage_audit(p, 1.755, cap);
  c.require(g.degrees()[0] == 12, fmt("interior degree %.0f", static_cast<double>(g.degrees()[0])));
  c.require(g.average_degree <= 13.955, fmt("average degree %.6f", g.average_degree));
  c.require(audit.max_ball_sum <= cap + 1e-6, fmt("max coverage sum %.9f", audit.max_ball_sum));
  c.note(fmt("average degree %.4f", g.average_degree) + fmt(", max coverage sum %.6f", audit.max_ball_sum) +
         fmt(" <= %.6f", cap));
  return c.done();
}

Outcome determinism() {
  Checker c;
  const double delta = 0.002;
  CertifyOptions base;
  base.checkpoint_interval = 1000000;
  const std::string reference = emit_certificate(*certify(1.755, delta, 14.5, defaults::kFpSlack, base));
  for (unsigned workers : {1u, 2u, 4u, 8u}) {
    CertifyOptions o = base;
    o.workers = workers;
    c.require(emit_certificate(*certify(1.755, delta, 14.5, defaults::kFpSlack, o)) == reference,
              fmt("workers=%g differs", workers));
  }
  const auto ckpt = std::filesystem::temp_directory_path() / "kissbound-acceptance.ckpt";
  std::filesystem::remove(ckpt);
  CertifyOptions o = base;
  o.checkpoint = ckpt;
  o.stop_after_boxes = 3000000;
  c.require(!certify(1.755, delta, 14.5, defaults::kFpSlack, o), "run did not stop early");
  o.stop_after_boxes.reset();
  o.workers = 4;
  c.require(emit_certificate(*certify(1.755, delta, 14.5, defaults::kFpSlack, o)) == reference,
            "resumed run differs");
  std::filesystem::remove(ckpt);
  c.note("workers 1/2/4/8 and resume identical");
  return c.done();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"area bound a(3)", area_bound_three},
      {"area bounds a(4)..a(8)", area_bounds_four_to_eight},
      {"pair-sum identity", pair_sum_identity},
      {"K function", k_function},
      {"optimization over rho", optimization},
      {"certification", certification},
      {"certifier soundness", soundness},
      {"profile minimum", gen_property},
      {"packing audit", packing_audit},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = criteria[i].second();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s (%.1fs)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
