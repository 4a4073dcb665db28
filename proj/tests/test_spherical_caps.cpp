#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "kissbound/errors.hpp"
#include "kissbound/spherical_caps.hpp"
#include "test_support.hpp"

using namespace kissbound;
using kissbound::testing::log_uniform;
using kissbound::testing::uniform;

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Tangent-cone branch of K written out independently of the implementation.
double k_cone_branch(double rho, double alpha) {
  const double inner =
      (rho * rho - 1.0) * (std::cos(alpha) / rho - std::sqrt(1.0 - 1.0 / (rho * rho)) * std::sin(alpha) + 1.0) +
      4.0;
  return 2.0 * kPi * (1.0 - inner / (4.0 * rho));
}

using Vec = std::array<double, 3>;

Vec scale(const Vec& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }
double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec random_unit() {
  std::normal_distribution<double> n;
  Vec v{n(kissbound::testing::rng()), n(kissbound::testing::rng()), n(kissbound::testing::rng())};
  return scale(v, 1.0 / norm(v));
}

// Unit vector at angle theta from the unit vector v, random azimuth.
Vec at_angle(const Vec& v, double theta) {
  Vec w = random_unit();
  const double p = dot(w, v);
  w = {w[0] - p * v[0], w[1] - p * v[1], w[2] - p * v[2]};
  w = scale(w, 1.0 / norm(w));
  return {std::cos(theta) * v[0] + std::sin(theta) * w[0], std::cos(theta) * v[1] + std::sin(theta) * w[1],
          std::cos(theta) * v[2] + std::sin(theta) * w[2]};
}

}  // namespace

TEST_CASE("rho geometry closed forms and ordering") {
  for (double rho = 1.01; rho < 2.995; rho += 0.01) {
    const RhoGeometry g = RhoGeometry::from_rho(rho);
    CHECK(g.alpha_min > 0.0);
    CHECK(g.alpha_min <= g.alpha_zero);
    CHECK(g.alpha_zero <= g.alpha_max);
    CHECK(g.alpha_max < kPi / 2.0);
    CHECK(g.alpha_max == doctest::Approx(std::acos(1.0 / rho)).epsilon(1e-15));
  }
  const RhoGeometry near_one = RhoGeometry::from_rho(1.0 + 1e-8);
  CHECK(near_one.alpha_max < 1e-3);
  CHECK(near_one.alpha_zero < 1e-3);
  CHECK(near_one.alpha_min < 1e-3);

  CHECK_THROWS_AS(RhoGeometry::from_rho(1.0), DomainError);
  CHECK_THROWS_AS(RhoGeometry::from_rho(3.0), DomainError);
}

TEST_CASE("cap_radius_cos") {
  CHECK(cap_radius_cos(kSqrt3, 1, 1) == doctest::Approx(kSqrt3 / 2.0).epsilon(1e-15));
  CHECK(std::acos(cap_radius_cos(kSqrt3, 1, 1)) == doctest::Approx(kPi / 6.0).epsilon(1e-12));
  CHECK(cap_radius_cos(2.0, 1.0, 0.5) == 1.0);
  CHECK(cap_radius_cos(2.0, 1.0, 0.1) == 1.0);
  CHECK(cap_radius_cos(2.0, 1.0, 3.0) == doctest::Approx(11.0 / 16.0).epsilon(1e-15));

  CHECK_THROWS_AS(cap_radius_cos(1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(cap_radius_cos(0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(cap_radius_cos(2.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(cap_radius_cos(2.0, 1.0, -1.0), DomainError);
}

TEST_CASE("cap_height") {
  CHECK(cap_height(kSqrt3, 1, 1) == doctest::Approx(kSqrt3 - 1.5).epsilon(1e-14));
  CHECK(cap_height(2.0, 1.0, 0.5) == 0.0);
  CHECK(cap_height(2.0, 1.0, 3.0) == doctest::Approx(5.0 / 8.0).epsilon(1e-15));
}

TEST_CASE("coverage_fraction") {
  // Archimedes: (6 - 3 sqrt 3) pi over 12 pi.
  CHECK(coverage_fraction(kSqrt3, 1, 1) == doctest::Approx((6.0 - 3.0 * kSqrt3) / 12.0).epsilon(1e-14));
  CHECK(coverage_fraction(kSqrt3, 1, 1) == doctest::Approx(0.066987298107780677).epsilon(1e-14));
  CHECK(coverage_fraction(2.0, 1.0, 0.5) == 0.0);
  CHECK(coverage_fraction(2.0, 1.0, 1.0) + coverage_fraction(2.0, 1.0, 1.0) ==
        doctest::Approx(1.0 / 8.0).epsilon(1e-15));
}

TEST_CASE("pair_sum") {
  CHECK(pair_sum(2.0, 1.0, 1.5) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
  CHECK(pair_sum(2.0, 1.0, 7.0) > 1.0 / 8.0 + 1e-3);
  CHECK(pair_sum(2.0, 1.0, 0.25) > 1.0 / 8.0 + 1e-3);
  CHECK(pair_sum(kSqrt3, 5.0, 5.0) == doctest::Approx((2.0 - kSqrt3) / 2.0).epsilon(1e-14));
  CHECK(pair_sum_floor(2.0) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
  CHECK_THROWS_AS(pair_sum(3.0, 1.0, 1.0), DomainError);
}

TEST_CASE("pair-sum and height identities on random radii") {
  int nonempty = 0;
  int one_sided = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double rho = uniform(1.0001, 2.9999);
    const double r1 = log_uniform(1e-3, 1e3);
    // Both caps non-empty iff r2 / r1 lies in [(rho-1)/2, 2/(rho-1)].
    const double lo = (rho - 1.0) / 2.0;
    const double r2 = r1 * log_uniform(lo, 1.0 / lo);
    const double expected = (-rho * rho + 4.0 * rho - 3.0) / (4.0 * rho);
    CHECK(std::abs(pair_sum(rho, r1, r2) - expected) < 1e-12);
    const double heights = cap_height(rho, r1, r2) / (rho * r1) + cap_height(rho, r2, r1) / (rho * r2);
    CHECK(std::abs(heights - 2.0 * expected) < 1e-12);
    ++nonempty;

    const double tiny = r1 * lo * uniform(0.01, 0.999);
    CHECK(pair_sum(rho, r1, tiny) > expected);
    ++one_sided;
  }
  CHECK(nonempty == 10000);
  CHECK(one_sided == 10000);
}

TEST_CASE("coverage fraction is scale invariant") {
  for (int trial = 0; trial < 2000; ++trial) {
    const double rho = uniform(1.001, 2.999);
    const double r1 = log_uniform(0.01, 100.0);
    const double r2 = log_uniform(0.01, 100.0);
    const double base = coverage_fraction(rho, r1, r2);
    for (double s : {0.25, 2.0, 1024.0}) CHECK(coverage_fraction(rho, s * r1, s * r2) == base);
    const double s = log_uniform(1e-6, 1e6);
    CHECK(coverage_fraction(rho, s * r1, s * r2) == doctest::Approx(base).epsilon(1e-14));
  }
}

TEST_CASE("aux_cap_radius branches") {
  const double threshold = aux_cap_radius(2.0, 1.0, 0.75);
  CHECK(threshold == doctest::Approx(std::acos(13.0 / 14.0)).epsilon(1e-14));
  CHECK(threshold == doctest::Approx(RhoGeometry::from_rho(2.0).alpha_zero).epsilon(1e-14));
  // Tangent-cone formula evaluated at the threshold radius.
  CHECK(std::acos((1.0 - 0.75) / (1.0 + 0.75)) - std::acos(0.5) == doctest::Approx(threshold).epsilon(1e-14));

  CHECK(aux_cap_radius(kSqrt3, 1.0, 1.0) == doctest::Approx(kPi / 6.0).epsilon(1e-13));
  CHECK(aux_cap_radius(1.755, 1.0, 1e12) == doctest::Approx(std::acos(1.0 / 1.755)).epsilon(1e-10));

  // Smallest ball that still touches S_rho(B1) sits at alpha_min.
  const RhoGeometry g = RhoGeometry::from_rho(1.755);
  CHECK(aux_cap_radius(1.755, 1.0, 0.3775) == doctest::Approx(g.alpha_min).epsilon(1e-12));
  CHECK_THROWS_AS(aux_cap_radius(1.755, 1.0, 0.3), DomainError);
}

TEST_CASE("actual cap area K") {
  for (double rho = 1.05; rho < 2.99; rho += 0.05) {
    const RhoGeometry g = RhoGeometry::from_rho(rho);
    CHECK(std::abs(actual_cap_area(g, g.alpha_min)) < 1e-12);
    CHECK(std::abs(k_cone_branch(rho, g.alpha_zero) - 2.0 * kPi * (1.0 - std::cos(g.alpha_zero))) < 1e-12);
    CHECK(std::abs(actual_cap_area(g, g.alpha_zero) -
                   2.0 * kPi * (1.0 - (3.0 * rho * rho + 1.0) / (rho * (rho * rho + 3.0)))) < 1e-12);
    CHECK(actual_cap_area(g, g.alpha_max) == doctest::Approx(2.0 * kPi * (1.0 - 1.0 / rho)).epsilon(1e-13));
    CHECK_THROWS_AS(actual_cap_area(g, g.alpha_min - 1e-6), DomainError);
    CHECK_THROWS_AS(actual_cap_area(g, g.alpha_max + 1e-6), DomainError);
  }
}

TEST_CASE("K is non-decreasing on the cap-radius interval") {
  for (double rho : {1.1, 1.5, 1.755, 2.0, 2.6}) {
    const RhoGeometry g = RhoGeometry::from_rho(rho);
    double previous = actual_cap_area(g, g.alpha_min);
    const int steps = 10000;
    for (int i = 1; i <= steps; ++i) {
      const double a = i == steps ? g.alpha_max : g.alpha_min + g.width() * i / steps;
      const double k = actual_cap_area(g, a);
      CHECK(k >= previous);
      previous = k;
    }
  }
}

TEST_CASE("K of the auxiliary radius equals the covered area") {
  for (int trial = 0; trial < 1000; ++trial) {
    const double rho = uniform(1.01, 2.99);
    const RhoGeometry g = RhoGeometry::from_rho(rho);
    const double r1 = log_uniform(0.1, 10.0);
    const double lo = (rho - 1.0) / 2.0;
    const double hi = (rho * rho - 1.0) / 4.0;
    // Alternate between the cone branch and the actual-cap branch.
    const double r2 = trial % 2 ? r1 * uniform(lo, hi) : r1 * log_uniform(hi, 100.0);
    const double alpha = aux_cap_radius(rho, r1, r2);
    CHECK(alpha >= g.alpha_min);
    CHECK(alpha <= g.alpha_max);
    CHECK(std::abs(actual_cap_area(g, alpha) - 4.0 * kPi * coverage_fraction(rho, r1, r2)) < 1e-12);
  }
}

TEST_CASE("triangle angles") {
  const TriangleAngles t = triangle_angles(kPi / 6, kPi / 6, kPi / 6);
  CHECK(t.angle_x == doctest::Approx(1.2309594173407747).epsilon(1e-14));
  CHECK(t.angle_y == doctest::Approx(1.2309594173407747).epsilon(1e-14));
  CHECK(t.angle_z == doctest::Approx(1.2309594173407747).epsilon(1e-14));
  CHECK(t.area == doctest::Approx(0.55128559843253081).epsilon(1e-13));

  const TriangleAngles p = triangle_angles(0.3, 0.5, 0.9);
  const TriangleAngles q = triangle_angles(0.9, 0.3, 0.5);
  CHECK(q.angle_x == p.angle_z);
  CHECK(q.angle_y == p.angle_x);
  CHECK(q.angle_z == p.angle_y);
  CHECK(q.area == doctest::Approx(p.area).epsilon(1e-15));

  const TriangleAngles small = triangle_angles(1e-4, 1e-4, 1e-4);
  CHECK(small.angle_x == doctest::Approx(kPi / 3).epsilon(1e-6));
  CHECK(small.area > 0.0);
  CHECK(small.area < 1e-7);

  CHECK_THROWS_AS(triangle_angles(1.0, 1.0, 1.2), DegenerateTriangleError);
  CHECK_THROWS_AS(triangle_angles(0.1, 1.6, 1.6), DegenerateTriangleError);
  CHECK_THROWS_AS(triangle_angles(0.0, 0.5, 0.5), DomainError);
}

TEST_CASE("guarded arccos") {
  CHECK(guarded_acos(1.0 + 5e-13) == 0.0);
  CHECK(guarded_acos(-1.0 - 5e-13) == doctest::Approx(kPi));
  CHECK_THROWS_AS(guarded_acos(1.0 + 1e-9), DomainError);
}

TEST_CASE("auxiliary caps of non-overlapping tangent balls do not overlap") {
  int checked = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const double rho = uniform(1.05, 2.95);
    const double lo = (rho - 1.0) / 2.0;
    const double rx = log_uniform(lo, 20.0);
    const double ry = log_uniform(lo, 20.0);
    const Vec u = random_unit();
    Vec v;
    if (trial % 2 == 0) {
      // Y tangent to both B and X: the tightest configuration.
      const double cx = 1.0 + rx, cy = 1.0 + ry;
      const double c = (cx * cx + cy * cy - (rx + ry) * (rx + ry)) / (2.0 * cx * cy);
      v = at_angle(u, std::acos(std::clamp(c, -1.0, 1.0)));
    } else {
      v = random_unit();
      const Vec dx = scale(u, 1.0 + rx), dy = scale(v, 1.0 + ry);
      const Vec diff{dx[0] - dy[0], dx[1] - dy[1], dx[2] - dy[2]};
      if (norm(diff) < rx + ry) continue;
    }
    const double separation = std::acos(std::clamp(dot(u, v), -1.0, 1.0));
    CHECK(separation >= aux_cap_radius(rho, 1.0, rx) + aux_cap_radius(rho, 1.0, ry) - 1e-9);
    ++checked;
  }
  CHECK(checked > 12000);
}

TEST_CASE("coverage fraction against Monte-Carlo sampling of the measuring sphere") {
  struct Case {
    double rho, r1, r2;
  };
  for (const Case c : {Case{kSqrt3, 1.0, 1.0}, Case{1.755, 1.0, 0.5}, Case{2.5, 2.0, 7.0}}) {
    // B1 at the origin, B2 tangent along +z.
    const double d = c.r1 + c.r2;
    const int samples = 1000000;
    int inside = 0;
    for (int i = 0; i < samples; ++i) {
      const Vec p = scale(random_unit(), c.rho * c.r1);
      const double dz = p[2] - d;
      if (p[0] * p[0] + p[1] * p[1] + dz * dz <= c.r2 * c.r2) ++inside;
    }
    const double estimate = static_cast<double>(inside) / samples;
    const double expected = coverage_fraction(c.rho, c.r1, c.r2);
    const double se = std::sqrt(expected * (1.0 - expected) / samples);
    CHECK(std::abs(estimate - expected) <= 3.0 * se);
  }
}
