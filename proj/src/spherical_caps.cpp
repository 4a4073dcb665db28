#include "kissbound/spherical_caps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kissbound/errors.hpp"

namespace kissbound {
namespace {

void require_ratio(double rho) {
  if (!(rho > 1.0) || !std::isfinite(rho)) {
    std::ostringstream msg;
    msg << "inflation ratio must exceed 1, got " << rho;
    throw DomainError(msg.str());
  }
}

void require_ratio_below_three(double rho) {
  require_ratio(rho);
  if (!(rho < 3.0)) {
    std::ostringstream msg;
    msg << "inflation ratio must be below 3, got " << rho;
    throw DomainError(msg.str());
  }
}

void require_radii(double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0) || !std::isfinite(r1) || !std::isfinite(r2)) {
    std::ostringstream msg;
    msg << "ball radii must be positive and finite, got " << r1 << ", " << r2;
    throw DomainError(msg.str());
  }
}

}  // namespace

RhoGeometry RhoGeometry::from_rho(double rho) {
  require_ratio_below_three(rho);
  RhoGeometry g;
  g.rho = rho;
  g.alpha_max = std::acos(1.0 / rho);
  g.alpha_min = std::acos((3.0 - rho) / (1.0 + rho)) - g.alpha_max;
  g.alpha_zero = std::acos((3.0 * rho * rho + 1.0) / (rho * (rho * rho + 3.0)));
  return g;
}

double guarded_acos(double c, double guard) {
  if (std::isnan(c) || c < -1.0 - guard || c > 1.0 + guard) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "arccos argument " << c << " outside [-1, 1] beyond guard " << guard;
    throw DomainError(msg.str());
  }
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double cap_radius_cos(double rho, double r1, double r2) {
  require_ratio(rho);
  require_radii(r1, r2);
  const double c = ((rho * rho + 1.0) * r1 + 2.0 * r2) / (2.0 * rho * (r1 + r2));
  return std::min(c, 1.0);
}

double cap_height(double rho, double r1, double r2) {
  return rho * r1 * (1.0 - cap_radius_cos(rho, r1, r2));
}

double coverage_fraction(double rho, double r1, double r2) {
  // Archimedes: cap area 2 pi R h over sphere area 4 pi R^2.
  return 0.5 * (1.0 - cap_radius_cos(rho, r1, r2));
}

double pair_sum(double rho, double r1, double r2) {
  require_ratio_below_three(rho);
  return coverage_fraction(rho, r1, r2) + coverage_fraction(rho, r2, r1);
}

double pair_sum_floor(double rho) {
  require_ratio_below_three(rho);
  return (-rho * rho + 4.0 * rho - 3.0) / (4.0 * rho);
}

double aux_cap_radius(double rho, double r1, double r2) {
  require_ratio_below_three(rho);
  require_radii(r1, r2);
  const RhoGeometry geom = RhoGeometry::from_rho(rho);

  if (r2 >= (rho * rho - 1.0) * r1 / 4.0) {
    return std::acos(cap_radius_cos(rho, r1, r2));
  }

  // Below (rho - 1) r1 / 2 the ball does not reach S_rho(B1) at all.
  const double smallest = (rho - 1.0) * r1 / 2.0;
  if (r2 < smallest * (1.0 - defaults::kGuardTolerance)) {
    std::ostringstream msg;
    msg << "ball of radius " << r2 << " leaves no cap on the measuring sphere (needs >= "
        << smallest << ")";
    throw DomainError(msg.str());
  }
  const double alpha = guarded_acos((r1 - r2) / (r1 + r2)) - geom.alpha_max;
  return std::clamp(alpha, geom.alpha_min, geom.alpha_max);
}

double actual_cap_area(const RhoGeometry& geom, double alpha) {
  if (!geom.contains(alpha)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "cap radius " << alpha << " outside [" << geom.alpha_min << ", " << geom.alpha_max
        << "]";
    throw DomainError(msg.str());
  }
  const double rho = geom.rho;
  if (alpha >= geom.alpha_zero) {
    return 2.0 * kPi * (1.0 - std::cos(alpha));
  }
  // cos(alpha + alpha_max), the cone half-angle of the tangent cone.
  const double cone_cos =
      std::cos(alpha) / rho - std::sqrt(1.0 - 1.0 / (rho * rho)) * std::sin(alpha);
  const double cap_cos = ((rho * rho - 1.0) * (cone_cos + 1.0) + 4.0) / (4.0 * rho);
  return std::max(0.0, 2.0 * kPi * (1.0 - cap_cos));
}

std::optional<double> vertex_angle(SideTrig opposite, SideTrig adjacent_1, SideTrig adjacent_2,
                                   double guard) noexcept {
  const double denom = adjacent_1.sin * adjacent_2.sin;
  if (!(denom > 0.0)) return std::nullopt;
  const double c = (opposite.cos - adjacent_1.cos * adjacent_2.cos) / denom;
  if (std::isnan(c) || c < -1.0 - guard || c > 1.0 + guard) return std::nullopt;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

TriangleAngles triangle_angles(double x, double y, double z, double guard) {
  if (!(x > 0.0) || !(y > 0.0) || !(z > 0.0)) {
    throw DomainError("cap radii must be positive");
  }
  if (!(x + y < kPi) || !(y + z < kPi) || !(x + z < kPi)) {
    throw DegenerateTriangleError("pairwise cap-radius sums must stay below pi");
  }
  const SideTrig yz = side_trig(y + z);
  const SideTrig xz = side_trig(x + z);
  const SideTrig xy = side_trig(x + y);

  const auto ax = vertex_angle(yz, xz, xy, guard);
  const auto ay = vertex_angle(xz, xy, yz, guard);
  const auto az = vertex_angle(xy, xz, yz, guard);
  if (!ax || !ay || !az) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "caps (" << x << ", " << y << ", " << z << ") do not form a spherical triangle";
    throw DegenerateTriangleError(msg.str());
  }

  TriangleAngles t{x, y, z, *ax, *ay, *az, 0.0};
  t.area = t.angle_x + t.angle_y + t.angle_z - kPi;
  if (!(t.area > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "caps (" << x << ", " << y << ", " << z << ") span a triangle of non-positive area "
        << t.area;
    throw DegenerateTriangleError(msg.str());
  }
  return t;
}

}  // namespace kissbound
