#pragma once

#include <cmath>
#include <optional>

#include "kissbound/config.hpp"

// Closed-form cap geometry on the measuring sphere S_rho(B) of radius
// rho * r(B), concentric with a ball B. All angles are in radians and all
// areas are on the unit sphere (the measuring sphere rescaled to radius 1).
namespace kissbound {

inline constexpr double kPi = 3.14159265358979323846;

// Constants of the cap-radius interval for one inflation ratio rho in (1,3).
//
//   alpha_max  - radius of the cap cut by a ball of unbounded radius.
//   alpha_min  - smallest auxiliary (tangent-cone) cap radius; a ball whose
//                cap on S_rho(B) degenerates to a point has this radius.
//   alpha_zero - threshold where the tangent point of the common tangent
//                cone lies exactly on S_rho(B); above it the auxiliary cap
//                coincides with the actual cap.
struct RhoGeometry {
  double rho = 0.0;
  double alpha_min = 0.0;
  double alpha_zero = 0.0;
  double alpha_max = 0.0;

  static RhoGeometry from_rho(double rho);

  double width() const noexcept { return alpha_max - alpha_min; }
  bool contains(double alpha, double guard = defaults::kGuardTolerance) const noexcept {
    return alpha >= alpha_min - guard && alpha <= alpha_max + guard;
  }
};

// arccos with round-off tolerance: arguments within `guard` of [-1, 1] are
// clamped, anything further out throws DomainError.
double guarded_acos(double c, double guard = defaults::kGuardTolerance);

// Cosine of the angular radius of the cap S_rho(B1) ∩ B2 for tangent balls
// of radii r1, r2. Clamped to 1 when the intersection is empty.
double cap_radius_cos(double rho, double r1, double r2);

// Height of S_rho(B1) ∩ B2 (in the length units of r1); 0 when empty.
double cap_height(double rho, double r1, double r2);

// a(B1, B2): fraction of the area of S_rho(B1) covered by B2.
double coverage_fraction(double rho, double r1, double r2);

// a(B1, B2) + a(B2, B1).
double pair_sum(double rho, double r1, double r2);

// Lower bound of pair_sum over all radius pairs: (-rho^2 + 4 rho - 3) / (4 rho).
// It is attained whenever both caps are non-empty.
double pair_sum_floor(double rho);

// Angular radius of the auxiliary cap C_rho(B1, B2). Uses the actual cap
// when r2 >= (rho^2 - 1) r1 / 4 and the common-tangent-cone cap otherwise.
// Throws DomainError when B2 is too small to leave any cap on S_rho(B1).
double aux_cap_radius(double rho, double r1, double r2);

// K(alpha): area of the actual cap whose auxiliary cap has radius alpha.
// Continuous and non-decreasing on [alpha_min, alpha_max], zero at alpha_min.
double actual_cap_area(const RhoGeometry& geom, double alpha);

struct TriangleAngles {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double angle_x = 0.0;
  double angle_y = 0.0;
  double angle_z = 0.0;
  double area = 0.0;
};

// Vertex angles of the spherical triangle whose vertices are the centres of
// three pairwise tangent caps of radii x, y, z (so the side opposite the
// x-vertex has length y + z), plus its area as the angular excess.
TriangleAngles triangle_angles(double x, double y, double z,
                               double guard = defaults::kGuardTolerance);

// Cosine and sine of one side length.
struct SideTrig {
  double cos = 1.0;
  double sin = 0.0;
};

inline SideTrig side_trig(double length) noexcept {
  return {std::cos(length), std::sin(length)};
}

// Vertex angle from the spherical law of cosines given the opposite side and
// the two adjacent sides. Empty when the configuration is degenerate beyond
// the guard tolerance.
std::optional<double> vertex_angle(SideTrig opposite, SideTrig adjacent_1, SideTrig adjacent_2,
                                   double guard = defaults::kGuardTolerance) noexcept;

}  // namespace kissbound
