#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kissbound/config.hpp"
#include "kissbound/spherical_caps.hpp"

// Uniform-grid verification that D_rho(x, y, z) * degree_factor(rho) stays
// below a target over the whole cube [alpha_min, alpha_max]^3.
namespace kissbound {

// [lo[0], hi[0]] x [lo[1], hi[1]] x [lo[2], hi[2]]. `delta` is the nominal
// side; boxes on the upper boundary of the grid may be thinner.
struct Box {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  double delta = 0.0;

  static Box cube(double a, double b, double c, double delta) {
    return {{a, b, c}, {a + delta, b + delta, c + delta}, delta};
  }
};

enum class Axis : int { x = 0, y = 1, z = 2 };

// Upper bound of the vertex angle at `axis` over the box. With the
// remaining two coordinates at their upper ends, the angle is maximised at
// the lower end of its own coordinate while 2p + q + r <= pi on the whole
// box and at the upper end once 2p + q + r >= pi; boxes straddling pi (or
// every box, when `conservative`) take the larger of both corners.
// Corners outside the triangle domain give the trivial bound pi.
double box_angle_upper(const Box& box, Axis axis, bool conservative = false);

// Lower bound of the triangle area over the box (its value at the lower
// corner); 0 when that corner is degenerate.
double box_area_lower(const Box& box);

// Upper bound of D over the box:
//   sum_axis K(hi[axis]) * box_angle_upper(axis) / (2 pi box_area_lower),
// or +infinity when the area bound is not positive.
double box_density_upper(const RhoGeometry& geom, const Box& box, bool conservative = false);

// Grid points alpha_min, alpha_min + delta, ..., alpha_max along one axis.
// The last cell is shrunk so that the cells tile the interval exactly.
std::vector<double> axis_grid(const RhoGeometry& geom, double delta);

// Boxes with index i <= j <= k in an n-cell-per-axis grid.
std::uint64_t reduced_box_count(std::uint64_t cells_per_axis);

struct Certificate {
  double rho = 0.0;
  double delta = 0.0;
  double target = 0.0;
  std::uint64_t boxes_checked = 0;
  double max_box_bound = 0.0;
  double certified_bound = 0.0;
  double fp_slack = 0.0;
  bool passed = false;
  std::array<std::uint32_t, 3> worst_box{};  // grid indices of the box attaining max_box_bound

  bool operator==(const Certificate&) const = default;
};

struct CertifyOptions {
  unsigned workers = 1;
  std::optional<std::filesystem::path> checkpoint;
  std::uint64_t checkpoint_interval = defaults::kCheckpointInterval;
  // Return early (after checkpointing) once this many boxes are done.
  std::optional<std::uint64_t> stop_after_boxes;
  bool conservative_corners = false;
};

// Checks every box of the symmetry-reduced grid {i <= j <= k}. Boxes are
// grouped into slabs of fixed first index i, processed in batches of about
// `checkpoint_interval` boxes. The result is independent of the worker
// count and of interruptions. Empty only when stopped by stop_after_boxes.
std::optional<Certificate> certify(double rho, double delta, double target, double fp_slack,
                                   const CertifyOptions& options = {});

// Single-document key:value text, numbers with 17 significant digits.
std::string emit_certificate(const Certificate& cert);
Certificate parse_certificate(std::string_view text);

// "CERTIFIED k3 < <bound> (rho=<r>, delta=<d>, boxes=<n>)" or "FAILED ...".
std::string summary_line(const Certificate& cert);

}  // namespace kissbound
