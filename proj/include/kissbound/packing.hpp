#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kissbound/config.hpp"

namespace kissbound {

struct Ball {
  std::array<double, 3> center{};
  double radius = 1.0;
};

// Finite set of closed balls with disjoint interiors. `tolerance` is
// relative to r_i + r_j and governs both overlap rejection and tangency.
struct Packing {
  std::vector<Ball> balls;
  double tolerance = defaults::kTangencyTolerance;
};

// Throws DomainError for bad radii/coordinates and OverlapError for the
// first pair (in index order) with distance < (r_i + r_j)(1 - tolerance).
void validate_packing(const Packing& packing);

// Document schema: {"balls": [{"center": [x, y, z], "radius": r}, ...]}.
// Throws ParseError on malformed input (message carries the JSON position
// or pointer) and OverlapError when the balls overlap.
Packing load_packing(std::string_view document, double tolerance = defaults::kTangencyTolerance);
Packing load_packing_file(const std::filesystem::path& path,
                          double tolerance = defaults::kTangencyTolerance);
std::string dump_packing(const Packing& packing);

enum class NeighborSearch { automatic, all_pairs, spatial_grid };

// `automatic` switches to the spatial grid above this many balls.
inline constexpr std::size_t kAllPairsLimit = 10'000;

struct ContactGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
  double average_degree = 0.0;

  std::vector<std::size_t> degrees() const;
};

// Edge (i, j) iff |dist(c_i, c_j) - (r_i + r_j)| <= tolerance (r_i + r_j).
ContactGraph contact_graph(const Packing& packing, NeighborSearch search = NeighborSearch::automatic);

// Unit balls on face-centred cubic sites at most `shells` nearest-neighbour
// steps from the origin, nearest-neighbour distance 2. Index 0 is the
// central ball.
Packing fcc_fragment(int shells);

struct BallCoverage {
  std::size_t index = 0;
  std::size_t degree = 0;
  double coverage_sum = 0.0;  // sum over tangent neighbours of a(B, B_i)
};

struct CoverageAudit {
  double rho = 0.0;
  std::vector<BallCoverage> balls;
  std::size_t edge_count = 0;
  double average_degree = 0.0;
  double edge_sum = 0.0;    // sum over edges of a(X,Y) + a(Y,X)
  double edge_floor = 0.0;  // f_3(rho) * |E|
  double density_cap = 0.0;
  double max_ball_sum = 0.0;
  bool edge_sum_ok = true;
  std::vector<std::size_t> over_cap;  // balls whose sum exceeds density_cap + 1e-6

  bool ok() const { return edge_sum_ok && over_cap.empty(); }
};

// Checks the coverage inequalities on a concrete packing. `density_cap`
// defaults to max_density at rho with the default search configuration.
// Violations are reported in the result, not thrown.
CoverageAudit coverage_audit(const Packing& packing, double rho,
                             std::optional<double> density_cap = std::nullopt);

// CSV: ball_index,degree,coverage_sum
void write_coverage_csv(std::ostream& out, const CoverageAudit& audit);

}  // namespace kissbound
