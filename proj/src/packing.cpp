#include "kissbound/packing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "kissbound/density.hpp"
#include "kissbound/errors.hpp"
#include "kissbound/highdim_bounds.hpp"
#include "kissbound/spherical_caps.hpp"

namespace kissbound {
namespace {

using Pair = std::pair<std::size_t, std::size_t>;

double distance(const Ball& a, const Ball& b) {
  const double dx = a.center[0] - b.center[0];
  const double dy = a.center[1] - b.center[1];
  const double dz = a.center[2] - b.center[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Every pair whose centres are closer than (r_i + r_j)(1 + tolerance),
// sorted by (i, j).
std::vector<Pair> close_pairs(const Packing& p, NeighborSearch search) {
  const auto& balls = p.balls;
  const double slack = 1.0 + p.tolerance;
  auto close = [&](std::size_t i, std::size_t j) {
    return distance(balls[i], balls[j]) <= (balls[i].radius + balls[j].radius) * slack;
  };

  if (search == NeighborSearch::automatic) {
    search = balls.size() > kAllPairsLimit ? NeighborSearch::spatial_grid : NeighborSearch::all_pairs;
  }

  std::vector<Pair> pairs;
  if (search == NeighborSearch::all_pairs) {
    for (std::size_t i = 0; i < balls.size(); ++i)
      for (std::size_t j = i + 1; j < balls.size(); ++j)
        if (close(i, j)) pairs.emplace_back(i, j);
    return pairs;
  }

  double r_max = 0.0;
  for (const Ball& b : balls) r_max = std::max(r_max, b.radius);
  const double cell = 2.0 * r_max * slack;

  using Key = std::array<long long, 3>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t h = 1469598103934665603ULL;
      for (long long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
      return h;
    }
  };
  auto key_of = [cell](const Ball& b) {
    return Key{static_cast<long long>(std::floor(b.center[0] / cell)),
               static_cast<long long>(std::floor(b.center[1] / cell)),
               static_cast<long long>(std::floor(b.center[2] / cell))};
  };

  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> grid;
  for (std::size_t i = 0; i < balls.size(); ++i) grid[key_of(balls[i])].push_back(i);

  for (std::size_t i = 0; i < balls.size(); ++i) {
    const Key k = key_of(balls[i]);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy)
        for (long long dz = -1; dz <= 1; ++dz) {
          const auto it = grid.find({k[0] + dx, k[1] + dy, k[2] + dz});
          if (it == grid.end()) continue;
          for (std::size_t j : it->second)
            if (j > i && close(i, j)) pairs.emplace_back(i, j);
        }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::string pointer(std::size_t i, const char* field = nullptr) {
  std::string s = "/balls/" + std::to_string(i);
  if (field) s += std::string("/") + field;
  return s;
}

}  // namespace

void validate_packing(const Packing& p) {
  if (!(p.tolerance >= 0.0) || !(p.tolerance < 1.0)) {
    throw DomainError("packing tolerance must lie in [0, 1)");
  }
  for (std::size_t i = 0; i < p.balls.size(); ++i) {
    const Ball& b = p.balls[i];
    if (!(b.radius > 0.0) || !std::isfinite(b.radius)) {
      throw DomainError("ball " + std::to_string(i) + " has a non-positive radius");
    }
    for (double c : b.center)
      if (!std::isfinite(c)) throw DomainError("ball " + std::to_string(i) + " has a non-finite centre");
  }
  for (const auto& [i, j] : close_pairs(p, NeighborSearch::automatic)) {
    const double sum = p.balls[i].radius + p.balls[j].radius;
    const double d = distance(p.balls[i], p.balls[j]);
    if (d < sum * (1.0 - p.tolerance)) throw OverlapError(i, j, sum - d);
  }
}

Packing load_packing(std::string_view document, double tolerance) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("packing document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("balls") || !doc["balls"].is_array()) {
    throw ParseError("packing document: expected an object with a \"balls\" array");
  }
  Packing p;
  p.tolerance = tolerance;
  const auto& balls = doc["balls"];
  p.balls.reserve(balls.size());
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const auto& b = balls[i];
    if (!b.is_object()) throw ParseError(pointer(i) + ": expected an object");
    if (!b.contains("center") || !b["center"].is_array() || b["center"].size() != 3) {
      throw ParseError(pointer(i, "center") + ": expected an array of 3 numbers");
    }
    if (!b.contains("radius") || !b["radius"].is_number()) {
      throw ParseError(pointer(i, "radius") + ": expected a number");
    }
    Ball ball;
    for (std::size_t k = 0; k < 3; ++k) {
      if (!b["center"][k].is_number()) {
        throw ParseError(pointer(i, "center") + "/" + std::to_string(k) + ": expected a number");
      }
      ball.center[k] = b["center"][k].get<double>();
    }
    ball.radius = b["radius"].get<double>();
    if (!(ball.radius > 0.0)) throw ParseError(pointer(i, "radius") + ": must be positive");
    p.balls.push_back(ball);
  }
  validate_packing(p);
  return p;
}

Packing load_packing_file(const std::filesystem::path& path, double tolerance) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open packing file " + path.string());
  std::stringstream buf;
  buf << f.rdbuf();
  return load_packing(buf.str(), tolerance);
}

std::string dump_packing(const Packing& p) {
  std::ostringstream out;
  char buf[128];
  out << "{\"balls\": [";
  for (std::size_t i = 0; i < p.balls.size(); ++i) {
    const Ball& b = p.balls[i];
    std::snprintf(buf, sizeof buf, "{\"center\": [%.17g, %.17g, %.17g], \"radius\": %.17g}",
                  b.center[0], b.center[1], b.center[2], b.radius);
    out << (i ? ",\n  " : "\n  ") << buf;
  }
  out << "\n]}\n";
  return out.str();
}

std::vector<std::size_t> ContactGraph::degrees() const {
  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& [i, j] : edges) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

ContactGraph contact_graph(const Packing& p, NeighborSearch search) {
  ContactGraph g;
  g.vertex_count = p.balls.size();
  for (const auto& [i, j] : close_pairs(p, search)) {
    const double sum = p.balls[i].radius + p.balls[j].radius;
    if (std::abs(distance(p.balls[i], p.balls[j]) - sum) <= p.tolerance * sum) g.edges.emplace_back(i, j);
  }
  g.average_degree =
      g.vertex_count ? 2.0 * static_cast<double>(g.edges.size()) / static_cast<double>(g.vertex_count)
                     : 0.0;
  return g;
}

Packing fcc_fragment(int shells) {
  if (shells < 1) throw DomainError("fcc fragment needs at least one shell");
  struct Site {
    int hops;
    std::array<int, 3> ijk;
  };
  std::vector<Site> sites;
  for (int i = -shells; i <= shells; ++i)
    for (int j = -shells; j <= shells; ++j)
      for (int k = -shells; k <= shells; ++k) {
        const int sum = std::abs(i) + std::abs(j) + std::abs(k);
        if (sum % 2 != 0) continue;
        // Steps along (±1, ±1, 0) and permutations.
        const int hops = std::max({std::abs(i), std::abs(j), std::abs(k), sum / 2});
        if (hops <= shells) sites.push_back({hops, {i, j, k}});
      }
  std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
    return a.hops != b.hops ? a.hops < b.hops : a.ijk < b.ijk;
  });

  const double scale = std::sqrt(2.0);
  Packing p;
  p.balls.reserve(sites.size());
  for (const Site& s : sites) {
    p.balls.push_back({{scale * s.ijk[0], scale * s.ijk[1], scale * s.ijk[2]}, 1.0});
  }
  return p;
}

CoverageAudit coverage_audit(const Packing& p, double rho, std::optional<double> density_cap) {
  CoverageAudit audit;
  audit.rho = rho;
  const ContactGraph g = contact_graph(p);
  audit.edge_count = g.edges.size();
  audit.average_degree = g.average_degree;
  audit.density_cap = density_cap ? *density_cap : max_density(RhoGeometry::from_rho(rho)).max_density;

  audit.balls.resize(p.balls.size());
  for (std::size_t i = 0; i < p.balls.size(); ++i) audit.balls[i].index = i;
  for (const auto& [i, j] : g.edges) {
    const double ri = p.balls[i].radius;
    const double rj = p.balls[j].radius;
    const double a_ij = coverage_fraction(rho, ri, rj);
    const double a_ji = coverage_fraction(rho, rj, ri);
    audit.balls[i].coverage_sum += a_ij;
    audit.balls[j].coverage_sum += a_ji;
    ++audit.balls[i].degree;
    ++audit.balls[j].degree;
    audit.edge_sum += a_ij + a_ji;
  }
  const double f3 = min_pair_coverage(3, rho);
  audit.edge_floor = f3 * static_cast<double>(audit.edge_count);
  audit.edge_sum_ok = audit.edge_sum >= audit.edge_floor * (1.0 - 1e-12);
  for (const auto& b : audit.balls) {
    audit.max_ball_sum = std::max(audit.max_ball_sum, b.coverage_sum);
    if (b.coverage_sum > audit.density_cap + 1e-6) audit.over_cap.push_back(b.index);
  }
  return audit;
}

void write_coverage_csv(std::ostream& out, const CoverageAudit& audit) {
  out << "ball_index,degree,coverage_sum\n";
  char buf[96];
  for (const auto& b : audit.balls) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.12g\n", b.index, b.degree, b.coverage_sum);
    out << buf;
  }
}

}  // namespace kissbound
