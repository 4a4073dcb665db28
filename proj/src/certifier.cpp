#include "kissbound/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "kissbound/density.hpp"
#include "kissbound/errors.hpp"
#include "kissbound/parallel.hpp"

namespace kissbound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// `trig(u, eu, v, ev)` returns cos/sin of (coordinate u at end eu) +
// (coordinate v at end ev), where end 0 is lo and end 1 is hi.
template <class Trig>
double angle_upper(int p, int q, int r, const std::array<double, 3>& lo,
                   const std::array<double, 3>& hi, const Trig& trig, bool conservative) {
  const SideTrig opposite = trig(q, 1, r, 1);
  auto at_p = [&](int end) {
    const auto a = vertex_angle(opposite, trig(p, end, r, 1), trig(p, end, q, 1));
    return a ? *a : kPi;
  };
  if (!conservative) {
    if (2.0 * hi[p] + hi[q] + hi[r] <= kPi) return at_p(0);
    if (2.0 * lo[p] + lo[q] + lo[r] >= kPi) return at_p(1);
  }
  return std::max(at_p(0), at_p(1));
}

template <class Trig>
double area_lower(const Trig& trig) {
  const SideTrig yz = trig(1, 0, 2, 0);
  const SideTrig xz = trig(0, 0, 2, 0);
  const SideTrig xy = trig(0, 0, 1, 0);
  const auto ax = vertex_angle(yz, xz, xy);
  const auto ay = vertex_angle(xz, xy, yz);
  const auto az = vertex_angle(xy, xz, yz);
  if (!ax || !ay || !az) return 0.0;
  return std::max(0.0, *ax + *ay + *az - kPi);
}

template <class Trig>
double density_upper(const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                     const std::array<double, 3>& k_hi, const Trig& trig, bool conservative) {
  const double area = area_lower(trig);
  if (!(area > 0.0)) return kInf;
  const double ax = angle_upper(0, 1, 2, lo, hi, trig, conservative);
  const double ay = angle_upper(1, 0, 2, lo, hi, trig, conservative);
  const double az = angle_upper(2, 0, 1, lo, hi, trig, conservative);
  const double bound = (k_hi[0] * ax + k_hi[1] * ay + k_hi[2] * az) / (2.0 * kPi * area);
  return std::isnan(bound) ? kInf : bound;
}

struct DirectTrig {
  const Box& box;
  SideTrig operator()(int u, int eu, int v, int ev) const {
    const double a = eu ? box.hi[u] : box.lo[u];
    const double b = ev ? box.hi[v] : box.lo[v];
    return side_trig(a + b);
  }
};

// cos/sin of g[i] + g[j] for every pair of grid points.
class PairTable {
 public:
  explicit PairTable(const std::vector<double>& g) : n_(g.size()), table_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) table_[i * n_ + j] = table_[j * n_ + i] = side_trig(g[i] + g[j]);
  }
  const SideTrig& operator()(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<SideTrig> table_;
};

struct Best {
  double value = -kInf;
  std::array<std::uint32_t, 3> box{};
};

// Strict comparison keeps the first (lexicographically smallest) box on ties.
void absorb(Best& into, const Best& other) {
  if (other.value > into.value) into = other;
}

struct Progress {
  std::size_t next_slab = 0;
  std::uint64_t boxes = 0;
  Best best;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw ParseError("invalid number for '" + key + "': " + value);
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("invalid count for '" + key + "': " + value);
  }
  return std::stoull(value);
}

std::array<std::uint32_t, 3> parse_indices(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  std::array<std::uint64_t, 3> v{};
  std::string extra;
  if (!(in >> v[0] >> v[1] >> v[2]) || (in >> extra)) {
    throw ParseError("invalid box indices for '" + key + "': " + value);
  }
  return {static_cast<std::uint32_t>(v[0]), static_cast<std::uint32_t>(v[1]),
          static_cast<std::uint32_t>(v[2])};
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key: value'");
    }
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    if (!value.empty() && value.front() == ' ') value.erase(0, 1);
    if (!kv.emplace(key, value).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ParseError("missing key '" + key + "'");
  return it->second;
}

std::string format_indices(const std::array<std::uint32_t, 3>& b) {
  return std::to_string(b[0]) + " " + std::to_string(b[1]) + " " + std::to_string(b[2]);
}

constexpr std::string_view kCheckpointTag = "kissbound-checkpoint";

void write_checkpoint(const std::filesystem::path& path, double rho, double delta,
                      bool conservative, const Progress& p) {
  std::ostringstream out;
  out << kCheckpointTag << ": 1\n"
      << "rho: " << format_double(rho) << '\n'
      << "delta: " << format_double(delta) << '\n'
      << "conservative_corners: " << (conservative ? 1 : 0) << '\n'
      << "next_slab: " << p.next_slab << '\n'
      << "boxes_checked: " << p.boxes << '\n'
      << "max_box_bound: " << format_double(p.best.value) << '\n'
      << "worst_box: " << format_indices(p.best.box) << '\n';
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write checkpoint " + tmp.string());
    f << out.str();
    if (!f) throw IoError("failed writing checkpoint " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move checkpoint into place: " + ec.message());
}

std::optional<Progress> read_checkpoint(const std::filesystem::path& path, double rho,
                                        double delta, bool conservative) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read checkpoint " + path.string());
  std::stringstream buf;
  buf << f.rdbuf();
  const auto kv = parse_key_values(buf.str());
  if (require(kv, std::string(kCheckpointTag)) != "1") throw ParseError("unknown checkpoint version");
  if (require(kv, "rho") != format_double(rho) || require(kv, "delta") != format_double(delta) ||
      require(kv, "conservative_corners") != (conservative ? "1" : "0")) {
    throw IoError("checkpoint " + path.string() + " belongs to a different run");
  }
  Progress p;
  p.next_slab = parse_count("next_slab", require(kv, "next_slab"));
  p.boxes = parse_count("boxes_checked", require(kv, "boxes_checked"));
  p.best.value = parse_double("max_box_bound", require(kv, "max_box_bound"));
  p.best.box = parse_indices("worst_box", require(kv, "worst_box"));
  return p;
}

}  // namespace

double box_angle_upper(const Box& box, Axis axis, bool conservative) {
  const DirectTrig trig{box};
  switch (axis) {
    case Axis::x:
      return angle_upper(0, 1, 2, box.lo, box.hi, trig, conservative);
    case Axis::y:
      return angle_upper(1, 0, 2, box.lo, box.hi, trig, conservative);
    case Axis::z:
      return angle_upper(2, 0, 1, box.lo, box.hi, trig, conservative);
  }
  return kPi;
}

double box_area_lower(const Box& box) { return area_lower(DirectTrig{box}); }

double box_density_upper(const RhoGeometry& geom, const Box& box, bool conservative) {
  for (int a = 0; a < 3; ++a) {
    if (!geom.contains(box.lo[a]) || !geom.contains(box.hi[a]) || box.lo[a] > box.hi[a]) {
      throw DomainError("box does not lie inside the cap-radius cube");
    }
  }
  const std::array<double, 3> k_hi{actual_cap_area(geom, box.hi[0]),
                                   actual_cap_area(geom, box.hi[1]),
                                   actual_cap_area(geom, box.hi[2])};
  return density_upper(box.lo, box.hi, k_hi, DirectTrig{box}, conservative);
}

std::vector<double> axis_grid(const RhoGeometry& geom, double delta) {
  if (!(delta > 0.0)) throw DomainError("box side must be positive");
  const double cells = std::ceil(geom.width() / delta);
  if (cells > 1e6) throw DomainError("box side too small for the cap-radius interval");
  std::vector<double> g;
  for (std::size_t i = 0;; ++i) {
    const double p = geom.alpha_min + static_cast<double>(i) * delta;
    if (p >= geom.alpha_max) break;
    g.push_back(p);
  }
  g.push_back(geom.alpha_max);
  return g;
}

std::uint64_t reduced_box_count(std::uint64_t n) { return n * (n + 1) * (n + 2) / 6; }

std::optional<Certificate> certify(double rho, double delta, double target, double fp_slack,
                                   const CertifyOptions& options) {
  const RhoGeometry geom = RhoGeometry::from_rho(rho);
  if (!(target > 0.0)) throw DomainError("certification target must be positive");
  if (!(fp_slack >= 0.0)) throw DomainError("fp_slack must be non-negative");
  if (options.checkpoint_interval == 0) throw DomainError("checkpoint interval must be positive");

  const std::vector<double> g = axis_grid(geom, delta);
  const std::size_t n = g.size() - 1;
  std::vector<double> k_at(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) k_at[i] = actual_cap_area(geom, g[i]);
  const PairTable table(g);
  const bool conservative = options.conservative_corners;

  auto slab = [&](std::size_t i) {
    Best best;
    std::array<double, 3> lo{}, hi{}, k_hi{};
    std::array<std::size_t, 3> idx{};
    const auto trig = [&](int u, int eu, int v, int ev) -> const SideTrig& {
      return table(idx[u] + eu, idx[v] + ev);
    };
    idx[0] = i;
    lo[0] = g[i];
    hi[0] = g[i + 1];
    k_hi[0] = k_at[i + 1];
    for (std::size_t j = i; j < n; ++j) {
      idx[1] = j;
      lo[1] = g[j];
      hi[1] = g[j + 1];
      k_hi[1] = k_at[j + 1];
      for (std::size_t k = j; k < n; ++k) {
        idx[2] = k;
        lo[2] = g[k];
        hi[2] = g[k + 1];
        k_hi[2] = k_at[k + 1];
        const double v = density_upper(lo, hi, k_hi, trig, conservative);
        if (v > best.value) {
          best.value = v;
          best.box = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                      static_cast<std::uint32_t>(k)};
        }
      }
    }
    return best;
  };
  auto slab_boxes = [n](std::size_t i) {
    const std::uint64_t m = n - i;
    return m * (m + 1) / 2;
  };

  Progress progress;
  if (options.checkpoint) {
    if (auto restored = read_checkpoint(*options.checkpoint, rho, delta, conservative)) {
      progress = *restored;
    }
  }

  const unsigned workers = resolve_workers(options.workers);
  while (progress.next_slab < n) {
    if (options.stop_after_boxes && progress.boxes >= *options.stop_after_boxes) return std::nullopt;
    std::size_t end = progress.next_slab;
    std::uint64_t batch_boxes = 0;
    while (end < n && (end == progress.next_slab || batch_boxes < options.checkpoint_interval)) {
      batch_boxes += slab_boxes(end);
      ++end;
    }
    const std::size_t first = progress.next_slab;
    std::vector<Best> results(end - first);
    parallel_for(results.size(), workers, [&](std::size_t s) { results[s] = slab(first + s); });
    for (const Best& b : results) absorb(progress.best, b);
    progress.boxes += batch_boxes;
    progress.next_slab = end;
    if (options.checkpoint) write_checkpoint(*options.checkpoint, rho, delta, conservative, progress);
  }

  Certificate cert;
  cert.rho = rho;
  cert.delta = delta;
  cert.target = target;
  cert.boxes_checked = progress.boxes;
  cert.max_box_bound = progress.best.value;
  cert.fp_slack = fp_slack;
  cert.certified_bound = cert.max_box_bound * degree_factor(rho) * (1.0 + fp_slack);
  cert.passed = cert.certified_bound < target;
  cert.worst_box = progress.best.box;
  return cert;
}

std::string emit_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "rho: " << format_double(c.rho) << '\n'
      << "delta: " << format_double(c.delta) << '\n'
      << "target: " << format_double(c.target) << '\n'
      << "boxes_checked: " << c.boxes_checked << '\n'
      << "max_box_bound: " << format_double(c.max_box_bound) << '\n'
      << "certified_bound: " << format_double(c.certified_bound) << '\n'
      << "fp_slack: " << format_double(c.fp_slack) << '\n'
      << "passed: " << (c.passed ? "true" : "false") << '\n'
      << "worst_box: " << format_indices(c.worst_box) << '\n';
  return out.str();
}

Certificate parse_certificate(std::string_view text) {
  const auto kv = parse_key_values(text);
  static const char* const kKeys[] = {"rho",     "delta",           "target",
                                      "boxes_checked", "max_box_bound", "certified_bound",
                                      "fp_slack", "passed",         "worst_box"};
  for (const auto& [key, value] : kv) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw ParseError("unknown certificate key '" + key + "'");
    }
  }
  Certificate c;
  c.rho = parse_double("rho", require(kv, "rho"));
  c.delta = parse_double("delta", require(kv, "delta"));
  c.target = parse_double("target", require(kv, "target"));
  c.boxes_checked = parse_count("boxes_checked", require(kv, "boxes_checked"));
  c.max_box_bound = parse_double("max_box_bound", require(kv, "max_box_bound"));
  c.certified_bound = parse_double("certified_bound", require(kv, "certified_bound"));
  c.fp_slack = parse_double("fp_slack", require(kv, "fp_slack"));
  const std::string& passed = require(kv, "passed");
  if (passed != "true" && passed != "false") throw ParseError("invalid value for 'passed': " + passed);
  c.passed = passed == "true";
  c.worst_box = parse_indices("worst_box", require(kv, "worst_box"));
  return c;
}

std::string summary_line(const Certificate& c) {
  char buf[256];
  if (c.passed) {
    // Round the displayed bound up so the printed claim stays valid.
    double shown = std::ceil(c.certified_bound * 1e6) / 1e6;
    if (shown < c.certified_bound) shown += 1e-6;
    std::snprintf(buf, sizeof buf, "CERTIFIED k3 < %.6f (rho=%g, delta=%g, boxes=%llu)", shown,
                  c.rho, c.delta, static_cast<unsigned long long>(c.boxes_checked));
  } else {
    std::snprintf(buf, sizeof buf,
                  "FAILED (bound %.9g not below target %g; rho=%g, delta=%g, boxes=%llu)",
                  c.certified_bound, c.target, c.rho, c.delta,
                  static_cast<unsigned long long>(c.boxes_checked));
  }
  return buf;
}

}  // namespace kissbound
