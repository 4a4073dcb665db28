// kissbound: bounds on average kissing numbers of ball packings.
//
// Exit codes: 0 success / certified, 1 certification or audit failed,
// 2 usage error, 3 I/O or input-document error, 4 numeric-domain error,
// 5 certification stopped early (resume from the checkpoint).

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "kissbound/certifier.hpp"
#include "kissbound/config.hpp"
#include "kissbound/density.hpp"
#include "kissbound/errors.hpp"
#include "kissbound/highdim_bounds.hpp"
#include "kissbound/packing.hpp"
#include "kissbound/parallel.hpp"
#include "kissbound/run_metadata.hpp"

namespace {

using namespace kissbound;

enum Exit : int { kOk = 0, kFailed = 1, kUsage = 2, kIo = 3, kNumeric = 4, kStopped = 5 };

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Writes `content` to `output` (plus `<output>.meta`) or to stdout (with the
// metadata on stderr as comment lines).
void emit(const std::string& name, const std::string& content, const std::string& output,
          RunMetadata meta, const Timer& timer) {
  meta.wall_seconds = timer.seconds();
  meta.checksums.emplace_back(name, checksum(content));
  if (output.empty()) {
    std::cout << content << std::flush;
    std::istringstream lines(meta.emit());
    for (std::string line; std::getline(lines, line);) std::cerr << "# " << line << '\n';
    return;
  }
  std::ofstream f(output, std::ios::binary | std::ios::trunc);
  if (!f || !(f << content)) throw IoError("cannot write " + output);
  std::ofstream m(output + ".meta", std::ios::binary | std::ios::trunc);
  if (!m || !(m << meta.emit())) throw IoError("cannot write " + output + ".meta");
}

struct Common {
  std::string format = "text";
  std::string output;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output", c.output, "Write the result to this file (metadata to <file>.meta)");
}

// ---------------------------------------------------------------- highdim

struct HighdimArgs {
  Common common;
  int d = 0;
  std::optional<double> rho;
};

int run_highdim(const HighdimArgs& a, RunMetadata meta, const Timer& timer) {
  const double rho = a.rho.value_or(std::sqrt(3.0));
  const DimBoundResult r = k_bound_highdim(a.d, rho);
  const double bound = a.rho ? r.bound : area_bound(a.d);
  std::ostringstream out;
  if (a.common.format == "csv") {
    out << "d,rho,f_d,bound\n" << r.d << ',' << g17(rho) << ',' << g17(r.f_d) << ',' << g17(bound) << '\n';
  } else {
    char shown[64];
    std::snprintf(shown, sizeof shown, "%.3f", round_up_third_decimal(bound));
    if (a.rho) {
      out << "2/f_" << a.d << "(" << g17(rho) << ") = " << g17(bound) << '\n';
    } else {
      out << "a(" << a.d << ") = " << g17(bound) << '\n';
    }
    out << "f_d = " << g17(r.f_d) << '\n' << "k_" << a.d << " < " << shown << '\n';
  }
  meta.config = {{"d", std::to_string(a.d)}, {"rho", g17(rho)}};
  emit("highdim", out.str(), a.common.output, std::move(meta), timer);
  return kOk;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  Common common;
  double rho_lo = defaults::kSweepLo;
  double rho_hi = defaults::kSweepHi;
  double step = defaults::kSweepStep;
  SearchConfig search;
  std::optional<double> prune;
};

int run_optimize(const OptimizeArgs& a, RunMetadata meta, const Timer& timer) {
  SearchConfig cfg = a.search;
  cfg.workers = resolve_workers(cfg.workers);
  const auto rows = sweep_rho(a.rho_lo, a.rho_hi, a.step, cfg, a.prune);
  const SweepResult& best = best_of(rows);

  std::ostringstream out;
  if (a.common.format == "csv") {
    write_sweep_csv(out, rows, a.prune.has_value());
  } else {
    char buf[256];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "rho=%.6f  max_density=%.12f  objective=%.12f%s\n", r.rho,
                    r.max_density, r.objective, r.pruned ? "  [pruned]" : "");
      out << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "minimum objective %.9f at rho=%.6f, argmax (%.9f, %.9f, %.9f)\n",
                  best.objective, best.rho, best.argmax[0], best.argmax[1], best.argmax[2]);
    out << buf;
  }
  if (a.common.format == "csv") {
    std::fprintf(stderr, "minimum objective %.9f at rho=%.6f\n", best.objective, best.rho);
  }
  meta.config = {{"rho_lo", g17(a.rho_lo)},
                 {"rho_hi", g17(a.rho_hi)},
                 {"step", g17(a.step)},
                 {"search_step", g17(cfg.start_step)},
                 {"search_tolerance", g17(cfg.tolerance)},
                 {"search_max_evaluations", std::to_string(cfg.max_evaluations)},
                 {"prune", a.prune ? g17(*a.prune) : "off"}};
  emit("sweep", out.str(), a.common.output, std::move(meta), timer);
  return kOk;
}

// ---------------------------------------------------------------- certify

struct CertifyArgs {
  Common common;
  double rho = defaults::kRho;
  double delta = defaults::kDelta;
  double target = defaults::kTarget;
  double fp_slack = defaults::kFpSlack;
  unsigned workers = 0;
  std::string checkpoint;
  std::uint64_t checkpoint_interval = defaults::kCheckpointInterval;
  std::optional<std::uint64_t> stop_after;
  bool conservative = false;
};

int run_certify(const CertifyArgs& a, RunMetadata meta, const Timer& timer) {
  CertifyOptions opt;
  opt.workers = resolve_workers(a.workers);
  if (!a.checkpoint.empty()) opt.checkpoint = a.checkpoint;
  opt.checkpoint_interval = a.checkpoint_interval;
  opt.stop_after_boxes = a.stop_after;
  opt.conservative_corners = a.conservative;

  const auto cert = certify(a.rho, a.delta, a.target, a.fp_slack, opt);
  if (!cert) {
    std::cerr << "stopped early; resume with --checkpoint " << a.checkpoint << '\n';
    return kStopped;
  }

  const std::string output = a.common.output.empty() ? "certificate.txt" : a.common.output;
  const std::string text = emit_certificate(*cert);
  meta.config = {{"rho", g17(a.rho)},
                 {"delta", g17(a.delta)},
                 {"target", g17(a.target)},
                 {"fp_slack", g17(a.fp_slack)},
                 {"conservative_corners", a.conservative ? "1" : "0"},
                 {"checkpoint_interval", std::to_string(a.checkpoint_interval)},
                 {"workers", std::to_string(opt.workers)}};
  emit("certificate", text, output, std::move(meta), timer);

  if (a.common.format == "csv") {
    std::cout << "rho,delta,target,boxes_checked,max_box_bound,certified_bound,fp_slack,passed\n"
              << g17(cert->rho) << ',' << g17(cert->delta) << ',' << g17(cert->target) << ','
              << cert->boxes_checked << ',' << g17(cert->max_box_bound) << ','
              << g17(cert->certified_bound) << ',' << g17(cert->fp_slack) << ','
              << (cert->passed ? "true" : "false") << '\n';
  } else {
    std::cout << summary_line(*cert) << '\n';
  }
  return cert->passed ? kOk : kFailed;
}

// ---------------------------------------------------------------- graph

struct GraphArgs {
  Common common;
  std::string input;
  std::optional<double> rho;
  double tolerance = defaults::kTangencyTolerance;
};

int run_graph(const GraphArgs& a, RunMetadata meta, const Timer& timer) {
  Packing packing;
  try {
    packing = load_packing_file(a.input, a.tolerance);
  } catch (const OverlapError& e) {
    std::ostringstream msg;
    msg << a.input << ": /balls/" << e.first() << " and /balls/" << e.second()
        << " overlap (penetration depth " << e.penetration() << ")";
    throw ParseError(msg.str());
  } catch (const ParseError& e) {
    throw ParseError(a.input + ": " + e.what());
  } catch (const DomainError& e) {
    throw ParseError(a.input + ": " + e.what());
  }

  const ContactGraph graph = contact_graph(packing);
  std::optional<CoverageAudit> audit;
  if (a.rho) audit = coverage_audit(packing, *a.rho);

  std::ostringstream out;
  if (a.common.format == "csv") {
    if (audit) {
      write_coverage_csv(out, *audit);
    } else {
      out << "ball_index,degree,coverage_sum\n";
      const auto deg = graph.degrees();
      for (std::size_t i = 0; i < deg.size(); ++i) out << i << ',' << deg[i] << ",nan\n";
    }
  } else {
    out << "vertices: " << graph.vertex_count << '\n'
        << "edges: " << graph.edges.size() << '\n'
        << "average_degree: " << g17(graph.average_degree) << '\n'
        << "average_degree <= " << defaults::kTarget << ": "
        << (graph.average_degree <= defaults::kTarget ? "yes" : "NO") << '\n'
        << "tolerance: " << g17(packing.tolerance) << '\n';
    if (audit) {
      out << "rho: " << g17(audit->rho) << '\n'
          << "edge_sum: " << g17(audit->edge_sum) << '\n'
          << "edge_floor: " << g17(audit->edge_floor) << '\n'
          << "max_ball_coverage: " << g17(audit->max_ball_sum) << '\n'
          << "density_cap: " << g17(audit->density_cap) << '\n'
          << "audit: " << (audit->ok() ? "ok" : "VIOLATED") << '\n';
    }
  }
  meta.config = {{"input", a.input},
                 {"tolerance", g17(a.tolerance)},
                 {"rho", a.rho ? g17(*a.rho) : "none"}};
  emit("graph", out.str(), a.common.output, std::move(meta), timer);
  return audit && !audit->ok() ? kFailed : kOk;
}

// ---------------------------------------------------------------- fcc

struct FccArgs {
  int shells = 2;
  std::string output;
};

int run_fcc(const FccArgs& a, RunMetadata meta, const Timer& timer) {
  meta.config = {{"shells", std::to_string(a.shells)}};
  emit("packing", dump_packing(fcc_fragment(a.shells)), a.output, std::move(meta), timer);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  const Timer timer;
  RunMetadata meta;
  meta.version = std::string(version());
  for (int i = 0; i < argc; ++i) meta.command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Upper bounds on average kissing numbers of ball packings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  HighdimArgs highdim;
  auto* hd = app.add_subcommand("highdim", "Area bound a(d), or 2/f_d(rho) with --rho");
  hd->add_option("--d", highdim.d, "Dimension (3..64)")->required();
  hd->add_option("--rho", highdim.rho, "Inflation ratio in (1, 3)");
  add_common(hd, highdim.common);

  OptimizeArgs optimize;
  auto* op = app.add_subcommand("optimize", "Sweep rho and maximise the triangle density");
  op->add_option("--rho-lo", optimize.rho_lo)->capture_default_str();
  op->add_option("--rho-hi", optimize.rho_hi)->capture_default_str();
  op->add_option("--step", optimize.step)->capture_default_str();
  op->add_option("--search-step", optimize.search.start_step, "Multistart grid spacing (radians)")
      ->capture_default_str();
  op->add_option("--search-tolerance", optimize.search.tolerance)->capture_default_str();
  op->add_option("--max-evaluations", optimize.search.max_evaluations)->capture_default_str();
  op->add_option("--workers", optimize.search.workers, "0 = KISSBOUND_THREADS or all cores");
  op->add_option("--prune", optimize.prune, "Skip rho whose alpha_0 triple already reaches this value");
  add_common(op, optimize.common);

  CertifyArgs cert;
  auto* ce = app.add_subcommand("certify", "Verify the degree bound on a uniform box grid");
  ce->add_option("--rho", cert.rho)->capture_default_str();
  ce->add_option("--delta", cert.delta)->capture_default_str();
  ce->add_option("--target", cert.target)->capture_default_str();
  ce->add_option("--fp-slack", cert.fp_slack)->capture_default_str();
  ce->add_option("--workers", cert.workers, "0 = KISSBOUND_THREADS or all cores");
  ce->add_option("--checkpoint", cert.checkpoint, "Checkpoint file; an existing one is resumed");
  ce->add_option("--checkpoint-interval", cert.checkpoint_interval, "Boxes between checkpoints")
      ->capture_default_str();
  ce->add_option("--stop-after-boxes", cert.stop_after, "Stop (exit 5) once this many boxes are done");
  ce->add_flag("--conservative-corners", cert.conservative,
               "Always take the larger of both candidate corners for the angle bounds");
  add_common(ce, cert.common);

  GraphArgs graph;
  auto* gr = app.add_subcommand("graph", "Contact graph of a packing document");
  gr->add_option("input", graph.input, "Packing JSON file")->required();
  gr->add_option("--rho", graph.rho, "Run the coverage audit at this inflation ratio");
  gr->add_option("--tolerance", graph.tolerance)->capture_default_str();
  add_common(gr, graph.common);

  FccArgs fcc;
  auto* fc = app.add_subcommand("fcc", "Write an FCC fragment packing document");
  fc->add_option("--shells", fcc.shells)->capture_default_str();
  fc->add_option("--output", fcc.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*hd) {
      if (highdim.d < kMinDimension || highdim.d > kMaxDimension) {
        std::cerr << "highdim: --d must lie in [" << kMinDimension << ", " << kMaxDimension << "]\n";
        return kUsage;
      }
      return run_highdim(highdim, meta, timer);
    }
    if (*op) return run_optimize(optimize, meta, timer);
    if (*ce) return run_certify(cert, meta, timer);
    if (*gr) return run_graph(graph, meta, timer);
    if (*fc) return run_fcc(fcc, meta, timer);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
