#include "lattes/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lattes/bloch.hpp"
#include "lattes/experiments.hpp"
#include "lattes/histogram_io.hpp"
#include "lattes/riemann.hpp"
#include "lattes/verification.hpp"

namespace lattes::cli {
namespace {

// Published 3-decimal Bloch coordinates of the cycles up to length two.
const std::map<std::string, std::vector<BlochVector>>& published_bloch_cycles() {
  static const std::map<std::string, std::vector<BlochVector>> table = {
      {"C0", {{0.0, 0.0, 0.0}}},
      {"C1", {{1.0, 0.0, 0.0}}},
      {"C2", {{-0.382, 0.786, 0.486}}},
      {"C3", {{-0.382, -0.786, -0.486}}},
      {"C4", {{-0.382, -0.786, 0.486}, {-0.382, 0.786, -0.486}}},
  };
  return table;
}

// Prints -0 as 0.
double tidy(double x) { return x == 0.0 ? 0.0 : x; }

std::string format_point(const BlochVector& b) { return fmt::format("({:.6f} {:.6f} {:.6f})", b.u, b.v, b.w); }

std::string format_point(const ExtendedComplex& z) {
  if (z.is_infinite()) return "inf";
  return fmt::format("({:.15g}{:+.15g}i)", z.value().real(), z.value().imag());
}

template <typename Point>
std::string join_cycle(const std::vector<Point>& points) {
  std::string s;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (k > 0) s += " <-> ";
    s += format_point(points[k]);
  }
  return s;
}

struct ExperimentOptions {
  std::string out_path;
  std::string format = "csv";
  unsigned workers = 1;
  double max_non_converged_fraction = 0.0;
};

void add_experiment_options(CLI::App* cmd, ExperimentOptions& opt) {
  cmd->add_option("--out", opt.out_path, "Output histogram file (stdout when omitted)");
  cmd->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", opt.workers, "Worker threads (0 = hardware concurrency)");
  cmd->add_option("--max-non-converged-fraction", opt.max_non_converged_fraction,
                  "Fail when more than this fraction of samples hits the cap")
      ->check(CLI::Range(0.0, 1.0));
}

// Truncates the output up front so an unwritable path fails before any work.
void check_output_path(const std::string& path) {
  if (path.empty()) return;
  std::ofstream probe(path, std::ios::binary | std::ios::trunc);
  if (!probe) throw std::runtime_error("cannot open output file '" + path + "'");
}

int emit_histogram(const ConvergenceHistogram& h, const ExperimentOptions& opt, std::ostream& out,
                   std::ostream& err) {
  const OutputFormat format = opt.format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (opt.out_path.empty()) {
    if (format == OutputFormat::csv) {
      write_csv(out, h);
    } else {
      out << to_json(h);
    }
  } else {
    write_histogram_file(opt.out_path, h, format);
  }
  const auto median = h.median_iterations();
  err << fmt::format("{}: {} samples, {} converged, {} non-converged, max {} iterations, median {}, {:.3f} s\n",
                     h.experiment, h.sample_count, h.converged(), h.non_converged, h.max_iterations(),
                     median ? std::to_string(*median) : std::string("n/a"), h.runtime.count());
  const double fraction = static_cast<double>(h.non_converged) / static_cast<double>(h.sample_count);
  if (fraction > opt.max_non_converged_fraction) {
    err << fmt::format("error: {} of {} samples hit the iteration cap (allowed fraction {})\n", h.non_converged,
                       h.sample_count, opt.max_non_converged_fraction);
    return kExitCapExceeded;
  }
  return kExitOk;
}

int cmd_iterate(const std::string& z_text, const std::string& bloch_text, std::size_t steps, std::ostream& out) {
  if (z_text.empty() == bloch_text.empty()) throw std::invalid_argument("iterate: give exactly one of --z or --bloch");
  if (!z_text.empty()) {
    const auto orbit = iterate_fL(ExtendedComplex::parse(z_text), steps);
    out << "step,z\n";
    for (std::size_t k = 0; k < orbit.size(); ++k) out << k << ',' << orbit[k].to_string() << '\n';
    return kExitOk;
  }
  BlochVector b = BlochVector::parse(bloch_text);
  if (b.norm() > 1.0 + kBallTolerance) throw std::invalid_argument("iterate: Bloch vector outside the unit ball");
  out << "step,u,v,w,purity\n";
  for (std::size_t k = 0; k <= steps; ++k) {
    out << fmt::format("{},{},{},{},{}\n", k, tidy(b.u), tidy(b.v), tidy(b.w), b.purity());
    b = apply_M_L(b);
  }
  return kExitOk;
}

int cmd_cycles(int max_period, const std::string& space, std::ostream& out) {
  if (space == "riemann") {
    out << "label,period,points,residual,multiplier,abs_multiplier,stability\n";
    for (const auto& c : find_pure_cycles(max_period)) {
      out << fmt::format("{},{},{},{:.3e},{:.12g}{:+.12g}i,{:.12g},{}\n", c.label, c.period, join_cycle(c.points),
                         c.residual, c.multiplier.real(), c.multiplier.imag(), std::abs(c.multiplier),
                         to_string(c.stability));
    }
    return kExitOk;
  }
  out << "label,period,points,residual,table_deviation\n";
  const auto& table = published_bloch_cycles();
  for (const auto& c : find_mixed_cycles(max_period)) {
    double deviation = 0.0;
    const auto& ref = table.at(c.label);
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      const BlochVector d = c.points[k] - ref[k];
      deviation = std::max({deviation, std::abs(d.u), std::abs(d.v), std::abs(d.w)});
    }
    out << fmt::format("{},{},{},{:.3e},{:.3e}\n", c.label, c.period, join_cycle(c.points), c.residual, deviation);
  }
  return kExitOk;
}

int cmd_oracle_check(std::uint64_t samples, std::uint64_t seed, double tolerance, std::ostream& out) {
  if (samples < 1) throw std::invalid_argument("oracle-check: --samples must be >= 1");
  bool ok = true;
  out << "sweep,samples,max_deviation,tolerance,result\n";
  for (const auto& r : oracle_sweeps(samples, seed)) {
    const bool pass = r.max_deviation < tolerance;
    ok = ok && pass;
    out << fmt::format("{},{},{:.3e},{:.1e},{}\n", r.name, r.samples, r.max_deviation, tolerance,
                       pass ? "PASS" : "FAIL");
  }
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattes-map qubit protocol simulator"};
  app.require_subcommand(1);

  std::string z_text;
  std::string bloch_text;
  std::size_t steps = 10;
  auto* iterate = app.add_subcommand("iterate", "Print an orbit of fL (--z) or M_L (--bloch)");
  iterate->add_option("--z", z_text, "Pure state label: 're,im', 're' or 'inf'");
  iterate->add_option("--bloch", bloch_text, "Mixed state 'u,v,w'");
  iterate->add_option("--steps", steps, "Number of map applications");

  int max_period = 2;
  std::string space = "bloch";
  auto* cycles = app.add_subcommand("cycles", "Closed-form fixed cycles up to length two");
  cycles->add_option("--max-period", max_period, "1 or 2")->check(CLI::Range(1, 2));
  cycles->add_option("--space", space, "riemann or bloch")->check(CLI::IsMember({"riemann", "bloch"}));

  std::uint64_t oracle_samples = 10'000;
  std::uint64_t oracle_seed = 42;
  double tolerance = 1e-12;
  auto* oracle_check = app.add_subcommand("oracle-check", "Compare closed-form maps with the two-qubit oracle");
  oracle_check->add_option("--samples", oracle_samples, "Inputs per sweep");
  oracle_check->add_option("--seed", oracle_seed, "Master seed");
  oracle_check->add_option("--tolerance", tolerance, "Maximum allowed deviation");

  ForwardExperimentConfig fwd;
  ExperimentOptions fwd_opt;
  bool fwd_paper_scale = false;
  auto* forward = app.add_subcommand("forward", "Forward convergence to the completely mixed state");
  forward->add_option("--samples", fwd.sample_count, "Number of random initial states");
  forward->add_option("--epsilon", fwd.epsilon, "Target radius around C0 and sampling-radius deficit");
  forward->add_option("--seed", fwd.seed, "Master seed");
  forward->add_option("--cap", fwd.max_iterations, "Iteration cap per sample");
  forward->add_flag("--paper-scale", fwd_paper_scale, "Use 1.6e6 samples");
  add_experiment_options(forward, fwd_opt);

  BackwardExperimentConfig bwd;
  ExperimentOptions bwd_opt;
  std::string policy = "random";
  bool bwd_paper_scale = false;
  auto* backward = app.add_subcommand("backward", "Backward iteration from near C0 to the pure states");
  backward->add_option("--samples", bwd.sample_count, "Number of random initial states");
  backward->add_option("--radius", bwd.start_radius, "Radius of the starting ball around C0");
  backward->add_option("--threshold", bwd.purity_threshold, "Purity that counts as converged");
  backward->add_option("--policy", policy, "random, plus_only or minus_only");
  backward->add_option("--seed", bwd.seed, "Master seed");
  backward->add_option("--cap", bwd.max_iterations, "Iteration cap per sample");
  backward->add_option("--attractor-radius", bwd.attractor_radius, "Distance for attributing terminal points");
  backward->add_flag("--paper-scale", bwd_paper_scale, "Use 1.6e6 samples");
  add_experiment_options(backward, bwd_opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*iterate) return cmd_iterate(z_text, bloch_text, steps, out);
    if (*cycles) return cmd_cycles(max_period, space, out);
    if (*oracle_check) return cmd_oracle_check(oracle_samples, oracle_seed, tolerance, out);
    if (*forward) {
      if (fwd_paper_scale) fwd.sample_count = kPaperScaleSamples;
      fwd.validate();
      check_output_path(fwd_opt.out_path);
      return emit_histogram(run_forward(fwd, fwd_opt.workers), fwd_opt, out, err);
    }
    if (*backward) {
      if (bwd_paper_scale) bwd.sample_count = kPaperScaleSamples;
      bwd.policy = parse_branch_policy(policy);
      bwd.validate();
      check_output_path(bwd_opt.out_path);
      return emit_histogram(run_backward(bwd, bwd_opt.workers), bwd_opt, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lattes::cli
