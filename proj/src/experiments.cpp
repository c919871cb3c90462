#include "lattes/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace lattes {
namespace {

constexpr int kSchemaVersion = 1;

std::uint32_t low32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
std::uint32_t high32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

unsigned resolve_workers(unsigned workers, std::uint64_t samples) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::clamp<std::uint64_t>(samples, 1, workers));
}

// Runs shard(begin, end) on contiguous index ranges and merges in index order.
template <typename Shard>
ConvergenceHistogram run_sharded(ConvergenceHistogram base, std::uint64_t samples, unsigned workers, Shard shard) {
  const auto start = std::chrono::steady_clock::now();
  workers = resolve_workers(workers, samples);
  std::vector<ConvergenceHistogram> parts(workers);
  std::vector<std::thread> threads;
  for (unsigned k = 0; k < workers; ++k) {
    const std::uint64_t begin = samples * k / workers;
    const std::uint64_t end = samples * (k + 1) / workers;
    if (workers == 1) {
      shard(begin, end, parts[k]);
    } else {
      threads.emplace_back([&, k, begin, end] { shard(begin, end, parts[k]); });
    }
  }
  for (auto& t : threads) t.join();
  for (const auto& p : parts) base.merge(p);
  base.sample_count = samples;
  base.runtime = std::chrono::steady_clock::now() - start;
  return base;
}

}  // namespace

Rng sample_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{low32(seed), high32(seed), low32(index), high32(index)};
  return Rng{seq};
}

BlochVector sample_ball_uniform(double radius, Rng& rng) {
  const double r = radius * std::cbrt(uniform01(rng));
  const double cos_theta = 2.0 * uniform01(rng) - 1.0;
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  const double phi = 2.0 * std::numbers::pi * uniform01(rng);
  return {r * sin_theta * std::cos(phi), r * sin_theta * std::sin(phi), r * cos_theta};
}

void ForwardExperimentConfig::validate() const {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

std::string to_string(BranchPolicy p) {
  switch (p) {
    case BranchPolicy::random:
      return "random";
    case BranchPolicy::plus_only:
      return "plus_only";
    case BranchPolicy::minus_only:
      return "minus_only";
  }
  return "unknown";
}

BranchPolicy parse_branch_policy(const std::string& text) {
  if (text == "random") return BranchPolicy::random;
  if (text == "plus_only" || text == "plus") return BranchPolicy::plus_only;
  if (text == "minus_only" || text == "minus") return BranchPolicy::minus_only;
  throw std::invalid_argument("unknown branch policy '" + text + "' (random|plus_only|minus_only)");
}

void BackwardExperimentConfig::validate() const {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
  if (!(start_radius > 0.0 && start_radius < 1.0)) throw std::invalid_argument("start_radius must lie in (0, 1)");
  if (!(purity_threshold > 0.5 && purity_threshold <= 1.0)) {
    throw std::invalid_argument("purity_threshold must lie in (1/2, 1]");
  }
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(attractor_radius > 0.0)) throw std::invalid_argument("attractor_radius must be positive");
}

std::uint64_t ConvergenceHistogram::converged() const {
  std::uint64_t n = 0;
  for (const auto& [it, c] : counts) n += c;
  return n;
}

std::uint64_t ConvergenceHistogram::max_iterations() const {
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
    if (it->second > 0) return it->first;
  }
  return 0;
}

std::optional<std::uint64_t> ConvergenceHistogram::median_iterations() const {
  const std::uint64_t n = total();
  if (n == 0) return std::nullopt;
  const std::uint64_t rank = (n - 1) / 2;  // zero-based lower median
  std::uint64_t seen = 0;
  for (const auto& [it, c] : counts) {
    seen += c;
    if (seen > rank) return it;
  }
  return std::nullopt;
}

void ConvergenceHistogram::merge(const ConvergenceHistogram& other) {
  for (const auto& [it, c] : other.counts) counts[it] += c;
  for (const auto& [label, c] : other.terminal_counts) terminal_counts[label] += c;
  non_converged += other.non_converged;
}

std::optional<std::uint64_t> forward_first_passage(BlochVector b, double epsilon, std::uint64_t cap) {
  const double eps2 = epsilon * epsilon;
  if (b.norm_squared() <= eps2) return 0;
  for (std::uint64_t it = 1; it <= cap; ++it) {
    b = apply_M_L(b);
    if (b.norm_squared() <= eps2) return it;
  }
  return std::nullopt;
}

BackwardTrajectory backward_first_passage(BlochVector b, double purity_threshold, BranchPolicy policy,
                                          std::uint64_t cap, Rng& rng) {
  if (b.purity() >= purity_threshold) return {0, b};
  for (std::uint64_t it = 1; it <= cap; ++it) {
    Branch branch = Branch::plus;
    switch (policy) {
      case BranchPolicy::random:
        branch = (rng() >> 63) != 0 ? Branch::minus : Branch::plus;
        break;
      case BranchPolicy::plus_only:
        branch = Branch::plus;
        break;
      case BranchPolicy::minus_only:
        branch = Branch::minus;
        break;
    }
    b = inverse_M_L(b, branch);
    if (b.purity() >= purity_threshold) return {it, b};
  }
  return {std::nullopt, b};
}

std::pair<std::string, double> nearest_pure_cycle(const BlochVector& b) {
  static const std::vector<MixedCycle> cycles = find_mixed_cycles(2);
  std::pair<std::string, double> best{"none", std::numeric_limits<double>::infinity()};
  for (const auto& c : cycles) {
    if (c.label == "C0") continue;
    for (const auto& p : c.points) {
      const double d = distance(b, p);
      if (d < best.second) best = {c.label, d};
    }
  }
  return best;
}

ConvergenceHistogram run_forward(const ForwardExperimentConfig& config, unsigned workers) {
  config.validate();
  ConvergenceHistogram base;
  base.experiment = "forward";
  base.config = {
      {"schema_version", fmt::format("{}", kSchemaVersion)},
      {"experiment", "forward"},
      {"seed", fmt::format("{}", config.seed)},
      {"sample_count", fmt::format("{}", config.sample_count)},
      {"epsilon", fmt::format("{}", config.epsilon)},
      {"sampling_radius", fmt::format("{}", config.sampling_radius())},
      {"cap", fmt::format("{}", config.max_iterations)},
      {"metric", "euclidean_norm"},
  };
  return run_sharded(std::move(base), config.sample_count, workers,
                     [&](std::uint64_t begin, std::uint64_t end, ConvergenceHistogram& out) {
                       for (std::uint64_t i = begin; i < end; ++i) {
                         Rng rng = sample_stream(config.seed, i);
                         const BlochVector b = sample_ball_uniform(config.sampling_radius(), rng);
                         const auto steps = forward_first_passage(b, config.epsilon, config.max_iterations);
                         if (steps) {
                           ++out.counts[*steps];
                         } else {
                           ++out.non_converged;
                         }
                       }
                     });
}

ConvergenceHistogram run_backward(const BackwardExperimentConfig& config, unsigned workers) {
  config.validate();
  ConvergenceHistogram base;
  base.experiment = "backward";
  base.config = {
      {"schema_version", fmt::format("{}", kSchemaVersion)},
      {"experiment", "backward"},
      {"seed", fmt::format("{}", config.seed)},
      {"sample_count", fmt::format("{}", config.sample_count)},
      {"start_radius", fmt::format("{}", config.start_radius)},
      {"purity_threshold", fmt::format("{}", config.purity_threshold)},
      {"policy", to_string(config.policy)},
      {"cap", fmt::format("{}", config.max_iterations)},
      {"attractor_radius", fmt::format("{}", config.attractor_radius)},
  };
  return run_sharded(std::move(base), config.sample_count, workers,
                     [&](std::uint64_t begin, std::uint64_t end, ConvergenceHistogram& out) {
                       for (std::uint64_t i = begin; i < end; ++i) {
                         Rng rng = sample_stream(config.seed, i);
                         const BlochVector b = sample_ball_uniform(config.start_radius, rng);
                         const auto traj = backward_first_passage(b, config.purity_threshold, config.policy,
                                                                  config.max_iterations, rng);
                         if (!traj.steps) {
                           ++out.non_converged;
                           continue;
                         }
                         ++out.counts[*traj.steps];
                         const auto [label, d] = nearest_pure_cycle(traj.terminal);
                         ++out.terminal_counts[d <= config.attractor_radius ? label : "none"];
                       }
                     });
}

}  // namespace lattes
