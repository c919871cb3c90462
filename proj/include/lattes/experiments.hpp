// experiments.hpp
// Seeded Monte Carlo drivers for forward and backward convergence studies.
//
// Forward: start uniformly inside the ball of radius 1 - epsilon and iterate
// M_L until |b| <= epsilon. Backward: start uniformly in a small ball around
// C0 and iterate inverse branches until the purity reaches a threshold.
//
// Sample i draws from its own generator seeded by (seed, i), so results do
// not depend on how samples are split over workers.

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lattes/bloch.hpp"
#include "lattes/states.hpp"

namespace lattes {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultIterationCap = 1'000'000;
inline constexpr std::uint64_t kPaperScaleSamples = 1'600'000;

// Generator for sample `index` of a run with master seed `seed`.
Rng sample_stream(std::uint64_t seed, std::uint64_t index);

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Volume-uniform point in the solid ball: radius * U^(1/3), isotropic direction.
BlochVector sample_ball_uniform(double radius, Rng& rng);

struct ForwardExperimentConfig {
  std::uint64_t sample_count = 100'000;
  // Target radius around C0; samples start inside radius 1 - epsilon.
  double epsilon = 1e-3;
  std::uint64_t max_iterations = kDefaultIterationCap;
  std::uint64_t seed = 42;

  double sampling_radius() const { return 1.0 - epsilon; }
  // Throws std::invalid_argument.
  void validate() const;
};

enum class BranchPolicy { random, plus_only, minus_only };

std::string to_string(BranchPolicy p);
// Throws std::invalid_argument on unknown names.
BranchPolicy parse_branch_policy(const std::string& text);

struct BackwardExperimentConfig {
  std::uint64_t sample_count = 10'000;
  double start_radius = 1e-2;
  double purity_threshold = 0.99;
  BranchPolicy policy = BranchPolicy::random;
  std::uint64_t max_iterations = kDefaultIterationCap;
  std::uint64_t seed = 42;
  // Terminal points within this distance of a pure cycle point are
  // attributed to that cycle.
  double attractor_radius = 1e-2;

  void validate() const;
};

struct ConvergenceHistogram {
  std::string experiment;
  // Ordered key/value echo of the configuration.
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t sample_count = 0;
  // first-passage iteration -> number of samples
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t non_converged = 0;
  // Backward runs only: terminal points per nearest cycle label
  // ("C1".."C4", or "none" beyond attractor_radius).
  std::map<std::string, std::uint64_t> terminal_counts;
  // Wall-clock time; not part of the serialized output.
  std::chrono::duration<double> runtime{0.0};

  std::uint64_t converged() const;
  std::uint64_t total() const { return converged() + non_converged; }
  // Largest first-passage count, 0 when nothing converged.
  std::uint64_t max_iterations() const;
  // Lower median over all samples, non-converged ones ranking last
  // (returned as nullopt when the median falls among them).
  std::optional<std::uint64_t> median_iterations() const;

  // Adds counts from another shard of the same run.
  void merge(const ConvergenceHistogram& other);
};

// Iterations of M_L until |b| <= epsilon; nullopt at the cap.
std::optional<std::uint64_t> forward_first_passage(BlochVector b, double epsilon, std::uint64_t cap);

struct BackwardTrajectory {
  std::optional<std::uint64_t> steps;
  BlochVector terminal;
};

// Iterations of inverse branches until purity >= threshold; random policy
// flips a fair coin per step from `rng`.
BackwardTrajectory backward_first_passage(BlochVector b, double purity_threshold, BranchPolicy policy,
                                          std::uint64_t cap, Rng& rng);

// Nearest point among the pure cycles C1..C4 and its distance.
std::pair<std::string, double> nearest_pure_cycle(const BlochVector& b);

// workers = 0 picks std::thread::hardware_concurrency().
ConvergenceHistogram run_forward(const ForwardExperimentConfig& config, unsigned workers = 1);
ConvergenceHistogram run_backward(const BackwardExperimentConfig& config, unsigned workers = 1);

}  // namespace lattes
