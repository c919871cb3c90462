#include "lattes/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lattes/bloch.hpp"
#include "lattes/experiments.hpp"
#include "lattes/oracle.hpp"
#include "lattes/riemann.hpp"

namespace lattes {
namespace {

ExtendedComplex random_z(Rng& rng) {
  const double r = std::pow(10.0, 6.0 * uniform01(rng) - 3.0);
  const double phi = 2.0 * std::numbers::pi * uniform01(rng);
  return ExtendedComplex{std::polar(r, phi)};
}

double entry_deviation(const DensityMatrix2& a, const DensityMatrix2& b) {
  return std::max({std::abs(a.rho11 - b.rho11), std::abs(a.rho22 - b.rho22), std::abs(a.rho12 - b.rho12)});
}

}  // namespace

std::vector<SweepReport> oracle_sweeps(std::uint64_t samples, std::uint64_t seed) {
  const auto identity = oracle::SingleQubitUnitary::identity();
  const auto ul = oracle::SingleQubitUnitary::lattes();
  SweepReport f0{"pure_f0", samples, 0.0};
  SweepReport fl{"pure_fL", samples, 0.0};
  SweepReport s{"mixed_S", samples, 0.0};
  SweepReport ml{"mixed_ML", samples, 0.0};

  for (std::uint64_t i = 0; i < samples; ++i) {
    Rng rng = sample_stream(seed, i);
    const ExtendedComplex z = random_z(rng);
    f0.max_deviation = std::max(f0.max_deviation, chordal_distance(oracle::step_pure(z, identity).z, eval_f0(z)));
    fl.max_deviation = std::max(fl.max_deviation, chordal_distance(oracle::step_pure(z, ul).z, eval_fL(z)));

    const BlochVector b = sample_ball_uniform(1.0, rng);
    const DensityMatrix2 rho = density_from_bloch(b);
    const auto oracle_s = oracle::step_mixed(rho, identity);
    const auto closed_s = squaring_S(rho);
    s.max_deviation = std::max({s.max_deviation, entry_deviation(oracle_s.state, closed_s.state),
                                std::abs(oracle_s.success_probability - closed_s.success_probability)});
    const auto oracle_ml = oracle::step_mixed(rho, ul);
    ml.max_deviation = std::max(ml.max_deviation, distance(bloch_from_density(oracle_ml.state), apply_M_L(b)));
  }
  return {f0, fl, s, ml};
}

}  // namespace lattes
