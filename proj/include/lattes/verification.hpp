// verification.hpp
// Seeded sweeps comparing the closed-form maps with the two-qubit oracle.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lattes {

struct SweepReport {
  std::string name;
  std::uint64_t samples = 0;
  double max_deviation = 0.0;
};

// Four sweeps over `samples` seeded inputs each:
//   pure_f0    oracle (identity post unitary) vs eval_f0, chordal distance
//   pure_fL    oracle (UL) vs eval_fL, chordal distance
//   mixed_S    oracle (identity) vs squaring_S, max entry deviation (and
//              success probability deviation)
//   mixed_ML   oracle (UL) vs apply_M_L, Bloch-vector distance
// Pure inputs are z = r e^{i phi} with log10 r uniform in [-3, 3]; mixed
// inputs are volume-uniform in the Bloch ball.
std::vector<SweepReport> oracle_sweeps(std::uint64_t samples, std::uint64_t seed);

}  // namespace lattes
