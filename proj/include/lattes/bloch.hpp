// bloch.hpp
// Mixed-state generalization of the Lattes protocol.
//
// Two copies of rho go through CNOT and the target is postselected on |0>.
// The survivor's matrix elements are squared and renormalized (the squaring
// step S); the unitary UL follows. On Bloch vectors the combined step reads
//
//   U = (u^2 - v^2) / (1 + w^2),  V = 2w / (1 + w^2),  W = -2uv / (1 + w^2).
//
// It maps the closed ball onto itself, agrees with fL on the sphere and fixes
// the completely mixed state C0 = (0,0,0).

#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "lattes/states.hpp"

namespace lattes {

struct SquaringResult {
  DensityMatrix2 state;
  // rho11^2 + rho22^2 for a unit-trace input; in [1/2, 1].
  double success_probability = 0.0;
};

SquaringResult squaring_S(const DensityMatrix2& rho);

BlochVector apply_M_L(const BlochVector& b);

enum class Branch { plus, minus };

std::string to_string(Branch b);

// Right inverses of apply_M_L. The "+" branch returns u >= 0, the "-" branch
// u <= 0. Where u = 0 is forced (W = 0, U <= 0) the branches take
// v = -sqrt(-U(1+w^2)) and +sqrt(-U(1+w^2)) respectively.
BlochVector inverse_M_L(const BlochVector& target, Branch branch);
inline BlochVector inverse_m_plus(const BlochVector& t) { return inverse_M_L(t, Branch::plus); }
inline BlochVector inverse_m_minus(const BlochVector& t) { return inverse_M_L(t, Branch::minus); }

struct MixedCycle {
  std::string label;
  std::vector<BlochVector> points;
  std::size_t period = 0;
  // max_k |M^period(points[k]) - points[k]|
  double residual = 0.0;
};

// C0 plus the Bloch images of the pure cycles c1..c4.
// Throws std::invalid_argument unless max_period is 1 or 2.
std::vector<MixedCycle> find_mixed_cycles(int max_period);

// Analytic Jacobian d(U,V,W)/d(u,v,w).
Eigen::Matrix3d jacobian_at(const BlochVector& b);

double spectral_radius(const Eigen::Matrix3d& m);

}  // namespace lattes
