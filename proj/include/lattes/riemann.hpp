// riemann.hpp
// Pure-state dynamics on the Riemann sphere.
//
// A pure qubit (|0> + z|1>)/sqrt(1+|z|^2) is labelled by z in C u {inf}.
// One round of CNOT + postselection of the target on |0> squares z (f0);
// following it with the single-qubit unitary (1/sqrt2)[[1, i], [i, 1]] gives
// the Lattes map fL(z) = (z^2 + i) / (i z^2 + 1), whose Julia set is the
// whole sphere.

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lattes/extended_complex.hpp"
#include "lattes/states.hpp"

namespace lattes {

// Above this magnitude maps are evaluated in the chart zeta = 1/z.
inline constexpr double kChartSwitchMagnitude = 1e8;

ExtendedComplex eval_f0(const ExtendedComplex& z);
ExtendedComplex eval_fL(const ExtendedComplex& z);

// [z0, fL(z0), ..., fL^steps(z0)]
std::vector<ExtendedComplex> iterate_fL(const ExtendedComplex& z0, std::size_t steps);

// The two preimages +-sqrt((i - w)/(i w - 1)), "+" being the principal root.
// w = i is the critical value (both roots 0); w = -i has both preimages at inf.
std::pair<ExtendedComplex, ExtendedComplex> inverse_fL_branches(const ExtendedComplex& w);

// Derivative of fL read in local charts: the identity chart on the closed
// unit disc and zeta = 1/z outside it. Products of these along a cycle
// telescope to the (chart independent) cycle multiplier.
Complex fL_chart_derivative(const ExtendedComplex& z, const ExtendedComplex& image);

// Multiplier of a cycle given its points in orbit order.
Complex cycle_multiplier(const std::vector<ExtendedComplex>& points);

enum class Stability { repelling, attracting, indifferent };

std::string to_string(Stability s);

// Within this distance of |lambda| = 1 a cycle counts as indifferent.
inline constexpr double kIndifferenceTolerance = 1e-12;

Stability classify_multiplier(Complex multiplier);

struct PureCycle {
  std::string label;
  std::vector<ExtendedComplex> points;
  std::size_t period = 0;
  Complex multiplier{0.0, 0.0};
  Stability stability = Stability::indifferent;
  // max_k chordal(fL^period(points[k]), points[k])
  double residual = 0.0;
};

// Closed-form fixed points and 2-cycles of fL:
//   c1 = 1,
//   c2,c3 = +-sqrt((i-2)/2) - (i+1)/2,
//   c4 = +-sqrt((-i-2)/2) + (i-1)/2 (one 2-cycle).
// These exhaust the three fixed points and the single 2-cycle of a degree-2
// map. Throws std::invalid_argument unless max_period is 1 or 2.
std::vector<PureCycle> find_pure_cycles(int max_period);

// Pure state z -> unit Bloch vector; inf -> (0,0,-1).
BlochVector bloch_from_z(const ExtendedComplex& z);

}  // namespace lattes
