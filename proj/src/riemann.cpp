#include "lattes/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lattes {
namespace {

constexpr Complex kI{0.0, 1.0};

bool in_reciprocal_chart(const ExtendedComplex& z) { return z.is_infinite() || z.magnitude() > 1.0; }

// Quotient that maps 0 denominators and overflow to infinity.
ExtendedComplex safe_ratio(Complex num, Complex den) {
  if (den == Complex{0.0, 0.0}) return ExtendedComplex::infinity();
  const Complex q = num / den;
  if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) return ExtendedComplex::infinity();
  return ExtendedComplex{q};
}

ExtendedComplex fL_power(ExtendedComplex z, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) z = eval_fL(z);
  return z;
}

}  // namespace

ExtendedComplex eval_f0(const ExtendedComplex& z) {
  if (z.is_infinite()) return z;
  const Complex x = z.value();
  if (std::abs(x) > kChartSwitchMagnitude) {
    const Complex zeta = 1.0 / x;
    return safe_ratio(1.0, zeta * zeta);
  }
  return ExtendedComplex{x * x};
}

ExtendedComplex eval_fL(const ExtendedComplex& z) {
  if (z.is_infinite()) return ExtendedComplex{-kI};
  const Complex x = z.value();
  if (std::abs(x) > kChartSwitchMagnitude) {
    // fL(1/zeta) = (1 + i zeta^2) / (i + zeta^2)
    const Complex zeta2 = (1.0 / x) * (1.0 / x);
    return safe_ratio(1.0 + kI * zeta2, kI + zeta2);
  }
  const Complex x2 = x * x;
  return safe_ratio(x2 + kI, kI * x2 + 1.0);
}

std::vector<ExtendedComplex> iterate_fL(const ExtendedComplex& z0, std::size_t steps) {
  std::vector<ExtendedComplex> orbit;
  orbit.reserve(steps + 1);
  orbit.push_back(z0);
  for (std::size_t k = 0; k < steps; ++k) orbit.push_back(eval_fL(orbit.back()));
  return orbit;
}

std::pair<ExtendedComplex, ExtendedComplex> inverse_fL_branches(const ExtendedComplex& w) {
  // z^2 (i w - 1) = i - w
  ExtendedComplex square;
  if (w.is_infinite()) {
    square = ExtendedComplex{kI};
  } else if (w.magnitude() > kChartSwitchMagnitude) {
    const Complex zeta = 1.0 / w.value();
    square = safe_ratio(kI * zeta - 1.0, kI - zeta);
  } else {
    square = safe_ratio(kI - w.value(), kI * w.value() - 1.0);
  }
  if (square.is_infinite()) return {square, square};
  const Complex root = std::sqrt(square.value());
  return {ExtendedComplex{root}, ExtendedComplex{-root}};
}

Complex fL_chart_derivative(const ExtendedComplex& z, const ExtendedComplex& image) {
  const bool out_reciprocal = in_reciprocal_chart(image);
  if (!in_reciprocal_chart(z)) {
    const Complex x = z.value();
    const Complex x2 = x * x;
    if (out_reciprocal) {
      const Complex num = x2 + kI;
      return -4.0 * x / (num * num);
    }
    const Complex den = kI * x2 + 1.0;
    return 4.0 * x / (den * den);
  }
  const Complex zeta = z.is_infinite() ? Complex{0.0, 0.0} : 1.0 / z.value();
  const Complex zeta2 = zeta * zeta;
  if (out_reciprocal) {
    const Complex den = 1.0 + kI * zeta2;
    return 4.0 * zeta / (den * den);
  }
  const Complex den = kI + zeta2;
  return -4.0 * zeta / (den * den);
}

Complex cycle_multiplier(const std::vector<ExtendedComplex>& points) {
  Complex lambda{1.0, 0.0};
  for (std::size_t k = 0; k < points.size(); ++k) {
    lambda *= fL_chart_derivative(points[k], points[(k + 1) % points.size()]);
  }
  return lambda;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::repelling:
      return "repelling";
    case Stability::attracting:
      return "attracting";
    case Stability::indifferent:
      return "indifferent";
  }
  return "unknown";
}

Stability classify_multiplier(Complex multiplier) {
  const double m = std::abs(multiplier);
  if (m > 1.0 + kIndifferenceTolerance) return Stability::repelling;
  if (m < 1.0 - kIndifferenceTolerance) return Stability::attracting;
  return Stability::indifferent;
}

std::vector<PureCycle> find_pure_cycles(int max_period) {
  if (max_period != 1 && max_period != 2) {
    throw std::invalid_argument("find_pure_cycles: closed forms exist only for max_period 1 or 2");
  }
  const Complex r23 = std::sqrt((kI - 2.0) / 2.0);
  const Complex r4 = std::sqrt((-kI - 2.0) / 2.0);

  std::vector<std::pair<std::string, std::vector<ExtendedComplex>>> closed_forms = {
      {"c1", {ExtendedComplex{1.0}}},
      {"c2", {ExtendedComplex{r23 - (kI + 1.0) / 2.0}}},
      {"c3", {ExtendedComplex{-r23 - (kI + 1.0) / 2.0}}},
  };
  if (max_period >= 2) {
    closed_forms.push_back({"c4", {ExtendedComplex{r4 + (kI - 1.0) / 2.0}, ExtendedComplex{-r4 + (kI - 1.0) / 2.0}}});
  }

  std::vector<PureCycle> cycles;
  for (auto& [label, points] : closed_forms) {
    PureCycle c;
    c.label = label;
    c.period = points.size();
    c.points = std::move(points);
    for (const auto& p : c.points) {
      c.residual = std::max(c.residual, chordal_distance(fL_power(p, c.period), p));
    }
    c.multiplier = cycle_multiplier(c.points);
    c.stability = classify_multiplier(c.multiplier);
    cycles.push_back(std::move(c));
  }
  return cycles;
}

BlochVector bloch_from_z(const ExtendedComplex& z) {
  if (z.is_infinite()) return {0.0, 0.0, -1.0};
  const Complex x = z.value();
  const double r2 = std::norm(x);
  if (r2 <= 1.0) {
    const double d = 1.0 + r2;
    return {2.0 * x.real() / d, 2.0 * x.imag() / d, (1.0 - r2) / d};
  }
  const Complex zeta = 1.0 / x;
  const double s2 = std::norm(zeta);
  const double d = 1.0 + s2;
  return {2.0 * zeta.real() / d, -2.0 * zeta.imag() / d, (s2 - 1.0) / d};
}

}  // namespace lattes
