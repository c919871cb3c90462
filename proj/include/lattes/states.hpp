// states.hpp
// Single-qubit mixed states: Bloch vectors and 2x2 density matrices.

#pragma once

#include <complex>
#include <iosfwd>
#include <string>

namespace lattes {

using Complex = std::complex<double>;

// Tolerance for "inside the closed unit ball" checks on user input.
inline constexpr double kBallTolerance = 1e-9;

// rho = (1 + u sx + v sy + w sz) / 2. The unit sphere holds the pure
// states, the origin the completely mixed state.
struct BlochVector {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  double norm_squared() const { return u * u + v * v + w * w; }
  double norm() const;
  // tr(rho^2) = (|b|^2 + 1) / 2, in [1/2, 1] inside the ball.
  double purity() const { return 0.5 * (norm_squared() + 1.0); }

  // "u,v,w"
  std::string to_string() const;
  // Parses "u,v,w". Throws std::invalid_argument on malformed text.
  static BlochVector parse(const std::string& text);

  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

BlochVector operator-(const BlochVector& a, const BlochVector& b);
std::ostream& operator<<(std::ostream& os, const BlochVector& b);

// Euclidean distance between Bloch vectors.
double distance(const BlochVector& a, const BlochVector& b);

// Hermitian 2x2 matrix [[rho11, rho12], [conj(rho12), rho22]].
struct DensityMatrix2 {
  double rho11 = 0.5;
  double rho22 = 0.5;
  Complex rho12{0.0, 0.0};

  double trace() const { return rho11 + rho22; }
  // rho11 rho22 - |rho12|^2
  double determinant() const { return rho11 * rho22 - std::norm(rho12); }
  // tr(rho^2) / tr(rho)^2
  double purity() const;
  // Same operator divided by its trace.
  DensityMatrix2 normalized() const;
  // Nonnegative diagonal, unit trace and determinant >= -slack.
  bool is_valid(double slack = 1e-12) const;
};

// Throws std::invalid_argument when |b| > 1 + kBallTolerance.
DensityMatrix2 density_from_bloch(const BlochVector& b);

// Inverse of density_from_bloch; normalizes by the trace first.
BlochVector bloch_from_density(const DensityMatrix2& rho);

}  // namespace lattes
