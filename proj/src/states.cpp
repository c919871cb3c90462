#include "lattes/states.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace lattes {

double BlochVector::norm() const { return std::sqrt(norm_squared()); }

std::string BlochVector::to_string() const { return fmt::format("{},{},{}", u, v, w); }

BlochVector BlochVector::parse(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed Bloch vector: '" + text + "'");
    }
    if (used != item.size() || !std::isfinite(x)) {
      throw std::invalid_argument("malformed Bloch vector: '" + text + "'");
    }
    parts.push_back(x);
  }
  if (parts.size() != 3 || (!text.empty() && text.back() == ',')) {
    throw std::invalid_argument("Bloch vector needs three components 'u,v,w': '" + text + "'");
  }
  return {parts[0], parts[1], parts[2]};
}

BlochVector operator-(const BlochVector& a, const BlochVector& b) {
  return {a.u - b.u, a.v - b.v, a.w - b.w};
}

std::ostream& operator<<(std::ostream& os, const BlochVector& b) { return os << b.to_string(); }

double distance(const BlochVector& a, const BlochVector& b) { return (a - b).norm(); }

double DensityMatrix2::purity() const {
  const double tr = trace();
  return (rho11 * rho11 + rho22 * rho22 + 2.0 * std::norm(rho12)) / (tr * tr);
}

DensityMatrix2 DensityMatrix2::normalized() const {
  const double tr = trace();
  return {rho11 / tr, rho22 / tr, rho12 / tr};
}

bool DensityMatrix2::is_valid(double slack) const {
  return rho11 >= -slack && rho22 >= -slack && std::abs(trace() - 1.0) <= slack &&
         determinant() >= -slack;
}

DensityMatrix2 density_from_bloch(const BlochVector& b) {
  if (!(b.norm() <= 1.0 + kBallTolerance)) {
    throw std::invalid_argument("Bloch vector outside the unit ball: " + b.to_string());
  }
  return {0.5 * (1.0 + b.w), 0.5 * (1.0 - b.w), Complex{0.5 * b.u, -0.5 * b.v}};
}

BlochVector bloch_from_density(const DensityMatrix2& rho) {
  const double tr = rho.trace();
  return {2.0 * rho.rho12.real() / tr, -2.0 * rho.rho12.imag() / tr, (rho.rho11 - rho.rho22) / tr};
}

}  // namespace lattes
