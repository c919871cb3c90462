#include "lattes/extended_complex.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace lattes {

ExtendedComplex::ExtendedComplex(Complex z) {
  if (std::isnan(z.real()) || std::isnan(z.imag())) {
    throw std::invalid_argument("ExtendedComplex: NaN component");
  }
  if (std::isinf(z.real()) || std::isinf(z.imag())) {
    infinite_ = true;
  } else {
    value_ = z;
  }
}

ExtendedComplex::ExtendedComplex(double re, double im) : ExtendedComplex(Complex{re, im}) {}

Complex ExtendedComplex::value() const {
  if (infinite_) throw std::logic_error("ExtendedComplex: value() at infinity");
  return value_;
}

double ExtendedComplex::magnitude() const {
  return infinite_ ? HUGE_VAL : std::abs(value_);
}

ExtendedComplex ExtendedComplex::reciprocal() const {
  if (infinite_) return ExtendedComplex{};
  if (value_ == Complex{0.0, 0.0}) return infinity();
  return ExtendedComplex{1.0 / value_};
}

std::string ExtendedComplex::to_string() const {
  if (infinite_) return "inf";
  return fmt::format("{},{}", value_.real(), value_.imag());
}

ExtendedComplex ExtendedComplex::parse(const std::string& text) {
  if (text == "inf" || text == "infinity") return infinity();
  auto parse_double = [&](const std::string& s) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed complex number: '" + text + "'");
    }
    if (used != s.size() || !std::isfinite(x)) {
      throw std::invalid_argument("malformed complex number: '" + text + "'");
    }
    return x;
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos) return ExtendedComplex{parse_double(text), 0.0};
  return ExtendedComplex{parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

std::ostream& operator<<(std::ostream& os, const ExtendedComplex& z) {
  return os << z.to_string();
}

double chordal_distance(const ExtendedComplex& a, const ExtendedComplex& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite() || b.is_infinite()) {
    const double r = a.is_infinite() ? b.magnitude() : a.magnitude();
    return 2.0 / std::hypot(1.0, r);
  }
  // Both finite. The distance is invariant under z -> 1/z, and for |b| > 1
  // 2|a-b|/(h(a)h(b)) = 2|a/b - 1|/(h(a)h(1/b)) with h(z) = sqrt(1+|z|^2).
  Complex za = a.value();
  Complex zb = b.value();
  if (std::abs(za) > 1.0 && std::abs(zb) > 1.0) {
    za = 1.0 / za;
    zb = 1.0 / zb;
  }
  if (std::abs(za) > 1.0) std::swap(za, zb);
  if (std::abs(zb) > 1.0) {
    const Complex inv = 1.0 / zb;
    return 2.0 * std::abs(za * inv - 1.0) / (std::hypot(1.0, std::abs(za)) * std::hypot(1.0, std::abs(inv)));
  }
  return 2.0 * std::abs(za - zb) / (std::hypot(1.0, std::abs(za)) * std::hypot(1.0, std::abs(zb)));
}

}  // namespace lattes
