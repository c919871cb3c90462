// extended_complex.hpp
// Points of the Riemann sphere: a finite complex number or the point at infinity.

#pragma once

#include <complex>
#include <iosfwd>
#include <string>

namespace lattes {

using Complex = std::complex<double>;

class ExtendedComplex {
 public:
  // Zero.
  constexpr ExtendedComplex() = default;

  // Throws std::invalid_argument on NaN parts. A part that is +-inf yields
  // the point at infinity.
  ExtendedComplex(Complex z);  // NOLINT(google-explicit-constructor)
  ExtendedComplex(double re, double im = 0.0);  // NOLINT

  static constexpr ExtendedComplex infinity() {
    ExtendedComplex p;
    p.infinite_ = true;
    return p;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  // Throws std::logic_error at infinity.
  Complex value() const;

  // |z|, or +inf at the point at infinity.
  double magnitude() const;

  // 1/z with 0 <-> infinity.
  ExtendedComplex reciprocal() const;

  // "re,im" with shortest round-trip formatting, or "inf".
  std::string to_string() const;

  // Accepts "inf", "re", or "re,im".
  static ExtendedComplex parse(const std::string& text);

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  Complex value_{0.0, 0.0};
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExtendedComplex& z);

// Chordal distance on the unit-radius Riemann sphere:
// 2|a-b| / sqrt((1+|a|^2)(1+|b|^2)), and 2/sqrt(1+|a|^2) against infinity.
// Bounded by 2.
double chordal_distance(const ExtendedComplex& a, const ExtendedComplex& b);

}  // namespace lattes
