#include "lattes/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "lattes/riemann.hpp"

namespace lattes {

SquaringResult squaring_S(const DensityMatrix2& rho) {
  const DensityMatrix2 in = rho.normalized();
  const double p = in.rho11 * in.rho11 + in.rho22 * in.rho22;
  return {{in.rho11 * in.rho11 / p, in.rho22 * in.rho22 / p, in.rho12 * in.rho12 / p}, p};
}

BlochVector apply_M_L(const BlochVector& b) {
  const double a = 1.0 + b.w * b.w;
  return {(b.u * b.u - b.v * b.v) / a, 2.0 * b.w / a, -2.0 * b.u * b.v / a};
}

std::string to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

BlochVector inverse_M_L(const BlochVector& target, Branch branch) {
  const double big_u = target.u;
  const double big_v = target.v;
  const double big_w = target.w;

  // w = (1 - sqrt(1 - V^2)) / V, rationalized so V -> 0 needs no special case.
  const double w = big_v / (1.0 + std::sqrt(std::max(0.0, 1.0 - big_v * big_v)));
  const double a = 1.0 + w * w;

  // (u + iv)^2 = a (U - iW)
  const double r = std::hypot(big_u, big_w);
  double u = 0.0;
  double v = 0.0;
  if (big_u >= 0.0) {
    u = std::sqrt(0.5 * a * (big_u + r));
    v = u > 0.0 ? -big_w * a / (2.0 * u) : 0.0;
  } else {
    // U + r = W^2 / (r - U) without cancellation; W = 0 gives the u = 0 stratum.
    const double gap = r - big_u;
    u = std::abs(big_w) * std::sqrt(0.5 * a / gap);
    v = (big_w < 0.0 ? 1.0 : -1.0) * std::sqrt(0.5 * a * gap);
  }
  if (branch == Branch::minus) {
    u = -u;
    v = -v;
  }

  BlochVector out{u, v, w};
  const double n2 = out.norm_squared();
  if (n2 > 1.0) {
    // Rounding can push sphere preimages just outside the ball.
    const double n = std::sqrt(n2);
    out = {u / n, v / n, w / n};
  }
  return out;
}

std::vector<MixedCycle> find_mixed_cycles(int max_period) {
  if (max_period != 1 && max_period != 2) {
    throw std::invalid_argument("find_mixed_cycles: closed forms exist only for max_period 1 or 2");
  }
  std::vector<MixedCycle> cycles;
  cycles.push_back({"C0", {BlochVector{}}, 1, 0.0});
  for (const auto& pure : find_pure_cycles(max_period)) {
    MixedCycle c;
    c.label = "C" + pure.label.substr(1);
    c.period = pure.period;
    for (const auto& z : pure.points) c.points.push_back(bloch_from_z(z));
    cycles.push_back(std::move(c));
  }
  for (auto& c : cycles) {
    for (const auto& p : c.points) {
      BlochVector q = p;
      for (std::size_t k = 0; k < c.period; ++k) q = apply_M_L(q);
      c.residual = std::max(c.residual, distance(q, p));
    }
  }
  return cycles;
}

Eigen::Matrix3d jacobian_at(const BlochVector& b) {
  const double u = b.u;
  const double v = b.v;
  const double w = b.w;
  const double a = 1.0 + w * w;
  const double a2 = a * a;
  Eigen::Matrix3d j;
  j << 2.0 * u / a, -2.0 * v / a, -2.0 * w * (u * u - v * v) / a2,
       0.0, 0.0, 2.0 * (1.0 - w * w) / a2,
       -2.0 * v / a, -2.0 * u / a, 4.0 * u * v * w / a2;
  return j;
}

double spectral_radius(const Eigen::Matrix3d& m) {
  Eigen::EigenSolver<Eigen::Matrix3d> solver(m, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace lattes
