#include "lattes/oracle.hpp"

#include <cmath>

namespace lattes::oracle {
namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

SingleQubitUnitary::SingleQubitUnitary(const Matrix2c& m) : m_(m) {
  const double err = (m.adjoint() * m - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  if (!(err <= 1e-14)) throw std::invalid_argument("SingleQubitUnitary: matrix is not unitary");
}

SingleQubitUnitary SingleQubitUnitary::identity() { return SingleQubitUnitary{Matrix2c::Identity()}; }

SingleQubitUnitary SingleQubitUnitary::lattes() {
  Matrix2c m;
  m << 1.0, kI, kI, 1.0;
  return SingleQubitUnitary{m / std::sqrt(2.0)};
}

const Matrix4c& cnot() {
  static const Matrix4c m = [] {
    Matrix4c c = Matrix4c::Zero();
    c(0, 0) = 1.0;  // |00> -> |00>
    c(1, 1) = 1.0;  // |01> -> |01>
    c(3, 2) = 1.0;  // |10> -> |11>
    c(2, 3) = 1.0;  // |11> -> |10>
    return c;
  }();
  return m;
}

const Matrix4c& target_zero_projector() {
  static const Matrix4c p = [] {
    Matrix2c id = Matrix2c::Identity();
    Matrix2c zero = Matrix2c::Zero();
    zero(0, 0) = 1.0;
    Matrix4c out;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out.block<2, 2>(2 * a, 2 * b) = id(a, b) * zero;
    return out;
  }();
  return p;
}

Vector2c pure_amplitudes(const ExtendedComplex& z) {
  if (z.is_infinite()) return Vector2c{0.0, 1.0};
  const Complex x = z.value();
  // Global phase is irrelevant; divide through by z when it is large.
  if (std::abs(x) > 1.0) {
    const Complex inv = 1.0 / x;
    return Vector2c{inv, 1.0} / std::sqrt(1.0 + std::norm(inv));
  }
  return Vector2c{1.0, x} / std::sqrt(1.0 + std::norm(x));
}

Matrix2c to_matrix(const DensityMatrix2& rho) {
  Matrix2c m;
  m << rho.rho11, rho.rho12, std::conj(rho.rho12), rho.rho22;
  return m;
}

DensityMatrix2 from_matrix(const Matrix2c& m) {
  return {m(0, 0).real(), m(1, 1).real(), m(0, 1)};
}

Matrix4c two_copy_state(const Matrix2c& rho) {
  Matrix4c out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.block<2, 2>(2 * a, 2 * b) = rho(a, b) * rho;
  return out;
}

Matrix2c partial_trace_target(const Matrix4c& joint) {
  Matrix2c out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out(a, b) = joint(2 * a, 2 * b) + joint(2 * a + 1, 2 * b + 1);
  return out;
}

PureStep step_pure(const ExtendedComplex& z, const SingleQubitUnitary& post) {
  const Vector2c psi = pure_amplitudes(z);
  Vector4c joint;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) joint(2 * a + b) = psi(a) * psi(b);
  const Vector4c projected = target_zero_projector() * (cnot() * joint);

  // Target is |0>, so the control amplitudes sit at |00> and |10>.
  Vector2c control{projected(0), projected(2)};
  const double p = control.squaredNorm();
  if (p == 0.0) throw PostselectionFailure("step_pure: projected norm is zero");
  control /= std::sqrt(p);
  const Vector2c out = post.matrix() * control;

  PureStep result;
  result.success_probability = p;
  if (out(0) == Complex{0.0, 0.0}) {
    result.z = ExtendedComplex::infinity();
  } else {
    const Complex ratio = out(1) / out(0);
    result.z = std::isfinite(std::abs(ratio)) ? ExtendedComplex{ratio} : ExtendedComplex::infinity();
  }
  return result;
}

MixedStep step_mixed(const DensityMatrix2& rho, const SingleQubitUnitary& post) {
  const Matrix2c in = to_matrix(rho.normalized());
  const Matrix4c& c = cnot();
  const Matrix4c& proj = target_zero_projector();
  const Matrix4c joint = proj * c * two_copy_state(in) * c.adjoint() * proj.adjoint();

  Matrix2c control = partial_trace_target(joint);
  const double p = control.trace().real();
  if (p == 0.0) throw PostselectionFailure("step_mixed: projected trace is zero");
  control /= p;
  const Matrix2c out = post.matrix() * control * post.matrix().adjoint();
  return {from_matrix(out), p, joint};
}

}  // namespace lattes::oracle
