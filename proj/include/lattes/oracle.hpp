// oracle.hpp
// Brute-force reference for one protocol round on the full two-qubit state.
//
// Qubit order is |control target>, basis index 2*control + target. The round
// is: prepare two copies, apply CNOT, project the target on |0>, keep the
// control (partial trace over the target), renormalize, apply a post unitary.
// Nothing here calls into the closed-form maps; tests compare the two.

#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "lattes/extended_complex.hpp"
#include "lattes/states.hpp"

namespace lattes::oracle {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector2c = Eigen::Vector2cd;
using Vector4c = Eigen::Vector4cd;

// Raised when the target is never found in |0> (zero projected norm).
class PostselectionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingleQubitUnitary {
 public:
  // Throws std::invalid_argument if U^dagger U differs from 1 by more than 1e-14.
  explicit SingleQubitUnitary(const Matrix2c& m);

  static SingleQubitUnitary identity();
  // (1/sqrt2) [[1, i], [i, 1]]
  static SingleQubitUnitary lattes();

  const Matrix2c& matrix() const { return m_; }

 private:
  Matrix2c m_;
};

const Matrix4c& cnot();

// (1 (x) |0><0|)
const Matrix4c& target_zero_projector();

// Normalized amplitudes (|0> + z|1>)/sqrt(1+|z|^2); inf gives |1>.
Vector2c pure_amplitudes(const ExtendedComplex& z);

Matrix2c to_matrix(const DensityMatrix2& rho);
DensityMatrix2 from_matrix(const Matrix2c& m);

// rho (x) rho
Matrix4c two_copy_state(const Matrix2c& rho);

// Traces out the target qubit.
Matrix2c partial_trace_target(const Matrix4c& joint);

struct PureStep {
  ExtendedComplex z;
  double success_probability = 0.0;
};

PureStep step_pure(const ExtendedComplex& z, const SingleQubitUnitary& post);

struct MixedStep {
  DensityMatrix2 state;
  double success_probability = 0.0;
  // Post-CNOT, post-projection joint operator, before the partial trace.
  Matrix4c joint;
};

MixedStep step_mixed(const DensityMatrix2& rho, const SingleQubitUnitary& post);

}  // namespace lattes::oracle
