#pragma once

// Matrix mechanics in a truncated Cartesian number basis.

#include <array>
#include <complex>
#include <iosfwd>
#include <utility>

#include <Eigen/Dense>

#include "ncosc/opalg.hpp"
#include "ncosc/params.hpp"

namespace ncosc {

using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Per-axis inclusive truncation. Basis states |nx, ny, nz> are ordered
/// lexicographically with nz fastest.
struct BasisSpec {
  int n_max_x = 0;
  int n_max_y = 0;
  int n_max_z = 0;

  static BasisSpec uniform(int n_max) { return {n_max, n_max, n_max}; }

  int n_max(int axis) const;
  Eigen::Index dim() const;
  Eigen::Index index(int nx, int ny, int nz) const;
  void validate() const;

  /// Every Cartesian component of the cylindrical state fits in the basis.
  bool represents(const QuantumNumbers& q) const;
  /// Smallest distance between a component index of q's state and the cutoff.
  int margin(const QuantumNumbers& q) const;
};

/// Dense operator image. The Hermitian flag is only set after a numeric check.
class OperatorMatrix {
 public:
  explicit OperatorMatrix(ComplexMatrix m, bool assert_hermitian = false);

  const ComplexMatrix& matrix() const { return m_; }
  bool hermitian() const { return hermitian_; }
  Eigen::Index dim() const { return m_.rows(); }

  /// max|A - A^dagger| / max|A| (0 for the zero matrix).
  static double hermiticity_defect(const ComplexMatrix& m);
  static constexpr double kHermitianTolerance = 1e-13;

 private:
  ComplexMatrix m_;
  bool hermitian_ = false;
};

/// Annihilation operator, (a)_{n-1,n} = sqrt(n).
Eigen::MatrixXd ladder(int n_max);

struct AxisOscillator {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
};

/// X = sqrt(hbar/2 m w)(a + a^dagger), P = i sqrt(hbar m w / 2)(a^dagger - a).
std::pair<ComplexMatrix, ComplexMatrix> xp_1d(const AxisOscillator& osc, int n_max);

/// A basis together with the oscillator scale of each axis.
struct FockFrame {
  BasisSpec basis;
  std::array<AxisOscillator, 3> axes;

  /// x and y oscillate at omega_tilde, z at omega.
  static FockFrame cylindrical(const PhaseSpaceParams& p, const BasisSpec& basis);
};

/// Matrix of expr in the frame. Each monomial maps to the tensor product of
/// per-axis ordered X/P products; the products are formed in a basis padded
/// by the word length and then cut back, so the result is the exact
/// projection P O P of the operator.
OperatorMatrix assemble(const OperatorExpr& expr, const FockFrame& frame, const ParamValues& values);

/// Same action as assemble(expr) * v without forming the matrix.
StateVector apply(const OperatorExpr& expr, const FockFrame& frame, const ParamValues& values,
                  const StateVector& v);

/// Simultaneous eigenstate of the planar oscillator and L_z, built from the
/// circular ladders a_(+-) = (a_x -+ i a_y)/sqrt(2) with n_+ - n_- = mu.
/// The first nonzero coefficient is real and positive.
StateVector cylindrical_state(const QuantumNumbers& q, const FockFrame& frame);

std::complex<double> expectation(const OperatorMatrix& a, const StateVector& v);
std::complex<double> expectation(const OperatorExpr& expr, const FockFrame& frame, const ParamValues& values,
                                 const StateVector& v);

/// "i j re im" per nonzero entry, 17 significant digits.
void write_matrix_dump(std::ostream& os, const OperatorMatrix& a);

}  // namespace ncosc
