#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "ncosc/fock.hpp"
#include "ncosc/params.hpp"

namespace ncosc {

/// Coefficient-stripped Hamiltonian pieces. The total operator is
///   alpha^2 H0 + (eta/hbar) H_eta + (theta/hbar) H_theta + (eta theta/hbar^2) H_eta_theta
///   + (eta^2/hbar^2) H_eta2 + (theta^2/hbar^2) H_theta2.
struct HamiltonianPieces {
  OperatorMatrix h0;
  OperatorMatrix h_eta;
  OperatorMatrix h_theta;
  OperatorMatrix h_eta_theta;
  OperatorMatrix h_eta2;
  OperatorMatrix h_theta2;
};

HamiltonianPieces build_pieces(const PhaseSpaceParams& params, const BasisSpec& basis);

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;   // ascending
  ComplexMatrix eigenvectors;    // orthonormal columns; empty when not requested
  double residual = 0.0;         // max |A v - lambda v|; 0 when vectors were not requested
};

struct EigenSolverError : std::runtime_error {
  EigenSolverError(const std::string& what, Eigen::Index index) : std::runtime_error(what), index(index) {}
  Eigen::Index index;
};

inline constexpr double kDefaultEigenTolerance = 1e-11;
inline constexpr int kQlIterationCap = 50;

/// Full Hermitian eigendecomposition: Householder reduction to real
/// tridiagonal form followed by implicit-shift QL.
SpectrumResult eig_herm(const OperatorMatrix& a, double tol = kDefaultEigenTolerance, bool with_vectors = true);

OperatorMatrix total_hamiltonian(const HamiltonianPieces& pieces, const PhaseSpaceParams& params);

/// Linear combination at arbitrary (possibly negative) strengths, used for
/// finite differences around eta = theta = 0.
OperatorMatrix combine_pieces(const HamiltonianPieces& pieces, double alpha, double hbar, double eta,
                              double theta);

/// One eigenvalue per line, 17 significant digits, after a "#" header.
void write_spectrum(std::ostream& os, const SpectrumResult& s, const PhaseSpaceParams& params,
                    const BasisSpec& basis);

}  // namespace ncosc
