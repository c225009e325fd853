#pragma once

// Shared checks used by both the unit tests and the acceptance runner.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ncosc/fock.hpp"
#include "ncosc/opalg.hpp"
#include "ncosc/params.hpp"

namespace ncosc::testing {

struct CheckResult {
  bool ok = true;
  std::string detail;
};

/// Random polynomial with up to max_terms monomials of word length <= max_degree.
OperatorExpr random_expr(std::mt19937_64& rng, int max_degree, int max_terms);

/// normalize is idempotent, yields normal form, and preserves the operator
/// (checked numerically on every tenth case).
CheckResult confluence(int cases, std::uint64_t seed);

/// Jacobi identity on random symbol triples and random low-degree expressions.
CheckResult jacobi(int cases, std::uint64_t seed);

/// Every bucket of both expansions equals its adjoint, and assembles Hermitian.
CheckResult bucket_hermiticity();

/// Reconstruction and orthonormality of eig_herm on random Hermitian matrices.
CheckResult eigensolver_random(int cases, int max_dim, std::uint64_t seed);

/// Quadratic expectation values change by < 1e-12 relative when n_max doubles.
CheckResult truncation_stability(const PhaseSpaceParams& p, int planar_max, int nz_max);

/// Basis indices whose per-axis quanta all stay <= n_max - margin.
std::vector<Eigen::Index> interior_indices(const BasisSpec& basis, int margin);

/// Restriction of m to the given rows and columns.
ComplexMatrix restrict(const ComplexMatrix& m, const std::vector<Eigen::Index>& idx);

/// Grid of criterion states: 2 n_rho + |mu| <= planar_max, n_z <= nz_max.
std::vector<QuantumNumbers> grid(int planar_max, int nz_max);

}  // namespace ncosc::testing
