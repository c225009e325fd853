#include "ncosc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ncosc/format.hpp"

namespace ncosc {

namespace {

/// Implicit QL on the symmetric tridiagonal (d, e) with e[i] = T(i, i+1).
/// Rotations are accumulated into the columns of z when z is non-empty.
void tridiagonal_ql(Eigen::VectorXd& d, Eigen::VectorXd& e, ComplexMatrix& z) {
  const Eigen::Index n = d.size();
  const bool vectors = z.size() > 0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (Eigen::Index l = 0; l < n; ++l) {
    int iter = 0;
    Eigen::Index m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= eps * dd) break;
      }
      if (m == l) break;
      if (iter++ == kQlIterationCap) {
        throw EigenSolverError("implicit QL did not converge for eigenvalue " + std::to_string(l), l);
      }
      double g = (d(l + 1) - d(l)) / (2.0 * e(l));
      double r = std::hypot(g, 1.0);
      g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      Eigen::Index i = m - 1;
      bool deflated = false;
      for (; i >= l; --i) {
        const double f = s * e(i);
        const double b = c * e(i);
        r = std::hypot(f, g);
        e(i + 1) = r;
        if (r == 0.0) {
          d(i + 1) -= p;
          e(m) = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d(i + 1) - p;
        r = (d(i) - g) * s + 2.0 * c * b;
        p = s * r;
        d(i + 1) = g + p;
        g = c * r - b;
        if (vectors) {
          for (Eigen::Index k = 0; k < z.rows(); ++k) {
            const std::complex<double> zi1 = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * zi1;
            z(k, i) = c * z(k, i) - s * zi1;
          }
        }
      }
      if (deflated) continue;
      d(l) -= p;
      e(l) = g;
      e(m) = 0.0;
    } while (m != l);
  }
}

}  // namespace

SpectrumResult eig_herm(const OperatorMatrix& a, double tol, bool with_vectors) {
  const Eigen::Index n = a.dim();
  if (!a.hermitian()) throw std::invalid_argument("eig_herm requires a Hermitian matrix");
  SpectrumResult out;
  if (n == 0) return out;

  Eigen::Tridiagonalization<ComplexMatrix> tri(a.matrix());
  Eigen::VectorXd d = tri.diagonal();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  if (n > 1) e.head(n - 1) = tri.subDiagonal();
  ComplexMatrix z;
  if (with_vectors) z = tri.matrixQ();

  tridiagonal_ql(d, e, z);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return d(i) < d(j); });
  out.eigenvalues.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) out.eigenvalues(k) = d(order[static_cast<std::size_t>(k)]);
  if (!with_vectors) return out;

  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) out.eigenvectors.col(k) = z.col(order[static_cast<std::size_t>(k)]);

  const ComplexMatrix r = a.matrix() * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal();
  Eigen::Index worst_row = 0, worst_col = 0;
  out.residual = r.cwiseAbs().maxCoeff(&worst_row, &worst_col);
  const double scale = a.matrix().cwiseAbs().maxCoeff();
  if (out.residual > tol * std::max(scale, std::numeric_limits<double>::min())) {
    throw EigenSolverError("eigenpair residual " + format_double(out.residual) + " exceeds tolerance at index " +
                               std::to_string(worst_col),
                           worst_col);
  }
  return out;
}

OperatorMatrix combine_pieces(const HamiltonianPieces& pieces, double alpha, double hbar, double eta,
                              double theta) {
  ComplexMatrix m = (alpha * alpha) * pieces.h0.matrix();
  if (eta != 0.0) {
    m += (eta / hbar) * pieces.h_eta.matrix();
    m += (eta * eta / (hbar * hbar)) * pieces.h_eta2.matrix();
  }
  if (theta != 0.0) {
    m += (theta / hbar) * pieces.h_theta.matrix();
    m += (theta * theta / (hbar * hbar)) * pieces.h_theta2.matrix();
  }
  if (eta != 0.0 && theta != 0.0) m += (eta * theta / (hbar * hbar)) * pieces.h_eta_theta.matrix();
  return OperatorMatrix(std::move(m), true);
}

OperatorMatrix total_hamiltonian(const HamiltonianPieces& pieces, const PhaseSpaceParams& params) {
  params.validate();
  return combine_pieces(pieces, params.alpha, params.hbar, params.eta, params.theta);
}

HamiltonianPieces build_pieces(const PhaseSpaceParams& params, const BasisSpec& basis) {
  const FockFrame frame = FockFrame::cylindrical(params, basis);
  const ParamValues values = params.binding();
  const auto& buckets = nc_hamiltonian_buckets(Space::space);
  auto piece = [&](BucketKey key) {
    OperatorMatrix m = assemble(buckets.at(key), frame, values);
    if (!m.hermitian()) throw std::runtime_error(bucket_label(key) + " assembled to a non-Hermitian matrix");
    return m;
  };
  // bucket (0,0) carries alpha^2; the piece does not
  OperatorExpr h0 = Coefficient::param(Param::alpha, -2) * buckets.at({0, 0});
  OperatorMatrix h0_matrix = assemble(h0, frame, values);
  if (!h0_matrix.hermitian()) throw std::runtime_error("H_0 assembled to a non-Hermitian matrix");
  return {std::move(h0_matrix), piece({0, 1}), piece({1, 0}), piece({1, 1}), piece({0, 2}), piece({2, 0})};
}

void write_spectrum(std::ostream& os, const SpectrumResult& s, const PhaseSpaceParams& params,
                    const BasisSpec& basis) {
  os << "# hbar=" << format_double(params.hbar) << " m=" << format_double(params.mass)
     << " omega=" << format_double(params.omega) << " omega_c=" << format_double(params.omega_c)
     << " alpha=" << format_double(params.alpha) << " theta=" << format_double(params.theta)
     << " eta=" << format_double(params.eta) << '\n';
  os << "# basis=" << basis.n_max_x << ',' << basis.n_max_y << ',' << basis.n_max_z << " dim=" << basis.dim()
     << '\n';
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) os << format_double(s.eigenvalues(k)) << '\n';
}

}  // namespace ncosc
