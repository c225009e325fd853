#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ncosc/spectra.hpp"

namespace ncosc::testing {

namespace {

Coefficient random_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), pick(0, 5), pw(-1, 2);
  int n = num(rng);
  if (n == 0) n = 1;
  Coefficient c = Coefficient::rational(n, den(rng));
  if (pick(rng) == 0) c *= Coefficient::imag_unit();
  const Param params[] = {Param::hbar, Param::alpha, Param::theta, Param::eta, Param::mass};
  const int count = pick(rng) % 3;
  for (int k = 0; k < count; ++k) {
    int e = pw(rng);
    if (e == 0) e = 1;
    c *= Coefficient::param(params[pick(rng) % 5], e);
  }
  return c;
}

std::string describe(const OperatorExpr& e) { return to_text(e); }

}  // namespace

OperatorExpr random_expr(std::mt19937_64& rng, int max_degree, int max_terms) {
  std::uniform_int_distribution<int> terms(1, max_terms), degree(0, max_degree), sym(0, 5);
  std::vector<Monomial> out;
  const int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m;
    const int d = degree(rng);
    for (int k = 0; k < d; ++k) m.factors.push_back(kAllSymbols[static_cast<std::size_t>(sym(rng))]);
    m.coeff = random_coeff(rng);
    out.push_back(std::move(m));
  }
  return OperatorExpr(std::move(out));
}

CheckResult confluence(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PhaseSpaceParams p;
  p.omega_c = 0.8;
  p.theta = 0.3;
  p.eta = 0.2;
  p.alpha = 0.9;
  p.mass = 1.3;
  p.hbar = 0.7;
  const ParamValues values = p.binding();
  const FockFrame frame = FockFrame::cylindrical(p, BasisSpec{3, 3, 3});
  for (int c = 0; c < cases; ++c) {
    const OperatorExpr e = random_expr(rng, 6, 4);
    const OperatorExpr n1 = normalize(e);
    const OperatorExpr n2 = normalize(n1);
    if (!(n1 == n2) || !is_normalized(n1)) {
      return {false, "normalize not idempotent on case " + std::to_string(c) + ": " + describe(n1)};
    }
    for (const auto& m : n1.terms()) {
      if (!m.is_normal() || m.coeff.is_zero()) return {false, "non-normal term in case " + std::to_string(c)};
    }
    if (c % 10 == 0) {
      const ComplexMatrix a = assemble(e, frame, values).matrix();
      const ComplexMatrix b = assemble(n1, frame, values).matrix();
      const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
      if ((a - b).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        return {false, "normalize changed the operator on case " + std::to_string(c)};
      }
    }
  }
  return {true, std::to_string(cases) + " cases"};
}

CheckResult jacobi(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sym(0, 5);
  auto check = [](const OperatorExpr& a, const OperatorExpr& b, const OperatorExpr& c) {
    const OperatorExpr j =
        commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
    return normalize(j).empty();
  };
  for (int k = 0; k < cases; ++k) {
    const OperatorExpr a(kAllSymbols[static_cast<std::size_t>(sym(rng))]);
    const OperatorExpr b(kAllSymbols[static_cast<std::size_t>(sym(rng))]);
    const OperatorExpr c(kAllSymbols[static_cast<std::size_t>(sym(rng))]);
    if (!check(a, b, c)) return {false, "symbol triple " + std::to_string(k)};
    const OperatorExpr ea = random_expr(rng, 2, 2), eb = random_expr(rng, 2, 2), ec = random_expr(rng, 2, 2);
    if (!check(ea, eb, ec)) return {false, "expression triple " + std::to_string(k)};
    if (!normalize(commutator(ea, eb) + commutator(eb, ea)).empty()) {
      return {false, "antisymmetry " + std::to_string(k)};
    }
  }
  return {true, std::to_string(cases) + " symbol and expression triples"};
}

CheckResult bucket_hermiticity() {
  PhaseSpaceParams p;
  p.omega_c = 1.3;
  p.alpha = 0.8;
  const FockFrame frame = FockFrame::cylindrical(p, BasisSpec::uniform(4));
  for (Space s : {Space::plane, Space::space}) {
    for (const auto& [key, e] : nc_hamiltonian_buckets(s)) {
      if (!is_hermitian(e)) return {false, bucket_label(key) + " is not Hermitian"};
      if (!assemble(e, frame, p.binding()).hermitian()) return {false, bucket_label(key) + " matrix not Hermitian"};
    }
  }
  return {true, "12 buckets"};
}

CheckResult eigensolver_random(int cases, int max_dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim_dist(1, max_dim);
  std::normal_distribution<double> gauss;
  double worst_rec = 0.0, worst_orth = 0.0;
  for (int c = 0; c < cases; ++c) {
    const int n = c == 0 ? max_dim : dim_dist(rng);
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(i, j) = {gauss(rng), gauss(rng)};
    }
    const ComplexMatrix a = (g + g.adjoint()) * 0.5;
    const OperatorMatrix om(a);
    const SpectrumResult r = eig_herm(om);
    const double scale = a.cwiseAbs().maxCoeff();
    const ComplexMatrix rec = r.eigenvectors * r.eigenvalues.cast<std::complex<double>>().asDiagonal() *
                              r.eigenvectors.adjoint();
    const double rec_err = (rec - a).cwiseAbs().maxCoeff() / scale;
    const double orth_err =
        (r.eigenvectors.adjoint() * r.eigenvectors - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    worst_rec = std::max(worst_rec, rec_err);
    worst_orth = std::max(worst_orth, orth_err);
    if (rec_err > kDefaultEigenTolerance || orth_err > kDefaultEigenTolerance) {
      return {false, "case " + std::to_string(c) + " dim " + std::to_string(n)};
    }
    for (Eigen::Index k = 1; k < r.eigenvalues.size(); ++k) {
      if (r.eigenvalues[k] < r.eigenvalues[k - 1]) return {false, "eigenvalues not ascending"};
    }
  }
  std::ostringstream os;
  os << cases << " matrices, reconstruction " << worst_rec << ", orthonormality " << worst_orth;
  return {true, os.str()};
}

CheckResult truncation_stability(const PhaseSpaceParams& p, int planar_max, int nz_max) {
  const Symbol xs[] = {Symbol::x, Symbol::y, Symbol::z, Symbol::px, Symbol::py, Symbol::pz};
  std::vector<OperatorExpr> ops = {angular_momentum(1), angular_momentum(2), angular_momentum(3)};
  for (Symbol a : xs) {
    for (Symbol b : xs) {
      if (a <= b) ops.push_back(OperatorExpr(a) * OperatorExpr(b));
    }
  }
  for (BucketKey key : kBucketKeys) ops.push_back(nc_hamiltonian_buckets(Space::space).at(key));
  const BasisSpec small{planar_max + 2, planar_max + 2, nz_max + 2};
  const BasisSpec large{2 * small.n_max_x, 2 * small.n_max_y, 2 * small.n_max_z};
  const FockFrame fs = FockFrame::cylindrical(p, small);
  const FockFrame fl = FockFrame::cylindrical(p, large);
  const ParamValues values = p.binding();
  double worst = 0.0;
  for (const auto& q : grid(planar_max, nz_max)) {
    const StateVector vs = cylindrical_state(q, fs);
    const StateVector vl = cylindrical_state(q, fl);
    for (const auto& op : ops) {
      const auto a = expectation(op, fs, values, vs);
      const auto b = expectation(op, fl, values, vl);
      const double scale = std::max({std::abs(a), std::abs(b), 1.0});
      worst = std::max(worst, std::abs(a - b) / scale);
    }
  }
  std::ostringstream os;
  os << "max relative change " << worst;
  return {worst < 1e-12, os.str()};
}

std::vector<Eigen::Index> interior_indices(const BasisSpec& basis, int margin) {
  std::vector<Eigen::Index> out;
  for (int nx = 0; nx <= basis.n_max_x - margin; ++nx) {
    for (int ny = 0; ny <= basis.n_max_y - margin; ++ny) {
      for (int nz = 0; nz <= basis.n_max_z - margin; ++nz) out.push_back(basis.index(nx, ny, nz));
    }
  }
  return out;
}

ComplexMatrix restrict(const ComplexMatrix& m, const std::vector<Eigen::Index>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(idx[i], idx[j]);
  }
  return out;
}

std::vector<QuantumNumbers> grid(int planar_max, int nz_max) {
  std::vector<QuantumNumbers> out;
  for (int n_rho = 0; 2 * n_rho <= planar_max; ++n_rho) {
    const int room = planar_max - 2 * n_rho;
    for (int mu = -room; mu <= room; ++mu) {
      for (int nz = 0; nz <= nz_max; ++nz) out.push_back({n_rho, mu, nz});
    }
  }
  return out;
}

}  // namespace ncosc::testing
