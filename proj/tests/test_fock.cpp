#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ncosc/adjudicate.hpp"
#include "ncosc/fock.hpp"
#include "support.hpp"

using namespace ncosc;

namespace {

using C = std::complex<double>;

PhaseSpaceParams params_with(double omega_c, double mass = 1.0, double hbar = 1.0) {
  PhaseSpaceParams p;
  p.omega_c = omega_c;
  p.mass = mass;
  p.hbar = hbar;
  return p;
}

StateVector basis_vector(const BasisSpec& b, int nx, int ny, int nz) {
  StateVector v = StateVector::Zero(b.dim());
  v[b.index(nx, ny, nz)] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("ladder and single-axis matrices") {
  const Eigen::MatrixXd a = ladder(3);
  CHECK(a.rows() == 4);
  CHECK(a(0, 1) == doctest::Approx(1.0));
  CHECK(a(1, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(a(2, 3) == doctest::Approx(std::sqrt(3.0)));
  CHECK(a(1, 0) == 0.0);
  CHECK(a.diagonal().cwiseAbs().maxCoeff() == 0.0);

  const auto [x, p] = xp_1d({2.0, 0.5, 1.0}, 6);
  CHECK(x(0, 1).real() == doctest::Approx(std::sqrt(1.0 / (2 * 2.0 * 0.5))));
  CHECK(p(1, 0).imag() == doctest::Approx(std::sqrt(2.0 * 0.5 / 2)));
  const ComplexMatrix comm = x * p - p * x;
  for (int k = 0; k < 6; ++k) CHECK(comm(k, k).imag() == doctest::Approx(1.0));
  CHECK(comm(6, 6).imag() == doctest::Approx(-6.0));
}

TEST_CASE("basis indexing and representability") {
  const BasisSpec b{2, 3, 4};
  CHECK(b.dim() == 3 * 4 * 5);
  CHECK(b.index(0, 0, 1) == 1);
  CHECK(b.index(0, 1, 0) == 5);
  CHECK(b.index(1, 0, 0) == 20);
  CHECK(b.represents({0, 2, 4}));
  CHECK_FALSE(b.represents({0, 3, 0}));
  CHECK_FALSE(b.represents({1, 1, 0}));
  CHECK_FALSE(b.represents({0, 0, 5}));
  CHECK(b.margin({0, 1, 1}) == 1);
  CHECK_THROWS_AS(BasisSpec({-1, 0, 0}).validate(), std::invalid_argument);
  const FockFrame f = FockFrame::cylindrical(params_with(0.0), b);
  CHECK_THROWS_AS(cylindrical_state({0, 3, 0}, f), std::out_of_range);
  CHECK_THROWS_AS(cylindrical_state({-1, 0, 0}, f), std::invalid_argument);
}

TEST_CASE("assemble examples") {
  const PhaseSpaceParams p = params_with(0.0);
  const BasisSpec b = BasisSpec::uniform(2);
  const FockFrame f = FockFrame::cylindrical(p, b);
  const ParamValues v = p.binding();
  const ComplexMatrix x = assemble(OperatorExpr(Symbol::x), f, v).matrix();
  CHECK(x(b.index(0, 0, 0), b.index(1, 0, 0)).real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(x(b.index(0, 1, 0), b.index(1, 1, 0)).real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(x(b.index(0, 0, 0), b.index(0, 1, 0)) == C(0));

  // x^2 assembled directly keeps the top-level element a truncated product would lose.
  const ComplexMatrix x2 = assemble(OperatorExpr(Symbol::x) * OperatorExpr(Symbol::x), f, v).matrix();
  CHECK(x2(b.index(2, 0, 0), b.index(2, 0, 0)).real() == doctest::Approx(2.5));
  CHECK((x * x)(b.index(2, 0, 0), b.index(2, 0, 0)).real() == doctest::Approx(1.0));

  const OperatorMatrix lz = assemble(angular_momentum(3), f, v);
  CHECK(lz.hermitian());
  CHECK(std::abs(lz.matrix()(b.index(1, 0, 0), b.index(0, 1, 0)) - C(0, -1)) < 1e-15);
  CHECK_THROWS_AS(OperatorMatrix(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(OperatorMatrix(ComplexMatrix::Identity(2, 2) * C(0, 1), true), std::runtime_error);
}

TEST_CASE("L_z commutes with the planar oscillator") {
  const PhaseSpaceParams p = params_with(0.6);
  const BasisSpec b = BasisSpec::uniform(6);
  const FockFrame f = FockFrame::cylindrical(p, b);
  const ParamValues v = p.binding();
  const OperatorExpr h2 = parse_expr("(1/2*m^-1)*(px^2 + py^2) + (1/2*m*omega_t^2)*(x^2 + y^2)");
  const ComplexMatrix h = assemble(h2, f, v).matrix();
  const ComplexMatrix lz = assemble(angular_momentum(3), f, v).matrix();
  CHECK((h * lz - lz * h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("apply agrees with assemble") {
  PhaseSpaceParams p = params_with(0.9, 1.4, 0.8);
  p.theta = 0.2;
  const BasisSpec b{3, 4, 2};
  const FockFrame f = FockFrame::cylindrical(p, b);
  const ParamValues v = p.binding();
  StateVector s(b.dim());
  for (Eigen::Index k = 0; k < s.size(); ++k) s[k] = C(std::sin(1.0 + k), std::cos(2.0 * k));
  for (const auto& [key, e] : nc_hamiltonian_buckets(Space::space)) {
    const StateVector a = assemble(e, f, v).matrix() * s;
    CHECK((apply(e, f, v, s) - a).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("cylindrical state examples") {
  const BasisSpec b = BasisSpec::uniform(3);
  const FockFrame f = FockFrame::cylindrical(params_with(0.0), b);
  CHECK((cylindrical_state({0, 0, 0}, f) - basis_vector(b, 0, 0, 0)).norm() < 1e-15);
  CHECK((cylindrical_state({0, 0, 2}, f) - basis_vector(b, 0, 0, 2)).norm() < 1e-15);
  const StateVector plus = (basis_vector(b, 1, 0, 0) + C(0, 1) * basis_vector(b, 0, 1, 0)) / std::sqrt(2.0);
  const StateVector minus = (basis_vector(b, 1, 0, 0) - C(0, 1) * basis_vector(b, 0, 1, 0)) / std::sqrt(2.0);
  // Same rays; the phase puts a real positive coefficient on |0,1,0>, the lowest index.
  CHECK((cylindrical_state({0, 1, 0}, f) - C(0, -1) * plus).norm() < 1e-15);
  CHECK((cylindrical_state({0, -1, 0}, f) - C(0, 1) * minus).norm() < 1e-15);
  // n_rho = 1, mu = 0: (|20> + |02>)/sqrt(2) up to the radial sign convention.
  const StateVector r = cylindrical_state({1, 0, 0}, f);
  CHECK(std::abs(std::abs(r[b.index(2, 0, 0)]) - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(r[b.index(2, 0, 0)] - r[b.index(0, 2, 0)]) < 1e-15);
  CHECK(std::abs(r.norm() - 1.0) < 1e-15);
}

TEST_CASE("expectation examples on the state grid") {
  const PhaseSpaceParams p = params_with(1.3, 0.7, 1.1);
  const double wt = p.omega_tilde();
  const BasisSpec b = BasisSpec::uniform(8);
  const FockFrame f = FockFrame::cylindrical(p, b);
  const ParamValues v = p.binding();
  const OperatorMatrix rho2 = assemble(parse_expr("x^2 + y^2"), f, v);
  const OperatorMatrix pp = assemble(parse_expr("px^2 + py^2"), f, v);
  const OperatorMatrix lz = assemble(angular_momentum(3), f, v);
  const OperatorMatrix z2 = assemble(parse_expr("z^2"), f, v);
  for (const auto& q : testing::grid(6, 2)) {
    const StateVector s = cylindrical_state(q, f);
    const double n1 = q.planar_quanta() + 1;
    CHECK(std::abs(expectation(rho2, s) - C(p.hbar / (p.mass * wt) * n1)) < 1e-12);
    CHECK(std::abs(expectation(pp, s) - C(p.hbar * p.mass * wt * n1)) < 1e-12);
    CHECK(std::abs(expectation(lz, s) - C(p.hbar * q.mu)) < 1e-12);
    CHECK(std::abs(expectation(z2, s) - C(p.hbar / (p.mass * p.omega) * (q.n_z + 0.5))) < 1e-12);
    CHECK(std::abs(s.norm() - 1.0) < 1e-13);
  }
  const StateVector s = cylindrical_state({0, 1, 0}, f);
  CHECK(std::abs(expectation(angular_momentum(3), f, v, s) - C(p.hbar)) < 1e-13);
}

TEST_CASE("odd and mixed operators vanish on the grid") {
  const PhaseSpaceParams p = params_with(0.7);
  for (const auto& q : testing::grid(4, 2)) {
    CHECK(adjudicate::vanishing_check(q, p, BasisSpec::uniform(8)) < adjudicate::kVanishingTolerance);
  }
  const auto ops = adjudicate::vanishing_operators();
  CHECK(ops.size() >= 6);
}

TEST_CASE("property: truncation stability of quadratic expectations") {
  auto r = testing::truncation_stability(params_with(1.0), 4, 2);
  CHECK_MESSAGE(r.ok, r.detail);
  r = testing::truncation_stability(params_with(0.7, 1.5, 0.9), 4, 2);
  CHECK_MESSAGE(r.ok, r.detail);
}

TEST_CASE("bucket matrices reassemble the substituted Hamiltonian") {
  PhaseSpaceParams p = params_with(0.8, 1.2, 0.9);
  p.alpha = 0.85;
  p.theta = 0.03;
  p.eta = 0.05;
  const BasisSpec b = BasisSpec::uniform(4);
  const FockFrame f = FockFrame::cylindrical(p, b);
  const ParamValues v = p.binding();
  const ComplexMatrix direct =
      assemble(normalize(substitute(commutative_hamiltonian(), bopp_images(AntisymTensor::space()))), f, v).matrix();
  ComplexMatrix sum = ComplexMatrix::Zero(b.dim(), b.dim());
  for (const auto& [key, e] : nc_hamiltonian_buckets(Space::space)) {
    const double w = std::pow(p.theta, key.first) * std::pow(p.eta, key.second) /
                     std::pow(p.hbar, key.first + key.second);
    sum += w * assemble(e, f, v).matrix();
  }
  CHECK((sum - direct).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, direct.cwiseAbs().maxCoeff()));
}

TEST_CASE("numeric commutators on the interior block") {
  const PhaseSpaceParams p = params_with(0.5, 1.0, 0.8);
  const BasisSpec b = BasisSpec::uniform(5);
  const FockFrame f = FockFrame::cylindrical(p, b);
  const ParamValues v = p.binding();
  const auto idx = testing::interior_indices(b, 1);
  for (Symbol s : kAllSymbols) {
    for (Symbol t : kAllSymbols) {
      const ComplexMatrix a = assemble(OperatorExpr(s), f, v).matrix();
      const ComplexMatrix c = assemble(OperatorExpr(t), f, v).matrix();
      const ComplexMatrix expected = assemble(commutator(OperatorExpr(s), OperatorExpr(t)), f, v).matrix();
      const ComplexMatrix got = testing::restrict(a * c - c * a, idx);
      CHECK((got - testing::restrict(expected, idx)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("matrix dump format") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = C(0.5, -1.0);
  m(1, 0) = C(0.5, 1.0);
  std::ostringstream os;
  write_matrix_dump(os, OperatorMatrix(m));
  CHECK(os.str() == "0 1 0.5 -1\n1 0 0.5 1\n");
}
