#include "ncosc/fock.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ncosc/format.hpp"

namespace ncosc {

namespace {

using Complex = std::complex<double>;

/// Ordered product of the X/P factors of one axis, exact on the kept block.
ComplexMatrix axis_product(const std::vector<SymbolKind>& kinds, const AxisOscillator& osc, int n_max) {
  if (kinds.empty()) return ComplexMatrix::Identity(n_max + 1, n_max + 1);
  const int padded = n_max + static_cast<int>(kinds.size());
  const auto [x, p] = xp_1d(osc, padded);
  ComplexMatrix prod = kinds.front() == SymbolKind::position ? x : p;
  for (std::size_t k = 1; k < kinds.size(); ++k) prod = prod * (kinds[k] == SymbolKind::position ? x : p);
  return prod.topLeftCorner(n_max + 1, n_max + 1);
}

std::array<ComplexMatrix, 3> monomial_factors(const Word& word, const FockFrame& frame) {
  std::array<std::vector<SymbolKind>, 3> per_axis;
  for (Symbol s : word) per_axis[static_cast<std::size_t>(axis_of(s) - 1)].push_back(kind_of(s));
  std::array<ComplexMatrix, 3> out;
  for (int a = 0; a < 3; ++a) {
    out[static_cast<std::size_t>(a)] =
        axis_product(per_axis[static_cast<std::size_t>(a)], frame.axes[static_cast<std::size_t>(a)],
                     frame.basis.n_max(a + 1));
  }
  return out;
}

/// y = (A (x) B (x) C) v for v laid out with the last axis fastest.
StateVector kron_apply(const std::array<ComplexMatrix, 3>& f, const StateVector& v) {
  const Eigen::Index n1 = f[0].rows(), n2 = f[1].rows(), n3 = f[2].rows();
  StateVector t1(v.size()), t2(v.size()), out(v.size());
  // axis 3
  for (Eigen::Index ab = 0; ab < n1 * n2; ++ab) {
    t1.segment(ab * n3, n3) = f[2] * v.segment(ab * n3, n3);
  }
  // axis 2
  for (Eigen::Index a = 0; a < n1; ++a) {
    for (Eigen::Index b = 0; b < n2; ++b) {
      Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n3);
      for (Eigen::Index bb = 0; bb < n2; ++bb) {
        const Complex w = f[1](b, bb);
        if (w != Complex(0)) acc += w * t1.segment((a * n2 + bb) * n3, n3);
      }
      t2.segment((a * n2 + b) * n3, n3) = acc;
    }
  }
  // axis 1
  for (Eigen::Index a = 0; a < n1; ++a) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n2 * n3);
    for (Eigen::Index aa = 0; aa < n1; ++aa) {
      const Complex w = f[0](a, aa);
      if (w != Complex(0)) acc += w * t2.segment(aa * n2 * n3, n2 * n3);
    }
    out.segment(a * n2 * n3, n2 * n3) = acc;
  }
  return out;
}

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

}  // namespace

int BasisSpec::n_max(int axis) const {
  switch (axis) {
    case 1: return n_max_x;
    case 2: return n_max_y;
    case 3: return n_max_z;
    default: throw std::out_of_range("axis must be 1, 2 or 3");
  }
}

Eigen::Index BasisSpec::dim() const {
  return static_cast<Eigen::Index>(n_max_x + 1) * (n_max_y + 1) * (n_max_z + 1);
}

Eigen::Index BasisSpec::index(int nx, int ny, int nz) const {
  return (static_cast<Eigen::Index>(nx) * (n_max_y + 1) + ny) * (n_max_z + 1) + nz;
}

void BasisSpec::validate() const {
  if (n_max_x < 0 || n_max_y < 0 || n_max_z < 0) throw std::invalid_argument("basis cutoffs must be non-negative");
}

bool BasisSpec::represents(const QuantumNumbers& q) const { return margin(q) >= 0; }

int BasisSpec::margin(const QuantumNumbers& q) const {
  const int planar = q.planar_quanta();
  return std::min({n_max_x - planar, n_max_y - planar, n_max_z - q.n_z});
}

OperatorMatrix::OperatorMatrix(ComplexMatrix m, bool assert_hermitian) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("operator matrix must be square");
  hermitian_ = hermiticity_defect(m_) <= kHermitianTolerance;
  if (assert_hermitian && !hermitian_) {
    throw std::runtime_error("operator matrix is not Hermitian (defect " + format_double(hermiticity_defect(m_)) +
                             ")");
  }
}

double OperatorMatrix::hermiticity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Eigen::MatrixXd ladder(int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

std::pair<ComplexMatrix, ComplexMatrix> xp_1d(const AxisOscillator& osc, int n_max) {
  if (!(osc.mass > 0 && osc.omega > 0 && osc.hbar > 0)) {
    throw std::invalid_argument("oscillator mass, frequency and hbar must be positive");
  }
  const Eigen::MatrixXd a = ladder(n_max);
  const Eigen::MatrixXd ad = a.transpose();
  const double x_scale = std::sqrt(osc.hbar / (2.0 * osc.mass * osc.omega));
  const double p_scale = std::sqrt(osc.hbar * osc.mass * osc.omega / 2.0);
  ComplexMatrix x = (x_scale * (a + ad)).cast<Complex>();
  ComplexMatrix p = Complex(0.0, p_scale) * (ad - a).cast<Complex>();
  return {std::move(x), std::move(p)};
}

FockFrame FockFrame::cylindrical(const PhaseSpaceParams& p, const BasisSpec& basis) {
  p.validate();
  basis.validate();
  const AxisOscillator planar{p.mass, p.omega_tilde(), p.hbar};
  return {basis, {planar, planar, AxisOscillator{p.mass, p.omega, p.hbar}}};
}

OperatorMatrix assemble(const OperatorExpr& expr, const FockFrame& frame, const ParamValues& values) {
  frame.basis.validate();
  const Eigen::Index dim = frame.basis.dim();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  const Eigen::Index n2 = frame.basis.n_max_y + 1, n3 = frame.basis.n_max_z + 1;
  for (const auto& term : expr.terms()) {
    const Complex c = term.coeff.evaluate(values);
    if (c == Complex(0)) continue;
    const auto f = monomial_factors(term.factors, frame);
    for (Eigen::Index i1 = 0; i1 < f[0].rows(); ++i1) {
      for (Eigen::Index j1 = 0; j1 < f[0].cols(); ++j1) {
        const Complex w1 = c * f[0](i1, j1);
        if (w1 == Complex(0)) continue;
        for (Eigen::Index i2 = 0; i2 < n2; ++i2) {
          for (Eigen::Index j2 = 0; j2 < n2; ++j2) {
            const Complex w2 = w1 * f[1](i2, j2);
            if (w2 == Complex(0)) continue;
            const Eigen::Index row0 = (i1 * n2 + i2) * n3;
            const Eigen::Index col0 = (j1 * n2 + j2) * n3;
            out.block(row0, col0, n3, n3) += w2 * f[2];
          }
        }
      }
    }
  }
  return OperatorMatrix(std::move(out));
}

StateVector apply(const OperatorExpr& expr, const FockFrame& frame, const ParamValues& values,
                  const StateVector& v) {
  if (v.size() != frame.basis.dim()) throw std::invalid_argument("state dimension does not match the basis");
  StateVector out = StateVector::Zero(v.size());
  for (const auto& term : expr.terms()) {
    const Complex c = term.coeff.evaluate(values);
    if (c == Complex(0)) continue;
    out += c * kron_apply(monomial_factors(term.factors, frame), v);
  }
  return out;
}

StateVector cylindrical_state(const QuantumNumbers& q, const FockFrame& frame) {
  q.validate();
  const auto& basis = frame.basis;
  if (!basis.represents(q)) {
    throw std::out_of_range("quantum numbers " + q.to_string() + " are not representable in the basis");
  }
  const auto& ax = frame.axes[0];
  const auto& ay = frame.axes[1];
  if (ax.omega != ay.omega || ax.mass != ay.mass || ax.hbar != ay.hbar) {
    throw std::invalid_argument("cylindrical states need identical x and y oscillators");
  }
  const int planar = q.planar_quanta();
  const int n_plus = (planar + q.mu) / 2;
  const int n_minus = (planar - q.mu) / 2;

  // (a_x^dag + i a_y^dag)^n+ (a_x^dag - i a_y^dag)^n- |0,0> / sqrt(2^N n+! n-!)
  std::vector<Complex> plane(static_cast<std::size_t>(planar + 1), Complex(0));
  auto ipow = [](int n) {
    static constexpr std::array<Complex, 4> cycle = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    return cycle[static_cast<std::size_t>(((n % 4) + 4) % 4)];
  };
  auto binom = [](int n, int k) { return std::round(factorial(n) / (factorial(k) * factorial(n - k))); };
  for (int k = 0; k <= n_plus; ++k) {
    for (int l = 0; l <= n_minus; ++l) {
      // i^(n+ - k) (-i)^(n- - l)
      const Complex phase = ipow(n_plus - k) * ipow(-(n_minus - l));
      plane[static_cast<std::size_t>(k + l)] += binom(n_plus, k) * binom(n_minus, l) * phase;
    }
  }
  const double norm = std::sqrt(std::pow(2.0, planar) * factorial(n_plus) * factorial(n_minus));
  StateVector v = StateVector::Zero(basis.dim());
  for (int nx = 0; nx <= planar; ++nx) {
    const int ny = planar - nx;
    v(basis.index(nx, ny, q.n_z)) = plane[static_cast<std::size_t>(nx)] *
                                    std::sqrt(factorial(nx) * factorial(ny)) / norm;
  }
  v.normalize();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > 1e-14) {
      v *= std::conj(v(k)) / std::abs(v(k));
      v(k) = std::abs(v(k));
      break;
    }
  }
  return v;
}

std::complex<double> expectation(const OperatorMatrix& a, const StateVector& v) {
  if (v.size() != a.dim()) throw std::invalid_argument("state dimension does not match the operator");
  if (std::abs(v.norm() - 1.0) > 1e-12) throw std::invalid_argument("state is not normalized");
  return v.dot(a.matrix() * v);
}

std::complex<double> expectation(const OperatorExpr& expr, const FockFrame& frame, const ParamValues& values,
                                 const StateVector& v) {
  if (std::abs(v.norm() - 1.0) > 1e-12) throw std::invalid_argument("state is not normalized");
  return v.dot(apply(expr, frame, values, v));
}

void write_matrix_dump(std::ostream& os, const OperatorMatrix& a) {
  const auto& m = a.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == Complex(0)) continue;
      os << i << ' ' << j << ' ' << format_double(m(i, j).real()) << ' ' << format_double(m(i, j).imag()) << '\n';
    }
  }
}

}  // namespace ncosc
