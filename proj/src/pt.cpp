#include "ncosc/pt.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace ncosc::pt {

double e0(const QuantumNumbers& q, const PhaseSpaceParams& p) {
  q.validate();
  const double wt = p.omega_tilde();
  return p.alpha * p.alpha *
         (p.hbar * wt * (q.planar_quanta() + 1) + 0.5 * p.hbar * p.omega_c * q.mu + p.hbar * p.omega * (q.n_z + 0.5));
}

BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (long long j = 1; j <= k; ++j) {
    result *= n - k + j;
    result /= j;
  }
  return result;
}

BigInt f_coeff(int n_rho, int mu) {
  if (n_rho < 0) throw std::domain_error("n_rho must be non-negative");
  if (mu < 0) throw std::domain_error("f is defined for |mu|; pass a non-negative mu");
  const long long n = n_rho;
  const long long u = mu;
  const BigInt bracket = 2 * binomial(u + n, n) + 4 * binomial(u + n - 2, n) + binomial(u + n + 1, n) -
                         binomial(u + n + 2, n - 1);
  return 2 * binomial(n + u, u) - 4 * u * binomial(u + n + 2, n - 1) - u * (1 + u) * bracket;
}

std::int64_t f_coeff_int(int n_rho, int mu) {
  const BigInt f = f_coeff(n_rho, mu);
  if (f > std::numeric_limits<std::int64_t>::max() || f < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("f(n_rho, mu) does not fit in 64 bits");
  }
  return f.convert_to<std::int64_t>();
}

double de_eta(const QuantumNumbers& q, const PhaseSpaceParams& p, MuSign sign) {
  q.validate();
  const double mu = sign == MuSign::absolute ? std::abs(q.mu) : q.mu;
  return -p.eta * mu / (2.0 * p.mass) -
         p.eta * p.omega_c / (4.0 * p.mass * p.omega_tilde()) * (q.planar_quanta() + 1);
}

double de_theta(const QuantumNumbers& q, const PhaseSpaceParams& p) {
  q.validate();
  const double wt = p.omega_tilde();
  const double f = f_coeff(q.n_rho, std::abs(q.mu)).convert_to<double>();
  return -0.5 * p.theta * p.mass * wt * (wt - 0.5 * p.omega_c * f);
}

Validity validity(const PhaseSpaceParams& p, double factor) {
  Validity v;
  v.factor = factor;
  const double eta_scale = p.hbar * p.mass * p.omega_c;
  if (eta_scale > 0) {
    v.eta_ratio = p.eta / eta_scale;
  } else {
    v.eta_ratio = p.eta > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  v.theta_ratio = p.theta * p.mass * p.omega_tilde() / p.hbar;
  v.pass = v.eta_ratio <= factor && v.theta_ratio <= factor;
  return v;
}

CorrectionBreakdown breakdown(const QuantumNumbers& q, const PhaseSpaceParams& p, MuSign sign,
                              double validity_factor) {
  CorrectionBreakdown b;
  b.e0 = e0(q, p);
  b.de_eta = de_eta(q, p, sign);
  b.de_theta = de_theta(q, p);
  b.de_total = b.de_eta + b.de_theta;
  b.f_value = f_coeff(q.n_rho, std::abs(q.mu));
  b.validity = validity(p, validity_factor);
  return b;
}

void write_f_table(std::ostream& os, int n_rho_max) {
  os << std::setw(6) << "n_rho" << std::setw(6) << "|mu|" << std::setw(24) << "f(n_rho,|mu|)" << '\n';
  for (int n = 1; n <= n_rho_max; ++n) {
    for (int mu = 0; mu < n; ++mu) {
      os << std::setw(6) << n << std::setw(6) << mu << std::setw(24) << f_coeff(n, mu).str() << '\n';
    }
  }
}

}  // namespace ncosc::pt
