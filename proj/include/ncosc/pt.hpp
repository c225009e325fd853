#pragma once

// Closed-form first-order results exactly as stated. These are the
// claims the adjudicate module checks; nothing here is corrected.

#include <cstdint>
#include <iosfwd>

#include "ncosc/coefficient.hpp"
#include "ncosc/params.hpp"

namespace ncosc::pt {

/// alpha^2 [hbar w~ (2 n_rho + |mu| + 1) + hbar w_c mu / 2 + hbar w (n_z + 1/2)]
double e0(const QuantumNumbers& q, const PhaseSpaceParams& p);

/// Binomial with the convention C(n, k) = 0 for k < 0 or k > n.
BigInt binomial(long long n, long long k);

/// f(n_rho, mu) for mu >= 0, exact. Throws std::domain_error for mu < 0.
BigInt f_coeff(int n_rho, int mu);
/// Narrowing convenience; throws std::overflow_error if the value does not fit.
std::int64_t f_coeff_int(int n_rho, int mu);

enum class MuSign : std::uint8_t {
  absolute,  // as printed: -eta |mu| / 2m
  signed_mu  // -eta mu / 2m, matching <L_z> = hbar mu
};

/// -eta |mu| / 2m - (eta w_c / 4 m w~)(2 n_rho + |mu| + 1)
double de_eta(const QuantumNumbers& q, const PhaseSpaceParams& p, MuSign sign = MuSign::absolute);

/// -(1/2) theta m w~ (w~ - (1/2) w_c f(n_rho, |mu|))
double de_theta(const QuantumNumbers& q, const PhaseSpaceParams& p);

struct Validity {
  bool pass = false;
  double eta_ratio = 0.0;    // eta / (hbar m w_c)
  double theta_ratio = 0.0;  // theta m w~ / hbar
  double factor = 0.1;
};

/// Weak-noncommutativity conditions eta << hbar m w_c, theta << hbar / m w~,
/// read as "ratio <= factor".
Validity validity(const PhaseSpaceParams& p, double factor = 0.1);

struct CorrectionBreakdown {
  double e0 = 0.0;
  double de_eta = 0.0;
  double de_theta = 0.0;
  double de_total = 0.0;
  BigInt f_value;
  Validity validity;
};

CorrectionBreakdown breakdown(const QuantumNumbers& q, const PhaseSpaceParams& p,
                              MuSign sign = MuSign::absolute, double validity_factor = 0.1);

/// Table of f(n_rho, |mu|) for n_rho = 1..n_rho_max and |mu| = 0..n_rho-1,
/// one row per (n_rho, |mu|).
void write_f_table(std::ostream& os, int n_rho_max);

}  // namespace ncosc::pt
