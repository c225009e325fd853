#pragma once

#include <compare>
#include <string>

#include "ncosc/coefficient.hpp"

namespace ncosc {

/// Physical and noncommutativity parameters of one evaluation point.
/// theta has units of length^2, eta of momentum^2.
struct PhaseSpaceParams {
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  double omega_c = 0.0;  // qB/mc
  double alpha = 1.0;
  double theta = 0.0;
  double eta = 0.0;

  double omega_tilde() const;
  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  /// Numeric values for every formal parameter, omega_t included.
  ParamValues binding() const;
};

/// Cylindrical eigenstate label (n_rho, mu, n_z).
struct QuantumNumbers {
  int n_rho = 0;
  int mu = 0;
  int n_z = 0;

  /// 2 n_rho + |mu|
  int planar_quanta() const { return 2 * n_rho + (mu < 0 ? -mu : mu); }
  void validate() const;
  std::string to_string() const;

  friend auto operator<=>(const QuantumNumbers&, const QuantumNumbers&) = default;
};

}  // namespace ncosc
