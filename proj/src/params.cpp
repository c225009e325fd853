#include "ncosc/params.hpp"

#include <cmath>
#include <stdexcept>

namespace ncosc {

double PhaseSpaceParams::omega_tilde() const { return std::sqrt(omega * omega + omega_c * omega_c / 4.0); }

void PhaseSpaceParams::validate() const {
  if (!(hbar > 0)) throw std::invalid_argument("hbar must be positive");
  if (!(mass > 0)) throw std::invalid_argument("mass must be positive");
  if (!(omega > 0)) throw std::invalid_argument("omega must be positive");
  if (!(omega_c >= 0)) throw std::invalid_argument("omega_c must be non-negative");
  if (!(alpha > 0 && alpha <= 1)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(theta >= 0)) throw std::invalid_argument("theta must be non-negative");
  if (!(eta >= 0)) throw std::invalid_argument("eta must be non-negative");
}

ParamValues PhaseSpaceParams::binding() const {
  ParamValues v;
  v[static_cast<std::size_t>(Param::hbar)] = hbar;
  v[static_cast<std::size_t>(Param::alpha)] = alpha;
  v[static_cast<std::size_t>(Param::theta)] = theta;
  v[static_cast<std::size_t>(Param::eta)] = eta;
  v[static_cast<std::size_t>(Param::mass)] = mass;
  v[static_cast<std::size_t>(Param::omega)] = omega;
  v[static_cast<std::size_t>(Param::omega_c)] = omega_c;
  v[static_cast<std::size_t>(Param::omega_t)] = omega_tilde();
  return v;
}

void QuantumNumbers::validate() const {
  if (n_rho < 0) throw std::invalid_argument("n_rho must be non-negative");
  if (n_z < 0) throw std::invalid_argument("n_z must be non-negative");
}

std::string QuantumNumbers::to_string() const {
  return "(" + std::to_string(n_rho) + "," + std::to_string(mu) + "," + std::to_string(n_z) + ")";
}

}  // namespace ncosc
