#pragma once

// Command-line front end. run() parses arguments and dispatches; the cmd_*
// functions take a resolved configuration and write their output.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncosc/opalg.hpp"
#include "ncosc/params.hpp"

namespace ncosc::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2 };

enum class Command : std::uint8_t { energies, ftable, sweep, verify, expand };
enum class Format : std::uint8_t { csv, text };

/// A:B:N, linear unless log is set.
struct SweepSpec {
  double start = 0.1;
  double end = 10.0;
  int steps = 200;
  bool log = true;

  std::vector<double> points() const;
  /// Throws std::invalid_argument unless start < end and steps >= 2.
  void validate() const;
};

/// Parses "A:B:N". Throws std::invalid_argument.
SweepSpec parse_sweep(std::string_view text, bool log = false);

struct RunConfig {
  Command command = Command::energies;
  PhaseSpaceParams params = default_params();
  bool omega_c_given = false;
  std::optional<SweepSpec> sweep;
  std::optional<QuantumNumbers> state;
  int grid_planar = 6;   // 2 n_rho + |mu| bound for grids
  int grid_nz = 4;
  int basis = 12;
  int diag_basis = 8;
  double step = 1e-4;
  std::string out;
  std::optional<Format> format;
  std::string claims;
  Space space = Space::space;
  int nrho_max = 3;

  static PhaseSpaceParams default_params();
};

/// Full command line without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_energies(const RunConfig& cfg, std::ostream& out);
int cmd_ftable(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_expand(const RunConfig& cfg, std::ostream& out);

inline constexpr std::string_view kSweepCsvHeader = "omega_c,E0,dE1_paper,ratio_paper,dE1_oracle,ratio_oracle";
inline constexpr std::string_view kEnergiesCsvHeader =
    "n_rho,mu,n_z,omega_c,E0,dE_eta,dE_theta,dE_total,validity";

}  // namespace ncosc::cli
