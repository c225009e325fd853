#pragma once

// Cross-checks of the closed forms against matrix mechanics:
// first-order expectation values, finite-difference eigenvalue slopes of the
// full Hamiltonian, the vanishing matrix elements, and symbolic claims.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncosc/fock.hpp"
#include "ncosc/opalg.hpp"
#include "ncosc/params.hpp"

namespace ncosc::adjudicate {

enum class Verdict : std::uint8_t { match, sign_flip, mismatch };
std::string_view verdict_name(Verdict v);

/// |a - b| / max(|a|, |b|, floor)
double relative_difference(double a, double b, double floor = 1e-12);

/// MATCH within rel_tol, SIGN-FLIP if claimed matches -oracle, else MISMATCH.
Verdict compare_values(double claimed, double oracle, double rel_tol = 1e-8);

inline constexpr double kGapThreshold = 1e-6;  // in units of hbar*omega

struct OracleCorrections {
  double e0 = 0.0;         // <alpha^2 H0>
  double h_eta = 0.0;      // <H_eta> / hbar, i.e. dE/d eta
  double h_theta = 0.0;    // <H_theta> / hbar, i.e. dE/d theta
  double de_eta = 0.0;     // eta * h_eta
  double de_theta = 0.0;   // theta * h_theta
  bool degenerate = false; // another unperturbed level lies within the gap threshold
  double gap = 0.0;        // distance to the nearest other unperturbed level
  double p_perp_sq = 0.0;  // <px^2 + py^2>
  double p_rho_sq = 0.0;   // radial part only: <px^2 + py^2> - hbar^2 mu^2 <1/rho^2>
};

/// Expectation values of the engine-derived first-order pieces in the
/// cylindrical state. Throws std::out_of_range when q does not fit the basis.
OracleCorrections first_order_oracle(const QuantumNumbers& q, const PhaseSpaceParams& p, const BasisSpec& basis);

struct SlopeResult {
  QuantumNumbers q;
  double step = 0.0;
  double d_eta = 0.0;       // central difference at step
  double d_theta = 0.0;
  double d_eta_half = 0.0;  // central difference at step/2
  double d_theta_half = 0.0;
  double gap = 0.0;         // in the truncated unperturbed spectrum
  bool degenerate = false;
  bool tracked = false;     // every perturbed level found with overlap > 0.9
  bool richardson_ok = false;

  bool usable() const { return !degenerate && tracked; }
};

/// dE/d eta and dE/d theta at eta = theta = 0 by central differences of the
/// exact eigenvalues of the full Hamiltonian. All states share the same
/// diagonalizations. Levels are followed by overlap with the unperturbed state.
std::vector<SlopeResult> hf_slopes(const std::vector<QuantumNumbers>& states, const PhaseSpaceParams& p,
                                   const BasisSpec& basis, double step = 1e-4, double richardson_tol = 1e-7);
SlopeResult hf_slope(const QuantumNumbers& q, const PhaseSpaceParams& p, const BasisSpec& basis,
                     double step = 1e-4);

struct NamedOperator {
  std::string name;
  OperatorExpr op;
};

/// L_x, L_y, xz, yz, px pz, py pz, y pz, x pz, px, py.
const std::vector<NamedOperator>& vanishing_operators();

/// Largest |<q|O|q>| over vanishing_operators().
double vanishing_check(const QuantumNumbers& q, const PhaseSpaceParams& p, const BasisSpec& basis);

// --- symbolic claims ------------------------------------------------------

struct ClaimResult {
  std::string key;
  std::string claim_text;
  std::string engine_text;  // empty for unknown keys
  Verdict verdict = Verdict::mismatch;
  std::string note;
};

/// Engine-derived expression for every recognised claim key.
const std::map<std::string, OperatorExpr>& engine_claims();

/// Reads "key = expression" lines ("#" starts a comment) and compares each
/// against the engine after normalization.
std::vector<ClaimResult> compare_claims(std::istream& in);
std::vector<ClaimResult> compare_claims_file(const std::string& path);

// --- report -----------------------------------------------------------------

struct ReportRecord {
  QuantumNumbers q;
  double omega_c = 0.0;
  double e0_paper = 0.0;
  double e0_oracle = 0.0;
  double de_eta_paper = 0.0;
  double de_eta_paper_signed = 0.0;
  double de_eta_oracle = 0.0;
  double de_theta_paper = 0.0;
  double de_theta_oracle = 0.0;
  double h_eta = 0.0;            // oracle slope dE/d eta
  double h_theta = 0.0;          // oracle slope dE/d theta
  double p_perp_sq = 0.0;
  double p_rho_sq = 0.0;
  double slope_eta_fd = 0.0;
  double slope_theta_fd = 0.0;
  double step = 0.0;
  double vanishing_max_abs = 0.0;
  double truncation_change = 0.0;  // relative change of the oracle fields when the margin doubles
  SlopeResult slope;
  double hf_eta_rel = 0.0;
  double hf_theta_rel = 0.0;
  bool hf_consistent = false;      // meaningful only when slope.usable()
  Verdict verdict_e0 = Verdict::mismatch;
  Verdict verdict_eta = Verdict::mismatch;
  Verdict verdict_theta = Verdict::mismatch;
  std::string gap_guard_status() const;
};

struct CurveMinimum {
  QuantumNumbers q;
  double reference = 0.0;
  double located = 0.0;
  double ratio_at_minimum = 0.0;
  bool at_boundary = false;
  double delta() const { return located - reference; }
};

/// Minima of |dE1/E0| from the printed formulas over omega_c in [0.1, 10]
/// (200 log-spaced points, then golden-section refinement), for the six
/// reference curves with n_z = 1.
std::vector<CurveMinimum> locate_printed_minima(const PhaseSpaceParams& base);

/// Log-spaced grid, inclusive of both ends.
std::vector<double> log_grid(double lo, double hi, int points);

struct FTableRow {
  double omega_c = 0.0;
  int n_rho = 0;
  int mu = 0;
  long long f_paper = 0;
  std::optional<double> f_implied;  // f that would make the printed de_theta equal the oracle
};

/// The f-table pairs (n_rho = 1..3, |mu| < n_rho) evaluated at one omega_c.
std::vector<FTableRow> f_table_block(const PhaseSpaceParams& p);

struct ReportConfig {
  PhaseSpaceParams base;
  std::vector<double> omega_cs;
  std::vector<QuantumNumbers> grid;
  int basis_expect = 12;
  int basis_diag = 8;
  double step = 1e-4;
  std::string claims_path;
};

struct Report {
  ReportConfig config;
  std::vector<ClaimResult> claims;
  std::vector<ReportRecord> records;
  std::vector<FTableRow> f_rows;
  std::vector<CurveMinimum> minima;
  std::vector<std::string> failures;  // internal-consistency failures only
  int flagged = 0;

  bool internally_consistent() const { return failures.empty(); }
};

/// Representable states with 2 n_rho + |mu| <= planar_max and n_z <= nz_max,
/// sorted.
std::vector<QuantumNumbers> state_grid(int planar_max, int nz_max);

inline constexpr double kHfTolerance = 1e-6;
inline constexpr double kTruncationTolerance = 1e-9;
inline constexpr double kVanishingTolerance = 1e-11;

/// Never aborts on per-record problems; they are flagged. Throws only for
/// invalid configuration or eigensolver failure.
Report build_report(const ReportConfig& config);

void write_report_text(std::ostream& os, const Report& r);
void write_report_csv(std::ostream& os, const Report& r);
void write_minima_csv(std::ostream& os, const Report& r);

inline constexpr std::string_view kReportCsvHeader =
    "n_rho,mu,n_z,omega_c,e0_paper,e0_oracle,de_eta_paper,de_eta_oracle,de_theta_paper,de_theta_oracle,"
    "slope_eta_fd,slope_theta_fd,verdict_eta,verdict_theta";

}  // namespace ncosc::adjudicate
