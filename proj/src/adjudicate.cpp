#include "ncosc/adjudicate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ncosc/format.hpp"
#include "ncosc/pt.hpp"
#include "ncosc/spectra.hpp"

namespace ncosc::adjudicate {

namespace {

constexpr double kOverlapThreshold = 0.9;
constexpr double kSlopeFloor = 1e-9;
constexpr double kDecompositionTolerance = 1e-10;

OperatorExpr sym(Symbol s) { return OperatorExpr(s); }

const OperatorExpr& bucket(BucketKey key) { return nc_hamiltonian_buckets(Space::space).at(key); }

/// Unperturbed level as an explicit function of the label, with the
/// mu-term sign that follows from -(omega_c/2) L_z and <L_z> = hbar mu.
double physical_level(int planar, int mu, int n_z, const PhaseSpaceParams& p) {
  return p.alpha * p.alpha * p.hbar *
         (p.omega_tilde() * (planar + 1) - 0.5 * p.omega_c * mu + p.omega * (n_z + 0.5));
}

/// Distance from q's unperturbed level to the nearest level with another label.
double analytic_gap(const QuantumNumbers& q, const PhaseSpaceParams& p) {
  const double target = physical_level(q.planar_quanta(), q.mu, q.n_z, p);
  const double scale = p.alpha * p.alpha * p.hbar;
  const double wt = p.omega_tilde();
  const double wc = p.omega_c;
  // The level one z-quantum higher is always hbar*omega away.
  double best = scale * p.omega;
  // Lowest level with planar quanta N and given n_z is bounded below by
  // scale*((wt - |wc|/2) N + wt + w(n_z + 1/2)), increasing in N and n_z.
  const double slope = wt - 0.5 * std::abs(wc);
  for (int nz = 0;; ++nz) {
    const double base_z = scale * (wt + p.omega * (nz + 0.5));
    if (base_z > target + best) break;
    for (int n = 0;; ++n) {
      if (base_z + scale * slope * n > target + best) break;
      if (n > 1000000) break;
      // E is linear in mu; test the admissible mu nearest the target.
      const double e_mu0 = physical_level(n, 0, nz, p);
      std::vector<int> candidates;
      if (wc == 0.0) {
        candidates = {-n, n};
      } else {
        const double mu_star = (e_mu0 - target) / (0.5 * scale * wc);
        const int lo = static_cast<int>(std::floor(mu_star));
        for (int m = lo - 2; m <= lo + 2; ++m) candidates.push_back(m);
      }
      for (int m : candidates) {
        if (m < -n || m > n || ((n - m) % 2 != 0)) continue;
        if (n == q.planar_quanta() && m == q.mu && nz == q.n_z) continue;
        best = std::min(best, std::abs(physical_level(n, m, nz, p) - target));
      }
    }
  }
  return best;
}

double gap_scale(const PhaseSpaceParams& p) { return kGapThreshold * p.hbar * p.omega * p.alpha * p.alpha; }

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::match: return "MATCH";
    case Verdict::sign_flip: return "SIGN-FLIP";
    case Verdict::mismatch: return "MISMATCH";
  }
  return "MISMATCH";
}

double relative_difference(double a, double b, double floor) {
  const double denom = std::max({std::abs(a), std::abs(b), floor});
  return std::abs(a - b) / denom;
}

Verdict compare_values(double claimed, double oracle, double rel_tol) {
  if (relative_difference(claimed, oracle) <= rel_tol) return Verdict::match;
  if (relative_difference(claimed, -oracle) <= rel_tol) return Verdict::sign_flip;
  return Verdict::mismatch;
}

OracleCorrections first_order_oracle(const QuantumNumbers& q, const PhaseSpaceParams& p, const BasisSpec& basis) {
  p.validate();
  q.validate();
  basis.validate();
  if (!basis.represents(q)) {
    throw std::out_of_range("quantum numbers " + q.to_string() + " are not representable in the basis");
  }
  const FockFrame frame = FockFrame::cylindrical(p, basis);
  const ParamValues values = p.binding();
  const StateVector v = cylindrical_state(q, frame);

  OracleCorrections out;
  out.e0 = expectation(bucket({0, 0}), frame, values, v).real();
  out.h_eta = expectation(bucket({0, 1}), frame, values, v).real() / p.hbar;
  out.h_theta = expectation(bucket({1, 0}), frame, values, v).real() / p.hbar;
  out.de_eta = p.eta * out.h_eta;
  out.de_theta = p.theta * out.h_theta;
  out.gap = analytic_gap(q, p);
  out.degenerate = out.gap <= gap_scale(p);
  out.p_perp_sq = expectation(parse_expr("px^2 + py^2"), frame, values, v).real();
  out.p_rho_sq = out.p_perp_sq - p.mass * p.hbar * p.omega_tilde() * std::abs(q.mu);
  return out;
}

std::vector<SlopeResult> hf_slopes(const std::vector<QuantumNumbers>& states, const PhaseSpaceParams& p,
                                   const BasisSpec& basis, double step, double richardson_tol) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("finite-difference step must be positive");
  PhaseSpaceParams p0 = p;
  p0.eta = 0.0;
  p0.theta = 0.0;
  p0.validate();
  basis.validate();

  const FockFrame frame = FockFrame::cylindrical(p0, basis);
  const Eigen::Index n_states = static_cast<Eigen::Index>(states.size());
  ComplexMatrix s(basis.dim(), n_states);
  for (Eigen::Index j = 0; j < n_states; ++j) s.col(j) = cylindrical_state(states[j], frame);

  const HamiltonianPieces pieces = build_pieces(p0, basis);
  const OperatorMatrix h0 = combine_pieces(pieces, p0.alpha, p0.hbar, 0.0, 0.0);
  const SpectrumResult base = eig_herm(h0, kDefaultEigenTolerance, false);

  std::vector<SlopeResult> out(states.size());
  for (Eigen::Index j = 0; j < n_states; ++j) {
    SlopeResult& r = out[j];
    r.q = states[j];
    r.step = step;
    const double e = (s.col(j).adjoint() * h0.matrix() * s.col(j))(0, 0).real();
    std::vector<double> dist(base.eigenvalues.size());
    for (Eigen::Index k = 0; k < base.eigenvalues.size(); ++k) dist[k] = std::abs(base.eigenvalues[k] - e);
    std::partial_sort(dist.begin(), dist.begin() + std::min<std::size_t>(2, dist.size()), dist.end());
    r.gap = dist.size() > 1 ? dist[1] : std::numeric_limits<double>::infinity();
    r.degenerate = r.gap <= gap_scale(p0);
    r.tracked = true;
  }

  // Eigenvalue of every state's level at one perturbed point.
  auto levels = [&](double eta, double theta) {
    const SpectrumResult spec = eig_herm(combine_pieces(pieces, p0.alpha, p0.hbar, eta, theta));
    const ComplexMatrix overlaps = spec.eigenvectors.adjoint() * s;
    std::vector<double> energies(states.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<Eigen::Index> picked(states.size(), -1);
    for (Eigen::Index j = 0; j < n_states; ++j) {
      Eigen::Index idx = 0;
      const double best = overlaps.col(j).cwiseAbs().maxCoeff(&idx);
      if (best > kOverlapThreshold) {
        picked[j] = idx;
        energies[j] = spec.eigenvalues[idx];
      } else {
        out[j].tracked = false;
      }
    }
    for (Eigen::Index j = 0; j < n_states; ++j) {
      for (Eigen::Index k = j + 1; k < n_states; ++k) {
        if (picked[j] >= 0 && picked[j] == picked[k]) {
          out[j].tracked = false;
          out[k].tracked = false;
        }
      }
    }
    return energies;
  };

  const double half = 0.5 * step;
  const auto eta_p = levels(step, 0.0);
  const auto eta_m = levels(-step, 0.0);
  const auto eta_hp = levels(half, 0.0);
  const auto eta_hm = levels(-half, 0.0);
  const auto th_p = levels(0.0, step);
  const auto th_m = levels(0.0, -step);
  const auto th_hp = levels(0.0, half);
  const auto th_hm = levels(0.0, -half);

  for (std::size_t j = 0; j < out.size(); ++j) {
    SlopeResult& r = out[j];
    r.d_eta = (eta_p[j] - eta_m[j]) / (2.0 * step);
    r.d_eta_half = (eta_hp[j] - eta_hm[j]) / (2.0 * half);
    r.d_theta = (th_p[j] - th_m[j]) / (2.0 * step);
    r.d_theta_half = (th_hp[j] - th_hm[j]) / (2.0 * half);
    r.richardson_ok = r.tracked && relative_difference(r.d_eta, r.d_eta_half, kSlopeFloor) <= richardson_tol &&
                      relative_difference(r.d_theta, r.d_theta_half, kSlopeFloor) <= richardson_tol;
  }
  return out;
}

SlopeResult hf_slope(const QuantumNumbers& q, const PhaseSpaceParams& p, const BasisSpec& basis, double step) {
  if (!basis.represents(q)) {
    throw std::out_of_range("quantum numbers " + q.to_string() + " are not representable in the basis");
  }
  return hf_slopes({q}, p, basis, step).front();
}

const std::vector<NamedOperator>& vanishing_operators() {
  static const std::vector<NamedOperator> ops = {
      {"Lx", angular_momentum(1)},
      {"Ly", angular_momentum(2)},
      {"xz", sym(Symbol::x) * sym(Symbol::z)},
      {"yz", sym(Symbol::y) * sym(Symbol::z)},
      {"px*pz", sym(Symbol::px) * sym(Symbol::pz)},
      {"py*pz", sym(Symbol::py) * sym(Symbol::pz)},
      {"y*pz", sym(Symbol::y) * sym(Symbol::pz)},
      {"x*pz", sym(Symbol::x) * sym(Symbol::pz)},
      {"px", sym(Symbol::px)},
      {"py", sym(Symbol::py)},
  };
  return ops;
}

double vanishing_check(const QuantumNumbers& q, const PhaseSpaceParams& p, const BasisSpec& basis) {
  const FockFrame frame = FockFrame::cylindrical(p, basis);
  const ParamValues values = p.binding();
  const StateVector v = cylindrical_state(q, frame);
  double worst = 0.0;
  for (const auto& item : vanishing_operators()) {
    worst = std::max(worst, std::abs(expectation(item.op, frame, values, v)));
  }
  return worst;
}

// --- symbolic claims --------------------------------------------------------

namespace {

struct EngineTables {
  std::map<std::string, OperatorExpr> values;
  // Commutator forms built with the other tensor contraction.
  std::map<std::string, OperatorExpr> alternatives;
};

OperatorExpr xp_commutator_form(const AntisymTensor& t, int i, int j, Contraction c) {
  const Coefficient ih = Coefficient::imag_unit() * Coefficient::param(Param::hbar) *
                         Coefficient::param(Param::alpha, 2);
  Coefficient k = Coefficient::imag_unit() * Coefficient::rational(1, 4) * Coefficient::param(Param::theta) *
                  Coefficient::param(Param::eta) * Coefficient::param(Param::alpha, -2) *
                  Coefficient::param(Param::hbar, -1);
  Coefficient total = k * Coefficient(lambda_contract(t, i, j, c));
  if (i == j) total += ih;
  return OperatorExpr(total);
}

EngineTables build_tables() {
  EngineTables out;
  const auto space_images = bopp_images(AntisymTensor::space());
  for (Symbol s : kAllSymbols) {
    out.values["bopp." + std::string(symbol_name(s))] = normalize(space_images[static_cast<std::size_t>(s)]);
  }
  auto img = [&](const OperatorExpr& e) { return normalize(substitute(e, space_images)); };
  out.values["Lz_hat"] = img(angular_momentum(3));
  out.values["psq_hat"] =
      img(sym(Symbol::px) * sym(Symbol::px) + sym(Symbol::py) * sym(Symbol::py) + sym(Symbol::pz) * sym(Symbol::pz));
  out.values["xy_sq_hat"] = img(sym(Symbol::x) * sym(Symbol::x) + sym(Symbol::y) * sym(Symbol::y));
  out.values["z_sq_hat"] = img(sym(Symbol::z) * sym(Symbol::z));
  for (BucketKey key : kBucketKeys) out.values[bucket_label(key)] = bucket(key);

  for (Space sp : {Space::plane, Space::space}) {
    const AntisymTensor t = AntisymTensor::for_space(sp);
    const auto images = bopp_images(t);
    const std::string prefix = sp == Space::plane ? "comm2d." : "comm3d.";
    const int dim = t.dim();
    for (Symbol a : kAllSymbols) {
      for (Symbol b : kAllSymbols) {
        if (axis_of(a) > dim || axis_of(b) > dim) continue;
        const std::string key = prefix + std::string(symbol_name(a)) + "." + std::string(symbol_name(b));
        out.values[key] = normalize(commutator(images[static_cast<std::size_t>(a)], images[static_cast<std::size_t>(b)]));
        if (kind_of(a) == SymbolKind::position && kind_of(b) == SymbolKind::momentum) {
          out.alternatives[key] = normalize(xp_commutator_form(t, axis_of(a), axis_of(b), Contraction::first_second));
        }
      }
    }
  }
  return out;
}

const EngineTables& tables() {
  static const EngineTables t = build_tables();
  return t;
}

}  // namespace

const std::map<std::string, OperatorExpr>& engine_claims() { return tables().values; }

std::vector<ClaimResult> compare_claims(std::istream& in) {
  std::vector<ClaimResult> out;
  const auto& t = tables();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    ClaimResult r;
    if (eq == std::string_view::npos) {
      r.key = "line " + std::to_string(line_no);
      r.claim_text = std::string(view);
      r.note = "no '=' separator";
      out.push_back(std::move(r));
      continue;
    }
    r.key = std::string(trim(view.substr(0, eq)));
    r.claim_text = std::string(trim(view.substr(eq + 1)));
    const auto it = t.values.find(r.key);
    if (it == t.values.end()) {
      r.note = "unknown key";
      out.push_back(std::move(r));
      continue;
    }
    r.engine_text = to_text(it->second);
    OperatorExpr claim;
    try {
      claim = normalize(parse_expr(r.claim_text));
    } catch (const ParseError& e) {
      r.note = std::string("unparseable: ") + e.what();
      out.push_back(std::move(r));
      continue;
    }
    if (normalize(claim - it->second).empty()) {
      r.verdict = Verdict::match;
    } else if (!it->second.empty() && normalize(claim + it->second).empty()) {
      r.verdict = Verdict::sign_flip;
    } else {
      r.verdict = Verdict::mismatch;
      r.note = "claim - engine = " + to_text(normalize(claim - it->second));
    }
    if (r.verdict != Verdict::match) {
      if (const auto alt = t.alternatives.find(r.key);
          alt != t.alternatives.end() && normalize(claim - alt->second).empty()) {
        if (!r.note.empty()) r.note += "; ";
        r.note += "claim equals the lambda_{i mu} lambda_{mu j} contraction form";
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ClaimResult> compare_claims_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open claims file '" + path + "'");
  return compare_claims(in);
}

// --- report ------------------------------------------------------------------

std::string ReportRecord::gap_guard_status() const {
  if (slope.degenerate) return "degenerate";
  if (!slope.tracked) return "untracked";
  if (!slope.richardson_ok) return "richardson";
  return "ok";
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) throw std::invalid_argument("log grid needs 0 < lo < hi and >= 2 points");
  std::vector<double> out(static_cast<std::size_t>(points));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < points; ++k) out[k] = std::exp(a + (b - a) * k / (points - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

double printed_ratio(const QuantumNumbers& q, PhaseSpaceParams p, double omega_c) {
  p.omega_c = omega_c;
  return std::abs((pt::de_eta(q, p) + pt::de_theta(q, p)) / pt::e0(q, p));
}

}  // namespace

std::vector<CurveMinimum> locate_printed_minima(const PhaseSpaceParams& base) {
  static const std::vector<std::pair<QuantumNumbers, double>> curves = {
      {{1, 0, 1}, 1.79}, {{2, 0, 1}, 2.58}, {{2, 1, 1}, 2.71},
      {{3, 0, 1}, 3.11}, {{3, 1, 1}, 2.81}, {{3, 2, 1}, 3.20}};
  const std::vector<double> grid = log_grid(0.1, 10.0, 200);
  std::vector<CurveMinimum> out;
  for (const auto& [q, reference] : curves) {
    CurveMinimum m;
    m.q = q;
    m.reference = reference;
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double v = printed_ratio(q, base, grid[k]);
      if (v < best_value) {
        best_value = v;
        best = k;
      }
    }
    m.at_boundary = best == 0 || best + 1 == grid.size();
    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[std::min(best + 1, grid.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = printed_ratio(q, base, c);
    double fd = printed_ratio(q, base, d);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * (std::abs(a) + std::abs(b)); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = printed_ratio(q, base, c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = printed_ratio(q, base, d);
      }
    }
    m.located = 0.5 * (a + b);
    m.ratio_at_minimum = printed_ratio(q, base, m.located);
    out.push_back(m);
  }
  return out;
}

std::vector<FTableRow> f_table_block(const PhaseSpaceParams& p) {
  std::vector<FTableRow> out;
  for (int n = 1; n <= 3; ++n) {
    for (int mu = 0; mu < n; ++mu) {
      FTableRow row;
      row.omega_c = p.omega_c;
      row.n_rho = n;
      row.mu = mu;
      row.f_paper = pt::f_coeff_int(n, mu);
      if (p.omega_c != 0.0) {
        const QuantumNumbers q{n, mu, 0};
        const int planar = q.planar_quanta();
        const BasisSpec basis{planar + 2, planar + 2, 2};
        const OracleCorrections o = first_order_oracle(q, p, basis);
        const double wt = p.omega_tilde();
        row.f_implied = (2.0 / p.omega_c) * (wt + 2.0 * o.h_theta / (p.mass * wt));
      }
      out.push_back(row);
    }
  }
  return out;
}

std::vector<QuantumNumbers> state_grid(int planar_max, int nz_max) {
  if (planar_max < 0 || nz_max < 0) throw std::invalid_argument("grid bounds must be non-negative");
  std::vector<QuantumNumbers> out;
  for (int n_rho = 0; 2 * n_rho <= planar_max; ++n_rho) {
    for (int mu = -(planar_max - 2 * n_rho); mu <= planar_max - 2 * n_rho; ++mu) {
      for (int nz = 0; nz <= nz_max; ++nz) out.push_back({n_rho, mu, nz});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<ReportRecord> records_for(const ReportConfig& cfg, double omega_c) {
  PhaseSpaceParams p = cfg.base;
  p.omega_c = omega_c;
  p.validate();
  const BasisSpec expect_basis = BasisSpec::uniform(cfg.basis_expect);
  const BasisSpec diag_basis = BasisSpec::uniform(cfg.basis_diag);
  const std::vector<SlopeResult> slopes = hf_slopes(cfg.grid, p, diag_basis, cfg.step);

  std::vector<ReportRecord> out;
  for (std::size_t j = 0; j < cfg.grid.size(); ++j) {
    const QuantumNumbers& q = cfg.grid[j];
    ReportRecord r;
    r.q = q;
    r.omega_c = omega_c;
    r.e0_paper = pt::e0(q, p);
    r.de_eta_paper = pt::de_eta(q, p);
    r.de_eta_paper_signed = pt::de_eta(q, p, pt::MuSign::signed_mu);
    r.de_theta_paper = pt::de_theta(q, p);

    const OracleCorrections o = first_order_oracle(q, p, expect_basis);
    r.e0_oracle = o.e0;
    r.h_eta = o.h_eta;
    r.h_theta = o.h_theta;
    r.de_eta_oracle = o.de_eta;
    r.de_theta_oracle = o.de_theta;
    r.p_perp_sq = o.p_perp_sq;
    r.p_rho_sq = o.p_rho_sq;

    const int margin = std::max(1, expect_basis.margin(q));
    const BasisSpec wider{expect_basis.n_max_x + margin, expect_basis.n_max_y + margin,
                          expect_basis.n_max_z + margin};
    const OracleCorrections w = first_order_oracle(q, p, wider);
    r.truncation_change = std::max({relative_difference(o.e0, w.e0), relative_difference(o.h_eta, w.h_eta),
                                    relative_difference(o.h_theta, w.h_theta)});
    r.vanishing_max_abs = vanishing_check(q, p, expect_basis);

    r.slope = slopes[j];
    r.slope.degenerate = r.slope.degenerate || o.degenerate;
    r.step = r.slope.step;
    r.slope_eta_fd = r.slope.d_eta;
    r.slope_theta_fd = r.slope.d_theta;
    r.hf_eta_rel = relative_difference(r.slope_eta_fd, o.h_eta, kSlopeFloor);
    r.hf_theta_rel = relative_difference(r.slope_theta_fd, o.h_theta, kSlopeFloor);
    r.hf_consistent = r.hf_eta_rel <= kHfTolerance && r.hf_theta_rel <= kHfTolerance;

    r.verdict_e0 = compare_values(r.e0_paper, r.e0_oracle);
    r.verdict_eta = compare_values(r.de_eta_paper, r.de_eta_oracle);
    r.verdict_theta = compare_values(r.de_theta_paper, r.de_theta_oracle);
    out.push_back(std::move(r));
  }
  return out;
}

void check_record(const ReportRecord& r, const PhaseSpaceParams& base, Report& report) {
  const std::string tag = r.q.to_string() + " omega_c=" + format_double(r.omega_c);
  if (!r.slope.usable() || !r.slope.richardson_ok) ++report.flagged;
  if (r.slope.usable() && r.slope.richardson_ok && !r.hf_consistent) {
    report.failures.push_back(tag + ": finite-difference slopes disagree with expectation values (" +
                              format_double(r.hf_eta_rel) + ", " + format_double(r.hf_theta_rel) + ")");
  }
  if (r.vanishing_max_abs > kVanishingTolerance) {
    report.failures.push_back(tag + ": vanishing element " + format_double(r.vanishing_max_abs));
  }
  if (r.truncation_change > kTruncationTolerance) {
    report.failures.push_back(tag + ": truncation change " + format_double(r.truncation_change));
  }
  PhaseSpaceParams p = base;
  p.omega_c = r.omega_c;
  const double wt = p.omega_tilde();
  const int planar1 = r.q.planar_quanta() + 1;
  const double eta_expected = -r.q.mu / (2.0 * p.mass) + p.omega_c / (4.0 * p.mass * wt) * planar1;
  const double theta_expected = p.omega_c / 4.0 * p.mass * wt * planar1 - 0.5 * p.mass * wt * wt * r.q.mu;
  const double e0_expected = physical_level(r.q.planar_quanta(), r.q.mu, r.q.n_z, p);
  if (relative_difference(r.h_eta, eta_expected, kSlopeFloor) > kDecompositionTolerance ||
      relative_difference(r.h_theta, theta_expected, kSlopeFloor) > kDecompositionTolerance ||
      relative_difference(r.e0_oracle, e0_expected) > kDecompositionTolerance) {
    report.failures.push_back(tag + ": oracle decomposition check failed");
  }
}

}  // namespace

Report build_report(const ReportConfig& config) {
  config.base.validate();
  if (config.omega_cs.empty()) throw std::invalid_argument("report needs at least one omega_c");
  if (config.grid.empty()) throw std::invalid_argument("report needs at least one state");
  const BasisSpec expect_basis = BasisSpec::uniform(config.basis_expect);
  const BasisSpec diag_basis = BasisSpec::uniform(config.basis_diag);
  expect_basis.validate();
  diag_basis.validate();
  for (const auto& q : config.grid) {
    q.validate();
    if (!expect_basis.represents(q) || !diag_basis.represents(q)) {
      throw std::out_of_range("quantum numbers " + q.to_string() + " are not representable in the basis");
    }
  }

  Report report;
  report.config = config;
  std::sort(report.config.omega_cs.begin(), report.config.omega_cs.end());
  report.config.omega_cs.erase(std::unique(report.config.omega_cs.begin(), report.config.omega_cs.end()),
                               report.config.omega_cs.end());
  std::sort(report.config.grid.begin(), report.config.grid.end());
  report.config.grid.erase(std::unique(report.config.grid.begin(), report.config.grid.end()),
                           report.config.grid.end());
  const ReportConfig& cfg = report.config;

  if (!cfg.claims_path.empty()) report.claims = compare_claims_file(cfg.claims_path);

  nc_hamiltonian_buckets(Space::space);
  engine_claims();
  std::vector<std::future<std::vector<ReportRecord>>> jobs;
  for (double wc : cfg.omega_cs) {
    jobs.push_back(std::async(std::launch::async, [&cfg, wc] { return records_for(cfg, wc); }));
  }
  std::vector<std::vector<ReportRecord>> per_omega;
  for (auto& job : jobs) per_omega.push_back(job.get());
  for (std::size_t j = 0; j < cfg.grid.size(); ++j) {
    for (const auto& block : per_omega) report.records.push_back(block[j]);
  }
  for (const auto& r : report.records) check_record(r, cfg.base, report);

  for (double wc : cfg.omega_cs) {
    PhaseSpaceParams p = cfg.base;
    p.omega_c = wc;
    auto rows = f_table_block(p);
    report.f_rows.insert(report.f_rows.end(), rows.begin(), rows.end());
  }
  report.minima = locate_printed_minima(cfg.base);
  return report;
}

// --- writers -------------------------------------------------------------------

namespace {

std::string fd(double v) { return format_double(v); }

void field_line(std::ostream& os, std::string_view name, double claimed, double oracle) {
  os << "    " << name << ": printed " << fd(claimed) << "  oracle " << fd(oracle) << "  abs " << fd(claimed - oracle)
     << "  rel " << fd(relative_difference(claimed, oracle)) << "  " << verdict_name(compare_values(claimed, oracle))
     << '\n';
}

}  // namespace

void write_report_text(std::ostream& os, const Report& r) {
  const ReportConfig& c = r.config;
  os << "ncosc verification report\n\n";
  os << "parameters: hbar=" << fd(c.base.hbar) << " m=" << fd(c.base.mass) << " omega=" << fd(c.base.omega)
     << " alpha=" << fd(c.base.alpha) << " theta=" << fd(c.base.theta) << " eta=" << fd(c.base.eta) << '\n';
  os << "omega_c:";
  for (double wc : c.omega_cs) os << ' ' << fd(wc);
  os << '\n';
  os << "states: " << c.grid.size() << "  expectation basis " << c.basis_expect << "  diagonalization basis "
     << c.basis_diag << "  step " << fd(c.step) << '\n';
  os << "verdict tolerance 1e-8 relative; slope tolerance " << fd(kHfTolerance) << " relative\n\n";

  os << "== symbolic claims ==\n";
  if (r.claims.empty()) os << "  (no claims file)\n";
  for (const auto& cl : r.claims) {
    os << "  " << cl.key << ": " << verdict_name(cl.verdict) << '\n';
    os << "    claim:  " << cl.claim_text << '\n';
    if (!cl.engine_text.empty()) os << "    engine: " << cl.engine_text << '\n';
    if (!cl.note.empty()) os << "    note:   " << cl.note << '\n';
  }

  os << "\n== tensor contractions (space) ==\n";
  const AntisymTensor t = AntisymTensor::space();
  for (int i = 1; i <= 3; ++i) {
    os << "  i=" << i << "  sum lambda_{i mu} lambda_{j mu}:";
    for (int j = 1; j <= 3; ++j) os << ' ' << lambda_contract(t, i, j, Contraction::first_first);
    os << "   sum lambda_{i mu} lambda_{mu j}:";
    for (int j = 1; j <= 3; ++j) os << ' ' << lambda_contract(t, i, j, Contraction::first_second);
    os << '\n';
  }

  os << "\n== energies and first-order corrections ==\n";
  for (const auto& rec : r.records) {
    os << "  " << rec.q.to_string() << " omega_c=" << fd(rec.omega_c) << "  guard " << rec.gap_guard_status()
       << "  gap " << fd(rec.slope.gap) << '\n';
    field_line(os, "e0", rec.e0_paper, rec.e0_oracle);
    field_line(os, "de_eta", rec.de_eta_paper, rec.de_eta_oracle);
    field_line(os, "de_eta(signed mu)", rec.de_eta_paper_signed, rec.de_eta_oracle);
    field_line(os, "de_theta", rec.de_theta_paper, rec.de_theta_oracle);
    os << "    slopes: d/deta oracle " << fd(rec.h_eta) << " fd " << fd(rec.slope_eta_fd) << " (half step "
       << fd(rec.slope.d_eta_half) << ") rel " << fd(rec.hf_eta_rel) << '\n';
    os << "            d/dtheta oracle " << fd(rec.h_theta) << " fd " << fd(rec.slope_theta_fd) << " (half step "
       << fd(rec.slope.d_theta_half) << ") rel " << fd(rec.hf_theta_rel) << "  step " << fd(rec.step) << '\n';
    os << "    <px^2+py^2> " << fd(rec.p_perp_sq) << "  <p_rho^2> radial " << fd(rec.p_rho_sq) << '\n';
    os << "    vanishing max " << fd(rec.vanishing_max_abs) << "  truncation change " << fd(rec.truncation_change)
       << '\n';
  }

  os << "\n== f(n_rho,|mu|) ==\n";
  for (const auto& row : r.f_rows) {
    os << "  omega_c=" << fd(row.omega_c) << " (" << row.n_rho << ',' << row.mu << ")  printed " << row.f_paper
       << "  implied " << (row.f_implied ? fd(*row.f_implied) : std::string("n/a")) << '\n';
  }

  os << "\n== minima of |dE1/E0| on the printed curves ==\n";
  for (const auto& m : r.minima) {
    os << "  " << m.q.to_string() << "  located " << fd(m.located) << "  reference " << fd(m.reference)
       << "  delta " << fd(m.delta()) << "  ratio " << fd(m.ratio_at_minimum) << (m.at_boundary ? "  (grid edge)" : "")
       << '\n';
  }

  os << "\n== summary ==\n";
  int counts[3][3] = {};
  for (const auto& rec : r.records) {
    ++counts[0][static_cast<int>(rec.verdict_e0)];
    ++counts[1][static_cast<int>(rec.verdict_eta)];
    ++counts[2][static_cast<int>(rec.verdict_theta)];
  }
  const char* names[3] = {"e0", "de_eta", "de_theta"};
  for (int k = 0; k < 3; ++k) {
    os << "  " << names[k] << ": MATCH " << counts[k][0] << "  SIGN-FLIP " << counts[k][1] << "  MISMATCH "
       << counts[k][2] << '\n';
  }
  int claim_counts[3] = {};
  for (const auto& cl : r.claims) ++claim_counts[static_cast<int>(cl.verdict)];
  os << "  claims: MATCH " << claim_counts[0] << "  SIGN-FLIP " << claim_counts[1] << "  MISMATCH " << claim_counts[2]
     << '\n';
  os << "  flagged records: " << r.flagged << '\n';
  os << "  internal consistency: " << (r.internally_consistent() ? "PASS" : "FAIL") << '\n';
  for (const auto& f : r.failures) os << "    " << f << '\n';
}

void write_report_csv(std::ostream& os, const Report& r) {
  os << kReportCsvHeader << '\n';
  for (const auto& rec : r.records) {
    os << rec.q.n_rho << ',' << rec.q.mu << ',' << rec.q.n_z << ',' << fd(rec.omega_c) << ',' << fd(rec.e0_paper)
       << ',' << fd(rec.e0_oracle) << ',' << fd(rec.de_eta_paper) << ',' << fd(rec.de_eta_oracle) << ','
       << fd(rec.de_theta_paper) << ',' << fd(rec.de_theta_oracle) << ',' << fd(rec.slope_eta_fd) << ','
       << fd(rec.slope_theta_fd) << ',' << verdict_name(rec.verdict_eta) << ',' << verdict_name(rec.verdict_theta)
       << '\n';
  }
}

void write_minima_csv(std::ostream& os, const Report& r) {
  os << "n_rho,mu,n_z,reference,located,delta,ratio\n";
  for (const auto& m : r.minima) {
    os << m.q.n_rho << ',' << m.q.mu << ',' << m.q.n_z << ',' << fd(m.reference) << ',' << fd(m.located) << ','
       << fd(m.delta()) << ',' << fd(m.ratio_at_minimum) << '\n';
  }
}

}  // namespace ncosc::adjudicate
