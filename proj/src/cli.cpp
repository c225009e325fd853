#include "ncosc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "ncosc/adjudicate.hpp"
#include "ncosc/format.hpp"
#include "ncosc/pt.hpp"
#include "ncosc/spectra.hpp"

#ifndef NCOSC_DEFAULT_CLAIMS
#define NCOSC_DEFAULT_CLAIMS ""
#endif

namespace ncosc::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return v;
}

int parse_int(std::string_view text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return v;
}

std::pair<int, int> parse_grid(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("grid must be NMAX:NZMAX");
  const int a = parse_int(text.substr(0, colon));
  const int b = parse_int(text.substr(colon + 1));
  if (a < 0 || b < 0) throw std::invalid_argument("grid bounds must be non-negative");
  return {a, b};
}

std::string fd(double v) { return format_double(v); }

/// Writes to cfg.out when set, otherwise to the given stream.
template <typename F>
int with_output(const RunConfig& cfg, std::ostream& fallback, F&& body) {
  if (cfg.out.empty()) return body(fallback);
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + cfg.out + "'");
  const int rc = body(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + cfg.out + "'");
  return rc;
}

std::vector<QuantumNumbers> selected_states(const RunConfig& cfg) {
  if (cfg.state) return {*cfg.state};
  return adjudicate::state_grid(cfg.grid_planar, cfg.grid_nz);
}

std::vector<double> selected_omegas(const RunConfig& cfg) {
  if (cfg.sweep) return cfg.sweep->points();
  return {cfg.params.omega_c};
}

void require_representable(const std::vector<QuantumNumbers>& states, const BasisSpec& basis) {
  for (const auto& q : states) {
    q.validate();
    if (!basis.represents(q)) {
      throw UsageError("quantum numbers " + q.to_string() + " need a larger basis than --basis " +
                       std::to_string(basis.n_max_x));
    }
  }
}

}  // namespace

PhaseSpaceParams RunConfig::default_params() {
  PhaseSpaceParams p;
  p.omega_c = 1.0;
  p.eta = 0.01;
  p.theta = 0.01;
  return p;
}

std::vector<double> SweepSpec::points() const {
  validate();
  if (log) return adjudicate::log_grid(start, end, steps);
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) out[k] = start + (end - start) * k / (steps - 1);
  out.back() = end;
  return out;
}

void SweepSpec::validate() const {
  if (!(start < end)) throw std::invalid_argument("sweep needs start < end");
  if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
  if (log && !(start > 0.0)) throw std::invalid_argument("log sweep needs a positive start");
}

SweepSpec parse_sweep(std::string_view text, bool log) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw std::invalid_argument("sweep must be A:B:N");
  SweepSpec s;
  s.start = parse_number(text.substr(0, c1));
  s.end = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
  s.steps = parse_int(text.substr(c2 + 1));
  s.log = log;
  s.validate();
  return s;
}

int cmd_energies(const RunConfig& cfg, std::ostream& out) {
  const auto states = selected_states(cfg);
  require_representable(states, BasisSpec::uniform(cfg.basis));
  const auto omegas = selected_omegas(cfg);
  const Format format = cfg.format.value_or(Format::csv);
  return with_output(cfg, out, [&](std::ostream& os) {
    if (format == Format::csv) {
      os << kEnergiesCsvHeader << '\n';
    } else {
      os << std::left << std::setw(12) << "state" << std::setw(12) << "omega_c" << std::setw(26) << "E0"
         << std::setw(26) << "dE_eta" << std::setw(26) << "dE_theta" << std::setw(26) << "dE_total"
         << "validity\n";
    }
    for (const auto& q : states) {
      for (double wc : omegas) {
        PhaseSpaceParams p = cfg.params;
        p.omega_c = wc;
        p.validate();
        const auto b = pt::breakdown(q, p);
        const char* valid = b.validity.pass ? "pass" : "fail";
        if (format == Format::csv) {
          os << q.n_rho << ',' << q.mu << ',' << q.n_z << ',' << fd(wc) << ',' << fd(b.e0) << ',' << fd(b.de_eta)
             << ',' << fd(b.de_theta) << ',' << fd(b.de_total) << ',' << valid << '\n';
        } else {
          os << std::left << std::setw(12) << q.to_string() << std::setw(12) << fd(wc) << std::setw(26) << fd(b.e0)
             << std::setw(26) << fd(b.de_eta) << std::setw(26) << fd(b.de_theta) << std::setw(26)
             << fd(b.de_total) << valid << '\n';
        }
      }
    }
    return kOk;
  });
}

int cmd_ftable(const RunConfig& cfg, std::ostream& out) {
  if (cfg.nrho_max < 1) throw UsageError("--nrho-max must be at least 1");
  const Format format = cfg.format.value_or(Format::text);
  return with_output(cfg, out, [&](std::ostream& os) {
    if (format == Format::text) {
      pt::write_f_table(os, cfg.nrho_max);
    } else {
      os << "n_rho,mu,f\n";
      for (int n = 1; n <= cfg.nrho_max; ++n) {
        for (int mu = 0; mu < n; ++mu) os << n << ',' << mu << ',' << pt::f_coeff(n, mu).str() << '\n';
      }
    }
    return kOk;
  });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const QuantumNumbers q = cfg.state.value_or(QuantumNumbers{1, 0, 1});
  const BasisSpec basis = BasisSpec::uniform(cfg.basis);
  require_representable({q}, basis);
  const std::vector<double> omegas = cfg.sweep ? cfg.sweep->points() : SweepSpec{}.points();

  struct Row {
    double e0 = 0.0, d_paper = 0.0, r_paper = 0.0, d_oracle = 0.0, r_oracle = 0.0;
  };
  std::vector<Row> rows(omegas.size());
  std::vector<std::exception_ptr> errors(omegas.size());
  auto work = [&](std::size_t k) {
    try {
      PhaseSpaceParams p = cfg.params;
      p.omega_c = omegas[k];
      p.validate();
      Row& r = rows[k];
      r.e0 = pt::e0(q, p);
      r.d_paper = pt::de_eta(q, p) + pt::de_theta(q, p);
      r.r_paper = std::abs(r.d_paper / r.e0);
      const auto o = adjudicate::first_order_oracle(q, p, basis);
      r.d_oracle = o.de_eta + o.de_theta;
      r.r_oracle = std::abs(r.d_oracle / o.e0);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, omegas.size()));
  nc_hamiltonian_buckets(Space::space);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t k = t; k < omegas.size(); k += threads) work(k);
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const Format format = cfg.format.value_or(Format::csv);
  return with_output(cfg, out, [&](std::ostream& os) {
    const char sep = format == Format::csv ? ',' : ' ';
    if (format == Format::csv) {
      os << kSweepCsvHeader << '\n';
    } else {
      os << "# " << q.to_string() << ' ';
      for (char c : kSweepCsvHeader) os << (c == ',' ? ' ' : c);
      os << '\n';
    }
    for (std::size_t k = 0; k < omegas.size(); ++k) {
      const Row& r = rows[k];
      os << fd(omegas[k]) << sep << fd(r.e0) << sep << fd(r.d_paper) << sep << fd(r.r_paper) << sep
         << fd(r.d_oracle) << sep << fd(r.r_oracle) << '\n';
    }
    return kOk;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  adjudicate::ReportConfig rc;
  rc.base = cfg.params;
  if (cfg.sweep) {
    rc.omega_cs = cfg.sweep->points();
  } else if (cfg.omega_c_given) {
    rc.omega_cs = {cfg.params.omega_c};
  } else {
    rc.omega_cs = {0.7, 1.0};
  }
  rc.grid = selected_states(cfg);
  rc.basis_expect = cfg.basis;
  rc.basis_diag = cfg.diag_basis;
  rc.step = cfg.step;
  rc.claims_path = cfg.claims.empty() ? std::string(NCOSC_DEFAULT_CLAIMS) : cfg.claims;
  require_representable(rc.grid, BasisSpec::uniform(std::min(cfg.basis, cfg.diag_basis)));

  const adjudicate::Report report = adjudicate::build_report(rc);
  const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.out);
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, auto&& writer) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + (dir / name).string() + "'");
    writer(f, report);
  };
  write("report.txt", adjudicate::write_report_text);
  write("report.csv", adjudicate::write_report_csv);
  write("minima.csv", adjudicate::write_minima_csv);

  out << "records " << report.records.size() << ", flagged " << report.flagged << ", internal consistency "
      << (report.internally_consistent() ? "PASS" : "FAIL") << '\n';
  for (const auto& f : report.failures) out << "  " << f << '\n';
  out << "report written to " << (dir / "report.txt").string() << '\n';
  return report.internally_consistent() ? kOk : kNumerical;
}

int cmd_expand(const RunConfig& cfg, std::ostream& out) {
  return with_output(cfg, out, [&](std::ostream& os) {
    const auto& buckets = nc_hamiltonian_buckets(cfg.space);
    for (BucketKey key : kBucketKeys) os << bucket_label(key) << " = " << to_text(buckets.at(key)) << '\n';
    return kOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noncommutative charged oscillator: energies, sweeps and verification", "ncosc"};
  app.set_config("--config", "", "Flat key=value configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::optional<int> nrho, mu, nz;
  std::string range, grid, format, space = "3d";
  bool log_range = false;

  app.add_option("--hbar", cfg.params.hbar, "Reduced Planck constant");
  app.add_option("--mass", cfg.params.mass, "Particle mass");
  app.add_option("--omega", cfg.params.omega, "Oscillator frequency");
  auto* omega_c = app.add_option("--omega-c,--omega_c", cfg.params.omega_c, "Cyclotron frequency");
  app.add_option("--omega-c-range,--omega_c_range", range, "Sweep A:B:N over omega_c");
  app.add_flag("--log", log_range, "Log-spaced --omega-c-range");
  app.add_option("--alpha", cfg.params.alpha, "Scaling constant");
  app.add_option("--theta", cfg.params.theta, "Position noncommutativity");
  app.add_option("--eta", cfg.params.eta, "Momentum noncommutativity");
  app.add_option("--nrho", nrho, "Radial quantum number");
  app.add_option("--mu", mu, "Magnetic quantum number");
  app.add_option("--nz", nz, "Axial quantum number");
  app.add_option("--grid", grid, "State grid NMAX:NZMAX with 2 n_rho + |mu| <= NMAX");
  app.add_option("--basis", cfg.basis, "Per-axis number-basis cutoff");
  app.add_option("--diag-basis,--diag_basis", cfg.diag_basis, "Cutoff for the diagonalizations in verify");
  app.add_option("--step", cfg.step, "Finite-difference step");
  app.add_option("--out", cfg.out, "Output file (directory for verify)");
  app.add_option("--format", format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
  app.add_option("--claims", cfg.claims, "Claims file for verify");
  app.add_option("--space", space, "2d or 3d tensor for expand")->check(CLI::IsMember({"2d", "3d"}));
  app.add_option("--nrho-max,--nrho_max", cfg.nrho_max, "Largest n_rho in the f table");

  auto* energies = app.add_subcommand("energies", "Unperturbed energies and first-order corrections");
  auto* ftable = app.add_subcommand("ftable", "Table of f(n_rho,|mu|)");
  auto* sweep = app.add_subcommand("sweep", "Sweep omega_c and emit CSV");
  auto* verify = app.add_subcommand("verify", "Cross-check the closed forms and write a report");
  auto* expand = app.add_subcommand("expand", "Dump the expanded Hamiltonian pieces");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (energies->parsed()) cfg.command = Command::energies;
    if (ftable->parsed()) cfg.command = Command::ftable;
    if (sweep->parsed()) cfg.command = Command::sweep;
    if (verify->parsed()) cfg.command = Command::verify;
    if (expand->parsed()) cfg.command = Command::expand;

    cfg.omega_c_given = omega_c->count() > 0;
    if (!range.empty()) cfg.sweep = parse_sweep(range, log_range);
    if (nrho || mu || nz) cfg.state = QuantumNumbers{nrho.value_or(0), mu.value_or(0), nz.value_or(0)};
    if (!grid.empty()) std::tie(cfg.grid_planar, cfg.grid_nz) = parse_grid(grid);
    if (!format.empty()) cfg.format = format == "csv" ? Format::csv : Format::text;
    cfg.space = space == "2d" ? Space::plane : Space::space;
    if (cfg.basis < 0 || cfg.diag_basis < 0) throw std::invalid_argument("basis cutoffs must be non-negative");
    PhaseSpaceParams check = cfg.params;
    check.validate();
    if (cfg.state) cfg.state->validate();

    switch (cfg.command) {
      case Command::energies: return cmd_energies(cfg, out);
      case Command::ftable: return cmd_ftable(cfg, out);
      case Command::sweep: return cmd_sweep(cfg, out);
      case Command::verify: return cmd_verify(cfg, out);
      case Command::expand: return cmd_expand(cfg, out);
    }
  } catch (const EigenSolverError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace ncosc::cli
