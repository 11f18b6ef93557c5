#include "tfconc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tfconc/bounds.hpp"
#include "tfconc/gabor.hpp"
#include "tfconc/hermite_fock.hpp"
#include "tfconc/localization.hpp"
#include "tfconc/metaplectic.hpp"
#include "tfconc/rearrange.hpp"
#include "tfconc/regions.hpp"

namespace tfconc::cli {

namespace {

constexpr double kDefaultTolerance = 1e-8;

// Raised when a computed self-check misses the tolerance; maps to exit 3.
struct ToleranceFailure {
  std::string message;
};

std::string format(double v) {
  std::ostringstream s;
  s.precision(9);
  s << v;
  return s.str();
}

class Csv {
 public:
  Csv(std::ostream& out, const std::string& flags) : out_(out) { out_ << "# tfconc v1\n# flags: " << flags << '\n'; }

  void header(const std::vector<std::string>& names) { line(names); }
  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    for (double v : values) cells.push_back(format(v));
    line(cells);
  }
  void comment(const std::string& text) { out_ << "# " << text << '\n'; }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::ostream& out_;
};

double tolerance_from_env() {
  const char* text = std::getenv("TFCONC_TOL");
  if (!text) return kDefaultTolerance;
  try {
    std::size_t used = 0;
    const double tol = std::stod(text, &used);
    if (used == std::string(text).size() && std::isfinite(tol) && tol > 0.0) return tol;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::InvalidInput, std::string("TFCONC_TOL must be a positive number, got '") + text + "'");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  return in;
}

Region load_region(const std::string& path) {
  auto in = open_input(path);
  return read_region(in);
}

SampledSignal load_signal(const std::string& path) {
  auto in = open_input(path);
  return read_signal(in);
}

FockCoefficients load_coeffs(const std::string& path) {
  auto in = open_input(path);
  return read_fock_coefficients(in);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw Error(ErrorKind::InvalidInput, "cannot write '" + path.string() + "'");
}

// Figure grids: 199 points on [0.01, 0.99] and c in [0, 8] with step 0.05.
std::vector<double> eps_grid() {
  std::vector<double> eps;
  for (int k = 0; k < 199; ++k) eps.push_back(0.01 + 0.98 * k / 198.0);
  return eps;
}

std::vector<double> capacity_grid() {
  std::vector<double> c;
  for (int k = 0; k <= 160; ++k) c.push_back(0.05 * k);
  return c;
}

struct Options {
  int d = 1;
  std::optional<double> measure;
  std::optional<double> eps;
  std::optional<double> p;
  std::string region;
  std::string signal;
  std::string coeffs;
  int basis_size = -1;
  int order = kDefaultOrder;
  double s_max = 8.0;
  int nodes = 64;
  std::string out;
  std::string sl2;
};

void cmd_bound(const Options& o, Csv& csv) {
  if (o.measure) {
    std::vector<std::string> names{"d", "measure", "faber_krahn"};
    std::vector<double> row{static_cast<double>(o.d), *o.measure, faber_krahn_bound(o.d, *o.measure)};
    if (o.p) {
      names.push_back("lp_bound");
      row.push_back(lp_bound(*o.p, *o.measure));
      if (*o.p >= 2.0) {
        names.push_back("lieb_local");
        row.push_back(lieb_local_bound(*o.p, *o.measure));
      }
    }
    csv.header(names);
    csv.row(row);
    return;
  }
  if (!o.eps) throw Error(ErrorKind::InvalidInput, "bound needs --measure or --eps");
  std::vector<std::string> names{"d", "eps", "psi", "min_volume"};
  std::vector<double> row{static_cast<double>(o.d), *o.eps, psi(o.d, *o.eps), min_volume(o.d, *o.eps)};
  if (o.p) {
    names.push_back("lp_min_volume");
    row.push_back(lp_min_volume(*o.p, *o.eps));
  }
  csv.header(names);
  csv.row(row);
}

void cmd_psi(const Options& o, Csv& csv) {
  csv.header({"d", "eps", "psi"});
  csv.row({static_cast<double>(o.d), *o.eps, psi(o.d, *o.eps)});
}

void cmd_phi(const Options& o, Csv& csv, double tol) {
  const auto report = phi_max(load_region(o.region), std::max(o.basis_size, 0), o.order);
  csv.header({"measure", "phi", "sharp_bound", "gap", "basis_size", "truncation_estimate"});
  csv.row({report.measure, report.phi, report.sharp_bound, report.gap, static_cast<double>(report.basis_size),
           report.truncation_estimate});
  if (report.truncation_estimate > tol) {
    throw ToleranceFailure{"truncation estimate " + format(report.truncation_estimate) + " exceeds tolerance " +
                           format(tol) + "; raise --basis-size"};
  }
}

void cmd_concentration(const Options& o, Csv& csv) {
  const Region region = load_region(o.region);
  const FockCoefficients f = o.coeffs.empty()
                                 ? signal_to_fock(load_signal(o.signal), o.basis_size < 0 ? 64 : o.basis_size)
                                 : load_coeffs(o.coeffs);
  const double p = o.p.value_or(2.0);
  const double m = measure(region);
  csv.header({"p", "measure", "concentration", "bound"});
  csv.row({p, m, lp_concentration(f, region, p, o.order), lp_bound(p, m)});
}

void cmd_rearrange(const Options& o, Csv& csv, double tol) {
  const DensityField u(load_coeffs(o.coeffs));
  const auto profile = rearrangement_profile(u, o.s_max, o.nodes);
  csv.header({"s", "u_star", "I", "one_minus_exp_minus_s"});
  for (std::size_t i = 0; i < profile.s_grid.size(); ++i) {
    const double s = profile.s_grid[i];
    csv.row({s, profile.u_star[i], profile.I_vals[i], -std::expm1(-s)});
  }
  csv.comment("distribution function");
  csv.header({"t", "mu"});
  for (std::size_t i = 0; i < profile.t_grid.size(); ++i) csv.row({profile.t_grid[i], profile.mu_vals[i]});
  const auto report = verify_differential_structure(profile);
  if (report.max_I_bound_violation > tol) {
    throw ToleranceFailure{"I(s) exceeds 1 - e^{-s} by " + format(report.max_I_bound_violation)};
  }
}

void cmd_figures(const Options& o, const std::string& flags) {
  const std::filesystem::path dir(o.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::InvalidInput, "cannot create '" + o.out + "': " + ec.message());

  for (int d : {1, 2}) {
    std::ostringstream text;
    Csv csv(text, flags);
    csv.header({"eps", "sharp", "prior_art", "weak"});
    for (double eps : eps_grid()) csv.row({eps, min_volume(d, eps), prior_art_bound(d, eps), weak_bound(eps)});
    write_file(dir / ("fig1_d" + std::to_string(d) + ".csv"), text.str());
  }
  {
    std::ostringstream text;
    Csv csv(text, flags);
    csv.header({"c", "bound_d1", "bound_d2", "bound_d3"});
    for (double c : capacity_grid()) csv.row({c, gamma_ratio(1, c), gamma_ratio(2, c), gamma_ratio(3, c)});
    write_file(dir / "fig2_left.csv", text.str());
  }
  {
    std::ostringstream text;
    Csv csv(text, flags);
    csv.header({"eps", "psi1", "psi2", "psi3"});
    for (double eps : eps_grid()) csv.row({eps, psi(1, eps), psi(2, eps), psi(3, eps)});
    write_file(dir / "fig2_right.csv", text.str());
  }
}

void cmd_covariance(const Options& o, Csv& csv) {
  const auto report = covariance_check(load_signal(o.signal), parse_sl2(o.sl2), load_region(o.region));
  csv.header({"lhs", "rhs", "rel_err"});
  csv.row({report.lhs, report.rhs, report.rel_err});
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::BadExponent:
    case ErrorKind::ZeroFunction:
    case ErrorKind::GridTooNarrow:
      return kExitInput;
    default:
      return kExitNumerical;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-frequency concentration toolkit", "tfconc"};
  app.require_subcommand(1);
  Options o;

  auto* bound = app.add_subcommand("bound", "volume and concentration bounds");
  bound->add_option("--d", o.d, "dimension")->check(CLI::Range(1, 64));
  auto* bm = bound->add_option("--measure", o.measure, "measure of the set")->check(CLI::NonNegativeNumber);
  auto* be = bound->add_option("--eps", o.eps, "energy fraction left outside")->check(CLI::Range(0.0, 1.0));
  bm->excludes(be);
  bound->add_option("--p", o.p, "Lebesgue exponent");

  auto* psi_cmd = app.add_subcommand("psi", "inverse of the Poisson tail");
  psi_cmd->add_option("--d", o.d, "dimension")->check(CLI::Range(1, 64));
  psi_cmd->add_option("--eps", o.eps, "energy fraction left outside")->required()->check(CLI::Range(0.0, 1.0));

  auto* phi = app.add_subcommand("phi", "largest concentration on a region");
  phi->add_option("--region", o.region, "region file")->required();
  phi->add_option("--basis-size", o.basis_size, "Fock truncation (0 picks one from the region)")
      ->check(CLI::Range(0, 4096));
  phi->add_option("--order", o.order, "quadrature order")->check(CLI::Range(4, 1024));

  auto* conc = app.add_subcommand("concentration", "concentration of one function on a region");
  conc->add_option("--region", o.region, "region file")->required();
  auto* cs = conc->add_option("--signal", o.signal, "signal file");
  auto* cc = conc->add_option("--coeffs", o.coeffs, "Fock coefficient file");
  cs->excludes(cc);
  conc->add_option("--p", o.p, "Lebesgue exponent")->check(CLI::Range(1.0, 64.0));
  conc->add_option("--basis-size", o.basis_size, "Hermite coefficients taken from a signal")
      ->check(CLI::Range(1, 256));
  conc->add_option("--order", o.order, "quadrature order")->check(CLI::Range(4, 1024));

  auto* rear = app.add_subcommand("rearrange", "decreasing rearrangement of |F|^2 e^{-pi|z|^2}");
  rear->add_option("--coeffs", o.coeffs, "Fock coefficient file")->required();
  rear->add_option("--s-max", o.s_max, "largest measure")->check(CLI::Range(0.0, 20.0));
  rear->add_option("--nodes", o.nodes, "number of s nodes")->check(CLI::Range(64, 100000));

  auto* fig = app.add_subcommand("figures", "CSV tables for the bound comparison figures");

  auto* cov = app.add_subcommand("covariance", "symplectic covariance check");
  cov->add_option("--sl2", o.sl2, "matrix entries a,b,c,d")->required();
  cov->add_option("--region", o.region, "region file")->required();
  cov->add_option("--signal", o.signal, "signal file")->required();

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--out", o.out, sub == fig ? "output directory" : "output file");
  }
  fig->get_option("--out")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  std::string flags;
  for (int i = 1; i < argc; ++i) flags += (i > 1 ? " " : "") + std::string(argv[i]);

  try {
    const double tol = tolerance_from_env();
    if (fig->parsed()) {
      cmd_figures(o, flags);
      return kExitOk;
    }
    if (conc->parsed() && o.signal.empty() == o.coeffs.empty()) {
      throw Error(ErrorKind::InvalidInput, "concentration needs exactly one of --signal and --coeffs");
    }
    std::ostringstream text;
    Csv csv(text, flags);
    int code = kExitOk;
    try {
      if (bound->parsed()) cmd_bound(o, csv);
      if (psi_cmd->parsed()) cmd_psi(o, csv);
      if (phi->parsed()) cmd_phi(o, csv, tol);
      if (conc->parsed()) cmd_concentration(o, csv);
      if (rear->parsed()) cmd_rearrange(o, csv, tol);
      if (cov->parsed()) cmd_covariance(o, csv);
    } catch (const ToleranceFailure& failure) {
      err << "tfconc: " << failure.message << '\n';
      code = kExitNumerical;
    }
    if (o.out.empty()) {
      out << text.str();
    } else {
      write_file(o.out, text.str());
    }
    return code;
  } catch (const Error& e) {
    err << "tfconc: " << e.what() << '\n';
    return exit_code(e.kind());
  }
}

}  // namespace tfconc::cli
