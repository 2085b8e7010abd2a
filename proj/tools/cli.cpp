#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "plot.hpp"
#include "toral/automorphism.hpp"
#include "toral/bounds.hpp"
#include "toral/cohomology.hpp"
#include "toral/correlation.hpp"
#include "toral/error.hpp"
#include "toral/io.hpp"
#include "toral/transfer.hpp"
#include "toral/ulam.hpp"

namespace toral::cli {

namespace {

namespace fs = std::filesystem;

const char* command_name(Command c) {
  switch (c) {
    case Command::Analyze: return "analyze";
    case Command::Cohomology: return "cohomology";
    case Command::Resonances: return "resonances";
    case Command::Spectrum: return "spectrum";
    case Command::Correlate: return "correlate";
    case Command::Ulam: return "ulam";
  }
  return "?";
}

const char* format_name(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Both: return "both";
  }
  return "?";
}

bool wants_json(Format f) { return f != Format::Csv; }
bool wants_csv(Format f) { return f != Format::Json; }

// Config echo for provenance; output_dir is deliberately absent so the same
// analysis written to two places is byte-identical.
json config_echo(const RunConfig& c) {
  json j{{"command", command_name(c.command)},
         {"square", c.square},
         {"format", format_name(c.format)},
         {"unit_tol", c.unit_tol},
         {"rank_tol", c.rank_tol},
         {"match_tol", c.match_tol}};
  switch (c.command) {
    case Command::Cohomology:
      j["degree"] = c.degree ? json(*c.degree) : json("all");
      break;
    case Command::Spectrum:
      j["cutoff"] = c.cutoff;
      j["cap"] = c.cap;
      j["floor"] = c.floor;
      break;
    case Command::Correlate:
      j["nmax"] = c.n_max;
      j["samples"] = c.samples;
      j["seed"] = c.seed;
      j["phi"] = c.phi;
      j["psi"] = c.psi;
      j["method"] = c.mode == CorrelationMode::Exact ? "exact" : "mc";
      if (c.fit_floor) j["fit_floor"] = *c.fit_floor;
      break;
    case Command::Ulam:
      j["cells"] = c.cells;
      j["samples_per_cell"] = c.samples_per_cell;
      j["seed"] = c.seed;
      j["eps"] = c.eps;
      j["nev"] = c.nev;
      break;
    default:
      break;
  }
  return j;
}

json provenance(const RunConfig& c, const IntMatrix& m) {
  return json{{"tool", "toral"}, {"version", TORAL_VERSION}, {"config", config_echo(c)},
              {"matrix_hash", matrix_hash(m)}};
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

IntMatrix load_matrix(const RunConfig& c) {
  if (!c.inline_matrix.empty()) return parse_matrix(c.inline_matrix);
  if (c.matrix_path.empty()) throw Error(ErrorKind::IoError, "no matrix given (use --matrix or --inline)");
  return read_matrix_file(c.matrix_path);
}

std::string fixed(double x, int prec = 10) {
  std::ostringstream s;
  s << std::setprecision(prec) << std::fixed << x;
  return s.str();
}

std::string complex_text(const Complex& z) {
  std::ostringstream s;
  s << std::setprecision(10) << std::fixed << z.real() << (z.imag() < 0 ? " - " : " + ")
    << std::abs(z.imag()) << "i";
  return s.str();
}

// Smooth observables that are not trigonometric polynomials; Monte-Carlo only.
std::optional<Observable> builtin_callable(const std::string& spec, std::size_t dim) {
  if (spec.rfind("expcos:", 0) != 0) return std::nullopt;
  Frequency k;
  std::stringstream ss(spec.substr(7));
  for (std::string tok; std::getline(ss, tok, ',');) k.push_back(std::stoll(tok));
  if (k.size() != dim) throw Error(ErrorKind::ParseError, "frequency dimension mismatch in " + spec);
  return Observable([k](std::span<const double> x) {
    double phase = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) phase += static_cast<double>(k[i]) * x[i];
    return Complex(std::exp(std::cos(2.0 * std::numbers::pi * phase)), 0.0);
  });
}

Observable observable_for(const std::string& spec, std::size_t dim) {
  if (auto f = builtin_callable(spec, dim)) return *f;
  TrigObservable o = parse_observable(spec, dim);
  return [o](std::span<const double> x) { return o(x); };
}

int cmd_analyze(const RunConfig& c, const ToralAutomorphism& t, std::ostream& out) {
  json j = to_json(t);
  j["provenance"] = provenance(c, t.matrix);
  if (wants_json(c.format)) write_file(fs::path(c.output_dir) / "analyze.json", dump(j));
  out << "dim " << t.dim() << "  d_s " << t.stable_dim << "  d_u " << t.unstable_dim << "\n"
      << "lambda " << fixed(t.lambda) << "  h_top " << fixed(t.entropy) << "\n";
  if (t.orientation_reversing) out << "orientation reversing (use --square to analyze T^2)\n";
  return 0;
}

int cmd_cohomology(const RunConfig& c, const ToralAutomorphism& t, std::ostream& out) {
  std::vector<std::size_t> degrees;
  if (c.degree) degrees.push_back(*c.degree);
  else for (std::size_t l = 0; l <= t.dim(); ++l) degrees.push_back(l);
  for (auto l : degrees) {
    const CohomologyAction a = induced_action(t, l, c.rank_tol);
    const auto oracle = spectrum_products_oracle(inverse_eigenvalues(t), l);
    const double gap = matching_distance(a.spectrum, oracle);
    json j = to_json(a);
    j["oracle_distance"] = gap;
    j["provenance"] = provenance(c, t.matrix);
    if (wants_json(c.format)) {
      write_file(fs::path(c.output_dir) / ("cohomology_l" + std::to_string(l) + ".json"), dump(j));
    }
    out << "H^" << l << ": dim " << a.dim() << ", max|sigma| "
        << fixed(a.spectrum.empty() ? 0.0 : std::abs(a.spectrum.front())) << ", oracle distance "
        << std::scientific << std::setprecision(2) << gap << std::defaultfloat << "\n";
    if (gap > c.match_tol) {
      throw Error(ErrorKind::BoundViolated, "compound spectrum disagrees with eigenvalue products");
    }
  }
  return 0;
}

std::string resonance_table(const ResonanceReport& r) {
  std::ostringstream s;
  s << "h_top            " << fixed(r.h_top) << "\n"
    << "lambda           " << fixed(r.lambda) << "\n"
    << "annulus inner    " << fixed(r.annulus_inner) << "\n"
    << "|Lambda_2|       " << fixed(r.second_modulus) << "\n"
    << "nu               " << fixed(r.nu) << "\n"
    << "decay bound      " << fixed(r.decay_rate_bound) << "\n\n"
    << std::left << std::setw(34) << "Lambda_i" << std::setw(16) << "|Lambda_i|" << std::setw(6) << "N_i"
    << "rescaled\n";
  for (std::size_t i = 0; i < r.resonances.size(); ++i) {
    s << std::setw(34) << complex_text(r.resonances[i].value) << std::setw(16)
      << fixed(std::abs(r.resonances[i].value)) << std::setw(6) << r.resonances[i].jordan_size
      << complex_text(r.rescaled[i]) << "\n";
  }
  return s.str();
}

int cmd_resonances(const RunConfig& c, const ToralAutomorphism& t, std::ostream& out) {
  const CohomologyAction stable = induced_action(t, t.stable_dim, c.rank_tol);
  const ResonanceReport r = resonance_report(t, stable, {c.rank_tol, std::nullopt});
  json j = to_json(r);
  j["degree_bounds"] = to_json(degree_bounds(t));
  j["gap_check"] = to_json(toral_gap_check(t));
  j["provenance"] = provenance(c, t.matrix);
  const std::string table = resonance_table(r);
  if (wants_json(c.format)) write_file(fs::path(c.output_dir) / "resonances.json", dump(j));
  write_file(fs::path(c.output_dir) / "resonances.txt", table);
  if (c.plot) {
    write_file(fs::path(c.output_dir) / "resonances.svg",
               annulus_svg(stable.spectrum, std::exp(r.h_top), r.annulus_inner));
  }
  out << table;
  return 0;
}

int cmd_spectrum(const RunConfig& c, const ToralAutomorphism& t, std::ostream& out) {
  const OperatorTruncation o = pushforward_matrix(t, c.cutoff, c.cap);
  const auto spec = truncated_spectrum(o, c.floor);
  if (wants_csv(c.format)) {
    std::ostringstream csv;
    write_spectrum_csv(csv, spec);
    write_file(fs::path(c.output_dir) / "spectrum.csv", csv.str());
  }
  if (wants_json(c.format)) {
    json j{{"cutoff", o.cutoff},
           {"dim", o.dim},
           {"nonzeros", o.nonzeros()},
           {"nilpotency_index", o.nilpotency_index},
           {"acyclic", mode_graph_acyclic(o)},
           {"eigenvalues_above_floor", spec.size()},
           {"provenance", provenance(c, t.matrix)}};
    write_file(fs::path(c.output_dir) / "spectrum.json", dump(j));
  }
  if (c.export_matrix) {
    std::ostringstream coo;
    write_coordinate(coo, o);
    write_file(fs::path(c.output_dir) / "operator.coo", coo.str());
  }
  out << "modes " << o.dim << ", eigenvalues above " << c.floor << ": " << spec.size()
      << ", nilpotency index " << o.nilpotency_index << "\n";
  return 0;
}

int cmd_correlate(const RunConfig& c, const ToralAutomorphism& t, std::ostream& out) {
  const std::size_t d = t.dim();
  CorrelationSeries s;
  if (c.mode == CorrelationMode::Exact) {
    s = correlate_exact(t, parse_observable(c.phi, d), parse_observable(c.psi, d), c.n_max);
  } else {
    MonteCarloOptions opts;
    opts.samples = c.samples;
    opts.seed = c.seed;
    s = correlate_mc(linear_torus_map(t), d, observable_for(c.phi, d), observable_for(c.psi, d), c.n_max,
                     opts, resonance_report(t).decay_rate_bound);
  }
  json fit{{"method", c.mode == CorrelationMode::Exact ? "exact" : "monte_carlo"},
           {"bound_rate", s.bound_rate},
           {"log_bound_rate", std::log(s.bound_rate)}};
  const double floor = c.fit_floor.value_or(default_noise_floor(s));
  fit["noise_floor"] = floor;
  try {
    const RateFit f = fit_rate(s, floor);
    s.fitted_rate = f.rate;
    s.prefactor = f.prefactor;
    fit["status"] = "ok";
    fit["fitted_rate"] = f.rate;
    fit["prefactor"] = f.prefactor;
    fit["points"] = f.used;
    fit["within_bound"] = rate_within_bound(f, s.bound_rate, 0.1);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InsufficientData) throw;
    fit["status"] = "InsufficientData";
  }
  if (s.decorrelation_time) {
    fit["decorrelation_time"] = *s.decorrelation_time;
    fit["decorrelation_certified"] = s.decorrelation_certified;
  }
  fit["provenance"] = provenance(c, t.matrix);
  std::ostringstream csv;
  write_series_csv(csv, s);
  if (wants_csv(c.format)) write_file(fs::path(c.output_dir) / "correlation.csv", csv.str());
  if (wants_json(c.format)) write_file(fs::path(c.output_dir) / "correlation_fit.json", dump(fit));
  out << csv.str() << "fit: " << fit["status"].get<std::string>() << "\n";
  return 0;
}

int cmd_ulam(const RunConfig& c, const ToralAutomorphism& t, std::ostream& out) {
  const TorusMap map = c.eps != 0.0 ? perturbed_cat_map(t, c.eps) : linear_torus_map(t);
  const UlamMatrix u = ulam_discretize(map, t.dim(), c.cells, c.samples_per_cell, c.seed);
  const auto spec = ulam_spectrum(u, c.nev);
  std::ostringstream csv;
  write_spectrum_csv(csv, spec);
  if (wants_csv(c.format)) write_file(fs::path(c.output_dir) / "ulam_spectrum.csv", csv.str());
  if (wants_json(c.format)) {
    json j{{"cells", u.dim()}, {"leading_modulus", spec.empty() ? 0.0 : std::abs(spec.front())},
           {"provenance", provenance(c, t.matrix)}};
    write_file(fs::path(c.output_dir) / "ulam.json", dump(j));
  }
  out << csv.str();
  return 0;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::IoError:
    case ErrorKind::CapExceeded:
    case ErrorKind::ParseError:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig c;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) c.output_dir = env;

  CLI::App app{"Cohomological resonances and mixing bounds of hyperbolic toral automorphisms", "toral"};
  app.require_subcommand(1);
  std::string format = "both";
  std::string method = "mc";

  auto common = [&](CLI::App* sub) {
    sub->add_option("-m,--matrix", c.matrix_path, "Matrix file (plain text or JSON)");
    sub->add_option("--inline", c.inline_matrix, "Matrix as a JSON array of arrays");
    sub->add_flag("--square", c.square, "Analyze T^2 instead of T");
    sub->add_option("-o,--output-dir", c.output_dir, "Directory for reports (env TORAL_OUTPUT_DIR)");
    sub->add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
    sub->add_option("--unit-tol", c.unit_tol, "Unit-circle tolerance for hyperbolicity")->capture_default_str();
    sub->add_option("--rank-tol", c.rank_tol, "Relative rank tolerance for Jordan blocks")->capture_default_str();
    sub->add_option("--match-tol", c.match_tol, "Eigenvalue matching tolerance")->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "Validate the matrix and report Anosov data");
  common(analyze);
  auto* cohomology = app.add_subcommand("cohomology", "Induced action on H^l");
  common(cohomology);
  cohomology->add_option("-l,--degree", c.degree, "Degree l (all degrees when omitted)");
  auto* resonances = app.add_subcommand("resonances", "Resonance report and mixing bound");
  common(resonances);
  resonances->add_flag("--plot", c.plot, "Also write resonances.svg");
  auto* spectrum = app.add_subcommand("spectrum", "Spectrum of the Fourier-truncated pushforward");
  common(spectrum);
  spectrum->add_option("-K,--cutoff", c.cutoff, "Max-norm frequency cutoff")->capture_default_str();
  spectrum->add_option("--cap", c.cap, "Maximum number of modes")->capture_default_str();
  spectrum->add_option("--floor", c.floor, "Modulus floor")->capture_default_str();
  spectrum->add_flag("--export-matrix", c.export_matrix, "Write operator.coo");
  auto* correlate = app.add_subcommand("correlate", "Correlation series and rate fit");
  common(correlate);
  correlate->add_option("--phi", c.phi, "Observable: cos:k1,k2,..  const:c  expcos:k1,..  JSON or file")
      ->capture_default_str();
  correlate->add_option("--psi", c.psi, "Observable, same syntax as --phi")->capture_default_str();
  correlate->add_option("--nmax", c.n_max, "Largest time step")->capture_default_str();
  correlate->add_option("--samples", c.samples, "Monte-Carlo samples")->capture_default_str();
  correlate->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  correlate->add_option("--method", method, "mc or exact")->check(CLI::IsMember({"mc", "exact"}));
  correlate->add_option("--fit-floor", c.fit_floor, "Noise floor for the rate fit (default 5 max stderr)");
  auto* ulam = app.add_subcommand("ulam", "Ulam discretization spectrum");
  common(ulam);
  ulam->add_option("-N,--cells", c.cells, "Cells per axis")->capture_default_str();
  ulam->add_option("--samples-per-cell", c.samples_per_cell, "Samples per cell")->capture_default_str();
  ulam->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  ulam->add_option("--eps", c.eps, "Perturbation eps sin(2 pi x_2) on the first coordinate (2D)");
  ulam->add_option("--nev", c.nev, "Number of eigenvalues")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  }

  if (analyze->parsed()) c.command = Command::Analyze;
  else if (cohomology->parsed()) c.command = Command::Cohomology;
  else if (resonances->parsed()) c.command = Command::Resonances;
  else if (spectrum->parsed()) c.command = Command::Spectrum;
  else if (correlate->parsed()) c.command = Command::Correlate;
  else c.command = Command::Ulam;
  c.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Both;
  c.mode = method == "exact" ? CorrelationMode::Exact : CorrelationMode::MonteCarlo;
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    std::error_code ec;
    fs::create_directories(c.output_dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create " + c.output_dir + ": " + ec.message());

    ToralAutomorphism t = validate_automorphism(load_matrix(c), c.unit_tol);
    if (c.square) t = squared(t);
    switch (c.command) {
      case Command::Analyze: return cmd_analyze(c, t, out);
      case Command::Cohomology: return cmd_cohomology(c, t, out);
      case Command::Resonances: return cmd_resonances(c, t, out);
      case Command::Spectrum: return cmd_spectrum(c, t, out);
      case Command::Correlate: return cmd_correlate(c, t, out);
      case Command::Ulam: return cmd_ulam(c, t, out);
    }
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::invalid_argument& e) {
    err << "InvalidArgument: " << e.what() << "\n";
    return 2;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_args(argc, argv, out);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  if (!config) return 0;
  return run(*config, out, err);
}

}  // namespace toral::cli
