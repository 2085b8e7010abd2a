#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"
#include "support/oracles.hpp"
#include "toral/bounds.hpp"
#include "toral/error.hpp"
#include "toral/io.hpp"

using namespace toral;
namespace fs = std::filesystem;

namespace {

const IntMatrix kCat = make_int_matrix({{2, 1}, {1, 1}});
const IntMatrix kPlastic = make_int_matrix({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "toral");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("toral_io_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("matrix parsing") {
  CHECK(parse_matrix("2\n2 1\n1 1\n") == kCat);
  CHECK(parse_matrix("[[2,1],[1,1]]") == kCat);
  CHECK(parse_matrix("  3\n0 0 1\n1 0 1\n0 1 0") == kPlastic);
  for (const char* bad : {"2\n1 2 3\n4 5\n", "[[1,2],[3]]"}) {
    try {
      parse_matrix(bad);
      FAIL("expected NotSquare");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotSquare);
    }
  }
  for (const char* bad : {"", "[[1,x]]", "2\n1 2\n3 y"}) {
    try {
      parse_matrix(bad);
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
    }
  }
  try {
    read_matrix_file("/nonexistent/matrix.txt");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoError);
  }
  CHECK(parse_matrix(matrix_text(kPlastic)) == kPlastic);
  CHECK(matrix_hash(kCat) == matrix_hash(parse_matrix("[[2,1],[1,1]]")));
  CHECK(matrix_hash(kCat) != matrix_hash(kPlastic));
}

TEST_CASE("JSON round trips") {
  for (const auto& m : {kCat, kPlastic, oracle::direct_sum(kCat, kCat)}) {
    const auto t = validate_automorphism(m);
    CHECK(int_matrix_from_json(json::parse(to_json(m).dump())) == m);
    CHECK(automorphism_from_json(json::parse(to_json(t).dump())) == t);
    for (std::size_t l = 0; l <= t.dim(); ++l) {
      const auto c = induced_action(t, l);
      CHECK(cohomology_from_json(json::parse(to_json(c).dump())) == c);
    }
    const auto r = resonance_report(t);
    CHECK(resonance_report_from_json(json::parse(to_json(r).dump())) == r);
  }
}

TEST_CASE("observable parsing") {
  const auto c = parse_observable("cos:2,1", 2);
  CHECK(c.coefficient({2, 1}) == Complex(0.5));
  CHECK(parse_observable("const:3", 2).coefficient({0, 0}) == Complex(3.0));
  const auto j = parse_observable(R"([{"k":[1,0],"re":0.5,"im":0},{"k":[-1,0],"re":0.5,"im":0}])", 2);
  CHECK(j.real_valued());
  CHECK(observable_from_json(to_json(c), 2).coefficients() == c.coefficients());
  try {
    parse_observable("cos:1,2,3", 2);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}

TEST_CASE("CSV writers") {
  CorrelationSeries s;
  s.values = {{0, Complex(0.5, 0.0), std::nullopt}, {1, Complex(0.25, -0.125), 0.001}};
  std::ostringstream out;
  write_series_csv(out, s);
  CHECK(out.str() == "n,re,im,stderr\n0,0.5,0,\n1,0.25,-0.125,0.001\n");
  std::ostringstream spec;
  write_spectrum_csv(spec, {Complex(1.0, 0.0)});
  CHECK(spec.str() == "re,im,modulus\n1,0,1\n");
}

TEST_CASE("golden reports") {
  const fs::path dir = scratch("golden");
  const fs::path golden = fs::path(TORAL_GOLDEN_DIR);
  for (const auto& [name, args] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"cat_analyze.json", {"analyze", "--inline", "[[2,1],[1,1]]"}},
           {"plastic_resonances.json", {"resonances", "--inline", "[[0,0,1],[1,0,1],[0,1,0]]"}},
           {"cat_correlation_exact.csv",
            {"correlate", "--method", "exact", "--phi", "cos:5,3", "--psi", "cos:2,1", "--inline",
             "[[2,1],[1,1]]"}},
       }) {
    CAPTURE(name);
    std::vector<std::string> full = args;
    full.push_back("-o");
    full.push_back(dir.string());
    REQUIRE(run_cli(full).code == 0);
    const std::string produced =
        name.ends_with(".csv") ? slurp(dir / "correlation.csv")
                               : slurp(dir / (name.starts_with("cat_analyze") ? "analyze.json" : "resonances.json"));
    CHECK(produced == slurp(golden / name));
  }
}

TEST_CASE("CLI exit codes and messages") {
  const fs::path dir = scratch("exit");
  auto with_dir = [&](std::vector<std::string> a) {
    a.push_back("-o");
    a.push_back(dir.string());
    return run_cli(a);
  };
  CHECK(with_dir({"analyze", "--inline", "[[2,1],[1,1]]"}).code == 0);
  auto r = with_dir({"analyze", "--inline", "[[1,1],[0,1]]"});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("NotHyperbolic", 0) == 0);
  r = with_dir({"analyze", "--inline", "[[2,0],[0,3]]"});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("NotUnimodular", 0) == 0);
  r = with_dir({"analyze", "--inline", "[[1,2,3],[4,5,6]]"});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("NotSquare", 0) == 0);
  r = with_dir({"cohomology", "-l", "5", "--inline", "[[2,1],[1,1]]"});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("DegreeOutOfRange", 0) == 0);
  r = with_dir({"spectrum", "-K", "2000", "--inline", "[[2,1],[1,1]]"});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("CapExceeded", 0) == 0);
  r = with_dir({"analyze", "-m", "/nonexistent/m.txt"});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("IoError", 0) == 0);
  r = with_dir({"analyze", "--inline", "[[2,1],[1,x]]"});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("ParseError", 0) == 0);
  CHECK(run_cli({"frobnicate"}).code == 2);
}

TEST_CASE("CLI artifacts") {
  const fs::path dir = scratch("artifacts");
  const std::string cat = "[[2,1],[1,1]]";
  REQUIRE(run_cli({"resonances", "--plot", "--inline", cat, "-o", dir.string()}).code == 0);
  CHECK(fs::exists(dir / "resonances.json"));
  CHECK(fs::exists(dir / "resonances.txt"));
  CHECK(slurp(dir / "resonances.svg").find("<svg") != std::string::npos);
  const auto report = json::parse(slurp(dir / "resonances.json"));
  CHECK(report["provenance"]["matrix_hash"] == matrix_hash(kCat));
  CHECK(report["gap_check"].is_object());
  CHECK(report["degree_bounds"].size() == 3);

  REQUIRE(run_cli({"spectrum", "-K", "4", "--export-matrix", "--inline", cat, "-o", dir.string()}).code == 0);
  CHECK(slurp(dir / "spectrum.csv") == "re,im,modulus\n1,0,1\n");
  CHECK(slurp(dir / "operator.coo").rfind("81 81 ", 0) == 0);

  REQUIRE(run_cli({"cohomology", "--inline", cat, "-o", dir.string()}).code == 0);
  for (int l = 0; l <= 2; ++l) {
    const auto c = json::parse(slurp(dir / ("cohomology_l" + std::to_string(l) + ".json")));
    CHECK(c["oracle_distance"].get<double>() < 1e-8);
  }

  REQUIRE(run_cli({"ulam", "-N", "8", "--samples-per-cell", "10", "--inline", cat, "-o", dir.string()}).code == 0);
  CHECK(json::parse(slurp(dir / "ulam.json"))["cells"] == 64);

  REQUIRE(run_cli({"correlate", "--format", "json", "--method", "exact", "--inline", cat, "-o", dir.string()}).code == 0);
  CHECK(fs::exists(dir / "correlation_fit.json"));
}

TEST_CASE("output directory from the environment") {
  const fs::path dir = scratch("env");
  setenv(cli::kOutputDirEnv, dir.string().c_str(), 1);
  const auto r = run_cli({"analyze", "--inline", "[[2,1],[1,1]]"});
  unsetenv(cli::kOutputDirEnv);
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "analyze.json"));
}

TEST_CASE("reruns are byte-identical") {
  const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
  for (const auto& d : {a, b})
    REQUIRE(run_cli({"correlate", "--samples", "20000", "--phi", "cos:5,3", "--psi", "cos:2,1", "--inline",
                     "[[2,1],[1,1]]", "-o", d.string()})
                .code == 0);
  CHECK(slurp(a / "correlation.csv") == slurp(b / "correlation.csv"));
  CHECK(slurp(a / "correlation_fit.json") == slurp(b / "correlation_fit.json"));
}
