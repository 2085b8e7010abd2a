#include "toral/io.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "toral/error.hpp"

namespace toral {

namespace {

mpz_class parse_integer(const std::string& token) {
  mpz_class z;
  std::string t = token;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || z.set_str(t, 10) != 0) throw Error(ErrorKind::ParseError, "not an integer: '" + token + "'");
  return z;
}

mpz_class json_integer(const json& v) {
  if (v.is_number_integer()) return parse_integer(v.dump());
  if (v.is_string()) return parse_integer(v.get<std::string>());
  throw Error(ErrorKind::ParseError, "matrix entries must be integers, got " + v.dump());
}

json complex_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }
Complex complex_from(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace

IntMatrix int_matrix_from_json(const json& j) {
  return guarded([&] {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "matrix JSON must be an array of arrays");
    std::vector<std::vector<mpz_class>> rows;
    for (const auto& row : j) {
      if (!row.is_array()) throw Error(ErrorKind::ParseError, "matrix JSON must be an array of arrays");
      std::vector<mpz_class> r;
      for (const auto& v : row) r.push_back(json_integer(v));
      rows.push_back(std::move(r));
    }
    return make_int_matrix(rows);
  });
}

IntMatrix parse_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw Error(ErrorKind::ParseError, "empty matrix input");
  if (text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
    return int_matrix_from_json(j);
  }

  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> lines;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  if (lines.front().size() != 1) throw Error(ErrorKind::ParseError, "first line must hold the dimension");
  const mpz_class dz = parse_integer(lines.front()[0]);
  if (dz < 1 || dz > 64) throw Error(ErrorKind::ParseError, "dimension out of range: " + dz.get_str());
  const auto d = static_cast<std::size_t>(dz.get_ui());
  if (lines.size() != d + 1) {
    throw Error(ErrorKind::NotSquare, "expected " + std::to_string(d) + " rows, got " +
                                          std::to_string(lines.size() - 1));
  }
  std::vector<std::vector<mpz_class>> rows;
  for (std::size_t i = 1; i <= d; ++i) {
    std::vector<mpz_class> r;
    for (const auto& tok : lines[i]) r.push_back(parse_integer(tok));
    rows.push_back(std::move(r));
  }
  return make_int_matrix(rows);
}

IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open matrix file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

std::string matrix_text(const IntMatrix& m) {
  std::ostringstream out;
  out << m.dim() << '\n';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? " " : "") << m(i, j).get_str();
    out << '\n';
  }
  return out.str();
}

std::string matrix_hash(const IntMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : matrix_text(m)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const auto& v = m(i, j);
      if (v.fits_slong_p()) row.push_back(static_cast<std::int64_t>(v.get_si()));
      else row.push_back(v.get_str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ToralAutomorphism& t) {
  json eig = json::array();
  for (const auto& z : t.eigenvalues) eig.push_back(complex_json(z));
  return json{{"dim", t.dim()},
              {"matrix", to_json(t.matrix)},
              {"determinant", t.determinant},
              {"eigenvalues", eig},
              {"d_s", t.stable_dim},
              {"d_u", t.unstable_dim},
              {"lambda", t.lambda},
              {"h_top", t.entropy},
              {"orientation_reversing", t.orientation_reversing},
              {"unit_tolerance", t.unit_tolerance}};
}

ToralAutomorphism automorphism_from_json(const json& j) {
  return guarded([&] {
    ToralAutomorphism t;
    t.matrix = int_matrix_from_json(j.at("matrix"));
    t.determinant = j.at("determinant").get<int>();
    for (const auto& z : j.at("eigenvalues")) t.eigenvalues.push_back(complex_from(z));
    t.stable_dim = j.at("d_s").get<std::size_t>();
    t.unstable_dim = j.at("d_u").get<std::size_t>();
    t.lambda = j.at("lambda").get<double>();
    t.entropy = j.at("h_top").get<double>();
    t.orientation_reversing = j.at("orientation_reversing").get<bool>();
    t.unit_tolerance = j.at("unit_tolerance").get<double>();
    return t;
  });
}

json to_json(const CohomologyAction& c) {
  json rows = json::array();
  for (std::size_t i = 0; i < c.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < c.dim(); ++j) row.push_back(rational_string(c.matrix(i, j)));
    rows.push_back(std::move(row));
  }
  json spec = json::array();
  for (const auto& z : c.spectrum) spec.push_back(complex_json(z));
  json blocks = json::array();
  for (const auto& b : c.jordan_blocks) {
    json e = complex_json(b.eigenvalue);
    e["size"] = b.size;
    blocks.push_back(std::move(e));
  }
  return json{{"degree", c.degree}, {"dim", c.dim()}, {"matrix", rows}, {"spectrum", spec},
              {"jordan_blocks", blocks}};
}

CohomologyAction cohomology_from_json(const json& j) {
  return guarded([&] {
    CohomologyAction c;
    c.degree = j.at("degree").get<std::size_t>();
    const auto& rows = j.at("matrix");
    c.matrix = RationalMatrix(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw Error(ErrorKind::NotSquare, "cohomology matrix is not square");
      for (std::size_t k = 0; k < rows.size(); ++k) c.matrix(i, k) = parse_rational(rows[i][k].get<std::string>());
    }
    for (const auto& z : j.at("spectrum")) c.spectrum.push_back(complex_from(z));
    for (const auto& b : j.at("jordan_blocks"))
      c.jordan_blocks.push_back({complex_from(b), b.at("size").get<std::size_t>()});
    return c;
  });
}

json to_json(const ResonanceReport& r) {
  json res = json::array();
  for (const auto& x : r.resonances) {
    json e = complex_json(x.value);
    e["modulus"] = std::abs(x.value);
    e["jordan_size"] = x.jordan_size;
    res.push_back(std::move(e));
  }
  json resc = json::array();
  for (const auto& z : r.rescaled) {
    json e = complex_json(z);
    e["modulus"] = std::abs(z);
    resc.push_back(std::move(e));
  }
  json terms = json::array();
  for (const auto& t : r.asymptotics_terms) {
    json e = complex_json(t.base);
    e["max_power"] = t.max_power;
    terms.push_back(std::move(e));
  }
  return json{{"h_top", r.h_top},
              {"lambda", r.lambda},
              {"annulus_inner", r.annulus_inner},
              {"resonances", res},
              {"rescaled", resc},
              {"lambda2_modulus", r.second_modulus},
              {"nu", r.nu},
              {"decay_rate_bound", r.decay_rate_bound},
              {"asymptotics_terms", terms}};
}

ResonanceReport resonance_report_from_json(const json& j) {
  return guarded([&] {
    ResonanceReport r;
    r.h_top = j.at("h_top").get<double>();
    r.lambda = j.at("lambda").get<double>();
    r.annulus_inner = j.at("annulus_inner").get<double>();
    for (const auto& e : j.at("resonances"))
      r.resonances.push_back({complex_from(e), e.at("jordan_size").get<std::size_t>()});
    for (const auto& e : j.at("rescaled")) r.rescaled.push_back(complex_from(e));
    r.second_modulus = j.at("lambda2_modulus").get<double>();
    r.nu = j.at("nu").get<double>();
    r.decay_rate_bound = j.at("decay_rate_bound").get<double>();
    for (const auto& e : j.at("asymptotics_terms"))
      r.asymptotics_terms.push_back({complex_from(e), e.at("max_power").get<std::size_t>()});
    return r;
  });
}

json to_json(const std::vector<DegreeBound>& table) {
  json out = json::array();
  for (const auto& row : table) {
    out.push_back(json{{"degree", row.degree},
                       {"bound", row.bound},
                       {"max_modulus", row.max_modulus},
                       {"holds", row.holds}});
  }
  return out;
}

json to_json(const GapCertificate& g) {
  return json{{"lambda2_modulus", g.second_modulus},
              {"tau_below", g.tau_below},
              {"tau_above", g.tau_above},
              {"annulus_inner", g.annulus_inner},
              {"strict_gap", g.strict_gap},
              {"below_inner", g.below_inner},
              {"passes", g.passes}};
}

TrigObservable observable_from_json(const json& j, std::size_t dim) {
  return guarded([&] {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "observable JSON must be an array");
    std::map<Frequency, Complex> coeffs;
    for (const auto& e : j) {
      Frequency k = e.at("k").get<Frequency>();
      const double re = e.value("re", 0.0);
      const double im = e.value("im", 0.0);
      coeffs[k] += Complex(re, im);
    }
    // Real exactly when the coefficients are conjugate-symmetric.
    bool real = true;
    for (const auto& [k, c] : coeffs) {
      Frequency neg(k.size());
      for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
      auto it = coeffs.find(neg);
      const Complex partner = it == coeffs.end() ? Complex(0.0, 0.0) : it->second;
      if (std::abs(partner - std::conj(c)) > 1e-12 * std::max(1.0, std::abs(c))) real = false;
    }
    return TrigObservable(dim, std::move(coeffs), real);
  });
}

json to_json(const TrigObservable& o) {
  json out = json::array();
  for (const auto& [k, c] : o.coefficients()) out.push_back(json{{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  return out;
}

TrigObservable parse_observable(const std::string& spec, std::size_t dim) {
  auto numbers = [&](const std::string& body) {
    Frequency k;
    std::stringstream ss(body);
    for (std::string tok; std::getline(ss, tok, ',');) {
      try {
        std::size_t used = 0;
        k.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad frequency component '" + tok + "'");
      }
    }
    return k;
  };
  if (spec.rfind("cos:", 0) == 0) {
    Frequency k = numbers(spec.substr(4));
    if (k.size() != dim) throw Error(ErrorKind::ParseError, "frequency dimension mismatch in " + spec);
    return TrigObservable::cosine(k);
  }
  if (spec.rfind("const:", 0) == 0) {
    try {
      return TrigObservable::constant(dim, std::stod(spec.substr(6)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad constant in " + spec);
    }
  }
  std::string text = spec;
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || spec[first] != '[') {
    std::ifstream in(spec);
    if (!in) throw Error(ErrorKind::ParseError, "unknown observable '" + spec + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return observable_from_json(json::parse(text), dim);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

void write_series_csv(std::ostream& out, const CorrelationSeries& s) {
  out << "n,re,im,stderr\n";
  for (const auto& v : s.values) {
    out << v.n << ',' << format_double(v.value.real()) << ',' << format_double(v.value.imag()) << ',';
    if (v.stderr_) out << format_double(*v.stderr_);
    out << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const std::vector<Complex>& spectrum) {
  out << "re,im,modulus\n";
  for (const auto& z : spectrum) {
    out << format_double(z.real()) << ',' << format_double(z.imag()) << ',' << format_double(std::abs(z))
        << '\n';
  }
}

}  // namespace toral
