#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "toral/automorphism.hpp"
#include "toral/bounds.hpp"
#include "toral/cohomology.hpp"
#include "toral/correlation.hpp"
#include "toral/int_matrix.hpp"

namespace toral {

using json = nlohmann::json;

/// Plain text ("d" then d rows of d integers) or a JSON array of arrays.
/// The format is detected from the first non-blank character.
IntMatrix parse_matrix(const std::string& text);
IntMatrix read_matrix_file(const std::string& path);
std::string matrix_text(const IntMatrix& m);

/// FNV-1a 64 of matrix_text(), as 16 hex digits.
std::string matrix_hash(const IntMatrix& m);

/// %.17g
std::string format_double(double x);

json to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const json& j);

json to_json(const ToralAutomorphism& t);
ToralAutomorphism automorphism_from_json(const json& j);

json to_json(const CohomologyAction& c);
CohomologyAction cohomology_from_json(const json& j);

json to_json(const ResonanceReport& r);
ResonanceReport resonance_report_from_json(const json& j);

json to_json(const std::vector<DegreeBound>& table);
json to_json(const GapCertificate& g);

/// [{k:[...], re, im}, ...]. Real-valuedness is inferred from the coefficients.
TrigObservable observable_from_json(const json& j, std::size_t dim);
json to_json(const TrigObservable& o);

/// Built-ins: "cos:k1,k2,..." and "const:c"; anything else is parsed as JSON.
TrigObservable parse_observable(const std::string& spec, std::size_t dim);

/// Columns n, re, im, stderr (blank for exact series).
void write_series_csv(std::ostream& out, const CorrelationSeries& s);
/// Columns re, im, modulus.
void write_spectrum_csv(std::ostream& out, const std::vector<Complex>& spectrum);

}  // namespace toral
