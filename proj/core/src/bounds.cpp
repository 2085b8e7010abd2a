#include "toral/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "toral/error.hpp"

namespace toral {

namespace {

std::vector<Complex> degree_spectrum(const RationalMatrix& inverse, std::size_t l) {
  return exact_matrix_spectrum(compound(inverse, l));
}

double max_modulus(const std::vector<Complex>& s) {
  double m = 0.0;
  for (const auto& z : s) m = std::max(m, std::abs(z));
  return m;
}

// |Lambda_2|: largest modulus once one copy of the leading eigenvalue is removed.
double second_modulus(const std::vector<Complex>& descending) {
  return descending.size() > 1 ? std::abs(descending[1]) : 0.0;
}

}  // namespace

ResonanceReport resonance_report(const ToralAutomorphism& t, const ResonanceOptions& opts) {
  return resonance_report(t, induced_action(t, t.stable_dim, opts.rank_tol), opts);
}

ResonanceReport resonance_report(const ToralAutomorphism& t, const CohomologyAction& stable_degree,
                                 const ResonanceOptions& opts) {
  if (stable_degree.degree != t.stable_dim) {
    throw std::invalid_argument("resonance_report needs the action on H^{d_s}");
  }
  ResonanceReport r;
  r.h_top = t.entropy;
  r.lambda = t.lambda;
  const double top = std::exp(t.entropy);
  r.annulus_inner = top / t.lambda;

  const auto& spec = stable_degree.spectrum;
  if (spec.empty() || std::abs(std::abs(spec.front()) - top) > kBoundSlack * std::max(1.0, top)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "leading cohomology eigenvalue " << (spec.empty() ? 0.0 : std::abs(spec.front()))
        << " differs from exp(h_top) " << top;
    throw Error(ErrorKind::BoundViolated, msg.str());
  }
  r.second_modulus = second_modulus(spec);
  r.nu = std::max(r.second_modulus, r.annulus_inner);
  r.decay_rate_bound = r.nu / top;

  const double threshold = opts.threshold.value_or(r.annulus_inner);
  for (const auto& block : stable_degree.jordan_blocks) {
    if (std::abs(block.eigenvalue) <= threshold) continue;
    r.resonances.push_back({block.eigenvalue, block.size});
  }
  std::stable_sort(r.resonances.begin(), r.resonances.end(),
                   [](const Resonance& a, const Resonance& b) {
                     return descending_modulus(a.value, b.value);
                   });
  for (const auto& res : r.resonances) {
    const Complex base = res.value / top;
    r.rescaled.push_back(base);
    r.asymptotics_terms.push_back({base, res.jordan_size - 1});
  }
  return r;
}

std::vector<DegreeBound> degree_bounds(const ToralAutomorphism& t) {
  const RationalMatrix inverse = to_rational(inverse_matrix(t));
  const std::size_t d = t.dim();
  const double top = std::exp(t.entropy);
  std::vector<DegreeBound> table;
  for (std::size_t l = 0; l <= d; ++l) {
    DegreeBound row;
    row.degree = l;
    if (l == 0 || l == d) {
      row.bound = 1.0;
    } else {
      const double gap = std::abs(static_cast<double>(t.stable_dim) - static_cast<double>(l));
      row.bound = std::pow(t.lambda, -gap) * top;
    }
    row.max_modulus = max_modulus(degree_spectrum(inverse, l));
    row.holds = row.max_modulus <= row.bound + kBoundSlack;
    if (!row.holds) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "degree " << l << ": max|sigma| = " << row.max_modulus << " > bound " << row.bound;
      throw Error(ErrorKind::BoundViolated, msg.str());
    }
    table.push_back(row);
  }
  return table;
}

GapCertificate toral_gap_check(const ToralAutomorphism& t) {
  const RationalMatrix inverse = to_rational(inverse_matrix(t));
  const std::size_t ds = t.stable_dim;
  GapCertificate g;
  g.second_modulus = second_modulus(degree_spectrum(inverse, ds));
  // d_s - 1 and d_s + 1 stay inside [0, d] since 1 <= d_s <= d - 1.
  g.tau_below = max_modulus(degree_spectrum(inverse, ds - 1));
  g.tau_above = max_modulus(degree_spectrum(inverse, ds + 1));
  g.annulus_inner = std::exp(t.entropy) / t.lambda;
  const double tau = std::min(g.tau_below, g.tau_above);
  g.strict_gap = g.second_modulus < tau;
  g.below_inner = tau <= g.annulus_inner + kBoundSlack;
  g.passes = g.strict_gap && g.below_inner;
  return g;
}

}  // namespace toral
