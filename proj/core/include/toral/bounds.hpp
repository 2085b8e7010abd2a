#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toral/automorphism.hpp"
#include "toral/cohomology.hpp"

namespace toral {

inline constexpr double kBoundSlack = 1e-8;

struct Resonance {
  Complex value;
  std::size_t jordan_size = 1;

  friend bool operator==(const Resonance&, const Resonance&) = default;
};

struct AsymptoticsTerm {
  Complex base;  // resonance divided by exp(h_top)
  std::size_t max_power = 0;

  friend bool operator==(const AsymptoticsTerm&, const AsymptoticsTerm&) = default;
};

/// Resonances of the measure of maximal entropy that are visible in the
/// annulus lambda^{-1} e^{h_top} < |z| <= e^{h_top}, with the derived mixing
/// rate. Constants of the expansion are not representable and not carried.
struct ResonanceReport {
  double h_top = 0.0;
  double lambda = 0.0;
  double annulus_inner = 0.0;
  std::vector<Resonance> resonances;  // one entry per Jordan block
  std::vector<Complex> rescaled;
  double second_modulus = 0.0;  // |Lambda_2|
  double nu = 0.0;
  double decay_rate_bound = 0.0;
  std::vector<AsymptoticsTerm> asymptotics_terms;

  friend bool operator==(const ResonanceReport&, const ResonanceReport&) = default;
};

struct ResonanceOptions {
  double rank_tol = kDefaultRankTolerance;
  /// Replaces lambda^{-1} e^{h_top} as the inner radius when set. Only used
  /// for sensitivity studies; nu and the decay bound still use the true one.
  std::optional<double> threshold;
};

ResonanceReport resonance_report(const ToralAutomorphism& t, const ResonanceOptions& opts = {});

/// Same as above but reuses an already computed action on H^{d_s}.
ResonanceReport resonance_report(const ToralAutomorphism& t, const CohomologyAction& stable_degree,
                                 const ResonanceOptions& opts = {});

struct DegreeBound {
  std::size_t degree = 0;
  double bound = 0.0;         // 1 at l in {0, d}, else lambda^{-|d_s - l|} e^{h_top}
  double max_modulus = 0.0;   // max |sigma_l|
  bool holds = true;
};

/// Per-degree spectral radius bounds. Throws BoundViolated when
/// max|sigma_l| > B_l + kBoundSlack, which can only come from a defect.
std::vector<DegreeBound> degree_bounds(const ToralAutomorphism& t);

struct GapCertificate {
  double second_modulus = 0.0;  // |Lambda_2|
  double tau_below = 0.0;       // max |sigma_{d_s - 1}|
  double tau_above = 0.0;       // max |sigma_{d_s + 1}|
  double annulus_inner = 0.0;   // lambda^{-1} e^{h_top}
  bool strict_gap = false;      // |Lambda_2| < min(tau_below, tau_above)
  bool below_inner = false;     // min(tau) <= annulus_inner (+ slack)
  bool passes = false;
};

GapCertificate toral_gap_check(const ToralAutomorphism& t);

}  // namespace toral
