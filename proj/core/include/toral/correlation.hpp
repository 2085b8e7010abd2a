#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "toral/automorphism.hpp"
#include "toral/spectrum.hpp"
#include "toral/ulam.hpp"

namespace toral {

using Frequency = std::vector<std::int64_t>;

/// Finite Fourier series sum_k c_k exp(2 pi i k.x).
class TrigObservable {
 public:
  TrigObservable() = default;
  /// Zero coefficients are dropped. Throws ParseError when real_valued is set
  /// and c_{-k} != conj(c_k), or when frequencies disagree in dimension.
  TrigObservable(std::size_t dim, std::map<Frequency, Complex> coeffs, bool real_valued);

  /// cos(2 pi k.x).
  static TrigObservable cosine(const Frequency& k);
  static TrigObservable constant(std::size_t dim, double value);

  std::size_t dim() const noexcept { return dim_; }
  bool real_valued() const noexcept { return real_valued_; }
  const std::map<Frequency, Complex>& coefficients() const noexcept { return coeffs_; }
  Complex coefficient(const Frequency& k) const;
  Complex operator()(std::span<const double> x) const;

  /// a*this + b*other.
  TrigObservable combine(const Complex& a, const TrigObservable& other, const Complex& b) const;

 private:
  std::size_t dim_ = 0;
  std::map<Frequency, Complex> coeffs_;
  bool real_valued_ = true;
};

using Observable = std::function<Complex(std::span<const double>)>;

enum class CorrelationMethod { Exact, MonteCarlo };

struct CorrelationValue {
  std::size_t n = 0;
  Complex value;
  std::optional<double> stderr_;

  friend bool operator==(const CorrelationValue&, const CorrelationValue&) = default;
};

struct CorrelationSeries {
  std::vector<CorrelationValue> values;
  CorrelationMethod method = CorrelationMethod::Exact;
  std::optional<double> fitted_rate;  // slope of log|C_n|
  std::optional<double> prefactor;
  double bound_rate = 1.0;            // decay_rate_bound of the map
  /// Exact path only: first n after which C_n vanishes identically.
  std::optional<std::size_t> decorrelation_time;
  /// True when decorrelation_time is backed by an escape estimate along the
  /// unstable eigendirections rather than only by the computed horizon.
  bool decorrelation_certified = false;
};

/// C_n = int phi (psi o f^n) - int phi int psi over Lebesgue measure, by
/// matching Fourier modes: psi's frequency k is carried to (A^T)^n k.
CorrelationSeries correlate_exact(const ToralAutomorphism& t, const TrigObservable& phi,
                                  const TrigObservable& psi, std::size_t n_max);

struct MonteCarloOptions {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 7;
  std::size_t block_size = 1 << 14;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Monte-Carlo estimate over uniform samples; stderr from the sample variance
/// of the centred products. Results depend only on (samples, seed,
/// block_size), never on the number of threads.
CorrelationSeries correlate_mc(const TorusMap& map, std::size_t dim_torus, const Observable& phi,
                               const Observable& psi, std::size_t n_max,
                               const MonteCarloOptions& opts, double bound_rate = 1.0);

struct RateFit {
  double rate = 0.0;       // natural-log slope per step
  double prefactor = 0.0;  // exp(intercept)
  std::vector<std::size_t> used;
};

/// Least squares of log|C_n| against n over entries with |C_n| > floor.
/// Default floor: 5 * max stderr for Monte-Carlo series, 0 for exact ones.
/// Throws InsufficientData with fewer than 3 usable points.
RateFit fit_rate(const CorrelationSeries& s, std::optional<double> floor = std::nullopt);

/// fitted rate <= log(bound_rate) + tol.
bool rate_within_bound(const RateFit& fit, double bound_rate, double tol);

double default_noise_floor(const CorrelationSeries& s);

}  // namespace toral
