#include "toral/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "toral/bounds.hpp"
#include "toral/error.hpp"
#include "toral/transfer.hpp"

namespace toral {

TrigObservable::TrigObservable(std::size_t dim, std::map<Frequency, Complex> coeffs, bool real_valued)
    : dim_(dim), real_valued_(real_valued) {
  for (auto& [k, c] : coeffs) {
    if (k.size() != dim) {
      throw Error(ErrorKind::ParseError, "frequency of dimension " + std::to_string(k.size()) +
                                             ", expected " + std::to_string(dim));
    }
    if (c != Complex(0.0, 0.0)) coeffs_.emplace(k, c);
  }
  if (!real_valued_) return;
  for (const auto& [k, c] : coeffs_) {
    Frequency neg(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
    const Complex partner = coefficient(neg);
    if (std::abs(partner - std::conj(c)) > 1e-12 * std::max(1.0, std::abs(c))) {
      throw Error(ErrorKind::ParseError, "real-valued observable needs c(-k) = conj(c(k))");
    }
  }
}

TrigObservable TrigObservable::cosine(const Frequency& k) {
  Frequency neg(k.size());
  bool zero = true;
  for (std::size_t i = 0; i < k.size(); ++i) {
    neg[i] = -k[i];
    zero = zero && k[i] == 0;
  }
  if (zero) return constant(k.size(), 1.0);
  return TrigObservable(k.size(), {{k, 0.5}, {neg, 0.5}}, true);
}

TrigObservable TrigObservable::constant(std::size_t dim, double value) {
  return TrigObservable(dim, {{Frequency(dim, 0), value}}, true);
}

Complex TrigObservable::coefficient(const Frequency& k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

Complex TrigObservable::operator()(std::span<const double> x) const {
  Complex sum = 0.0;
  for (const auto& [k, c] : coeffs_) {
    double phase = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) phase += static_cast<double>(k[i]) * x[i];
    phase -= std::floor(phase);
    sum += c * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return sum;
}

TrigObservable TrigObservable::combine(const Complex& a, const TrigObservable& other, const Complex& b) const {
  if (other.dim_ != dim_) throw std::invalid_argument("observable dimensions differ");
  std::map<Frequency, Complex> c;
  for (const auto& [k, v] : coeffs_) c[k] += a * v;
  for (const auto& [k, v] : other.coeffs_) c[k] += b * v;
  const bool real = real_valued_ && other.real_valued_ && a.imag() == 0.0 && b.imag() == 0.0;
  return TrigObservable(dim_, std::move(c), real);
}

namespace {

bool is_zero_frequency(const Frequency& k) {
  return std::all_of(k.begin(), k.end(), [](std::int64_t v) { return v == 0; });
}

// Number of steps after which (B^n k) provably stays outside the box
// |m|_inf <= radius: coordinates along unstable eigenvectors grow
// monotonically, and |y_i| <= |V^{-1}|_inf |m|_inf inside the box.
// Returns nullopt when the eigenbasis is too ill-conditioned to certify.
std::optional<std::size_t> escape_horizon(const IntMatrix& b, const std::vector<Frequency>& starts,
                                          double radius) {
  const Eigen::MatrixXd bd = to_eigen(b);
  Eigen::EigenSolver<Eigen::MatrixXd> es(bd, true);
  const Eigen::MatrixXcd v = es.eigenvectors();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= 0.0 || s(0) / s(s.size() - 1) > 1e10) return std::nullopt;
  const Eigen::MatrixXcd vinv = v.inverse();
  double vinv_norm = 0.0;
  for (Eigen::Index i = 0; i < vinv.rows(); ++i) vinv_norm = std::max(vinv_norm, vinv.row(i).cwiseAbs().sum());
  const double target = 2.0 * vinv_norm * radius;

  std::size_t horizon = 0;
  for (const auto& k : starts) {
    Eigen::VectorXcd kv(static_cast<Eigen::Index>(k.size()));
    for (std::size_t i = 0; i < k.size(); ++i) kv(static_cast<Eigen::Index>(i)) = static_cast<double>(k[i]);
    const Eigen::VectorXcd y = vinv * kv;
    const double knorm = kv.cwiseAbs().maxCoeff();
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double growth = std::abs(es.eigenvalues()(i));
      const double yi = std::abs(y(i));
      if (growth <= 1.0 || yi <= 1e-9 * vinv_norm * knorm) continue;
      const double steps = yi > target ? 0.0 : std::ceil(std::log(target / yi) / std::log(growth));
      best = std::min(best, steps);
    }
    if (!std::isfinite(best) || best > 1e5) return std::nullopt;
    horizon = std::max(horizon, static_cast<std::size_t>(best));
  }
  return horizon;
}

}  // namespace

CorrelationSeries correlate_exact(const ToralAutomorphism& t, const TrigObservable& phi,
                                  const TrigObservable& psi, std::size_t n_max) {
  const std::size_t d = t.dim();
  if (phi.dim() != d || psi.dim() != d) throw std::invalid_argument("observable dimension mismatch");

  CorrelationSeries s;
  s.method = CorrelationMethod::Exact;
  s.bound_rate = resonance_report(t).decay_rate_bound;
  s.values.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) s.values[n] = {n, Complex(0.0, 0.0), std::nullopt};

  std::vector<Frequency> starts;
  std::vector<Complex> weights;
  for (const auto& [k, c] : psi.coefficients())
    if (!is_zero_frequency(k)) starts.push_back(k), weights.push_back(c);
  double radius = 0.0;
  for (const auto& [k, c] : phi.coefficients())
    for (auto v : k) radius = std::max(radius, std::abs(static_cast<double>(v)));

  const IntMatrix b = koopman_mode_map(t);
  std::optional<std::size_t> horizon;
  if (starts.empty() || radius == 0.0) horizon = 0;
  else horizon = escape_horizon(b, starts, radius);
  s.decorrelation_certified = horizon.has_value();
  const std::size_t last = std::max(n_max, horizon.value_or(0));

  std::optional<std::size_t> last_match;
  for (std::size_t idx = 0; idx < starts.size(); ++idx) {
    std::vector<mpz_class> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = static_cast<long>(starts[idx][i]);
    Frequency target(d);
    for (std::size_t n = 0; n <= last; ++n) {
      bool fits = true;
      for (std::size_t i = 0; i < d && fits; ++i) {
        if (!v[i].fits_slong_p()) fits = false;
        else target[i] = -v[i].get_si();
      }
      if (fits) {
        const Complex c = phi.coefficient(target);
        if (c != Complex(0.0, 0.0)) {
          if (n <= n_max) s.values[n].value += weights[idx] * c;
          last_match = std::max(last_match.value_or(0), n);
        }
      }
      std::vector<mpz_class> next(d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) next[i] += b(i, j) * v[j];
      v = std::move(next);
    }
  }
  s.decorrelation_time = last_match ? *last_match + 1 : 0;

  if (phi.real_valued() && psi.real_valued()) {
    for (const auto& val : s.values) {
      if (std::abs(val.value.imag()) >= 1e-10) {
        throw std::logic_error("real observables produced a complex correlation");
      }
    }
  }
  return s;
}

namespace {

struct BlockSums {
  Complex phi = 0.0;
  std::vector<Complex> psi;
  std::vector<Complex> prod;
  std::vector<double> prod_sq;
};

template <typename Fn>
void for_each_block(std::size_t blocks, unsigned threads, Fn&& fn) {
  if (threads <= 1 || blocks <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t b = t; b < blocks; b += threads) fn(b);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

CorrelationSeries correlate_mc(const TorusMap& map, std::size_t dim_torus, const Observable& phi,
                               const Observable& psi, std::size_t n_max,
                               const MonteCarloOptions& opts, double bound_rate) {
  if (opts.samples < 1000) throw std::invalid_argument("Monte-Carlo needs at least 1000 samples");
  if (opts.block_size == 0) throw std::invalid_argument("block_size must be positive");
  const std::size_t total = opts.samples;
  const std::size_t blocks = (total + opts.block_size - 1) / opts.block_size;
  unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));

  std::vector<BlockSums> sums(blocks);
  const std::size_t terms = n_max + 1;

  // Pass 1: means of phi and of psi o f^n.
  auto sample_block = [&](std::size_t b, auto&& visit) {
    StreamRng rng(opts.seed, b);
    std::vector<double> x(dim_torus), y(dim_torus);
    const std::size_t begin = b * opts.block_size;
    const std::size_t end = std::min(total, begin + opts.block_size);
    for (std::size_t i = begin; i < end; ++i) {
      for (auto& xi : x) xi = rng.uniform();
      const Complex fx = phi(x);
      for (std::size_t n = 0; n < terms; ++n) {
        visit(n, fx, psi(x));
        if (n + 1 < terms) {
          map(x, y);
          std::swap(x, y);
        }
      }
    }
  };
  for_each_block(blocks, threads, [&](std::size_t b) {
    auto& s = sums[b];
    s.psi.assign(terms, 0.0);
    sample_block(b, [&](std::size_t n, Complex fx, Complex gx) {
      if (n == 0) s.phi += fx;
      s.psi[n] += gx;
    });
  });
  Complex phi_mean = 0.0;
  std::vector<Complex> psi_mean(terms, 0.0);
  for (const auto& s : sums) {
    phi_mean += s.phi;
    for (std::size_t n = 0; n < terms; ++n) psi_mean[n] += s.psi[n];
  }
  const double count = static_cast<double>(total);
  phi_mean /= count;
  for (auto& m : psi_mean) m /= count;

  // Pass 2: centred products and their spread.
  for_each_block(blocks, threads, [&](std::size_t b) {
    auto& s = sums[b];
    s.prod.assign(terms, 0.0);
    s.prod_sq.assign(terms, 0.0);
    sample_block(b, [&](std::size_t n, Complex fx, Complex gx) {
      const Complex z = (fx - phi_mean) * (gx - psi_mean[n]);
      s.prod[n] += z;
      s.prod_sq[n] += std::norm(z);
    });
  });

  CorrelationSeries out;
  out.method = CorrelationMethod::MonteCarlo;
  out.bound_rate = bound_rate;
  for (std::size_t n = 0; n < terms; ++n) {
    Complex sum = 0.0;
    double sq = 0.0;
    for (const auto& s : sums) {
      sum += s.prod[n];
      sq += s.prod_sq[n];
    }
    const Complex mean = sum / count;
    const double var = std::max(0.0, (sq / count - std::norm(mean)) * count / (count - 1.0));
    const double rounding = std::numeric_limits<double>::epsilon() *
                            (1.0 + std::abs(phi_mean) * std::abs(psi_mean[n]));
    out.values.push_back({n, mean, std::max(std::sqrt(var / count), rounding)});
  }
  return out;
}

double default_noise_floor(const CorrelationSeries& s) {
  double worst = 0.0;
  for (const auto& v : s.values)
    if (v.stderr_) worst = std::max(worst, *v.stderr_);
  return 5.0 * worst;
}

RateFit fit_rate(const CorrelationSeries& s, std::optional<double> floor) {
  const double cut = floor.value_or(default_noise_floor(s));
  RateFit fit;
  std::vector<std::pair<double, double>> points;
  for (const auto& v : s.values) {
    if (std::abs(v.value) > cut && std::abs(v.value) > 0.0) {
      fit.used.push_back(v.n);
      points.emplace_back(static_cast<double>(v.n), std::log(std::abs(v.value)));
    }
  }
  if (fit.used.size() < 3) {
    throw Error(ErrorKind::InsufficientData, std::to_string(fit.used.size()) +
                                                 " points above floor " + std::to_string(cut));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double m = static_cast<double>(fit.used.size());
  fit.rate = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.prefactor = std::exp((sy - fit.rate * sx) / m);
  return fit;
}

bool rate_within_bound(const RateFit& fit, double bound_rate, double tol) {
  return fit.rate <= std::log(bound_rate) + tol;
}

}  // namespace toral
