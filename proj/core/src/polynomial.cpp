#include "toral/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace toral {

using cld = std::complex<long double>;

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class RationalPolynomial::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<long double> RationalPolynomial::evaluate(std::complex<long double> x) const {
  cld acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + static_cast<long double>(it->get_d());
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpq_class> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::monic() const {
  if (is_zero()) return {};
  std::vector<mpq_class> c = coeffs_;
  const mpq_class lc = c.back();
  for (auto& x : c) x /= lc;
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<mpq_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return RationalPolynomial(std::move(c));
}

std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  if (a.degree() < b.degree()) return {RationalPolynomial{}, a};
  std::vector<mpq_class> rem = a.coeffs();
  std::vector<mpq_class> quot(a.degree() - b.degree() + 1);
  const auto& bc = b.coeffs();
  const mpq_class lc = b.leading();
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    const mpq_class f = rem[i + b.degree()] / lc;
    quot[i] = f;
    if (f == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) rem[i + j] -= f * bc[j];
  }
  rem.resize(b.degree());
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b) {
  RationalPolynomial x = a.monic();
  RationalPolynomial y = b.monic();
  while (!y.is_zero()) {
    RationalPolynomial r = divmod(x, y).second.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

std::vector<SquarefreeFactor> squarefree_decomposition(const RationalPolynomial& p) {
  std::vector<SquarefreeFactor> out;
  if (p.degree() < 1) return out;
  const RationalPolynomial f = p.monic();
  const RationalPolynomial df = f.derivative();
  const RationalPolynomial a0 = gcd(f, df);
  RationalPolynomial b = divmod(f, a0).first;
  RationalPolynomial c = divmod(df, a0).first;
  RationalPolynomial d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RationalPolynomial a = gcd(b, d);
    RationalPolynomial nb = divmod(b, a).first;
    RationalPolynomial nc = divmod(d, a).first;
    if (a.degree() > 0) out.push_back({a, i});
    b = std::move(nb);
    d = nc - b.derivative();
    ++i;
  }
  return out;
}

namespace {

// Faddeev-LeVerrier over Z: every intermediate is integral and the division
// by k is exact.
std::vector<mpz_class> integer_charpoly(const IntMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<mpz_class> c(n + 1);
  c[n] = 1;
  IntMatrix m(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = multiply(a, m);
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = std::move(next);
    mpz_class tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) tr += a(i, j) * m(j, i);
    mpz_class q;
    mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
    c[n - k] = -q;
  }
  return c;
}

}  // namespace

RationalPolynomial characteristic_polynomial(const IntMatrix& m) {
  auto c = integer_charpoly(m);
  std::vector<mpq_class> q(c.begin(), c.end());
  return RationalPolynomial(std::move(q));
}

RationalPolynomial characteristic_polynomial(const RationalMatrix& m) {
  const std::size_t n = m.dim();
  mpz_class denom = 1;
  for (const auto& x : m.data()) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), x.get_den_mpz_t());
  IntMatrix scaled(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class v = m(i, j) * denom;
      scaled(i, j) = v.get_num();
    }
  // det(xI - N/D) = D^{-n} det(DxI - N)
  const auto c = integer_charpoly(scaled);
  std::vector<mpq_class> q(n + 1);
  mpz_class dpow = 1;  // D^i
  mpz_class dn;
  mpz_pow_ui(dn.get_mpz_t(), denom.get_mpz_t(), n);
  for (std::size_t i = 0; i <= n; ++i) {
    q[i] = mpq_class(c[i] * dpow, dn);
    q[i].canonicalize();
    dpow *= denom;
  }
  return RationalPolynomial(std::move(q));
}

namespace {

std::vector<std::complex<double>> companion_roots(const std::vector<long double>& monic) {
  const std::size_t n = monic.size() - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) comp(i, n - 1) = -static_cast<double>(monic[i]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> roots(n);
  for (std::size_t i = 0; i < n; ++i) roots[i] = es.eigenvalues()[static_cast<Eigen::Index>(i)];
  return roots;
}

// Aberth-Ehrlich refinement: simultaneous Newton with repulsion, so two
// starting points cannot collapse onto the same root.
void aberth_polish(const std::vector<long double>& monic, std::vector<cld>& z) {
  const std::size_t n = z.size();
  constexpr long double eps = std::numeric_limits<long double>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    long double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cld p = 0;
      cld dp = 0;
      for (std::size_t k = monic.size(); k-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i] + monic[k];
      }
      if (p == cld(0)) continue;
      const cld ratio = p / dp;
      cld repel = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) repel += cld(1) / (z[i] - z[j]);
      const cld step = ratio / (cld(1) - ratio * repel);
      if (!std::isfinite(std::abs(step))) continue;
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / std::max<long double>(1, std::abs(z[i])));
    }
    if (worst < 4 * eps) break;
  }
}

}  // namespace

std::vector<std::complex<double>> squarefree_roots(const RationalPolynomial& p) {
  const int n = p.degree();
  if (n < 1) return {};
  if (n == 1) {
    const mpq_class r = -p.coeffs()[0] / p.coeffs()[1];
    return {std::complex<double>(r.get_d(), 0.0)};
  }
  const RationalPolynomial m = p.monic();
  std::vector<long double> coeffs;
  for (const auto& c : m.coeffs()) {
    // Two-part conversion keeps more than double precision of the exact value.
    const double hi = c.get_d();
    const mpq_class rest = c - mpq_class(hi);
    coeffs.push_back(static_cast<long double>(hi) + static_cast<long double>(rest.get_d()));
  }
  const auto start = companion_roots(coeffs);
  std::vector<cld> z(start.begin(), start.end());
  aberth_polish(coeffs, z);

  std::vector<std::complex<double>> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = {static_cast<double>(z[i].real()),
                                                      static_cast<double>(z[i].imag())};
  // Real coefficients: a root without a distinct conjugate partner is real,
  // and partners are made exactly conjugate.
  std::vector<bool> done(out.size(), false);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (done[i]) continue;
    done[i] = true;
    const std::complex<double> target = std::conj(out[i]);
    std::size_t best = out.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (done[j]) continue;
      const double d = std::abs(out[j] - target);
      if (d < best_d) best_d = d, best = j;
    }
    const double self = std::abs(out[i].imag()) * 2;
    if (best == out.size() || self <= best_d) {
      out[i].imag(0.0);
    } else {
      done[best] = true;
      const double re = 0.5 * (out[i].real() + out[best].real());
      const double im = 0.5 * (std::abs(out[i].imag()) + std::abs(out[best].imag()));
      out[i] = {re, out[i].imag() < 0 ? -im : im};
      out[best] = std::conj(out[i]);
    }
  }
  return out;
}

std::vector<std::complex<double>> polynomial_roots(const RationalPolynomial& p) {
  std::vector<std::complex<double>> out;
  for (const auto& [factor, mult] : squarefree_decomposition(p)) {
    for (const auto& r : squarefree_roots(factor))
      for (int k = 0; k < mult; ++k) out.push_back(r);
  }
  return out;
}

}  // namespace toral
