#pragma once

// Test-only reference computations. None of these share code paths with the
// library routines they check.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "toral/int_matrix.hpp"
#include "toral/ulam.hpp"

namespace toral::oracle {

/// Leibniz expansion over all permutations.
inline mpz_class leibniz_determinant(const IntMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    mpz_class term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Rank over Q by row reduction.
inline std::size_t exact_rank(RationalMatrix a) {
  const std::size_t n = a.dim();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t p = rank;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(rank, j), a(p, j));
    for (std::size_t i = 0; i < n; ++i) {
      if (i == rank || a(i, col) == 0) continue;
      const mpq_class f = a(i, col) / a(rank, col);
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

/// Real root of a monotone function on [lo, hi] by bisection.
template <typename F>
long double bisect(F f, long double lo, long double hi) {
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    if ((f(lo) < 0) == (f(mid) < 0)) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2;
}

/// The plastic number: the real root of x^3 - x - 1.
inline double plastic_number() {
  return static_cast<double>(bisect([](long double x) { return x * x * x - x - 1; }, 1.0L, 2.0L));
}

inline double golden_square() { return (3.0 + std::sqrt(5.0)) / 2.0; }

/// Eigenvalues by a dense floating eigensolve of the matrix itself.
inline std::vector<std::complex<double>> dense_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

/// Block diagonal sum.
inline IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) m(a.dim() + i, a.dim() + j) = b(i, j);
  return m;
}

/// Exact-grid quadrature of int phi(x) psi(A^n x) dx - int phi int psi on the
/// M^d grid x = i/M. A^n x mod 1 stays on the grid, so the only error is
/// aliasing, which vanishes when every frequency involved is below M/2.
template <typename Phi, typename Psi>
std::complex<double> grid_correlation(const IntMatrix& a, Phi phi, Psi psi, std::size_t n, std::int64_t grid) {
  const std::size_t d = a.dim();
  std::vector<std::int64_t> am;
  for (const auto& v : a.data()) am.push_back(v.get_si());
  std::size_t points = 1;
  for (std::size_t i = 0; i < d; ++i) points *= static_cast<std::size_t>(grid);
  std::complex<double> sum_prod = 0, sum_phi = 0, sum_psi = 0;
  std::vector<std::int64_t> idx(d), img(d), tmp(d);
  std::vector<double> x(d), y(d);
  for (std::size_t p = 0; p < points; ++p) {
    std::size_t rest = p;
    for (std::size_t i = 0; i < d; ++i) {
      idx[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(grid));
      rest /= static_cast<std::size_t>(grid);
    }
    img = idx;
    for (std::size_t step = 0; step < n; ++step) {
      for (std::size_t i = 0; i < d; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < d; ++j) acc += am[i * d + j] * img[j];
        tmp[i] = ((acc % grid) + grid) % grid;
      }
      img = tmp;
    }
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = static_cast<double>(idx[i]) / static_cast<double>(grid);
      y[i] = static_cast<double>(img[i]) / static_cast<double>(grid);
    }
    const std::complex<double> f = phi(x);
    const std::complex<double> g = psi(y);
    sum_prod += f * g;
    sum_phi += f;
    sum_psi += g;
  }
  const double np = static_cast<double>(points);
  return sum_prod / np - (sum_phi / np) * (sum_psi / np);
}

/// Plain Monte-Carlo integral of phi(x) psi(A^n x) with its own generator.
template <typename Phi, typename Psi>
std::complex<double> plain_mc_correlation(const TorusMap& map, std::size_t d, Phi phi, Psi psi,
                                          std::size_t n, std::size_t samples, std::uint64_t seed) {
  StreamRng rng(seed ^ 0xabcdefULL, 99);
  std::complex<double> sp = 0, sf = 0, sg = 0;
  std::vector<double> x(d), y(d), z(d);
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& v : x) v = rng.uniform();
    y = x;
    for (std::size_t k = 0; k < n; ++k) {
      map(y, z);
      std::swap(y, z);
    }
    const auto f = phi(x);
    const auto g = psi(y);
    sp += f * g, sf += f, sg += g;
  }
  const double ns = static_cast<double>(samples);
  return sp / ns - (sf / ns) * (sg / ns);
}

}  // namespace toral::oracle
