#include "toral/ulam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace toral {

namespace {

std::uint64_t splitmix(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double wrap_unit(double x) {
  double y = x - std::floor(x);
  return y >= 1.0 ? 0.0 : y;
}

std::vector<double> int_matrix_doubles(const IntMatrix& m) {
  std::vector<double> out;
  for (const auto& x : m.data()) out.push_back(x.get_d());
  return out;
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  state_ = splitmix(s) ^ (stream * 0xd1b54a32d192ed03ULL);
  splitmix(state_);
}

std::uint64_t StreamRng::next() { return splitmix(state_); }

double StreamRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

TorusMap linear_torus_map(const ToralAutomorphism& t) {
  const std::size_t d = t.dim();
  auto a = int_matrix_doubles(t.matrix);
  return [d, a](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += a[i * d + j] * x[j];
      y[i] = wrap_unit(acc);
    }
  };
}

TorusMap perturbed_cat_map(const ToralAutomorphism& t, double eps) {
  if (t.dim() != 2) throw std::invalid_argument("perturbed_cat_map needs a 2x2 automorphism");
  auto a = int_matrix_doubles(t.matrix);
  return [a, eps](std::span<const double> x, std::span<double> y) {
    const double y0 = a[0] * x[0] + a[1] * x[1] + eps * std::sin(2.0 * std::numbers::pi * x[1]);
    const double y1 = a[2] * x[0] + a[3] * x[1];
    y[0] = wrap_unit(y0);
    y[1] = wrap_unit(y1);
  };
}

UlamMatrix ulam_discretize(const TorusMap& map, std::size_t dim_torus, std::size_t cells_per_axis,
                           std::size_t samples_per_cell, std::uint64_t seed) {
  if (cells_per_axis < 2) throw std::invalid_argument("Ulam grid needs at least 2 cells per axis");
  if (samples_per_cell == 0) throw std::invalid_argument("samples_per_cell must be positive");
  const std::size_t n = cells_per_axis;
  std::size_t cells = 1;
  for (std::size_t i = 0; i < dim_torus; ++i) cells *= n;

  // columns[j] holds (row, count) pairs for source cell j.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> columns(cells);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> x(dim_torus), y(dim_torus);
    std::vector<std::size_t> coord(dim_torus), hits;
    for (std::size_t j = begin; j < end; ++j) {
      std::size_t rest = j;
      for (std::size_t i = dim_torus; i-- > 0;) {
        coord[i] = rest % n;
        rest /= n;
      }
      StreamRng rng(seed, j);
      hits.clear();
      for (std::size_t s = 0; s < samples_per_cell; ++s) {
        for (std::size_t i = 0; i < dim_torus; ++i)
          x[i] = (static_cast<double>(coord[i]) + rng.uniform()) / static_cast<double>(n);
        map(x, y);
        std::size_t target = 0;
        for (std::size_t i = 0; i < dim_torus; ++i) {
          auto c = static_cast<std::size_t>(wrap_unit(y[i]) * static_cast<double>(n));
          target = target * n + std::min(c, n - 1);
        }
        hits.push_back(target);
      }
      std::sort(hits.begin(), hits.end());
      auto& col = columns[j];
      for (std::size_t s = 0; s < hits.size();) {
        std::size_t e = s;
        while (e < hits.size() && hits[e] == hits[s]) ++e;
        col.emplace_back(hits[s], e - s);
        s = e;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  if (threads == 1 || cells < 64) {
    work(0, cells);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (cells + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(cells, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<Eigen::Triplet<double>> triplets;
  const double w = 1.0 / static_cast<double>(samples_per_cell);
  for (std::size_t j = 0; j < cells; ++j)
    for (const auto& [row, count] : columns[j])
      triplets.emplace_back(static_cast<int>(row), static_cast<int>(j), static_cast<double>(count) * w);

  UlamMatrix u;
  u.dim_torus = dim_torus;
  u.cells_per_axis = n;
  u.matrix.resize(static_cast<Eigen::Index>(cells), static_cast<Eigen::Index>(cells));
  u.matrix.setFromTriplets(triplets.begin(), triplets.end());
  u.matrix.makeCompressed();
  return u;
}

std::vector<Complex> ulam_spectrum(const UlamMatrix& u, std::size_t count, std::size_t dense_cap) {
  std::vector<Complex> eig;
  if (u.dim() <= dense_cap) {
    Eigen::MatrixXd dense(u.matrix);
    Eigen::EigenSolver<Eigen::MatrixXd> es(dense, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) eig.push_back(es.eigenvalues()[i]);
    std::sort(eig.begin(), eig.end(), descending_modulus);
    if (eig.size() > count) eig.resize(count);
    return eig;
  }
  return arnoldi_eigenvalues(u.matrix, count);
}

std::vector<Complex> arnoldi_eigenvalues(const Eigen::SparseMatrix<double>& a, std::size_t count,
                                         std::size_t krylov_dim, double tol, std::size_t max_restarts) {
  using Eigen::Index;
  const auto n = static_cast<std::size_t>(a.rows());
  if (n == 0 || count == 0) return {};
  count = std::min(count, n);
  std::size_t m = krylov_dim ? krylov_dim : std::max<std::size_t>(2 * count + 20, 40);
  m = std::min(m, n);

  Eigen::VectorXd start(static_cast<Index>(n));
  StreamRng rng(0x5eedULL, 0);
  for (std::size_t i = 0; i < n; ++i) start(static_cast<Index>(i)) = rng.uniform() + 0.5;
  start.normalize();

  std::vector<Complex> best;
  for (std::size_t restart = 0; restart <= max_restarts; ++restart) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(static_cast<Index>(n), static_cast<Index>(m + 1));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Index>(m + 1), static_cast<Index>(m));
    v.col(0) = start;
    std::size_t steps = m;
    for (std::size_t j = 0; j < m; ++j) {
      Eigen::VectorXd w = a * v.col(static_cast<Index>(j));
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i <= j; ++i) {
          const double c = v.col(static_cast<Index>(i)).dot(w);
          h(static_cast<Index>(i), static_cast<Index>(j)) += c;
          w -= c * v.col(static_cast<Index>(i));
        }
      }
      const double norm = w.norm();
      h(static_cast<Index>(j + 1), static_cast<Index>(j)) = norm;
      if (norm < 1e-14) {
        steps = j + 1;
        break;
      }
      v.col(static_cast<Index>(j + 1)) = w / norm;
    }
    const Index k = static_cast<Index>(steps);
    Eigen::EigenSolver<Eigen::MatrixXd> es(h.topLeftCorner(k, k), true);
    std::vector<Index> order(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Index x, Index y) {
      return descending_modulus(es.eigenvalues()[x], es.eigenvalues()[y]);
    });
    const std::size_t want = std::min<std::size_t>(count, static_cast<std::size_t>(k));
    best.clear();
    const double beta = h(k, k - 1);
    bool converged = true;
    Eigen::VectorXd next = Eigen::VectorXd::Zero(static_cast<Index>(n));
    for (std::size_t r = 0; r < want; ++r) {
      const Index idx = order[r];
      const Complex theta = es.eigenvalues()[idx];
      best.push_back(theta);
      const Eigen::VectorXcd y = es.eigenvectors().col(idx);
      const double resid = std::abs(beta) * std::abs(y(k - 1));
      if (resid > tol * std::max(1.0, std::abs(theta))) converged = false;
      const Eigen::VectorXcd ritz = v.leftCols(k).cast<Complex>() * y;
      next += ritz.real() + ritz.imag();
    }
    if (converged || steps < m || restart == max_restarts) break;
    if (next.norm() == 0.0) break;
    start = next.normalized();
  }
  std::sort(best.begin(), best.end(), descending_modulus);
  return best;
}

}  // namespace toral
