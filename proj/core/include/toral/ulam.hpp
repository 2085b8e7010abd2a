#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "toral/automorphism.hpp"
#include "toral/spectrum.hpp"

namespace toral {

/// Self-map of the unit torus, point in, point out (coordinates in [0,1)).
using TorusMap = std::function<void(std::span<const double>, std::span<double>)>;

TorusMap linear_torus_map(const ToralAutomorphism& t);

/// x -> A x + eps (sin 2 pi x_2, 0) mod 1 for a 2x2 automorphism.
TorusMap perturbed_cat_map(const ToralAutomorphism& t, double eps);

/// Column-stochastic Ulam matrix: entry (i, j) is the fraction of the sample
/// points of cell j that land in cell i. Cells are indexed row-major with
/// the first coordinate most significant.
struct UlamMatrix {
  std::size_t dim_torus = 0;
  std::size_t cells_per_axis = 0;
  Eigen::SparseMatrix<double> matrix;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Requires N >= 2 and the map to be a self-map of T^d. Every cell draws its
/// samples from its own stream derived from (seed, cell), so the matrix does
/// not depend on thread count.
UlamMatrix ulam_discretize(const TorusMap& map, std::size_t dim_torus, std::size_t cells_per_axis,
                           std::size_t samples_per_cell, std::uint64_t seed);

/// Largest `count` eigenvalues by modulus. Dense QR when dim <= dense_cap,
/// restarted Arnoldi otherwise.
std::vector<Complex> ulam_spectrum(const UlamMatrix& u, std::size_t count,
                                   std::size_t dense_cap = 4096);

/// Explicitly restarted Arnoldi for the `count` eigenvalues of largest
/// modulus of a sparse matrix.
std::vector<Complex> arnoldi_eigenvalues(const Eigen::SparseMatrix<double>& a, std::size_t count,
                                         std::size_t krylov_dim = 0, double tol = 1e-10,
                                         std::size_t max_restarts = 300);

/// Counter-based stream: splitmix64 over (seed, stream, position).
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

}  // namespace toral
