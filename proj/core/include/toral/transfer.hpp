#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "toral/automorphism.hpp"
#include "toral/spectrum.hpp"

namespace toral {

inline constexpr std::size_t kDefaultNonzeroCap = 1'000'000;
inline constexpr std::size_t kDenseEigenCap = 4096;
inline constexpr double kDefaultSpectrumFloor = 1e-10;

/// Fourier truncation of the pushforward f_* h = h o f^{-1} on modes with
/// |k|_inf <= cutoff. For a linear map every column has at most one unit
/// entry, so the matrix is stored as the image index of each column.
struct OperatorTruncation {
  std::size_t dim_torus = 0;
  int cutoff = 0;
  std::size_t dim = 0;                // (2K+1)^d
  std::vector<std::int64_t> image;    // image[col] = row, or -1 when the mode escapes
  std::size_t nilpotency_index = 0;   // steps until every nonzero mode has escaped
  std::vector<Complex> spectrum;      // above kDefaultSpectrumFloor, descending

  std::size_t nonzeros() const;
  std::size_t zero_mode_index() const;
  Eigen::MatrixXd dense() const;
};

/// The integer matrix acting on frequency vectors under h -> h o f^{-1},
/// i.e. A^{-T}.
IntMatrix pushforward_mode_map(const ToralAutomorphism& t);

/// The integer matrix acting on frequency vectors under h -> h o f, i.e. A^T.
IntMatrix koopman_mode_map(const ToralAutomorphism& t);

/// Throws CapExceeded when (2K+1)^d exceeds `cap`, and for K < 1.
OperatorTruncation pushforward_matrix(const ToralAutomorphism& t, int cutoff,
                                      std::size_t cap = kDefaultNonzeroCap);

std::vector<std::int64_t> mode_vector(const OperatorTruncation& o, std::size_t index);
std::size_t mode_index(const OperatorTruncation& o, const std::vector<std::int64_t>& k);

enum class SpectrumMethod { Structural, Dense };

/// Eigenvalues with modulus > floor, descending. The structural route reads
/// them off the cycles of the mode graph (a length-p cycle contributes the
/// p-th roots of unity, everything else is nilpotent). The dense route is
/// limited to dim <= kDenseEigenCap.
std::vector<Complex> truncated_spectrum(const OperatorTruncation& o,
                                        double floor = kDefaultSpectrumFloor,
                                        SpectrumMethod method = SpectrumMethod::Structural);

/// True when no nonzero mode lies on a cycle of the truncated mode graph.
bool mode_graph_acyclic(const OperatorTruncation& o);

/// Coordinate text: "rows cols nnz" header, then "row col re im" per entry.
void write_coordinate(std::ostream& out, const OperatorTruncation& o);

}  // namespace toral
