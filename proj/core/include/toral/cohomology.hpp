#pragma once

#include <cstddef>
#include <vector>

#include "toral/automorphism.hpp"
#include "toral/int_matrix.hpp"
#include "toral/spectrum.hpp"

namespace toral {

inline constexpr double kDefaultRankTolerance = 1e-9;

struct JordanBlock {
  Complex eigenvalue;
  std::size_t size = 1;

  friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

/// Action of the pushforward on H^l(T^d): the l-th compound of A^{-1} in the
/// lexicographic basis of dx_I, with its spectrum and Jordan structure.
struct CohomologyAction {
  std::size_t degree = 0;
  RationalMatrix matrix;
  std::vector<Complex> spectrum;  // descending modulus, with multiplicity
  std::vector<JordanBlock> jordan_blocks;

  std::size_t dim() const noexcept { return matrix.dim(); }

  friend bool operator==(const CohomologyAction&, const CohomologyAction&) = default;
};

/// Throws DegreeOutOfRange unless 0 <= l <= d. Jordan blocks are filled with
/// jordan_structure(., rank_tol).
CohomologyAction induced_action(const ToralAutomorphism& t, std::size_t l,
                                double rank_tol = kDefaultRankTolerance);

/// All C(d,l) products of eigenvalues over index subsets of size l.
std::vector<Complex> spectrum_products_oracle(const std::vector<Complex>& eigs, std::size_t l);

/// Eigenvalues of an exact rational matrix, via its exact characteristic
/// polynomial; repeated by algebraic multiplicity.
std::vector<Complex> exact_matrix_spectrum(const RationalMatrix& m);

/// Block sizes from ranks of (M - mu I)^k. Eigenvalues are clustered within
/// max(tol, 1e-7 * max|mu|). Throws IllConditioned when a singular value lies
/// within a factor 10 of the rank threshold.
std::vector<JordanBlock> jordan_structure(const CohomologyAction& c, double tol = kDefaultRankTolerance);

/// det(I - A^{-1}) and the alternating trace sum over all degrees, exactly.
mpq_class lefschetz_number(const ToralAutomorphism& t);
mpq_class alternating_trace(const ToralAutomorphism& t);

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace toral
