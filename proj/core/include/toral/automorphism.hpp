#pragma once

#include <cstddef>
#include <vector>

#include "toral/int_matrix.hpp"
#include "toral/spectrum.hpp"

namespace toral {

inline constexpr double kDefaultUnitTolerance = 1e-8;

/// A hyperbolic unimodular integer matrix together with its Anosov data.
/// Only validate_automorphism() produces instances, so every field agrees
/// with the matrix.
struct ToralAutomorphism {
  IntMatrix matrix;
  int determinant = 1;               // exactly +1 or -1
  std::vector<Complex> eigenvalues;  // ascending modulus, then argument
  std::size_t stable_dim = 0;
  std::size_t unstable_dim = 0;
  double lambda = 0.0;        // minimal expansion factor, > 1
  double entropy = 0.0;       // topological entropy, natural log
  bool orientation_reversing = false;
  double unit_tolerance = kDefaultUnitTolerance;

  std::size_t dim() const noexcept { return matrix.dim(); }

  friend bool operator==(const ToralAutomorphism&, const ToralAutomorphism&) = default;
};

/// Exact determinant check, then eigenvalues from the exact characteristic
/// polynomial. Throws NotSquare, NotUnimodular or NotHyperbolic; the
/// NotHyperbolic message carries the offending modulus.
ToralAutomorphism validate_automorphism(const IntMatrix& m, double tol = kDefaultUnitTolerance);

/// Sum of log|mu| over expanding eigenvalues.
double entropy(const ToralAutomorphism& t);

/// Sum of log|mu| over contracting eigenvalues, negated. Agrees with
/// entropy() by unimodularity.
double contracting_entropy(const ToralAutomorphism& t);

/// The square T^2, used to remove orientation reversal.
ToralAutomorphism squared(const ToralAutomorphism& t);

/// The inverse automorphism.
ToralAutomorphism inverted(const ToralAutomorphism& t);

/// Eigenvalues of A^{-1}, i.e. 1/mu, in the order of t.eigenvalues.
std::vector<Complex> inverse_eigenvalues(const ToralAutomorphism& t);

/// Exact integer inverse of the defining matrix.
IntMatrix inverse_matrix(const ToralAutomorphism& t);

}  // namespace toral
