#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "toral/int_matrix.hpp"

namespace toral {

/// Univariate polynomial over Q. coeffs[i] multiplies x^i; the leading
/// coefficient is never zero except for the zero polynomial (empty).
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<mpq_class> coeffs);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }
  const mpq_class& leading() const { return coeffs_.back(); }

  mpq_class operator()(const mpq_class& x) const;
  std::complex<long double> evaluate(std::complex<long double> x) const;

  RationalPolynomial derivative() const;
  RationalPolynomial monic() const;

  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b);
/// Monic gcd.
RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b);

struct SquarefreeFactor {
  RationalPolynomial factor;  // monic, squarefree, pairwise coprime with siblings
  int multiplicity;
};

/// Yun's algorithm: p = lc * prod factor_i^multiplicity_i.
std::vector<SquarefreeFactor> squarefree_decomposition(const RationalPolynomial& p);

/// det(xI - M), computed exactly (Faddeev-LeVerrier on the integer matrix
/// obtained by clearing denominators).
RationalPolynomial characteristic_polynomial(const RationalMatrix& m);
RationalPolynomial characteristic_polynomial(const IntMatrix& m);

/// Roots of a squarefree polynomial: companion-matrix eigensolve followed by
/// Newton polishing on the exact coefficients in extended precision.
std::vector<std::complex<double>> squarefree_roots(const RationalPolynomial& p);

/// All roots repeated by algebraic multiplicity.
std::vector<std::complex<double>> polynomial_roots(const RationalPolynomial& p);

}  // namespace toral
