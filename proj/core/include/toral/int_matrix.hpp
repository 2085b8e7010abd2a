#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace toral {

/// Dense square matrix over an exact ring, stored row-major.
template <typename T>
class ExactMatrix {
 public:
  ExactMatrix() = default;
  explicit ExactMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t dim() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using IntMatrix = ExactMatrix<mpz_class>;
using RationalMatrix = ExactMatrix<mpq_class>;

/// Builds an IntMatrix from nested rows; throws NotSquare on ragged or
/// rectangular input.
IntMatrix make_int_matrix(const std::vector<std::vector<long long>>& rows);
IntMatrix make_int_matrix(std::initializer_list<std::initializer_list<long long>> rows);
IntMatrix make_int_matrix(const std::vector<std::vector<mpz_class>>& rows);

RationalMatrix to_rational(const IntMatrix& m);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
IntMatrix transpose(const IntMatrix& m);

/// Fraction-free Bareiss elimination; exact.
mpz_class determinant(const IntMatrix& m);
mpq_class determinant(const RationalMatrix& m);

mpq_class trace(const RationalMatrix& m);

/// Inverse of a matrix with determinant +-1. The result is integral.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// All size-l subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t l);

/// l-th compound (matrix of l x l minors), rows and columns indexed by
/// lexicographically ordered subsets. compound(m, 0) is the 1x1 identity.
RationalMatrix compound(const RationalMatrix& m, std::size_t l);

Eigen::MatrixXd to_eigen(const IntMatrix& m);
Eigen::MatrixXd to_eigen(const RationalMatrix& m);

/// Canonical "p/q" rendering used by every serializer.
std::string rational_string(const mpq_class& q);
mpq_class parse_rational(const std::string& text);

}  // namespace toral
