#include "toral/int_matrix.hpp"

#include <stdexcept>
#include <utility>

#include "toral/error.hpp"

namespace toral {

namespace {

template <typename Row>
void require_square(const std::vector<Row>& rows) {
  if (rows.empty()) throw Error(ErrorKind::NotSquare, "empty matrix");
  for (const auto& r : rows) {
    if (r.size() != rows.size()) {
      throw Error(ErrorKind::NotSquare, "expected " + std::to_string(rows.size()) +
                                            " entries per row, got " + std::to_string(r.size()));
    }
  }
}

template <typename T>
ExactMatrix<T> multiply_impl(const ExactMatrix<T>& a, const ExactMatrix<T>& b) {
  const std::size_t n = a.dim();
  ExactMatrix<T> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

void next_subset(std::vector<std::size_t>& s, std::size_t n, bool& done) {
  const std::size_t l = s.size();
  std::size_t i = l;
  while (i > 0) {
    --i;
    if (s[i] < n - l + i) {
      ++s[i];
      for (std::size_t j = i + 1; j < l; ++j) s[j] = s[j - 1] + 1;
      return;
    }
  }
  done = true;
}

}  // namespace

IntMatrix make_int_matrix(const std::vector<std::vector<mpz_class>>& rows) {
  require_square(rows);
  IntMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  return m;
}

IntMatrix make_int_matrix(const std::vector<std::vector<long long>>& rows) {
  require_square(rows);
  IntMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = mpz_class(std::to_string(rows[i][j]));
  return m;
}

IntMatrix make_int_matrix(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<long long>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return make_int_matrix(v);
}

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix q(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) q(i, j) = mpq_class(m(i, j));
  return q;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) { return multiply_impl(a, b); }
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  return multiply_impl(a, b);
}

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) t(j, i) = m(i, j);
  return t;
}

mpz_class determinant(const IntMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return 1;
  IntMatrix a = m;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

mpq_class determinant(const RationalMatrix& m) {
  const std::size_t n = m.dim();
  RationalMatrix a = m;
  mpq_class det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      mpq_class f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

mpq_class trace(const RationalMatrix& m) {
  mpq_class t = 0;
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const std::size_t n = m.dim();
  const mpz_class det = determinant(m);
  if (det != 1 && det != -1) {
    throw Error(ErrorKind::NotUnimodular, "determinant " + det.get_str());
  }
  // Gauss-Jordan over Q on [m | I]; the result is integral since det = +-1.
  RationalMatrix a = to_rational(m);
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (a(p, k) == 0) ++p;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    }
    const mpq_class pivot = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const mpq_class f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (inv(i, j).get_den() != 1) throw std::logic_error("unimodular inverse is not integral");
      out(i, j) = inv(i, j).get_num();
    }
  return out;
}

std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t l) {
  std::vector<std::vector<std::size_t>> out;
  if (l > n) return out;
  std::vector<std::size_t> s(l);
  for (std::size_t i = 0; i < l; ++i) s[i] = i;
  bool done = false;
  while (!done) {
    out.push_back(s);
    if (l == 0) break;
    next_subset(s, n, done);
  }
  return out;
}

RationalMatrix compound(const RationalMatrix& m, std::size_t l) {
  const auto subsets = index_subsets(m.dim(), l);
  RationalMatrix c(subsets.size());
  RationalMatrix minor(l);
  for (std::size_t r = 0; r < subsets.size(); ++r) {
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) minor(i, j) = m(subsets[r][i], subsets[s][j]);
      c(r, s) = determinant(minor);
    }
  }
  return c;
}

Eigen::MatrixXd to_eigen(const IntMatrix& m) {
  Eigen::MatrixXd e(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) e(i, j) = m(i, j).get_d();
  return e;
}

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
  Eigen::MatrixXd e(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) e(i, j) = m(i, j).get_d();
  return e;
}

std::string rational_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorKind::ParseError, "not a rational: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace toral
