#include "toral/cohomology.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "toral/error.hpp"
#include "toral/polynomial.hpp"

namespace toral {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Complex> exact_matrix_spectrum(const RationalMatrix& m) {
  auto eigs = polynomial_roots(characteristic_polynomial(m));
  std::sort(eigs.begin(), eigs.end(), descending_modulus);
  return eigs;
}

CohomologyAction induced_action(const ToralAutomorphism& t, std::size_t l, double rank_tol) {
  if (l > t.dim()) {
    throw Error(ErrorKind::DegreeOutOfRange,
                "degree " + std::to_string(l) + " outside [0, " + std::to_string(t.dim()) + "]");
  }
  CohomologyAction c;
  c.degree = l;
  c.matrix = compound(to_rational(inverse_matrix(t)), l);
  c.spectrum = exact_matrix_spectrum(c.matrix);
  c.jordan_blocks = jordan_structure(c, rank_tol);
  return c;
}

std::vector<Complex> spectrum_products_oracle(const std::vector<Complex>& eigs, std::size_t l) {
  std::vector<Complex> out;
  for (const auto& subset : index_subsets(eigs.size(), l)) {
    Complex p = 1.0;
    for (auto i : subset) p *= eigs[i];
    out.push_back(p);
  }
  return out;
}

namespace {

using CMatrix = Eigen::MatrixXcd;

std::size_t numeric_rank(const CMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  if (smax == 0.0) return 0;
  const double threshold = tol * smax;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold / 10 && s(i) < threshold * 10) {
      throw Error(ErrorKind::IllConditioned,
                  "singular value " + std::to_string(s(i)) + " within a factor 10 of threshold " +
                      std::to_string(threshold));
    }
    if (s(i) > threshold) ++rank;
  }
  return rank;
}

}  // namespace

std::vector<JordanBlock> jordan_structure(const CohomologyAction& c, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("rank tolerance must be positive");
  std::vector<JordanBlock> blocks;
  if (c.spectrum.empty()) return blocks;

  double max_mod = 0.0;
  for (const auto& mu : c.spectrum) max_mod = std::max(max_mod, std::abs(mu));
  const double radius = std::max(tol, 1e-7 * max_mod);

  const Eigen::MatrixXcd m = to_eigen(c.matrix).cast<Complex>();
  const auto n = static_cast<std::size_t>(m.rows());

  for (const auto& cluster : cluster_values(c.spectrum, radius)) {
    const std::size_t mult = cluster.members.size();
    if (mult == 1) {
      blocks.push_back({cluster.center, 1});
      continue;
    }
    const CMatrix shifted = m - cluster.center * CMatrix::Identity(m.rows(), m.cols());
    // ranks[k] = rank of shifted^k; the number of blocks of size >= k is
    // ranks[k-1] - ranks[k].
    std::vector<std::size_t> ranks{n};
    CMatrix power = CMatrix::Identity(m.rows(), m.cols());
    for (std::size_t k = 1; k <= mult; ++k) {
      power = power * shifted;
      ranks.push_back(numeric_rank(power, tol));
      if (ranks[k] == ranks[k - 1]) break;
    }
    if (n - ranks.back() != mult) {
      throw Error(ErrorKind::IllConditioned,
                  "generalized eigenspace dimension " + std::to_string(n - ranks.back()) +
                      " disagrees with multiplicity " + std::to_string(mult));
    }
    const std::size_t kmax = ranks.size() - 1;
    for (std::size_t k = kmax; k >= 1; --k) {
      const std::size_t at_least_k = ranks[k - 1] - ranks[k];
      const std::size_t at_least_next = k < kmax ? ranks[k] - ranks[k + 1] : 0;
      for (std::size_t b = 0; b < at_least_k - at_least_next; ++b) blocks.push_back({cluster.center, k});
    }
  }
  std::stable_sort(blocks.begin(), blocks.end(), [](const JordanBlock& a, const JordanBlock& b) {
    if (a.eigenvalue != b.eigenvalue) return descending_modulus(a.eigenvalue, b.eigenvalue);
    return a.size > b.size;
  });
  return blocks;
}

mpq_class alternating_trace(const ToralAutomorphism& t) {
  const RationalMatrix inv = to_rational(inverse_matrix(t));
  mpq_class sum = 0;
  for (std::size_t l = 0; l <= t.dim(); ++l) {
    const mpq_class tr = trace(compound(inv, l));
    if (l % 2 == 0) sum += tr;
    else sum -= tr;
  }
  return sum;
}

mpq_class lefschetz_number(const ToralAutomorphism& t) {
  const RationalMatrix inv = to_rational(inverse_matrix(t));
  RationalMatrix diff = RationalMatrix::identity(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j) diff(i, j) -= inv(i, j);
  return determinant(diff);
}

}  // namespace toral
