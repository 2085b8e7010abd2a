#include "toral/automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "toral/error.hpp"
#include "toral/polynomial.hpp"

namespace toral {

ToralAutomorphism validate_automorphism(const IntMatrix& m, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("unit-circle tolerance must be positive");
  if (m.dim() == 0) throw Error(ErrorKind::NotSquare, "empty matrix");

  const mpz_class det = determinant(m);
  if (det != 1 && det != -1) throw Error(ErrorKind::NotUnimodular, "determinant " + det.get_str());

  ToralAutomorphism t;
  t.matrix = m;
  t.determinant = static_cast<int>(det.get_si());
  t.unit_tolerance = tol;
  t.eigenvalues = polynomial_roots(characteristic_polynomial(m));
  std::sort(t.eigenvalues.begin(), t.eigenvalues.end(), ascending_modulus);

  double min_expanding = std::numeric_limits<double>::infinity();
  double min_inv_contracting = std::numeric_limits<double>::infinity();
  for (const auto& mu : t.eigenvalues) {
    const double r = std::abs(mu);
    if (std::abs(r - 1.0) < tol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "eigenvalue " << mu.real() << (mu.imag() < 0 ? "-" : "+") << std::abs(mu.imag())
          << "i has modulus " << r << " within " << tol << " of 1";
      throw Error(ErrorKind::NotHyperbolic, msg.str());
    }
    if (r > 1.0) {
      ++t.unstable_dim;
      t.entropy += std::log(r);
      min_expanding = std::min(min_expanding, r);
    } else {
      ++t.stable_dim;
      min_inv_contracting = std::min(min_inv_contracting, 1.0 / r);
    }
    if (mu.imag() == 0.0 && mu.real() < 0.0) t.orientation_reversing = true;
  }
  if (t.stable_dim == 0 || t.unstable_dim == 0) {
    // Unreachable for |det| = 1 once the unit circle is excluded.
    throw Error(ErrorKind::NotHyperbolic, "no stable or no unstable direction");
  }
  t.lambda = std::min(min_expanding, min_inv_contracting);
  if (t.determinant < 0) t.orientation_reversing = true;
  return t;
}

double entropy(const ToralAutomorphism& t) {
  double h = 0.0;
  for (const auto& mu : t.eigenvalues)
    if (std::abs(mu) > 1.0) h += std::log(std::abs(mu));
  return h;
}

double contracting_entropy(const ToralAutomorphism& t) {
  double h = 0.0;
  for (const auto& mu : t.eigenvalues)
    if (std::abs(mu) < 1.0) h -= std::log(std::abs(mu));
  return h;
}

ToralAutomorphism squared(const ToralAutomorphism& t) {
  return validate_automorphism(multiply(t.matrix, t.matrix), t.unit_tolerance);
}

std::vector<Complex> inverse_eigenvalues(const ToralAutomorphism& t) {
  std::vector<Complex> out;
  for (const auto& mu : t.eigenvalues) out.push_back(1.0 / mu);
  return out;
}

IntMatrix inverse_matrix(const ToralAutomorphism& t) { return unimodular_inverse(t.matrix); }

ToralAutomorphism inverted(const ToralAutomorphism& t) {
  return validate_automorphism(inverse_matrix(t), t.unit_tolerance);
}

}  // namespace toral
