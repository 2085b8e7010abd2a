#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "toral/cohomology.hpp"
#include "toral/error.hpp"
#include "toral/polynomial.hpp"

using namespace toral;

namespace {

const IntMatrix kCat = make_int_matrix({{2, 1}, {1, 1}});

RationalMatrix poly_at(const RationalPolynomial& p, const RationalMatrix& m) {
  const std::size_t d = m.dim();
  RationalMatrix acc(d), power = RationalMatrix::identity(d);
  for (const auto& c : p.coeffs()) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) acc(i, j) += c * power(i, j);
    power = multiply(power, m);
  }
  return acc;
}

}  // namespace

TEST_CASE("degree one acts by the inverse matrix") {
  const auto t = validate_automorphism(kCat);
  const auto h1 = induced_action(t, 1);
  CHECK(h1.matrix == to_rational(make_int_matrix({{1, -1}, {-1, 2}})));
  CHECK(h1.dim() == 2);
  const auto h0 = induced_action(t, 0);
  CHECK(h0.matrix == RationalMatrix::identity(1));
  const auto h2 = induced_action(t, 2);
  CHECK(h2.matrix(0, 0) == 1);
}

TEST_CASE("degree out of range") {
  const auto t = validate_automorphism(kCat);
  try {
    induced_action(t, 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeOutOfRange);
  }
}

TEST_CASE("compound spectra match the product oracle on a random corpus") {
  for (const auto& t : testing::hyperbolic_corpus(120, 2, 5, 77)) {
    std::vector<Complex> inv;
    for (const auto& mu : t.eigenvalues) inv.push_back(1.0 / mu);
    for (std::size_t l = 0; l <= t.dim(); ++l) {
      const auto c = induced_action(t, l);
      CHECK(c.dim() == binomial(t.dim(), l));
      CHECK(c.spectrum.size() == c.dim());
      CHECK(matching_distance(c.spectrum, spectrum_products_oracle(inv, l)) < 1e-8);
      CHECK(std::is_sorted(c.spectrum.begin(), c.spectrum.end(), descending_modulus));
    }
  }
}

TEST_CASE("Lefschetz number equals the alternating trace and the Leibniz determinant") {
  for (const auto& t : testing::hyperbolic_corpus(120, 2, 5, 78)) {
    const IntMatrix inv = unimodular_inverse(t.matrix);
    IntMatrix diff = IntMatrix::identity(t.dim());
    for (std::size_t i = 0; i < t.dim(); ++i)
      for (std::size_t j = 0; j < t.dim(); ++j) diff(i, j) -= inv(i, j);
    const mpq_class expected(oracle::leibniz_determinant(diff));
    CHECK(lefschetz_number(t) == expected);
    mpq_class alternating = 0;
    for (std::size_t l = 0; l <= t.dim(); ++l) {
      const auto c = induced_action(t, l);
      const mpq_class tr = trace(c.matrix);
      alternating += (l % 2 ? -tr : tr);
    }
    CHECK(alternating == expected);
    CHECK(alternating_trace(t) == expected);
    // A hyperbolic map has |det(I - A)| isolated fixed points.
    CHECK(expected != 0);
  }
}

TEST_CASE("Poincare duality of degree spectra") {
  for (const auto& t : testing::hyperbolic_corpus(100, 2, 5, 79)) {
    const double det = static_cast<double>(t.determinant);
    for (std::size_t l = 0; l <= t.dim(); ++l) {
      const auto low = induced_action(t, l).spectrum;
      const auto high = induced_action(t, t.dim() - l).spectrum;
      std::vector<Complex> dual;
      for (const auto& mu : low) dual.push_back(det / mu);
      CHECK(matching_distance(high, dual) < 1e-8);
    }
  }
}

TEST_CASE("Jordan structure against exact rank computations") {
  SUBCASE("semisimple repeated eigenvalue") {
    const IntMatrix sum = oracle::direct_sum(kCat, kCat);
    const auto t = validate_automorphism(sum);
    const auto c = induced_action(t, 2);
    // (M - I) has rank 6 - 4 when 1 is a semisimple eigenvalue of multiplicity 4.
    RationalMatrix shifted = c.matrix;
    for (std::size_t i = 0; i < shifted.dim(); ++i) shifted(i, i) -= 1;
    CHECK(oracle::exact_rank(shifted) == 2);
    std::size_t ones = 0;
    for (const auto& b : c.jordan_blocks) {
      if (std::abs(b.eigenvalue - Complex(1.0)) < 1e-9) {
        CHECK(b.size == 1);
        ++ones;
      }
    }
    CHECK(ones == 4);
  }
  SUBCASE("nontrivial blocks") {
    // [[C, I], [0, C]] has a single 2x2 block for each eigenvalue of C.
    IntMatrix m = oracle::direct_sum(kCat, kCat);
    m(0, 2) = 1;
    m(1, 3) = 1;
    const auto t = validate_automorphism(m);
    const auto c = induced_action(t, 1);
    const auto p = characteristic_polynomial(to_rational(kCat));
    const RationalMatrix once = poly_at(p, c.matrix);
    CHECK(oracle::exact_rank(once) == 2);
    CHECK(oracle::exact_rank(multiply(once, once)) == 0);
    REQUIRE(c.jordan_blocks.size() == 2);
    for (const auto& b : c.jordan_blocks) CHECK(b.size == 2);
    std::size_t total = 0;
    for (const auto& b : jordan_structure(induced_action(t, 2))) total += b.size;
    CHECK(total == 6);
  }
  SUBCASE("block sizes always sum to the dimension") {
    for (const auto& t : testing::hyperbolic_corpus(40, 2, 4, 80)) {
      for (std::size_t l = 0; l <= t.dim(); ++l) {
        const auto c = induced_action(t, l);
        std::size_t total = 0;
        for (const auto& b : c.jordan_blocks) total += b.size;
        CHECK(total == c.dim());
      }
    }
  }
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(6, 0) == 1);
  CHECK(binomial(6, 6) == 1);
  CHECK(binomial(3, 4) == 0);
}
