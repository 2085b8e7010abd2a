#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "toral/bounds.hpp"
#include "toral/error.hpp"

using namespace toral;

namespace {

const IntMatrix kCat = make_int_matrix({{2, 1}, {1, 1}});
const IntMatrix kPlastic = make_int_matrix({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});

}  // namespace

TEST_CASE("cat map resonance report") {
  const double g = oracle::golden_square();
  const auto t = validate_automorphism(kCat);
  const auto r = resonance_report(t);
  CHECK(r.h_top == doctest::Approx(std::log(g)).epsilon(1e-14));
  CHECK(r.lambda == doctest::Approx(g).epsilon(1e-14));
  CHECK(r.annulus_inner == doctest::Approx(1.0).epsilon(1e-14));
  REQUIRE(r.resonances.size() == 1);
  CHECK(std::abs(r.resonances[0].value - Complex(g)) < 1e-12);
  CHECK(r.resonances[0].jordan_size == 1);
  CHECK(r.nu == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.decay_rate_bound == doctest::Approx(1.0 / g).epsilon(1e-14));
  REQUIRE(r.rescaled.size() == 1);
  CHECK(std::abs(r.rescaled[0] - Complex(1.0)) < 1e-12);
}

TEST_CASE("plastic map resonance report") {
  const double rho = oracle::plastic_number();
  const double small = 1.0 / std::sqrt(rho);  // modulus of the complex pair
  const auto t = validate_automorphism(kPlastic);
  const auto r = resonance_report(t);
  CHECK(r.h_top == doctest::Approx(std::log(rho)).epsilon(1e-13));
  CHECK(r.lambda == doctest::Approx(1.0 / small).epsilon(1e-13));
  CHECK(r.annulus_inner == doctest::Approx(rho * small).epsilon(1e-13));
  CHECK(r.second_modulus == doctest::Approx(small).epsilon(1e-13));
  CHECK(r.second_modulus < r.annulus_inner);
  CHECK(r.resonances.size() == 1);
  const auto gap = toral_gap_check(t);
  CHECK(gap.passes);
  CHECK(gap.strict_gap);
  CHECK(gap.below_inner);
}

TEST_CASE("direct sum of cat maps keeps only the leading resonance") {
  const double g = oracle::golden_square();
  const auto t = validate_automorphism(oracle::direct_sum(kCat, kCat));
  const auto r = resonance_report(t);
  CHECK(r.h_top == doctest::Approx(2 * std::log(g)));
  CHECK(r.annulus_inner == doctest::Approx(g));
  REQUIRE(r.resonances.size() == 1);
  CHECK(std::abs(r.resonances[0].value - Complex(g * g)) < 1e-10);
  CHECK(r.second_modulus == doctest::Approx(1.0));
  CHECK(r.nu == doctest::Approx(g));
  CHECK(r.decay_rate_bound == doctest::Approx(1.0 / g));
}

TEST_CASE("threshold option widens the reported set") {
  const auto t = validate_automorphism(oracle::direct_sum(kCat, kCat));
  ResonanceOptions opts;
  opts.threshold = 0.5;
  const auto r = resonance_report(t, opts);
  // gamma^2 plus four copies of 1.
  std::size_t count = 0;
  for (const auto& res : r.resonances) count += res.jordan_size;
  CHECK(count == 5);
}

TEST_CASE("Jordan sizes flow into the asymptotic terms") {
  // [[C, I], [0, C]]: on the second exterior power the eigenvalue 1 carries
  // blocks of sizes 3 and 1.
  IntMatrix m = oracle::direct_sum(kCat, kCat);
  m(0, 2) = 1;
  m(1, 3) = 1;
  const auto t = validate_automorphism(m);
  ResonanceOptions opts;
  opts.threshold = 0.5;
  const auto r = resonance_report(t, opts);
  std::vector<std::size_t> unit_sizes;
  for (std::size_t i = 0; i < r.resonances.size(); ++i) {
    CHECK(r.asymptotics_terms[i].max_power + 1 == r.resonances[i].jordan_size);
    if (std::abs(r.resonances[i].value - Complex(1.0)) < 1e-6)
      unit_sizes.push_back(r.resonances[i].jordan_size);
  }
  std::sort(unit_sizes.begin(), unit_sizes.end());
  CHECK(unit_sizes == std::vector<std::size_t>{1, 3});
}

TEST_CASE("degree bounds hold on a random corpus") {
  const auto corpus = testing::hyperbolic_corpus(500, 2, 6, 4242);
  std::size_t checked = 0;
  for (const auto& t : corpus) {
    const auto table = degree_bounds(t);
    REQUIRE(table.size() == t.dim() + 1);
    for (const auto& row : table) {
      CHECK(row.holds);
      CHECK(row.max_modulus <= row.bound + kBoundSlack);
      ++checked;
    }
    // The stable degree attains exp(h_top).
    CHECK(table[t.stable_dim].max_modulus ==
          doctest::Approx(std::exp(t.entropy)).epsilon(1e-9));
  }
  CHECK(checked > 1000);
}

TEST_CASE("plastic map attains the degree-one bound") {
  const auto t = validate_automorphism(kPlastic);
  const auto table = degree_bounds(t);
  CHECK(table[1].max_modulus == doctest::Approx(table[1].bound).epsilon(1e-12));
  CHECK(table[0].bound == 1.0);
  CHECK(table[3].bound == 1.0);
}

TEST_CASE("annulus properties on the corpus") {
  for (const auto& t : testing::hyperbolic_corpus(100, 2, 5, 31)) {
    const auto r = resonance_report(t);
    CHECK(r.annulus_inner < std::exp(r.h_top));
    CHECK(r.nu >= r.annulus_inner);
    CHECK(r.nu < std::exp(r.h_top) + 1e-12);
    CHECK(r.decay_rate_bound < 1.0);
    for (const auto& res : r.resonances) {
      CHECK(std::abs(res.value) > r.annulus_inner);
      CHECK(std::abs(res.value) <= std::exp(r.h_top) * (1 + 1e-10));
    }
    CHECK(resonance_report(t) == r);
    // Squaring the map squares the annulus radii.
    const auto r2 = resonance_report(squared(t));
    CHECK(r2.annulus_inner == doctest::Approx(r.annulus_inner * r.annulus_inner).epsilon(1e-8));
  }
}
