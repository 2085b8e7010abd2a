#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "support/oracles.hpp"
#include "toral/error.hpp"
#include "toral/transfer.hpp"

using namespace toral;

namespace {

const IntMatrix kCat = make_int_matrix({{2, 1}, {1, 1}});
const IntMatrix kPlastic = make_int_matrix({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});

// Escape time of mode k under repeated application of `map`, iterating the
// integer vector directly. Returns steps until it leaves the cube, or -1 if it
// revisits itself before escaping.
long escape_steps(const IntMatrix& map, std::vector<std::int64_t> k, int cutoff, long limit) {
  const std::size_t d = k.size();
  for (long step = 0; step < limit; ++step) {
    std::vector<std::int64_t> next(d, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) next[i] += map(i, j).get_si() * k[j];
    for (auto v : next)
      if (v < -cutoff || v > cutoff) return step;
    k = next;
  }
  return -1;
}

}  // namespace

TEST_CASE("mode indexing round trip") {
  const auto t = validate_automorphism(kPlastic);
  const auto o = pushforward_matrix(t, 2);
  CHECK(o.dim == 125);
  for (std::size_t i = 0; i < o.dim; ++i) CHECK(mode_index(o, mode_vector(o, i)) == i);
  CHECK(mode_vector(o, o.zero_mode_index()) == std::vector<std::int64_t>{0, 0, 0});
  CHECK(mode_vector(o, 0) == std::vector<std::int64_t>{-2, -2, -2});
  CHECK(mode_vector(o, 1) == std::vector<std::int64_t>{-2, -2, -1});
}

TEST_CASE("pushforward acts on modes by the inverse transpose") {
  const auto t = validate_automorphism(kCat);
  CHECK(pushforward_mode_map(t) == make_int_matrix({{1, -1}, {-1, 2}}));
  CHECK(koopman_mode_map(t) == transpose(kCat));
  const auto o = pushforward_matrix(t, 3);
  // (1,0) -> (1,-1), (0,1) -> (-1,2)
  CHECK(o.image[mode_index(o, {1, 0})] == static_cast<std::int64_t>(mode_index(o, {1, -1})));
  CHECK(o.image[mode_index(o, {0, 1})] == static_cast<std::int64_t>(mode_index(o, {-1, 2})));
  CHECK(o.image[mode_index(o, {0, 3})] == -1);
  CHECK(o.image[o.zero_mode_index()] == static_cast<std::int64_t>(o.zero_mode_index()));
}

TEST_CASE("truncated spectrum is trivial for hyperbolic maps") {
  struct Case {
    IntMatrix m;
    int cutoff;
  };
  for (const auto& c : {Case{kCat, 16}, Case{kPlastic, 6}}) {
    const auto t = validate_automorphism(c.m);
    const auto o = pushforward_matrix(t, c.cutoff);
    REQUIRE(o.spectrum.size() == 1);
    CHECK(o.spectrum[0] == Complex(1.0, 0.0));
    CHECK(mode_graph_acyclic(o));
    CHECK(truncated_spectrum(o, 0.0).size() == o.dim);

    // Independent traversal: every nonzero mode leaves the cube, and the
    // longest survival matches the reported nilpotency index.
    long longest = 0;
    const IntMatrix map = pushforward_mode_map(t);
    for (std::size_t i = 0; i < o.dim; ++i) {
      if (i == o.zero_mode_index()) continue;
      const long steps = escape_steps(map, mode_vector(o, i), c.cutoff, 10000);
      REQUIRE(steps >= 0);
      longest = std::max(longest, steps);
    }
    CHECK(o.nilpotency_index == static_cast<std::size_t>(longest + 1));
  }
}

TEST_CASE("matrix powers confirm nilpotency off the zero mode") {
  const auto t = validate_automorphism(kCat);
  const auto o = pushforward_matrix(t, 4);
  const Eigen::MatrixXd p = o.dense();
  Eigen::MatrixXd projector = Eigen::MatrixXd::Zero(p.rows(), p.cols());
  const auto z = static_cast<Eigen::Index>(o.zero_mode_index());
  projector(z, z) = 1.0;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(p.rows(), p.cols());
  for (std::size_t i = 0; i + 1 < o.nilpotency_index; ++i) power = power * p;
  CHECK((power - projector).cwiseAbs().maxCoeff() > 0.5);
  power = power * p;
  CHECK((power - projector).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("structural and dense spectra agree on permutation cycles") {
  OperatorTruncation o;
  o.dim_torus = 1;
  o.cutoff = 3;
  o.dim = 7;
  // zero mode fixed, a 3-cycle, a 2-cycle, one escaping mode.
  o.image = {1, 2, 0, 3, 5, 4, -1};
  CHECK_FALSE(mode_graph_acyclic(o));
  const auto structural = truncated_spectrum(o, 0.0);
  const auto dense = truncated_spectrum(o, 0.0, SpectrumMethod::Dense);
  CHECK(matching_distance(structural, dense) < 1e-12);
  CHECK(truncated_spectrum(o).size() == 6);
}

TEST_CASE("cap handling") {
  const auto t = validate_automorphism(kPlastic);
  try {
    pushforward_matrix(t, 50, 1000);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
  const auto o = pushforward_matrix(t, 2);
  try {
    OperatorTruncation big = o;
    big.dim = kDenseEigenCap + 1;
    truncated_spectrum(big, 0.0, SpectrumMethod::Dense);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}

TEST_CASE("coordinate export") {
  const auto t = validate_automorphism(kCat);
  const auto o = pushforward_matrix(t, 1);
  std::ostringstream out;
  write_coordinate(out, o);
  std::istringstream in(out.str());
  std::size_t rows = 0, cols = 0, nnz = 0;
  in >> rows >> cols >> nnz;
  CHECK(rows == 9);
  CHECK(cols == 9);
  CHECK(nnz == o.nonzeros());
  std::size_t lines = 0;
  long r = 0, c = 0, re = 0, im = 0;
  while (in >> r >> c >> re >> im) {
    CHECK(o.image[static_cast<std::size_t>(c - 1)] == r - 1);
    CHECK(re == 1);
    CHECK(im == 0);
    ++lines;
  }
  CHECK(lines == nnz);
}
