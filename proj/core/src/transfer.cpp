#include "toral/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "toral/error.hpp"

namespace toral {

namespace {

std::vector<std::int64_t> to_int64_matrix(const IntMatrix& m) {
  std::vector<std::int64_t> out;
  for (const auto& x : m.data()) {
    if (!x.fits_slong_p()) throw Error(ErrorKind::CapExceeded, "mode map entry exceeds 64 bits");
    out.push_back(x.get_si());
  }
  return out;
}

// Colors: 0 unvisited, 1 on the current path, 2 finished.
// Returns the cycles of the partial functional graph `image`.
std::vector<std::vector<std::size_t>> functional_cycles(const std::vector<std::int64_t>& image) {
  const std::size_t n = image.size();
  std::vector<unsigned char> color(n, 0);
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> path;
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s]) continue;
    path.clear();
    std::size_t v = s;
    while (true) {
      color[v] = 1;
      path.push_back(v);
      const std::int64_t next = image[v];
      if (next < 0) break;
      const auto w = static_cast<std::size_t>(next);
      if (color[w] == 2) break;
      if (color[w] == 1) {
        auto it = std::find(path.begin(), path.end(), w);
        cycles.emplace_back(it, path.end());
        break;
      }
      v = w;
    }
    for (auto p : path) color[p] = 2;
  }
  return cycles;
}

}  // namespace

std::size_t OperatorTruncation::nonzeros() const {
  return static_cast<std::size_t>(std::count_if(image.begin(), image.end(),
                                                [](std::int64_t r) { return r >= 0; }));
}

std::size_t OperatorTruncation::zero_mode_index() const {
  // All coordinates equal to K in the shifted representation.
  std::size_t idx = 0;
  const std::size_t base = 2 * static_cast<std::size_t>(cutoff) + 1;
  for (std::size_t i = 0; i < dim_torus; ++i) idx = idx * base + static_cast<std::size_t>(cutoff);
  return idx;
}

Eigen::MatrixXd OperatorTruncation::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t c = 0; c < dim; ++c)
    if (image[c] >= 0) m(image[c], static_cast<Eigen::Index>(c)) = 1.0;
  return m;
}

IntMatrix pushforward_mode_map(const ToralAutomorphism& t) {
  return transpose(inverse_matrix(t));
}

IntMatrix koopman_mode_map(const ToralAutomorphism& t) { return transpose(t.matrix); }

std::vector<std::int64_t> mode_vector(const OperatorTruncation& o, std::size_t index) {
  const std::size_t base = 2 * static_cast<std::size_t>(o.cutoff) + 1;
  std::vector<std::int64_t> k(o.dim_torus);
  for (std::size_t i = o.dim_torus; i-- > 0;) {
    k[i] = static_cast<std::int64_t>(index % base) - o.cutoff;
    index /= base;
  }
  return k;
}

std::size_t mode_index(const OperatorTruncation& o, const std::vector<std::int64_t>& k) {
  const std::size_t base = 2 * static_cast<std::size_t>(o.cutoff) + 1;
  std::size_t idx = 0;
  for (auto v : k) {
    if (v < -o.cutoff || v > o.cutoff) throw std::out_of_range("mode outside cutoff");
    idx = idx * base + static_cast<std::size_t>(v + o.cutoff);
  }
  return idx;
}

OperatorTruncation pushforward_matrix(const ToralAutomorphism& t, int cutoff, std::size_t cap) {
  if (cutoff < 1) throw Error(ErrorKind::CapExceeded, "cutoff must be at least 1");
  const std::size_t d = t.dim();
  const std::size_t base = 2 * static_cast<std::size_t>(cutoff) + 1;
  std::size_t dim = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (dim > cap / base) {
      throw Error(ErrorKind::CapExceeded, "(2K+1)^d exceeds cap " + std::to_string(cap));
    }
    dim *= base;
  }
  if (dim > cap) throw Error(ErrorKind::CapExceeded, "(2K+1)^d exceeds cap " + std::to_string(cap));

  const auto map = to_int64_matrix(pushforward_mode_map(t));
  OperatorTruncation o;
  o.dim_torus = d;
  o.cutoff = cutoff;
  o.dim = dim;
  o.image.assign(dim, -1);

  std::vector<std::int64_t> k(d), img(d);
  for (std::size_t col = 0; col < dim; ++col) {
    k = mode_vector(o, col);
    bool inside = true;
    for (std::size_t i = 0; i < d && inside; ++i) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < d; ++j) acc += static_cast<__int128>(map[i * d + j]) * k[j];
      if (acc < -cutoff || acc > cutoff) inside = false;
      else img[i] = static_cast<std::int64_t>(acc);
    }
    if (inside) o.image[col] = static_cast<std::int64_t>(mode_index(o, img));
  }

  // Survival time of each mode: number of applications before its column
  // is annihilated. Defined only when the nonzero-mode graph is acyclic.
  if (mode_graph_acyclic(o)) {
    const std::size_t zero = o.zero_mode_index();
    std::vector<std::int64_t> survive(dim, -1);
    std::size_t longest = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < dim; ++s) {
      if (s == zero || survive[s] >= 0) continue;
      std::size_t v = s;
      stack.clear();
      while (survive[v] < 0) {
        stack.push_back(v);
        if (o.image[v] < 0) break;
        v = static_cast<std::size_t>(o.image[v]);
      }
      std::int64_t val = survive[v] >= 0 ? survive[v] : -1;
      for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        val = (o.image[*it] < 0) ? 0 : val + 1;
        survive[*it] = val;
        longest = std::max(longest, static_cast<std::size_t>(val));
      }
    }
    o.nilpotency_index = longest + 1;
  }
  o.spectrum = truncated_spectrum(o);
  return o;
}

bool mode_graph_acyclic(const OperatorTruncation& o) {
  const std::size_t zero = o.zero_mode_index();
  for (const auto& cycle : functional_cycles(o.image)) {
    if (!(cycle.size() == 1 && cycle.front() == zero)) return false;
  }
  return true;
}

std::vector<Complex> truncated_spectrum(const OperatorTruncation& o, double floor, SpectrumMethod method) {
  std::vector<Complex> eig;
  if (method == SpectrumMethod::Dense) {
    if (o.dim > kDenseEigenCap) {
      throw Error(ErrorKind::CapExceeded, "dense eigensolve limited to dim " + std::to_string(kDenseEigenCap));
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(o.dense(), false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) eig.push_back(es.eigenvalues()[i]);
  } else {
    std::size_t on_cycles = 0;
    for (const auto& cycle : functional_cycles(o.image)) {
      const std::size_t p = cycle.size();
      on_cycles += p;
      for (std::size_t j = 0; j < p; ++j) {
        if (j == 0) {
          eig.emplace_back(1.0, 0.0);
        } else {
          eig.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p)));
        }
      }
    }
    eig.insert(eig.end(), o.dim - on_cycles, Complex(0.0, 0.0));
  }
  std::vector<Complex> out;
  for (const auto& z : eig)
    if (floor == 0.0 || std::abs(z) > floor) out.push_back(z);
  std::stable_sort(out.begin(), out.end(), descending_modulus);
  return out;
}

void write_coordinate(std::ostream& out, const OperatorTruncation& o) {
  out << o.dim << ' ' << o.dim << ' ' << o.nonzeros() << '\n';
  for (std::size_t col = 0; col < o.dim; ++col) {
    if (o.image[col] < 0) continue;
    out << (o.image[col] + 1) << ' ' << (col + 1) << " 1 0\n";
  }
}

}  // namespace toral
