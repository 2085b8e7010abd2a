#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace toral {

using Complex = std::complex<double>;

/// Ascending modulus, then ascending argument in (-pi, pi].
bool ascending_modulus(const Complex& a, const Complex& b);
/// Descending modulus, then ascending argument.
bool descending_modulus(const Complex& a, const Complex& b);

/// Minimum-cost perfect matching between two equal-size multisets of complex
/// numbers (Hungarian algorithm on |a_i - b_j|). Returns the largest matched
/// distance, or +inf when the sizes differ.
double matching_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Assignment permutation: result[i] is the index in b matched to a[i].
std::vector<std::size_t> optimal_assignment(std::span<const Complex> a, std::span<const Complex> b);

/// Groups values within `radius` of each other (single linkage).
struct Cluster {
  Complex center;
  std::vector<std::size_t> members;
};
std::vector<Cluster> cluster_values(std::span<const Complex> values, double radius);

}  // namespace toral
