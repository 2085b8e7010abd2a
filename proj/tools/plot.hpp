#pragma once

#include <string>
#include <vector>

#include "toral/spectrum.hpp"

namespace toral::cli {

/// Static SVG: eigenvalues as dots, the circles |z| = outer (e^{h_top}) and
/// |z| = inner (lambda^{-1} e^{h_top}).
std::string annulus_svg(const std::vector<Complex>& eigenvalues, double outer, double inner);

}  // namespace toral::cli
