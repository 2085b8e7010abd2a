#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "toral/io.hpp"

namespace toral::cli {

std::string annulus_svg(const std::vector<Complex>& eigenvalues, double outer, double inner) {
  constexpr double size = 480.0;
  constexpr double margin = 20.0;
  double extent = std::max(outer, inner);
  for (const auto& z : eigenvalues) extent = std::max(extent, std::abs(z));
  extent *= 1.1;
  const double scale = (size / 2 - margin) / extent;
  const double c = size / 2;
  auto px = [&](double v) { return format_double(c + v * scale); };
  auto py = [&](double v) { return format_double(c - v * scale); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<line x1=\"0\" y1=\"" << c << "\" x2=\"" << size << "\" y2=\"" << c << "\" stroke=\"#bbb\"/>\n"
    << "<line x1=\"" << c << "\" y1=\"0\" x2=\"" << c << "\" y2=\"" << size << "\" stroke=\"#bbb\"/>\n"
    << "<circle cx=\"" << c << "\" cy=\"" << c << "\" r=\"" << format_double(outer * scale)
    << "\" fill=\"none\" stroke=\"#1f77b4\"/>\n"
    << "<circle cx=\"" << c << "\" cy=\"" << c << "\" r=\"" << format_double(inner * scale)
    << "\" fill=\"none\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& z : eigenvalues) {
    s << "<circle cx=\"" << px(z.real()) << "\" cy=\"" << py(z.imag())
      << "\" r=\"3\" fill=\"black\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace toral::cli
