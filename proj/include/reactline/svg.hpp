#pragma once

#include <string>
#include <vector>

#include "reactline/exceedance.hpp"

namespace reactline {

struct SvgOptions {
  std::string title = "Exceedance rate spectrum";
  int width = 800;
  int height = 500;
};

/// Single-polyline line chart of a spectrum: x = span (m), y = rate (%) with
/// the axis pinned to [0, 100] so 100% sits exactly on the top gridline.
/// Pure text generation, byte-deterministic for fixed input and options.
/// Throws on an empty spectrum.
std::string render_spectrum_svg(const std::vector<SpectrumPoint>& points,
                                const SvgOptions& options);

}  // namespace reactline
