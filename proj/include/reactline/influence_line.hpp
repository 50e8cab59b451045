#pragma once

#include <array>
#include <vector>

#include "reactline/geometry.hpp"

namespace reactline {

/// Reaction influence line for one support: value(x) is that support's
/// reaction per unit downward load placed at x, positive when the support
/// pushes up (uplift demand shows as negative values).
///
/// The line is an exact piecewise cubic, one segment per span in the local
/// coordinate t = x - span_start, and identically zero off the bridge. It is
/// built once per (geometry, support) from the three-moment system, so the
/// millions of evaluations a fleet sweep needs are a segment lookup plus a
/// Horner step instead of a structural solve per position.
class InfluenceLine {
 public:
  InfluenceLine(BridgeGeometry geometry, int support,
                std::vector<std::array<double, 4>> segment_coeffs);

  const BridgeGeometry& geometry() const { return geom_; }
  int support() const { return support_; }

  double value(double x) const {
    if (!(x >= 0.0) || x > total_) return 0.0;
    int s = static_cast<int>(x * inv_span_);
    if (s >= geom_.span_count) s = geom_.span_count - 1;
    double t = x - s * geom_.span_m;
    const std::array<double, 4>& c = coeffs_[s];
    return ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
  }

  /// Exact integral of the line over [a, b] clipped to the bridge, from the
  /// segment antiderivatives.
  double integral(double a, double b) const;

  /// Bound on |d/dx value| over the whole bridge; feeds the sweep-refinement
  /// error bound.
  double max_abs_slope() const;

  const std::array<double, 4>& segment(int span) const { return coeffs_[span]; }

 private:
  BridgeGeometry geom_;
  int support_;
  double total_;
  double inv_span_;
  std::vector<std::array<double, 4>> coeffs_;
};

/// Solves the interior-moment tridiagonal system per loaded span and
/// assembles the cubic segments. Throws std::invalid_argument for a bad
/// geometry or support index.
InfluenceLine build_influence_line(const BridgeGeometry& geometry, int support);

}  // namespace reactline
