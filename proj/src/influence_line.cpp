#include "reactline/influence_line.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace reactline {

InfluenceLine::InfluenceLine(BridgeGeometry geometry, int support,
                             std::vector<std::array<double, 4>> segment_coeffs)
    : geom_(geometry),
      support_(support),
      total_(geometry.total_length()),
      inv_span_(1.0 / geometry.span_m),
      coeffs_(std::move(segment_coeffs)) {}

double InfluenceLine::integral(double a, double b) const {
  double lo = std::max(a, 0.0);
  double hi = std::min(b, total_);
  if (!(hi > lo)) return 0.0;
  const double L = geom_.span_m;
  double sum = 0.0;
  for (int s = 0; s < geom_.span_count; ++s) {
    double ta = std::max(lo - s * L, 0.0);
    double tb = std::min(hi - s * L, L);
    if (!(tb > ta)) continue;
    const std::array<double, 4>& c = coeffs_[s];
    auto anti = [&c](double t) {
      return t * (c[0] + t * (c[1] / 2 + t * (c[2] / 3 + t * c[3] / 4)));
    };
    sum += anti(tb) - anti(ta);
  }
  return sum;
}

double InfluenceLine::max_abs_slope() const {
  const double L = geom_.span_m;
  double best = 0.0;
  for (const std::array<double, 4>& c : coeffs_) {
    // slope(t) = c1 + 2 c2 t + 3 c3 t^2; extremes at the segment ends and at
    // the interior stationary point of the slope, if any.
    auto slope = [&c](double t) { return c[1] + t * (2 * c[2] + t * 3 * c[3]); };
    best = std::max(best, std::abs(slope(0.0)));
    best = std::max(best, std::abs(slope(L)));
    if (c[3] != 0.0) {
      double tv = -c[2] / (3 * c[3]);
      if (tv > 0.0 && tv < L) best = std::max(best, std::abs(slope(tv)));
    }
  }
  return best;
}

namespace {

using Cubic = std::array<double, 4>;  // c0 + c1 t + c2 t^2 + c3 t^3, local t

void add_scaled(Cubic& dst, const Cubic& src, double k) {
  for (int i = 0; i < 4; ++i) dst[i] += k * src[i];
}

// Thomas elimination for the (1,4,1) tridiagonal interior-moment system,
// applied to each cubic coefficient column at once. m <= 3 for 1..4 spans.
void solve_moment_system(std::vector<Cubic>& rhs) {
  const int m = static_cast<int>(rhs.size());
  if (m == 0) return;
  std::vector<double> diag(m, 4.0);
  for (int i = 1; i < m; ++i) {
    double f = 1.0 / diag[i - 1];
    diag[i] -= f;  // 4 - (1/diag) * 1
    add_scaled(rhs[i], rhs[i - 1], -f);
  }
  for (int c = 0; c < 4; ++c) rhs[m - 1][c] /= diag[m - 1];
  for (int i = m - 2; i >= 0; --i) {
    for (int c = 0; c < 4; ++c) rhs[i][c] = (rhs[i][c] - rhs[i + 1][c]) / diag[i];
  }
}

}  // namespace

InfluenceLine build_influence_line(const BridgeGeometry& geometry, int support) {
  geometry.validate();
  const int N = geometry.span_count;
  if (support < 0 || support > N) {
    throw std::invalid_argument("support index " + std::to_string(support) +
                                " out of range 0.." + std::to_string(N));
  }
  const double L = geometry.span_m;
  const int m = N - 1;  // interior supports carrying unknown moments

  // Unit load in span j (0-based) at local t loads the compatibility equation
  // of the adjacent interior supports with two fixed cubics:
  //   left-span term   f(t) = t - t^3/L^2         (support j+1's equation)
  //   right-span term  g(t) = 2t - 3t^2/L + t^3/L^2  (support j's equation)
  // Both vanish at t = 0 and t = L, so moments are continuous across spans.
  const Cubic f = {0.0, 1.0, 0.0, -1.0 / (L * L)};
  const Cubic g = {0.0, 2.0, -3.0 / L, 1.0 / (L * L)};

  std::vector<Cubic> coeffs(N, Cubic{0.0, 0.0, 0.0, 0.0});
  for (int j = 0; j < N; ++j) {
    // Interior moment M_k (1-based k = 1..m) as a cubic in t, from
    //   M_{k-1} + 4 M_k + M_{k+1} = -f(t)[k == j+1] - g(t)[k == j].
    std::vector<Cubic> moments(m, Cubic{0.0, 0.0, 0.0, 0.0});
    if (j + 1 >= 1 && j + 1 <= m) add_scaled(moments[j], f, -1.0);
    if (j >= 1 && j <= m) add_scaled(moments[j - 1], g, -1.0);
    solve_moment_system(moments);

    auto moment_of = [&](int k) -> Cubic {
      if (k < 1 || k > m) return Cubic{0.0, 0.0, 0.0, 0.0};
      return moments[k - 1];
    };

    // Reaction at the target support = simple-beam part of its adjacent spans
    // plus the end-moment shear corrections; end abutments have one span only.
    Cubic p = {0.0, 0.0, 0.0, 0.0};
    if (support == j) {  // left support of the loaded span
      p[0] += 1.0;
      p[1] -= 1.0 / L;
    }
    if (support == j + 1) {  // right support of the loaded span
      p[1] += 1.0 / L;
    }
    if (support >= 1) {  // span to the left of the support exists
      Cubic corr = moment_of(support - 1);
      add_scaled(corr, moment_of(support), -1.0);
      add_scaled(p, corr, 1.0 / L);
    }
    if (support <= N - 1) {  // span to the right of the support exists
      Cubic corr = moment_of(support + 1);
      add_scaled(corr, moment_of(support), -1.0);
      add_scaled(p, corr, 1.0 / L);
    }
    coeffs[j] = p;
  }

  return InfluenceLine(geometry, support, std::move(coeffs));
}

}  // namespace reactline
