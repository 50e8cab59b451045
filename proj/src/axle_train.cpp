#include "reactline/axle_train.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace reactline {

double AxleTrain::length() const {
  double len = 0.0;
  for (double s : spacings_m) len += s;
  return len;
}

std::vector<double> AxleTrain::offsets() const {
  std::vector<double> off(loads_kn.size(), 0.0);
  for (std::size_t i = 1; i < loads_kn.size(); ++i) {
    off[i] = off[i - 1] + spacings_m[i - 1];
  }
  return off;
}

AxleTrain AxleTrain::reversed() const {
  AxleTrain r;
  r.loads_kn.assign(loads_kn.rbegin(), loads_kn.rend());
  r.spacings_m.assign(spacings_m.rbegin(), spacings_m.rend());
  return r;
}

void AxleTrain::validate() const {
  if (loads_kn.empty()) {
    throw std::invalid_argument("axle train has no axles");
  }
  if (spacings_m.size() + 1 != loads_kn.size()) {
    throw std::invalid_argument("axle train needs exactly one spacing between consecutive axles");
  }
  for (double w : loads_kn) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("axle load must be positive and finite, got " +
                                  std::to_string(w));
    }
  }
  for (double s : spacings_m) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("axle spacing must be positive and finite, got " +
                                  std::to_string(s));
    }
  }
}

}  // namespace reactline
