#include "reactline/sweep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace reactline {

double train_reaction(const InfluenceLine& il, const AxleTrain& train,
                      double head_position) {
  double r = 0.0;
  double off = 0.0;
  for (std::size_t i = 0; i < train.loads_kn.size(); ++i) {
    if (i > 0) off += train.spacings_m[i - 1];
    r += train.loads_kn[i] * il.value(head_position - off);
  }
  return r;
}

double uniform_reaction(const InfluenceLine& il, double w_kn_per_m,
                        double from_x, double to_x) {
  if (from_x > to_x) {
    throw std::invalid_argument("uniform load interval is reversed");
  }
  return w_kn_per_m * il.integral(from_x, to_x);
}

namespace {

// Envelope accumulation with an explicit tie rule so scan order never matters.
struct Extremes {
  double max_v, min_v, max_p, min_p;
  bool prefer_larger_pos;

  void feed(double v, double p) {
    if (v > max_v || (v == max_v && better(p, max_p))) {
      max_v = v;
      max_p = p;
    }
    if (v < min_v || (v == min_v && better(p, min_p))) {
      min_v = v;
      min_p = p;
    }
  }

  bool better(double p, double q) const {
    return prefer_larger_pos ? (p > q) : (p < q);
  }
};

void scan_one_direction(const InfluenceLine& il, const std::vector<double>& loads,
                        const std::vector<double>& spacings, double start,
                        double end, double step, Extremes& ex) {
  std::vector<double> offs(loads.size(), 0.0);
  for (std::size_t i = 1; i < loads.size(); ++i) offs[i] = offs[i - 1] + spacings[i - 1];

  const double span_len = end - start;
  const long long n = static_cast<long long>(std::floor(span_len / step + 1e-9));
  const std::size_t axles = loads.size();
  for (long long i = 0; i <= n; ++i) {
    double h = start + i * step;
    double r = 0.0;
    for (std::size_t a = 0; a < axles; ++a) {
      r += loads[a] * il.value(h - offs[a]);
    }
    ex.feed(r, h);
  }
  // A train length that is not a step multiple leaves the exit endpoint off
  // the lattice; the contract includes it regardless.
  double last = start + n * step;
  if (last < end - step * 1e-9) {
    double r = 0.0;
    for (std::size_t a = 0; a < axles; ++a) {
      r += loads[a] * il.value(end - offs[a]);
    }
    ex.feed(r, end);
  }
}

ReactionEnvelope sweep_native(const InfluenceLine& il, const AxleTrain& train,
                              const SweepConfig& cfg, bool prefer_larger_pos) {
  const double len = train.length();
  const double start = 0.0 - len;
  const double end = il.geometry().total_length() + len;

  Extremes ex{-1e308, 1e308, 0.0, 0.0, prefer_larger_pos};
  ex.max_p = ex.min_p = start;
  scan_one_direction(il, train.loads_kn, train.spacings_m, start, end, cfg.step_m, ex);
  if (cfg.directions == Direction::Both) {
    AxleTrain rev = train.reversed();
    scan_one_direction(il, rev.loads_kn, rev.spacings_m, start, end, cfg.step_m, ex);
  }
  return {ex.max_v, ex.min_v, ex.max_p, ex.min_p};
}

}  // namespace

ReactionEnvelope sweep_envelope(const InfluenceLine& il, const AxleTrain& train,
                                const SweepConfig& cfg) {
  train.validate();
  if (!(cfg.step_m > 0.0) || !std::isfinite(cfg.step_m)) {
    throw std::invalid_argument("sweep step must be positive");
  }

  const BridgeGeometry& g = il.geometry();
  const int k = il.support();
  if (cfg.directions == Direction::Both && 2 * k > g.span_count) {
    // Mirror canonicalization (see header). The mirrored sweep prefers the
    // larger position on ties so the mapped result still ties to the smallest.
    InfluenceLine mirror = build_influence_line(g, g.span_count - k);
    ReactionEnvelope e = sweep_native(mirror, train, cfg, /*prefer_larger_pos=*/true);
    const double map = g.total_length() + train.length();
    return {e.max_kn, e.min_kn, map - e.pos_max_m, map - e.pos_min_m};
  }
  return sweep_native(il, train, cfg, /*prefer_larger_pos=*/false);
}

ReactionEnvelope sweep_envelope(const BridgeGeometry& geometry, int support,
                                const AxleTrain& train, const SweepConfig& cfg) {
  return sweep_envelope(build_influence_line(geometry, support), train, cfg);
}

}  // namespace reactline
