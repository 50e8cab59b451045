#pragma once

#include "reactline/axle_train.hpp"
#include "reactline/influence_line.hpp"

namespace reactline {

enum class Direction { Forward, Both };

struct SweepConfig {
  double step_m = 0.01;  // replicates the reference procedure; > 0
  Direction directions = Direction::Both;
};

/// Componentwise extremes of the swept reaction and the head positions that
/// attain them. Ties resolve to the smallest head position.
struct ReactionEnvelope {
  double max_kn = 0.0;
  double min_kn = 0.0;
  double pos_max_m = 0.0;
  double pos_min_m = 0.0;
};

/// Superposition over the axles; off-bridge axles contribute exactly zero.
double train_reaction(const InfluenceLine& il, const AxleTrain& train,
                      double head_position);

/// w times the exact integral of the line over [from_x, to_x] clipped to the
/// bridge. Throws std::invalid_argument when from_x > to_x.
double uniform_reaction(const InfluenceLine& il, double w_kn_per_m,
                        double from_x, double to_x);

/// Sweeps head positions from (0 - train length) to (total length + train
/// length), both endpoints included, so partial presence while entering and
/// leaving is covered. With directions = Both the reversed axle ordering is
/// swept too and the envelopes merged.
///
/// For a support past the midline under Both, the sweep runs on the mirror
/// support and maps positions through p -> total + length - p: mirror symmetry
/// makes the two value sets equal point-for-point, and sharing the arithmetic
/// keeps mirrored envelopes (and everything downstream of them) bit-identical
/// rather than merely close.
ReactionEnvelope sweep_envelope(const InfluenceLine& il, const AxleTrain& train,
                                const SweepConfig& cfg);

/// Convenience overload that builds the line on the fly.
ReactionEnvelope sweep_envelope(const BridgeGeometry& geometry, int support,
                                const AxleTrain& train, const SweepConfig& cfg);

}  // namespace reactline
