#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reactline/axle_train.hpp"
#include "reactline/influence_line.hpp"
#include "reactline/sweep.hpp"

namespace reactline {

/// One axle gap in a model definition: either a fixed distance or a range
/// swept in discrete steps (e.g. a design truck's adjustable rear axle).
struct SpacingSpec {
  double min_m = 0.0;
  double max_m = 0.0;
  double step_m = 0.0;  // 0 marks a fixed spacing of min_m

  bool is_range() const { return step_m > 0.0; }
  /// {min, min+step, ..., max}; the last value snaps onto max when the range
  /// is an integral number of steps. Single element for fixed spacings.
  std::vector<double> expand() const;
};

/// One definition alternative of a live-load model: an axle train (possibly
/// scaled), an optional full-bridge uniform load, and the span lengths it
/// applies to. Bounds are inclusive; absent bounds are unbounded.
struct ModelVariant {
  std::string label;
  std::vector<double> axles_kn;
  std::vector<SpacingSpec> spacings;
  double truck_scale = 1.0;
  double uniform_kn_per_m = 0.0;
  std::optional<double> span_min_m;
  std::optional<double> span_max_m;

  bool applies_to(double span_m) const;
};

/// A named catalog entry: one or more variants whose applicability windows
/// jointly cover every span length in the default grid.
struct LiveLoadModel {
  std::string name;
  std::vector<ModelVariant> variants;
};

/// A variant pinned down for one span: spacing ranges resolved to fixed
/// values and the truck scale folded into the loads. The train may be empty
/// for uniform-only cases; the uniform load always covers the whole bridge.
struct ConcreteCase {
  std::string label;
  AxleTrain train;
  double uniform_kn_per_m = 0.0;
};

/// Parses and validates a model config (JSON, see README for the schema).
/// Throws std::runtime_error on malformed documents, non-positive loads,
/// an empty variant list, or a span-coverage gap over the default grid.
LiveLoadModel load_model_config(std::istream& in);
LiveLoadModel load_model_file(const std::string& path);

/// Variants applicable at span_m, with every spacing range expanded into its
/// discrete values (Cartesian product across ranged gaps). Throws when no
/// variant applies.
std::vector<ConcreteCase> resolve_cases(const LiveLoadModel& model, double span_m);

/// Envelope of one concrete case: the train swept as usual, then the uniform
/// component added as a constant offset (it rides along for every head
/// position). Truck-only cases take the sweep path untouched.
ReactionEnvelope case_envelope(const InfluenceLine& il, const ConcreteCase& c,
                               const SweepConfig& cfg);

/// Componentwise extreme across all concrete cases at this line's span:
/// max of maxima, min of minima; ties keep the earliest variant.
ReactionEnvelope model_envelope(const InfluenceLine& il, const LiveLoadModel& model,
                                const SweepConfig& cfg);

}  // namespace reactline
