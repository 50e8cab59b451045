#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "reactline/geometry.hpp"
#include "reactline/load_model.hpp"
#include "reactline/sweep.hpp"
#include "reactline/wim.hpp"

namespace reactline {

/// Identity of one envelope computation. Everything that can change the
/// numbers is in here; models are deliberately absent, which is what lets one
/// set of vehicle sweeps serve every model comparison.
struct EnvelopeKey {
  std::uint64_t fleet_fingerprint = 0;
  int span_count = 0;
  double span_m = 0.0;
  int support = 0;
  double step_m = 0.0;
  Direction directions = Direction::Both;

  /// Stable hex token used as the cache file stem.
  std::string digest() const;
};

/// Per-vehicle reaction envelopes, ordered by record id (ties keep input
/// order). ids and envelopes are parallel vectors.
struct EnvelopeSet {
  EnvelopeKey key;
  std::vector<std::int64_t> ids;
  std::vector<ReactionEnvelope> envelopes;
};

/// Sweeps every vehicle over the bridge and collects envelopes. Pure
/// computation, no cache involvement; deterministic and jobs-invariant
/// (workers write disjoint index ranges of a preallocated vector).
/// Throws on an empty fleet or invalid geometry/support.
EnvelopeSet vehicle_envelopes(const std::vector<VehicleRecord>& records,
                              const BridgeGeometry& geometry, int support,
                              const SweepConfig& cfg, int jobs = 1);

/// Strict on both sides: ties never exceed, so a fleet equal to the model
/// scores exactly zero.
bool exceeds(const ReactionEnvelope& vehicle_env, const ReactionEnvelope& reference_env);

struct RateResult {
  long long n_total = 0;
  long long n_exceeding = 0;
  long long n_max_side = 0;  // vehicles beating the reference max
  long long n_min_side = 0;  // vehicles undercutting the reference min
  double rate_percent = 0.0;
};

/// 100 * n_exceeding / n_total, with per-side tallies kept for diagnostics
/// (a vehicle can trip both sides; it still counts once). Throws on an empty set.
RateResult exceedance_rate(const EnvelopeSet& set, const ReactionEnvelope& reference_env);

struct SpectrumPoint {
  double span_m = 0.0;
  double rate_percent = 0.0;
  long long n_exceeding = 0;
  long long n_total = 0;
};

struct ExceedanceSpectrum {
  std::string model_name;
  std::string fleet_name;
  int span_count = 1;
  int support = 0;
  std::vector<SpectrumPoint> points;  // ascending span
};

/// One spectrum: for every span in the grid, the model envelope is compared
/// against every vehicle's envelope. A failure at any span aborts the whole
/// spectrum; partial spectra are never emitted. cache_dir "" disables
/// persistence, otherwise envelope sets are reused from / published to it.
ExceedanceSpectrum compute_ers(const std::vector<VehicleRecord>& records,
                               const std::string& fleet_name, int span_count,
                               int support, const LiveLoadModel& model,
                               const std::vector<double>& span_grid_m,
                               const SweepConfig& cfg, int jobs = 1,
                               const std::string& cache_dir = "");

/// CSV schema owned by this module: span_m,rate_percent,n_exceeding,n_total.
void spectrum_to_csv(const ExceedanceSpectrum& spectrum, std::ostream& out);
std::vector<SpectrumPoint> parse_spectrum_csv(std::istream& in);

}  // namespace reactline
