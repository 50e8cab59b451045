#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reactline/exceedance.hpp"

namespace reactline {

/// On-disk envelope store: one CSV per key (vehicle_id,max_kn,min_kn,
/// pos_max_m,pos_min_m) plus a JSON sidecar carrying the key fields.
/// Numbers are written in shortest round-trip form, so a load returns
/// bit-identical envelopes and a rewrite is byte-identical.

/// Reads the entry for `key`, or nullopt when it is absent or fails any
/// consistency check (wrong sidecar fields, row count mismatch, torn file) —
/// a bad entry reads as a miss, never as an error.
std::optional<EnvelopeSet> load_cached_envelopes(const std::string& cache_dir,
                                                 const EnvelopeKey& key,
                                                 std::size_t expected_count);

/// Publishes atomically: writes to temp names, then renames into place, so
/// concurrent readers only ever observe complete entries.
void store_cached_envelopes(const std::string& cache_dir, const EnvelopeSet& set);

struct CachedEnvelopeResult {
  EnvelopeSet set;
  bool cache_hit = false;
};

/// Cache-through wrapper over vehicle_envelopes. cache_dir "" always computes.
CachedEnvelopeResult cached_vehicle_envelopes(const std::vector<VehicleRecord>& records,
                                              const BridgeGeometry& geometry, int support,
                                              const SweepConfig& cfg, int jobs,
                                              const std::string& cache_dir);

}  // namespace reactline
