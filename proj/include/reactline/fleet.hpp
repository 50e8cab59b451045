#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "reactline/wim.hpp"

namespace reactline {

/// One vehicle class in a synthetic traffic mix: how often it occurs, how its
/// GVW is distributed (lognormal in kN), and how that weight spreads over the
/// axles.
struct FleetClass {
  int axle_count = 2;              // 2..13
  double mix_weight = 1.0;         // relative frequency, > 0
  double ln_gvw_mean = 0.0;        // mean of ln(GVW / kN)
  double ln_gvw_sigma = 0.1;       // sigma of ln(GVW / kN), > 0
  std::vector<double> axle_split;  // relative share per axle, length = axle_count
  std::vector<double> spacings_m;  // fixed template, length = axle_count - 1
  double split_jitter = 0.1;       // in [0, 1): max relative wobble of a share
};

struct FleetSpec {
  std::vector<FleetClass> classes;

  /// Throws std::runtime_error on structurally invalid specs.
  void validate() const;
};

/// JSON mirror of FleetSpec (see README for the schema).
FleetSpec load_fleet_spec(std::istream& in);
FleetSpec load_fleet_spec_file(const std::string& path);

/// Draws n vehicles, ids 1..n. Deterministic for fixed (spec, n, seed): the
/// generator and both transforms are pinned implementations, not the standard
/// library's unspecified distributions. Every record satisfies parse-level
/// validation by construction.
std::vector<VehicleRecord> synthesize_fleet(const FleetSpec& spec, long long n,
                                            std::uint64_t seed);

}  // namespace reactline
