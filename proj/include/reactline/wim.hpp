#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "reactline/axle_train.hpp"

namespace reactline {

/// One weighed vehicle. Weights are kN, spacings metres; gvw is always the
/// axle sum (a gvw column in a source file is a checksum, not a field).
struct VehicleRecord {
  std::int64_t id = 0;
  std::vector<double> axle_weights_kn;
  std::vector<double> axle_spacings_m;
  std::string timestamp;  // optional, carried through verbatim; empty = absent
  std::string lane;       // optional, carried through verbatim; empty = absent

  int axle_count() const { return static_cast<int>(axle_weights_kn.size()); }
  double gvw() const;
  double heaviest_axle() const;
};

enum class FlagReason { BadCount, NonpositiveWeight, NonpositiveSpacing, GvwMismatch };

/// Stable token for reports and logs: bad-count, nonpositive-weight,
/// nonpositive-spacing, gvw-mismatch.
const char* to_string(FlagReason reason);

struct FlaggedRow {
  long long line = 0;     // 1-based physical line number in the input
  std::int64_t id = -1;   // parsed id, or -1 when the cell itself was bad
  FlagReason reason = FlagReason::BadCount;
};

struct ValidationReport {
  long long records_total = 0;
  long long records_accepted = 0;
  std::vector<FlaggedRow> flagged;

  long long records_flagged() const { return static_cast<long long>(flagged.size()); }
};

struct ParseResult {
  std::vector<VehicleRecord> records;
  ValidationReport report;
};

/// Streaming CSV parse: one pass, line at a time, memory bounded by the
/// accepted records plus one line buffer. Bad rows are flagged with a reason
/// and skipped; only a malformed header or an unreadable stream throws.
ParseResult parse_wim(std::istream& in);
ParseResult parse_wim_file(const std::string& path);

/// Canonical CSV (see README): wide enough for the largest vehicle, unused
/// trailing cells empty, numbers in shortest round-trip form. Optional
/// columns appear only when some record carries them.
void serialize_wim(const std::vector<VehicleRecord>& records, std::ostream& out);

enum class TravelDirection { Forward, Reverse };

/// Forward keeps file order; reverse flips both lists (vehicles are not
/// symmetric about their mass center, so the two passes differ).
AxleTrain to_train(const VehicleRecord& record, TravelDirection direction);

/// Nearest-rank percentile of GVW, p in [0, 100]. Throws on empty input.
double gvw_percentile(const std::vector<VehicleRecord>& records, double p);

/// Records with gvw strictly above the threshold.
std::vector<VehicleRecord> filter_above(const std::vector<VehicleRecord>& records,
                                        double threshold_kn);

struct StatsRow {
  int axle_class = 0;  // 0 = the "all" row
  long long count = 0;
  double mean_gvw = 0.0;
  double sd_gvw = 0.0;
  double mean_heaviest = 0.0;
  double sd_heaviest = 0.0;
};

/// Per-axle-class rows in ascending class order, then the "all" row last.
struct StatsTable {
  std::vector<StatsRow> rows;
};

/// Count, mean and standard deviation of GVW and of the heaviest axle, per
/// axle class and overall. Population sigma by default; sample_sigma divides
/// by n-1 instead. Throws on empty input.
StatsTable summary_stats(const std::vector<VehicleRecord>& records,
                         bool sample_sigma = false);

struct HistBin {
  double start_kn = 0.0;
  long long count = 0;
};

/// Half-open bins [k*w, (k+1)*w) from the lowest to the highest occupied bin,
/// empty bins in between included. Empty input gives an empty list.
std::vector<HistBin> gvw_histogram(const std::vector<VehicleRecord>& records,
                                   double bin_width_kn);

/// Order-sensitive content hash of the records, used to key envelope caches.
/// Stable across runs and platforms (exact decimal round-trip formatting).
std::uint64_t fleet_fingerprint(const std::vector<VehicleRecord>& records);

}  // namespace reactline
