#pragma once

#include <cstddef>
#include <vector>

namespace reactline {

/// A group of point loads swept across the bridge. The head is the first axle
/// in travel direction; axle i sits at head_position - offset(i), where
/// offsets are the cumulative spacings measured backward from the head.
struct AxleTrain {
  std::vector<double> loads_kn;    // each > 0
  std::vector<double> spacings_m;  // size loads_kn.size() - 1, each > 0

  std::size_t axle_count() const { return loads_kn.size(); }

  /// Head-to-rear distance; 0 for a single axle.
  double length() const;

  /// offsets()[0] == 0; offsets().back() == length().
  std::vector<double> offsets() const;

  /// The same vehicle traveling the other way: loads and spacings reversed.
  AxleTrain reversed() const;

  /// Throws std::invalid_argument on an empty train, a spacing-count mismatch,
  /// or any non-positive entry.
  void validate() const;
};

}  // namespace reactline
