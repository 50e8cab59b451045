#pragma once

#include <vector>

namespace reactline {

/// Continuous prismatic beam on equally spaced pinned supports.
///
/// Supports are numbered 0..span_count left to right; global x runs from 0 at
/// support 0 to total_length() at the far abutment. Support reactions of an
/// equal-span prismatic beam are independent of EI, which is why no material
/// or section properties appear anywhere in this library.
struct BridgeGeometry {
  int span_count = 1;   // 1..4 spans
  double span_m = 1.0;  // single-span length, > 0

  int support_count() const { return span_count + 1; }
  double total_length() const { return span_count * span_m; }
  double support_position(int support) const { return support * span_m; }

  /// Throws std::invalid_argument on an unsupported family or span length.
  void validate() const;
};

struct SupportRef {
  int span_count;
  int support;
};

/// Letter aliases name the left half plus the middle support of each family:
///   A = 1-span/0,  B,C = 2-span/0,1,  D,E,F = 3-span/0,1,2,  G,H,I = 4-span/0,1,2.
/// Right-half supports mirror these and are addressed by index only.
/// Returns 0 when the pair has no letter.
char support_letter(int span_count, int support);

/// Parses "A".."I" (case-insensitive); throws std::invalid_argument otherwise.
SupportRef support_from_letter(char letter);

/// The standard span lengths (m) used for model coverage checks and spectra:
/// every metre from 1 to 30, then every 5 m up to 100. 44 values.
std::vector<double> default_span_grid();

}  // namespace reactline
