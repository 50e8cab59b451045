#include "reactline/geometry.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace reactline {

void BridgeGeometry::validate() const {
  if (span_count < 1 || span_count > 4) {
    throw std::invalid_argument("span_count must be 1..4, got " + std::to_string(span_count));
  }
  if (!(span_m > 0.0) || !std::isfinite(span_m)) {
    throw std::invalid_argument("span_m must be a positive finite length");
  }
}

namespace {
// Row r = letter 'A'+r.
constexpr SupportRef kLetterTable[] = {
    {1, 0},  // A
    {2, 0},  // B
    {2, 1},  // C
    {3, 0},  // D
    {3, 1},  // E
    {3, 2},  // F
    {4, 0},  // G
    {4, 1},  // H
    {4, 2},  // I
};
}  // namespace

char support_letter(int span_count, int support) {
  for (int i = 0; i < 9; ++i) {
    if (kLetterTable[i].span_count == span_count && kLetterTable[i].support == support) {
      return static_cast<char>('A' + i);
    }
  }
  return 0;
}

SupportRef support_from_letter(char letter) {
  char u = static_cast<char>(std::toupper(static_cast<unsigned char>(letter)));
  if (u < 'A' || u > 'I') {
    throw std::invalid_argument(std::string("unknown support letter '") + letter +
                                "' (expected A..I)");
  }
  return kLetterTable[u - 'A'];
}

std::vector<double> default_span_grid() {
  std::vector<double> grid;
  grid.reserve(44);
  for (int m = 1; m <= 30; ++m) grid.push_back(static_cast<double>(m));
  for (int m = 35; m <= 100; m += 5) grid.push_back(static_cast<double>(m));
  return grid;
}

}  // namespace reactline
