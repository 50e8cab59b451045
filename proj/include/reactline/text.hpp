#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace reactline {

/// Shortest decimal form that parses back to exactly the same double.
/// Used for every CSV number we emit, so caches and spectra round-trip
/// bit-for-bit and reruns are byte-identical.
std::string format_double(double v);

/// Strict double parser; throws std::runtime_error on garbage or trailing junk.
double parse_double(const std::string& cell);

/// Strict integer parser for ids and counts.
std::int64_t parse_int(const std::string& cell);

/// Splits one CSV line on commas. No quoting: every format in this project is
/// purely numeric plus simple tags, and tags are rejected at write time if they
/// contain separators.
std::vector<std::string> split_csv_line(const std::string& line);

/// Strips ASCII whitespace from both ends (also eats a stray trailing CR from
/// files with CRLF endings).
std::string trim(const std::string& s);

/// FNV-1a 64-bit running hash; `seed` chains multiple pieces.
std::uint64_t fnv1a64(const std::string& s,
                      std::uint64_t seed = 14695981039346656037ull);

/// 16-digit lowercase hex, used for cache keys and config digests.
std::string hex64(std::uint64_t v);

}  // namespace reactline
