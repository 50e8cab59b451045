#include "reactline/cache.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "reactline/text.hpp"

namespace reactline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path csv_path(const std::string& dir, const EnvelopeKey& key) {
  return fs::path(dir) / (key.digest() + ".csv");
}

fs::path sidecar_path(const std::string& dir, const EnvelopeKey& key) {
  return fs::path(dir) / (key.digest() + ".json");
}

// The sidecar must describe exactly the computation we want; a digest
// collision or a stale hand-edited file reads as a miss.
bool sidecar_matches(const json& doc, const EnvelopeKey& key) {
  auto str = [&](const char* k) -> std::string {
    return doc.contains(k) && doc[k].is_string() ? doc[k].get<std::string>() : "";
  };
  auto num = [&](const char* k) -> long long {
    return doc.contains(k) && doc[k].is_number_integer() ? doc[k].get<long long>() : -1;
  };
  return str("fleet_fingerprint") == hex64(key.fleet_fingerprint) &&
         num("span_count") == key.span_count && str("span_m") == format_double(key.span_m) &&
         num("support") == key.support && str("step_m") == format_double(key.step_m) &&
         str("directions") == (key.directions == Direction::Both ? "both" : "forward");
}

}  // namespace

std::optional<EnvelopeSet> load_cached_envelopes(const std::string& cache_dir,
                                                 const EnvelopeKey& key,
                                                 std::size_t expected_count) {
  std::ifstream side(sidecar_path(cache_dir, key));
  if (!side) return std::nullopt;
  json doc;
  try {
    doc = json::parse(side);
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
  if (!sidecar_matches(doc, key)) return std::nullopt;

  std::ifstream in(csv_path(cache_dir, key));
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) ||
      trim(line) != "vehicle_id,max_kn,min_kn,pos_max_m,pos_min_m") {
    return std::nullopt;
  }

  EnvelopeSet set;
  set.key = key;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 5) return std::nullopt;
    try {
      set.ids.push_back(parse_int(trim(cells[0])));
      ReactionEnvelope e;
      e.max_kn = parse_double(trim(cells[1]));
      e.min_kn = parse_double(trim(cells[2]));
      e.pos_max_m = parse_double(trim(cells[3]));
      e.pos_min_m = parse_double(trim(cells[4]));
      set.envelopes.push_back(e);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (set.envelopes.size() != expected_count) return std::nullopt;
  return set;
}

void store_cached_envelopes(const std::string& cache_dir, const EnvelopeSet& set) {
  fs::create_directories(cache_dir);

  json side;
  side["fleet_fingerprint"] = hex64(set.key.fleet_fingerprint);
  side["span_count"] = set.key.span_count;
  side["span_m"] = format_double(set.key.span_m);
  side["support"] = set.key.support;
  side["step_m"] = format_double(set.key.step_m);
  side["directions"] = set.key.directions == Direction::Both ? "both" : "forward";
  side["vehicle_count"] = set.envelopes.size();

  std::ostringstream body;
  body << "vehicle_id,max_kn,min_kn,pos_max_m,pos_min_m\n";
  for (std::size_t i = 0; i < set.envelopes.size(); ++i) {
    const ReactionEnvelope& e = set.envelopes[i];
    body << set.ids[i] << "," << format_double(e.max_kn) << "," << format_double(e.min_kn)
         << "," << format_double(e.pos_max_m) << "," << format_double(e.pos_min_m) << "\n";
  }

  // Write-then-rename so readers never see a torn entry; the CSV lands first
  // and the sidecar last, because the sidecar is what marks an entry live.
  auto publish = [&](const fs::path& final_path, const std::string& content) {
    fs::path tmp = final_path;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
    out << content;
    out.close();
    if (!out) throw std::runtime_error("cache: short write to " + tmp.string());
    fs::rename(tmp, final_path);
  };
  publish(csv_path(cache_dir, set.key), body.str());
  publish(sidecar_path(cache_dir, set.key), side.dump(2) + "\n");
}

CachedEnvelopeResult cached_vehicle_envelopes(const std::vector<VehicleRecord>& records,
                                              const BridgeGeometry& geometry, int support,
                                              const SweepConfig& cfg, int jobs,
                                              const std::string& cache_dir) {
  if (cache_dir.empty()) {
    return {vehicle_envelopes(records, geometry, support, cfg, jobs), false};
  }
  EnvelopeKey key{fleet_fingerprint(records), geometry.span_count, geometry.span_m,
                  support,  cfg.step_m,       cfg.directions};
  if (auto hit = load_cached_envelopes(cache_dir, key, records.size())) {
    return {std::move(*hit), true};
  }
  EnvelopeSet fresh = vehicle_envelopes(records, geometry, support, cfg, jobs);
  store_cached_envelopes(cache_dir, fresh);
  return {std::move(fresh), false};
}

}  // namespace reactline
