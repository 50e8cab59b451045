#include "reactline/fleet.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace reactline {

using nlohmann::json;

void FleetSpec::validate() const {
  if (classes.empty()) throw std::runtime_error("fleet spec: no classes");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const FleetClass& c = classes[i];
    const std::string where = "fleet spec class " + std::to_string(i + 1);
    if (c.axle_count < 2 || c.axle_count > 13) {
      throw std::runtime_error(where + ": axle_count must be 2..13");
    }
    if (!(c.mix_weight > 0.0)) throw std::runtime_error(where + ": mix_weight must be positive");
    if (!(c.ln_gvw_sigma > 0.0)) throw std::runtime_error(where + ": ln_gvw_sigma must be positive");
    if (!std::isfinite(c.ln_gvw_mean)) throw std::runtime_error(where + ": ln_gvw_mean not finite");
    if (static_cast<int>(c.axle_split.size()) != c.axle_count) {
      throw std::runtime_error(where + ": axle_split length must equal axle_count");
    }
    for (double s : c.axle_split) {
      if (!(s > 0.0)) throw std::runtime_error(where + ": axle_split entries must be positive");
    }
    if (static_cast<int>(c.spacings_m.size()) != c.axle_count - 1) {
      throw std::runtime_error(where + ": spacings_m length must be axle_count - 1");
    }
    for (double s : c.spacings_m) {
      if (!(s > 0.0)) throw std::runtime_error(where + ": spacings must be positive");
    }
    if (c.split_jitter < 0.0 || c.split_jitter >= 1.0) {
      throw std::runtime_error(where + ": split_jitter must be in [0, 1)");
    }
  }
}

FleetSpec load_fleet_spec(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("fleet spec: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("classes") || !doc["classes"].is_array()) {
    throw std::runtime_error("fleet spec: missing \"classes\" array");
  }
  FleetSpec spec;
  for (const json& c : doc["classes"]) {
    if (!c.is_object()) throw std::runtime_error("fleet spec: class entries must be objects");
    FleetClass fc;
    auto num = [&](const char* key, double fallback, bool required) {
      if (!c.contains(key)) {
        if (required) throw std::runtime_error(std::string("fleet spec: missing \"") + key + "\"");
        return fallback;
      }
      if (!c[key].is_number()) {
        throw std::runtime_error(std::string("fleet spec: \"") + key + "\" must be a number");
      }
      return c[key].get<double>();
    };
    fc.axle_count = static_cast<int>(num("axle_count", 0, true));
    fc.mix_weight = num("mix_weight", 1.0, false);
    fc.ln_gvw_mean = num("ln_gvw_mean", 0, true);
    fc.ln_gvw_sigma = num("ln_gvw_sigma", 0, true);
    fc.split_jitter = num("split_jitter", 0.1, false);
    auto arr = [&](const char* key) {
      if (!c.contains(key) || !c[key].is_array()) {
        throw std::runtime_error(std::string("fleet spec: missing \"") + key + "\" array");
      }
      std::vector<double> v;
      for (const json& e : c[key]) {
        if (!e.is_number()) {
          throw std::runtime_error(std::string("fleet spec: \"") + key + "\" must hold numbers");
        }
        v.push_back(e.get<double>());
      }
      return v;
    };
    fc.axle_split = arr("axle_split");
    fc.spacings_m = arr("spacings_m");
    spec.classes.push_back(std::move(fc));
  }
  spec.validate();
  return spec;
}

FleetSpec load_fleet_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("fleet spec: cannot open " + path);
  return load_fleet_spec(in);
}

namespace {

// Uniform in (0, 1): top 53 bits, offset half a step so 0 never appears
// (Box-Muller takes a log of it).
double next_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Fresh pair per call, spare discarded: costs one draw but keeps the record
// stream independent of call history, so fleets of different sizes share a
// prefix for the same seed.
double next_normal(std::mt19937_64& rng) {
  double u1 = next_uniform(rng);
  double u2 = next_uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

}  // namespace

std::vector<VehicleRecord> synthesize_fleet(const FleetSpec& spec, long long n,
                                            std::uint64_t seed) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("fleet size must be at least 1");

  double mix_total = 0.0;
  for (const FleetClass& c : spec.classes) mix_total += c.mix_weight;

  std::mt19937_64 rng(seed);
  std::vector<VehicleRecord> fleet;
  fleet.reserve(static_cast<std::size_t>(n));

  for (long long i = 0; i < n; ++i) {
    double pick = next_uniform(rng) * mix_total;
    std::size_t ci = 0;
    for (; ci + 1 < spec.classes.size(); ++ci) {
      pick -= spec.classes[ci].mix_weight;
      if (pick < 0.0) break;
    }
    const FleetClass& c = spec.classes[ci];

    double gvw = std::exp(c.ln_gvw_mean + c.ln_gvw_sigma * next_normal(rng));

    VehicleRecord rec;
    rec.id = i + 1;
    rec.axle_weights_kn.resize(static_cast<std::size_t>(c.axle_count));
    double share_sum = 0.0;
    for (int a = 0; a < c.axle_count; ++a) {
      double wobble = 1.0 + c.split_jitter * (2.0 * next_uniform(rng) - 1.0);
      double share = c.axle_split[static_cast<std::size_t>(a)] * wobble;
      rec.axle_weights_kn[static_cast<std::size_t>(a)] = share;
      share_sum += share;
    }
    for (double& w : rec.axle_weights_kn) w = w / share_sum * gvw;
    rec.axle_spacings_m = c.spacings_m;
    fleet.push_back(std::move(rec));
  }
  return fleet;
}

}  // namespace reactline
