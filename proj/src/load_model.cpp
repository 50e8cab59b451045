#include "reactline/load_model.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <stdexcept>

#include <json.hpp>

#include "reactline/text.hpp"

namespace reactline {

using nlohmann::json;

std::vector<double> SpacingSpec::expand() const {
  if (!is_range()) return {min_m};
  std::vector<double> out;
  for (long long i = 0;; ++i) {
    double v = min_m + static_cast<double>(i) * step_m;
    if (v > max_m + step_m * 1e-9) break;
    // An integral number of steps lands on max up to roundoff; emit max itself
    // so downstream labels and caches see the nominal endpoint.
    if (std::fabs(v - max_m) <= step_m * 1e-6) v = max_m;
    out.push_back(v);
  }
  return out;
}

bool ModelVariant::applies_to(double span_m) const {
  if (span_min_m && span_m < *span_min_m) return false;
  if (span_max_m && span_m > *span_max_m) return false;
  return true;
}

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("model config: " + msg);
}

double require_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number()) {
    fail(where + ": missing or non-numeric \"" + key + "\"");
  }
  return j[key].get<double>();
}

std::optional<double> optional_bound(const json& applies, const char* key,
                                     const std::string& where) {
  if (!applies.contains(key) || applies[key].is_null()) return std::nullopt;
  if (!applies[key].is_number()) {
    fail(where + ": \"" + std::string(key) + "\" must be a number or null");
  }
  return applies[key].get<double>();
}

ModelVariant parse_variant(const json& v, std::size_t index) {
  const std::string where = "variant " + std::to_string(index + 1);
  if (!v.is_object()) fail(where + ": not an object");
  if (!v.contains("label") || !v["label"].is_string()) {
    fail(where + ": missing \"label\"");
  }

  ModelVariant out;
  out.label = v["label"].get<std::string>();

  if (v.contains("applies")) {
    if (!v["applies"].is_object()) fail(where + ": \"applies\" must be an object");
    out.span_min_m = optional_bound(v["applies"], "span_min_m", where);
    out.span_max_m = optional_bound(v["applies"], "span_max_m", where);
    if (out.span_min_m && out.span_max_m && *out.span_min_m > *out.span_max_m) {
      fail(where + ": span_min_m exceeds span_max_m");
    }
  }

  if (v.contains("truck_scale")) {
    if (!v["truck_scale"].is_number()) fail(where + ": \"truck_scale\" must be a number");
    out.truck_scale = v["truck_scale"].get<double>();
    if (!(out.truck_scale > 0.0)) fail(where + ": truck_scale must be positive");
  }

  if (v.contains("axles_kn")) {
    if (!v["axles_kn"].is_array()) fail(where + ": \"axles_kn\" must be an array");
    for (const json& a : v["axles_kn"]) {
      if (!a.is_number()) fail(where + ": axle loads must be numbers");
      double w = a.get<double>();
      if (!(w > 0.0)) fail(where + ": axle load must be positive, got " + format_double(w));
      out.axles_kn.push_back(w);
    }
  }

  if (v.contains("spacings_m")) {
    if (!v["spacings_m"].is_array()) fail(where + ": \"spacings_m\" must be an array");
    for (const json& s : v["spacings_m"]) {
      SpacingSpec spec;
      if (s.is_number()) {
        spec.min_m = spec.max_m = s.get<double>();
      } else if (s.is_object()) {
        spec.min_m = require_number(s, "min", where);
        spec.max_m = require_number(s, "max", where);
        spec.step_m = require_number(s, "step", where);
        if (spec.min_m > spec.max_m) fail(where + ": spacing range has min > max");
        if (!(spec.step_m > 0.0)) fail(where + ": spacing range step must be positive");
      } else {
        fail(where + ": spacings must be numbers or {min, max, step} objects");
      }
      if (!(spec.min_m > 0.0)) fail(where + ": spacings must be positive");
      out.spacings.push_back(spec);
    }
  }

  std::size_t want = out.axles_kn.size() >= 2 ? out.axles_kn.size() - 1 : 0;
  if (out.spacings.size() != want) {
    fail(where + ": " + std::to_string(out.axles_kn.size()) + " axles need " +
         std::to_string(want) + " spacings, got " + std::to_string(out.spacings.size()));
  }

  if (v.contains("uniform_kn_per_m")) {
    if (!v["uniform_kn_per_m"].is_number()) {
      fail(where + ": \"uniform_kn_per_m\" must be a number");
    }
    out.uniform_kn_per_m = v["uniform_kn_per_m"].get<double>();
    if (out.uniform_kn_per_m < 0.0) fail(where + ": uniform load must be >= 0");
  }

  if (out.axles_kn.empty() && out.uniform_kn_per_m == 0.0) {
    fail(where + ": needs axles, a uniform load, or both");
  }
  return out;
}

}  // namespace

LiveLoadModel load_model_config(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("root must be an object");
  if (!doc.contains("name") || !doc["name"].is_string() ||
      doc["name"].get<std::string>().empty()) {
    fail("missing \"name\"");
  }
  if (!doc.contains("variants") || !doc["variants"].is_array()) {
    fail("missing \"variants\" array");
  }

  LiveLoadModel model;
  model.name = doc["name"].get<std::string>();
  for (std::size_t i = 0; i < doc["variants"].size(); ++i) {
    model.variants.push_back(parse_variant(doc["variants"][i], i));
  }
  if (model.variants.empty()) fail("empty variant list");

  for (double span : default_span_grid()) {
    bool covered = false;
    for (const ModelVariant& v : model.variants) {
      if (v.applies_to(span)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      fail("span-coverage gap: no variant of \"" + model.name + "\" applies at " +
           format_double(span) + " m");
    }
  }
  return model;
}

LiveLoadModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("model config: cannot open " + path);
  return load_model_config(in);
}

std::vector<ConcreteCase> resolve_cases(const LiveLoadModel& model, double span_m) {
  std::vector<ConcreteCase> cases;
  for (const ModelVariant& v : model.variants) {
    if (!v.applies_to(span_m)) continue;

    // Expand every ranged gap; the odometer walks the Cartesian product in
    // order, so case order (and everything derived from it) is stable.
    std::vector<std::vector<double>> choices;
    choices.reserve(v.spacings.size());
    for (const SpacingSpec& s : v.spacings) choices.push_back(s.expand());

    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
      ConcreteCase c;
      c.label = v.label;
      c.uniform_kn_per_m = v.uniform_kn_per_m;
      for (double w : v.axles_kn) c.train.loads_kn.push_back(w * v.truck_scale);
      for (std::size_t gi = 0; gi < choices.size(); ++gi) {
        double gap = choices[gi][idx[gi]];
        c.train.spacings_m.push_back(gap);
        if (v.spacings[gi].is_range()) {
          c.label += " gap" + std::to_string(gi + 1) + "=" + format_double(gap) + "m";
        }
      }
      cases.push_back(std::move(c));

      std::size_t gi = choices.size();
      bool rolled = true;
      while (gi > 0) {
        --gi;
        if (++idx[gi] < choices[gi].size()) {
          rolled = false;
          break;
        }
        idx[gi] = 0;
      }
      if (rolled) break;  // odometer wrapped: product complete
    }
  }
  if (cases.empty()) {
    throw std::runtime_error("model \"" + model.name + "\" has no variant for span " +
                             format_double(span_m) + " m");
  }
  return cases;
}

namespace {

// Full-bridge uniform offset, evaluated on the left-half mirror twin when the
// support sits past the midline. The integral is the same by symmetry, and
// sharing the arithmetic keeps mirrored model envelopes bit-identical, not
// merely close.
double full_uniform_offset(const InfluenceLine& il, double w) {
  const BridgeGeometry& g = il.geometry();
  int mirror = g.span_count - il.support();
  if (mirror < il.support()) {
    InfluenceLine twin = build_influence_line(g, mirror);
    return uniform_reaction(twin, w, 0.0, g.total_length());
  }
  return uniform_reaction(il, w, 0.0, g.total_length());
}

}  // namespace

ReactionEnvelope case_envelope(const InfluenceLine& il, const ConcreteCase& c,
                               const SweepConfig& cfg) {
  if (c.train.loads_kn.empty()) {
    if (c.uniform_kn_per_m == 0.0) {
      throw std::invalid_argument("case \"" + c.label + "\" has no load at all");
    }
    double u = full_uniform_offset(il, c.uniform_kn_per_m);
    return {u, u, 0.0, 0.0};
  }
  ReactionEnvelope env = sweep_envelope(il, c.train, cfg);
  if (c.uniform_kn_per_m != 0.0) {
    // The uniform component is position-independent, so it shifts every swept
    // sample equally; truck-only cases skip this branch entirely and stay on
    // the exact same code path as a bare sweep.
    double u = full_uniform_offset(il, c.uniform_kn_per_m);
    env.max_kn += u;
    env.min_kn += u;
  }
  return env;
}

ReactionEnvelope model_envelope(const InfluenceLine& il, const LiveLoadModel& model,
                                const SweepConfig& cfg) {
  std::vector<ConcreteCase> cases = resolve_cases(model, il.geometry().span_m);
  ReactionEnvelope out{};
  bool first = true;
  for (const ConcreteCase& c : cases) {
    ReactionEnvelope e = case_envelope(il, c, cfg);
    if (first) {
      out = e;
      first = false;
      continue;
    }
    if (e.max_kn > out.max_kn) {
      out.max_kn = e.max_kn;
      out.pos_max_m = e.pos_max_m;
    }
    if (e.min_kn < out.min_kn) {
      out.min_kn = e.min_kn;
      out.pos_min_m = e.pos_min_m;
    }
  }
  return out;
}

}  // namespace reactline
