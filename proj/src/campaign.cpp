#include "reactline/campaign.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "reactline/cache.hpp"
#include "reactline/exceedance.hpp"
#include "reactline/load_model.hpp"
#include "reactline/text.hpp"
#include "reactline/wim.hpp"

namespace reactline {

namespace fs = std::filesystem;
using nlohmann::json;

CampaignConfig load_campaign_config(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("campaign config: invalid JSON: ") + e.what());
  }
  auto fail = [](const std::string& msg) -> void {
    throw std::runtime_error("campaign config: " + msg);
  };
  if (!doc.is_object()) fail("root must be an object");

  CampaignConfig cfg;

  if (!doc.contains("fleets") || !doc["fleets"].is_array() || doc["fleets"].empty()) {
    fail("missing non-empty \"fleets\" array");
  }
  for (const json& f : doc["fleets"]) {
    if (!f.is_object() || !f.contains("name") || !f["name"].is_string() ||
        !f.contains("wim_csv") || !f["wim_csv"].is_string()) {
      fail("each fleet needs \"name\" and \"wim_csv\"");
    }
    cfg.fleets.push_back({f["name"].get<std::string>(), f["wim_csv"].get<std::string>()});
  }

  if (!doc.contains("models") || !doc["models"].is_array() || doc["models"].empty()) {
    fail("missing non-empty \"models\" array");
  }
  for (const json& m : doc["models"]) {
    if (!m.is_string()) fail("\"models\" must hold file paths");
    cfg.model_files.push_back(m.get<std::string>());
  }

  if (!doc.contains("families") || !doc["families"].is_array() || doc["families"].empty()) {
    fail("missing non-empty \"families\" array");
  }
  for (const json& f : doc["families"]) {
    if (!f.is_object() || !f.contains("span_count") ||
        !f["span_count"].is_number_integer() || !f.contains("supports") ||
        !f["supports"].is_array() || f["supports"].empty()) {
      fail("each family needs \"span_count\" and a non-empty \"supports\" array");
    }
    CampaignFamily fam;
    fam.span_count = f["span_count"].get<int>();
    if (fam.span_count < 1 || fam.span_count > 4) fail("span_count must be 1..4");
    for (const json& s : f["supports"]) {
      if (!s.is_number_integer()) fail("supports must be integers");
      int idx = s.get<int>();
      if (idx < 0 || idx > fam.span_count) {
        fail("support " + std::to_string(idx) + " out of range for " +
             std::to_string(fam.span_count) + " spans");
      }
      fam.supports.push_back(idx);
    }
    cfg.families.push_back(std::move(fam));
  }

  if (doc.contains("span_grid_m")) {
    if (!doc["span_grid_m"].is_array()) fail("\"span_grid_m\" must be an array");
    for (const json& s : doc["span_grid_m"]) {
      if (!s.is_number() || !(s.get<double>() > 0.0)) fail("span grid values must be positive");
      cfg.span_grid_m.push_back(s.get<double>());
    }
  }

  if (doc.contains("step_m")) {
    if (!doc["step_m"].is_number() || !(doc["step_m"].get<double>() > 0.0)) {
      fail("\"step_m\" must be positive");
    }
    cfg.sweep.step_m = doc["step_m"].get<double>();
  }
  if (doc.contains("directions")) {
    std::string d = doc["directions"].is_string() ? doc["directions"].get<std::string>() : "";
    if (d == "both") cfg.sweep.directions = Direction::Both;
    else if (d == "forward") cfg.sweep.directions = Direction::Forward;
    else fail("\"directions\" must be \"both\" or \"forward\"");
  }

  if (!doc.contains("output_dir") || !doc["output_dir"].is_string() ||
      doc["output_dir"].get<std::string>().empty()) {
    fail("missing \"output_dir\"");
  }
  cfg.output_dir = doc["output_dir"].get<std::string>();
  if (doc.contains("cache_dir")) {
    if (!doc["cache_dir"].is_string()) fail("\"cache_dir\" must be a string");
    cfg.cache_dir = doc["cache_dir"].get<std::string>();
  }
  return cfg;
}

CampaignConfig load_campaign_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("campaign config: cannot open " + path);
  return load_campaign_config(in);
}

namespace {

std::string slug(const std::string& name) {
  std::string out;
  for (char ch : name) {
    if ((ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '-' || ch == '.') {
      out += ch;
    } else if (ch >= 'A' && ch <= 'Z') {
      out += static_cast<char>(ch - 'A' + 'a');
    } else {
      out += '-';
    }
  }
  return out.empty() ? "unnamed" : out;
}

std::string cell_digest(std::uint64_t fleet_fp, int span_count, int support,
                        const std::string& model_name, const std::vector<double>& grid,
                        const SweepConfig& sweep) {
  std::uint64_t h = fnv1a64("campaign-cell-v1");
  h = fnv1a64(hex64(fleet_fp), h);
  h = fnv1a64("|" + std::to_string(span_count) + "|" + std::to_string(support), h);
  h = fnv1a64("|" + model_name + "|", h);
  for (double s : grid) h = fnv1a64(format_double(s) + ",", h);
  h = fnv1a64("|" + format_double(sweep.step_m), h);
  h = fnv1a64(sweep.directions == Direction::Both ? "|B" : "|F", h);
  return hex64(h);
}

// Envelope sets for one (fleet, family, support) over the whole grid, shared
// by every model cell. `all_hit` reports whether the disk cache served every
// span, which is what distinguishes "cache-hit" cells from "done" ones.
struct SharedEnvelopes {
  std::vector<EnvelopeSet> per_span;
  std::vector<std::string> keys;
  bool all_hit = true;
  std::string error;
};

SharedEnvelopes build_envelopes(const std::vector<VehicleRecord>& records,
                                int span_count, int support,
                                const std::vector<double>& grid, const SweepConfig& sweep,
                                int jobs, const std::string& cache_dir) {
  SharedEnvelopes out;
  try {
    for (double span : grid) {
      BridgeGeometry g{span_count, span};
      CachedEnvelopeResult r =
          cached_vehicle_envelopes(records, g, support, sweep, jobs, cache_dir);
      out.all_hit = out.all_hit && r.cache_hit;
      out.keys.push_back(r.set.key.digest());
      out.per_span.push_back(std::move(r.set));
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

void write_file_atomically(const fs::path& final_path, const std::string& content) {
  fs::path tmp = final_path;
  tmp += ".tmp";
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("campaign: cannot write " + tmp.string());
  out << content;
  out.close();
  if (!out) throw std::runtime_error("campaign: short write to " + tmp.string());
  fs::rename(tmp, final_path);
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config, int jobs) {
  std::vector<double> grid =
      config.span_grid_m.empty() ? default_span_grid() : config.span_grid_m;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  fs::create_directories(config.output_dir);

  CampaignResult result;

  for (const CampaignFleet& fleet : config.fleets) {
    std::vector<VehicleRecord> records;
    std::string fleet_error;
    std::uint64_t fleet_fp = 0;
    try {
      ParseResult parsed = parse_wim_file(fleet.wim_csv);
      records = std::move(parsed.records);
      if (records.empty()) fleet_error = "fleet has no accepted records";
      else fleet_fp = fleet_fingerprint(records);
    } catch (const std::exception& e) {
      fleet_error = e.what();
    }

    for (const CampaignFamily& family : config.families) {
      for (int support : family.supports) {
        SharedEnvelopes shared;
        if (fleet_error.empty()) {
          shared = build_envelopes(records, family.span_count, support, grid,
                                   config.sweep, jobs, config.cache_dir);
        }

        for (const std::string& model_file : config.model_files) {
          CampaignCell cell;
          cell.fleet = fleet.name;
          cell.span_count = family.span_count;
          cell.support = support;

          if (!fleet_error.empty()) {
            cell.model = model_file;
            cell.state = "error";
            cell.error = "fleet \"" + fleet.name + "\": " + fleet_error;
            result.cells.push_back(std::move(cell));
            continue;
          }
          if (!shared.error.empty()) {
            cell.model = model_file;
            cell.state = "error";
            cell.error = shared.error;
            result.cells.push_back(std::move(cell));
            continue;
          }
          cell.cache_keys = shared.keys;

          try {
            LiveLoadModel model = load_model_file(model_file);
            cell.model = model.name;
            cell.config_digest = cell_digest(fleet_fp, family.span_count, support,
                                             model.name, grid, config.sweep);

            ExceedanceSpectrum spectrum;
            spectrum.model_name = model.name;
            spectrum.fleet_name = fleet.name;
            spectrum.span_count = family.span_count;
            spectrum.support = support;
            for (std::size_t i = 0; i < grid.size(); ++i) {
              BridgeGeometry g{family.span_count, grid[i]};
              InfluenceLine il = build_influence_line(g, support);
              ReactionEnvelope ref = model_envelope(il, model, config.sweep);
              RateResult rate = exceedance_rate(shared.per_span[i], ref);
              spectrum.points.push_back(
                  {grid[i], rate.rate_percent, rate.n_exceeding, rate.n_total});
            }

            cell.output_file = slug(fleet.name) + "_" +
                               std::to_string(family.span_count) + "span_s" +
                               std::to_string(support) + "_" + slug(model.name) + ".csv";
            std::ostringstream csv;
            spectrum_to_csv(spectrum, csv);
            write_file_atomically(fs::path(config.output_dir) / cell.output_file,
                                  csv.str());
            cell.state = shared.all_hit ? "cache-hit" : "done";
          } catch (const std::exception& e) {
            if (cell.model.empty()) cell.model = model_file;
            cell.state = "error";
            cell.error = e.what();
            cell.output_file.clear();
          }
          result.cells.push_back(std::move(cell));
        }
      }
    }
  }

  json manifest;
  manifest["span_grid_m"] = json::array();
  for (double s : grid) manifest["span_grid_m"].push_back(format_double(s));
  manifest["step_m"] = format_double(config.sweep.step_m);
  manifest["directions"] = config.sweep.directions == Direction::Both ? "both" : "forward";
  manifest["cells"] = json::array();
  for (const CampaignCell& c : result.cells) {
    json jc;
    jc["fleet"] = c.fleet;
    jc["model"] = c.model;
    jc["span_count"] = c.span_count;
    jc["support"] = c.support;
    jc["state"] = c.state;
    if (!c.output_file.empty()) jc["output"] = c.output_file;
    if (!c.error.empty()) jc["error"] = c.error;
    if (!c.config_digest.empty()) jc["config_digest"] = c.config_digest;
    if (!c.cache_keys.empty()) jc["cache_keys"] = c.cache_keys;
    manifest["cells"].push_back(std::move(jc));
  }

  fs::path manifest_path = fs::path(config.output_dir) / "manifest.json";
  write_file_atomically(manifest_path, manifest.dump(2) + "\n");
  result.manifest_path = manifest_path.string();
  return result;
}

}  // namespace reactline
