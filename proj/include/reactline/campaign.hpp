#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "reactline/sweep.hpp"

namespace reactline {

struct CampaignFleet {
  std::string name;
  std::string wim_csv;
};

struct CampaignFamily {
  int span_count = 1;
  std::vector<int> supports;
};

/// Batch description: every (fleet x family x support x model) combination
/// becomes one output spectrum. Loaded from JSON (see README).
struct CampaignConfig {
  std::vector<CampaignFleet> fleets;
  std::vector<std::string> model_files;
  std::vector<CampaignFamily> families;
  std::vector<double> span_grid_m;  // empty = default grid
  SweepConfig sweep;
  std::string output_dir;
  std::string cache_dir;  // "" disables the envelope cache
};

CampaignConfig load_campaign_config(std::istream& in);
CampaignConfig load_campaign_config_file(const std::string& path);

struct CampaignCell {
  std::string fleet;
  std::string model;  // model name, or the file path when it failed to load
  int span_count = 0;
  int support = 0;
  std::string output_file;  // relative to output_dir; empty on error
  std::string state;        // "done" | "cache-hit" | "error"
  std::string error;        // reason when state == "error"
  std::string config_digest;
  std::vector<std::string> cache_keys;  // one per span, when envelopes were built
};

struct CampaignResult {
  std::vector<CampaignCell> cells;
  std::string manifest_path;
};

/// Runs every cell, isolating failures: a broken fleet file, model file, or
/// span poisons only the cells that depend on it, and the manifest records
/// the reason. Vehicle sweeps are shared across models (they never see one)
/// and reused from the cache across runs. Spectrum CSVs and the manifest are
/// written under output_dir; reruns produce byte-identical spectra.
CampaignResult run_campaign(const CampaignConfig& config, int jobs = 1);

}  // namespace reactline
