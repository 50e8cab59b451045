// reactline: influence lines, load-model envelopes and exceedance rate
// spectra for support reactions of short continuous bridges.

#include <CLI11.hpp>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "reactline/campaign.hpp"
#include "reactline/exceedance.hpp"
#include "reactline/fleet.hpp"
#include "reactline/geometry.hpp"
#include "reactline/influence_line.hpp"
#include "reactline/load_model.hpp"
#include "reactline/svg.hpp"
#include "reactline/sweep.hpp"
#include "reactline/text.hpp"
#include "reactline/wim.hpp"

namespace fs = std::filesystem;
using namespace reactline;

namespace {

#ifdef REACTLINE_MODELS_DIR
constexpr const char* kBuiltinModelsDir = REACTLINE_MODELS_DIR;
#else
constexpr const char* kBuiltinModelsDir = "";
#endif

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : fallback;
}

/// Flag beats environment beats the built-in / config fallback.
std::string pick_cache_dir(const std::string& flag_value, const std::string& fallback) {
  if (!flag_value.empty()) return flag_value;
  return env_or("REACTLINE_CACHE_DIR", fallback);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path);
}

/// Geometry selection shared by influence / envelope / ers: a numeric support
/// index (with --spans) or a letter alias that implies the family.
struct GeoArgs {
  int spans = 0;  // 0 = not given
  std::string support;
  double length = 0.0;
};

struct GeoChoice {
  BridgeGeometry geometry;
  int support = 0;
};

GeoChoice resolve_geometry(const GeoArgs& args) {
  if (args.support.empty()) throw std::runtime_error("--support is required");
  GeoChoice out;
  const std::string& token = args.support;
  if (token.size() == 1 && std::isalpha(static_cast<unsigned char>(token[0]))) {
    SupportRef ref = support_from_letter(token[0]);
    if (args.spans != 0 && args.spans != ref.span_count) {
      throw std::runtime_error("support letter " + token + " names a " +
                               std::to_string(ref.span_count) +
                               "-span support but --spans says " +
                               std::to_string(args.spans));
    }
    out.geometry.span_count = ref.span_count;
    out.support = ref.support;
  } else {
    if (args.spans == 0) {
      throw std::runtime_error("a numeric --support needs --spans (or use a letter alias)");
    }
    out.geometry.span_count = args.spans;
    out.support = static_cast<int>(parse_int(token));
  }
  out.geometry.span_m = args.length;
  out.geometry.validate();
  if (out.support < 0 || out.support > out.geometry.span_count) {
    throw std::runtime_error("support " + std::to_string(out.support) +
                             " out of range for " +
                             std::to_string(out.geometry.span_count) + " spans");
  }
  return out;
}

/// Accepts a path, or a catalog name looked up under --models-dir /
/// REACTLINE_MODELS_DIR / the build-time default.
std::string resolve_model_path(const std::string& value, const std::string& models_dir_flag) {
  if (fs::exists(value)) return value;
  std::string dir = models_dir_flag.empty()
                        ? env_or("REACTLINE_MODELS_DIR", kBuiltinModelsDir)
                        : models_dir_flag;
  std::vector<std::string> tried = {value};
  if (!dir.empty()) {
    std::string lower = value;
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (const std::string& name : {value, value + ".json", lower, lower + ".json"}) {
      fs::path p = fs::path(dir) / name;
      if (fs::exists(p)) return p.string();
      tried.push_back(p.string());
    }
  }
  std::string msg = "model not found: " + value + " (tried";
  for (const std::string& t : tried) msg += " " + t;
  msg += ")";
  throw std::runtime_error(msg);
}

/// The design-truck convention of a variable rear axle: the last gap of every
/// variant is swept from its nominal value up to 9.0 m in 0.1 m steps.
void apply_rear_spacing_sweep(LiveLoadModel& model) {
  for (ModelVariant& v : model.variants) {
    if (v.spacings.empty()) continue;
    SpacingSpec& last = v.spacings.back();
    if (last.is_range() || last.min_m >= 9.0) continue;
    last.max_m = 9.0;
    last.step_m = 0.1;
  }
}

Direction parse_directions(const std::string& value) {
  if (value == "both") return Direction::Both;
  if (value == "forward") return Direction::Forward;
  throw std::runtime_error("--directions must be \"both\" or \"forward\"");
}

std::vector<double> parse_grid(const std::string& value) {
  if (value.empty()) return default_span_grid();
  std::vector<double> grid;
  for (const std::string& cell : split_csv_line(value)) {
    double v = parse_double(trim(cell));
    if (!(v > 0.0)) throw std::runtime_error("span grid values must be positive");
    grid.push_back(v);
  }
  if (grid.empty()) throw std::runtime_error("--grid must list at least one span");
  return grid;
}

std::string envelope_csv(const ReactionEnvelope& e) {
  std::ostringstream out;
  out << "max_kn,min_kn,pos_max_m,pos_min_m\n"
      << format_double(e.max_kn) << ',' << format_double(e.min_kn) << ','
      << format_double(e.pos_max_m) << ',' << format_double(e.pos_min_m) << '\n';
  return out.str();
}

int default_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// ---- subcommand runners ----------------------------------------------------

void run_influence(const GeoArgs& geo, const std::string& output) {
  GeoChoice choice = resolve_geometry(geo);
  InfluenceLine il = build_influence_line(choice.geometry, choice.support);
  double total = choice.geometry.total_length();
  long long last = static_cast<long long>(total * 100.0 + 1e-9);
  std::ostringstream out;
  out << "x_m,value\n";
  for (long long i = 0; i <= last; ++i) {
    double x = static_cast<double>(i) / 100.0;
    out << format_double(x) << ',' << format_double(il.value(x)) << '\n';
  }
  double covered = static_cast<double>(last) / 100.0;
  if (covered < total - 1e-9) {
    out << format_double(total) << ',' << format_double(il.value(total)) << '\n';
  }
  write_output(output, out.str());
}

struct EnvelopeArgs {
  GeoArgs geo;
  std::string model;
  std::string wim;
  std::string models_dir;
  double step = 0.01;
  std::string directions = "both";
  bool rear_sweep = false;
  int jobs = default_jobs();
  std::string output;
};

void run_envelope(const EnvelopeArgs& args) {
  if (args.model.empty() == args.wim.empty()) {
    throw std::runtime_error("pass exactly one of --model or --wim");
  }
  GeoChoice choice = resolve_geometry(args.geo);
  SweepConfig cfg;
  cfg.step_m = args.step;
  cfg.directions = parse_directions(args.directions);
  if (!(cfg.step_m > 0.0)) throw std::runtime_error("--step must be positive");

  ReactionEnvelope env;
  if (!args.model.empty()) {
    LiveLoadModel model = load_model_file(resolve_model_path(args.model, args.models_dir));
    if (args.rear_sweep) apply_rear_spacing_sweep(model);
    InfluenceLine il = build_influence_line(choice.geometry, choice.support);
    env = model_envelope(il, model, cfg);
  } else {
    ParseResult parsed = parse_wim_file(args.wim);
    if (parsed.records.empty()) throw std::runtime_error("no accepted vehicles in " + args.wim);
    EnvelopeSet set = vehicle_envelopes(parsed.records, choice.geometry, choice.support,
                                        cfg, args.jobs);
    env = set.envelopes.front();
    for (const ReactionEnvelope& e : set.envelopes) {
      if (e.max_kn > env.max_kn) {
        env.max_kn = e.max_kn;
        env.pos_max_m = e.pos_max_m;
      }
      if (e.min_kn < env.min_kn) {
        env.min_kn = e.min_kn;
        env.pos_min_m = e.pos_min_m;
      }
    }
    if (parsed.report.records_flagged() > 0) {
      std::cerr << "note: " << parsed.report.records_flagged() << " of "
                << parsed.report.records_total << " rows flagged and skipped\n";
    }
  }
  write_output(args.output, envelope_csv(env));
}

struct ErsArgs {
  GeoArgs geo;  // length unused; the grid supplies spans
  std::string wim;
  std::string model;
  std::string models_dir;
  std::string grid;
  double step = 0.01;
  std::string directions = "both";
  bool rear_sweep = false;
  int jobs = default_jobs();
  std::string cache_dir;
  std::string output;
};

void run_ers(const ErsArgs& args) {
  LiveLoadModel model = load_model_file(resolve_model_path(args.model, args.models_dir));
  if (args.rear_sweep) apply_rear_spacing_sweep(model);
  ParseResult parsed = parse_wim_file(args.wim);
  if (parsed.records.empty()) throw std::runtime_error("no accepted vehicles in " + args.wim);
  if (parsed.report.records_flagged() > 0) {
    std::cerr << "note: " << parsed.report.records_flagged() << " of "
              << parsed.report.records_total << " rows flagged and skipped\n";
  }

  // The support token decides the family; span lengths come from the grid.
  GeoArgs geo = args.geo;
  geo.length = 1.0;  // placeholder so the selector validates
  GeoChoice choice = resolve_geometry(geo);

  SweepConfig cfg;
  cfg.step_m = args.step;
  cfg.directions = parse_directions(args.directions);
  if (!(cfg.step_m > 0.0)) throw std::runtime_error("--step must be positive");

  std::string fleet_name = fs::path(args.wim).stem().string();
  ExceedanceSpectrum spectrum = compute_ers(
      parsed.records, fleet_name, choice.geometry.span_count, choice.support, model,
      parse_grid(args.grid), cfg, args.jobs, pick_cache_dir(args.cache_dir, ""));
  std::ostringstream out;
  spectrum_to_csv(spectrum, out);
  write_output(args.output, out.str());
}

int run_campaign_cmd(const std::string& config_path, int jobs, const std::string& cache_flag) {
  CampaignConfig cfg = load_campaign_config_file(config_path);
  cfg.cache_dir = pick_cache_dir(cache_flag, cfg.cache_dir);
  CampaignResult result = run_campaign(cfg, jobs);
  int errors = 0;
  for (const CampaignCell& cell : result.cells) {
    std::cout << '[' << cell.state << "] " << cell.fleet << " " << cell.span_count
              << "-span support " << cell.support << " vs " << cell.model;
    if (cell.state == "error") {
      ++errors;
      std::cout << ": " << cell.error;
    } else {
      std::cout << " -> " << cell.output_file;
    }
    std::cout << '\n';
  }
  std::cout << result.cells.size() << " cells, " << errors << " failed; manifest "
            << result.manifest_path << '\n';
  return errors == 0 ? 0 : 1;
}

void run_stats(const std::string& wim, bool sample_sigma, const std::string& output) {
  ParseResult parsed = parse_wim_file(wim);
  if (parsed.records.empty()) throw std::runtime_error("no accepted vehicles in " + wim);
  StatsTable table = summary_stats(parsed.records, sample_sigma);
  std::ostringstream out;
  char line[256];
  for (const StatsRow& row : table.rows) {
    std::string label = row.axle_class == 0 ? "all" : std::to_string(row.axle_class) + " axles";
    std::snprintf(line, sizeof line,
                  "%s: %lld vehicles, GVW mean %.2f kN (sd %.2f), heaviest axle mean %.2f kN (sd %.2f)\n",
                  label.c_str(), row.count, row.mean_gvw, row.sd_gvw,
                  row.mean_heaviest, row.sd_heaviest);
    out << line;
  }
  if (parsed.report.records_flagged() > 0) {
    out << "flagged rows skipped: " << parsed.report.records_flagged() << '\n';
  }
  write_output(output, out.str());
}

void run_hist(const std::string& wim, double bin_width, const std::string& output) {
  if (!(bin_width > 0.0)) throw std::runtime_error("--bin-width must be positive");
  ParseResult parsed = parse_wim_file(wim);
  if (parsed.records.empty()) throw std::runtime_error("no accepted vehicles in " + wim);
  std::ostringstream out;
  out << "bin_start_kn,count\n";
  for (const HistBin& bin : gvw_histogram(parsed.records, bin_width)) {
    out << format_double(bin.start_kn) << ',' << bin.count << '\n';
  }
  write_output(output, out.str());
}

void run_synth(const std::string& spec_path, long long count, std::uint64_t seed,
               const std::string& output) {
  if (count <= 0) throw std::runtime_error("--count must be positive");
  FleetSpec spec = load_fleet_spec_file(spec_path);
  std::vector<VehicleRecord> fleet = synthesize_fleet(spec, count, seed);
  std::ostringstream out;
  serialize_wim(fleet, out);
  write_output(output, out.str());
}

void run_plot(const std::string& input, const std::string& output, const SvgOptions& options) {
  std::ifstream in(input, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot read " + input);
  std::vector<SpectrumPoint> points = parse_spectrum_csv(in);
  write_output(output, render_spectrum_svg(points, options));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Support-reaction influence lines, live-load envelopes and "
               "exceedance rate spectra for short continuous bridges"};
  app.require_subcommand(1);
  int exit_code = 0;

  GeoArgs inf_geo;
  std::string inf_output;
  CLI::App* influence = app.add_subcommand(
      "influence", "Influence line samples as CSV (x_m,value; 1 cm grid)");
  influence->add_option("--spans", inf_geo.spans, "Number of spans (1-4)");
  influence->add_option("--length", inf_geo.length, "Span length in metres")->required();
  influence->add_option("--support", inf_geo.support, "Support index or letter A-I")->required();
  influence->add_option("-o,--output", inf_output, "Output file (default stdout)");
  influence->callback([&] { run_influence(inf_geo, inf_output); });

  EnvelopeArgs env_args;
  CLI::App* envelope = app.add_subcommand(
      "envelope", "Reaction envelope of a load model or a WIM fleet at one geometry");
  envelope->add_option("--spans", env_args.geo.spans, "Number of spans (1-4)");
  envelope->add_option("--length", env_args.geo.length, "Span length in metres")->required();
  envelope->add_option("--support", env_args.geo.support, "Support index or letter A-I")->required();
  envelope->add_option("--model", env_args.model, "Load model file or catalog name");
  envelope->add_option("--wim", env_args.wim, "WIM CSV file");
  envelope->add_option("--models-dir", env_args.models_dir, "Model catalog directory");
  envelope->add_option("--step", env_args.step, "Sweep step in metres (default 0.01)");
  envelope->add_option("--directions", env_args.directions, "both|forward (default both)");
  envelope->add_flag("--rear-spacing-sweep", env_args.rear_sweep,
                     "Sweep each variant's last axle gap up to 9.0 m in 0.1 m steps");
  envelope->add_option("--jobs", env_args.jobs, "Worker threads (default: all cores)");
  envelope->add_option("-o,--output", env_args.output, "Output file (default stdout)");
  envelope->callback([&] { run_envelope(env_args); });

  ErsArgs ers_args;
  CLI::App* ers = app.add_subcommand(
      "ers", "Exceedance rate spectrum of a WIM fleet against a load model");
  ers->add_option("--wim", ers_args.wim, "WIM CSV file")->required();
  ers->add_option("--model", ers_args.model, "Load model file or catalog name")->required();
  ers->add_option("--spans", ers_args.geo.spans, "Number of spans (1-4)");
  ers->add_option("--support", ers_args.geo.support, "Support index or letter A-I")->required();
  ers->add_option("--models-dir", ers_args.models_dir, "Model catalog directory");
  ers->add_option("--grid", ers_args.grid,
                  "Comma-separated span lengths in metres (default: the 44-value grid)");
  ers->add_option("--step", ers_args.step, "Sweep step in metres (default 0.01)");
  ers->add_option("--directions", ers_args.directions, "both|forward (default both)");
  ers->add_flag("--rear-spacing-sweep", ers_args.rear_sweep,
                "Sweep each variant's last axle gap up to 9.0 m in 0.1 m steps");
  ers->add_option("--jobs", ers_args.jobs, "Worker threads (default: all cores)");
  ers->add_option("--cache-dir", ers_args.cache_dir,
                  "Envelope cache directory (or set REACTLINE_CACHE_DIR)");
  ers->add_option("-o,--output", ers_args.output, "Output file (default stdout)");
  ers->callback([&] { run_ers(ers_args); });

  std::string campaign_config, campaign_cache;
  int campaign_jobs = default_jobs();
  CLI::App* campaign = app.add_subcommand(
      "campaign", "Run every fleet x family x support x model cell of a config");
  campaign->add_option("--config", campaign_config, "Campaign JSON file")->required();
  campaign->add_option("--jobs", campaign_jobs, "Worker threads (default: all cores)");
  campaign->add_option("--cache-dir", campaign_cache,
                       "Envelope cache directory override (or REACTLINE_CACHE_DIR)");
  campaign->callback(
      [&] { exit_code = run_campaign_cmd(campaign_config, campaign_jobs, campaign_cache); });

  std::string stats_wim, stats_output;
  bool stats_sample = false;
  CLI::App* stats = app.add_subcommand("stats", "Per-axle-class fleet statistics");
  stats->add_option("--wim", stats_wim, "WIM CSV file")->required();
  stats->add_flag("--sample-sigma", stats_sample, "Use the n-1 standard deviation");
  stats->add_option("-o,--output", stats_output, "Output file (default stdout)");
  stats->callback([&] { run_stats(stats_wim, stats_sample, stats_output); });

  std::string hist_wim, hist_output;
  double hist_bin = 50.0;
  CLI::App* hist = app.add_subcommand("hist", "GVW histogram as CSV (bin_start_kn,count)");
  hist->add_option("--wim", hist_wim, "WIM CSV file")->required();
  hist->add_option("--bin-width", hist_bin, "Bin width in kN (default 50)");
  hist->add_option("-o,--output", hist_output, "Output file (default stdout)");
  hist->callback([&] { run_hist(hist_wim, hist_bin, hist_output); });

  std::string synth_spec, synth_output;
  long long synth_count = 0;
  std::uint64_t synth_seed = 1;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic WIM fleet");
  synth->add_option("--spec", synth_spec, "Fleet spec JSON file")->required();
  synth->add_option("--count", synth_count, "Number of vehicles")->required();
  synth->add_option("--seed", synth_seed, "RNG seed (default 1)");
  synth->add_option("-o,--output", synth_output, "Output file (default stdout)");
  synth->callback([&] { run_synth(synth_spec, synth_count, synth_seed, synth_output); });

  std::string plot_input, plot_output;
  SvgOptions plot_options;
  CLI::App* plot = app.add_subcommand("plot", "Spectrum CSV to an SVG line chart");
  plot->add_option("--in", plot_input, "Spectrum CSV file")->required();
  plot->add_option("-o,--output", plot_output, "Output file (default stdout)");
  plot->add_option("--title", plot_options.title, "Chart title");
  plot->add_option("--width", plot_options.width, "Chart width in px");
  plot->add_option("--height", plot_options.height, "Chart height in px");
  plot->callback([&] { run_plot(plot_input, plot_output, plot_options); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
