#include "reactline/exceedance.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "reactline/cache.hpp"
#include "reactline/parallel.hpp"
#include "reactline/text.hpp"

namespace reactline {

std::string EnvelopeKey::digest() const {
  std::uint64_t h = fnv1a64("env-cache-v1");
  h = fnv1a64(hex64(fleet_fingerprint), h);
  h = fnv1a64("|", h);
  h = fnv1a64(std::to_string(span_count), h);
  h = fnv1a64("|", h);
  h = fnv1a64(format_double(span_m), h);
  h = fnv1a64("|", h);
  h = fnv1a64(std::to_string(support), h);
  h = fnv1a64("|", h);
  h = fnv1a64(format_double(step_m), h);
  h = fnv1a64("|", h);
  h = fnv1a64(directions == Direction::Both ? "B" : "F", h);
  return hex64(h);
}

EnvelopeSet vehicle_envelopes(const std::vector<VehicleRecord>& records,
                              const BridgeGeometry& geometry, int support,
                              const SweepConfig& cfg, int jobs) {
  if (records.empty()) throw std::invalid_argument("vehicle envelopes of an empty fleet");
  geometry.validate();
  if (support < 0 || support > geometry.span_count) {
    throw std::invalid_argument("support index out of range");
  }

  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].id < records[b].id;
  });

  EnvelopeSet set;
  set.key = EnvelopeKey{fleet_fingerprint(records), geometry.span_count, geometry.span_m,
                        support,  cfg.step_m,       cfg.directions};
  set.ids.resize(records.size());
  set.envelopes.resize(records.size());

  InfluenceLine il = build_influence_line(geometry, support);
  parallel_for(records.size(), jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const VehicleRecord& rec = records[order[i]];
      set.ids[i] = rec.id;
      set.envelopes[i] = sweep_envelope(il, to_train(rec, TravelDirection::Forward), cfg);
    }
  });
  return set;
}

bool exceeds(const ReactionEnvelope& vehicle_env, const ReactionEnvelope& reference_env) {
  return vehicle_env.max_kn > reference_env.max_kn ||
         vehicle_env.min_kn < reference_env.min_kn;
}

RateResult exceedance_rate(const EnvelopeSet& set, const ReactionEnvelope& reference_env) {
  if (set.envelopes.empty()) throw std::invalid_argument("exceedance rate of an empty set");
  RateResult r;
  r.n_total = static_cast<long long>(set.envelopes.size());
  for (const ReactionEnvelope& e : set.envelopes) {
    bool over_max = e.max_kn > reference_env.max_kn;
    bool under_min = e.min_kn < reference_env.min_kn;
    if (over_max) ++r.n_max_side;
    if (under_min) ++r.n_min_side;
    if (over_max || under_min) ++r.n_exceeding;
  }
  r.rate_percent = 100.0 * static_cast<double>(r.n_exceeding) / static_cast<double>(r.n_total);
  return r;
}

ExceedanceSpectrum compute_ers(const std::vector<VehicleRecord>& records,
                               const std::string& fleet_name, int span_count,
                               int support, const LiveLoadModel& model,
                               const std::vector<double>& span_grid_m,
                               const SweepConfig& cfg, int jobs,
                               const std::string& cache_dir) {
  if (span_grid_m.empty()) throw std::invalid_argument("empty span grid");

  std::vector<double> grid = span_grid_m;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  ExceedanceSpectrum spectrum;
  spectrum.model_name = model.name;
  spectrum.fleet_name = fleet_name;
  spectrum.span_count = span_count;
  spectrum.support = support;
  spectrum.points.reserve(grid.size());

  for (double span : grid) {
    BridgeGeometry g{span_count, span};
    g.validate();
    InfluenceLine il = build_influence_line(g, support);
    ReactionEnvelope ref = model_envelope(il, model, cfg);
    EnvelopeSet set =
        cached_vehicle_envelopes(records, g, support, cfg, jobs, cache_dir).set;
    RateResult rate = exceedance_rate(set, ref);
    spectrum.points.push_back({span, rate.rate_percent, rate.n_exceeding, rate.n_total});
  }
  return spectrum;
}

void spectrum_to_csv(const ExceedanceSpectrum& spectrum, std::ostream& out) {
  out << "span_m,rate_percent,n_exceeding,n_total\n";
  for (const SpectrumPoint& p : spectrum.points) {
    out << format_double(p.span_m) << "," << format_double(p.rate_percent) << ","
        << p.n_exceeding << "," << p.n_total << "\n";
  }
}

std::vector<SpectrumPoint> parse_spectrum_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "span_m,rate_percent,n_exceeding,n_total") {
    throw std::runtime_error("spectrum csv: bad or missing header");
  }
  std::vector<SpectrumPoint> points;
  long long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 4) {
      throw std::runtime_error("spectrum csv: line " + std::to_string(line_no) +
                               ": expected 4 cells");
    }
    SpectrumPoint p;
    try {
      p.span_m = parse_double(trim(cells[0]));
      p.rate_percent = parse_double(trim(cells[1]));
      p.n_exceeding = parse_int(trim(cells[2]));
      p.n_total = parse_int(trim(cells[3]));
    } catch (const std::exception& e) {
      throw std::runtime_error("spectrum csv: line " + std::to_string(line_no) + ": " +
                               e.what());
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace reactline
