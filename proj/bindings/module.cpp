// Python bindings: the library's public operations 1:1, with streams replaced
// by strings and the GIL released around every fleet-scale computation.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "reactline/campaign.hpp"
#include "reactline/exceedance.hpp"
#include "reactline/fleet.hpp"
#include "reactline/geometry.hpp"
#include "reactline/influence_line.hpp"
#include "reactline/load_model.hpp"
#include "reactline/svg.hpp"
#include "reactline/sweep.hpp"
#include "reactline/wim.hpp"

namespace py = pybind11;
using namespace reactline;

namespace {

std::string fmt1(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Reaction influence lines, traffic envelopes and exceedance-rate "
      "spectra for multi-span bridges.";

  using Release = py::call_guard<py::gil_scoped_release>;

  // Geometry ---------------------------------------------------------------
  py::class_<BridgeGeometry>(m, "BridgeGeometry",
                             "Continuous prismatic beam on equally spaced pinned supports.")
      .def(py::init<>())
      .def(py::init([](int span_count, double span_m) {
             BridgeGeometry g{span_count, span_m};
             g.validate();
             return g;
           }),
           py::arg("span_count"), py::arg("span_m"))
      .def_readwrite("span_count", &BridgeGeometry::span_count)
      .def_readwrite("span_m", &BridgeGeometry::span_m)
      .def_property_readonly("support_count", &BridgeGeometry::support_count)
      .def_property_readonly("total_length", &BridgeGeometry::total_length)
      .def("support_position", &BridgeGeometry::support_position, py::arg("support"))
      .def("validate", &BridgeGeometry::validate)
      .def("__repr__", [](const BridgeGeometry& g) {
        return "BridgeGeometry(span_count=" + std::to_string(g.span_count) +
               ", span_m=" + fmt1(g.span_m) + ")";
      });

  py::class_<SupportRef>(m, "SupportRef")
      .def_readonly("span_count", &SupportRef::span_count)
      .def_readonly("support", &SupportRef::support)
      .def("__repr__", [](const SupportRef& r) {
        return "SupportRef(span_count=" + std::to_string(r.span_count) +
               ", support=" + std::to_string(r.support) + ")";
      });

  m.def("support_letter",
        [](int span_count, int support) {
          char c = support_letter(span_count, support);
          return c ? std::string(1, c) : std::string();
        },
        py::arg("span_count"), py::arg("support"),
        "Letter alias for the pair, or '' when it has none.");
  m.def("support_from_letter",
        [](const std::string& letter) {
          if (letter.size() != 1)
            throw std::invalid_argument("support letter must be a single character");
          return support_from_letter(letter[0]);
        },
        py::arg("letter"));
  m.def("default_span_grid", &default_span_grid,
        "Standard span lengths: 1..30 m every metre, then 35..100 m every 5 m.");

  // Influence lines --------------------------------------------------------
  py::class_<InfluenceLine>(m, "InfluenceLine",
                            "Exact piecewise-cubic reaction influence line for one support.")
      .def_property_readonly("geometry",
                             [](const InfluenceLine& il) { return il.geometry(); })
      .def_property_readonly("support", &InfluenceLine::support)
      .def("value", &InfluenceLine::value, py::arg("x"),
           "Reaction per unit load at position x; zero off the bridge.")
      .def("integral", &InfluenceLine::integral, py::arg("a"), py::arg("b"))
      .def("max_abs_slope", &InfluenceLine::max_abs_slope)
      .def("segment",
           [](const InfluenceLine& il, int span) { return il.segment(span); },
           py::arg("span"), "Cubic coefficients (c0..c3) of one span's segment.")
      .def("__repr__", [](const InfluenceLine& il) {
        return "InfluenceLine(span_count=" + std::to_string(il.geometry().span_count) +
               ", span_m=" + fmt1(il.geometry().span_m) +
               ", support=" + std::to_string(il.support()) + ")";
      });

  m.def("build_influence_line", &build_influence_line, py::arg("geometry"),
        py::arg("support"));

  // Axle trains and sweeps -------------------------------------------------
  py::class_<AxleTrain>(m, "AxleTrain",
                        "A group of point loads swept across the bridge.")
      .def(py::init<>())
      .def(py::init([](std::vector<double> loads_kn, std::vector<double> spacings_m) {
             AxleTrain t{std::move(loads_kn), std::move(spacings_m)};
             t.validate();
             return t;
           }),
           py::arg("loads_kn"), py::arg("spacings_m"))
      .def_readwrite("loads_kn", &AxleTrain::loads_kn)
      .def_readwrite("spacings_m", &AxleTrain::spacings_m)
      .def_property_readonly("axle_count", &AxleTrain::axle_count)
      .def_property_readonly("length", &AxleTrain::length)
      .def("offsets", &AxleTrain::offsets)
      .def("reversed", &AxleTrain::reversed)
      .def("validate", &AxleTrain::validate)
      .def("__repr__", [](const AxleTrain& t) {
        return "AxleTrain(axles=" + std::to_string(t.axle_count()) +
               ", length=" + fmt1(t.length()) + ")";
      });

  py::enum_<Direction>(m, "Direction")
      .value("Forward", Direction::Forward)
      .value("Both", Direction::Both);

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def(py::init([](double step_m, Direction directions) {
             return SweepConfig{step_m, directions};
           }),
           py::arg("step_m") = 0.01, py::arg("directions") = Direction::Both)
      .def_readwrite("step_m", &SweepConfig::step_m)
      .def_readwrite("directions", &SweepConfig::directions);

  py::class_<ReactionEnvelope>(m, "ReactionEnvelope")
      .def(py::init<>())
      .def_readwrite("max_kn", &ReactionEnvelope::max_kn)
      .def_readwrite("min_kn", &ReactionEnvelope::min_kn)
      .def_readwrite("pos_max_m", &ReactionEnvelope::pos_max_m)
      .def_readwrite("pos_min_m", &ReactionEnvelope::pos_min_m)
      .def("__repr__", [](const ReactionEnvelope& e) {
        return "ReactionEnvelope(max_kn=" + fmt1(e.max_kn) + ", min_kn=" +
               fmt1(e.min_kn) + ", pos_max_m=" + fmt1(e.pos_max_m) +
               ", pos_min_m=" + fmt1(e.pos_min_m) + ")";
      });

  m.def("train_reaction", &train_reaction, py::arg("influence_line"),
        py::arg("train"), py::arg("head_position"));
  m.def("uniform_reaction", &uniform_reaction, py::arg("influence_line"),
        py::arg("w_kn_per_m"), py::arg("from_x"), py::arg("to_x"));
  m.def("sweep_envelope",
        py::overload_cast<const InfluenceLine&, const AxleTrain&, const SweepConfig&>(
            &sweep_envelope),
        py::arg("influence_line"), py::arg("train"),
        py::arg("config") = SweepConfig{}, Release{});
  m.def("sweep_envelope",
        py::overload_cast<const BridgeGeometry&, int, const AxleTrain&,
                          const SweepConfig&>(&sweep_envelope),
        py::arg("geometry"), py::arg("support"), py::arg("train"),
        py::arg("config") = SweepConfig{}, Release{});

  // Weigh-in-motion records ------------------------------------------------
  py::class_<VehicleRecord>(m, "VehicleRecord",
                            "One weighed vehicle; weights kN, spacings m.")
      .def(py::init<>())
      .def_readwrite("id", &VehicleRecord::id)
      .def_readwrite("axle_weights_kn", &VehicleRecord::axle_weights_kn)
      .def_readwrite("axle_spacings_m", &VehicleRecord::axle_spacings_m)
      .def_readwrite("timestamp", &VehicleRecord::timestamp)
      .def_readwrite("lane", &VehicleRecord::lane)
      .def_property_readonly("axle_count", &VehicleRecord::axle_count)
      .def_property_readonly("gvw", &VehicleRecord::gvw)
      .def_property_readonly("heaviest_axle", &VehicleRecord::heaviest_axle)
      .def("__repr__", [](const VehicleRecord& r) {
        return "VehicleRecord(id=" + std::to_string(r.id) + ", axles=" +
               std::to_string(r.axle_count()) + ", gvw=" + fmt1(r.gvw()) + ")";
      });

  py::enum_<FlagReason>(m, "FlagReason")
      .value("BadCount", FlagReason::BadCount)
      .value("NonpositiveWeight", FlagReason::NonpositiveWeight)
      .value("NonpositiveSpacing", FlagReason::NonpositiveSpacing)
      .value("GvwMismatch", FlagReason::GvwMismatch);
  m.def("flag_reason_token",
        [](FlagReason r) { return std::string(to_string(r)); }, py::arg("reason"),
        "Stable report token: bad-count, nonpositive-weight, ...");

  py::class_<FlaggedRow>(m, "FlaggedRow")
      .def_readonly("line", &FlaggedRow::line)
      .def_readonly("id", &FlaggedRow::id)
      .def_readonly("reason", &FlaggedRow::reason)
      .def("__repr__", [](const FlaggedRow& f) {
        return "FlaggedRow(line=" + std::to_string(f.line) + ", id=" +
               std::to_string(f.id) + ", reason=" + to_string(f.reason) + ")";
      });

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("records_total", &ValidationReport::records_total)
      .def_readonly("records_accepted", &ValidationReport::records_accepted)
      .def_readonly("flagged", &ValidationReport::flagged)
      .def_property_readonly("records_flagged", &ValidationReport::records_flagged);

  py::class_<ParseResult>(m, "ParseResult")
      .def_readonly("records", &ParseResult::records)
      .def_readonly("report", &ParseResult::report);

  m.def("parse_wim",
        [](const std::string& text) {
          std::istringstream in(text);
          return parse_wim(in);
        },
        py::arg("text"), "Parse WIM CSV from a string.");
  m.def("parse_wim_file", &parse_wim_file, py::arg("path"), Release{});
  m.def("serialize_wim",
        [](const std::vector<VehicleRecord>& records) {
          std::ostringstream out;
          serialize_wim(records, out);
          return out.str();
        },
        py::arg("records"), "Canonical WIM CSV as a string.");

  py::enum_<TravelDirection>(m, "TravelDirection")
      .value("Forward", TravelDirection::Forward)
      .value("Reverse", TravelDirection::Reverse);
  m.def("to_train", &to_train, py::arg("record"), py::arg("direction"));

  m.def("gvw_percentile", &gvw_percentile, py::arg("records"), py::arg("p"));
  m.def("filter_above", &filter_above, py::arg("records"), py::arg("threshold_kn"));
  m.def("fleet_fingerprint", &fleet_fingerprint, py::arg("records"));

  py::class_<StatsRow>(m, "StatsRow")
      .def_readonly("axle_class", &StatsRow::axle_class)
      .def_readonly("count", &StatsRow::count)
      .def_readonly("mean_gvw", &StatsRow::mean_gvw)
      .def_readonly("sd_gvw", &StatsRow::sd_gvw)
      .def_readonly("mean_heaviest", &StatsRow::mean_heaviest)
      .def_readonly("sd_heaviest", &StatsRow::sd_heaviest);
  py::class_<StatsTable>(m, "StatsTable")
      .def_readonly("rows", &StatsTable::rows);
  m.def("summary_stats", &summary_stats, py::arg("records"),
        py::arg("sample_sigma") = false);

  py::class_<HistBin>(m, "HistBin")
      .def_readonly("start_kn", &HistBin::start_kn)
      .def_readonly("count", &HistBin::count);
  m.def("gvw_histogram", &gvw_histogram, py::arg("records"), py::arg("bin_width_kn"));

  // Synthetic fleets -------------------------------------------------------
  py::class_<FleetClass>(m, "FleetClass")
      .def(py::init<>())
      .def_readwrite("axle_count", &FleetClass::axle_count)
      .def_readwrite("mix_weight", &FleetClass::mix_weight)
      .def_readwrite("ln_gvw_mean", &FleetClass::ln_gvw_mean)
      .def_readwrite("ln_gvw_sigma", &FleetClass::ln_gvw_sigma)
      .def_readwrite("axle_split", &FleetClass::axle_split)
      .def_readwrite("spacings_m", &FleetClass::spacings_m)
      .def_readwrite("split_jitter", &FleetClass::split_jitter);
  py::class_<FleetSpec>(m, "FleetSpec")
      .def(py::init<>())
      .def_readwrite("classes", &FleetSpec::classes)
      .def("validate", &FleetSpec::validate);
  m.def("load_fleet_spec",
        [](const std::string& text) {
          std::istringstream in(text);
          return load_fleet_spec(in);
        },
        py::arg("text"));
  m.def("load_fleet_spec_file", &load_fleet_spec_file, py::arg("path"));
  m.def("synthesize_fleet", &synthesize_fleet, py::arg("spec"), py::arg("n"),
        py::arg("seed"), Release{},
        "Deterministic for a fixed (spec, n, seed); ids 1..n.");

  // Live-load models -------------------------------------------------------
  py::class_<SpacingSpec>(m, "SpacingSpec")
      .def(py::init<>())
      .def(py::init([](double min_m, double max_m, double step_m) {
             return SpacingSpec{min_m, max_m, step_m};
           }),
           py::arg("min_m"), py::arg("max_m") = 0.0, py::arg("step_m") = 0.0)
      .def_readwrite("min_m", &SpacingSpec::min_m)
      .def_readwrite("max_m", &SpacingSpec::max_m)
      .def_readwrite("step_m", &SpacingSpec::step_m)
      .def_property_readonly("is_range", &SpacingSpec::is_range)
      .def("expand", &SpacingSpec::expand);

  py::class_<ModelVariant>(m, "ModelVariant")
      .def(py::init<>())
      .def_readwrite("label", &ModelVariant::label)
      .def_readwrite("axles_kn", &ModelVariant::axles_kn)
      .def_readwrite("spacings", &ModelVariant::spacings)
      .def_readwrite("truck_scale", &ModelVariant::truck_scale)
      .def_readwrite("uniform_kn_per_m", &ModelVariant::uniform_kn_per_m)
      .def_readwrite("span_min_m", &ModelVariant::span_min_m)
      .def_readwrite("span_max_m", &ModelVariant::span_max_m)
      .def("applies_to", &ModelVariant::applies_to, py::arg("span_m"));

  py::class_<LiveLoadModel>(m, "LiveLoadModel")
      .def(py::init<>())
      .def_readwrite("name", &LiveLoadModel::name)
      .def_readwrite("variants", &LiveLoadModel::variants);

  py::class_<ConcreteCase>(m, "ConcreteCase")
      .def_readonly("label", &ConcreteCase::label)
      .def_readonly("train", &ConcreteCase::train)
      .def_readonly("uniform_kn_per_m", &ConcreteCase::uniform_kn_per_m);

  m.def("load_model_config",
        [](const std::string& text) {
          std::istringstream in(text);
          return load_model_config(in);
        },
        py::arg("text"));
  m.def("load_model_file", &load_model_file, py::arg("path"));
  m.def("resolve_cases", &resolve_cases, py::arg("model"), py::arg("span_m"));
  m.def("case_envelope", &case_envelope, py::arg("influence_line"), py::arg("case"),
        py::arg("config") = SweepConfig{}, Release{});
  m.def("model_envelope", &model_envelope, py::arg("influence_line"),
        py::arg("model"), py::arg("config") = SweepConfig{}, Release{});

  // Exceedance rates -------------------------------------------------------
  py::class_<EnvelopeKey>(m, "EnvelopeKey")
      .def_readonly("fleet_fingerprint", &EnvelopeKey::fleet_fingerprint)
      .def_readonly("span_count", &EnvelopeKey::span_count)
      .def_readonly("span_m", &EnvelopeKey::span_m)
      .def_readonly("support", &EnvelopeKey::support)
      .def_readonly("step_m", &EnvelopeKey::step_m)
      .def_readonly("directions", &EnvelopeKey::directions)
      .def("digest", &EnvelopeKey::digest);

  py::class_<EnvelopeSet>(m, "EnvelopeSet")
      .def_readonly("key", &EnvelopeSet::key)
      .def_readonly("ids", &EnvelopeSet::ids)
      .def_readonly("envelopes", &EnvelopeSet::envelopes);

  m.def("vehicle_envelopes", &vehicle_envelopes, py::arg("records"),
        py::arg("geometry"), py::arg("support"), py::arg("config") = SweepConfig{},
        py::arg("jobs") = 1, Release{});
  m.def("exceeds", &exceeds, py::arg("vehicle_env"), py::arg("reference_env"),
        "Strict on both sides: ties never exceed.");

  py::class_<RateResult>(m, "RateResult")
      .def_readonly("n_total", &RateResult::n_total)
      .def_readonly("n_exceeding", &RateResult::n_exceeding)
      .def_readonly("n_max_side", &RateResult::n_max_side)
      .def_readonly("n_min_side", &RateResult::n_min_side)
      .def_readonly("rate_percent", &RateResult::rate_percent);
  m.def("exceedance_rate", &exceedance_rate, py::arg("set"), py::arg("reference_env"));

  py::class_<SpectrumPoint>(m, "SpectrumPoint")
      .def(py::init<>())
      .def_readwrite("span_m", &SpectrumPoint::span_m)
      .def_readwrite("rate_percent", &SpectrumPoint::rate_percent)
      .def_readwrite("n_exceeding", &SpectrumPoint::n_exceeding)
      .def_readwrite("n_total", &SpectrumPoint::n_total);

  py::class_<ExceedanceSpectrum>(m, "ExceedanceSpectrum")
      .def_readonly("model_name", &ExceedanceSpectrum::model_name)
      .def_readonly("fleet_name", &ExceedanceSpectrum::fleet_name)
      .def_readonly("span_count", &ExceedanceSpectrum::span_count)
      .def_readonly("support", &ExceedanceSpectrum::support)
      .def_readonly("points", &ExceedanceSpectrum::points);

  m.def("compute_ers", &compute_ers, py::arg("records"), py::arg("fleet_name"),
        py::arg("span_count"), py::arg("support"), py::arg("model"),
        py::arg("span_grid_m"), py::arg("config") = SweepConfig{},
        py::arg("jobs") = 1, py::arg("cache_dir") = std::string(), Release{});
  m.def("spectrum_to_csv",
        [](const ExceedanceSpectrum& s) {
          std::ostringstream out;
          spectrum_to_csv(s, out);
          return out.str();
        },
        py::arg("spectrum"));
  m.def("parse_spectrum_csv",
        [](const std::string& text) {
          std::istringstream in(text);
          return parse_spectrum_csv(in);
        },
        py::arg("text"));

  // Plots ------------------------------------------------------------------
  py::class_<SvgOptions>(m, "SvgOptions")
      .def(py::init<>())
      .def_readwrite("title", &SvgOptions::title)
      .def_readwrite("width", &SvgOptions::width)
      .def_readwrite("height", &SvgOptions::height);
  m.def("render_spectrum_svg", &render_spectrum_svg, py::arg("points"),
        py::arg("options") = SvgOptions{});

  // Campaigns --------------------------------------------------------------
  py::class_<CampaignFleet>(m, "CampaignFleet")
      .def(py::init<>())
      .def_readwrite("name", &CampaignFleet::name)
      .def_readwrite("wim_csv", &CampaignFleet::wim_csv);
  py::class_<CampaignFamily>(m, "CampaignFamily")
      .def(py::init<>())
      .def_readwrite("span_count", &CampaignFamily::span_count)
      .def_readwrite("supports", &CampaignFamily::supports);
  py::class_<CampaignConfig>(m, "CampaignConfig")
      .def(py::init<>())
      .def_readwrite("fleets", &CampaignConfig::fleets)
      .def_readwrite("model_files", &CampaignConfig::model_files)
      .def_readwrite("families", &CampaignConfig::families)
      .def_readwrite("span_grid_m", &CampaignConfig::span_grid_m)
      .def_readwrite("sweep", &CampaignConfig::sweep)
      .def_readwrite("output_dir", &CampaignConfig::output_dir)
      .def_readwrite("cache_dir", &CampaignConfig::cache_dir);
  py::class_<CampaignCell>(m, "CampaignCell")
      .def_readonly("fleet", &CampaignCell::fleet)
      .def_readonly("model", &CampaignCell::model)
      .def_readonly("span_count", &CampaignCell::span_count)
      .def_readonly("support", &CampaignCell::support)
      .def_readonly("output_file", &CampaignCell::output_file)
      .def_readonly("state", &CampaignCell::state)
      .def_readonly("error", &CampaignCell::error)
      .def_readonly("config_digest", &CampaignCell::config_digest)
      .def_readonly("cache_keys", &CampaignCell::cache_keys);
  py::class_<CampaignResult>(m, "CampaignResult")
      .def_readonly("cells", &CampaignResult::cells)
      .def_readonly("manifest_path", &CampaignResult::manifest_path);
  m.def("load_campaign_config",
        [](const std::string& text) {
          std::istringstream in(text);
          return load_campaign_config(in);
        },
        py::arg("text"));
  m.def("load_campaign_config_file", &load_campaign_config_file, py::arg("path"));
  m.def("run_campaign", &run_campaign, py::arg("config"), py::arg("jobs") = 1,
        Release{});
}
