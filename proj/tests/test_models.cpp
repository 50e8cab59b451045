#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "reactline/geometry.hpp"
#include "reactline/load_model.hpp"

using namespace reactline;

namespace {

LiveLoadModel from_string(const std::string& text) {
  std::istringstream in(text);
  return load_model_config(in);
}

// Minimal always-applicable variant JSON with the given payload fields.
std::string variant_json(const std::string& fields) {
  return R"({"label": "v", "applies": {"span_min_m": null, "span_max_m": null}, )" +
         fields + "}";
}

const char* kTruckOnly = R"({
  "name": "demo",
  "variants": [
    {"label": "truck", "applies": {"span_min_m": null, "span_max_m": null},
     "truck_scale": 1.0, "axles_kn": [40.0, 110.0, 110.0],
     "spacings_m": [4.0, 4.0], "uniform_kn_per_m": 0.0}
  ]
})";

}  // namespace

TEST_CASE("config parsing: single truck variant") {
  LiveLoadModel m = from_string(kTruckOnly);
  CHECK(m.name == "demo");
  REQUIRE(m.variants.size() == 1);
  CHECK(m.variants[0].axles_kn.size() == 3);
  CHECK(m.variants[0].uniform_kn_per_m == 0.0);
  CHECK(m.variants[0].applies_to(1.0));
  CHECK(m.variants[0].applies_to(100.0));
}

TEST_CASE("config parsing: dual truck/lane definition") {
  LiveLoadModel m = from_string(R"({
    "name": "dual",
    "variants": [
      )" + variant_json(R"("axles_kn": [50, 125], "spacings_m": [3.6], "uniform_kn_per_m": 0)") + R"(,
      )" + variant_json(
      R"("truck_scale": 0.8, "axles_kn": [50, 125], "spacings_m": [3.6], "uniform_kn_per_m": 9.0)") + R"(
    ]
  })");
  REQUIRE(m.variants.size() == 2);
  CHECK(m.variants[0].truck_scale == 1.0);
  CHECK(m.variants[1].truck_scale == 0.8);
  CHECK(m.variants[1].uniform_kn_per_m == 9.0);
}

TEST_CASE("config validation failures") {
  SUBCASE("span-coverage gap") {
    CHECK_THROWS_WITH_AS(
        from_string(R"({"name": "gappy", "variants": [
          {"label": "short", "applies": {"span_min_m": null, "span_max_m": 30},
           "axles_kn": [100], "spacings_m": [], "uniform_kn_per_m": 0}]})"),
        doctest::Contains("span-coverage gap"), std::runtime_error);
  }
  SUBCASE("empty variant list") {
    CHECK_THROWS(from_string(R"({"name": "none", "variants": []})"));
  }
  SUBCASE("negative axle load") {
    CHECK_THROWS(from_string(R"({"name": "bad", "variants": [)" +
                             variant_json(R"("axles_kn": [-5], "spacings_m": [])") + "]}"));
  }
  SUBCASE("zero axle load") {
    CHECK_THROWS(from_string(R"({"name": "bad", "variants": [)" +
                             variant_json(R"("axles_kn": [0], "spacings_m": [])") + "]}"));
  }
  SUBCASE("spacing count mismatch") {
    CHECK_THROWS(from_string(R"({"name": "bad", "variants": [)" +
                             variant_json(R"("axles_kn": [10, 10], "spacings_m": [])") + "]}"));
  }
  SUBCASE("no load at all") {
    CHECK_THROWS(from_string(R"({"name": "bad", "variants": [)" +
                             variant_json(R"("axles_kn": [], "spacings_m": [])") + "]}"));
  }
  SUBCASE("negative uniform") {
    CHECK_THROWS(from_string(
        R"({"name": "bad", "variants": [)" +
        variant_json(R"("axles_kn": [], "spacings_m": [], "uniform_kn_per_m": -1)") + "]}"));
  }
  SUBCASE("range with min above max") {
    CHECK_THROWS(from_string(
        R"({"name": "bad", "variants": [)" +
        variant_json(
            R"("axles_kn": [10, 10], "spacings_m": [{"min": 5, "max": 4, "step": 0.1}])") +
        "]}"));
  }
  SUBCASE("not json at all") {
    CHECK_THROWS(from_string("certainly { not json"));
  }
}

TEST_CASE("span-dependent variants resolve like a geometry switch") {
  // Short spans get the bare truck; from 30 m on, the uniform load joins.
  LiveLoadModel m = from_string(R"({
    "name": "switcher",
    "variants": [
      {"label": "short", "applies": {"span_min_m": null, "span_max_m": 30},
       "axles_kn": [49, 235, 368], "spacings_m": [6.0, 9.0], "uniform_kn_per_m": 0},
      {"label": "long", "applies": {"span_min_m": 30, "span_max_m": null},
       "axles_kn": [49, 235, 368], "spacings_m": [6.0, 9.0], "uniform_kn_per_m": 10.0}
    ]
  })");

  auto at20 = resolve_cases(m, 20.0);
  REQUIRE(at20.size() == 1);
  CHECK(at20[0].uniform_kn_per_m == 0.0);

  auto at40 = resolve_cases(m, 40.0);
  REQUIRE(at40.size() == 1);
  CHECK(at40[0].uniform_kn_per_m == 10.0);

  // The boundary span satisfies both windows.
  CHECK(resolve_cases(m, 30.0).size() == 2);
}

TEST_CASE("spacing range expansion") {
  SpacingSpec fixed{4.3, 4.3, 0.0};
  CHECK(fixed.expand() == std::vector<double>{4.3});

  SpacingSpec swept{4.3, 9.0, 0.1};
  auto vals = swept.expand();
  REQUIRE(vals.size() == 48);
  CHECK(vals.front() == 4.3);
  CHECK(vals.back() == 9.0);  // endpoint snaps despite accumulated roundoff

  LiveLoadModel m = from_string(R"({
    "name": "swept",
    "variants": [)" + variant_json(R"("axles_kn": [35, 145, 145],
      "spacings_m": [4.3, {"min": 4.3, "max": 9.0, "step": 0.1}])") + "]}");
  auto cases = resolve_cases(m, 25.0);
  CHECK(cases.size() == 48);
  CHECK(cases[0].train.spacings_m[1] == 4.3);
  CHECK(cases[47].train.spacings_m[1] == 9.0);
  // Labels distinguish the expanded cases.
  CHECK(cases[0].label != cases[47].label);
}

TEST_CASE("case envelope composes sweep and uniform components") {
  BridgeGeometry g{2, 10.0};
  InfluenceLine far = build_influence_line(g, 2);
  SweepConfig cfg;
  cfg.step_m = 0.001;

  SUBCASE("truck-only equals the bare sweep") {
    ConcreteCase c;
    c.label = "truck";
    c.train.loads_kn = {100.0};
    ReactionEnvelope direct = sweep_envelope(far, c.train, cfg);
    ReactionEnvelope via = case_envelope(far, c, cfg);
    CHECK(via.max_kn == direct.max_kn);
    CHECK(via.min_kn == direct.min_kn);
    CHECK(via.pos_max_m == direct.pos_max_m);
    CHECK(via.pos_min_m == direct.pos_min_m);
  }

  SUBCASE("uniform-only is a constant") {
    BridgeGeometry g1{1, 10.0};
    InfluenceLine il0 = build_influence_line(g1, 0);
    ConcreteCase c;
    c.label = "lane";
    c.uniform_kn_per_m = 9.0;
    ReactionEnvelope env = case_envelope(il0, c, cfg);
    CHECK(env.max_kn == doctest::Approx(45.0).epsilon(1e-12));
    CHECK(env.min_kn == doctest::Approx(45.0).epsilon(1e-12));
  }

  SUBCASE("axle plus uniform shifts the swept extremes by a constant") {
    // 100 kN axle dips this line to -9.6225 kN; 1 kN/m over both spans adds
    // 3*w*L/8 = 3.75 kN, leaving -5.873 kN.
    ConcreteCase c;
    c.label = "combo";
    c.train.loads_kn = {100.0};
    c.uniform_kn_per_m = 1.0;
    ReactionEnvelope env = case_envelope(far, c, cfg);
    CHECK(env.min_kn == doctest::Approx(-5.8725).epsilon(1e-4));
    CHECK(env.max_kn == doctest::Approx(100.0 + 3.75).epsilon(1e-9));
  }

  SUBCASE("empty case is rejected") {
    ConcreteCase c;
    c.label = "nothing";
    CHECK_THROWS(case_envelope(far, c, cfg));
  }
}

TEST_CASE("model envelope is the componentwise extreme over cases") {
  BridgeGeometry g{2, 10.0};
  InfluenceLine mid = build_influence_line(g, 1);
  InfluenceLine far = build_influence_line(g, 2);
  SweepConfig cfg;
  cfg.step_m = 0.01;

  LiveLoadModel single = from_string(kTruckOnly);
  ReactionEnvelope m1 = model_envelope(mid, single, cfg);
  ReactionEnvelope c1 = case_envelope(mid, resolve_cases(single, 10.0)[0], cfg);
  CHECK(m1.max_kn == c1.max_kn);
  CHECK(m1.min_kn == c1.min_kn);

  // Truck-only and truck+uniform: at an interior support the uniform offset
  // raises the max, while the unshifted truck-only pass keeps the deeper min.
  LiveLoadModel dual = from_string(R"({
    "name": "dual",
    "variants": [
      )" + variant_json(R"("axles_kn": [100], "spacings_m": [], "uniform_kn_per_m": 0)") + R"(,
      )" + variant_json(R"("axles_kn": [100], "spacings_m": [], "uniform_kn_per_m": 2.0)") + R"(
    ]
  })");
  auto cases = resolve_cases(dual, 10.0);
  REQUIRE(cases.size() == 2);
  ReactionEnvelope truck_only = case_envelope(far, cases[0], cfg);
  ReactionEnvelope with_lane = case_envelope(far, cases[1], cfg);
  ReactionEnvelope both = model_envelope(far, dual, cfg);
  CHECK(both.max_kn == with_lane.max_kn);
  CHECK(both.min_kn == truck_only.min_kn);
  CHECK(both.min_kn < with_lane.min_kn);

  // Two identical variants collapse to one.
  LiveLoadModel twice = from_string(R"({
    "name": "twice",
    "variants": [
      )" + variant_json(R"("axles_kn": [100], "spacings_m": [])") + R"(,
      )" + variant_json(R"("axles_kn": [100], "spacings_m": [])") + R"(
    ]
  })");
  ReactionEnvelope e2 = model_envelope(far, twice, cfg);
  ReactionEnvelope e1 = case_envelope(far, resolve_cases(twice, 10.0)[0], cfg);
  CHECK(e2.max_kn == e1.max_kn);
  CHECK(e2.min_kn == e1.min_kn);
}

TEST_CASE("model envelope properties") {
  BridgeGeometry g{2, 12.0};
  SweepConfig cfg;
  cfg.step_m = 0.05;

  SUBCASE("scaling every load scales the envelope linearly") {
    auto build = [&](double c) {
      std::ostringstream os;
      os << R"({"name": "scaled", "variants": [{"label": "v",
           "axles_kn": [)" << 40.0 * c << ", " << 110.0 * c << R"(],
           "spacings_m": [4.0], "uniform_kn_per_m": )" << 2.0 * c << "}]}";
      return from_string(os.str());
    };
    for (int s = 0; s <= 2; ++s) {
      InfluenceLine il = build_influence_line(g, s);
      ReactionEnvelope base = model_envelope(il, build(1.0), cfg);
      ReactionEnvelope scaled = model_envelope(il, build(1.75), cfg);
      CHECK(scaled.max_kn == doctest::Approx(1.75 * base.max_kn).epsilon(1e-12));
      CHECK(scaled.min_kn == doctest::Approx(1.75 * base.min_kn).epsilon(1e-12));
    }
  }

  SUBCASE("uniform component never changes the envelope width") {
    InfluenceLine il = build_influence_line(g, 1);
    ConcreteCase dry;
    dry.label = "dry";
    dry.train.loads_kn = {80.0, 120.0};
    dry.train.spacings_m = {5.0};
    ConcreteCase wet = dry;
    wet.uniform_kn_per_m = 7.5;
    ReactionEnvelope a = case_envelope(il, dry, cfg);
    ReactionEnvelope b = case_envelope(il, wet, cfg);
    CHECK(b.max_kn - b.min_kn == doctest::Approx(a.max_kn - a.min_kn).epsilon(1e-12));
  }

  SUBCASE("uplift capture at the exterior support") {
    // A short truck fits inside the far span, so the truck-only minimum at
    // the near abutment must go negative.
    LiveLoadModel m = from_string(kTruckOnly);
    InfluenceLine il = build_influence_line(g, 0);
    ReactionEnvelope env = model_envelope(il, m, cfg);
    CHECK(env.min_kn < 0.0);
  }
}

#ifdef REACTLINE_MODELS_DIR
TEST_CASE("shipped model catalog loads and matches the published figures") {
  const std::string dir = REACTLINE_MODELS_DIR;
  auto gross = [](const ModelVariant& v) {
    double s = 0.0;
    for (double w : v.axles_kn) s += w;
    return s;
  };

  LiveLoadModel hl93 = load_model_file(dir + "/hl-93.json");
  REQUIRE(hl93.variants.size() == 1);
  CHECK(gross(hl93.variants[0]) == doctest::Approx(325.0));
  CHECK(hl93.variants[0].uniform_kn_per_m == doctest::Approx(9.3));

  LiveLoadModel cl = load_model_file(dir + "/cl-625.json");
  REQUIRE(cl.variants.size() == 2);
  CHECK(gross(cl.variants[0]) == doctest::Approx(625.0));
  CHECK(cl.variants[0].uniform_kn_per_m == 0.0);
  CHECK(cl.variants[1].truck_scale == doctest::Approx(0.8));
  CHECK(cl.variants[1].uniform_kn_per_m == doctest::Approx(9.0));

  LiveLoadModel ont = load_model_file(dir + "/cl-625-ont.json");
  REQUIRE(ont.variants.size() == 2);
  CHECK(gross(ont.variants[0]) == doctest::Approx(625.0));

  LiveLoadModel imt = load_model_file(dir + "/imt-66.5.json");
  REQUIRE(imt.variants.size() == 2);
  CHECK(gross(imt.variants[0]) == doctest::Approx(652.0));
  CHECK(resolve_cases(imt, 20.0).size() == 1);
  CHECK(resolve_cases(imt, 20.0)[0].uniform_kn_per_m == 0.0);
  CHECK(resolve_cases(imt, 40.0)[0].uniform_kn_per_m == doctest::Approx(10.0));

  LiveLoadModel t3s3 = load_model_file(dir + "/t3-s3.json");
  REQUIRE(t3s3.variants.size() == 1);
  CHECK(gross(t3s3.variants[0]) == doctest::Approx(475.81));
  CHECK(t3s3.variants[0].uniform_kn_per_m == 0.0);

  LiveLoadModel t3s2r4 = load_model_file(dir + "/t3-s2-r4.json");
  REQUIRE(t3s2r4.variants.size() == 1);
  CHECK(gross(t3s2r4.variants[0]) == doctest::Approx(652.37));
  CHECK(t3s2r4.variants[0].axles_kn.size() == 9);
}
#endif
