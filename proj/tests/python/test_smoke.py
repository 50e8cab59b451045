"""End-to-end smoke checks of the compiled python module.

Runs under pytest or directly (`python test_smoke.py`).
"""

import math
from pathlib import Path

import reactline as rl

MODELS_DIR = Path(__file__).resolve().parents[2] / "models"


def test_single_span_line_is_linear():
    il = rl.build_influence_line(rl.BridgeGeometry(1, 10.0), 0)
    assert il.value(0.0) == 1.0
    assert il.value(10.0) == 0.0
    for x in (1.0, 2.5, 7.25):
        assert math.isclose(il.value(x), (10.0 - x) / 10.0, abs_tol=1e-12)
    assert il.value(-0.5) == 0.0 and il.value(10.5) == 0.0


def test_two_span_spot_values():
    il = rl.build_influence_line(rl.BridgeGeometry(2, 10.0), 0)
    assert math.isclose(il.value(15.0), -0.09375, abs_tol=1e-9)
    assert math.isclose(il.integral(0.0, 20.0), 3.75, abs_tol=1e-9)
    interior = rl.build_influence_line(rl.BridgeGeometry(2, 10.0), 1)
    assert math.isclose(interior.integral(0.0, 20.0), 12.5, abs_tol=1e-9)


def test_sweep_and_mirror_values():
    train = rl.AxleTrain([120.0, 160.0, 160.0], [3.5, 1.3])
    cfg = rl.SweepConfig(step_m=0.05)
    g = rl.BridgeGeometry(2, 12.0)
    left = rl.sweep_envelope(g, 0, train, cfg)
    right = rl.sweep_envelope(g, 2, train, cfg)
    assert left.max_kn == right.max_kn
    assert left.min_kn == right.min_kn
    assert left.max_kn > 0.0 > left.min_kn
    il = rl.build_influence_line(g, 0)
    direct = rl.sweep_envelope(il, train, cfg)
    assert direct.max_kn == left.max_kn


def test_fleet_synthesis_round_trip():
    spec = rl.FleetSpec()
    c = rl.FleetClass()
    c.axle_count = 3
    c.mix_weight = 1.0
    c.ln_gvw_mean = 5.0
    c.ln_gvw_sigma = 0.3
    c.axle_split = [0.3, 0.35, 0.35]
    c.spacings_m = [3.8, 1.3]
    spec.classes = [c]
    fleet = rl.synthesize_fleet(spec, 25, 42)
    again = rl.synthesize_fleet(spec, 25, 42)
    assert [v.gvw for v in fleet] == [v.gvw for v in again]
    assert [v.id for v in fleet] == list(range(1, 26))

    csv_text = rl.serialize_wim(fleet)
    parsed = rl.parse_wim(csv_text)
    assert parsed.report.records_flagged == 0
    assert [v.gvw for v in parsed.records] == [v.gvw for v in fleet]
    assert rl.fleet_fingerprint(parsed.records) == rl.fleet_fingerprint(fleet)


def test_stats_and_histogram():
    spec = rl.FleetSpec()
    c = rl.FleetClass()
    c.axle_count = 2
    c.ln_gvw_mean = 4.8
    c.ln_gvw_sigma = 0.25
    c.axle_split = [0.5, 0.5]
    c.spacings_m = [4.2]
    spec.classes = [c]
    fleet = rl.synthesize_fleet(spec, 40, 7)
    table = rl.summary_stats(fleet)
    assert table.rows[-1].axle_class == 0 and table.rows[-1].count == 40
    bins = rl.gvw_histogram(fleet, 25.0)
    assert sum(b.count for b in bins) == 40


def test_model_catalog_and_spectrum():
    model = rl.load_model_file(str(MODELS_DIR / "hl-93.json"))
    assert model.name and model.variants
    spec = rl.FleetSpec()
    c = rl.FleetClass()
    c.axle_count = 5
    c.ln_gvw_mean = 5.9
    c.ln_gvw_sigma = 0.3
    c.axle_split = [0.12, 0.24, 0.24, 0.2, 0.2]
    c.spacings_m = [3.6, 1.2, 6.6, 1.2]
    spec.classes = [c]
    fleet = rl.synthesize_fleet(spec, 30, 11)
    spectrum = rl.compute_ers(fleet, "smoke", 2, 1, model, [8.0, 15.0, 25.0],
                              rl.SweepConfig(step_m=0.1))
    assert [p.span_m for p in spectrum.points] == [8.0, 15.0, 25.0]
    assert all(0.0 <= p.rate_percent <= 100.0 for p in spectrum.points)

    csv_text = rl.spectrum_to_csv(spectrum)
    assert csv_text.splitlines()[0] == "span_m,rate_percent,n_exceeding,n_total"
    points = rl.parse_spectrum_csv(csv_text)
    assert [p.span_m for p in points] == [8.0, 15.0, 25.0]

    svg = rl.render_spectrum_svg(spectrum.points, rl.SvgOptions())
    assert svg.startswith("<svg") and "<polyline" in svg


def test_exceeds_is_strict():
    ref = rl.ReactionEnvelope()
    ref.max_kn, ref.min_kn = 100.0, -5.0
    same = rl.ReactionEnvelope()
    same.max_kn, same.min_kn = 100.0, -5.0
    over = rl.ReactionEnvelope()
    over.max_kn, over.min_kn = 100.1, -5.0
    under = rl.ReactionEnvelope()
    under.max_kn, under.min_kn = 90.0, -5.1
    assert not rl.exceeds(same, ref)
    assert rl.exceeds(over, ref)
    assert rl.exceeds(under, ref)


def test_errors_surface_as_python_exceptions():
    try:
        rl.build_influence_line(rl.BridgeGeometry(), 5)
    except ValueError:
        pass
    else:
        raise AssertionError("bad support index must raise")
    try:
        rl.AxleTrain([10.0], [1.0, 2.0])
    except ValueError:
        pass
    else:
        raise AssertionError("spacing count mismatch must raise")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"[PASS] {name}")
            except Exception as exc:  # noqa: BLE001
                failures += 1
                print(f"[FAIL] {name}: {exc}")
    raise SystemExit(1 if failures else 0)
