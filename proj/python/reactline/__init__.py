"""Reaction influence lines, traffic envelopes and exceedance-rate spectra.

Everything lives in the compiled ``_core`` module; this package re-exports
its public names so ``import reactline`` is all a script needs.
"""

from ._core import (  # noqa: F401
    AxleTrain,
    BridgeGeometry,
    CampaignCell,
    CampaignConfig,
    CampaignFamily,
    CampaignFleet,
    CampaignResult,
    ConcreteCase,
    Direction,
    EnvelopeKey,
    EnvelopeSet,
    ExceedanceSpectrum,
    FlaggedRow,
    FlagReason,
    FleetClass,
    FleetSpec,
    HistBin,
    InfluenceLine,
    LiveLoadModel,
    ModelVariant,
    ParseResult,
    RateResult,
    ReactionEnvelope,
    SpacingSpec,
    SpectrumPoint,
    StatsRow,
    StatsTable,
    SupportRef,
    SvgOptions,
    SweepConfig,
    TravelDirection,
    ValidationReport,
    VehicleRecord,
    build_influence_line,
    case_envelope,
    compute_ers,
    default_span_grid,
    exceedance_rate,
    exceeds,
    filter_above,
    flag_reason_token,
    fleet_fingerprint,
    gvw_histogram,
    gvw_percentile,
    load_campaign_config,
    load_campaign_config_file,
    load_fleet_spec,
    load_fleet_spec_file,
    load_model_config,
    load_model_file,
    model_envelope,
    parse_spectrum_csv,
    parse_wim,
    parse_wim_file,
    render_spectrum_svg,
    resolve_cases,
    run_campaign,
    serialize_wim,
    spectrum_to_csv,
    summary_stats,
    support_from_letter,
    support_letter,
    sweep_envelope,
    synthesize_fleet,
    to_train,
    train_reaction,
    uniform_reaction,
    vehicle_envelopes,
)

__version__ = "0.1.0"
