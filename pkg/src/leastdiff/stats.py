"""Effect-strength statistics and the rival candidate decision statistics.

The two headline quantities are the least plausible difference in means
(``least_difference``) and its most-plausible counterpart
(``most_difference``), both read off the posterior of the difference in
means. The least difference is the edge of the equal-tailed credible
interval nearest zero, signed like the observed difference, and exactly
zero when the interval covers zero. The most difference is the smallest
magnitude c whose symmetric interval (-c, c] holds at least 1 - alpha of
the posterior mass.

Around them, ``candidate_suite`` assembles the full bundle of rival
statistics a decision maker might use to call one experiment "stronger"
than another: raw and relative mean differences, their standard errors,
a posterior odds ratio against a practical-equivalence region, Welch and
equivalence-test p-values, a second-generation p-value, a standardised
effect size, and a uniform-noise control.
"""
from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import special

from .model import (
    CANDIDATES,
    CandidateStatistics,
    CredibleBounds,
    EffectStrengthResult,
    EmptyDraws,
    GroupSummary,
    MixedSignRegime,
    NullRegion,
    OutOfRange,
    PosteriorDraws,
    RawSamples,
    Scale,
    StudyRecord,
    ZeroPooledVariance,
    ZeroVarianceWarning,
    summarize,
)
from .posterior import _bounds_sorted, _quantile_sorted
from .rng import substream

__all__ = [
    "mean_difference",
    "relative_mean_difference",
    "standard_error_dm",
    "least_difference",
    "least_difference_scan",
    "most_difference",
    "welch_p",
    "tost_p",
    "equivalence_margins",
    "sgpv",
    "bayes_factor",
    "cohens_d",
    "effect_strength",
    "candidate_suite",
    "compare_candidate",
    "decide_stronger",
]


# ---------------------------------------------------------------------------
# summary-level statistics


def mean_difference(control: GroupSummary, experiment: GroupSummary) -> float:
    return experiment.mean - control.mean


def relative_mean_difference(
    control: GroupSummary, experiment: GroupSummary
) -> float:
    if control.mean == 0.0:
        raise OutOfRange("relative difference undefined: control mean is zero")
    return (experiment.mean - control.mean) / control.mean


def standard_error_dm(control: GroupSummary, experiment: GroupSummary) -> float:
    """Standard error of the difference in means (unpooled)."""
    return math.sqrt(
        control.variance / control.size + experiment.variance / experiment.size
    )


def _welch_parts(control: GroupSummary, experiment: GroupSummary):
    """Squared standard error and Welch-Satterthwaite df; (0, 0) if both
    group variances vanish."""
    vx = control.variance / control.size
    vy = experiment.variance / experiment.size
    se2 = vx + vy
    if se2 == 0.0:
        return 0.0, 0.0
    df = se2 ** 2 / (
        vx ** 2 / (control.size - 1) + vy ** 2 / (experiment.size - 1)
    )
    return se2, df


def welch_p(control: GroupSummary, experiment: GroupSummary) -> float:
    """Two-sided unequal-variance t-test p-value from summaries.

    Degenerate data (both sds zero) cannot be tested; by convention the
    p-value is 1 for identical means and 0 otherwise, with a warning.
    """
    se2, df = _welch_parts(control, experiment)
    diff = mean_difference(control, experiment)
    if se2 == 0.0:
        if diff == 0.0:
            return 1.0
        warnings.warn(
            "both groups have zero variance; p-value set to 0 by convention",
            ZeroVarianceWarning,
            stacklevel=2,
        )
        return 0.0
    t = diff / math.sqrt(se2)
    return float(2.0 * special.stdtr(df, -abs(t)))


def tost_p(
    control: GroupSummary, experiment: GroupSummary, margins: NullRegion
) -> float:
    """Equivalence-test p-value: two one-sided tests against the region.

    Small values support equivalence (the true difference lies inside the
    margins); the reported p is the larger of the two one-sided p-values.
    Margins must be on the raw scale of the data.
    """
    se2, df = _welch_parts(control, experiment)
    diff = mean_difference(control, experiment)
    lo, hi = margins.neg_threshold, margins.pos_threshold
    if se2 == 0.0:
        warnings.warn(
            "both groups have zero variance; equivalence p set by convention",
            ZeroVarianceWarning,
            stacklevel=2,
        )
        p_lower = 0.0 if diff > lo else (0.5 if diff == lo else 1.0)
        p_upper = 0.0 if diff < hi else (0.5 if diff == hi else 1.0)
        return max(p_lower, p_upper)
    se = math.sqrt(se2)
    # H0: diff <= lo, rejected for large t  /  H0: diff >= hi, for small t
    p_lower = float(special.stdtr(df, -(diff - lo) / se))
    p_upper = float(special.stdtr(df, (diff - hi) / se))
    return max(p_lower, p_upper)


def sgpv(interval: CredibleBounds, region: NullRegion) -> float:
    """Second-generation p-value: overlap of the interval with the region.

    Returns the fraction of the interval inside the region, corrected by
    max(interval width / twice the region width, 1) and clamped to [0, 1].
    A zero-width interval degenerates to the indicator of membership.
    """
    if interval.scale is not region.scale:
        raise ValueError(
            f"interval is on the {interval.scale.value} scale but the region "
            f"is on the {region.scale.value} scale"
        )
    width = interval.hi - interval.lo
    if width == 0.0:
        inside = region.neg_threshold <= interval.lo <= region.pos_threshold
        return 1.0 if inside else 0.0
    overlap = max(
        0.0,
        min(interval.hi, region.pos_threshold)
        - max(interval.lo, region.neg_threshold),
    )
    correction = max(width / (2.0 * region.width), 1.0)
    return min(1.0, (overlap / width) * correction)


def bayes_factor(draws: PosteriorDraws, region: NullRegion) -> float:
    """Smoothed posterior odds that the effect lies outside the region.

    Counts draws outside versus inside the region and returns
    (outside + 1) / (inside + 1); the add-one smoothing keeps the ratio
    finite when either count is zero.
    """
    from .posterior import require_relative

    values = draws.diff if region.scale is Scale.RAW else require_relative(draws)
    inside = int(
        np.count_nonzero(
            (values >= region.neg_threshold) & (values <= region.pos_threshold)
        )
    )
    outside = values.size - inside
    return (outside + 1) / (inside + 1)


def equivalence_margins(
    region: NullRegion, control: GroupSummary
) -> NullRegion:
    """Map a null region onto the raw scale of the data.

    A raw region passes through unchanged. A relative region states its
    thresholds as fractions of the control mean, so they scale by its
    magnitude before feeding a summary-level test.
    """
    if region.scale is Scale.RAW:
        return region
    if control.mean == 0.0:
        raise OutOfRange("relative null region unusable: control mean is zero")
    return NullRegion(
        neg_threshold=region.neg_threshold * abs(control.mean),
        pos_threshold=region.pos_threshold * abs(control.mean),
        scale=Scale.RAW,
    )


def cohens_d(control: GroupSummary, experiment: GroupSummary) -> float:
    """Standardised mean difference with the pooled standard deviation."""
    m, n = control.size, experiment.size
    pooled_var = (
        (m - 1) * control.variance + (n - 1) * experiment.variance
    ) / (m + n - 2)
    if pooled_var == 0.0:
        raise ZeroPooledVariance(
            "standardised effect size undefined: both groups are constant"
        )
    return mean_difference(control, experiment) / math.sqrt(pooled_var)


# ---------------------------------------------------------------------------
# least / most plausible differences


def least_difference(bounds: CredibleBounds, sign_ref: float) -> float:
    """Least plausible difference: the credible bound nearest zero.

    Zero whenever the interval covers zero (inclusive); otherwise the
    smaller bound magnitude, carrying the sign of ``sign_ref`` (the
    observed mean difference). A zero ``sign_ref`` also yields zero.
    """
    if bounds.lo <= 0.0 <= bounds.hi:
        return 0.0
    magnitude = min(abs(bounds.lo), abs(bounds.hi))
    if sign_ref > 0.0:
        return magnitude
    if sign_ref < 0.0:
        return -magnitude
    return 0.0


def least_difference_scan(
    bounds: CredibleBounds, grid: int = 10000, sign_ref: float = 1.0
) -> float:
    """Grid-scan variant of the least difference, for cross-checking.

    Evaluates |z| on an evenly spaced grid across the interval and returns
    the signed minimum. Agrees with ``least_difference`` to within one
    grid spacing.
    """
    if grid < 1000:
        raise OutOfRange(f"grid must be at least 1000 points, got {grid}")
    zs = np.linspace(bounds.lo, bounds.hi, int(grid))
    magnitude = float(np.min(np.abs(zs)))
    if sign_ref > 0.0:
        return magnitude
    if sign_ref < 0.0:
        return -magnitude
    return 0.0


def _coverage_sorted(sorted_arr: np.ndarray, c: float) -> float:
    """Fraction of draws in (-c, c]."""
    hi = np.searchsorted(sorted_arr, c, side="right")
    lo = np.searchsorted(sorted_arr, -c, side="right")
    return (int(hi) - int(lo)) / sorted_arr.size


def _most_difference_sorted(sorted_arr: np.ndarray, alpha: float) -> float:
    """Smallest magnitude c >= 0 with at least 1 - alpha of the draws in
    (-c, c], resolved exactly on the draw magnitudes.

    The coverage function only steps upward where a draw magnitude enters
    the interval, so the minimiser is either a magnitude present in the
    draws or sits immediately above one (when the draw at -c is excluded
    by the open lower edge). Binary search on the unique magnitudes finds
    the step; a nextafter nudge settles which side of it suffices.
    """
    target = 1.0 - alpha
    magnitudes = np.unique(np.abs(sorted_arr))
    lo_i, hi_i = 0, magnitudes.size - 1
    while lo_i < hi_i:
        mid = (lo_i + hi_i) // 2
        just_above = np.nextafter(magnitudes[mid], np.inf)
        if _coverage_sorted(sorted_arr, just_above) >= target:
            hi_i = mid
        else:
            lo_i = mid + 1
    c = float(magnitudes[lo_i])
    if _coverage_sorted(sorted_arr, c) >= target:
        return c
    return float(np.nextafter(c, np.inf))


def most_difference(draws, alpha_dm: float, sign_ref: float) -> float:
    """Most plausible difference at tail mass alpha_dm.

    The smallest magnitude c whose symmetric interval (-c, c] contains at
    least 1 - alpha_dm of the posterior draws, signed like ``sign_ref``.
    For draws that are all positive this reduces to their (1 - alpha_dm)
    quantile's order statistic; for a point mass it is that point.
    """
    arr = np.asarray(draws, dtype=float)
    if arr.size == 0:
        raise EmptyDraws("most_difference needs at least one draw")
    if not 0.0 < alpha_dm < 0.5:
        raise OutOfRange(f"alpha_dm must lie in (0, 0.5), got {alpha_dm}")
    magnitude = _most_difference_sorted(np.sort(arr), alpha_dm)
    if sign_ref > 0.0:
        return magnitude
    if sign_ref < 0.0:
        return -magnitude
    return 0.0


# ---------------------------------------------------------------------------
# bundled per-study results


def _signed(magnitude: float, sign_ref: float) -> float:
    if sign_ref > 0.0:
        return magnitude
    if sign_ref < 0.0:
        return -magnitude
    return 0.0


def _scale_block(sorted_values: np.ndarray, tail: float, scale: Scale,
                 sign_ref: float):
    """Bounds, least difference, most difference for one scale."""
    bounds = _bounds_sorted(sorted_values, tail, scale)
    d_least = least_difference(bounds, sign_ref)
    d_most = _signed(_most_difference_sorted(sorted_values, tail), sign_ref)
    return bounds, d_least, d_most


def effect_strength(
    study, draws: PosteriorDraws, tail_mass: float | None = None
) -> EffectStrengthResult:
    """Least and most plausible differences on both scales for one study.

    ``tail_mass`` defaults to the study's own alpha_dm. Relative results
    are present only when the posterior carried usable relative draws.
    """
    control, experiment = _study_groups(study)
    if tail_mass is None:
        if not isinstance(study, StudyRecord):
            raise OutOfRange(
                "tail_mass is required when study is not a StudyRecord"
            )
        tail_mass = study.alpha_dm
    if not 0.0 < tail_mass < 0.5:
        raise OutOfRange(f"tail_mass must lie in (0, 0.5), got {tail_mass}")

    sign_raw = mean_difference(control, experiment)
    sorted_diff = np.sort(draws.diff)
    bounds_raw, delta_l, delta_m = _scale_block(
        sorted_diff, tail_mass, Scale.RAW, sign_raw
    )

    r_delta_l = r_delta_m = bounds_rel = sign_rel = None
    if draws.rel_diff is not None and control.mean != 0.0:
        sign_rel = sign_raw / control.mean
        sorted_rel = np.sort(draws.rel_diff)
        bounds_rel, r_delta_l, r_delta_m = _scale_block(
            sorted_rel, tail_mass, Scale.RELATIVE, sign_rel
        )

    return EffectStrengthResult(
        delta_l=delta_l,
        delta_m=delta_m,
        bounds_raw=bounds_raw,
        sign_ref_raw=sign_raw,
        r_delta_l=r_delta_l,
        r_delta_m=r_delta_m,
        bounds_rel=bounds_rel,
        sign_ref_rel=sign_rel,
    )


def _study_groups(study) -> tuple[GroupSummary, GroupSummary]:
    if isinstance(study, StudyRecord):
        return study.control, study.experiment
    control, experiment = study
    return control, experiment


def candidate_suite(
    samples: RawSamples | None,
    study: StudyRecord,
    null_region: NullRegion,
    draws: PosteriorDraws,
) -> CandidateStatistics:
    """Compute every rival decision statistic for one dataset.

    When raw ``samples`` are given, their summaries must match the study's
    summaries (they are the same data in two forms); passing None skips
    that consistency check. The null region fixes the scale on which the
    region-dependent statistics (posterior odds, equivalence test,
    second-generation p) are evaluated.

    The uniform-noise candidate is drawn from a substream of the
    posterior's seed, so the whole suite is a pure function of
    (study, null_region, draws).
    """
    control, experiment = study.control, study.experiment
    if samples is not None:
        sum_x, sum_y = summarize(samples)
        for got, want, label in (
            (sum_x, control, "control"),
            (sum_y, experiment, "experiment"),
        ):
            if (
                got.size != want.size
                or abs(got.mean - want.mean) > 1e-8 * max(1.0, abs(want.mean))
                or abs(got.sd - want.sd) > 1e-8 * max(1.0, want.sd)
            ):
                raise OutOfRange(
                    f"{label} samples disagree with the study summaries"
                )

    tail = study.alpha_dm
    xbar_dm = mean_difference(control, experiment)
    s_dm = standard_error_dm(control, experiment)
    margins = equivalence_margins(null_region, control)

    sorted_diff = np.sort(draws.diff)
    bounds_raw, delta_l, delta_m = _scale_block(
        sorted_diff, tail, Scale.RAW, xbar_dm
    )

    r_xbar_dm = rs_dm = r_delta_l = r_delta_m = None
    sorted_rel = bounds_rel = None
    if control.mean != 0.0:
        r_xbar_dm = xbar_dm / control.mean
        rs_dm = abs(s_dm / control.mean)
        if draws.rel_diff is not None:
            sorted_rel = np.sort(draws.rel_diff)
            bounds_rel, r_delta_l, r_delta_m = _scale_block(
                sorted_rel, tail, Scale.RELATIVE, r_xbar_dm
            )

    # region-dependent statistics evaluated on the region's scale
    if null_region.scale is Scale.RAW:
        region_sorted = sorted_diff
        region_bounds = bounds_raw
    else:
        region_sorted = sorted_rel
        region_bounds = bounds_rel

    p_n = welch_p(control, experiment)
    p_e = tost_p(control, experiment, margins)

    bf = p_sg = None
    if region_sorted is not None:
        lo_i = np.searchsorted(region_sorted, null_region.neg_threshold, "left")
        hi_i = np.searchsorted(region_sorted, null_region.pos_threshold, "right")
        inside = int(hi_i) - int(lo_i)
        bf = (region_sorted.size - inside + 1) / (inside + 1)
        p_sg = sgpv(region_bounds, null_region)

    return CandidateStatistics(
        xbar_dm=xbar_dm,
        r_xbar_dm=r_xbar_dm,
        s_dm=s_dm,
        rs_dm=rs_dm,
        bf=bf,
        p_n=p_n,
        p_e=p_e,
        p_sg=p_sg,
        cohen_d=cohens_d(control, experiment),
        delta_m=delta_m,
        r_delta_m=r_delta_m,
        delta_l=delta_l,
        r_delta_l=r_delta_l,
        rnd=float(substream(draws.seed, "rnd").random()),
    )


# ---------------------------------------------------------------------------
# pairwise decisions

# candidates whose magnitude is compared (same-sign regimes only)
_MAGNITUDE = frozenset(
    {
        "xbar_dm",
        "r_xbar_dm",
        "cohen_d",
        "delta_m",
        "r_delta_m",
        "delta_l",
        "r_delta_l",
    }
)
# candidates where smaller means stronger evidence
_SMALLER = frozenset({"s_dm", "rs_dm", "p_n", "p_sg", "rnd"})
# candidates where larger means stronger evidence
_LARGER = frozenset({"bf", "p_e"})


def compare_candidate(candidate: str, value1: float, value2: float) -> bool:
    """True when value1 reads as stronger evidence than value2.

    Applies the candidate's own reading: magnitude for effect-size style
    statistics, smaller-is-stronger for noise and p-like statistics,
    larger-is-stronger for odds and equivalence tests. Ties are False.
    """
    if candidate in _MAGNITUDE:
        return abs(value1) > abs(value2)
    if candidate in _SMALLER:
        return value1 < value2
    if candidate in _LARGER:
        return value1 > value2
    raise OutOfRange(f"unknown candidate statistic {candidate!r}")


def decide_stronger(
    stats1: CandidateStatistics,
    stats2: CandidateStatistics,
    candidate: str,
    strict: bool = True,
) -> bool:
    """Would this candidate statistic call experiment 1 stronger than 2?

    With ``strict`` (the default), comparing results whose observed mean
    differences disagree in sign raises MixedSignRegime, since magnitude
    readings are only meaningful within one sign regime. Pass
    ``strict=False`` to compare anyway.
    """
    if candidate not in CANDIDATES:
        raise OutOfRange(f"unknown candidate statistic {candidate!r}")
    if strict and stats1.xbar_dm * stats2.xbar_dm < 0.0:
        raise MixedSignRegime(
            "experiments disagree on the sign of the mean difference"
        )
    value1 = getattr(stats1, candidate)
    value2 = getattr(stats2, candidate)
    if value1 is None or value2 is None:
        raise OutOfRange(
            f"candidate {candidate!r} is unavailable for one of the results"
        )
    return compare_candidate(candidate, value1, value2)
