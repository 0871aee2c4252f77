"""Smallest useful example: one study, one posterior, one reading.

A single published comparison arrives as group summaries (mean, sd, n).
We sample the posterior of the difference in means, look at the least
plausible difference on the relative scale, and ask whether it clears a
practical threshold of a 20% reduction.
"""
from leastdiff import (
    GroupSummary,
    NullRegion,
    Scale,
    StudyRecord,
    designate,
    effect_strength,
    sample_posterior,
)

study = StudyRecord(
    control=GroupSummary(mean=1335.0, sd=269.0, size=8),
    experiment=GroupSummary(mean=934.0, sd=232.0, size=8),
    alpha_dm=0.05 / 6,
    units="mg/dL",
    label_control="Vehicle",
    label_experiment="Atorvastatin",
)

draws = sample_posterior(study, k=10000, seed=1)
result = effect_strength(study, draws)

print(f"observed difference:      {study.mean_difference:+.1f} {study.units}")
print(f"least difference:         {result.delta_l:+.1f} {study.units}")
print(f"most difference:          {result.delta_m:+.1f} {study.units}")
print(f"relative least diff:      {result.r_delta_l:+.2%}")
print(f"relative most diff:       {result.r_delta_m:+.2%}")

region = NullRegion(-0.2, 0.2, Scale.RELATIVE)
print(f"reading vs +-20% region:  {designate(result.r_delta_l, region).value}")
