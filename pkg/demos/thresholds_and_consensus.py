"""Threshold stability and multi-study consensus.

The least difference does not depend on the practical threshold: two
reviewers with different thresholds see the same statistic and only
disagree (possibly) on the final call. Compare that with equivalence
tests, where moving the margin changes the p-value itself.

We also show the consensus reading across companion studies: the claim
"every study shows a practically significant effect" requires each least
difference to clear the threshold.
"""
from leastdiff import (
    NullRegion,
    Scale,
    consensus,
    designate,
    effect_strength,
    sample_posterior,
    tost_p,
    equivalence_margins,
)
from leastdiff.datasets import load_cholesterol

rows = load_cholesterol()[:5]

results = []
for index, row in enumerate(rows):
    draws = sample_posterior(row.record, k=10000, seed=100 + index)
    results.append((row, effect_strength(row.record, draws)))

for label, lo in (("lenient -10%", -0.10), ("standard -20%", -0.20),
                  ("strict -25%", -0.25)):
    region = NullRegion(lo, -lo, Scale.RELATIVE)
    calls = [designate(res.r_delta_l, region) for _, res in results]
    agreed = consensus(calls)
    print(f"{label:>14}: "
          + " ".join(c.value.split("_")[0][:4] for c in calls)
          + f"   consensus={agreed}")

print()
print("the statistic itself never moved:")
for row, res in results:
    print(f"  study {row.row_id}: r_delta_l = {res.r_delta_l:+.3f}")

print()
print("equivalence-test p-values do move with the margin (study 1):")
row, _ = results[0]
for frac in (0.10, 0.20, 0.25):
    region = NullRegion(-frac, frac, Scale.RELATIVE)
    margins = equivalence_margins(region, row.record.control)
    p = tost_p(row.record.control, row.record.experiment, margins)
    print(f"  margin +-{frac:.0%}: p_e = {p:.4f}")
