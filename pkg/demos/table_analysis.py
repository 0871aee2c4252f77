"""Analyze the bundled cholesterol table and flag practically
significant reductions.

Equivalent to:

    leastdiff analyze <cholesterol.csv> --scale relative \
        --neg-threshold -0.2 --pos-threshold 0.2 --draws 10000 --seed 1

Every row reports a reduction; the flagged ones are those whose least
plausible relative difference is below -20%, i.e. the posterior is
confident the reduction exceeds a fifth of the control level.
"""
from leastdiff import NullRegion, Scale, analyze_studies
from leastdiff.datasets import load_cholesterol

region = NullRegion(-0.2, 0.2, Scale.RELATIVE)
results = analyze_studies(
    load_cholesterol(),
    scale=Scale.RELATIVE,
    region=region,
    k_draws=10000,
    seed=1,
)

print(f"{'id':>3} {'treatment':<26} {'r_xbar':>8} {'r_delta_l':>10} "
      f"{'bounds':>20} flag")
for res in results:
    flag = "*" if res.practically_significant else ""
    bounds = f"[{res.bounds.lo:+.3f}, {res.bounds.hi:+.3f}]"
    print(
        f"{res.row_id:>3} {res.record.label_experiment[:26]:<26} "
        f"{res.stats.r_xbar_dm:>+8.2f} {res.stats.r_delta_l:>+10.3f} "
        f"{bounds:>20} {flag}"
    )

n_flagged = sum(res.practically_significant for res in results)
print(f"\n{n_flagged} of {len(results)} studies clear the -20% threshold")
