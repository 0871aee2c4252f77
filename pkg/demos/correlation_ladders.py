"""Strength ladders: does a statistic grow with the strength of evidence?

Each ladder sweeps one measure of effect strength upward while holding
the rest fixed; every candidate's per-config mean is rank-correlated
with the ladder. A statistic worth using tracks every ladder; the
uniform-noise control tracks none. The CLI equivalent:

    leastdiff correlate --scale raw --steps 10 --samples 200
"""
from leastdiff import RAW_MEASURES, generate_series, spearman_study

for measure in RAW_MEASURES:
    series = generate_series(measure, steps=8)
    report = spearman_study(series, n_samples=60, k_draws=2000, seed=3)
    print(f"ladder: {measure.value}  (side effects on: "
          f"{', '.join(series.couplings) or 'none'})")
    for name in ("delta_l", "xbar_dm", "p_n", "rnd"):
        row = report.row(name, measure.value)
        star = "*" if row.significant else " "
        print(f"  {name:<8} rho={row.rho:+.3f} "
              f"ci=({row.ci_lo:+.3f}, {row.ci_hi:+.3f}) {star}")
    print()
