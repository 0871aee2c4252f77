"""Mini decision-risk benchmark.

Build comparison pairs where it is known which of two experiments has
the stronger mean difference, then score each candidate statistic on
how often it picks the right one. A good statistic has an error rate
well below coin-flipping; the uniform-noise control (rnd) should sit at
0.5. This is the small, fast version; the CLI command

    leastdiff risk --scale raw --regime positive --independent mu_dm

runs the desk-scale study (200 pairs x 50 samples).
"""
from leastdiff import (
    Measure,
    SignRegime,
    generate_comparison_pairs,
    run_comparison_study,
)

batch = generate_comparison_pairs(
    Measure.MU_DM, SignRegime.POSITIVE, count=80, seed=7
)
print(
    f"{len(batch)} pairs generated "
    f"(regenerated {batch.regenerations} batches to pass balance gates)"
)
print(f"winner balance: {batch.winner_fractions['mu_dm']:.2f} of pairs favor exp1")

report = run_comparison_study(
    batch, n_samples=25, k_draws=2000, seed=11, workers=2
)

print(f"\n{'candidate':<10} {'error':>7} {'significant':>12}")
for row in sorted(report.rows, key=lambda r: r.mean_error):
    print(f"{row.candidate:<10} {row.mean_error:>7.3f} {str(row.significant):>12}")
