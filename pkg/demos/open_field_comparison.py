"""Race all six routers on open ground at a few node densities.

With nothing in the way, everything except plain greedy forwarding is
nearly perfect once the network is dense enough to be connected; greedy
keeps drifting into the region border chasing straight lines. Uses 100
trials per point, so expect success rates a couple of points off the
long-run values.
"""

from gricsim.harness import Algorithm, ExperimentConfig, run_sweep

DENSITIES = (2.5, 3.5, 5.0)
TRIALS = 100


def main() -> None:
    print(f"{TRIALS} trials per point, open field, shared worlds\n")
    header = "density " + "".join(f"{a.value:>9s}" for a in Algorithm)
    print(header)
    rows = {}
    for algorithm in Algorithm:
        cfg = ExperimentConfig(
            algorithm=algorithm,
            densities=DENSITIES,
            trials_per_point=TRIALS,
            master_seed=0,
        )
        rows[algorithm] = run_sweep(cfg).rows
    for i, density in enumerate(DENSITIES):
        cells = "".join(
            f"{rows[a][i].success_rate:>9.2f}" for a in Algorithm
        )
        print(f"{density:>7.1f}{cells}")
    print("\nEvery router sees the same random worlds, so the columns are")
    print("paired samples: a gap between them is a property of the rule,")
    print("not of the draw.")


if __name__ == "__main__":
    main()
