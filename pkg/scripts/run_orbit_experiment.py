#!/usr/bin/env python3
"""Run the transvection orbit density experiment and print its report."""

import argparse

from covertower import OrbitConfig, orbit_density_experiment


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=100_000)
    parser.add_argument("--targets", type=int, default=256)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--genus", type=int, default=2)
    args = parser.parse_args()

    config = OrbitConfig(
        genus=args.genus, steps=args.steps, targets=args.targets, seed=args.seed
    )
    print(orbit_density_experiment(config).report(), end="")


if __name__ == "__main__":
    main()
