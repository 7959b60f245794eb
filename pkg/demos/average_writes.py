"""Average number of writes before an erasure under random messages:
exact values by backward induction next to seeded Monte Carlo estimates.

Run: python3 demos/average_writes.py [trials]
"""

from __future__ import annotations

import sys

from geowom.analysis import capacity_bound
from geowom.simulate import SimConfig, exact_expected_writes, monte_carlo


def main() -> None:
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20_000
    print(f"RS code, {trials} trials per point, seed 7")
    print(" q  complement   a (exact / mc)        b (exact / mc)")
    for q in range(2, 9):
        cells = []
        for s in ("a", "b"):
            r = monte_carlo(SimConfig("rs", s, q, trials, seed=7))
            cells.append(f"{exact_expected_writes('rs', s, q):6.3f} / {r.mean:6.3f}")
        print(f"{q:2d}  {2 * (q - 1):10d}   {cells[0]}     {cells[1]}")
    print(f"\nbits per cell bound for 4 writes at q=4: {capacity_bound(4, 4):.3f}")


if __name__ == "__main__":
    main()
