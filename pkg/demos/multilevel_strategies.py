"""Reusing binary codes on q-level cells: complement shifting versus the
greedy lifts that minimise cells increased (a) or the top level (b).

Run: python3 demos/multilevel_strategies.py
"""

from __future__ import annotations

from geowom.multilevel import lifted, lifted_trace, worst_case_writes
from geowom.wom_core import state_string


def show(name: str, q: int, strategy: str, seq) -> None:
    code = lifted(name, q, strategy)
    trace = lifted_trace(code, seq)
    states = " ".join(state_string(s) for s in trace.states)
    print(f"  {strategy:10s} {states}   costs {trace.costs()}")


def main() -> None:
    seq = [3, 0, 1, 2, 3, 1]
    print("RS at q=4, messages 11 00 01 10 11 01")
    for strategy in ("complement", "a", "b"):
        show("rs", 4, strategy, seq)

    print("\nFano code at q=4, messages 1 2 1 3")
    for strategy in ("a", "b"):
        show("pg22", 4, strategy, [0, 1, 0, 2])

    print("\nguaranteed writes against any message sequence ((q-1)t in brackets)")
    for name, t in (("rs", 2), ("pg22", 4)):
        for q in (2, 3, 4):
            vals = {s: worst_case_writes(lifted(name, q, s)) for s in ("complement", "a", "b")}
            print(f"  {name:5s} q={q}  " + "  ".join(f"{s}={v}" for s, v in vals.items()) + f"  [{(q - 1) * t}]")


if __name__ == "__main__":
    main()
