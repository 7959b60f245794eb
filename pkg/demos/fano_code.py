"""Walk through the 4-write code on the seven points of the Fano plane.

Run: python3 demos/fano_code.py
"""

from __future__ import annotations

from geowom.geo_wom import FANO_LABELS, fano_lines, pg22_code, verify_write_count
from geowom.wom_core import encode_sequence, state_string


def main() -> None:
    code = pg22_code()
    print("lines of the plane (point labels):")
    for line in fano_lines():
        print("  ", " ".join(str(FANO_LABELS[i]) for i in sorted(line)))

    seq = [3, 5, 7, 3]
    trace = encode_sequence(code, [x - 1 for x in seq])
    print("\nwriting", " -> ".join(map(str, seq)))
    for step in trace.steps:
        s = step.state
        print(f"  write {step.step}: {state_string(s)}  weight {sum(s)}  reads {code.label(code.decode(s))}")

    rep = verify_write_count(code)
    print("\nexhaustive check:", rep.summary())


if __name__ == "__main__":
    main()
