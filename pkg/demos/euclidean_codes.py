"""Codes on the points of EG(m, 2): verified write counts and rates.

Run: python3 demos/euclidean_codes.py
"""

from __future__ import annotations

from geowom.analysis import format_rate_table, rate_table
from geowom.geo_wom import eg_code, verify_write_count
from geowom.rm_codes import reed_muller
from geowom.wom_core import encode_sequence, state_string


def main() -> None:
    code = eg_code(3)
    rm = reed_muller(1, 3)
    seq = [0, 5, 3]
    # the last write accepts only some messages; take the first that fits
    s3 = encode_sequence(code, seq).states[-1]
    seq.append(next(y for y in range(8) if y != 3 and code.try_encode(4, s3, y) is not None))
    trace = encode_sequence(code, seq)
    print("EG(3,2): every state sits at distance 1 from a codeword of R(1,3)")
    for step in trace.steps:
        s = step.state
        near = rm.correct(s)
        flip = next(i for i, (a, b) in enumerate(zip(s, near)) if a != b)
        print(f"  write {step.step}: {state_string(s)}  flip point {flip} = message {code.decode(s)}")

    for m in (3, 4):
        print("\n" + verify_write_count(eg_code(m)).summary())

    print("\nrates with the verified lists:")
    print(format_rate_table(rate_table(verify=True)), end="")


if __name__ == "__main__":
    main()
