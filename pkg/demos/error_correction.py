"""Concatenating WOM and classical codes with repetition to survive
magnitude-one level errors.

Run: python3 demos/error_correction.py
"""

from __future__ import annotations

from geowom.concat import (
    ClassicalFlash,
    ErrorPattern,
    WomRepetition,
    failure_pattern,
    hamming7_times_rep3,
    inject_errors,
    random_injection_trials,
    symbol_repetition,
)
from geowom.rm_codes import DecodeError
from geowom.wom_core import rivest_shamir, state_string


def main() -> None:
    c = WomRepetition(rivest_shamir(), 3, 4)
    s = c.encode(1, c.zero_state(), 2)
    bad = inject_errors(s, ErrorPattern((4,), (1,)), 4)
    msg, fixed = c.read_and_correct(bad)
    print("RS x rep3 at q=4")
    print(f"  stored {state_string(s)}, after an error {state_string(bad)}")
    print(f"  read {c.base.label(msg)}, corrected to {state_string(fixed)}")

    flash = ClassicalFlash(symbol_repetition(3, 4), WomRepetition(rivest_shamir(), 3, 4))
    for name, code, x in (("GF(4) rep3 x (RS x rep3)", flash, 2), ("Hamming7 x rep3", hamming7_times_rep3(4), 9)):
        print(f"\n{name}: {code.n} cells, corrects {code.capability} errors")
        fails = random_injection_trials(code, code.capability, 2_000, seed=1)
        print(f"  {code.capability} random errors: {fails} failures in 2000 trials")
        s = code.encode(1, code.zero_state(), x)
        pat = failure_pattern(code, s)
        try:
            out = str(code.decode(inject_errors(s, pat, code.q)))
        except DecodeError:
            out = "decode failure"
        print(f"  {pat.weight} errors at {list(pat.positions)}: wrote {x}, read {out}")


if __name__ == "__main__":
    main()
