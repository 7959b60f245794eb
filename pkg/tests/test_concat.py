from __future__ import annotations

import pytest

from geowom.concat import (
    ClassicalFlash,
    ErrorPattern,
    WomRepetition,
    adversarial_writes,
    charge_growth,
    classical_times_repetition,
    failure_pattern,
    hamming7_times_rep3,
    highest_cell,
    inject_errors,
    random_injection_trials,
    reachable_states,
    symbol_repetition,
    wom_times_repetition,
)
from geowom.geo_wom import pg22_code
from geowom.multilevel import BlockErasureRequired
from geowom.rm_codes import DecodeError, hamming_code
from geowom.wom_core import rivest_shamir


def test_parameters():
    c = wom_times_repetition(rivest_shamir(), 3)
    assert (c.n, c.num_messages, c.guaranteed_writes, c.capability) == (9, 4, 2, 1)
    p = wom_times_repetition(pg22_code(), 3, 4)
    assert (p.n, p.guaranteed_writes) == (21, 4)
    assert wom_times_repetition(pg22_code(), 3, 7).guaranteed_writes == 8
    h = hamming7_times_rep3(4)
    assert (h.n, h.num_messages, h.capability, h.guaranteed_writes) == (21, 16, 3, 1)
    assert classical_times_repetition(hamming_code(3), 3, 10).guaranteed_writes == 3
    f = ClassicalFlash(symbol_repetition(3, 4), WomRepetition(rivest_shamir(), 3, 4))
    assert f.capability == 3 and f.n == 27


def test_degenerate_repetition():
    c = wom_times_repetition(rivest_shamir(), 1)
    assert c.capability == 0 and c.n == 3
    assert c.encode(1, c.zero_state(), 2) == (0, 1, 0)


def test_even_repetition_rejected():
    with pytest.raises(ValueError):
        wom_times_repetition(rivest_shamir(), 2)
    with pytest.raises(ValueError):
        classical_times_repetition(hamming_code(3), 4, 4)


def test_alphabet_mismatch():
    with pytest.raises(ValueError):
        ClassicalFlash(symbol_repetition(3, 8), WomRepetition(rivest_shamir(), 3, 4))


def test_reading_example():
    c = WomRepetition(rivest_shamir(), 3, 4)
    assert c.read((3, 3, 2, 0, 0, 0, 0, 0, 0))[0] == 1
    msg, fixed = c.read_and_correct((3, 3, 2, 0, 0, 0, 0, 0, 0))
    assert fixed[:3] == (3, 3, 3)


def test_error_free_unchanged():
    c = WomRepetition(rivest_shamir(), 3, 4)
    s = c.encode(1, c.zero_state(), 3)
    assert c.read_and_correct(s) == (3, s)


def test_correction_overflow():
    c = WomRepetition(rivest_shamir(), 3, 4)
    with pytest.raises(BlockErasureRequired):
        c.read_and_correct((3, 2, 2, 0, 0, 0, 0, 0, 0))


@pytest.mark.parametrize("q", [2, 4])
def test_single_errors_corrected(q):
    c = WomRepetition(rivest_shamir(), 3, q)
    states = reachable_states(c)
    assert states
    for s, y, _ in states:
        for p in range(c.n):
            for d in (-1, 1):
                if not 0 <= s[p] + d < q:
                    continue
                msg, _ = c.read_and_correct(inject_errors(s, ErrorPattern((p,), (d,)), q))
                assert msg == y


def test_inject_errors():
    s = (1, 2, 0)
    assert inject_errors(s, ErrorPattern((), ()), 4) == s
    with pytest.raises(ValueError):
        inject_errors(s, ErrorPattern((2,), (-1,)), 4)
    with pytest.raises(ValueError):
        ErrorPattern((1,), (2,))


def test_classical_repetition_capability():
    h = hamming7_times_rep3(4)
    assert random_injection_trials(h, 3, 500, seed=3) == 0
    s = h.encode(1, h.zero_state(), 9)
    pat = failure_pattern(h, s)
    assert pat.weight == 4
    assert h.decode(inject_errors(s, pat, 4)) != 9


def test_classical_flash_capability():
    f = ClassicalFlash(symbol_repetition(3, 4), WomRepetition(rivest_shamir(), 3, 4))
    assert random_injection_trials(f, 3, 300, seed=5, writes=2) == 0
    s = f.encode(1, f.zero_state(), 2)
    pat = failure_pattern(f, s)
    assert pat.weight == 4
    try:
        assert f.decode(inject_errors(s, pat, 4)) != 2
    except DecodeError:
        pass


def test_charge_growth_without_errors():
    c = WomRepetition(rivest_shamir(), 3, 7)
    seq = [0, 1, 2, 3] * 10
    assert charge_growth(c, seq, lambda s: None) == 12


def test_adversarial_single_errors_fall_short():
    # write + error + correction can cost one cell three levels on the first write
    assert adversarial_writes(WomRepetition(rivest_shamir(), 3, 3)) == 0
    c = WomRepetition(rivest_shamir(), 3, 4)
    assert adversarial_writes(c) == 1 < c.guaranteed_writes
    assert charge_growth(c, [0, 1, 2, 3] * 5, highest_cell) >= 1
