"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Criteria the constructions cannot meet are kept at their stated tolerance and
marked as strict expected failures; the printed line says FAIL.
"""

from __future__ import annotations

import time
from itertools import combinations, product

import pytest

from geowom.analysis import rate_table
from geowom.concat import (
    ClassicalFlash,
    ErrorPattern,
    WomRepetition,
    failure_pattern,
    hamming7_times_rep3,
    inject_errors,
    random_injection_trials,
    reachable_states as concat_states,
    symbol_repetition,
    wom_times_repetition,
)
from geowom.geo_wom import declared_parameters, eg_code, pg22_code, verify_write_count
from geowom.geometry import enumerate_flats, num_mu_flats, pg_counts, pg_lines
from geowom.multilevel import lifted, lifted_trace, worst_case_writes
from geowom.rm_codes import DecodeError, hamming_code, min_weight_codewords, reed_muller
from geowom.simulate import SimConfig, exact_expected_writes, monte_carlo, sweep
from geowom.wom_core import RS_TABLE, encode_sequence, parse_state, rivest_shamir, state_string


def span(vectors):
    out = {0}
    for v in vectors:
        out |= {x ^ v for x in out}
    return frozenset(out)


def coset_flats(m, mu):
    """Every mu-flat as a coset of a span of mu independent vectors."""
    subspaces = {span(c) for c in combinations(range(1, 1 << m), mu)}
    subspaces = {s for s in subspaces if len(s) == 1 << mu}
    return {frozenset(x ^ a for x in s) for s in subspaces for a in range(1 << m)}


def bfs_decode_check(code):
    """Walk every reachable (state, message, write); check decoding and the
    2w - 1 weight schedule of the Euclidean codes."""
    frontier = {(code.zero_state(), None)}
    seen = 0
    weights_ok = decode_ok = True
    for write in range(1, code.t + 1):
        nxt = set()
        for s, last in frontier:
            for y in range(code.num_messages):
                if y == last:
                    continue
                new = code.try_encode(write, s, y)
                if new is None:
                    continue
                decode_ok &= code.decode(new) == y
                weights_ok &= sum(new) == 2 * write - 1
                nxt.add((new, y))
        seen += len(nxt)
        frontier = nxt
    return seen, weights_ok, decode_ok


def step_costs(states):
    prev = (0,) * len(states[0])
    out = []
    for s in states:
        out.append((sum(a != b for a, b in zip(s, prev)), max(s)))
        prev = s
    return out


def test_criterion_01_rs_table(record):
    t0 = time.perf_counter()
    code = rivest_shamir()
    ok = True
    for label, (first, second) in RS_TABLE.items():
        x = code.parse_message(label)
        ok &= code.encode(1, (0, 0, 0), x) == parse_state(first)
        ok &= code.decode(parse_state(second)) == x
    for a1, a2, a3 in product((0, 1), repeat=3):
        ok &= code.label(code.decode((a1, a2, a3))) == f"{a2 ^ a3}{a1 ^ a3}"
    sequences = 0
    for a, b in product(range(4), repeat=2):
        trace = encode_sequence(code, [a, b])
        sequences += code.decode(trace.states[-1]) == b
    elapsed = time.perf_counter() - t0
    ok &= sequences == 16 and elapsed < 1
    assert record(1, ok, f"RS table and decode rule exact, {sequences}/16 two-write sequences ({elapsed:.2f}s)")


def test_criterion_02_geometry_counts(record):
    t0 = time.perf_counter()
    bad = []
    for m in range(6):
        for mu in range(m + 1):
            brute = coset_flats(m, mu)
            listed = {frozenset(f.points) for f in enumerate_flats(m, mu)}
            if not (num_mu_flats(m, mu) == len(brute) and listed == brute):
                bad.append((m, mu))
    elapsed = time.perf_counter() - t0
    ok = not bad and pg_counts(2) == (7, 7) and elapsed < 10
    assert record(2, ok, f"flat counts for 0 <= mu <= m <= 5 match coset enumeration, mismatches {bad}, PG(2,2) {pg_counts(2)} ({elapsed:.2f}s)")


def test_criterion_03_rm_geometry(record):
    t0 = time.perf_counter()
    planes = {f.incidence() for f in enumerate_flats(3, 2)}
    rm = set(min_weight_codewords(reed_muller(1, 3)))
    lines = {tuple(1 if i in line else 0 for i in range(7)) for line in pg_lines(2)}
    ham = set(min_weight_codewords(hamming_code(3)))
    elapsed = time.perf_counter() - t0
    ok = rm == planes and len(planes) == 14 and ham == lines and len(lines) == 7 and elapsed < 1
    assert record(3, ok, f"R(1,3) weight-4 words = {len(planes)} planes, Hamming weight-3 words = {len(lines)} lines ({elapsed:.2f}s)")


def test_criterion_04_eg3(record):
    t0 = time.perf_counter()
    code = eg_code(3)
    rm = reed_muller(1, 3)
    rep = verify_write_count(code)
    seen, weights_ok, decode_ok = bfs_decode_check(code)
    frontier = {code.zero_state()}
    dist_ok = True
    for write in range(1, code.t + 1):
        frontier = {n for s in frontier for y in range(8) if (n := code.try_encode(write, s, y)) is not None}
        dist_ok &= all(sum(a != b for a, b in zip(s, rm.correct(s))) == 1 for s in frontier)
    elapsed = time.perf_counter() - t0
    ok = rep.achieved == (8, 8, 8, 4) and weights_ok and dist_ok and decode_ok and elapsed < 5
    assert record(4, ok, f"EG(3,2) <{','.join(map(str, rep.achieved))}>/8, weights 1/3/5/7, distance-1 invariant, {seen} transitions decode ({elapsed:.2f}s)")


def test_criterion_05_eg4(record):
    t0 = time.perf_counter()
    rep = verify_write_count(eg_code(4))
    elapsed = time.perf_counter() - t0
    target = declared_parameters(4)
    shortfall = "none" if rep.matches else f"achieved <{','.join(map(str, rep.achieved))}> vs target <{','.join(map(str, target))}>"
    ok = bool(rep.achieved) and rep.declared == target and elapsed < 300
    assert record(5, ok, f"EG(4,2) write counts verified, shortfall: {shortfall} ({elapsed:.1f}s)")


def test_criterion_06_pg22(record):
    t0 = time.perf_counter()
    code = pg22_code()
    rep = verify_write_count(code)
    _, _, decode_ok = bfs_decode_check(code)
    trace = encode_sequence(code, [2, 4, 6, 2])
    got = [state_string(s) for s in trace.states]
    elapsed = time.perf_counter() - t0
    ok = rep.achieved == (7, 7, 7, 7) and decode_ok and got == ["0010000", "0110000", "0110101", "1110101"] and elapsed < 5
    assert record(6, ok, f"PG(2,2) <{','.join(map(str, rep.achieved))}>/7, 3->5->7->3 gives {' '.join(got)} ({elapsed:.2f}s)")


def test_criterion_07_rates(record):
    t0 = time.perf_counter()
    rows = {r.name: r for r in rate_table()}
    exact = all(f"{rows[n].rate:.2f}" == f"{rows[n].published_rate:.2f}" for n in ("PG(2,2)", "EG(3,2)", "EG(4,2)"))
    eg5 = rows["EG(5,2)"]
    elapsed = time.perf_counter() - t0
    ok = exact and eg5.flagged and elapsed < 1
    summary = ", ".join(f"{n} {rows[n].rate:.2f}" for n in ("PG(2,2)", "EG(3,2)", "EG(4,2)", "EG(5,2)"))
    assert record(7, ok, f"rates {summary}; EG(5,2) flagged against {eg5.published_rate:.2f} ({elapsed:.2f}s)")


WORST = {}


def worst(name, q, strategy):
    key = (name, q, strategy)
    if key not in WORST:
        WORST[key] = worst_case_writes(lifted(name, q, strategy))
    return WORST[key]


def test_criterion_08_rs_part():
    for q in (2, 3, 4):
        for strategy in ("a", "b"):
            assert worst("rs", q, strategy) == 2 * (q - 1)


@pytest.mark.xfail(strict=True, reason="greedy lifts of PG(2,2) are forced to erase before (q-1)t writes")
def test_criterion_08_worst_case(record):
    t0 = time.perf_counter()
    found = {}
    ok = True
    for name, t in (("rs", 2), ("pg22", 4)):
        for q in (2, 3, 4):
            for strategy in ("a", "b"):
                w = found[(name, q, strategy)] = worst(name, q, strategy)
                ok &= w >= (q - 1) * t
                if name == "rs":
                    ok &= w == 2 * (q - 1)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 600
    pg = ", ".join(f"q={q} A={found[('pg22', q, 'a')]} B={found[('pg22', q, 'b')]} need {4 * (q - 1)}" for q in (2, 3, 4))
    record(8, ok, f"RS worst case 2(q-1) for q=2,3,4; PG(2,2) {pg} ({elapsed:.1f}s)")
    assert ok


def test_criterion_09_trajectories(record):
    t0 = time.perf_counter()
    rs_seq = [3, 0, 1, 2, 3, 1]
    expected = {
        ("rs", "a"): ["001", "002", "102", "103", "203", "213"],
        ("rs", "b"): ["001", "111", "211", "212", "312", "322"],
        ("pg22", "a"): ["1000000", "1001000", "1002000", "1002001"],
        ("pg22", "b"): ["1000000", "1001000", "1001101", "1101111"],
    }
    ok = True
    for (name, strategy), want in expected.items():
        seq = rs_seq if name == "rs" else [0, 1, 0, 2]
        trace = lifted_trace(lifted(name, 4, strategy), seq)
        ok &= trace.costs() == step_costs([parse_state(s) for s in want])
        ok &= [state_string(s) for s in trace.states] == want
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 1
    assert record(9, ok, f"RS and PG(2,2) strategy A/B trajectories at q=4 match states and cost vectors ({elapsed:.2f}s)")


def test_criterion_10_parts():
    assert exact_expected_writes("rs", "a", 2) == pytest.approx(2.47, abs=0.05)
    for q in (2, 3):
        r = monte_carlo(SimConfig("rs", "a", q, trials=100_000, seed=7))
        assert abs(r.mean - exact_expected_writes("rs", "a", q)) <= 3 * r.stderr
    for q in (2, 3, 4):
        assert exact_expected_writes("rs", "complement", q) == 2 * (q - 1)
        assert monte_carlo(SimConfig("rs", "complement", q, trials=10_000)).mean == 2 * (q - 1)


@pytest.mark.xfail(strict=True, reason="strategy A averages 4.99 writes at q=3 under the message model; 4.89 is strategy B")
def test_criterion_10_average_writes(record):
    t0 = time.perf_counter()
    exact = {q: exact_expected_writes("rs", "a", q) for q in (2, 3)}
    mc = {q: monte_carlo(SimConfig("rs", "a", q, trials=100_000, seed=7)) for q in (2, 3)}
    agree = all(abs(mc[q].mean - exact[q]) <= 3 * mc[q].stderr for q in (2, 3))
    complement = all(exact_expected_writes("rs", "complement", q) == 2 * (q - 1) for q in (2, 3, 4))
    elapsed = time.perf_counter() - t0
    ok = abs(exact[2] - 2.47) <= 0.05 and abs(exact[3] - 4.89) <= 0.05 and agree and complement and elapsed < 120
    b3 = exact_expected_writes("rs", "b", 3)
    record(10, ok, f"RS A exact q=2 {exact[2]:.4f}, q=3 {exact[3]:.4f} (target 4.89 +-0.05; B gives {b3:.4f}); MC within 3 SE: {agree}; complement 2(q-1): {complement} ({elapsed:.1f}s)")
    assert ok


def test_criterion_11_sweep(record):
    t0 = time.perf_counter()
    qs = range(2, 9)
    rs = {(r.config.strategy, r.config.q): r.mean for r in sweep("rs", qs, trials=100_000, seed=7)}
    ok = True
    for s in ("a", "b"):
        gaps = [rs[(s, q)] - rs[("complement", q)] for q in qs]
        ok &= all(g >= 0 for g in gaps) and all(b >= a for a, b in zip(gaps, gaps[1:]))
    pg = {(r.config.strategy, r.config.q): r.mean for r in sweep("pg22", (2, 3), trials=100_000, seed=7)}
    near = all(abs(pg[(s, q)] / pg[("complement", q)] - 1) <= 0.10 for s in ("a", "b") for q in (2, 3))
    elapsed = time.perf_counter() - t0
    ok &= near and elapsed < 600
    gap8 = rs[("a", 8)] - rs[("complement", 8)]
    pgs = ", ".join(f"q={q} {pg[('a', q)]:.2f}/{pg[('b', q)]:.2f}/{pg[('complement', q)]:.0f}" for q in (2, 3))
    assert record(11, ok, f"RS A,B >= complement with nondecreasing gap (A gap {gap8:.2f} at q=8); PG(2,2) A/B/complement {pgs} within 10% ({elapsed:.1f}s)")


def test_criterion_12_wom_repetition(record):
    t0 = time.perf_counter()
    checked = 0
    ok = True
    for q in (2, 4):
        c = wom_times_repetition(rivest_shamir(), 3, q)
        ok &= (c.n, c.num_messages, c.capability) == (9, 4, 1)
        if q == 2:
            ok &= c.guaranteed_writes == 2
        for s, y, _ in concat_states(c):
            for p in range(c.n):
                for d in (-1, 1):
                    if 0 <= s[p] + d < q:
                        msg, _ = c.read_and_correct(inject_errors(s, ErrorPattern((p,), (d,)), q))
                        ok &= msg == y
                        checked += 1
    c4 = WomRepetition(rivest_shamir(), 3, 4)
    block = (3, 3, 2)
    parity = tuple(x % 2 for x in block)
    ok &= parity == (1, 1, 0) and c4.read(block + (0,) * 6)[0] == 1
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60
    assert record(12, ok, f"RS x rep3 is <4>^2/9, {checked} single errors corrected at q=2,4; (332) reads {''.join(map(str, parity))} -> 1 ({elapsed:.2f}s)")


def test_criterion_13_concatenated_capabilities(record):
    t0 = time.perf_counter()
    flash = ClassicalFlash(symbol_repetition(3, 4), WomRepetition(rivest_shamir(), 3, 4))
    ham = hamming7_times_rep3(4)
    e, E = 1, 1
    m = 1
    ok = flash.capability == (E + 1) * (e + 1) - 1 and ham.capability == m * e + m + e
    failures = {}
    defeated = {}
    for name, code, msg in (("flash", flash, 2), ("hamming", ham, 9)):
        failures[name] = random_injection_trials(code, code.capability, 10_000, seed=13)
        s = code.encode(1, code.zero_state(), msg)
        pat = failure_pattern(code, s)
        try:
            defeated[name] = pat.weight == code.capability + 1 and code.decode(inject_errors(s, pat, 4)) != msg
        except DecodeError:
            defeated[name] = pat.weight == code.capability + 1
    elapsed = time.perf_counter() - t0
    ok &= not any(failures.values()) and all(defeated.values()) and elapsed < 120
    assert record(13, ok, f"capabilities {flash.capability} and {ham.capability}; random failures {failures}; capability+1 pattern defeats decoder {defeated} ({elapsed:.1f}s)")


def test_criterion_14_reproducibility(record):
    cfg = SimConfig("rs", "b", 4, trials=40_000, seed=99)
    runs = [monte_carlo(cfg), monte_carlo(cfg), monte_carlo(SimConfig("rs", "b", 4, 40_000, 99, workers=4), chunk=5_000)]
    sim_ok = all(r.histogram == runs[0].histogram and r.mean == runs[0].mean for r in runs)
    ham = hamming7_times_rep3(4)
    inj = [random_injection_trials(ham, 4, 2_000, seed=21) for _ in range(2)]
    ok = sim_ok and inj[0] == inj[1]
    assert record(14, ok, f"Monte Carlo identical across runs and serial/4-worker split (mean {runs[0].mean:.4f}); error injection identical ({inj[0]} failures twice)")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
