from __future__ import annotations

import pytest

from geowom.multilevel import lifted, worst_case_writes
from geowom.simulate import (
    CSV_HEADER,
    SimConfig,
    build_graph,
    exact_expected_writes,
    exact_from_graph,
    monte_carlo,
    sweep,
    sweep_csv,
)


def test_rs_q2_exact():
    assert exact_expected_writes("rs", "a", 2) == pytest.approx(89 / 36)


def test_complement_exact():
    for q in (2, 3, 5):
        assert exact_expected_writes("rs", "complement", q) == pytest.approx(2 * (q - 1))


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig("xx", "a", 2)
    with pytest.raises(ValueError):
        SimConfig("rs", "c", 2)
    with pytest.raises(ValueError):
        SimConfig("rs", "a", 2, trials=0)


def test_reproducible_and_parallel_identical():
    cfg = SimConfig("rs", "b", 3, trials=30_000, seed=11)
    a = monte_carlo(cfg, chunk=7_000)
    b = monte_carlo(cfg)
    c = monte_carlo(SimConfig("rs", "b", 3, trials=30_000, seed=11, workers=3), chunk=7_000)
    assert a.histogram == b.histogram == c.histogram
    assert a.mean == b.mean == c.mean


def test_monte_carlo_agrees_with_dp():
    for strategy in ("a", "b"):
        r = monte_carlo(SimConfig("rs", strategy, 3, trials=20_000, seed=2))
        assert abs(r.mean - exact_expected_writes("rs", strategy, 3)) <= 3 * r.stderr


def test_histogram_respects_worst_case():
    r = monte_carlo(SimConfig("pg22", "a", 3, trials=5_000, seed=4))
    assert min(r.histogram) >= worst_case_writes(lifted("pg22", 3, "a"))
    assert sum(k * v for k, v in r.histogram.items()) / r.config.trials == pytest.approx(r.mean)


def test_sweep_csv():
    rows = sweep("rs", [2, 3], ["complement", "a"], trials=500, seed=1)
    text = sweep_csv(rows)
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 5
    assert lines[1].startswith("rs,complement,2,500,2.000000")


def test_graph_dp_matches_independent_recursion():
    from functools import lru_cache

    code = lifted("rs", 3, "b")

    @lru_cache(None)
    def expect(s, last):
        opts = [y for y in range(4) if y != last]
        total = 0.0
        for y in opts:
            try:
                new = code.encode(2, s, y) if last is not None else code.encode(1, s, y)
            except Exception:
                continue
            total += 1 + expect(new, y)
        return total / len(opts)

    assert exact_from_graph(build_graph(code)) == pytest.approx(expect((0, 0, 0), None))
