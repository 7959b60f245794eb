"""Rates, capacity figures and the geometric-code rate table."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import comb, log2, prod
from typing import List, Optional, Sequence


def capacity_bound(q: int, t: int) -> float:
    """log2(1 + (q-1) t): bits per cell summed over t writes on q-level cells."""
    if q < 2 or t < 1:
        raise ValueError("need q >= 2 and t >= 1")
    return log2(1 + (q - 1) * t)


def sum_rate_capacity(q: int, t: int) -> float:
    """Maximum total bits per cell over t writes of a q-level WOM,
    log2 C(t + q - 1, q - 1) (the number of monotone level sequences)."""
    if q < 2 or t < 1:
        raise ValueError("need q >= 2 and t >= 1")
    return log2(comb(t + q - 1, q - 1))


def capacity_writes(bits_per_write: float, n: int, q: int, limit: int = 10_000) -> int:
    """Largest t for which t writes of ``bits_per_write`` bits on ``n`` cells
    stay within the sum-rate capacity (an upper bound on any code's writes)."""
    t = 0
    while t < limit and (t + 1) * bits_per_write <= n * sum_rate_capacity(q, t + 1) + 1e-12:
        t += 1
    return t


def rate_of(messages_per_write: Sequence[int], n: int) -> float:
    return log2(prod(messages_per_write)) / n


@dataclass
class RateRow:
    name: str
    length: int
    writes: int
    rate: float
    published_rate: Optional[float] = None
    reference_only: bool = False
    verified_rate: Optional[float] = None

    @property
    def flagged(self) -> bool:
        """Computed and published values disagree at two decimals."""
        if self.published_rate is None or self.reference_only:
            return False
        return f"{self.rate:.2f}" != f"{self.published_rate:.2f}"

    @property
    def note(self) -> str:
        if self.reference_only:
            return "reference (published)"
        if self.flagged:
            return "differs from published value"
        return ""


PUBLISHED_RATES = {
    "PG(2,2)": 1.60,
    "PG(3,2)": 1.82,
    "PG(4,2)": 1.60,
    "EG(3,2)": 1.38,
    "EG(4,2)": 1.66,
    "EG(5,2)": 1.50,
}

# (length, writes, messages per write) of PG(m,2) codes cited without a construction here
REFERENCE_PG = {"PG(3,2)": (15, 7, 15), "PG(4,2)": (31, 10, 31)}


def rate_table(verify: bool = False) -> List[RateRow]:
    """PG(2,2), EG(3..5,2) from their declared parameter lists, plus cited PG rows.

    With ``verify`` the guaranteed lists found by exhaustive search are
    evaluated too (n <= 16 only).
    """
    from .geo_wom import eg_code, pg22_code, declared_parameters, verify_write_count

    rows = []
    pg = pg22_code()
    rows.append(RateRow("PG(2,2)", 7, pg.t, rate_of(pg.messages_per_write, 7), PUBLISHED_RATES["PG(2,2)"]))
    for name, (n, t, v) in REFERENCE_PG.items():
        rows.append(RateRow(name, n, t, rate_of([v] * t, n), PUBLISHED_RATES[name], reference_only=True))
    for m in (3, 4, 5):
        name = f"EG({m},2)"
        params = declared_parameters(m)
        rows.append(RateRow(name, 1 << m, len(params), rate_of(params, 1 << m), PUBLISHED_RATES[name]))
    if verify:
        for row in rows:
            code = {"PG(2,2)": pg, "EG(3,2)": eg_code(3), "EG(4,2)": eg_code(4)}.get(row.name)
            if code is not None:
                rep = verify_write_count(code)
                row.verified_rate = rate_of(rep.achieved, code.n)
    return rows


def format_rate_table(rows: Sequence[RateRow]) -> str:
    head = ["code", "length", "writes", "rate", "published", "verified", "note"]
    body = [
        [
            r.name,
            str(r.length),
            str(r.writes),
            f"{r.rate:.2f}",
            "" if r.published_rate is None else f"{r.published_rate:.2f}",
            "" if r.verified_rate is None else f"{r.verified_rate:.2f}",
            r.note,
        ]
        for r in rows
    ]
    if all(r.verified_rate is None for r in rows):
        head = head[:5] + head[6:]
        body = [line[:5] + line[6:] for line in body]
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() for line in [head] + body]
    return "\n".join(lines) + "\n"


def rate_table_csv(rows: Sequence[RateRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "length", "rate_computed", "rate_paper"])
    for r in rows:
        w.writerow([r.name, r.length, repr(r.rate), "" if r.published_rate is None else f"{r.published_rate:.2f}"])
    return buf.getvalue()
