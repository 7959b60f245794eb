"""Binary WOM codes reused on q-level cells.

Three rewriting rules share one container, ``LiftedCode``:

* ``complement``: write ``j`` stores the base code's write-``k`` state shifted
  up by ``m`` in every cell, where ``j - 1 = m*t + (k - 1)``. Exactly
  ``(q - 1) t`` writes.
* ``a``: the next state is any ``u + v`` with ``u`` a base representation of
  the message and ``v`` even, dominating the current state, fewest cells
  increased; ties go to the lexicographically smallest state.
* ``b``: smallest maximum level first, then fewest cells increased, then
  lexicographically.

Reading reduces levels modulo 2 and decodes with the base code (the
complement rule subtracts the cycle offset instead).

For a fixed ``u`` the cheapest dominating lift is ``s + ((s mod 2) xor u)``:
every other lift of ``u`` above ``s`` dominates it, so only these ``|U(y)|``
candidates need to be ranked.
"""

from __future__ import annotations

import sys
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .rm_codes import DecodeError, NoMessageError
from .wom_core import (
    State,
    UnwritableError,
    WomCode,
    WomError,
    WriteBudgetExhausted,
    WriteTrace,
    representation_set,
    run_trace,
    state_string,
)

STRATEGIES = ("complement", "a", "b")


class BlockErasureRequired(UnwritableError):
    """No monotone next state represents the message; the block must be erased."""


def _cost_a(s: State, new: State) -> tuple:
    return (sum(1 for a, b in zip(new, s) if a != b), new)


def _cost_b(s: State, new: State) -> tuple:
    return (max(new), sum(1 for a, b in zip(new, s) if a != b), new)


class LiftedCode(WomCode):
    """A fixed-information binary WOM code on cells with ``q`` levels."""

    def __init__(self, base: WomCode, q: int, strategy: str = "a"):
        strategy = strategy.lower()
        if strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}")
        if not isinstance(q, int) or q < 2:
            raise ValueError("q must be an integer >= 2")
        if not base.fixed_information:
            raise ValueError(f"{base.name} is not a fixed-information code")
        self.base = base
        self.q = q
        self.strategy = strategy
        self.n = base.n
        self.labels = base.labels
        self.num_messages = base.num_messages
        self.name = f"{base.name}/q={q}/{strategy}"
        # exact for the complement rule; a lower bound for a/b (see worst_case_writes)
        self.messages_per_write = tuple(base.messages_per_write) * (q - 1)
        self._reps = [tuple(representation_set(base, y)) for y in range(base.num_messages)]

    def representations(self, message: int) -> List[State]:
        return list(self._reps[message])

    # -- reading ----------------------------------------------------------

    def decode(self, state: Sequence[int], cycle: Optional[int] = None) -> int:
        state = tuple(state)
        if any(not 0 <= x < self.q for x in state):
            raise DecodeError(f"levels of {state_string(state)} outside [0, {self.q})")
        if self.strategy == "complement":
            m = min(state) if cycle is None else cycle
            binary = tuple(x - m for x in state)
            if any(x not in (0, 1) for x in binary):
                raise DecodeError(f"{state_string(state)} is not a shifted base state")
            return self.base.decode(binary)
        return self.base.decode(tuple(x & 1 for x in state))

    # -- writing ----------------------------------------------------------

    def encode(self, write: int, state: Sequence[int], message: int) -> State:
        self._check_message(message)
        state = tuple(state)
        if write > 1 and self.current_message(state) == message:
            return state
        if self.strategy == "complement":
            return complement_encode(self, write, state, message)
        if self.strategy == "a":
            return strategy_a_encode(self, state, message)
        return strategy_b_encode(self, state, message)

    def candidates(self, s: State, y: int) -> List[State]:
        """Minimal lifts of every u in U(y) over ``s`` that stay below q."""
        out = []
        for u in self._reps[y]:
            new = tuple(a + ((a & 1) ^ b) for a, b in zip(s, u))
            if max(new) < self.q:
                out.append(new)
        return out


def _lift(code: LiftedCode, s: Sequence[int], y: int, key) -> State:
    s = tuple(s)
    if len(s) != code.n:
        raise WomError(f"expected {code.n} cells")
    cands = code.candidates(s, y)
    if not cands:
        ok = [x for x in range(code.num_messages) if code.candidates(s, x)]
        raise BlockErasureRequired(
            f"{code.base.label(y)} cannot be written above {state_string(s)} with q={code.q}", ok
        )
    return min(cands, key=lambda new: key(s, new))


def strategy_a_encode(code: LiftedCode, s: Sequence[int], y: int) -> State:
    return _lift(code, s, y, _cost_a)


def strategy_b_encode(code: LiftedCode, s: Sequence[int], y: int) -> State:
    return _lift(code, s, y, _cost_b)


def complement_encode(code: LiftedCode, write: int, s: Sequence[int], y: int) -> State:
    base, t = code.base, code.base.t
    budget = (code.q - 1) * t
    if not 1 <= write <= budget:
        raise WriteBudgetExhausted(f"complement scheme allows {budget} writes", step=write)
    cycle, k = divmod(write - 1, t)
    s = tuple(s)
    if k == 0:
        below = base.zero_state()
    else:
        below = tuple(x - cycle for x in s)
        if any(x not in (0, 1) for x in below):
            raise WomError(f"{state_string(s)} is not a cycle-{cycle} state")
    binary = base.encode(k + 1, below, y)
    return tuple(x + cycle for x in binary)


def lifted_decode(code: LiftedCode, s: Sequence[int], cycle: Optional[int] = None) -> int:
    return code.decode(s, cycle)


def lifted_table(code: LiftedCode) -> List[Dict[int, State]]:
    """Per-write states of the complement scheme for a one-state-per-message base."""
    if code.strategy != "complement":
        raise ValueError("only the complement scheme has a fixed per-write table")
    out = []
    for j in range(1, (code.q - 1) * code.base.t + 1):
        cycle, k = divmod(j - 1, code.base.t)
        col = {}
        for y in range(code.num_messages):
            reps = getattr(code.base, "table", None)
            if reps is None:
                raise ValueError("base code has no explicit table")
            col[y] = tuple(x + cycle for x in min(reps[k][y]))
        out.append(col)
    return out


def lifted_trace(code: LiftedCode, messages: Sequence[int]) -> WriteTrace:
    return run_trace(code.name, code.labels, code.zero_state(), list(messages), code.encode, code.current_message)


# -- adversarial search ---------------------------------------------------


class SearchBudgetExceeded(WomError):
    def __init__(self, msg: str, lower_bound: int):
        super().__init__(msg)
        self.lower_bound = lower_bound


def worst_case_writes(code: LiftedCode, max_nodes: int = 2_000_000) -> int:
    """Fewest successful writes any message sequence can force before erasure.

    The adversary picks each next message (any message first, then anything
    other than the stored one); a message that cannot be written ends the
    game. Nodes are (state, last message, writes used); the write index only
    matters for the complement rule.
    """
    memo: Dict[tuple, int] = {}
    with_write = code.strategy == "complement"

    def value(s: State, last: Optional[int], j: int) -> int:
        key = (s, last, j if with_write else 0)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if len(memo) >= max_nodes:
            raise SearchBudgetExceeded("adversarial search budget exceeded", min(memo.values(), default=0))
        best = None
        for y in range(code.num_messages):
            if y == last:
                continue
            try:
                new = code.encode(j + 1, s, y)
            except UnwritableError:
                best = 0
                break
            v = 1 + value(new, y, j + 1)
            if best is None or v < best:
                best = v
        memo[key] = best
        return best

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10_000))
    try:
        return value(code.zero_state(), None, 0)
    finally:
        sys.setrecursionlimit(limit)


# -- brute-force oracle ---------------------------------------------------


def lifted_representations(code: LiftedCode, y: int) -> Iterator[State]:
    """All of U(y) + V with entries below q (full enumeration)."""
    evens = range(0, code.q, 2)
    seen = set()
    for u in code.representations(y):
        for v in product(evens, repeat=code.n):
            new = tuple(a + b for a, b in zip(u, v))
            if max(new) < code.q and new not in seen:
                seen.add(new)
                yield new


def brute_force_encode(code: LiftedCode, s: Sequence[int], y: int) -> State:
    """Reference encoder for strategies a/b ranking every element of U(y) + V."""
    s = tuple(s)
    key = _cost_a if code.strategy == "a" else _cost_b
    cands = [c for c in lifted_representations(code, y) if all(a >= b for a, b in zip(c, s))]
    if not cands:
        raise BlockErasureRequired("no dominating representation", ())
    return min(cands, key=lambda c: key(s, c))


@lru_cache(maxsize=None)
def lifted(base_name: str, q: int, strategy: str) -> LiftedCode:
    """Lifted code over one of the named base codes ("rs", "pg22")."""
    from .geo_wom import pg22_code
    from .wom_core import rivest_shamir

    bases = {"rs": rivest_shamir, "pg22": pg22_code}
    try:
        base = bases[base_name.lower()]()
    except KeyError:
        raise ValueError(f"unknown base code {base_name!r}") from None
    return LiftedCode(base, q, strategy)
