"""Geometric WOM codes: the Fano-plane code and the EG(m, 2) family.

Every state of these codes lies at Hamming distance one from a codeword of
the associated classical code (the [7,4,3] Hamming code, or R(m-2, m)); the
flipped position is the stored message.

EG(m, 2) encoder schedule (levels are nested flats, starting with the whole
space): writes 1-3 build a point, a plane minus a point and a plane plus an
off point inside the active flat. On write 4 the cube C spanned by that state
is closed off: in the last (3-dimensional) flat every zero of C can be
written as ``C - {y}``; otherwise a hyperplane H of the active flat with
``C + y`` inside it is chosen and the state becomes ``H - {y}``. The next
write fills H and starts over on the parallel hyperplane. For a 4-dimensional
active flat no such H exists when ``y`` lies off C; then C is filled and ``y``
is placed as the first point on the other hyperplane.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import gf2
from .geometry import Flat, affine_span
from .rm_codes import (
    BinaryCode,
    EnumerationBudgetError,
    from_parity_check,
    reed_muller,
)
from .wom_core import (
    State,
    TableWomCode,
    UnwritableError,
    WomCode,
    WomError,
    WriteBudgetExhausted,
    state_string,
)

# Fano point label -> nonzero vector of F_2^3 (as an int); label l is alpha^(l-1)
# for alpha a root of x^3 + x + 1, which makes {l, l+1, l+3} (mod 7) the lines.
FANO_LABEL_TO_VECTOR = {1: 1, 2: 2, 3: 4, 4: 3, 5: 6, 6: 7, 7: 5}
FANO_LABELS = tuple(str(i) for i in range(1, 8))


def fano_lines() -> List[Tuple[int, int, int]]:
    """Lines of the Fano plane as sorted triples of cell positions (label - 1)."""
    vec = {lab - 1: v for lab, v in FANO_LABEL_TO_VECTOR.items()}
    lines = set()
    for a in range(7):
        for b in range(a + 1, 7):
            c = next(p for p, v in vec.items() if v == vec[a] ^ vec[b])
            lines.add(tuple(sorted((a, b, c))))
    return sorted(lines)


def fano_hamming_code() -> BinaryCode:
    """[7,4,3] Hamming code whose cell j carries the Fano point labelled j+1."""
    h = [[(FANO_LABEL_TO_VECTOR[j + 1] >> (2 - i)) & 1 for j in range(7)] for i in range(3)]
    return from_parity_check("Hamming[7,4] (Fano label order)", h, distance=3)


def _indicator(points, n: int) -> State:
    pts = set(points)
    return tuple(1 if i in pts else 0 for i in range(n))


def pg22_configurations() -> List[Dict[int, List[State]]]:
    """Per-write representation lists of the Fano-plane code.

    Write 1: a point. Write 2: a line missing the point. Write 3: a line plus
    the point off it. Write 4: two lines meeting at the point, or the plane
    missing the point.
    """
    lines = [set(line) for line in fano_lines()]
    cols: List[Dict[int, List[State]]] = [{p: [] for p in range(7)} for _ in range(4)]
    for p in range(7):
        cols[0][p].append(_indicator({p}, 7))
        through = [line for line in lines if p in line]
        for line in through:
            cols[1][p].append(_indicator(line - {p}, 7))
        for line in lines:
            if p not in line:
                cols[2][p].append(_indicator(line | {p}, 7))
        for i, l1 in enumerate(through):
            for l2 in through[i + 1:]:
                cols[3][p].append(_indicator(l1 | l2, 7))
        cols[3][p].append(_indicator(set(range(7)) - {p}, 7))
    return cols


def pg22_code() -> TableWomCode:
    """The <7>^4/7 code on the Fano plane, cells in label order."""
    hamming = fano_hamming_code()
    cols = pg22_configurations()
    for col in cols:
        for p, reps in col.items():
            for u in reps:
                if hamming.flip_position(u) != p:
                    raise AssertionError(f"configuration {state_string(u)} does not point at {p + 1}")
    return TableWomCode("PG(2,2)", 7, cols, FANO_LABELS, decoder=hamming.flip_position)


def declared_parameters(m: int) -> Tuple[int, ...]:
    """Declared per-write message counts <2^m, 2^m, 2^m, 2^m - 4, 2^(m-1), ...>."""
    out: List[int] = []
    for j in range(m - 2):
        d = 1 << (m - j)
        out += [d, d, d, d - 4]
    return tuple(out)


def _mask(state: Sequence[int]) -> int:
    return gf2.bits_to_int(state)


def _points(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class EuclideanWomCode(WomCode):
    """WOM code on the 2^m points of EG(m, 2), 3 <= m <= 5.

    Messages are point indices; ``labels`` are 1-based (message ``i`` has label
    ``str(i + 1)``). Decoding is flip-position decoding against R(m-2, m).
    """

    def __init__(self, m: int):
        if not 3 <= m <= 5:
            raise ValueError("EG WOM codes are built for 3 <= m <= 5")
        self.m = m
        self.n = 1 << m
        self.name = f"EG({m},2)"
        self.num_messages = self.n
        self.labels = tuple(str(i + 1) for i in range(self.n))
        self.messages_per_write = declared_parameters(m)
        self.anchor = reed_muller(m - 2, m)
        self.space = Flat(m, m, range(self.n))

    def decode(self, state: Sequence[int]) -> int:
        return self.anchor.flip_position(state)

    def anchor_codeword(self, state: Sequence[int]) -> State:
        return self.anchor.correct(state)

    def encode(self, write: int, state: Sequence[int], message: int, report: bool = True) -> State:
        self._check_message(message)
        if len(state) != self.n:
            raise WomError(f"expected {self.n} cells")
        s = _mask(state)
        if write > 1 and s and gf2.xor_all(_points(s)) == message and len(_points(s)) % 2:
            return tuple(state)
        if not 1 <= write <= self.t:
            raise WriteBudgetExhausted(f"{self.name} allows {self.t} writes", step=write)
        new = self._step(s, message, report)
        return gf2.int_to_bits(new, self.n)

    def try_encode(self, write: int, state: Sequence[int], message: int) -> Optional[State]:
        try:
            return self.encode(write, state, message, report=False)
        except UnwritableError:
            return None

    # -- schedule ---------------------------------------------------------

    def _unwritable(self, s: int, y: int, why: str):
        cur = gf2.xor_all(_points(s)) if s else None
        ok = [z for z in range(self.n) if z not in (y, cur) and self._try(s, z)]
        if cur is not None:
            ok.append(cur)
        return UnwritableError(f"{self.name}: message {y + 1} unwritable ({why})", sorted(set(ok)))

    def _try(self, s: int, y: int) -> bool:
        try:
            self._step(s, y, report=False)
            return True
        except UnwritableError:
            return False

    def _pick(self, candidates: List[int]) -> int:
        return min(candidates, key=lambda c: gf2.int_to_bits(c, self.n))

    def _step(self, s: int, y: int, report: bool = True) -> int:
        fail = self._unwritable if report else (lambda s_, y_, why: UnwritableError(why))
        flat = self.space
        while True:
            t = s & flat.mask
            if flat.dim == 3:
                return self._block(flat, t, s, y, fail)
            hit = _covered_hyperplane(flat, t)
            if hit is None:
                return self._block(flat, t, s, y, fail)
            hyper, missing = hit
            rest = flat.mask & ~hyper.mask
            if missing:
                if not (rest >> y) & 1:
                    raise fail(s, y, "only points of the next hyperplane are writable")
                return s | missing | (1 << y)
            flat = Flat(self.m, flat.dim - 1, _points(rest))

    def _block(self, flat: Flat, t: int, s: int, y: int, fail) -> int:
        if y not in flat:
            raise fail(s, y, "message lies in an exhausted region")
        pts = _points(t)
        w = len(pts)
        if w == 0:
            return s | (1 << y)
        if w == 1:
            a = pts[0]
            cands = [
                s | (1 << b) | (1 << (a ^ y ^ b))
                for b in flat.points
                if b not in (a, y) and (a ^ y ^ b) not in (a, y, b)
            ]
            return self._pick(cands)
        x = gf2.xor_all(pts)
        if w == 3:
            if not (t >> y) & 1:
                return s | (1 << x) | (1 << y)
            d = x ^ y
            cands = [
                s | (1 << b) | (1 << (b ^ d))
                for b in flat.points
                if b < b ^ d and not (t >> b) & 1 and not (t >> (b ^ d)) & 1
            ]
            if not cands:
                raise fail(s, y, "no free pair completes a plane")
            return self._pick(cands)
        if w == 5:
            plane = t & ~(1 << x)
            if (plane >> y) & 1:
                raise fail(s, y, "message lies on the written plane")
            cube = affine_span(pts, self.m)
            if flat.dim == 3:
                return s | (flat.mask & ~(1 << y))
            need = cube.mask | (1 << y)
            hypers = [h for h in _hyperplanes(flat) if h.mask & need == need]
            if hypers:
                return self._pick([s | (h.mask & ~(1 << y)) for h in hypers])
            return s | cube.mask | (1 << y)
        raise fail(s, y, f"no further writes from a weight-{w} block")


@lru_cache(maxsize=None)
def _hyperplanes(flat: Flat) -> Tuple[Flat, ...]:
    return tuple(flat.hyperplanes())


def _covered_hyperplane(flat: Flat, t: int) -> Optional[Tuple[Flat, int]]:
    """A hyperplane H of ``flat`` that is fully written (missing = 0), or else
    one written up to a single point with nothing written off it (missing =
    that point's bit)."""
    if gf2.popcount(t) < len(flat) // 2 - 1:
        return None
    hypers = _hyperplanes(flat)
    for h in hypers:
        if h.mask & ~t == 0:
            return h, 0
    for h in hypers:
        missing = h.mask & ~t
        if gf2.popcount(missing) == 1 and not t & ~h.mask:
            return h, missing
    return None


@lru_cache(maxsize=None)
def eg_code(m: int) -> EuclideanWomCode:
    return EuclideanWomCode(m)


def eg_encode_step(m: int, write: int, state: Sequence[int], message: int) -> State:
    return eg_code(m).encode(write, state, message)


# -- exhaustive verification ----------------------------------------------


@dataclass
class WriteCountReport:
    code: str
    declared: Tuple[int, ...]
    achieved: Tuple[int, ...]
    states: int

    @property
    def matches(self) -> bool:
        return self.declared == self.achieved

    def summary(self) -> str:
        fmt = lambda v: "<" + ",".join(map(str, v)) + ">"
        line = f"{self.code}: declared {fmt(self.declared)}, achieved {fmt(self.achieved)}"
        return line + (" (match)" if self.matches else " (MISMATCH)")


def _write_layers(code: WomCode, max_states: int):
    """Yield (write, frontier, counts, successors) layer by layer from the erased state."""
    frontier: Set[State] = {code.zero_state()}
    write = 1
    seen = 0
    while frontier:
        counts = []
        nxt: Set[State] = set()
        for s in sorted(frontier):
            cur = code.current_message(s) if write > 1 else None
            ok = 0
            for y in range(code.num_messages):
                if y == cur:
                    ok += 1
                    continue
                new = code.try_encode(write, s, y)
                if new is None:
                    continue
                ok += 1
                nxt.add(new)
            counts.append(ok)
        seen += len(frontier)
        if seen > max_states:
            raise EnumerationBudgetError(f"more than {max_states} reachable states")
        yield write, frontier, counts, nxt
        frontier = nxt
        write += 1


def verify_write_count(code: WomCode, max_states: int = 1_000_000) -> WriteCountReport:
    """Guaranteed number of representable messages on each write, by BFS.

    Entry ``i`` is the minimum, over every state reachable with ``i - 1``
    writes, of the number of messages that state can move to on write ``i``
    (the currently stored message counts, since it needs no change).
    """
    if code.n > 16:
        raise EnumerationBudgetError("state-graph enumeration is limited to n <= 16")
    achieved: List[int] = []
    total = 0
    for write, frontier, counts, _ in _write_layers(code, max_states):
        total += len(frontier)
        v = min(counts)
        if write > 1 and v <= 1:
            break
        achieved.append(v)
    return WriteCountReport(code.name, tuple(code.messages_per_write), tuple(achieved), total)


def reachable_states(code: WomCode, max_states: int = 1_000_000) -> List[Tuple[State, int]]:
    """Every (state, writes-used) pair reachable from the erased state."""
    out: List[Tuple[State, int]] = []
    for write, frontier, _, nxt in _write_layers(code, max_states):
        if write == 1:
            out.append((code.zero_state(), 0))
        out.extend((s, write) for s in sorted(nxt))
    return out


def tabulate(code: WomCode, max_states: int = 1_000_000) -> TableWomCode:
    """Explicit table of reachable states: write -> message -> states."""
    cols: List[Dict[int, List[State]]] = []
    for s, w in reachable_states(code, max_states):
        if w == 0:
            continue
        while len(cols) < w:
            cols.append({})
        cols[w - 1].setdefault(code.decode(s), []).append(s)
    return TableWomCode(code.name, code.n, cols, code.labels, decoder=code.decode,
                        messages_per_write=code.messages_per_write)
