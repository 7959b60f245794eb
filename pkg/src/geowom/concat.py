"""Error-correcting WOM and flash codes built by concatenation.

* ``WomRepetition``: every cell of a binary WOM code is stored in ``m`` cells
  (m odd). Reading takes levels mod 2 and a majority vote per block; on
  multilevel cells the offending cells of a block are raised by one level so
  the whole block agrees again. Rewriting on q levels follows the
  complement schedule of the base code.
* ``ClassicalFlash``: an outer symbol code whose symbols are stored by an
  inner flash code (here a ``WomRepetition``).
* ``ClassicalRepetition``: a binary linear code whose bits are each stored in
  ``2m + 1`` cells read mod 2.

Errors are magnitude one in either direction and keep levels in ``[0, q)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2
from .multilevel import BlockErasureRequired
from .rm_codes import BinaryCode, DecodeError, hamming_code, majority
from .wom_core import State, WomCode, WomError, WriteBudgetExhausted, state_string


@dataclass(frozen=True)
class ErrorPattern:
    positions: Tuple[int, ...]
    directions: Tuple[int, ...]

    def __post_init__(self):
        if len(self.positions) != len(self.directions):
            raise ValueError("one direction per position")
        if len(set(self.positions)) != len(self.positions):
            raise ValueError("positions must be distinct")
        if any(d not in (-1, 1) for d in self.directions):
            raise ValueError("errors have magnitude one")

    @property
    def weight(self) -> int:
        return len(self.positions)


def inject_errors(s: Sequence[int], pattern: ErrorPattern, q: int) -> State:
    out = list(s)
    for p, d in zip(pattern.positions, pattern.directions):
        out[p] += d
        if not 0 <= out[p] < q:
            raise ValueError(f"error at cell {p} leaves the level range [0, {q})")
    return tuple(out)


def random_pattern(s: Sequence[int], weight: int, q: int, rng: np.random.Generator) -> ErrorPattern:
    """``weight`` distinct cells, each moved up or down by one within range."""
    pos = sorted(int(p) for p in rng.choice(len(s), size=weight, replace=False))
    dirs = []
    for p in pos:
        options = [d for d in (-1, 1) if 0 <= s[p] + d < q]
        dirs.append(options[int(rng.integers(len(options)))])
    return ErrorPattern(tuple(pos), tuple(dirs))


def _parity_majority(block: Sequence[int]) -> int:
    return majority([x & 1 for x in block])


def _lift_block(s: Sequence[int], target: Sequence[int]) -> List[int]:
    """Smallest levels >= max(s, target) with the target's parity."""
    out = []
    for a, t in zip(s, target):
        v = max(a, t)
        out.append(v + ((v ^ t) & 1))
    return out


class ConcatCode:
    scheme: str
    name: str
    n: int
    q: int
    num_messages: int
    capability: int
    guaranteed_writes: int

    def zero_state(self) -> State:
        return (0,) * self.n

    def decode(self, s: Sequence[int]) -> int:
        raise NotImplementedError

    def encode(self, write: int, s: Sequence[int], y: int) -> State:
        raise NotImplementedError

    def read_and_correct(self, s: Sequence[int]) -> Tuple[int, State]:
        raise NotImplementedError

    def report(self) -> dict:
        return {
            "scheme": self.scheme,
            "code": self.name,
            "length": self.n,
            "q": self.q,
            "messages": self.num_messages,
            "guaranteed_writes": self.guaranteed_writes,
            "error_capability": self.capability,
        }


class WomRepetition(ConcatCode):
    scheme = "WomRep"

    def __init__(self, base: WomCode, m: int, q: int = 2):
        if m < 1 or m % 2 == 0:
            raise ValueError("repetition length must be odd")
        if q < 2:
            raise ValueError("q must be >= 2")
        if not base.fixed_information:
            raise ValueError(f"{base.name} is not a fixed-information code")
        self.base, self.m, self.q = base, m, q
        self.n = base.n * m
        self.num_messages = base.num_messages
        self.labels = base.labels
        self.capability = (m - 1) // 2
        self.writes_per_cycle = base.t
        self.guaranteed_writes = base.t if q == 2 else ceil((q - 1) * base.t / 3)
        self.name = f"{base.name}x[{m},1,{m}]" + (f"/q={q}" if q > 2 else "")
        if q > 2:
            self._check_complement_invariance()

    def _check_complement_invariance(self) -> None:
        # reading mod 2 sees odd cycles complemented; the base decoder must not care
        reps = getattr(self.base, "table", None) or []
        for col in reps:
            for x, states in col.items():
                for u in states:
                    if self.base.decode(tuple(1 - b for b in u)) != x:
                        raise ValueError(f"{self.base.name} does not decode complemented states alike")

    def blocks(self, s: Sequence[int]) -> List[Tuple[int, ...]]:
        s = tuple(s)
        if len(s) != self.n:
            raise WomError(f"expected {self.n} cells")
        return [s[i * self.m:(i + 1) * self.m] for i in range(self.base.n)]

    def read(self, s: Sequence[int]) -> State:
        """Majority of the parities in each block: the base-code cell pattern."""
        return tuple(_parity_majority(b) for b in self.blocks(s))

    def decode(self, s: Sequence[int]) -> int:
        return self.base.decode(self.read(s))

    def read_and_correct(self, s: Sequence[int]) -> Tuple[int, State]:
        bits = self.read(s)
        msg = self.base.decode(bits)
        if self.q == 2:
            return msg, tuple(s)
        out = []
        for bit, block in zip(bits, self.blocks(s)):
            for level in block:
                if (level & 1) != bit:
                    level += 1
                    if level > self.q - 1:
                        raise BlockErasureRequired(f"correcting {state_string(s)} needs level {level}", ())
                out.append(level)
        return msg, tuple(out)

    def expand(self, binary: Sequence[int]) -> State:
        return tuple(b for b in binary for _ in range(self.m))

    def encode(self, write: int, s: Sequence[int], y: int) -> State:
        s = tuple(s)
        if write > 1:
            try:
                if self.decode(s) == y:
                    return s
            except DecodeError:
                pass
        t = self.writes_per_cycle
        if not 1 <= write <= (self.q - 1) * t:
            raise WriteBudgetExhausted(f"{self.name} allows {(self.q - 1) * t} writes", step=write)
        cycle, k = divmod(write - 1, t)
        if k == 0:
            below = self.base.zero_state()
        else:
            below = tuple(b ^ (cycle & 1) for b in self.read(s))
        binary = self.base.encode(k + 1, below, y)
        target = self.expand(tuple(b + cycle for b in binary))
        if self.q == 2:
            # binary cells cannot be lowered; a cell stuck at 1 is left to the majority vote
            return tuple(max(a, b) for a, b in zip(s, target))
        new = _lift_block(s, target)
        if max(new) > self.q - 1:
            raise BlockErasureRequired(f"write {write} needs level {max(new)} with q={self.q}", ())
        return tuple(new)


def wom_times_repetition(base: WomCode, m: int, q: int = 2) -> WomRepetition:
    return WomRepetition(base, m, q)


class SymbolCode:
    """A code over an alphabet of ``alphabet`` symbols given by its codewords,
    decoded by nearest codeword (unique within the correction radius)."""

    def __init__(self, name: str, alphabet: int, codewords: Sequence[Sequence[int]]):
        self.name = name
        self.alphabet = alphabet
        self.codewords = [tuple(c) for c in codewords]
        self.n = len(self.codewords[0])
        d = min(
            sum(a != b for a, b in zip(u, v))
            for i, u in enumerate(self.codewords)
            for v in self.codewords[i + 1:]
        )
        self.distance = d
        self.capability = (d - 1) // 2

    @property
    def num_messages(self) -> int:
        return len(self.codewords)

    def encode(self, x: int) -> Tuple[int, ...]:
        return self.codewords[x]

    def decode(self, word: Sequence[Optional[int]]) -> int:
        dist = [sum(a != b for a, b in zip(c, word)) for c in self.codewords]
        best = min(dist)
        if best > self.capability or dist.count(best) > 1:
            raise DecodeError(f"{self.name}: no codeword within distance {self.capability}")
        return dist.index(best)


def symbol_repetition(length: int, alphabet: int) -> SymbolCode:
    return SymbolCode(f"Rep[{length}]_{alphabet}", alphabet, [(a,) * length for a in range(alphabet)])


class ClassicalFlash(ConcatCode):
    scheme = "ClassicalFlash"

    def __init__(self, outer: SymbolCode, inner: WomRepetition):
        if outer.alphabet != inner.num_messages:
            raise ValueError(
                f"outer alphabet {outer.alphabet} does not match the inner code's {inner.num_messages} messages"
            )
        self.outer, self.inner = outer, inner
        self.q = inner.q
        self.n = outer.n * inner.n
        self.num_messages = outer.num_messages
        e, big_e = outer.capability, inner.capability
        self.capability = (big_e + 1) * (e + 1) - 1
        self.guaranteed_writes = inner.guaranteed_writes
        self.name = f"{outer.name}x({inner.name})"

    def blocks(self, s: Sequence[int]) -> List[Tuple[int, ...]]:
        s = tuple(s)
        k = self.inner.n
        return [s[i * k:(i + 1) * k] for i in range(self.outer.n)]

    def _symbols(self, s: Sequence[int]) -> List[Optional[int]]:
        out: List[Optional[int]] = []
        for b in self.blocks(s):
            try:
                out.append(self.inner.decode(b))
            except DecodeError:
                out.append(None)
        return out

    def decode(self, s: Sequence[int]) -> int:
        return self.outer.decode(self._symbols(s))

    def read_and_correct(self, s: Sequence[int]) -> Tuple[int, State]:
        msg = self.decode(s)
        out: List[int] = []
        for b in self.blocks(s):
            try:
                out.extend(self.inner.read_and_correct(b)[1])
            except DecodeError:
                out.extend(b)
        return msg, tuple(out)

    def encode(self, write: int, s: Sequence[int], y: int) -> State:
        word = self.outer.encode(y)
        out: List[int] = []
        for sym, b in zip(word, self.blocks(s)):
            out.extend(self.inner.encode(write, b, sym))
        return tuple(out)


def classical_times_flash(outer: SymbolCode, inner: WomRepetition) -> ClassicalFlash:
    return ClassicalFlash(outer, inner)


class ClassicalRepetition(ConcatCode):
    scheme = "ClassicalRep"

    def __init__(self, outer: BinaryCode, rep: int, q: int):
        if rep < 3 or rep % 2 == 0:
            raise ValueError("repetition length must be odd and >= 3")
        if q < 2:
            raise ValueError("q must be >= 2")
        self.outer, self.rep, self.q = outer, rep, q
        self.half = (rep - 1) // 2
        e = (outer.min_distance - 1) // 2
        self.outer_capability = e
        self.capability = self.half * e + self.half + e
        self.n = outer.n * rep
        self.num_messages = 1 << outer.k
        self.guaranteed_writes = ceil((q - 1) / 3)
        self.name = f"{outer.name}x[{rep},1,{rep}]/q={q}"

    def blocks(self, s: Sequence[int]) -> List[Tuple[int, ...]]:
        s = tuple(s)
        if len(s) != self.n:
            raise WomError(f"expected {self.n} cells")
        return [s[i * self.rep:(i + 1) * self.rep] for i in range(self.outer.n)]

    def read(self, s: Sequence[int]) -> Tuple[int, ...]:
        return tuple(_parity_majority(b) for b in self.blocks(s))

    def _message(self, word: Sequence[int]) -> int:
        bits = self.outer.message_of(self.outer.correct(word))
        return gf2.bits_to_int(bits)

    def decode(self, s: Sequence[int]) -> int:
        return self._message(self.read(s))

    def read_and_correct(self, s: Sequence[int]) -> Tuple[int, State]:
        bits = self.read(s)
        msg = self._message(bits)
        if self.q == 2:
            return msg, tuple(s)
        out = []
        for bit, block in zip(bits, self.blocks(s)):
            for level in block:
                if (level & 1) != bit:
                    level += 1
                    if level > self.q - 1:
                        raise BlockErasureRequired(f"correction needs level {level}", ())
                out.append(level)
        return msg, tuple(out)

    def encode(self, write: int, s: Sequence[int], y: int) -> State:
        if not 0 <= y < self.num_messages:
            raise WomError(f"message {y} outside 0..{self.num_messages - 1}")
        word = self.outer.encode(gf2.int_to_bits(y, self.outer.k))
        target = tuple(b for b in word for _ in range(self.rep))
        if self.q == 2:
            return tuple(max(a, b) for a, b in zip(s, target))
        new = _lift_block(s, target)
        if max(new) > self.q - 1:
            raise BlockErasureRequired(f"write {write} needs level {max(new)} with q={self.q}", ())
        return tuple(new)


def classical_times_repetition(outer: BinaryCode, rep: int, q: int) -> ClassicalRepetition:
    return ClassicalRepetition(outer, rep, q)


# -- experiments ----------------------------------------------------------


def failure_pattern(code: ConcatCode, s: Sequence[int]) -> ErrorPattern:
    """Capability + 1 errors placed to defeat the decoder.

    Two concatenation levels fail together only when (inner radius + 1)
    errors hit each of (outer radius + 1) inner blocks; here they go into the
    first cells of the first blocks, flipping those blocks' majority.
    """
    if isinstance(code, ClassicalRepetition):
        size, per, nblocks = code.rep, code.half + 1, code.outer_capability + 1
        inner_size = size
        offsets = [b * size for b in range(nblocks)]
    elif isinstance(code, ClassicalFlash):
        inner = code.inner
        per, nblocks = inner.capability + 1, code.outer.capability + 1
        offsets = [b * inner.n for b in range(nblocks)]
        inner_size = inner.m
    elif isinstance(code, WomRepetition):
        per, nblocks, inner_size = code.capability + 1, 1, code.m
        offsets = [0]
    else:
        raise TypeError(type(code).__name__)
    positions, dirs = [], []
    for off in offsets:
        for i in range(per):
            p = off + i
            if i >= inner_size:
                raise ValueError("block too small for the failure pattern")
            positions.append(p)
            dirs.append(1 if s[p] < code.q - 1 else -1)
    return ErrorPattern(tuple(positions), tuple(dirs))


def reachable_states(code: ConcatCode, max_writes: Optional[int] = None) -> List[Tuple[State, int, int]]:
    """(state, message, write) for every error-free state reachable within the
    guaranteed number of writes."""
    limit = code.guaranteed_writes if max_writes is None else max_writes
    out = []
    frontier = {(code.zero_state(), None)}
    for write in range(1, limit + 1):
        nxt = set()
        for s, last in frontier:
            for y in range(code.num_messages):
                if y == last:
                    continue
                try:
                    new = code.encode(write, s, y)
                except (BlockErasureRequired, WomError):
                    continue
                nxt.add((new, y))
        out.extend((s, y, write) for s, y in sorted(nxt))
        frontier = nxt
    return out


def random_injection_trials(code: ConcatCode, weight: int, trials: int, seed: int, writes: int = 1) -> int:
    """Failures among ``trials`` random (message sequence, error pattern) draws."""
    failures = 0
    for i in range(trials):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(i,))))
        s = code.zero_state()
        y = None
        for w in range(1, writes + 1):
            choices = [x for x in range(code.num_messages) if x != y]
            y = choices[int(rng.integers(len(choices)))]
            s = code.encode(w, s, y)
        bad = inject_errors(s, random_pattern(s, weight, code.q, rng), code.q)
        try:
            if code.decode(bad) != y:
                failures += 1
        except DecodeError:
            failures += 1
    return failures


def charge_growth(
    code: WomRepetition,
    messages: Iterable[int],
    error_cell: Callable[[State], Optional[int]],
) -> int:
    """Writes completed when, after every write, one cell (``error_cell``)
    suffers an upward magnitude-one error that is then corrected.

    Returns the number of writes completed before block erasure.
    """
    s = code.zero_state()
    done = 0
    last = None
    for y in messages:
        if y == last:
            continue
        try:
            s = code.encode(done + 1, s, y)
            p = error_cell(s)
            if p is not None and s[p] < code.q - 1:
                s = inject_errors(s, ErrorPattern((p,), (1,)), code.q)
            got, s = code.read_and_correct(s)
        except (BlockErasureRequired, WomError):
            break
        if got != y:
            raise DecodeError(f"write {done + 1}: read {got}, wrote {y}")
        done += 1
        last = y
    return done


def highest_cell(s: State) -> int:
    """Adversary: hit the most charged cell (first one on ties)."""
    return max(range(len(s)), key=lambda i: (s[i], -i))


def hamming7_times_rep3(q: int) -> ClassicalRepetition:
    return ClassicalRepetition(hamming_code(3), 3, q)


def adversarial_writes(code: WomRepetition, max_nodes: int = 2_000_000) -> int:
    """Fewest writes completed when an adversary picks every message and, after
    each write, at most one magnitude-one error that is then corrected.

    Only meaningful for q >= 3, where errors are removed by raising levels.
    """
    if code.q < 3:
        raise ValueError("errors are not removed on binary cells")
    memo = {}

    def value(s: State, last: Optional[int], j: int) -> int:
        key = (s, last, j)
        if key in memo:
            return memo[key]
        if len(memo) >= max_nodes:
            raise MemoryError("adversarial search budget exceeded")
        best = None
        for y in range(code.num_messages):
            if y == last:
                continue
            try:
                written = code.encode(j + 1, s, y)
            except (BlockErasureRequired, WomError):
                best = 0
                break
            patterns = [ErrorPattern((), ())] + [
                ErrorPattern((p,), (d,)) for p in range(code.n) for d in (-1, 1) if 0 <= written[p] + d < code.q
            ]
            for pat in patterns:
                try:
                    got, fixed = code.read_and_correct(inject_errors(written, pat, code.q))
                except BlockErasureRequired:
                    v = 0
                else:
                    if got != y:
                        raise DecodeError("single error not corrected")
                    v = 1 + value(fixed, y, j + 1)
                if best is None or v < best:
                    best = v
                if best == 0:
                    break
            if best == 0:
                break
        memo[key] = best
        return best

    return value(code.zero_state(), None, 0)
