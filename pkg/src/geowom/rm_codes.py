"""Binary linear codes: Reed-Muller, Hamming and repetition codes.

Every code keeps a syndrome lookup table keyed by the packed syndrome of each
unit vector. Geometric WOM codes decode by locating the single position whose
flip turns a cell state into a codeword (``flip_position_decode``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2
from .geometry import coords_of

ENUM_MAX_K = 24
ENUM_MAX_N = 1 << 16

BitVector = Tuple[int, ...]


class DecodeError(ValueError):
    pass


class NoMessageError(DecodeError):
    """The vector is itself a codeword, so no flip position exists."""


class InvalidStateError(DecodeError):
    """No single flip reaches a codeword."""


class AmbiguousDecodeError(DecodeError):
    """Several single flips reach codewords (minimum distance below 3)."""


class EnumerationBudgetError(ValueError):
    pass


def _pack(col: np.ndarray) -> int:
    out = 0
    for i, b in enumerate(col):
        if b:
            out |= 1 << i
    return out


@dataclass(frozen=True, eq=False)
class BinaryCode:
    name: str
    generator: np.ndarray
    parity_check: np.ndarray
    known_distance: Optional[int] = None
    _table: Dict[int, int] = field(default_factory=dict, repr=False)
    _ambiguous: frozenset = field(default=frozenset(), repr=False)

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.generator, dtype=np.uint8) % 2)
        h = np.asarray(self.parity_check, dtype=np.uint8) % 2
        if h.size == 0:
            h = np.zeros((0, g.shape[1]), dtype=np.uint8)
        h = np.atleast_2d(h)
        object.__setattr__(self, "generator", g)
        object.__setattr__(self, "parity_check", h)
        if g.shape[1] != h.shape[1]:
            raise ValueError("generator and parity-check lengths differ")
        if gf2.rank(g) != g.shape[0]:
            raise ValueError("generator rows are not independent")
        if np.any((g.astype(np.int64) @ h.T.astype(np.int64)) % 2):
            raise ValueError("G H^T != 0")
        if g.shape[0] + gf2.rank(h) != g.shape[1]:
            raise ValueError("parity-check rank does not match the code dimension")
        table: Dict[int, int] = {}
        ambiguous = set()
        for p in range(self.n):
            syn = _pack(h[:, p])
            if syn == 0 or syn in table:
                ambiguous.add(syn)
            table.setdefault(syn, p)
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "_ambiguous", frozenset(ambiguous))

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def min_distance(self) -> int:
        if self.known_distance is not None:
            return self.known_distance
        return self._computed_distance

    @property
    def _computed_distance(self) -> int:
        cached = self.__dict__.get("_dist")
        if cached is None:
            weights = [sum(c) for c in self.codewords() if any(c)]
            cached = min(weights) if weights else self.n
            self.__dict__["_dist"] = cached
        return cached

    def __repr__(self) -> str:
        return f"BinaryCode({self.name!r}, [{self.n},{self.k},{self.min_distance}])"

    def syndrome(self, v: Sequence[int]) -> int:
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (self.n,):
            raise ValueError(f"expected a length-{self.n} vector")
        return _pack((self.parity_check.astype(np.int64) @ v) % 2)

    def is_codeword(self, v: Sequence[int]) -> bool:
        return self.syndrome(v) == 0

    def encode(self, message: Sequence[int]) -> BitVector:
        x = np.asarray(message, dtype=np.int64)
        return tuple(int(b) for b in (x @ self.generator.astype(np.int64)) % 2)

    def message_of(self, codeword: Sequence[int]) -> BitVector:
        """Inverse of ``encode`` on codewords."""
        k, n = self.k, self.n
        aug = np.hstack([self.generator, np.eye(k, dtype=np.uint8)])
        red, pivots = gf2.rref(aug)
        info = [p for p in pivots if p < n]
        transform = red[:, n:].astype(np.int64)
        c = np.asarray(codeword, dtype=np.int64)
        x = (c[info] @ transform) % 2
        out = tuple(int(b) for b in x)
        if self.encode(out) != tuple(int(b) for b in c):
            raise DecodeError("vector is not a codeword")
        return out

    def codewords(self) -> Iterator[BitVector]:
        """All codewords; row ``i`` of the enumeration uses message bits of ``i``."""
        if self.k > ENUM_MAX_K or self.n > ENUM_MAX_N:
            raise EnumerationBudgetError(f"2^{self.k} codewords of length {self.n} exceed the budget")
        g = self.generator.astype(np.int64)
        chunk = 1 << 14
        shifts = np.arange(self.k)
        for start in range(0, 1 << self.k, chunk):
            idx = np.arange(start, min(start + chunk, 1 << self.k))
            msgs = (idx[:, None] >> shifts) & 1
            for row in (msgs @ g) % 2:
                yield tuple(int(b) for b in row)

    def flip_position(self, v: Sequence[int]) -> int:
        syn = self.syndrome(v)
        if syn == 0:
            raise NoMessageError("vector is a codeword; it carries no flip position")
        if syn in self._ambiguous:
            raise AmbiguousDecodeError("several flips reach a codeword; minimum distance < 3")
        try:
            return self._table[syn]
        except KeyError:
            raise InvalidStateError("no single flip reaches a codeword") from None

    def correct(self, v: Sequence[int]) -> BitVector:
        """Nearest codeword when ``v`` is within distance one of the code."""
        v = tuple(int(b) & 1 for b in v)
        if self.syndrome(v) == 0:
            return v
        p = self.flip_position(v)
        return v[:p] + (1 - v[p],) + v[p + 1:]

    def generator_rows(self) -> List[str]:
        return ["".join(map(str, row)) for row in self.generator]

    def parity_rows(self) -> List[str]:
        return ["".join(map(str, row)) for row in self.parity_check]


def flip_position_decode(code: BinaryCode, v: Sequence[int]) -> int:
    return code.flip_position(v)


def from_generator(name: str, generator, distance: Optional[int] = None) -> BinaryCode:
    g = gf2.as_matrix(generator)
    return BinaryCode(name, g, gf2.nullspace(g), distance)


def from_parity_check(name: str, parity_check, distance: Optional[int] = None) -> BinaryCode:
    h = gf2.as_matrix(parity_check)
    return BinaryCode(name, gf2.nullspace(h), h, distance)


def monomials(r: int, m: int) -> List[Tuple[int, ...]]:
    """Monomials of degree <= r in x_1..x_m, by degree then lexicographically."""
    return [mono for d in range(r + 1) for mono in combinations(range(1, m + 1), d)]


def reed_muller(r: int, m: int) -> BinaryCode:
    if not (isinstance(m, int) and 1 <= m <= 6 and isinstance(r, int) and 0 <= r <= m):
        raise ValueError(f"need 0 <= r <= m <= 6, got r={r}, m={m}")
    pts = [coords_of(p, m) for p in range(1 << m)]
    rows = [[int(all(c[j - 1] for j in mono)) for c in pts] for mono in monomials(r, m)]
    assert len(rows) == sum(comb(m, i) for i in range(r + 1))
    return from_generator(f"R({r},{m})", rows, distance=1 << (m - r))


def hamming_code(r: int) -> BinaryCode:
    """[2^r - 1, 2^r - 1 - r, 3] Hamming code; column j of H is the PG(r-1, 2) point j."""
    if not isinstance(r, int) or r < 2:
        raise ValueError("Hamming redundancy must be >= 2")
    n = (1 << r) - 1
    h = [[coords_of(j + 1, r)[i] for j in range(n)] for i in range(r)]
    return from_parity_check(f"Hamming[{n},{n - r}]", h, distance=3)


def repetition_code(m: int) -> BinaryCode:
    if not isinstance(m, int) or m < 1:
        raise ValueError("repetition length must be >= 1")
    return from_generator(f"Rep[{m}]", [[1] * m], distance=m)


def majority(bits: Sequence[int]) -> int:
    """Majority vote; decodes the repetition code up to floor((m-1)/2) errors."""
    ones = sum(int(b) & 1 for b in bits)
    if 2 * ones == len(bits):
        raise DecodeError("tie in majority vote")
    return int(2 * ones > len(bits))


def min_weight_codewords(code: BinaryCode) -> List[BitVector]:
    words = [c for c in code.codewords() if any(c)]
    if not words:
        return []
    d = min(sum(c) for c in words)
    return sorted(c for c in words if sum(c) == d)


def nearest_codewords(code: BinaryCode, v: Sequence[int]) -> List[BitVector]:
    """Brute-force nearest codewords; a test oracle for the table decoders."""
    v = tuple(int(b) & 1 for b in v)
    best, out = None, []
    for c in code.codewords():
        d = sum(a != b for a, b in zip(c, v))
        if best is None or d < best:
            best, out = d, [c]
        elif d == best:
            out.append(c)
    return out
