"""Euclidean and projective geometries over GF(2).

Points of EG(m, 2) are the integers ``0 .. 2**m - 1``; the coordinate tuple of
a point is its binary expansion with coordinate 1 as the most significant
bit. PG(m, 2) points are the nonzero (m+1)-tuples, with canonical index
``int(tuple) - 1``. Vector addition of EG points is integer XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, List, Sequence, Tuple, Union

from . import gf2

MAX_DIM = 16
MAX_ENUM_DIM = 6


class GeometryError(ValueError):
    pass


def _check_dim(m: int, cap: int = MAX_DIM, low: int = 1) -> None:
    if not isinstance(m, int) or m < low or m > cap:
        raise GeometryError(f"dimension must be in [{low}, {cap}], got {m!r}")


def coords_of(index: int, width: int) -> Tuple[int, ...]:
    return tuple((index >> (width - 1 - j)) & 1 for j in range(width))


def index_of(coords: Sequence[int]) -> int:
    out = 0
    for c in coords:
        out = (out << 1) | (int(c) & 1)
    return out


@dataclass(frozen=True, order=True)
class GeometryPoint:
    index: int
    coords: Tuple[int, ...]
    projective: bool = False

    @property
    def m(self) -> int:
        return len(self.coords) - 1 if self.projective else len(self.coords)

    def __int__(self) -> int:
        return self.index


PointLike = Union[int, GeometryPoint]


@dataclass(frozen=True)
class Flat:
    """A ``dim``-flat of EG(m, 2): a coset of a ``dim``-dimensional subspace."""

    m: int
    dim: int
    points: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(self.points)))
        if len(self.points) != 1 << self.dim:
            raise GeometryError("a flat of dimension %d has %d points" % (self.dim, 1 << self.dim))

    def __contains__(self, p) -> bool:
        return int(p) in self.pointset

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def pointset(self) -> frozenset:
        return frozenset(self.points)

    @property
    def base(self) -> int:
        return self.points[0]

    @cached_property
    def directions(self) -> List[int]:
        """Echelon basis of the direction space."""
        return gf2.reduce_basis(p ^ self.base for p in self.points)

    @cached_property
    def mask(self) -> int:
        out = 0
        for p in self.points:
            out |= 1 << p
        return out

    def incidence(self) -> Tuple[int, ...]:
        return tuple(1 if p in self.pointset else 0 for p in range(1 << self.m))

    def incidence_string(self) -> str:
        return "".join(map(str, self.incidence()))

    def is_affinely_closed(self) -> bool:
        pts = self.pointset
        return all(a ^ b ^ c in pts for a, b, c in combinations(self.points, 3))

    def hyperplanes(self) -> List["Flat"]:
        """All (dim-1)-flats contained in this flat, in canonical order."""
        if self.dim == 0:
            return []
        basis = self.directions
        k = len(basis)
        out = []
        seen = set()
        for a in range(1, 1 << k):
            for c in (0, 1):
                pts = []
                for coeffs in range(1 << k):
                    if gf2.popcount(a & coeffs) % 2 == c:
                        p = self.base
                        for j in range(k):
                            if coeffs >> j & 1:
                                p ^= basis[j]
                        pts.append(p)
                key = frozenset(pts)
                if key not in seen:
                    seen.add(key)
                    out.append(Flat(self.m, self.dim - 1, pts))
        out.sort(key=lambda f: f.points)
        return out

    def to_json(self) -> List[int]:
        return list(self.points)


def eg_points(m: int) -> List[GeometryPoint]:
    _check_dim(m)
    return [GeometryPoint(i, coords_of(i, m)) for i in range(1 << m)]


def pg_points(m: int) -> List[GeometryPoint]:
    _check_dim(m)
    return [GeometryPoint(i - 1, coords_of(i, m + 1), projective=True) for i in range(1, 1 << (m + 1))]


def pg_counts(m: int) -> Tuple[int, int]:
    _check_dim(m)
    points = (1 << (m + 1)) - 1
    return points, points * ((1 << m) - 1) // 3


def pg_lines(m: int) -> List[Tuple[int, int, int]]:
    """Lines of PG(m, 2) as sorted triples of canonical point indices."""
    _check_dim(m, MAX_ENUM_DIM)
    n = 1 << (m + 1)
    lines = set()
    for a in range(1, n):
        for b in range(a + 1, n):
            lines.add(tuple(sorted((a - 1, b - 1, (a ^ b) - 1))))
    return sorted(lines)


def num_mu_flats(m: int, mu: int) -> int:
    _check_dim(m, low=0)
    if not 0 <= mu <= m:
        raise GeometryError(f"flat dimension {mu} outside [0, {m}]")
    num = 1 << (m - mu)
    den = 1
    for i in range(1, mu + 1):
        num *= (1 << (m - i + 1)) - 1
        den *= (1 << (mu - i + 1)) - 1
    return num // den


def _rref_subspaces(m: int, mu: int) -> Iterable[List[int]]:
    """Yield each mu-dim subspace of F_2^m once, via its reduced echelon basis.

    Columns run from coordinate 1 (most significant bit) to coordinate m.
    """
    for pivots in combinations(range(m), mu):
        # free slots: (row, col) with col right of the row's pivot and not a pivot
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivots]
        for fill in product((0, 1), repeat=len(slots)):
            rows = [1 << (m - 1 - pc) for pc in pivots]
            for (r, c), bit in zip(slots, fill):
                if bit:
                    rows[r] |= 1 << (m - 1 - c)
            yield rows


def enumerate_flats(m: int, mu: int) -> List[Flat]:
    _check_dim(m, MAX_ENUM_DIM, low=0)
    if not 0 <= mu <= m:
        raise GeometryError(f"flat dimension {mu} outside [0, {m}]")
    out = []
    seen = set()
    for basis in _rref_subspaces(m, mu):
        sub = gf2.span(basis)
        for p in range(1 << m):
            key = frozenset(p ^ s for s in sub)
            if key in seen:
                continue
            seen.add(key)
            out.append(Flat(m, mu, key))
    out.sort(key=lambda f: f.points)
    return out


def _resolve_points(points: Iterable[PointLike], m: int | None) -> Tuple[List[int], int]:
    pts = list(points)
    if not pts:
        raise GeometryError("empty point set")
    dims = {p.m for p in pts if isinstance(p, GeometryPoint)}
    if any(isinstance(p, GeometryPoint) and p.projective for p in pts):
        raise GeometryError("projective points have no affine span")
    if m is not None:
        dims.add(m)
    if len(dims) > 1:
        raise GeometryError("points come from different geometries")
    if not dims:
        raise GeometryError("dimension unknown; pass m or GeometryPoint objects")
    m = dims.pop()
    ints = sorted({int(p) for p in pts})
    if ints[0] < 0 or ints[-1] >= 1 << m:
        raise GeometryError("point index outside EG(%d, 2)" % m)
    return ints, m


def affine_span(points: Iterable[PointLike], m: int | None = None) -> Flat:
    ints, m = _resolve_points(points, m)
    a0 = ints[0]
    basis = gf2.reduce_basis(p ^ a0 for p in ints)
    return Flat(m, len(basis), [a0 ^ s for s in gf2.span(basis)])


def hyperplane_partition(m: int, seed: Iterable[PointLike] = ()) -> Tuple[Flat, Flat]:
    """Split EG(m, 2) into two parallel hyperplanes, the first containing ``seed``.

    The hyperplane is ``{x : a.x = c}`` for the smallest nonzero ``a`` that is
    constant on the seed.
    """
    _check_dim(m)
    if m < 2:
        raise GeometryError("hyperplane partition needs m >= 2")
    seed_pts = sorted({int(p) for p in seed})
    if len(seed_pts) > 4:
        raise GeometryError("seed set may contain at most 4 points")
    if seed_pts:
        _resolve_points(seed_pts, m)
    for a in range(1, 1 << m):
        values = {gf2.popcount(a & p) % 2 for p in seed_pts}
        if len(values) <= 1:
            c = values.pop() if values else 0
            first = [p for p in range(1 << m) if gf2.popcount(a & p) % 2 == c]
            second = [p for p in range(1 << m) if gf2.popcount(a & p) % 2 != c]
            return Flat(m, m - 1, first), Flat(m, m - 1, second)
    raise GeometryError("seed points span EG(%d, 2); no hyperplane contains them" % m)
