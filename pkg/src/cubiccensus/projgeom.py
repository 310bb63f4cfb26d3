"""Projective points, lines of P^3 and Frobenius orbits over finite fields.

Enumeration order for P^n(F_Q) (also used to index classes of P^19):
points are normalised so the first nonzero coordinate is 1; they are sorted
by the position of that leading 1, then by the remaining coordinates read
as a base-Q number, most significant first.  The rank of a point is its
position in this order.

Lines of P^3 are 2x4 matrices in reduced row-echelon form, listed by pivot
pair (0,1), (0,2), (0,3), (1,2), (1,3), (2,3) and then by the free entries
in row-major order, each running over 0..Q-1 with the last entry fastest.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from . import gf
from .gf import FieldDescriptor
from .linalg import rref
from .monomials import CUBIC_VARS, monomial_index


def proj_count(n: int, Q: int) -> int:
    """#P^n(F_Q)."""
    return (Q ** (n + 1) - 1) // (Q - 1)


def grassmannian_count(Q: int) -> int:
    """#Gr(2,4)(F_Q), the number of lines in P^3(F_Q)."""
    return (Q * Q + 1) * (Q * Q + Q + 1)


def _lead_offsets(n: int, Q: int) -> np.ndarray:
    sizes = [Q ** (n - j) for j in range(n + 1)]
    return np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)


def normalize_rows(field: FieldDescriptor, vecs) -> np.ndarray:
    """Scale each row so its first nonzero entry is 1; zero rows raise."""
    v = np.asarray(vecs, dtype=np.int64)
    nz = v != 0
    if not np.all(nz.any(axis=-1)):
        raise ValueError("zero vector has no projective class")
    lead = np.argmax(nz, axis=-1)
    c = np.take_along_axis(v, lead[..., None], axis=-1)
    return np.asarray(field.mul(v, field.inv(c)))


def class_rank(Q: int, vecs) -> np.ndarray:
    """Ranks of normalised vectors in the enumeration order of P^n(F_Q)."""
    v = np.asarray(vecs, dtype=np.int64)
    n = v.shape[-1] - 1
    lead = np.argmax(v != 0, axis=-1)
    offs = _lead_offsets(n, Q)
    weights = np.array([Q ** (n - j) for j in range(n + 1)], dtype=np.int64)
    value = v @ weights
    return offs[lead] + value - weights[lead]


def class_unrank(Q: int, n: int, ranks) -> np.ndarray:
    r = np.asarray(ranks, dtype=np.int64)
    offs = _lead_offsets(n, Q)
    if np.any(r < 0) or np.any(r >= offs[-1]):
        raise IndexError("rank out of range")
    lead = np.searchsorted(offs, r, side="right") - 1
    tail = r - offs[lead]
    out = np.zeros(r.shape + (n + 1,), dtype=np.int64)
    for j in range(n, -1, -1):
        d = tail % Q
        tail //= Q
        out[..., j] = np.where(j > lead, d, np.where(j == lead, 1, 0))
    return out


def enumerate_array(n: int, Q: int) -> np.ndarray:
    """All points of P^n(F_Q) in rank order, as an (N, n+1) index array."""
    blocks = []
    for lead in range(n + 1):
        m = n - lead
        tail = np.indices((Q,) * m).reshape(m, -1).T if m else np.zeros((1, 0), dtype=np.int64)
        blk = np.zeros((tail.shape[0], n + 1), dtype=np.int64)
        blk[:, lead] = 1
        blk[:, lead + 1 :] = tail
        blocks.append(blk)
    return np.concatenate(blocks)


@dataclass(frozen=True)
class ProjPoint:
    field: FieldDescriptor
    coords: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coords)
        if not any(c):
            raise ValueError("zero vector has no projective class")
        norm = tuple(int(x) for x in normalize_rows(self.field, np.array(c)))
        object.__setattr__(self, "coords", norm)

    @property
    def rank(self) -> int:
        return int(class_rank(self.field.q, np.array(self.coords)))

    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def conjugate(self, base_order: int) -> ProjPoint:
        return ProjPoint(self.field, tuple(self.field.power(np.array(self.coords), base_order)))

    def __str__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


class ProjectiveSpace(Sequence):
    """Lazy, indexable P^n(F_Q) in rank order."""

    def __init__(self, n: int, field: FieldDescriptor):
        if n < 1:
            raise ValueError("dimension must be at least 1")
        self.n = n
        self.field = field
        self._len = proj_count(n, field.q)

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(self._len))]
        if i < 0:
            i += self._len
        return ProjPoint(self.field, tuple(class_unrank(self.field.q, self.n, i)))

    def index(self, point: ProjPoint, *args) -> int:
        return point.rank

    def array(self) -> np.ndarray:
        return enumerate_array(self.n, self.field.q)


def enumerate_proj_points(n: int, field: FieldDescriptor) -> ProjectiveSpace:
    return ProjectiveSpace(n, field)


# -- lines ---------------------------------------------------------------

PIVOT_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def _free_positions(a: int, b: int) -> list[tuple[int, int]]:
    return [(0, j) for j in range(a + 1, 4) if j != b] + [(1, j) for j in range(b + 1, 4)]


def echelon_bases(Q: int) -> np.ndarray:
    """All lines of P^3(F_Q) as (N, 2, 4) echelon matrices, in canonical order."""
    out = []
    for a, b in PIVOT_PAIRS:
        free = _free_positions(a, b)
        for vals in itertools.product(range(Q), repeat=len(free)):
            m = np.zeros((2, 4), dtype=np.int64)
            m[0, a] = m[1, b] = 1
            for (i, j), v in zip(free, vals):
                m[i, j] = v
            out.append(m)
    return np.array(out)


def restriction_maps(field: FieldDescriptor, bases: np.ndarray) -> np.ndarray:
    """(N, 4, 20) maps taking cubic coefficients to (s^3, s^2 t, s t^2, t^3) on each line.

    The line is parametrised by s*row0 + t*row1.
    """

    u = bases[:, 0, :]
    v = bases[:, 1, :]
    add, mul = field.add, field.mul
    out = np.zeros((bases.shape[0], 4, 20), dtype=np.int64)
    for m, (i, j, k) in enumerate(CUBIC_VARS):
        a, b = u[:, i], v[:, i]
        c, d = u[:, j], v[:, j]
        e, f = u[:, k], v[:, k]
        ac, ad, bc, bd = mul(a, c), mul(a, d), mul(b, c), mul(b, d)
        out[:, 0, m] = mul(ac, e)
        out[:, 1, m] = add(add(mul(ac, f), mul(ad, e)), mul(bc, e))
        out[:, 2, m] = add(add(mul(ad, f), mul(bc, f)), mul(bd, e))
        out[:, 3, m] = mul(bd, f)
    return out


def _pivot_minor_ok(basis: np.ndarray, rmap: np.ndarray) -> bool:
    # columns x_a^3, x_a^2 x_b, x_a x_b^2, x_b^3 restrict to s^3, s^2t, st^2, t^3

    a = int(np.argmax(basis[0] != 0))
    b = int(np.argmax(basis[1] != 0))
    cols = []
    for ea in (3, 2, 1, 0):
        e = [0, 0, 0, 0]
        e[a], e[b] = ea, 3 - ea
        cols.append(monomial_index(tuple(e)))
    return bool(np.array_equal(rmap[:, cols], np.eye(4, dtype=np.int64)))


@dataclass(frozen=True, eq=False)
class Line:
    field: FieldDescriptor
    basis: tuple[tuple[int, ...], tuple[int, ...]]
    restriction_map: np.ndarray = dc_field(repr=False, compare=False)

    @classmethod
    def from_basis(cls, field: FieldDescriptor, rows) -> Line:
        m = np.asarray(rows, dtype=np.int64).reshape(2, 4)
        r, piv = rref(field, m)
        if len(piv) != 2:
            raise ValueError("basis rows are linearly dependent")
        rmap = restriction_maps(field, r[None])[0]
        return cls._checked(field, r, rmap)

    @classmethod
    def _checked(cls, field: FieldDescriptor, basis: np.ndarray, rmap: np.ndarray) -> Line:
        if not _pivot_minor_ok(basis, rmap):
            raise AssertionError("restriction map does not have rank 4")
        rmap = rmap.copy()
        rmap.setflags(write=False)
        return cls(field, (tuple(int(x) for x in basis[0]), tuple(int(x) for x in basis[1])), rmap)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Line) and self.field == other.field and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.field, self.basis))

    def array(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64)

    def plucker(self) -> tuple[int, ...]:
        """Plucker coordinates p_ij = u_i v_j - u_j v_i, i < j (display only)."""
        u, v = self.basis
        f = self.field
        return tuple(
            f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i])) for i, j in itertools.combinations(range(4), 2)
        )

    def transform(self, g) -> Line:
        """Image of the line under the point map P -> g P."""
        f = self.field
        g = np.asarray(g, dtype=np.int64)
        rows = np.stack([f.sum(f.mul(g, np.array(r)[None, :]), axis=-1) for r in self.basis])
        return Line.from_basis(self.field, rows)

    def __str__(self) -> str:
        u, v = self.basis
        return "<" + " ".join(map(str, u)) + " | " + " ".join(map(str, v)) + ">"


@lru_cache(maxsize=None)
def _lines_cached(field: FieldDescriptor) -> tuple[Line, ...]:
    bases = echelon_bases(field.q)
    rmaps = restriction_maps(field, bases)
    return tuple(Line._checked(field, b, r) for b, r in zip(bases, rmaps))


def enumerate_lines(field: FieldDescriptor) -> list[Line]:
    return list(_lines_cached(field))


@lru_cache(maxsize=None)
def restriction_stack(field: FieldDescriptor) -> np.ndarray:
    """(N, 4, 20) restriction maps of all lines, read-only."""
    s = np.stack([ln.restriction_map for ln in _lines_cached(field)])
    s.setflags(write=False)
    return s


def line_lookup(field: FieldDescriptor) -> dict[tuple, int]:
    return {ln.basis: i for i, ln in enumerate(_lines_cached(field))}


def line_points_array(line: Line, field: FieldDescriptor | None = None) -> np.ndarray:
    """Normalised points of the line over ``field`` (default: the line's field)."""
    ext = field or line.field
    basis = gf.embed_values(line.array(), line.field, ext)
    u, v = basis
    params = np.concatenate([[[0, 1]], np.stack([np.ones(ext.q, dtype=np.int64), np.arange(ext.q)], axis=1)])
    pts = ext.add(ext.mul(params[:, :1], u[None]), ext.mul(params[:, 1:], v[None]))
    pts = normalize_rows(ext, pts)
    return pts[np.argsort(class_rank(ext.q, pts), kind="stable")]


def points_on_line(line: Line, field: FieldDescriptor | None = None) -> list[ProjPoint]:
    ext = field or line.field
    return [ProjPoint(ext, tuple(p)) for p in line_points_array(line, ext)]


# -- Frobenius orbits ----------------------------------------------------


@lru_cache(maxsize=32)
def _orbit_reps_cached(n: int, field: FieldDescriptor, k: int) -> np.ndarray:
    ext = gf.extension(field, k)
    pts = enumerate_array(n, ext.q)
    ranks = np.arange(pts.shape[0], dtype=np.int64)
    best = ranks.copy()
    exact = np.ones(pts.shape[0], dtype=bool)
    cur = pts
    for j in range(1, k):
        cur = np.asarray(ext.power(cur, field.q))
        r = class_rank(ext.q, cur)
        # degree divides j  <=>  Frob^j fixes the point
        if k % j == 0:
            exact &= r != ranks
        best = np.minimum(best, r)
    reps = pts[exact & (best == ranks)]
    reps.setflags(write=False)
    return reps


def orbit_reps_array(n: int, field: FieldDescriptor, k: int) -> np.ndarray:
    """Minimal-rank representatives of Frobenius orbits of exact degree k in P^n(F_{q^k})."""
    return _orbit_reps_cached(n, field, k)


def frobenius_orbit_reps(n: int, field: FieldDescriptor, max_degree: int = 4) -> list[tuple[ProjPoint, int]]:
    out = []
    for k in range(1, max_degree + 1):
        ext = gf.extension(field, k)
        out.extend((ProjPoint(ext, tuple(p)), k) for p in orbit_reps_array(n, field, k))
    return out


def orbit_of(point: ProjPoint, base_order: int) -> list[ProjPoint]:
    orbit = [point]
    nxt = point.conjugate(base_order)
    while nxt != point:
        orbit.append(nxt)
        nxt = nxt.conjugate(base_order)
    return orbit
