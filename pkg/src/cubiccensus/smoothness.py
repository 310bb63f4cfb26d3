"""Deciding smoothness of cubic surfaces over F_q.

Three independent oracles:

* point search: look for P over F_{q^k}, k <= 4, with F(P) = 0 and
  grad F(P) = 0, one Frobenius orbit representative at a time;
* sieve: mark every class of P^19(F_q) lying in the kernel of some orbit
  representative's condition matrix;
* Macaulay resultant of the four partials (p != 3).

Why k <= 4 suffices.  The singular locus Z of a cubic surface is stable
under Frobenius and is one of: finitely many points (at most 4), a line, a
conic, a conic plus a point, two or three lines, a plane, or all of P^3.
A Frobenius-stable line or plane is defined over F_q and so has rational
points; a stable conic spans a stable plane and a smooth conic over a
finite field has a rational point; two swapped lines meet in a rational
point; three concurrent or coplanar lines have a rational vertex or span a
rational plane; a conic plus a point has the point rational.  So either Z
has a point over F_q, or Z is finite with at most 4 geometric points, each
of degree at most 4.

Point search for large fields.  Enumerating P^3(F_{q^k}) is only feasible
for small q^k.  For the remaining degrees the search works from the ideal
I = (F, F_x, F_y, F_z, F_w): row reduction of its degree-D Macaulay matrix,
with the monomials in two chosen variables placed last, yields a basis of
I_D intersected with k[x_i, x_j].  Every such binary form vanishes on the
projection of every point of Z, so the candidates built from their common
roots contain all of Z; each candidate is then checked directly.  When I_D
is all of degree D the locus is empty and the form is smooth.
"""

from __future__ import annotations

import itertools
import mmap
import os
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from . import _kernels, gf
from .cubic import CubicForm, condition_stack, derivative_table
from .gf import FieldDescriptor
from .linalg import inverse_table, matmul_mod_p, rank_batch_mod_p, rref
from .monomials import exponents, index_map, product_table
from .projgeom import (
    ProjPoint,
    _lead_offsets,
    class_rank,
    enumerate_array,
    normalize_rows,
    orbit_reps_array,
    proj_count,
)

VERDICTS = ("smooth", "singular", "inconclusive")
MAX_DEGREE = 4
ENUM_BUDGET = 5000  # enumerate P^3(F_{q^k}) when it has at most this many points
D_START = 5
D_CAP = 12
DEFAULT_MEMORY_BUDGET = 3 * 2**30
MEMORY_ENV = "CUBICCENSUS_MEMORY_BUDGET"


class ResourceBudgetError(MemoryError):
    pass


def memory_budget(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get(MEMORY_ENV)
    return int(env) if env else DEFAULT_MEMORY_BUDGET


@dataclass(frozen=True)
class SingularityReport:
    verdict: str
    oracle: str
    witness: ProjPoint | None = None
    degree: int | None = None
    form: CubicForm | None = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "inconclusive" and self.oracle != "resultant":
            raise ValueError("only the resultant oracle may be inconclusive")
        if self.witness is not None:
            if self.form is None:
                raise ValueError("a witness needs the form to be checked against")
            if not is_singular_at(self.form, self.witness):
                raise AssertionError(f"witness {self.witness} is not a singular point of {self.form}")

    @property
    def smooth(self) -> bool | None:
        return None if self.verdict == "inconclusive" else self.verdict == "smooth"

    def describe(self) -> str:
        s = f"verdict: {self.verdict}\noracle: {self.oracle}"
        if self.witness is not None:
            s += f"\nwitness: {self.witness} over {self.witness.field!r} (degree {self.degree})"
        return s


def is_singular_at(F: CubicForm, P: ProjPoint) -> bool:
    K = P.field
    c = gf.embed_values(F.vector(), F.field, K)
    m = condition_stack(K, P.array()[None])[0]
    return not np.any(K.sum(K.mul(m, c[None, :]), axis=-1))


# -- batched coefficient views --------------------------------------------


def gradient_batch(field: FieldDescriptor, coeffs: np.ndarray) -> np.ndarray:
    """(B, 4, 10) partial derivative coefficients."""
    target, mult = derivative_table()
    out = np.zeros(coeffs.shape[:-1] + (4, 10), dtype=np.int64)
    for i in range(4):
        has = np.nonzero(target[i] >= 0)[0]
        out[..., i, target[i, has]] = field.mul(coeffs[..., has], mult[i, has] % field.p)
    return out


def macaulay_batch(field: FieldDescriptor, coeffs: np.ndarray, D: int, with_form: bool) -> np.ndarray:
    """(B, rows, #deg-D monomials) Macaulay matrices of (F,) F_x, F_y, F_z, F_w."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    grads = gradient_batch(field, coeffs)
    gens = [(coeffs, 3)] if with_form else []
    gens += [(grads[..., i, :], 2) for i in range(4)]
    nrows = sum(len(exponents(D - d)) for _, d in gens)
    ncols = len(exponents(D))
    out = np.zeros(coeffs.shape[:-1] + (nrows, ncols), dtype=np.int64)
    r = 0
    for g, d in gens:
        tab = product_table(D - d, d)
        for u in range(tab.shape[0]):
            out[..., r, tab[u]] = g
            r += 1
    return out


# -- point search ----------------------------------------------------------


@dataclass
class _DegreeTables:
    k: int
    ext: FieldDescriptor
    reps: np.ndarray  # (M, 4) over ext
    flat: np.ndarray | None  # (M, 5k, 20) over the base field
    cond: np.ndarray  # (M, 5, 20) over ext


def flatten_conditions(base: FieldDescriptor, ext: FieldDescriptor, cond: np.ndarray) -> np.ndarray:
    """Rewrite (..., 5, 20) conditions over ext as (..., 5m, 20) over base, m = [ext:base]."""
    m = ext.k // base.k
    if m == 1:
        return cond.copy()
    rel = gf.relative_coordinates(cond, ext, base)  # (..., 5, 20, m)
    rel = np.moveaxis(rel, -1, -2)  # (..., 5, m, 20)
    return rel.reshape(rel.shape[:-3] + (5 * m, 20))


@lru_cache(maxsize=16)
def _search_tables(field: FieldDescriptor) -> tuple[_DegreeTables, ...]:
    budget = max(ENUM_BUDGET, proj_count(3, field.q))
    out = []
    for k in range(1, MAX_DEGREE + 1):
        if proj_count(3, field.q**k) > budget:
            break
        ext = gf.extension(field, k)
        reps = orbit_reps_array(3, field, k)
        cond = condition_stack(ext, reps)
        flat = flatten_conditions(field, ext, cond) if field.k == 1 else None
        out.append(_DegreeTables(k, ext, reps, flat, cond))
    return tuple(out)


@lru_cache(maxsize=4)
def _gf2_masks(field: FieldDescriptor) -> tuple[np.ndarray, np.ndarray, list[tuple[int, int]]]:
    """Row-reduced condition rows as 20-bit masks, and (degree, rep index) per rep."""
    masks, starts, owners = [], [0], []
    for t in _search_tables(field):
        for i, rows in enumerate(t.flat):
            r, piv = rref(field, rows)
            for row in r[: len(piv)]:
                masks.append(int(np.dot(row, 1 << np.arange(20))))
            starts.append(len(masks))
            owners.append((t.k, i))
    return np.array(masks, dtype=np.uint32), np.array(starts, dtype=np.int64), owners


def forms_to_bits(coeffs: np.ndarray) -> np.ndarray:
    return (np.asarray(coeffs, dtype=np.int64) @ (1 << np.arange(20, dtype=np.int64))).astype(np.uint32)


def _first_hits_enumerated(field: FieldDescriptor, t: _DegreeTables, coeffs: np.ndarray) -> np.ndarray:
    """Index of the first singular rep of degree t.k for each form, or -1."""
    B = coeffs.shape[0]
    M = t.reps.shape[0]
    out = np.full(B, -1, dtype=np.int64)
    if B == 0 or M == 0:
        return out
    if field.k == 1:
        rows = t.flat.reshape(-1, 20).T
        chunk = max(1, int(2e7 // rows.shape[1]))
        for s in range(0, B, chunk):
            vals = matmul_mod_p(coeffs[s : s + chunk], rows, field.p)
            zero = ~np.any(vals.reshape(vals.shape[0], M, -1), axis=-1)
            hit = zero.any(axis=1)
            out[s : s + chunk] = np.where(hit, np.argmax(zero, axis=1), -1)
        return out
    ext = t.ext
    for b in range(B):
        c = gf.embed_values(coeffs[b], field, ext)
        vals = ext.sum(ext.mul(t.cond, c[None, None, :]), axis=-1)
        zero = ~np.any(vals, axis=-1)
        if zero.any():
            out[b] = int(np.argmax(zero))
    return out


@dataclass
class BatchVerdict:
    """Point-search output for a batch: witness degree 0 means smooth."""

    smooth: np.ndarray
    degree: np.ndarray
    witness: np.ndarray  # (B, 4) coordinates over F_{q^degree}


def pointsearch_batch(field: FieldDescriptor, coeffs) -> BatchVerdict:
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=np.int64))
    B = coeffs.shape[0]
    if B and not np.all(coeffs.any(axis=1)):
        raise ValueError("the zero form has no smoothness verdict")
    degree = np.zeros(B, dtype=np.int64)
    witness = np.zeros((B, 4), dtype=np.int64)
    tables = _search_tables(field)
    active = np.ones(B, dtype=bool)

    if field.q == 2:
        masks, starts, owners = _gf2_masks(field)
        hits = _kernels.gf2_first_hit(forms_to_bits(coeffs), masks, starts, active)
        for b in np.nonzero(hits >= 0)[0]:
            k, i = owners[hits[b]]
            degree[b] = k
            witness[b] = tables[k - 1].reps[i]
        active &= hits < 0
    else:
        for t in tables:
            idx = np.nonzero(active)[0]
            hits = _first_hits_enumerated(field, t, coeffs[idx])
            found = idx[hits >= 0]
            degree[found] = t.k
            witness[found] = t.reps[hits[hits >= 0]]
            active[found] = False

    done_degrees = len(tables)
    if done_degrees < MAX_DEGREE:
        idx = np.nonzero(active)[0]
        if idx.size and field.k == 1:
            full = _certified_smooth(field, coeffs[idx])
            active[idx[full]] = False
        for b in np.nonzero(active)[0]:
            found = _eliminate(field, coeffs[b], range(done_degrees + 1, MAX_DEGREE + 1))
            if found is not None:
                degree[b], witness[b] = found
    return BatchVerdict(degree == 0, degree, witness)


def _certified_smooth(field: FieldDescriptor, coeffs: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """True where the degree-5 part of the singular ideal is everything."""
    with_form = field.p == 3  # otherwise F lies in the ideal of its partials
    ncols = len(exponents(D_START))
    out = np.zeros(coeffs.shape[0], dtype=bool)
    for s in range(0, coeffs.shape[0], chunk):
        mats = macaulay_batch(field, coeffs[s : s + chunk], D_START, with_form)
        out[s : s + chunk] = rank_batch_mod_p(mats, field.p) == ncols
    return out


def _pure_columns(D: int, i: int, j: int) -> np.ndarray:
    idx = index_map(D)
    cols = []
    for a in range(D, -1, -1):
        e = [0, 0, 0, 0]
        e[i], e[j] = a, D - a
        cols.append(idx[tuple(e)])
    return np.array(cols, dtype=np.int64)


class _Elimination:
    """Binary forms in I_D restricted to pairs of variables, computed lazily."""

    def __init__(self, field: FieldDescriptor, coeffs: np.ndarray, D: int):
        self.field = field
        self.D = D
        self.mat = macaulay_batch(field, coeffs[None], D, True)[0]
        self.ncols = self.mat.shape[1]
        self._blocks: dict[tuple[int, int], np.ndarray] = {}
        self.full = False

    def block(self, i: int, j: int) -> np.ndarray:
        """Rows are binary forms sum_a c[a] x_i^(D-a) x_j^a in I_D."""
        key = (i, j)
        if key not in self._blocks:
            pure = _pure_columns(self.D, i, j)
            rest = np.setdiff1d(np.arange(self.ncols), pure)
            order = np.concatenate([rest, pure])
            r, piv = rref(self.field, self.mat, order)
            if len(piv) == self.ncols:
                self.full = True
            rows = [t for t, c in enumerate(piv) if c in set(pure.tolist())]
            self._blocks[key] = r[rows][:, pure] if rows else np.zeros((0, self.D + 1), dtype=np.int64)
        return self._blocks[key]


def _affine_roots(field: FieldDescriptor, ext: FieldDescriptor, forms: np.ndarray) -> np.ndarray:
    """t in ext with every form vanishing at (x_i, x_j) = (1, t)."""
    D = forms.shape[1] - 1
    t = np.arange(ext.q, dtype=np.int64)
    pw = [np.ones(ext.q, dtype=np.int64)]
    for _ in range(D):
        pw.append(np.asarray(ext.mul(pw[-1], t)))
    pw = np.stack(pw, axis=1)  # (Q, D+1), column a = t^a
    c = gf.embed_values(forms, field, ext)  # (r, D+1)
    vals = ext.sum(ext.mul(c[:, None, :], pw[None, :, :]), axis=-1)
    return t[~np.any(vals, axis=0)]


def _vanishes_at_infinity(forms: np.ndarray) -> bool:
    # (x_i, x_j) = (0, 1): only the x_j^D coefficient survives
    return not np.any(forms[:, -1])


def _eliminate(field: FieldDescriptor, coeffs: np.ndarray, degrees) -> tuple[int, np.ndarray] | None:
    """Lowest-degree, lowest-rank singular orbit representative over the given degrees."""
    degrees = list(degrees)
    for D in range(D_START, D_CAP + 1):
        el = _Elimination(field, coeffs, D)
        b01 = el.block(0, 1)
        if el.full:
            return None
        if b01.shape[0] == 0:
            continue
        result = _search_candidates(field, coeffs, el, b01, degrees)
        if result == "grow":
            continue
        return result
    raise RuntimeError("elimination did not stabilise; raise D_CAP")


def _search_candidates(field, coeffs, el: _Elimination, b01, degrees):
    for k in degrees:
        ext = gf.extension(field, k)
        cands = []
        r1 = _affine_roots(field, ext, b01)
        if r1.size:
            b02, b03 = el.block(0, 2), el.block(0, 3)
            if b02.shape[0] == 0 or b03.shape[0] == 0:
                return "grow"
            r2 = _affine_roots(field, ext, b02)
            r3 = _affine_roots(field, ext, b03)
            if r2.size and r3.size:
                g = np.stack(np.meshgrid(r1, r2, r3, indexing="ij"), axis=-1).reshape(-1, 3)
                cands.append(np.concatenate([np.ones((g.shape[0], 1), dtype=np.int64), g], axis=1))
        if _vanishes_at_infinity(b01):
            b12, b13 = el.block(1, 2), el.block(1, 3)
            if b12.shape[0] == 0 or b13.shape[0] == 0:
                return "grow"
            r2 = _affine_roots(field, ext, b12)
            r3 = _affine_roots(field, ext, b13)
            if r2.size and r3.size:
                g = np.stack(np.meshgrid(r2, r3, indexing="ij"), axis=-1).reshape(-1, 2)
                z = np.zeros((g.shape[0], 1), dtype=np.int64)
                cands.append(np.concatenate([z, z + 1, g], axis=1))
        # the rational line x0 = x1 = 0
        t = np.arange(ext.q, dtype=np.int64)[:, None]
        line = np.concatenate([np.zeros((ext.q, 2), dtype=np.int64), np.ones((ext.q, 1), dtype=np.int64), t], axis=1)
        cands.append(np.concatenate([line, [[0, 0, 0, 1]]]))
        pts = np.concatenate(cands)
        c = gf.embed_values(coeffs, field, ext)
        vals = ext.sum(ext.mul(condition_stack(ext, pts), c[None, None, :]), axis=-1)
        sing = pts[~np.any(vals, axis=-1)]
        if sing.shape[0]:
            return k, _min_orbit_rep(field, ext, sing)
    return None


def _min_orbit_rep(field: FieldDescriptor, ext: FieldDescriptor, pts: np.ndarray) -> np.ndarray:
    best, best_rank = None, None
    for p in pts:
        cur = p
        for _ in range(ext.k // field.k):
            r = int(class_rank(ext.q, cur))
            if best_rank is None or r < best_rank:
                best, best_rank = cur.copy(), r
            cur = np.asarray(ext.power(cur, field.q))
    return best


def is_smooth_pointsearch(F: CubicForm) -> SingularityReport:
    if F.is_zero:
        raise ValueError("the zero form has no smoothness verdict")
    res = pointsearch_batch(F.field, F.vector()[None])
    if res.smooth[0]:
        return SingularityReport("smooth", "pointsearch", form=F)
    k = int(res.degree[0])
    P = ProjPoint(gf.extension(F.field, k), tuple(res.witness[0]))
    return SingularityReport("singular", "pointsearch", P, k, form=F)


# -- Macaulay resultant ----------------------------------------------------


@lru_cache(maxsize=None)
def _macaulay_layout() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For each degree-5 monomial: (variable i, index of m / x_i^2 in degree 3); and the non-reduced set."""
    mons = exponents(5)
    cidx = index_map(3)
    var = np.zeros(len(mons), dtype=np.int64)
    mult = np.zeros(len(mons), dtype=np.int64)
    nonreduced = []
    for r, e in enumerate(mons):
        big = [i for i in range(4) if e[i] >= 2]
        i = big[0]
        rest = list(e)
        rest[i] -= 2
        var[r], mult[r] = i, cidx[tuple(rest)]
        if len(big) > 1:
            nonreduced.append(r)
    return var, mult, np.array(nonreduced, dtype=np.int64)


def resultant_matrices(field: FieldDescriptor, coeffs) -> tuple[np.ndarray, np.ndarray]:
    """(B, 56, 56) Macaulay matrices M of the partials and their (B, 24, 24) extraneous minors."""
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=np.int64))
    grads = gradient_batch(field, coeffs)
    var, mult, nonred = _macaulay_layout()
    tab = product_table(3, 2)
    M = np.zeros((coeffs.shape[0], 56, 56), dtype=np.int64)
    for r in range(56):
        M[:, r, tab[mult[r]]] = grads[:, var[r], :]
    sub = M[:, nonred][:, :, nonred]
    return M, sub


@lru_cache(maxsize=None)
def _variable_permutations() -> np.ndarray:
    """(24, 20) index maps: coeffs[:, perm] is F with its variables permuted.

    The extraneous minor depends on the variable order, the resultant does
    not, so an inconclusive form is retried under the other orders.
    """
    idx = index_map(3)
    mons = exponents(3)
    out = [[idx[tuple(e[s] for s in sigma)] for e in mons] for sigma in itertools.permutations(range(4))]
    return np.array(out, dtype=np.int64)


def _resultant_once(field: FieldDescriptor, coeffs: np.ndarray) -> np.ndarray:
    if field.k == 1:
        var, mult, nonred = _macaulay_layout()
        grads = gradient_batch(field, coeffs)
        return _kernels.resultant_verdicts(grads, var, mult, product_table(3, 2), nonred, field.p, inverse_table(field.p))
    M, sub = resultant_matrices(field, coeffs)
    full = np.array([len(rref(field, m)[1]) == 56 for m in M])
    den = np.array([len(rref(field, m)[1]) == sub.shape[1] for m in sub])
    return np.where(den, full.astype(np.int64), -1)


def resultant_batch(field: FieldDescriptor, coeffs, orders: int = 24) -> np.ndarray:
    """Per form: 1 smooth, 0 singular, -1 inconclusive under every tried variable order."""
    if field.p == 3:
        raise ValueError("the partials do not detect singularity in characteristic 3")
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=np.int64))
    out = np.full(coeffs.shape[0], -1, dtype=np.int64)
    perms = _variable_permutations()[:orders]
    chunk = 4096
    for s in range(0, coeffs.shape[0], chunk):
        block = coeffs[s : s + chunk]
        res = out[s : s + chunk]
        for perm in perms:
            todo = np.flatnonzero(res < 0)
            if not todo.size:
                break
            res[todo] = _resultant_once(field, block[todo][:, perm])
    return out


def macaulay_resultant_test(F: CubicForm) -> SingularityReport:
    if F.is_zero:
        raise ValueError("the zero form has no smoothness verdict")
    v = int(resultant_batch(F.field, F.vector()[None])[0])
    verdict = {1: "smooth", 0: "singular", -1: "inconclusive"}[v]
    return SingularityReport(verdict, "resultant")


# -- sieve -------------------------------------------------------------------


@dataclass
class SmoothnessBitmap:
    """marks[r] is True when class r of P^19(F_q) is singular."""

    q: int
    marks: np.ndarray

    def __post_init__(self):
        if self.marks.shape != (proj_count(19, self.q),):
            raise ValueError("bitmap length does not match P^19(F_q)")

    @property
    def total(self) -> int:
        return int(self.marks.shape[0])

    @property
    def marked_count(self) -> int:
        return int(np.count_nonzero(self.marks))

    @property
    def smooth_count(self) -> int:
        return self.total - self.marked_count

    def is_smooth_ranks(self, ranks) -> np.ndarray:
        return ~self.marks[np.asarray(ranks, dtype=np.int64)]

    def is_smooth(self, F: CubicForm) -> bool:
        if F.is_zero:
            raise ValueError("the zero form has no smoothness verdict")
        return bool(self.is_smooth_ranks(class_rank(self.q, F.normalized().vector())))

    def report(self, F: CubicForm) -> SingularityReport:
        return SingularityReport("smooth" if self.is_smooth(F) else "singular", "sieve")


def rank_weights(q: int, n: int = 20) -> tuple[np.ndarray, np.ndarray]:
    weights = np.array([q ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    return weights, _lead_offsets(n - 1, q)


def sieve_orbit_conditions(field: FieldDescriptor, chunk: int = 16384):
    """Yield flattened (M, 5k, 20) condition blocks for every orbit representative, k <= 4."""
    for k in range(1, MAX_DEGREE + 1):
        ext = gf.extension(field, k)
        reps = orbit_reps_array(3, field, k)
        for s in range(0, reps.shape[0], chunk):
            yield flatten_conditions(field, ext, condition_stack(ext, reps[s : s + chunk]))


def _shared_bool_array(n: int) -> np.ndarray:
    buf = mmap.mmap(-1, max(n, 1))
    return np.frombuffer(buf, dtype=np.bool_, count=n)


def sieve_singular(field: FieldDescriptor, budget: int | None = None, workers: int = 1) -> SmoothnessBitmap:
    if field.k != 1:
        raise ValueError("the sieve runs over prime fields")
    n = proj_count(19, field.q)
    if n > memory_budget(budget):
        raise ResourceBudgetError(f"bitmap of {n} bytes exceeds the memory budget")
    p = field.p
    inv = inverse_table(p)
    weights, offs = rank_weights(p)
    blocks = list(sieve_orbit_conditions(field))
    if workers <= 1:
        marks = np.zeros(n, dtype=np.bool_)
        for blk in blocks:
            _kernels.sieve_mark(blk, p, inv, weights, offs, marks)
    else:
        # one shared table; every worker only ever writes True, so order is irrelevant
        marks = _shared_bool_array(n)
        pieces = [blk[i :: workers] for blk in blocks for i in range(workers)]
        pids = []
        for w in range(workers):
            pid = os.fork()
            if pid == 0:  # pragma: no cover - child process
                try:
                    for blk in pieces[w::workers]:
                        _kernels.sieve_mark(blk, p, inv, weights, offs, marks)
                finally:
                    os._exit(0)
            pids.append(pid)
        for pid in pids:
            _, status = os.waitpid(pid, 0)
            if status != 0:
                raise RuntimeError("sieve worker failed")
        marks = np.array(marks)
    return SmoothnessBitmap(field.q, marks)


def sieve_verdicts(field: FieldDescriptor, coeffs) -> np.ndarray:
    """Kernel-membership verdicts without a bitmap: True where smooth.

    Equivalent to looking the classes up in the sieve bitmap, but feasible
    only when all orbit representatives can be listed (small q).
    """
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=np.int64))
    singular = np.zeros(coeffs.shape[0], dtype=bool)
    for blk in sieve_orbit_conditions(field):
        rows = blk.reshape(-1, 20).T
        chunk = max(1, int(2e7 // rows.shape[1]))
        for s in range(0, coeffs.shape[0], chunk):
            vals = matmul_mod_p(coeffs[s : s + chunk], rows, field.p)
            singular[s : s + chunk] |= (~np.any(vals.reshape(vals.shape[0], blk.shape[0], -1), axis=-1)).any(axis=1)
    return ~singular


def normalize_forms(field: FieldDescriptor, coeffs) -> np.ndarray:
    return normalize_rows(field, coeffs)


def all_classes(q: int) -> np.ndarray:
    return enumerate_array(19, q)
