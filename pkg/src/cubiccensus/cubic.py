"""Cubic forms in x, y, z, w over a finite field.

A form is 20 coefficients (field element indices) in the monomial order of
:mod:`cubiccensus.monomials`.  Partials are formal, with the integer
exponent reduced mod p, so d/dx x^3 = 3x^2 vanishes in characteristic 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf
from .gf import FieldDescriptor, FieldElement
from .monomials import CUBIC_VARS, CUBICS, QUADRICS, exponent_array, format_monomial, index_map, monomial_index, product_table
from .projgeom import Line, ProjPoint

__all__ = [
    "CubicForm",
    "GradientView",
    "monomial_index",
    "evaluate",
    "partials",
    "restrict_to_line",
    "singular_condition_matrix",
    "condition_stack",
    "fermat",
]


def matvec(field: FieldDescriptor, g: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.asarray(field.sum(field.mul(g, v[None, :]), axis=-1))


def monomial_values(field: FieldDescriptor, pts, d: int) -> np.ndarray:
    """(N, #monomials of degree d) values of each monomial at each point."""
    pts = np.asarray(pts, dtype=np.int64)
    exps = exponent_array(d)
    pw = [np.ones(pts.shape, dtype=np.int64)]
    for _ in range(d):
        pw.append(np.asarray(field.mul(pw[-1], pts)))
    pw = np.stack(pw, axis=-1)  # (..., 4, d+1)
    out = None
    for i in range(4):
        vals = pw[..., i, :][..., exps[:, i]]
        out = vals if out is None else np.asarray(field.mul(out, vals))
    return out


@lru_cache(maxsize=None)
def derivative_table() -> tuple[np.ndarray, np.ndarray]:
    """For each variable i and cubic monomial m: (quadric index of m/x_i, exponent e_i).

    Index -1 marks monomials not divisible by x_i.
    """
    qidx = index_map(2)
    target = np.full((4, 20), -1, dtype=np.int64)
    mult = np.zeros((4, 20), dtype=np.int64)
    for m, e in enumerate(CUBICS):
        for i in range(4):
            if e[i]:
                r = list(e)
                r[i] -= 1
                target[i, m] = qidx[tuple(r)]
                mult[i, m] = e[i]
    target.setflags(write=False)
    mult.setflags(write=False)
    return target, mult


def condition_stack(field: FieldDescriptor, pts) -> np.ndarray:
    """(N, 5, 20) singular-condition matrices at the given normalised points.

    Row 0 is F -> F(P); rows 1..4 are F -> dF/dx_i(P).  Entries lie in
    ``field``, the field of the points.
    """
    pts = np.asarray(pts, dtype=np.int64)
    cub = monomial_values(field, pts, 3)
    quad = monomial_values(field, pts, 2)
    target, mult = derivative_table()
    out = np.zeros(pts.shape[:-1] + (5, 20), dtype=np.int64)
    out[..., 0, :] = cub
    for i in range(4):
        has = target[i] >= 0
        vals = quad[..., np.where(has, target[i], 0)]
        scaled = np.asarray(field.mul(vals, mult[i] % field.p))
        out[..., 1 + i, :] = np.where(has, scaled, 0)
    return out


def singular_condition_matrix(P: ProjPoint) -> np.ndarray:
    """5 x 20 matrix M over P's field with M @ coeffs = (F(P), grad F(P))."""
    return condition_stack(P.field, P.array()[None])[0]


@dataclass(frozen=True)
class GradientView:
    field: FieldDescriptor
    quadrics: tuple[tuple[int, ...], ...]

    def evaluate(self, P: ProjPoint) -> tuple[FieldElement, ...]:
        vals = monomial_values(P.field, P.array()[None], 2)[0]
        out = []
        for qd in self.quadrics:
            c = gf.embed_values(np.array(qd), self.field, P.field)
            out.append(FieldElement(P.field, int(P.field.sum(P.field.mul(c, vals)))))
        return tuple(out)

    def __str__(self) -> str:
        return ", ".join(_poly_str(qd, QUADRICS) for qd in self.quadrics)


def _poly_str(coeffs, monos) -> str:
    terms = []
    for c, e in zip(coeffs, monos):
        if c:
            m = format_monomial(e)
            terms.append(m if c == 1 else f"{c}*{m}")
    return " + ".join(terms) or "0"


@dataclass(frozen=True)
class CubicForm:
    field: FieldDescriptor
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if len(c) != 20:
            raise ValueError(f"a cubic form has 20 coefficients, got {len(c)}")
        if any(not 0 <= x < self.field.q for x in c):
            raise ValueError("coefficient index out of range")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_terms(cls, field: FieldDescriptor, terms: dict) -> CubicForm:
        """Build from {exponent tuple: coefficient index}."""
        c = [0] * 20
        for e, v in terms.items():
            c[monomial_index(e)] = int(v)
        return cls(field, tuple(c))

    @classmethod
    def from_integers(cls, field: FieldDescriptor, ints) -> CubicForm:
        """Integers mapped into the prime subfield."""
        return cls(field, tuple(field.from_int(int(n)) for n in ints))

    def vector(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def normalized(self) -> CubicForm:
        if self.is_zero:
            return self
        v = self.vector()
        lead = int(v[np.nonzero(v)[0][0]])
        return self.scale(self.field.inv(lead))

    def scale(self, lam: int) -> CubicForm:
        return CubicForm(self.field, tuple(self.field.mul(self.vector(), int(lam))))

    def __add__(self, other: CubicForm) -> CubicForm:
        return CubicForm(self.field, tuple(self.field.add(self.vector(), other.vector())))

    def __sub__(self, other: CubicForm) -> CubicForm:
        return CubicForm(self.field, tuple(self.field.sub(self.vector(), other.vector())))

    def evaluate(self, P: ProjPoint) -> FieldElement:
        K = P.field
        c = gf.embed_values(self.vector(), self.field, K)
        vals = monomial_values(K, P.array()[None], 3)[0]
        return FieldElement(K, int(K.sum(K.mul(c, vals))))

    def partials(self) -> GradientView:
        target, mult = derivative_table()
        f = self.field
        quads = []
        for i in range(4):
            q = np.zeros(10, dtype=np.int64)
            for m in range(20):
                if target[i, m] >= 0 and self.coeffs[m]:
                    q[target[i, m]] = f.add(int(q[target[i, m]]), f.mul(self.coeffs[m], int(mult[i, m]) % f.p))
            quads.append(tuple(int(x) for x in q))
        return GradientView(f, tuple(quads))

    def restrict_to_line(self, line: Line) -> tuple[int, ...]:
        if line.field != self.field:
            raise ValueError("form and line over different fields")
        r = line.restriction_map
        f = self.field
        return tuple(int(x) for x in f.sum(f.mul(r, self.vector()[None, :]), axis=-1))

    def contains(self, line: Line) -> bool:
        return not any(self.restrict_to_line(line))

    def compose(self, g) -> CubicForm:
        """The form x -> F(g x) for a 4x4 matrix g over the same field."""
        f = self.field
        g = np.asarray(g, dtype=np.int64)
        t11 = product_table(1, 1)
        t21 = product_table(2, 1)
        out = np.zeros(20, dtype=np.int64)
        for m, (i, j, k) in enumerate(CUBIC_VARS):
            c = self.coeffs[m]
            if not c:
                continue
            quad = np.zeros(10, dtype=np.int64)
            prod = np.asarray(f.mul(g[i][:, None], g[j][None, :]))
            for a in range(4):
                for b in range(4):
                    quad[t11[a, b]] = f.add(int(quad[t11[a, b]]), int(prod[a, b]))
            cub = np.zeros(20, dtype=np.int64)
            prod = np.asarray(f.mul(quad[:, None], g[k][None, :]))
            for a in range(10):
                for b in range(4):
                    cub[t21[a, b]] = f.add(int(cub[t21[a, b]]), int(prod[a, b]))
            out = np.asarray(f.add(out, f.mul(cub, c)))
        return CubicForm(f, tuple(out))

    def __str__(self) -> str:
        return _poly_str(self.coeffs, CUBICS)


def fermat(field: FieldDescriptor) -> CubicForm:
    return CubicForm.from_terms(field, {(3, 0, 0, 0): 1, (0, 3, 0, 0): 1, (0, 0, 3, 0): 1, (0, 0, 0, 3): 1})


def evaluate(F: CubicForm, P: ProjPoint) -> FieldElement:
    return F.evaluate(P)


def partials(F: CubicForm) -> GradientView:
    return F.partials()


def restrict_to_line(F: CubicForm, L: Line) -> tuple[int, ...]:
    return F.restrict_to_line(L)


def parse_form(field: FieldDescriptor, text: str) -> CubicForm:
    """'fermat' or 20 comma-separated coefficient indices."""
    text = text.strip()
    if text.lower() == "fermat":
        return fermat(field)
    parts = [s for s in text.replace(" ", "").split(",") if s]
    if len(parts) != 20:
        raise ValueError(f"expected 20 comma-separated coefficients, got {len(parts)}")
    return CubicForm(field, tuple(int(s) for s in parts))
