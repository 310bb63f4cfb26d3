"""Bookkeeping for the Vassiliev spectral sequence of the line-incidence discriminant.

The discriminant Sigma_l inside the 16-dimensional space of cubics that
vanish on a fixed line l is resolved by strata indexed by the shape of the
singular locus K.  A stratum i contributes its Borel-Moore homology,
shifted by the simplex dimension n-1 and by the complex dimension of the
affine space L(K) of forms singular along K (Thom isomorphism), to column
p = 14 - dim L(K).  Alexander duality then turns the reduced cohomology of
the complement X_l into H_BM of Sigma_l: H~^i(X_l) = H_BM_{31-i}(Sigma_l).
The sequence degenerates at E^1, so Betti numbers are read off diagonals.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .lefschetz import PoincarePolynomial

TOP_COLUMN = 14  # deg(i) = 14 - dim L(K)
DUALITY_DEGREE = 31  # 2 * 16 - 1
STEIN_LOW = 15  # X_l is a 16-dimensional Stein manifold
STEIN_HIGH = 31


@dataclass(frozen=True)
class StratumDatum:
    label: str
    dimA: int
    dimL: int
    n: int
    betti: tuple[tuple[int, int], ...]  # (degree a, rank b) of H^a(A_i; +-Q)
    source: str = ""

    def __post_init__(self):
        if self.n not in (1, 2, 3, 4):
            raise ValueError(f"{self.label}: n must be 1..4")
        if self.dimA < 0 or self.dimL < 0:
            raise ValueError(f"{self.label}: negative dimension")
        for a, b in self.betti:
            if b <= 0 or a < 0 or a > 2 * self.dimA:
                raise ValueError(f"{self.label}: bad Betti entry ({a}, {b})")

    @property
    def column(self) -> int:
        return TOP_COLUMN - self.dimL

    def cells(self) -> dict[tuple[int, int], int]:
        """E^1 cells (p, q) -> rank contributed by this stratum."""
        p = self.column
        out: dict[tuple[int, int], int] = {}
        for a, b in self.betti:
            total = (2 * self.dimA + self.n - 1 - a) + 2 * self.dimL
            out[(p, total - p)] = out.get((p, total - p), 0) + b
        return out


# Dimensions are complex dimensions of the configuration space A_i and of
# L(K).  Betti data: Ia, Ib have A = P^1; IIa, IId carry the sign system on
# unordered pairs (rank 1 in degree 2 only); IIb is P^1 x P^1; IVa, IVc
# have rank 1 in degrees 2 and 4; VIIa rank 1 in degree 4.  Subtypes not
# listed have vanishing cohomology with sign coefficients.
_BUILTIN = (
    StratumDatum("Ia", 1, 14, 1, ((0, 1), (2, 1)), "point on l; A = P^1"),
    StratumDatum("Ib", 3, 12, 1, ((0, 1), (2, 1)), "point off l; A fibres over P^1"),
    StratumDatum("IIa", 2, 12, 2, ((2, 1),), "two points on l; sign system"),
    StratumDatum("IIb", 4, 10, 2, ((0, 1), (2, 2), (4, 1)), "one point on l, one off; P^1 x P^1"),
    StratumDatum("IId", 6, 8, 2, ((2, 1),), "two points off l; sign system, degree 2 only"),
    StratumDatum("IVa", 5, 8, 3, ((2, 1), (4, 1)), "three points"),
    StratumDatum("IVc", 7, 6, 3, ((2, 1), (4, 1)), "three points"),
    StratumDatum("VIIa", 8, 4, 4, ((4, 1),), "four points"),
)


def builtin_strata() -> list[StratumDatum]:
    return list(_BUILTIN)


def lookup(label: str) -> StratumDatum | None:
    for s in _BUILTIN:
        if s.label == label:
            return s
    return None


@dataclass
class SSPage:
    cells: dict[tuple[int, int], int] = dc_field(default_factory=dict)
    name: str = "E1"

    def __post_init__(self):
        for k, v in self.cells.items():
            if v < 0:
                raise ValueError(f"negative rank at {k}")
        self.cells = {k: v for k, v in self.cells.items() if v}

    def add(self, cell: tuple[int, int], rank: int) -> None:
        if rank < 0:
            raise ValueError("negative rank")
        if rank:
            self.cells[cell] = self.cells.get(cell, 0) + rank

    def total_rank(self) -> int:
        return sum(self.cells.values())

    def column(self, p: int) -> dict[int, int]:
        return {q: r for (pp, q), r in self.cells.items() if pp == p}

    def diagonal(self, s: int) -> int:
        return sum(r for (p, q), r in self.cells.items() if p + q == s)

    def render(self) -> str:
        """Aligned table: rows q descending, columns p ascending."""
        if not self.cells:
            return f"{self.name}: (empty)"
        ps = sorted({p for p, _ in self.cells})
        qs = sorted({q for _, q in self.cells}, reverse=True)
        w = max(3, max(len(str(v)) for v in self.cells.values()) + 1)
        lines = [f"{self.name}", "q\\p " + "".join(f"{p:>{w}}" for p in ps)]
        for q in qs:
            row = "".join(f"{self.cells.get((p, q), '.'):>{w}}" for p in ps)
            lines.append(f"{q:>3} " + row)
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {f"{p},{q}": r for (p, q), r in sorted(self.cells.items())}


def assemble_E1(strata) -> SSPage:
    page = SSPage(name="E1")
    for s in strata:
        if not isinstance(s, StratumDatum):
            raise TypeError(f"not a stratum: {s!r}")
        for cell, r in s.cells().items():
            page.add(cell, r)
    return page


def top_column_empty(page: SSPage) -> bool:
    """Column 14 (the stratum of all of P^3) carries nothing."""
    return not page.column(TOP_COLUMN)


def assemble_e1(strata) -> SSPage:
    E1 = assemble_E1(strata)
    page = SSPage(name="e1")
    for (p, q), r in E1.cells.items():
        page.add((p, q - 2 * (TOP_COLUMN - p)), r)
    return page


@dataclass(frozen=True)
class SteinVerdict:
    ok: bool
    violations: tuple[tuple[int, int], ...]
    support: tuple[int, ...]


def stein_vanishing_check(page: SSPage) -> SteinVerdict:
    bad = tuple(sorted(c for c in page.cells if not STEIN_LOW <= c[0] + c[1] <= STEIN_HIGH))
    support = tuple(sorted({p + q for p, q in page.cells}))
    return SteinVerdict(not bad, bad, support)


def betti_of_Xl(page: SSPage) -> PoincarePolynomial:
    """Poincare polynomial of X_l from a degenerate E^1 page."""
    verdict = stein_vanishing_check(page)
    if not verdict.ok:
        raise ValueError(f"ranks outside the Stein range at {verdict.violations}")
    b = {0: 1}
    for (p, q), r in page.cells.items():
        i = DUALITY_DEGREE - (p + q)
        b[i] = b.get(i, 0) + r
    return PoincarePolynomial.from_dict(b)
