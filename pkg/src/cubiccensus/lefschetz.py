"""Exact point-count predictions and Poincare polynomial identities.

Everything here is integer or rational arithmetic; no floats.

For a smooth variety Y of dimension d whose rational cohomology is an
exterior algebra on odd generators, each pure of Tate type with twist j
(weight 2j), the Grothendieck-Lefschetz trace formula collapses to

    #Y(F_q) = q^d * prod_j (1 - q^(-j)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._moduli import prime_factors


def is_prime_power(q: int) -> bool:
    return q >= 2 and len(prime_factors(q)) == 1


def _check_q(q: int) -> None:
    if not isinstance(q, int) or not is_prime_power(q):
        raise ValueError(f"q = {q!r} is not a prime power")


def gl4_order(q: int) -> int:
    _check_q(q)
    return (q**4 - 1) * (q**4 - q) * (q**4 - q**2) * (q**4 - q**3)


def pgl4_order(q: int) -> int:
    """#PGL(4, F_q) = q^6 (q^2-1)(q^3-1)(q^4-1)."""
    _check_q(q)
    return q**6 * (q**2 - 1) * (q**3 - 1) * (q**4 - 1)


def proj_space_count(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def grassmannian_count(q: int) -> int:
    _check_q(q)
    return (q**2 + 1) * (q**2 + q + 1)


def purity_count(q: int, dim: int, twists) -> int:
    """q^dim * prod (1 - q^-j) over the Tate twists j of the odd generators, as an exact integer."""
    value = Fraction(q) ** dim
    for j in twists:
        value *= 1 - Fraction(1, q**j)
    if value.denominator != 1:
        raise ArithmeticError("purity evaluation is not integral")
    return int(value)


# generators a3, a5, a7 of H^*(M): degrees 3, 5, 7, bidegrees (2,2), (3,3), (4,4)
M_TWISTS = (2, 3, 4)
M_DIM = 19
# (1+t)^2 (1+t^3)^2 for the 16-dimensional X_l: two twists of 1 and two of 2
XL_TWISTS = (1, 1, 2, 2)
XL_DIM = 16


@dataclass(frozen=True)
class PredictionSet:
    q: int
    pgl4: int
    gl4: int
    smooth_surfaces: int  # #M(F_q)
    incident_pairs: int  # #M~(F_q)
    lines: int  # #Gr(2,4)(F_q)
    x_line: int  # #X~_l(F_q)
    m_line: int  # #M~_l(F_q)
    classes: int  # #P^19(F_q)

    def identities(self) -> dict[str, bool]:
        q = self.q
        return {
            "pgl_is_gl_over_scalars": self.gl4 == self.pgl4 * (q - 1),
            "purity_matches_group_order": purity_count(q, M_DIM, M_TWISTS) == q**4 * self.pgl4,
            "smooth_is_q4_pgl": self.smooth_surfaces == q**4 * self.pgl4,
            "lines_times_fibre": self.lines * self.m_line == self.incident_pairs,
            "x_line_closed_form": self.x_line == q**10 * (q - 1) ** 2 * (q**2 - 1) ** 2,
            "x_line_purity": purity_count(q, XL_DIM, XL_TWISTS) == self.x_line,
            "m_line_is_x_line_over_scalars": self.m_line * (q - 1) == self.x_line,
        }

    def ok(self) -> bool:
        return all(self.identities().values())

    def average_lines(self) -> Fraction:
        return Fraction(self.incident_pairs, self.smooth_surfaces)

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "pgl4_order": self.pgl4,
            "gl4_order": self.gl4,
            "predicted_smooth_surfaces": self.smooth_surfaces,
            "predicted_incident_pairs": self.incident_pairs,
            "lines_in_p3": self.lines,
            "predicted_x_line": self.x_line,
            "predicted_m_line": self.m_line,
            "classes_p19": self.classes,
            "identities": self.identities(),
        }


def predicted_counts(q: int) -> PredictionSet:
    _check_q(q)
    pgl = pgl4_order(q)
    smooth = q**4 * pgl
    x_line = purity_count(q, XL_DIM, XL_TWISTS)
    gr = grassmannian_count(q)
    m_line = x_line // (q - 1)
    return PredictionSet(
        q=q,
        pgl4=pgl,
        gl4=gl4_order(q),
        smooth_surfaces=smooth,
        incident_pairs=gr * m_line,
        lines=gr,
        x_line=x_line,
        m_line=m_line,
        classes=proj_space_count(19, q),
    )


def smooth_density(q: int) -> Fraction:
    """#M(F_q) / #P^19(F_q)."""
    p = predicted_counts(q)
    return Fraction(p.smooth_surfaces, p.classes)


# -- Poincare polynomials ------------------------------------------------------


@dataclass(frozen=True)
class PoincarePolynomial:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(int(x) for x in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> PoincarePolynomial:
        n = max(d) + 1 if d else 1
        c = [0] * n
        for k, v in d.items():
            c[k] += v
        return cls(tuple(c))

    @classmethod
    def one_plus_t(cls, k: int) -> PoincarePolynomial:
        c = [0] * (k + 1)
        c[0] += 1
        c[k] += 1
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: PoincarePolynomial) -> PoincarePolynomial:
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PoincarePolynomial(tuple(out))

    def __pow__(self, n: int) -> PoincarePolynomial:
        out = PoincarePolynomial((1,))
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: PoincarePolynomial) -> tuple[PoincarePolynomial, PoincarePolynomial]:
        """Exact division by a monic polynomial with integer coefficients."""
        if other.coeffs[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [0] * max(1, len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return PoincarePolynomial(tuple(quot)), PoincarePolynomial(tuple(rem[:dq] or [0]))

    def evaluate(self, t):
        return sum(c * t**i for i, c in enumerate(self.coeffs))

    def euler_characteristic(self) -> int:
        return self.evaluate(-1)

    def betti_sum(self) -> int:
        return sum(self.coeffs)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                m = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(m if c == 1 and i else (str(c) if i == 0 else f"{c}{m}"))
        return " + ".join(terms) or "0"


def poincare_identities(spectral_poly: PoincarePolynomial | None = None) -> dict[str, object]:
    """Polynomial identities tying the group cohomology to the spectral output."""
    from .spectral import assemble_E1, betti_of_Xl, builtin_strata

    if spectral_poly is None:
        spectral_poly = betti_of_Xl(assemble_E1(builtin_strata()))
    T = PoincarePolynomial.one_plus_t
    pgl = T(3) * T(5) * T(7)
    gl2_sq = T(1) ** 2 * T(3) ** 2
    quot, rem = spectral_poly.divmod(T(1))
    return {
        "pgl4": str(pgl),
        "pgl4_betti_sum": pgl.betti_sum(),
        "gl2xgl2": str(gl2_sq),
        "x_line": str(spectral_poly),
        "x_line_equals_gl2xgl2": spectral_poly == gl2_sq,
        "divisible_by_1_plus_t": rem == PoincarePolynomial((0,)),
        "m_line": str(quot),
        "m_line_coeffs": list(quot.coeffs),
        "m_line_times_1_plus_t": (quot * T(1)) == spectral_poly,
        "ok": spectral_poly == gl2_sq and rem == PoincarePolynomial((0,)) and pgl.betti_sum() == 8,
    }
