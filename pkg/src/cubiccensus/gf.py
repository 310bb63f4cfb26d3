"""Finite fields F_{p^k} with table-driven arithmetic.

Elements are canonical integer indices: the element sum(c_i * a^i) in the
power basis of a fixed primitive root ``a`` of the modulus has index
sum(c_i * p^i).  All arithmetic methods on :class:`FieldDescriptor`
accept Python ints or integer numpy arrays and broadcast like numpy.

Multiplication goes through exponent/log tables for orders up to
``TABLE_LIMIT``; addition is XOR in characteristic 2, plain modular
addition in prime fields and Zech logarithms otherwise.  Larger fields
fall back to scalar polynomial arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _moduli

TABLE_LIMIT = 1 << 16
ORDER_CEILING = 1 << 20


class FieldError(ValueError):
    pass


class FieldDescriptor:
    """The field F_{p^k} with a pinned modulus.

    Use :func:`make_field`; descriptors are cached so that equal fields are
    the same object.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        if len(self.modulus) != k + 1 or self.modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {k}")
        if not _moduli.is_irreducible(list(self.modulus), p):
            raise FieldError(f"modulus {self.modulus} is reducible over F_{p}")
        self._pows = np.array([p**i for i in range(k)], dtype=np.int64)
        self.exp: np.ndarray | None = None
        self.log: np.ndarray | None = None
        self.zech: np.ndarray | None = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- construction -------------------------------------------------
    def _times_alpha(self, v: int) -> int:
        """Multiply the element with index v by the primitive root."""
        p, k, f = self.p, self.k, self.modulus
        if k == 1:
            return (v * ((-f[0]) % p)) % p
        if p == 2:
            v <<= 1
            if v >> k:
                v ^= sum(c << i for i, c in enumerate(f))
            return v
        top = v // self._pows[-1]
        digits = [0] + [(v // p**i) % p for i in range(k - 1)]
        return sum(((d - top * f[i]) % p) * p**i for i, d in enumerate(digits))

    def _build_tables(self) -> None:
        q = self.q
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        v = 1
        for i in range(q - 1):
            exp[i] = v
            if log[v] != -1:
                raise FieldError("modulus is not primitive")
            log[v] = i
            v = self._times_alpha(v)
        if v != 1:
            raise FieldError("modulus is not primitive")
        self.exp, self.log = exp, log
        if self.p != 2 and self.k > 1:
            c0 = exp % self.p
            one_plus = exp - c0 + (c0 + 1) % self.p
            self.zech = log[one_plus]  # -1 where 1 + a^n = 0

    # -- identity -----------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldDescriptor) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    @property
    def has_tables(self) -> bool:
        return self.exp is not None

    @property
    def alpha(self) -> int:
        """Index of the primitive root of the modulus."""
        return (-self.modulus[0]) % self.p if self.k == 1 else self.p

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, int(value))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.q)]

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    # -- digits -------------------------------------------------------
    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pows) % self.p

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64)
        return (d % self.p) @ self._pows

    # -- arithmetic ---------------------------------------------------
    def add(self, a, b):
        a, b, scalar = _prep(a, b)
        if self.p == 2:
            out = a ^ b
        elif self.k == 1:
            out = (a + b) % self.p
        elif self.has_tables:
            out = self._zech_add(a, b)
        else:
            out = self.from_digits(self.digits(a) + self.digits(b))
        return _ret(out, scalar)

    def _zech_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(a, b)
        n = self.q - 1
        la = self.log[a]
        lb = self.log[b]
        both = (a != 0) & (b != 0)
        d = np.where(both, (lb - la) % n, 0)
        z = self.zech[d]
        s = np.where(z < 0, 0, self.exp[np.where(z < 0, 0, (la + z) % n)])
        return np.where(a == 0, b, np.where(b == 0, a, s))

    def neg(self, a):
        a, _, scalar = _prep(a, 0)
        if self.p == 2:
            out = a
        elif self.k == 1:
            out = (-a) % self.p
        else:
            out = self.from_digits(-self.digits(a))
        return _ret(out, scalar)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b, scalar = _prep(a, b)
        if self.k == 1:
            out = (a * b) % self.p
        elif self.has_tables:
            a, b = np.broadcast_arrays(a, b)
            n = self.q - 1
            nz = (a != 0) & (b != 0)
            e = np.where(nz, self.log[a] + self.log[b], 0) % n
            out = np.where(nz, self.exp[e], 0)
        else:
            out = _vec_binary(self._poly_mul, a, b)
        return _ret(out, scalar)

    def inv(self, a):
        a, _, scalar = _prep(a, 0)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.has_tables:
            out = self.exp[(-self.log[a]) % (self.q - 1)]
        else:
            out = _vec_unary(lambda x: self._scalar_pow(x, self.q - 2), a)
        return _ret(out, scalar)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n: int):
        a, _, scalar = _prep(a, 0)
        if self.has_tables:
            m = self.q - 1
            if n < 0:
                if np.any(a == 0):
                    raise ZeroDivisionError("negative power of zero")
            e = (self.log[np.where(a == 0, 1, a)] * (n % m)) % m
            out = np.where(a == 0, 0 if n != 0 else 1, self.exp[e])
            if n > 0 and n % m == 0:
                out = np.where(a == 0, 0, 1)
        else:
            out = _vec_unary(lambda x: self._scalar_pow(x, n % (self.q - 1) if x else n), a)
        return _ret(out, scalar)

    def frobenius(self, a, base_order: int | None = None):
        """x -> x^Q with Q = base_order (default p)."""
        return self.power(a, self.p if base_order is None else base_order)

    # -- scalar polynomial fallback (orders above TABLE_LIMIT) ---------
    def _poly_mul(self, a: int, b: int) -> int:
        p = self.p
        da = [(a // p**i) % p for i in range(self.k)]
        db = [(b // p**i) % p for i in range(self.k)]
        r = _moduli.poly_mulmod(_moduli._trim(da), _moduli._trim(db), list(self.modulus), p)
        return sum(c * p**i for i, c in enumerate(r))

    def _scalar_pow(self, a: int, n: int) -> int:
        if self.k == 1:
            return pow(int(a), n, self.p)
        result, base = 1, int(a)
        while n:
            if n & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            n >>= 1
        return result

    # -- linear algebra helpers ---------------------------------------
    def dot(self, a, b, axis: int = -1):
        """Sum over ``axis`` of a*b."""
        prod = np.asarray(self.mul(a, b))
        return self.sum(prod, axis=axis)

    def sum(self, a, axis: int = -1):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        return self.from_digits(self.digits(a).sum(axis=axis if axis >= 0 else axis - 1))


def _prep(a, b):
    scalar = np.ndim(a) == 0 and np.ndim(b) == 0
    return np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64), scalar


def _ret(out, scalar: bool):
    return int(out) if scalar else out


def _vec_binary(fn, a, b):
    a, b = np.broadcast_arrays(a, b)
    out = np.array([fn(int(x), int(y)) for x, y in zip(a.ravel(), b.ravel())], dtype=np.int64)
    return out.reshape(a.shape)


def _vec_unary(fn, a):
    out = np.array([fn(int(x)) for x in a.ravel()], dtype=np.int64)
    return out.reshape(a.shape)


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldDescriptor:
    """The field with p^k elements and the pinned modulus for (p, k)."""
    if not _moduli.is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("degree must be positive")
    if p**k > ORDER_CEILING:
        raise FieldError(f"order {p}^{k} exceeds the ceiling {ORDER_CEILING}")
    modulus = _moduli.SHIPPED.get((p, k)) or _moduli.search_modulus(p, k)
    return FieldDescriptor(p, k, modulus)


def field_of_order(q: int) -> FieldDescriptor:
    """Field for a prime power q."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1 or q < 2:
        raise FieldError(f"{q} is not a prime power")
    return make_field(p, k)


def extension(base: FieldDescriptor, degree: int) -> FieldDescriptor:
    """F_{q^degree} for base = F_q."""
    return make_field(base.p, base.k * degree)


@dataclass(frozen=True)
class FieldElement:
    field: FieldDescriptor
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"index {self.value} out of range for {self.field!r}")

    def _check(self, other: FieldElement) -> None:
        if other.field != self.field:
            raise FieldError(f"mixed fields {self.field!r} and {other.field!r}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int) -> FieldElement:
        return FieldElement(self.field, self.field.power(self.value, n))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __repr__(self) -> str:
        return f"{self.field!r}[{self.value}]"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def _check_subfield(src: FieldDescriptor, dst: FieldDescriptor) -> None:
    if src.p != dst.p or dst.k % src.k:
        raise FieldError(f"{src!r} is not a subfield of {dst!r}")


def embed_values(values, src: FieldDescriptor, dst: FieldDescriptor):
    """Vectorised subfield embedding F_{p^j} -> F_{p^k} on element indices."""
    _check_subfield(src, dst)
    if src == dst:
        return values
    values = np.asarray(values, dtype=np.int64)
    scalar = values.ndim == 0
    r = (dst.q - 1) // (src.q - 1)
    if src.has_tables and dst.has_tables:
        out = np.where(values == 0, 0, dst.exp[(src.log[np.where(values == 0, 1, values)] * r) % (dst.q - 1)])
        return _ret(out, scalar)
    beta = dst.power(dst.alpha, r)
    powers = [1]
    for _ in range(src.k - 1):
        powers.append(dst.mul(powers[-1], beta))
    d = src.digits(values)
    acc = np.zeros(values.shape, dtype=np.int64)
    for i, b in enumerate(powers):
        acc = dst.add(acc, dst.mul(d[..., i], b))
    return _ret(acc, scalar)


def embed(x: FieldElement, target: FieldDescriptor) -> FieldElement:
    """Embed x into the extension ``target``; a ring homomorphism."""
    return FieldElement(target, embed_values(x.value, x.field, target))


def frobenius(x: FieldElement, base_order: int) -> FieldElement:
    """The relative Frobenius x -> x^base_order."""
    f = x.field
    m, r = 0, base_order
    while r % f.p == 0 and r > 1:
        r //= f.p
        m += 1
    if r != 1 or m == 0 or f.k % m:
        raise FieldError(f"{base_order} is not the order of a subfield of {f!r}")
    return FieldElement(f, f.power(x.value, base_order))


@lru_cache(maxsize=None)
def _relative_inverse(ext: FieldDescriptor, base: FieldDescriptor) -> np.ndarray:
    from .linalg import inverse_mod_p

    _check_subfield(base, ext)
    k = ext.k // base.k
    cols = []
    gamma_pows = [1]
    for _ in range(k - 1):
        gamma_pows.append(ext.mul(gamma_pows[-1], ext.alpha))
    base_basis = embed_values(np.array([base.p**b for b in range(base.k)]), base, ext)
    for i in range(k):
        for b in range(base.k):
            cols.append(ext.digits(ext.mul(int(base_basis[b]), gamma_pows[i])))
    return inverse_mod_p(np.array(cols, dtype=np.int64).T, ext.p)


def relative_coordinates(values, ext: FieldDescriptor, base: FieldDescriptor) -> np.ndarray:
    """Coordinates over ``base`` in the basis 1, g, ..., g^(m-1), g = primitive root of ``ext``.

    Returns base-field indices with a trailing axis of length m = [ext:base].
    The map is base-linear, which is what flattening linear conditions needs.
    """
    k = ext.k // base.k
    inv = _relative_inverse(ext, base)
    d = ext.digits(values)  # (..., ext.k)
    c = (d @ inv.T) % ext.p  # (..., k*base.k) grouped by coordinate
    c = c.reshape(c.shape[:-1] + (k, base.k))
    return (c * base._pows).sum(axis=-1)
