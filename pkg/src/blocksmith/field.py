"""Finite fields GF(p^m) with elements encoded as small integers.

An element with polynomial coefficients ``(c0, c1, ..., c_{m-1})`` (constant
term first) is encoded as the integer ``c0 + c1*p + ... + c_{m-1}*p^(m-1)``.
That integer is also the canonical element order used everywhere else: the
prime subfield comes first as ``0, 1, ..., p-1`` and ``x`` is encoded as ``p``.

:class:`FieldSpec` and :class:`FieldElement` are the serializable value types.
:class:`GF` is the operational object with scalar and vectorized (numpy)
arithmetic; obtain it through :func:`get_field`, which caches one instance
per spec.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DivisionByZero,
    EvenModulus,
    NonPrimeCharacteristic,
    NonResidue,
    OrderTooLarge,
)

MAX_ORDER = 2**20
# full add/mul tables are built below this order (q^2 int32 entries)
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``, or raise if q is not a prime power."""
    if q < 2:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            r = q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                raise NonPrimeCharacteristic(f"{q} is not a prime power")
            return p, m
    raise NonPrimeCharacteristic(f"{q} is not a prime power")


# -- polynomials over GF(p), coefficient lists with constant term first -------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        factor = a[-1] * inv_lead % p
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def is_irreducible(poly: tuple[int, ...] | list[int], p: int) -> bool:
    """Exhaustive factor check: no monic factor of degree 1..deg/2 divides poly."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for fd in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=fd):
            if not _poly_mod(list(poly), list(low) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.m

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        spec = cls(int(data["p"]), int(data["m"]), tuple(int(c) for c in data["modulus"]))
        if spec != make_field(spec.p, spec.m):
            # any irreducible modulus is usable, but we only ever emit canonical ones
            if len(spec.modulus) != spec.m + 1 or spec.modulus[-1] != 1:
                raise ValueError(f"modulus {spec.modulus} is not monic of degree {spec.m}")
            if not is_irreducible(spec.modulus, spec.p):
                raise ValueError(f"modulus {spec.modulus} is reducible over GF({spec.p})")
        return spec

    def __str__(self) -> str:
        return f"GF({self.q})"


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldSpec:
    """Canonical field of order p**m.

    The modulus is the monic irreducible polynomial of degree m whose value
    at x = p is smallest (so x^3+x+1 beats x^3+x^2+1); for m = 1 it is ``x``.
    It is stored constant term first.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if p**m > MAX_ORDER:
        raise OrderTooLarge(f"field order {p}^{m} exceeds {MAX_ORDER}")
    for high in itertools.product(range(p), repeat=m):
        poly = tuple(reversed(high)) + (1,)
        if is_irreducible(poly, p):
            return FieldSpec(p, m, poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_of_order(q: int) -> FieldSpec:
    p, m = prime_power(q)
    return make_field(p, m)


class GF:
    """Arithmetic on integer-encoded elements of a fixed field."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.m = spec.m
        self.q = spec.q
        self.is_prime = spec.m == 1
        self._tables = None
        if not self.is_prime and self.q <= TABLE_LIMIT:
            self._build_tables()
        self._inv = None

    def __repr__(self) -> str:
        return f"GF({self.q})"

    # -- encoding ------------------------------------------------------------
    def to_coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        a = 0
        for c in reversed(tuple(coeffs)):
            a = a * self.p + (c % self.p)
        return a

    def elements(self) -> range:
        return range(self.q)

    @property
    def generator(self) -> int:
        """The class of ``x``, i.e. the root of the modulus (0 in a prime field)."""
        return self.p if self.m > 1 else 0

    # -- raw polynomial arithmetic ---------------------------------------------
    def _add_raw(self, a: int, b: int) -> int:
        p = self.p
        out, base = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * base
            a //= p
            b //= p
            base *= p
        return out

    def _neg_raw(self, a: int) -> int:
        p = self.p
        out, base = 0, 1
        while a:
            out += ((-(a % p)) % p) * base
            a //= p
            base *= p
        return out

    def _mul_raw(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.spec.modulus
        for deg in range(2 * m - 2, m - 1, -1):
            c = prod[deg]
            if c:
                for i in range(m + 1):
                    prod[deg - m + i] = (prod[deg - m + i] - c * mod[i]) % p
        return self.from_coeffs(prod[:m])

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        idx = np.arange(q)
        digits = np.stack([(idx // p**i) % p for i in range(self.m)], axis=1)
        weights = p ** np.arange(self.m)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights
        # multiplication through discrete logs of a primitive element
        for g in range(2, q):
            exp = [1]
            while len(exp) < q - 1:
                nxt = self._mul_raw(exp[-1], g)
                if nxt == 1:
                    break
                exp.append(nxt)
            if len(exp) == q - 1:
                break
        exp = np.array(exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        self._tables = (add.astype(np.int32), mul.astype(np.int32), neg.astype(np.int32))

    # -- scalar operations -----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a + b) % self.p
        if self._tables is not None:
            return int(self._tables[0][a, b])
        return self._add_raw(a, b)

    def neg(self, a: int) -> int:
        if self.is_prime:
            return -a % self.p
        if self._tables is not None:
            return int(self._tables[2][a])
        return self._neg_raw(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.is_prime:
            return a * b % self.p
        if self._tables is not None:
            return int(self._tables[1][a, b])
        return self._mul_raw(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.is_prime:
            return pow(a, self.p - 2, self.p)
        if self._inv is None and self._tables is not None:
            inv = [0] * self.q
            for x in range(1, self.q):
                inv[x] = self._ext_euclid_inv(x)
            self._inv = inv
        if self._inv is not None:
            return self._inv[a]
        return self._ext_euclid_inv(a)

    def _ext_euclid_inv(self, a: int) -> int:
        # extended Euclid in GF(p)[x] against the modulus
        p = self.p
        r0, r1 = list(self.spec.modulus), _trim(list(self.to_coeffs(a)))
        s0, s1 = [], [1]
        while r1:
            # polynomial long division r0 = quot*r1 + rem
            rem = list(r0)
            quot = [0] * max(len(r0) - len(r1) + 1, 1)
            inv_lead = pow(r1[-1], p - 2, p)
            while len(rem) >= len(r1) and rem:
                shift = len(rem) - len(r1)
                f = rem[-1] * inv_lead % p
                quot[shift] = f
                for i, c in enumerate(r1):
                    rem[shift + i] = (rem[shift + i] - f * c) % p
                _trim(rem)
            prod = [0] * (len(quot) + len(s1))
            for i, x in enumerate(quot):
                for j, y in enumerate(s1):
                    prod[i + j] = (prod[i + j] + x * y) % p
            s_new = [0] * max(len(s0), len(prod))
            for i, c in enumerate(s0):
                s_new[i] = c
            for i, c in enumerate(prod):
                s_new[i] = (s_new[i] - c) % p
            r0, r1 = r1, rem
            s0, s1 = s1, _trim(s_new)
        # r0 is a nonzero constant
        c = pow(r0[0], p - 2, p)
        return self.from_coeffs([x * c % p for x in s0] + [0] * self.m)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p**times)

    # -- vectorized operations on numpy integer arrays -----------------------
    def vadd(self, a, b):
        if self.is_prime:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        if self._tables is not None:
            return self._tables[0][a, b]
        return _vectorized(self._add_raw)(a, b).astype(np.int64)

    def vmul(self, a, b):
        if self.is_prime:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        if self._tables is not None:
            return self._tables[1][a, b]
        return _vectorized(self._mul_raw)(a, b).astype(np.int64)

    def vneg(self, a):
        if self.is_prime:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        if self._tables is not None:
            return self._tables[2][a]
        return np.frompyfunc(lambda x: self._neg_raw(int(x)), 1, 1)(a).astype(np.int64)

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def dot_matrix(self, rows_a, rows_b) -> np.ndarray:
        """Field dot products between every row of ``rows_a`` and of ``rows_b``.

        Returns an array of shape ``(len(rows_a), len(rows_b))``.
        """
        A = np.asarray(rows_a, dtype=np.int64)
        B = np.asarray(rows_b, dtype=np.int64)
        if A.ndim == 1:
            A = A[None, :]
        if B.ndim == 1:
            B = B[None, :]
        if self.is_prime:
            if A.shape[1] * (self.p - 1) ** 2 < 2**62:
                return (A @ B.T) % self.p
        acc = np.zeros((A.shape[0], B.shape[0]), dtype=np.int64)
        for i in range(A.shape[1]):
            acc = self.vadd(acc, self.vmul(A[:, i][:, None], B[:, i][None, :]))
        return np.asarray(acc, dtype=np.int64)

    def combine(self, coeffs, rows) -> np.ndarray:
        """All linear combinations ``coeffs @ rows`` (shape ``(N, r) x (r, n)``)."""
        C = np.asarray(coeffs, dtype=np.int64)
        R = np.asarray(rows, dtype=np.int64)
        if self.is_prime:
            return (C @ R) % self.p
        acc = np.zeros((C.shape[0], R.shape[1]), dtype=np.int64)
        for i in range(R.shape[0]):
            acc = self.vadd(acc, self.vmul(C[:, i][:, None], R[i][None, :]))
        return np.asarray(acc, dtype=np.int64)


def _vectorized(fn):
    return np.frompyfunc(lambda x, y: fn(int(x), int(y)), 2, 1)


@functools.lru_cache(maxsize=None)
def get_field(spec: FieldSpec) -> GF:
    return GF(spec)


def GFq(q: int) -> GF:
    """Shorthand: the canonical operational field of order q."""
    return get_field(field_of_order(q))


def arith(spec: FieldSpec, op: str, a: FieldElement, b=None) -> FieldElement:
    """Apply ``op`` in {add, mul, inv, pow} to coefficient-tuple elements."""
    F = get_field(spec)
    x = F.from_coeffs(a.coeffs)
    if op == "add":
        r = F.add(x, F.from_coeffs(b.coeffs))
    elif op == "mul":
        r = F.mul(x, F.from_coeffs(b.coeffs))
    elif op == "inv":
        r = F.inv(x)
    elif op == "pow":
        r = F.pow(x, int(b))
    else:
        raise ValueError(f"unknown operation {op!r}")
    return FieldElement(F.to_coeffs(r))


def subfield_embedding(big: GF, small: GF) -> list[int]:
    """Embed ``small`` into ``big``: returns the image of every small element.

    The generator of ``small`` is sent to the smallest root (in canonical
    order) of its modulus inside ``big``.
    """
    if big.p != small.p or big.m % small.m:
        raise ValueError(f"{small} is not a subfield of {big}")
    if small.m == 1:
        return list(range(small.p))
    mod = small.spec.modulus
    root = None
    for z in range(big.q):
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, z), c)
        if acc == 0:
            root = z
            break
    assert root is not None
    images = []
    powers = [big.pow(root, i) for i in range(small.m)]
    for a in range(small.q):
        acc = 0
        for c, pw in zip(small.to_coeffs(a), powers):
            acc = big.add(acc, big.mul(c, pw))
        images.append(acc)
    return images


def coordinate_table(big: GF, small: GF, basis=None) -> np.ndarray:
    """Coordinates of every element of ``big`` over the subfield ``small``.

    ``basis`` defaults to ``1, w, ..., w^(e-1)`` with ``w`` the class of x in
    ``big`` and ``e`` the relative degree. Row ``z`` of the result holds the
    small-field coordinates of element ``z``.
    """
    e = big.m // small.m
    emb = subfield_embedding(big, small)
    if basis is None:
        basis = [big.pow(big.generator, i) if big.m > 1 else 1 for i in range(e)]
    basis = list(basis)
    table = np.full((big.q, e), -1, dtype=np.int64)
    for coords in itertools.product(range(small.q), repeat=e):
        z = 0
        for c, b in zip(coords, basis):
            z = big.add(z, big.mul(emb[c], b))
        if table[z, 0] != -1:
            raise ValueError("basis is not linearly independent over the subfield")
        table[z] = coords
    return table


def legendre(a: int, r: int) -> int:
    if r % 2 == 0:
        raise EvenModulus(f"modulus {r} is even")
    if not is_prime(r):
        raise NonPrimeCharacteristic(f"{r} is not prime")
    a %= r
    if a == 0:
        return 0
    return 1 if pow(a, (r - 1) // 2, r) == 1 else -1


def sqrt_mod(a: int, r: int) -> int:
    """Smaller of the two square roots of a modulo the odd prime r."""
    if legendre(a, r) == -1:
        raise NonResidue(f"{a % r} is not a square mod {r}")
    a %= r
    for x in range(r // 2 + 1):
        if x * x % r == a:
            return x
    raise AssertionError("unreachable")  # pragma: no cover
