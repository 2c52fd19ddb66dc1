"""Arithmetic over prime-power finite fields GF(p^m), q <= 2**16.

Elements are plain ints in ``[0, q)``: the coefficient vector of the
polynomial-basis representation packed base ``p``, lowest degree first.
Multiplication and inversion go through discrete-log / antilog tables that
are built once per field.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DivisionByZero, NoDefaultModulus, NotPrime, NotPrimePower, ReduciblePolynomial

MAX_ORDER = 1 << 16

# Coefficients low degree first. Binary entries are primitive trinomials or
# pentanomials; the odd-characteristic entries are Conway polynomials. Any
# entry is re-validated for irreducibility when a field is built from it.
DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),
    (2, 15): (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
    (11, 2): (2, 7, 1),
    (11, 3): (9, 2, 0, 1),
    (11, 4): (2, 10, 8, 0, 1),
    (13, 2): (2, 12, 1),
    (13, 3): (11, 2, 0, 1),
    (13, 4): (2, 12, 3, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q == p**m``; raise if impossible."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, m


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of ``a`` divided by monic ``b`` over GF(p)."""
    a = _trim(list(a))
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int):
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(modulus: list[int] | tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..m//2."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] != 1:
        return False
    for d in range(1, m // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(list(modulus), f, p):
                return False
    return True


def _factorize(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) with a fixed modulus polynomial (low-degree-first coefficients)."""

    p: int
    m: int
    modulus: tuple[int, ...]
    q: int = field(init=False)
    exp: np.ndarray = field(init=False, repr=False, compare=False)
    log: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.m)
        exp, log = self._build_tables()
        exp.setflags(write=False)
        log.setflags(write=False)
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "log", log)

    # -- encoding ---------------------------------------------------------
    def encode(self, coeffs) -> int:
        value = 0
        for c in reversed(list(coeffs)):
            value = value * self.p + int(c) % self.p
        return value

    def decode(self, value: int) -> list[int]:
        out = []
        for _ in range(self.m):
            value, c = divmod(value, self.p)
            out.append(c)
        return out

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of GF({self.q})")
        return a

    # -- polynomial-basis multiply, used only to build the tables ---------
    def _mulmod(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        if p == 2:
            poly = self.encode(self.modulus)
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> m & 1:
                    a ^= poly
            return r
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(self.decode(a)):
            if x:
                for j, y in enumerate(self.decode(b)):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.encode(_poly_mod(prod, list(self.modulus), p) + [0] * m)

    def _powmod(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mulmod(r, a)
            a = self._mulmod(a, a)
            e >>= 1
        return r

    def _generator(self) -> int:
        order = self.q - 1
        factors = _factorize(order)
        for g in range(1, self.q):
            if all(self._powmod(g, order // f) != 1 for f in factors):
                return g
        raise AssertionError("multiplicative group has no generator")

    def _build_tables(self):
        n = self.q - 1
        exp = np.zeros(2 * n, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        g = self._generator() if n > 1 else 1
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mulmod(x, g)
        exp[n:] = exp[:n]
        return exp, log

    # -- field operations -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return self.encode(x + y for x, y in zip(self.decode(a), self.decode(b)))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.encode(-x for x in self.decode(a))

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a - b) % self.p
        return self.encode(x - y for x, y in zip(self.decode(a), self.decode(b)))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative inverse")
        return int(self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def __str__(self) -> str:
        return f"GF({self.q})"


def field_new(p: int, m: int = 1, modulus="default") -> FieldSpec:
    """Build and validate GF(p^m)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if p**m > MAX_ORDER:
        raise ValueError(f"field order {p}^{m} exceeds {MAX_ORDER}")
    if isinstance(modulus, str):
        if modulus != "default":
            raise ValueError(f"unknown modulus {modulus!r}")
        if m == 1:
            modulus = (0, 1)
        elif (p, m) in DEFAULT_MODULI:
            modulus = DEFAULT_MODULI[(p, m)]
        else:
            raise NoDefaultModulus(f"no built-in modulus for GF({p}^{m})")
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != m + 1 or modulus[-1] != 1:
        raise ValueError(f"modulus must be a monic polynomial of degree {m}")
    if not is_irreducible(modulus, p):
        raise ReduciblePolynomial(f"{modulus} is reducible over GF({p})")
    return FieldSpec(p, m, modulus)


_FIELD_CACHE: dict[tuple, FieldSpec] = {}


def field_from_order(q: int, modulus=None) -> FieldSpec:
    """Field of order ``q`` with the default (or given) modulus; cached."""
    p, m = prime_power(q)
    key = (q, tuple(modulus) if modulus is not None else None)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = field_new(p, m, "default" if modulus is None else modulus)
    return _FIELD_CACHE[key]
