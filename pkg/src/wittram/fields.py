"""Finite fields F_q in a fixed power basis.

Elements are plain ints.  ``0`` is zero and ``1 + k`` stands for ``g**k`` where
``g`` is the least primitive element in coordinate order.  Multiplication is
then index arithmetic and addition goes through a Zech logarithm table.  The
power-basis coordinates of an element are available through ``coords``.

The tables cost O(q) memory, so fields are limited to ``q <= MAX_Q``.
"""

from __future__ import annotations

import functools
import random as _random
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

import sympy

from .errors import ParameterError

MAX_Q = 1 << 20


def _is_prime(p: int) -> bool:
    return p >= 2 and sympy.isprime(p)


def _poly_irreducible(coeffs: Sequence[int], p: int) -> bool:
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    return poly.degree() == len(coeffs) - 1 and poly.is_irreducible


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, N0: int) -> Tuple[int, ...]:
    """Least monic irreducible polynomial of degree N0 over F_p.

    Polynomials are compared by the integer ``sum(c_i * p**i)`` of their lower
    coefficients.  Returned low degree first, leading 1 included.
    """
    if N0 == 1:
        return (0, 1)
    for code in range(p ** N0):
        low = [(code // p ** i) % p for i in range(N0)]
        if low[0] == 0:
            continue
        coeffs = tuple(low) + (1,)
        if _poly_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FieldParams:
    """p, N0 and the defining modulus (low degree first, monic)."""

    p: int
    N0: int
    modulus: Tuple[int, ...] = ()

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ParameterError(f"p={self.p} is not prime")
        if self.N0 < 1:
            raise ParameterError("N0 must be positive")
        if not self.modulus:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.N0))
        mod = tuple(int(c) % self.p for c in self.modulus)
        if len(mod) != self.N0 + 1 or mod[-1] != 1:
            raise ParameterError("modulus must be monic of degree N0")
        if not _poly_irreducible(mod, self.p):
            raise ParameterError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p ** self.N0


def _mul_mod(a, b, mod, p):
    n = len(mod) - 1
    prod = [0] * (2 * n - 1 if n > 0 else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d] % p
        if c:
            for i in range(n + 1):
                prod[d - n + i] -= c * mod[i]
    return [c % p for c in prod[:n]] + [0] * max(0, n - len(prod))


class FiniteField:
    """The field F_q attached to a ``FieldParams``.

    All methods act on encoded ints (see the module docstring).
    """

    def __init__(self, params: FieldParams):
        self.params = params
        self.p = params.p
        self.N0 = params.N0
        self.q = params.q
        if self.q > MAX_Q:
            raise ParameterError(f"q={self.q} exceeds the table limit {MAX_Q}")
        self.order = self.q - 1
        self._build_tables()

    # table construction

    def _code(self, cs):
        p = self.p
        return sum(c * p ** i for i, c in enumerate(cs))

    def _decode(self, code):
        p = self.p
        return [(code // p ** i) % p for i in range(self.N0)]

    def _powers(self, g):
        mod, p = self.params.modulus, self.p
        cur = [1] + [0] * (self.N0 - 1)
        codes = []
        for _ in range(self.order):
            codes.append(self._code(cur))
            cur = _mul_mod(cur, g, mod, p)
        return codes, cur

    def _build_tables(self):
        one = [1] + [0] * (self.N0 - 1)
        if self.q == 2:
            self._exp = [1]
            self.generator_code = 1
        else:
            for code in range(2, self.q):
                g = self._decode(code)
                codes, back = self._powers(g)
                if back == one and len(set(codes)) == self.order:
                    self._exp = codes
                    self.generator_code = code
                    break
        self._log = [0] * self.q
        for k, c in enumerate(self._exp):
            self._log[c] = k
        # zech[d] = log(1 + g^d), or -1 when 1 + g^d = 0
        p = self.p
        zech = []
        for c in self._exp:
            d0 = c % p
            c1 = c - d0 + (d0 + 1) % p
            zech.append(self._log[c1] if c1 else -1)
        self._zech = zech
        self._neg_shift = 0 if p == 2 else self.order // 2

    # encoding

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.N0:
            raise ParameterError("wrong number of coordinates")
        code = self._code([c % self.p for c in coords])
        return 0 if code == 0 else 1 + self._log[code]

    def coords(self, x: int) -> Tuple[int, ...]:
        if x == 0:
            return (0,) * self.N0
        return tuple(self._decode(self._exp[x - 1]))

    def code(self, x: int) -> int:
        """Coordinate integer sum(c_i p^i); gives the coordinate order."""
        return 0 if x == 0 else self._exp[x - 1]

    def from_code(self, code: int) -> int:
        return 0 if code == 0 else 1 + self._log[code]

    def from_int(self, n: int) -> int:
        return self.from_coords([n % self.p] + [0] * (self.N0 - 1))

    def to_int(self, x: int) -> int:
        """Integer value of an element of the prime field."""
        cs = self.coords(x)
        if any(cs[1:]):
            raise ParameterError("element is not in the prime field")
        return cs[0]

    def gen(self) -> int:
        """The power-basis generator (class of x modulo the modulus)."""
        if self.N0 == 1:
            return self.from_int(0)  # x = 0 modulo a linear modulus x - 0
        return self.from_coords([0, 1] + [0] * (self.N0 - 2))

    def elements(self) -> Iterator[int]:
        """All elements in coordinate order."""
        for code in range(self.q):
            yield self.from_code(code)

    # arithmetic

    zero = 0
    one = 1

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = a - 1
        z = self._zech[(b - a) % self.order]
        if z < 0:
            return 0
        return 1 + (la + z) % self.order

    def neg(self, a: int) -> int:
        if a == 0 or self._neg_shift == 0:
            return a
        return 1 + (a - 1 + self._neg_shift) % self.order

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return 1 + (a + b - 2) % self.order

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return 1 + (-(a - 1)) % self.order

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return 1 + ((a - 1) * e) % self.order

    def frob(self, a: int, k: int = 1) -> int:
        """a ** (p ** k); negative k gives the inverse Frobenius."""
        if a == 0:
            return 0
        e = pow(self.p, k % self.N0, self.order) if self.order > 1 else 1
        return 1 + ((a - 1) * e) % self.order

    def scal(self, n: int, a: int) -> int:
        """n * a for an integer n."""
        return self.mul(self.from_int(n), a)

    def is_zero(self, a: int) -> bool:
        return a == 0

    def is_unit(self, a: int) -> bool:
        return a != 0

    def sigma(self, a: int, k: int = 1) -> int:
        return self.frob(a, k)

    def valuation(self, a: int) -> int:
        return 0 if a else 1

    def sum(self, items) -> int:
        acc = 0
        for x in items:
            acc = self.add(acc, x)
        return acc

    def abs_trace(self, a: int) -> int:
        """Trace down to F_p, as an element of this field."""
        return self.sum(self.frob(a, k) for k in range(self.N0))

    def random(self, rng: _random.Random, nonzero: bool = False) -> int:
        if nonzero:
            return rng.randrange(1, self.q)
        return rng.randrange(self.q)

    def in_subfield(self, a: int, d: int) -> bool:
        """True when a lies in F_{p^d}."""
        return self.frob(a, d) == a

    def __repr__(self):
        return f"FiniteField(p={self.p}, N0={self.N0}, modulus={self.params.modulus})"


@functools.lru_cache(maxsize=None)
def get_field(p: int, N0: int, modulus: Tuple[int, ...] = ()) -> FiniteField:
    return FiniteField(FieldParams(p, N0, tuple(modulus)))


@functools.lru_cache(maxsize=None)
def embedding(sub: FiniteField, sup: FiniteField) -> Tuple[int, ...]:
    """Table of a field embedding sub -> sup, indexed by encoded element.

    The root of sub's modulus used as the image of x is the one with the
    smallest discrete log in sup.
    """
    if sup.p != sub.p or sup.N0 % sub.N0:
        raise ParameterError("no embedding between these fields")
    mod = sub.params.modulus
    step = sup.order // sub.order if sub.order else 1

    def evaluate(y):
        acc = 0
        for c in reversed(mod):
            acc = sup.add(sup.mul(acc, y), sup.from_int(c))
        return acc

    if sub.N0 == 1:
        root = 0
    else:
        root = None
        for j in range(0, sup.order, step):
            y = 1 + j
            if evaluate(y) == 0:
                root = y
                break
        if root is None:
            raise AssertionError("modulus has no root in the extension")
    table = []
    for x in range(sub.q):
        cs = sub.coords(x)
        acc = 0
        for c in reversed(cs):
            acc = sup.add(sup.mul(acc, root), sup.from_int(c))
        table.append(acc)
    return tuple(table)


class FqElem:
    """Immutable wrapper around an encoded field element."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = value

    @classmethod
    def from_coords(cls, field, coords):
        return cls(field, field.from_coords(coords))

    @property
    def coords(self) -> Tuple[int, ...]:
        return self.field.coords(self.value)

    def _check(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if other.field is not self.field:
            raise ParameterError("elements of different fields")
        return other.value

    def __add__(self, other):
        return FqElem(self.field, self.field.add(self.value, self._check(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElem(self.field, self.field.sub(self.value, self._check(other)))

    def __rsub__(self, other):
        return FqElem(self.field, self.field.sub(self._check(other), self.value))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FqElem(self.field, self.field.mul(self.value, self._check(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FqElem(self.field, self.field.div(self.value, self._check(other)))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.value, e))

    def frobenius(self, k: int = 1) -> "FqElem":
        return FqElem(self.field, self.field.frob(self.value, k))

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return isinstance(other, FqElem) and other.field is self.field and other.value == self.value

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __repr__(self):
        return f"FqElem{self.coords}"
