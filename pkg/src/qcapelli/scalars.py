"""Exact scalars: rationals, real multiquadratic surds, and their Gaussian extension.

A :class:`Surd` is a finite sum ``sum_d q_d * sqrt(d)`` over squarefree radicands
``d >= 1`` with rational ``q_d``.  A :class:`GaussianSurd` is ``re + i*im`` with both
parts surds.  Plain ``int`` and :class:`fractions.Fraction` interoperate with both,
so containers may hold the narrowest exact type for each coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational as _RationalABC

Rational = Fraction

_RATIONAL_TYPES = (int, Fraction)


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == f*f*s`` and ``s`` squarefree (trial division)."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    s, f = 1, 1
    p = 2
    m = n
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            f *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    return s * m, f


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not a rational: {x!r}")


class Surd:
    """Element of Q(sqrt 2, sqrt 3, sqrt 5, ...) in canonical form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Surd):
            self._terms = value._terms
        elif isinstance(value, _RATIONAL_TYPES):
            self._terms = {1: Fraction(value)} if value else {}
        elif isinstance(value, dict):
            terms: dict[int, Fraction] = {}
            for d, c in value.items():
                d = int(d)
                s, f = squarefree_split(d)
                c = _to_fraction(c) * f
                if c:
                    c = terms.get(s, 0) + c
                    if c:
                        terms[s] = c
                    else:
                        terms.pop(s, None)
            self._terms = terms
        else:
            raise TypeError(f"cannot build a Surd from {value!r}")
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> Surd:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def sqrt(cls, d: int) -> Surd:
        return cls({d: 1})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def radicands(self) -> list[int]:
        return sorted(self._terms)

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 1 in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.rational_part()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Surd):
            return self._terms == other._terms
        if isinstance(other, _RATIONAL_TYPES):
            if not other:
                return not self._terms
            return len(self._terms) == 1 and self._terms.get(1) == other
        if isinstance(other, GaussianSurd):
            return other == self
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_part())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> Surd:
        return Surd._raw({d: -c for d, c in self._terms.items()})

    def __pos__(self) -> Surd:
        return self

    def __add__(self, other) -> Surd:
        if isinstance(other, Surd):
            o = other._terms
        elif isinstance(other, _RATIONAL_TYPES):
            if not other:
                return self
            o = {1: other}
        else:
            return NotImplemented
        terms = dict(self._terms)
        for d, c in o.items():
            c = terms.get(d, 0) + c
            if c:
                terms[d] = c
            else:
                terms.pop(d, None)
        return Surd._raw(terms)

    __radd__ = __add__

    def __sub__(self, other) -> Surd:
        if isinstance(other, (Surd, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> Surd:
        return (-self) + other

    def __mul__(self, other) -> Surd:
        if isinstance(other, _RATIONAL_TYPES):
            if not other:
                return Surd._raw({})
            return Surd._raw({d: c * other for d, c in self._terms.items()})
        if not isinstance(other, Surd):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(b) == 1 and 1 in b:
            return self * b[1]
        if len(a) == 1 and 1 in a:
            return other * a[1]
        terms: dict[int, Fraction] = {}
        for d1, c1 in a.items():
            for d2, c2 in b.items():
                g = gcd(d1, d2)
                d = (d1 // g) * (d2 // g)
                c = terms.get(d, 0) + c1 * c2 * g
                if c:
                    terms[d] = c
                else:
                    terms.pop(d, None)
        return Surd._raw(terms)

    __rmul__ = __mul__

    def conjugate_at(self, p: int) -> Surd:
        """Flip the sign of every term whose radicand is divisible by the prime ``p``."""
        return Surd._raw({d: (-c if d % p == 0 else c) for d, c in self._terms.items()})

    def inv(self) -> Surd:
        if not self._terms:
            raise ZeroDivisionError("inverse of zero Surd")
        if self.is_rational():
            return Surd._raw({1: 1 / self._terms[1]})
        primes = set()
        for d in self._terms:
            primes.update(_prime_factors(d))
        p = max(primes)
        conj = self.conjugate_at(p)
        norm = self * conj  # free of sqrt(p)
        return conj * norm.inv()

    def __truediv__(self, other) -> Surd:
        if isinstance(other, _RATIONAL_TYPES):
            if not other:
                raise ZeroDivisionError("division by zero")
            return Surd._raw({d: c / other for d, c in self._terms.items()})
        if isinstance(other, Surd):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other) -> Surd:
        if isinstance(other, _RATIONAL_TYPES):
            return self.inv() * other
        return NotImplemented

    def __pow__(self, e: int) -> Surd:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        result = Surd(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __float__(self) -> float:
        return sum(float(c) * d**0.5 for d, c in self._terms.items())

    def __repr__(self) -> str:
        return f"Surd({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d in sorted(self._terms):
            c = self._terms[d]
            if d == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"√{d}")
            elif c == -1:
                parts.append(f"-√{d}")
            else:
                parts.append(f"{c}*√{d}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict[str, str]:
        return {str(d): str(self._terms[d]) for d in sorted(self._terms)}

    @classmethod
    def from_json(cls, obj: dict) -> Surd:
        return cls({int(d): Fraction(c) for d, c in obj.items()})


class GaussianSurd:
    """``re + i*im`` with real :class:`Surd` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Surd) else Surd(re)
        self.im = im if isinstance(im, Surd) else Surd(im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianSurd):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (Surd, int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self) -> GaussianSurd:
        return GaussianSurd(-self.re, -self.im)

    def __add__(self, other) -> GaussianSurd:
        if isinstance(other, GaussianSurd):
            return GaussianSurd(self.re + other.re, self.im + other.im)
        if isinstance(other, (Surd, int, Fraction)):
            return GaussianSurd(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> GaussianSurd:
        if isinstance(other, (GaussianSurd, Surd, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> GaussianSurd:
        return (-self) + other

    def __mul__(self, other) -> GaussianSurd:
        if isinstance(other, GaussianSurd):
            return GaussianSurd(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (Surd, int, Fraction)):
            return GaussianSurd(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> GaussianSurd:
        return GaussianSurd(self.re, -self.im)

    def inv(self) -> GaussianSurd:
        if not self:
            raise ZeroDivisionError("inverse of zero GaussianSurd")
        norm = self.re * self.re + self.im * self.im
        return self.conjugate() * norm.inv()

    def __truediv__(self, other) -> GaussianSurd:
        if isinstance(other, GaussianSurd):
            return self * other.inv()
        if isinstance(other, (Surd, int, Fraction)):
            return self * Surd(other).inv()
        return NotImplemented

    def __rtruediv__(self, other) -> GaussianSurd:
        return self.inv() * other

    def __pow__(self, e: int) -> GaussianSurd:
        if e < 0:
            return self.inv() ** (-e)
        result = GaussianSurd(1)
        for _ in range(e):
            result = result * self
        return result

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianSurd({self})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"i*({self.im})"
        return f"({self.re}) + i*({self.im})"

    def to_json(self) -> dict:
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> GaussianSurd:
        return cls(Surd.from_json(obj["re"]), Surd.from_json(obj["im"]))


I = GaussianSurd(0, 1)
SQRT2 = Surd.sqrt(2)


def sqrt_rational(q) -> Surd:
    """Nonnegative square root of a nonnegative rational, as a Surd."""
    q = _to_fraction(q)
    if q < 0:
        raise ValueError(f"negative radicand {q}")
    if not q:
        return Surd()
    # sqrt(a/b) = sqrt(a*b)/b
    return Surd({q.numerator * q.denominator: Fraction(1, q.denominator)})


def sqrt_content(k: int) -> Surd:
    """The positive root ``sqrt(k*(k+1))`` of a box with content ``k``."""
    if k < 0:
        raise ValueError("content must be nonnegative")
    if k == 0:
        return Surd()
    return Surd({k * (k + 1): 1})


def to_gaussian(x) -> GaussianSurd:
    if isinstance(x, GaussianSurd):
        return x
    return GaussianSurd(x)


def to_surd(x) -> Surd:
    if isinstance(x, Surd):
        return x
    if isinstance(x, GaussianSurd):
        if x.im:
            raise ValueError(f"{x} is not real")
        return x.re
    return Surd(x)


def narrow(x):
    """Demote to the narrowest exact type: int, Fraction, Surd or GaussianSurd."""
    if isinstance(x, GaussianSurd):
        if x.im:
            return x
        x = x.re
    if isinstance(x, Surd):
        if not x.is_rational():
            return x
        x = x.rational_part()
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def inverse(x):
    if isinstance(x, (Surd, GaussianSurd)):
        return narrow(x.inv())
    if not x:
        raise ZeroDivisionError("inverse of zero")
    return narrow(Fraction(1) / x)


def scalar_to_json(x) -> dict:
    """Coefficient JSON: Surd form when real, GaussianSurd form otherwise."""
    x = narrow(x)
    if isinstance(x, GaussianSurd):
        return x.to_json()
    return to_surd(x).to_json()


def scalar_from_json(obj: dict):
    if "re" in obj or "im" in obj:
        return narrow(GaussianSurd.from_json(obj))
    return narrow(Surd.from_json(obj))


# Unit decomposition used by vectorized kernels: a scalar is a sum of
# rational multiples of units sqrt(d) * i**k with d squarefree, k in {0, 1}.

def units(x) -> dict[tuple[int, int], Fraction]:
    if isinstance(x, GaussianSurd):
        out = {(d, 0): c for d, c in x.re._terms.items()}
        out.update({(d, 1): c for d, c in x.im._terms.items()})
        return out
    if isinstance(x, Surd):
        return {(d, 0): c for d, c in x._terms.items()}
    if not x:
        return {}
    return {(1, 0): Fraction(x)}


def unit_product(u: tuple[int, int], v: tuple[int, int]) -> tuple[int, tuple[int, int]]:
    """``unit(u) * unit(v) == factor * unit(w)``; returns ``(factor, w)``."""
    d1, k1 = u
    d2, k2 = v
    g = gcd(d1, d2)
    factor = g
    k = k1 + k2
    if k == 2:
        factor = -factor
        k = 0
    return factor, ((d1 // g) * (d2 // g), k)


def from_units(parts: dict[tuple[int, int], Fraction]):
    re = {d: c for (d, k), c in parts.items() if k == 0 and c}
    im = {d: c for (d, k), c in parts.items() if k == 1 and c}
    if im:
        return GaussianSurd(Surd._raw(re), Surd._raw(im))
    return narrow(Surd._raw(re))


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
