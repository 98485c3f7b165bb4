"""Commutative polynomials in y_1..y_N with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian

from .scalars import GaussianSurd, Surd, narrow, scalar_from_json, scalar_to_json

_SCALARS = (int, Fraction, Surd, GaussianSurd)


class Poly:
    """Polynomial stored as ``{exponent tuple: coefficient}`` with fixed arity."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} does not have length {nvars}")
            c = narrow(c)
            if c:
                clean[exps] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, nvars: int, c=1) -> Poly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, k: int) -> Poly:
        """The variable y_k (1-based)."""
        if not 1 <= k <= nvars:
            raise ValueError(f"variable index {k} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[k - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def variables(cls, nvars: int) -> list[Poly]:
        return [cls.var(nvars, k) for k in range(1, nvars + 1)]

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, _SCALARS):
            return Poly.constant(self.nvars, other)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if isinstance(other, (Poly,) + _SCALARS) else None
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __neg__(self) -> Poly:
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> Poly:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        terms = dict(self.terms)
        for e, c in o.terms.items():
            v = narrow(terms.get(e, 0) + c)
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return Poly._raw(self.nvars, terms)

    __radd__ = __add__

    def __sub__(self, other) -> Poly:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if isinstance(other, _SCALARS):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = narrow(terms.get(e, 0) + c1 * c2)
                if v:
                    terms[e] = v
                else:
                    terms.pop(e, None)
        return Poly._raw(self.nvars, terms)

    __rmul__ = __mul__

    def scale(self, c) -> Poly:
        c = narrow(c)
        if not c:
            return Poly._raw(self.nvars, {})
        return Poly._raw(self.nvars, {e: narrow(v * c) for e, v in self.terms.items()})

    def __pow__(self, k: int) -> Poly:
        out = Poly.constant(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def evaluate(self, point):
        point = list(point)
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(point)}")
        total = 0
        for exps, c in self.terms.items():
            term = c
            for x, k in zip(point, exps):
                if k:
                    term = term * x**k
            total = total + term
        return narrow(total)

    def substitute(self, images: list[Poly]) -> Poly:
        """Replace y_k by ``images[k-1]`` (all of a common arity)."""
        if len(images) != self.nvars:
            raise ValueError("wrong number of images")
        nv = images[0].nvars
        out = Poly(nv)
        for exps, c in self.terms.items():
            term = Poly.constant(nv, c)
            for img, k in zip(images, exps):
                if k:
                    term = term * img**k
            out = out + term
        return out

    def permute(self, perm) -> Poly:
        """Swap variables: the new exponent of y_k is the old exponent of y_{perm[k]}."""
        return Poly._raw(
            self.nvars, {tuple(e[p] for p in perm): c for e, c in self.terms.items()}
        )

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), [-x for x in e])):
            c = self.terms[exps]
            mono = "*".join(
                f"y{k}" if e == 1 else f"y{k}^{e}"
                for k, e in enumerate(exps, start=1)
                if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                cs = str(c)
                parts.append(f"({cs})*{mono}" if " " in cs else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return [
            {"exps": list(e), "coeff": scalar_to_json(self.terms[e])}
            for e in sorted(self.terms)
        ]

    @classmethod
    def from_json(cls, nvars: int, obj: list[dict]) -> Poly:
        return cls(nvars, {tuple(t["exps"]): scalar_from_json(t["coeff"]) for t in obj})


def top_degree_component(p: Poly) -> Poly:
    if not p:
        raise ValueError("zero polynomial has no top degree component")
    d = p.degree()
    return Poly._raw(p.nvars, {e: c for e, c in p.terms.items() if sum(e) == d})


def is_symmetric(p: Poly) -> bool:
    n = p.nvars
    for k in range(n - 1):
        perm = list(range(n))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        if p.permute(perm) != p:
            return False
    return True


def is_supersymmetric(p: Poly) -> bool:
    """Symmetric, and independent of z after setting y1 = z, y2 = -z."""
    n = p.nvars
    if n < 2:
        raise ValueError("the cancellation property needs at least two variables")
    if not is_symmetric(p):
        return False
    # variables of the substituted polynomial: z, y3, ..., yN
    z = Poly.var(n - 1, 1)
    rest = Poly.variables(n - 1)[1:]
    q = p.substitute([z, -z] + rest)
    return all(e[0] == 0 for e in q.terms)


def power_sum(nvars: int, k: int) -> Poly:
    return sum((v**k for v in Poly.variables(nvars)), Poly(nvars))


def monomials_upto(nvars: int, degree: int):
    for exps in _cartesian(range(degree + 1), repeat=nvars):
        if sum(exps) <= degree:
            yield exps
