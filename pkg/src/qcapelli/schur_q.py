"""Schur Q-polynomials and their factorial versions, summed over marked tableaux."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .polynomials import Poly, is_supersymmetric, top_degree_component
from .shifted import (
    StrictPartition,
    enumerate_marked,
    letter_sign,
    letter_value,
    strict_partitions_upto,
)


def _as_partition(lam) -> StrictPartition:
    return lam if isinstance(lam, StrictPartition) else StrictPartition(tuple(lam))


def _sign_value(sign) -> int:
    if sign in ("+", "plus", 1, +1):
        return 1
    if sign in ("-", "minus", -1):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


@lru_cache(maxsize=None)
def _tableau_sum(parts: tuple[int, ...], N: int, shift: int) -> Poly:
    lam = StrictPartition(parts)
    ys = Poly.variables(N)
    total = Poly(N)
    for t in enumerate_marked(lam, N):
        term = Poly.constant(N)
        for box, code in t.items():
            factor = ys[letter_value(code) - 1]
            if shift:
                factor = factor + shift * letter_sign(code) * box.content
            term = term * factor
        total = total + term
    return total


def schur_q(lam, N: int) -> Poly:
    lam = _as_partition(lam)
    return _tableau_sum(lam.parts, N, 0)


def factorial_schur_q(lam, N: int, sign="+") -> Poly:
    lam = _as_partition(lam)
    return _tableau_sum(lam.parts, N, _sign_value(sign))


def characterization_check(p: Poly, lam, N: int, sign="+") -> bool:
    """Top degree equals Q_lam and p vanishes at -mu (sign +) or +mu (sign -) for |mu| < |lam|."""
    lam = _as_partition(lam)
    s = _sign_value(sign)
    if not p:
        return False
    if N >= 2 and not is_supersymmetric(p):
        return False
    if top_degree_component(p) != schur_q(lam, N):
        return False
    for mu in strict_partitions_upto(lam.n - 1, max_length=N):
        point = [-s * m for m in mu.padded(N)]
        if p.evaluate(point) != 0:
            return False
    return True


def rank(vectors: list[dict]) -> int:
    """Rank over Q (or the surd field) of sparse vectors given as dicts."""
    rows = [dict(v) for v in vectors if v]
    r = 0
    pivots_done = []
    while rows:
        row = rows.pop()
        for key, pivot_row in pivots_done:
            c = row.get(key)
            if c:
                f = c / pivot_row[key]
                for k, v in pivot_row.items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if row:
            key = min(row)
            pivots_done.append((key, row))
            r += 1
    return r


def polys_independent(polys: list[Poly]) -> bool:
    vecs = [{e: Fraction(c) if isinstance(c, int) else c for e, c in p.terms.items()} for p in polys]
    return rank(vecs) == len(polys)
