"""Operators with algebra-valued entries stored as flat integer arrays.

Every coefficient is split over units sqrt(d) * i^k with rational parts sharing one
denominator.  A matrix is the list of tuples (row, column, key, unit, numerator),
where ``key`` is a monomial of the entry algebra (DiffOp or PBW).  Sums, scalar
multiples and products with scalar-valued operators then become numpy array work.
Numerators move to Python integers (object arrays) before they could overflow.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .scalars import from_units, unit_product, units

_SAFE = 2**40


def _index_parity(idx) -> int:
    return sum(1 for i in idx if i < 0) & 1


class Registry:
    """Shared ids for multi-indices, entry monomials and units."""

    def __init__(self):
        self.index_ids: dict = {}
        self.indices: list = []
        self.key_ids: dict = {}
        self.keys: list = []
        self.key_parity: list = []
        self.unit_ids: dict = {}
        self.units: list = []
        self._prod: dict = {}

    def index(self, idx) -> int:
        i = self.index_ids.get(idx)
        if i is None:
            i = self.index_ids[idx] = len(self.indices)
            self.indices.append(idx)
        return i

    def key(self, key, parity) -> int:
        i = self.key_ids.get(key)
        if i is None:
            i = self.key_ids[key] = len(self.keys)
            self.keys.append(key)
            self.key_parity.append(parity)
        return i

    def unit(self, u) -> int:
        i = self.unit_ids.get(u)
        if i is None:
            i = self.unit_ids[u] = len(self.units)
            self.units.append(u)
        return i

    def unit_tables(self, a_ids, b_ids):
        """(factor, product unit id) arrays for elementwise unit products."""
        pairs = np.stack([a_ids, b_ids], axis=1)
        uniq, inv = np.unique(pairs, axis=0, return_inverse=True)
        fac = np.empty(len(uniq), dtype=np.int64)
        pid = np.empty(len(uniq), dtype=np.int64)
        for t, (a, b) in enumerate(uniq.tolist()):
            hit = self._prod.get((a, b))
            if hit is None:
                f, w = unit_product(self.units[a], self.units[b])
                hit = self._prod[(a, b)] = (f, self.unit(w))
            fac[t], pid[t] = hit
        inv = inv.reshape(-1)
        return fac[inv], pid[inv]

    def parity_array(self, key_ids):
        return np.array(self.key_parity, dtype=np.int64)[key_ids] if len(key_ids) else key_ids


def _split(x):
    """(numerators by unit, denominator) of a scalar."""
    parts = units(x)
    den = 1
    for q in parts.values():
        den = lcm(den, q.denominator)
    return {u: int(q * den) for u, q in parts.items()}, den


def _bound(arr) -> int:
    if not len(arr):
        return 0
    if arr.dtype == object:
        return max(abs(x) for x in arr.tolist())
    return int(np.abs(arr).max())


def _mul(a, b):
    """Elementwise product that switches to Python integers when int64 could overflow."""
    if a.dtype != object and (not isinstance(b, np.ndarray) or b.dtype != object):
        bb = abs(int(b)) if not isinstance(b, np.ndarray) else _bound(b)
        if _bound(a) * bb < 2**62:
            return a * b
    a = a.astype(object)
    return a * (b.astype(object) if isinstance(b, np.ndarray) else b)


def _fit(arr):
    if arr.dtype != object and len(arr) and int(np.abs(arr).max()) >= _SAFE:
        return arr.astype(object)
    return arr


class UnitMatrix:
    """A graded matrix (entries in an algebra with ``graded_items``) in array form."""

    def __init__(self, reg, rows, cols, r, c, k, u, num, den, sample=None):
        self.reg = reg
        self.rows = rows
        self.cols = cols
        self.r, self.c, self.k, self.u = r, c, k, u
        self.num = _fit(num)
        self.den = den
        self.sample = sample

    @classmethod
    def from_operator(cls, op, reg: Registry):
        r, c, k, u, fr = [], [], [], [], []
        sample = None
        for (row, col), v in op.entries.items():
            sample = v
            ri, ci = reg.index(row), reg.index(col)
            for key, par, cf in v.graded_items():
                kid = reg.key(key, par)
                for unit, q in units(cf).items():
                    r.append(ri)
                    c.append(ci)
                    k.append(kid)
                    u.append(reg.unit(unit))
                    fr.append(q)
        den = 1
        for q in fr:
            den = lcm(den, q.denominator)
        num = np.array([int(q * den) for q in fr], dtype=object)
        if len(num) and max(abs(x) for x in num) < _SAFE:
            num = num.astype(np.int64)
        arr = lambda xs: np.array(xs, dtype=np.int64)  # noqa: E731
        return cls(reg, op.rows, op.cols, arr(r), arr(c), arr(k), arr(u), num, den, sample)

    def _like(self, r, c, k, u, num, den, rows=None, cols=None, sample=None):
        return UnitMatrix(
            self.reg, rows or self.rows, cols or self.cols, r, c, k, u, num, den, self.sample if sample is None else sample
        ).canonical()

    def __len__(self):
        return len(self.num)

    def canonical(self):
        if not len(self.num):
            return self
        nI = len(self.reg.indices)
        nK = len(self.reg.keys)
        nU = len(self.reg.units)
        code = ((self.r * nI + self.c) * nK + self.k) * nU + self.u
        uniq, inv = np.unique(code, return_inverse=True)
        summed = np.zeros(len(uniq), dtype=self.num.dtype)
        np.add.at(summed, inv, self.num)
        nz = summed != 0
        uniq, summed = uniq[nz], summed[nz]
        code, u = np.divmod(uniq, nU)
        code, k = np.divmod(code, nK)
        r, c = np.divmod(code, nI)
        self.r, self.c, self.k, self.u, self.num = r, c, k, u, _fit(summed)
        return self

    def is_zero(self) -> bool:
        return not len(self.canonical().num)

    def scale(self, x):
        parts, qden = _split(x)
        if not parts:
            return self._like(*(np.zeros(0, dtype=np.int64),) * 5, self.den)
        chunks = []
        for unit, q in parts.items():
            uid = np.full(len(self.u), self.reg.unit(unit), dtype=np.int64)
            fac, pid = self.reg.unit_tables(self.u, uid)
            chunks.append((pid, _mul(self.num, _mul(fac, q))))
        return self._like(
            np.concatenate([self.r] * len(chunks)),
            np.concatenate([self.c] * len(chunks)),
            np.concatenate([self.k] * len(chunks)),
            np.concatenate([p for p, _ in chunks]),
            np.concatenate([v for _, v in chunks]),
            self.den * qden,
        )

    def __neg__(self):
        return UnitMatrix(self.reg, self.rows, self.cols, self.r, self.c, self.k, self.u, -self.num, self.den, self.sample)

    def __add__(self, other: UnitMatrix):
        if other.reg is not self.reg:
            raise ValueError("matrices from different registries")
        den = lcm(self.den, other.den)
        a = _mul(self.num, den // self.den)
        b = _mul(other.num, den // other.den)
        if a.dtype == object or b.dtype == object:
            a, b = a.astype(object), b.astype(object)
        return self._like(
            np.concatenate([self.r, other.r]),
            np.concatenate([self.c, other.c]),
            np.concatenate([self.k, other.k]),
            np.concatenate([self.u, other.u]),
            np.concatenate([a, b]),
            den,
            sample=self.sample if self.sample is not None else other.sample,
        )

    def __sub__(self, other):
        return self + (-other)

    def times_scalar_operator(self, S, left: bool = False, diagonal_only: bool = False):
        """self * S (or S * self with ``left``) for an operator S with scalar entries."""
        reg = self.reg
        s_in, s_out, s_u, s_fr, s_flip = [], [], [], [], []
        for (row, col), v in S.entries.items():
            inner, outer = (row, col) if not left else (col, row)
            flip = -1 if (_index_parity(row) + _index_parity(col)) & 1 else 1
            for unit, q in units(v).items():
                s_in.append(reg.index(inner))
                s_out.append(reg.index(outer))
                s_u.append(reg.unit(unit))
                s_fr.append(q)
                s_flip.append(flip)
        sden = 1
        for q in s_fr:
            sden = lcm(sden, q.denominator)
        empty = np.zeros(0, dtype=np.int64)
        rows, cols = (self.rows, S.cols) if not left else (S.rows, self.cols)
        if not s_fr or not len(self.num):
            return UnitMatrix(reg, rows, cols, empty, empty, empty, empty, empty, 1, self.sample)
        s_num = _fit(np.array([int(q * sden) for q in s_fr], dtype=object))
        if s_num.dtype == object and max(abs(x) for x in s_num) < _SAFE:
            s_num = s_num.astype(np.int64)
        s_in = np.array(s_in, dtype=np.int64)
        order = np.argsort(s_in, kind="stable")
        s_in = s_in[order]
        s_out = np.array(s_out, dtype=np.int64)[order]
        s_u = np.array(s_u, dtype=np.int64)[order]
        s_num = s_num[order]
        s_flip = np.array(s_flip, dtype=np.int64)[order]
        nI = len(reg.indices)
        counts = np.bincount(s_in, minlength=nI)
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
        g_in = self.c if not left else self.r
        g_out = self.r if not left else self.c
        g_count = counts[g_in]
        par = reg.parity_array(self.k)
        rr, cc, kk, uu, vv = [], [], [], [], []
        for j in range(int(counts.max())):
            sel = np.nonzero(g_count > j)[0]
            if not len(sel):
                break
            sidx = starts[g_in[sel]] + j
            fac, pid = reg.unit_tables(self.u[sel], s_u[sidx])
            val = _mul(_mul(self.num[sel], s_num[sidx]), fac)
            if not left:
                # (E u)(E s) = (-1)^{|u|(|M|+|P|)} E E u s
                val = np.where(par[sel] == 1, val * s_flip[sidx], val)
                r_id, c_id = g_out[sel], s_out[sidx]
            else:
                r_id, c_id = s_out[sidx], g_out[sel]
            k_id = self.k[sel]
            if diagonal_only:
                keep = r_id == c_id
                r_id, c_id, k_id, pid, val = r_id[keep], c_id[keep], k_id[keep], pid[keep], val[keep]
            rr.append(r_id)
            cc.append(c_id)
            kk.append(k_id)
            uu.append(pid)
            vv.append(val)
        if not rr:
            return UnitMatrix(reg, rows, cols, empty, empty, empty, empty, empty, 1, self.sample)
        vals = [v.astype(object) for v in vv] if any(v.dtype == object for v in vv) else vv
        return self._like(
            np.concatenate(rr),
            np.concatenate(cc),
            np.concatenate(kk),
            np.concatenate(uu),
            np.concatenate(vals),
            self.den * sden,
            rows=rows,
            cols=cols,
        )

    def entries(self) -> dict:
        """{(row, col): {key: scalar}} with exact scalars."""
        reg = self.reg
        grouped: dict = {}
        for r, c, k, u, v in zip(
            self.r.tolist(), self.c.tolist(), self.k.tolist(), self.u.tolist(), self.num.tolist()
        ):
            grouped.setdefault((r, c), {}).setdefault(k, {})[reg.units[u]] = Fraction(v, self.den)
        out = {}
        for (r, c), per_key in grouped.items():
            out[(reg.indices[r], reg.indices[c])] = {
                reg.keys[k]: from_units(parts) for k, parts in per_key.items()
            }
        return out

    def to_operator(self):
        from .tensor_rep import SuperOperator

        if self.sample is None:
            return SuperOperator(self.rows, self.cols, {})
        return SuperOperator(
            self.rows,
            self.cols,
            {rc: self.sample.with_terms(t) for rc, t in self.entries().items()},
        )

    def supertrace(self):
        """Supertrace as {key: scalar}, using the parity of the row index."""
        reg = self.reg
        diag = self.r == self.c
        sign = np.array([(-1) ** _index_parity(reg.indices[i]) for i in self.r[diag].tolist()], dtype=np.int64)
        tr = UnitMatrix(
            reg, self.rows, self.cols,
            np.zeros(int(diag.sum()), dtype=np.int64), np.zeros(int(diag.sum()), dtype=np.int64),
            self.k[diag], self.u[diag], self.num[diag] * sign, self.den, self.sample,
        ).canonical()
        return next(iter(tr.entries().values()), {})


def gcd_reduce(m: UnitMatrix) -> UnitMatrix:
    """Divide numerators and denominator by their common factor."""
    if not len(m.num):
        return m
    g = m.den
    for x in m.num.tolist():
        g = gcd(g, x)
        if g == 1:
            return m
    m.num = m.num // g
    m.den //= g
    return m
