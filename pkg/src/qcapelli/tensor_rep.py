"""Graded operators on tensor powers of C^{N|N} and the Sergeev action on them.

An operator is stored as its matrix on the tensor basis (the action on actual
vectors, Koszul signs already applied).  Entries may come from any ring whose
elements either are plain scalars (parity 0) or expose ``parity_parts()``.
For entries ``u`` of parity ``|u|`` the product rule is

    (E_KL u)(E_MP w) = (-1)^{|u|(|M|+|P|)} E_KL E_MP  u w.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .polynomials import Poly
from .scalars import from_units, narrow, units
from .sergeev import (
    SergeevElement,
    algebra,
    compose,
    idempotent,
    jm,
    transposition,
)
from .schur_q import schur_q
from .shifted import StrictPartition


def slot_values(K: int) -> list[int]:
    return list(range(-K, 0)) + list(range(1, K + 1))


def bar(i: int) -> int:
    return 1 if i < 0 else 0


@lru_cache(maxsize=None)
def index_parity(idx: tuple) -> int:
    return sum(1 for i in idx if i < 0) & 1


class TensorSpace:
    """Basis of C^{K1|K1} x ... x C^{Kn|Kn}, multi-indices in lexicographic order."""

    def __init__(self, dims):
        self.dims = tuple(dims)
        self.basis = list(product(*[slot_values(K) for K in self.dims]))
        self.index = {b: k for k, b in enumerate(self.basis)}

    @property
    def n(self) -> int:
        return len(self.dims)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        return isinstance(other, TensorSpace) and self.dims == other.dims

    def __hash__(self):
        return hash(self.dims)

    def replace(self, slot: int, K: int) -> TensorSpace:
        dims = list(self.dims)
        dims[slot - 1] = K
        return tensor_space(tuple(dims))


@lru_cache(maxsize=None)
def tensor_space(dims) -> TensorSpace:
    return TensorSpace(dims)


def power_space(N: int, n: int) -> TensorSpace:
    return tensor_space((N,) * n)


def parity_parts(x):
    if hasattr(x, "parity_parts"):
        return x.parity_parts()
    return [(0, x)]


def _is_zero(x) -> bool:
    return not x


def _sum_terms(items: list):
    """Sum a list of entries, using a bulk ``sum_of`` when the entry type has one."""
    if len(items) == 1:
        return items[0]
    for x in items:
        if hasattr(x, "sum_of"):
            return type(x).sum_of(items)
    total = items[0]
    for x in items[1:]:
        total = total + x
    return total


class SuperOperator:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: TensorSpace, cols: TensorSpace, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {k: v for k, v in (entries or {}).items() if not _is_zero(v)}

    @classmethod
    def identity(cls, space: TensorSpace, coeff=1):
        return cls(space, space, {(b, b): coeff for b in space.basis})

    @classmethod
    def zero(cls, rows, cols=None):
        return cls(rows, cols or rows, {})

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        if not isinstance(other, SuperOperator):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and (self - other).entries == {}
        )

    __hash__ = None

    def __neg__(self):
        return SuperOperator(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __add__(self, other):
        if not isinstance(other, SuperOperator):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("operators between different spaces")
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = acc[k] + v if k in acc else v
        return SuperOperator(self.rows, self.cols, acc)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Multiply every entry on the right by an even scalar."""
        return SuperOperator(self.rows, self.cols, {k: v * c for k, v in self.entries.items()})

    def map_entries(self, f):
        return SuperOperator(self.rows, self.cols, {k: f(v) for k, v in self.entries.items()})

    def __matmul__(self, other):
        return self.__mul__(other)

    def __mul__(self, other):
        if not isinstance(other, SuperOperator):
            return self.scale(other)
        if self.cols != other.rows:
            raise ValueError("incompatible operator shapes")
        fast = _scalar_side_product(self, other)
        if fast is not None:
            return fast
        by_row: dict = {}
        for (m, col), v in other.entries.items():
            by_row.setdefault(m, []).append((col, v, index_parity(col)))
        acc: dict = {}
        for (r, m), u in self.entries.items():
            lst = by_row.get(m)
            if not lst:
                continue
            pm = index_parity(m)
            parts = parity_parts(u)
            for col, v, pc in lst:
                for pu, uu in parts:
                    term = uu * v
                    if pu and (pm + pc) & 1:
                        term = -term
                    acc.setdefault((r, col), []).append(term)
        return SuperOperator(self.rows, other.cols, {k: _sum_terms(v) for k, v in acc.items()})

    def supertrace(self):
        if self.rows != self.cols:
            raise ValueError("supertrace of a non-square operator")
        total = 0
        for (r, col), v in self.entries.items():
            if r == col:
                total = total - v if index_parity(r) else total + v
        return total

    def is_even(self) -> bool:
        for (r, col), v in self.entries.items():
            for p, _ in parity_parts(v):
                if (p + index_parity(r) + index_parity(col)) & 1:
                    return False
        return True

    def __repr__(self):
        return f"SuperOperator({self.rows.dims}<-{self.cols.dims}, {len(self.entries)} entries)"


def _is_scalar_operator(op) -> bool:
    return all(not hasattr(v, "graded_items") for v in op.entries.values())


def _is_graded_operator(op) -> bool:
    vals = list(op.entries.values())
    return bool(vals) and all(hasattr(v, "graded_items") for v in vals)


def _scalar_side_product(A: SuperOperator, B: SuperOperator, diagonal_only: bool = False):
    """A * B through integer unit arrays when one factor has algebra-valued entries
    and the other plain scalars; None when that is not the case."""
    from .unit_arrays import Registry, UnitMatrix

    if _is_graded_operator(A) and _is_scalar_operator(B) and B.entries:
        m = UnitMatrix.from_operator(A, Registry())
        out = m.times_scalar_operator(B, diagonal_only=diagonal_only)
    elif _is_scalar_operator(A) and _is_graded_operator(B) and A.entries:
        m = UnitMatrix.from_operator(B, Registry())
        out = m.times_scalar_operator(A, left=True, diagonal_only=diagonal_only)
    else:
        return None
    return out.to_operator()


def supertrace_of_product(A: SuperOperator, B: SuperOperator):
    """str(A B) computed from the diagonal of the product only."""
    if A.cols != B.rows or A.rows != B.cols:
        raise ValueError("incompatible operator shapes")
    fast = _scalar_side_product(A, B, diagonal_only=True)
    if fast is None:
        by_row: dict = {}
        for (m, col), v in B.entries.items():
            by_row.setdefault(m, []).append((col, v))
        diag = {}
        for (r, m), u in A.entries.items():
            for col, v in by_row.get(m, []):
                if col == r:
                    term = SuperOperator(A.rows, A.rows, {(r, m): u}) * SuperOperator(A.rows, A.rows, {(m, r): v})
                    for k, x in term.entries.items():
                        diag.setdefault(k, []).append(x)
        fast = SuperOperator(A.rows, B.cols, {k: _sum_terms(v) for k, v in diag.items()})
    return fast.supertrace()


def local_operator(space: TensorSpace, slot: int, i: int, j: int, coeff=1, target_dim=None):
    """1 x ... x E_ij x ... x 1 (at ``slot``, 1-based) tensored with ``coeff``.

    ``target_dim`` changes the size of the slot in the codomain (rectangular units).
    """
    rows = space if target_dim is None else space.replace(slot, target_dim)
    p_unit = bar(i) ^ bar(j)
    entries = {}
    for b in space.basis:
        if b[slot - 1] != j:
            continue
        sign = -1 if p_unit and sum(bar(x) for x in b[: slot - 1]) & 1 else 1
        nb = b[: slot - 1] + (i,) + b[slot:]
        entries[(nb, b)] = coeff if sign > 0 else -coeff
    return SuperOperator(rows, space, entries)


def j_matrix(n: int, N: int, a: int) -> SuperOperator:
    """J_a with J = sum_i E_{i,-i} (-1)^{bar i}."""
    V = power_space(N, n)
    out = SuperOperator.zero(V)
    for i in slot_values(N):
        out = out + local_operator(V, a, i, -i, -1 if i < 0 else 1)
    return out


def p_matrix(n: int, N: int, a: int, b: int) -> SuperOperator:
    """P_ab = sum_{i,j} E_ij (slot a) E_ji (slot b) (-1)^{bar j}."""
    V = power_space(N, n)
    out = SuperOperator.zero(V)
    for i in slot_values(N):
        for j in slot_values(N):
            term = local_operator(V, a, i, j) * local_operator(V, b, j, i)
            out = out + (term.scale(-1) if j < 0 else term)
    return out


def y_matrix(N: int, n: int = 1, a: int = 1) -> SuperOperator:
    """Y_a with Y = sum_i y_{|i|} E_ii (-1)^{bar i}, entries in Poly."""
    V = power_space(N, n)
    ys = Poly.variables(N)
    out = SuperOperator.zero(V)
    for i in slot_values(N):
        y = ys[abs(i) - 1]
        out = out + local_operator(V, a, i, i, -y if i < 0 else y)
    return out


def jm_image(b: int, n: int, N: int) -> SuperOperator:
    """sum_{a<b} P_ab (1 + J_a J_b), built from the defining formulas."""
    V = power_space(N, n)
    out = SuperOperator.zero(V)
    one = SuperOperator.identity(V)
    for a in range(1, b):
        out = out + p_matrix(n, N, a, b) * (one + j_matrix(n, N, a) * j_matrix(n, N, b))
    return out


# signed permutation images of the Sergeev basis


class _SignedPerms:
    """For every basis element h: target index and sign of h acting on each basis vector."""

    def __init__(self, n: int, N: int):
        self.n, self.N = n, N
        V = power_space(N, n)
        self.space = V
        D = len(V)

        def from_operator(op):
            tgt = np.full(D, -1, dtype=np.int64)
            sgn = np.zeros(D, dtype=np.int64)
            for (r, col), v in op.entries.items():
                k = V.index[col]
                if tgt[k] != -1 or v not in (1, -1):
                    raise ValueError("operator is not a signed permutation")
                tgt[k] = V.index[r]
                sgn[k] = int(v)
            if (tgt < 0).any():
                raise ValueError("operator is not a signed permutation")
            return tgt, sgn

        ident = (np.arange(D), np.ones(D, dtype=np.int64))
        Js = [from_operator(j_matrix(n, N, a)) for a in range(1, n + 1)]
        Ss = [from_operator(p_matrix(n, N, a, a + 1)) for a in range(1, n)]

        def comp(A, B):
            return A[0][B[0]], A[1][B[0]] * B[1]

        perms = {tuple(range(n)): ident}
        frontier = [tuple(range(n))]
        while frontier:
            nxt = []
            for p in frontier:
                for a in range(1, n):
                    q = compose(transposition(n, a, a + 1), p)
                    if q not in perms:
                        perms[q] = comp(Ss[a - 1], perms[p])
                        nxt.append(q)
            frontier = nxt
        alg = algebra(n)
        G = alg.size
        self.tgt = np.zeros((G, D), dtype=np.int64)
        self.sgn = np.zeros((G, D), dtype=np.int64)
        for h in range(G):
            perm, eps = alg.split(h)
            img = ident
            for b in reversed(range(n)):
                if eps >> b & 1:
                    img = comp(Js[b], img)
            img = comp(perms[perm], img)
            self.tgt[h], self.sgn[h] = img
        fixed = self.tgt == np.arange(D)[None, :]
        self.fixed_sign = np.where(fixed, self.sgn, 0)


@lru_cache(maxsize=None)
def signed_perms(n: int, N: int) -> _SignedPerms:
    return _SignedPerms(n, N)


def sergeev_to_operator(e: SergeevElement, N: int) -> SuperOperator:
    """Image of a Sergeev element: c_a -> J_a, (a,b) -> P_ab."""
    sp = signed_perms(e.n, N)
    V = sp.space
    acc: dict = {}
    for h, cf in e.terms.items():
        tgt, sgn = sp.tgt[h], sp.sgn[h]
        for k in range(len(V)):
            key = (V.basis[tgt[k]], V.basis[k])
            v = cf if sgn[k] > 0 else -cf
            acc[key] = acc[key] + v if key in acc else v
    return SuperOperator(V, V, {k: narrow(v) for k, v in acc.items()})


def operator_diagonal(e: SergeevElement, N: int) -> list:
    """Diagonal entries of the image of ``e``, computed for all basis vectors at once."""
    sp = signed_perms(e.n, N)
    G = algebra(e.n).size
    per_unit: dict = {}
    for h, cf in e.terms.items():
        for u, q in units(cf).items():
            per_unit.setdefault(u, {})[h] = q
    D = len(sp.space)
    diag: list[dict] = [dict() for _ in range(D)]
    for u, coeffs in per_unit.items():
        den = 1
        for q in coeffs.values():
            den = den * q.denominator // np.gcd(den, q.denominator)
        vec = np.zeros(G, dtype=np.int64)
        for h, q in coeffs.items():
            vec[h] = int(q * den)
        vals = vec @ sp.fixed_sign
        for k in np.nonzero(vals)[0]:
            diag[k][u] = Fraction(int(vals[k]), den)
    return [from_units(d) if d else 0 for d in diag]


def supertrace_with_y(e: SergeevElement, N: int) -> Poly:
    """str( image(e) Y_1 ... Y_n ) as a polynomial in y_1..y_N.

    Y_1...Y_n is diagonal with entry prod_a (-1)^{bar j_a} y_{|j_a|}; that sign cancels the
    supertrace sign, leaving sum_J image(e)_{JJ} prod_a y_{|j_a|}.
    """
    V = signed_perms(e.n, N).space
    diag = operator_diagonal(e, N)
    acc: dict = {}
    for b, d in zip(V.basis, diag):
        if not d:
            continue
        exps = [0] * N
        for j in b:
            exps[abs(j) - 1] += 1
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + d
    return Poly(N, acc)


def supertrace_with_y_direct(e: SergeevElement, N: int) -> Poly:
    """The same supertrace through full operator products (slow; small cases only)."""
    n = e.n
    V = power_space(N, n)
    op = sergeev_to_operator(e, N).map_entries(lambda v: Poly.constant(N, v))
    for a in range(1, n + 1):
        op = op * y_matrix(N, n, a)
    tr = op.supertrace()
    return tr if isinstance(tr, Poly) else Poly.constant(N, tr)


def character_identity(lam: StrictPartition, U, N: int) -> tuple[Poly, Poly]:
    return supertrace_with_y(idempotent(U), N), schur_q(lam, N)


def conjugated_supertrace(V_tab, h: int, N: int) -> Poly:
    """str( H E_V H^-1 Y_1...Y_n ) for the image H of basis element h."""
    return supertrace_with_y(idempotent(V_tab).conjugate_by(h), N)
