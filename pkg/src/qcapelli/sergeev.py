"""The Sergeev superalgebra: symmetric group times Clifford algebra.

Basis elements are ``sigma * c_1^e1 ... c_n^en`` with the permutation on the left.
A basis element is addressed by the integer ``perm_index << n | eps`` where bit
``b`` of ``eps`` stands for ``c_{b+1}``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial, lcm

import numpy as np

from .scalars import (
    SQRT2,
    GaussianSurd,
    I,
    Surd,
    from_units,
    inverse,
    narrow,
    scalar_from_json,
    scalar_to_json,
    sqrt_content,
    sqrt_rational,
    unit_product,
    units,
)
from .shifted import (
    BarredStandardTableau,
    StrictPartition,
    addable_boxes,
    all_barred_tableaux,
    dim_hat,
    dim_simple,
    enumerate_standard_barred,
    g_lambda,
    standard_tableaux,
)

# permutations are tuples p with p[x] = sigma(x), 0-based


def compose(p, q):
    """(p o q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def perm_inverse(p):
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def transposition(n: int, a: int, b: int):
    """The transposition (a, b), 1-based arguments."""
    p = list(range(n))
    p[a - 1], p[b - 1] = p[b - 1], p[a - 1]
    return tuple(p)


def _inversions(seq) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def _popcount(x: int) -> int:
    return bin(x).count("1")


def clifford_mul(a: int, b: int) -> tuple[int, int]:
    """c^a * c^b = sign * c^(a xor b) for bitmask monomials."""
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        swaps += _popcount(a & ~((low << 1) - 1))
        bb ^= low
    swaps += _popcount(a & b)
    return (-1 if swaps & 1 else 1), a ^ b


def _bits(eps: int, n: int) -> list[int]:
    return [b for b in range(n) if eps >> b & 1]


class SergeevAlgebra:
    """Basis bookkeeping and the structure constants of S_n."""

    DENSE_LIMIT = 4  # build the full multiplication table up to this n

    def __init__(self, n: int):
        self.n = n
        self.mask = (1 << n) - 1
        self.perms = sorted(permutations(range(n)))
        self.perm_index = {p: k for k, p in enumerate(self.perms)}
        self.size = len(self.perms) << n
        self._table = None

    def index(self, perm, eps: int = 0) -> int:
        return self.perm_index[tuple(perm)] << self.n | eps

    def split(self, idx: int):
        return self.perms[idx >> self.n], idx & self.mask

    @lru_cache(maxsize=None)
    def mul_basis(self, i: int, j: int) -> tuple[int, int]:
        """Product of basis elements: returns ``(sign, index)``."""
        n = self.n
        sigma, eps = self.split(i)
        tau, eta = self.split(j)
        # c^eps tau = tau c_{tau^-1(b1)} c_{tau^-1(b2)} ...
        tinv = perm_inverse(tau)
        moved = [tinv[b] for b in _bits(eps, n)]
        sign = -1 if _inversions(moved) & 1 else 1
        eps2 = 0
        for b in moved:
            eps2 |= 1 << b
        s2, eps3 = clifford_mul(eps2, eta)
        return sign * s2, self.perm_index[compose(sigma, tau)] << n | eps3

    def inverse_basis(self, i: int) -> tuple[int, int]:
        """h^-1 = sign * basis element."""
        sigma, eps = self.split(i)
        k = _popcount(eps)
        # (c_b1...c_bk)^-1 = (-1)^k c_bk ... c_b1 = (-1)^(k + k(k-1)/2) c^eps
        sign = -1 if (k + k * (k - 1) // 2) & 1 else 1
        cl = eps  # identity permutation has index 0
        s, idx = self.mul_basis(cl, self.index(perm_inverse(sigma)))
        return sign * s, idx

    def table(self):
        """Gather-form tables ``(linv, sgn)`` with ``h_i * h_linv[i,k] = sgn[i,k] * h_k``."""
        if self._table is None:
            if self.n > self.DENSE_LIMIT:
                raise ValueError("dense multiplication table only for n <= 4")
            G = self.size
            linv = np.zeros((G, G), dtype=np.int64)
            sgn = np.zeros((G, G), dtype=np.int64)
            for i in range(G):
                for j in range(G):
                    s, k = self.mul_basis(i, j)
                    linv[i, k] = j
                    sgn[i, k] = s
            self._table = (linv, sgn)
        return self._table


@lru_cache(maxsize=None)
def algebra(n: int) -> SergeevAlgebra:
    return SergeevAlgebra(n)


def _to_unit_arrays(terms: dict, size: int):
    """Split coefficients into units; each unit gets (integer array, denominator)."""
    parts: dict = {}
    for idx, c in terms.items():
        for u, q in units(c).items():
            parts.setdefault(u, {})[idx] = q
    out = {}
    for u, entries in parts.items():
        den = 1
        for q in entries.values():
            den = lcm(den, q.denominator)
        arr = np.zeros(size, dtype=object)
        for idx, q in entries.items():
            arr[idx] = int(q * den)
        out[u] = (arr, den)
    return out


def _gather_product(a, b, alg: SergeevAlgebra):
    linv, sgn = alg.table()
    amax = max(abs(int(x)) for x in a) if len(a) else 0
    bmax = max(abs(int(x)) for x in b) if len(b) else 0
    if amax * bmax * alg.size < 2**62:
        ai = a.astype(np.int64)
        bi = b.astype(np.int64)
        return (ai @ (sgn * bi[linv])).astype(object)
    return a @ (sgn.astype(object) * b[linv])


class SergeevElement:
    """Finite linear combination of basis elements with exact coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        for idx, c in (terms or {}).items():
            c = narrow(c)
            if c:
                clean[idx] = c
        self.terms = clean

    @property
    def alg(self) -> SergeevAlgebra:
        return algebra(self.n)

    @classmethod
    def _raw(cls, n, terms):
        e = cls.__new__(cls)
        e.n = n
        e.terms = terms
        return e

    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def one(cls, n):
        return cls._raw(n, {0: 1})

    @classmethod
    def basis(cls, n, perm=None, eps=0, coeff=1):
        perm = tuple(range(n)) if perm is None else tuple(perm)
        return cls(n, {algebra(n).index(perm, eps): coeff})

    def __iter__(self):
        for idx, c in self.terms.items():
            perm, eps = self.alg.split(idx)
            yield perm, eps, c

    def coefficient(self, perm, eps=0):
        return self.terms.get(self.alg.index(perm, eps), 0)

    def identity_coefficient(self):
        return self.terms.get(0, 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SergeevElement):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction, Surd, GaussianSurd)):
            return self == SergeevElement(self.n, {0: other})
        return NotImplemented

    __hash__ = None

    def _coerce(self, other):
        if isinstance(other, SergeevElement):
            if other.n != self.n:
                raise ValueError("elements of different Sergeev algebras")
            return other
        if isinstance(other, (int, Fraction, Surd, GaussianSurd)):
            return SergeevElement(self.n, {0: other})
        return None

    def __neg__(self):
        return SergeevElement._raw(self.n, {k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for k, c in o.terms.items():
            v = narrow(terms.get(k, 0) + c)
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return SergeevElement._raw(self.n, terms)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = narrow(c)
        if not c:
            return SergeevElement.zero(self.n)
        return SergeevElement._raw(self.n, {k: narrow(v * c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Surd, GaussianSurd)):
            return self.scale(other)
        if not isinstance(other, SergeevElement):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("elements of different Sergeev algebras")
        if (
            len(self.terms) * len(other.terms) > 6000
            and self.n <= SergeevAlgebra.DENSE_LIMIT
        ):
            return self._dense_mul(other)
        mul = self.alg.mul_basis
        acc: dict = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                s, k = mul(i, j)
                v = a * b
                acc[k] = acc.get(k, 0) + (v if s > 0 else -v)
        return SergeevElement(self.n, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Surd, GaussianSurd)):
            return self.scale(other)
        return NotImplemented

    def _dense_mul(self, other):
        alg = self.alg
        A = _to_unit_arrays(self.terms, alg.size)
        B = _to_unit_arrays(other.terms, alg.size)
        pieces: dict = {}
        for u, (a, da) in A.items():
            for v, (b, db) in B.items():
                f, w = unit_product(u, v)
                pieces.setdefault(w, []).append((Fraction(f, da * db), _gather_product(a, b, alg)))
        out_parts: dict = {}
        for w, lst in pieces.items():
            den = 1
            for s, _ in lst:
                den = lcm(den, s.denominator)
            total = sum(int(s * den) * vec for s, vec in lst)
            for k in np.nonzero(total)[0]:
                out_parts.setdefault(int(k), {})[w] = Fraction(int(total[k]), den)
        return SergeevElement(self.n, {k: from_units(p) for k, p in out_parts.items()})

    def __pow__(self, k: int):
        out = SergeevElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def is_even(self) -> bool:
        return all(_popcount(idx & self.alg.mask) % 2 == 0 for idx in self.terms)

    def is_odd(self) -> bool:
        return all(_popcount(idx & self.alg.mask) % 2 == 1 for idx in self.terms)

    def is_real(self) -> bool:
        return not any(isinstance(c, GaussianSurd) for c in self.terms.values())

    def conjugate_by(self, h: int):
        """h * self * h^-1 for a basis index h."""
        alg = self.alg
        s0, hinv = alg.inverse_basis(h)
        acc = {}
        for j, c in self.terms.items():
            s1, k = alg.mul_basis(h, j)
            s2, m = alg.mul_basis(k, hinv)
            acc[m] = c if s0 * s1 * s2 > 0 else -c
        return SergeevElement._raw(self.n, acc)

    def __repr__(self):
        return f"SergeevElement(n={self.n}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx in sorted(self.terms):
            perm, eps = self.alg.split(idx)
            word = []
            if perm != tuple(range(self.n)):
                word.append("[" + "".join(str(x + 1) for x in perm) + "]")
            word += [f"c{b + 1}" for b in _bits(eps, self.n)]
            parts.append(f"({self.terms[idx]})" + ("*" + "*".join(word) if word else ""))
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        out = []
        for idx in sorted(self.terms):
            perm, eps = self.alg.split(idx)
            out.append(
                {
                    "perm": [x + 1 for x in perm],
                    "eps": [eps >> b & 1 for b in range(self.n)],
                    "coeff": scalar_to_json(self.terms[idx]),
                }
            )
        return out

    @classmethod
    def from_json(cls, n: int, obj: list[dict]):
        alg = algebra(n)
        terms = {}
        for t in obj:
            eps = sum(bit << b for b, bit in enumerate(t["eps"]))
            terms[alg.index([x - 1 for x in t["perm"]], eps)] = scalar_from_json(t["coeff"])
        return cls(n, terms)


# generators


def s(a: int, n: int) -> SergeevElement:
    return SergeevElement.basis(n, transposition(n, a, a + 1))


def c(a: int, n: int) -> SergeevElement:
    return SergeevElement.basis(n, eps=1 << (a - 1))


def perm_element(perm, n: int) -> SergeevElement:
    return SergeevElement.basis(n, perm)


def jm(b: int, n: int) -> SergeevElement:
    """x_b = sum_{a<b} (a,b)(1 + c_a c_b)."""
    alg = algebra(n)
    terms = {}
    for a in range(1, b):
        p = transposition(n, a, b)
        terms[alg.index(p)] = 1
        terms[alg.index(p, (1 << (a - 1)) | (1 << (b - 1)))] = 1
    return SergeevElement(n, terms)


def t(a: int, n: int) -> SergeevElement:
    """Odd generator t_a with s_a = t_a (c_{a+1} - c_a) / sqrt 2."""
    return (s(a, n) * (c(a + 1, n) - c(a, n))).scale(-inverse(SQRT2))


def t_pair(a: int, b: int, n: int) -> SergeevElement:
    if a > b:
        return -t_pair(b, a, n)
    out = t(a, n)
    for k in range(a + 1, b):
        tk = t(k, n)
        out = tk * out * tk
    return out.scale(-1 if (b - a - 1) % 2 else 1)


def odd_jm(b: int, n: int) -> SergeevElement:
    out = SergeevElement.zero(n)
    for a in range(1, b):
        out = out + t_pair(a, b, n)
    return out


def _addable_contents(mu: StrictPartition) -> list[Surd]:
    vals = []
    for box in addable_boxes(mu):
        r = sqrt_content(box.content)
        vals.append(r)
        if box.content:
            vals.append(-r)
    return vals


@lru_cache(maxsize=None)
def _idempotent_cached(rows, bars) -> SergeevElement:
    U = BarredStandardTableau(StrictPartition(tuple(len(r) for r in rows)), rows, bars)
    n = U.n
    if n == 0:
        return SergeevElement.one(0)
    if n == 1:
        return SergeevElement.one(1)
    V = U.remove_last()
    eV = idempotent(V)
    # embed e_V from S_{n-1} into S_n
    prev = algebra(n - 1)
    alg = algebra(n)
    out = SergeevElement(
        n,
        {alg.index(prev.split(i)[0] + (n - 1,), prev.split(i)[1]): cf for i, cf in eV.terms.items()},
    )
    kappa = U.signed_content(n)
    bs = _addable_contents(V.shape)
    bs.remove(kappa)
    x = jm(n, n)
    for b in bs:
        denom = kappa - b
        if not denom:
            raise ZeroDivisionError(f"coinciding signed contents in {U}")
        out = out * (x - b).scale(inverse(denom))
    return out


def idempotent(U: BarredStandardTableau) -> SergeevElement:
    return _idempotent_cached(U.rows, U.bars)


def embed(e: SergeevElement, n: int) -> SergeevElement:
    """Image of e under the inclusion S_m -> S_n fixing the extra points."""
    m = e.n
    if m == n:
        return e
    src, dst = algebra(m), algebra(n)
    tail = tuple(range(m, n))
    return SergeevElement._raw(
        n, {dst.index(src.split(i)[0] + tail, src.split(i)[1]): cf for i, cf in e.terms.items()}
    )


def clifford_idempotent(U: BarredStandardTableau, delta) -> SergeevElement:
    n = U.n
    ell = U.shape.length
    m = ell // 2
    delta = list(delta)
    if len(delta) != m:
        raise ValueError(f"delta must have length {m} for a shape of length {ell}")
    if any(d not in (1, -1) for d in delta):
        raise ValueError("delta entries must be +1 or -1")
    d = U.diagonal_entries()
    out = SergeevElement.one(n)
    half = Fraction(1, 2)
    for a in range(m):
        cc = c(d[2 * a], n) * c(d[2 * a + 1], n)
        out = out * (SergeevElement.one(n) + cc.scale(I * delta[a])).scale(half)
    return out


def all_basis_indices(n: int) -> range:
    return range(algebra(n).size)


def conjugation_sum(V: BarredStandardTableau) -> SergeevElement:
    """Sum of h e_V h^-1 over all basis elements h."""
    eV = idempotent(V)
    n = V.n
    acc: dict = {}
    for h in all_basis_indices(n):
        for k, cf in eV.conjugate_by(h).terms.items():
            acc[k] = acc.get(k, 0) + cf
    return SergeevElement(n, acc)


def character_element(lam: StrictPartition, V: BarredStandardTableau | None = None) -> SergeevElement:
    """chi^lam = 2^-floor(l/2) * sum_h h e_V h^-1."""
    if V is None:
        V = enumerate_standard_barred(lam)[0]
    if V.shape != lam:
        raise ValueError("tableau of the wrong shape")
    return conjugation_sum(V).scale(Fraction(1, 2 ** (lam.length // 2)))


def shape_sum(lam: StrictPartition) -> SergeevElement:
    out = SergeevElement.zero(lam.n)
    for U in enumerate_standard_barred(lam):
        out = out + idempotent(U)
    return out


# The module hat U^lambda with basis c^eps v_T


def _mat_identity(dim):
    return [{k: 1} for k in range(dim)]


def matvec(mat, vec: dict) -> dict:
    out: dict = {}
    for k, a in vec.items():
        for r, b in mat[k].items():
            out[r] = out.get(r, 0) + a * b
    return {r: narrow(v) for r, v in out.items() if v}


def matmul(A, B):
    return [matvec(A, col) for col in B]


def mat_add(A, B):
    out = []
    for ca, cb in zip(A, B):
        col = dict(ca)
        for r, v in cb.items():
            col[r] = col.get(r, 0) + v
        out.append({r: narrow(v) for r, v in col.items() if v})
    return out


def mat_scale(A, s):
    return [{r: narrow(v * s) for r, v in col.items()} for col in A]


def mat_eq(A, B) -> bool:
    return all(
        {r: v for r, v in ca.items() if v} == {r: v for r, v in cb.items() if v}
        for ca, cb in zip(A, B)
    )


class HatModule:
    """Generator matrices of hat U^lambda; basis index = tableau_index << n | eps."""

    def __init__(self, lam: StrictPartition):
        self.lam = lam
        self.n = n = lam.n
        self.tableaux = standard_tableaux(lam)
        self.t_index = {T.rows: k for k, T in enumerate(self.tableaux)}
        self.dim = len(self.tableaux) << n
        self.s = [self._s_matrix(a) for a in range(1, n)]
        self.c = [self._c_matrix(b) for b in range(1, n + 1)]
        self._perm_mats = None
        self._x = None

    def vector_index(self, T, eps=0) -> int:
        return self.t_index[T.rows] << self.n | eps

    def _kappa(self, T, a):
        return sqrt_content(T.content(a))

    def _c_matrix(self, b):
        bit = 1 << (b - 1)
        cols = []
        for k in range(self.dim):
            sgn, eps = clifford_mul(bit, k & ((1 << self.n) - 1))
            cols.append({(k >> self.n) << self.n | eps: sgn})
        return cols

    def _s_on_tableau(self, a):
        """s_a v_T as a list of (coefficient, clifford bits, tableau index)."""
        out = []
        for T in self.tableaux:
            u, v = self._kappa(T, a), self._kappa(T, a + 1)
            terms = [(inverse(v - u), 0, T)]
            terms.append((inverse(v + u), (1 << (a - 1)) | (1 << a), T))
            rows = [[a + 1 if x == a else a if x == a + 1 else x for x in row] for row in T.rows]
            sT = BarredStandardTableau(self.lam, rows)
            if sT.is_valid():
                A = 1 - 2 * (u * u + v * v) / ((u * u - v * v) ** 2)
                terms.append((sqrt_rational(to_fraction(A)), 0, sT))
            out.append(terms)
        return out

    def _s_matrix(self, a):
        n = self.n
        on_t = self._s_on_tableau(a)
        cols = []
        for k in range(self.dim):
            ti, eps = k >> n, k & ((1 << n) - 1)
            # s_a c^eps = sign c^{s_a(eps)} s_a
            seq = [a if b == a - 1 else a - 1 if b == a else b for b in _bits(eps, n)]
            sign = -1 if _inversions(seq) & 1 else 1
            eps2 = sum(1 << b for b in seq)
            col: dict = {}
            for coeff, bits, T in on_t[ti]:
                s2, e3 = clifford_mul(eps2, bits)
                r = self.t_index[T.rows] << n | e3
                col[r] = col.get(r, 0) + coeff * sign * s2
            cols.append({r: narrow(v) for r, v in col.items() if v})
        return cols

    def perm_matrices(self):
        """Matrices of all permutations, by breadth-first products of the s_a."""
        if self._perm_mats is None:
            n = self.n
            ident = tuple(range(n))
            mats = {ident: _mat_identity(self.dim)}
            frontier = [ident]
            while frontier:
                nxt = []
                for p in frontier:
                    for a in range(1, n):
                        q = compose(transposition(n, a, a + 1), p)
                        if q not in mats:
                            mats[q] = matmul(self.s[a - 1], mats[p])
                            nxt.append(q)
                frontier = nxt
            self._perm_mats = mats
        return self._perm_mats

    def act(self, e: SergeevElement, vec: dict) -> dict:
        n = self.n
        mats = self.perm_matrices()
        by_perm: dict = {}
        for idx, cf in e.terms.items():
            perm, eps = e.alg.split(idx)
            w = by_perm.setdefault(perm, {})
            for k, v in vec.items():
                sg, e2 = clifford_mul(eps, k & ((1 << n) - 1))
                r = (k >> n) << n | e2
                w[r] = w.get(r, 0) + cf * v * sg
        out: dict = {}
        for perm, w in by_perm.items():
            for r, v in matvec(mats[perm], w).items():
                out[r] = out.get(r, 0) + v
        return {r: narrow(v) for r, v in out.items() if v}

    def matrix_of(self, e: SergeevElement):
        return [self.act(e, {k: 1}) for k in range(self.dim)]

    def x_matrices(self):
        if self._x is None:
            self._x = [self.matrix_of(jm(b, self.n)) for b in range(1, self.n + 1)]
        return self._x

    def barred_vector(self, U: BarredStandardTableau) -> dict:
        """v_U = c_{a1} ... c_{ar} v_T for the barred entries a1 < ... < ar."""
        eps = sum(1 << (a - 1) for a in U.bars)
        return {self.vector_index(U.unbarred(), eps): 1}

    def trace(self, e: SergeevElement):
        total = 0
        for k in range(self.dim):
            total = total + self.act(e, {k: 1}).get(k, 0)
        return narrow(total)

    def trace_basis(self, h: int):
        """Trace of a single basis element (cheap: Clifford part is monomial)."""
        n = self.n
        alg = algebra(n)
        perm, eps = alg.split(h)
        M = self.perm_matrices()[perm]
        total = 0
        for k in range(self.dim):
            sg, e2 = clifford_mul(eps, k & ((1 << n) - 1))
            r = (k >> n) << n | e2
            v = M[r].get(k)
            if v:
                total = total + (v if sg > 0 else -v)
        return narrow(total)


def to_fraction(x) -> Fraction:
    x = narrow(x)
    if isinstance(x, (Surd, GaussianSurd)):
        raise ValueError(f"{x} is not rational")
    return Fraction(x)


@lru_cache(maxsize=None)
def module_matrices(lam: StrictPartition) -> HatModule:
    return HatModule(lam)


def check_module_relations(mod: HatModule) -> list[str]:
    """Defining relations of S_n on the generator matrices; returns failures."""
    n, dim = mod.n, mod.dim
    one = _mat_identity(dim)
    minus = mat_scale(one, -1)
    S, C = mod.s, mod.c
    bad = []
    for a in range(n - 1):
        if not mat_eq(matmul(S[a], S[a]), one):
            bad.append(f"s{a + 1}^2")
        for b in range(a + 1, n - 1):
            if b == a + 1:
                lhs = matmul(S[a], matmul(S[b], S[a]))
                rhs = matmul(S[b], matmul(S[a], S[b]))
            else:
                lhs, rhs = matmul(S[a], S[b]), matmul(S[b], S[a])
            if not mat_eq(lhs, rhs):
                bad.append(f"s{a + 1},s{b + 1}")
    for a in range(n):
        if not mat_eq(matmul(C[a], C[a]), minus):
            bad.append(f"c{a + 1}^2")
        for b in range(a + 1, n):
            if not mat_eq(matmul(C[a], C[b]), mat_scale(matmul(C[b], C[a]), -1)):
                bad.append(f"c{a + 1}c{b + 1}")
    for a in range(n - 1):
        for b in range(n):
            target = a + 1 if b == a else a if b == a + 1 else b
            if not mat_eq(matmul(S[a], C[b]), matmul(C[target], S[a])):
                bad.append(f"s{a + 1}c{b + 1}")
    return bad


# exact linear algebra over the coefficient field


def row_reduce(vectors: list[dict]) -> list[tuple[int, dict]]:
    """Echelon basis as (pivot, normalized vector) pairs."""
    basis: list[tuple[int, dict]] = []
    for v in vectors:
        r = reduce_against(basis, v)
        if r:
            p = min(r)
            f = inverse(r[p])
            basis.append((p, {k: narrow(x * f) for k, x in r.items()}))
    return basis


def reduce_against(basis, v: dict) -> dict:
    r = dict(v)
    for p, b in basis:
        cf = r.get(p)
        if cf:
            for k, x in b.items():
                y = narrow(r.get(k, 0) - cf * x)
                if y:
                    r[k] = y
                else:
                    r.pop(k, None)
    return r


def _clifford_vector(mod: HatModule, e: SergeevElement, vec: dict) -> dict:
    return mod.act(e, vec)


def deltas(lam: StrictPartition):
    return list(product((1, -1), repeat=lam.length // 2))


def submodule_basis(lam: StrictPartition, delta) -> list[dict]:
    """Vectors c_{d_j1}...c_{d_js} E_delta v_U, j's odd, spanning U^lambda_delta."""
    mod = module_matrices(lam)
    n, ell = lam.n, lam.length
    odd_js = list(range(1, ell + 1, 2))
    out = []
    for U in enumerate_standard_barred(lam):
        base = mod.act(clifford_idempotent(U, delta), mod.barred_vector(U))
        d = U.diagonal_entries()
        for k in range(len(odd_js) + 1):
            for js in combinations(odd_js, k):
                mono = SergeevElement.one(n)
                for j in js:
                    mono = mono * c(d[j - 1], n)
                out.append(mod.act(mono, base))
    return out


def split_pm(lam: StrictPartition, delta) -> tuple[list[dict], list[dict]]:
    ell = lam.length
    if ell % 2 == 0:
        raise ValueError("the two-way split needs a shape of odd length")
    mod = module_matrices(lam)
    n = lam.n
    odd_js = list(range(1, ell - 1, 2))
    plus, minus = [], []
    for U in enumerate_standard_barred(lam):
        d = U.diagonal_entries()
        r = len(U.bars)
        E = clifford_idempotent(U, delta)
        cl = c(d[ell - 1], n).scale(I * (-1) ** r)
        for sign, bucket in ((1, plus), (-1, minus)):
            proj = (SergeevElement.one(n) + cl.scale(sign)).scale(Fraction(1, 2))
            base = mod.act(E * proj, mod.barred_vector(U))
            for k in range(len(odd_js) + 1):
                for js in combinations(odd_js, k):
                    mono = SergeevElement.one(n)
                    for j in js:
                        mono = mono * c(d[j - 1], n)
                    bucket.append(mod.act(mono, base))
    return plus, minus


def is_invariant(mod: HatModule, vectors: list[dict]) -> bool:
    basis = row_reduce(vectors)
    for g in mod.s + mod.c:
        for _, v in basis:
            if reduce_against(basis, matvec(g, v)):
                return False
    return True


def rank(vectors: list[dict]) -> int:
    return len(row_reduce(vectors))


def character_from_traces(lam: StrictPartition) -> SergeevElement:
    """sum_h chi(h) h^-1 with chi(h) read off as a trace on hat U^lambda.

    hat U^lambda holds 2^floor(l/2) copies of U^lambda, so the trace is divided by that.
    """
    mod = module_matrices(lam)
    alg = algebra(lam.n)
    copies = Fraction(1, 2 ** (lam.length // 2))
    acc: dict = {}
    for h in range(alg.size):
        tr = mod.trace_basis(h)
        if tr:
            sg, hinv = alg.inverse_basis(h)
            acc[hinv] = acc.get(hinv, 0) + tr * copies * sg
    return SergeevElement(lam.n, acc)
