"""Polynomials in the supercommuting variables x_ak and differential operators on them.

Variables x_ak have a in {-M..-1, 1..M}, k in 1..N and parity bar(a).  They are
ordered lexicographically in (a, k), so the odd ones come first.  A differential
operator is kept in the normal form  sum c x^alpha d^beta  with all x's to the left.
d_ka denotes the left derivation d/dx_ak.

The module also builds the X and D matrices and checks the Capelli-type identities
relating products of generator matrices to X_1...X_n D_1...D_n.
"""

from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from itertools import product as _cartesian
from math import factorial

from .polynomials import Poly
from .scalars import I, GaussianSurd, Surd, narrow, scalar_to_json
from .sergeev import character_element, idempotent
from .shifted import BarredStandardTableau, StrictPartition, enumerate_standard_barred
from .unit_arrays import Registry, UnitMatrix
from .tensor_rep import (
    SuperOperator,
    bar,
    jm_image,
    local_operator,
    power_space,
    sergeev_to_operator,
    slot_values,
    supertrace_of_product,
    tensor_space,
)
from .uqn import (
    PBWElement,
    QGenerator,
    canonical,
    generator_matrix_F,
    odd_jm_image,
    q_algebra,
    quantum_immanant,
)

_SCALARS = (int, Fraction, Surd, GaussianSurd)


def _acc(d: dict, key, c):
    v = d.get(key, 0) + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


class WeylAlgebra:
    """Variable bookkeeping and the memoized normal-ordering rules for fixed M, N."""

    def __init__(self, M: int, N: int):
        self.M = M
        self.N = N
        self.vars = [(a, k) for a in slot_values(M) for k in range(1, N + 1)]
        self.index = {v: p for p, v in enumerate(self.vars)}
        self.nvars = len(self.vars)
        self.odd = [bar(a) for a, _ in self.vars]
        self.n_odd = sum(self.odd)  # odd variables occupy the first positions
        self.zero = (0,) * self.nvars
        self._dx: dict = {}
        self._mono: dict = {}

    def unit(self, p: int) -> tuple:
        e = [0] * self.nvars
        e[p] = 1
        return tuple(e)

    def odd_degree(self, e: tuple) -> int:
        return sum(e[: self.n_odd]) & 1

    def merge(self, e1: tuple, e2: tuple):
        """(sign, e1 + e2) for the product of ordered monomials; sign 0 if an odd
        variable repeats."""
        sign = 1
        seen_after = 0
        # walk odd variables from the right; count e1 odd vars greater than each e2 odd var
        for p in range(self.n_odd - 1, -1, -1):
            if e2[p]:
                if e1[p]:
                    return 0, None
                if seen_after & 1:
                    sign = -sign
            if e1[p]:
                seen_after += 1
        return sign, tuple(a + b for a, b in zip(e1, e2))

    def derive(self, p: int, e: tuple):
        """Left derivative d/dx_p of x^e as (coeff, exponent) or None."""
        if not e[p]:
            return None
        if p < self.n_odd:
            c = -1 if sum(e[:p]) & 1 else 1
        else:
            c = e[p]
        out = list(e)
        out[p] -= 1
        return c, tuple(out)

    def d_times_x(self, beta: tuple, gamma: tuple) -> dict:
        """Normal form of d^beta x^gamma as {(x-exps, d-exps): coeff}."""
        key = (beta, gamma)
        hit = self._dx.get(key)
        if hit is not None:
            return hit
        if not any(beta) or not any(gamma):
            res = {(gamma, beta): 1}
        else:
            v = next(p for p, b in enumerate(beta) if b)
            rest = list(beta)
            rest[v] -= 1
            inner = self.d_times_x(tuple(rest), gamma)
            ev = self.unit(v)
            odd_v = v < self.n_odd
            res = {}
            for (g2, b2), c in inner.items():
                der = self.derive(v, g2)
                if der is not None:
                    _acc(res, (der[1], b2), c * der[0])
                s, b3 = self.merge(ev, b2)
                if s:
                    if odd_v and self.odd_degree(g2):
                        s = -s
                    _acc(res, (g2, b3), c * s)
        self._dx[key] = res
        return res

    def mono_product(self, m1: tuple, m2: tuple) -> dict:
        key = (m1, m2)
        hit = self._mono.get(key)
        if hit is not None:
            return hit
        (a, b), (g, d) = m1, m2
        res: dict = {}
        for (g2, b2), c in self.d_times_x(b, g).items():
            s1, xs = self.merge(a, g2)
            if not s1:
                continue
            s2, ds = self.merge(b2, d)
            if not s2:
                continue
            _acc(res, (xs, ds), c * s1 * s2)
        self._mono[key] = res
        return res


@lru_cache(maxsize=None)
def weyl_algebra(M: int, N: int) -> WeylAlgebra:
    return WeylAlgebra(M, N)


class DiffOp:
    __slots__ = ("W", "terms")

    def __init__(self, W: WeylAlgebra, terms=None):
        self.W = W
        clean = {}
        for k, c in (terms or {}).items():
            c = narrow(c)
            if c:
                clean[k] = c
        self.terms = clean

    @classmethod
    def scalar(cls, W, c=1):
        return cls(W, {(W.zero, W.zero): c})

    @classmethod
    def x(cls, W, a: int, k: int):
        return cls(W, {(W.unit(W.index[(a, k)]), W.zero): 1})

    @classmethod
    def d(cls, W, k: int, a: int):
        """d_ka = d/dx_ak."""
        return cls(W, {(W.zero, W.unit(W.index[(a, k)])): 1})

    def _coerce(self, other):
        if isinstance(other, DiffOp):
            if other.W is not self.W:
                raise ValueError("operators for different variable sets")
            return other
        if isinstance(other, _SCALARS):
            return DiffOp.scalar(self.W, other)
        return None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def __neg__(self):
        return DiffOp(self.W, {k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.terms)
        for k, c in o.terms.items():
            _acc(acc, k, c)
        return DiffOp(self.W, acc)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return DiffOp(self.W, {k: v * c for k, v in self.terms.items()})

    @classmethod
    def sum_of(cls, items):
        W = None
        acc: dict = {}
        for x in items:
            if isinstance(x, DiffOp):
                W = x.W
                for k, c in x.terms.items():
                    acc[k] = acc.get(k, 0) + c
            elif x:
                acc.setdefault("scalar", []).append(x)
        extra = acc.pop("scalar", [])
        for c in extra:
            key = (W.zero, W.zero)
            acc[key] = acc.get(key, 0) + c
        return cls(W, acc)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        W = self.W
        c = other._as_scalar()
        if c is not None:
            return self.scale(c)
        c = self._as_scalar()
        if c is not None:
            return other.scale(c)
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for m, c in W.mono_product(m1, m2).items():
                    _acc(acc, m, c * c1 * c2)
        return DiffOp(W, acc)

    def _as_scalar(self):
        if len(self.terms) == 1:
            (key, c), = self.terms.items()
            if key == (self.W.zero, self.W.zero):
                return c
        elif not self.terms:
            return 0
        return None

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    def graded_items(self):
        for k, c in self.terms.items():
            yield k, self.term_parity(k), c

    def with_terms(self, terms):
        return DiffOp(self.W, terms)

    def term_parity(self, key) -> int:
        return (self.W.odd_degree(key[0]) + self.W.odd_degree(key[1])) & 1

    def parity_parts(self):
        even, odd = {}, {}
        for k, c in self.terms.items():
            (odd if self.term_parity(k) else even)[k] = c
        out = []
        if even:
            out.append((0, DiffOp(self.W, even)))
        if odd:
            out.append((1, DiffOp(self.W, odd)))
        return out

    def x_degree_shift(self):
        """Set of (deg x - deg d) over terms; a single 0 means degree preserving."""
        return {sum(a) - sum(b) for a, b in self.terms}

    def apply(self, f: SuperPolynomial) -> SuperPolynomial:
        prod = self * DiffOp(self.W, {(e, self.W.zero): c for e, c in f.terms.items()})
        return SuperPolynomial(
            self.W, {a: c for (a, b), c in prod.terms.items() if not any(b)}
        )

    def _mono_str(self, key) -> str:
        W = self.W
        xs, ds = key
        parts = []
        for p, e in enumerate(xs):
            if e:
                a, k = W.vars[p]
                parts.append(f"x[{a},{k}]" + (f"^{e}" if e > 1 else ""))
        for p, e in enumerate(ds):
            if e:
                a, k = W.vars[p]
                parts.append(f"d[{k},{a}]" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})*{self._mono_str(k)}" if any(k[0]) or any(k[1]) else f"({c})"
            for k, c in sorted(self.terms.items())
        )

    def __repr__(self):
        return f"DiffOp(M={self.W.M}, N={self.W.N}, {len(self.terms)} terms)"

    def to_json(self) -> list[dict]:
        W = self.W

        def vs(e):
            return [[W.vars[p][0], W.vars[p][1], x] for p, x in enumerate(e) if x]

        return [
            {"x": vs(a), "d": vs(b), "coeff": scalar_to_json(c)}
            for (a, b), c in sorted(self.terms.items())
        ]


class SuperPolynomial:
    __slots__ = ("W", "terms")

    def __init__(self, W: WeylAlgebra, terms=None):
        self.W = W
        self.terms = {k: narrow(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, W, exps, c=1):
        return cls(W, {tuple(exps): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, SuperPolynomial) and self.terms == other.terms

    __hash__ = None

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)


def monomials_of_degree(W: WeylAlgebra, d: int):
    """Exponent tuples of total degree d (odd exponents 0 or 1)."""
    ranges = [range(2) if W.odd[p] else range(d + 1) for p in range(W.nvars)]
    for e in _cartesian(*ranges):
        if sum(e) == d:
            yield e


def annihilation_degree(op: DiffOp, d: int) -> bool:
    """True iff op kills every monomial of total degree at most d."""
    W = op.W
    for deg in range(d + 1):
        for e in monomials_of_degree(W, deg):
            if op.apply(SuperPolynomial.monomial(W, e)):
                return False
    return True


# representations of q_N


def _rep_sum(W, k, l, coeff, shift):
    """sum_a x_{a l} d_{k, shift*a} * coeff."""
    out = DiffOp(W)
    for a in slot_values(W.M):
        out = out + DiffOp.x(W, a, l) * DiffOp.d(W, k, shift * a)
    return out.scale(coeff)


def rep_fklact(g: QGenerator, M: int, N: int) -> DiffOp:
    """F_kl -> -sum_a x_al d_ka ;  F_{k,-l} -> i sum_a x_al d_{k,-a}."""
    return _rep_fklact(canonical(g.i, g.j), M, N)


@lru_cache(maxsize=None)
def _rep_fklact(g, M, N):
    W = weyl_algebra(M, N)
    k, j = g.i, g.j
    if j > 0:
        return _rep_sum(W, k, j, -1, 1)
    return _rep_sum(W, k, -j, I, -1)


def rep_howe(g: QGenerator, M: int, N: int) -> DiffOp:
    """F_kl -> sum_a x_ak d_la ;  F_{k,-l} -> sum_a x_ak d_{l,-a}."""
    return _rep_howe(canonical(g.i, g.j), M, N)


@lru_cache(maxsize=None)
def _rep_howe(g, M, N):
    W = weyl_algebra(M, N)
    k, j = g.i, g.j
    out = DiffOp(W)
    l = abs(j)
    shift = 1 if j > 0 else -1
    for a in slot_values(M):
        out = out + DiffOp.x(W, a, k) * DiffOp.d(W, l, shift * a)
    return out


def autom(g: QGenerator, N: int) -> PBWElement:
    """F_kl -> -F_lk ;  F_{k,-l} -> i F_{l,-k}  (k, l > 0)."""
    g = canonical(g.i, g.j)
    k, j = g.i, g.j
    if j > 0:
        return PBWElement.generator(N, j, k, -1)
    return PBWElement.generator(N, -j, -k, I)


def rep_pbw(z: PBWElement, M: int, rep=rep_fklact) -> DiffOp:
    """Image of a PBW element under a generator-level representation."""
    W = weyl_algebra(M, z.N)
    gens = q_algebra(z.N).gens
    cache = {(): DiffOp.scalar(W)}

    def mono(m):
        hit = cache.get(m)
        if hit is None:
            hit = mono(m[:-1]) * rep(gens[m[-1]], M, z.N)
            cache[m] = hit
        return hit

    out = DiffOp(W)
    for m, c in sorted(z.terms.items(), key=lambda t: len(t[0])):
        out = out + mono(m).scale(c)
    return out


def twist_consistency(M: int, N: int) -> bool:
    """rep_fklact agrees with rep_howe composed with the automorphism on every generator."""
    for g in q_algebra(N).gens:
        if rep_fklact(g, M, N) != rep_pbw(autom(g, N), M, rep=rep_howe):
            return False
    return True


def supercommutator(x, y):
    out = None
    for px, xx in x.parity_parts():
        for py, yy in y.parity_parts():
            term = xx * yy - yy * xx if not (px and py) else xx * yy + yy * xx
            out = term if out is None else out + term
    return out if out is not None else x * 0


def homomorphism_check(M: int, N: int, rep=rep_fklact) -> bool:
    """rep([F, F']) = [rep F, rep F'] on all generator pairs."""
    from .uqn import bracket

    gens = q_algebra(N).gens
    for a in gens:
        for b in gens:
            lhs = rep_pbw(bracket(a, b, N), M, rep=rep)
            rhs = supercommutator(rep(a, M, N), rep(b, M, N))
            if lhs != rhs:
                return False
    return True


# matrices over DiffOp


def g_matrix_rep(n: int, M: int, N: int, a: int = 1) -> SuperOperator:
    """Image of G_a = sum E_kl F_{l,-k} (-1)^{bar k + bar l}."""
    V = power_space(N, n)
    out = SuperOperator.zero(V)
    for k in slot_values(N):
        for l in slot_values(N):
            sign = -1 if (bar(k) + bar(l)) % 2 else 1
            op = rep_fklact(canonical(l, -k), M, N).scale(sign)
            out = out + local_operator(V, a, k, l, op)
    return out


def f_matrix_rep(n: int, M: int, N: int, a: int = 1) -> SuperOperator:
    """Image of F_a = sum E_kl F_lk (-1)^{bar l}."""
    V = power_space(N, n)
    out = SuperOperator.zero(V)
    for k in slot_values(N):
        for l in slot_values(N):
            op = rep_fklact(canonical(l, k), M, N).scale(-1 if l < 0 else 1)
            out = out + local_operator(V, a, k, l, op)
    return out


def _x_terms(M, N):
    """(row k, column a, variable (b, m), coeff) for X; shared by both versions."""
    out = []
    for a in range(1, M + 1):
        for k in range(1, N + 1):
            # e_ka -> E_ka + E_{-k,-a};  f_ka -> E_{k,-a} + E_{-k,a}
            out += [(k, a, (a, k), 1), (-k, -a, (a, k), 1)]
            out += [(-k, a, (-a, k), -I), (k, -a, (-a, k), -I)]
    return out


def _d_terms(M, N, version):
    """(row a, column k, derivative (k, b), coeff) for D."""
    out = []
    for a in range(1, M + 1):
        for k in range(1, N + 1):
            if version == "odd":
                # i e_ak d_{k,-a} + f_ak d_ka
                out += [(a, k, (k, -a), I), (-a, -k, (k, -a), I)]
                out += [(a, -k, (k, a), 1), (-a, k, (k, a), 1)]
            else:
                out += [(-a, -k, (k, a), 1), (a, k, (k, a), -1)]
                out += [(-a, k, (k, -a), I), (a, -k, (k, -a), -I)]
    return out


def x_operator(space, slot: int, M: int, N: int) -> SuperOperator:
    """X acting in ``slot`` (currently of size M), landing in size N."""
    W = weyl_algebra(M, N)
    rows = space.replace(slot, N)
    out = SuperOperator.zero(rows, space)
    for k, a, (b, m), c in _x_terms(M, N):
        out = out + local_operator(space, slot, k, a, DiffOp.x(W, b, m).scale(c), target_dim=N)
    return out


def d_operator(space, slot: int, M: int, N: int, version: str) -> SuperOperator:
    """D acting in ``slot`` (currently of size N), landing in size M."""
    W = weyl_algebra(M, N)
    rows = space.replace(slot, M)
    out = SuperOperator.zero(rows, space)
    for a, k, (kk, b), c in _d_terms(M, N, version):
        out = out + local_operator(space, slot, a, k, DiffOp.d(W, kk, b).scale(c), target_dim=M)
    return out


def xd_matrices_odd(M: int, N: int):
    """X in Hom(C^M, C^{N|N}) and D in Hom(C^{N|N}, C^M), with the middle space
    doubled to C^{M|M} so that e, f act as matrix units (see the README)."""
    mid = tensor_space((M,))
    top = tensor_space((N,))
    return x_operator(mid, 1, M, N), d_operator(top, 1, M, N, "odd")


def xd_matrices_even(M: int, N: int):
    mid = tensor_space((M,))
    top = tensor_space((N,))
    return x_operator(mid, 1, M, N), d_operator(top, 1, M, N, "even")


@lru_cache(maxsize=None)
def xd_chain(M: int, N: int, n: int, version: str) -> SuperOperator:
    """X_1 ... X_n D_1 ... D_n on (C^{N|N})^{x n}."""
    dims = [N] * n
    ds = []
    for r in range(n, 0, -1):
        space = tensor_space(tuple(dims))
        ds.append(d_operator(space, r, M, N, version))
        dims[r - 1] = M
    xs = []
    for r in range(n, 0, -1):
        space = tensor_space(tuple(dims))
        xs.append(x_operator(space, r, M, N))
        dims[r - 1] = N
    # D_1 ... D_n: ds was built as [D_n, ..., D_1]; xs as [X_n, ..., X_1]
    out = ds[0]
    for op in ds[1:]:
        out = op * out
    for op in xs:
        out = op * out
    return out


def _lift(op: SuperOperator, W: WeylAlgebra) -> SuperOperator:
    return op.map_entries(lambda v: v if isinstance(v, DiffOp) else DiffOp.scalar(W, v))


def _difference_report(name, params, lhs, rhs, started):
    diff = lhs - rhs
    witness = []
    for (r, c), v in sorted(diff.entries.items())[:3]:
        witness.append({"row": list(r), "col": list(c), "value": _entry_json(v)})
    return {
        "identity": name,
        "parameters": params,
        "exact_equal": not diff.entries,
        "discrepancy_terms": witness,
        "seconds": round(time.perf_counter() - started, 3),
    }


def _entry_json(v):
    if hasattr(v, "to_json"):
        return v.to_json()
    return scalar_to_json(v)


def odd_capelli_sides(M: int, N: int, n: int):
    W = weyl_algebra(M, N)
    V = power_space(N, n)
    lhs = SuperOperator.identity(V, DiffOp.scalar(W))
    for b in range(1, n + 1):
        lhs = lhs * (g_matrix_rep(n, M, N, b) + _lift(odd_jm_image(b, n, N), W))
    return lhs, xd_chain(M, N, n, "odd")


def even_capelli_sides(M: int, N: int, n: int):
    W = weyl_algebra(M, N)
    V = power_space(N, n)
    lhs = SuperOperator.identity(V, DiffOp.scalar(W))
    for b in range(1, n + 1):
        lhs = lhs * (f_matrix_rep(n, M, N, b) + _lift(jm_image(b, n, N), W))
    return lhs, xd_chain(M, N, n, "even")


def verify_odd_capelli(M: int, N: int, n: int) -> dict:
    t0 = time.perf_counter()
    lhs, rhs = odd_capelli_sides(M, N, n)
    return _difference_report("odd-capelli", {"M": M, "N": N, "n": n}, lhs, rhs, t0)


def verify_even_capelli(M: int, N: int, n: int) -> dict:
    t0 = time.perf_counter()
    lhs, rhs = even_capelli_sides(M, N, n)
    return _difference_report("even-capelli", {"M": M, "N": N, "n": n}, lhs, rhs, t0)


def _shifted_product(U: BarredStandardTableau, factor, N, one):
    """(F_1 + k_1) ... (F_n + k_n) with F_a supplied by ``factor``."""
    n = U.n
    V = power_space(N, n)
    out = SuperOperator.identity(V, one)
    for a, k in enumerate(U.signed_contents(), start=1):
        out = out * (factor(a) + SuperOperator.identity(V, one * k))
    return out


def _subset_products(factors, one, V, reg):
    """Ordered products prod_{a in S} factors[a] for every subset S, in unit-array form.

    (F_1 + k_1)...(F_n + k_n) is then the sum over S of prod_{a not in S} k_a times
    the product for S.
    """
    n = len(factors)
    plain = {(): SuperOperator.identity(V, one)}
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            plain[S] = plain[S[:-1]] * factors[S[-1]]
    return {S: UnitMatrix.from_operator(op, reg) for S, op in plain.items()}


def _expand_shifted(products: dict, kappas) -> UnitMatrix:
    total = None
    for S, P in products.items():
        coeff = 1
        for a, k in enumerate(kappas):
            if a not in S:
                coeff = coeff * k
        if not coeff:
            continue
        term = P if coeff == 1 else P.scale(coeff)
        total = term if total is None else total + term
    return total


@lru_cache(maxsize=None)
def _tableau_context(M: int, N: int, n: int):
    W = weyl_algebra(M, N)
    reg = Registry()
    V = power_space(N, n)
    factors = [f_matrix_rep(n, M, N, a) for a in range(1, n + 1)]
    products = _subset_products(factors, DiffOp.scalar(W), V, reg)
    chain = UnitMatrix.from_operator(xd_chain(M, N, n, "even"), reg)
    return reg, products, chain


@lru_cache(maxsize=None)
def _fue_context(N: int, n: int):
    reg = Registry()
    V = power_space(N, n)
    one = PBWElement.scalar(N)
    factors = [generator_matrix_F(n, N, a) for a in range(1, n + 1)]
    products = _subset_products(factors, one, V, reg)
    lhs = SuperOperator.identity(V, one)
    for b in range(1, n + 1):
        lhs = lhs * (factors[b - 1] + jm_image(b, n, N).map_entries(lambda v: PBWElement.scalar(N, v)))
    return reg, products, UnitMatrix.from_operator(lhs, reg)


def fue_check(U: BarredStandardTableau, N: int) -> bool:
    """(F_1 + X^(1)) ... (F_n + X^(n)) E_U = (F_1 + k_1) ... (F_n + k_n) E_U over U(q_N)."""
    _, products, lhs = _fue_context(N, U.n)
    rhs = _expand_shifted(products, U.signed_contents())
    E = sergeev_to_operator(idempotent(U), N)
    return (lhs - rhs).times_scalar_operator(E).is_zero()


def verify_tableau_capelli(U: BarredStandardTableau, M: int, N: int, check_fue: bool = True) -> dict:
    """(F_1 + k_1) ... (F_n + k_n) E_U and X_1...X_n D_1...D_n E_U agree as DiffOp matrices.

    The comparison multiplies the difference of the two matrices by E_U and tests
    for zero.
    """
    if U.shape.length > N:
        raise ValueError(f"shape {U.shape} has more than {N} rows")
    t0 = time.perf_counter()
    _, products, chain = _tableau_context(M, N, U.n)
    lhs = _expand_shifted(products, U.signed_contents())
    E = sergeev_to_operator(idempotent(U), N)
    diff = (lhs - chain).times_scalar_operator(E)
    witness = []
    if not diff.is_zero():
        for (r, c), terms in sorted(diff.entries().items())[:3]:
            witness.append({"row": list(r), "col": list(c), "value": DiffOp(weyl_algebra(M, N), terms).to_json()})
    report = {
        "identity": "tableau-capelli",
        "parameters": {"M": M, "N": N, "tableau": U.to_text()},
        "exact_equal": not witness,
        "discrepancy_terms": witness,
    }
    if check_fue:
        report["fue"] = fue_check(U, N)
        report["exact_equal"] = report["exact_equal"] and report["fue"]
    report["seconds"] = round(time.perf_counter() - t0, 3)
    return report


def image_of_immanant(U: BarredStandardTableau, M: int, N: int) -> DiffOp:
    return rep_pbw(quantum_immanant(U, N), M)


def image_via_character(lam: StrictPartition, M: int, N: int) -> DiffOp:
    """2^floor(l/2) / (2^n n!) * str X^lam X_1...X_n D_1...D_n."""
    if lam.length > N:
        raise ValueError(f"shape {lam} has more than {N} rows")
    W = weyl_algebra(M, N)
    n = lam.n
    chi = sergeev_to_operator(character_element(lam), N)
    tr = supertrace_of_product(chi, xd_chain(M, N, n, "even"))
    if not isinstance(tr, DiffOp):
        tr = DiffOp.scalar(W, tr)
    return tr.scale(Fraction(2 ** (lam.length // 2), 2**n * factorial(n)))


def verify_immanant_image(lam: StrictPartition, M: int, N: int, U=None) -> dict:
    t0 = time.perf_counter()
    U = U or enumerate_standard_barred(lam)[0]
    a = image_of_immanant(U, M, N)
    b = image_via_character(lam, M, N)
    diff = a - b
    return {
        "identity": "immanant-image",
        "parameters": {"M": M, "N": N, "shape": list(lam.parts)},
        "exact_equal": not diff,
        "discrepancy_terms": diff.to_json()[:3],
        "seconds": round(time.perf_counter() - t0, 3),
    }


def verify_annihilation(lam: StrictPartition, M: int, N: int, U=None) -> dict:
    t0 = time.perf_counter()
    U = U or enumerate_standard_barred(lam)[0]
    op = image_of_immanant(U, M, N)
    ok = annihilation_degree(op, lam.n - 1) and bool(op)
    return {
        "identity": "annihilation",
        "parameters": {"M": M, "N": N, "shape": list(lam.parts)},
        "exact_equal": ok,
        "discrepancy_terms": [],
        "seconds": round(time.perf_counter() - t0, 3),
    }
