"""The enveloping algebra U(q_N) in PBW normal form, quantum immanants and their
Harish-Chandra images.

Generators are F_ij = E_ij + E_{-i,-j} with the representative i > 0.  Structure
constants come from gl_{N|N}.  PBW order: lowering (|i| > |j|) < odd Cartan
(j = -i) < even Cartan (j = i) < raising (|i| < |j|), lexicographic inside a class.
A monomial is a nondecreasing tuple of generator ids (ids follow PBW order);
odd generators occur at most once.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import NamedTuple

import numpy as np

from .polynomials import Poly
from .scalars import from_units, narrow, scalar_to_json, units
from .sergeev import SergeevElement, algebra, idempotent
from .shifted import BarredStandardTableau, StrictPartition, g_lambda
from .tensor_rep import (
    SuperOperator,
    bar,
    local_operator,
    power_space,
    signed_perms,
    slot_values,
)

LOWERING, CARTAN_ODD, CARTAN_EVEN, RAISING = range(4)
_KIND_NAMES = ("lowering", "cartan-odd", "cartan-even", "raising")


class QGenerator(NamedTuple):
    i: int
    j: int

    @property
    def parity(self) -> int:
        return 1 if self.j < 0 else 0

    @property
    def kind(self) -> int:
        if abs(self.i) > abs(self.j):
            return LOWERING
        if abs(self.i) < abs(self.j):
            return RAISING
        return CARTAN_EVEN if self.j == self.i else CARTAN_ODD

    def __str__(self):
        return f"F[{self.i},{self.j}]"


def canonical(i: int, j: int) -> QGenerator:
    if i == 0 or j == 0:
        raise ValueError("indices are nonzero")
    return QGenerator(i, j) if i > 0 else QGenerator(-i, -j)


def _gl_bracket(x: tuple, y: tuple) -> dict:
    """[E_ab, E_cd] in gl_{N|N}."""
    a, b = x
    c, d = y
    out: dict = {}
    if b == c:
        out[(a, d)] = out.get((a, d), 0) + 1
    if d == a:
        sign = -1 if ((bar(a) + bar(b)) * (bar(c) + bar(d))) % 2 else 1
        out[(c, b)] = out.get((c, b), 0) - sign
    return out


class QAlgebra:
    """Generators, structure constants and normal-ordering memo for a fixed N."""

    def __init__(self, N: int):
        self.N = N
        gens = [canonical(i, j) for i in range(1, N + 1) for j in slot_values(N)]
        gens.sort(key=lambda g: (g.kind, g.i, g.j))
        self.gens = gens
        self.gid = {g: k for k, g in enumerate(gens)}
        self.parity = [g.parity for g in gens]
        self.kind = [g.kind for g in gens]
        self._bracket = {}
        for x in range(len(gens)):
            for y in range(len(gens)):
                self._bracket[(x, y)] = self._compute_bracket(gens[x], gens[y])
        self._left = {}

    def id_of(self, i: int, j: int) -> int:
        return self.gid[canonical(i, j)]

    def _compute_bracket(self, g: QGenerator, h: QGenerator) -> dict:
        eg = [(g.i, g.j), (-g.i, -g.j)]
        eh = [(h.i, h.j), (-h.i, -h.j)]
        acc: dict = {}
        for x in eg:
            for y in eh:
                for unit, cf in _gl_bracket(x, y).items():
                    acc[unit] = acc.get(unit, 0) + cf
        out = {}
        for (a, b), cf in acc.items():
            if not cf:
                continue
            if acc.get((-a, -b), 0) != cf:
                raise ArithmeticError("bracket left the queer subalgebra")
            if a > 0:
                out[self.gid[QGenerator(a, b)]] = cf
        return out

    def bracket_ids(self, x: int, y: int) -> dict:
        """[F_x, F_y] as {generator id: coefficient}."""
        return self._bracket[(x, y)]

    def left_mul(self, g: int, mono: tuple) -> dict:
        """Normal form of F_g * mono."""
        key = (g, mono)
        hit = self._left.get(key)
        if hit is not None:
            return hit
        if not mono or g < mono[0] or (g == mono[0] and not self.parity[g]):
            res = {(g,) + mono: 1}
        else:
            g1, rest = mono[0], mono[1:]
            res = {}
            if g == g1:
                # odd square: F_g^2 = [F_g, F_g] / 2
                for h, cf in self.bracket_ids(g, g).items():
                    _accumulate(res, self.left_mul(h, rest), Fraction(cf, 2))
            else:
                sign = -1 if self.parity[g] and self.parity[g1] else 1
                for m2, cf in self.left_mul(g, rest).items():
                    _accumulate(res, self.left_mul(g1, m2), cf * sign)
                for h, cf in self.bracket_ids(g, g1).items():
                    _accumulate(res, self.left_mul(h, rest), cf)
        self._left[key] = res
        return res


def _accumulate(acc: dict, part: dict, factor=1):
    for m, cf in part.items():
        v = acc.get(m, 0) + cf * factor
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


@lru_cache(maxsize=None)
def q_algebra(N: int) -> QAlgebra:
    return QAlgebra(N)


class PBWElement:
    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        clean = {}
        for m, cf in (terms or {}).items():
            cf = narrow(cf)
            if cf:
                clean[tuple(m)] = cf
        self.terms = clean

    @property
    def alg(self) -> QAlgebra:
        return q_algebra(self.N)

    @classmethod
    def scalar(cls, N, c=1):
        return cls(N, {(): c})

    @classmethod
    def generator(cls, N, i, j, coeff=1):
        return cls(N, {(q_algebra(N).id_of(i, j),): coeff})

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other):
        if isinstance(other, PBWElement):
            if other.N != self.N:
                raise ValueError("different N")
            return other
        return PBWElement.scalar(self.N, other)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except Exception:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def __neg__(self):
        return PBWElement(self.N, {m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        o = self._coerce(other)
        acc = dict(self.terms)
        _accumulate(acc, o.terms)
        return PBWElement(self.N, acc)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return PBWElement(self.N, {m: v * c for m, v in self.terms.items()})

    @classmethod
    def sum_of(cls, items):
        N = next(x.N for x in items if isinstance(x, PBWElement))
        acc: dict = {}
        for x in items:
            terms = x.terms if isinstance(x, PBWElement) else {(): x}
            for m, c in terms.items():
                acc[m] = acc.get(m, 0) + c
        return cls(N, acc)

    def __mul__(self, other):
        if not isinstance(other, PBWElement):
            return self.scale(other)
        if set(other.terms) <= {()}:
            return self.scale(other.terms.get((), 0))
        if set(self.terms) <= {()}:
            return other.scale(self.terms.get((), 0))
        alg = self.alg
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                part = {m2: 1}
                for g in reversed(m1):
                    nxt: dict = {}
                    for m, cf in part.items():
                        _accumulate(nxt, alg.left_mul(g, m), cf)
                    part = nxt
                _accumulate(acc, part, c1 * c2)
        return PBWElement(self.N, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def left_mul_generator(self, g: int):
        acc: dict = {}
        for m, cf in self.terms.items():
            _accumulate(acc, self.alg.left_mul(g, m), cf)
        return PBWElement(self.N, acc)

    def graded_items(self):
        for m, c in self.terms.items():
            yield m, self.monomial_parity(m), c

    def with_terms(self, terms):
        return PBWElement(self.N, terms)

    def monomial_parity(self, m) -> int:
        return sum(self.alg.parity[g] for g in m) & 1

    def parity_parts(self):
        even = {m: c for m, c in self.terms.items() if not self.monomial_parity(m)}
        odd = {m: c for m, c in self.terms.items() if self.monomial_parity(m)}
        out = []
        if even:
            out.append((0, PBWElement(self.N, even)))
        if odd:
            out.append((1, PBWElement(self.N, odd)))
        return out

    def is_even(self) -> bool:
        return all(not self.monomial_parity(m) for m in self.terms)

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def __repr__(self):
        return f"PBWElement(N={self.N}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        gens = self.alg.gens
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            word = "*".join(str(gens[g]) for g in m)
            cf = self.terms[m]
            parts.append(f"({cf})*{word}" if word else f"({cf})")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        gens = self.alg.gens
        return [
            {"monomial": [[gens[g].i, gens[g].j] for g in m], "coeff": scalar_to_json(self.terms[m])}
            for m in sorted(self.terms, key=lambda m: (len(m), m))
        ]


def bracket(a: QGenerator, b: QGenerator, N: int) -> PBWElement:
    alg = q_algebra(N)
    return PBWElement(N, {(g,): cf for g, cf in alg.bracket_ids(alg.gid[a], alg.gid[b]).items()})


def supercommutator(x: PBWElement, y: PBWElement) -> PBWElement:
    out = PBWElement(x.N)
    for px, xx in x.parity_parts():
        for py, yy in y.parity_parts():
            term = xx * yy
            rev = yy * xx
            out = out + (term + rev if px and py else term - rev)
    return out


def normal_order(factors) -> PBWElement:
    """Normal form of an ordered product of PBW elements or generators."""
    factors = list(factors)
    if not factors:
        raise ValueError("empty product")
    N = None
    elems = []
    for f in factors:
        if isinstance(f, QGenerator):
            elems.append(f)
        else:
            N = f.N
            elems.append(f)
    if N is None:
        raise ValueError("cannot infer N from bare generators")
    out = PBWElement.scalar(N)
    for f in elems:
        if isinstance(f, QGenerator):
            f = PBWElement.generator(N, f.i, f.j)
        out = out * f
    return out


def _swap_reduce(words: dict, alg: QAlgebra) -> dict:
    """Reduce words by rewriting the leftmost out-of-order adjacent pair."""
    done: dict = {}
    todo = dict(words)
    while todo:
        w, cf = todo.popitem()
        for pos in range(len(w) - 1):
            g, h = w[pos], w[pos + 1]
            if g > h or (g == h and alg.parity[g]):
                break
        else:
            _accumulate(done, {w: cf})
            continue
        head, tail = w[:pos], w[pos + 2 :]
        if g == h:
            for x, c in alg.bracket_ids(g, g).items():
                _accumulate(todo, {head + (x,) + tail: c}, Fraction(cf, 2))
        else:
            sign = -1 if alg.parity[g] and alg.parity[h] else 1
            _accumulate(todo, {head + (h, g) + tail: sign * cf})
            for x, c in alg.bracket_ids(g, h).items():
                _accumulate(todo, {head + (x,) + tail: c * cf})
    return done


def normal_order_word(word, N: int, strategy: str = "left") -> PBWElement:
    """Reduce a word of generators.

    ``left`` multiplies from the right end with the memoized left multiplication,
    ``swap`` rewrites adjacent pairs until the word is ordered.
    """
    alg = q_algebra(N)
    ids = tuple(alg.gid[canonical(g.i, g.j)] for g in word)
    if strategy == "swap":
        return PBWElement(N, _swap_reduce({ids: 1}, alg))
    if strategy != "left":
        raise ValueError(f"unknown strategy {strategy!r}")
    part = {(): 1}
    for g in reversed(ids):
        nxt: dict = {}
        for m, cf in part.items():
            _accumulate(nxt, alg.left_mul(g, m), cf)
        part = nxt
    return PBWElement(N, part)


def is_central(z: PBWElement, N: int | None = None) -> bool:
    N = z.N if N is None else N
    for g in q_algebra(N).gens:
        if supercommutator(z, PBWElement.generator(N, g.i, g.j)):
            return False
    return True


def hc_image(z: PBWElement, N: int | None = None) -> Poly:
    """Drop monomials with raising/lowering factors, then those with odd Cartan ones,
    and send F_kk to y_k."""
    alg = z.alg
    N = z.N
    acc: dict = {}
    for m, cf in z.terms.items():
        if any(alg.kind[g] != CARTAN_EVEN for g in m):
            continue
        exps = [0] * N
        for g in m:
            exps[alg.gens[g].i - 1] += 1
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + cf
    return Poly(N, acc)


def antipode(z: PBWElement) -> PBWElement:
    """The anti-automorphism F_kl -> -F_kl, with the super sign on reversal."""
    alg = z.alg
    out = PBWElement(z.N)
    for m, cf in z.terms.items():
        odd = [alg.parity[g] for g in m]
        sign = (-1) ** len(m)
        for a in range(len(m)):
            for b in range(a + 1, len(m)):
                if odd[a] and odd[b]:
                    sign = -sign
        term = PBWElement.scalar(z.N, cf * sign)
        for g in m:
            term = PBWElement(z.N, {(g,): 1}) * term
        out = out + term
    return out


# matrices with U(q_N) entries


def generator_matrix_F(n: int, N: int, a: int = 1) -> SuperOperator:
    """F_a = sum_{k,l} E_kl (slot a) F_lk (-1)^{bar l}."""
    V = power_space(N, n)
    out = SuperOperator.zero(V)
    for k in slot_values(N):
        for l in slot_values(N):
            g = PBWElement.generator(N, l, k, -1 if l < 0 else 1)
            out = out + local_operator(V, a, k, l, g)
    return out


def generator_matrix_G(n: int, N: int, a: int = 1) -> SuperOperator:
    """G_a = sum_{k,l} E_kl (slot a) F_{l,-k} (-1)^{bar k + bar l}."""
    V = power_space(N, n)
    out = SuperOperator.zero(V)
    for k in slot_values(N):
        for l in slot_values(N):
            sign = -1 if (bar(k) + bar(l)) % 2 else 1
            g = PBWElement.generator(N, l, -k, sign)
            out = out + local_operator(V, a, k, l, g)
    return out


def e_unit(n, N, a, k, l, coeff=1):
    """e_kl = E_kl + E_{-k,-l} in slot a."""
    V = power_space(N, n)
    return local_operator(V, a, k, l, coeff) + local_operator(V, a, -k, -l, coeff)


def f_unit(n, N, a, k, l, coeff=1):
    """f_kl = E_{k,-l} + E_{-k,l} in slot a."""
    V = power_space(N, n)
    return local_operator(V, a, k, -l, coeff) + local_operator(V, a, -k, l, coeff)


def t_matrix(a: int, b: int, n: int, N: int) -> SuperOperator:
    """T_ab = sum_{k,l} f_kl (slot a) e_lk (slot b) - e_kl (slot a) f_lk (slot b)."""
    V = power_space(N, n)
    out = SuperOperator.zero(V)
    for k in range(1, N + 1):
        for l in range(1, N + 1):
            out = out + f_unit(n, N, a, k, l) * e_unit(n, N, b, l, k)
            out = out - e_unit(n, N, a, k, l) * f_unit(n, N, b, l, k)
    return out


def odd_jm_image(b: int, n: int, N: int) -> SuperOperator:
    V = power_space(N, n)
    out = SuperOperator.zero(V)
    for a in range(1, b):
        out = out + t_matrix(a, b, n, N)
    return out


def madef_residual(N: int) -> SuperOperator:
    """G1 G2 + G2 G1 + T12 G1 + G1 T12 (should vanish)."""
    G1 = generator_matrix_G(2, N, 1)
    G2 = generator_matrix_G(2, N, 2)
    T = t_matrix(1, 2, 2, N)
    return G1 * G2 + G2 * G1 + T * G1 + G1 * T


# quantum immanants


def _idempotent_entries(e: SergeevElement, N: int):
    """Nonzero matrix entries (row index, column index) of the image of e, per unit."""
    sp = signed_perms(e.n, N)
    D = len(sp.space)
    per_unit: dict = {}
    for h, cf in e.terms.items():
        for u, q in units(cf).items():
            per_unit.setdefault(u, {})[h] = q
    out = {}
    for u, coeffs in per_unit.items():
        den = 1
        for q in coeffs.values():
            den = den * q.denominator // int(np.gcd(den, q.denominator))
        hs = np.array(sorted(coeffs), dtype=np.int64)
        vals = np.array([int(coeffs[h] * den) for h in hs], dtype=np.int64)
        rows = sp.tgt[hs]  # (H, D)
        data = vals[:, None] * sp.sgn[hs]
        keys = (rows * D + np.arange(D)[None, :]).ravel()
        uniq, inv = np.unique(keys, return_inverse=True)
        summed = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(summed, inv, data.ravel())
        nz = summed != 0
        out[u] = (uniq[nz] // D, uniq[nz] % D, summed[nz], den)
    return out


def _word_coefficients(U: BarredStandardTableau, N: int, shift_sign: int):
    """Coefficients of the letter words in str E_U (F_1 + s k_1) ... (F_n + s k_n).

    The entry sum is  sum_{K,L} r_LK (-1)^{|L|} (-1)^{sum_{a>b} p_a bar(k_b)} prod_a phi_a(k_a,l_a)
    with phi_a(k,l) = F_lk (-1)^{bar l} + s k_a delta_kl and p_a = bar(k_a) + bar(l_a).
    A letter is a generator id, tagged as a Cartan letter when k = l.
    """
    e = idempotent(U)
    n = U.n
    alg = q_algebra(N)
    sp = signed_perms(n, N)
    vals_arr = np.array(sp.space.basis, dtype=np.int64)  # (D, n)
    neg = (vals_arr < 0).astype(np.int64)
    words: dict = {}
    ngen = len(alg.gens)
    # id table for (l, k) -> generator id, indexed by value + N
    tab = np.zeros((2 * N + 1, 2 * N + 1), dtype=np.int64)
    for l in slot_values(N):
        for k in slot_values(N):
            tab[l + N, k + N] = alg.id_of(l, k)
    for u, (Lr, Kc, cnt, den) in _idempotent_entries(e, N).items():
        L = vals_arr[Lr]
        K = vals_arr[Kc]
        nl = neg[Lr]
        nk = neg[Kc]
        p = nk ^ nl
        sign_exp = nl.sum(axis=1)
        for a in range(n):
            for b in range(a):
                sign_exp = sign_exp + p[:, a] * nk[:, b]
        # (-1)^{bar l} from each letter
        sign_exp = sign_exp + nl.sum(axis=1)
        coeff = np.where(sign_exp % 2 == 1, -cnt, cnt)
        letters = tab[L + N, K + N]  # (E, n)
        # 0: off-diagonal letter, 1/2: diagonal letter with l > 0 / l < 0
        diag = (L == K).astype(np.int64) * (1 + nl)
        codes = letters * 3 + diag
        base = 3 * ngen
        key = np.zeros(len(coeff), dtype=np.int64)
        for a in range(n):
            key = key * base + codes[:, a]
        uniq, inv = np.unique(key, return_inverse=True)
        summed = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(summed, inv, coeff)
        for kk, v in zip(uniq.tolist(), summed.tolist()):
            if not v:
                continue
            word = []
            for _ in range(n):
                word.append(kk % base)
                kk //= base
            word = tuple(reversed(word))
            words.setdefault(word, {})
            words[word][u] = words[word].get(u, 0) + Fraction(v, den)
    out = {}
    for w, parts in words.items():
        cf = from_units(parts)
        if cf:
            out[w] = cf
    return out


def _horner(words: dict, kappas, shift_sign: int, N: int) -> PBWElement:
    """Sum over words of coeff * prod_a letter_a, letters expanded left to right."""
    alg = q_algebra(N)
    n = len(kappas)
    trie: dict = {}
    for w, cf in words.items():
        node = trie
        for letter in w[:-1]:
            node = node.setdefault(letter, {})
        node[w[-1]] = node.get(w[-1], 0) + cf

    def letter_times(letter, depth, elem_terms: dict) -> dict:
        g, diag = divmod(letter, 3)
        acc: dict = {}
        for m, cf in elem_terms.items():
            _accumulate(acc, alg.left_mul(g, m), cf)
        if diag:
            # the letter is (-1)^{bar l} (F + (-1)^{bar l} s k_a)
            k = shift_sign * kappas[depth] * (-1 if diag == 2 else 1)
            if k:
                _accumulate(acc, elem_terms, k)
        return acc

    def walk(node, depth) -> dict:
        acc: dict = {}
        for letter, child in node.items():
            if depth == n - 1:
                inner = {(): child}
            else:
                inner = walk(child, depth + 1)
            _accumulate(acc, letter_times(letter, depth, inner))
        return acc

    if n == 0:
        return PBWElement.scalar(N, words.get((), 0))
    return PBWElement(N, walk(trie, 0))


def _check_shape(U: BarredStandardTableau, N: int):
    if U.shape.length > N:
        raise ValueError(f"shape {U.shape} has more than {N} rows")


def quantum_immanant(U: BarredStandardTableau, N: int) -> PBWElement:
    """str E_U (F_1 + k_1(U)) ... (F_n + k_n(U)), normal ordered."""
    _check_shape(U, N)
    return _immanant(U.rows, U.bars, N, 1)


def capelli_element(U: BarredStandardTableau, N: int) -> PBWElement:
    """str E_U (F_1 - k_1(U)) ... (F_n - k_n(U)) = (g/n!) C_lambda."""
    _check_shape(U, N)
    return _immanant(U.rows, U.bars, N, -1)


@lru_cache(maxsize=None)
def _immanant(rows, bars, N, shift_sign) -> PBWElement:
    U = BarredStandardTableau(StrictPartition(tuple(len(r) for r in rows)), rows, bars)
    words = _word_coefficients(U, N, shift_sign)
    return _horner(words, U.signed_contents(), shift_sign, N)


def quantum_immanant_direct(U: BarredStandardTableau, N: int, shift_sign: int = 1) -> PBWElement:
    """Same supertrace through SuperOperator products (slow; small n only)."""
    _check_shape(U, N)
    from .tensor_rep import sergeev_to_operator

    n = U.n
    V = power_space(N, n)
    E = sergeev_to_operator(idempotent(U), N).map_entries(lambda v: PBWElement.scalar(N, v))
    out = E
    for a, k in enumerate(U.signed_contents(), start=1):
        factor = generator_matrix_F(n, N, a) + SuperOperator.identity(V, PBWElement.scalar(N, shift_sign * k))
        out = out * factor
    tr = out.supertrace()
    return tr if isinstance(tr, PBWElement) else PBWElement.scalar(N, tr)


def z_lambda_relation(lam: StrictPartition, N: int, U=None):
    """S_lambda together with the scalar (-1)^n g / (2^l n!) relating it to z_lambda."""
    from .shifted import enumerate_standard_barred

    if lam.length > N:
        raise ValueError("shape too long")
    U = U or enumerate_standard_barred(lam)[0]
    n = lam.n
    scalar = Fraction((-1) ** n * g_lambda(lam), 2**lam.length * factorial(n))
    return quantum_immanant(U, N), scalar
