from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcapelli.scalars import I, Surd
from qcapelli.sergeev import (
    SergeevElement,
    algebra,
    c,
    character_element,
    character_from_traces,
    check_module_relations,
    clifford_idempotent,
    conjugation_sum,
    deltas,
    idempotent,
    is_invariant,
    jm,
    module_matrices,
    odd_jm,
    rank,
    s,
    shape_sum,
    split_pm,
    submodule_basis,
)
from qcapelli.shifted import BarredStandardTableau, StrictPartition, all_barred_tableaux, enumerate_standard_barred

P = StrictPartition
R2 = Surd.sqrt(2)


def reference_product(n, x, y):
    """Multiply by rewriting sigma c^eps tau c^eta = sigma tau c^{tau^-1 eps} c^eta word by word."""
    out = {}
    for (p, e), a in x.items():
        for (q, f), b in y.items():
            pq = tuple(p[q[i]] for i in range(n))
            qinv = [0] * n
            for i, v in enumerate(q):
                qinv[v] = i
            # c_k tau = tau c_{tau^-1(k)}
            word = [qinv[k] for k in range(n) if e >> k & 1] + [k for k in range(n) if f >> k & 1]
            sign = 1
            # bubble sort with anticommutation, then cancel squares c_k^2 = -1
            word = list(word)
            for i in range(len(word)):
                for j in range(len(word) - 1 - i):
                    if word[j] > word[j + 1]:
                        word[j], word[j + 1] = word[j + 1], word[j]
                        sign = -sign
            eps, k = 0, 0
            while k < len(word):
                if k + 1 < len(word) and word[k] == word[k + 1]:
                    sign = -sign
                    k += 2
                else:
                    eps |= 1 << word[k]
                    k += 1
            key = (pq, eps)
            out[key] = out.get(key, 0) + sign * a * b
    return {k: v for k, v in out.items() if v}


def as_dict(e):
    return {(p, eps): cf for p, eps, cf in e}


def from_dict(n, d):
    alg = algebra(n)
    return SergeevElement(n, {alg.index(p, eps): cf for (p, eps), cf in d.items()})


def elements(n):
    perms = list(permutations(range(n)))
    keys = st.tuples(st.sampled_from(perms), st.integers(0, 2**n - 1))
    return st.dictionaries(keys, st.integers(-3, 3), max_size=4).map(lambda d: from_dict(n, d))


def test_multiplication_examples():
    assert s(1, 2) * s(1, 2) == 1
    assert c(1, 2) * c(1, 2) == -1
    assert jm(2, 2) * jm(2, 2) == 2


def test_jm_examples():
    assert not jm(1, 3)
    assert jm(2, 2) == s(1, 2) + s(1, 2) * c(1, 2) * c(2, 2)
    assert not odd_jm(1, 3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_defining_relations(n):
    one = SergeevElement.one(n)
    for a in range(1, n):
        assert s(a, n) * s(a, n) == one
        assert s(a, n) * c(a, n) == c(a + 1, n) * s(a, n)
        if a + 1 < n:
            assert s(a, n) * s(a + 1, n) * s(a, n) == s(a + 1, n) * s(a, n) * s(a + 1, n)
    for a in range(1, n + 1):
        assert c(a, n) * c(a, n) == -one
        for b in range(a + 1, n + 1):
            assert c(a, n) * c(b, n) == -(c(b, n) * c(a, n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_jm_relations(n):
    for a in range(1, n + 1):
        assert jm(a, n) == (odd_jm(a, n) * c(a, n)).scale(R2)
        for b in range(1, n + 1):
            assert jm(a, n) * jm(b, n) == jm(b, n) * jm(a, n)
            if a != b:
                assert not (odd_jm(a, n) * odd_jm(b, n) + odd_jm(b, n) * odd_jm(a, n))


@given(elements(3), elements(3))
@settings(max_examples=40, deadline=None)
def test_product_matches_reference(x, y):
    assert as_dict(x * y) == reference_product(3, as_dict(x), as_dict(y))


@given(elements(3), elements(3), elements(3))
@settings(max_examples=25, deadline=None)
def test_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


def test_idempotent_examples():
    assert idempotent(BarredStandardTableau.parse("1")) == 1
    e12 = idempotent(BarredStandardTableau.parse("1,2"))
    e12b = idempotent(BarredStandardTableau.parse("1,2b"))
    x = jm(2, 2)
    half = Fraction(1, 2)
    assert e12 == x.scale(1 / (2 * R2)) + half
    assert e12b == half - x.scale(1 / (2 * R2))
    assert e12 + e12b == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_idempotent_system(n):
    tabs = all_barred_tableaux(n)
    es = [idempotent(U) for U in tabs]
    assert sum(es, SergeevElement.zero(n)) == 1
    for U, e in zip(tabs, es):
        for a, k in enumerate(U.signed_contents(), start=1):
            assert jm(a, n) * e == e.scale(k) == e * jm(a, n)
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            assert e * f == (e if i == j else 0)


def test_clifford_idempotents():
    U = BarredStandardTableau.parse("1,2;3")
    d1, d2 = U.diagonal_entries()
    E = clifford_idempotent(U, [1])
    assert E == (1 + (c(d1, 3) * c(d2, 3)).scale(I)).scale(Fraction(1, 2))
    assert E * E == E
    assert not clifford_idempotent(U, [1]) * clifford_idempotent(U, [-1])
    assert clifford_idempotent(BarredStandardTableau.parse("1,2"), []) == 1
    with pytest.raises(ValueError):
        clifford_idempotent(U, [1, 1])


def test_module_examples():
    mod = module_matrices(P((2,)))
    T = enumerate_standard_barred(P((2,)))[0]
    v = mod.barred_vector(T)
    assert mod.act(jm(2, 2), v) == {k: R2 for k in v}
    (k,) = v
    w = mod.act(s(1, 2), v)
    inv = R2 / 2
    assert w == {k: inv, mod.vector_index(T, 0b11): inv}
    assert module_matrices(P((2, 1))).dim == 8


@pytest.mark.parametrize("lam", [P((1,)), P((2,)), P((2, 1)), P((3,)), P((3, 1))], ids=str)
def test_module_structure(lam):
    mod = module_matrices(lam)
    assert check_module_relations(mod) == []
    tabs = enumerate_standard_barred(lam)
    for U in tabs:
        for V in tabs:
            want = mod.barred_vector(V) if U == V else {}
            assert mod.act(idempotent(U), mod.barred_vector(V)) == want
    for delta in deltas(lam):
        basis = submodule_basis(lam, delta)
        assert is_invariant(mod, basis)
        if lam.length % 2:
            plus, minus = split_pm(lam, delta)
            assert rank(plus) == rank(minus) == rank(basis) // 2
            assert is_invariant(mod, plus) and is_invariant(mod, minus)


def test_submodule_sizes():
    assert rank(submodule_basis(P((2,)), ())) == 4
    assert rank(submodule_basis(P((2, 1)), (1,))) == 4
    plus, minus = split_pm(P((1,)), ())
    assert (rank(plus), rank(minus)) == (1, 1)
    with pytest.raises(ValueError):
        split_pm(P((2, 1)), (1,))


def test_module_detects_wrong_vector():
    mod = module_matrices(P((2,)))
    U, V = enumerate_standard_barred(P((2,)))
    assert mod.act(idempotent(U), mod.barred_vector(V)) == {}
    assert mod.act(idempotent(U), mod.barred_vector(U)) != {}


def test_conjugation_sums():
    V = BarredStandardTableau.parse("1,2")
    assert conjugation_sum(V) == 4
    lam = P((2, 1))
    for V in enumerate_standard_barred(lam):
        assert conjugation_sum(V) == shape_sum(lam).scale(3 * 2 * 4)


def test_character_examples():
    assert character_element(P((2,))).identity_coefficient() == 4
    assert character_element(P((1,))).identity_coefficient() == 2
    lam = P((2, 1))
    a, b = enumerate_standard_barred(lam)[:2]
    assert character_element(lam, a) == character_element(lam, b)
    assert character_element(lam) == character_from_traces(lam)
