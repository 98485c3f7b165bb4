import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcapelli.polynomials import Poly
from qcapelli.schur_q import schur_q
from qcapelli.sergeev import SergeevElement, algebra, c, idempotent, jm, s
from qcapelli.shifted import BarredStandardTableau, StrictPartition, all_barred_tableaux
from qcapelli.tensor_rep import (
    SuperOperator,
    character_identity,
    conjugated_supertrace,
    index_parity,
    jm_image,
    local_operator,
    power_space,
    sergeev_to_operator,
    supertrace_of_product,
    supertrace_with_y,
    supertrace_with_y_direct,
    y_matrix,
)

P = StrictPartition


def test_images_of_generators():
    n, N = 2, 2
    one = SuperOperator.identity(power_space(N, n))
    perm = sergeev_to_operator(s(1, n), N)
    cliff = sergeev_to_operator(c(1, n), N)
    assert perm * perm == one
    assert cliff * cliff == -one
    assert perm * cliff == sergeev_to_operator(c(2, n), N) * perm


def test_supertrace_examples():
    V = power_space(2, 1)
    assert SuperOperator.identity(V).supertrace() == 0
    for k in (1, 2, -1, -2):
        assert local_operator(V, 1, k, k).supertrace() == (-1 if k < 0 else 1)


def test_koszul_sign():
    V = power_space(1, 2)
    op = local_operator(V, 2, 1, -1)
    assert op[((-1, 1), (-1, -1))] == -1
    assert op[((1, 1), (1, -1))] == 1


def test_y_and_jm_images():
    assert y_matrix(3).supertrace() == 2 * sum(Poly.variables(3), Poly(3))
    assert not jm_image(1, 3, 2)
    for b in range(1, 4):
        assert jm_image(b, 3, 2) == sergeev_to_operator(jm(b, 3), 2)


def test_character_identity_examples():
    U = BarredStandardTableau.parse("1")
    lhs, rhs = character_identity(P((1,)), U, 2)
    y1, y2 = Poly.variables(2)
    assert lhs == rhs == 2 * (y1 + y2)
    (z,) = Poly.variables(1)
    lhs, rhs = character_identity(P((2,)), BarredStandardTableau.parse("1,2"), 1)
    assert lhs == rhs == 2 * z**2
    lhs, rhs = character_identity(P((2, 1)), BarredStandardTableau.parse("1,2;3"), 1)
    assert lhs == rhs == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fast_supertrace_matches_operator_products(n):
    for U in all_barred_tableaux(n):
        e = idempotent(U)
        assert supertrace_with_y(e, 2) == supertrace_with_y_direct(e, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("N", [2, 3])
def test_character_identity(n, N):
    for U in all_barred_tableaux(n):
        if U.shape.length <= N:
            lhs, rhs = character_identity(U.shape, U, N)
            assert lhs == rhs


def test_wrong_shape_fails_character_identity():
    U = BarredStandardTableau.parse("1,2;3")
    assert supertrace_with_y(idempotent(U), 2) != schur_q(P((3,)), 2)


def test_conjugation_invariance():
    V = BarredStandardTableau.parse("1,2")
    base = supertrace_with_y(idempotent(V), 2)
    for h in range(algebra(2).size):
        assert conjugated_supertrace(V, h, 2) == base


@pytest.mark.parametrize("n", [2, 3])
def test_images_of_idempotents(n):
    tabs = all_barred_tableaux(n)
    ops = [sergeev_to_operator(idempotent(U), 2) for U in tabs]
    for i, A in enumerate(ops):
        assert A * A == A
        for B in ops[i + 1 :]:
            assert not A * B


def sergeev_elements(n):
    G = algebra(n).size
    return st.dictionaries(st.integers(0, G - 1), st.integers(-2, 2), max_size=3).map(lambda t: SergeevElement(n, t))


@given(sergeev_elements(3), sergeev_elements(3))
@settings(max_examples=15, deadline=None)
def test_homomorphism(x, y):
    assert sergeev_to_operator(x * y, 2) == sergeev_to_operator(x, 2) * sergeev_to_operator(y, 2)


def homogeneous_operators(parity):
    V = power_space(1, 2)
    pairs = [(r, c) for r in V.basis for c in V.basis if (index_parity(r) + index_parity(c)) % 2 == parity]
    return st.dictionaries(st.sampled_from(pairs), st.integers(-3, 3), max_size=6).map(lambda e: SuperOperator(V, V, e))


@given(st.data(), st.integers(0, 1), st.integers(0, 1))
@settings(max_examples=60, deadline=None)
def test_supertrace_cyclicity(data, pa, pb):
    A = data.draw(homogeneous_operators(pa))
    B = data.draw(homogeneous_operators(pb))
    assert (A * B).supertrace() == (-1) ** (pa * pb) * (B * A).supertrace()
    assert supertrace_of_product(A, B) == (A * B).supertrace()


def test_operator_identity_and_zero():
    V = power_space(2, 2)
    one = SuperOperator.identity(V)
    assert one == sergeev_to_operator(SergeevElement.one(2), 2)
    assert not SuperOperator.zero(V)
    assert not one.scale(0)
    assert one - one == SuperOperator.zero(V)
