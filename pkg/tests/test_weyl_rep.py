import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcapelli.scalars import I
from qcapelli.sergeev import idempotent
from qcapelli.shifted import BarredStandardTableau, StrictPartition, enumerate_standard_barred
from qcapelli.tensor_rep import sergeev_to_operator
from qcapelli.uqn import PBWElement, QGenerator, q_algebra
from qcapelli.weyl_rep import (
    DiffOp,
    SuperPolynomial,
    _expand_shifted,
    _tableau_context,
    annihilation_degree,
    f_matrix_rep,
    g_matrix_rep,
    homomorphism_check,
    image_of_immanant,
    image_via_character,
    rep_fklact,
    rep_howe,
    rep_pbw,
    twist_consistency,
    verify_annihilation,
    verify_even_capelli,
    verify_immanant_image,
    verify_odd_capelli,
    verify_tableau_capelli,
    weyl_algebra,
    xd_chain,
    xd_matrices_even,
    xd_matrices_odd,
)

P = StrictPartition


def oracle_apply(op, poly):
    """Apply a normal-ordered operator to a polynomial by explicit left derivations."""
    W = op.W
    out = {}
    for (alpha, beta), c in op.terms.items():
        current = dict(poly.terms)
        # d^beta = prod_p d_p^{beta_p} in increasing p; the rightmost factor acts first
        for p in reversed(range(W.nvars)):
            for _ in range(beta[p]):
                nxt = {}
                for e, v in current.items():
                    if not e[p]:
                        continue
                    if W.odd[p]:
                        sign = (-1) ** sum(e[q] for q in range(p) if W.odd[q])
                        v = v * sign
                    else:
                        v = v * e[p]
                    e2 = list(e)
                    e2[p] -= 1
                    nxt[tuple(e2)] = nxt.get(tuple(e2), 0) + v
                current = {e: v for e, v in nxt.items() if v}
        for e, v in current.items():
            if any(alpha[q] and e[q] for q in range(W.nvars) if W.odd[q]):
                continue
            # move each odd variable of e left past the larger odd variables of alpha
            swaps = sum(1 for q in range(W.nvars) if W.odd[q] and e[q] for p in range(q + 1, W.nvars) if W.odd[p] and alpha[p])
            key = tuple(a + b for a, b in zip(alpha, e))
            out[key] = out.get(key, 0) + c * v * (-1) ** swaps
    return SuperPolynomial(W, out)


W12 = weyl_algebra(1, 2)


def exps():
    odd = st.integers(0, 1)
    even = st.integers(0, 2)
    return st.tuples(*[odd if W12.odd[p] else even for p in range(W12.nvars)])


ops = st.dictionaries(st.tuples(exps(), exps()), st.integers(-2, 2), max_size=3).map(lambda t: DiffOp(W12, t))
polys = st.dictionaries(exps(), st.integers(-2, 2), max_size=3).map(lambda t: SuperPolynomial(W12, t))


@given(ops, polys)
@settings(max_examples=60, deadline=None)
def test_apply_matches_oracle(A, f):
    assert A.apply(f) == oracle_apply(A, f)


@given(ops, ops, polys)
@settings(max_examples=60, deadline=None)
def test_composition_acts_as_product(A, B, f):
    assert (A * B).apply(f) == oracle_apply(A, oracle_apply(B, f))


@given(ops, ops, ops)
@settings(max_examples=30, deadline=None)
def test_associativity(A, B, C):
    assert (A * B) * C == A * (B * C)


def test_rep_example():
    W = weyl_algebra(1, 1)
    got = rep_fklact(QGenerator(1, 1), 1, 1)
    want = -(DiffOp.x(W, 1, 1) * DiffOp.d(W, 1, 1) + DiffOp.x(W, -1, 1) * DiffOp.d(W, 1, -1))
    assert got == want
    one = SuperPolynomial.monomial(W, W.zero)
    assert not got.apply(one)


@pytest.mark.parametrize("rep", [rep_fklact, rep_howe], ids=["fklact", "howe"])
def test_homomorphism(rep):
    assert homomorphism_check(2, 2, rep)


def test_twist_consistency():
    assert twist_consistency(2, 2)
    assert twist_consistency(1, 2)


def test_odd_generator_image_carries_i():
    W = weyl_algebra(1, 1)
    got = rep_fklact(QGenerator(1, -1), 1, 1)
    want = (DiffOp.x(W, 1, 1) * DiffOp.d(W, 1, -1) + DiffOp.x(W, -1, 1) * DiffOp.d(W, 1, 1)).scale(I)
    assert got == want


def test_xd_base_cases():
    X, D = xd_matrices_odd(1, 1)
    assert X * D == g_matrix_rep(1, 1, 1)
    X, D = xd_matrices_even(2, 2)
    assert X * D == f_matrix_rep(1, 2, 2)


@pytest.mark.parametrize("M,N,n", [(1, 1, 1), (1, 1, 2), (2, 2, 1), (2, 2, 2)])
def test_capelli_identities(M, N, n):
    assert verify_odd_capelli(M, N, n)["exact_equal"]
    assert verify_even_capelli(M, N, n)["exact_equal"]


def test_degree_preservation():
    chain = xd_chain(2, 2, 2, "even")
    for v in chain.entries.values():
        assert v.x_degree_shift() == {0}
    for v in f_matrix_rep(2, 2, 2, 1).entries.values():
        assert v.x_degree_shift() == {0}


@pytest.mark.parametrize("text", ["1", "1,2", "1,2b"])
def test_tableau_capelli(text):
    rep = verify_tableau_capelli(BarredStandardTableau.parse(text), 2, 2)
    assert rep["exact_equal"] and rep["fue"]


def test_wrong_tableau_pairing_fails():
    U, V = enumerate_standard_barred(P((2,)))
    _, products, chain = _tableau_context(2, 2, 2)
    lhs = _expand_shifted(products, U.signed_contents())
    E_V = sergeev_to_operator(idempotent(V), 2)
    assert not (lhs - chain).times_scalar_operator(E_V).is_zero()
    E_U = sergeev_to_operator(idempotent(U), 2)
    assert (lhs - chain).times_scalar_operator(E_U).is_zero()


def test_immanant_images():
    M = N = 2
    U = BarredStandardTableau.parse("1")
    base = rep_pbw(PBWElement.generator(N, 1, 1, 2) + PBWElement.generator(N, 2, 2, 2), M)
    assert image_of_immanant(U, M, N) == base == image_via_character(P((1,)), M, N)
    for lam in (P((2,)), P((2, 1))):
        assert verify_immanant_image(lam, M, N)["exact_equal"]


def test_annihilation():
    M = N = 2
    assert verify_annihilation(P((2,)), M, N)["exact_equal"]
    assert verify_annihilation(P((2, 1)), M, N)["exact_equal"]
    assert not annihilation_degree(rep_fklact(QGenerator(1, 1), M, N), 1)


def test_generator_images_are_homogeneous():
    for g in q_algebra(2).gens:
        op = rep_fklact(g, 2, 2)
        parities = {p for p, _ in op.parity_parts()}
        assert parities == {(g.i < 0) ^ (g.j < 0)}
