from hypothesis import given, settings
from hypothesis import strategies as st

from qcapelli.scalars import I, Surd
from qcapelli.tensor_rep import SuperOperator, index_parity, power_space, supertrace_of_product
from qcapelli.unit_arrays import Registry, UnitMatrix
from qcapelli.weyl_rep import DiffOp, weyl_algebra

W = weyl_algebra(1, 1)
V = power_space(1, 2)
BASIS = V.basis
R2 = Surd.sqrt(2)

scalars = st.sampled_from([1, -1, 2, R2, -R2 / 3, I, 1 + I * R2, 10**15, -(10**15) + R2])
monos = st.sampled_from(
    [
        DiffOp.scalar(W),
        DiffOp.x(W, 1, 1),
        DiffOp.x(W, -1, 1),
        DiffOp.d(W, 1, 1),
        DiffOp.x(W, 1, 1) * DiffOp.d(W, 1, -1),
    ]
)
entries = st.lists(st.tuples(monos, scalars), min_size=1, max_size=2).map(
    lambda ts: DiffOp.sum_of([m.scale(c) for m, c in ts])
)
keys = st.tuples(st.sampled_from(BASIS), st.sampled_from(BASIS))
diffop_matrices = st.dictionaries(keys, entries, max_size=5).map(lambda e: SuperOperator(V, V, e))
scalar_matrices = st.dictionaries(keys, scalars, max_size=5).map(lambda e: SuperOperator(V, V, e))


def reference_product(A, B):
    """Entrywise product with the sign (-1)^{|u| (|m| + |c|)} for u in A and m, c indexing B."""
    out = {}
    for (r, m), u in A.entries.items():
        for (m2, c), w in B.entries.items():
            if m != m2:
                continue
            flip = (index_parity(m) + index_parity(c)) & 1
            term = None
            for pu, part in (u.parity_parts() if isinstance(u, DiffOp) else [(0, u)]):
                piece = part * w if not (pu and flip) else -(part * w)
                term = piece if term is None else term + piece
            out[(r, c)] = term if (r, c) not in out else out[(r, c)] + term
    return SuperOperator(V, V, out)


def via_arrays(A, B, left=False):
    reg = Registry()
    return UnitMatrix.from_operator(A if not left else B, reg).times_scalar_operator(B if not left else A, left=left).to_operator()


@given(diffop_matrices, scalar_matrices)
@settings(max_examples=60, deadline=None)
def test_right_product(A, S):
    assert via_arrays(A, S) == reference_product(A, S)


@given(scalar_matrices, diffop_matrices)
@settings(max_examples=60, deadline=None)
def test_left_product(S, A):
    assert via_arrays(S, A, left=True) == reference_product(S, A)


@given(diffop_matrices, diffop_matrices, scalars)
@settings(max_examples=60, deadline=None)
def test_add_scale_round_trip(A, B, c):
    reg = Registry()
    a, b = UnitMatrix.from_operator(A, reg), UnitMatrix.from_operator(B, reg)
    assert (a + b).to_operator() == A + B
    assert (a - b).to_operator() == A - B
    assert a.scale(c).to_operator() == A.scale(c)
    assert (a - a).is_zero()


@given(diffop_matrices, scalar_matrices)
@settings(max_examples=40, deadline=None)
def test_supertrace_of_product(A, S):
    expected = reference_product(A, S).supertrace()
    got = supertrace_of_product(A, S)
    if not expected:
        assert not got
    else:
        assert got == expected


def test_large_numerators_switch_to_python_integers():
    A = SuperOperator(V, V, {(BASIS[0], BASIS[0]): DiffOp.x(W, 1, 1).scale(10**18)})
    reg = Registry()
    a = UnitMatrix.from_operator(A, reg)
    big = a.scale(10**18).scale(10**18)
    assert big.to_operator() == A.scale(10**36)
