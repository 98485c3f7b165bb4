import pytest

from qcapelli.polynomials import Poly, is_supersymmetric
from qcapelli.schur_q import characterization_check, factorial_schur_q, polys_independent, schur_q
from qcapelli.shifted import StrictPartition, strict_partitions_upto


def one_row_q(n, N):
    """Q_(n): coefficient of t^n in prod_i (1 + y_i t) / (1 - y_i t)."""
    ys = Poly.variables(N)
    series = [Poly.constant(N)] + [Poly(N)] * n
    for y in ys:
        # multiply by (1 + y t) / (1 - y t) = 1 + 2 sum_{k>=1} y^k t^k
        series = [
            series[m] + sum((2 * y**k * series[m - k] for k in range(1, m + 1)), Poly(N)) for m in range(n + 1)
        ]
    return series[n]


def two_row_q(r, s, N):
    """Q_(r,s) = Q_r Q_s + 2 sum_{i=1}^{s} (-1)^i Q_{r+i} Q_{s-i}."""
    q = one_row_q
    out = q(r, N) * q(s, N)
    for i in range(1, s + 1):
        out = out + 2 * (-1) ** i * q(r + i, N) * q(s - i, N)
    return out


SHAPES = [lam for lam in strict_partitions_upto(5) if lam.n]


def test_examples():
    y1, y2 = Poly.variables(2)
    assert schur_q((), 2) == 1
    assert schur_q((1,), 2) == 2 * (y1 + y2)
    assert schur_q((2, 1), 1) == 0
    (z,) = Poly.variables(1)
    assert factorial_schur_q((1,), 3, "+") == 2 * sum(Poly.variables(3), Poly(3))
    assert factorial_schur_q((2,), 1, "+") == 2 * z * (z + 1)


def test_characterization_examples():
    (z,) = Poly.variables(1)
    qp = factorial_schur_q((2,), 1, "+")
    assert characterization_check(qp, (2,), 1, "+")
    assert qp.evaluate([-1]) == 0
    q = schur_q((2,), 1)
    assert q.evaluate([-1]) == 2
    assert not characterization_check(q, (2,), 1, "+")
    assert factorial_schur_q((1,), 2).evaluate([0, 0]) == 0
    assert characterization_check(factorial_schur_q((1,), 2), (1,), 2, "+")


@pytest.mark.parametrize("lam", [lam for lam in SHAPES if lam.length <= 2], ids=str)
@pytest.mark.parametrize("N", [1, 2, 3])
def test_schur_q_against_generating_function(lam, N):
    if lam.length == 1:
        expected = one_row_q(lam.parts[0], N)
    else:
        expected = two_row_q(*lam.parts, N)
    assert schur_q(lam, N) == expected


@pytest.mark.parametrize("lam", SHAPES, ids=str)
@pytest.mark.parametrize("N", [2, 3])
def test_supersymmetry(lam, N):
    for p in (schur_q(lam, N), factorial_schur_q(lam, N, "+"), factorial_schur_q(lam, N, "-")):
        assert is_supersymmetric(p)


@pytest.mark.parametrize("lam", SHAPES, ids=str)
@pytest.mark.parametrize("N", [2, 3])
def test_characterization_and_sign_symmetry(lam, N):
    qp = factorial_schur_q(lam, N, "+")
    qm = factorial_schur_q(lam, N, "-")
    if lam.length <= N:
        assert characterization_check(qp, lam, N, "+")
        assert characterization_check(qm, lam, N, "-")
    else:
        assert not qp and not qm
    assert qp == qm.substitute([-y for y in Poly.variables(N)]).scale((-1) ** lam.n)


def test_wrong_sign_fails_characterization():
    lam = StrictPartition((2,))
    assert factorial_schur_q(lam, 2, "-") != factorial_schur_q(lam, 2, "+")
    assert not characterization_check(factorial_schur_q(lam, 2, "-"), lam, 2, "+")


@pytest.mark.parametrize("N", [1, 2, 3])
def test_linear_independence(N):
    shapes = [lam for lam in strict_partitions_upto(3, max_length=N)]
    assert polys_independent([factorial_schur_q(lam, N, "+") for lam in shapes])
    assert not polys_independent([schur_q((1,), N), schur_q((1,), N).scale(3)])


def test_bad_sign_raises():
    with pytest.raises(ValueError):
        factorial_schur_q((1,), 2, "?")
