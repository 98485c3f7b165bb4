from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcapelli.scalars import Surd
from qcapelli.shifted import (
    BarredStandardTableau,
    ShiftedBox,
    StrictPartition,
    addable_boxes,
    dim_hat,
    dim_simple,
    enumerate_marked,
    enumerate_standard_barred,
    g_lambda,
    is_marked_valid,
    strict_partitions,
    strict_partitions_upto,
)

P = StrictPartition


def brute_force_standard(lam):
    """All standard shifted fillings, by trying every permutation of 1..n."""
    boxes = lam.boxes()
    out = []
    for perm in permutations(range(1, lam.n + 1)):
        grid = dict(zip(boxes, perm))
        ok = all(
            grid.get(ShiftedBox(b.row, b.col + 1), 10**9) > v and grid.get(ShiftedBox(b.row + 1, b.col), 10**9) > v
            for b, v in grid.items()
        )
        if ok:
            out.append(grid)
    return out


def test_addable_boxes():
    assert addable_boxes(P(())) == [ShiftedBox(1, 1)]
    assert addable_boxes(P((1,))) == [ShiftedBox(1, 2)]
    assert addable_boxes(P((2, 1))) == [ShiftedBox(1, 3)]


def test_signed_content():
    U = BarredStandardTableau(P((2,)), [[1, 2]])
    assert U.signed_content(2) == Surd.sqrt(2)
    assert BarredStandardTableau(P((2,)), [[1, 2]], {2}).signed_content(2) == -Surd.sqrt(2)
    V = BarredStandardTableau(P((2, 1)), [[1, 2], [3]])
    assert V.signed_content(3) == 0


def test_enumeration_counts():
    assert len(enumerate_standard_barred(P((1,)))) == 1
    texts = sorted(U.to_text() for U in enumerate_standard_barred(P((2,))))
    assert texts == ["1,2", "1,2b"]
    assert len(enumerate_standard_barred(P((3, 1)))) == 8


def test_g_lambda():
    for n in range(1, 6):
        assert g_lambda(P((n,))) == 1
    assert g_lambda(P((2, 1))) == 1
    assert g_lambda(P((3, 1))) == 2


def test_dimensions():
    assert (dim_simple(P((2,))), dim_hat(P((2,)))) == (4, 4)
    assert (dim_simple(P((2, 1))), dim_hat(P((2, 1)))) == (4, 8)
    assert (dim_simple(P((1,))), dim_hat(P((1,)))) == (2, 2)


def test_enumerate_marked_examples():
    assert len(enumerate_marked(P((1,)), 2)) == 4
    rows = sorted(t.to_json()["rows"] for t in enumerate_marked(P((2,)), 1))
    assert rows == [[["1", "1"]], [["1'", "1"]]]
    assert enumerate_marked(P((2, 1)), 1) == []


@pytest.mark.parametrize("lam", strict_partitions_upto(6)[1:], ids=str)
def test_count_and_validity(lam):
    tabs = enumerate_standard_barred(lam)
    assert len(tabs) == 2 ** (lam.n - lam.length) * g_lambda(lam)
    assert len({(U.rows, U.bars) for U in tabs}) == len(tabs)
    unbarred = {U.rows for U in tabs}
    brute = brute_force_standard(lam)
    assert len(unbarred) == len(brute) == g_lambda(lam)
    for U in tabs:
        assert U.is_valid()
        assert not U.bars & set(U.diagonal_entries())


@pytest.mark.parametrize("lam", strict_partitions_upto(4)[1:], ids=str)
@pytest.mark.parametrize("N", [1, 2, 3])
def test_marked_count_vanishes_iff_too_long(lam, N):
    tabs = enumerate_marked(lam, N)
    assert (len(tabs) == 0) == (lam.length > N)
    assert all(is_marked_valid(t) for t in tabs)


def test_marked_against_brute_force():
    lam = P((2, 1))
    boxes = lam.boxes()
    count = 0
    for codes in product(range(1, 5), repeat=len(boxes)):
        grid = dict(zip(boxes, codes))
        ok = True
        for b, c in grid.items():
            r = grid.get(ShiftedBox(b.row, b.col + 1))
            d = grid.get(ShiftedBox(b.row + 1, b.col))
            # primed letters (odd codes) may not repeat in a row, unprimed not in a column
            if r is not None and (r < c or (r == c and c % 2)):
                ok = False
            if d is not None and (d < c or (d == c and not c % 2)):
                ok = False
        count += ok
    assert len(enumerate_marked(lam, 2)) == count


def test_strict_partitions():
    assert {p.parts for p in strict_partitions(5)} == {(5,), (4, 1), (3, 2)}
    assert len(strict_partitions(6)) == 4
    with pytest.raises(ValueError):
        P((1, 1))


@given(st.sampled_from([lam for lam in strict_partitions_upto(5) if lam.n]), st.data())
@settings(max_examples=40, deadline=None)
def test_text_and_json_round_trip(lam, data):
    U = data.draw(st.sampled_from(enumerate_standard_barred(lam)))
    assert BarredStandardTableau.parse(U.to_text()) == U
    assert BarredStandardTableau.from_json(U.to_json()) == U


def test_parse_rejects_barred_diagonal():
    with pytest.raises(ValueError):
        BarredStandardTableau.parse("1b,2")
