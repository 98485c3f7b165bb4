"""The ten acceptance criteria, each exact and within its time limit.

Run alone for cold-cache timings:  pytest tests/test_acceptance.py -v -s
"""

import pytest

from qcapelli.shifted import StrictPartition, strict_partitions
from qcapelli.suite import (
    CAPELLI_CASES,
    check_capelli,
    check_centrality,
    check_characters,
    check_harish_chandra,
    check_idempotents,
    check_immanant_image,
    check_module,
    check_schur_q,
    check_supertrace_character,
    check_tableau_capelli,
)

CRITERIA = [
    ("01-idempotents", lambda: check_idempotents(4), 60),
    ("02-module", lambda: check_module(4), 60),
    ("03-characters", lambda: check_characters(strict_partitions(3) + [StrictPartition((3, 1))]), 300),
    ("04-supertrace-character", lambda: check_supertrace_character(4, (2, 3)), 120),
] + [
    (f"05-capelli-M{M}-N{N}-n{n}", lambda c=(M, N, n): check_capelli((c,)), 300)
    for M, N, n in CAPELLI_CASES
] + [
    ("06-tableau-capelli", lambda: check_tableau_capelli(3, 2, 2), 180),
    ("07-centrality", lambda: check_centrality(3, 2), 120),
    ("08-harish-chandra", lambda: check_harish_chandra(4, (2, 3)), 300),
    ("09-immanant-image", lambda: check_immanant_image(3, 2, 2), 180),
    ("10-schur-q", lambda: check_schur_q(5, (2, 3)), 60),
]


@pytest.mark.parametrize("check,limit", [(c, t) for _, c, t in CRITERIA], ids=[name for name, _, _ in CRITERIA])
def test_criterion(check, limit, request, capsys):
    report = check()
    within = report.seconds <= limit
    with capsys.disabled():
        verdict = "PASS" if report.passed and within else "FAIL"
        print(f"\n[{verdict}] {request.node.callspec.id}: exact={report.passed} {report.seconds:.1f}s (limit {limit}s)")
    assert report.passed, report.witness
    assert within
