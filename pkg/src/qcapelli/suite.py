"""Verification suite: one check per identity family, each returning a report.

Every check is exact; a report passes iff no witness was recorded.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .polynomials import Poly, is_supersymmetric
from .schur_q import characterization_check, factorial_schur_q, polys_independent, schur_q
from .sergeev import (
    SergeevElement,
    character_element,
    character_from_traces,
    check_module_relations,
    conjugation_sum,
    deltas,
    idempotent,
    is_invariant,
    jm,
    module_matrices,
    rank,
    shape_sum,
    split_pm,
    submodule_basis,
)
from .shifted import (
    StrictPartition,
    all_barred_tableaux,
    dim_hat,
    dim_simple,
    enumerate_standard_barred,
    g_lambda,
    strict_partitions,
    strict_partitions_upto,
)
from .tensor_rep import character_identity
from .uqn import capelli_element, hc_image, is_central, quantum_immanant
from .weyl_rep import (
    verify_annihilation,
    verify_even_capelli,
    verify_immanant_image,
    verify_odd_capelli,
    verify_tableau_capelli,
)

CAPELLI_CASES = ((1, 1, 1), (1, 1, 2), (2, 2, 1), (2, 2, 2), (2, 2, 3))


@dataclass
class VerificationReport:
    identity: str
    parameters: dict
    witness: object = None
    seconds: float = 0.0
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.witness is None

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "parameters": self.parameters,
            "pass": self.passed,
            "seconds": round(self.seconds, 3),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else f"  witness: {self.witness}"
        return f"{verdict}  {self.identity}  ({self.seconds:.1f}s){extra}"


class _Run:
    """Collects the first failure; later failures are only counted."""

    def __init__(self, identity, parameters):
        self.report = VerificationReport(identity, parameters)
        self.t0 = time.perf_counter()
        self.failures = 0

    def fail(self, what):
        self.failures += 1
        if self.report.witness is None:
            self.report.witness = what

    def done(self) -> VerificationReport:
        self.report.seconds = time.perf_counter() - self.t0
        if self.failures > 1:
            self.report.details.append(f"{self.failures} failing cases")
        return self.report


def _shapes(max_n, max_length=None):
    out = []
    for n in range(1, max_n + 1):
        out += [lam for lam in strict_partitions(n) if max_length is None or lam.length <= max_length]
    return out


def check_idempotents(max_n: int = 4) -> VerificationReport:
    run = _Run("idempotents", {"max_n": max_n})
    for n in range(1, max_n + 1):
        tabs = all_barred_tableaux(n)
        es = [idempotent(U) for U in tabs]
        total = SergeevElement.zero(n)
        for U, e in zip(tabs, es):
            total = total + e
            for a, k in enumerate(U.signed_contents(), start=1):
                if jm(a, n) * e != e.scale(k):
                    run.fail(f"x_{a} e_U != k_{a} e_U for U={U.to_text()}")
        for i, e in enumerate(es):
            for j, f in enumerate(es):
                prod = e * f
                if (i == j and prod != e) or (i != j and prod):
                    run.fail(f"e_U e_V wrong for U={tabs[i].to_text()}, V={tabs[j].to_text()}")
        if total != SergeevElement.one(n):
            run.fail(f"sum of idempotents is not 1 for n={n}")
    return run.done()


def check_module(max_n: int = 4) -> VerificationReport:
    run = _Run("module", {"max_n": max_n})
    for lam in _shapes(max_n):
        mod = module_matrices(lam)
        bad = check_module_relations(mod)
        if bad:
            run.fail(f"{lam}: relations {bad[:3]}")
        tabs = enumerate_standard_barred(lam)
        for U in tabs:
            vU = mod.barred_vector(U)
            for a, k in enumerate(U.signed_contents(), start=1):
                if mod.act(jm(a, lam.n), vU) != {i: v * k for i, v in vU.items() if v * k}:
                    run.fail(f"{lam}: x_{a} v_U for U={U.to_text()}")
            eU = idempotent(U)
            for V in tabs:
                vV = mod.barred_vector(V)
                got = mod.act(eU, vV)
                want = vV if U == V else {}
                if got != want:
                    run.fail(f"{lam}: e_U v_V for U={U.to_text()}, V={V.to_text()}")
        total = []
        for delta in deltas(lam):
            basis = submodule_basis(lam, delta)
            r = rank(basis)
            if r != dim_simple(lam):
                run.fail(f"{lam}: dim U_delta={r} for delta={delta}")
            if not is_invariant(mod, basis):
                run.fail(f"{lam}: U_delta not invariant for delta={delta}")
            total += basis
            if lam.length % 2:
                plus, minus = split_pm(lam, delta)
                rp, rm = rank(plus), rank(minus)
                if rp != rm or rp + rm != r:
                    run.fail(f"{lam}: split sizes {rp}+{rm}")
                if not (is_invariant(mod, plus) and is_invariant(mod, minus)):
                    run.fail(f"{lam}: split parts not invariant")
        if rank(total) != dim_hat(lam):
            run.fail(f"{lam}: summands do not fill the module")
    return run.done()


def check_characters(shapes=None) -> VerificationReport:
    if shapes is None:
        shapes = strict_partitions(3) + [StrictPartition((3, 1))]
    run = _Run("characters", {"shapes": [list(s.parts) for s in shapes]})
    for lam in shapes:
        n = lam.n
        factor = Fraction(factorial(n) * 2**lam.length, g_lambda(lam))
        target = shape_sum(lam).scale(factor)
        from_traces = character_from_traces(lam)
        for V in enumerate_standard_barred(lam):
            cs = conjugation_sum(V)
            if cs != target:
                run.fail(f"{lam}: conjugation sum for V={V.to_text()}")
            if character_element(lam, V) != from_traces:
                run.fail(f"{lam}: character element for V={V.to_text()}")
    return run.done()


def check_supertrace_character(max_n: int = 4, Ns=(2, 3)) -> VerificationReport:
    run = _Run("supertrace-character", {"max_n": max_n, "N": list(Ns)})
    for N in Ns:
        for lam in _shapes(max_n, N):
            for U in enumerate_standard_barred(lam):
                lhs, rhs = character_identity(lam, U, N)
                if lhs != rhs:
                    run.fail(f"N={N}, U={U.to_text()}")
    return run.done()


def check_capelli(cases=CAPELLI_CASES) -> VerificationReport:
    run = _Run("capelli", {"cases": [list(c) for c in cases]})
    for M, N, n in cases:
        for f in (verify_odd_capelli, verify_even_capelli):
            rep = f(M, N, n)
            run.report.details.append(f"{rep['identity']} M={M} N={N} n={n}: {rep['seconds']}s")
            if not rep["exact_equal"]:
                run.fail({"case": [M, N, n], "identity": rep["identity"], "terms": rep["discrepancy_terms"][:1]})
    return run.done()


def check_tableau_capelli(max_n: int = 3, M: int = 2, N: int = 2) -> VerificationReport:
    run = _Run("tableau-capelli", {"max_n": max_n, "M": M, "N": N})
    for lam in _shapes(max_n, N):
        for U in enumerate_standard_barred(lam):
            rep = verify_tableau_capelli(U, M, N)
            if not rep["exact_equal"]:
                run.fail({"tableau": U.to_text(), "fue": rep.get("fue"), "terms": rep["discrepancy_terms"][:1]})
    return run.done()


def check_centrality(max_n: int = 3, N: int = 2) -> VerificationReport:
    run = _Run("centrality", {"max_n": max_n, "N": N})
    for lam in _shapes(max_n, N):
        U = enumerate_standard_barred(lam)[0]
        if not is_central(quantum_immanant(U, N)):
            run.fail(f"S_{lam} not central")
    return run.done()


def check_harish_chandra(max_n: int = 4, Ns=(2, 3)) -> VerificationReport:
    run = _Run("harish-chandra", {"max_n": max_n, "N": list(Ns)})
    for N in Ns:
        images = []
        for lam in _shapes(max_n, N):
            tabs = enumerate_standard_barred(lam)
            S = quantum_immanant(tabs[0], N)
            for U in tabs[1:]:
                if quantum_immanant(U, N) != S:
                    run.fail(f"N={N}: S depends on the tableau, U={U.to_text()}")
            img = hc_image(S, N)
            images.append(img)
            if img != factorial_schur_q(lam, N, "+"):
                run.fail(f"N={N}: hc(S_{lam}) != Q+")
            for U in tabs:
                if hc_image(capelli_element(U, N), N) != factorial_schur_q(lam, N, "-"):
                    run.fail(f"N={N}: hc(C_{lam}) != Q- for U={U.to_text()}")
        if not polys_independent(images):
            run.fail(f"N={N}: images are linearly dependent")
    return run.done()


def check_immanant_image(max_n: int = 3, M: int = 2, N: int = 2) -> VerificationReport:
    run = _Run("immanant-image", {"max_n": max_n, "M": M, "N": N})
    for lam in _shapes(max_n, N):
        rep = verify_immanant_image(lam, M, N)
        if not rep["exact_equal"]:
            run.fail({"shape": list(lam.parts), "terms": rep["discrepancy_terms"][:1]})
        ann = verify_annihilation(lam, M, N)
        if not ann["exact_equal"]:
            run.fail(f"image of S_{lam} does not kill degree <= {lam.n - 1}")
    return run.done()


def check_schur_q(max_size: int = 5, Ns=(2, 3)) -> VerificationReport:
    run = _Run("schur-q", {"max_size": max_size, "N": list(Ns)})
    for N in Ns:
        for lam in strict_partitions_upto(max_size, max_length=N):
            if not lam.n:
                continue
            q = schur_q(lam, N)
            qp = factorial_schur_q(lam, N, "+")
            qm = factorial_schur_q(lam, N, "-")
            for name, p in (("Q", q), ("Q+", qp), ("Q-", qm)):
                if not is_supersymmetric(p):
                    run.fail(f"N={N}: {name}_{lam} not supersymmetric")
            for sign, p in (("+", qp), ("-", qm)):
                if not characterization_check(p, lam, N, sign):
                    run.fail(f"N={N}: characterization fails for Q{sign}_{lam}")
            neg = qm.substitute([-v for v in Poly.variables(N)])
            if qp != neg.scale((-1) ** lam.n):
                run.fail(f"N={N}: Q+_{lam}(y) != (-1)^n Q-_{lam}(-y)")
    return run.done()


CHECKS = {
    "idempotents": check_idempotents,
    "module": check_module,
    "characters": check_characters,
    "supertrace-character": check_supertrace_character,
    "capelli": check_capelli,
    "tableau-capelli": check_tableau_capelli,
    "centrality": check_centrality,
    "harish-chandra": check_harish_chandra,
    "immanant-image": check_immanant_image,
    "schur-q": check_schur_q,
}


def suite_calls(max_n: int = 4, N: int | None = None):
    """The checks as zero-argument callables, scaled to ``max_n`` and ``N``.

    With the defaults these are the full acceptance parameters.
    """
    Ns = (2, 3) if N is None else (N,)
    small_n = min(max_n, 3)
    char_shapes = [lam for lam in strict_partitions(3) if lam.n <= max_n]
    if max_n >= 4:
        char_shapes.append(StrictPartition((3, 1)))
    cases = tuple(c for c in CAPELLI_CASES if c[2] <= max_n)
    if N is not None:
        cases = tuple(c for c in cases if c[1] <= N)
    MN = 2 if N is None else N
    return {
        "idempotents": lambda: check_idempotents(max_n),
        "module": lambda: check_module(max_n),
        "characters": lambda: check_characters(char_shapes),
        "supertrace-character": lambda: check_supertrace_character(max_n, Ns),
        "capelli": lambda: check_capelli(cases),
        "tableau-capelli": lambda: check_tableau_capelli(small_n, MN, MN),
        "centrality": lambda: check_centrality(small_n, MN),
        "harish-chandra": lambda: check_harish_chandra(max_n, Ns),
        "immanant-image": lambda: check_immanant_image(small_n, MN, MN),
        "schur-q": lambda: check_schur_q(5, Ns),
    }
