"""Exact algebra around the queer Lie superalgebra q_N: Sergeev idempotents, immanants in U(q_N) and Weyl-algebra operator identities."""

from .polynomials import Poly, is_supersymmetric
from .scalars import GaussianSurd, I, Surd, narrow, sqrt_rational
from .schur_q import characterization_check, factorial_schur_q, schur_q
from .sergeev import SergeevElement, character_element, idempotent, jm, odd_jm
from .shifted import (
    BarredStandardTableau,
    StrictPartition,
    enumerate_standard_barred,
    g_lambda,
    strict_partitions,
)
from .suite import VerificationReport
from .tensor_rep import SuperOperator, sergeev_to_operator
from .uqn import PBWElement, capelli_element, hc_image, is_central, quantum_immanant
from .weyl_rep import DiffOp, rep_fklact, verify_even_capelli, verify_odd_capelli, verify_tableau_capelli

__all__ = [
    "BarredStandardTableau",
    "DiffOp",
    "GaussianSurd",
    "I",
    "PBWElement",
    "Poly",
    "SergeevElement",
    "StrictPartition",
    "SuperOperator",
    "Surd",
    "VerificationReport",
    "capelli_element",
    "character_element",
    "characterization_check",
    "enumerate_standard_barred",
    "factorial_schur_q",
    "g_lambda",
    "hc_image",
    "idempotent",
    "is_central",
    "is_supersymmetric",
    "jm",
    "narrow",
    "odd_jm",
    "quantum_immanant",
    "rep_fklact",
    "schur_q",
    "sergeev_to_operator",
    "sqrt_rational",
    "strict_partitions",
    "verify_even_capelli",
    "verify_odd_capelli",
    "verify_tableau_capelli",
]
