"""Certificates, verdicts and the homology and collapse oracles behind them."""

from .certificates import Certificate, CertificateError
from .homology import Homology, poset_homology, simplicial_homology
from .verdicts import (
    Verdict,
    check_section_over_target,
    contractible_verdict,
    criterion_wjr2416,
    iterated_reduction_simple,
    kappa_cellwise_report,
    reconcile,
    terminal_reduction_verdict,
)

__all__ = [
    "Certificate",
    "CertificateError",
    "Homology",
    "Verdict",
    "check_section_over_target",
    "contractible_verdict",
    "criterion_wjr2416",
    "iterated_reduction_simple",
    "kappa_cellwise_report",
    "poset_homology",
    "reconcile",
    "simplicial_homology",
    "terminal_reduction_verdict",
]
