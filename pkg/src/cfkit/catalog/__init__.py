"""Seven series with continued-fraction tails, their oracles and checks."""
from .entries import NAMES, CatalogEntry, Certificate, Identity, entries, entry
from .verify import (
    CertificateReport, LinkageReport, alt_form_residual, closed_form_value,
    difference_equation_residual, even_part_linkage, n_independence, perturbation_sites,
    perturbed, phi_certificate, reference_value, tail_identity_residual, tail_value, total,
)

__all__ = [
    "NAMES", "CatalogEntry", "Certificate", "CertificateReport", "Identity", "LinkageReport",
    "alt_form_residual", "closed_form_value", "difference_equation_residual", "entries", "entry",
    "even_part_linkage", "n_independence", "perturbation_sites", "perturbed", "phi_certificate",
    "reference_value", "tail_identity_residual", "tail_value", "total",
]
