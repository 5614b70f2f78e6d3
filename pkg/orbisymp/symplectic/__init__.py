from .closedness import closedness_probe
from .decomposition import decomposition_residual, piece_pairings
from .gram import gram_matrix, gram_report
from .models import GramReport, PairingReport
from .pairing import omega_closed_form, omega_cycle, pairing_report
from .tau import boundary_term_identity_check, tau_form, tau_on_image

__all__ = [
    "GramReport",
    "PairingReport",
    "boundary_term_identity_check",
    "closedness_probe",
    "decomposition_residual",
    "gram_matrix",
    "gram_report",
    "omega_closed_form",
    "omega_cycle",
    "pairing_report",
    "piece_pairings",
    "tau_form",
    "tau_on_image",
]
