"""Exact apolarity, antipolar forms and real-rank certificates for partially symmetric tensors."""

__version__ = "0.1.0"

from .errors import (InputError, PreconditionError, SingularCatalecticantError,  # noqa: E402
                     ToricApolarError)
from .exactalg import (BinaryForm, ExactMatrix, Fraction, GradedForm, Rational, Ring,  # noqa: E402
                       UniPoly, adjugate, det_cofactor, det_exact, det_symbolic, discriminant,
                       binary_form_positive, kernel_basis, sturm_real_root_count)
from .apolarity import (CatalecticantMatrix, apolar_apply, binary_apolar_generators,  # noqa: E402
                        binary_rank_complex, catalecticant, generic_rank,
                        middle_catalecticant, rs_witness_binary, tangential_membership_binary)
from .antipolar import (AntipolarForm, QuarticScanReport, antipolar, antipolar_eval,  # noqa: E402
                        forbidden_certificate, forbidden_scan_quartic, rs_membership)
from .realcert import (BoundarySide, RankCertificate, SignatureReport,  # noqa: E402
                       omega_real_zero_exists, rank_certify, reznick_rank, signature,
                       typical_rank_sample)
from .hyperdet import (Pencil, Tensor2222, bergqvist_real_rank, hyperdet_222,  # noqa: E402
                       hyperdet_2222, hyperdet_2nn, pencil_form, symmetric_tangential_sample,
                       tangential_join_sample)
from .syntax import parse_form  # noqa: E402

__all__ = [
    "AntipolarForm", "BinaryForm", "BoundarySide", "CatalecticantMatrix", "ExactMatrix",
    "Fraction", "GradedForm", "InputError", "Pencil", "PreconditionError",
    "QuarticScanReport", "RankCertificate", "Rational", "Ring", "SignatureReport",
    "SingularCatalecticantError", "Tensor2222", "ToricApolarError", "UniPoly", "adjugate",
    "antipolar", "antipolar_eval", "apolar_apply", "bergqvist_real_rank",
    "binary_apolar_generators", "binary_form_positive", "binary_rank_complex",
    "catalecticant", "det_cofactor", "det_exact", "det_symbolic", "discriminant",
    "forbidden_certificate", "forbidden_scan_quartic", "generic_rank", "hyperdet_222",
    "hyperdet_2222", "hyperdet_2nn", "kernel_basis", "middle_catalecticant",
    "omega_real_zero_exists", "parse_form", "pencil_form", "rank_certify", "reznick_rank",
    "rs_membership", "rs_witness_binary", "signature", "sturm_real_root_count",
    "symmetric_tangential_sample", "tangential_join_sample", "tangential_membership_binary",
    "typical_rank_sample",
]
