"""C_lambda-extended oscillator algebras: exact spectra, Fock matrices and PSSQM checks."""

from .algebra import (
    AlgebraParams,
    DerivedParams,
    KappaParams,
    derive,
    fock_space_exists,
    from_kappa,
    norm_gamma,
    norm_product,
    structure_function,
    to_kappa,
)
from .cyclic import CyclicSpectrumSpec, extract_omegas, match_omegas, rescaled_spectrum
from .errors import (
    ClambdaError,
    ClassificationMismatch,
    ConjugacyViolation,
    DegenerateSpectrum,
    DimensionTooSmall,
    EtaOutOfRange,
    GammaPole,
    InvalidSpec,
    NoMatch,
    NonRealAlpha,
    NotPeriodic,
    RepresentationMissing,
    UnsupportedLambda,
)
from .fock import FockRep, build, verify_relations
from .pssqm import (
    PssqmConfig,
    PssqmSystem,
    build_charge,
    build_general,
    general_trilinear_check,
    khare_charges,
    spectrum_figure2,
    verify_pssqm,
)
from .report import emit_report
from .spectrum import (
    Spectrum,
    SpectrumClass,
    SpectrumLevel,
    classify_ground_order,
    classify_subclass,
    compute_spectrum,
    ordering_signature,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraParams", "DerivedParams", "KappaParams", "derive", "fock_space_exists",
    "from_kappa", "norm_gamma", "norm_product", "structure_function", "to_kappa",
    "CyclicSpectrumSpec", "extract_omegas", "match_omegas", "rescaled_spectrum",
    "ClambdaError", "ClassificationMismatch", "ConjugacyViolation", "DegenerateSpectrum",
    "DimensionTooSmall", "EtaOutOfRange", "GammaPole", "InvalidSpec", "NoMatch",
    "NonRealAlpha", "NotPeriodic", "RepresentationMissing", "UnsupportedLambda",
    "FockRep", "build", "verify_relations",
    "PssqmConfig", "PssqmSystem", "build_charge", "build_general", "general_trilinear_check",
    "khare_charges", "spectrum_figure2", "verify_pssqm",
    "emit_report",
    "Spectrum", "SpectrumClass", "SpectrumLevel", "classify_ground_order", "classify_subclass",
    "compute_spectrum", "ordering_signature",
]
