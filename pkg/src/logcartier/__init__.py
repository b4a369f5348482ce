"""Logarithmic differential forms over F_p, the Cartier operator, and the
section-level cohomology toolkit built on them: Cech cohomology of twisted
log sheaves on projective space and blowups, residue/Gysin sequences, and
the nu(n) = ker(C - 1) machinery."""

from .gflinalg import FpMatrix, PrimeField
from .forms import (
    FormRing,
    LogForm,
    LogPoleError,
    WeightSlice,
    WindowOverflow,
    format_form,
    parse_form,
    slice_map_matrix,
)
from .cartier import (
    ArtinSchreierExtension,
    ASCertificate,
    NuReport,
    ObstructionReport,
    ZBDecomposition,
    artin_schreier_solve,
    c_minus_one_surjectivity,
    cartier,
    cartier_slice_matrix,
    dlog_wedge,
    etale_obstruction_demo,
    frobenius,
    inverse_cartier,
    nu_sections,
    slice_bijection_ok,
    zb_decomposition,
)
from .sequences import (
    ConormalReport,
    FiltrationReport,
    FiltrationSpec,
    SectionSpace,
    SliceComplex,
    closed_preimage,
    closed_residue_complex,
    divisor_lift,
    euler_complex,
    euler_contraction,
    filtration,
    fundamental_ses_check,
    log_section_space,
    projective_ring,
    pullback_ses,
    residue_complexes,
    residue_complex_all_divisors,
    residue_complex_drop,
    residue_complex_twist,
    transport,
    weight_ring,
)
from .cech import (
    BlowupSpace,
    CechComplex,
    CohomologyReport,
    ConnectingReport,
    GeneratorReport,
    ProjectiveSpace,
    ResourceLimit,
    SheafSpec,
    blowup_charts,
    blowup_cohomology,
    cech_cohomology,
    connecting_map_check,
    formal_functions_check,
    generator_check,
    proj_section_space,
)
from .purity import (
    GysinSetup,
    GysinSlice,
    IteratedPurityReport,
    NuPurityReport,
    SquareReport,
    commuting_square,
    eta_decomposition,
    gysin_residue,
    gysin_residue_closed,
    iterated_purity,
    nu_purity_report,
)

__version__ = "0.1.0"

__all__ = [
    "ArtinSchreierExtension",
    "ASCertificate",
    "BlowupSpace",
    "CechComplex",
    "CohomologyReport",
    "ConnectingReport",
    "ConormalReport",
    "FiltrationReport",
    "FiltrationSpec",
    "FormRing",
    "FpMatrix",
    "GeneratorReport",
    "GysinSetup",
    "GysinSlice",
    "IteratedPurityReport",
    "LogForm",
    "LogPoleError",
    "NuPurityReport",
    "NuReport",
    "ObstructionReport",
    "PrimeField",
    "ProjectiveSpace",
    "ResourceLimit",
    "SectionSpace",
    "SheafSpec",
    "SliceComplex",
    "SquareReport",
    "WeightSlice",
    "WindowOverflow",
    "ZBDecomposition",
    "artin_schreier_solve",
    "blowup_charts",
    "blowup_cohomology",
    "c_minus_one_surjectivity",
    "cartier",
    "cartier_slice_matrix",
    "cech_cohomology",
    "closed_preimage",
    "closed_residue_complex",
    "commuting_square",
    "connecting_map_check",
    "divisor_lift",
    "dlog_wedge",
    "eta_decomposition",
    "etale_obstruction_demo",
    "euler_complex",
    "euler_contraction",
    "filtration",
    "formal_functions_check",
    "format_form",
    "frobenius",
    "fundamental_ses_check",
    "generator_check",
    "gysin_residue",
    "gysin_residue_closed",
    "inverse_cartier",
    "iterated_purity",
    "log_section_space",
    "nu_purity_report",
    "nu_sections",
    "parse_form",
    "proj_section_space",
    "projective_ring",
    "pullback_ses",
    "residue_complexes",
    "residue_complex_all_divisors",
    "residue_complex_drop",
    "residue_complex_twist",
    "slice_bijection_ok",
    "slice_map_matrix",
    "transport",
    "weight_ring",
    "zb_decomposition",
]
