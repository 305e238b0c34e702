"""Exact arithmetic for fibrewise Fourier-Mukai transforms.

Chern-class actions of relative transforms on elliptic surfaces and
curves: Hom/Ext dimensions between stable sheaves on an elliptic
curve, transform-index bookkeeping, the moduli correspondence
sending (r, c1, c2) to a Picard-times-Hilbert product, and the
supporting lattice arithmetic.  Everything is exact; nothing floats.
"""

from .curve import (
    ExtProfile,
    GradedObject,
    StableAtom,
    fm_transform,
    hom_ext_atoms,
    hom_ext_objects,
    parseval_check,
    wit_decompose,
    wit_index,
)
from .lattice import (
    CurveClass,
    DomainError,
    FMMatrix,
    SurfaceClass,
    SurfaceGeometry,
    ch2,
    euler_curve,
    euler_surface,
    find_ab,
    normalize_twist,
    psi_matrix,
    transform_rd,
    twist_class,
)
from .surface import (
    ExampleWitness,
    IdealWitReport,
    JxDescriptor,
    ModificationResult,
    ModuliProblem,
    ModuliReport,
    ObstructionError,
    WitCertainty,
    WitVerdict,
    classify_wit_surface,
    complete_matrix,
    elementary_modification,
    generate_example,
    ideal_wit0_check,
    moduli_correspondence,
    moduli_numbers,
)

__all__ = [
    "CurveClass",
    "DomainError",
    "ExampleWitness",
    "ExtProfile",
    "FMMatrix",
    "GradedObject",
    "IdealWitReport",
    "JxDescriptor",
    "ModificationResult",
    "ModuliProblem",
    "ModuliReport",
    "ObstructionError",
    "StableAtom",
    "SurfaceClass",
    "SurfaceGeometry",
    "WitCertainty",
    "WitVerdict",
    "ch2",
    "classify_wit_surface",
    "complete_matrix",
    "elementary_modification",
    "euler_curve",
    "euler_surface",
    "find_ab",
    "fm_transform",
    "generate_example",
    "hom_ext_atoms",
    "hom_ext_objects",
    "ideal_wit0_check",
    "moduli_correspondence",
    "moduli_numbers",
    "normalize_twist",
    "parseval_check",
    "psi_matrix",
    "transform_rd",
    "twist_class",
    "wit_decompose",
    "wit_index",
]

__version__ = "0.1.0"
