from .base import CompressionReport, word_program
from .bands import BandCompression, class_generators, compress_normal_band
from .diameter import compress_bounded_diameter
from .dispatch import STRATEGIES, compress
from .general import GeneralCompression, compress_general
from .groupdispatch import group_compress
from .peel import ideal_generators, nilpotent_peel
from .permutative import PermNormalForm, compress_permutative, minimize_exponents
from .reachability import CubeState, build_cube, compress_group_reachability, emit_from_cube
from .solvable import (
    DeltaSet,
    PolycyclicGenSet,
    PolyRecord,
    adapt_subnormal,
    build_derived_adapted_set,
    build_polycyclic_set,
    compress_group_solvable,
    compress_group_solvable_bounded,
    emit_delta_program,
    solvable_plan,
)

__all__ = [
    "BandCompression",
    "CompressionReport",
    "CubeState",
    "DeltaSet",
    "GeneralCompression",
    "PermNormalForm",
    "PolycyclicGenSet",
    "PolyRecord",
    "STRATEGIES",
    "adapt_subnormal",
    "build_cube",
    "build_derived_adapted_set",
    "build_polycyclic_set",
    "class_generators",
    "compress",
    "compress_bounded_diameter",
    "compress_general",
    "compress_group_reachability",
    "compress_group_solvable",
    "compress_group_solvable_bounded",
    "compress_normal_band",
    "compress_permutative",
    "emit_delta_program",
    "emit_from_cube",
    "group_compress",
    "ideal_generators",
    "minimize_exponents",
    "nilpotent_peel",
    "solvable_plan",
    "word_program",
]
