"""Atoms, molecules, their decomposition, and Hardy/Lipschitz/bmo/Campanato estimators."""

from .atoms import (
    SYNTHETIC,
    Condition,
    Molecule,
    ValidationReport,
    antisymmetric_atom,
    indicator_atom,
    projected_atom,
    synthetic_molecule,
    validate_atom,
    validate_molecule,
)
from .balls import MEDIUM, OVERSIZED, SMALL, Ball, BallGrid, SpaceParams, ball_grid, monomial_exponents
from .bump import LocalizedFunction, make_bump, make_g, psi
from .decomposition import (
    Decomposition,
    DecompositionError,
    choose_J,
    decompose_molecule,
    export_decomposition,
    stability,
)
from .maximal import heat_gridfn, heat_orbit, hp_norm, lemma_AE_check, maximal_function, t_sample
from .norms import (
    BallFamily,
    NormEstimate,
    bmo_norm,
    campanato_multiplier,
    campanato_norm,
    level_floor,
    lip_norm,
    project,
)

__all__ = [
    "MEDIUM",
    "OVERSIZED",
    "SMALL",
    "SYNTHETIC",
    "Ball",
    "BallFamily",
    "BallGrid",
    "Condition",
    "Decomposition",
    "DecompositionError",
    "LocalizedFunction",
    "Molecule",
    "NormEstimate",
    "SpaceParams",
    "ValidationReport",
    "antisymmetric_atom",
    "ball_grid",
    "bmo_norm",
    "campanato_multiplier",
    "campanato_norm",
    "choose_J",
    "decompose_molecule",
    "export_decomposition",
    "heat_gridfn",
    "heat_orbit",
    "hp_norm",
    "indicator_atom",
    "lemma_AE_check",
    "level_floor",
    "lip_norm",
    "make_bump",
    "make_g",
    "maximal_function",
    "monomial_exponents",
    "project",
    "projected_atom",
    "psi",
    "stability",
    "synthetic_molecule",
    "t_sample",
    "validate_atom",
    "validate_molecule",
]
