from ._core import (
    DeformationConfig,
    DeformationReport,
    DisplacementField,
    LevelSummary,
    Mesh,
    QualityReport,
    deform,
    eval_basis,
    eval_interpolant,
    gen_airfoil_mesh,
    gen_ice_bump,
    gen_sinusoidal_displacement,
    orthogonality,
    read_displacements,
    read_su2,
    signed_measures,
    solve_weights,
    write_convergence_csv,
    write_displacements,
    write_su2,
    write_summary,
    write_vtk,
)

__all__ = [
    "DeformationConfig",
    "DeformationReport",
    "DisplacementField",
    "LevelSummary",
    "Mesh",
    "QualityReport",
    "deform",
    "eval_basis",
    "eval_interpolant",
    "gen_airfoil_mesh",
    "gen_ice_bump",
    "gen_sinusoidal_displacement",
    "orthogonality",
    "read_displacements",
    "read_su2",
    "signed_measures",
    "solve_weights",
    "write_convergence_csv",
    "write_displacements",
    "write_su2",
    "write_summary",
    "write_vtk",
]
