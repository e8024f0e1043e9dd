"""Exact cohomology rings of torus bundles over the circle."""

from ._core import (
    TorusBundleError,
    GluingMatrix,
    GroupElement,
    GroupRingElement,
    augmentation,
    build_e,
    build_resolution_summary,
    cohomology_groups,
    cup_tables,
    fox_power,
    homotopy_augmentation_sums,
    report_json,
    ring_mul,
    ring_presentation,
    run_verification,
    s_function,
    satisfies_e_identity,
    smith_normal_form,
    solve_e_lattice,
)

__all__ = [
    "TorusBundleError",
    "GluingMatrix",
    "GroupElement",
    "GroupRingElement",
    "augmentation",
    "build_e",
    "build_resolution_summary",
    "cohomology_groups",
    "cup_tables",
    "fox_power",
    "homotopy_augmentation_sums",
    "report_json",
    "ring_mul",
    "ring_presentation",
    "run_verification",
    "s_function",
    "satisfies_e_identity",
    "smith_normal_form",
    "solve_e_lattice",
]
