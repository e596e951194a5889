"""Planar filament swimmer in resistive force theory."""

from ._core import (
    Error,
    check_two_disks,
    cli,
    curve_from_angles,
    cycle_displacement,
    dissipation,
    graph_criterion,
    optimize_stroke,
    plan_full,
    simulate_rotation_cycle,
    simulate_translation_cycle,
)

__all__ = [
    "Error",
    "check_two_disks",
    "cli",
    "curve_from_angles",
    "cycle_displacement",
    "dissipation",
    "graph_criterion",
    "optimize_stroke",
    "plan_full",
    "simulate_rotation_cycle",
    "simulate_translation_cycle",
]
