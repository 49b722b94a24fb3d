"""Cavity-QED generation of the three-qutrit supersinglet with two-photon interactions."""

from .amplitudes import InteractionParams, SubspacePropagator, alpha, coefficient, gamma, propagator, rabi
from .detection import DetectionSpec, aux_pass_and_measure, certified_vacuum_protocol, optimal_aux_time
from .metrics import PureAtomicState, fidelity, fidelity_formula, supersinglet
from .protocol import (
    AtomState,
    CutoffExceeded,
    JointState,
    PassSpec,
    ZeroProbability,
    pass_atom,
    project_cavity,
    three_atom_state,
    vacuum_joint_state,
)

__all__ = [
    "AtomState",
    "CutoffExceeded",
    "DetectionSpec",
    "InteractionParams",
    "JointState",
    "PassSpec",
    "PureAtomicState",
    "SubspacePropagator",
    "ZeroProbability",
    "alpha",
    "aux_pass_and_measure",
    "certified_vacuum_protocol",
    "coefficient",
    "fidelity",
    "fidelity_formula",
    "gamma",
    "optimal_aux_time",
    "pass_atom",
    "project_cavity",
    "propagator",
    "rabi",
    "supersinglet",
    "three_atom_state",
    "vacuum_joint_state",
]
