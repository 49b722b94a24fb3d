"""Supersinglet targets, fidelity, and the closed-form protocol figures of merit."""

from __future__ import annotations

import itertools
import math
from collections.abc import Mapping
from dataclasses import dataclass, fields

from .amplitudes import InteractionParams, coefficient
from .protocol import JointState

# Qutrit labels 0, 1, 2 are the atomic levels g, f, e.
QUTRIT_LABELS = ("g", "f", "e")


@dataclass(frozen=True)
class PureAtomicState:
    amplitudes: Mapping[tuple, complex]
    levels_per_atom: int = 3

    def __post_init__(self):
        if self.amplitudes:
            sizes = {len(k) for k in self.amplitudes}
            if len(sizes) != 1:
                raise ValueError("all kets must have the same number of atoms")
        norm = self.norm_squared()
        if abs(norm - 1) > 1e-12:
            raise ValueError(f"state is not normalized (norm^2 = {norm})")

    @property
    def num_atoms(self) -> int:
        return len(next(iter(self.amplitudes))) if self.amplitudes else 0

    def norm_squared(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self.amplitudes.values())

    def __getitem__(self, ket) -> complex:
        return self.amplitudes.get(tuple(ket), 0j)

    @classmethod
    def from_joint(cls, state: JointState) -> "PureAtomicState":
        """Atomic part of a state whose field has been projected out."""
        photons = {n for _, n in state.amplitudes}
        if len(photons) > 1:
            raise ValueError(f"state still entangled with the field (photon numbers {sorted(photons)})")
        return cls({levels: a for (levels, _), a in state.amplitudes.items()})


def supersinglet(n: int, labels=None) -> PureAtomicState:
    """Totally antisymmetric state of ``n`` particles with ``n`` levels each.

    Labels default to ``g, f, e`` for three particles and to the integers
    ``0..n-1`` otherwise.
    """
    if not 2 <= n <= 6:
        raise ValueError(f"supersinglet size must be in [2, 6], got {n}")
    if labels is None:
        labels = QUTRIT_LABELS if n == 3 else tuple(range(n))
    if len(labels) != n:
        raise ValueError(f"need {n} labels, got {len(labels)}")
    amp = 1 / math.sqrt(math.factorial(n))
    amps = {}
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        amps[tuple(labels[k] for k in perm)] = (-1) ** inversions * amp
    return PureAtomicState(amps, levels_per_atom=n)


def overlap(state: PureAtomicState, target: PureAtomicState) -> complex:
    """``<target|state>``."""
    if state.num_atoms != target.num_atoms:
        raise ValueError(f"atom counts differ: {state.num_atoms} vs {target.num_atoms}")
    if state.levels_per_atom != target.levels_per_atom:
        raise ValueError("levels per atom differ")
    return sum((target[k].conjugate() * a for k, a in state.amplitudes.items()), 0j)


def fidelity(state: PureAtomicState, target: PureAtomicState) -> float:
    return min(1.0, abs(overlap(state, target)) ** 2)


@dataclass(frozen=True)
class ProtocolCoefficients:
    """The single-pass transition amplitudes entering the vacuum-projected state.

    Field ``x_from_y`` is the amplitude to reach ket ``x`` from ket ``y`` (level
    letter plus photon number) during the pass noted in the suffix.
    """

    e0_from_e0_t1: complex
    f1_from_e0_t1: complex
    g2_from_e0_t1: complex
    f0_from_f0_t2: complex
    g1_from_f0_t2: complex
    f1_from_f1_t2: complex
    e0_from_f1_t2: complex
    g2_from_f1_t2: complex
    f2_from_f2_t2: complex
    e1_from_f2_t2: complex
    f0_from_g1_t3: complex
    e0_from_g2_t3: complex

    @classmethod
    def from_times(cls, times, p: InteractionParams) -> "ProtocolCoefficients":
        t = {"t1": times[0], "t2": times[1], "t3": times[2]}
        values = {}
        for f in fields(cls):
            final, _, initial, clock = f.name.split("_")
            values[f.name] = coefficient(final, initial, t[clock], p)
        return cls(**values)

    def vacuum_branches(self) -> dict[tuple[str, str, str], complex]:
        """Unnormalized amplitudes of the seven kets that survive vacuum detection."""
        c = self
        return {
            ("e", "f", "g"): c.e0_from_e0_t1 * c.f0_from_f0_t2,
            ("e", "g", "f"): c.e0_from_e0_t1 * c.g1_from_f0_t2 * c.f0_from_g1_t3,
            ("f", "f", "f"): c.f1_from_e0_t1 * c.f1_from_f1_t2 * c.f0_from_g1_t3,
            ("f", "e", "g"): c.f1_from_e0_t1 * c.e0_from_f1_t2,
            ("f", "g", "e"): c.f1_from_e0_t1 * c.g2_from_f1_t2 * c.e0_from_g2_t3,
            ("g", "f", "e"): c.g2_from_e0_t1 * c.f2_from_f2_t2 * c.e0_from_g2_t3,
            ("g", "e", "f"): c.g2_from_e0_t1 * c.e1_from_f2_t2 * c.f0_from_g1_t3,
        }


def success_probability_formula(c: ProtocolCoefficients) -> float:
    return math.fsum(abs(a) ** 2 for a in c.vacuum_branches().values())


def fidelity_formula(c: ProtocolCoefficients) -> float:
    """Fidelity with the three-atom supersinglet assembled term by term."""
    b = c.vacuum_branches()
    signed = (
        -b[("e", "f", "g")]
        + b[("e", "g", "f")]
        + b[("f", "e", "g")]
        - b[("f", "g", "e")]
        + b[("g", "f", "e")]
        - b[("g", "e", "f")]
    )
    prob = success_probability_formula(c)
    if prob == 0:
        raise ZeroDivisionError("vacuum branch has zero probability")
    return abs(signed) ** 2 / (6 * prob)
