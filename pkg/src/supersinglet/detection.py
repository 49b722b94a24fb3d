"""Certifying the cavity vacuum with auxiliary ground-state atoms.

Each auxiliary atom enters in ``|g>``, interacts for ``t_prime`` and is then
measured.  Finding it still in ``|g>`` is the "no photon" outcome; the part of
the field that was not vacuum yet left the atom in ``|g>`` is the detection
error.  Repeating with more atoms suppresses that error multiplicatively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .amplitudes import InteractionParams, propagator
from .optimize import golden_section_max
from .protocol import AtomState, JointState, PassSpec, ZeroProbability, pass_atom

GRID_STEP = 1e-3
# grid peaks this close to the grid maximum are refined
TIE_WINDOW = 1e-3
# refined maxima this close count as ties, resolved toward the smaller time
TIE_TOL = 1e-9


@dataclass(frozen=True)
class DetectionSpec:
    t_prime: float
    num_aux: int
    params: InteractionParams
    # optional per-atom interaction times; defaults to t_prime for every atom
    times: tuple[float, ...] | None = None

    def __post_init__(self):
        if not self.t_prime >= 0:
            raise ValueError(f"t_prime must be non-negative, got {self.t_prime}")
        if self.num_aux < 1:
            raise ValueError(f"need at least one auxiliary atom, got {self.num_aux}")
        if self.times is not None and (len(self.times) != self.num_aux or min(self.times) < 0):
            raise ValueError("times must give one non-negative duration per auxiliary atom")

    def aux_times(self) -> tuple[float, ...]:
        return self.times if self.times is not None else (self.t_prime,) * self.num_aux


@dataclass(frozen=True)
class DetectionOutcome:
    """Result of conditioning on every auxiliary atom being found in ``|g>``.

    ``prob_g`` is the probability of that joint outcome and ``residual`` the
    probability of that outcome with photons still present, both relative to
    the input state.
    """

    state: JointState
    prob_g: float
    residual: float
    step_probs: tuple[float, ...]

    @property
    def conditional_residual(self) -> float:
        """Non-vacuum weight inside the post-measurement state."""
        return self.residual / self.prob_g


def _nonvacuum_weight(state: JointState) -> float:
    return math.fsum(abs(a) ** 2 for (_, n), a in state.amplitudes.items() if n > 0)


def _measure_aux_ground(state: JointState, t: float, p: InteractionParams) -> tuple[JointState, float]:
    after = pass_atom(state, PassSpec(AtomState.basis("g"), t), p)
    kept = {(lv[:-1], n): a for (lv, n), a in after.amplitudes.items() if lv[-1] == "g"}
    prob = math.fsum(abs(a) ** 2 for a in kept.values())
    if prob == 0:
        raise ZeroProbability("auxiliary atom can never be found in |g>")
    scale = 1 / math.sqrt(prob)
    return JointState(state.num_atoms, state.photon_cutoff, {k: a * scale for k, a in kept.items()}), prob


def aux_pass_and_measure(state: JointState, spec: DetectionSpec) -> DetectionOutcome:
    norm = state.norm_squared()
    if abs(norm - 1) > 1e-10:
        raise ValueError(f"input state must be normalized (norm^2 = {norm})")
    probs = []
    for t in spec.aux_times():
        state, prob = _measure_aux_ground(state, t, spec.params)
        probs.append(prob)
    prob_g = math.prod(probs)
    return DetectionOutcome(state, prob_g, prob_g * _nonvacuum_weight(state), tuple(probs))


def absorption_probability(t: float, p: InteractionParams) -> float:
    """Probability that a ground-state atom absorbs a single photon in time ``t``."""
    u = propagator(-1, t, p)
    return abs(u.element("f", "g")) ** 2


def optimal_aux_time(p: InteractionParams, window: tuple[float, float]) -> float:
    """Interaction time in ``window`` maximizing single-photon absorption."""
    lo, hi = window
    if not 0 <= lo <= hi:
        raise ValueError(f"invalid window {window}")
    grid = np.linspace(lo, hi, max(2, int(math.ceil((hi - lo) / GRID_STEP)) + 1))
    values = np.array([absorption_probability(t, p) for t in grid])
    top = values.max()

    # Refine every grid peak that could be the true maximum, then keep the earliest best.
    best_t, best_f = None, -1.0
    for i in range(len(grid)):
        left = values[i - 1] if i > 0 else -1.0
        right = values[i + 1] if i + 1 < len(grid) else -1.0
        if values[i] < top - TIE_WINDOW or values[i] < left or values[i] < right:
            continue
        a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
        t, f = golden_section_max(lambda x: absorption_probability(x, p), a, b, tol=1e-10)
        if f > best_f + TIE_TOL:
            best_t, best_f = float(t), f
    return best_t


@dataclass(frozen=True)
class CertifiedResult:
    """Atomic state after vacuum certification.

    ``success_prob`` is the probability of all auxiliary atoms reading ``|g>``.
    ``error_bound`` is the non-vacuum weight left in the conditioned state,
    which is discarded when the field is traced out.
    """

    state: JointState
    success_prob: float
    error_bound: float
    outcome: DetectionOutcome

    @property
    def vacuum_confidence(self) -> float:
        return 1 - self.error_bound


def certified_vacuum_protocol(state: JointState, spec: DetectionSpec) -> CertifiedResult:
    outcome = aux_pass_and_measure(state, spec)
    vac = {(lv, 0): a for (lv, n), a in outcome.state.amplitudes.items() if n == 0}
    weight = math.fsum(abs(a) ** 2 for a in vac.values())
    if weight == 0:
        raise ZeroProbability("no vacuum component survives the detection")
    scale = 1 / math.sqrt(weight)
    atomic = JointState(state.num_atoms, state.photon_cutoff, {k: a * scale for k, a in vac.items()})
    return CertifiedResult(atomic, outcome.prob_g, outcome.conditional_residual, outcome)
