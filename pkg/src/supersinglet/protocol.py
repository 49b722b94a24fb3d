"""Sequential passage of atoms through the cavity.

The joint atom-field state is a sparse map ``(levels, photons) -> amplitude``
where ``levels`` is a tuple over ``{"e", "f", "g"}`` in pass order.  Each pass
appends one atom and rotates every invariant subspace with its closed-form
propagator; the interaction clock restarts at zero for every atom.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .amplitudes import LEVELS, InteractionParams, PHOTON_OFFSET, propagator, subspace_of

PRUNE = 1e-15
DEFAULT_CUTOFF = 6
EXCITATION = {"e": 2, "f": 1, "g": 0}


class CutoffExceeded(ValueError):
    """A pass would populate photon numbers above the cavity cutoff."""


class ZeroProbability(ValueError):
    """A projection or measurement outcome has zero probability."""


@dataclass(frozen=True)
class AtomState:
    """Normalized single-atom amplitudes ``C_e|e> + C_f|f> + C_g|g>``."""

    ce: complex = 0j
    cf: complex = 0j
    cg: complex = 0j

    def __post_init__(self):
        norm = abs(self.ce) ** 2 + abs(self.cf) ** 2 + abs(self.cg) ** 2
        if abs(norm - 1) > 1e-12:
            raise ValueError(f"atomic amplitudes must be normalized, got norm {norm}")

    @classmethod
    def basis(cls, level: str) -> "AtomState":
        if level not in LEVELS:
            raise ValueError(f"unknown level {level!r}")
        return cls(**{"c" + level: 1 + 0j})

    def amplitude(self, level: str) -> complex:
        return complex(getattr(self, "c" + level))


@dataclass(frozen=True)
class PassSpec:
    atom: AtomState
    duration: float

    def __post_init__(self):
        if not self.duration >= 0:
            raise ValueError(f"pass duration must be non-negative, got {self.duration}")


Key = tuple[tuple[str, ...], int]


@dataclass(frozen=True)
class JointState:
    num_atoms: int
    photon_cutoff: int
    amplitudes: Mapping[Key, complex] = field(repr=False)

    def __post_init__(self):
        clean = {k: complex(v) for k, v in self.amplitudes.items() if abs(v) >= PRUNE}
        for levels, n in clean:
            if len(levels) != self.num_atoms:
                raise ValueError(f"ket {levels} does not have {self.num_atoms} atoms")
            if not 0 <= n <= self.photon_cutoff:
                raise ValueError(f"photon number {n} outside [0, {self.photon_cutoff}]")
        object.__setattr__(self, "amplitudes", MappingProxyType(clean))

    def norm_squared(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self.amplitudes.values())

    def __getitem__(self, key: Key) -> complex:
        return self.amplitudes.get(key, 0j)

    def kets(self) -> set[Key]:
        return set(self.amplitudes)

    def photon_distribution(self) -> dict[int, float]:
        dist: dict[int, float] = {}
        for (_, n), a in self.amplitudes.items():
            dist[n] = dist.get(n, 0.0) + abs(a) ** 2
        return dict(sorted(dist.items()))

    def excitation_distribution(self) -> dict[int, float]:
        """Weight per total excitation number (e counts 2, f counts 1, plus photons)."""
        dist: dict[int, float] = {}
        for (levels, n), a in self.amplitudes.items():
            k = n + sum(EXCITATION[x] for x in levels)
            dist[k] = dist.get(k, 0.0) + abs(a) ** 2
        return dict(sorted(dist.items()))

    def scaled(self, factor: complex) -> "JointState":
        return JointState(self.num_atoms, self.photon_cutoff, {k: factor * a for k, a in self.amplitudes.items()})

    def to_records(self) -> list[dict]:
        rows = []
        for (levels, n), a in sorted(self.amplitudes.items()):
            rows.append({"levels": "".join(levels), "n": n, "re": a.real, "im": a.imag})
        return rows

    @classmethod
    def from_records(cls, records, photon_cutoff: int = DEFAULT_CUTOFF) -> "JointState":
        amps = {}
        num_atoms = None
        for r in records:
            levels = tuple(r["levels"])
            num_atoms = len(levels) if num_atoms is None else num_atoms
            amps[(levels, int(r["n"]))] = complex(r["re"], r["im"])
        return cls(num_atoms or 0, photon_cutoff, amps)


def vacuum_joint_state(cutoff: int = DEFAULT_CUTOFF) -> JointState:
    # the three-atom protocol reaches |g,g,g,3>
    if cutoff < 3:
        raise ValueError(f"photon cutoff must be at least 3, got {cutoff}")
    return JointState(0, cutoff, {((), 0): 1 + 0j})


def pass_atom(state: JointState, spec: PassSpec, p: InteractionParams) -> JointState:
    """Send one fresh atom through the cavity for ``spec.duration``."""
    # Group the product state (old branch) x (new atom) by invariant subspace.
    groups: dict[tuple[tuple[str, ...], int], dict[str, complex]] = {}
    for (levels, m), amp in state.amplitudes.items():
        for lv in LEVELS:
            c = spec.atom.amplitude(lv)
            if c == 0:
                continue
            n = subspace_of(lv, m)
            slot = groups.setdefault((levels, n), {})
            slot[lv] = slot.get(lv, 0j) + amp * c

    cache = {}
    out: dict[Key, complex] = {}
    for (levels, n), inputs in groups.items():
        if n not in cache:
            cache[n] = propagator(n, spec.duration, p)
        u = cache[n]
        vec = [inputs.get(lv, 0j) for lv in u.levels]
        result = u.apply(vec)
        for lv, a in zip(u.levels, result):
            if abs(a) < PRUNE:
                continue
            photons = n + PHOTON_OFFSET[lv]
            if photons > state.photon_cutoff:
                raise CutoffExceeded(
                    f"pass populates {photons} photons, above cutoff {state.photon_cutoff}"
                )
            key = (levels + (lv,), photons)
            out[key] = out.get(key, 0j) + a
    return JointState(state.num_atoms + 1, state.photon_cutoff, out)


def run_passes(passes, p: InteractionParams, cutoff: int = DEFAULT_CUTOFF, state: JointState | None = None) -> JointState:
    state = vacuum_joint_state(cutoff) if state is None else state
    for spec in passes:
        state = pass_atom(state, spec, p)
    return state


PROTOCOL_ATOMS = ("e", "f", "g")


def supersinglet_passes(times, order=PROTOCOL_ATOMS) -> list[PassSpec]:
    """Passes for atoms prepared in ``order`` (default e, f, g) with the given durations."""
    if len(times) != len(order):
        raise ValueError(f"need {len(order)} interaction times, got {len(times)}")
    return [PassSpec(AtomState.basis(lv), float(t)) for lv, t in zip(order, times)]


def three_atom_state(times, p: InteractionParams, cutoff: int = DEFAULT_CUTOFF, order=PROTOCOL_ATOMS) -> JointState:
    return run_passes(supersinglet_passes(times, order), p, cutoff)


def project_cavity(state: JointState, n: int = 0) -> tuple[JointState, float]:
    """Post-select photon number ``n``; returns the normalized atomic state and its probability.

    The returned state keeps photon label 0 on every ket (the field is discarded).
    """
    if not 0 <= n <= state.photon_cutoff:
        raise ValueError(f"photon number {n} outside [0, {state.photon_cutoff}]")
    kept = {levels: a for (levels, m), a in state.amplitudes.items() if m == n}
    prob = math.fsum(abs(a) ** 2 for a in kept.values())
    if prob == 0:
        raise ZeroProbability(f"projection onto {n} photons has zero probability")
    scale = 1 / math.sqrt(prob)
    atomic = JointState(state.num_atoms, state.photon_cutoff, {(lv, 0): a * scale for lv, a in kept.items()})
    return atomic, prob
