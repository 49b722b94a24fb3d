"""Closed-form propagators of the two-photon Jaynes-Cummings interaction.

The interaction couples a ladder atom (levels g < f < e) to one cavity mode and
leaves each triplet ``{|e,n>, |f,n+1>, |g,n+2>}`` invariant.  Inside a triplet
the evolution is a 3x3 unitary whose entries are known in closed form; this
module evaluates them directly with trigonometric functions.

Subspace indices below zero are degenerate:

* ``n = -1`` is the doublet ``{|f,0>, |g,1>}`` (the e-level has no partner),
* ``n = -2`` is the stationary singleton ``{|g,0>}``.

Units: couplings and detuning in rad/us, times in us.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LEVELS = ("e", "f", "g")

# Photon offset of each level inside subspace n: |e,n>, |f,n+1>, |g,n+2>.
PHOTON_OFFSET = {"e": 0, "f": 1, "g": 2}


@dataclass(frozen=True)
class InteractionParams:
    """Couplings of the e<->f (g1) and f<->g (g2) transitions, and the detuning."""

    g1: float
    g2: float
    delta: float = 0.0

    def __post_init__(self):
        for name in ("g1", "g2"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ValueError(f"{name} must be a positive finite coupling, got {value!r}")
        if not math.isfinite(self.delta):
            raise ValueError(f"delta must be finite, got {self.delta!r}")

    @classmethod
    def symmetric(cls, g: float, delta: float = 0.0) -> "InteractionParams":
        return cls(g1=g, g2=g, delta=delta)


def subspace_levels(n: int) -> tuple[str, ...]:
    """Atomic levels spanned by subspace ``n``, in matrix row order."""
    if n >= 0:
        return LEVELS
    if n == -1:
        return ("f", "g")
    if n == -2:
        return ("g",)
    raise ValueError(f"subspace index must be >= -2, got {n}")


def subspace_of(level: str, photons: int) -> int:
    """Index of the invariant subspace containing ``|level, photons>``."""
    return photons - PHOTON_OFFSET[level]


def alpha(n: int, p: InteractionParams) -> float:
    if n < -1:
        raise ValueError(f"alpha is only defined for n >= -1, got {n}")
    return math.sqrt(p.g1**2 * max(n + 1, 0) + p.g2**2 * (n + 2))


def rabi(n: int, p: InteractionParams) -> float:
    """Rabi frequency of subspace ``n``."""
    return math.sqrt(p.delta**2 / 4 + alpha(n, p) ** 2)


def gamma(n: int, t: float, p: InteractionParams) -> complex:
    lam = rabi(n, p)
    half = 0.5 * p.delta * t
    return (
        lam * math.cos(lam * t)
        + 0.5j * p.delta * math.sin(lam * t)
        - lam * complex(math.cos(half), math.sin(half))
    ) * complex(math.cos(half), -math.sin(half))


@dataclass(frozen=True)
class SubspacePropagator:
    """Unitary acting on the amplitudes of one invariant subspace.

    ``matrix[i, j]`` is the amplitude of ``levels[i]`` at time ``t`` given the
    subspace started in ``levels[j]``.
    """

    n: int
    t: float
    matrix: np.ndarray

    @property
    def levels(self) -> tuple[str, ...]:
        return subspace_levels(self.n)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def photons(self, level: str) -> int:
        return self.n + PHOTON_OFFSET[level]

    def element(self, final: str, initial: str) -> complex:
        lv = self.levels
        return complex(self.matrix[lv.index(final), lv.index(initial)])

    def apply(self, vector) -> np.ndarray:
        return self.matrix @ np.asarray(vector, dtype=complex)


def propagator(n: int, t: float, p: InteractionParams) -> SubspacePropagator:
    if t < 0:
        raise ValueError(f"interaction time must be non-negative, got {t}")
    if n == -2:
        return SubspacePropagator(n, t, np.ones((1, 1), dtype=complex))
    if n < -2:
        raise ValueError(f"subspace index must be >= -2, got {n}")

    g1, g2, d = p.g1, p.g2, p.delta
    lam = rabi(n, p)
    a2 = alpha(n, p) ** 2
    s, c = math.sin(lam * t), math.cos(lam * t)
    e_plus = complex(math.cos(0.5 * d * t), math.sin(0.5 * d * t))
    e_minus = e_plus.conjugate()
    gam = gamma(n, t, p)

    # n = -1: the g1*sqrt(n+1) couplings vanish and only the f/g block survives.
    k1 = g1 * math.sqrt(n + 1) if n >= 0 else 0.0
    k2 = g2 * math.sqrt(n + 2)

    m = np.empty((3, 3), dtype=complex)
    m[0, 0] = k1 * k1 / (lam * a2) * gam + 1
    m[0, 1] = -1j * k1 / lam * s * e_minus
    m[0, 2] = k1 * k2 / (lam * a2) * gam
    m[1, 0] = -1j * k1 / lam * s * e_plus
    m[1, 1] = (c - 0.5j * d / lam * s) * e_plus
    m[1, 2] = -1j * k2 / lam * s * e_plus
    m[2, 0] = m[0, 2]
    m[2, 1] = -1j * k2 / lam * s * e_minus
    m[2, 2] = k2 * k2 / (lam * a2) * gam + 1

    if n == -1:
        m = m[1:, 1:].copy()
    return SubspacePropagator(n, t, m)


def evolve_triplet(n: int, t: float, p: InteractionParams, ce: complex, cf: complex, cg: complex):
    """Amplitudes ``(C_{e,n}, C_{f,n+1}, C_{g,n+2})`` at time ``t``.

    Scalar transcription of the closed-form solution, with ``ce, cf, cg`` the
    initial products of atomic and field amplitudes.  Valid for ``n >= -1``
    (for ``n = -1`` the e-terms carry a factor ``sqrt(n+1) = 0``).
    """
    g1, g2, d = p.g1, p.g2, p.delta
    lam = rabi(n, p)
    a2 = alpha(n, p) ** 2
    gam = gamma(n, t, p)
    s, c = math.sin(lam * t), math.cos(lam * t)
    r1 = math.sqrt(max(n + 1, 0))
    r2 = math.sqrt(n + 2)
    ph = np.exp(0.5j * d * t)

    c_e = (
        (g1**2 * (n + 1) / (lam * a2) * gam + 1) * ce
        - 1j * g1 * r1 / lam * s / ph * cf
        + g1 * g2 * r1 * r2 / (lam * a2) * gam * cg
    )
    c_f = (
        -1j * g1 * r1 / lam * s * ph * ce
        + (c - 1j * d / (2 * lam) * s) * ph * cf
        - 1j * g2 * r2 / lam * s * ph * cg
    )
    c_g = (
        g1 * g2 * r1 * r2 / (lam * a2) * gam * ce
        - 1j * g2 * r2 / lam * s / ph * cf
        + (g2**2 * (n + 2) / (lam * a2) * gam + 1) * cg
    )
    return complex(c_e), complex(c_f), complex(c_g)


def coefficient(final: str, initial: str, t: float, p: InteractionParams) -> complex:
    """Transition amplitude between two atom-field kets, e.g. ``coefficient("f1", "e0", t, p)``.

    Kets are written as level letter plus photon number.  The subspace index is
    recovered by shifting the photon number of the final ket (``f`` by one,
    ``g`` by two), and the entry is read from the scalar closed form.
    Kets in different subspaces have zero amplitude.
    """
    fl, fn = final[0], int(final[1:])
    il, i_n = initial[0], int(initial[1:])
    n = subspace_of(fl, fn)
    if n != subspace_of(il, i_n):
        return 0j
    if n < -2 or fn < 0 or i_n < 0:
        raise ValueError(f"no such kets: {final!r}, {initial!r}")
    if n == -2:
        return 1 + 0j
    init = {lv: (1.0 if lv == il else 0.0) for lv in LEVELS}
    c_e, c_f, c_g = evolve_triplet(n, t, p, init["e"], init["f"], init["g"])
    return {"e": c_e, "f": c_f, "g": c_g}[fl]
