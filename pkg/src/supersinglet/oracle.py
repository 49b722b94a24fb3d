"""Fixed-step RK4 integration of the coupled amplitude equations.

This is the ground truth the closed forms are checked against.  It steps the
interaction-picture equations with their explicit ``exp(+-i delta t)``
factors and shares no code with :mod:`supersinglet.amplitudes` beyond the
subspace bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .amplitudes import InteractionParams, rabi, subspace_levels


@dataclass(frozen=True)
class OdeConfig:
    """``step=None`` picks ``safety / Lambda_n`` for the subspace being integrated."""

    step: float | None = None
    safety: float = 1e-3

    def __post_init__(self):
        if self.step is not None and not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if not self.safety > 0:
            raise ValueError(f"safety must be positive, got {self.safety}")

    def step_for(self, n: int, p: InteractionParams) -> float:
        if self.step is not None:
            return self.step
        if n == -2:
            return math.inf
        return self.safety / rabi(n, p)


@numba.njit(cache=True, fastmath=True)
def _rk4(y0, t_start, t_end, nsteps, k1, k2, delta):
    # rows of y0: e (photons n), f (n+1), g (n+2); one column per initial vector
    y = y0.copy()
    h = (t_end - t_start) / nsteps
    half_turn = complex(math.cos(0.5 * delta * h), math.sin(0.5 * delta * h))
    p1 = 1.0 + 0.0j
    for i in range(nsteps):
        # phase exp(i delta t) advanced by rotation, recomputed exactly every 256 steps
        if i % 256 == 0:
            t = t_start + i * h
            p0 = complex(math.cos(delta * t), math.sin(delta * t))
        else:
            p0 = p1
        pm = p0 * half_turn
        p1 = pm * half_turn
        for j in range(y.shape[1]):
            ce, cf, cg = y[0, j], y[1, j], y[2, j]

            a_e = -1j * k1 * p0.conjugate() * cf
            a_f = -1j * p0 * (k1 * ce + k2 * cg)
            a_g = -1j * k2 * p0.conjugate() * cf

            e2, f2, g2 = ce + 0.5 * h * a_e, cf + 0.5 * h * a_f, cg + 0.5 * h * a_g
            b_e = -1j * k1 * pm.conjugate() * f2
            b_f = -1j * pm * (k1 * e2 + k2 * g2)
            b_g = -1j * k2 * pm.conjugate() * f2

            e3, f3, g3 = ce + 0.5 * h * b_e, cf + 0.5 * h * b_f, cg + 0.5 * h * b_g
            c_e = -1j * k1 * pm.conjugate() * f3
            c_f = -1j * pm * (k1 * e3 + k2 * g3)
            c_g = -1j * k2 * pm.conjugate() * f3

            e4, f4, g4 = ce + h * c_e, cf + h * c_f, cg + h * c_g
            d_e = -1j * k1 * p1.conjugate() * f4
            d_f = -1j * p1 * (k1 * e4 + k2 * g4)
            d_g = -1j * k2 * p1.conjugate() * f4

            y[0, j] = ce + h / 6.0 * (a_e + 2.0 * b_e + 2.0 * c_e + d_e)
            y[1, j] = cf + h / 6.0 * (a_f + 2.0 * b_f + 2.0 * c_f + d_f)
            y[2, j] = cg + h / 6.0 * (a_g + 2.0 * b_g + 2.0 * c_g + d_g)
    return y


def _check_block(n, initial):
    dim = len(subspace_levels(n))
    block = np.asarray(initial, dtype=np.complex128)
    if block.shape[0] != dim:
        raise ValueError(f"subspace {n} has dimension {dim}, got initial of shape {block.shape}")
    return dim, block


def _integrate_block(n, initial, times, p, cfg):
    """Integrate a (dim, k) block of column vectors, returning one block per checkpoint."""
    dim, block = _check_block(n, initial)
    times = [float(t) for t in times]
    if any(t < 0 for t in times) or times != sorted(times):
        raise ValueError(f"checkpoint times must be non-negative and sorted, got {times}")
    if n == -2:
        return [block.copy() for _ in times]

    k1 = p.g1 * math.sqrt(n + 1) if n >= 0 else 0.0
    k2 = p.g2 * math.sqrt(n + 2)
    state = np.zeros((3, block.shape[1]), dtype=np.complex128)
    state[3 - dim :] = block
    step = cfg.step_for(n, p)
    out = []
    t_prev = 0.0
    for t in times:
        if t > t_prev:
            nsteps = max(1, math.ceil((t - t_prev) / step))
            state = _rk4(state, t_prev, t, nsteps, k1, k2, float(p.delta))
            t_prev = t
        out.append(state[3 - dim :].copy())
    return out


def integrate_subspace(n: int, initial, t: float, p: InteractionParams, cfg: OdeConfig | None = None) -> np.ndarray:
    """Amplitudes of subspace ``n`` at time ``t``, starting from ``initial``.

    ``initial`` is ordered like :func:`supersinglet.amplitudes.subspace_levels`.
    """
    cfg = cfg or OdeConfig()
    vec = np.asarray(initial, dtype=np.complex128)
    if vec.ndim != 1:
        raise ValueError("initial must be a vector")
    if t < 0:
        raise ValueError(f"interaction time must be non-negative, got {t}")
    return _integrate_block(n, vec[:, None], [t], p, cfg)[0][:, 0]


def integrate_propagator(n: int, t: float, p: InteractionParams, cfg: OdeConfig | None = None) -> np.ndarray:
    """All columns at once: the numerically integrated propagator of subspace ``n``."""
    return integrate_propagators(n, [t], p, cfg)[0]


def integrate_propagators(n: int, times, p: InteractionParams, cfg: OdeConfig | None = None) -> list[np.ndarray]:
    """Integrated propagators at each of the sorted ``times`` from a single run."""
    cfg = cfg or OdeConfig()
    dim = len(subspace_levels(n))
    return _integrate_block(n, np.eye(dim, dtype=np.complex128), times, p, cfg)
