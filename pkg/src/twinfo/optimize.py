"""Suprema of measurement informations over complete bases, and quantum discord.

The suprema are approximated by multi-start Nelder-Mead over a Hermitian
generator parametrization of the measured basis; reported values are lower
bounds on the true suprema by construction.  Restart 0 starts from the
eigenbasis of the measured reduction (which attains the supremum for pure
states and for Schmidt-dephased states), restart 1 from the standard basis,
and the rest from seeded Haar-random bases.  For qubit subsystems a
deterministic grid over the Bloch sphere provides an independent
cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .entropy import mutual_information
from .kernels import info_gain_side1, joint_mutual_info, swap_sides, unitary_from_params
from .linalg import KERNEL_CLIP
from .measurement import Observable, observable_from_basis
from .sampling import sample_random_unitary
from .states import BipartiteState

AGREE_TOL = 1e-6
_SIMPLEX_STEP = 0.3
# Stream offsets keep restart seeds for the four optimized bases disjoint.
_STREAM_GAIN_1 = 1_000
_STREAM_GAIN_2 = 2_000
_STREAM_JOINT_1 = 3_000
_STREAM_JOINT_2 = 4_000


@dataclass(frozen=True)
class OptimizationConfig:
    restarts: int = 32
    max_iterations: int = 2000
    f_tol: float = 1e-8
    seed: int = 0
    grid_refine: bool = False

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.f_tol <= 0:
            raise ValueError("f_tol must be > 0")


@dataclass(frozen=True)
class SupremumResult:
    """Best value found over all restarts, with the attaining basis (or pair)."""

    value: float
    argmax_basis: object
    restarts_agreeing: int
    converged: bool


def basis_from_params(params: np.ndarray, d: int) -> Observable:
    """Complete observable from the exponential of a packed Hermitian generator.

    The zero vector maps to the standard basis.
    """
    params = np.ascontiguousarray(params, dtype=float)
    if params.shape != (d * d,):
        raise ValueError(f"expected {d * d} parameters, got shape {params.shape}")
    return observable_from_basis(unitary_from_params(params, d))


def _eigbasis(matrix: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(np.linalg.eigh(matrix)[1])


def _anchor(index: int, d: int, eigbasis: np.ndarray, seed: int, stream_base: int) -> np.ndarray:
    if index == 0:
        return eigbasis
    if index == 1:
        return np.eye(d, dtype=np.complex128)
    return np.ascontiguousarray(sample_random_unitary(d, seed, stream=stream_base + index))


def _maximize_over_basis(objective, d: int, anchor: np.ndarray, cfg: OptimizationConfig):
    """Nelder-Mead over generator params of a unitary composed with ``anchor``."""
    n = d * d

    def neg(params):
        return -objective(unitary_from_params(np.ascontiguousarray(params), d) @ anchor)

    x0 = np.zeros(n)
    simplex = np.vstack([x0, x0 + _SIMPLEX_STEP * np.eye(n)])
    res = minimize(
        neg,
        x0,
        method="Nelder-Mead",
        options={
            "maxiter": cfg.max_iterations,
            "maxfev": 4 * cfg.max_iterations,
            "fatol": cfg.f_tol,
            "xatol": 1e-6,
            "initial_simplex": simplex,
        },
    )
    basis = unitary_from_params(np.ascontiguousarray(res.x), d) @ anchor
    return -float(res.fun), np.ascontiguousarray(basis), bool(res.success)


def _bloch_basis(theta: float, phi: float) -> np.ndarray:
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    e = np.exp(1j * phi)
    return np.ascontiguousarray(np.array([[c, -s / e], [s * e, c]], dtype=np.complex128))


def grid_information_gain_qubit(state: BipartiteState, side: int, final_resolution: float = 1e-3):
    """Deterministic Bloch-sphere grid maximization of the information gain.

    Scans (theta, phi), then zooms into the best cell until the grid step
    falls below ``final_resolution`` radians.  Only valid when the measured
    side is a qubit.  Returns ``(value, basis)``.
    """
    d_meas = state.dims.d1 if side == 1 else state.dims.d2
    if d_meas != 2:
        raise ValueError(f"grid oracle requires a qubit on side {side}, got dimension {d_meas}")
    rho, d_opp = _effective_state(state, side)

    def gain(theta, phi):
        return float(info_gain_side1(rho, _bloch_basis(theta, phi), d_opp, KERNEL_CLIP))

    t_lo, t_hi = 0.0, np.pi
    p_lo, p_hi = 0.0, 2.0 * np.pi
    n = 41
    best = (-np.inf, 0.0, 0.0)
    while True:
        thetas = np.linspace(t_lo, t_hi, n)
        phis = np.linspace(p_lo, p_hi, n)
        for t in thetas:
            for p in phis:
                v = gain(t, p)
                if v > best[0]:
                    best = (v, t, p)
        step_t = (t_hi - t_lo) / (n - 1)
        if step_t <= final_resolution:
            break
        _, t_c, p_c = best
        t_lo = max(0.0, t_c - 2 * step_t)
        t_hi = min(np.pi, t_c + 2 * step_t)
        step_p = (p_hi - p_lo) / (n - 1)
        p_lo = p_c - 2 * step_p
        p_hi = p_c + 2 * step_p
        n = 17
    return best[0], _bloch_basis(best[1], best[2])


def _effective_state(state: BipartiteState, side: int):
    """State matrix with the measured side first, and the opposite dimension."""
    rho = np.ascontiguousarray(state.rho12.matrix)
    if side == 1:
        return rho, state.dims.d2
    if side == 2:
        return swap_sides(rho, state.dims.d1, state.dims.d2), state.dims.d1
    raise ValueError(f"side must be 1 or 2, got {side}")


def sup_information_gain(
    state: BipartiteState, side: int, cfg: OptimizationConfig = OptimizationConfig()
) -> SupremumResult:
    """Maximize the information gain over complete bases on ``side``."""
    rho, d_opp = _effective_state(state, side)
    d = state.dims.d1 if side == 1 else state.dims.d2
    reduced = state.rho1 if side == 1 else state.rho2
    eigbasis = _eigbasis(reduced.matrix)
    stream = _STREAM_GAIN_1 if side == 1 else _STREAM_GAIN_2

    def objective(u):
        return float(info_gain_side1(rho, u, d_opp, KERNEL_CLIP))

    candidates = []
    for r in range(cfg.restarts):
        anchor = _anchor(r, d, eigbasis, cfg.seed, stream)
        candidates.append(_maximize_over_basis(objective, d, anchor, cfg))
    if cfg.grid_refine and d == 2:
        value, basis = grid_information_gain_qubit(state, side)
        candidates.append((value, basis, True))
    return _reduce_candidates(candidates)


def _reduce_candidates(candidates) -> SupremumResult:
    # Max over restart values; the lowest index wins exact ties.
    best_idx = 0
    for i, cand in enumerate(candidates):
        if cand[0] > candidates[best_idx][0]:
            best_idx = i
    value, basis, converged = candidates[best_idx]
    agreeing = sum(1 for cand in candidates if cand[0] >= value - AGREE_TOL)
    return SupremumResult(
        value=max(value, 0.0),
        argmax_basis=basis,
        restarts_agreeing=agreeing,
        converged=converged,
    )


def sup_joint_mutual_information(
    state: BipartiteState, cfg: OptimizationConfig = OptimizationConfig(), max_sweeps: int = 10
) -> SupremumResult:
    """Maximize the simultaneous-measurement mutual information over basis pairs.

    Alternates Nelder-Mead over the side-1 and side-2 bases, at most
    ``max_sweeps`` rounds per restart.
    """
    rho = np.ascontiguousarray(state.rho12.matrix)
    d1, d2 = state.dims.d1, state.dims.d2
    eig1 = _eigbasis(state.rho1.matrix)
    eig2 = _eigbasis(state.rho2.matrix)

    candidates = []
    for r in range(cfg.restarts):
        u1 = _anchor(r, d1, eig1, cfg.seed, _STREAM_JOINT_1)
        u2 = _anchor(r, d2, eig2, cfg.seed, _STREAM_JOINT_2)
        value = float(joint_mutual_info(rho, u1, u2, KERNEL_CLIP))
        converged = False
        for _ in range(max_sweeps):
            v1, u1, _ = _maximize_over_basis(
                lambda u: float(joint_mutual_info(rho, u, u2, KERNEL_CLIP)), d1, u1, cfg
            )
            v2, u2, _ = _maximize_over_basis(
                lambda u: float(joint_mutual_info(rho, u1, u, KERNEL_CLIP)), d2, u2, cfg
            )
            if v2 <= value + cfg.f_tol:
                value = max(value, v2)
                converged = True
                break
            value = v2
        candidates.append((value, (u1, u2), converged))
    return _reduce_candidates(candidates)


def quantum_discord(
    state: BipartiteState, direction: str = "1to2", cfg: OptimizationConfig = OptimizationConfig()
) -> float:
    """Total correlations minus the best one-sided information gain.

    ``direction`` names the measured side: ``"1to2"`` measures subsystem 1
    (gaining about 2), ``"2to1"`` the reverse.
    """
    side = _direction_side(direction)
    total = mutual_information(state)
    gain = sup_information_gain(state, side, cfg).value
    return total - gain


def _direction_side(direction: str) -> int:
    if direction == "1to2":
        return 1
    if direction == "2to1":
        return 2
    raise ValueError(f"direction must be '1to2' or '2to1', got {direction!r}")
