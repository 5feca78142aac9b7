"""Quantum discord: pairwise projective-measurement minimization and the
genuine multipartite correlation of the pure search state."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize

from .errors import NumericalConsistencyError, UnsupportedStructureError
from .grover import GroverConfig, SymmetricGAState, reduced_density, state_at
from .linalg import DensityMatrix, binary_entropy, von_neumann_entropy
from .optimizers import OptimizerConfig

_TINY = 1e-300

DELTA_TOL = 1e-10


@dataclass(frozen=True)
class DiscordSolution:
    """Minimized discord with the optimal measurement angles on subsystem B."""

    value: float
    theta: float
    phi: float
    optimizer_evals: int
    converged: bool

    def __post_init__(self):
        if self.value < -1e-9:
            raise NumericalConsistencyError(f"discord {self.value:.3e} below -1e-9")


def _measurement_vectors(theta, phi):
    """Projector family {cos t|0> + e^{i p} sin t|1>, e^{-i p} sin t|0> - cos t|1>}.

    The (theta, phi) ranges [0, pi] x [0, 2 pi) cover the Bloch sphere twice;
    the redundancy is kept to match the stated parameterization exactly.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    v0 = np.stack([np.cos(theta) + 0j, np.exp(1j * phi) * np.sin(theta)], axis=-1)
    v1 = np.stack([np.exp(-1j * phi) * np.sin(theta), -np.cos(theta) + 0j], axis=-1)
    return v0, v1


def _conditional_entropy_grid(rho4: np.ndarray, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """sum_i p_i S(rho_{A|i}) on a (theta, phi) mesh, fully vectorized."""
    R = rho4.reshape(2, 2, 2, 2)  # indices (a, b, a', b')
    TH, PH = np.meshgrid(thetas, phis, indexing="ij")
    total = np.zeros(TH.shape)
    for v in _measurement_vectors(TH, PH):
        # M[t, p, a, a'] = <a v|rho|a' v>, unnormalized conditional state on A
        m = np.einsum("abcd,tpb,tpd->tpac", R, v.conj(), v, optimize=True)
        p = np.einsum("tpaa->tp", m).real
        det = (m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]).real
        gap = np.sqrt(np.clip(p * p - 4.0 * det, 0.0, None))
        for lam in ((p + gap) / 2.0, (p - gap) / 2.0):
            lam = np.clip(lam, 0.0, None)
            ratio = lam / np.clip(p, _TINY, None)
            total -= lam * np.log2(np.clip(ratio, _TINY, None))
    return total


def _conditional_entropy_point(rho4: np.ndarray, theta: float, phi: float) -> float:
    return float(_conditional_entropy_grid(rho4, np.array([theta]), np.array([phi]))[0, 0])


def pairwise_discord(rho2: DensityMatrix, config: OptimizerConfig | None = None) -> DiscordSolution:
    """Discord of a two-qubit state with projective measurement on subsystem B.

    D = min_{theta,phi} sum_i p_i S(rho_{A|i}) + S(rho_B) - S(rho_AB).
    The minimization runs a coarse grid (theta_grid x phi_grid) followed by
    Nelder-Mead refinement; refinement can only improve on the grid optimum.
    Non-convergence is reported through `converged`, never as an exception.
    """
    if rho2.dim != 4:
        raise ValueError(f"pairwise discord needs a 4x4 state, got dim {rho2.dim}")
    config = config or OptimizerConfig()
    rho4 = rho2.matrix
    s_ab = von_neumann_entropy(rho2)
    rho_b = np.einsum("abad->bd", rho4.reshape(2, 2, 2, 2))
    s_b = von_neumann_entropy(DensityMatrix(rho_b))

    thetas = np.linspace(0.0, math.pi, config.theta_grid, endpoint=False)
    phis = np.linspace(0.0, 2.0 * math.pi, config.phi_grid, endpoint=False)
    grid = _conditional_entropy_grid(rho4, thetas, phis)
    it, ip = np.unravel_index(int(np.argmin(grid)), grid.shape)
    best_cond = float(grid[it, ip])
    best_theta = float(thetas[it])
    best_phi = float(phis[ip])
    evals = grid.size
    converged = True

    if config.refine_maxiter > 0:
        res = minimize(
            lambda x: _conditional_entropy_point(rho4, x[0], x[1]),
            np.array([best_theta, best_phi]),
            method="Nelder-Mead",
            options={
                "fatol": config.refine_tol,
                "xatol": 1e-8,
                "maxiter": config.refine_maxiter,
                "maxfev": 4 * config.refine_maxiter,
            },
        )
        evals += int(res.nfev)
        converged = bool(res.success)
        if res.fun < best_cond:
            best_cond = float(res.fun)
            best_theta, best_phi = float(res.x[0]), float(res.x[1])

    value = best_cond + s_b - s_ab
    if -1e-9 <= value < 0.0:
        value = 0.0
    return DiscordSolution(
        value=value, theta=best_theta, phi=best_phi, optimizer_evals=evals, converged=converged
    )


def pairwise_discord_ga(cfg: GroverConfig, r: int, config: OptimizerConfig | None = None) -> DiscordSolution:
    """Discord of the structured two-qubit reduced state (j=1)."""
    return pairwise_discord(reduced_density(cfg, r, 2), config)


def _genuine_discord_from_state(cfg: GroverConfig, st: SymmetricGAState) -> float:
    delta = 1.0 - 4.0 * (2.0 ** (cfg.n - 1) - 1.0) * (st.a * st.b - st.b**2) ** 2
    if delta < -DELTA_TOL or delta > 1.0 + DELTA_TOL:
        raise NumericalConsistencyError(f"discriminant {delta!r} outside [0, 1]")
    delta = min(max(delta, 0.0), 1.0)
    return binary_entropy((1.0 + math.sqrt(delta)) / 2.0)


def genuine_discord_ga(cfg: GroverConfig, r: int) -> float:
    """Genuine n-partite correlation S(rho_1) = H((1 + sqrt(Delta))/2) for j=1."""
    if cfg.j != 1:
        raise UnsupportedStructureError(f"genuine discord closed form requires j=1, got j={cfg.j}")
    return _genuine_discord_from_state(cfg, state_at(cfg, r))


@lru_cache(maxsize=None)
def _partitions_with_two_parts(n: int) -> tuple[tuple[int, ...], ...]:
    """Descending integer partitions of n with at least two parts."""

    def gen(remaining, max_part):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, max_part), 0, -1):
            for rest in gen(remaining - part, part):
                yield (part,) + rest

    return tuple(p for p in gen(n, n - 1))


@dataclass(frozen=True)
class PartitionMinimum:
    """Brute-forced minimum of sum_i S(rho_{k_i}) over qubit-count partitions."""

    value: float  # half the minimal entropy sum, in bits
    partition: tuple[int, ...]
    entropy_by_size: dict[int, float]


def genuine_discord_partition_min(cfg: GroverConfig, r: int) -> PartitionMinimum:
    """Exhaustive partition minimization of the product-state relative entropy.

    Permutation symmetry of the search state makes block entropies depend
    only on block size, so compositions collapse to integer partitions; each
    S(rho_k) is evaluated independently by exact diagonalization of the
    materialized reduced matrix.
    """
    if cfg.j != 1 or cfg.solutions != (0,):
        raise UnsupportedStructureError("partition minimization requires j=1, solution at 0")
    if cfg.n > 12:
        raise ValueError(f"partition minimization capped at 12 qubits, got n={cfg.n}")
    entropy = {k: von_neumann_entropy(reduced_density(cfg, r, k)) for k in range(1, cfg.n)}
    best_value = math.inf
    best_parts: tuple[int, ...] = ()
    for parts in _partitions_with_two_parts(cfg.n):
        total = sum(entropy[k] for k in parts)
        if total < best_value:
            best_value = total
            best_parts = parts
    return PartitionMinimum(value=best_value / 2.0, partition=best_parts, entropy_by_size=entropy)
