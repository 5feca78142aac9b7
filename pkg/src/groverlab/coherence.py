"""Coherence measures, their Grover-search dynamics and large-N asymptotics."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AsymptoticRegimeWarning
from .grover import GroverConfig, SymmetricGAState, state_at
from .linalg import DensityMatrix, shannon_entropy, von_neumann_entropy

# j/N and N thresholds below which the linearized coherence formulas apply.
REGIME_RATIO_MAX = 1.0 / 64.0
REGIME_MIN_QUBITS = 10


def coherence_relative_entropy(rho: DensityMatrix) -> float:
    """S(rho_diag) - S(rho): distance to the nearest incoherent state, in bits."""
    diag = np.clip(rho.matrix.diagonal().real, 0.0, None)
    return max(0.0, shannon_entropy(diag) - von_neumann_entropy(rho))


def coherence_l1(rho: DensityMatrix) -> float:
    """Sum of the magnitudes of all off-diagonal entries."""
    m = np.abs(rho.matrix)
    return max(0.0, float(m.sum() - m.trace()))


def _coherence_r_from_success(p: float, N: int, j: int) -> float:
    # C_r = H(p) + log2(N-j) + p log2(j/(N-j)), grouped to avoid cancellation.
    p = min(max(p, 0.0), 1.0)
    value = 0.0
    if p > 0.0:
        value += p * math.log2(j / p)
    if p < 1.0:
        value += (1.0 - p) * math.log2((N - j) / (1.0 - p))
    return value


def _coherence_r_from_state(cfg: GroverConfig, st: SymmetricGAState) -> float:
    return _coherence_r_from_success(st.a**2, cfg.database_size, cfg.j)


def coherence_r_ga(cfg: GroverConfig, r: int) -> float:
    """Relative-entropy coherence after r iterations; independent of solution placement."""
    if r == 0:
        # H(j/N) + log2(N-j) + (j/N) log2(j/(N-j)) reduces algebraically to
        # log2 N; return it exactly instead of through trig round-off.
        return float(cfg.n)
    return _coherence_r_from_state(cfg, state_at(cfg, r))


def _coherence_l1_from_state(cfg: GroverConfig, st: SymmetricGAState) -> float:
    N = cfg.database_size
    j = cfg.j
    # sqrt(N-j) |b| = |cos alpha_r|, so this is (sqrt(j)|sin| + sqrt(N-j)|cos|)^2 - 1.
    return (math.sqrt(j) * abs(st.a) + (N - j) * abs(st.b)) ** 2 - 1.0


def coherence_l1_ga(cfg: GroverConfig, r: int) -> float:
    """l1 coherence after r iterations: (sqrt(j)|sin a_r| + sqrt(N-j)|cos a_r|)^2 - 1.

    Magnitudes keep the expression equal to the generic l1 sum at r = r_opt,
    where the accumulated angle may pass pi/2 and cos a_r turns negative.
    """
    return _coherence_l1_from_state(cfg, state_at(cfg, r))


def in_asymptotic_regime(cfg: GroverConfig) -> bool:
    return cfg.j / cfg.database_size <= REGIME_RATIO_MAX and cfg.n >= REGIME_MIN_QUBITS


def _warn_if_outside_regime(cfg: GroverConfig, what: str) -> None:
    if not in_asymptotic_regime(cfg):
        warnings.warn(
            f"{what}: j/N = {cfg.j / cfg.database_size:.3g}, N = {cfg.database_size} "
            "is outside the j << N, N >> 1 regime; value computed anyway",
            AsymptoticRegimeWarning,
            stacklevel=3,
        )


def coherence_asymptotics(cfg: GroverConfig, p: float) -> tuple[float, float]:
    """Linearized coherences (-P log2(N/j) + log2 N, N - N P) for j << N."""
    _warn_if_outside_regime(cfg, "coherence_asymptotics")
    N = cfg.database_size
    ratio = math.log2(N / cfg.j)
    return (-p * ratio + math.log2(N), N - N * p)


def cost_performance(cfg: GroverConfig, measure: str = "relative-entropy") -> float:
    """Success-probability gain per unit of coherence spent, in the j << N limit."""
    _warn_if_outside_regime(cfg, "cost_performance")
    if measure == "relative-entropy":
        return 1.0 / math.log2(cfg.database_size / cfg.j)
    if measure == "l1":
        return 1.0 / cfg.database_size
    raise ValueError(f"unknown coherence measure {measure!r}")


@dataclass(frozen=True)
class CoherenceReport:
    """One sweep row of coherence values at a given iteration."""

    c_r: float
    c_l1: float
    success_probability: float
    asymptotic_c_r: float | None = None
    asymptotic_c_l1: float | None = None

    def __post_init__(self):
        if self.c_r < 0.0 or self.c_l1 < 0.0:
            raise ValueError("coherence values must be nonnegative")
        if not 0.0 <= self.success_probability <= 1.0:
            raise ValueError("success probability must lie in [0, 1]")


def coherence_report(cfg: GroverConfig, r: int, include_asymptotics: bool = False) -> CoherenceReport:
    p = state_at(cfg, r).a ** 2
    asym = (None, None)
    if include_asymptotics:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", AsymptoticRegimeWarning)
            asym = coherence_asymptotics(cfg, p)
    return CoherenceReport(
        c_r=coherence_r_ga(cfg, r),
        c_l1=coherence_l1_ga(cfg, r),
        success_probability=min(p, 1.0),
        asymptotic_c_r=asym[0],
        asymptotic_c_l1=asym[1],
    )
