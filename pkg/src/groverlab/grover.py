"""Closed-form Grover engine in the two-dimensional invariant subspace.

The state after r iterations is sin(alpha_r)|X> + cos(alpha_r)|Xperp>
with alpha_r = (r + 1/2) alpha and alpha = 2 arctan sqrt(j/(N-j)), so the
solution amplitude a and per-item non-solution amplitude b determine every
structured density matrix without touching the 2^n-dimensional space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, UnsupportedStructureError
from .linalg import DensityMatrix

DENSE_QUBIT_LIMIT = 12

AB_NORM_TOL = 1e-12


@dataclass(frozen=True)
class GroverConfig:
    """Search-problem description: n qubits, j solutions, optional explicit indices."""

    n: int
    j: int = 1
    solutions: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        N = 1 << self.n
        if not 1 <= self.j < N:
            raise ValueError(f"solution count must satisfy 1 <= j < {N}, got {self.j}")
        if self.solutions is None:
            object.__setattr__(self, "solutions", tuple(range(self.j)))
        else:
            sols = tuple(sorted(set(int(s) for s in self.solutions)))
            if len(sols) != self.j:
                raise ValueError(f"expected {self.j} distinct solutions, got {self.solutions!r}")
            if sols[0] < 0 or sols[-1] >= N:
                raise ValueError(f"solution indices out of range 0..{N - 1}: {sols!r}")
            object.__setattr__(self, "solutions", sols)

    @property
    def database_size(self) -> int:
        # Python integers are exact at any n; formulas convert to float ratios.
        return 1 << self.n

    @property
    def alpha(self) -> float:
        return 2.0 * math.atan2(math.sqrt(self.j), math.sqrt(self.database_size - self.j))


@dataclass(frozen=True)
class SymmetricGAState:
    """Two-amplitude representation (a, b) of the GA state at iteration r."""

    r: int
    alpha: float
    alpha_r: float
    a: float
    b: float


@dataclass(frozen=True)
class OptimalIteration:
    """Rounded stopping time with the pre-rounding value and tie flag."""

    r_opt: int
    exact: float
    tie: bool


def state_at(cfg: GroverConfig, r: int) -> SymmetricGAState:
    """Amplitudes after r Grover iterations; cost independent of N."""
    if r < 0:
        raise ValueError(f"iteration count must be >= 0, got {r}")
    alpha = cfg.alpha
    alpha_r = (r + 0.5) * alpha
    a = math.sin(alpha_r)
    b = math.cos(alpha_r) / math.sqrt(cfg.database_size - cfg.j)
    return SymmetricGAState(r=r, alpha=alpha, alpha_r=alpha_r, a=a, b=b)


def success_probability(cfg: GroverConfig, r: int) -> float:
    """P(r) = sin^2(alpha_r)."""
    return state_at(cfg, r).a ** 2


def optimal_iteration_details(cfg: GroverConfig) -> OptimalIteration:
    """Closest integer to (pi - alpha)/(2 alpha); half-integer ties round toward zero."""
    alpha = cfg.alpha
    exact = (math.pi - alpha) / (2.0 * alpha)
    floor = math.floor(exact)
    frac = exact - floor
    tie = abs(frac - 0.5) < 1e-12
    if tie:
        r_opt = floor
    else:
        r_opt = floor if frac < 0.5 else floor + 1
    return OptimalIteration(r_opt=max(0, r_opt), exact=exact, tie=tie)


def optimal_iterations(cfg: GroverConfig) -> int:
    return optimal_iteration_details(cfg).r_opt


def _solution_mask(cfg: GroverConfig) -> np.ndarray:
    mask = np.zeros(cfg.database_size, dtype=bool)
    mask[list(cfg.solutions)] = True
    return mask


def ga_statevector_amplitudes(cfg: GroverConfig, r: int) -> np.ndarray:
    """Full amplitude vector: a/sqrt(j) on solutions, b elsewhere."""
    if cfg.n > DENSE_QUBIT_LIMIT:
        raise CapacityError(
            f"n={cfg.n} exceeds the dense limit {DENSE_QUBIT_LIMIT}; use reduced_density"
        )
    st = state_at(cfg, r)
    amps = np.full(cfg.database_size, st.b, dtype=complex)
    amps[_solution_mask(cfg)] = st.a / math.sqrt(cfg.j)
    return amps


def full_density(cfg: GroverConfig, r: int) -> DensityMatrix:
    """Rank-1 projector onto the GA state; entries depend only on solution membership."""
    amps = ga_statevector_amplitudes(cfg, r)
    return DensityMatrix(np.outer(amps, amps.conj()))


def _require_leading_single_solution(cfg: GroverConfig, what: str) -> None:
    if cfg.j != 1 or cfg.solutions != (0,):
        raise UnsupportedStructureError(
            f"{what} requires j=1 with the solution at index 0 "
            f"(got j={cfg.j}, solutions={cfg.solutions}); fall back to the brute-force engine"
        )


def _reduced_matrix_from_state(n: int, st: SymmetricGAState, k: int) -> np.ndarray:
    d = 2.0 ** (n - k)
    bulk = d * st.b**2
    edge = st.a * st.b + (d - 1.0) * st.b**2
    corner = st.a**2 + (d - 1.0) * st.b**2
    m = np.full((1 << k, 1 << k), bulk, dtype=complex)
    m[0, :] = edge
    m[:, 0] = edge
    m[0, 0] = corner
    return m


def reduced_density(cfg: GroverConfig, r: int, k: int) -> DensityMatrix:
    """Structured k-qubit reduced state for the single-solution search.

    entry(0,0) = a^2 + (2^(n-k)-1) b^2, first row/column ab + (2^(n-k)-1) b^2,
    all remaining entries 2^(n-k) b^2. Valid for arbitrary n since only a, b
    and 2^(n-k) enter. Identical for every choice of k kept qubits.
    """
    _require_leading_single_solution(cfg, "reduced_density")
    if not 1 <= k < cfg.n:
        raise ValueError(f"kept-qubit count must satisfy 1 <= k < {cfg.n}, got {k}")
    return DensityMatrix(_reduced_matrix_from_state(cfg.n, state_at(cfg, r), k))


@dataclass(frozen=True)
class TwoQubitOmega:
    """Coefficients of the two-qubit reduced state: corner, edge and bulk entries."""

    omega0: float
    omega1: float
    omega2: float

    def __post_init__(self):
        total = self.omega0 + 3.0 * self.omega2
        if abs(total - 1.0) > AB_NORM_TOL:
            raise ValueError(f"omega0 + 3*omega2 = {total!r}, expected 1")

    def as_matrix(self) -> np.ndarray:
        m = np.full((4, 4), self.omega2, dtype=complex)
        m[0, :] = self.omega1
        m[:, 0] = self.omega1
        m[0, 0] = self.omega0
        return m

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(self.as_matrix())


def two_qubit_omegas(cfg: GroverConfig, r: int) -> TwoQubitOmega:
    """Omega coefficients of the two-qubit reduced state (j=1 only)."""
    if cfg.n < 2:
        raise ValueError(f"two-qubit reduction needs n >= 2, got n={cfg.n}")
    _require_leading_single_solution(cfg, "two_qubit_omegas")
    st = state_at(cfg, r)
    quarter = cfg.database_size / 4.0
    return TwoQubitOmega(
        omega0=st.a**2 + (quarter - 1.0) * st.b**2,
        omega1=st.a * st.b + (quarter - 1.0) * st.b**2,
        omega2=quarter * st.b**2,
    )
