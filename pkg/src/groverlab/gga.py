"""Generalized Grover search from arbitrary initial amplitude distributions.

One iteration flips the sign of every solution amplitude and then reflects
all N amplitudes about their global average. Averages over solutions and
non-solutions evolve sinusoidally with angular step omega and phase beta;
individual deviations from the averages are frozen (solutions) or alternate
in sign (non-solutions).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import AmplitudeFileError, InvalidStateError, UnsupportedStructureError
from .linalg import NORM_TOL, PureState, binary_entropy

REAL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class AmplitudeDistribution:
    """Solution amplitudes k_i and non-solution amplitudes l_i at iteration r."""

    j: int
    solution_amplitudes: np.ndarray
    other_amplitudes: np.ndarray
    r: int = 0

    def __post_init__(self):
        k = np.ascontiguousarray(self.solution_amplitudes, dtype=complex)
        l = np.ascontiguousarray(self.other_amplitudes, dtype=complex)
        if k.ndim != 1 or l.ndim != 1 or k.size < 1 or l.size < 1:
            raise InvalidStateError("amplitude lists must be nonempty 1-d vectors")
        if self.j != k.size:
            raise InvalidStateError(f"j={self.j} but {k.size} solution amplitudes given")
        norm2 = float(np.sum(np.abs(k) ** 2) + np.sum(np.abs(l) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise InvalidStateError(f"distribution not normalized: sum |amp|^2 = {norm2!r}")
        k.setflags(write=False)
        l.setflags(write=False)
        object.__setattr__(self, "solution_amplitudes", k)
        object.__setattr__(self, "other_amplitudes", l)

    @property
    def size(self) -> int:
        return self.solution_amplitudes.size + self.other_amplitudes.size

    @property
    def kbar(self) -> complex:
        return complex(self.solution_amplitudes.mean())

    @property
    def lbar(self) -> complex:
        return complex(self.other_amplitudes.mean())

    @property
    def sigma_l_squared(self) -> float:
        """Population variance of the non-solution amplitudes."""
        dev = self.other_amplitudes - self.lbar
        return float(np.mean(np.abs(dev) ** 2))

    @property
    def is_real(self) -> bool:
        return (
            float(np.max(np.abs(self.solution_amplitudes.imag))) <= REAL_TOL
            and float(np.max(np.abs(self.other_amplitudes.imag))) <= REAL_TOL
        )

    def success_probability(self) -> float:
        return float(np.sum(np.abs(self.solution_amplitudes) ** 2))

    @classmethod
    def uniform(cls, n: int, j: int) -> "AmplitudeDistribution":
        N = 1 << n
        amp = 1.0 / math.sqrt(N)
        return cls(j=j, solution_amplitudes=np.full(j, amp), other_amplitudes=np.full(N - j, amp))


def gga_iterate(dist: AmplitudeDistribution, steps: int) -> AmplitudeDistribution:
    """Apply `steps` iterations: sign-flip solutions, reflect about the global mean."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    k = dist.solution_amplitudes.copy()
    l = dist.other_amplitudes.copy()
    N = dist.size
    for _ in range(steps):
        k = -k
        avg = (k.sum() + l.sum()) / N
        k = 2.0 * avg - k
        l = 2.0 * avg - l
    return replace(dist, solution_amplitudes=k, other_amplitudes=l, r=dist.r + steps)


@dataclass(frozen=True)
class GGAClosedForm:
    """Sinusoidal parameters of the average-amplitude dynamics.

    kbar(r) = (C/sqrt(j)) sin(omega r + beta),
    lbar(r) = (C/sqrt(N-j)) cos(omega r + beta).
    """

    omega: float
    beta: float
    C: float
    degenerate_phase: bool = False


def gga_closed_form(dist0: AmplitudeDistribution) -> GGAClosedForm:
    """Fit omega, beta and the envelope constant C from the r=0 averages."""
    if not dist0.is_real:
        raise UnsupportedStructureError(
            "closed-form averages require real amplitudes; use the scan fallback"
        )
    j = dist0.j
    N = dist0.size
    kbar0 = dist0.kbar.real
    lbar0 = dist0.lbar.real
    omega = math.acos(1.0 - 2.0 * j / N)
    degenerate = lbar0 == 0.0
    if degenerate:
        beta = math.pi / 2.0
    else:
        beta = math.atan2(math.sqrt(j) * kbar0, math.sqrt(N - j) * lbar0)
    C = math.sqrt(j * kbar0**2 + (N - j) * lbar0**2)
    return GGAClosedForm(omega=omega, beta=beta, C=C, degenerate_phase=degenerate)


def closed_form_averages(cf: GGAClosedForm, j: int, N: int, r: float) -> tuple[float, float]:
    """(kbar, lbar) predicted at (possibly continuous) iteration r."""
    phase = cf.omega * r + cf.beta
    return (
        cf.C / math.sqrt(j) * math.sin(phase),
        cf.C / math.sqrt(N - j) * math.cos(phase),
    )


def gga_pmax(dist0: AmplitudeDistribution) -> float:
    """1 - (N-j) sigma_l^2; the deviation magnitudes are iteration-invariant.

    For real distributions the continuous-time success probability attains
    this value exactly (the non-solution average crosses zero). For complex
    distributions whose real and imaginary phases differ it is an upper
    bound: the two average components never vanish simultaneously.
    """
    N = dist0.size
    return 1.0 - (N - dist0.j) * dist0.sigma_l_squared


def gga_success_probability_at(dist0: AmplitudeDistribution, t: float) -> float:
    """Success probability at continuous time t from the sinusoidal averages.

    Real and imaginary amplitude components evolve independently under the
    same real linear map, so complex inputs are handled by superposing the
    two closed forms; solution deviations are constant in t.
    """
    j = dist0.j
    N = dist0.size
    k0 = dist0.solution_amplitudes
    l0 = dist0.other_amplitudes
    omega = math.acos(1.0 - 2.0 * j / N)
    total = float(np.sum(np.abs(k0 - k0.mean()) ** 2))
    for kbar_part, lbar_part in (
        (float(k0.real.mean()), float(l0.real.mean())),
        (float(k0.imag.mean()), float(l0.imag.mean())),
    ):
        C2 = j * kbar_part**2 + (N - j) * lbar_part**2
        if C2 == 0.0:
            continue
        beta = math.atan2(math.sqrt(j) * kbar_part, math.sqrt(N - j) * lbar_part)
        total += C2 * math.sin(omega * t + beta) ** 2
    return total


@dataclass(frozen=True)
class GGAOptimalTime:
    """Continuous optimal measurement time plus achievable integer-time probabilities."""

    time: float
    p_floor: float
    p_ceil: float
    method: str  # "closed-form" or "scan"
    degenerate_phase: bool = False


def gga_optimal_time(dist0: AmplitudeDistribution) -> GGAOptimalTime:
    """(pi/2 - beta)/omega for real amplitudes; grid-scan fallback otherwise."""
    N = dist0.size
    j = dist0.j
    omega = math.acos(1.0 - 2.0 * j / N)
    if dist0.is_real:
        cf = gga_closed_form(dist0)
        t = (math.pi / 2.0 - cf.beta) / cf.omega
        period = math.pi / cf.omega
        while t < 0.0:
            t += period
        method = "closed-form"
        degenerate = cf.degenerate_phase
    else:
        # Complex averages: the paper's beta presumes real amplitudes, so
        # locate the peak of the superposed envelope numerically.
        period = math.pi / omega
        grid = np.linspace(0.0, period, 4097)
        values = [gga_success_probability_at(dist0, x) for x in grid]
        best = int(np.argmax(values))
        lo = grid[max(best - 1, 0)]
        hi = grid[min(best + 1, grid.size - 1)]
        for _ in range(200):
            m1 = lo + (hi - lo) / 3.0
            m2 = hi - (hi - lo) / 3.0
            if gga_success_probability_at(dist0, m1) < gga_success_probability_at(dist0, m2):
                lo = m1
            else:
                hi = m2
        t = 0.5 * (lo + hi)
        method = "scan"
        degenerate = False
    r_floor = math.floor(t)
    r_ceil = math.ceil(t)
    return GGAOptimalTime(
        time=t,
        p_floor=gga_iterate(dist0, r_floor).success_probability(),
        p_ceil=gga_iterate(dist0, r_ceil).success_probability(),
        method=method,
        degenerate_phase=degenerate,
    )


@dataclass(frozen=True)
class PhiFamily:
    """Two-solution initial states phi_0|0> + phi_1|1> + uniform tail.

    phi0^2 + phi1^2 = 2/N with phi0 <= phi1; the non-solution amplitudes are
    all 1/sqrt(N), so the peak success probability is exactly 1 and the
    optimal-time state is k1|0> + k2|1>.
    """

    N: int
    phi0: float
    phi1: float
    k1: float
    k2: float

    def __post_init__(self):
        if self.N < 4:
            raise ValueError(f"database size must be >= 4, got {self.N}")
        if abs(self.phi0**2 + self.phi1**2 - 2.0 / self.N) > NORM_TOL:
            raise InvalidStateError(
                f"phi0^2 + phi1^2 = {self.phi0**2 + self.phi1**2!r}, expected 2/N"
            )
        if self.phi0 > self.phi1:
            raise ValueError("phi0 <= phi1 is required")
        if abs(self.k1**2 + self.k2**2 - 1.0) > NORM_TOL:
            raise InvalidStateError("k1^2 + k2^2 must equal 1")

    @classmethod
    def from_phi0(cls, N: int, phi0: float) -> "PhiFamily":
        rest = 2.0 / N - phi0 * phi0
        if rest < -NORM_TOL:
            raise ValueError(f"phi0={phi0!r} exceeds sqrt(2/N)")
        phi1 = math.sqrt(max(rest, 0.0))
        if phi0 > phi1:
            raise ValueError(f"phi0={phi0!r} violates phi0 <= phi1 for N={N}")
        s = math.sqrt((N - 2.0) / (2.0 * N) + 0.25 * (phi0 + phi1) ** 2)
        half_gap = 0.5 * (phi0 - phi1)
        return cls(N=N, phi0=phi0, phi1=phi1, k1=s + half_gap, k2=s - half_gap)


def phi_family_distribution(fam: PhiFamily) -> AmplitudeDistribution:
    tail = np.full(fam.N - 2, 1.0 / math.sqrt(fam.N))
    return AmplitudeDistribution(j=2, solution_amplitudes=np.array([fam.phi0, fam.phi1]), other_amplitudes=tail)


def phi_family_states(fam: PhiFamily) -> tuple[PureState, PureState]:
    """(initial state as a length-N vector, optimal-time state k1|0> + k2|1>)."""
    initial = np.full(fam.N, 1.0 / math.sqrt(fam.N), dtype=complex)
    initial[0] = fam.phi0
    initial[1] = fam.phi1
    return PureState(initial), PureState(np.array([fam.k1, fam.k2], dtype=complex))


def _p_log2_p(x: float) -> float:
    return 0.0 if x <= 0.0 else -x * math.log2(x)


def phi_family_delta_coherence(fam: PhiFamily) -> float:
    """Relative-entropy coherence spent between the initial and optimal states."""
    return (
        _p_log2_p(fam.phi0**2)
        + _p_log2_p(fam.phi1**2)
        + (fam.N - 2.0) / fam.N * math.log2(fam.N)
        - binary_entropy(fam.k1**2)
    )


def distribution_from_json(text: str) -> tuple[AmplitudeDistribution, int, tuple[int, ...]]:
    """Parse {"n": int, "solutions": [...], "amplitudes": [[re, im], ...]}.

    Returns (distribution, n, solutions). Raises AmplitudeFileError with
    line/field diagnostics on malformed input.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AmplitudeFileError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise AmplitudeFileError("top-level value must be an object")
    for field in ("n", "solutions", "amplitudes"):
        if field not in doc:
            raise AmplitudeFileError(f"missing required field {field!r}")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise AmplitudeFileError(f"field 'n': expected a positive integer, got {n!r}")
    N = 1 << n
    sols = doc["solutions"]
    if (
        not isinstance(sols, list)
        or not sols
        or any(not isinstance(s, int) or not 0 <= s < N for s in sols)
        or len(set(sols)) != len(sols)
    ):
        raise AmplitudeFileError(
            f"field 'solutions': expected distinct integers in 0..{N - 1}, got {sols!r}"
        )
    amps_raw = doc["amplitudes"]
    if not isinstance(amps_raw, list) or len(amps_raw) != N:
        raise AmplitudeFileError(
            f"field 'amplitudes': expected {N} entries, got "
            f"{len(amps_raw) if isinstance(amps_raw, list) else type(amps_raw).__name__}"
        )
    amps = np.empty(N, dtype=complex)
    for i, pair in enumerate(amps_raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or any(not isinstance(x, (int, float)) for x in pair)
        ):
            raise AmplitudeFileError(f"amplitudes[{i}]: expected a [re, im] pair, got {pair!r}")
        amps[i] = complex(pair[0], pair[1])
    norm2 = float(np.sum(np.abs(amps) ** 2))
    if abs(norm2 - 1.0) > NORM_TOL:
        raise AmplitudeFileError(f"amplitudes not normalized: sum |a|^2 = {norm2!r}")
    solutions = tuple(sorted(sols))
    mask = np.zeros(N, dtype=bool)
    mask[list(solutions)] = True
    dist = AmplitudeDistribution(
        j=len(solutions), solution_amplitudes=amps[mask], other_amplitudes=amps[~mask]
    )
    return dist, n, solutions
