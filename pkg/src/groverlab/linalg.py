"""Dense complex-matrix substrate: states, entropies and partial traces.

All entropies are in bits (base-2 logarithms). The computational-basis
index is the big-endian bit string of qubit states: qubit 0 is the most
significant bit of the basis index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
NORM_TOL = 1e-12
# Eigenvalues in (-EIG_CLIP, 0) are treated as exact zeros; anything more
# negative is rejected rather than silently accepted.
EIG_CLIP = 1e-10


def _clip_spectrum(eigenvalues: np.ndarray, context: str) -> np.ndarray:
    if eigenvalues.min(initial=0.0) < -EIG_CLIP:
        raise InvalidStateError(
            f"{context}: eigenvalue {eigenvalues.min():.3e} below -{EIG_CLIP:g}"
        )
    return np.clip(eigenvalues, 0.0, None)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized complex amplitude vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size < 1:
            raise InvalidStateError("amplitudes must be a nonempty 1-d vector")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state not normalized: sum |a|^2 = {norm2!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace complex matrix.

    Hermiticity and trace are validated on construction. Positivity is
    enforced wherever the spectrum is actually computed, via the clipping
    rule in :func:`_clip_spectrum`.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise InvalidStateError(f"density matrix must be square, got shape {m.shape}")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > HERMITIAN_TOL:
            raise InvalidStateError(f"matrix not Hermitian: max |m - m^dag| = {herm:.3e}")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace is {tr!r}, expected 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        n = self.dim.bit_length() - 1
        if 1 << n != self.dim:
            raise ValueError(f"dimension {self.dim} is not a power of two")
        return n

    @classmethod
    def from_pure(cls, amplitudes) -> "DensityMatrix":
        if isinstance(amplitudes, PureState):
            return amplitudes.projector()
        return PureState(np.asarray(amplitudes)).projector()

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim)

    def eigenvalues(self) -> np.ndarray:
        """Real spectrum, ascending, with tiny negatives clipped to zero."""
        return _clip_spectrum(np.linalg.eigvalsh(self.matrix), "DensityMatrix spectrum")

    def validate_psd(self) -> None:
        self.eigenvalues()

    def diagonal_part(self) -> "DensityMatrix":
        return DensityMatrix(np.diag(self.matrix.diagonal().real).astype(complex))

    def purity(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))


def binary_entropy(x: float) -> float:
    """Binary Shannon entropy H(x) in bits, with H(0) = H(1) = 0."""
    if x < -NORM_TOL or x > 1.0 + NORM_TOL:
        raise ValueError(f"binary_entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x))


def shannon_entropy(probabilities: np.ndarray) -> float:
    """Shannon entropy in bits of a probability vector (0 log 0 := 0)."""
    p = _clip_spectrum(np.asarray(probabilities, dtype=float), "probability vector")
    p = p[p > 0.0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-Tr(rho log2 rho) evaluated on the clipped spectrum."""
    return shannon_entropy(rho.eigenvalues())


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Tr(rho log2 rho - rho log2 sigma); +inf when supp(rho) leaves supp(sigma)."""
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    pr, vr = np.linalg.eigh(rho.matrix)
    ps, vs = np.linalg.eigh(sigma.matrix)
    pr = _clip_spectrum(pr, "relative_entropy first argument")
    ps = _clip_spectrum(ps, "relative_entropy second argument")
    overlap = np.abs(vr.conj().T @ vs) ** 2  # overlap[i, j] = |<r_i|s_j>|^2
    sigma_null = ps <= NORM_TOL
    if np.any(sigma_null):
        leak = float(pr @ overlap[:, sigma_null].sum(axis=1))
        if leak > 1e-10:
            return math.inf
    term_rho = float(np.sum(pr[pr > 0.0] * np.log2(pr[pr > 0.0])))
    support = ~sigma_null
    cross = float((pr @ overlap[:, support]) @ np.log2(ps[support]))
    return max(0.0, term_rho - cross)


def _check_keep(n: int, keep) -> tuple[int, ...]:
    keep = tuple(keep)
    if not keep:
        raise IndexError("keep must name at least one qubit")
    if any(not isinstance(q, (int, np.integer)) for q in keep):
        raise IndexError(f"keep indices must be integers, got {keep!r}")
    if list(keep) != sorted(set(keep)):
        raise IndexError(f"keep must be strictly increasing, got {keep!r}")
    if keep[0] < 0 or keep[-1] >= n:
        raise IndexError(f"keep {keep!r} out of range for {n} qubits")
    return keep


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduce an n-qubit state to the qubits in `keep` (strictly increasing)."""
    n = rho.n_qubits
    keep = _check_keep(n, keep)
    if len(keep) == n:
        return rho
    tensor = rho.matrix.reshape((2,) * (2 * n))
    row_idx = list(range(n))
    col_idx = [n + q if q in keep else q for q in range(n)]
    out_idx = [q for q in keep] + [n + q for q in keep]
    reduced = np.einsum(tensor, row_idx + col_idx, out_idx)
    k = len(keep)
    return DensityMatrix(reduced.reshape(2**k, 2**k))


def pure_partial_trace(amplitudes: np.ndarray, keep) -> DensityMatrix:
    """Reduced state of a pure n-qubit state without forming the full projector."""
    amps = np.asarray(amplitudes, dtype=complex)
    n = amps.size.bit_length() - 1
    if 1 << n != amps.size:
        raise ValueError(f"amplitude length {amps.size} is not a power of two")
    keep = _check_keep(n, keep)
    k = len(keep)
    rest = [q for q in range(n) if q not in keep]
    a = np.moveaxis(amps.reshape((2,) * n), keep, range(k)).reshape(2**k, -1)
    if not rest:
        return DensityMatrix.from_pure(a.reshape(-1))
    return DensityMatrix(a @ a.conj().T)


def pure_subsystem_purity(amplitudes: np.ndarray, keep) -> float:
    """Tr(rho_keep^2) for a pure state, via the smaller Gram factor."""
    amps = np.asarray(amplitudes, dtype=complex)
    n = amps.size.bit_length() - 1
    keep = _check_keep(n, keep)
    k = len(keep)
    a = np.moveaxis(amps.reshape((2,) * n), keep, range(k)).reshape(2**k, -1)
    if a.shape[0] <= a.shape[1]:
        g = a @ a.conj().T
    else:
        g = a.conj().T @ a
    return float(np.sum(np.abs(g) ** 2))
