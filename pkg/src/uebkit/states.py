"""Pure-state linear algebra for systems of qudits with explicit local dimensions.

Amplitude vectors are dense complex128 arrays ordered lexicographically by
local indices, leftmost party most significant. Values are immutable after
construction and every operation is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_EPS = 1e-9

# Norm drift below _EXACT_SLACK is accepted as-is so that serialization round
# trips are bit-exact; drift up to _NORM_SLACK is silently renormalized;
# anything larger is rejected.
_EXACT_SLACK = 1e-12
_NORM_SLACK = 1e-6


@dataclass(frozen=True)
class Tolerance:
    """Numerical tolerance for orthogonality, rank cutoffs and zero tests."""

    eps: float = DEFAULT_EPS

    def __post_init__(self) -> None:
        if not 0.0 < self.eps < 1e-3:
            raise ValueError(f"tolerance must lie in (0, 1e-3), got {self.eps!r}")


def _eps(tol: Tolerance | float | None) -> float:
    """Coerce a tolerance argument to a validated float."""
    if tol is None:
        return DEFAULT_EPS
    if isinstance(tol, Tolerance):
        return tol.eps
    return Tolerance(float(tol)).eps


@dataclass(frozen=True)
class QuditDims:
    """An ordered list of local dimensions, each at least 2."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) < 1:
            raise ValueError("need at least one party")
        if any(d < 2 for d in dims):
            raise ValueError(f"every local dimension must be >= 2, got {dims}")

    @property
    def parties(self) -> int:
        return len(self.dims)

    @property
    def total(self) -> int:
        return math.prod(self.dims)

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)


def _as_amps(space: QuditDims, raw: object) -> np.ndarray:
    amps = np.asarray(raw, dtype=np.complex128).reshape(-1)
    if amps.size != space.total:
        raise ValueError(f"amplitude vector has length {amps.size}, space needs {space.total}")
    return amps


@dataclass(frozen=True, eq=False)
class PureState:
    """A unit-norm amplitude vector over a QuditDims space."""

    space: QuditDims
    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = _as_amps(self.space, self.amps)
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > _NORM_SLACK:
            raise ValueError(f"state norm {norm} deviates from 1 by more than {_NORM_SLACK}")
        if abs(norm - 1.0) > _EXACT_SLACK:
            amps = amps / norm
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)


def basis_state(space: QuditDims, which: int | str | Sequence[int]) -> PureState:
    """Computational basis ket, addressed by flat index, digit string or index list."""
    if isinstance(which, str):
        idx = [int(ch) for ch in which]
    elif isinstance(which, int):
        if not 0 <= which < space.total:
            raise ValueError(f"flat index {which} out of range for total dimension {space.total}")
        amps = np.zeros(space.total, dtype=np.complex128)
        amps[which] = 1.0
        return PureState(space, amps)
    else:
        idx = [int(i) for i in which]
    if len(idx) != space.parties:
        raise ValueError(f"index list {idx} does not address {space.parties} parties")
    flat = 0
    for i, d in zip(idx, space.dims):
        if not 0 <= i < d:
            raise ValueError(f"local index {i} out of range for dimension {d}")
        flat = flat * d + i
    amps = np.zeros(space.total, dtype=np.complex128)
    amps[flat] = 1.0
    return PureState(space, amps)


def state_from_combination(space: QuditDims, terms: dict[str, complex]) -> PureState:
    """Superposition built from {digit string: amplitude} terms, then normalized."""
    amps = np.zeros(space.total, dtype=np.complex128)
    for label, coeff in terms.items():
        amps += complex(coeff) * basis_state(space, label).amps
    n = np.linalg.norm(amps)
    if n == 0.0:
        raise ValueError("combination sums to the zero vector")
    return PureState(space, amps / n)


def kron_amplitudes(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product kernel on raw amplitude vectors."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def tensor_product(a: PureState, b: PureState) -> PureState:
    """Composite state of two subsystems; party order is a's parties then b's."""
    space = QuditDims(a.space.dims + b.space.dims)
    return PureState(space, kron_amplitudes(a.amps, b.amps))


def inner(a: PureState, b: PureState) -> complex:
    """Hermitian inner product, conjugate-linear in the first argument."""
    if a.space != b.space:
        raise ValueError(f"space mismatch: {a.space} vs {b.space}")
    return complex(np.vdot(a.amps, b.amps))


@dataclass(frozen=True, eq=False)
class StateSet:
    """A finite, pairwise-orthogonal collection of states on one space.

    Empty sets are permitted so searches can report size-zero results.
    """

    space: QuditDims
    states: tuple[PureState, ...]
    name: str | None = None

    def __post_init__(self) -> None:
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        if len(states) > self.space.total:
            raise ValueError(f"{len(states)} states cannot be orthogonal in dimension {self.space.total}")
        for st in states:
            if st.space != self.space:
                raise ValueError(f"space mismatch: {st.space} vs {self.space}")
        if states:
            m = self.matrix()
            gram = np.conj(m) @ m.T
            off = gram - np.eye(len(states))
            worst = float(np.abs(off).max())
            if worst > DEFAULT_EPS:
                raise ValueError(f"states are not pairwise orthonormal (worst deviation {worst:.3e})")

    def __len__(self) -> int:
        return len(self.states)

    def matrix(self) -> np.ndarray:
        """(count, D) array with one amplitude vector per row."""
        if not self.states:
            return np.zeros((0, self.space.total), dtype=np.complex128)
        return np.array([st.amps for st in self.states])

    def subspace(self) -> "Subspace":
        return Subspace(self.space, self.states)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace carried by an explicit orthonormal basis."""

    space: QuditDims
    basis: tuple[PureState, ...]

    def __post_init__(self) -> None:
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        if len(basis) > self.space.total:
            raise ValueError(f"basis of size {len(basis)} exceeds dimension {self.space.total}")
        for st in basis:
            if st.space != self.space:
                raise ValueError(f"space mismatch: {st.space} vs {self.space}")
        if basis:
            m = self.matrix()
            gram = np.conj(m) @ m.T
            worst = float(np.abs(gram - np.eye(len(basis))).max())
            if worst > DEFAULT_EPS:
                raise ValueError(f"basis is not orthonormal (worst deviation {worst:.3e})")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        """(dim, D) array with one basis vector per row."""
        if not self.basis:
            return np.zeros((0, self.space.total), dtype=np.complex128)
        return np.array([st.amps for st in self.basis])

    def projector(self) -> np.ndarray:
        m = self.matrix()
        return m.T @ np.conj(m)

    def vector(self, coeffs: np.ndarray) -> np.ndarray:
        """Raw amplitude vector for a coefficient vector over this basis."""
        return np.asarray(coeffs, dtype=np.complex128) @ self.matrix()


def orthonormalize(
    space: QuditDims,
    vectors: Iterable[object],
    tol: Tolerance | float | None = None,
) -> Subspace:
    """Modified Gram-Schmidt with re-orthogonalization.

    Vectors whose residual norm falls below the tolerance are dropped, so the
    output dimension equals the numerical rank of the input span.
    """
    eps = _eps(tol)
    kept: list[np.ndarray] = []
    for raw in vectors:
        v = _as_amps(space, raw).copy()
        for _ in range(2):
            for u in kept:
                v -= np.vdot(u, v) * u
        n = float(np.linalg.norm(v))
        if n >= eps:
            kept.append(v / n)
    return Subspace(space, tuple(PureState(space, u) for u in kept))


def orthogonal_complement(s: Subspace, tol: Tolerance | float | None = None) -> Subspace:
    """Orthogonal complement within the full space."""
    eps = _eps(tol)
    d = s.space.total
    if s.dim == 0:
        return Subspace(s.space, tuple(basis_state(s.space, i) for i in range(d)))
    b = np.conj(s.matrix())
    _, sv, vh = np.linalg.svd(b, full_matrices=True)
    rank = int((sv > eps).sum())
    comp = np.conj(vh[rank:])
    return Subspace(s.space, tuple(PureState(s.space, row) for row in comp))


def canonical_phase(p: PureState, tol: Tolerance | float | None = None) -> PureState:
    """Rotate the global phase so the first significant amplitude is real positive.

    Idempotent exactly: reapplying returns the stored amplitudes unchanged.
    """
    eps = _eps(tol)
    amps = p.amps
    idx = np.flatnonzero(np.abs(amps) > eps)
    if idx.size == 0:
        raise ValueError("cannot fix the phase of a (numerically) zero vector")
    k = int(idx[0])
    a = amps[k]
    if a.imag == 0.0 and a.real > 0.0:
        return p
    out = amps * (np.conj(a) / abs(a))
    out[k] = abs(a)
    return PureState(p.space, out)


def span_equal(a: Subspace, b: Subspace, tol: Tolerance | float | None = None) -> bool:
    """Whether two subspaces coincide, via Frobenius distance of projectors."""
    if a.space != b.space:
        raise ValueError(f"space mismatch: {a.space} vs {b.space}")
    eps = _eps(tol)
    return bool(np.linalg.norm(a.projector() - b.projector()) < eps)


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed d x d unitary (QR of a complex Gaussian, phases fixed)."""
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r).copy()
    ph /= np.abs(ph)
    return q * ph


def random_state(space: QuditDims, rng: np.random.Generator) -> PureState:
    """Haar-random pure state on the given space."""
    v = rng.standard_normal(space.total) + 1j * rng.standard_normal(space.total)
    return PureState(space, v / np.linalg.norm(v))


def apply_local_unitary(p: PureState, party: int, u: np.ndarray) -> PureState:
    """Apply a single-party unitary in place of the identity elsewhere."""
    dims = p.space.dims
    if not 0 <= party < len(dims):
        raise ValueError(f"party {party} out of range")
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (dims[party], dims[party]):
        raise ValueError(f"operator shape {u.shape} does not match dimension {dims[party]}")
    t = p.amps.reshape(dims)
    t = np.moveaxis(np.tensordot(u, t, axes=([1], [party])), 0, party)
    return PureState(p.space, t.reshape(-1))


def apply_local_unitaries(p: PureState, us: Sequence[np.ndarray]) -> PureState:
    """Apply one unitary per party."""
    if len(us) != p.space.parties:
        raise ValueError("need exactly one operator per party")
    out = p
    for party, u in enumerate(us):
        out = apply_local_unitary(out, party, u)
    return out
