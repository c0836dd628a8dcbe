"""Families of entangled bases: fixed catalog entries and parameterized generators.

Catalog ids and tags are opaque registry strings. Builders are named by what
they construct, and every registered family passes through a verification
gate before it is handed out: orthonormality always, per-member maximal
entanglement where claimed, and the unextendibility verdict where a kind is
declared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .cuts import is_maximally_entangled, single_cut
from .states import (
    PureState,
    QuditDims,
    StateSet,
    Subspace,
    Tolerance,
    basis_state,
    haar_unitary,
    kron_amplitudes,
    span_equal,
    state_from_combination,
)
from .subspaces import BasisKind, BasisVerdict, Outcome, SearchConfig, verify_basis


class ConstructionError(RuntimeError):
    """A constructed family failed its verification gate."""


class CoeffVariant(Enum):
    """Coefficient scheme for the superposition blocks of the n-qubit family."""

    DFT = "DFT"
    HADAMARD_IF_POWER_OF_TWO = "HADAMARD_IF_POWER_OF_TWO"


def dft_superposition(space: QuditDims, kets: Sequence[int | str | Sequence[int]]) -> list[PureState]:
    """The k discrete-Fourier superpositions of k distinct basis kets.

    Row r gets coefficients w^(r*c) / sqrt(k) over the kets in the given
    order; the rows are orthonormal exactly when the kets are distinct.
    """
    k = len(kets)
    if k < 1:
        raise ValueError("need at least one ket")
    columns = [basis_state(space, ket).amps for ket in kets]
    flat = [int(np.argmax(np.abs(col))) for col in columns]
    if len(set(flat)) != k:
        raise ValueError("kets must be distinct")
    w = np.exp(2j * np.pi / k)
    out: list[PureState] = []
    for r in range(k):
        amps = np.zeros(space.total, dtype=np.complex128)
        for c, col in enumerate(columns):
            amps += (w ** (r * c)) * col
        out.append(PureState(space, amps / math.sqrt(k)))
    return out


def _hadamard_rows(k: int) -> np.ndarray:
    """Rows of the k x k Sylvester matrix in bit-reversed order; k must be 2^b."""
    b = int(k).bit_length() - 1
    if k < 1 or (1 << b) != k:
        raise ValueError(f"Hadamard coefficients need a power-of-two block, got {k}")
    h = np.ones((1, 1))
    for _ in range(b):
        h = np.block([[h, h], [h, -h]])
    if b == 0:
        return h
    order = [int(format(i, f"0{b}b")[::-1], 2) for i in range(k)]
    return h[order]


def two_qubit_ueb_real() -> StateSet:
    """Three real-coefficient entangled states of two qubits; complement ray |11>."""
    space = QuditDims((2, 2))
    states = (
        state_from_combination(space, {"00": 1, "01": 1, "10": 1}),
        state_from_combination(space, {"01": 1, "10": -1}),
        state_from_combination(space, {"00": 2, "01": -1, "10": -1}),
    )
    return StateSet(space, states)


def two_qubit_ueb_fourier() -> StateSet:
    """Three Fourier-coefficient entangled states of two qubits; complement ray |11>."""
    space = QuditDims((2, 2))
    return StateSet(space, tuple(dft_superposition(space, ["00", "01", "10"])))


def two_qubit_ueb_general(
    basis_a: np.ndarray | None = None,
    vec_b: np.ndarray | None = None,
    seed: int = 0,
    cfg: SearchConfig | None = None,
    tol: Tolerance | float | None = None,
) -> tuple[StateSet, BasisVerdict]:
    """General-position variant of the two-qubit family, verdict attached.

    The three members are Fourier superpositions of the orthonormal pillars
    |a,0>, |a,1>, |b,v> with {a, b} a basis of the first qubit and v any unit
    vector of the second, so the complement is the product ray |b, v_perp>.
    Unset parameters are drawn Haar-randomly from the seed. The returned
    verdict is the unextendibility check at the single cut; degenerate
    parameter choices (v aligned with a member's second-qubit factor) show up
    there as REFUTED rather than raising.
    """
    rng = np.random.default_rng(seed)
    if basis_a is None:
        basis_a = haar_unitary(2, rng)
    else:
        basis_a = np.asarray(basis_a, dtype=np.complex128)
        if basis_a.shape != (2, 2) or np.abs(basis_a.conj().T @ basis_a - np.eye(2)).max() > 1e-9:
            raise ValueError("basis_a must be a 2x2 unitary")
    if vec_b is None:
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        vec_b = v / np.linalg.norm(v)
    else:
        vec_b = np.asarray(vec_b, dtype=np.complex128).reshape(-1)
        if vec_b.shape != (2,) or abs(np.linalg.norm(vec_b) - 1.0) > 1e-9:
            raise ValueError("vec_b must be a unit vector of length 2")
    space = QuditDims((2, 2))
    e0, e1 = np.eye(2, dtype=np.complex128)
    pillars = (
        kron_amplitudes(basis_a[:, 0], e0),
        kron_amplitudes(basis_a[:, 0], e1),
        kron_amplitudes(basis_a[:, 1], vec_b),
    )
    w = np.exp(2j * np.pi / 3)
    states = tuple(
        PureState(space, (pillars[0] + w**r * pillars[1] + w ** (2 * r) * pillars[2]) / math.sqrt(3))
        for r in range(3)
    )
    st = StateSet(space, states)
    return st, verify_basis(st, BasisKind.UEB, cfg, tol)


def _fourier_pair_block(d: int, dim_b: int, offset: int) -> list[PureState]:
    """Maximally entangled states (1/sqrt d) sum_j w^(jk) |j>|offset+(j+t) mod d>, ordered by (t, k)."""
    space = QuditDims((d, dim_b))
    w = np.exp(2j * np.pi / d)
    out: list[PureState] = []
    for t in range(d):
        for k in range(d):
            amps = np.zeros(space.total, dtype=np.complex128)
            for j in range(d):
                amps[j * dim_b + offset + (j + t) % d] = w ** (j * k) / math.sqrt(d)
            out.append(PureState(space, amps))
    return out


def bell_meb(d: int) -> StateSet:
    """Complete maximally entangled basis of d x d, ordered by (shift, phase)."""
    if d < 2:
        raise ValueError("local dimension must be at least 2")
    return StateSet(QuditDims((d, d)), tuple(_fourier_pair_block(d, d, 0)))


def embed_meb(d: int, n: int) -> StateSet:
    """The d x d basis zero-padded into d x (d+n); unextendible there for 1 <= n < d.

    The complement is the span of the last n columns, whose Schmidt rank is
    capped at n, so no maximally entangled vector survives outside the set.
    """
    if d < 2:
        raise ValueError("local dimension must be at least 2")
    if not 1 <= n < d:
        raise ValueError(f"padding must satisfy 1 <= n < d, got n={n}, d={d}")
    return StateSet(QuditDims((d, d + n)), tuple(_fourier_pair_block(d, d + n, 0)))


def meb_extension_completion(
    x: np.ndarray | None = None,
    x_prime: np.ndarray | None = None,
    dim_b: int = 4,
) -> StateSet:
    """Four maximally entangled states of 2 x dim_b supported on two fresh columns.

    Defaults put the support on the third and fourth columns, which completes
    the zero-padded 2 x 2 basis to a full maximally entangled basis of 2 x 4.
    """
    space = QuditDims((2, dim_b))
    if x is None:
        x = np.eye(dim_b, dtype=np.complex128)[2]
    if x_prime is None:
        x_prime = np.eye(dim_b, dtype=np.complex128)[3]
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    x_prime = np.asarray(x_prime, dtype=np.complex128).reshape(-1)
    if x.size != dim_b or x_prime.size != dim_b:
        raise ValueError("support vectors must live on the second party")
    if abs(np.linalg.norm(x) - 1) > 1e-9 or abs(np.linalg.norm(x_prime) - 1) > 1e-9 or abs(np.vdot(x, x_prime)) > 1e-9:
        raise ValueError("support vectors must be orthonormal")
    e0, e1 = np.eye(2, dtype=np.complex128)
    pair = (x, x_prime)
    states = []
    for t in range(2):
        for k in range(2):
            amps = (kron_amplitudes(e0, pair[t]) + (-1) ** k * kron_amplitudes(e1, pair[1 - t])) / math.sqrt(2)
            states.append(PureState(space, amps))
    return StateSet(space, tuple(states))


def padded_meb_with_extension() -> StateSet:
    """Complete maximally entangled basis of 2 x 4: padded 2 x 2 block plus extension."""
    space = QuditDims((2, 4))
    states = tuple(_fourier_pair_block(2, 4, 0)) + meb_extension_completion().states
    return StateSet(space, states)


def me_triple_2x3() -> StateSet:
    """Three maximally entangled states of 2 x 3 extendible by exactly one more.

    The complement holds a single maximally entangled direction plus an
    only-product plane, which makes it the canonical small case separating
    the two completion modes.
    """
    space = QuditDims((2, 3))
    states = (
        state_from_combination(space, {"00": 1, "11": -1}),
        state_from_combination(space, {"01": 1, "10": 1}),
        state_from_combination(space, {"01": 1, "10": -1}),
    )
    return StateSet(space, states)


def three_qubit_w_ueb() -> StateSet:
    """Six genuinely entangled three-qubit states, all in the W class.

    Two Fourier triples, one over the weight-1 kets and one over their
    bit-flipped images {000, 101, 110}; the complement is the only-product
    plane spanned by |011> and |111>.
    """
    space = QuditDims((2, 2, 2))
    states = tuple(dft_superposition(space, ["001", "010", "100"])) + tuple(
        dft_superposition(space, ["000", "101", "110"])
    )
    return StateSet(space, states)


def three_qubit_mixed_ueb() -> StateSet:
    """Seven genuinely entangled three-qubit states with complement ray |111>.

    Four even-weight superpositions with sign rows (+++ , +-- , -+- , --+)
    over {000, 011, 101, 110}, then the Fourier triple over the weight-1
    kets. The sign block and the triple sit in different entanglement
    classes, which is the point of the family.
    """
    space = QuditDims((2, 2, 2))
    rows = _hadamard_rows(4)
    kets = ["000", "011", "101", "110"]
    ghz_block = tuple(
        state_from_combination(space, {ket: rows[r, c] for c, ket in enumerate(kets)}) for r in range(4)
    )
    w_block = tuple(dft_superposition(space, ["001", "010", "100"]))
    return StateSet(space, ghz_block + w_block)


def n_qubit_ueb(
    n: int,
    coeff_variant: CoeffVariant = CoeffVariant.DFT,
    cfg: SearchConfig | None = None,
    tol: Tolerance | float | None = None,
) -> StateSet:
    """2^n - 1 genuinely entangled n-qubit states whose complement is the ray |1...1>.

    Declared order: the weight-1 superposition block, the weight-(n-1) block
    over the complements in matching order, the triple consuming the
    all-zeros ket on the smallest complement pair, then the remaining
    complement pairs ascending, plus sign before minus. Every instance is
    verified unextendible across all cuts before it is returned.
    """
    if n < 4:
        raise ValueError("the family needs at least four qubits")
    space = QuditDims((2,) * n)
    if coeff_variant is CoeffVariant.DFT:
        w = np.exp(2j * np.pi / n)
        coeff = np.array([[w ** (r * c) for c in range(n)] for r in range(n)]) / math.sqrt(n)
    else:
        coeff = _hadamard_rows(n) / math.sqrt(n)
    full = (1 << n) - 1
    weight1 = [1 << i for i in range(n)]  # ascending as bit strings and as integers
    states: list[PureState] = []
    for block in (weight1, [full ^ s for s in weight1]):
        for r in range(n):
            amps = np.zeros(space.total, dtype=np.complex128)
            for c, ket in enumerate(block):
                amps[ket] = coeff[r, c]
            states.append(PureState(space, amps))
    reps = sorted(x for x in range(1, full) if 2 <= bin(x).count("1") <= n - 2 and x < full ^ x)
    x0 = reps[0]
    root2 = math.sqrt(2.0)
    for signs in ((1, 1, 0), (1, -1, root2), (1, -1, -root2)):
        amps = np.zeros(space.total, dtype=np.complex128)
        amps[x0], amps[full ^ x0], amps[0] = signs
        states.append(PureState(space, amps / np.linalg.norm(amps)))
    for x in reps[1:]:
        for sign in (1.0, -1.0):
            amps = np.zeros(space.total, dtype=np.complex128)
            amps[x], amps[full ^ x] = 1.0 / root2, sign / root2
            states.append(PureState(space, amps))
    st = StateSet(space, tuple(states))
    verdict = verify_basis(st, BasisKind.UEB_ALL_CUTS, cfg, tol)
    if verdict.outcome is not Outcome.VERIFIED:
        raise ConstructionError(f"{n}-qubit family failed its gate: {verdict.outcome.value}")
    return st


def recognize_padded_square_meb(st: StateSet, tol: Tolerance | float | None = None) -> int | None:
    """d when the set is a complete maximally entangled d x d basis zero-padded
    into d x (d+n) with 1 <= n <= d; None otherwise.

    Recognition checks the shape, per-member maximal entanglement, and that
    the span is exactly the block of the first d columns.
    """
    dims = st.space.dims
    if len(dims) != 2:
        return None
    d = dims[0]
    if not d < dims[1] <= 2 * d or len(st) != d * d:
        return None
    cut = single_cut(st.space)
    if not all(is_maximally_entangled(s, cut, tol) for s in st.states):
        return None
    block = Subspace(st.space, tuple(basis_state(st.space, (j, c)) for j in range(d) for c in range(d)))
    return d if span_equal(st.subspace(), block, tol) else None


def extend_padded_square_meb(st: StateSet, d: int) -> StateSet:
    """Complete maximally entangled basis of d x 2d containing the given set.

    The input states are re-padded to 2d columns and joined with a shifted
    copy of the canonical block supported on the fresh columns.
    """
    old_b = st.space.dims[1]
    if st.space.dims[0] != d or old_b > 2 * d:
        raise ValueError(f"set on {st.space} does not fit the d x 2d extension for d={d}")
    space = QuditDims((d, 2 * d))
    padded: list[PureState] = []
    for s in st.states:
        m = s.amps.reshape(d, old_b)
        big = np.zeros((d, 2 * d), dtype=np.complex128)
        big[:, :old_b] = m
        padded.append(PureState(space, big.reshape(-1)))
    return StateSet(space, tuple(padded) + tuple(_fourier_pair_block(d, 2 * d, d)))


@dataclass(frozen=True)
class CatalogEntry:
    """A fixed registered family with its claim and verification gate data."""

    entry_id: str
    tag: str
    title: str
    dims: tuple[int, ...]
    kind: BasisKind | None
    expected: Outcome | None
    me_members: bool
    build: Callable[[], StateSet]


CATALOG: dict[str, CatalogEntry] = {
    e.entry_id: e
    for e in (
        CatalogEntry(
            "eq1-ueb", "eq1", "real-coefficient unextendible entangled basis of two qubits",
            (2, 2), BasisKind.UEB, Outcome.VERIFIED, False, two_qubit_ueb_real,
        ),
        CatalogEntry(
            "eq2-ueb", "eq2", "Fourier-coefficient unextendible entangled basis of two qubits",
            (2, 2), BasisKind.UEB, Outcome.VERIFIED, False, two_qubit_ueb_fourier,
        ),
        CatalogEntry(
            "eq3-meb", "eq3", "complete maximally entangled basis of two qubits",
            (2, 2), BasisKind.UMEB, Outcome.COMPLETE_BASIS, True, lambda: bell_meb(2),
        ),
        CatalogEntry(
            "eq3-in-2x3", "eq3", "zero-padded unextendible maximally entangled basis of 2x3",
            (2, 3), BasisKind.UMEB, Outcome.VERIFIED, True, lambda: embed_meb(2, 1),
        ),
        CatalogEntry(
            "eq3-eq4-meb", "eq4", "complete maximally entangled basis of 2x4, padded block plus extension",
            (2, 4), BasisKind.UMEB, Outcome.COMPLETE_BASIS, True, padded_meb_with_extension,
        ),
        CatalogEntry(
            "eq5-w-ueb", "eq5", "six-state unextendible entangled basis of three qubits, all W class",
            (2, 2, 2), BasisKind.UEB_ALL_CUTS, Outcome.VERIFIED, False, three_qubit_w_ueb,
        ),
        CatalogEntry(
            "eq6-mixed-ueb", "eq6", "seven-state unextendible entangled basis of three qubits mixing classes",
            (2, 2, 2), BasisKind.UEB_ALL_CUTS, Outcome.VERIFIED, False, three_qubit_mixed_ueb,
        ),
        CatalogEntry(
            "appendix-4qubit", "appendix", "fifteen-state unextendible entangled basis of four qubits",
            (2, 2, 2, 2), BasisKind.UEB_ALL_CUTS, Outcome.VERIFIED, False,
            lambda: n_qubit_ueb(4, CoeffVariant.HADAMARD_IF_POWER_OF_TWO),
        ),
    )
}


def build_entry(
    entry_id: str,
    cfg: SearchConfig | None = None,
    tol: Tolerance | float | None = None,
) -> StateSet:
    """Build a registered family and run its verification gate."""
    if entry_id not in CATALOG:
        raise KeyError(f"unknown catalog entry {entry_id!r}")
    entry = CATALOG[entry_id]
    st = entry.build()
    if st.space.dims != entry.dims:
        raise ConstructionError(f"{entry_id}: built dims {st.space.dims} differ from registered {entry.dims}")
    if entry.me_members:
        cut = single_cut(st.space)
        for i, psi in enumerate(st.states):
            if not is_maximally_entangled(psi, cut, tol):
                raise ConstructionError(f"{entry_id}: member {i} is not maximally entangled")
    if entry.kind is not None:
        verdict = verify_basis(st, entry.kind, cfg, tol)
        if verdict.outcome is not entry.expected:
            raise ConstructionError(
                f"{entry_id}: verifier returned {verdict.outcome.value}, registered claim is "
                f"{entry.expected.value if entry.expected else None}"
            )
    return st


@dataclass(frozen=True)
class GeneratorEntry:
    """A parameterized family; the CLI resolves parameters and calls build_generator."""

    name: str
    title: str
    params: str


GENERATORS: dict[str, GeneratorEntry] = {
    g.name: g
    for g in (
        GeneratorEntry("bell-meb", "complete maximally entangled basis of d x d", "d >= 2"),
        GeneratorEntry("embed-meb", "unextendible maximally entangled basis of d x (d+n)", "d >= 2, 1 <= n < d"),
        GeneratorEntry("nqubit-ueb", "unextendible entangled basis of n qubits, all cuts", "n >= 4, coeff variant"),
        GeneratorEntry("dft-superposition", "Fourier superpositions of chosen basis kets", "dims, kets"),
        GeneratorEntry("prop2a-set", "three maximally entangled states of 2x3 extendible by exactly one more", "none"),
    )
}


def build_generator(
    name: str,
    cfg: SearchConfig | None = None,
    tol: Tolerance | float | None = None,
    *,
    d: int | None = None,
    n: int | None = None,
    variant: CoeffVariant = CoeffVariant.DFT,
    dims: tuple[int, ...] | None = None,
    kets: Sequence[str] | None = None,
) -> StateSet:
    """Build a parameterized family and run the gate matching its claim."""
    if name == "bell-meb":
        if d is None:
            raise ValueError("bell-meb needs d")
        st = bell_meb(d)
        verdict = verify_basis(st, BasisKind.UMEB, cfg, tol)
        if verdict.outcome is not Outcome.COMPLETE_BASIS:
            raise ConstructionError(f"bell-meb(d={d}) failed its gate: {verdict.outcome.value}")
        return st
    if name == "embed-meb":
        if d is None or n is None:
            raise ValueError("embed-meb needs d and n")
        st = embed_meb(d, n)
        verdict = verify_basis(st, BasisKind.UMEB, cfg, tol)
        if verdict.outcome is not Outcome.VERIFIED:
            raise ConstructionError(f"embed-meb(d={d}, n={n}) failed its gate: {verdict.outcome.value}")
        return st
    if name == "nqubit-ueb":
        if n is None:
            raise ValueError("nqubit-ueb needs n")
        return n_qubit_ueb(n, variant, cfg, tol)  # self-gated
    if name == "dft-superposition":
        if dims is None or kets is None:
            raise ValueError("dft-superposition needs dims and kets")
        space = QuditDims(tuple(dims))
        return StateSet(space, tuple(dft_superposition(space, list(kets))))
    if name == "prop2a-set":
        st = me_triple_2x3()
        cut = single_cut(st.space)
        for i, psi in enumerate(st.states):
            if not is_maximally_entangled(psi, cut, tol):
                raise ConstructionError(f"prop2a-set: member {i} is not maximally entangled")
        return st
    raise KeyError(f"unknown generator {name!r}")
