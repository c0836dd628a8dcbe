"""Entanglement-class tools for three-qubit states and class-separating witnesses.

Classification follows the standard pure-state hierarchy: fully separable,
biseparable across a named cut, and the two genuinely entangled classes told
apart by the residual tangle. The tangle here is the modulus form, so it is
invariant under local unitaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .cuts import Bipartition, enumerate_cuts, is_product
from .states import (
    PureState,
    QuditDims,
    StateSet,
    Tolerance,
    _eps,
    orthogonal_complement,
    orthonormalize,
    state_from_combination,
)
from .subspaces import ProductCount, count_product_states_2d_2x2

DEFAULT_TANGLE_EPS = 1e-8


class SloccClass(Enum):
    FULLY_SEPARABLE = "SEP"
    BISEPARABLE = "BISEP"
    W_CLASS = "W"
    GHZ_CLASS = "GHZ"


@dataclass(frozen=True, eq=False)
class SloccVerdict:
    """Class assignment with the tangle value and, for biseparable states, the cut."""

    category: SloccClass
    label: str
    tangle: float
    cut: Bipartition | None = None


def three_tangle(p: PureState) -> float:
    """Residual tangle of a three-qubit pure state, 4 |d1 - 2 d2 + 4 d3|.

    d1 collects the squared diagonal amplitude pairs, d2 the six mixed
    products against them, d3 the two odd permanent-like terms. Vanishes on
    the W class, reaches 1 on the GHZ state.
    """
    if p.space.dims != (2, 2, 2):
        raise ValueError(f"tangle is defined for three qubits, got {p.space}")
    a = p.amps.reshape(2, 2, 2)
    d1 = (
        a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2
        + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
        + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2
        + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
    )
    d2 = (
        a[0, 0, 0] * a[1, 1, 1] * a[0, 1, 1] * a[1, 0, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 1, 0] * a[0, 0, 1]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0] * a[0, 0, 1]
        + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1]
    )
    d3 = a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1] + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0]
    return float(4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3))


def classify_three_qubit(
    p: PureState,
    tol: Tolerance | float | None = None,
    tol_tangle: float = DEFAULT_TANGLE_EPS,
) -> SloccVerdict:
    """SEP / BISEP(cut) / GHZ / W assignment for a three-qubit pure state."""
    if p.space.dims != (2, 2, 2):
        raise ValueError(f"classification is defined for three qubits, got {p.space}")
    tau = three_tangle(p)
    product_cuts = [cut for cut in enumerate_cuts(p.space) if is_product(p, cut, tol)]
    if len(product_cuts) == 3:
        return SloccVerdict(SloccClass.FULLY_SEPARABLE, "SEP", tau)
    if product_cuts:
        cut = product_cuts[0]
        return SloccVerdict(SloccClass.BISEPARABLE, f"BISEP({cut.label})", tau, cut)
    if tau > tol_tangle:
        return SloccVerdict(SloccClass.GHZ_CLASS, "GHZ", tau)
    return SloccVerdict(SloccClass.W_CLASS, "W", tau)


def partial_trace(p: PureState, keep: Sequence[int]) -> np.ndarray:
    """Density matrix of the kept parties, indices in the order given."""
    dims = p.space.dims
    keep = tuple(int(i) for i in keep)
    if not keep or len(set(keep)) != len(keep) or any(not 0 <= i < len(dims) for i in keep):
        raise ValueError(f"keep list {keep} does not address distinct parties of {p.space}")
    t = p.amps.reshape(dims)
    t = np.moveaxis(t, keep, range(len(keep)))
    dk = math.prod(dims[i] for i in keep)
    m = t.reshape(dk, -1)
    return m @ m.conj().T


def w_state(n: int) -> PureState:
    """Uniform superposition of the weight-1 kets of n qubits."""
    if n < 2:
        raise ValueError("need at least two qubits")
    space = QuditDims((2,) * n)
    return state_from_combination(space, {"0" * i + "1" + "0" * (n - 1 - i): 1 for i in range(n)})


def ghz_state(n: int) -> PureState:
    """Even superposition of the all-zeros and all-ones kets of n qubits."""
    if n < 2:
        raise ValueError("need at least two qubits")
    space = QuditDims((2,) * n)
    return state_from_combination(space, {"0" * n: 1, "1" * n: 1})


def ghz_w_range_witness(
    n: int,
    tol: Tolerance | float | None = None,
) -> tuple[ProductCount, ProductCount]:
    """Product-ray counts in the two-party reduced ranges of the n-qubit W and GHZ states.

    The W reduction's range is spanned by the symmetric entangled vector and
    |00>, holding exactly one product ray; the GHZ reduction's range is
    spanned by |00> and |11>, holding two. The pair (ONE, TWO) therefore
    separates the classes for every n >= 3, independent of the class
    representative's local form.
    """
    if n < 3:
        raise ValueError("the witness needs at least three parties")
    eps = _eps(tol)
    two = QuditDims((2, 2))
    counts: list[ProductCount] = []
    for source in (w_state(n), ghz_state(n)):
        rho = partial_trace(source, (0, 1))
        vals, vecs = np.linalg.eigh(rho)
        cols = [vecs[:, i] for i in range(vals.size) if vals[i] > eps]
        sub = orthonormalize(two, cols, tol)
        counts.append(count_product_states_2d_2x2(sub, tol=tol))
    return counts[0], counts[1]


def resource_dimension_flag(
    st: StateSet,
    tol: Tolerance | float | None = None,
    tol_tangle: float = DEFAULT_TANGLE_EPS,
) -> bool:
    """Whether the set spans both genuinely entangled classes of three qubits.

    Members are classified individually; a one-dimensional complement ray is
    classified as well, since a basis argument covers the full space. True
    means at least one GHZ-class and at least one W-class vector appear.
    """
    if st.space.dims != (2, 2, 2):
        raise ValueError(f"the flag is defined for three qubits, got {st.space}")
    members = list(st.states)
    comp = orthogonal_complement(st.subspace(), tol)
    if comp.dim == 1:
        members.append(comp.basis[0])
    cats = {classify_three_qubit(m, tol, tol_tangle).category for m in members}
    return SloccClass.GHZ_CLASS in cats and SloccClass.W_CLASS in cats
