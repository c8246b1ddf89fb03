"""Configuration-interaction engine over the symmetric two-particle basis.

The scaled two-electron Hamiltonian -d^2/dxi^2 - d^2/deta^2 + U delta(xi-eta)
is assembled in the truncated basis of symmetrized products of box modes
psi_n(x) = sqrt(2) sin(n pi x),

    |n, m> = N_nm (psi_n(xi) psi_m(eta) + psi_m(xi) psi_n(eta)),

with N_nm = 1/2 for n = m and 1/sqrt(2) otherwise, over 1 <= n <= m <= n_max.
Kinetic elements are diagonal deltas; the contact interaction collapses to a
seven-term Kronecker pattern in the mode numbers.  Diagonalizing gives
variational energies used to seed the exact transcendental solve for states
whose quantum numbers differ.

Contact interactions converge slowly in a mode cutoff (roughly 1/n_max), but
the energies only have to be good enough to land Newton in the right basin,
so the default cutoff of 30 (basis size 465) is plenty.
"""

from __future__ import annotations

import dataclasses
import functools

import numpy as np
from numpy.typing import NDArray

from .errors import LabelNotFound
from .numerics import jacobi_eigh
from .transcend import StateLabel

__all__ = [
    "DEFAULT_N_MAX",
    "SymmetricBasis",
    "CIHamiltonian",
    "CIEigenstate",
    "basis_norm",
    "kinetic_element",
    "interaction_element",
    "build_hamiltonian",
    "spectrum",
    "energy_for_state",
]

DEFAULT_N_MAX = 30


def basis_norm(n: int, m: int) -> float:
    """Normalization N_nm of the symmetrized basis state."""
    return 0.5 if n == m else 1.0 / np.sqrt(2.0)


def kinetic_element(n: int, m: int, nt: int, mt: int) -> float:
    """Matrix element of -d^2/dxi^2 - d^2/deta^2 between |n,m> and |nt,mt>."""
    deltas = (1.0 if (n == nt and m == mt) else 0.0) + (
        1.0 if (n == mt and nt == m) else 0.0
    )
    return 2.0 * np.pi**2 * (nt**2 + mt**2) * basis_norm(nt, mt) * basis_norm(n, m) * deltas


def interaction_element(n: int, m: int, nt: int, mt: int, U: float) -> float:
    """Matrix element of the contact term U delta(xi - eta).

    The overlap of four box modes on the diagonal xi = eta reduces to sums of
    Kronecker deltas in the mode numbers; parity-forbidden combinations cancel
    to zero identically.
    """
    def delta(a: int, b: int) -> float:
        return 1.0 if a == b else 0.0

    pattern = (
        delta(n + mt, m + nt)
        + delta(n + nt, m + mt)
        - delta(m + nt + mt, n)
        - delta(n + nt + mt, m)
        - delta(n + m + mt, nt)
        - delta(n + m + nt, mt)
        + delta(n + m, nt + mt)
    )
    return 2.0 * U * basis_norm(nt, mt) * basis_norm(n, m) * pattern


class SymmetricBasis:
    """Ordered truncated basis of symmetric states (n, m), 1 <= n <= m <= n_max."""

    def __init__(self, n_max: int):
        if n_max < 1:
            raise ValueError("basis cutoff must be a positive integer")
        self.n_max = int(n_max)
        self.states: tuple[tuple[int, int], ...] = tuple(
            (n, m) for n in range(1, self.n_max + 1) for m in range(n, self.n_max + 1)
        )
        self._index = {state: i for i, state in enumerate(self.states)}

    def __len__(self) -> int:
        return len(self.states)

    def index_of(self, n: int, m: int) -> int:
        """Row of the (unordered) pair {n, m}; raises LabelNotFound outside."""
        key = (min(n, m), max(n, m))
        try:
            return self._index[key]
        except KeyError:
            raise LabelNotFound(f"state {key} is outside the n_max={self.n_max} basis") from None


@dataclasses.dataclass(frozen=True)
class CIHamiltonian:
    """Dense symmetric Hamiltonian over a truncated symmetric basis."""

    matrix: NDArray[np.float64]
    U: float
    basis: SymmetricBasis


@dataclasses.dataclass(frozen=True)
class CIEigenstate:
    """One variational eigenstate with its dominant parent label.

    ``dominant_label`` follows the larger-number-first convention matching
    the momentum ordering k1 > k2.
    """

    energy: float
    coefficients: NDArray[np.float64]
    dominant_label: StateLabel


def build_hamiltonian(basis: SymmetricBasis, U: float) -> CIHamiltonian:
    """Assemble the kinetic-plus-contact matrix, exactly symmetric."""
    n = np.array([s[0] for s in basis.states])
    m = np.array([s[1] for s in basis.states])
    norms = np.where(n == m, 0.5, 1.0 / np.sqrt(2.0))
    prefactor = np.outer(norms, norms)

    # Bra indices vary along rows, ket indices along columns.
    nb, mb = n[:, None], m[:, None]
    nk, mk = n[None, :], m[None, :]
    kinetic_pattern = ((nb == nk) & (mb == mk)).astype(float) + (
        (nb == mk) & (nk == mb)
    ).astype(float)
    kinetic = 2.0 * np.pi**2 * (nk**2 + mk**2) * prefactor * kinetic_pattern

    contact_pattern = (
        (nb + mk == mb + nk).astype(float)
        + (nb + nk == mb + mk).astype(float)
        - (mb + nk + mk == nb).astype(float)
        - (nb + nk + mk == mb).astype(float)
        - (nb + mb + mk == nk).astype(float)
        - (nb + mb + nk == mk).astype(float)
        + (nb + mb == nk + mk).astype(float)
    )
    matrix = kinetic + 2.0 * U * prefactor * contact_pattern
    return CIHamiltonian(matrix=matrix, U=float(U), basis=basis)


@functools.lru_cache(maxsize=32)
def _eigensystem(U: float, n_max: int):
    basis = SymmetricBasis(n_max)
    hamiltonian = build_hamiltonian(basis, U)
    eigenvalues, eigenvectors = jacobi_eigh(hamiltonian.matrix)
    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    return basis, eigenvalues, eigenvectors


def _dominant_state(basis: SymmetricBasis, coefficients: np.ndarray) -> tuple[int, int]:
    """Basis state with the largest weight; argmax keeps the first maximum,
    which is the lexicographically smallest (n, m) on ties."""
    return basis.states[int(np.argmax(np.abs(coefficients)))]


def spectrum(U: float, n_max: int = DEFAULT_N_MAX, levels: int = 4) -> list[CIEigenstate]:
    """Lowest ``levels`` eigenstates, ascending, with dominant parent labels."""
    basis, eigenvalues, eigenvectors = _eigensystem(float(U), int(n_max))
    if levels < 1 or levels > len(basis):
        raise ValueError(
            f"levels must be between 1 and the basis size {len(basis)}, got {levels}"
        )
    states = []
    for level in range(levels):
        coefficients = eigenvectors[:, level]
        small, big = _dominant_state(basis, coefficients)
        states.append(
            CIEigenstate(
                energy=float(eigenvalues[level]),
                coefficients=coefficients,
                dominant_label=StateLabel(n=big, m=small),
            )
        )
    return states


def energy_for_state(U: float, label: StateLabel, n_max: int = DEFAULT_N_MAX) -> float:
    """Variational energy of the eigenstate dominated by ``label``.

    Used as the scaled-energy seed for the reduced solve of unequal quantum
    numbers; the later Newton stage removes the truncation error.

    Raises:
        LabelNotFound: the label is outside the basis or never dominant.
    """
    basis, eigenvalues, eigenvectors = _eigensystem(float(U), int(n_max))
    target = (min(label.n, label.m), max(label.n, label.m))
    basis.index_of(*target)
    for level in range(len(basis)):
        if _dominant_state(basis, eigenvectors[:, level]) == target:
            return float(eigenvalues[level])
    raise LabelNotFound(
        f"no eigenstate with dominant label {target} at n_max={n_max}"
    )
