"""Two-electron spatial wavefunctions on the unit square.

The spin-singlet spatial factor for a solved momentum pair (k1, k2) is the
piecewise mode product

    x1 < x2:  N sin(k1 x1) sin(k2 (1 - x2)) + M sin(k2 x1) sin(k1 (1 - x2))
    x1 > x2:  the same expression with x1 and x2 exchanged,

here with N = 1 and M = s, the amplitude-ratio sign of the solved case.  The
overall scale is fixed numerically so the probability density integrates to
one.  Both branches agree on x1 = x2 and are functions of (min, max) only,
so exchange symmetry is built in; the contact interaction shows up as a
derivative kink across the diagonal, not in the values.

The spin-triplet factor is the antisymmetrized product of two distinct box
modes and is unaffected by the contact term.  The box length is fixed to 1
throughout (momenta are dimensionless); energies convert to physical units
through hbar^2 / (2 m L^2), which is never applied here.
"""

from __future__ import annotations

import dataclasses

import numpy as np
from numpy.typing import NDArray

from .errors import DegenerateState, IdenticallyZero
from .numerics import simpson_2d
from .transcend import MomentumPair, StateLabel

__all__ = [
    "SingletWavefunction",
    "DensityGrid",
    "singlet_amplitude",
    "triplet_amplitude",
    "normalize",
    "density_grid",
    "schrodinger_residual",
]

_NORMALIZATION_PANELS = 400
_DEFAULT_RESOLUTION = 201
# Finite-difference step and the exclusion margin of the pointwise
# Schroedinger check.
_FD_STEP = 1e-4
_EXCLUSION = 0.05


def _raw_amplitude(k1: complex, k2: complex, s: int, x1, x2) -> np.ndarray:
    low = np.minimum(x1, x2)
    high = np.maximum(x1, x2)
    return (
        np.sin(k1 * low) * np.sin(k2 * (1.0 - high))
        + s * np.sin(k2 * low) * np.sin(k1 * (1.0 - high))
    )


def singlet_amplitude(pair: MomentumPair, x1, x2, s: int | None = None):
    """Unnormalized singlet amplitude at scaled positions in [0, 1].

    ``s`` defaults to the ratio sign of the pair's solved case.  Accepts
    scalars or broadcastable arrays; for a conjugate momentum pair with
    s = +1 the two terms are mutual conjugates and the value is real up to
    roundoff.
    """
    sign = pair.case.s if s is None else s
    return _raw_amplitude(pair.k1, pair.k2, sign, np.asarray(x1), np.asarray(x2))


def triplet_amplitude(n: int, m: int, x1, x2):
    """Normalized antisymmetric spatial factor for distinct modes n and m.

    Raises:
        IdenticallyZero: n = m makes the antisymmetrized product vanish.
    """
    if n == m:
        raise IdenticallyZero("the antisymmetric spatial factor vanishes for n = m")
    k1, k2 = n * np.pi, m * np.pi
    x1 = np.asarray(x1)
    x2 = np.asarray(x2)
    return np.sqrt(2.0) * (
        np.sin(k1 * x1) * np.sin(k2 * x2) - np.sin(k2 * x1) * np.sin(k1 * x2)
    )


@dataclasses.dataclass
class SingletWavefunction:
    """A normalized singlet spatial wavefunction for a solved pair."""

    pair: MomentumPair
    s: int
    norm: float
    box_length: float = 1.0

    def value(self, x1, x2):
        """Normalized amplitude at scaled positions."""
        return self.norm * _raw_amplitude(self.pair.k1, self.pair.k2, self.s, x1, x2)

    def density(self, x1, x2):
        """Probability density |Psi|^2."""
        return np.abs(self.value(x1, x2)) ** 2

    def max_abs(self) -> float:
        """Largest |Psi| on a 201-point grid; cached after the first call."""
        cached = getattr(self, "_max_abs", None)
        if cached is None:
            xs = np.linspace(0.0, 1.0, _DEFAULT_RESOLUTION)
            cached = float(np.max(np.abs(self.value(xs[:, None], xs[None, :]))))
            self._max_abs = cached
        return cached


@dataclasses.dataclass(frozen=True)
class DensityGrid:
    """|Psi|^2 sampled on a uniform inclusive grid over the unit square.

    ``values[i, j]`` is the density at (x1_i, x2_j), row-major.  The
    resolution is odd so the grid doubles as a Simpson rule: the grid sum
    must integrate to one within 1e-4 at the default resolution.
    """

    resolution: int
    values: NDArray[np.float64]
    pair: MomentumPair
    s: int
    norm: float

    @property
    def U(self) -> float:
        return self.pair.case.U

    @property
    def label(self) -> StateLabel:
        return self.pair.label

    def axis(self) -> NDArray[np.float64]:
        return np.linspace(0.0, 1.0, self.resolution)

    def simpson_integral(self) -> float:
        """Simpson integral of the stored density over the unit square."""
        panels = self.resolution - 1
        weights = np.ones(self.resolution)
        weights[1:-1:2] = 4.0
        weights[2:-1:2] = 2.0
        h = 1.0 / panels
        return float(
            (h / 3.0) ** 2 * weights @ self.values @ weights
        )

    def diagonal_mean(self) -> float:
        """Mean density along x1 = x2."""
        return float(np.mean(np.diag(self.values)))

    def antidiagonal_mean(self) -> float:
        """Mean density along x1 + x2 = 1."""
        return float(np.mean(np.diag(np.fliplr(self.values))))


def normalize(pair: MomentumPair, s: int | None = None) -> SingletWavefunction:
    """Fix the overall scale so the density integrates to one.

    The integral runs over the unit square with 400x400 Simpson panels.

    Raises:
        DegenerateState: the unnormalized amplitude vanishes identically
            (for example equal momenta with ratio sign -1).
    """
    sign = pair.case.s if s is None else s
    integral = simpson_2d(
        lambda a, b: np.abs(_raw_amplitude(pair.k1, pair.k2, sign, a, b)) ** 2,
        ((0.0, 1.0), (0.0, 1.0)),
        _NORMALIZATION_PANELS,
    )
    if integral < 1e-12:
        raise DegenerateState("wavefunction norm vanishes; cannot normalize")
    return SingletWavefunction(pair=pair, s=sign, norm=1.0 / np.sqrt(integral))


def density_grid(wavefunction: SingletWavefunction,
                 resolution: int = _DEFAULT_RESOLUTION) -> DensityGrid:
    """Sample the probability density on an odd inclusive grid."""
    resolution = int(resolution)
    if resolution < 3 or resolution % 2 == 0:
        raise ValueError(f"resolution must be odd and >= 3, got {resolution}")
    xs = np.linspace(0.0, 1.0, resolution)
    values = wavefunction.density(xs[:, None], xs[None, :])
    return DensityGrid(
        resolution=resolution,
        values=values,
        pair=wavefunction.pair,
        s=wavefunction.s,
        norm=wavefunction.norm,
    )


def schrodinger_residual(wavefunction: SingletWavefunction,
                         x1: float, x2: float) -> float:
    """Pointwise free-Schroedinger defect away from the interaction line.

    Evaluates |(-d^2/dx1^2 - d^2/dx2^2) Psi - E Psi| / max|Psi| with
    five-point central second differences (step 1e-4), where E is the scaled
    energy of the stored momentum pair.  The point must keep a distance of
    at least 0.05 from the diagonal x1 = x2 (where the interaction acts) and
    from the box walls, so the stencil never straddles a kink.
    """
    if abs(x1 - x2) / np.sqrt(2.0) < _EXCLUSION:
        raise ValueError("point is too close to the interaction diagonal")
    if min(x1, 1.0 - x1, x2, 1.0 - x2) < _EXCLUSION:
        raise ValueError("point is too close to the box walls")

    h = _FD_STEP
    offsets = np.array([-2.0, -1.0, 0.0, 1.0, 2.0]) * h
    stencil = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / (12.0 * h * h)
    along_x1 = wavefunction.value(x1 + offsets, x2)
    along_x2 = wavefunction.value(x1, x2 + offsets)
    laplacian = np.dot(stencil, along_x1) + np.dot(stencil, along_x2)
    defect = -laplacian - wavefunction.pair.energy * wavefunction.value(x1, x2)
    return float(abs(defect) / wavefunction.max_abs())
