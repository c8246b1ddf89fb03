"""Perturbative momentum shifts around the non-interacting point k = n pi.

For equal quantum numbers the quantization conditions linearize to a
quadratic in the deviation, giving the closed-form pair of shifts

    delta_x = U / (2 n pi) +/- sqrt(R),
    delta_y = U / (2 n pi) -/+ sqrt(R),
    R = (U / (2 n pi))^2 + (U - U^3 / (6 n^2 pi^2)) / (2 + U / 2).

A negative radicand R marks the transition to genuinely complex momenta; the
square root is then taken as +i sqrt(|R|) so the plus branch carries a
positive imaginary part.  The shifts seed Newton iteration and are trusted
for |U| <= 2 (the derivation truncates at third order in the deviation);
beyond that the solver continues from smaller |U| instead.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .errors import DegenerateDenominator, WrongSolvePath
from .transcend import StateLabel

__all__ = ["PerturbativeShift", "radicand", "shifts", "initial_guess", "TRUST_REGION"]

TRUST_REGION = 2.0


@dataclasses.dataclass(frozen=True)
class PerturbativeShift:
    """One branch of the closed-form momentum deviations.

    The branch terms cancel in the sum, so delta_x + delta_y = U / (n pi)
    holds exactly for both branches.
    """

    delta_x: complex
    delta_y: complex
    n: int
    U: float
    branch: str


def radicand(n: int, U: float) -> float:
    """Discriminant R of the shift quadratic; R < 0 means complex momenta."""
    if n < 1:
        raise ValueError("quantum number must be a positive integer")
    denominator = 2.0 + U / 2.0
    if abs(denominator) < 1e-12:
        raise DegenerateDenominator(
            "perturbative shifts are undefined at interaction strength -4"
        )
    half_shift = U / (2.0 * n * np.pi)
    return half_shift**2 + (U - U**3 / (6.0 * n**2 * np.pi**2)) / denominator


def shifts(n: int, U: float) -> tuple[PerturbativeShift, PerturbativeShift]:
    """Both shift branches for quantum number ``n`` at strength ``U``."""
    r = radicand(n, U)
    root = 1j * np.sqrt(-r) if r < 0 else complex(np.sqrt(r))
    half_shift = U / (2.0 * n * np.pi)
    plus = PerturbativeShift(half_shift + root, half_shift - root, n, U, "plus")
    minus = PerturbativeShift(half_shift - root, half_shift + root, n, U, "minus")
    return plus, minus


def initial_guess(label: StateLabel, U: float) -> tuple[complex, complex]:
    """Newton seed (n pi + delta_x, n pi + delta_y) from the plus branch.

    Only valid for equal quantum numbers; the unequal case needs an energy
    estimate first and goes through the reduced solve path.
    """
    if label.n != label.m:
        raise WrongSolvePath(
            f"perturbative seeding requires n = m, got ({label.n}, {label.m})"
        )
    plus, _ = shifts(label.n, U)
    center = label.n * np.pi
    return center + plus.delta_x, center + plus.delta_y
