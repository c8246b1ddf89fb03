"""Self-contained numerical kernels.

Damped Newton iteration over real or complex vectors, a cyclic Jacobi
eigensolver for dense symmetric matrices, and composite Simpson quadrature
in one and two dimensions.  Everything here is a pure function of its
inputs and safe to call concurrently.
"""

from __future__ import annotations

import dataclasses
from typing import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from .errors import BadPanelCount, NoConvergence, NotSymmetric, SingularJacobian

__all__ = [
    "NewtonConfig",
    "NewtonReport",
    "newton_solve",
    "jacobi_eigh",
    "simpson_1d",
    "simpson_2d",
]


@dataclasses.dataclass(frozen=True)
class NewtonConfig:
    """Tunables for :func:`newton_solve`.

    ``residual_tolerance`` is tested against the max-norm of the residual,
    ``step_tolerance`` against the max-norm of the damped update.  Damping is
    a halving line search capped at ``max_halvings`` trial steps.
    """

    max_iterations: int = 100
    residual_tolerance: float = 1e-12
    step_tolerance: float = 1e-14
    damping_enabled: bool = True
    max_halvings: int = 20

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.residual_tolerance <= 0 or self.step_tolerance <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_halvings < 0:
            raise ValueError("max_halvings must be nonnegative")


@dataclasses.dataclass(frozen=True)
class NewtonReport:
    """Outcome of a Newton run.

    ``converged`` implies ``final_residual_norm <= residual_tolerance``.
    """

    solution: NDArray[np.complex128]
    iterations: int
    final_residual_norm: float
    converged: bool


def _as_vector(x) -> np.ndarray:
    v = np.atleast_1d(np.asarray(x))
    if v.ndim != 1:
        raise ValueError("expected a one-dimensional vector")
    if np.iscomplexobj(v):
        return v.astype(np.complex128)
    return v.astype(np.float64)


def newton_solve(
    residual_fn: Callable[[np.ndarray], np.ndarray],
    jacobian_fn: Callable[[np.ndarray], np.ndarray],
    x0,
    config: NewtonConfig | None = None,
) -> NewtonReport:
    """Solve ``residual_fn(x) = 0`` by damped Newton iteration.

    Complex systems are iterated on the stacked 2N-dimensional real vector of
    real and imaginary parts; for analytic residuals this reproduces the
    complex Newton step exactly, and the real-only path is the N-dimensional
    special case.  Each linear step is solved by direct elimination with
    partial pivoting.  With damping enabled, the step is halved until the
    residual norm decreases or the halving budget runs out.

    Raises:
        SingularJacobian: the linear solve failed or produced non-finite
            values.
        NoConvergence: the iteration budget was exhausted; the best iterate
            is attached to the exception as a ``NewtonReport``.
    """
    cfg = config or NewtonConfig()
    x = _as_vector(x0)
    is_complex = np.iscomplexobj(x)
    n = x.size

    def pack(z: np.ndarray) -> np.ndarray:
        if not is_complex:
            return z.astype(np.float64)
        return np.concatenate([z.real, z.imag])

    def unpack(u: np.ndarray) -> np.ndarray:
        if not is_complex:
            return u
        return u[:n] + 1j * u[n:]

    def eval_residual(u: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore", invalid="ignore"):
            r = np.atleast_1d(np.asarray(residual_fn(unpack(u))))
        if r.size != n:
            raise ValueError("residual dimension does not match the unknown vector")
        return pack(r.astype(np.complex128) if is_complex else r.astype(np.float64))

    def eval_jacobian(u: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore", invalid="ignore"):
            j = np.atleast_2d(np.asarray(jacobian_fn(unpack(u))))
        if j.shape != (n, n):
            raise ValueError("jacobian shape does not match the unknown vector")
        if not is_complex:
            return j.astype(np.float64)
        jr, ji = j.real, j.imag
        return np.block([[jr, -ji], [ji, jr]])

    u = pack(x)
    r = eval_residual(u)
    if not np.all(np.isfinite(r)):
        raise ValueError("residual is not finite at the initial point")

    best_u = u
    best_norm = float(np.max(np.abs(r)))
    steps = 0

    while True:
        rnorm = float(np.max(np.abs(r)))
        if rnorm < best_norm:
            best_norm, best_u = rnorm, u
        if rnorm <= cfg.residual_tolerance:
            return NewtonReport(
                solution=unpack(u).astype(np.complex128),
                iterations=steps,
                final_residual_norm=rnorm,
                converged=True,
            )
        if steps >= cfg.max_iterations:
            break

        jac = eval_jacobian(u)
        if not np.all(np.isfinite(jac)):
            raise SingularJacobian("jacobian has non-finite entries")
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian(str(exc)) from exc
        if not np.all(np.isfinite(step)):
            raise SingularJacobian("linear solve overflowed")

        scale = 1.0
        if cfg.damping_enabled:
            for _ in range(cfg.max_halvings):
                trial = eval_residual(u + scale * step)
                tnorm = float(np.max(np.abs(trial)))
                if np.isfinite(tnorm) and tnorm < rnorm:
                    break
                scale *= 0.5
        u = u + scale * step
        r = eval_residual(u)
        steps += 1
        if float(np.max(np.abs(scale * step))) <= cfg.step_tolerance:
            break

    rnorm = float(np.max(np.abs(r)))
    if rnorm <= cfg.residual_tolerance:
        return NewtonReport(
            solution=unpack(u).astype(np.complex128),
            iterations=steps,
            final_residual_norm=rnorm,
            converged=True,
        )
    if rnorm < best_norm:
        best_norm, best_u = rnorm, u
    report = NewtonReport(
        solution=unpack(best_u).astype(np.complex128),
        iterations=steps,
        final_residual_norm=best_norm,
        converged=False,
    )
    raise NoConvergence(
        f"Newton stalled at residual norm {best_norm:.3e} "
        f"after {steps} iterations",
        report=report,
    )


# Stop sweeping once the off-diagonal Frobenius mass is below this fraction
# of the full Frobenius norm.
_JACOBI_TOLERANCE = 1e-12
_JACOBI_MAX_SWEEPS = 100
_SYMMETRY_TOLERANCE = 1e-12


def jacobi_eigh(matrix) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Eigendecomposition of a dense symmetric matrix by cyclic Jacobi sweeps.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as orthonormal columns.  Each sweep visits every upper
    off-diagonal pair once; the first few sweeps skip entries below a
    sweep-dependent threshold, after which every entry is annihilated.  The
    off-diagonal sum is accumulated from the strict triangle directly, never
    by subtraction, so the stopping test does not suffer cancellation.

    Raises:
        NotSymmetric: input deviates from symmetry by more than 1e-12
            relative in Frobenius norm.
    """
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric("expected a square matrix")
    if not np.all(np.isfinite(a)):
        raise NotSymmetric("matrix has non-finite entries")
    fro = float(np.linalg.norm(a))
    if float(np.linalg.norm(a - a.T)) > _SYMMETRY_TOLERANCE * max(fro, 1e-300):
        raise NotSymmetric("matrix is not symmetric within 1e-12 relative")

    n = a.shape[0]
    v = np.eye(n)
    if n < 2 or fro == 0.0:
        w = np.diag(a).copy()
        order = np.argsort(w, kind="stable")
        return w[order], v[:, order]

    a = (a + a.T) / 2.0
    converged = False
    for sweep in range(_JACOBI_MAX_SWEEPS):
        offsq = 2.0 * float(np.sum(np.triu(a, 1) ** 2))
        if np.sqrt(offsq) <= _JACOBI_TOLERANCE * fro:
            converged = True
            break
        threshold = 0.2 * offsq / (n * n) if sweep < 4 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0 or apq * apq <= threshold:
                    continue
                g = 100.0 * abs(apq)
                if (
                    sweep > 4
                    and abs(a[p, p]) + g == abs(a[p, p])
                    and abs(a[q, q]) + g == abs(a[q, q])
                ):
                    # Negligible against both diagonals: dropping it perturbs
                    # the spectrum below roundoff.
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                h = a[q, q] - a[p, p]
                if abs(h) + g == abs(h):
                    t = apq / h
                else:
                    theta = 0.5 * h / apq
                    t = 1.0 / (abs(theta) + np.sqrt(1.0 + theta * theta))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    if not converged:
        offsq = 2.0 * float(np.sum(np.triu(a, 1) ** 2))
        if np.sqrt(offsq) > _JACOBI_TOLERANCE * fro:
            raise NoConvergence(
                f"Jacobi sweeps exhausted with off-diagonal norm {np.sqrt(offsq):.3e}"
            )

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def _simpson_weights(panels: int) -> NDArray[np.float64]:
    w = np.ones(panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w


def _check_panels(panels: int) -> int:
    panels = int(panels)
    if panels < 2 or panels % 2 != 0:
        raise BadPanelCount(f"panel count must be even and >= 2, got {panels}")
    return panels


def _evaluate(f: Callable, *grids: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on broadcast grids, falling back to a scalar loop."""
    target = np.broadcast_shapes(*(g.shape for g in grids))
    try:
        return np.broadcast_to(np.asarray(f(*grids), dtype=float), target)
    except (TypeError, ValueError):
        pass
    out = np.empty(target, dtype=float)
    it = np.nditer(grids, flags=["multi_index"])
    for _ in it:
        idx = it.multi_index
        out[idx] = f(*(g[idx] for g in grids))
    return out


def simpson_1d(f: Callable, a: float, b: float, panels: int) -> float:
    """Composite Simpson estimate of the integral of ``f`` over ``[a, b]``.

    ``f`` should accept numpy arrays; scalars-only callables are looped over.
    The error is O(h^4) for smooth integrands.
    """
    panels = _check_panels(panels)
    x = np.linspace(a, b, panels + 1)
    y = _evaluate(f, x)
    if not np.all(np.isfinite(y)):
        raise ValueError("integrand is not finite on the grid")
    h = (b - a) / panels
    return float(h / 3.0 * np.dot(_simpson_weights(panels), y))


def simpson_2d(
    f: Callable,
    domain: Sequence[Sequence[float]],
    panels: int | Sequence[int],
) -> float:
    """Composite Simpson estimate over a rectangle.

    ``domain`` is ``((ax, bx), (ay, by))``; ``panels`` is an even count used
    for both axes or an ``(nx, ny)`` pair.
    """
    (ax, bx), (ay, by) = domain
    if np.isscalar(panels):
        nx = ny = _check_panels(panels)  # type: ignore[arg-type]
    else:
        nx, ny = (_check_panels(p) for p in panels)
    x = np.linspace(ax, bx, nx + 1)
    y = np.linspace(ay, by, ny + 1)
    grid_x, grid_y = np.meshgrid(x, y, indexing="ij")
    z = _evaluate(f, grid_x, grid_y)
    if not np.all(np.isfinite(z)):
        raise ValueError("integrand is not finite on the grid")
    hx = (bx - ax) / nx
    hy = (by - ay) / ny
    weights = np.outer(_simpson_weights(nx), _simpson_weights(ny))
    return float(hx * hy / 9.0 * np.sum(weights * z))
