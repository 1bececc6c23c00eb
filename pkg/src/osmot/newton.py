"""Damped Newton optimization of one internal node's ball.

Each iteration accumulates the ball objective, gradient and Hessian,
checks the gradient-norm termination test, picks a descent direction
(Newton, or steepest descent when the Hessian determinant or the angle
criterion disqualifies it), and runs one Armijo test: accept the trial
point and keep the step size, or keep the point and bisect the step size.
The step size persists across iterations; it is never reset or enlarged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Point2
from .mesh import Ball, Mesh
from .objective import (
    DegenerateElementError,
    GradHess,
    ObjectiveParams,
    ball_grad_hess,
    ball_objective,
)


class DegenerateStartError(Exception):
    """The ball contains a degenerate element at the starting position."""

    def __init__(self, node_id: int, triangle_id: int | None):
        self.node_id = node_id
        self.triangle_id = triangle_id
        super().__init__(
            f"ball of node {node_id} is degenerate at the start"
            + (f" (triangle {triangle_id})" if triangle_id is not None else "")
        )


@dataclass(frozen=True, slots=True)
class NewtonConfig:
    """Tolerances and bounds of the local optimizer.

    eps is the gradient-norm termination tolerance, delta the Hessian
    determinant guard, eta the angle-criterion threshold. j_max caps the
    inner iterations and lambda_min floors the bisected step size; on
    hitting either bound the current (best) iterate is returned.
    """

    eps: float = 1e-8
    delta: float = 1e-6
    eta: float = 0.05
    j_max: int = 50
    lambda_min: float = 2.0 ** -30

    def __post_init__(self) -> None:
        if not (self.eps > 0 and self.delta > 0 and self.eta > 0):
            raise ValueError("eps, delta and eta must be positive")
        if self.j_max < 1 or not self.lambda_min > 0:
            raise ValueError("j_max must be >= 1 and lambda_min positive")


@dataclass(frozen=True, slots=True)
class IterationRecord:
    """One inner iteration: state before the step and the Armijo outcome."""

    value: float
    grad_norm: float
    grad_dot_dir: float
    step_size: float
    accepted: bool
    steepest: bool


@dataclass(frozen=True, slots=True)
class LocalStepTrace:
    iterations: int
    final_grad_norm: float
    used_steepest_count: int
    armijo_rejections: int
    converged: bool
    steps: tuple[IterationRecord, ...]


def _direction(gh: GradHess, cfg: NewtonConfig) -> tuple[float, float, bool]:
    """Descent direction and whether steepest descent was substituted."""
    det = gh.hxx * gh.hyy - gh.hxy * gh.hxy
    if det < cfg.delta:
        return -gh.gx, -gh.gy, True
    # 2x2 Newton solve H d = -grad by Cramer's rule
    dx = -(gh.hyy * gh.gx - gh.hxy * gh.gy) / det
    dy = -(gh.hxx * gh.gy - gh.hxy * gh.gx) / det
    gnorm = math.hypot(gh.gx, gh.gy)
    dnorm = math.hypot(dx, dy)
    cos_theta = -(gh.gx * dx + gh.gy * dy) / (gnorm * dnorm)
    if cos_theta < cfg.eta:
        return -gh.gx, -gh.gy, True
    return dx, dy, False


def descent_direction(gh: GradHess, cfg: NewtonConfig) -> tuple[float, float]:
    """Newton direction, or steepest descent when the determinant guard or
    the angle criterion rejects it. Always satisfies grad . d < 0 for a
    nonzero gradient."""
    dx, dy, _ = _direction(gh, cfg)
    return dx, dy


def armijo_accept(w_old: float, w_new: float, step_size: float,
                  grad_dot_d: float) -> bool:
    """Sufficient-decrease test; an infinite trial value always fails."""
    return w_new - w_old <= 0.5 * step_size * grad_dot_d


def optimize_ball(mesh: Mesh, ball: Ball, params: ObjectiveParams,
                  cfg: NewtonConfig) -> tuple[Point2, LocalStepTrace]:
    """Relocate the ball vertex by damped Newton iteration.

    Returns the final position together with a trace of the run. The ball
    objective at the returned position is never above the value at the
    starting position. Raises DegenerateStartError when derivatives cannot
    be evaluated at the initial position; callers skip such nodes.
    """
    x = mesh.position(ball.vertex)
    try:
        gh = ball_grad_hess(mesh, ball, x, params)
    except DegenerateElementError as err:
        raise DegenerateStartError(ball.vertex, err.triangle_id) from None

    lam = 1.0
    j = 0
    steps: list[IterationRecord] = []
    steepest_count = 0
    rejections = 0
    converged = False
    grad_norm = gh.grad_norm

    while j <= cfg.j_max:
        if j > 0:
            gh = ball_grad_hess(mesh, ball, x, params)
        grad_norm = gh.grad_norm
        if grad_norm < cfg.eps:
            converged = True
            break
        dx, dy, steepest = _direction(gh, cfg)
        if steepest:
            steepest_count += 1
        grad_dot_d = gh.gx * dx + gh.gy * dy
        trial = Point2(x.x + lam * dx, x.y + lam * dy)
        w_new = ball_objective(mesh, ball, trial, params)
        accepted = armijo_accept(gh.value, w_new, lam, grad_dot_d)
        steps.append(IterationRecord(gh.value, grad_norm, grad_dot_d,
                                     lam, accepted, steepest))
        if accepted:
            x = trial
        else:
            lam *= 0.5
            rejections += 1
        j += 1
        if lam < cfg.lambda_min:
            break

    if not converged:
        grad_norm = ball_grad_hess(mesh, ball, x, params).grad_norm
    trace = LocalStepTrace(
        iterations=j,
        final_grad_norm=grad_norm,
        used_steepest_count=steepest_count,
        armijo_rejections=rejections,
        converged=converged,
        steps=tuple(steps),
    )
    return x, trace
