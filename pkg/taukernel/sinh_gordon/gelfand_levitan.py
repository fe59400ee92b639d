"""Gelfand–Levitan equation for the 2×2 block system.

The block system has A_hat = diag(A, A), B_hat = [[0, B], [B, 0]] and
C_hat = diag(C, C), so that R_hat = [[0, R], [R, 0]] and

    T_hat(x, y) = -C_hat exp(-x A_hat) (I + R_hat)^-1 exp(-y A_hat) B_hat

has diagonal [[W, V], [V, W]].
"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from taukernel.config import defaults
from taukernel.core.differences import first_derivative
from taukernel.core.errors import SingularOperatorError
from taukernel.linsys import DiscreteLinearSystem, resolvent_R
from taukernel.specfun import halfline_rule

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
STENCIL_STEP = 1e-2
INTEGRAL_NODES = 200


@dataclass(frozen=True, eq=False)
class BlockState:
    """Block operators of one system at one x."""

    sys: DiscreteLinearSystem
    x: float
    r_hat: FloatArray
    f_hat: FloatArray

    @property
    def a_hat(self) -> FloatArray:
        return np.concatenate([self.sys.a, self.sys.a])

    def b_hat(self) -> FloatArray:
        n = self.sys.size
        out = np.zeros((2 * n, 2))
        out[n:, 0] = self.sys.b
        out[:n, 1] = self.sys.b
        return out

    def c_hat(self) -> FloatArray:
        n = self.sys.size
        out = np.zeros((2, 2 * n))
        out[0, :n] = self.sys.c
        out[1, n:] = self.sys.c
        return out

    def left(self) -> FloatArray:
        """C_hat exp(-x A_hat) (I + R_hat)^-1."""
        return (self.c_hat() * np.exp(-self.x * self.a_hat)[None, :]) @ self.f_hat

    def t_hat(self, y: float) -> FloatArray:
        """T_hat(x, y) as a 2×2 matrix."""
        return -self.left() @ (np.exp(-y * self.a_hat)[:, None] * self.b_hat())

    def t_hat_diagonal_derivative(self) -> FloatArray:
        """d/dx T_hat(x, x) = 2 C_hat E F_hat A_hat F_hat E B_hat."""
        e = np.exp(-self.x * self.a_hat)
        right = self.f_hat @ (e[:, None] * self.b_hat())
        return 2.0 * (self.left() * self.a_hat[None, :]) @ right


def block_state(sys: DiscreteLinearSystem, x: float) -> BlockState:
    """Assemble R_hat and invert I + R_hat with a condition guard."""
    r = resolvent_R(sys, x)
    n = sys.size
    r_hat = np.zeros((2 * n, 2 * n))
    r_hat[:n, n:] = r
    r_hat[n:, :n] = r
    system = np.eye(2 * n) + r_hat
    cond = float(np.linalg.cond(system))
    if not np.isfinite(cond) or cond > defaults.CONDITION_LIMIT:
        raise SingularOperatorError(f"I + R_hat is ill-conditioned at x={x}")
    return BlockState(sys=sys, x=x, r_hat=r_hat, f_hat=np.linalg.inv(system))


def phi_hat(sys: DiscreteLinearSystem, s: float) -> FloatArray:
    """Phi_hat(s) = C_hat exp(-s A_hat) B_hat = [[0, phi], [phi, 0]]."""
    phi = sys.scattering(s)
    return np.array([[0.0, phi], [phi, 0.0]])


def log_det_block(sys: DiscreteLinearSystem, x: float) -> float:
    """log det(I + R_hat_x)."""
    state = block_state(sys, x)
    sign, value = np.linalg.slogdet(np.eye(2 * sys.size) + state.r_hat)
    if sign <= 0:
        raise SingularOperatorError(f"det(I + R_hat) is not positive at x={x}")
    return float(value)


@dataclass(frozen=True)
class GelfandLevitanCheck:
    """Residuals of the Gelfand–Levitan identities at one x."""

    x: float
    equation: float
    trace: float
    hyperbolic: float
    block_determinant: float


def _hyperbolic_residual(states: list[BlockState], y: float, h: float) -> float:
    # states at x - 2h, x - h, x, x + h, x + 2h
    tx = [s.t_hat(y) for s in states]
    t_xx = (-tx[0] + 16 * tx[1] - 30 * tx[2] + 16 * tx[3] - tx[4]) / (12 * h**2)
    centre = states[2]
    ty = [centre.t_hat(y + k * h) for k in (-2, -1, 0, 1, 2)]
    t_yy = (-ty[0] + 16 * ty[1] - 30 * ty[2] + 16 * ty[3] - ty[4]) / (12 * h**2)
    residual = t_xx - t_yy + 2.0 * centre.t_hat_diagonal_derivative() @ tx[2]
    return float(np.max(np.abs(residual)))


def gelfand_levitan_check(
    sys: DiscreteLinearSystem,
    x: float,
    y_grid: ArrayLike,
    *,
    integral_nodes: int = INTEGRAL_NODES,
) -> GelfandLevitanCheck:
    """Substitute T_hat into the Gelfand–Levitan equation and its consequences.

    The integral over (x, inf) is computed by a half-line rule in z - x, so the
    equation residual does not use the closed-form R_hat.
    """
    ys = np.asarray(y_grid, dtype=float)
    state = block_state(sys, x)
    rule = halfline_rule(integral_nodes)
    z = x + rule.nodes
    t_on_z = np.array([state.t_hat(zv) for zv in z])

    equation = 0.0
    for yv in ys:
        phi_on_z = np.array([phi_hat(sys, zv + yv) for zv in z])
        integral = np.einsum("k,kij,kjl->il", rule.weights, t_on_z, phi_on_z)
        residual = phi_hat(sys, x + yv) + state.t_hat(yv) + integral
        equation = max(equation, float(np.max(np.abs(residual))))

    d_logdet = first_derivative(lambda xv: log_det_block(sys, xv), x, defaults.FD_STEP)
    trace = abs(float(np.trace(state.t_hat(x))) - d_logdet)

    h = STENCIL_STEP
    states = [block_state(sys, x + k * h) for k in (-2, -1, 0, 1, 2)]
    hyperbolic = max((_hyperbolic_residual(states, float(yv), h) for yv in ys), default=0.0)

    r = resolvent_R(sys, x)
    eye = np.eye(sys.size)
    block = log_det_block(sys, x)
    sign, direct = np.linalg.slogdet(eye - r @ r)
    if sign <= 0:
        raise SingularOperatorError(f"det(I - R^2) is not positive at x={x}")
    block_residual = abs(np.exp(block) - np.exp(direct))

    logger.debug(
        "Gelfand-Levitan at x=%g: equation %.2e trace %.2e hyperbolic %.2e",
        x,
        equation,
        trace,
        hyperbolic,
    )
    return GelfandLevitanCheck(
        x=x,
        equation=equation,
        trace=trace,
        hyperbolic=hyperbolic,
        block_determinant=float(block_residual),
    )


__all__ = [
    "BlockState",
    "GelfandLevitanCheck",
    "block_state",
    "gelfand_levitan_check",
    "log_det_block",
    "phi_hat",
]
