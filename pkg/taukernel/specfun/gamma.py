"""Barnes G-function on the positive real axis."""

import math

from taukernel.core.errors import DomainError

#: zeta'(-1)
ZETA_PRIME_MINUS_ONE = -0.16542114370045092
# B_{2k+2} for k = 1..6
_BERNOULLI = (-1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6)
# asymptotic series is used for log G(w + 1) with w at least this large
_ASYMPTOTIC_FROM = 12.0


def _log_g_asymptotic(w: float) -> float:
    """log G(w + 1) for large ``w``."""
    log_w = math.log(w)
    terms = [
        0.5 * w * w * log_w,
        -0.75 * w * w,
        0.5 * w * math.log(2 * math.pi),
        -log_w / 12.0,
        ZETA_PRIME_MINUS_ONE,
    ]
    inv_w2 = 1.0 / (w * w)
    power = inv_w2
    for k, b in enumerate(_BERNOULLI, start=1):
        terms.append(b / (4 * k * (k + 1)) * power)
        power *= inv_w2
    return math.fsum(terms)


def barnes_g_log(z: float) -> float:
    """Natural logarithm of the Barnes G-function, G(1) = 1.

    Integers use the exact product of factorials G(n) = 1! 2! ... (n-2)!.
    Other positive arguments are shifted up with G(z + 1) = Gamma(z) G(z) into the
    range of the asymptotic expansion.

    Parameters
    ----------
    z : float
        Positive argument.

    Raises
    ------
    DomainError
        If ``z <= 0``.
    """
    if not math.isfinite(z) or z <= 0:
        raise DomainError(f"Barnes G needs a positive argument, got {z}")
    if float(z).is_integer():
        n = int(z)
        return math.fsum(math.lgamma(k + 1) for k in range(1, n - 1))
    shift = max(0, math.ceil(_ASYMPTOTIC_FROM + 1 - z))
    w = z + shift
    log_gamma_sum = math.fsum(math.lgamma(z + j) for j in range(shift))
    return _log_g_asymptotic(w - 1.0) - log_gamma_sum


def barnes_g(z: float) -> float:
    """Barnes G-function value."""
    return math.exp(barnes_g_log(z))


__all__ = ["ZETA_PRIME_MINUS_ONE", "barnes_g", "barnes_g_log"]
