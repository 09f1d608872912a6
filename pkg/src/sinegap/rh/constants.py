"""Stored constants, with an independent self-check.

``zeta'(-1) = 1/12 - ln A`` where ``A`` is the Glaisher-Kinkelin constant.
``ln A`` is recomputed from the Euler-Maclaurin expansion of
``sum_{k<=n} k ln k`` at import time and compared with the stored value.
"""

from __future__ import annotations

import math

__all__ = ["ZETA_PRIME_MINUS_ONE", "DYSON_C0", "ALPHA_0", "zeta_prime_minus_one_em", "check_constants"]

ZETA_PRIME_MINUS_ONE = -0.16542114370045092921
# c0 = ln(2)/12 + 3 zeta'(-1)
DYSON_C0 = math.log(2.0) / 12.0 + 3.0 * ZETA_PRIME_MINUS_ONE
# fixed endpoint-neighbourhood angle; the radius is min(sin(alpha/2), sin(ALPHA_0/2))
ALPHA_0 = 0.3


def zeta_prime_minus_one_em(n: int = 100) -> float:
    """``zeta'(-1)`` from Euler-Maclaurin summation of ``k ln k`` up to ``n``."""
    s = math.fsum(k * math.log(k) for k in range(2, n + 1))
    ln_n = math.log(n)
    tail = (
        (n * n / 2.0 + n / 2.0 + 1.0 / 12.0) * ln_n
        - n * n / 4.0
        + 1.0 / (720.0 * n**2)
        - 1.0 / (5040.0 * n**4)
        + 1.0 / (10080.0 * n**6)
        - 1.0 / (9504.0 * n**8)
    )
    ln_glaisher = s - tail
    return 1.0 / 12.0 - ln_glaisher


def check_constants(tol: float = 1e-12) -> float:
    """Return the discrepancy between stored and recomputed ``zeta'(-1)``; raise if above ``tol``."""
    err = abs(zeta_prime_minus_one_em() - ZETA_PRIME_MINUS_ONE)
    if err > tol:
        raise RuntimeError(f"stored zeta'(-1) disagrees with Euler-Maclaurin by {err:.2e}")
    return err


check_constants()
