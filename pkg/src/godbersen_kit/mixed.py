"""Mixed volumes of polytope pairs and small families, plus the volume
ratios they bound.

Two independent computation routes are kept deliberately separate so they
can cross-check each other: polynomial interpolation of s -> Vol(sK + T),
and inclusion-exclusion over Minkowski sums (polarization).  Exact mode
must make them agree to the digit.
"""

import math
from dataclasses import dataclass

from .errors import DegenerateInput
from .linalg import binomial, solve
from .polytopes import minkowski_sum, negate, scale_polytope, volume
from .reports import CheckReport, comparison_report
from .scalars import EXACT, FLOAT, as_scalar, rational

MAX_GENERAL_BODIES = 4


@dataclass(frozen=True)
class MixedVolumeResult:
    value: object
    method: str  # "interpolation" or "polarization"
    bodies: tuple
    multiplicities: tuple
    condition_estimate: float = None


def _describe(P):
    return "dim=%d vertices=%d" % (P.dim, len(P.vertices))


def volume_polynomial(K, T):
    """All coefficients V(K[j], T[n-j]) for j = 0..n in one pass.

    Fits Vol(sK + T) = sum_j C(n,j) s^j V(K[j],T[n-j]) through n+1 nodes.
    Exact mode uses s = 0..n and an exact Vandermonde solve; float mode
    uses Chebyshev nodes on (0,1) and reports the system's condition.
    """
    if K.dim != T.dim or K.mode != T.mode:
        raise ValueError("operands must share dimension and mode")
    n = K.dim
    mode = K.mode
    if mode == EXACT:
        nodes = [rational(s) for s in range(n + 1)]
    else:
        nodes = [(1 + math.cos((2 * i + 1) * math.pi / (2 * (n + 1)))) / 2 for i in range(n + 1)]
    values = []
    for s in nodes:
        if s == 0:
            values.append(volume(T))
        else:
            values.append(volume(minkowski_sum(scale_polytope(K, s), T)))
    vander = [[s**j for j in range(n + 1)] for s in nodes]
    coeffs = solve(vander, values, 0 if mode == EXACT else 1e-13)
    cond = None
    if mode == FLOAT:
        import numpy as np

        cond = float(np.linalg.cond(np.array(vander, dtype=float)))
    out = []
    for j in range(n + 1):
        out.append(coeffs[j] / as_scalar(binomial(n, j), mode))
    return out, cond


def mixed_volume_pair(K, T, j):
    """V(K[j], T[n-j]) by interpolation."""
    n = K.dim
    if not 0 <= j <= n:
        raise ValueError("j out of range")
    values, cond = volume_polynomial(K, T)
    return MixedVolumeResult(
        values[j], "interpolation", (_describe(K), _describe(T)), (j, n - j), cond
    )


def mixed_volume_general(bodies):
    """V(K_1, ..., K_n) by polarization over the 2^n - 1 subset sums."""
    bodies = list(bodies)
    n = len(bodies)
    if n > MAX_GENERAL_BODIES:
        raise ValueError("polarization route capped at %d bodies" % MAX_GENERAL_BODIES)
    if any(B.dim != n for B in bodies):
        raise ValueError("need n bodies of dimension n")
    modes = {B.mode for B in bodies}
    if len(modes) != 1:
        raise ValueError("operands must share mode")
    mode = modes.pop()

    sums = {}
    for mask in range(1, 1 << n):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        if rest == 0:
            sums[mask] = bodies[i]
        else:
            sums[mask] = minkowski_sum(sums[rest], bodies[i])

    total = as_scalar(0, mode)
    for mask in range(1, 1 << n):
        size = bin(mask).count("1")
        term = volume(sums[mask])
        if (n - size) % 2:
            total = total - term
        else:
            total = total + term
    value = total / as_scalar(math.factorial(n), mode)
    return MixedVolumeResult(
        value, "polarization", tuple(_describe(B) for B in bodies), (1,) * n, None
    )


def godbersen_ratio(K, j):
    """V(K[j], -K[n-j]) / Vol(K) against the proved bound n^n/(j^j (n-j)^(n-j)).

    The conjectured bound C(n,j) rides along in the metadata.
    """
    n = K.dim
    if not 1 <= j <= n - 1:
        raise ValueError("need 1 <= j <= n-1")
    mv = mixed_volume_pair(K, negate(K), j)
    lhs = mv.value / volume(K)
    conjectured = as_scalar(binomial(n, j), K.mode)
    if K.mode == EXACT:
        proved = rational(n**n, j**j * (n - j) ** (n - j))
        tol = 0
    else:
        proved = n**n / (j**j * (n - j) ** (n - j))
        tol = 1e-9 * float(proved)
    meta = {
        "n": n,
        "j": j,
        "rhs_conjectured": conjectured,
        "rhs_proved": proved,
        "method": mv.method,
        "conjecture_pass": bool(lhs <= conjectured + tol),
    }
    if mv.condition_estimate is not None:
        meta["condition_estimate"] = mv.condition_estimate
    return comparison_report(lhs, proved, tol=tol, meta=meta)


def difference_body_check(K):
    """Vol(K - K) / Vol(K) against C(2n, n), plus the binomial expansion
    of Vol(K - K) into mixed volumes."""
    n = K.dim
    diff = minkowski_sum(K, negate(K))
    vol_k = volume(K)
    lhs = volume(diff) / vol_k
    rhs = as_scalar(binomial(2 * n, n), K.mode)
    values, cond = volume_polynomial(K, negate(K))
    expansion = sum(as_scalar(binomial(n, j), K.mode) * values[j] for j in range(n + 1))
    tol = 0 if K.mode == EXACT else 1e-9 * float(rhs)
    identity_tol = 0 if K.mode == EXACT else 1e-9 * float(volume(diff))
    meta = {
        "n": n,
        "expansion_sum": expansion,
        "difference_volume": volume(diff),
        "expansion_identity": bool(abs(expansion - volume(diff)) <= identity_tol),
        "equality_attained": bool(abs(lhs - rhs) <= tol),
    }
    if cond is not None:
        meta["condition_estimate"] = cond
    return comparison_report(lhs, rhs, tol=tol, meta=meta)
