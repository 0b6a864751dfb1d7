"""Independent reference implementations used to cross-check the kernel.

Everything here is deliberately naive: exhaustive scans and LPs instead of
incremental geometry, Monte-Carlo instead of triangulation.  Slow is fine;
sharing code with the implementation under test is not.
"""

import itertools
import random

import numpy as np

from godbersen_kit.linalg import dot, hyperplane_through, solve, vsub
from godbersen_kit.lp import OPTIMAL, simplex_max
from godbersen_kit.errors import DegenerateInput
from godbersen_kit.scalars import EXACT, rational


def is_convex_combination(p, others):
    """Exact LP feasibility: p = sum l_i q_i, sum l_i = 1, l_i >= 0.

    Encoded for the <=-form solver as pairs of inequalities; objective 0.
    """
    d = len(p)
    m = len(others)
    rows = []
    rhs = []
    for c in range(d):
        row = [q[c] for q in others]
        rows.append(row)
        rhs.append(p[c])
        rows.append([-x for x in row])
        rhs.append(-p[c])
    rows.append([rational(1)] * m)
    rhs.append(rational(1))
    rows.append([rational(-1)] * m)
    rhs.append(rational(-1))
    status, _, _ = simplex_max([rational(0)] * m, rows, rhs)
    return status == OPTIMAL


def brute_force_extreme_points(points):
    """Extreme points by testing each point against the hull of the rest."""
    out = []
    for i, p in enumerate(points):
        others = points[:i] + points[i + 1 :]
        if not is_convex_combination(p, others):
            out.append(p)
    return sorted(out)


def brute_force_facet_planes_3d(points):
    """All supporting planes through point triples, canonicalized.

    A triple's plane supports the hull when every point sits on the <= side.
    Returns a sorted set of (normal, offset) with primitive integer normals.
    """
    planes = set()
    for a, b, c in itertools.combinations(points, 3):
        try:
            normal, offset = hyperplane_through([a, b, c])
        except DegenerateInput:
            continue
        sides = [dot(normal, p) - offset for p in points]
        if all(s <= 0 for s in sides):
            pass
        elif all(s >= 0 for s in sides):
            normal = tuple(-x for x in normal)
            offset = -offset
        else:
            continue
        denom_lcm = 1
        for x in normal:
            q = int(x.denominator)
            g = _gcd(denom_lcm, q)
            denom_lcm = denom_lcm // g * q
        ints = [int(x * denom_lcm) for x in normal]
        g = 0
        for v in ints:
            g = _gcd(g, abs(v))
        scale = rational(denom_lcm, g)
        planes.add((tuple(x * scale for x in normal), offset * scale))
    return sorted(planes)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def monte_carlo_volume(P_float, n_samples=1_000_000, seed=0):
    """Rejection sampling in the bounding box; returns (estimate, stderr)."""
    rng = np.random.default_rng(seed)
    verts = np.array(P_float.vertices, dtype=float)
    lo = verts.min(axis=0)
    hi = verts.max(axis=0)
    box_vol = float(np.prod(hi - lo))
    samples = rng.uniform(lo, hi, size=(n_samples, len(lo)))
    normals = np.array([f.outward_normal for f in P_float.facets], dtype=float)
    offsets = np.array([f.offset for f in P_float.facets], dtype=float)
    inside = np.all(samples @ normals.T <= offsets + 1e-12, axis=1)
    p = inside.mean()
    est = p * box_vol
    stderr = box_vol * float(np.sqrt(p * (1 - p) / n_samples))
    return est, stderr


def lp_vertex_enumeration(halfspaces, dim):
    """Vertices of an H-polytope by solving every d-subset of equalities.

    Exact mode only.  A candidate counts when its linear system is solvable
    and it satisfies every half-space.
    """
    verts = set()
    for subset in itertools.combinations(range(len(halfspaces)), dim):
        mat = [list(halfspaces[i][0]) for i in subset]
        rhs = [halfspaces[i][1] for i in subset]
        try:
            x = solve(mat, rhs)
        except DegenerateInput:
            continue
        if all(dot(n, x) <= b for n, b in halfspaces):
            verts.add(tuple(x))
    return sorted(verts)


def random_exact_points(rng, m, dim, denom=64, span=2):
    """Deterministic rational points with small denominators."""
    return [
        tuple(rational(rng.randint(-span * denom, span * denom), denom) for _ in range(dim))
        for _ in range(m)
    ]


def brute_force_lambda_difference(f_axes, f_vals, g_axes, g_vals, lam, out_axes):
    """Exhaustive pair search for the discrete sup-convolution.

    For every pair of sample points (u, v) the combination
    z = (1-lam)^2 u - lam^2 v is binned to the nearest output cell and the
    product f(u)^(1-lam) * g(v)^lam recorded; each output cell keeps its max.
    Plain Python loops on purpose.
    """
    n = len(f_axes)
    out_shape = tuple(len(a) for a in out_axes)
    out = np.zeros(out_shape)
    steps = [a[1] - a[0] if len(a) > 1 else 1.0 for a in out_axes]
    f_points = list(itertools.product(*[range(len(a)) for a in f_axes]))
    g_points = list(itertools.product(*[range(len(a)) for a in g_axes]))
    c1 = (1.0 - lam) ** 2
    c2 = lam ** 2
    for iu in f_points:
        fu = float(f_vals[iu])
        if fu <= 0.0:
            continue
        for iv in g_points:
            gv = float(g_vals[iv])
            if gv <= 0.0:
                continue
            idx = []
            ok = True
            for k in range(n):
                z = c1 * f_axes[k][iu[k]] - c2 * g_axes[k][iv[k]]
                j = int(round((z - out_axes[k][0]) / steps[k]))
                if j < 0 or j >= out_shape[k]:
                    ok = False
                    break
                idx.append(j)
            if not ok:
                continue
            val = fu ** (1.0 - lam) * gv ** lam
            idx = tuple(idx)
            if val > out[idx]:
                out[idx] = val
    return out


def brute_force_inf_convolution(phi_axes, phi_vals, psi_axes, psi_vals, out_axes):
    """Exhaustive pair minimisation for the discrete infimal convolution."""
    n = len(phi_axes)
    out_shape = tuple(len(a) for a in out_axes)
    out = np.full(out_shape, np.inf)
    steps = [a[1] - a[0] if len(a) > 1 else 1.0 for a in out_axes]
    for iu in itertools.product(*[range(len(a)) for a in phi_axes]):
        pu = float(phi_vals[iu])
        if not np.isfinite(pu):
            continue
        for iv in itertools.product(*[range(len(a)) for a in psi_axes]):
            pv = float(psi_vals[iv])
            if not np.isfinite(pv):
                continue
            idx = []
            ok = True
            for k in range(n):
                z = phi_axes[k][iu[k]] + psi_axes[k][iv[k]]
                j = int(round((z - out_axes[k][0]) / steps[k]))
                if j < 0 or j >= out_shape[k]:
                    ok = False
                    break
                idx.append(j)
            if not ok:
                continue
            val = pu + pv
            idx = tuple(idx)
            if val < out[idx]:
                out[idx] = val
    return out
