"""Joined cone bodies one dimension up, their slices, and the volume
inequalities tying products, intersections, and polar sums together.

The central object is C = conv(L at height 0, -K at height 1).  Its
height-theta slice is (1-theta)L - theta*K, which turns Fubini into
checkable volume identities and feeds the product-volume inequalities.
"""

import math
from dataclasses import dataclass

from .errors import (
    DegenerateInput,
    EmptyIntersection,
    EmptySection,
    OriginNotContained,
    OriginNotInterior,
)
from .linalg import binomial, dot
from .polytopes import (
    HPolytope,
    VPolytope,
    contains_point,
    contains_polytope,
    convex_hull,
    convex_hull_union,
    gauge,
    intersect,
    minkowski_sum,
    negate,
    polar_body,
    scale_polytope,
    scaled_reflected_join,
    to_hrep,
    to_vrep,
    volume,
)
from .reports import CheckReport, comparison_report
from .scalars import EXACT, FLOAT, as_scalar, rational

MAX_BASE_DIM = 4

SLICE_VALIDATION_THETAS = (0, rational(1, 4), rational(1, 2), rational(3, 4), 1)


@dataclass(frozen=True)
class CKLBody:
    base_K: VPolytope
    base_L: VPolytope
    body: VPolytope


def _zero(n, mode):
    return tuple(as_scalar(0, mode) for _ in range(n))


def _tol_for(mode, *magnitudes):
    if mode == EXACT:
        return 0
    scale = max([1.0] + [abs(float(m)) for m in magnitudes])
    return 1e-9 * scale


def build_C(K, L, *, validate=True):
    """conv(L x {0}, -K x {1}) in dimension n+1."""
    if K.dim != L.dim or K.mode != L.mode:
        raise ValueError("operands must share dimension and mode")
    n = K.dim
    if n > MAX_BASE_DIM:
        raise ValueError("base dimension capped at %d" % MAX_BASE_DIM)
    zero = as_scalar(0, K.mode)
    one = as_scalar(1, K.mode)
    pts = [v + (zero,) for v in L.vertices]
    pts += [tuple(-c for c in w) + (one,) for w in K.vertices]
    body = convex_hull(pts, K.mode)
    C = CKLBody(K, L, body)
    if validate:
        expected_vertices = sorted(pts)
        assert list(body.vertices) == expected_vertices, "all layer points must be extreme"
        thetas = SLICE_VALIDATION_THETAS if K.mode == EXACT else tuple(
            float(t) for t in SLICE_VALIDATION_THETAS
        )
        for theta in thetas:
            got = slice_of_C(C, theta)
            want = _layer_combination(K, L, theta)
            if K.mode == EXACT:
                assert got == want, "slice at %s deviates" % (theta,)
            else:
                assert abs(volume(got) - volume(want)) <= _tol_for(FLOAT, volume(want))
    return C


def _layer_combination(K, L, theta):
    """(1-theta)L - theta*K with the scalar endpoints handled exactly."""
    theta = as_scalar(theta, K.mode)
    if theta == 0:
        return L
    if theta == 1:
        return negate(K)
    return minkowski_sum(scale_polytope(L, 1 - theta), scale_polytope(K, -theta))


def slice_of_C(C, theta):
    """The height-theta slice of the joined body, as an n-dim polytope in
    the chart that drops the height coordinate."""
    body = C.body if isinstance(C, CKLBody) else C
    n = body.dim - 1
    mode = body.mode
    theta = as_scalar(theta, mode)
    eps = body.eps
    halfspaces = []
    for f in body.facets:
        nx = f.outward_normal[:n]
        ntheta = f.outward_normal[n]
        offset = f.offset - theta * ntheta
        if all(abs(c) <= eps for c in nx):
            if offset < -eps:
                raise EmptySection("slice height outside the body")
            continue
        halfspaces.append((nx, offset))
    H = HPolytope(n, mode, tuple(halfspaces))
    try:
        return to_vrep(H)
    except EmptyIntersection:
        raise EmptySection("slice is empty")


def g_volume_closed_form(K, L):
    """Product-body volume in dimension 2n+1: Vol(K) Vol(L) n!n!/(2n+1)!."""
    if K.dim != L.dim or K.mode != L.mode:
        raise ValueError("operands must share dimension and mode")
    n = K.dim
    factor = rational(
        math.factorial(n) * math.factorial(n), math.factorial(2 * n + 1)
    )
    return volume(K) * volume(L) * as_scalar(factor, K.mode)


def section_projection_check(P, axes, point=None):
    """Section-projection inequality for an axis-aligned subspace.

    E = {x : x_i = point_i for i not in axes}; H = P cap E measured in the
    axes chart, the projection drops the axes coordinates.  Checks
    j!(n-j)!/n! * Vol_j(H) * Vol_{n-j}(proj) <= Vol_n(P).
    """
    n = P.dim
    axes = tuple(sorted(axes))
    j = len(axes)
    if not 1 <= j <= n - 1:
        raise ValueError("need a proper nontrivial coordinate subspace")
    if point is None:
        point = _zero(n, P.mode)
    other = tuple(i for i in range(n) if i not in axes)

    halfspaces = []
    eps = P.eps
    for f in P.facets:
        na = tuple(f.outward_normal[i] for i in axes)
        offset = f.offset - sum(f.outward_normal[i] * point[i] for i in other)
        if all(abs(c) <= eps for c in na):
            if offset < -eps:
                raise EmptySection("subspace misses the polytope")
            continue
        halfspaces.append((na, offset))
    H = HPolytope(j, P.mode, tuple(halfspaces))
    flat_section = False
    try:
        section = to_vrep(H)
        vol_section = volume(section)
    except EmptyIntersection:
        raise EmptySection("subspace misses the polytope")
    except DegenerateInput:
        flat_section = True
        vol_section = as_scalar(0, P.mode)

    proj_pts = [tuple(v[i] for i in other) for v in P.vertices]
    projection = convex_hull(proj_pts, P.mode)
    factor = as_scalar(
        rational(math.factorial(j) * math.factorial(n - j), math.factorial(n)), P.mode
    )
    lhs = factor * vol_section * volume(projection)
    rhs = volume(P)
    meta = {
        "n": n,
        "axes": list(axes),
        "section_volume": vol_section,
        "projection_volume": volume(projection),
        "flat_section": flat_section,
        "equality_attained": bool(lhs == rhs) if P.mode == EXACT else None,
    }
    return comparison_report(lhs, rhs, tol=_tol_for(P.mode, rhs), meta=meta)


def _scaled_intersection(K, L, theta):
    """theta*K cap (1-theta)*L as an HPolytope (flags carry degeneracy)."""
    A = to_hrep(scale_polytope(K, theta))
    B = to_hrep(scale_polytope(L, 1 - theta))
    return intersect(A, B)


def verify_ckl_bound(K, L, theta):
    """Vol_{n+1}(C) <= Vol(K) Vol(L) / ((n+1) Vol(theta K cap (1-theta) L)).

    A zero-volume intersection makes the bound vacuous; that is reported,
    not raised.
    """
    n = K.dim
    theta = as_scalar(theta, K.mode)
    if not 0 <= theta <= 1:
        raise ValueError("theta must lie in [0, 1]")
    C = build_C(K, L, validate=False)
    lhs = volume(C.body)
    vacuous = theta == 0 or theta == 1
    if not vacuous:
        I = _scaled_intersection(K, L, theta)
        vacuous = I.empty or not I.full_dim
    if vacuous:
        return CheckReport(
            lhs,
            None,
            None,
            0,
            True,
            {"n": n, "theta": theta, "vacuous": True, "reason": "intersection has zero volume"},
        )
    vol_i = volume(to_vrep(I))
    rhs = volume(K) * volume(L) / (as_scalar(n + 1, K.mode) * vol_i)
    meta = {"n": n, "theta": theta, "vacuous": False, "intersection_volume": vol_i}
    return comparison_report(lhs, rhs, tol=_tol_for(K.mode, rhs), meta=meta)


def verify_KL_inequality(K, L, theta):
    """Vol(L v -K) * Vol(theta K cap (1-theta) L) <= Vol(K) Vol(L),
    for bodies with 0 in both."""
    n = K.dim
    mode = K.mode
    theta = as_scalar(theta, mode)
    if not 0 <= theta <= 1:
        raise ValueError("theta must lie in [0, 1]")
    origin = _zero(n, mode)
    if not (contains_point(K, origin) and contains_point(L, origin)):
        raise OriginNotContained("both bodies must contain the origin")
    join = convex_hull_union(L, negate(K))
    rhs = volume(K) * volume(L)
    if theta == 0 or theta == 1:
        return CheckReport(
            as_scalar(0, mode),
            rhs,
            as_scalar(0, mode) / rhs,
            0,
            True,
            {"n": n, "theta": theta, "vacuous": True, "join_volume": volume(join)},
        )
    I = _scaled_intersection(K, L, theta)
    if I.empty or not I.full_dim:
        vol_i = as_scalar(0, mode)
    else:
        vol_i = volume(to_vrep(I))
    lhs = volume(join) * vol_i
    tol = _tol_for(mode, rhs)
    meta = {
        "n": n,
        "theta": theta,
        "vacuous": False,
        "join_volume": volume(join),
        "intersection_volume": vol_i,
        "equality_attained": bool(abs(lhs - rhs) <= tol),
    }
    return comparison_report(lhs, rhs, tol=tol, meta=meta)


def homothety_support_identity(K, L, theta, directions):
    """At equality in the KL bound the bodies are homothets:
    h_{L polar} = ((1-theta)/theta) h_{K polar} directionwise, i.e. the
    gauges satisfy gauge_L(u) * (1-theta)/theta = ... = gauge_K-compatible.
    Returns (all_hold, samples)."""
    theta = as_scalar(theta, K.mode)
    factor = (1 - theta) / theta
    samples = []
    ok = True
    tol = 0 if K.mode == EXACT else 1e-9
    for u in directions:
        hk = gauge(K, u)
        hl = gauge(L, u)
        if hk is None or hl is None:
            match = hk is None and hl is None
        else:
            match = abs(hl - factor * hk) <= tol * max(1, abs(hl))
        samples.append((tuple(u), hk, hl))
        ok = ok and match
    return ok, samples


def verify_strange(K, L, theta_grid=(rational(1, 4), rational(1, 2), rational(3, 4))):
    """Vol(K v -L) * Vol((K°+L°)°) <= Vol(K) Vol(L) for 0 interior to both,
    plus the inclusion theta K cap (1-theta) L inside (K°+L°)°."""
    n = K.dim
    mode = K.mode
    origin = _zero(n, mode)
    if not (contains_point(K, origin, strict=True) and contains_point(L, origin, strict=True)):
        raise OriginNotInterior("both bodies need 0 in the interior")
    polar_sum = minkowski_sum(polar_body(K), polar_body(L))
    M = polar_body(polar_sum)
    join = convex_hull_union(K, negate(L))
    lhs = volume(join) * volume(M)
    rhs = volume(K) * volume(L)
    inclusions = []
    for theta in theta_grid:
        theta = as_scalar(theta, mode)
        I = _scaled_intersection(K, L, theta)
        if I.empty:
            inclusions.append((theta, True))
            continue
        if not I.full_dim:
            inclusions.append((theta, None))
            continue
        V = to_vrep(I)
        inclusions.append((theta, contains_polytope(M, V)))
    tol = _tol_for(mode, rhs)
    meta = {
        "n": n,
        "join_volume": volume(join),
        "polar_sum_polar_volume": volume(M),
        "inclusion_by_theta": [[t, flag] for t, flag in inclusions],
        "inclusions_hold": all(flag is not False for _, flag in inclusions),
    }
    return comparison_report(lhs, rhs, tol=tol, meta=meta)


def verify_join_volume_bound(K, lam):
    """Vol((1-lam)K v -lam K) <= Vol(K) for 0 in K, derived through the
    product inequality with the pair (lam*K, (1-lam)*K) at theta = 1-lam."""
    mode = K.mode
    lam = as_scalar(lam, mode)
    if not 0 <= lam <= 1:
        raise ValueError("lambda must lie in [0, 1]")
    if not contains_point(K, _zero(K.dim, mode)):
        raise OriginNotContained("the body must contain the origin")
    join = scaled_reflected_join(K, lam)
    lhs = volume(join)
    rhs = volume(K)
    tol = _tol_for(mode, rhs)
    meta = {
        "n": K.dim,
        "lambda": lam,
        "equality_attained": bool(abs(lhs - rhs) <= tol),
    }
    if 0 < lam < 1:
        inner = verify_KL_inequality(scale_polytope(K, lam), scale_polytope(K, 1 - lam), 1 - lam)
        meta["product_inequality_pass"] = inner.passed
        meta["product_lhs"] = inner.lhs
        meta["product_rhs"] = inner.rhs
    return comparison_report(lhs, rhs, tol=tol, meta=meta)


def verify_layered_lower_bound(K, L):
    """Vol_n(-K v L) / (n+1) <= Vol_{n+1}(C(K,L)) whenever 0 is in both."""
    n = K.dim
    mode = K.mode
    origin = _zero(n, mode)
    if not (contains_point(K, origin) and contains_point(L, origin)):
        raise OriginNotContained("both bodies must contain the origin")
    join = convex_hull_union(negate(K), L)
    C = build_C(K, L, validate=False)
    lhs = volume(join) / as_scalar(n + 1, mode)
    rhs = volume(C.body)
    return comparison_report(
        lhs, rhs, tol=_tol_for(mode, rhs), meta={"n": n, "join_volume": volume(join)}
    )


# ---------------------------------------------------------------------------
# corner-simplex family: K = conv{0, e_i}, L = conv{0, lam_i e_i}


def corner_simplex_pair(lams):
    """K = conv{0, e_1..e_n} and L = conv{0, lam_i e_i}."""
    n = len(lams)
    lams = [as_scalar(x, EXACT) for x in lams]
    zero = tuple(rational(0) for _ in range(n))
    K = convex_hull(
        [zero] + [tuple(rational(1 if j == i else 0) for j in range(n)) for i in range(n)], EXACT
    )
    L = convex_hull(
        [zero] + [tuple(lams[i] if j == i else rational(0) for j in range(n)) for i in range(n)],
        EXACT,
    )
    return K, L


def corner_polar_sum_body(lams):
    """(K°+L°)° for the corner pair, built as an H-polytope directly.

    Both polars are unbounded (0 sits on the boundary of K and L), but
    their sum is a translated negative orthant with the single vertex
    c_i = 1 + 1/lam_i, so its polar is cut out by x >= 0 and <x, c> <= 1.
    """
    n = len(lams)
    lams = [as_scalar(x, EXACT) for x in lams]
    c = tuple(1 + 1 / x for x in lams)
    halfspaces = [
        (tuple(rational(-1 if j == i else 0) for j in range(n)), rational(0)) for i in range(n)
    ]
    halfspaces.append((c, rational(1)))
    return to_vrep(HPolytope(n, EXACT, tuple(halfspaces)))


def corner_closed_forms(lams):
    """The three closed forms for the corner pair."""
    n = len(lams)
    lams = [as_scalar(x, EXACT) for x in lams]
    nfact = rational(math.factorial(n))
    vol_join = rational(1)
    vol_polar_sum = rational(1)
    product_target = rational(1)
    for x in lams:
        vol_join *= 1 + x
        vol_polar_sum *= x / (1 + x)
        product_target *= x
    return {
        "join_volume": vol_join / nfact,
        "polar_sum_polar_volume": vol_polar_sum / nfact,
        "volume_product": product_target / nfact**2,
    }


def verify_corner_equality(lams):
    """Geometry against the closed forms; the corner pair attains equality
    in the product bound."""
    K, L = corner_simplex_pair(lams)
    join = convex_hull_union(K, negate(L))
    M = corner_polar_sum_body(lams)
    forms = corner_closed_forms(lams)
    lhs = volume(join) * volume(M)
    rhs = volume(K) * volume(L)
    ok = (
        volume(join) == forms["join_volume"]
        and volume(M) == forms["polar_sum_polar_volume"]
        and lhs == forms["volume_product"]
        and lhs == rhs
    )
    meta = {
        "lambdas": list(lams),
        "join_volume": volume(join),
        "polar_sum_polar_volume": volume(M),
        "closed_forms": forms,
        "equality_attained": bool(lhs == rhs),
    }
    return CheckReport(lhs, rhs, lhs / rhs, 0, bool(ok), meta)
