"""Polytope kernel: hulls, volumes, Minkowski sums, intersections, polars.

Bounded convex polytopes in dimension 1..6, in either arithmetic mode.
The hull is an incremental beneath-beyond insertion; all downstream
quantities (volume, centroid, facet structure) fall out of the same
boundary triangulation, so exact mode is exact end to end.

Conventions:

* a point is a tuple of scalars, all sharing one mode;
* ``VPolytope.vertices`` is lexicographically sorted and contains extreme
  points only, so equality of polytopes is equality of representations;
* facet half-spaces are ``<x, outward_normal> <= offset``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .errors import (
    DegenerateInput,
    EmptyIntersection,
    OriginNotContained,
    OriginNotInterior,
    Unbounded,
)
from .linalg import RankTracker, det, dot, hyperplane_through, inverse, vadd, vscale, vsub
from .lp import feasible_interior
from .scalars import (
    EXACT,
    FLOAT,
    FLOAT_EPS,
    as_scalar,
    bit_size,
    exact_scalar,
    rational,
    scalar_from_json,
    scalar_to_json,
    sign,
)

MAX_DIM = 6


def _check_dim(d):
    if not 1 <= d <= MAX_DIM:
        raise ValueError("dimension %d outside supported range 1..%d" % (d, MAX_DIM))


def _coordinate_scale(points):
    best = 1.0
    for p in points:
        for c in p:
            a = abs(c)
            if a > best:
                best = float(a)
    return best


@dataclass(frozen=True)
class Facet:
    """One facet: indices into the owning polytope's vertex list, plus its
    supporting half-space <x, outward_normal> <= offset."""

    vertex_indices: tuple
    outward_normal: tuple
    offset: object


class VPolytope:
    """Canonical vertex representation of a full-dimensional polytope.

    Construct through :func:`convex_hull` (or the serialization helpers);
    the constructor trusts its arguments.
    """

    __slots__ = ("dim", "mode", "vertices", "facets", "_volume", "_centroid", "_interior")

    def __init__(self, dim, mode, vertices, facets, volume, centroid, interior):
        self.dim = dim
        self.mode = mode
        self.vertices = vertices
        self.facets = facets
        self._volume = volume
        self._centroid = centroid
        self._interior = interior

    def __eq__(self, other):
        return (
            isinstance(other, VPolytope)
            and self.dim == other.dim
            and self.mode == other.mode
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.dim, self.mode, self.vertices))

    def __repr__(self):
        return "VPolytope(dim=%d, mode=%s, %d vertices, %d facets)" % (
            self.dim,
            self.mode,
            len(self.vertices),
            len(self.facets),
        )

    @property
    def is_full_dim(self):
        return self._volume is not None

    @property
    def eps(self):
        """Predicate tolerance: zero in exact mode, scaled 1e-12 in float."""
        if self.mode == EXACT:
            return 0
        return FLOAT_EPS * _coordinate_scale(self.vertices)


@dataclass(frozen=True)
class HPolytope:
    """Half-space representation ``<x, normal> <= offset`` per entry.

    ``empty`` marks an infeasible system; ``full_dim`` distinguishes flat
    (measure-zero) intersections from solid ones.  ``interior_point`` is a
    strictly interior witness when one is known.
    """

    dim: int
    mode: str
    halfspaces: tuple
    interior_point: tuple = None
    empty: bool = False
    full_dim: bool = True

    @property
    def eps(self):
        if self.mode == EXACT:
            return 0
        pts = [h[0] for h in self.halfspaces]
        return FLOAT_EPS * _coordinate_scale(pts) if pts else FLOAT_EPS


# ---------------------------------------------------------------------------
# hull construction


def _dedupe(points, eps):
    if eps == 0:
        seen = {}
        for p in points:
            seen.setdefault(p, None)
        return list(seen)
    out = []
    for p in points:
        dup = False
        for q in out:
            if all(abs(a - b) <= eps for a, b in zip(p, q)):
                dup = True
                break
        if not dup:
            out.append(p)
    return out


def _affine_basis(pts, d, eps):
    """Indices of d+1 affinely independent points, or None."""
    base = 0
    tracker = RankTracker(d, eps)
    chosen = [base]
    for i in range(1, len(pts)):
        if tracker.add(vsub(pts[i], pts[base])):
            chosen.append(i)
            if len(chosen) == d + 1:
                return chosen
    return None


def _facet_plane(pts, verts, interior, eps, unit):
    normal, offset = hyperplane_through([pts[i] for i in verts], eps)
    if unit:
        norm = sum(c * c for c in normal) ** 0.5
        normal = tuple(c / norm for c in normal)
        offset = offset / norm
    side = dot(normal, interior) - offset
    if sign(side, eps) == 0:
        raise DegenerateInput("facet plane passes through the interior reference point")
    if side > 0:
        normal = tuple(-c for c in normal)
        offset = -offset
    return normal, offset


def _hull_core(points, mode):
    """Beneath-beyond insertion.  Returns (pts, simplicial facets, interior).

    Simplicial facets triangulate the boundary; adjacent coplanar simplices
    are merged later.  Points exactly on the current boundary are skipped
    (they cannot be extreme for the full set).
    """
    d = len(points[0])
    eps = 0 if mode == EXACT else FLOAT_EPS * _coordinate_scale(points)
    unit = mode == FLOAT
    pts = _dedupe(points, eps)
    if len(pts) < d + 1:
        raise DegenerateInput("need at least d+1 distinct points")
    pts.sort()
    basis = _affine_basis(pts, d, eps)
    if basis is None:
        raise DegenerateInput("points span a lower-dimensional affine subspace")

    interior = tuple(sum(pts[i][c] for i in basis) / (d + 1) for c in range(d))
    if mode == EXACT:
        interior = tuple(exact_scalar(x) for x in interior)

    facets = {}
    next_id = 0
    for skip in range(d + 1):
        verts = tuple(sorted(basis[j] for j in range(d + 1) if j != skip))
        facets[next_id] = (verts, *_facet_plane(pts, verts, interior, eps, unit))
        next_id += 1

    in_simplex = set(basis)
    for idx in range(len(pts)):
        if idx in in_simplex:
            continue
        p = pts[idx]
        visible = []
        for fid, (verts, normal, offset) in facets.items():
            if dot(normal, p) - offset > eps:
                visible.append(fid)
        if not visible:
            continue
        ridge_count = {}
        for fid in visible:
            verts = facets[fid][0]
            for skip in range(d):
                ridge = verts[:skip] + verts[skip + 1 :]
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        for fid in visible:
            del facets[fid]
        for ridge, count in ridge_count.items():
            if count != 1:
                continue
            verts = tuple(sorted(ridge + (idx,)))
            facets[next_id] = (verts, *_facet_plane(pts, verts, interior, eps, unit))
            next_id += 1

    return pts, list(facets.values()), interior, eps


def _merge_coplanar(pts, simplices, eps):
    """Union-find over ridge-adjacent coplanar simplicial facets."""
    parent = list(range(len(simplices)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    ridge_map = {}
    for i, (verts, _, _) in enumerate(simplices):
        for skip in range(len(verts)):
            ridge = verts[:skip] + verts[skip + 1 :]
            ridge_map.setdefault(ridge, []).append(i)

    def coplanar(i, j):
        verts_j = simplices[j][0]
        normal_i, offset_i = simplices[i][1], simplices[i][2]
        return all(abs(dot(normal_i, pts[v]) - offset_i) <= eps for v in verts_j)

    for members in ridge_map.values():
        for k in range(1, len(members)):
            a, b = find(members[0]), find(members[k])
            if a != b and coplanar(members[0], members[k]):
                parent[b] = a

    groups = {}
    for i in range(len(simplices)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _canonical_plane(normal, offset, mode):
    if mode == FLOAT:
        norm = sum(c * c for c in normal) ** 0.5
        return tuple(c / norm for c in normal), offset / norm
    nq = [exact_scalar(c) for c in normal]
    denom_lcm = 1
    for c in nq:
        q = int(c.denominator)
        denom_lcm = denom_lcm * q // _gcd(denom_lcm, q)
    ints = [int(c.numerator) * (denom_lcm // int(c.denominator)) for c in nq]
    g = 0
    for v in ints:
        g = _gcd(g, abs(v))
    scale = rational(denom_lcm, g)
    return tuple(c * scale for c in nq), exact_scalar(offset) * scale


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _hull_finish(pts, simplices, interior, eps, mode, d):
    groups = _merge_coplanar(pts, simplices, eps)

    planes = []
    for group in groups:
        normal, offset = _canonical_plane(simplices[group[0]][1], simplices[group[0]][2], mode)
        planes.append((normal, offset))

    candidates = sorted({v for verts, _, _ in simplices for v in verts})
    vertex_set = []
    for v in candidates:
        onplanes = []
        p = pts[v]
        for normal, offset in planes:
            tol = eps * (1 + sum(abs(c) for c in normal)) if eps else 0
            if abs(dot(normal, p) - offset) <= tol:
                onplanes.append(normal)
        if len(onplanes) >= d:
            tracker = RankTracker(d, eps)
            for n in onplanes:
                tracker.add(n)
                if tracker.rank == d:
                    break
            if tracker.rank == d:
                vertex_set.append(v)

    vertices = sorted(pts[v] for v in vertex_set)
    index_of = {v: i for i, v in enumerate(vertices)}

    facets = []
    for normal, offset in planes:
        tol = eps * (1 + sum(abs(c) for c in normal)) if eps else 0
        members = tuple(
            i for i, v in enumerate(vertices) if abs(dot(normal, v) - offset) <= tol
        )
        facets.append(Facet(members, normal, offset))
    facets.sort(key=lambda f: (f.outward_normal, f.offset))

    # Volume and centroid from the boundary triangulation, fanned from the
    # interior reference point.
    dfact = 1
    for i in range(2, d + 1):
        dfact *= i
    total = as_scalar(0, mode) if mode == FLOAT else rational(0)
    weighted = [total] * d
    weighted = list(weighted)
    for verts, _, _ in simplices:
        mat = [vsub(pts[v], interior) for v in verts]
        vol = abs(det(mat, eps)) / dfact
        if vol == 0:
            continue
        total = total + vol
        centroid_sum = list(interior)
        for v in verts:
            centroid_sum = [a + b for a, b in zip(centroid_sum, pts[v])]
        for c in range(d):
            weighted[c] = weighted[c] + vol * centroid_sum[c] / (d + 1)
    if total == 0 or (eps and total <= eps**d):
        raise DegenerateInput("zero-volume hull")
    centroid = tuple(w / total for w in weighted)

    return VPolytope(d, mode, tuple(vertices), tuple(facets), total, centroid, interior)


def convex_hull(points, mode=None, *, allow_degenerate=False):
    """Canonical hull of the given points (each a sequence of scalars).

    Exact mode demands rational-like coordinates; float coordinates select
    float mode.  Raises DegenerateInput when the points span less than the
    ambient dimension, unless allow_degenerate is set, in which case the
    result carries extreme points only (no facets, no volume).
    """
    pts = [tuple(p) for p in points]
    if not pts:
        raise DegenerateInput("no points")
    d = len(pts[0])
    _check_dim(d)
    if any(len(p) != d for p in pts):
        raise ValueError("points of mixed dimension")
    if mode is None:
        mode = FLOAT if any(isinstance(c, float) for p in pts for c in p) else EXACT
    pts = [tuple(as_scalar(c, mode) for c in p) for p in pts]
    try:
        core_pts, simplices, interior, eps = _hull_core(pts, mode)
    except DegenerateInput:
        if not allow_degenerate:
            raise
        return _degenerate_hull(pts, d, mode)
    return _hull_finish(core_pts, simplices, interior, eps, mode, d)


def _degenerate_hull(pts, d, mode):
    """Extreme points of a lower-dimensional hull, found one LP apiece."""
    from .lp import OPTIMAL, simplex_max

    eps = 0 if mode == EXACT else 1e-9 * _coordinate_scale(pts)
    pts = _dedupe(pts, FLOAT_EPS * _coordinate_scale(pts) if mode == FLOAT else 0)
    extreme = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1 :]
        if not others:
            extreme.append(p)
            continue
        rows = []
        rhs = []
        for c in range(d):
            row = [q[c] for q in others]
            rows.append(row)
            rhs.append(p[c])
            rows.append([-x for x in row])
            rhs.append(-p[c])
        one = as_scalar(1, mode)
        rows.append([one] * len(others))
        rhs.append(one)
        rows.append([-one] * len(others))
        rhs.append(-one)
        status, _, _ = simplex_max([as_scalar(0, mode)] * len(others), rows, rhs, eps=eps)
        if status != OPTIMAL:
            extreme.append(p)
    extreme.sort()
    return VPolytope(d, mode, tuple(extreme), (), None, None, None)


# ---------------------------------------------------------------------------
# basic queries


def volume(P):
    """Lebesgue volume (exact in exact mode)."""
    if P._volume is None:
        raise DegenerateInput("polytope is lower-dimensional; no d-volume")
    return P._volume


def centroid(P):
    """Volume centroid, computed with the same triangulation as volume()."""
    if P._centroid is None:
        raise DegenerateInput("polytope is lower-dimensional; no volume centroid")
    return P._centroid


def support(P, u):
    """Support value max_v <v,u> over the vertex list."""
    return max(dot(v, u) for v in P.vertices)


def support_argmax(P, u):
    best = None
    arg = None
    for v in P.vertices:
        val = dot(v, u)
        if best is None or val > best:
            best, arg = val, v
    return best, arg


def contains_point(P, x, *, strict=False):
    eps = P.eps
    for f in P.facets:
        slack = f.offset - dot(f.outward_normal, x)
        if strict:
            if slack <= eps:
                return False
        elif slack < -eps * (1 + sum(abs(c) for c in f.outward_normal)):
            return False
    return True


def contains_polytope(P, Q):
    """True iff every vertex of Q satisfies every facet half-space of P."""
    return all(contains_point(P, v) for v in Q.vertices)


def gauge(P, u):
    """Minkowski gauge inf{r > 0 : u in rP}; requires 0 in P.

    Returns None for +infinity (u outside the recession cone of the
    vertex-at-origin case).
    """
    eps = P.eps
    if not contains_point(P, tuple(as_scalar(0, P.mode) for _ in range(P.dim))):
        raise OriginNotContained("gauge needs 0 inside the body")
    best = as_scalar(0, P.mode)
    for f in P.facets:
        num = dot(f.outward_normal, u)
        if f.offset > eps:
            val = num / f.offset
            if val > best:
                best = val
        else:  # 0 sits on this facet
            if num > eps:
                return None
    return best


def coordinate_bits(P):
    """Max numerator/denominator bit length over all vertex coordinates."""
    return max(bit_size(c) for v in P.vertices for c in v)


# ---------------------------------------------------------------------------
# affine operations (analytic fast paths; no hull recomputation)


def _remap(vertices, facets, volume_, centroid_, interior, dim, mode):
    order = sorted(range(len(vertices)), key=lambda i: vertices[i])
    rank = {old: new for new, old in enumerate(order)}
    new_vertices = tuple(vertices[i] for i in order)
    new_facets = tuple(
        Facet(tuple(sorted(rank[i] for i in f.vertex_indices)), f.outward_normal, f.offset)
        for f in facets
    )
    new_facets = tuple(sorted(new_facets, key=lambda f: (f.outward_normal, f.offset)))
    return VPolytope(dim, mode, new_vertices, new_facets, volume_, centroid_, interior)


def translate(P, t):
    t = tuple(as_scalar(c, P.mode) for c in t)
    vertices = tuple(vadd(v, t) for v in P.vertices)
    facets = tuple(
        Facet(f.vertex_indices, f.outward_normal, f.offset + dot(f.outward_normal, t))
        for f in P.facets
    )
    if not P.is_full_dim:
        return VPolytope(P.dim, P.mode, vertices, facets, None, None, None)
    return VPolytope(
        P.dim, P.mode, vertices, facets, P._volume, vadd(P._centroid, t), vadd(P._interior, t)
    )


def scale_polytope(P, s):
    s = as_scalar(s, P.mode)
    if s == 0:
        raise ValueError("scale factor must be nonzero; a point is not a polytope")
    if not P.is_full_dim:
        verts = sorted(vscale(v, s) for v in P.vertices)
        return VPolytope(P.dim, P.mode, tuple(verts), (), None, None, None)
    vertices = [vscale(v, s) for v in P.vertices]
    factor = abs(s) ** P.dim
    vol = P._volume * factor
    cent = vscale(P._centroid, s)
    inter = vscale(P._interior, s)
    if s > 0:
        facets = [Facet(f.vertex_indices, f.outward_normal, f.offset * s) for f in P.facets]
        return VPolytope(P.dim, P.mode, tuple(vertices), tuple(facets), vol, cent, inter)
    facets = [
        Facet(f.vertex_indices, tuple(-c for c in f.outward_normal), f.offset * -s)
        for f in P.facets
    ]
    return _remap(vertices, facets, vol, cent, inter, P.dim, P.mode)


def negate(P):
    """The reflection -P."""
    return scale_polytope(P, -1)


def affine_image(P, A, b=None):
    """Image {Ax + b : x in P}; singular A falls back to a fresh hull."""
    mode = P.mode
    A = [[as_scalar(c, mode) for c in row] for row in A]
    if b is None:
        b = tuple(as_scalar(0, mode) for _ in range(P.dim))
    else:
        b = tuple(as_scalar(c, mode) for c in b)
    eps = P.eps
    dA = det(A, eps)
    vertices = [vadd(tuple(dot(row, v) for row in A), b) for v in P.vertices]
    if sign(dA, eps) == 0:
        return convex_hull(vertices, mode)
    AinvT = [list(col) for col in zip(*inverse(A, eps))]
    facets = []
    for f in P.facets:
        n2 = tuple(dot(row, f.outward_normal) for row in AinvT)
        n2, off2 = _canonical_plane(n2, f.offset + dot(n2, b), mode)
        facets.append(Facet(f.vertex_indices, n2, off2))
    vol = P._volume * abs(dA)
    cent = vadd(tuple(dot(row, P._centroid) for row in A), b)
    inter = vadd(tuple(dot(row, P._interior) for row in A), b)
    return _remap(vertices, facets, vol, cent, inter, P.dim, mode)


def minkowski_sum(P, Q):
    """Hull of all pairwise vertex sums.  Lower-dimensional operands are
    fine; the sum is degenerate only if it is itself flat."""
    if P.dim != Q.dim or P.mode != Q.mode:
        raise ValueError("operands must share dimension and mode")
    sums = [vadd(v, w) for v in P.vertices for w in Q.vertices]
    return convex_hull(sums, P.mode, allow_degenerate=True)


def convex_hull_union(P, Q):
    """Hull of the union (the join P v Q)."""
    if P.dim != Q.dim or P.mode != Q.mode:
        raise ValueError("operands must share dimension and mode")
    return convex_hull(list(P.vertices) + list(Q.vertices), P.mode)


def scaled_reflected_join(K, lam):
    """Hull of (1-lam)K and -lam*K for lam in [0,1], endpoints included."""
    lam = as_scalar(lam, K.mode)
    if lam == 0:
        return K
    if lam == 1:
        return negate(K)
    return convex_hull_union(scale_polytope(K, 1 - lam), scale_polytope(K, -lam))


# ---------------------------------------------------------------------------
# representation conversion


def to_hrep(P):
    return HPolytope(
        P.dim,
        P.mode,
        tuple((f.outward_normal, f.offset) for f in P.facets),
        interior_point=P._interior,
    )


def _interior_of(H):
    if H.interior_point is not None:
        return H.interior_point
    eps = 1e-9 if H.mode == FLOAT else 0
    normals = [h[0] for h in H.halfspaces]
    offsets = [h[1] for h in H.halfspaces]
    margin, x = feasible_interior(normals, offsets, H.dim, eps=eps)
    if margin is None:
        raise EmptyIntersection("no feasible point")
    if not margin > (1e-9 if H.mode == FLOAT else 0):
        raise DegenerateInput("feasible set is lower-dimensional")
    return x


def to_vrep(H):
    """Vertex enumeration via the polar trick around an interior point."""
    if H.empty:
        raise EmptyIntersection("H-polytope is flagged empty")
    z = _interior_of(H)
    eps = H.eps
    polar_pts = []
    for normal, offset in H.halfspaces:
        r = offset - dot(normal, z)
        if not r > eps:
            raise DegenerateInput("declared interior point is not strictly interior")
        polar_pts.append(tuple(c / r for c in normal))
    try:
        Q = convex_hull(polar_pts, H.mode)
    except DegenerateInput:
        raise Unbounded("half-space normals do not span the space; recession cone nontrivial")
    for f in Q.facets:
        if not f.offset > Q.eps:
            raise Unbounded("recession cone nontrivial")
    verts = [vadd(tuple(c / f.offset for c in f.outward_normal), z) for f in Q.facets]
    return convex_hull(verts, H.mode)


def intersect(*hpolys):
    """Intersection of H-polytopes; prunes redundant half-spaces when solid.

    Never raises for empty or flat inputs: the flags on the returned
    HPolytope carry that information.
    """
    dims = {h.dim for h in hpolys}
    modes = {h.mode for h in hpolys}
    if len(dims) != 1 or len(modes) != 1:
        raise ValueError("operands must share dimension and mode")
    dim = dims.pop()
    mode = modes.pop()
    halfspaces = tuple(hs for h in hpolys for hs in h.halfspaces)
    eps = 1e-9 if mode == FLOAT else 0
    normals = [h[0] for h in halfspaces]
    offsets = [h[1] for h in halfspaces]
    margin, x = feasible_interior(normals, offsets, dim, eps=eps)
    if margin is None:
        return HPolytope(dim, mode, halfspaces, None, empty=True, full_dim=False)
    if not margin > eps:
        return HPolytope(dim, mode, halfspaces, None, empty=False, full_dim=False)
    raw = HPolytope(dim, mode, halfspaces, interior_point=x)
    pruned = to_hrep(to_vrep(raw))
    return replace(pruned, interior_point=x)


def polar(P):
    """Polar dual, swapping representations.

    VPolytope -> HPolytope with half-spaces <x, v> <= 1; HPolytope ->
    VPolytope with vertices normal/offset.  Requires 0 strictly interior.
    """
    if isinstance(P, VPolytope):
        if not contains_point(P, tuple(as_scalar(0, P.mode) for _ in range(P.dim)), strict=True):
            raise OriginNotInterior("polar needs 0 in the interior")
        one = as_scalar(1, P.mode)
        zero_int = tuple(as_scalar(0, P.mode) for _ in range(P.dim))
        return HPolytope(
            P.dim, P.mode, tuple((v, one) for v in P.vertices), interior_point=zero_int
        )
    H = P
    eps = H.eps
    pts = []
    for normal, offset in H.halfspaces:
        if not offset > eps:
            raise OriginNotInterior("polar needs 0 in the interior (an offset is <= 0)")
        pts.append(tuple(c / offset for c in normal))
    return convex_hull(pts, H.mode)


def polar_body(P):
    """Polar of a VPolytope as a canonical VPolytope (facets -> vertices)."""
    if not contains_point(P, tuple(as_scalar(0, P.mode) for _ in range(P.dim)), strict=True):
        raise OriginNotInterior("polar needs 0 in the interior")
    pts = [tuple(c / f.offset for c in f.outward_normal) for f in P.facets]
    return convex_hull(pts, P.mode)


# ---------------------------------------------------------------------------
# serialization


def polytope_to_json(P):
    return {
        "dim": P.dim,
        "mode": P.mode,
        "vertices": [[scalar_to_json(c) for c in v] for v in P.vertices],
    }


def polytope_from_json(obj):
    dim = int(obj["dim"])
    _check_dim(dim)
    mode = obj["mode"]
    if mode not in (EXACT, FLOAT):
        raise ValueError("bad mode %r" % mode)
    pts = [tuple(scalar_from_json(c, mode) for c in v) for v in obj["vertices"]]
    if any(len(p) != dim for p in pts):
        raise ValueError("vertex length disagrees with dim")
    return convex_hull(pts, mode)


def dump_polytope(P, fp):
    json.dump(polytope_to_json(P), fp, sort_keys=True)


def load_polytope(fp):
    return polytope_from_json(json.load(fp))


# ---------------------------------------------------------------------------
# stock bodies


def standard_simplex(n, mode=EXACT):
    """conv{0, e_1, ..., e_n}."""
    zero = [tuple(as_scalar(0, mode) for _ in range(n))]
    eis = [
        tuple(as_scalar(1 if i == j else 0, mode) for j in range(n)) for i in range(n)
    ]
    return convex_hull(zero + eis, mode)


def centered_simplex(n, mode=EXACT):
    """standard_simplex translated so its centroid is the origin."""
    S = standard_simplex(n, mode)
    return translate(S, tuple(-c for c in centroid(S)))


def cube(n, mode=EXACT, *, low=0, high=1):
    lo = as_scalar(low, mode)
    hi = as_scalar(high, mode)
    pts = []
    for mask in range(1 << n):
        pts.append(tuple(hi if mask >> i & 1 else lo for i in range(n)))
    return convex_hull(pts, mode)


def cross_polytope(n, mode=EXACT):
    pts = []
    for i in range(n):
        for s in (1, -1):
            pts.append(tuple(as_scalar(s if j == i else 0, mode) for j in range(n)))
    return convex_hull(pts, mode)
