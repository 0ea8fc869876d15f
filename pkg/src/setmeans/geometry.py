"""Exact convex-polytope geometry on vertex lists.

Bodies are compact convex polytopes stored as minimal extreme-vertex
arrays in lexicographic order.  That representation keeps Minkowski
sums, scalar scaling and support queries exact up to floating-point
round-off, which is what the sample-mean experiments need.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import ConvexHull as _Qhull
from scipy.spatial import QhullError, Voronoi, cKDTree

VERTEX_DEDUP_REL = 1e-9   # vertex merge tolerance, scaled by coordinate size
FACE_REL_TOL = 1e-9       # support-face membership tolerance
FACET_REL_MARGIN = 1e-6   # relative-interior margin, scaled by diameter
MEMBERSHIP_REL = 1e-8     # point-in-body tolerance for facet queries
MIN_NORM_GAP_TOL = 1e-12  # duality-gap threshold for the min-norm solver


class GeometryError(ValueError):
    """Invalid geometric input."""


class DimensionMismatch(GeometryError):
    """Operands live in different ambient dimensions."""


class ConvergenceError(RuntimeError):
    """An iterative routine exceeded its iteration cap."""


# ---------------------------------------------------------------------------
# input validation helpers

def _as_points(points) -> np.ndarray:
    try:
        P = np.asarray(points, dtype=float)
    except ValueError as exc:  # ragged input: mixed dimensions
        raise GeometryError(f"points must share one dimension: {exc}") from exc
    if P.ndim == 1:
        P = P.reshape(1, -1)
    if P.ndim != 2 or P.shape[0] == 0:
        raise GeometryError(f"expected a nonempty (n, d) point array, got shape {P.shape}")
    if P.shape[1] < 1:
        raise GeometryError("points must have dimension >= 1")
    if not np.all(np.isfinite(P)):
        raise GeometryError("points contain NaN or infinite coordinates")
    return P


def _as_vector(x, dim: int) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape[0] != dim:
        raise DimensionMismatch(f"expected a vector of dimension {dim}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise GeometryError("vector contains NaN or infinite coordinates")
    return v


def _canonical(V: np.ndarray) -> np.ndarray:
    """Sort vertex rows lexicographically (first coordinate is primary)."""
    order = np.lexsort(V.T[::-1])
    return np.ascontiguousarray(V[order])


# ---------------------------------------------------------------------------
# core types

@dataclass(frozen=True, eq=False)
class ConvexBody:
    """Compact convex polytope given by its minimal extreme-vertex list.

    Construct bodies through :func:`hull`; the raw constructor trusts its
    input to be a minimal, deduplicated vertex set.
    """

    vertices: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.vertices, dtype=float)
        if V.ndim != 2 or V.shape[0] < 1 or V.shape[1] < 1:
            raise GeometryError(f"vertex array must have shape (k>=1, d>=1), got {V.shape}")
        if not np.all(np.isfinite(V)):
            raise GeometryError("vertices contain NaN or infinite coordinates")
        V = np.ascontiguousarray(V)
        V.setflags(write=False)
        object.__setattr__(self, "vertices", V)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def vertex_count(self) -> int:
        return self.vertices.shape[0]

    @cached_property
    def max_norm(self) -> float:
        return float(np.sqrt((self.vertices ** 2).sum(axis=1)).max())

    @cached_property
    def diameter(self) -> float:
        V = self.vertices
        if len(V) == 1:
            return 0.0
        diff = V[:, None, :] - V[None, :, :]
        return float(np.sqrt((diff ** 2).sum(axis=2)).max())

    def __repr__(self):
        return f"ConvexBody({self.vertex_count} vertices, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class FaceCertificate:
    """Support face of a body in a given direction.

    ``direction`` is the unit functional, ``face`` its argmax set,
    ``support_value`` the attained maximum.  ``facet_direction`` is a
    vector ``d`` with ``<direction, d> = 1``; it is populated exactly
    when the face has affine dimension >= 1.
    """

    direction: np.ndarray
    face: ConvexBody
    support_value: float
    is_exposed: bool
    facet_direction: Optional[np.ndarray]


# ---------------------------------------------------------------------------
# deduplication and extreme-point extraction

def _dedup(P: np.ndarray) -> np.ndarray:
    """Merge points closer than the relative dedup tolerance.

    Clusters are formed from the pairwise proximity graph, so the result
    does not depend on input order; each cluster is represented by its
    lexicographically smallest member.
    """
    n = len(P)
    if n == 1:
        return P
    tol = VERTEX_DEDUP_REL * (1.0 + float(np.abs(P).max()))
    if n <= 512:
        d2 = ((P[:, None, :] - P[None, :, :]) ** 2).sum(axis=2)
        ii, jj = np.nonzero(np.triu(d2 <= tol * tol, k=1))
        pairs = np.stack([ii, jj], axis=1) if len(ii) else np.empty((0, 2), dtype=int)
    else:
        pairs = cKDTree(P).query_pairs(tol, output_type="ndarray")
    if len(pairs) == 0:
        return P

    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        ra, rb = find(int(a)), find(int(b))
        if ra != rb:
            parent[rb] = ra

    clusters: dict[int, list[int]] = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(i)
    reps = [min(members, key=lambda i: tuple(P[i])) for members in clusters.values()]
    return P[np.sort(np.array(reps))]


def _chain(points2: np.ndarray) -> np.ndarray:
    """Monotone-chain hull of distinct 2-D points.

    Returns indices of the minimal hull vertices in counterclockwise
    ring order; collinear points are pruned by the strict-turn predicate.
    """
    n = len(points2)
    order = np.lexsort((points2[:, 1], points2[:, 0]))
    pts = points2[order]

    def build(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2:
                o, a, b = pts[out[-2]], pts[out[-1]], pts[i]
                if (a[0] - o[0]) * (b[1] - o[1]) - (b[0] - o[0]) * (a[1] - o[1]) <= 0.0:
                    out.pop()
                else:
                    break
            out.append(i)
        return out

    lower = build(range(n))
    upper = build(range(n - 1, -1, -1))
    ring = lower[:-1] + upper[:-1]
    if not ring:
        ring = [0]
    return order[np.array(ring)]


def _extreme_indices(P: np.ndarray) -> np.ndarray:
    """Indices of the extreme points of P (deduplicated input)."""
    n, d = P.shape
    if n <= 2:
        return np.arange(n)

    centroid = P.mean(axis=0)
    M = P - centroid
    svals = np.linalg.svd(M, compute_uv=False)
    if svals[0] <= 0.0:
        return np.array([0])
    rank_tol = svals[0] * max(n, d) * np.finfo(float).eps * 8.0
    rank = int((svals > rank_tol).sum())
    if rank == 0:
        return np.array([0])

    if rank == 1:
        _, _, Vt = np.linalg.svd(M, full_matrices=False)
        t = M @ Vt[0]
        lo, hi = int(np.argmin(t)), int(np.argmax(t))
        return np.array([lo]) if lo == hi else np.array([lo, hi])

    if rank == 2:
        if d == 2:
            coords = M
        else:
            _, _, Vt = np.linalg.svd(M, full_matrices=False)
            coords = M @ Vt[:2].T
        if n > 400:
            # qhull prefilter keeps the chain pass cheap on big inputs
            try:
                keep = np.unique(_Qhull(coords).vertices)
            except QhullError:
                keep = np.arange(n)
            return keep[_chain(coords[keep])]
        return _chain(coords)

    if rank == d:
        coords = M
    else:
        _, _, Vt = np.linalg.svd(M, full_matrices=False)
        coords = M @ Vt[:rank].T
    try:
        return np.unique(_Qhull(coords).vertices)
    except QhullError as exc:  # pragma: no cover - rank reduction should prevent this
        raise GeometryError(f"hull construction failed: {exc}") from exc


# ---------------------------------------------------------------------------
# construction and Minkowski arithmetic

def hull(points) -> ConvexBody:
    """Convex hull as a minimal extreme-vertex body.

    Idempotent: ``hull(body.vertices)`` reproduces the body.
    """
    P = _dedup(_as_points(points))
    if P.shape[1] == 1:
        lo, hi = float(P.min()), float(P.max())
        V = np.array([[lo]]) if lo == hi else np.array([[lo], [hi]])
        return ConvexBody(V)
    return ConvexBody(_canonical(P[_extreme_indices(P)]))


def minkowski_sum(a: ConvexBody, b: ConvexBody) -> ConvexBody:
    """Minkowski sum; support functions add: s_{A+B} = s_A + s_B."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot add bodies of dimension {a.dim} and {b.dim}")
    sums = (a.vertices[:, None, :] + b.vertices[None, :, :]).reshape(-1, a.dim)
    return hull(sums)


def scale(a: ConvexBody, lam: float) -> ConvexBody:
    """Scale a body by a nonnegative factor; lam = 0 gives the origin."""
    lam = float(lam)
    if lam < 0.0:
        raise GeometryError("negative scale factors (reflections) are not supported")
    if lam == 0.0:
        return ConvexBody(np.zeros((1, a.dim)))
    V = lam * a.vertices
    if lam < 1.0:
        V = _dedup(V)  # strong shrinking can push vertices inside the merge tolerance
    return ConvexBody(_canonical(V))


def translate(a: ConvexBody, t) -> ConvexBody:
    """Shift a body by the vector t."""
    t = _as_vector(t, a.dim)
    return ConvexBody(_canonical(a.vertices + t))


# ---------------------------------------------------------------------------
# support functions and faces

def support(a: ConvexBody, u) -> float:
    """Maximum of the linear functional u over the body."""
    u = _as_vector(u, a.dim)
    return float((a.vertices @ u).max())


def support_face(a: ConvexBody, u) -> FaceCertificate:
    """Argmax set of a nonzero functional, with exposure classification.

    All vertices within the relative tolerance of the maximum belong to
    the face.  The face's vertices are vertices of the body, hence the
    face body needs no re-hulling.
    """
    u = _as_vector(u, a.dim)
    norm = float(np.linalg.norm(u))
    if norm == 0.0:
        raise GeometryError("support face of the zero functional is undefined")
    f = u / norm
    vals = a.vertices @ f
    smax = float(vals.max())
    tol = FACE_REL_TOL * (1.0 + a.max_norm)
    face_vertices = a.vertices[vals >= smax - tol]
    face = ConvexBody(_canonical(face_vertices))
    exposed = face.vertex_count == 1
    f.setflags(write=False)
    facet_dir = None if exposed else f
    return FaceCertificate(direction=f, face=face, support_value=smax,
                           is_exposed=exposed, facet_direction=facet_dir)


def norm_gradient(x) -> np.ndarray:
    """Derivative of the Euclidean norm at x != 0, i.e. x normalized."""
    x = np.asarray(x, dtype=float).reshape(-1)
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise GeometryError("norm derivative is undefined at the origin")
    return x / norm


# ---------------------------------------------------------------------------
# nearest points and distances

def _affine_min_norm_coeffs(V: np.ndarray) -> np.ndarray:
    """Affine coefficients of the min-norm point in the affine hull of rows of V."""
    m = len(V)
    if m == 1:
        return np.array([1.0])
    G = V @ V.T
    A = np.zeros((m + 1, m + 1))
    A[:m, :m] = G
    A[:m, m] = 1.0
    A[m, :m] = 1.0
    rhs = np.zeros(m + 1)
    rhs[m] = 1.0
    try:
        sol = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError:
        sol = np.linalg.lstsq(A, rhs, rcond=None)[0]
    return sol[:m]


def _min_norm_point(P: np.ndarray) -> np.ndarray:
    """Min-norm point of conv(P) via Wolfe's corral algorithm.

    Terminates when the duality gap ||x||^2 - min_p <x, p> drops below
    the (scale-relative) gap tolerance; the iteration cap is
    10 * n * d, exceeding it raises :class:`ConvergenceError`.
    """
    n, d = P.shape
    norms2 = (P ** 2).sum(axis=1)
    gap_tol = MIN_NORM_GAP_TOL * (1.0 + float(norms2.max()))
    start = int(np.argmin(norms2))
    corral = [start]
    lam = np.array([1.0])
    x = P[start].astype(float)
    cap = max(10 * n * d, 16)

    for _ in range(cap):
        dots = P @ x
        j = int(np.argmin(dots))
        gap = float(x @ x - dots[j])
        if gap <= gap_tol or j in corral:
            return x
        corral.append(j)
        lam = np.append(lam, 0.0)
        while True:
            V = P[corral]
            alpha = _affine_min_norm_coeffs(V)
            if np.all(alpha > 1e-12):
                lam = alpha
                x = V.T @ alpha
                break
            neg = alpha <= 1e-12
            denom = lam[neg] - alpha[neg]
            valid = denom > 1e-300
            if not np.any(valid):
                return x  # numerically stalled; x is optimal to round-off
            theta = float(np.min(lam[neg][valid] / denom[valid]))
            lam = lam + theta * (alpha - lam)
            lam[lam < 1e-12] = 0.0
            keep = lam > 0.0
            if not np.any(keep):
                keep[int(np.argmax(alpha))] = True
                lam[keep] = 1.0
            corral = [corral[i] for i in range(len(corral)) if keep[i]]
            lam = lam[keep]
            lam = lam / lam.sum()
            x = P[corral].T @ lam
    raise ConvergenceError(f"min-norm solver did not converge within {cap} iterations")


def nearest_point(a: ConvexBody, x) -> np.ndarray:
    """Euclidean projection of x onto the body (unique by strict convexity)."""
    x = _as_vector(x, a.dim)
    z = _min_norm_point(a.vertices - x)
    return x + z


def point_distance(a: ConvexBody, x) -> float:
    """Distance from x to the body; zero iff x lies inside."""
    x = _as_vector(x, a.dim)
    z = _min_norm_point(a.vertices - x)
    return float(np.linalg.norm(z))


def deviation(a: ConvexBody, b: ConvexBody) -> float:
    """One-sided deviation of a from b: farthest a-point from b.

    d(., b) is convex, so its maximum over a is attained at a vertex.
    """
    if a.dim != b.dim:
        raise DimensionMismatch("deviation requires equal dimensions")
    return max(point_distance(b, v) for v in a.vertices)


def hausdorff(a: ConvexBody, b: ConvexBody) -> float:
    """Hausdorff distance: the larger of the two one-sided deviations."""
    return max(deviation(a, b), deviation(b, a))


@lru_cache(maxsize=32)
def _sphere_grid_cached(dim: int, m: int) -> np.ndarray:
    if dim == 1:
        grid = np.array([[1.0], [-1.0]])
    elif dim == 2:
        theta = 2.0 * np.pi * np.arange(m) / m
        grid = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    elif dim == 3:
        k = np.arange(m)
        z = 1.0 - (2.0 * k + 1.0) / m
        r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        golden = np.pi * (3.0 - np.sqrt(5.0))
        grid = np.stack([r * np.cos(golden * k), r * np.sin(golden * k), z], axis=1)
    else:
        raise GeometryError(f"direction grids are only generated for dimension <= 3, got {dim}")
    grid.setflags(write=False)
    return grid


def sphere_grid(dim: int, m: int) -> np.ndarray:
    """Deterministic unit-direction grid: uniform angles (2-D), Fibonacci sphere (3-D)."""
    if m < 1:
        raise GeometryError("grid size must be positive")
    return _sphere_grid_cached(int(dim), int(m))


def hausdorff_via_support(a: ConvexBody, b: ConvexBody, m: int) -> float:
    """Hausdorff distance approximated by max |s_A - s_B| over a direction grid.

    Never exceeds the exact value for convex inputs and converges to it
    as the grid is refined.
    """
    if a.dim != b.dim:
        raise DimensionMismatch("support comparison requires equal dimensions")
    if m < 8:
        raise GeometryError("direction grid needs at least 8 points")
    grid = sphere_grid(a.dim, m)
    sa = (grid @ a.vertices.T).max(axis=1)
    sb = (grid @ b.vertices.T).max(axis=1)
    return float(np.abs(sa - sb).max())


# ---------------------------------------------------------------------------
# facet classification

def _affine_rank(V: np.ndarray) -> int:
    if len(V) <= 1:
        return 0
    M = V - V[0]
    svals = np.linalg.svd(M, compute_uv=False)
    if svals[0] <= 0.0:
        return 0
    tol = svals[0] * max(M.shape) * np.finfo(float).eps * 8.0
    return int((svals > tol).sum())


def _relative_boundary_distance(face: ConvexBody, k: np.ndarray) -> float:
    """Distance from a point of the face to the face's relative boundary.

    Supports faces of affine dimension 1 (segments) and 2 (polygons);
    higher-dimensional faces do not occur for bodies of dimension <= 3.
    """
    V = face.vertices
    rank = _affine_rank(V)
    if rank == 1:
        return float(min(np.linalg.norm(k - V[0]), np.linalg.norm(k - V[-1])))
    if rank == 2:
        origin = V[0]
        _, _, Vt = np.linalg.svd(V - origin, full_matrices=False)
        basis = Vt[:2]
        V2 = (V - origin) @ basis.T
        k2 = (k - origin) @ basis.T
        ring = V2[_chain(V2)]
        dists = []
        for i in range(len(ring)):
            p, q = ring[i], ring[(i + 1) % len(ring)]
            dists.append(_point_segment_distance(k2, p, q))
        return float(min(dists))
    raise NotImplementedError("relative boundary only implemented for faces of affine dimension <= 2")


def _point_segment_distance(p, a, b) -> float:
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0.0 else float(np.clip((p - a) @ ab / denom, 0.0, 1.0))
    return float(np.linalg.norm(a + t * ab - p))


def is_facet_at(a: ConvexBody, k, f) -> bool:
    """Whether the support face of f has affine dimension >= 1 and contains
    k in its relative interior (margin of 1e-6 times the diameter)."""
    k = _as_vector(k, a.dim)
    membership_tol = MEMBERSHIP_REL * (1.0 + a.max_norm)
    if point_distance(a, k) > membership_tol:
        raise GeometryError("query point lies outside the body")
    cert = support_face(a, f)
    if cert.face.vertex_count < 2:
        return False
    margin = FACET_REL_MARGIN * a.diameter
    if point_distance(cert.face, k) > max(membership_tol, margin):
        return False
    return _relative_boundary_distance(cert.face, k) > margin


# ---------------------------------------------------------------------------
# Shapley-Folkman gap

def shapley_folkman_gap(sets: Sequence) -> tuple[float, float]:
    """Gap between the averaged raw sum of finite sets and its convexification.

    The raw Minkowski sum is enumerated exhaustively; the gap is the
    exact Hausdorff distance between the scaled raw sum and its convex
    hull (a covering-radius computation).  The bound is
    sqrt(d)/N * max_i max_{p in K_i} ||p||, and gap <= bound always.
    """
    arrays = [_as_points(s) for s in sets]
    if not arrays:
        raise GeometryError("need at least one point set")
    d = arrays[0].shape[1]
    for s in arrays:
        if s.shape[1] != d:
            raise DimensionMismatch("all point sets must share one dimension")
    n_sets = len(arrays)

    raw = np.zeros((1, d))
    for s in arrays:
        raw = (raw[:, None, :] + s[None, :, :]).reshape(-1, d)
        raw = np.unique(raw, axis=0)
    scaled = raw / n_sets

    hull_body = hull(scaled)
    gap = _covering_radius(scaled, hull_body)
    max_set_norm = max(float(np.sqrt((s ** 2).sum(axis=1)).max()) for s in arrays)
    bound = math.sqrt(d) / n_sets * max_set_norm
    return gap, bound


def _covering_radius(sites: np.ndarray, hull_body: ConvexBody) -> float:
    """Exact max over conv(sites) of the distance to the nearest site."""
    n, d = sites.shape
    if n == 1:
        return 0.0
    centroid = sites.mean(axis=0)
    M = sites - centroid
    svals = np.linalg.svd(M, compute_uv=False)
    if svals[0] <= 0.0:
        return 0.0
    rank_tol = svals[0] * max(M.shape) * np.finfo(float).eps * 8.0
    rank = int((svals > rank_tol).sum())
    if rank == 0:
        return 0.0
    _, _, Vt = np.linalg.svd(M, full_matrices=False)
    if rank == 1:
        t = np.sort(M @ Vt[0])
        return float(np.diff(t).max() / 2.0)
    if rank == 2:
        basis = Vt[:2]
        sites2 = M @ basis.T
        ring2 = (hull_body.vertices - centroid) @ basis.T
        ring2 = ring2[_chain(ring2)]
        return _covering_radius_2d(sites2, ring2)
    raise NotImplementedError("covering radius only implemented for point sets of affine dimension <= 2")


def _covering_radius_2d(sites: np.ndarray, ring: np.ndarray) -> float:
    """Largest empty circle centered in the convex ring, sites as obstacles.

    Candidate centers are the circumcenters of site triples (interior
    local maxima) and the crossings of site-pair bisectors with the ring
    edges (boundary local maxima); evaluating the nearest-site distance
    at each candidate is exact.
    """
    n = len(sites)
    tree = cKDTree(sites)
    scale_len = 1.0 + float(np.abs(sites).max())
    candidates = []

    if n <= 12:
        pair_idx = np.array(list(itertools.combinations(range(n), 2)))
        interior = []
        for i, j, k in itertools.combinations(range(n), 3):
            c = _circumcenter(sites[i], sites[j], sites[k], scale_len)
            if c is not None:
                interior.append(c)
        interior = np.array(interior) if interior else np.empty((0, 2))
    else:
        vor = Voronoi(sites)
        pair_idx = vor.ridge_points
        interior = vor.vertices

    if len(interior):
        candidates.append(interior[_inside_ring(interior, ring)])

    # bisector lines of site pairs crossed with each ring edge
    a = sites[pair_idx[:, 0]]
    b = sites[pair_idx[:, 1]]
    normals = b - a
    consts = ((b ** 2).sum(axis=1) - (a ** 2).sum(axis=1)) / 2.0
    m = len(ring)
    for i in range(m):
        e0, e1 = ring[i], ring[(i + 1) % m]
        delta = e1 - e0
        den = normals @ delta
        num = consts - normals @ e0
        ok = np.abs(den) > 1e-300
        t = num[ok] / den[ok]
        on_edge = (t >= 0.0) & (t <= 1.0)
        if np.any(on_edge):
            candidates.append(e0 + t[on_edge, None] * delta)

    if not candidates:
        return 0.0
    points = np.vstack(candidates)
    if len(points) == 0:
        return 0.0
    dists, _ = tree.query(points)
    return float(dists.max())


def _circumcenter(p, q, r, scale_len: float):
    A = 2.0 * np.array([q - p, r - p])
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    if abs(det) <= 1e-14 * scale_len * scale_len:
        return None
    rhs = np.array([q @ q - p @ p, r @ r - p @ p])
    return np.linalg.solve(A, rhs)


def _inside_ring(points: np.ndarray, ring: np.ndarray) -> np.ndarray:
    """Boolean mask of points inside a counterclockwise convex ring."""
    if len(ring) == 1:
        return np.zeros(len(points), dtype=bool)
    tol = 1e-12 * (1.0 + float(np.abs(ring).max()))
    inside = np.ones(len(points), dtype=bool)
    m = len(ring)
    for i in range(m):
        v0, v1 = ring[i], ring[(i + 1) % m]
        edge = v1 - v0
        rel = points - v0
        cross = edge[0] * rel[:, 1] - edge[1] * rel[:, 0]
        inside &= cross >= -tol
    return inside


# ---------------------------------------------------------------------------
# comparison helper used throughout the tests

def same_body(a: ConvexBody, b: ConvexBody, tol: float = 1e-9) -> bool:
    """Equality of minimal representations up to a tolerance."""
    if a.dim != b.dim or a.vertex_count != b.vertex_count:
        return False
    return hausdorff(a, b) <= tol
