"""Exact lower-hull computation, triangulation extraction, complex
isomorphism search, and the reflexivity check.

All arithmetic is integer-exact: supporting hyperplanes are enumerated
brute-force over affinely independent d-subsets of the point set (fine at
the target size of 13 points in dimension 5), normals come from integer
kernels, and unimodularity uses exact determinants.  Point indices are
0-based throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import SimplicialComplex, _label_key
from .linalg import det_int, integer_kernel_basis, primitive_vector, rank_of_rows


Point = tuple[int, ...]


@dataclass
class LatticePolytope:
    """Distinct integer points with their affine rank recorded."""

    points: list[Point]

    def __post_init__(self):
        self.points = [tuple(int(c) for c in p) for p in self.points]
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be pairwise distinct")
        if not self.points:
            raise ValueError("a polytope needs at least one point")
        self.dimension = len(self.points[0])
        if any(len(p) != self.dimension for p in self.points):
            raise ValueError("points must share a dimension")
        self.affine_rank = _affine_rank(self.points)

    def is_full_dimensional(self) -> bool:
        return self.affine_rank == self.dimension


def _affine_rank(points: list[Point]) -> int:
    base = points[0]
    rows = [
        {k: p[k] - base[k] for k in range(len(base)) if p[k] != base[k]}
        for p in points[1:]
    ]
    return rank_of_rows(rows)


def _supporting_hyperplanes(points: list[Point], d: int):
    """All supporting hyperplanes, oriented so a.p >= c for every point.

    Yields (normal, offset, on_set) with primitive integral normal;
    duplicates (the same hyperplane from different spanning subsets) are
    removed.
    """
    seen = set()
    for subset in itertools.combinations(range(len(points)), d):
        base = points[subset[0]]
        diffs = [
            [points[k][a] - base[a] for a in range(d)] for k in subset[1:]
        ]
        kernel = integer_kernel_basis(diffs)
        if len(kernel) != 1:
            continue  # not affinely independent (or degenerate)
        normal = primitive_vector(kernel[0])
        c = sum(n * b for n, b in zip(normal, base))
        vals = [sum(n * p[a] for a, n in enumerate(normal)) for p in points]
        if all(v >= c for v in vals):
            pass
        elif all(v <= c for v in vals):
            normal = [-n for n in normal]
            c = -c
            vals = [-v for v in vals]
        else:
            continue
        key = (tuple(normal), c)
        if key in seen:
            continue
        seen.add(key)
        on = frozenset(k for k, v in enumerate(vals) if v == c)
        yield tuple(normal), c, on


def lower_facet_records(points, height: int | None = None):
    """Supporting hyperplanes visible from below along the height coordinate.

    The outer normal of a facet written as a.p >= c is -a; a lower facet
    is one whose outer normal has negative height component, i.e. the
    height entry of a is positive.
    """
    poly = LatticePolytope(list(points))
    if not poly.is_full_dimensional():
        raise ValueError(
            f"points span affine dimension {poly.affine_rank} < {poly.dimension}"
        )
    d = poly.dimension
    if len(poly.points) < d + 1:
        raise ValueError(f"need at least {d + 1} points, got {len(poly.points)}")
    h = d - 1 if height is None else height
    records = [
        {"normal": normal, "offset": c, "facet": on}
        for normal, c, on in _supporting_hyperplanes(poly.points, d)
        if normal[h] > 0
    ]
    records.sort(key=lambda r: sorted(r["facet"]))
    return records


def lower_facets(points, height: int | None = None) -> list[frozenset[int]]:
    """Point-index sets of the lower facets (0-based indices)."""
    return [r["facet"] for r in lower_facet_records(points, height)]


def common_face_check(points, records) -> bool:
    """Pairwise: the points of one facet lying on the other's hyperplane are
    exactly the shared points (facets meet in common faces)."""
    for r1, r2 in itertools.combinations(records, 2):
        shared = r1["facet"] & r2["facet"]
        for a, b in ((r1, r2), (r2, r1)):
            on_other = {
                k
                for k in a["facet"]
                if sum(n * points[k][i] for i, n in enumerate(b["normal"])) == b["offset"]
            }
            if on_other != shared:
                return False
    return True


def triangulation_complex(points, facets, height: int | None = None):
    """Project away the height coordinate and return the abstract complex on
    point indices, plus the unimodularity verdict.

    Every facet must be a simplex (d points in ambient dimension d) and
    the projected points must be distinct; unimodularity means the edge
    vectors out of a base vertex have determinant +-1 after projection.
    """
    pts = [tuple(int(c) for c in p) for p in points]
    d = len(pts[0])
    h = d - 1 if height is None else height
    projected = [tuple(c for a, c in enumerate(p) if a != h) for p in pts]
    if len(set(projected)) != len(projected):
        raise ValueError("projected points are not distinct")
    unimodular = True
    for f in facets:
        f = sorted(f)
        if len(f) != d:
            raise ValueError(
                f"facet {f} has {len(f)} points; the lower hull is not a triangulation"
            )
        base = projected[f[0]]
        mat = [
            [projected[k][a] - base[a] for a in range(d - 1)] for k in f[1:]
        ]
        if abs(det_int(mat)) != 1:
            unimodular = False
    complex_ = SimplicialComplex([frozenset(f) for f in facets])
    return complex_, projected, unimodular


# -- isomorphism search ------------------------------------------------------


def _vertex_invariants(K: SimplicialComplex):
    inv = {}
    adjacency = {v: set() for v in K.vertices}
    for f in K.facets:
        for v in f:
            for w in f:
                if v != w:
                    adjacency[v].add(w)
    for v in K.vertices:
        sizes = tuple(sorted(len(f) for f in K.facets if v in f))
        inv[v] = (sizes, len(adjacency[v]))
    return inv, adjacency


def complexes_isomorphic(K: SimplicialComplex, L: SimplicialComplex):
    """Backtracking search for a facet-preserving vertex bijection.

    Returns a mapping K-vertex -> L-vertex, or None when no bijection
    exists (the search is exhaustive over invariant-compatible maps).
    """
    if len(K.vertices) != len(L.vertices) or len(K.facets) != len(L.facets):
        return None
    if sorted(len(f) for f in K.facets) != sorted(len(f) for f in L.facets):
        return None
    inv_k, adj_k = _vertex_invariants(K)
    inv_l, adj_l = _vertex_invariants(L)
    candidates = {
        v: [w for w in L.vertices if inv_l[w] == inv_k[v]] for v in K.vertices
    }
    if any(not c for c in candidates.values()):
        return None
    order = sorted(K.vertices, key=lambda v: (len(candidates[v]), _label_key(v)))
    l_facets = set(L.facets)
    mapping: dict = {}
    used: set = set()

    def feasible(v, w) -> bool:
        for u, x in mapping.items():
            if (u in adj_k[v]) != (x in adj_l[w]):
                return False
        return True

    def extend(pos: int) -> bool:
        if pos == len(order):
            image = {frozenset(mapping[u] for u in f) for f in K.facets}
            return image == l_facets
        v = order[pos]
        for w in candidates[v]:
            if w in used or not feasible(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(pos + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


# -- reflexivity --------------------------------------------------------------


def polytope_facets(points):
    """All facet inequalities a.p >= c of the hull, primitive normals."""
    poly = LatticePolytope(list(points))
    if not poly.is_full_dimensional():
        raise ValueError("reflexivity needs a full-dimensional polytope")
    return [
        (normal, c)
        for normal, c, _ in _supporting_hyperplanes(poly.points, poly.dimension)
    ]


def reflexivity_check(points) -> bool:
    """True when every facet inequality is a.p >= -1 with primitive integral
    normal; requires the origin strictly inside."""
    facets = polytope_facets(points)
    if any(c >= 0 for _, c in facets):
        raise ValueError("the origin is not interior to the polytope")
    return all(c == -1 for _, c in facets)


# -- the built-in 13-point dataset -------------------------------------------

_K6_MATRIX = [
    [1, 1, 0, -1, 0, 1, 0, 0, -1, 0, 0, 1, 0],
    [0, -1, 1, 1, 1, 1, 2, -1, -1, 0, 0, -1, 0],
    [0, 0, 0, 0, -1, -1, -1, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 1, 0],
    [2, 4, 4, 4, 4, 3, 4, 3, 4, 4, 4, 4, 0],
]


def k6_polytope_points() -> list[Point]:
    """Columns of the built-in 5x13 matrix: the lift whose lower-facet
    triangulation realizes the subdivided suspension complex for n=6
    joined with a point."""
    rows = _K6_MATRIX
    return [tuple(rows[r][c] for r in range(5)) for c in range(13)]


def parse_points_text(text: str) -> list[Point]:
    """Plain-text matrix: whitespace-separated integer rows; columns are points."""
    rows = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if body:
            rows.append([int(t) for t in body.split()])
    if not rows:
        raise ValueError("no matrix rows found")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("matrix rows have unequal lengths")
    return [tuple(r[c] for r in rows) for c in range(width)]


def points_from_json(obj) -> list[Point]:
    if not isinstance(obj, dict) or "points" not in obj:
        raise ValueError("JSON polytope input needs a 'points' field")
    return [tuple(int(c) for c in p) for p in obj["points"]]
