"""Simplicial complexes: polygon diagonal complexes, joins, stellar
subdivisions, and Stanley-Reisner ideal extraction.

A complex is stored by its facets (inclusion-maximal faces); faces and
non-faces are enumerated on demand and memoized, which is fine at the
target sizes (at most a few dozen vertices).  The empty complex here is
{emptyset}, the (-1)-dimensional simplex, so joins behave as identities
on it.
"""

from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple

from .poly import Monomial, Variable, ring


class VertexLabel(NamedTuple):
    """Label kinds: 'd' diagonal (i,j), 'e' polygon edge (i,j), 'w'
    suspension point w_i, 'v' the stellar vertex, 'free' simplex vertex."""

    kind: str
    i: int = 0
    j: int = 0

    def text(self) -> str:
        if self.kind == "d":
            return f"d[{self.i},{self.j}]"
        if self.kind == "e":
            return f"e[{self.i},{self.j}]"
        if self.kind == "w":
            return f"w{self.i}"
        if self.kind == "v":
            return "v"
        return f"free[{self.i}]"

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return self.text()


def diagonal(i: int, j: int, n: int | None = None) -> VertexLabel:
    if i >= j:
        raise ValueError(f"diagonal needs i < j, got ({i},{j})")
    if n is not None and not (2 <= j - i <= n - 2 and (i, j) != (1, n)):
        raise ValueError(f"({i},{j}) is not a diagonal of the {n}-gon")
    return VertexLabel("d", i, j)


def w_point(k: int) -> VertexLabel:
    if k not in (1, 2):
        raise ValueError("suspension points are w1 and w2")
    return VertexLabel("w", k)


def stellar_vertex() -> VertexLabel:
    return VertexLabel("v")


def free_vertex(k: int) -> VertexLabel:
    return VertexLabel("free", k)


def parse_label(token: str) -> VertexLabel:
    token = token.strip()
    if token == "v":
        return stellar_vertex()
    if token in ("w1", "w2"):
        return w_point(int(token[1]))
    for kind in ("d", "e"):
        if token.startswith(kind + "["):
            inner = token[len(kind) + 1 : -1]
            i, j = (int(t) for t in inner.split(","))
            return VertexLabel(kind, i, j)
    if token.startswith("free["):
        return free_vertex(int(token[5:-1]))
    raise ValueError(f"unrecognized vertex label {token!r}")


def _label_key(v):
    if isinstance(v, VertexLabel):
        return ("VertexLabel", v.kind, v.i, v.j)
    if isinstance(v, int):
        return ("int", v, 0)
    if isinstance(v, str):
        return ("str", v, 0)
    return (type(v).__name__, repr(v), 0)


def _sorted_labels(labels) -> tuple:
    return tuple(sorted(labels, key=_label_key))


def _facet_key(f) -> tuple:
    return (len(f), tuple(map(_label_key, _sorted_labels(f))))


class SimplicialComplex:
    """Abstract simplicial complex given by facets over hashable labels."""

    def __init__(self, facets: Iterable[Iterable], vertices: Iterable = ()):
        fams = [frozenset(f) for f in facets]
        fams.append(frozenset())  # ensure the empty face exists
        for v in vertices:
            fams.append(frozenset((v,)))
        maximal: list[frozenset] = []
        for f in sorted(set(fams), key=len, reverse=True):
            if not any(f < g for g in maximal):
                maximal.append(f)
        self.facets: tuple[frozenset, ...] = tuple(sorted(maximal, key=_facet_key))
        self.vertices: tuple = _sorted_labels(set().union(*self.facets)) if self.facets else ()
        self._faces: frozenset | None = None

    # -- queries --------------------------------------------------------

    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        sizes = {len(f) for f in self.facets}
        return len(sizes) == 1

    def faces(self) -> frozenset:
        if self._faces is None:
            out = set()
            for f in self.facets:
                fl = tuple(f)
                for r in range(len(fl) + 1):
                    out.update(map(frozenset, itertools.combinations(fl, r)))
            self._faces = frozenset(out)
        return self._faces

    def has_face(self, s: Iterable) -> bool:
        s = frozenset(s)
        return any(s <= f for f in self.facets)

    def f_vector(self) -> tuple[int, ...]:
        """Face counts by cardinality, starting with the empty face."""
        counts: dict[int, int] = {}
        for f in self.faces():
            counts[len(f)] = counts.get(len(f), 0) + 1
        return tuple(counts.get(k, 0) for k in range(max(counts) + 1))

    def euler_characteristic(self) -> int:
        """Unreduced Euler characteristic (reduced alternating sum + 1)."""
        f = self.f_vector()
        return sum((-1) ** (k - 1) * f[k] for k in range(1, len(f)))

    def is_pseudomanifold(self) -> bool:
        """Purity plus: every ridge lies in exactly two facets."""
        if not self.is_pure() or self.dim() < 1:
            return False
        ridge_count: dict[frozenset, int] = {}
        for f in self.facets:
            for v in f:
                r = f - {v}
                ridge_count[r] = ridge_count.get(r, 0) + 1
        return all(c == 2 for c in ridge_count.values())

    def minimal_nonfaces(self) -> list[frozenset]:
        """Inclusion-minimal subsets of the vertex set that are not faces."""
        faces = self.faces()
        out: list[frozenset] = []
        max_face = max(len(f) for f in faces)
        for k in range(2, max_face + 2):
            sizes_ok = any(len(f) == k - 1 for f in faces)
            if not sizes_ok:
                break
            for cand in itertools.combinations(self.vertices, k):
                cs = frozenset(cand)
                if cs in faces:
                    continue
                if any(set(nf) <= cs for nf in out):
                    continue
                if all(cs - {v} in faces for v in cand):
                    out.append(cs)
        out.sort(key=lambda s: (len(s), tuple(map(_label_key, _sorted_labels(s)))))
        return out

    def relabel(self, mapping) -> "SimplicialComplex":
        return SimplicialComplex([{mapping[v] for v in f} for f in self.facets])

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and set(self.facets) == set(other.facets)

    def __hash__(self):
        return hash(frozenset(self.facets))

    def __repr__(self) -> str:
        return (
            f"SimplicialComplex({len(self.vertices)} vertices, "
            f"{len(self.facets)} facets, dim {self.dim()})"
        )


def simplex(labels: Iterable) -> SimplicialComplex:
    """The full simplex on the given labels ({emptyset} when none)."""
    return SimplicialComplex([frozenset(labels)])


def sphere_zero() -> SimplicialComplex:
    """Two suspension points w1, w2 with no edge."""
    return SimplicialComplex([{w_point(1)}, {w_point(2)}])


def polygon_diagonals(n: int) -> list[VertexLabel]:
    return [
        diagonal(i, j)
        for i in range(1, n + 1)
        for j in range(i + 2, n + 1)
        if (i, j) != (1, n)
    ]


def crossing(d1: VertexLabel, d2: VertexLabel) -> bool:
    i, j = d1.i, d1.j
    k, l = d2.i, d2.j
    return (i < k < j < l) or (k < i < l < j)


def associahedron(n: int) -> SimplicialComplex:
    """Complex of pairwise non-crossing diagonal sets of the n-gon.

    Facets are the triangulations (n-3 diagonals each); the complex is
    pure of dimension n-4.
    """
    if n < 3:
        raise ValueError(f"the polygon complex needs n >= 3, got {n}")
    diags = polygon_diagonals(n)
    target = n - 3
    facets: list[frozenset] = []

    def extend(start: int, chosen: list[VertexLabel]):
        if len(chosen) == target:
            facets.append(frozenset(chosen))
            return
        for idx in range(start, len(diags)):
            d = diags[idx]
            if all(not crossing(d, c) for c in chosen):
                chosen.append(d)
                extend(idx + 1, chosen)
                chosen.pop()

    extend(0, [])
    return SimplicialComplex(facets, vertices=diags)


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join of complexes on disjoint label sets: facets are unions of facets."""
    overlap = set(K.vertices) & set(L.vertices)
    if overlap:
        raise ValueError(f"join requires disjoint vertex labels, shared: {sorted(map(repr, overlap))}")
    return SimplicialComplex([f | g for f in K.facets for g in L.facets])


def stellar_subdivision(K: SimplicialComplex, face: Iterable, new_label) -> SimplicialComplex:
    """Subdivide at the given face: facets not containing it survive, and
    each facet F containing it is replaced by (F - {p}) + new vertex for
    every p in the face."""
    f = frozenset(face)
    if not K.has_face(f):
        raise ValueError("can only subdivide at a face of the complex")
    if len(f) < 2:
        raise ValueError("stellar subdivision here requires a face of dimension >= 1")
    if new_label in K.vertices:
        raise ValueError(f"new vertex label {new_label!r} already present")
    facets = [F for F in K.facets if not f <= F]
    for F in K.facets:
        if f <= F:
            for p in f:
                facets.append((F - {p}) | {new_label})
    return SimplicialComplex(facets)


def kn_complex(n: int) -> SimplicialComplex:
    """Stellar subdivision of (polygon complex) * S^0 at the edge spanned by
    the diagonal (1, n-1) and w1; pure of dimension n-3 and flag."""
    if n < 5:
        raise ValueError(f"this complex needs n >= 5, got {n}")
    base = join(associahedron(n), sphere_zero())
    return stellar_subdivision(base, {diagonal(1, n - 1), w_point(1)}, stellar_vertex())


def standard_labeling(n: int) -> dict[VertexLabel, Variable]:
    """Vertex-to-variable assignment: diagonals to x[i,j], w1 to y[1],
    the stellar vertex to y[n], and w2 to x[1,n]."""
    R = ring(n)
    lab: dict[VertexLabel, Variable] = {}
    for d in polygon_diagonals(n):
        lab[d] = R.xvar(d.i, d.j)
    lab[w_point(1)] = R.y(1)
    lab[w_point(2)] = R.xvar(1, n)
    lab[stellar_vertex()] = R.y(n)
    return lab


def stanley_reisner_ideal(K: SimplicialComplex, labeling) -> list[Monomial]:
    """Squarefree monomial generators, one per minimal non-face."""
    values = list(labeling.values())
    if len(set(values)) != len(values):
        raise ValueError("labeling must be injective")
    out = []
    for nf in K.minimal_nonfaces():
        vars_ = [labeling[v] for v in nf]
        R = ring(vars_[0].n)
        out.append(R.monomial([(v, 1) for v in vars_]))
    return sorted(out, key=lambda m: (m.degree, m.exps))


def complex_from_nonfaces(vertices: Iterable, nonfaces: Iterable[Iterable]) -> SimplicialComplex:
    """Reconstruct the complex whose minimal non-faces are given.

    Exhaustive over subsets of the vertex set; intended for moderate
    vertex counts (guarded at 2^22 subsets).
    """
    verts = _sorted_labels(set(vertices))
    if len(verts) > 22:
        raise ValueError("vertex set too large for exhaustive reconstruction")
    nf_masks = []
    index = {v: k for k, v in enumerate(verts)}
    for nf in nonfaces:
        mask = 0
        for v in nf:
            mask |= 1 << index[v]
        nf_masks.append(mask)
    faces = []
    for mask in range(1 << len(verts)):
        if all(mask & nf != nf for nf in nf_masks):
            faces.append(mask)
    face_set = set(faces)
    facets = []
    for mask in faces:
        if not any(
            other != mask and other & mask == mask for other in face_set
        ):
            facets.append(frozenset(verts[k] for k in range(len(verts)) if mask >> k & 1))
    return SimplicialComplex(facets)


# -- serialization --------------------------------------------------------


def format_complex(K: SimplicialComplex) -> str:
    """Newline-separated facets, labels space-separated within a line."""
    lines = []
    for f in K.facets:
        labels = _sorted_labels(f)
        lines.append(" ".join(_label_text(v) for v in labels) if labels else "-")
    return "\n".join(lines) + "\n"


def _label_text(v) -> str:
    return v.text() if isinstance(v, VertexLabel) else str(v)


def parse_label_list(text: str) -> list[VertexLabel]:
    """Comma- or space-separated labels; commas inside brackets are fine."""
    tokens = text.replace(",", " ").split()
    merged = []
    buf = ""
    for tok in tokens:
        buf = tok if not buf else buf + "," + tok
        if buf.count("[") == buf.count("]"):
            merged.append(buf)
            buf = ""
    if buf:
        raise ValueError(f"unbalanced label brackets in {text!r}")
    return [parse_label(t) for t in merged]


def parse_complex(text: str) -> SimplicialComplex:
    facets = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if body == "-":
            facets.append(frozenset())
            continue
        facets.append(frozenset(parse_label_list(body)))
    return SimplicialComplex(facets)


def complex_to_json(K: SimplicialComplex) -> dict:
    return {
        "vertices": [_label_text(v) for v in K.vertices],
        "facets": [
            [_label_text(v) for v in _sorted_labels(f)] for f in K.facets
        ],
        "f_vector": list(K.f_vector()),
    }
