"""Vectors of polynomials and division in free modules.

Elements of S^m are tuples of polynomials.  The term order is
position-over-term: leading data is the pair (position, monomial) with
e_0 > e_1 > ... and ties broken by the underlying ring order.  Division
follows the same deterministic first-divisor convention as the scalar
reducer.  A degree-truncated Buchberger completion is provided; for the
homogeneous degree-3 syzygy vectors used here the truncation at their own
degree reduces to leading-term echelonization, which is all membership
needs.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .orders import MonomialOrder
from .poly import Monomial, Polynomial, Ring


class VectorPolynomial:
    """Element of a free module S^m with generator-degree shifts."""

    __slots__ = ("ring", "coords")

    def __init__(self, R: Ring, coords: Sequence[Polynomial]):
        self.ring = R
        self.coords = tuple(coords)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VectorPolynomial)
            and self.ring is other.ring
            and self.coords == other.coords
        )

    def __add__(self, other: "VectorPolynomial") -> "VectorPolynomial":
        return VectorPolynomial(self.ring, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "VectorPolynomial") -> "VectorPolynomial":
        return VectorPolynomial(self.ring, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "VectorPolynomial":
        return VectorPolynomial(self.ring, [-a for a in self.coords])

    def term_mul(self, coeff, monomial: Monomial) -> "VectorPolynomial":
        return VectorPolynomial(
            self.ring, [c.term_mul(coeff, monomial) for c in self.coords]
        )

    def degree(self, shifts: Sequence[int]) -> int:
        degs = [
            c.total_degree() + s for c, s in zip(self.coords, shifts) if not c.is_zero()
        ]
        return max(degs) if degs else -1

    def leading(self, order: MonomialOrder) -> tuple[int, Monomial, object]:
        """(position, monomial, coefficient): smallest position wins, then
        the ring order on monomials."""
        for pos, c in enumerate(self.coords):
            if not c.is_zero():
                m, coeff = c.leading(order)
                return pos, m, coeff
        raise ValueError("the zero vector has no leading term")

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"VectorPolynomial({list(self.coords)!r})"


def vector_from_coefficients(R: Ring, coeffs: Sequence[Polynomial]) -> VectorPolynomial:
    return VectorPolynomial(R, coeffs)


def reduce_vector(
    v: VectorPolynomial, basis: Sequence[VectorPolynomial], order: MonomialOrder
) -> VectorPolynomial:
    """Full remainder of v under division by the basis (position-over-term)."""
    leads = [b.leading(order) for b in basis]
    by_pos: dict[int, list[int]] = {}
    for idx, (pos, _, _) in enumerate(leads):
        by_pos.setdefault(pos, []).append(idx)
    key = order.key
    rem_coords = [dict() for _ in v.coords]
    work = [dict(c.terms) for c in v.coords]

    def live_positions():
        return [p for p, t in enumerate(work) if t]

    while True:
        live = live_positions()
        if not live:
            break
        pos = live[0]
        terms = work[pos]
        m = max(terms, key=key)
        c = terms.pop(m)
        hit = None
        for idx in by_pos.get(pos, ()):
            u = m.div(leads[idx][1])
            if u is not None:
                hit = (idx, u)
                break
        if hit is None:
            rem_coords[pos][m] = rem_coords[pos].get(m, 0) + c
            if not rem_coords[pos][m]:
                del rem_coords[pos][m]
            continue
        idx, u = hit
        q = c / leads[idx][2]
        for p2, coord in enumerate(basis[idx].coords):
            if coord.is_zero():
                continue
            target = work[p2]
            for mm, cc in coord.terms.items():
                if p2 == pos and mm == leads[idx][1]:
                    continue
                t = mm.mul(u)
                s = target.get(t)
                s = -q * cc if s is None else s - q * cc
                if s:
                    target[t] = s
                elif t in target:
                    del target[t]
    R = v.ring
    return VectorPolynomial(R, [Polynomial(R, dict(t)) for t in rem_coords])


def interreduce(vectors: Sequence[VectorPolynomial], order: MonomialOrder) -> list[VectorPolynomial]:
    """Echelonize by leading terms: repeatedly reduce each vector by the
    others until every nonzero vector has a distinct irreducible lead."""
    current = [v for v in vectors if not v.is_zero()]
    changed = True
    while changed:
        changed = False
        nxt: list[VectorPolynomial] = []
        for i, v in enumerate(current):
            others = nxt + current[i + 1 :]
            if not others:
                nxt.append(v)
                continue
            red = reduce_vector(v, others, order)
            if red.is_zero():
                changed = True
                continue
            if red != v:
                changed = True
            nxt.append(red)
        current = nxt
    return current


def spair_vector(
    a: VectorPolynomial, b: VectorPolynomial, order: MonomialOrder
) -> VectorPolynomial | None:
    """Module S-vector; None when the leading positions differ."""
    pa, ma, ca = a.leading(order)
    pb, mb, cb = b.leading(order)
    if pa != pb:
        return None
    lcm = ma.lcm(mb)
    return a.term_mul(1 / ca, lcm.div(ma)) - b.term_mul(1 / cb, lcm.div(mb))


def module_groebner(
    vectors: Sequence[VectorPolynomial],
    order: MonomialOrder,
    shifts: Sequence[int],
    degree_bound: int | None = None,
) -> list[VectorPolynomial]:
    """Buchberger completion in the free module, optionally truncated.

    For inputs homogeneous with respect to the shifted total degree, the
    truncated result decides membership for elements of degree at most the
    bound (pairs above the bound cannot influence lower degrees).
    """
    basis = interreduce(vectors, order)
    pending = list(itertools.combinations(range(len(basis)), 2))
    while pending:
        i, j = pending.pop(0)
        try:
            pa = basis[i].leading(order)
            pb = basis[j].leading(order)
        except ValueError:
            continue
        if pa[0] != pb[0]:
            continue
        if degree_bound is not None:
            # homogeneous S-vector degree: deg(lcm) + shift of the lead position
            sdeg = pa[1].lcm(pb[1]).degree + shifts[pa[0]]
            if sdeg > degree_bound:
                continue
        s = spair_vector(basis[i], basis[j], order)
        if s is None or s.is_zero():
            continue
        rem = reduce_vector(s, basis, order)
        if rem.is_zero():
            continue
        basis.append(rem)
        new = len(basis) - 1
        pending.extend((k, new) for k in range(new))
    return [b for b in basis if not b.is_zero()]


def vector_in_span(
    v: VectorPolynomial, basis: Sequence[VectorPolynomial], order: MonomialOrder
) -> bool:
    return reduce_vector(v, basis, order).is_zero()
