"""Division with quotient traces, Buchberger machinery, and syzygy extraction.

Division is deterministic: the reducer always picks the first divisor (in
list order) whose leading monomial divides the current leading monomial,
so traces and the syzygies extracted from them are reproducible
bit-for-bit.  Generator lists passed in are expected to follow the
documented canonical order (Pfaffians lexicographic by index quadruple,
then the mixed quadrics in index order).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .orders import MonomialOrder
from .parallel import pmap
from .poly import Monomial, Polynomial, Ring


@dataclass
class ReductionTrace:
    """f = sum(quotients[i] * divisors[i]) + remainder, with every quotient
    term satisfying LT(q_i g_i) <= LT(f) and no remainder term divisible by
    any divisor's leading monomial."""

    quotients: dict[int, Polynomial]
    remainder: Polynomial
    steps: int

    def reconstruct(self, divisors: Sequence[Polynomial]) -> Polynomial:
        total = self.remainder
        for i, q in self.quotients.items():
            total = total + q * divisors[i]
        return total


def _check_same_ring(polys, order: MonomialOrder) -> Ring:
    R = order.ring
    for p in polys:
        if p.ring is not R:
            raise ValueError(f"ambient mismatch: polynomial n={p.ring.n}, order n={R.n}")
    return R


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """lcm(LT f, LT g)/LT(f) * f  -  lcm(LT f, LT g)/LT(g) * g."""
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of the zero polynomial is undefined")
    _check_same_ring((f, g), order)
    mf, cf = f.leading(order)
    mg, cg = g.leading(order)
    lcm = mf.lcm(mg)
    uf = lcm.div(mf)
    ug = lcm.div(mg)
    return f.term_mul(1 / cf, uf) - g.term_mul(1 / cg, ug)


def reduce(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder) -> ReductionTrace:
    """Full multivariate division of f by the ordered divisor list."""
    _check_same_ring([f, *divisors], order)
    if any(d.is_zero() for d in divisors):
        raise ValueError("zero divisor in reduction")
    leads = [d.leading(order) for d in divisors]
    key = order.key
    work = dict(f.terms)
    remainder: dict[Monomial, Fraction] = {}
    quotients: dict[int, dict[Monomial, Fraction]] = {}
    steps = 0
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for i, (lm, lc) in enumerate(leads):
            u = m.div(lm)
            if u is None:
                continue
            steps += 1
            q = c / lc
            qi = quotients.setdefault(i, {})
            prev = qi.get(u)
            qi[u] = q if prev is None else prev + q
            # subtract q*u*(divisor minus its leading term)
            for mm, cc in divisors[i].terms.items():
                if mm is lm or mm == lm:
                    continue
                t = mm.mul(u)
                s = work.get(t)
                s = -q * cc if s is None else s - q * cc
                if s:
                    work[t] = s
                elif t in work:
                    del work[t]
            break
        else:
            remainder[m] = c
    R = order.ring
    return ReductionTrace(
        quotients={i: Polynomial(R, q) for i, q in quotients.items() if q},
        remainder=Polynomial(R, remainder),
        steps=steps,
    )


def normal_form(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder,
                leads=None) -> Polynomial:
    """Remainder of the division, without quotient bookkeeping."""
    if leads is None:
        _check_same_ring([f, *divisors], order)
        if any(d.is_zero() for d in divisors):
            raise ValueError("zero divisor in reduction")
        leads = [d.leading(order) for d in divisors]
    key = order.key
    work = dict(f.terms)
    remainder: dict[Monomial, Fraction] = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for i, (lm, lc) in enumerate(leads):
            u = m.div(lm)
            if u is None:
                continue
            q = c / lc
            for mm, cc in divisors[i].terms.items():
                if mm == lm:
                    continue
                t = mm.mul(u)
                s = work.get(t)
                s = -q * cc if s is None else s - q * cc
                if s:
                    work[t] = s
                elif t in work:
                    del work[t]
            break
        else:
            remainder[m] = c
    return Polynomial(order.ring, remainder)


@dataclass
class CriterionReport:
    holds: bool
    failing_pair: tuple[int, int] | None
    failing_remainder: Polynomial | None
    pair_count: int
    reduction_steps: int


def buchberger_criterion(
    G: Sequence[Polynomial],
    order: MonomialOrder,
    skip_coprime: bool = True,
    threads: int = 1,
) -> CriterionReport:
    """Check that every S-pair of G reduces to zero modulo G.

    With skip_coprime, pairs whose leading monomials share no variable are
    skipped (their S-polynomials always reduce to zero).
    """
    _check_same_ring(G, order)
    if any(g.is_zero() for g in G):
        raise ValueError("zero polynomial in generator list")
    leads = [g.leading(order) for g in G]
    pairs = [
        (i, j)
        for i, j in itertools.combinations(range(len(G)), 2)
        if not (skip_coprime and leads[i][0].coprime(leads[j][0]))
    ]

    def job(pair):
        i, j = pair
        trace = reduce(s_polynomial(G[i], G[j], order), G, order)
        return trace.remainder, trace.steps

    results = pmap(job, pairs, threads)
    steps = sum(s for _, s in results)
    for pair, (rem, _) in zip(pairs, results):
        if not rem.is_zero():
            return CriterionReport(False, pair, rem, len(pairs), steps)
    return CriterionReport(True, None, None, len(pairs), steps)


class PairBudgetExceeded(RuntimeError):
    pass


def buchberger_complete(
    G: Sequence[Polynomial],
    order: MonomialOrder,
    pair_budget: int = 100_000,
) -> list[Polynomial]:
    """Complete G to a Groebner basis of the ideal it generates.

    Deterministic normal selection strategy: the pending pair with the
    smallest (degree of lcm, lcm under the order, pair index) is processed
    first.  Pairs with coprime leading monomials are discarded.  A pair
    budget guards against runaway inputs.
    """
    _check_same_ring(G, order)
    if any(g.is_zero() for g in G):
        raise ValueError("zero polynomial in generator list")
    basis = list(G)
    leads = [g.leading(order) for g in basis]
    key = order.key

    def pair_rank(p):
        i, j = p
        lcm = leads[i][0].lcm(leads[j][0])
        return (lcm.degree, key(lcm), i, j)

    pending = {(i, j) for i, j in itertools.combinations(range(len(basis)), 2)}
    processed = 0
    while pending:
        pair = min(pending, key=pair_rank)
        pending.remove(pair)
        i, j = pair
        if leads[i][0].coprime(leads[j][0]):
            continue
        processed += 1
        if processed > pair_budget:
            raise PairBudgetExceeded(
                f"completion exceeded the pair budget of {pair_budget}"
            )
        rem = normal_form(s_polynomial(basis[i], basis[j], order), basis, order, leads)
        if rem.is_zero():
            continue
        rem = rem.monic(order)
        basis.append(rem)
        leads.append(rem.leading(order))
        new = len(basis) - 1
        pending.update((k, new) for k in range(new))
    return basis


def minimal_monomial_generators(monomials) -> list[Monomial]:
    """Inclusion-minimal subset of a monomial family, canonically sorted."""
    unique = sorted(set(monomials), key=lambda m: (m.degree, m.exps))
    out: list[Monomial] = []
    for m in unique:
        if not any(g.divides(m) for g in out):
            out.append(m)
    return out


def initial_ideal(
    G: Sequence[Polynomial],
    order: MonomialOrder,
    assume_verified: bool = False,
    threads: int = 1,
) -> list[Monomial]:
    """Minimal monic generators of the initial ideal of the verified basis G."""
    if not assume_verified:
        report = buchberger_criterion(G, order, skip_coprime=True, threads=threads)
        if not report.holds:
            raise ValueError(
                f"generators are not a Groebner basis: S-pair {report.failing_pair} "
                "leaves a nonzero remainder"
            )
    return minimal_monomial_generators(g.leading(order)[0] for g in G)


@dataclass
class SyzygyVector:
    """Tuple of polynomial coefficients whose dot product with a fixed
    generator list is zero."""

    coefficients: tuple[Polynomial, ...]

    def dot(self, generators: Sequence[Polynomial]) -> Polynomial:
        if len(generators) != len(self.coefficients):
            raise ValueError("generator list length mismatch")
        total = generators[0].ring.zero
        for c, g in zip(self.coefficients, generators):
            if c.is_zero():
                continue
            total = total + c * g
        return total

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coefficients) if not c.is_zero()]

    def degree(self, generator_degrees: Sequence[int]) -> int:
        """Total degree, weighting position i by the degree of generator i.

        Assumes the vector is homogeneous for these weights (true of every
        vector produced here); returns the maximum over nonzero entries.
        """
        degs = [
            c.total_degree() + d
            for c, d in zip(self.coefficients, generator_degrees)
            if not c.is_zero()
        ]
        return max(degs) if degs else -1

    def __iter__(self):
        return iter(self.coefficients)


def trace_syzygy(
    G: Sequence[Polynomial], order: MonomialOrder, i: int, j: int,
    leads=None,
) -> SyzygyVector:
    """Syzygy extracted from the reduction of S(G[i], G[j]) to zero."""
    if leads is None:
        leads = [g.leading(order) for g in G]
    mi, ci = leads[i]
    mj, cj = leads[j]
    lcm = mi.lcm(mj)
    R = order.ring
    trace = reduce(s_polynomial(G[i], G[j], order), G, order)
    if not trace.remainder.is_zero():
        raise ValueError(f"S-pair ({i},{j}) does not reduce to zero; not a Groebner basis")
    coeffs = [R.zero] * len(G)
    coeffs[i] = coeffs[i] + R.term(1 / ci, lcm.div(mi))
    coeffs[j] = coeffs[j] - R.term(1 / cj, lcm.div(mj))
    for k, q in trace.quotients.items():
        coeffs[k] = coeffs[k] - q
    return SyzygyVector(tuple(coeffs))


def syzygies_from_traces(
    G: Sequence[Polynomial],
    order: MonomialOrder,
    pairs: str = "all",
    threads: int = 1,
) -> list[SyzygyVector]:
    """Generators of the first syzygy module of G, one per S-pair.

    With pairs="all" this is the full Schreyer generating set.  With
    pairs="noncoprime" the coprime-leading-term pairs (whose traces are
    the Koszul relations) are omitted; the result still spans every
    constraint on Hom(<G>, S/<G>) but not the full module.
    """
    report = buchberger_criterion(G, order, skip_coprime=True, threads=threads)
    if not report.holds:
        raise ValueError(
            f"generators are not a Groebner basis: S-pair {report.failing_pair} fails"
        )
    leads = [g.leading(order) for g in G]
    index_pairs = [
        (i, j)
        for i, j in itertools.combinations(range(len(G)), 2)
        if pairs == "all" or not leads[i][0].coprime(leads[j][0])
    ]
    return pmap(lambda p: trace_syzygy(G, order, p[0], p[1], leads), index_pairs, threads)


def monomials_of_bidegree(R: Ring, bidegree: tuple[int, int]):
    """All monomials with the given (x-degree, y-degree), in canonical order."""
    dx, dy = bidegree
    if dx < 0 or dy < 0:
        raise ValueError(f"bidegree components must be nonnegative, got {bidegree}")
    for xm in itertools.combinations_with_replacement(R.x_indices, dx):
        xpairs = tuple((k, len(list(g))) for k, g in itertools.groupby(xm))
        for ym in itertools.combinations_with_replacement(R.y_indices, dy):
            pairs = xpairs + tuple((k, len(list(g))) for k, g in itertools.groupby(ym))
            yield Monomial(R, pairs)


def standard_monomials(
    initial_generators: Sequence[Monomial], bidegree: tuple[int, int], R: Ring
) -> list[Monomial]:
    """All monomials of the given bidegree divisible by no initial generator."""
    gens = list(initial_generators)
    out = [
        m
        for m in monomials_of_bidegree(R, bidegree)
        if not any(g.divides(m) for g in gens)
    ]
    out.sort(key=lambda m: m.exps)
    return out


class GroebnerBasis:
    """A criterion-verified basis bundled with its order and a normal-form
    cache, shared by the verification pipelines."""

    def __init__(self, generators: Sequence[Polynomial], order: MonomialOrder,
                 report: CriterionReport):
        if not report.holds:
            raise ValueError("cannot bundle an unverified basis")
        self.ring = order.ring
        self.generators = tuple(generators)
        self.order = order
        self.report = report
        self.leads = [g.leading(order) for g in self.generators]
        self._nf_cache: dict[Monomial, Polynomial] = {}

    @classmethod
    def verify(cls, generators: Sequence[Polynomial], order: MonomialOrder,
               threads: int = 1) -> "GroebnerBasis":
        report = buchberger_criterion(generators, order, skip_coprime=True, threads=threads)
        if not report.holds:
            raise ValueError(
                f"Groebner criterion failed on pair {report.failing_pair}"
            )
        return cls(generators, order, report)

    def initial_generators(self) -> list[Monomial]:
        return minimal_monomial_generators(m for m, _ in self.leads)

    def is_standard(self, m: Monomial) -> bool:
        return not any(lm.divides(m) for lm, _ in self.leads)

    def normal_form(self, f: Polynomial) -> Polynomial:
        out = self.ring.zero
        for m, c in f.terms.items():
            out = out + self.normal_form_monomial(m).scale(c)
        return out

    def normal_form_monomial(self, m: Monomial) -> Polynomial:
        nf = self._nf_cache.get(m)
        if nf is None:
            for lm, _ in self.leads:
                if lm.divides(m):
                    nf = normal_form(
                        self.ring.term(1, m), self.generators, self.order, self.leads
                    )
                    break
            else:
                nf = self.ring.term(1, m)
            self._nf_cache[m] = nf
        return nf

    def reduce(self, f: Polynomial) -> ReductionTrace:
        return reduce(f, self.generators, self.order)
