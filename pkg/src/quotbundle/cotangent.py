"""Graded slices of first cotangent cohomology by exact linear algebra.

A slice at bidegree shift delta parametrizes module homomorphisms from
the bundle ideal to the quotient ring: one unknown per (generator,
standard monomial of the shifted bidegree).  Constraints come from a
generating set of syzygies (the normal form of the syzygy applied to the
candidate images must vanish), and the trivial deformations are spanned
by monomial multiples of the coordinate derivations.  The slice dimension
is hom minus derivation rank, all over exact rationals.

Everything in sight is homogeneous for the Z^n character grading
deg x[i,j] = e_i + e_j, deg y[i] = -e_i, so each slice splits into many
independent small blocks indexed by characters; the dimensions reported
are the sums over blocks and agree with the monolithic formulation.

The syzygy constraints use the trace syzygies of the pairs with
non-coprime leading terms: the coprime-pair traces are Koszul relations,
which impose no condition on homomorphisms into the quotient ring (their
coefficients already lie in the ideal).  A unit test cross-checks the
two constraint sets on the small cases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from random import Random

from .grammar import format_polynomial
from .grassmann import bundle_groebner, generator_names
from .groebner import (
    GroebnerBasis,
    SyzygyVector,
    monomials_of_bidegree,
    standard_monomials,
    syzygies_from_traces,
)
from .linalg import Echelon, fraction_rows_to_int, kernel_basis
from .parallel import pmap
from .poly import Monomial, Polynomial, ring


@lru_cache(maxsize=None)
def constraint_syzygies(n: int, pairs: str = "noncoprime") -> tuple[SyzygyVector, ...]:
    gb = bundle_groebner(n)
    return tuple(syzygies_from_traces(gb.generators, gb.order, pairs=pairs))


@dataclass
class T1Slice:
    n: int
    delta: tuple[int, int]
    hom_space_dim: int
    derivation_image_dim: int
    t1_dim: int
    basis: list[list[Polynomial]] = field(default_factory=list)
    blocks: int = 0

    def to_dict(self, include_basis: bool = True) -> dict:
        out = {
            "n": self.n,
            "delta": list(self.delta),
            "hom_dim": self.hom_space_dim,
            "der_dim": self.derivation_image_dim,
            "t1_dim": self.t1_dim,
        }
        if include_basis and self.basis:
            names = generator_names(self.n)
            out["basis"] = [
                {
                    "images": {
                        names[a]: format_polynomial(p)
                        for a, p in enumerate(images)
                        if not p.is_zero()
                    }
                }
                for images in self.basis
            ]
        return out


def _target_bidegree(gen_bideg, delta):
    return (gen_bideg[0] + delta[0], gen_bideg[1] + delta[1])


def _tuple_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def t1_slice(
    n: int,
    delta: tuple[int, int],
    threads: int = 1,
    want_basis: bool = True,
    constraint_pairs: str = "noncoprime",
) -> T1Slice:
    """Exact dimension of the cotangent slice at the given bidegree shift.

    Requires the Groebner verification for n (built and checked on first
    use); raises if that fails.  All block arithmetic runs over the
    integers (leading coefficients of the basis are units, so normal forms
    are integral); ranks come from fraction-free echelon forms.
    """
    gb = bundle_groebner(n)
    R = gb.ring
    gens = gb.generators
    init = gb.initial_generators()
    gen_bideg = [g.bidegree() for g in gens]
    gen_mdeg = [next(iter(g.terms)).multidegree() for g in gens]

    target_cache: dict[tuple[int, int], list[Monomial]] = {}
    for b in {_target_bidegree(bd, delta) for bd in gen_bideg}:
        if b[0] >= 0 and b[1] >= 0:
            target_cache[b] = standard_monomials(init, b, R)

    # bucket the unknowns by character block
    blocks: dict[tuple, list[tuple[int, Monomial]]] = {}
    for alpha in range(len(gens)):
        tb = _target_bidegree(gen_bideg[alpha], delta)
        for u in target_cache.get(tb, ()):
            d = _tuple_sub(u.multidegree(), gen_mdeg[alpha])
            blocks.setdefault(d, []).append((alpha, u))

    # syzygy entries indexed by the generator they touch, integer coefficients
    syz = constraint_syzygies(n, constraint_pairs)
    syz_by_gen: dict[int, list[tuple[int, list[tuple[Monomial, int]]]]] = {}
    for sid, s in enumerate(syz):
        for alpha, c in enumerate(s.coefficients):
            if not c.is_zero():
                entry = [(m, _as_int(cc)) for m, cc in c.terms.items()]
                syz_by_gen.setdefault(alpha, []).append((sid, entry))

    nf_cache: dict[Monomial, list[tuple[Monomial, int]]] = {}

    def nf_int(m: Monomial) -> list[tuple[Monomial, int]]:
        out = nf_cache.get(m)
        if out is None:
            p = gb.normal_form_monomial(m)
            out = [(w, _as_int(c)) for w, c in p.terms.items()]
            nf_cache[m] = out
        return out

    # derivation generators bucketed by character block
    derivatives: dict[int, list[tuple[int, list[tuple[Monomial, int]]]]] = {}
    for zk, z in enumerate(R.variables):
        cols = []
        for alpha, g in enumerate(gens):
            dg = g.derivative(z)
            if not dg.is_zero():
                cols.append((alpha, [(m, _as_int(c)) for m, c in dg.terms.items()]))
        derivatives[zk] = cols
    der_by_block: dict[tuple, list[tuple[int, Monomial]]] = {}
    for zk, z in enumerate(R.variables):
        zb = z.bidegree
        mb = (delta[0] + zb[0], delta[1] + zb[1])
        if mb[0] < 0 or mb[1] < 0:
            continue
        zmd = R.var_multidegree[zk]
        for m in monomials_of_bidegree(R, mb):
            d = _tuple_sub(m.multidegree(), zmd)
            if d in blocks:
                der_by_block.setdefault(d, []).append((zk, m))

    block_keys = sorted(blocks)

    def process(d):
        cols = sorted(blocks[d], key=lambda t: (t[0], t[1].exps))
        ncols = len(cols)
        col_index = {c: k for k, c in enumerate(cols)}
        cols_of_syz: dict[int, list[int]] = {}
        entry_of: dict[tuple[int, int], list] = {}
        for ci, (alpha, _) in enumerate(cols):
            for sid, entry in syz_by_gen.get(alpha, ()):
                cols_of_syz.setdefault(sid, []).append(ci)
                entry_of[(sid, alpha)] = entry

        # feed constraint rows syzygy by syzygy; once the rank reaches the
        # column count the hom space is empty and the rest can be skipped
        ech = Echelon()
        row_items: list[dict[int, int]] = []
        for sid in sorted(cols_of_syz):
            if ech.rank == ncols:
                break
            rows: dict[tuple, dict[int, int]] = {}
            for ci in cols_of_syz[sid]:
                alpha, u = cols[ci]
                for cm, cc in entry_of[(sid, alpha)]:
                    for w, c in nf_int(cm.mul(u)):
                        row = rows.setdefault(w.exps, {})
                        row[ci] = row.get(ci, 0) + cc * c
            for key in sorted(rows):
                row = {k: v for k, v in rows[key].items() if v}
                if not row:
                    continue
                row_items.append(row)
                ech.add_row(row)
        rank_c = ech.rank
        hom_d = ncols - rank_c
        if hom_d == 0:
            return {"d": d, "hom": 0, "der": 0, "t1": 0, "basis": []}

        der_vecs: list[dict[int, int]] = []
        for zk, m in der_by_block.get(d, ()):
            vec: dict[int, int] = {}
            for alpha, dg_terms in derivatives[zk]:
                for mm, cc in dg_terms:
                    for w, c in nf_int(mm.mul(m)):
                        ci = col_index[(alpha, w)]
                        vec[ci] = vec.get(ci, 0) + cc * c
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                der_vecs.append(vec)
        # derivations must satisfy the constraints (image inside hom space)
        for vec in der_vecs:
            for row in row_items:
                a, b = (row, vec) if len(row) <= len(vec) else (vec, row)
                if sum(v * b.get(k, 0) for k, v in a.items()):
                    raise AssertionError(
                        f"derivation image violates a syzygy constraint in block {d}"
                    )
        der_ech = Echelon()
        der_rank = 0
        for vec in der_vecs:
            if der_ech.add_row(dict(vec)):
                der_rank += 1
        t1_d = hom_d - der_rank

        basis_vecs: list[list[Fraction]] = []
        if t1_d > 0 and want_basis:
            kb = kernel_basis(row_items, ncols)
            ech2 = Echelon()
            for vec in der_vecs:
                ech2.add_row(dict(vec))
            for kv in kb:
                if len(basis_vecs) == t1_d:
                    break
                as_int = fraction_rows_to_int(
                    [{k: v for k, v in enumerate(kv) if v}]
                )[0]
                if ech2.add_row(dict(as_int)):
                    basis_vecs.append(kv)
        converted = []
        for kv in basis_vecs:
            lead = next((v for v in kv if v), None)
            if lead is not None and lead != 1:
                kv = [v / lead for v in kv]
            images = [R.zero] * len(gens)
            for ci, val in enumerate(kv):
                if val:
                    alpha, u = cols[ci]
                    images[alpha] = images[alpha] + R.term(val, u)
            converted.append(images)
        return {"d": d, "hom": hom_d, "der": der_rank, "t1": t1_d, "basis": converted}

    results = pmap(process, block_keys, threads)
    hom = sum(r["hom"] for r in results)
    der = sum(r["der"] for r in results)
    t1 = sum(r["t1"] for r in results)
    basis = [b for r in results for b in r["basis"]]
    return T1Slice(
        n=n,
        delta=tuple(delta),
        hom_space_dim=hom,
        derivation_image_dim=der,
        t1_dim=t1,
        basis=basis,
        blocks=len(block_keys),
    )


def _as_int(c: Fraction) -> int:
    if c.denominator != 1:
        raise AssertionError(f"expected an integral coefficient, got {c}")
    return c.numerator


@dataclass
class T1Window:
    n: int
    max_target: tuple[int, int]
    slices: list[T1Slice]
    coverage: str = "window"

    @property
    def all_zero(self) -> bool:
        return all(s.t1_dim == 0 for s in self.slices)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "max_target": list(self.max_target),
            "coverage": self.coverage,
            "note": (
                "slice dimensions verified on this finite window only; "
                "vanishing in all degrees is not certified by this run"
            ),
            "all_zero": self.all_zero,
            "slices": [s.to_dict(include_basis=True) for s in self.slices],
        }


def t1_window(n: int, max_target: tuple[int, int], threads: int = 1) -> T1Window:
    """All slices whose target bidegrees fit componentwise under max_target.

    Shifts run over dx in [-2, maxx-2] and dy in [-1, maxy-1] (the extreme
    generator bidegrees are (2,0) and (1,1)); everything below that range
    has empty targets.
    """
    maxx, maxy = max_target
    slices = []
    for dx in range(-2, maxx - 1):
        for dy in range(-1, maxy):
            slices.append(t1_slice(n, (dx, dy), threads=threads))
    return T1Window(n=n, max_target=tuple(max_target), slices=slices)


def verify_hom_assignment(
    n: int, images: list[Polynomial], constraint_pairs: str = "noncoprime"
) -> bool:
    """Symbolically re-check that an assignment satisfies every syzygy."""
    gb = bundle_groebner(n)
    for s in constraint_syzygies(n, constraint_pairs):
        total = gb.ring.zero
        for c, img in zip(s.coefficients, images):
            if not c.is_zero() and not img.is_zero():
                total = total + c * img
        if not gb.normal_form(total).is_zero():
            return False
    return True


# -- the normal-form factorization check ------------------------------------


def index_split(n: int, alpha: int, beta: int) -> tuple[list[int], list[int]]:
    """The inner interval [alpha, beta] and its closed complement."""
    if not (1 <= alpha <= beta <= n):
        raise ValueError(f"need 1 <= alpha <= beta <= {n}")
    inner = list(range(alpha, beta + 1))
    outer = [m for m in range(1, n + 1) if m <= alpha or m >= beta]
    return inner, outer


def _pairs_within(indices: list[int]) -> list[tuple[int, int]]:
    return [(i, j) for i, j in itertools.combinations(sorted(indices), 2)]


def _is_crossing_free(m: Monomial) -> bool:
    """True when no crossing product x[i,k]x[j,l] (i<j<k<l) divides m."""
    vars_ = [v for v in m.variables() if v.kind == "x"]
    for a, b in itertools.combinations(vars_, 2):
        i, j = a.i, a.j
        k, l = b.i, b.j
        if (i < k < j < l) or (k < i < l < j):
            return False
    return True


def split_case(
    n: int, alpha: int, beta: int, z_c: Monomial, z_d: Monomial
) -> dict:
    """Run one factorization check: reduce z_c * z_d and test that every
    monomial of the normal form is z_d times an inner-indexed monomial."""
    gb = bundle_groebner(n)
    inner, outer = index_split(n, alpha, beta)
    inner_set = set(inner)
    outer_set = set(outer)
    for v in z_c.variables():
        if v.kind != "x" or v.i not in inner_set or v.j not in inner_set:
            raise ValueError(f"{v.text()} is not an inner-indexed pair variable")
    for v in z_d.variables():
        if v.kind != "x" or v.i not in outer_set or v.j not in outer_set:
            raise ValueError(f"{v.text()} is not an outer-indexed pair variable")
    if not _is_crossing_free(z_d):
        raise ValueError("the outer factor must be in normal form")
    nf = gb.normal_form_monomial(z_c.mul(z_d))
    bad = []
    for w in nf.terms:
        q = w.div(z_d)
        if q is None or any(
            v.kind != "x" or v.i not in inner_set or v.j not in inner_set
            for v in q.variables()
        ):
            bad.append(w)
    return {
        "normal_form": nf,
        "ok": not bad,
        "bad_monomials": bad,
    }


def _random_monomial(R, pairs, degree, rng: Random) -> Monomial:
    chosen = [rng.choice(pairs) for _ in range(degree)]
    acc: dict = {}
    for i, j in chosen:
        v = R.xvar(i, j)
        acc[v] = acc.get(v, 0) + 1
    return R.monomial(acc)


@dataclass
class LemmaReport:
    n: int
    trials: int
    seed: int
    failures: list[dict]
    resamples: int

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "resamples": self.resamples,
            "failures": self.failures,
            "passed": self.passed,
        }


def normal_form_factorization_report(n: int, trials: int, seed: int) -> LemmaReport:
    """Seeded random trials of the factorization property.

    Samples alpha <= beta uniformly, then bounded-degree monomials on the
    inner and outer pair variables; outer samples that violate the
    normal-form hypothesis are redrawn, never silently accepted.
    """
    R = ring(n)
    rng = Random(seed)
    failures: list[dict] = []
    resamples = 0
    done = 0
    while done < trials:
        a, b = rng.randint(1, n), rng.randint(1, n)
        alpha, beta = min(a, b), max(a, b)
        inner, outer = index_split(n, alpha, beta)
        inner_pairs = _pairs_within(inner)
        outer_pairs = _pairs_within(outer)
        if not inner_pairs:
            continue  # no inner variables: the claim is vacuous, resample
        z_c = _random_monomial(R, inner_pairs, rng.randint(1, 4), rng)
        z_d = None
        for _ in range(1000):
            cand = (
                _random_monomial(R, outer_pairs, rng.randint(0, 4), rng)
                if outer_pairs
                else R.one_monomial
            )
            if _is_crossing_free(cand):
                z_d = cand
                break
            resamples += 1
        if z_d is None:
            raise RuntimeError("could not sample a normal-form outer factor")
        result = split_case(n, alpha, beta, z_c, z_d)
        if not result["ok"]:
            failures.append(
                {
                    "alpha": alpha,
                    "beta": beta,
                    "z_c": z_c.text(),
                    "z_d": z_d.text(),
                    "bad_monomials": [w.text() for w in result["bad_monomials"]],
                }
            )
        done += 1
    return LemmaReport(n=n, trials=trials, seed=seed, failures=failures, resamples=resamples)
