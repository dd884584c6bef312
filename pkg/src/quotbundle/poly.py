"""Exact sparse multivariate polynomials over the mixed coordinate ring.

The ring for ambient size n has the antisymmetric pair coordinates x[i,j]
(1 <= i < j <= n) and the fiber coordinates y[1], ..., y[n].  Coefficients
are exact rationals (fractions.Fraction); a polynomial is a finite map
from monomials to nonzero coefficients, so identity testing is exact.

Conventions enforced at construction time:

* x[j,i] with j > i normalizes to x[i,j] with sign -1 (antisymmetry),
  and x[i,i] is rejected (it is zero in the ring).
* Monomials store no zero exponents; the zero polynomial is the empty
  term map.

Besides the ordinary total degree, every variable carries a bidegree
(degree in x-variables, degree in y-variables) and a Z^n multidegree
(x[i,j] -> e_i + e_j, y[i] -> -e_i).  The generators of the ideals built
on top of this ring are homogeneous for all three gradings, which the
cotangent machinery exploits.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple


class Variable(NamedTuple):
    """A ring variable: kind 'x' with i < j, or kind 'y' with j == 0."""

    n: int
    kind: str
    i: int
    j: int

    @property
    def bidegree(self) -> tuple[int, int]:
        return (1, 0) if self.kind == "x" else (0, 1)

    def text(self) -> str:
        if self.kind == "x":
            return f"x[{self.i},{self.j}]"
        return f"y[{self.i}]"

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return self.text()


_RINGS: dict[int, "Ring"] = {}


def ring(n: int) -> "Ring":
    """Return the (interned) coordinate ring for ambient size n."""
    if n < 2:
        raise ValueError(f"ambient size must be at least 2, got {n}")
    R = _RINGS.get(n)
    if R is None:
        R = Ring(n)
        _RINGS[n] = R
    return R


class Ring:
    """Coordinate ring K[x[i,j], y[i]] for a fixed ambient n.

    Use :func:`ring` to obtain instances; rings are interned so identity
    comparison is reliable.  Variables are enumerated canonically:
    x-variables ordered lexicographically by (i, j), then y[1..n].
    """

    def __init__(self, n: int):
        self.n = n
        xvars = [Variable(n, "x", i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        yvars = [Variable(n, "y", i, 0) for i in range(1, n + 1)]
        self.variables: tuple[Variable, ...] = tuple(xvars + yvars)
        self.nvars = len(self.variables)
        self.index: dict[Variable, int] = {v: k for k, v in enumerate(self.variables)}
        self.x_indices = tuple(range(len(xvars)))
        self.y_indices = tuple(range(len(xvars), self.nvars))
        # per-variable grading data, indexed by canonical variable index
        self.var_is_y = tuple(v.kind == "y" for v in self.variables)
        mdeg = []
        for v in self.variables:
            row = [0] * n
            if v.kind == "x":
                row[v.i - 1] += 1
                row[v.j - 1] += 1
            else:
                row[v.i - 1] -= 1
            mdeg.append(tuple(row))
        self.var_multidegree = tuple(mdeg)
        self.one_monomial = Monomial(self, ())
        self.zero = Polynomial(self, {})
        self.one = Polynomial(self, {self.one_monomial: Fraction(1)})

    def __repr__(self) -> str:
        return f"Ring(n={self.n})"

    def x(self, i: int, j: int) -> tuple[Variable, int]:
        """Normalized pair variable with its antisymmetry sign.

        x(i, j) with i < j gives (x[i,j], +1); with i > j it gives
        (x[j,i], -1).  x(i, i) raises, since x[i,i] = 0.
        """
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"x index out of range for n={self.n}: ({i},{j})")
        if i == j:
            raise ValueError(f"x[{i},{i}] is zero and has no variable")
        if i < j:
            return Variable(self.n, "x", i, j), 1
        return Variable(self.n, "x", j, i), -1

    def xvar(self, i: int, j: int) -> Variable:
        """Strict form of :meth:`x`, requiring i < j."""
        v, sign = self.x(i, j)
        if sign != 1:
            raise ValueError(f"x[{i},{j}] requires i < j")
        return v

    def y(self, i: int) -> Variable:
        if not 1 <= i <= self.n:
            raise ValueError(f"y index out of range for n={self.n}: {i}")
        return Variable(self.n, "y", i, 0)

    def monomial(self, exponents: Mapping[Variable, int] | Iterable[tuple[Variable, int]]) -> "Monomial":
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict[int, int] = {}
        for v, e in items:
            if v.n != self.n:
                raise ValueError(f"variable {v.text()} has ambient n={v.n}, ring has n={self.n}")
            if e < 0:
                raise ValueError(f"negative exponent {e} for {v.text()}")
            if e:
                k = self.index[v]
                acc[k] = acc.get(k, 0) + e
        return Monomial(self, tuple(sorted(acc.items())))

    def monomial_from_indices(self, pairs: Iterable[tuple[int, int]]) -> "Monomial":
        """Monomial from (variable index, exponent) pairs, already within range."""
        acc: dict[int, int] = {}
        for k, e in pairs:
            if e:
                acc[k] = acc.get(k, 0) + e
        return Monomial(self, tuple(sorted(acc.items())))

    def term(self, coeff, monomial: "Monomial") -> "Polynomial":
        c = Fraction(coeff)
        if c == 0:
            return self.zero
        return Polynomial(self, {monomial: c})

    def variable_poly(self, v: Variable) -> "Polynomial":
        return self.term(1, self.monomial(((v, 1),)))

    def from_terms(self, terms: Iterable[tuple[object, "Monomial"]]) -> "Polynomial":
        acc: dict[Monomial, Fraction] = {}
        for coeff, m in terms:
            c = acc.get(m, _ZERO) + Fraction(coeff)
            if c:
                acc[m] = c
            elif m in acc:
                del acc[m]
        return Polynomial(self, acc)


_ZERO = Fraction(0)


class Monomial:
    """A monomial: sorted sparse tuple of (variable index, positive exponent)."""

    __slots__ = ("ring", "exps", "_hash", "_degree", "_mdeg")

    def __init__(self, R: Ring, exps: tuple[tuple[int, int], ...]):
        self.ring = R
        self.exps = exps
        self._hash = hash((R.n, exps))
        self._degree = sum(e for _, e in exps)
        self._mdeg = None

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.ring is other.ring and self.exps == other.exps

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def bidegree(self) -> tuple[int, int]:
        is_y = self.ring.var_is_y
        dy = sum(e for k, e in self.exps if is_y[k])
        return (self._degree - dy, dy)

    def multidegree(self) -> tuple[int, ...]:
        if self._mdeg is None:
            out = [0] * self.ring.n
            tables = self.ring.var_multidegree
            for k, e in self.exps:
                row = tables[k]
                for a in range(self.ring.n):
                    if row[a]:
                        out[a] += row[a] * e
            self._mdeg = tuple(out)
        return self._mdeg

    def exponent(self, k: int) -> int:
        for kk, e in self.exps:
            if kk == k:
                return e
        return 0

    def variables(self) -> list[Variable]:
        vs = self.ring.variables
        return [vs[k] for k, _ in self.exps]

    def is_one(self) -> bool:
        return not self.exps

    def mul(self, other: "Monomial") -> "Monomial":
        if other.ring is not self.ring:
            raise ValueError("monomials from different rings")
        if not self.exps:
            return other
        if not other.exps:
            return self
        acc = dict(self.exps)
        for k, e in other.exps:
            acc[k] = acc.get(k, 0) + e
        return Monomial(self.ring, tuple(sorted(acc.items())))

    def divides(self, other: "Monomial") -> bool:
        o = dict(other.exps)
        for k, e in self.exps:
            if o.get(k, 0) < e:
                return False
        return True

    def div(self, other: "Monomial") -> "Monomial | None":
        """self / other, or None when other does not divide self."""
        acc = dict(self.exps)
        for k, e in other.exps:
            have = acc.get(k, 0)
            if have < e:
                return None
            if have == e:
                del acc[k]
            else:
                acc[k] = have - e
        return Monomial(self.ring, tuple(sorted(acc.items())))

    def lcm(self, other: "Monomial") -> "Monomial":
        acc = dict(self.exps)
        for k, e in other.exps:
            if acc.get(k, 0) < e:
                acc[k] = e
        return Monomial(self.ring, tuple(sorted(acc.items())))

    def coprime(self, other: "Monomial") -> bool:
        mine = {k for k, _ in self.exps}
        return all(k not in mine for k, _ in other.exps)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.exps)

    def text(self) -> str:
        if not self.exps:
            return "1"
        parts = []
        vs = self.ring.variables
        for k, e in self.exps:
            parts.append(vs[k].text() if e == 1 else f"{vs[k].text()}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return self.text()


class Polynomial:
    """Sparse polynomial: map from Monomial to nonzero Fraction."""

    __slots__ = ("ring", "terms")

    def __init__(self, R: Ring, terms: dict[Monomial, Fraction]):
        self.ring = R
        self.terms = terms

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ring is other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("polynomials are not hashable")

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def monomials(self) -> Iterator[Monomial]:
        return iter(self.terms.keys())

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(m.degree for m in self.terms)

    def bidegree(self) -> tuple[int, int] | None:
        """Common bidegree of all terms, or None if not bihomogeneous."""
        degs = {m.bidegree for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, _ZERO)

    # -- ring operations ----------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ring is not other.ring:
            raise ValueError(
                f"ambient mismatch: n={self.ring.n} vs n={other.ring.n}"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc.get(m, _ZERO) + c
            if s:
                acc[m] = s
            elif m in acc:
                del acc[m]
        return Polynomial(self.ring, acc)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc.get(m, _ZERO) - c
            if s:
                acc[m] = s
            elif m in acc:
                del acc[m]
        return Polynomial(self.ring, acc)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc: dict[Monomial, Fraction] = {}
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = m1.mul(m2)
                s = acc.get(m, _ZERO) + c1 * c2
                if s:
                    acc[m] = s
                elif m in acc:
                    del acc[m]
        return Polynomial(self.ring, acc)

    def scale(self, coeff) -> "Polynomial":
        c = Fraction(coeff)
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, {m: cc * c for m, cc in self.terms.items()})

    def term_mul(self, coeff: Fraction, monomial: Monomial) -> "Polynomial":
        """self * (coeff * monomial); the hot path of polynomial division."""
        if coeff == 0:
            return self.ring.zero
        if monomial.is_one():
            return self.scale(coeff)
        return Polynomial(
            self.ring, {m.mul(monomial): c * coeff for m, c in self.terms.items()}
        )

    def monic(self, order) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading(order)
        return self.scale(1 / c) if c != 1 else self

    # -- order-dependent views ------------------------------------------

    def leading(self, order) -> tuple[Monomial, Fraction]:
        """Leading (monomial, coefficient) under the given order."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        key = order.key
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def sorted_terms(self, order, reverse: bool = True) -> list[tuple[Monomial, Fraction]]:
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=reverse)

    # -- evaluation ------------------------------------------------------

    def evaluate(self, assignment: Mapping[Variable, Fraction]) -> Fraction:
        """Exact evaluation; the assignment must cover every used variable."""
        vs = self.ring.variables
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for k, e in m.exps:
                val *= assignment[vs[k]] ** e
            total += val
        return total

    def derivative(self, v: Variable) -> "Polynomial":
        k = self.ring.index[v]
        acc: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m.exponent(k)
            if not e:
                continue
            rest = tuple(
                (kk, ee if kk != k else ee - 1) for kk, ee in m.exps if kk != k or ee > 1
            )
            mm = Monomial(self.ring, rest)
            s = acc.get(mm, _ZERO) + c * e
            if s:
                acc[mm] = s
            elif mm in acc:
                del acc[mm]
        return Polynomial(self.ring, acc)

    def __repr__(self) -> str:
        from .grammar import format_polynomial

        return format_polynomial(self)
