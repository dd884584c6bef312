"""Monomial orders as stacks of comparison layers.

An order is a list of layers, each mapping a monomial to an integer or a
tuple of integers; monomials compare lexicographically by the sequence of
layer values, with a final reverse-lexicographic tie-break on the
canonical variable enumeration.  Every shipped order starts with a total
degree layer, which makes it a well-order; all layer values are linear in
the exponents, which makes every order multiplicative.

Two concrete orders are built here:

* :func:`circular_weight_order` -- total degree, then the concave arc
  weight w(x[a,b]) = (b-a)(n-(b-a)) with larger weight greater (y's weigh
  nothing).  For every 1 <= i < j < k < l <= n it makes x[i,k]*x[j,l] the
  leading monomial of the three-term Pfaffian quadric on (i,j,k,l).
* :func:`layered_order` -- the five-layer refinement adapted to the
  quotient-bundle ideal: total degree; terms containing any of
  y[2..n-1] demoted; terms containing x[n-1,n] demoted; lexicographic
  comparison of the y-exponents with priority y[n] > y[1] > y[2] > ... >
  y[n-1]; then the circular weight on the x-part.
"""

from __future__ import annotations

from .poly import Monomial, Ring


class TotalDegree:
    name = "total-degree"

    def component(self, R: Ring):
        def val(m: Monomial) -> int:
            return m.degree

        return val


class WeightVector:
    """Integer weight per variable; direction flips the comparison."""

    def __init__(self, weights: dict[int, int], larger_is_greater: bool = True, name: str = "weight"):
        self.weights = weights
        self.larger_is_greater = larger_is_greater
        self.name = name

    def component(self, R: Ring):
        weights = self.weights
        sign = 1 if self.larger_is_greater else -1

        def val(m: Monomial) -> int:
            return sign * sum(weights.get(k, 0) * e for k, e in m.exps)

        return val


class RestrictedDegree:
    """Degree in a subset of variables; 'smaller' direction demotes the subset."""

    def __init__(self, var_indices, larger_is_greater: bool = False, name: str = "restricted-degree"):
        self.var_indices = frozenset(var_indices)
        self.larger_is_greater = larger_is_greater
        self.name = name

    def component(self, R: Ring):
        subset = self.var_indices
        sign = 1 if self.larger_is_greater else -1

        def val(m: Monomial) -> int:
            return sign * sum(e for k, e in m.exps if k in subset)

        return val


class RestrictedLex:
    """Lexicographic comparison of exponents along a priority list of variables."""

    def __init__(self, priority, name: str = "restricted-lex"):
        self.priority = tuple(priority)
        self.name = name

    def component(self, R: Ring):
        priority = self.priority

        def val(m: Monomial) -> tuple[int, ...]:
            return tuple(m.exponent(k) for k in priority)

        return val


class MonomialOrder:
    """Total multiplicative monomial order given by a layer stack.

    The final tie-break is reverse-lexicographic on the canonical variable
    enumeration (last differing variable with the smaller exponent wins),
    so the comparison is total even when every layer ties.
    """

    def __init__(self, R: Ring, layers, name: str = "order"):
        self.ring = R
        self.layers = tuple(layers)
        self.name = name
        self._components = [layer.component(R) for layer in self.layers]
        self._cache: dict[Monomial, tuple] = {}
        self._nvars = R.nvars

    def key(self, m: Monomial) -> tuple:
        k = self._cache.get(m)
        if k is None:
            if m.ring is not self.ring:
                raise ValueError(
                    f"ambient mismatch: monomial has n={m.ring.n}, order has n={self.ring.n}"
                )
            revlex = [0] * self._nvars
            for vk, e in m.exps:
                revlex[self._nvars - 1 - vk] = -e
            k = tuple(c(m) for c in self._components) + tuple(revlex)
            self._cache[m] = k
        return k

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0, or 1 as a is smaller than, equal to, or greater than b."""
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return -1
        if ka > kb:
            return 1
        return 0

    def layer_names(self) -> list[str]:
        return [layer.name for layer in self.layers]

    def __repr__(self) -> str:
        return f"MonomialOrder({self.name}, n={self.ring.n})"


def arc_weight(n: int, i: int, j: int) -> int:
    """Concave circular weight of the pair (i, j): (j-i)(n-(j-i)) for i < j."""
    s = j - i
    return s * (n - s)


def circular_weight_order(R: Ring) -> MonomialOrder:
    """Order selecting the crossing monomial x[i,k]*x[j,l] in every Pfaffian.

    Strictness of the selection reduces to 2b(n-(a+b+c)) > 0 and 2ac > 0
    for the consecutive gaps a, b, c of i < j < k < l; the property tests
    confirm it exhaustively for n <= 10.
    """
    if R.n < 4:
        raise ValueError(f"circular order needs n >= 4, got n={R.n}")
    weights = {}
    for k in R.x_indices:
        v = R.variables[k]
        weights[k] = arc_weight(R.n, v.i, v.j)
    return MonomialOrder(
        R,
        [TotalDegree(), WeightVector(weights, larger_is_greater=True, name="circular-weight")],
        name="circular",
    )


def layered_order(R: Ring) -> MonomialOrder:
    """The five-layer order under which the bundle ideal's generators are a
    Groebner basis with squarefree quadratic leading terms."""
    n = R.n
    if n < 5:
        raise ValueError(f"layered order needs n >= 5, got n={n}")
    mid_y = [R.index[R.y(i)] for i in range(2, n)]
    corner = [R.index[R.xvar(n - 1, n)]]
    y_priority = [R.index[R.y(n)], R.index[R.y(1)]] + [R.index[R.y(i)] for i in range(2, n)]
    weights = {}
    for k in R.x_indices:
        v = R.variables[k]
        weights[k] = arc_weight(n, v.i, v.j)
    return MonomialOrder(
        R,
        [
            TotalDegree(),
            RestrictedDegree(mid_y, larger_is_greater=False, name="mid-fiber-demoted"),
            RestrictedDegree(corner, larger_is_greater=False, name="corner-pair-demoted"),
            RestrictedLex(y_priority, name="fiber-lex"),
            WeightVector(weights, larger_is_greater=True, name="circular-weight"),
        ],
        name="layered",
    )


def display_order(R: Ring) -> MonomialOrder:
    """Fixed ambient order used for canonical printing (degree + tie-break)."""
    return MonomialOrder(R, [TotalDegree()], name="display")
