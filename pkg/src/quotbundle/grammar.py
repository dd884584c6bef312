"""Plain-text polynomial grammar, both directions.

Variables are written x[i,j] and y[i]; ^ is a power, * a product, and
coefficients are integers or fractions p/q.  Example:

    x[1,2]*x[3,4] - x[1,3]*x[2,4] + x[1,4]*x[2,3]

x[j,i] with j > i is accepted and normalized with the antisymmetry sign.
Ideals are newline-separated polynomials; '#' starts a comment that runs
to the end of the line.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .orders import MonomialOrder, display_order
from .poly import Polynomial, Ring

_TOKEN = re.compile(
    r"""
    (?P<xvar>x\[\s*(\d+)\s*,\s*(\d+)\s*\])
  | (?P<yvar>y\[\s*(\d+)\s*\])
  | (?P<number>\d+(?:\s*/\s*\d+)?)
  | (?P<op>[\^\*\+\-\(\)])
  | (?P<ws>\s+)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)

_DISPLAY: dict[int, MonomialOrder] = {}


def _display(R: Ring) -> MonomialOrder:
    order = _DISPLAY.get(R.n)
    if order is None:
        order = display_order(R)
        _DISPLAY[R.n] = order
    return order


def _tokens(text: str):
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            raise ValueError(f"unexpected character {m.group()!r} in polynomial text")
        yield kind, m


def parse_polynomial(R: Ring, text: str) -> Polynomial:
    """Parse one polynomial in the plain-text grammar over the given ring."""
    toks = list(_tokens(text))
    if not toks:
        raise ValueError("empty polynomial text")
    pos = 0
    result = R.zero

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    while pos < len(toks):
        sign = 1
        kind, m = peek()
        while kind == "op" and m.group() in "+-":
            if m.group() == "-":
                sign = -sign
            pos += 1
            kind, m = peek()
        if kind is None:
            raise ValueError("dangling sign at end of polynomial text")
        coeff = Fraction(sign)
        mono_pairs = []
        saw_factor = False
        while True:
            kind, m = peek()
            if kind == "number":
                coeff *= Fraction(m.group().replace(" ", ""))
                pos += 1
            elif kind == "xvar":
                i, j = int(m.group(2)), int(m.group(3))
                v, s = R.x(i, j)
                pos += 1
                e = _maybe_power(toks, pos)
                if e is not None:
                    pos += 2
                    exp = e
                else:
                    exp = 1
                coeff *= s**exp
                mono_pairs.append((v, exp))
            elif kind == "yvar":
                v = R.y(int(m.group(5)))
                pos += 1
                e = _maybe_power(toks, pos)
                if e is not None:
                    pos += 2
                    exp = e
                else:
                    exp = 1
                mono_pairs.append((v, exp))
            else:
                break
            saw_factor = True
            kind, m = peek()
            if kind == "op" and m.group() == "*":
                pos += 1
                continue
            break
        if not saw_factor:
            raise ValueError("expected a coefficient or variable in polynomial text")
        result = result + R.term(coeff, R.monomial(mono_pairs))
    return result


def _maybe_power(toks, pos) -> int | None:
    if pos < len(toks) and toks[pos][0] == "op" and toks[pos][1].group() == "^":
        if pos + 1 >= len(toks) or toks[pos + 1][0] != "number":
            raise ValueError("expected an integer exponent after '^'")
        text = toks[pos + 1][1].group()
        if "/" in text:
            raise ValueError("exponents must be integers")
        return int(text)
    return None


def format_polynomial(p: Polynomial, order: MonomialOrder | None = None) -> str:
    """Canonical text: terms descending under the ambient display order."""
    if p.is_zero():
        return "0"
    if order is None:
        order = _display(p.ring)
    parts = []
    for k, (m, c) in enumerate(p.sorted_terms(order)):
        neg = c < 0
        mag = -c if neg else c
        if m.is_one():
            body = str(mag)
        elif mag == 1:
            body = m.text()
        else:
            body = f"{mag}*{m.text()}"
        if k == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def parse_ideal(R: Ring, text: str) -> list[Polynomial]:
    """Parse newline-separated polynomials; '#' comments and blanks skipped."""
    polys = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if body:
            polys.append(parse_polynomial(R, body))
    return polys


def format_ideal(polys, header: str | None = None) -> str:
    lines = []
    if header:
        for h in header.splitlines():
            lines.append(f"# {h}")
    lines.extend(format_polynomial(p) for p in polys)
    return "\n".join(lines) + "\n"
