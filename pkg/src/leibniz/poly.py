"""Exact sparse multivariate polynomials over the rationals.

A polynomial is stored as a map from exponent vectors to nonzero
``fractions.Fraction`` coefficients.  The exponent vector is a tuple with one
nonnegative integer per chart variable, so the zero polynomial is the empty
map and equal polynomials always have identical storage (canonical form).
Terms are ordered graded-lexicographically on the chart's variable order;
printing, evaluation and iteration all follow that single order, which makes
every operation deterministic.

Coordinates live on a :class:`Chart`: a tuple of base variable names plus an
optional tuple of fiber variable names (for dual-bundle charts).  The text
syntax for polynomials is the one used throughout the package::

    3/5*x1^2*xi3 - 2*x2 + 0.25

Decimal literals are parsed as exact rationals (``0.6`` becomes ``3/5``).

Out of scope by design: rational functions, transcendental coefficients and
Groebner-style normal forms.  Products that would exceed the degree cap
(default 16, see :func:`set_degree_cap`) raise :class:`DegreeCapError` to
fail fast on runaway expression growth.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

Exponent = tuple[int, ...]

_DEGREE_CAP = 16

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


class ChartMismatchError(ValueError):
    """Raised when polynomials over different charts are combined."""


class DegreeCapError(ArithmeticError):
    """Raised when a product would exceed the configured degree cap."""


class PolyParseError(ValueError):
    """Raised for malformed polynomial text."""


def set_degree_cap(cap: int) -> None:
    """Set the global total-degree cap checked by multiplication."""
    global _DEGREE_CAP
    if cap < 1:
        raise ValueError("degree cap must be positive")
    _DEGREE_CAP = cap


def get_degree_cap() -> int:
    return _DEGREE_CAP


@dataclass(frozen=True)
class Chart:
    """An ordered coordinate chart: base variables plus optional fiber variables."""

    base: tuple[str, ...]
    fiber: tuple[str, ...] = ()
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        names = self.base + self.fiber
        if not names:
            raise ValueError("chart needs at least one variable")
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError("chart variable names must be distinct")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def standard(cls, n: int, m: int = 0) -> "Chart":
        """Chart with base names x1..xn and fiber names xi1..xim."""
        return cls(
            base=tuple(f"x{i}" for i in range(1, n + 1)),
            fiber=tuple(f"xi{a}" for a in range(1, m + 1)),
        )

    @property
    def names(self) -> tuple[str, ...]:
        return self.base + self.fiber

    @property
    def dim(self) -> int:
        return len(self.base) + len(self.fiber)

    @property
    def n_base(self) -> int:
        return len(self.base)

    @property
    def n_fiber(self) -> int:
        return len(self.fiber)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not on chart {self.names}") from None

    def base_only(self) -> "Chart":
        return Chart(base=self.base)


def _glex_key(exponent: Exponent) -> tuple[int, Exponent]:
    return (sum(exponent), exponent)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("chart", "_terms")

    def __init__(self, chart: Chart, terms: Mapping[Exponent, Fraction] | None = None):
        cleaned: dict[Exponent, Fraction] = {}
        if terms:
            dim = chart.dim
            for exponent, coeff in terms.items():
                exponent = tuple(exponent)
                if len(exponent) != dim:
                    raise ValueError(
                        f"exponent {exponent} has length {len(exponent)}, chart has {dim} variables"
                    )
                if any(e < 0 for e in exponent):
                    raise ValueError(f"negative exponent in {exponent}")
                coeff = _as_fraction(coeff)
                if coeff != 0:
                    cleaned[exponent] = coeff
        self.chart = chart
        self._terms = cleaned

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> "Poly":
        return cls(chart)

    @classmethod
    def const(cls, chart: Chart, value) -> "Poly":
        return cls(chart, {(0,) * chart.dim: _as_fraction(value)})

    @classmethod
    def var(cls, chart: Chart, name: str) -> "Poly":
        exponent = [0] * chart.dim
        exponent[chart.index(name)] = 1
        return cls(chart, {tuple(exponent): Fraction(1)})

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in ascending graded-lex order (deterministic)."""
        for exponent in sorted(self._terms, key=_glex_key):
            yield exponent, self._terms[exponent]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def fiber_degree(self) -> int:
        """Total degree in the fiber variables only; -1 for zero."""
        if not self._terms:
            return -1
        nb = self.chart.n_base
        return max(sum(e[nb:]) for e in self._terms)

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.chart.dim, Fraction(0))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        """Graded-lex maximal term; raises on the zero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exponent = max(self._terms, key=_glex_key)
        return exponent, self._terms[exponent]

    # -- arithmetic --------------------------------------------------------

    def _check_chart(self, other: "Poly") -> None:
        if self.chart != other.chart:
            raise ChartMismatchError(
                f"charts differ: {self.chart.names} vs {other.chart.names}"
            )

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            self._check_chart(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.chart, other)
        return None

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result = dict(self._terms)
        for exponent, coeff in other._terms.items():
            acc = result.get(exponent, Fraction(0)) + coeff
            if acc == 0:
                result.pop(exponent, None)
            else:
                result[exponent] = acc
        return Poly(self.chart, result)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.chart, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            factor = _as_fraction(other)
            if factor == 0:
                return Poly.zero(self.chart)
            return Poly(self.chart, {e: c * factor for e, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_chart(other)
        if self.is_zero or other.is_zero:
            return Poly.zero(self.chart)
        if self.degree() + other.degree() > _DEGREE_CAP:
            raise DegreeCapError(
                f"product degree {self.degree() + other.degree()} exceeds cap {_DEGREE_CAP}"
            )
        result: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                acc = result.get(exponent, Fraction(0)) + c1 * c2
                if acc == 0:
                    result.pop(exponent, None)
                else:
                    result[exponent] = acc
        return Poly(self.chart, result)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Poly":
        if not isinstance(power, int) or power < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = Poly.const(self.chart, 1)
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.chart, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.chart == other.chart and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.chart.names, frozenset(self._terms.items())))

    # -- calculus / evaluation --------------------------------------------

    def diff(self, name: str) -> "Poly":
        """Exact partial derivative with respect to one chart variable."""
        idx = self.chart.index(name)
        result: dict[Exponent, Fraction] = {}
        for exponent, coeff in self._terms.items():
            e = exponent[idx]
            if e == 0:
                continue
            lowered = exponent[:idx] + (e - 1,) + exponent[idx + 1 :]
            result[lowered] = result.get(lowered, Fraction(0)) + coeff * e
        return Poly(self.chart, result)

    def evaluate(self, point: Sequence[float]) -> float:
        """Float evaluation, accumulating terms in graded-lex order."""
        if len(point) != self.chart.dim:
            raise ValueError(
                f"point has {len(point)} components, chart has {self.chart.dim}"
            )
        acc = 0.0
        for exponent, coeff in self.terms():
            term = float(coeff)
            for value, e in zip(point, exponent):
                for _ in range(e):
                    term *= value
            acc += term
        return acc

    def evaluate_exact(self, point: Sequence[Fraction]) -> Fraction:
        """Exact rational evaluation."""
        acc = Fraction(0)
        for exponent, coeff in self.terms():
            term = coeff
            for value, e in zip(point, exponent):
                term *= _as_fraction(value) ** e
            acc += term
        return acc

    # -- formatting --------------------------------------------------------

    def _format_term(self, exponent: Exponent, coeff: Fraction) -> str:
        factors = []
        for name, e in zip(self.chart.names, exponent):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        magnitude = abs(coeff)
        if not factors:
            return str(magnitude)
        if magnitude == 1:
            return "*".join(factors)
        return "*".join([str(magnitude)] + factors)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        # display in descending graded-lex order
        for exponent in sorted(self._terms, key=_glex_key, reverse=True):
            coeff = self._terms[exponent]
            text = self._format_term(exponent, coeff)
            if not parts:
                parts.append(f"-{text}" if coeff < 0 else text)
            else:
                parts.append(f"- {text}" if coeff < 0 else f"+ {text}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def embed(p: Poly, chart: Chart) -> Poly:
    """Reinterpret ``p`` on a chart containing all of its variables."""
    if p.chart == chart:
        return p
    missing = [name for name in p.chart.names if name not in chart.names]
    if missing:
        raise ChartMismatchError(f"target chart is missing variables {missing}")
    positions = [chart.index(name) for name in p.chart.names]
    terms: dict[Exponent, Fraction] = {}
    for exponent, coeff in p.terms():
        lifted = [0] * chart.dim
        for pos, e in zip(positions, exponent):
            lifted[pos] = e
        terms[tuple(lifted)] = coeff
    return Poly(chart, terms)


def restrict(p: Poly, chart: Chart) -> Poly:
    """Inverse of :func:`embed`: project onto a sub-chart.

    Every variable of ``p`` that is dropped by ``chart`` must appear with
    exponent zero in every term, otherwise ``ChartMismatchError`` is raised.
    """
    if p.chart == chart:
        return p
    positions = []
    for pos, name in enumerate(p.chart.names):
        if name not in chart.names:
            positions.append((pos, name))
    keep = [p.chart.index(name) for name in chart.names]
    terms: dict[Exponent, Fraction] = {}
    for exponent, coeff in p.terms():
        for pos, name in positions:
            if exponent[pos] != 0:
                raise ChartMismatchError(
                    f"cannot restrict: term depends on dropped variable {name!r}"
                )
        terms[tuple(exponent[k] for k in keep)] = coeff
    return Poly(chart, terms)


class ExactDivisionError(ArithmeticError):
    """Raised when a polynomial quotient would not be exact."""


def divide_exact(p: Poly, d: Poly) -> Poly:
    """Exact quotient p / d; raises ExactDivisionError unless d divides p."""
    if not isinstance(d, Poly) or not isinstance(p, Poly):
        raise TypeError("divide_exact expects Poly operands")
    if p.chart != d.chart:
        raise ChartMismatchError("quotient operands on different charts")
    if d.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    quotient: dict[Exponent, Fraction] = {}
    remainder = p
    d_exp, d_coeff = d.leading_term()
    while not remainder.is_zero:
        r_exp, r_coeff = remainder.leading_term()
        step = tuple(a - b for a, b in zip(r_exp, d_exp))
        if any(e < 0 for e in step):
            raise ExactDivisionError(
                f"{d} does not divide {p} (stuck at remainder term {r_exp})"
            )
        factor = r_coeff / d_coeff
        quotient[step] = quotient.get(step, Fraction(0)) + factor
        remainder = remainder - Poly(p.chart, {step: factor}) * d
    return Poly(p.chart, quotient)


def grad(p: Poly) -> tuple[Poly, ...]:
    """Gradient with respect to every chart variable, in chart order."""
    return tuple(p.diff(name) for name in p.chart.names)


# -- text syntax -----------------------------------------------------------

_DECIMAL_RE = re.compile(r"^\d+\.\d+$|^\.\d+$|^\d+\.$")
_INT_RE = re.compile(r"^\d+$")
_RATIONAL_RE = re.compile(r"^(\d+)/(\d+)$")
_FACTOR_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(\d+))?$")


def _parse_coefficient(token: str) -> Fraction | None:
    if _INT_RE.match(token):
        return Fraction(int(token))
    if _DECIMAL_RE.match(token):
        return Fraction(token)  # exact: "0.6" -> 3/5
    m = _RATIONAL_RE.match(token)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2)))
    return None


def parse_poly(chart: Chart, text: str) -> Poly:
    """Parse the package's polynomial text syntax on the given chart."""
    stripped = text.strip()
    if not stripped:
        raise PolyParseError("empty polynomial text")
    # split into signed terms; only a single leading sign per term is allowed
    pieces: list[tuple[int, str]] = []
    sign = 1
    i = 0
    if stripped[0] in "+-":
        sign = -1 if stripped[0] == "-" else 1
        i = 1
    start = i
    while i <= len(stripped):
        if i == len(stripped) or stripped[i] in "+-":
            term = stripped[start:i].strip()
            if not term:
                raise PolyParseError(f"dangling sign in {text!r}")
            pieces.append((sign, term))
            if i < len(stripped):
                sign = -1 if stripped[i] == "-" else 1
            i += 1
            start = i
        else:
            i += 1

    total = Poly.zero(chart)
    for sign, term_text in pieces:
        coeff = Fraction(sign)
        exponent = [0] * chart.dim
        for factor in term_text.split("*"):
            factor = factor.strip()
            if not factor:
                raise PolyParseError(f"empty factor in term {term_text!r}")
            value = _parse_coefficient(factor)
            if value is not None:
                coeff *= value
                continue
            m = _FACTOR_RE.match(factor)
            if not m:
                raise PolyParseError(f"cannot parse factor {factor!r}")
            name, power = m.group(1), int(m.group(2) or 1)
            try:
                idx = chart.index(name)
            except KeyError:
                raise PolyParseError(
                    f"unknown variable {name!r} (chart has {chart.names})"
                ) from None
            exponent[idx] += power
        total = total + Poly(chart, {tuple(exponent): coeff})
    return total


def format_poly(p: Poly) -> str:
    return str(p)


def poly_matrix(chart: Chart, rows: Sequence[Sequence[str | Poly | int]]) -> tuple[tuple[Poly, ...], ...]:
    """Convenience: build a matrix of Polys from text/ints/Polys."""
    out = []
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, Poly):
                cells.append(cell)
            elif isinstance(cell, (int, Fraction)):
                cells.append(Poly.const(chart, cell))
            else:
                cells.append(parse_poly(chart, cell))
        out.append(tuple(cells))
    return tuple(out)
