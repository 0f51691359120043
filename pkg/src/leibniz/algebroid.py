"""Leibniz algebroid structures on trivial bundles over a coordinate chart.

An :class:`AlgebroidStructure` stores the structure functions ``C[a][b][d]``
of the basis-section bracket, plus left/right anchor matrices ``rho1`` and
``rho2`` (entry ``[i][a]`` is the x^i-component of the anchor applied to the
a-th basis section).  Such a structure corresponds one-to-one with a
fiberwise-linear 2-contravariant tensor on the dual bundle chart
(x^1..x^n, xi1..xim), laid out as

    T(d xi_a, d xi_b) = C[a][b][d] * xi_d       (summed over d)
    T(d xi_a, d x^i)  = rho1[i][a]
    T(d x^i,  d xi_a) = -rho2[i][a]
    T(d x^i,  d x^j)  = 0

Also here: the section bracket and its defining-identity certificates, exact
classification (pre-Lie / symmetric / general), a constructor that derives a
fiber-annihilating symmetric partner tensor from a fiberwise-linear
Hamiltonian (certified, never assumed), exact polynomial fractions for the
rational structure entries that construction produces, and a JSON structure
file format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .brackets import IdentityCertificate, TensorField2
from .poly import (
    Chart,
    ChartMismatchError,
    ExactDivisionError,
    Poly,
    divide_exact,
    embed,
    parse_poly,
    poly_matrix,
    restrict,
)


class NotLinearError(ValueError):
    """A dual-chart tensor is not fiberwise linear; names the bad entry."""


class ZeroCoefficientError(ValueError):
    """A fiberwise-linear Hamiltonian has an identically-zero coefficient."""


class CertificationError(ValueError):
    """A constructed object failed its exact certificate."""

    def __init__(self, message: str, residuals=None):
        super().__init__(message)
        self.residuals = residuals


# -- polynomial fractions ------------------------------------------------------


class PolyFraction:
    """Exact quotient of two polynomials on one chart.

    No canonical form is maintained: equality is decided by exact
    cross-multiplication, and conversion to Poly performs exact division.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | int = 1):
        if isinstance(den, (int, Fraction)):
            den = Poly.const(num.chart, den)
        if num.chart != den.chart:
            raise ChartMismatchError("fraction parts on different charts")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        # cheap exact cancellation when the denominator divides out
        if den.degree() == 0:
            num = num * (Fraction(1) / den.constant_term())
            den = Poly.const(num.chart, 1)
        elif not num.is_zero:
            try:
                num = divide_exact(num, den)
                den = Poly.const(num.chart, 1)
            except ExactDivisionError:
                pass
        self.num = num
        self.den = den

    @property
    def chart(self) -> Chart:
        return self.num.chart

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @classmethod
    def zero(cls, chart: Chart) -> "PolyFraction":
        return cls(Poly.zero(chart))

    def _coerce(self, other) -> "PolyFraction | None":
        if isinstance(other, PolyFraction):
            return other
        if isinstance(other, Poly):
            return PolyFraction(other)
        if isinstance(other, (int, Fraction)):
            return PolyFraction(Poly.const(self.chart, other))
        return None

    def __add__(self, other) -> "PolyFraction":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return PolyFraction(self.num + other.num, self.den)
        return PolyFraction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "PolyFraction":
        return PolyFraction(-self.num, self.den)

    def __sub__(self, other) -> "PolyFraction":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PolyFraction":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "PolyFraction":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PolyFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero

    def __hash__(self):
        raise TypeError("PolyFraction is unhashable (no canonical form)")

    def to_poly(self) -> Poly:
        """Exact conversion; raises ExactDivisionError if not polynomial."""
        if self.num.is_zero:
            return Poly.zero(self.chart)
        return divide_exact(self.num, self.den)

    def __str__(self) -> str:
        if self.den == Poly.const(self.chart, 1):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"PolyFraction({str(self)!r})"


# -- structures ---------------------------------------------------------------


def dual_chart_for(base: Chart, m: int) -> Chart:
    """The (x, xi) chart of the dual bundle over ``base`` with fiber rank m."""
    if base.n_fiber:
        raise ValueError("base chart must have no fiber variables")
    return Chart(base=base.base, fiber=tuple(f"xi{a + 1}" for a in range(m)))


@dataclass(frozen=True)
class Section:
    """A section of the rank-m trivial bundle: m components on the base chart."""

    chart: Chart
    components: tuple[Poly, ...]

    def __post_init__(self):
        if self.chart.n_fiber:
            raise ValueError("sections live over the base chart")
        for p in self.components:
            if p.chart != self.chart:
                raise ChartMismatchError("section component on wrong chart")

    @classmethod
    def basis(cls, chart: Chart, m: int, a: int) -> "Section":
        comps = [Poly.zero(chart)] * m
        comps[a] = Poly.const(chart, 1)
        return cls(chart, tuple(comps))

    @property
    def m(self) -> int:
        return len(self.components)


class AlgebroidStructure:
    """Structure functions and anchors of a Leibniz algebroid over a chart."""

    __slots__ = ("n", "m", "base_chart", "dual_chart", "C", "rho1", "rho2")

    def __init__(
        self,
        base_chart: Chart,
        m: int,
        C: Sequence[Sequence[Sequence[Poly]]],
        rho1: Sequence[Sequence[Poly]],
        rho2: Sequence[Sequence[Poly]],
    ):
        if base_chart.n_fiber:
            raise ValueError("base chart must have no fiber variables")
        n = base_chart.dim
        if len(C) != m or any(len(row) != m or any(len(e) != m for e in row) for row in C):
            raise ValueError(f"C must be {m}x{m}x{m}")
        if len(rho1) != n or any(len(r) != m for r in rho1):
            raise ValueError(f"rho1 must be {n}x{m} (row = base index)")
        if len(rho2) != n or any(len(r) != m for r in rho2):
            raise ValueError(f"rho2 must be {n}x{m} (row = base index)")
        for block in (C, rho1, rho2):
            for row in block:
                for entry in row:
                    for p in entry if isinstance(entry, (list, tuple)) else (entry,):
                        if p.chart != base_chart:
                            raise ChartMismatchError(
                                "structure entries must live on the base chart"
                            )
        self.n = n
        self.m = m
        self.base_chart = base_chart
        self.dual_chart = dual_chart_for(base_chart, m)
        self.C = tuple(tuple(tuple(e) for e in row) for row in C)
        self.rho1 = tuple(tuple(row) for row in rho1)
        self.rho2 = tuple(tuple(row) for row in rho2)

    @classmethod
    def from_strings(cls, base_chart: Chart, m: int, C, rho1, rho2) -> "AlgebroidStructure":
        """Build from nested lists of polynomial strings / ints / Polys."""
        C_p = [poly_matrix(base_chart, row) for row in C]
        rho1_p = poly_matrix(base_chart, rho1)
        rho2_p = poly_matrix(base_chart, rho2)
        return cls(base_chart, m, C_p, rho1_p, rho2_p)

    @classmethod
    def zero(cls, base_chart: Chart, m: int) -> "AlgebroidStructure":
        z = Poly.zero(base_chart)
        n = base_chart.dim
        return cls(
            base_chart,
            m,
            [[[z] * m for _ in range(m)] for _ in range(m)],
            [[z] * m for _ in range(n)],
            [[z] * m for _ in range(n)],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebroidStructure):
            return NotImplemented
        return (
            self.base_chart == other.base_chart
            and self.m == other.m
            and self.C == other.C
            and self.rho1 == other.rho1
            and self.rho2 == other.rho2
        )


# -- lifts and the structure <-> tensor correspondence -------------------------


def lift_section(A: AlgebroidStructure, sigma: Section) -> Poly:
    """The fiberwise-linear function sum_a xi_a * sigma^a(x) on the dual chart."""
    if sigma.m != A.m or sigma.chart != A.base_chart:
        raise ChartMismatchError("section does not match the structure's bundle")
    acc = Poly.zero(A.dual_chart)
    for a, comp in enumerate(sigma.components):
        xi = Poly.var(A.dual_chart, A.dual_chart.fiber[a])
        acc = acc + xi * embed(comp, A.dual_chart)
    return acc


@dataclass(frozen=True)
class DualChartTensor:
    """A 2-contravariant tensor on the dual chart, with bundle shape (n, m)."""

    tensor: TensorField2
    n: int
    m: int

    def __post_init__(self):
        if self.tensor.chart.n_base != self.n or self.tensor.chart.n_fiber != self.m:
            raise ValueError("tensor chart does not match the declared (n, m)")

    def certify_linear(self) -> tuple[bool, str]:
        """Exact fiberwise-linearity check; returns (ok, reason-if-not)."""
        names = self.tensor.chart.names
        n, m = self.n, self.m
        for i in range(n):
            for j in range(n):
                if not self.tensor.entry(i, j).is_zero:
                    return False, f"base-base entry ({names[i]}, {names[j]}) is nonzero"
        for i in range(n):
            for a in range(m):
                for p, slot in (
                    (self.tensor.entry(i, n + a), (names[i], names[n + a])),
                    (self.tensor.entry(n + a, i), (names[n + a], names[i])),
                ):
                    if not p.is_zero and p.fiber_degree() > 0:
                        return False, f"anchor entry {slot} depends on fiber variables"
        for a in range(m):
            for b in range(m):
                p = self.tensor.entry(n + a, n + b)
                if p.is_zero:
                    continue
                nb = self.tensor.chart.n_base
                for exponent, _ in p.terms():
                    if sum(exponent[nb:]) != 1:
                        return False, (
                            f"fiber-fiber entry ({names[n + a]}, {names[n + b]}) "
                            "has a term not of fiber degree 1"
                        )
        return True, ""

    @property
    def is_linear(self) -> bool:
        return self.certify_linear()[0]


def lambda_from_structure(A: AlgebroidStructure) -> DualChartTensor:
    """Assemble the fiberwise-linear tensor encoding the structure."""
    chart = A.dual_chart
    n, m = A.n, A.m
    zero = Poly.zero(chart)
    entries = [[zero] * (n + m) for _ in range(n + m)]
    xi = [Poly.var(chart, name) for name in chart.fiber]
    for i in range(n):
        for a in range(m):
            entries[i][n + a] = -embed(A.rho2[i][a], chart)
            entries[n + a][i] = embed(A.rho1[i][a], chart)
    for a in range(m):
        for b in range(m):
            acc = zero
            for d in range(m):
                if not A.C[a][b][d].is_zero:
                    acc = acc + embed(A.C[a][b][d], chart) * xi[d]
            entries[n + a][n + b] = acc
    result = DualChartTensor(TensorField2(chart, entries), n, m)
    ok, reason = result.certify_linear()
    if not ok:
        raise CertificationError(f"assembled tensor is not fiberwise linear: {reason}")
    return result


def _fiber_linear_decompose(p: Poly, n: int, m: int) -> list[Poly]:
    """Write a fiber-degree-1 Poly as sum_d xi_d * q_d(x); returns the q_d."""
    chart = p.chart
    base = chart.base_only()
    out = [Poly.zero(base) for _ in range(m)]
    for exponent, coeff in p.terms():
        fiber = exponent[n:]
        if sum(fiber) != 1:
            raise NotLinearError("entry has a term not of fiber degree 1")
        d = next(k for k, e in enumerate(fiber) if e == 1)
        out[d] = out[d] + Poly(base, {tuple(exponent[:n]): coeff})
    return out


def structure_from_lambda(L: DualChartTensor | TensorField2) -> AlgebroidStructure:
    """Read (C, rho1, rho2) back off a fiberwise-linear dual-chart tensor."""
    if isinstance(L, TensorField2):
        L = DualChartTensor(L, L.chart.n_base, L.chart.n_fiber)
    ok, reason = L.certify_linear()
    if not ok:
        raise NotLinearError(reason)
    n, m = L.n, L.m
    chart = L.tensor.chart
    base = chart.base_only()
    rho1 = [[restrict(L.tensor.entry(n + a, i), base) for a in range(m)] for i in range(n)]
    rho2 = [[restrict(-L.tensor.entry(i, n + a), base) for a in range(m)] for i in range(n)]
    C = [
        [_fiber_linear_decompose(L.tensor.entry(n + a, n + b), n, m) for b in range(m)]
        for a in range(m)
    ]
    return AlgebroidStructure(base, m, C, rho1, rho2)


# -- section bracket and its defining identities --------------------------------


def _anchor_derivative(A: AlgebroidStructure, which: int, sigma: Section, f: Poly) -> Poly:
    """rho(sigma) applied to a base function f, as a base Poly."""
    rho = A.rho1 if which == 1 else A.rho2
    acc = Poly.zero(A.base_chart)
    for i, name in enumerate(A.base_chart.names):
        df = f.diff(name)
        if df.is_zero:
            continue
        for a, comp in enumerate(sigma.components):
            acc = acc + comp * rho[i][a] * df
    return acc


def section_bracket(A: AlgebroidStructure, s1: Section, s2: Section) -> Section:
    """Bilinear bracket of sections extending the basis values C[a][b]."""
    if s1.m != A.m or s2.m != A.m:
        raise ValueError("section rank does not match the structure")
    base = A.base_chart
    comps = []
    for d in range(A.m):
        acc = Poly.zero(base)
        for a in range(A.m):
            for b in range(A.m):
                if not (s1.components[a].is_zero or s2.components[b].is_zero):
                    acc = acc + s1.components[a] * s2.components[b] * A.C[a][b][d]
        acc = acc + _anchor_derivative(A, 1, s1, s2.components[d])
        acc = acc - _anchor_derivative(A, 2, s2, s1.components[d])
        comps.append(acc)
    return Section(base, tuple(comps))


@dataclass(frozen=True)
class StructureTensorCertificate:
    """Exact pass/fail for the three structure-tensor compatibility identities."""

    bracket_lift: IdentityCertificate
    left_anchor: IdentityCertificate
    right_anchor: IdentityCertificate

    @property
    def passed(self) -> bool:
        return bool(self.bracket_lift and self.left_anchor and self.right_anchor)

    def __bool__(self) -> bool:
        return self.passed

    def items(self):
        return (
            ("bracket-lift", self.bracket_lift),
            ("left-anchor", self.left_anchor),
            ("right-anchor", self.right_anchor),
        )


def theorem1_check(
    A: AlgebroidStructure, s1: Section, s2: Section, f: Poly
) -> StructureTensorCertificate:
    """Certify the structure <-> tensor compatibility identities exactly.

    bracket-lift: lift[s1, s2] = T(d lift s1, d lift s2)
    left-anchor:  T(d lift s, d f~) = (rho1(s) f)~ for the base function f
    right-anchor: T(d f~, d lift s) = -(rho2(s) f)~; the sign is forced by
                  the block layout (the x-row block carries -rho2)
    """
    if f.chart != A.base_chart:
        raise ChartMismatchError("f must be a base-chart function")
    T = lambda_from_structure(A).tensor
    chart = A.dual_chart
    l1 = lift_section(A, s1)
    l2 = lift_section(A, s2)
    f_lift = embed(f, chart)

    r_bracket = T.apply(l1, l2) - lift_section(A, section_bracket(A, s1, s2))
    r_left = T.apply(l1, f_lift) - embed(_anchor_derivative(A, 1, s1, f), chart)
    r_right = T.apply(f_lift, l1) + embed(_anchor_derivative(A, 2, s1, f), chart)
    return StructureTensorCertificate(
        IdentityCertificate("bracket-lift", r_bracket.is_zero, r_bracket),
        IdentityCertificate("left-anchor", r_left.is_zero, r_left),
        IdentityCertificate(
            "right-anchor",
            r_right.is_zero,
            r_right,
            note="checked as T(df~, d lift s) = -(rho2(s) f)~",
        ),
    )


def classify_algebroid(A: AlgebroidStructure) -> str:
    """Exact classification: pre_lie, symmetric, or general.

    pre_lie: C antisymmetric in (a, b) and rho1 == rho2.
    symmetric: C symmetric in (a, b) and rho2 == -rho1.
    Structures satisfying both (e.g. the zero structure) report pre_lie.
    """
    c_anti = all(
        (A.C[a][b][d] + A.C[b][a][d]).is_zero
        for a in range(A.m)
        for b in range(a, A.m)
        for d in range(A.m)
    )
    c_sym = all(
        (A.C[a][b][d] - A.C[b][a][d]).is_zero
        for a in range(A.m)
        for b in range(a + 1, A.m)
        for d in range(A.m)
    )
    anchors_equal = A.rho1 == A.rho2
    anchors_opposite = all(
        (A.rho1[i][a] + A.rho2[i][a]).is_zero
        for i in range(A.n)
        for a in range(A.m)
    )
    if c_anti and anchors_equal:
        return "pre_lie"
    if c_sym and anchors_opposite:
        return "symmetric"
    return "general"


# -- construction of a fiber-annihilating symmetric partner ---------------------


def fiber_linear_coefficients(h1: Poly) -> list[Poly]:
    """Coefficients h^a(x) of a fiberwise-linear h = sum_a xi_a h^a(x)."""
    chart = h1.chart
    if chart.n_fiber == 0:
        raise ValueError("Hamiltonian chart has no fiber variables")
    if h1.is_zero:
        return [Poly.zero(chart.base_only())] * chart.n_fiber
    return _fiber_linear_decompose(h1, chart.n_base, chart.n_fiber)


class Prop4DualTensor:
    """Symmetric-bracket partner tensor built from a fiberwise-linear h1.

    The fiber-fiber block is diagonal with exact-rational entries (stored as
    PolyFraction, contracted against xi); the anchor blocks are polynomial:
    the xi-x block carries +rho2 and the x-xi block carries +rho2 (i.e. the
    right-anchor slot holds -rho2, making the assembled tensor symmetric).
    By construction it annihilates h1 in either slot; construction fails
    rather than return an uncertified tensor.
    """

    __slots__ = ("dual_chart", "n", "m", "h1", "rho2", "c_diag")

    def __init__(self, dual_chart: Chart, h1: Poly, rho2, c_diag):
        self.dual_chart = dual_chart
        self.n = dual_chart.n_base
        self.m = dual_chart.n_fiber
        self.h1 = h1
        self.rho2 = tuple(tuple(row) for row in rho2)  # n x m, base Polys
        self.c_diag = tuple(c_diag)  # m PolyFractions on the dual chart

    # full matrix entry (mu, nu) as a PolyFraction, chart order (x.., xi..)
    def entry(self, mu: int, nu: int) -> PolyFraction:
        chart = self.dual_chart
        n, m = self.n, self.m
        zero = PolyFraction.zero(chart)
        if mu < n and nu < n:
            return zero
        if mu < n <= nu:  # x row, xi column: -(-rho2) = +rho2
            return PolyFraction(embed(self.rho2[mu][nu - n], chart))
        if nu < n <= mu:  # xi row, x column: +rho2
            return PolyFraction(embed(self.rho2[nu][mu - n], chart))
        a, b = mu - n, nu - n
        return self.c_diag[a] if a == b else zero

    def bracket_fraction(self, f: Poly, h: Poly) -> PolyFraction:
        """Exact [f, h] for this tensor, as a PolyFraction."""
        chart = self.dual_chart
        df = [f.diff(name) for name in chart.names]
        dh = [h.diff(name) for name in chart.names]
        acc = PolyFraction.zero(chart)
        for mu, dfm in enumerate(df):
            if dfm.is_zero:
                continue
            for nu, dhn in enumerate(dh):
                if dhn.is_zero:
                    continue
                e = self.entry(mu, nu)
                if not e.is_zero:
                    acc = acc + e * dfm * dhn
        return acc

    def annihilation_residuals(self, h: Poly, slot: str = "first") -> dict[str, PolyFraction]:
        """Bracket of h against every coordinate, h in the given slot."""
        if slot not in ("first", "second"):
            raise ValueError("slot must be 'first' or 'second'")
        out = {}
        for name in self.dual_chart.names:
            coord = Poly.var(self.dual_chart, name)
            if slot == "first":
                out[name] = self.bracket_fraction(h, coord)
            else:
                out[name] = self.bracket_fraction(coord, h)
        return out

    def annihilates(self, h: Poly, slot: str = "first") -> bool:
        return all(r.is_zero for r in self.annihilation_residuals(h, slot).values())

    def is_symmetric(self) -> bool:
        d = self.n + self.m
        return all(
            self.entry(mu, nu) == self.entry(nu, mu)
            for mu in range(d)
            for nu in range(mu + 1, d)
        )

    def vf_contrib(self, h: Poly) -> tuple[Poly, ...]:
        """Row-contracted vector field [coordinate, h], one Poly per coordinate.

        Raises ExactDivisionError if a component is not polynomial for this h.
        """
        chart = self.dual_chart
        dh = [h.diff(name) for name in chart.names]
        comps = []
        for mu in range(self.n + self.m):
            acc = PolyFraction.zero(chart)
            for nu, dhn in enumerate(dh):
                if dhn.is_zero:
                    continue
                e = self.entry(mu, nu)
                if not e.is_zero:
                    acc = acc + e * dhn
            comps.append(acc.to_poly())
        return tuple(comps)

    def x_dot_contrib(self, h: Poly) -> tuple[Poly, ...]:
        return self.vf_contrib(h)[: self.n]

    def xi_dot_contrib(self, h: Poly) -> tuple[Poly, ...]:
        return self.vf_contrib(h)[self.n :]


def prop4_construct_dual_tensor(h1: Poly) -> Prop4DualTensor:
    """Build the symmetric partner tensor determined by a fiberwise-linear h1.

    h1 must equal sum_a xi_a h^a(x) with every coefficient h^a not
    identically zero.  The anchor ansatz pairs fiber index a with base
    coordinate x^a:

        rho2[i][a] = h^i * h^a             (i != a, i < m)
        rho2[a][a] = -sum_{k != a} (h^k)^2
        rho2[i][a] = 0                     (i >= m, extra base directions)

    and the diagonal fiber-fiber entries are the exact fractions

        c_diag[a] = -( sum_i rho2[i][a] * dh1/dx^i ) / h^a.

    The result is accepted only after an exact annihilation certificate
    (bracket of h1 with every coordinate vanishes identically).
    """
    chart = h1.chart
    n, m = chart.n_base, chart.n_fiber
    if m == 0:
        raise ValueError("h1 must live on a chart with fiber variables")
    if n < m:
        raise ValueError("construction needs at least as many base as fiber variables")
    coeffs = fiber_linear_coefficients(h1)
    for a, c in enumerate(coeffs):
        if c.is_zero:
            raise ZeroCoefficientError(
                f"coefficient of {chart.fiber[a]} is identically zero; "
                "the construction divides by it"
            )
    base = chart.base_only()
    zero = Poly.zero(base)
    rho2 = [[zero] * m for _ in range(n)]
    for a in range(m):
        diag = Poly.zero(base)
        for k in range(m):
            if k != a:
                diag = diag - coeffs[k] * coeffs[k]
        rho2[a][a] = diag
        for i in range(m):
            if i != a:
                rho2[i][a] = coeffs[i] * coeffs[a]
    c_diag = []
    for a in range(m):
        num = Poly.zero(chart)
        for i, name in enumerate(base.names):
            dh = h1.diff(name)
            if dh.is_zero or rho2[i][a].is_zero:
                continue
            num = num + embed(rho2[i][a], chart) * dh
        c_diag.append(PolyFraction(-num, embed(coeffs[a], chart)))
    result = Prop4DualTensor(chart, h1, rho2, c_diag)
    residuals = result.annihilation_residuals(h1, "first")
    bad = {k: v for k, v in residuals.items() if not v.is_zero}
    if bad:
        raise CertificationError(
            "constructed tensor does not annihilate its Hamiltonian", residuals=bad
        )
    return result


# -- JSON structure files --------------------------------------------------------


def structure_to_dict(A: AlgebroidStructure) -> dict:
    return {
        "n": A.n,
        "m": A.m,
        "C": [[[str(p) for p in e] for e in row] for row in A.C],
        "rho1": [[str(p) for p in row] for row in A.rho1],
        "rho2": [[str(p) for p in row] for row in A.rho2],
    }


def structure_to_json(A: AlgebroidStructure) -> str:
    return json.dumps(structure_to_dict(A), indent=2)


def structure_from_dict(data: dict) -> AlgebroidStructure:
    try:
        n = int(data["n"])
        m = int(data["m"])
        C = data["C"]
        rho1 = data["rho1"]
        rho2 = data["rho2"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed structure data: {exc}") from None
    base = Chart.standard(n)
    parse = lambda s: parse_poly(base, str(s))
    C_p = [[[parse(s) for s in e] for e in row] for row in C]
    rho1_p = [[parse(s) for s in row] for row in rho1]
    rho2_p = [[parse(s) for s in row] for row in rho2]
    return AlgebroidStructure(base, m, C_p, rho1_p, rho2_p)


def structure_from_json(text: str) -> AlgebroidStructure:
    return structure_from_dict(json.loads(text))
