"""Truncated q-series with exact rational-function coefficients.

A QSeries holds coefficients c_0..c_N as RatSum values (lazy sums of factored
terms), so series products, plethystic exponentials and logarithms stay in
factored form; expansion to a single numerator/denominator happens only when
an exact comparison asks for it, and randomized comparisons evaluate the
factored terms directly.

exp and log use the differential recurrences

    n e_n = sum_{j=1..n} j g_j e_{n-j}        (no factorials)
    g_n   = f_n - (1/n) sum_{j<n} j g_j f_{n-j}

and the plethystic pair Exp/Log is built from them with Adams operations and
Moebius inversion.

The q-dependent brackets in closed forms are never expanded as monomial
brackets (that would need q^(1/2)); they enter only through the identity

    [x q][x q^{-1}] = x + 1/x - q - 1/q

whose reciprocal q-expansion is -sum_{n>=1} q^n sum_{a+b=n-1} x^(a-b).
Coefficients of any closed form therefore stay rational in the torus and
mass variables with integer powers of q.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import (
    AlgebraError, Exp, FactoredRat, GridError, LaurentPoly, RatSum,
    bracket_class, exp_of, mono_is_one, mono_pow,
)
from .vertex import vertex_vars

CLOSED_FORM_KINDS = ("magnificent", "dt3", "awata-kanno")


class SeriesError(AlgebraError):
    pass


def mobius(m: int) -> int:
    """Moebius function by trial factorization (arguments stay tiny here)."""
    if m < 1:
        raise ValueError("mobius is defined for positive integers")
    out = 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            out = -out
        d += 1
    if m > 1:
        out = -out
    return out


class QSeries:
    """Coefficients c_0..c_order, each a RatSum over a fixed variable context."""

    __slots__ = ("vars", "order", "coeffs")

    def __init__(self, vars: tuple, coeffs, order: int | None = None):
        self.vars = tuple(vars)
        coeffs = list(coeffs)
        self.order = len(coeffs) - 1 if order is None else order
        if len(coeffs) != self.order + 1:
            raise SeriesError("coefficient list does not match order")
        for c in coeffs:
            if tuple(c.vars) != self.vars:
                raise SeriesError("coefficient variable context mismatch")
        self.coeffs = coeffs

    @classmethod
    def zero(cls, vars: tuple, order: int) -> "QSeries":
        return cls(vars, [RatSum.zero(vars) for _ in range(order + 1)])

    @classmethod
    def one(cls, vars: tuple, order: int) -> "QSeries":
        cs = [RatSum.const(vars, 1)] + [RatSum.zero(vars) for _ in range(order)]
        return cls(vars, cs)

    def coeff(self, n: int) -> RatSum:
        return self.coeffs[n]

    def __add__(self, other: "QSeries") -> "QSeries":
        n = min(self.order, other.order)
        return QSeries(self.vars,
                       [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __neg__(self) -> "QSeries":
        return QSeries(self.vars, [-c for c in self.coeffs])

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return QSeries(self.vars, [c.scale(other) for c in self.coeffs])
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = RatSum.zero(self.vars)
            for j in range(k + 1):
                acc = acc + self.coeffs[j] * other.coeffs[k - j]
            out.append(acc)
        return QSeries(self.vars, out)

    __rmul__ = __mul__

    def exp(self) -> "QSeries":
        if not self.coeffs[0].is_structural_zero():
            raise SeriesError("exp needs a series with zero constant term")
        e = [RatSum.const(self.vars, 1)]
        for n in range(1, self.order + 1):
            acc = RatSum.zero(self.vars)
            for j in range(1, n + 1):
                acc = acc + (self.coeffs[j] * e[n - j]).scale(Fraction(j, n))
            e.append(acc)
        return QSeries(self.vars, e)

    def log(self) -> "QSeries":
        if not _is_one(self.coeffs[0]):
            raise SeriesError("log needs a series with constant term 1")
        g: list = [RatSum.zero(self.vars)]
        for n in range(1, self.order + 1):
            acc = self.coeffs[n]
            for j in range(1, n):
                acc = acc - (g[j] * self.coeffs[n - j]).scale(Fraction(j, n))
            g.append(acc)
        return QSeries(self.vars, g)

    def adams(self, m: int) -> "QSeries":
        """q^n -> q^(mn) with the Adams operation applied to coefficients;
        the truncation order is preserved."""
        if m < 1:
            raise SeriesError("adams requires m >= 1")
        out = [RatSum.zero(self.vars) for _ in range(self.order + 1)]
        for n in range(self.order // m + 1):
            out[m * n] = self.coeffs[n].adams(m)
        return QSeries(self.vars, out)

    def extend_vars(self, vars_out: tuple) -> "QSeries":
        return QSeries(vars_out, [c.extend(vars_out) for c in self.coeffs])

    def substitute(self, mapping: dict, vars_out: tuple | None = None) -> "QSeries":
        vo = tuple(vars_out) if vars_out is not None else self.vars
        return QSeries(vo, [c.substitute(mapping, vo) for c in self.coeffs])

    def to_json(self) -> dict:
        return {"order": self.order,
                "coeffs": [c.expand().to_json() for c in self.coeffs]}

    def __repr__(self):
        return f"QSeries(order={self.order}, vars={self.vars})"


def _is_one(c: RatSum) -> bool:
    if len(c.terms) == 1:
        s, f = c.terms[0]
        if s == 1 and not f.zero and f.sign == 1 and not f.factors \
                and mono_is_one(f.unit):
            return True
    r = c.expand()
    return r.num == r.den


def series_arith(a: QSeries, b: QSeries | None, op: str) -> QSeries:
    """Dispatcher for the four series operations (exp/log ignore b)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "exp":
        return a.exp()
    if op == "log":
        return a.log()
    raise SeriesError(f"unknown series op {op!r}")


def adams_series(F: QSeries, m: int) -> QSeries:
    return F.adams(m)


def pleth_exp(F: QSeries) -> QSeries:
    """Plethystic exponential exp(sum_m adams_m(F)/m), truncated at F.order."""
    if not F.coeffs[0].is_structural_zero():
        raise SeriesError("plethystic exp needs zero constant term")
    g = QSeries.zero(F.vars, F.order)
    for m in range(1, F.order + 1):
        g = g + F.adams(m) * Fraction(1, m)
    return g.exp()


def pleth_log(F: QSeries) -> QSeries:
    """Inverse of pleth_exp via Moebius inversion of the Adams tower."""
    ell = F.log()
    out = QSeries.zero(F.vars, F.order)
    for m in range(1, F.order + 1):
        mu = mobius(m)
        if mu:
            out = out + ell.adams(m) * Fraction(mu, m)
    return out


# ---------------------------------------------------------------------------
# the q-bracket pair and closed forms
# ---------------------------------------------------------------------------

def pair_poly(vars: tuple, x: Exp, n: int) -> LaurentPoly:
    """Coefficient of q^n in 1/([x q][x q^{-1}]): -sum_{a+b=n-1} x^(a-b)."""
    terms: dict = {}
    for a in range(n):
        e = mono_pow(x, a - (n - 1 - a))
        terms[e] = terms.get(e, Fraction(0)) - 1
    return LaurentPoly(vars, terms)


def bracket_pair_series(vars: tuple, x: Exp, order: int) -> QSeries:
    """The q-expansion of 1/([x q][x q^{-1}]) as a QSeries.

    x must be a nontrivial monomial on the half grid (its square appears in
    the pair identity [x q][x q^{-1}] = x + 1/x - q - 1/q).
    """
    x = tuple(x)
    if mono_is_one(x):
        raise SeriesError("the bracket pair degenerates at x = 1")
    if any(e % 2 for e in x):
        raise GridError("pair expansion needs x on the half grid")
    coeffs = [RatSum.zero(vars)]
    for n in range(1, order + 1):
        terms = []
        for a in range(n):
            unit = mono_pow(x, a - (n - 1 - a))
            terms.append((Fraction(-1),
                          FactoredRat(vars, False, 1, unit, ())))
        coeffs.append(RatSum(vars, terms))
    return QSeries(vars, coeffs)


def pair_backmul_residue(vars: tuple, x: Exp, order: int) -> list:
    """([x q][x q^{-1}]) * pair series - 1, coefficientwise through q^(order-1).

    Every entry of the returned list must be the zero polynomial; this is the
    independent oracle for the pair expansion."""
    p = [pair_poly(vars, x, n) for n in range(order + 1)]
    xpx = (LaurentPoly.monomial(vars, x, 1)
           + LaurentPoly.monomial(vars, mono_pow(x, -1), 1))
    out = [(-p[1]) - LaurentPoly.const(vars, 1)]
    for n in range(1, order):
        out.append(xpx * p[n] - p[n - 1] - p[n + 1])
    return out


def _kappa_exp(vars: tuple, mult: Fraction) -> Exp:
    return exp_of(vars, {"t1": mult, "t2": mult, "t3": mult})


def closed_form(kind: str, order: int, r: int | None = None,
                vars: tuple | None = None, y: dict | None = None) -> QSeries:
    """Right-hand sides of the three product formulas, as plethystic
    exponentials of prefactor * [top] / ([x q][x q^{-1}]).

    magnificent  prefactor [t1t2][t1t3][t2t3][y] / ([t1][t2][t3][t4]),
                 x = y^(1/2); `y` maps variable names to exponents of the
                 total mass monomial (defaults to y1*...*yr when r is given).
    dt3          prefactor [t1t2][t1t3][t2t3] / ([t1][t2][t3]), x = k^(1/2)
                 with k = t1 t2 t3.
    awata-kanno  prefactor [t1t2][t1t3][t2t3][k^r] / ([t1][t2][t3][k]),
                 x = k^(r/2).
    """
    if kind == "magnificent":
        if y is None:
            if r is None:
                raise SeriesError("magnificent needs a mass monomial or a rank")
            y = {f"y{i}": 1 for i in range(1, r + 1)}
            vars = vertex_vars(r) if vars is None else vars
        elif vars is None:
            raise SeriesError("magnificent with explicit mass needs a context")
        y_exp = exp_of(vars, y)
        if mono_is_one(y_exp):
            raise SeriesError("mass monomial must be nontrivial")
        cls = LaurentPoly.from_spec(
            vars,
            (1, {"t1": 1, "t2": 1}), (1, {"t1": 1, "t3": 1}), (1, {"t2": 1, "t3": 1}),
            (-1, {"t1": 1}), (-1, {"t2": 1}), (-1, {"t3": 1}),
            (-1, {"t1": -1, "t2": -1, "t3": -1}),
        ) + LaurentPoly.monomial(vars, y_exp, 1)
        x = tuple(e // 2 for e in y_exp)
        if any(2 * h != e for h, e in zip(x, y_exp)):
            raise GridError("mass monomial has no square root on the grid")
    elif kind == "dt3":
        vars = ("t1", "t2", "t3") if vars is None else vars
        cls = LaurentPoly.from_spec(
            vars,
            (1, {"t1": 1, "t2": 1}), (1, {"t1": 1, "t3": 1}), (1, {"t2": 1, "t3": 1}),
            (-1, {"t1": 1}), (-1, {"t2": 1}), (-1, {"t3": 1}),
        )
        x = _kappa_exp(vars, Fraction(1, 2))
    elif kind == "awata-kanno":
        if r is None:
            raise SeriesError("awata-kanno needs a rank")
        vars = ("t1", "t2", "t3") if vars is None else vars
        cls = LaurentPoly.from_spec(
            vars,
            (1, {"t1": 1, "t2": 1}), (1, {"t1": 1, "t3": 1}), (1, {"t2": 1, "t3": 1}),
            (1, {"t1": r, "t2": r, "t3": r}),
            (-1, {"t1": 1}), (-1, {"t2": 1}), (-1, {"t3": 1}),
            (-1, {"t1": 1, "t2": 1, "t3": 1}),
        )
        x = _kappa_exp(vars, Fraction(r, 2))
    else:
        raise SeriesError(f"unknown closed form kind {kind!r}")

    prefactor = bracket_class(cls)
    pair = bracket_pair_series(vars, x, order)
    coeffs = [c * prefactor for c in pair.coeffs]
    return pleth_exp(QSeries(vars, coeffs))


def magnificent_series(r: int, order: int) -> QSeries:
    """Closed form for rank r over the full vertex context (mass y1*...*yr)."""
    return closed_form("magnificent", order, r=r)
