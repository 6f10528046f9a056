"""Exact multivariate Laurent arithmetic on a quarter-integer exponent grid.

Everything downstream (characters, vertex weights, series coefficients) is
built from four value types defined here:

  LaurentPoly  sparse Laurent polynomial: dict mapping an exponent tuple to a
               nonzero Fraction.  Exponents are stored in QUARTER units (the
               stored integer is 4x the nominal exponent), so half-exponents
               from brackets and half-of-half exponents from pair expansions
               stay exact integers.  An operation that would leave the
               quarter grid raises GridError instead of rounding.

  FactoredRat  sign * unit-monomial * product of bracket factors [m]^mult,
               where [m] = m^(1/2) - m^(-1/2).  This is the canonical shape
               of a localization weight; keeping it factored avoids any
               multivariate GCD.  Factor monomials are normalized so the
               first nonzero stored exponent is positive, absorbing a sign
               via [1/m] = -[m].

  RatFunc      expanded numerator/denominator pair of LaurentPoly.  Equality
               is extensional (cross multiplication), never via GCD.

  RatSum       a lazy sum of (rational scalar, FactoredRat) terms.  Sums of
               weights and plethystic-recurrence coefficients live here; the
               common-denominator expansion to a RatFunc happens only when an
               exact comparison demands it.

Randomized identity testing evaluates both sides in the prime field of size
PRIME > 2^61.  A point assigns a value to the QUARTER ROOT of each variable,
so every stored exponent acts as a plain integer power.

Coefficients are arbitrary-precision Fractions throughout; no floats.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

GRID = 4  # stored exponent units per 1 of nominal exponent

# Smallest prime above 2^61; large enough that 8 Schwartz-Zippel trials on
# the expressions handled here give failure probability well below 2^-40.
PRIME = 2305843009213693967

Exp = tuple  # exponent tuple, one stored quarter-exponent per variable


class AlgebraError(ValueError):
    pass


class ArityError(AlgebraError):
    """Operands built over different variable contexts."""


class GridError(AlgebraError):
    """An exponent left the quarter-integer grid."""


class BracketDomainError(AlgebraError):
    """A trivial bracket [1] = 0 appeared in a denominator."""


class EvalError(AlgebraError):
    """A denominator vanished at the evaluation point, or an exact root
    needed by a fractional exponent does not exist in Q."""


# ---------------------------------------------------------------------------
# monomial helpers (exponent tuples in quarter units)
# ---------------------------------------------------------------------------

def mono_one(nvars: int) -> Exp:
    return (0,) * nvars


def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def mono_inv(a: Exp) -> Exp:
    return tuple(-x for x in a)


def mono_pow(a: Exp, k: int) -> Exp:
    return tuple(x * k for x in a)


def mono_is_one(a: Exp) -> bool:
    return all(x == 0 for x in a)


def mono_half(a: Exp) -> Exp:
    """Halve a stored exponent vector; every entry must be even."""
    if any(x % 2 for x in a):
        raise GridError(f"exponent {a} cannot be halved on the quarter grid")
    return tuple(x // 2 for x in a)


def exp_of(vars: tuple, spec: dict) -> Exp:
    """Build a stored exponent tuple from {var name: nominal exponent}.

    Nominal exponents may be Fractions; they must land on the quarter grid.
    """
    out = [0] * len(vars)
    for name, e in spec.items():
        q = Fraction(e) * GRID
        if q.denominator != 1:
            raise GridError(f"exponent {e} for {name} is off the quarter grid")
        out[vars.index(name)] = int(q)
    return tuple(out)


def _mono_eval_mod(exp: Exp, point: tuple, p: int) -> int:
    """Value of a monomial at quarter-root values `point`, mod p."""
    v = 1
    for e, r in zip(exp, point):
        if e:
            v = v * pow(r, e % (p - 1), p) % p
    return v


def _frac_pow_exact(base: Fraction, num: int, den: int) -> Fraction:
    """base**(num/den) as an exact Fraction, or raise EvalError."""
    if den < 0:
        num, den = -num, -den
    if base == 0:
        raise EvalError("zero base with nonzero exponent")
    if den != 1:
        if base < 0:
            raise EvalError(f"no rational {den}-th root of {base}")
        rn = round(base.numerator ** (1 / den))
        rd = round(base.denominator ** (1 / den))
        # float round-trip is only a guess; verify exactly
        for cand_n in (rn - 1, rn, rn + 1):
            if cand_n > 0 and cand_n ** den == base.numerator:
                rn = cand_n
                break
        else:
            raise EvalError(f"no rational {den}-th root of {base}")
        for cand_d in (rd - 1, rd, rd + 1):
            if cand_d > 0 and cand_d ** den == base.denominator:
                rd = cand_d
                break
        else:
            raise EvalError(f"no rational {den}-th root of {base}")
        base = Fraction(rn, rd)
    return base ** num


def _mono_eval_exact(exp: Exp, values: tuple) -> Fraction:
    """Value of a monomial at exact rational variable values.

    `values[i]` is the value of the variable itself; stored exponent e means
    the power e/GRID, which must have an exact rational result.
    """
    v = Fraction(1)
    for e, x in zip(exp, values):
        if e:
            f = Fraction(e, GRID)
            v *= _frac_pow_exact(Fraction(x), f.numerator, f.denominator)
    return v


def _fraction_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# LaurentPoly
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Sparse Laurent polynomial over Q with quarter-grid exponents."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple, terms: dict):
        self.vars = tuple(vars)
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: tuple) -> "LaurentPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: tuple, c) -> "LaurentPoly":
        return cls(vars, {mono_one(len(vars)): Fraction(c)})

    @classmethod
    def monomial(cls, vars: tuple, exp: Exp, coeff=1) -> "LaurentPoly":
        return cls(vars, {tuple(exp): Fraction(coeff)})

    @classmethod
    def from_spec(cls, vars: tuple, *terms) -> "LaurentPoly":
        """Build from (coeff, {var: nominal exponent}) pairs."""
        acc: dict = {}
        for coeff, spec in terms:
            e = exp_of(vars, spec)
            acc[e] = acc.get(e, Fraction(0)) + Fraction(coeff)
        return cls(vars, acc)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff_sum(self) -> Fraction:
        """Sum of all coefficients (the rank of a character)."""
        return sum(self.terms.values(), Fraction(0))

    def coeff_of(self, exp: Exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentPoly)
                and self.vars == other.vars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"{v}^{Fraction(k, GRID)}" for v, k in zip(self.vars, e) if k)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if self.vars != other.vars:
            raise ArityError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return LaurentPoly(self.vars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return LaurentPoly(self.vars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if c == 0:
            return LaurentPoly.zero(self.vars)
        return LaurentPoly(self.vars, {e: k * c for e, k in self.terms.items()})

    def dual(self) -> "LaurentPoly":
        """Invert every monomial, keeping coefficients."""
        return LaurentPoly(self.vars, {mono_inv(e): c for e, c in self.terms.items()})

    # -- grid-aware structure maps ------------------------------------------

    def adams(self, m: int) -> "LaurentPoly":
        """Raise every variable to the m-th power (Adams operation)."""
        if m < 1:
            raise AlgebraError("adams requires m >= 1")
        if m == 1:
            return self
        return LaurentPoly(self.vars, {mono_pow(e, m): c for e, c in self.terms.items()})

    def substitute(self, mapping: dict, vars_out: tuple | None = None) -> "LaurentPoly":
        """Simultaneous monomial substitution.

        `mapping` sends a variable name to {target name: nominal exponent};
        unmapped variables map to themselves and must exist in `vars_out`.
        Raises GridError if a composed exponent leaves the quarter grid.
        """
        vars_out = tuple(vars_out) if vars_out is not None else self.vars
        rows = _subst_rows(self.vars, mapping, vars_out)
        out: dict = {}
        for e, c in self.terms.items():
            ne = _subst_exp(e, rows, len(vars_out))
            s = out.get(ne, 0) + c
            if s:
                out[ne] = s
            elif ne in out:
                del out[ne]
        return LaurentPoly(vars_out, out)

    def extend(self, vars_out: tuple) -> "LaurentPoly":
        """Reinterpret over a larger variable context."""
        return self.substitute({}, vars_out)

    # -- evaluation ----------------------------------------------------------

    def eval_mod(self, point: tuple, p: int = PRIME) -> int:
        """Evaluate at quarter-root values `point` in GF(p)."""
        total = 0
        for e, c in self.terms.items():
            v = _mono_eval_mod(e, point, p)
            cv = c.numerator % p * pow(c.denominator % p, -1, p) % p
            total = (total + cv * v) % p
        return total

    def eval_exact(self, values: tuple) -> Fraction:
        """Evaluate at exact rational values of the variables."""
        return sum((c * _mono_eval_exact(e, values) for e, c in self.terms.items()),
                   Fraction(0))

    # -- serialization -------------------------------------------------------

    def as_ratfunc(self) -> "RatFunc":
        return RatFunc(self, LaurentPoly.const(self.vars, 1))

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "grid": GRID,
            "terms": [{"coeff": _fraction_str(c), "exp": list(e)}
                      for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        if data.get("grid", GRID) != GRID:
            raise AlgebraError(f"unsupported exponent grid {data.get('grid')}")
        vars = tuple(data["vars"])
        return cls(vars, {tuple(t["exp"]): Fraction(t["coeff"]) for t in data["terms"]})


def _subst_rows(vars_in: tuple, mapping: dict, vars_out: tuple) -> list:
    """Per-source-variable target rows: stored contribution of one quarter unit,
    as Fractions (validated per-exponent later)."""
    rows = []
    for name in vars_in:
        if name in mapping:
            row = [Fraction(0)] * len(vars_out)
            for tgt, e in mapping[name].items():
                row[vars_out.index(tgt)] += Fraction(e)
            rows.append(row)
        else:
            if name not in vars_out:
                raise ArityError(f"variable {name} missing from output context")
            row = [Fraction(0)] * len(vars_out)
            row[vars_out.index(name)] = Fraction(1)
            rows.append(row)
    return rows


def _subst_exp(e: Exp, rows: list, nout: int) -> Exp:
    acc = [Fraction(0)] * nout
    for k, row in zip(e, rows):
        if k:
            for j, f in enumerate(row):
                if f:
                    acc[j] += k * f
    out = []
    for f in acc:
        if f.denominator != 1:
            raise GridError("substitution left the quarter grid")
        out.append(int(f))
    return tuple(out)


# ---------------------------------------------------------------------------
# brackets
# ---------------------------------------------------------------------------

def bracket_monomial(vars: tuple, exp: Exp) -> LaurentPoly:
    """[m] = m^(1/2) - m^(-1/2); the zero polynomial iff m is trivial."""
    if mono_is_one(exp):
        return LaurentPoly.zero(vars)
    h = mono_half(tuple(exp))
    return LaurentPoly(vars, {h: Fraction(1), mono_inv(h): Fraction(-1)})


def bracket_power(vars: tuple, exp: Exp, k: int) -> LaurentPoly:
    """[m]^k expanded via the binomial theorem (k+1 terms)."""
    h = mono_half(tuple(exp))
    out = {}
    for j in range(k + 1):
        e = mono_pow(h, k - 2 * j)
        out[e] = out.get(e, 0) + Fraction((-1) ** j * comb(k, j))
    return LaurentPoly(vars, out)


def _orient(exp: Exp) -> tuple:
    """Canonical factor orientation: first nonzero stored exponent positive.

    Returns (exp, +1) or (inverted exp, -1); the -1 records [1/m] = -[m].
    """
    for x in exp:
        if x > 0:
            return exp, 1
        if x < 0:
            return mono_inv(exp), -1
    raise BracketDomainError("trivial monomial has no bracket orientation")


class FactoredRat:
    """sign * unit * prod [m]^mult in canonical factored form.

    `factors` is a sorted tuple of (monomial, multiplicity) with nontrivial,
    even-stored, canonically oriented monomials and nonzero multiplicities.
    The zero value (a trivial bracket in the numerator) is flagged by `zero`.
    """

    __slots__ = ("vars", "zero", "sign", "unit", "factors")

    def __init__(self, vars: tuple, zero: bool, sign: int, unit: Exp, factors):
        self.vars = tuple(vars)
        self.zero = zero
        if zero:
            self.sign, self.unit, self.factors = 1, mono_one(len(self.vars)), ()
        else:
            self.sign = sign
            self.unit = tuple(unit)
            self.factors = tuple(sorted(factors))

    @classmethod
    def one(cls, vars: tuple) -> "FactoredRat":
        return cls(vars, False, 1, mono_one(len(vars)), ())

    @classmethod
    def zero_value(cls, vars: tuple) -> "FactoredRat":
        return cls(vars, True, 1, mono_one(len(vars)), ())

    @classmethod
    def from_parts(cls, vars: tuple, sign: int, unit: Exp, raw_factors) -> "FactoredRat":
        """Canonicalize a raw iterable of (monomial, multiplicity) factors."""
        acc: dict = {}
        for m, mult in raw_factors:
            if mult == 0:
                continue
            m = tuple(m)
            if mono_is_one(m):
                if mult > 0:
                    return cls.zero_value(vars)
                raise BracketDomainError("trivial bracket in denominator")
            mono_half(m)  # grid check: bracket arguments must be even-stored
            m, flip = _orient(m)
            if flip < 0 and mult % 2:
                sign = -sign
            acc[m] = acc.get(m, 0) + mult
        return cls(vars, False, sign, unit,
                   ((m, k) for m, k in acc.items() if k))

    # -- structure -----------------------------------------------------------

    def key(self) -> tuple:
        """Canonical structural key (bit-stable across equal constructions)."""
        return (self.zero, self.sign, self.unit, self.factors)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FactoredRat) and self.vars == other.vars
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.vars, self.key()))

    def __repr__(self):
        if self.zero:
            return "0"
        s = "-" if self.sign < 0 else ""
        u = "*".join(f"{v}^{Fraction(k, GRID)}" for v, k in zip(self.vars, self.unit) if k)
        fs = "*".join(
            f"[{'*'.join(f'{v}^{Fraction(k, GRID)}' for v, k in zip(self.vars, m) if k)}]^{e}"
            for m, e in self.factors)
        return s + "*".join(x for x in (u, fs) if x) or s + "1"

    # -- arithmetic ------------------------------------------------------------

    def __neg__(self) -> "FactoredRat":
        if self.zero:
            return self
        return FactoredRat(self.vars, False, -self.sign, self.unit, self.factors)

    def __mul__(self, other: "FactoredRat") -> "FactoredRat":
        if self.vars != other.vars:
            raise ArityError("variable mismatch in factored product")
        if self.zero or other.zero:
            return FactoredRat.zero_value(self.vars)
        acc = dict(self.factors)
        for m, k in other.factors:
            acc[m] = acc.get(m, 0) + k
        return FactoredRat(self.vars, False, self.sign * other.sign,
                           mono_mul(self.unit, other.unit),
                           ((m, k) for m, k in acc.items() if k))

    def inverse(self) -> "FactoredRat":
        if self.zero:
            raise BracketDomainError("cannot invert the zero weight")
        return FactoredRat(self.vars, False, self.sign, mono_inv(self.unit),
                           ((m, -k) for m, k in self.factors))

    def power(self, k: int) -> "FactoredRat":
        if k == 0:
            return FactoredRat.one(self.vars)
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def adams(self, m: int) -> "FactoredRat":
        if m == 1 or self.zero:
            return self
        return FactoredRat.from_parts(
            self.vars, self.sign, mono_pow(self.unit, m),
            ((mono_pow(f, m), k) for f, k in self.factors))

    def substitute(self, mapping: dict, vars_out: tuple | None = None) -> "FactoredRat":
        """Monomial substitution at the factor level.

        A nontrivial factor collapsing to the trivial monomial makes the value
        zero (numerator) or raises BracketDomainError (denominator), mirroring
        bracket_class semantics.
        """
        vars_out = tuple(vars_out) if vars_out is not None else self.vars
        if self.zero:
            return FactoredRat.zero_value(vars_out)
        rows = _subst_rows(self.vars, mapping, vars_out)
        n = len(vars_out)
        unit = _subst_exp(self.unit, rows, n)
        return FactoredRat.from_parts(
            vars_out, self.sign, unit,
            ((_subst_exp(m, rows, n), k) for m, k in self.factors))

    def extend(self, vars_out: tuple) -> "FactoredRat":
        return self.substitute({}, vars_out)

    # -- expansion and evaluation -----------------------------------------------

    def expand(self) -> "RatFunc":
        """Multiply out to numerator/denominator LaurentPolys.

        Identical factors have already cancelled in the multiset; the zero
        value expands to 0/1.
        """
        if self.zero:
            return RatFunc(LaurentPoly.zero(self.vars), LaurentPoly.const(self.vars, 1))
        num = LaurentPoly.monomial(self.vars, self.unit, self.sign)
        num_parts = [num] + [bracket_power(self.vars, m, k)
                             for m, k in self.factors if k > 0]
        den_parts = [bracket_power(self.vars, m, -k)
                     for m, k in self.factors if k < 0]
        return RatFunc(_prod(self.vars, num_parts), _prod(self.vars, den_parts))

    def eval_mod(self, point: tuple, p: int = PRIME) -> int:
        """Evaluate at quarter-root values in GF(p); EvalError on a zero
        denominator bracket."""
        if self.zero:
            return 0
        v = self.sign % p
        v = v * _mono_eval_mod(self.unit, point, p) % p
        for m, k in self.factors:
            h = mono_half(m)
            a = _mono_eval_mod(h, point, p)
            b = (a - pow(a, -1, p)) % p
            if b == 0:
                if k < 0:
                    raise EvalError("denominator bracket vanished at point")
                return 0
            v = v * pow(b, k if k > 0 else p - 1 + k, p) % p
        return v

    def as_ratfunc(self) -> "RatFunc":
        return self.expand()

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "grid": GRID,
            "zero": self.zero,
            "sign": self.sign,
            "unit": list(self.unit),
            "factors": [{"exp": list(m), "mult": k} for m, k in self.factors],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FactoredRat":
        vars = tuple(data["vars"])
        if data["zero"]:
            return cls.zero_value(vars)
        return cls(vars, False, data["sign"], tuple(data["unit"]),
                   ((tuple(f["exp"]), f["mult"]) for f in data["factors"]))


def bracket_class(P: LaurentPoly) -> FactoredRat:
    """Extend [.] multiplicatively over an integer-coefficient class.

    A trivial monomial with positive coefficient yields the zero value;
    with negative coefficient it is a division by zero and raises.
    """
    if not P.is_integral():
        raise AlgebraError("bracket_class requires integer coefficients")
    factors = []
    for e, c in P.terms.items():
        k = int(c)
        if mono_is_one(e) and k < 0:
            raise BracketDomainError("trivial bracket in denominator: class has "
                                     "a negative fixed term")
        factors.append((e, k))
    return FactoredRat.from_parts(P.vars, 1, mono_one(len(P.vars)), factors)


def _prod(vars: tuple, polys: list) -> LaurentPoly:
    """Product of polynomials, smallest first to keep intermediates sparse."""
    if not polys:
        return LaurentPoly.const(vars, 1)
    acc = sorted(polys, key=lambda q: len(q.terms))
    out = acc[0]
    for q in acc[1:]:
        out = out * q
    return out


# ---------------------------------------------------------------------------
# RatFunc
# ---------------------------------------------------------------------------

class RatFunc:
    """Numerator/denominator pair; equality is extensional."""

    __slots__ = ("vars", "num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        if num.vars != den.vars:
            raise ArityError("numerator/denominator variable mismatch")
        if den.is_zero():
            raise AlgebraError("zero denominator")
        self.vars = num.vars
        self.num = num
        self.den = den

    @classmethod
    def const(cls, vars: tuple, c) -> "RatFunc":
        return cls(LaurentPoly.const(vars, c), LaurentPoly.const(vars, 1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num.scale(other), self.den)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise AlgebraError("cannot invert zero")
        return RatFunc(self.den, self.num)

    def adams(self, m: int) -> "RatFunc":
        return RatFunc(self.num.adams(m), self.den.adams(m))

    def substitute(self, mapping: dict, vars_out: tuple | None = None) -> "RatFunc":
        num = self.num.substitute(mapping, vars_out)
        den = self.den.substitute(mapping, vars_out)
        return RatFunc(num, den)

    def extend(self, vars_out: tuple) -> "RatFunc":
        return RatFunc(self.num.extend(vars_out), self.den.extend(vars_out))

    def eval_mod(self, point: tuple, p: int = PRIME) -> int:
        d = self.den.eval_mod(point, p)
        if d == 0:
            raise EvalError("denominator vanished at point")
        return self.num.eval_mod(point, p) * pow(d, -1, p) % p

    def eval_exact(self, values: tuple) -> Fraction:
        d = self.den.eval_exact(values)
        if d == 0:
            raise EvalError("denominator vanished at point")
        return self.num.eval_exact(values) / d

    def as_ratfunc(self) -> "RatFunc":
        return self

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"


# ---------------------------------------------------------------------------
# RatSum: lazy sums of scalar * FactoredRat
# ---------------------------------------------------------------------------

class RatSum:
    """Sum of (Fraction scalar, FactoredRat) terms, expanded only on demand."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple, terms=()):
        self.vars = tuple(vars)
        self.terms = tuple((s, f) for s, f in terms if s != 0 and not f.zero)

    @classmethod
    def zero(cls, vars: tuple) -> "RatSum":
        return cls(vars, ())

    @classmethod
    def const(cls, vars: tuple, c) -> "RatSum":
        return cls(vars, ((Fraction(c), FactoredRat.one(vars)),))

    @classmethod
    def of(cls, f: FactoredRat, scalar=1) -> "RatSum":
        return cls(f.vars, ((Fraction(scalar), f),))

    def is_structural_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "RatSum") -> "RatSum":
        if self.vars != other.vars:
            raise ArityError("variable mismatch in sum")
        return RatSum(self.vars, self.terms + other.terms)

    def __neg__(self) -> "RatSum":
        return RatSum(self.vars, ((-s, f) for s, f in self.terms))

    def __sub__(self, other: "RatSum") -> "RatSum":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, FactoredRat):
            return RatSum(self.vars, ((s, f * other) for s, f in self.terms))
        if self.vars != other.vars:
            raise ArityError("variable mismatch in product")
        return RatSum(self.vars,
                      ((sa * sb, fa * fb)
                       for sa, fa in self.terms for sb, fb in other.terms))

    __rmul__ = __mul__

    def scale(self, c) -> "RatSum":
        c = Fraction(c)
        return RatSum(self.vars, ((s * c, f) for s, f in self.terms))

    def adams(self, m: int) -> "RatSum":
        return RatSum(self.vars, ((s, f.adams(m)) for s, f in self.terms))

    def substitute(self, mapping: dict, vars_out: tuple | None = None) -> "RatSum":
        vo = tuple(vars_out) if vars_out is not None else self.vars
        return RatSum(vo, ((s, f.substitute(mapping, vo)) for s, f in self.terms))

    def extend(self, vars_out: tuple) -> "RatSum":
        return self.substitute({}, vars_out)

    def canonical(self) -> tuple:
        """Order-independent structural form (for parallel-vs-serial checks)."""
        return tuple(sorted((f.key(), s) for s, f in self.terms))

    def eval_mod(self, point: tuple, p: int = PRIME) -> int:
        total = 0
        for s, f in self.terms:
            sv = s.numerator % p * pow(s.denominator % p, -1, p) % p
            total = (total + sv * f.eval_mod(point, p)) % p
        return total

    def expand(self) -> RatFunc:
        """Assemble one RatFunc over the common denominator of all terms.

        The denominator is the multiset union (per-factor maximum) of the
        terms' denominator factors, so nothing is cleared twice.
        """
        if not self.terms:
            return RatFunc(LaurentPoly.zero(self.vars), LaurentPoly.const(self.vars, 1))
        den_mult: dict = {}
        for _, f in self.terms:
            for m, k in f.factors:
                if k < 0:
                    den_mult[m] = max(den_mult.get(m, 0), -k)
        num = LaurentPoly.zero(self.vars)
        for s, f in self.terms:
            have = dict(f.factors)
            parts = [LaurentPoly.monomial(self.vars, f.unit, s * f.sign)]
            for m, need in den_mult.items():
                k = have.pop(m, 0) + need
                if k:
                    parts.append(bracket_power(self.vars, m, k))
            parts.extend(bracket_power(self.vars, m, k) for m, k in have.items() if k)
            num = num + _prod(self.vars, parts)
        den = _prod(self.vars, [bracket_power(self.vars, m, k)
                                for m, k in den_mult.items()])
        return RatFunc(num, den)

    def as_ratfunc(self) -> RatFunc:
        return self.expand()

    def to_json(self) -> dict:
        return {"vars": list(self.vars),
                "terms": [{"scalar": _fraction_str(s), "factored": f.to_json()}
                          for s, f in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> "RatSum":
        return cls(tuple(data["vars"]),
                   ((Fraction(t["scalar"]), FactoredRat.from_json(t["factored"]))
                    for t in data["terms"]))

    def __repr__(self):
        return " + ".join(f"{s}*({f!r})" for s, f in self.terms) or "0"


# ---------------------------------------------------------------------------
# equality testing
# ---------------------------------------------------------------------------

def sample_point(rng: random.Random, nvars: int, p: int = PRIME) -> tuple:
    """Uniform nonzero quarter-root values for each variable."""
    return tuple(rng.randrange(1, p) for _ in range(nvars))


def eval_at(obj, point: tuple, p: int = PRIME) -> int:
    return obj.eval_mod(point, p)


def rat_equal(a, b, mode: str = "exact", trials: int = 8, seed: int = 0,
              p: int = PRIME, max_resamples: int = 64) -> bool:
    """Extensional equality of two rational values over the same variables.

    exact:  cross-multiplied polynomial identity after expansion.
    random: `trials` Schwartz-Zippel evaluations in GF(p); reports equal iff
            all trials agree.  Never reports unequal for equal inputs; the
            one-sided error is at most (total degree / p) per trial.
    """
    if tuple(a.vars) != tuple(b.vars):
        raise ArityError(f"variable mismatch: {a.vars} vs {b.vars}")
    if mode == "exact":
        ra, rb = a.as_ratfunc(), b.as_ratfunc()
        return (ra.num * rb.den) == (rb.num * ra.den)
    if mode != "random":
        raise AlgebraError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    nvars = len(a.vars)
    done = 0
    misses = 0
    while done < trials:
        point = sample_point(rng, nvars, p)
        try:
            va = eval_at(a, point, p)
            vb = eval_at(b, point, p)
        except EvalError:
            misses += 1
            if misses > max_resamples:
                raise EvalError("persistent denominator hits while sampling")
            continue
        if va != vb:
            return False
        done += 1
    return True
