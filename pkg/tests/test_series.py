"""q-series algebra, plethystic Exp/Log, pair expansion, closed forms."""

import random
from fractions import Fraction

import pytest

from magvertex.algebra import FactoredRat, LaurentPoly, RatSum, rat_equal
from magvertex.partitions import PartitionTuple, SolidPartition
from magvertex.series import (
    QSeries, SeriesError, adams_series, bracket_pair_series, closed_form,
    mobius, pair_backmul_residue, pair_poly, pleth_exp, pleth_log,
    series_arith,
)
from magvertex.vertex import signed_weight, vertex_vars

NOVARS = ()


def const_series(values):
    return QSeries(NOVARS, [RatSum.const(NOVARS, v) for v in values])


def values_of(F):
    out = []
    for c in F.coeffs:
        r = c.expand()
        num = r.num.terms.get((), Fraction(0)) if r.num.vars == () else None
        den = r.den.terms.get((), Fraction(0))
        assert set(r.num.terms) <= {()} and set(r.den.terms) <= {()}
        out.append(Fraction(r.num.terms.get((), Fraction(0))) / den)
    return out


# independent product oracle: coefficients of prod_n (1 - q^n)^(-e(n))
def product_expansion(exponent, N):
    c = [Fraction(1)] + [Fraction(0)] * N

    def mul_geom(c, step):
        out = list(c)
        for i in range(step, N + 1):
            out[i] += out[i - step]
        return out

    for n in range(1, N + 1):
        for _ in range(exponent(n)):
            c = mul_geom(c, n)
    return c


# -- scalar series algebra -----------------------------------------------------

def test_mobius_values():
    assert [mobius(m) for m in (1, 2, 3, 4, 5, 6, 12, 30)] == \
        [1, -1, -1, 0, -1, 1, 0, -1]
    with pytest.raises(ValueError):
        mobius(0)


def test_exp_small():
    F = const_series([0, 1, 0, 0])
    assert values_of(F.exp()) == [1, 1, Fraction(1, 2), Fraction(1, 6)]


def test_mul_truncation():
    a = const_series([1, 1, 0])
    b = const_series([1, -1, 0])
    assert values_of(a * b) == [1, 0, -1]


def test_exp_log_inverse_pair_random():
    rng = random.Random(4)
    vars = ("a",)
    for _ in range(10):
        coeffs = [RatSum.zero(vars)]
        for _ in range(5):
            terms = [(Fraction(rng.randrange(-3, 4)),
                      FactoredRat(vars, False, 1, (4 * rng.randrange(-2, 3),), ()))
                     for _ in range(rng.randrange(1, 3))]
            coeffs.append(RatSum(vars, terms))
        F = QSeries(vars, coeffs)
        G = series_arith(series_arith(F, None, "exp"), None, "log")
        for n in range(6):
            assert rat_equal(F.coeffs[n], G.coeffs[n], mode="exact")


def test_exp_precondition():
    with pytest.raises(SeriesError):
        const_series([1, 1]).exp()
    with pytest.raises(SeriesError):
        const_series([0, 1]).log()


# -- plethystic exp/log -----------------------------------------------------------

def test_pleth_exp_geometric():
    # Exp(q) = 1/(1-q): all coefficients 1
    F = const_series([0, 1, 0, 0, 0, 0])
    assert values_of(pleth_exp(F)) == [1] * 6


def test_pleth_exp_euler_and_macmahon():
    # partition counting series, against an independent product expansion
    N = 8
    euler = pleth_exp(const_series([0] + [1] * N))
    assert values_of(euler) == product_expansion(lambda n: 1, N)
    assert values_of(euler)[:7] == [1, 1, 2, 3, 5, 7, 11]
    macmahon = pleth_exp(const_series([0] + list(range(1, N + 1))))
    assert values_of(macmahon) == product_expansion(lambda n: n, N)
    assert values_of(macmahon)[:7] == [1, 1, 3, 6, 13, 24, 48]


def test_pleth_log_inverts():
    N = 6
    euler = pleth_exp(const_series([0] + [1] * N))
    assert values_of(pleth_log(euler)) == [0] + [1] * N
    geom = const_series([1] * 7)
    assert values_of(pleth_log(geom)) == [0, 1, 0, 0, 0, 0, 0]


def test_pleth_inverse_pair_random_series():
    rng = random.Random(19)
    vars = ("a", "b")
    for _ in range(5):
        coeffs = [RatSum.zero(vars)]
        for _ in range(5):
            terms = [(Fraction(rng.randrange(-2, 3)),
                      FactoredRat(vars, False, 1,
                                  (4 * rng.randrange(-1, 2), 4 * rng.randrange(-1, 2)),
                                  ()))
                     for _ in range(rng.randrange(1, 3))]
            coeffs.append(RatSum(vars, terms))
        F = QSeries(vars, coeffs)
        G = pleth_log(pleth_exp(F))
        for n in range(6):
            assert rat_equal(F.coeffs[n], G.coeffs[n], mode="exact")


def test_pleth_exp_group_like_random():
    # Exp(F + G) = Exp(F) Exp(G)
    rng = random.Random(29)
    vars = ("a",)

    def rand_series():
        coeffs = [RatSum.zero(vars)]
        for _ in range(4):
            terms = [(Fraction(rng.randrange(-2, 3)),
                      FactoredRat(vars, False, 1, (4 * rng.randrange(-1, 2),), ()))]
            coeffs.append(RatSum(vars, terms))
        return QSeries(vars, coeffs)

    for _ in range(5):
        F, G = rand_series(), rand_series()
        lhs = pleth_exp(F + G)
        rhs = pleth_exp(F) * pleth_exp(G)
        for n in range(5):
            assert rat_equal(lhs.coeffs[n], rhs.coeffs[n], mode="exact")


def test_adams_series_examples():
    vars = ("t1",)
    F = QSeries(vars, [RatSum.zero(vars),
                       RatSum.of(FactoredRat(vars, False, 1, (4,), ())),
                       RatSum.zero(vars), RatSum.zero(vars)])
    G = adams_series(F, 2)
    assert G.coeffs[2].terms[0][1].unit == (8,)
    assert G.coeffs[1].is_structural_zero() and G.coeffs[3].is_structural_zero()
    assert adams_series(F, 1) is not None
    for n in range(4):
        assert rat_equal(adams_series(F, 1).coeffs[n], F.coeffs[n], mode="exact")


# -- pair expansion ------------------------------------------------------------------

def test_pair_coefficients():
    vars = ("y",)
    x = (2,)  # y^(1/2)
    assert pair_poly(vars, x, 1) == LaurentPoly.const(vars, -1)
    assert pair_poly(vars, x, 2) == LaurentPoly.from_spec(
        vars, (-1, {"y": Fraction(1, 2)}), (-1, {"y": Fraction(-1, 2)}))
    assert pair_poly(vars, x, 3) == LaurentPoly.from_spec(
        vars, (-1, {"y": 1}), (-1, {}), (-1, {"y": -1}))


def test_pair_backmultiplication_oracle():
    # ([xq][xq^-1]) * series = 1 + O(q^(N+1)) for the three x shapes in use
    cases = [(("y",), (2,)), (("t1", "t2", "t3"), (2, 2, 2)),
             (("t1", "t2", "t3"), (6, 6, 6))]
    for vars, x in cases:
        for res in pair_backmul_residue(vars, x, 8):
            assert res.is_zero()


def test_pair_series_matches_pair_poly():
    vars = ("y",)
    S = bracket_pair_series(vars, (2,), 5)
    for n in range(1, 6):
        got = S.coeffs[n].expand()
        assert got.den == LaurentPoly.const(vars, 1)
        assert got.num == pair_poly(vars, (2,), n)


def test_pair_series_rejects_trivial_x():
    with pytest.raises(SeriesError):
        bracket_pair_series(("y",), (0,), 3)


# -- closed forms -----------------------------------------------------------------------

def test_magnificent_first_coefficient_is_minus_single_box_weight():
    F = closed_form("magnificent", 2, r=1)
    c1 = F.coeffs[1]
    box = PartitionTuple([SolidPartition([(0, 0, 0, 0)])])
    w = RatSum.of(signed_weight(box)).scale(-1)
    assert rat_equal(c1, w, mode="exact")
    assert rat_equal(F.coeffs[0], RatSum.const(vertex_vars(1), 1), mode="exact")


def test_magnificent_specializes_to_dt3():
    N = 4
    mag = closed_form("magnificent", N, r=1)
    t4 = {"t1": -1, "t2": -1, "t3": -1}
    spec = mag.substitute({"y1": t4, "w1": {}}, vars_out=("t1", "t2", "t3"))
    dt3 = closed_form("dt3", N)
    for n in range(N + 1):
        mode = "exact" if n <= 2 else "random"
        assert rat_equal(spec.coeffs[n], dt3.coeffs[n], mode=mode, seed=n)


def test_awata_kanno_rank_one_is_dt3():
    N = 4
    ak = closed_form("awata-kanno", N, r=1)
    dt3 = closed_form("dt3", N)
    for n in range(N + 1):
        mode = "exact" if n <= 2 else "random"
        assert rat_equal(ak.coeffs[n], dt3.coeffs[n], mode=mode, seed=n)


def test_closed_form_unknown_kind():
    with pytest.raises(SeriesError):
        closed_form("nope", 2)
