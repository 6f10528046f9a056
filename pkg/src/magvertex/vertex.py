"""Equivariant vertex classes and localization weights for box-partition tuples.

For an r-tuple T = (pi_1 .. pi_r) with characters Z_a (fourth torus weight
eliminated), the blocks of the vertex class are

    pre(a,b)  = (w_b/w_a) * ( Z_b - (1-1/t1)(1-1/t2)(1-1/t3) * dual(Z_a) Z_b )
    v(a,b)    = pre(a,b) - (w_b/w_a) * y_b * dual(Z_a)
    v(T)      = sum over all ordered pairs (a,b)

v(T) has rank zero and no terms fixed under the full torus (t, w and y
weights all trivial); that guarantee is asserted at runtime rather than
trusted, since everything downstream divides by the brackets it forbids.

The weight of T is (-1)^mu(T) * [-v(T)] in canonical factored form, where
mu counts diagonal-overhang boxes (i,i,i,j), j > i.
"""

from __future__ import annotations

from .algebra import (
    FactoredRat, LaurentPoly, RatFunc, bracket_class, bracket_monomial,
    rat_equal,
)
from .partitions import (
    PartitionTuple, character, mu_tuple, perm_substitution, permute_tuple,
)

T_GROUP = {"t1", "t2", "t3"}


class InvariantViolation(RuntimeError):
    """A structural guarantee of the weight calculus failed; this signals an
    implementation bug, never bad user input."""


def vertex_vars(r: int) -> tuple:
    """Variable context (t1,t2,t3,w_1..w_r,y_1..y_r) for rank r."""
    return (("t1", "t2", "t3")
            + tuple(f"w{i}" for i in range(1, r + 1))
            + tuple(f"y{i}" for i in range(1, r + 1)))


def var_group(name: str) -> str:
    if name in T_GROUP:
        return "t"
    if name.startswith("w"):
        return "w"
    if name.startswith("y"):
        return "y"
    return "other"


def fixed_part(V: LaurentPoly, mask) -> LaurentPoly:
    """Sub-sum of terms whose exponents vanish on every masked variable group."""
    mask = frozenset(mask)
    if not mask:
        raise ValueError("torus mask must be non-empty")
    idx = [i for i, v in enumerate(V.vars) if var_group(v) in mask]
    terms = {e: c for e, c in V.terms.items() if all(e[i] == 0 for i in idx)}
    return LaurentPoly(V.vars, terms)


def rank(V: LaurentPoly):
    return V.coeff_sum()


def _octant(vars: tuple) -> LaurentPoly:
    """(1 - 1/t1)(1 - 1/t2)(1 - 1/t3), expanded."""
    out = LaurentPoly.const(vars, 1)
    for t in ("t1", "t2", "t3"):
        out = out * LaurentPoly.from_spec(vars, (1, {}), (-1, {t: -1}))
    return out


def _w_ratio(vars: tuple, a: int, b: int, extra: dict | None = None,
             coeff: int = 1) -> LaurentPoly:
    e = [0] * len(vars)
    e[vars.index(f"w{b}")] += 4
    e[vars.index(f"w{a}")] -= 4
    for name, k in (extra or {}).items():
        e[vars.index(name)] += 4 * k
    return LaurentPoly.monomial(vars, tuple(e), coeff)


def vertex_pre(T: PartitionTuple, a: int, b: int) -> LaurentPoly:
    """The (a,b) block before the mass-parameter correction (1-indexed)."""
    r = T.rank
    vars = vertex_vars(r)
    za = character(T.parts[a - 1], vars)
    zb = character(T.parts[b - 1], vars)
    w = _w_ratio(vars, a, b)
    return w * (zb - _octant(vars) * za.dual() * zb)


def vertex_component(T: PartitionTuple, a: int, b: int) -> LaurentPoly:
    """Full (a,b) block; its rank is |pi_b| - |pi_a|."""
    r = T.rank
    vars = vertex_vars(r)
    za = character(T.parts[a - 1], vars)
    wy = _w_ratio(vars, a, b, {f"y{b}": 1}, coeff=-1)
    return vertex_pre(T, a, b) + wy * za.dual()


def vertex_full(T: PartitionTuple) -> LaurentPoly:
    """Sum of all blocks.  Raises InvariantViolation if a fully-fixed term
    survives; the bracket of -v would then vanish or divide by zero."""
    r = T.rank
    vars = vertex_vars(r)
    total = LaurentPoly.zero(vars)
    for a in range(1, r + 1):
        for b in range(1, r + 1):
            total = total + vertex_component(T, a, b)
    if not fixed_part(total, {"t", "w", "y"}).is_zero():
        raise InvariantViolation(f"vertex class of {T!r} has a fixed term")
    return total


def signed_weight(T: PartitionTuple) -> FactoredRat:
    """(-1)^mu(T) * [-v(T)] as a canonical FactoredRat."""
    v = vertex_full(T)
    f = bracket_class(-v)
    if f.zero:
        raise InvariantViolation(f"weight of {T!r} collapsed to zero")
    return -f if mu_tuple(T) % 2 else f


def signed_weight_expanded_oracle(T: PartitionTuple) -> RatFunc:
    """Independent cross-check path: apply [.] to each monomial of -v(T)
    separately and combine as expanded rational functions, bypassing the
    factored-form bookkeeping entirely."""
    v = vertex_full(T)
    vars = v.vars
    out = RatFunc.const(vars, (-1) ** (mu_tuple(T) % 2))
    for e, c in sorted((-v).terms.items()):
        k = int(c)
        piece = bracket_monomial(vars, e).as_ratfunc()
        if k < 0:
            piece = piece.inverse()
        for _ in range(abs(k)):
            out = out * piece
    return out


def weight_permuted_equal(T: PartitionTuple, sigma: tuple, mode: str = "exact",
                          trials: int = 8, seed: int = 0) -> bool:
    """Invariance of the signed weight under a coordinate permutation:
    the weight of sigma.T must equal the weight of T with t-variables
    permuted accordingly (fourth weight re-eliminated)."""
    lhs = signed_weight(permute_tuple(T, sigma))
    rhs = signed_weight(T).substitute(perm_substitution(sigma))
    return rat_equal(lhs, rhs, mode=mode, trials=trials, seed=seed)
