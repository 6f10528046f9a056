"""Enumeration of boxed partitions in up to four coordinates.

A partition is a finite downward-closed subset of Z_{>=0}^dim: whenever a box
is present, so is every lattice point it dominates coordinatewise.  All
partitions are stored in the uniform 4-coordinate Box form, padding trailing
coordinates with zero, so one code path computes characters and statistics for
ordinary partitions (dim 2), plane partitions (dim 3) and solid partitions
(dim 4).  Boxes are kept in lexicographic order; that sorted tuple is the
canonical form used for hashing, caching and deterministic output.

Enumeration grows size-n partitions from size n-1 by attaching one box whose
coordinate predecessors are all present, deduplicating against a hash set.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .algebra import LaurentPoly

Box = tuple  # (a1, a2, a3, a4) of non-negative ints

T_VARS = ("t1", "t2", "t3")

# Per-dimension enumeration ceilings; solid partitions grow fast enough that
# anything past 8 needs a deliberate override.
DEFAULT_CEILING = {1: 64, 2: 40, 3: 20, 4: 8}


class ResourceLimitError(RuntimeError):
    """Requested enumeration exceeds the configured ceiling."""


class InvalidPartitionError(ValueError):
    pass


def is_valid(boxes) -> bool:
    """True iff the box set is downward-closed with non-negative coordinates."""
    s = set(map(tuple, boxes))
    if len(s) != len(list(boxes)):
        return False
    for b in s:
        if len(b) != 4 or any(c < 0 for c in b):
            return False
        for i in range(4):
            if b[i] > 0:
                pred = b[:i] + (b[i] - 1,) + b[i + 1:]
                if pred not in s:
                    return False
    return True


class SolidPartition:
    """Canonical downward-closed box set; the localization index."""

    __slots__ = ("boxes",)

    def __init__(self, boxes, _checked: bool = False):
        bs = tuple(sorted(map(tuple, boxes)))
        if not _checked and not is_valid(bs):
            raise InvalidPartitionError(f"not a downward-closed box set: {bs}")
        self.boxes = bs

    @property
    def size(self) -> int:
        return len(self.boxes)

    def __len__(self):
        return len(self.boxes)

    def __eq__(self, other):
        return isinstance(other, SolidPartition) and self.boxes == other.boxes

    def __lt__(self, other):
        return self.boxes < other.boxes

    def __hash__(self):
        return hash(self.boxes)

    def __repr__(self):
        return f"SolidPartition({list(map(list, self.boxes))})"

    def is_plane(self) -> bool:
        """True iff every box lies in the hyperplane {a4 = 0}."""
        return all(b[3] == 0 for b in self.boxes)

    def to_json(self) -> dict:
        return {"boxes": [list(b) for b in self.boxes]}

    @classmethod
    def from_json(cls, data: dict) -> "SolidPartition":
        return cls(tuple(tuple(b) for b in data["boxes"]))


EMPTY = SolidPartition((), _checked=True)


class PartitionTuple:
    """Ordered r-tuple of partitions; empty slots permitted."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise InvalidPartitionError("rank must be at least 1")
        self.parts = parts

    @property
    def rank(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(p.size for p in self.parts)

    def __eq__(self, other):
        return isinstance(other, PartitionTuple) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"PartitionTuple({list(self.parts)!r})"

    def to_json(self) -> dict:
        return {"parts": [p.to_json() for p in self.parts]}

    @classmethod
    def from_json(cls, data: dict) -> "PartitionTuple":
        return cls(SolidPartition.from_json(p) for p in data["parts"])


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _grow(dim: int, n: int) -> tuple:
    """Frozensets of boxes for all downward-closed sets of size n in Z^dim."""
    if n == 0:
        return (frozenset(),)
    out = set()
    origin = (0,) * 4
    for prev in _grow(dim, n - 1):
        if not prev:
            out.add(frozenset((origin,)))
            continue
        candidates = set()
        for b in prev:
            for i in range(dim):
                c = b[:i] + (b[i] + 1,) + b[i + 1:]
                if c not in prev:
                    candidates.add(c)
        for c in candidates:
            ok = True
            for i in range(4):
                if c[i] > 0:
                    if c[:i] + (c[i] - 1,) + c[i + 1:] not in prev:
                        ok = False
                        break
            if ok:
                out.add(prev | {c})
    return tuple(out)


def enumerate_partitions(dim: int, n: int, ceiling: int | None = None) -> list:
    """All partitions of size n with boxes in Z_{>=0}^dim, in canonical order.

    dim is the box dimension: 2 gives ordinary partitions (Young diagrams),
    3 plane partitions, 4 solid partitions.
    """
    if dim not in (1, 2, 3, 4):
        raise ValueError(f"box dimension must be 1..4, got {dim}")
    if n < 0:
        raise ValueError("size must be non-negative")
    limit = DEFAULT_CEILING[dim] if ceiling is None else ceiling
    if n > limit:
        raise ResourceLimitError(
            f"size {n} beyond ceiling {limit} for dim {dim}; pass a larger ceiling")
    parts = [SolidPartition(fs, _checked=True) for fs in _grow(dim, n)]
    parts.sort()
    return parts


def count_partitions(dim: int, n: int, ceiling: int | None = None) -> int:
    return len(enumerate_partitions(dim, n, ceiling))


def _compositions(n: int, r: int):
    """All (k_1..k_r) of non-negative ints summing to n, lexicographically."""
    if r == 1:
        yield (n,)
        return
    for k in range(n + 1):
        for rest in _compositions(n - k, r - 1):
            yield (k,) + rest


def enumerate_tuples(r: int, n: int, ceiling: int | None = None) -> list:
    """All r-tuples of solid partitions with total size n."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    out = []
    for sizes in _compositions(n, r):
        pools = [enumerate_partitions(4, k, ceiling) for k in sizes]
        out.extend(PartitionTuple(combo) for combo in product(*pools))
    return out


# ---------------------------------------------------------------------------
# characters and statistics
# ---------------------------------------------------------------------------

def character(pi: SolidPartition, vars: tuple = T_VARS) -> LaurentPoly:
    """Torus character of the quotient: each box (i,j,k,l) contributes
    t1^(i-l) t2^(j-l) t3^(k-l), the fourth weight eliminated through
    t4 = (t1 t2 t3)^(-1).  The coefficient sum equals the partition size."""
    i1, i2, i3 = (vars.index(v) for v in T_VARS)
    n = len(vars)
    terms: dict = {}
    for (a, b, c, d) in pi.boxes:
        e = [0] * n
        e[i1], e[i2], e[i3] = 4 * (a - d), 4 * (b - d), 4 * (c - d)
        e = tuple(e)
        terms[e] = terms.get(e, Fraction(0)) + 1
    return LaurentPoly(vars, terms)


def mu(pi: SolidPartition) -> int:
    """Number of boxes of the form (i,i,i,j) with j > i."""
    return sum(1 for (a, b, c, d) in pi.boxes if a == b == c and d > a)


def mu_tuple(t: PartitionTuple) -> int:
    return sum(mu(p) for p in t.parts)


def k_stat(pi: SolidPartition) -> int:
    """Number of boxes (i,j,k,l) with l != min(i,j,k)."""
    return sum(1 for (a, b, c, d) in pi.boxes if d != min(a, b, c))


def k_stat_tuple(t: PartitionTuple) -> int:
    return sum(k_stat(p) for p in t.parts)


def fixed_pairs(pi: SolidPartition) -> int:
    """Ordered box pairs (b, b') with b' - b = (d, d, d, d+1) for some d.

    This is the dimension of the torus-fixed part of t1 t2 t3 Z^dual Z, and
    has the same parity as k_stat."""
    count = 0
    for b in pi.boxes:
        for b2 in pi.boxes:
            d = b2[0] - b[0]
            if b2[1] - b[1] == d and b2[2] - b[2] == d and b2[3] - b[3] == d + 1:
                count += 1
    return count


# ---------------------------------------------------------------------------
# coordinate permutations
# ---------------------------------------------------------------------------

IDENTITY_PERM = (0, 1, 2, 3)


def permute(pi: SolidPartition, sigma: tuple) -> SolidPartition:
    """Apply a coordinate permutation: position sigma[i] of the new box takes
    coordinate i of the old box.  Downward closure is coordinate-symmetric,
    so the result is again a partition."""
    if sorted(sigma) != [0, 1, 2, 3]:
        raise ValueError(f"not a permutation of 0..3: {sigma}")
    out = []
    for b in pi.boxes:
        nb = [0] * 4
        for i in range(4):
            nb[sigma[i]] = b[i]
        out.append(tuple(nb))
    return SolidPartition(out, _checked=True)


def permute_tuple(t: PartitionTuple, sigma: tuple) -> PartitionTuple:
    return PartitionTuple(permute(p, sigma) for p in t.parts)


def compose_perms(tau: tuple, sigma: tuple) -> tuple:
    """Composite acting as sigma first, then tau."""
    out = [0] * 4
    for i in range(4):
        out[i] = tau[sigma[i]]
    return tuple(out)


def perm_substitution(sigma: tuple) -> dict:
    """The monomial substitution t_i -> t_{sigma(i)} matching `permute`, with
    the fourth weight re-eliminated on both sides."""
    t4 = {"t1": -1, "t2": -1, "t3": -1}
    mapping = {}
    for i in range(3):
        j = sigma[i]
        mapping[f"t{i + 1}"] = {f"t{j + 1}": 1} if j < 3 else dict(t4)
    return mapping


def all_perms():
    from itertools import permutations
    return list(permutations(range(4)))
