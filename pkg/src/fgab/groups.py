"""Subgroups of finitely generated abelian groups.

An ambient group ``G = Z^n + Z/d_1 + ... + Z/d_k`` is the quotient of
``Z^(n+k)`` by the relation lattice ``L`` spanned by ``d_i * e_(n+i)``.
A subgroup ``H`` is stored as its full preimage ``Λ_H`` in ``Z^(n+k)``,
so it always contains ``L`` and is described by a canonical HNF basis.
Equality of subgroups is then plain equality of bases, and intersection,
sum, index and isolator become lattice operations.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatch,
    BadRank,
    BadTorsion,
    ContainmentViolation,
    DimensionMismatch,
    FgabError,
    ParseError,
    RankMismatch,
    RankZero,
)
from .lattice import (
    INFINITE,
    IntMatrix,
    canonical,
    contains_lattice,
    lattice_index,
    lattice_intersect,
    lattice_rank,
    saturate,
    snf,
)


@dataclass(frozen=True)
class FgAbelianGroup:
    free_rank: int
    torsion_orders: tuple = ()

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    @property
    def relation_lattice(self) -> IntMatrix:
        n, m = self.free_rank, self.ngens
        return IntMatrix(
            tuple(tuple(d if j == n + i else 0 for j in range(m)) for i, d in enumerate(self.torsion_orders)),
            m,
        )

    def element(self, coords: Sequence[int]) -> "GroupElement":
        coords = tuple(int(x) for x in coords)
        if len(coords) != self.ngens:
            raise DimensionMismatch(f"element needs {self.ngens} coordinates, got {len(coords)}")
        n = self.free_rank
        return GroupElement(self, coords[:n] + tuple(x % d for x, d in zip(coords[n:], self.torsion_orders)))

    def __str__(self):
        return " + ".join([f"Z^{self.free_rank}"] + [f"Z/{d}" for d in self.torsion_orders])


@dataclass(frozen=True)
class GroupElement:
    ambient: FgAbelianGroup
    coords: tuple

    def to_json(self) -> list:
        return [str(x) for x in self.coords]


def make_group(free_rank: int, torsion: Iterable[int] = ()) -> FgAbelianGroup:
    """Build ``Z^free_rank + sum Z/d`` in invariant-factor form."""
    torsion = [int(d) for d in torsion]
    if free_rank < 0:
        raise BadTorsion("free rank must be non-negative")
    if any(d < 2 for d in torsion):
        raise BadTorsion(f"torsion orders must be >= 2, got {torsion}")
    k = len(torsion)
    diag = IntMatrix(tuple(tuple(d if i == j else 0 for j in range(k)) for i, d in enumerate(torsion)), k)
    chain = tuple(d for d in snf(diag).divisors if d > 1)
    return FgAbelianGroup(int(free_rank), chain)


_TERM = re.compile(r"^Z(?:\^(\d+)|/(\d+))?$")


def parse_group(text: str) -> FgAbelianGroup:
    """Parse ``"Z^2 + Z/2 + Z/4"``; a bare ``Z`` means ``Z^1``."""
    free, torsion = 0, []
    terms = [t.replace(" ", "") for t in text.split("+")]
    if not text.strip() or any(not t for t in terms):
        raise ParseError(f"bad group spec {text!r}")
    for term in terms:
        match = _TERM.match(term)
        if not match:
            raise ParseError(f"bad group term {term!r} in {text!r}")
        power, order = match.groups()
        if order is not None:
            torsion.append(int(order))
        else:
            free += int(power) if power is not None else 1
    try:
        return make_group(free, torsion)
    except BadTorsion as exc:
        raise ParseError(str(exc)) from exc


@dataclass(frozen=True)
class Subgroup:
    ambient: FgAbelianGroup
    lift_basis: IntMatrix

    def __post_init__(self):
        if self.lift_basis.ncols != self.ambient.ngens:
            raise DimensionMismatch("lift basis has the wrong number of columns")
        if canonical(self.lift_basis) != self.lift_basis:
            raise ValueError("lift basis is not in canonical form; use subgroup_from_lattice")
        if not contains_lattice(self.lift_basis, self.ambient.relation_lattice):
            raise ValueError("lift lattice must contain the relation lattice")

    @property
    def rank(self) -> int:
        return rank(self)

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return intersect(self, other)

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return subgroup_sum(self, other)

    def __le__(self, other: "Subgroup") -> bool:
        return contains(other, self)

    def to_json(self) -> dict:
        return {"ambient": str(self.ambient), "lift_basis": self.lift_basis.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Subgroup":
        G = parse_group(data["ambient"])
        return subgroup_from_lattice(G, IntMatrix.from_json(data["lift_basis"], G.ngens))

    def __str__(self):
        return f"<{self.lift_basis}> in {self.ambient}"


def subgroup_from_lattice(G: FgAbelianGroup, lattice: IntMatrix) -> Subgroup:
    """Subgroup whose preimage is ``span(lattice) + L``."""
    if lattice.ncols != G.ngens:
        raise DimensionMismatch(f"expected {G.ngens} columns, got {lattice.ncols}")
    return Subgroup(G, canonical(lattice.stack(G.relation_lattice)))


def subgroup_from_generators(G: FgAbelianGroup, gens: Iterable) -> Subgroup:
    rows = []
    for g in gens:
        if isinstance(g, GroupElement):
            if g.ambient != G:
                raise DimensionMismatch("generator belongs to a different group")
            rows.append(g.coords)
        else:
            rows.append(G.element(g).coords)
    return subgroup_from_lattice(G, IntMatrix(tuple(rows), G.ngens))


def trivial_subgroup(G: FgAbelianGroup) -> Subgroup:
    return subgroup_from_lattice(G, IntMatrix((), G.ngens))


def whole_group(G: FgAbelianGroup) -> Subgroup:
    return Subgroup(G, IntMatrix.identity(G.ngens))


def _same_ambient(H: Subgroup, K: Subgroup):
    if H.ambient != K.ambient:
        raise AmbientMismatch(f"{H.ambient} vs {K.ambient}")


def rank(H: Subgroup) -> int:
    """Torsion-free rank of ``H``."""
    return H.lift_basis.nrows - len(H.ambient.torsion_orders)


def intersect(H: Subgroup, K: Subgroup) -> Subgroup:
    _same_ambient(H, K)
    return Subgroup(H.ambient, lattice_intersect(H.lift_basis, K.lift_basis))


def subgroup_sum(H: Subgroup, K: Subgroup) -> Subgroup:
    _same_ambient(H, K)
    return Subgroup(H.ambient, canonical(H.lift_basis.stack(K.lift_basis)))


def contains(H: Subgroup, K: Subgroup) -> bool:
    """True iff ``K <= H``."""
    _same_ambient(H, K)
    return contains_lattice(H.lift_basis, K.lift_basis)


def index(H: Subgroup, K: Subgroup):
    """``[K : H]`` for ``H <= K``; :data:`~fgab.lattice.INFINITE` when ranks differ."""
    _same_ambient(H, K)
    if not contains(K, H):
        raise ContainmentViolation("first subgroup is not contained in the second")
    return lattice_index(K.lift_basis, H.lift_basis)


def commensurable(H: Subgroup, K: Subgroup) -> bool:
    """``H ~ K``: the intersection keeps the common rank ``r >= 1``."""
    _same_ambient(H, K)
    r = rank(H)
    if r != rank(K):
        raise RankMismatch(f"ranks differ: {r} vs {rank(K)}")
    if r == 0:
        raise RankMismatch("commensurability is only defined for rank >= 1")
    return rank(intersect(H, K)) == r


def max_overgroup(H: Subgroup) -> Subgroup:
    """The isolator ``{g : m*g in H for some m >= 1}``, the unique maximal
    subgroup of the same rank containing ``H``."""
    if rank(H) == 0:
        raise RankZero("maximal overgroups are defined for rank >= 1")
    return Subgroup(H.ambient, saturate(H.lift_basis))


def is_maximal(H: Subgroup) -> bool:
    return max_overgroup(H) == H


def quotient_invariants(G: FgAbelianGroup, H: Subgroup) -> FgAbelianGroup:
    """Invariant-factor form of ``G/H``."""
    if H.ambient != G:
        raise AmbientMismatch("subgroup does not live in this group")
    divisors = snf(H.lift_basis).divisors
    return FgAbelianGroup(G.ngens - len(divisors), tuple(d for d in divisors if d > 1))


@dataclass(frozen=True)
class ClassEnumeration:
    ambient: FgAbelianGroup
    rank: int
    height_bound: int
    representatives: tuple
    exhaustive_within_bound: bool = True

    def to_json(self) -> dict:
        return {
            "ambient": str(self.ambient),
            "rank": self.rank,
            "height_bound": self.height_bound,
            "exhaustive_within_bound": self.exhaustive_within_bound,
            "representatives": [H.lift_basis.to_json() for H in self.representatives],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ClassEnumeration":
        G = parse_group(data["ambient"])
        reps = tuple(Subgroup(G, IntMatrix.from_json(b, G.ngens)) for b in data["representatives"])
        return cls(G, int(data["rank"]), int(data["height_bound"]), reps, bool(data["exhaustive_within_bound"]))


def _hnf_candidates(n: int, r: int, height: int):
    # every r x n row-HNF matrix with entries bounded by height
    for pivots in itertools.combinations(range(n), r):
        for pvals in itertools.product(range(1, height + 1), repeat=r):
            choices = []
            for i, p in enumerate(pivots):
                for j in range(n):
                    if j < p:
                        choices.append((0,))
                    elif j == p:
                        choices.append((pvals[i],))
                    elif j in pivots:
                        choices.append(tuple(range(pvals[pivots.index(j)])))
                    else:
                        choices.append(tuple(range(-height, height + 1)))
            for flat in itertools.product(*choices):
                yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(r))


def enumerate_maximal(G: FgAbelianGroup, r: int, height: int) -> ClassEnumeration:
    """All commensurability classes of rank ``r`` whose maximal representative
    has free-coordinate entries bounded by ``height`` in absolute value.

    A maximal subgroup contains all torsion, so its preimage is
    ``M' + Z^k`` for a saturated rank-``r`` lattice ``M'`` in ``Z^n``; only
    ``M'`` needs enumerating. Classes are keyed by that representative.
    """
    n, k = G.free_rank, len(G.torsion_orders)
    if not 1 <= r <= n:
        raise BadRank(f"rank must satisfy 1 <= r <= {n}, got {r}")
    if height < 1:
        raise FgabError("height bound must be positive")
    reps = []
    for rows in _hnf_candidates(n, r, height):
        M = IntMatrix(rows, n)
        if saturate(M) != M:
            continue
        lift = tuple(row + (0,) * k for row in rows) + tuple(
            (0,) * n + tuple(int(i == j) for j in range(k)) for i in range(k)
        )
        reps.append(Subgroup(G, IntMatrix(lift, n + k)))
    reps.sort(key=lambda H: H.lift_basis.rows)
    return ClassEnumeration(G, r, height, tuple(reps), True)
