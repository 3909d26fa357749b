"""Rank bookkeeping for long exact sequences of finite-dimensional vector spaces.

A sequence ``0 = T_0 -> T_1 -> ... -> T_(m-1) = 0`` exact everywhere gives,
with ``ρ_i`` the rank of the arrow ``T_i -> T_(i+1)``,

    dim T_i = ρ_(i-1) + ρ_i,    ρ_i >= 0,

and nothing else. Known dimensions become equality constraints; unknown ones
are free. The constraint graph is a path of two-variable equations, which
interval propagation solves exactly; every endpoint is additionally probed
for short sequences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import MalformedSpec

PROBE_LIMIT = 32


@dataclass(frozen=True)
class Term:
    label: str
    dim: Optional[int] = None


@dataclass(frozen=True)
class ExactSequenceSpec:
    terms: tuple

    def __post_init__(self):
        if len(self.terms) < 3:
            raise MalformedSpec("an exact sequence needs at least 3 terms")
        for t in self.terms:
            if t.dim is not None and (not isinstance(t.dim, int) or isinstance(t.dim, bool) or t.dim < 0):
                raise MalformedSpec(f"term {t.label!r} has invalid dimension {t.dim!r}")
        for t in (self.terms[0], self.terms[-1]):
            if t.dim not in (None, 0):
                raise MalformedSpec(f"end term {t.label!r} must be zero")

    @classmethod
    def from_dims(cls, dims, labels=None) -> "ExactSequenceSpec":
        labels = labels or [f"T{i}" for i in range(len(dims))]
        return cls(tuple(Term(l, d) for l, d in zip(labels, dims)))

    @classmethod
    def from_json(cls, data: dict) -> "ExactSequenceSpec":
        try:
            terms = tuple(Term(str(t["label"]), None if t.get("dim") is None else int(t["dim"]))
                          for t in data["terms"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedSpec(f"bad sequence spec: {exc}") from exc
        return cls(terms)

    def to_json(self) -> dict:
        return {"terms": [{"label": t.label, "dim": t.dim} for t in self.terms]}

    @property
    def dims(self) -> list:
        n = len(self.terms)
        return [0 if i in (0, n - 1) else t.dim for i, t in enumerate(self.terms)]


def _interval(lo, hi):
    return (int(lo), None if hi == math.inf else int(hi))


@dataclass(frozen=True)
class RankSolution:
    """Feasible intervals; ``None`` as an upper end means unbounded."""

    term_ranges: tuple
    map_ranges: tuple
    feasible: bool

    def to_json(self, spec: Optional[ExactSequenceSpec] = None) -> dict:
        labels = [t.label for t in spec.terms] if spec else [str(i) for i in range(len(self.term_ranges))]
        return {
            "feasible": self.feasible,
            "terms": [{"label": l, "range": list(r)} for l, r in zip(labels, self.term_ranges)],
            "maps": [
                {"from": labels[i], "to": labels[i + 1], "range": list(r)}
                for i, r in enumerate(self.map_ranges)
            ],
        }


def _propagate(dims, lo, hi) -> bool:
    """Tighten rank bounds in place to a fixed point; False on contradiction."""
    m = len(dims)
    changed = True
    while changed:
        changed = False
        for i, d in enumerate(dims):
            if d is None:
                continue
            # d = a + b with a = ρ_(i-1), b = ρ_i (missing neighbours are 0)
            left, right = i - 1, i
            alo, ahi = (lo[left], hi[left]) if left >= 0 else (0, 0)
            blo, bhi = (lo[right], hi[right]) if right < m - 1 else (0, 0)
            new_a = (max(alo, d - bhi), min(ahi, d - blo))
            new_b = (max(blo, d - ahi), min(bhi, d - alo))
            if new_a[0] > new_a[1] or new_b[0] > new_b[1]:
                return False
            if left >= 0 and new_a != (lo[left], hi[left]):
                lo[left], hi[left] = new_a
                changed = True
            elif left < 0 and new_a != (0, 0):
                return False
            if right < m - 1 and new_b != (lo[right], hi[right]):
                lo[right], hi[right] = new_b
                changed = True
            elif right >= m - 1 and new_b != (0, 0):
                return False
    return True


def _feasible_with(dims, lo, hi, i, value) -> bool:
    lo2, hi2 = lo[:], hi[:]
    lo2[i] = hi2[i] = value
    return _propagate(dims, lo2, hi2)


def solve_les(spec: ExactSequenceSpec) -> RankSolution:
    dims = spec.dims
    m = len(dims)
    lo = [0] * (m - 1)
    hi = [math.inf] * (m - 1)
    if not _propagate(dims, lo, hi):
        return RankSolution((), (), False)
    if m <= PROBE_LIMIT:
        for i in range(m - 1):
            while lo[i] <= hi[i] and not _feasible_with(dims, lo, hi, i, lo[i]):
                lo[i] += 1
            while hi[i] != math.inf and hi[i] >= lo[i] and not _feasible_with(dims, lo, hi, i, hi[i]):
                hi[i] -= 1
            if lo[i] > hi[i]:
                return RankSolution((), (), False)
    terms = []
    for i, d in enumerate(dims):
        if d is not None:
            terms.append((d, d))
        else:
            a = (lo[i - 1], hi[i - 1]) if i > 0 else (0, 0)
            b = (lo[i], hi[i]) if i < m - 1 else (0, 0)
            terms.append(_interval(a[0] + b[0], a[1] + b[1]))
    maps = tuple(_interval(l, h) for l, h in zip(lo, hi))
    return RankSolution(tuple(terms), maps, True)


@dataclass(frozen=True)
class ArrowBounds:
    interval: Optional[tuple]
    forced_surjective: bool

    def to_json(self) -> dict:
        return {
            "interval": list(self.interval) if self.interval else None,
            "forced_surjective": self.forced_surjective,
        }


def map_rank_bounds(spec: ExactSequenceSpec, arrow_position: int) -> ArrowBounds:
    """Rank interval of the arrow ``T_i -> T_(i+1)``.

    The arrow is surjective exactly when the next arrow is zero, so it is
    forced surjective iff that rank is pinned to 0. An infeasible spec gives
    ``interval=None`` and ``forced_surjective=False``.
    """
    m = len(spec.terms)
    if not isinstance(arrow_position, int) or not 0 <= arrow_position < m - 1:
        raise MalformedSpec(f"arrow position must be in [0, {m - 2}], got {arrow_position!r}")
    sol = solve_les(spec)
    if not sol.feasible:
        return ArrowBounds(None, False)
    nxt = sol.map_ranges[arrow_position + 1] if arrow_position + 1 < m - 1 else (0, 0)
    return ArrowBounds(sol.map_ranges[arrow_position], nxt == (0, 0))
