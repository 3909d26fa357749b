"""Dimension certificates for classifying spaces of rank families.

For ``G`` finitely generated abelian of torsion-free rank ``n`` and
``F_r`` the family of subgroups of torsion-free rank at most ``r``, the
certificate is a tree of construction steps proving ``gd_{F_r} G <= n + r``:

* ``BaseFin``: ``R^n`` as a model for the finite subgroups (dimension ``n``).
* ``BaseAllM``: ``R^(n - rank M)`` for the subgroups of a maximal ``M``.
* ``UnionCylinder``: double mapping cylinder,
  ``dim(F ∪ G) <= max(dim F, dim G, dim(F ∩ G) + 1)``.
* ``PushOut``: one push-out step raising the rank of the family by one.
  Since ``G`` is abelian every normalizer is the whole group, so the corner
  of the square is the base model itself and the result has dimension
  ``max(base + 1, pieces)``.

Every step also needs bounds for ``F_r ∩ All(M)``; those are built by the
same recursion on the auxiliary chain. Nothing geometric is constructed;
only families and dimensions are tracked, and :func:`validate_certificate`
recomputes every dimension from the rules above.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union as TUnion

from .errors import BadBound, BadRank, FamilyMismatch, NotMaximal, RankZero, RankZeroGroup
from .groups import (
    ClassEnumeration,
    FgAbelianGroup,
    Subgroup,
    contains,
    enumerate_maximal,
    is_maximal,
    parse_group,
    rank as subgroup_rank,
)
from .lattice import IntMatrix

# --------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class RankFamily:
    r: int

    def __post_init__(self):
        if self.r < 0:
            raise BadRank("family rank must be non-negative")

    def to_json(self):
        return {"type": "rank", "r": self.r}

    def __str__(self):
        return f"F_{self.r}"


@dataclass(frozen=True)
class AllOf:
    """All subgroups of ``M``; ``M`` is either concrete or a named generic
    maximal subgroup of the given rank (optionally known to lie in another)."""

    label: str
    rank: int
    subgroup: Optional[Subgroup] = None
    within: Optional[str] = None

    def to_json(self):
        out = {"type": "all", "label": self.label, "rank": self.rank}
        if self.subgroup is not None:
            out["subgroup"] = self.subgroup.lift_basis.to_json()
        if self.within is not None:
            out["within"] = self.within
        return out

    def __str__(self):
        return f"All({self.label})"


@dataclass(frozen=True)
class Intersection:
    members: tuple

    def __post_init__(self):
        if len(set(self.members)) != len(self.members):
            raise FamilyMismatch("intersection members must be distinct")

    def to_json(self):
        return {"type": "intersection", "members": [m.to_json() for m in self.members]}

    def __str__(self):
        return "(" + " ∩ ".join(map(str, self.members)) + ")"


@dataclass(frozen=True)
class Union:
    members: tuple

    def __post_init__(self):
        if len(set(self.members)) != len(self.members):
            raise FamilyMismatch("union members must be distinct")

    def to_json(self):
        return {"type": "union", "members": [m.to_json() for m in self.members]}

    def __str__(self):
        return "(" + " ∪ ".join(map(str, self.members)) + ")"


FamilyDescriptor = TUnion[RankFamily, AllOf, Intersection, Union]


def family_from_json(data: dict, G: FgAbelianGroup) -> FamilyDescriptor:
    kind = data["type"]
    if kind == "rank":
        return RankFamily(int(data["r"]))
    if kind == "all":
        sub = None
        if "subgroup" in data:
            sub = Subgroup(G, IntMatrix.from_json(data["subgroup"], G.ngens))
        return AllOf(data["label"], int(data["rank"]), sub, data.get("within"))
    members = tuple(family_from_json(m, G) for m in data["members"])
    if kind == "intersection":
        return Intersection(members)
    if kind == "union":
        return Union(members)
    raise ValueError(f"unknown family type {kind!r}")


def _family_key(f) -> tuple:
    order = {RankFamily: 0, AllOf: 1, Intersection: 2, Union: 3}[type(f)]
    return order, json.dumps(f.to_json(), sort_keys=True)


def _all_le(small: AllOf, big: AllOf) -> bool:
    """All(small) ⊆ All(big), as far as it can be decided."""
    if small == big or small.within == big.label:
        return True
    if small.subgroup is not None and big.subgroup is not None:
        return contains(big.subgroup, small.subgroup)
    return False


def meet(*families) -> FamilyDescriptor:
    """Normalized intersection of families.

    ``F_a ∩ F_b = F_min(a,b)`` and ``All(M) ∩ All(N) = All(N)`` for ``N <= M``.
    """
    flat = []
    for f in families:
        flat.extend(f.members if isinstance(f, Intersection) else (f,))
    ranks = [f.r for f in flat if isinstance(f, RankFamily)]
    alls = [f for f in flat if isinstance(f, AllOf)]
    other = [f for f in flat if not isinstance(f, (RankFamily, AllOf))]
    kept = [RankFamily(min(ranks))] if ranks else []
    for a in alls:
        if not any(b != a and _all_le(b, a) for b in alls) and a not in kept:
            kept.append(a)
    for o in other:
        if o not in kept:
            kept.append(o)
    kept.sort(key=_family_key)
    return kept[0] if len(kept) == 1 else Intersection(tuple(kept))


def join(*families) -> FamilyDescriptor:
    flat = []
    for f in families:
        for m in f.members if isinstance(f, Union) else (f,):
            if m not in flat:
                flat.append(m)
    flat.sort(key=_family_key)
    return flat[0] if len(flat) == 1 else Union(tuple(flat))


def _split_rank(family) -> tuple:
    """``F_r`` or ``F_r ∩ X`` -> ``(r, X or None)``; anything else -> ``(None, None)``."""
    if isinstance(family, RankFamily):
        return family.r, None
    if isinstance(family, Intersection):
        ranks = [m for m in family.members if isinstance(m, RankFamily)]
        rest = [m for m in family.members if not isinstance(m, RankFamily)]
        if len(ranks) == 1 and len(rest) == 1:
            return ranks[0].r, rest[0]
    return None, None


# --------------------------------------------------------------------------
# certificate nodes


@dataclass(frozen=True)
class ClassSet:
    """The index set of a push-out: commensurability classes of maximal
    rank-``rank`` subgroups (inside ``within`` when given). Always infinite
    here; an optional exhaustive sample up to a height bound rides along."""

    rank: int
    within: Optional[str] = None
    cardinality: str = "infinite"
    sample: Optional[ClassEnumeration] = None

    def to_json(self):
        out = {"rank": self.rank, "cardinality": self.cardinality}
        if self.within is not None:
            out["within"] = self.within
        if self.sample is not None:
            out["sample"] = self.sample.to_json()
        return out

    @classmethod
    def from_json(cls, data):
        sample = ClassEnumeration.from_json(data["sample"]) if "sample" in data else None
        return cls(int(data["rank"]), data.get("within"), data["cardinality"], sample)


KINDS = ("BaseFin", "BaseAllM", "UnionCylinder", "PushOut")


@dataclass(frozen=True)
class CertNode:
    kind: str
    family: FamilyDescriptor
    dim: int
    children: tuple = ()
    classes: Optional[ClassSet] = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "family": self.family.to_json(),
            "dim": self.dim,
            "children": [c.to_json() for c in self.children],
        }
        if self.classes is not None:
            out["classes"] = self.classes.to_json()
        out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, data: dict, G: FgAbelianGroup) -> "CertNode":
        if data["kind"] not in KINDS:
            raise ValueError(f"unknown node kind {data['kind']!r}")
        return cls(
            kind=data["kind"],
            family=family_from_json(data["family"], G),
            dim=int(data["dim"]),
            children=tuple(cls.from_json(c, G) for c in data["children"]),
            classes=ClassSet.from_json(data["classes"]) if "classes" in data else None,
            note=data.get("note", ""),
        )

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass(frozen=True)
class DimensionCertificate:
    group: FgAbelianGroup
    target_family: FamilyDescriptor
    bound: int
    root: CertNode
    bound_kind: str = "upper"

    def to_json(self) -> dict:
        return {
            "group": str(self.group),
            "target_family": self.target_family.to_json(),
            "bound": self.bound,
            "bound_kind": self.bound_kind,
            "root": self.root.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DimensionCertificate":
        G = parse_group(data["group"])
        return cls(
            group=G,
            target_family=family_from_json(data["target_family"], G),
            bound=int(data["bound"]),
            root=CertNode.from_json(data["root"], G),
            bound_kind=data.get("bound_kind", "upper"),
        )

    def render_text(self) -> str:
        kind = "exact value" if self.bound_kind == "exact" else "upper bound"
        lines = [f"gd_{{{self.target_family}}}({self.group}) <= {self.bound}  ({kind})"]

        def visit(node, depth):
            extra = ""
            if node.classes is not None:
                c = node.classes
                extra = f"; classes: {c.cardinality} (rank {c.rank}"
                if c.within:
                    extra += f" inside {c.within}"
                if c.sample is not None:
                    extra += f", {len(c.sample.representatives)} sampled up to height {c.sample.height_bound}"
                extra += ")"
            note = f"  -- {node.note}" if node.note else ""
            lines.append(f"{'  ' * depth}{node.kind} {node.family} [dim {node.dim}]{extra}{note}")
            for child in node.children:
                visit(child, depth + 1)

        visit(self.root, 1)
        return "\n".join(lines)


# --------------------------------------------------------------------------
# construction


def _require_positive_rank(G: FgAbelianGroup) -> int:
    n = G.free_rank
    if n < 1:
        raise RankZeroGroup("torsion-free rank must be ≥ 1")
    return n


def base_fin_model(G: FgAbelianGroup) -> CertNode:
    n = _require_positive_rank(G)
    return CertNode("BaseFin", RankFamily(0), n, note=f"R^{n} with G acting through its free quotient")


def _base_fin_within(G: FgAbelianGroup, M: AllOf) -> CertNode:
    n = G.free_rank
    return CertNode(
        "BaseFin", meet(RankFamily(0), M), n,
        note=f"{M.label} is maximal, so it contains every finite subgroup: same model as F_0",
    )


def subgroup_family(M: Subgroup) -> AllOf:
    return AllOf(f"<{M.lift_basis}>", subgroup_rank(M), M)


def _all_m_node(G: FgAbelianGroup, M: AllOf) -> CertNode:
    n = G.free_rank
    return CertNode(
        "BaseAllM", M, n - M.rank,
        note=f"G/{M.label} is free abelian of rank {n - M.rank}: model R^{n - M.rank}",
    )


def all_m_model(G: FgAbelianGroup, M: TUnion[Subgroup, AllOf]) -> CertNode:
    """Model for the subgroups of a maximal ``M``: ``R^(n - rank M)``."""
    _require_positive_rank(G)
    if isinstance(M, Subgroup):
        if M.ambient != G:
            raise NotMaximal("subgroup lives in a different group")
        try:
            maximal = is_maximal(M)
        except RankZero:
            maximal = False
        if not maximal:
            raise NotMaximal(f"{M} is not maximal")
        M = subgroup_family(M)
    elif not 1 <= M.rank <= G.free_rank:
        raise NotMaximal(f"generic maximal subgroup of impossible rank {M.rank}")
    return _all_m_node(G, M)


def union_bound(nodeF: CertNode, nodeG: CertNode, nodeFG: CertNode) -> CertNode:
    """Double mapping cylinder over the maps from ``E_{F∩G}``."""
    expected = meet(nodeF.family, nodeG.family)
    if nodeFG.family != expected:
        raise FamilyMismatch(f"third node has family {nodeFG.family}, expected {expected}")
    return CertNode(
        "UnionCylinder",
        join(nodeF.family, nodeG.family),
        max(nodeF.dim, nodeG.dim, nodeFG.dim + 1),
        (nodeF, nodeG, nodeFG),
        note="double mapping cylinder",
    )


def _pushout(base: CertNode, pieces: list, classes: ClassSet, family) -> CertNode:
    dim = max([base.dim + 1] + [p.dim for p in pieces])
    return CertNode(
        "PushOut", family, dim, (base, *pieces), classes,
        note="normalizer is whole group; corner is the base model",
    )


def _aux_node(G: FgAbelianGroup, r: int, M: AllOf) -> CertNode:
    """Certificate node for ``F_r ∩ All(M)``, ``M`` maximal of rank > r."""
    if r == 0:
        return _base_fin_within(G, M)
    base = _aux_node(G, r - 1, M)
    N = AllOf(f"{M.label}.N{r}", r, within=M.label)
    piece = union_bound(base, _all_m_node(G, N), _aux_node(G, r - 1, N))
    return _pushout(base, [piece], ClassSet(r, within=M.label), meet(RankFamily(r), M))


def _main_node(G: FgAbelianGroup, r: int, sample_height: Optional[int] = None) -> CertNode:
    if r == 0:
        return base_fin_model(G)
    prev = _main_node(G, r - 1, sample_height)
    sample = enumerate_maximal(G, r, sample_height) if sample_height else None
    return pushout_step(G, r, prev.dim, sample, prev=prev)


def pushout_step(
    G: FgAbelianGroup,
    r: int,
    d: int,
    class_sample: Optional[ClassEnumeration] = None,
    prev: Optional[CertNode] = None,
) -> CertNode:
    """One induction step: from a ``d``-dimensional model for ``F_(r-1)`` to
    a ``(d+1)``-dimensional model for ``F_r``.

    ``prev`` is the certificate for ``F_(r-1)``; when omitted it is built by
    the standard induction, and ``d`` must equal its dimension.
    """
    n = _require_positive_rank(G)
    if not 1 <= r < n:
        raise BadRank(f"push-out step needs 1 <= r < {n}, got {r}")
    if d < n:
        raise BadBound(f"bound {d} is below the torsion-free rank {n}")
    if prev is None:
        prev = _main_node(G, r - 1)
    if prev.family != RankFamily(r - 1):
        raise FamilyMismatch(f"previous node certifies {prev.family}, expected F_{r - 1}")
    if prev.dim != d:
        raise BadBound(f"previous node has dimension {prev.dim}, not {d}")
    if class_sample is not None and (class_sample.ambient != G or class_sample.rank != r):
        raise FamilyMismatch("class sample belongs to a different group or rank")

    reps = [AllOf(f"N{r}", r)]
    if class_sample is not None:
        reps += [subgroup_family(N) for N in class_sample.representatives]
    pieces = [union_bound(prev, _all_m_node(G, N), _aux_node(G, r - 1, N)) for N in reps]
    return _pushout(prev, pieces, ClassSet(r, sample=class_sample), RankFamily(r))


def _is_known_exact(G: FgAbelianGroup, r: int) -> bool:
    # r = 0 and r = 1 are classical; Z^3 with r = 2 is the one further known case
    n = G.free_rank
    if r >= n:
        return False
    return r in (0, 1) or (G == FgAbelianGroup(3, ()) and r == 2)


def certify(G: FgAbelianGroup, r: int, sample_height: Optional[int] = None) -> DimensionCertificate:
    """Certificate for ``gd_{F_r} G <= n + r`` (``0`` once ``r >= n``)."""
    n = _require_positive_rank(G)
    if r < 0:
        raise BadRank("family rank must be non-negative")
    if sample_height is not None and sample_height < 1:
        raise BadBound("sample height must be positive")
    if r >= n:
        root = CertNode("BaseFin", RankFamily(r), 0, note="F_r contains G itself: one-point model")
    else:
        root = _main_node(G, r, sample_height)
    kind = "exact" if _is_known_exact(G, r) else "upper"
    return DimensionCertificate(G, RankFamily(r), root.dim, root, kind)


# --------------------------------------------------------------------------
# validation


def _expected_dim(node: CertNode, G: FgAbelianGroup) -> Optional[int]:
    """Dimension implied by the node's kind and children, or None if the
    node is malformed."""
    n = G.free_rank
    kids = node.children
    fam = node.family
    if node.kind == "BaseFin":
        if kids:
            return None
        if fam == RankFamily(0):
            return n
        if isinstance(fam, RankFamily) and fam.r >= n:
            return 0
        r, rest = _split_rank(fam)
        if r == 0 and isinstance(rest, AllOf) and rest.rank >= 1:
            return n
        return None
    if node.kind == "BaseAllM":
        if kids or not isinstance(fam, AllOf) or not 1 <= fam.rank <= n:
            return None
        if fam.subgroup is not None:
            M = fam.subgroup
            if M.ambient != G or subgroup_rank(M) != fam.rank or not is_maximal(M):
                return None
        return n - fam.rank
    if node.kind == "UnionCylinder":
        if len(kids) != 3:
            return None
        f, g, fg = kids
        if fg.family != meet(f.family, g.family) or fam != join(f.family, g.family):
            return None
        return max(f.dim, g.dim, fg.dim + 1)
    if node.kind == "PushOut":
        if len(kids) < 2 or node.classes is None:
            return None
        base, pieces = kids[0], kids[1:]
        r, rest = _split_rank(fam)
        br, brest = _split_rank(base.family)
        if r is None or br != r - 1 or brest != rest or node.classes.rank != r:
            return None
        for piece in pieces:
            if piece.kind != "UnionCylinder" or len(piece.children) != 3:
                return None
            if piece.children[0].family != base.family:
                return None
            N = piece.children[1].family
            if not isinstance(N, AllOf) or N.rank != r:
                return None
            if rest is not None and not (isinstance(rest, AllOf) and _all_le(N, rest)):
                return None
        return max([base.dim + 1] + [p.dim for p in pieces])
    return None


def validate_certificate(cert: DimensionCertificate) -> bool:
    """Recompute every node dimension; True iff all of them match."""
    G = cert.group
    try:
        if G.free_rank < 1 or cert.bound != cert.root.dim or cert.root.family != cert.target_family:
            return False
        for node in cert.root.walk():
            if _expected_dim(node, G) != node.dim:
                return False
    except (ValueError, TypeError, AttributeError):
        return False
    return True
