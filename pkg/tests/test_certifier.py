import dataclasses
import json

import pytest

from fgab.certifier import (
    AllOf,
    CertNode,
    DimensionCertificate,
    Intersection,
    RankFamily,
    Union,
    all_m_model,
    base_fin_model,
    certify,
    join,
    meet,
    pushout_step,
    union_bound,
    validate_certificate,
)
from fgab.errors import BadBound, BadRank, FamilyMismatch, NotMaximal, RankZeroGroup
from fgab.groups import enumerate_maximal, make_group, subgroup_from_generators, whole_group


def node(family, dim):
    return CertNode("BaseFin", family, dim)


class TestFamilies:
    def test_meet_ranks(self):
        assert meet(RankFamily(2), RankFamily(1)) == RankFamily(1)

    def test_meet_nested_all(self):
        M = AllOf("M", 3)
        N = AllOf("M.N1", 1, within="M")
        F = RankFamily(0)
        assert meet(meet(F, M), N) == meet(F, N)

    def test_meet_concrete_containment(self):
        G = make_group(3)
        M = AllOf("M", 2, subgroup_from_generators(G, [(1, 0, 0), (0, 1, 0)]))
        N = AllOf("N", 1, subgroup_from_generators(G, [(1, 1, 0)]))
        assert meet(M, N) == N

    def test_join_flattens_and_sorts(self):
        a, b = RankFamily(1), AllOf("N", 1)
        assert join(a, b) == join(b, a) == Union((a, b))
        assert join(join(a, b), a) == Union((a, b))

    def test_distinct_members(self):
        with pytest.raises(FamilyMismatch):
            Intersection((RankFamily(1), RankFamily(1)))
        with pytest.raises(BadRank):
            RankFamily(-1)


class TestNodes:
    @pytest.mark.parametrize("G,dim", [
        (make_group(3), 3), (make_group(1), 1), (make_group(2, (2,)), 2),
    ])
    def test_base_fin(self, G, dim):
        assert base_fin_model(G).dim == dim

    def test_base_fin_rank_zero(self):
        with pytest.raises(RankZeroGroup):
            base_fin_model(make_group(0, (2,)))

    def test_all_m(self):
        Z3 = make_group(3)
        assert all_m_model(Z3, subgroup_from_generators(Z3, [(1, 2, 3)])).dim == 2
        Z2 = make_group(2)
        assert all_m_model(Z2, whole_group(Z2)).dim == 0
        G = make_group(1, (4,))
        assert all_m_model(G, whole_group(G)).dim == 0

    def test_all_m_not_maximal(self):
        Z2 = make_group(2)
        with pytest.raises(NotMaximal):
            all_m_model(Z2, subgroup_from_generators(Z2, [(2, 4)]))
        with pytest.raises(NotMaximal):
            all_m_model(Z2, subgroup_from_generators(Z2, []))

    @pytest.mark.parametrize("dims,expected", [((3, 1, 3), 4), ((0, 0, 0), 1), ((5, 2, 4), 5)])
    def test_union_bound(self, dims, expected):
        F, G = RankFamily(1), AllOf("N", 1)
        u = union_bound(node(F, dims[0]), node(G, dims[1]), node(meet(F, G), dims[2]))
        assert u.dim == expected
        swapped = union_bound(node(G, dims[1]), node(F, dims[0]), node(meet(F, G), dims[2]))
        assert swapped.dim == expected and swapped.family == u.family

    def test_union_bound_family_mismatch(self):
        with pytest.raises(FamilyMismatch):
            union_bound(node(RankFamily(1), 1), node(AllOf("N", 1), 1), node(RankFamily(1), 1))


class TestPushoutStep:
    @pytest.mark.parametrize("n,r,d,expected", [(2, 1, 2, 3), (3, 2, 4, 5), (3, 1, 3, 4)])
    def test_examples(self, n, r, d, expected):
        step = pushout_step(make_group(n), r, d)
        assert step.kind == "PushOut" and step.dim == expected
        assert step.family == RankFamily(r)
        assert step.classes.cardinality == "infinite"
        pieces = step.children[1:]
        assert pieces and all(p.kind == "UnionCylinder" and p.dim == step.dim for p in pieces)
        base_allm = pieces[0].children[1]
        assert base_allm.dim == n - r

    def test_errors(self):
        Z3 = make_group(3)
        with pytest.raises(BadRank):
            pushout_step(Z3, 3, 5)
        with pytest.raises(BadRank):
            pushout_step(Z3, 0, 3)
        with pytest.raises(BadBound):
            pushout_step(Z3, 1, 2)
        with pytest.raises(BadBound):
            pushout_step(Z3, 2, 7)

    def test_with_sample(self):
        Z2 = make_group(2)
        sample = enumerate_maximal(Z2, 1, 1)
        step = pushout_step(Z2, 1, 2, sample)
        assert len(step.children) == 1 + 1 + 4
        assert step.classes.sample == sample
        with pytest.raises(FamilyMismatch):
            pushout_step(Z2, 1, 2, enumerate_maximal(make_group(3), 1, 1))


class TestCertify:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_fin(self, n):
        cert = certify(make_group(n), 0)
        assert cert.bound == n and cert.bound_kind == "exact"

    def test_examples(self):
        assert certify(make_group(2), 1).bound == 3
        cert = certify(make_group(3), 2)
        assert cert.bound == 5 and cert.bound_kind == "exact"
        assert certify(make_group(2), 5).bound == 0

    def test_upper_bound_labels(self):
        assert certify(make_group(4), 2).bound_kind == "upper"
        assert certify(make_group(3, (2,)), 2).bound_kind == "upper"
        assert certify(make_group(4), 1).bound_kind == "exact"

    def test_rank_zero_group(self):
        with pytest.raises(RankZeroGroup):
            certify(make_group(0, (3,)), 0)
        with pytest.raises(BadRank):
            certify(make_group(2), -1)

    @pytest.mark.parametrize("torsion", [(), (2,), (2, 6)])
    def test_all_ranks(self, torsion):
        for n in range(1, 7):
            G = make_group(n, torsion)
            prev = None
            for r in range(n):
                cert = certify(G, r)
                assert cert.bound == n + r
                assert validate_certificate(cert)
                if prev is not None:
                    assert cert.bound == prev + 1
                prev = cert.bound

    def test_pushout_pieces_use_full_dimension(self):
        cert = certify(make_group(5), 4)
        for nd in cert.root.walk():
            if nd.kind == "PushOut":
                assert all(p.dim == nd.dim for p in nd.children[1:])

    def test_sampled_certificate(self):
        cert = certify(make_group(3), 2, sample_height=1)
        assert validate_certificate(cert)
        pushouts = [nd for nd in cert.root.walk() if nd.kind == "PushOut" and nd.classes.sample]
        assert {nd.classes.rank for nd in pushouts} == {1, 2}

    @pytest.mark.parametrize("G,r,h", [(make_group(3), 2, None), (make_group(2, (2, 4)), 1, 2),
                                       (make_group(4), 6, None)])
    def test_json_round_trip(self, G, r, h):
        cert = certify(G, r, h)
        data = json.loads(json.dumps(cert.to_json()))
        assert set(data) >= {"group", "target_family", "bound", "root"}
        assert set(data["root"]) >= {"kind", "family", "dim", "children", "note"}
        again = DimensionCertificate.from_json(data)
        assert again == cert
        assert validate_certificate(again)

    def test_text_rendering(self):
        text = certify(make_group(2), 1).render_text()
        assert text.splitlines()[0].startswith("gd_{F_1}(Z^2) <= 3")
        assert "UnionCylinder" in text and "BaseAllM" in text


def _replace_first(root, kind, **changes):
    done = [False]

    def visit(nd):
        if not done[0] and nd.kind == kind:
            done[0] = True
            return dataclasses.replace(nd, **changes)
        return dataclasses.replace(nd, children=tuple(visit(c) for c in nd.children))

    return visit(root)


class TestValidate:
    def test_round_trip(self):
        assert validate_certificate(certify(make_group(3), 2))

    def test_tampered_pushout(self):
        cert = certify(make_group(2), 1)
        bad = dataclasses.replace(cert, root=dataclasses.replace(cert.root, dim=2), bound=2)
        assert not validate_certificate(bad)

    def test_tampered_base(self):
        cert = certify(make_group(3), 2)
        bad = dataclasses.replace(cert, root=_replace_first(cert.root, "BaseFin", dim=4))
        assert not validate_certificate(bad)

    def test_tampered_bound(self):
        cert = certify(make_group(3), 1)
        assert not validate_certificate(dataclasses.replace(cert, bound=3))

    def test_tampered_allm(self):
        cert = certify(make_group(3), 1)
        bad = dataclasses.replace(cert, root=_replace_first(cert.root, "BaseAllM", dim=0))
        assert not validate_certificate(bad)

    def test_non_maximal_sample_rejected(self):
        Z2 = make_group(2)
        cert = certify(Z2, 1, sample_height=1)
        fake = AllOf("fake", 1, subgroup_from_generators(Z2, [(2, 0)]))
        bad = dataclasses.replace(cert, root=_replace_first(cert.root, "BaseAllM", family=fake))
        assert not validate_certificate(bad)

    def test_wrong_family_chain(self):
        cert = certify(make_group(3), 2)
        bad = dataclasses.replace(cert, root=dataclasses.replace(cert.root, family=RankFamily(3)),
                                  target_family=RankFamily(3))
        assert not validate_certificate(bad)
