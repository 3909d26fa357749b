import random

import pytest

from fgab.errors import IdentityInput, ParseError
from fgab.klein import (
    A,
    B,
    IDENTITY,
    KleinCyclic,
    KleinElement,
    k_cyclic_contains,
    k_inv,
    k_maximal_cyclic,
    k_mul,
    k_pow,
    k_roots,
    klein_demo,
    parse_element,
)
from oracles import klein_inv, klein_mul, klein_power_set

E = KleinElement


def test_square_relation():
    assert k_pow(k_mul(A, k_inv(B)), 2) == E(2, 0)


def test_ba():
    assert k_mul(B, A) == E(1, -1)


def test_inverse():
    x = E(3, -4)
    assert k_mul(x, k_inv(x)) == IDENTITY == k_mul(k_inv(x), x)


def test_defining_relation():
    assert k_mul(k_mul(A, B), k_inv(A)) == k_inv(B)


def test_parse():
    assert parse_element("aB") == E(1, -1)
    assert parse_element("(2, -3)") == E(2, -3)
    assert parse_element("") == IDENTITY
    with pytest.raises(ParseError):
        parse_element("abc")


def rand_el(rng, bound=5):
    return E(rng.randint(-bound, bound), rng.randint(-bound, bound))


def test_group_axioms_random():
    rng = random.Random(3)
    for _ in range(500):
        x, y, z = rand_el(rng), rand_el(rng), rand_el(rng)
        assert k_mul(k_mul(x, y), z) == k_mul(x, k_mul(y, z))
        assert k_mul(x, y) == E(*klein_mul((x.m, x.n), (y.m, y.n)))
        assert k_inv(x) == E(*klein_inv((x.m, x.n)))


def test_pow_matches_repeated_product():
    rng = random.Random(4)
    for _ in range(200):
        x = rand_el(rng)
        k = rng.randint(-7, 7)
        acc = IDENTITY
        for _ in range(abs(k)):
            acc = k_mul(acc, x if k > 0 else k_inv(x))
        assert k_pow(x, k) == acc


def test_cyclic_canonical():
    rng = random.Random(5)
    for _ in range(100):
        g = rand_el(rng)
        assert KleinCyclic.of(g) == KleinCyclic.of(k_inv(g))


def test_contains_examples():
    a, a2, ab = KleinCyclic.of(A), KleinCyclic.of(E(2, 0)), KleinCyclic.of(E(1, -1))
    assert k_cyclic_contains(a, a2)
    assert k_cyclic_contains(ab, a2)
    assert not k_cyclic_contains(a, KleinCyclic.of(B))


def test_contains_brute_force():
    elements = [E(m, n) for m in range(-5, 6) for n in range(-5, 6)]
    for g in elements:
        powers = klein_power_set((g.m, g.n), 100)
        cg = KleinCyclic.of(g)
        for h in elements:
            assert k_cyclic_contains(cg, KleinCyclic.of(h)) == ((h.m, h.n) in powers)


def test_maximal_examples():
    assert k_maximal_cyclic(A)
    assert k_maximal_cyclic(E(1, -1))
    assert not k_maximal_cyclic(E(2, 0))
    with pytest.raises(IdentityInput):
        k_maximal_cyclic(IDENTITY)


def test_maximal_brute_force():
    # g is non-maximal iff some h with |coords| <= 6 has g in <h> with index >= 2
    small = [E(m, n) for m in range(-6, 7) for n in range(-6, 7) if (m, n) != (0, 0)]
    for g in [E(m, n) for m in range(-4, 5) for n in range(-4, 5) if (m, n) != (0, 0)]:
        has_root = False
        for h in small:
            for k in range(2, 9):
                if k_pow(h, k) == g:
                    has_root = True
        assert k_maximal_cyclic(g) == (not has_root)
        for h, k in k_roots(g):
            assert k >= 2 and k_pow(h, k) == g


def test_demo():
    report = klein_demo()
    assert all(report["checks"].values())
    assert report["uniqueness_fails"]
    assert report["index <a> : <a^2>"] == 2
    assert report["index <ab^-1> : <a^2>"] == 2
