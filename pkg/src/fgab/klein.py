"""The Klein-bottle group ``K = <a, b | a b a^-1 = b^-1>``.

Every element has the unique normal form ``a^m b^n`` and

    (a^m b^n)(a^p b^q) = a^(m+p) b^((-1)^p n + q).

Used to show that maximal cyclic overgroups need not be unique once the
group is not abelian: ``a^2 = (a b^-1)^2`` lies in both ``<a>`` and
``<a b^-1>``, which are distinct and maximal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import IdentityInput, ParseError


@dataclass(frozen=True, order=True)
class KleinElement:
    m: int
    n: int

    def __mul__(self, other: "KleinElement") -> "KleinElement":
        return k_mul(self, other)

    def __str__(self):
        return f"a^{self.m} b^{self.n}"

    def to_json(self) -> list:
        return [str(self.m), str(self.n)]


IDENTITY = KleinElement(0, 0)
A = KleinElement(1, 0)
B = KleinElement(0, 1)


def k_mul(x: KleinElement, y: KleinElement) -> KleinElement:
    sign = -1 if y.m % 2 else 1
    return KleinElement(x.m + y.m, sign * x.n + y.n)


def k_inv(x: KleinElement) -> KleinElement:
    return KleinElement(-x.m, x.n if x.m % 2 else -x.n)


def k_pow(x: KleinElement, k: int) -> KleinElement:
    """Closed form: for even ``m`` powers are ``a^(km) b^(kn)``; for odd ``m``
    even powers kill the ``b`` part and odd powers keep it unchanged."""
    if x.m % 2 == 0:
        return KleinElement(k * x.m, k * x.n)
    return KleinElement(k * x.m, x.n if k % 2 else 0)


def parse_element(text: str) -> KleinElement:
    """Accept ``"(m,n)"`` or a word over ``a, b, A, B`` (capitals are inverses)."""
    text = text.strip()
    pair = re.fullmatch(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)", text)
    if pair:
        return KleinElement(int(pair.group(1)), int(pair.group(2)))
    letters = {"a": A, "b": B, "A": k_inv(A), "B": k_inv(B)}
    out = IDENTITY
    for ch in text:
        if ch not in letters:
            raise ParseError(f"bad Klein-group element {text!r}")
        out = k_mul(out, letters[ch])
    return out


def log_in_cyclic(g: KleinElement, h: KleinElement):
    """The exponent ``k`` with ``g^k == h``, or ``None`` if ``h`` is not in ``<g>``.

    The exponent is unique for ``g != 1`` since ``<g>`` is infinite cyclic.
    """
    if g == IDENTITY:
        return 0 if h == IDENTITY else None
    if g.m == 0:
        if h.m != 0 or h.n % g.n:
            return None
        return h.n // g.n
    if h.m % g.m:
        return None
    k = h.m // g.m
    return k if k_pow(g, k) == h else None


@dataclass(frozen=True)
class KleinCyclic:
    generator: KleinElement

    @classmethod
    def of(cls, g: KleinElement) -> "KleinCyclic":
        return cls(min(g, k_inv(g)))


def k_cyclic_contains(g: KleinCyclic, h: KleinCyclic) -> bool:
    """True iff ``<h> <= <g>``."""
    return log_in_cyclic(g.generator, h.generator) is not None


def _divisors(x: int):
    x = abs(x)
    return [d for d in range(1, x + 1) if x % d == 0]


def k_roots(g: KleinElement):
    """All pairs ``(h, k)`` with ``k >= 2`` and ``h^k == g``, one ``h`` per ``k``
    up to the choice noted below.

    Candidates come from the power formula: ``k`` must divide ``m``, and
    * ``m = 0``: ``h = b^(n/k)``, so ``k`` divides ``n``;
    * ``m`` odd: ``k`` odd and ``h = a^(m/k) b^n``;
    * ``m`` even: either ``m/k`` even and ``h = a^(m/k) b^(n/k)``, or ``n = 0``,
      ``k`` even and ``m/k`` odd, where any ``b``-part works (``b^0`` is listed).
    """
    if g == IDENTITY:
        raise IdentityInput("the identity has roots of every order")
    roots = []
    if g.m == 0:
        for k in _divisors(g.n):
            if k >= 2:
                roots.append((KleinElement(0, g.n // k), k))
    else:
        for k in _divisors(g.m):
            if k < 2:
                continue
            p = g.m // k
            if p % 2 == 0:
                if g.n % k == 0:
                    roots.append((KleinElement(p, g.n // k), k))
            elif k % 2:
                roots.append((KleinElement(p, g.n), k))
            elif g.n == 0:
                roots.append((KleinElement(p, 0), k))
    for h, k in roots:
        assert k_pow(h, k) == g
    return roots


def k_maximal_cyclic(g: KleinElement) -> bool:
    """True iff no cyclic subgroup properly contains ``<g>``."""
    return not k_roots(g)


def klein_demo() -> dict:
    """Check that ``<a^2>`` sits in two distinct maximal cyclic subgroups."""
    a, ab_inv = A, k_mul(A, k_inv(B))
    a2 = k_pow(a, 2)
    ca, cab, ca2 = KleinCyclic.of(a), KleinCyclic.of(ab_inv), KleinCyclic.of(a2)
    checks = {
        "a^2 == (ab^-1)^2": a2 == k_pow(ab_inv, 2),
        "<a> != <ab^-1>": ca != cab,
        "<a> contains <a^2>": k_cyclic_contains(ca, ca2),
        "<ab^-1> contains <a^2>": k_cyclic_contains(cab, ca2),
        "<a> maximal": k_maximal_cyclic(a),
        "<ab^-1> maximal": k_maximal_cyclic(ab_inv),
    }
    return {
        "relation": "a b a^-1 = b^-1",
        "elements": {"a": a.to_json(), "ab^-1": ab_inv.to_json(), "a^2": a2.to_json()},
        "checks": checks,
        "index <a> : <a^2>": abs(log_in_cyclic(a, a2)),
        "index <ab^-1> : <a^2>": abs(log_in_cyclic(ab_inv, a2)),
        "uniqueness_fails": all(checks.values()),
    }


def render_demo(report: dict) -> str:
    lines = [f"Klein-bottle group <a, b | {report['relation']}>"]
    for name, ok in report["checks"].items():
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
    lines.append(f"  [<a> : <a^2>] = {report['index <a> : <a^2>']}")
    lines.append(f"  [<ab^-1> : <a^2>] = {report['index <ab^-1> : <a^2>']}")
    verdict = "fails" if report["uniqueness_fails"] else "holds"
    lines.append(f"  uniqueness of the maximal overgroup {verdict}")
    return "\n".join(lines)
