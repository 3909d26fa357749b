"""Independent oracles. Nothing here imports fgab.

Lattices are handled through rational linear algebra plus explicit coset
enumeration: for generators ``g_1..g_t`` pick a rational basis ``B`` among
them; ``span(g) / span(B)`` is a finite group whose elements are
enumerated by closing the generators' fractional coordinates under
addition. A vector is in the lattice iff it lies in the rational span and
its fractional coordinates are one of those cosets.
"""
import itertools
import math
from fractions import Fraction
from functools import reduce

import numpy as np


def frac_echelon(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    rows = [[Fraction(x) for x in r] for r in rows]
    out, pivots = [], []
    for r in rows:
        r = r[:]
        for e, p in zip(out, pivots):
            if r[p]:
                f = r[p]
                r = [a - f * b for a, b in zip(r, e)]
        nz = next((j for j, x in enumerate(r) if x), None)
        if nz is None:
            continue
        r = [x / r[nz] for x in r]
        for k, (e, p) in enumerate(zip(out, pivots)):
            if e[nz]:
                f = e[nz]
                out[k] = [a - f * b for a, b in zip(e, r)]
        out.append(r)
        pivots.append(nz)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [out[i] for i in order], [pivots[i] for i in order]


def frac_rank(rows):
    return len(frac_echelon(rows)[1])


def frac_det(M):
    n = len(M)
    A = [[Fraction(x) for x in r] for r in M]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    assert det.denominator == 1
    return int(det)


def frac_inverse(M):
    n = len(M)
    A = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c])
        A[c], A[p] = A[p], A[c]
        A[c] = [x / A[c][c] for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [r[n:] for r in A]


class CosetLattice:
    """Exact lattice membership and index by coset enumeration."""

    def __init__(self, gens, m):
        self.m = m
        gens = [tuple(int(x) for x in g) for g in gens]
        basis, echelon, pivots = [], [], []
        for g in gens:
            e, p = frac_echelon(echelon + [g])
            if len(p) > len(pivots):
                basis.append(g)
                echelon, pivots = e, p
        self.basis = basis
        self.s = s = len(basis)
        if s == 0:
            self.cosets = {()}
            return
        self.piv = pivots
        Minv = frac_inverse([[b[j] for j in pivots] for b in basis])
        self.D = D = reduce(math.lcm, (x.denominator for r in Minv for x in r), 1)
        self.P = np.array([[int(x * D) for x in r] for r in Minv], dtype=np.int64)
        self.B = np.array(basis, dtype=np.int64)
        residues = {self._residue(g) for g in gens}
        seen = {(0,) * s}
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for r in residues:
                    y = tuple((a + b) % D for a, b in zip(x, r))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        self.cosets = seen

    def _residue(self, v):
        w = np.array([v[j] for j in self.piv], dtype=np.int64) @ self.P
        return tuple(int(x) % self.D for x in w)

    def members(self, pts):
        """Boolean membership for an (N, m) integer array."""
        pts = np.asarray(pts, dtype=np.int64)
        if self.s == 0:
            return ~pts.any(axis=1)
        W = pts[:, self.piv] @ self.P
        in_span = ((W @ self.B) == self.D * pts).all(axis=1)
        R = W % self.D
        if self.D ** self.s < 2 ** 62:
            # mixed-radix key per residue vector
            weights = np.array([self.D ** i for i in range(self.s)], dtype=np.int64)
            if not hasattr(self, "_keys"):
                self._keys = np.array(sorted(sum(c * int(w) for c, w in zip(x, weights))
                                             for x in self.cosets), dtype=np.int64)
            return in_span & np.isin(R @ weights, self._keys)
        out = np.zeros(len(pts), dtype=bool)
        for i in np.flatnonzero(in_span):
            out[i] = tuple(int(x) for x in R[i]) in self.cosets
        return out

    def in_rational_span(self, pts):
        pts = np.asarray(pts, dtype=np.int64)
        if self.s == 0:
            return ~pts.any(axis=1)
        W = pts[:, self.piv] @ self.P
        return ((W @ self.B) == self.D * pts).all(axis=1)

    def contains(self, vectors):
        vectors = list(vectors)
        return not vectors or bool(self.members(np.array(vectors)).all())

    @property
    def rank(self):
        return self.s


def coset_index(sub_gens, super_gens, m):
    """[span(super) : span(sub)] for sub ⊆ super, math.inf if ranks differ."""
    sub = CosetLattice(sub_gens, m)
    sup = CosetLattice(list(sub_gens) + list(super_gens), m)
    if sub.rank < sup.rank:
        return math.inf
    assert sup.basis == sub.basis
    assert len(sup.cosets) % len(sub.cosets) == 0
    return len(sup.cosets) // len(sub.cosets)


def box(m, bound, torsion_bounds=None):
    ranges = [range(-bound, bound + 1)] * m
    return np.array(list(itertools.product(*ranges)), dtype=np.int64)


def determinantal_divisors(M):
    """Invariant factors from gcds of k x k minors."""
    rows, cols = len(M), len(M[0]) if M else 0
    prev, out = 1, []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, frac_det([[M[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


def is_row_hnf(H):
    last = -1
    for i, row in enumerate(H):
        p = next((j for j, x in enumerate(row) if x), None)
        if p is None or p <= last or row[p] <= 0:
            return False
        for above in H[:i]:
            if not 0 <= above[p] < row[p]:
                return False
        last = p
    return True


def brute_saturated_hnfs(n, r, h):
    """Every r x n row-HNF with entries in [-h, h] whose r x r minors are coprime."""
    found = []
    for flat in itertools.product(range(-h, h + 1), repeat=n * r):
        H = [list(flat[i * n:(i + 1) * n]) for i in range(r)]
        if not is_row_hnf(H):
            continue
        if determinantal_divisors(H) == (1,) * r:
            found.append(tuple(map(tuple, H)))
    return sorted(found)


def les_exhaustive(dims, cap):
    """All rank assignments (entries <= cap) satisfying exactness."""
    m = len(dims)
    nranks = m - 1
    sols = []

    def ok_upto(rs):
        k = len(rs)
        for i in range(m):
            a_idx, b_idx = i - 1, i
            if b_idx >= k and b_idx <= nranks - 1:
                break
            a = rs[a_idx] if a_idx >= 0 else 0
            b = rs[b_idx] if b_idx < nranks else 0
            d = 0 if i in (0, m - 1) else dims[i]
            if d is not None and a + b != d:
                return False
        return True

    def rec(rs):
        if len(rs) == nranks:
            if ok_upto(rs):
                sols.append(tuple(rs))
            return
        for v in range(cap + 1):
            rs.append(v)
            if ok_upto(rs):
                rec(rs)
            rs.pop()

    rec([])
    return sols


def klein_mul(x, y):
    return (x[0] + y[0], (-1) ** (y[0] % 2) * x[1] + y[1])


def klein_inv(x):
    return (-x[0], x[1] if x[0] % 2 else -x[1])


def klein_power_set(g, kmax):
    """{g^k : |k| <= kmax} by repeated multiplication."""
    out = {(0, 0)}
    x = (0, 0)
    for _ in range(kmax):
        x = klein_mul(x, g)
        out.add(x)
    x, gi = (0, 0), klein_inv(g)
    for _ in range(kmax):
        x = klein_mul(x, gi)
        out.add(x)
    return out
