"""Simply-laced root systems, their Cartan pairing and the E10 lattice.

Simple roots are numbered 1..r following Bourbaki:

====  =====================================================
A_n   1 - 2 - ... - n
D_n   1 - 2 - ... - (n-2), with n-1 and n both joined to n-2
E_n   1 - 3 - 4 - 5 - ... - n, with 2 joined to 4
====  =====================================================

so the central node of D4 is 2, and E10 extends the E8 chain by 9 - 10.
Roots are integer vectors in the simple-root basis and the Cartan matrix is
the Gram matrix of that basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Sequence

from . import linalg

Vector = tuple[int, ...]

FAMILIES = ("A", "D", "E")


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unsupported family {self.family!r}; expected one of A, D, E")
        if self.family == "A" and self.rank < 1:
            raise ValueError("A_n needs n >= 1")
        if self.family == "D" and self.rank < 4:
            raise ValueError("D_n needs n >= 4")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise ValueError("E_n needs n in {6, 7, 8}")

    @classmethod
    def parse(cls, label: str) -> DynkinType:
        m = re.fullmatch(r"\s*([A-Za-z])_?(\d+)\s*", label)
        if not m:
            raise ValueError(f"cannot parse Dynkin type {label!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self):
        return self.label


def dynkin_edges(t: DynkinType) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram, 1-based."""
    n = t.rank
    if t.family == "A":
        return [(i, i + 1) for i in range(1, n)]
    if t.family == "D":
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    return _e_edges(n)


def _e_edges(n: int) -> list[tuple[int, int]]:
    return [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, n)]


def cartan_from_edges(rank: int, edges: Sequence[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for a, b in edges:
        c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    return tuple(tuple(row) for row in c)


def cartan_matrix(t: DynkinType) -> tuple[tuple[int, ...], ...]:
    return cartan_from_edges(t.rank, dynkin_edges(t))


def closed_form_root_count(t: DynkinType) -> int:
    n = t.rank
    if t.family == "A":
        return n * (n + 1) // 2
    if t.family == "D":
        return n * (n - 1)
    return {6: 36, 7: 63, 8: 120}[n]


@dataclass(frozen=True)
class RootSystem:
    type: DynkinType
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Vector, ...]
    fundamental_weights: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def simple_root(self, i: int) -> Vector:
        """The i-th simple root (1-based)."""
        return tuple(int(j == i - 1) for j in range(self.rank))

    def pair(self, v: Sequence, w: Sequence):
        return pairing(v, w, self)

    def neighbors(self, i: int) -> list[int]:
        """0-based indices adjacent to the 0-based node ``i``."""
        return [j for j in range(self.rank) if j != i and self.cartan[i][j]]

    def is_root(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        neg = tuple(-x for x in v)
        return v in self._root_set or neg in self._root_set

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.positive_roots)


def pairing(v: Sequence, w: Sequence, sys: RootSystem):
    """The Cartan form (v, w) for vectors in simple-root coordinates."""
    r = sys.rank
    if len(v) != r or len(w) != r:
        raise ValueError(f"vectors must have length {r}")
    c = sys.cartan
    return sum(v[i] * c[i][j] * w[j] for i in range(r) for j in range(r) if c[i][j] and v[i] and w[j])


def additive_closure(cartan: Sequence[Sequence[int]], start: Sequence[Vector] | None = None) -> list[Vector]:
    """Positive roots of a simply-laced system by closing the simple roots
    under adding a simple root beta_i whenever (alpha, beta_i) = -1."""
    r = len(cartan)
    roots = list(start) if start is not None else [tuple(int(i == j) for j in range(r)) for i in range(r)]
    seen = set(roots)
    frontier = list(roots)
    while frontier:
        nxt = []
        for a in frontier:
            for i in range(r):
                if sum(a[j] * cartan[j][i] for j in range(r)) == -1:
                    b = tuple(a[j] + (j == i) for j in range(r))
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
        roots.extend(nxt)
        frontier = nxt
    return sorted(roots, key=lambda v: (sum(v), v))


@lru_cache(maxsize=None)
def build_root_system(t: DynkinType) -> RootSystem:
    cartan = cartan_matrix(t)
    roots = additive_closure(cartan)
    expected = closed_form_root_count(t)
    if len(roots) != expected:
        raise AssertionError(f"{t}: closure gave {len(roots)} roots, expected {expected}")
    inv = linalg.rational_inverse(cartan)
    # row i of C^-1 is the fundamental weight w_i in root coordinates
    weights = tuple(tuple(row) for row in inv)
    return RootSystem(t, cartan, tuple(roots), weights)


def root_system(label: str | DynkinType) -> RootSystem:
    t = label if isinstance(label, DynkinType) else DynkinType.parse(label)
    return build_root_system(t)


def height(v: Sequence[int]) -> int:
    return sum(v)


def exponents(sys: RootSystem) -> list[int]:
    """Exponents read off from the number of positive roots of each height.

    The multiplicity of exponent k is (#roots of height k) - (#roots of
    height k+1).
    """
    counts: dict[int, int] = {}
    for v in sys.positive_roots:
        counts[height(v)] = counts.get(height(v), 0) + 1
    exps = []
    for k in sorted(counts):
        exps.extend([k] * (counts[k] - counts.get(k + 1, 0)))
    return exps


def fundamental_degrees(sys: RootSystem) -> list[int]:
    return [e + 1 for e in exponents(sys)]


def highest_root(sys: RootSystem) -> Vector:
    return sys.positive_roots[-1]


# ---------------------------------------------------------------------------
# Graph helpers shared with diagram automorphisms and the E10 check


def gram_isomorphisms(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], first_only: bool = False):
    """All permutations p with b[p[i]][p[j]] == a[i][j], by backtracking.

    Nodes are assigned in order; a partial assignment is pruned as soon as it
    disagrees with ``b`` on an already-placed pair.
    """
    n = len(a)
    if len(b) != n:
        return []
    found = []
    assign: list[int] = []
    used = [False] * n

    def extend(i):
        if i == n:
            found.append(tuple(assign))
            return first_only
        for cand in range(n):
            if used[cand] or b[cand][cand] != a[i][i]:
                continue
            if all(b[assign[k]][cand] == a[k][i] for k in range(i)):
                used[cand] = True
                assign.append(cand)
                if extend(i + 1):
                    return True
                assign.pop()
                used[cand] = False
        return False

    extend(0)
    return found


def brute_force_gram_isomorphisms(a, b):
    """Reference enumeration over all n! permutations (small n only)."""
    n = len(a)
    return [
        p for p in permutations(range(n))
        if all(b[p[i]][p[j]] == a[i][j] for i in range(n) for j in range(n))
    ]


# ---------------------------------------------------------------------------
# E10


E10_EDGES = [(1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10)]


@dataclass(frozen=True)
class GramLattice:
    gram: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.gram)


def e10_lattice() -> GramLattice:
    """E10 = T(2,3,7) with the (+2)-normalised form on the root basis."""
    gram = cartan_from_edges(10, E10_EDGES)
    return GramLattice(gram, tuple(f"beta{i}" for i in range(1, 11)))


def e10_complement_check() -> dict:
    """Verify that the orthogonal complement of w_1 in E10 is D9.

    Returns a report dict with a ``checks`` list of (name, passed, detail).
    """
    lat = e10_lattice()
    g = [list(row) for row in lat.gram]
    det = linalg.determinant(g)
    inv = linalg.rational_inverse(g)
    w1 = [inv[i][0] for i in range(10)]  # G^-1 e_1, (w1, beta_j) = delta_1j
    w1_integral = all(x.denominator == 1 for x in w1)
    w1_int = [int(x) for x in w1]
    functional = [linalg.matvec(g, w1_int)]  # v -> (v, w1)
    kernel = linalg.integer_kernel(functional)
    expected = linalg.hermite_normal_form([[int(i == j) for i in range(10)] for j in range(1, 10)])
    basis_ok = kernel == expected
    sub = [[g[i][j] for j in range(1, 10)] for i in range(1, 10)]
    d9 = [list(row) for row in cartan_matrix(DynkinType("D", 9))]
    iso = gram_isomorphisms(sub, d9, first_only=True)
    # signature via inertia of the rational LDL^T pivots
    pos, neg = _inertia(g)
    checks = [
        ("determinant", det == -1, f"det = {det}"),
        # the (+2) form is positive on E8 and has one negative direction;
        # E10(-1), with (-2)-roots, has the opposite signature (1, 9)
        ("signature", (pos, neg) == (9, 1), f"signature = ({pos}, {neg}); E10(-1) has ({neg}, {pos})"),
        ("w1_integral", w1_integral, "w1 = " + ",".join(str(x) for x in w1)),
        ("complement_rank", len(kernel) == 9, f"rank = {len(kernel)}"),
        ("complement_basis", basis_ok, "beta2..beta10 span the complement"),
        ("gram_is_D9", bool(iso), f"node map (beta_k -> D9 node) = {_describe_iso(iso)}"),
    ]
    return {
        "determinant": det,
        "signature": [pos, neg],
        "w1": [int(x) if x.denominator == 1 else str(x) for x in w1],
        "complement_basis": [_basis_label(v, lat.labels) for v in kernel],
        "d9_isomorphism": _describe_iso(iso),
        "checks": checks,
    }


def _basis_label(v: Sequence[int], labels: Sequence[str]) -> str | list[int]:
    """A root label when v is a unit vector, else the coordinates."""
    if sorted(v) == [0] * (len(v) - 1) + [1]:
        return labels[list(v).index(1)]
    return list(v)


def _describe_iso(iso) -> dict[str, int] | None:
    if not iso:
        return None
    return {f"beta{k + 2}": iso[0][k] + 1 for k in range(9)}


def _inertia(g: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(#positive, #negative) diagonal entries after exact congruence
    diagonalisation over Q (Sylvester's law of inertia)."""
    m = [[Fraction(x) for x in row] for row in g]
    n = len(m)
    pos = neg = 0
    for k in range(n):
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                m[k], m[j] = m[j], m[k]
                for row in m:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is None:
                    continue
                # replace e_k by e_k + e_j; diagonal becomes 2 m[k][j] + m[j][j]
                for c in range(n):
                    m[k][c] += m[j][c]
                for row in m:
                    row[k] += row[j]
        p = m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / p
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
                for row in m:
                    row[i] -= f * row[k]
        if p > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg
