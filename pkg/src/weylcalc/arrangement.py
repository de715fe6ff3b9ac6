"""Chambers of the reflection arrangement, separating walls, D4 tiling.

Chambers are indexed by Weyl group elements (w <-> w D0).  The wall of a
positive root r separates the chambers of u and v exactly when one of
u^{-1}(r), v^{-1}(r) is negative, so separating sets are symmetric
differences of inversion sets.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg, weyl
from .rootsys import RootSystem, Vector, root_system
from .weyl import WeylElement


@dataclass(frozen=True)
class Chamber:
    element: WeylElement


@dataclass(frozen=True)
class Cone:
    """Cone spanned by rational generators (coordinates in the varpi basis)."""

    generators: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if any(not any(g) for g in self.generators):
            raise ValueError("cone generators must be nonzero")

    def membership(self, point: Sequence) -> str:
        """'interior', 'boundary' or 'outside', decided exactly.

        Only simplicial cones (independent generators, one per coordinate)
        are supported; the coefficients of the point are then unique.
        """
        inv = _coefficient_map(self.generators)
        if len(point) != len(inv):
            raise ValueError("point dimension does not match the cone")
        coeffs = linalg.matvec(inv, point)
        if any(c < 0 for c in coeffs):
            return "outside"
        if all(c > 0 for c in coeffs):
            return "interior"
        return "boundary"


@lru_cache(maxsize=None)
def _coefficient_map(generators: tuple[tuple[Fraction, ...], ...]) -> list[list[Fraction]]:
    n = len(generators[0])
    if len(generators) != n or linalg.rational_rank(generators) != n:
        raise ValueError("membership is implemented for simplicial full-dimensional cones only")
    return linalg.rational_inverse(linalg.transpose(generators))


def separating_walls(u: WeylElement, v: WeylElement, sys: RootSystem) -> frozenset[Vector]:
    """Positive roots whose walls separate the chambers of u and v."""
    return weyl.inversion_set(u, sys) ^ weyl.inversion_set(v, sys)


@dataclass
class GlueingGraph:
    type_label: str
    vertices: list[tuple[int, ...]]
    edges: list[tuple[int, int, frozenset[Vector]]]
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def degrees(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for a, b, _ in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {k: [] for k in range(len(self.vertices))}
        for a, b, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen, todo = {0}, deque([0])
        while todo:
            for b in adj[todo.popleft()]:
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        return len(seen) == len(self.vertices)

    def as_dict(self) -> dict:
        return {
            "vertices": [weyl.word_label(w) for w in self.vertices],
            "edges": [{"u": weyl.word_label(self.vertices[a]), "v": weyl.word_label(self.vertices[b]),
                       "walls": [list(r) for r in sorted(walls)]}
                      for a, b, walls in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def to_dot(self) -> str:
        lines = [f"graph {self.type_label} {{"]
        for w in self.vertices:
            lines.append(f'  "{weyl.word_label(w)}";')
        for a, b, walls in self.edges:
            label = " ".join("(" + ",".join(map(str, r)) + ")" for r in sorted(walls))
            lines.append(f'  "{weyl.word_label(self.vertices[a])}" -- "{weyl.word_label(self.vertices[b])}"'
                         f' [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def glueing_graph(sys: RootSystem, max_len: int | None = None,
                  cap: int = 5000) -> GlueingGraph:
    """Chambers up to length max_len; edges join chambers with one separating wall."""
    elements = [w for level in weyl.enumerate_by_length(sys, max_len).values() for w in level]
    if len(elements) > cap:
        raise weyl.EnumerationCapError(f"{len(elements)} chambers exceed the cap {cap}")
    inv = [weyl.inversion_set(w, sys) for w in elements]
    edges = []
    for a in range(len(elements)):
        for b in range(a + 1, len(elements)):
            walls = inv[a] ^ inv[b]
            if len(walls) == 1:
                edges.append((a, b, walls))
    words = [weyl.canonical_reduced_word(w, sys) for w in elements]
    g = GlueingGraph(sys.type.label, words, edges)

    index = {w: k for k, w in enumerate(elements)}
    cayley = set()
    for a, w in enumerate(elements):
        for i in range(1, sys.rank + 1):
            b = index.get(weyl.right_multiply(w, i, sys))
            if b is not None:
                cayley.add((min(a, b), max(a, b)))
    adjacent = {(a, b) for a, b, _ in edges}
    full = max_len is None or max_len >= sys.num_positive_roots
    g.checks.append(("cayley_graph", adjacent == cayley, f"{len(edges)} adjacent pairs"))
    g.checks.append(("single_root_labels", all(len(w) == 1 for _, _, w in edges), "one wall per edge"))
    if full:
        g.checks.append(("connected", g.is_connected(), f"{len(words)} chambers"))
        g.checks.append(("regular", set(g.degrees()) == {sys.rank}, f"degree {sys.rank}"))
    return g


# -- D4 fundamental domain ------------------------------------------------------------


def _fundamental_domain_d4() -> Cone:
    gens = [(0, 1, 0, 0), (1, 0, 0, 0), (1, 0, 0, 1), (1, 0, 1, 1)]
    return Cone(tuple(tuple(Fraction(x) for x in g) for g in gens))


def _permute(v: Sequence, sigma: Sequence[int]) -> tuple:
    # sigma is 1-based: node i goes to sigma[i-1]; varpi_i -> varpi_sigma(i)
    out = [None] * len(v)
    for i, x in enumerate(v):
        out[sigma[i] - 1] = x
    return tuple(out)


@dataclass
class TilingReport:
    samples: int
    seed: int
    orbit_size: int
    uncovered: int
    multi_interior: int
    boundary: int
    vertex_check: str
    checks: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def random_chamber_point(rng: random.Random, rank: int, bound: int = 50) -> tuple[Fraction, ...]:
    """Positive rational combination of the fundamental weights."""
    return tuple(Fraction(rng.randint(1, bound), rng.randint(1, bound)) for _ in range(rank))


def d4_tiling_check(samples: int = 10_000, seed: int = 42) -> TilingReport:
    sys = root_system("D4")
    base = _fundamental_domain_d4()
    autos = weyl.diagram_automorphisms(sys.type)
    cones = sorted({Cone(tuple(_permute(g, s) for g in base.generators)) for s in autos},
                   key=lambda c: c.generators)
    rng = random.Random(seed)
    uncovered = multi = boundary = 0
    for _ in range(samples):
        p = random_chamber_point(rng, 4)
        states = [c.membership(p) for c in cones]
        inside = states.count("interior")
        if inside > 1:
            multi += 1
        if inside == 0:
            if "boundary" in states:
                boundary += 1
            else:
                uncovered += 1
    varpi2 = (Fraction(0), Fraction(1), Fraction(0), Fraction(0))
    vstates = [c.membership(varpi2) for c in cones]
    vertex = "boundary" if all(s == "boundary" for s in vstates) else ",".join(vstates)
    checks = [
        ("orbit_size", len(cones) == len(autos) == 6, f"{len(cones)} cones from {len(autos)} automorphisms"),
        ("covered", uncovered == 0, f"{uncovered} uncovered samples"),
        ("interior_disjoint", multi == 0, f"{multi} samples interior to two cones"),
        ("varpi2_vertex", vertex == "boundary", f"varpi_2 lies on the boundary of every cone"),
    ]
    return TilingReport(samples, seed, len(cones), uncovered, multi, boundary, vertex, checks)
