"""H*(G/P, Z) as the W_theta-fixed part of H.

The fixed module is computed independently of the minimal coset
representatives; whether it is spanned by {z_w : w in W^theta} is reported,
not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import linalg, weyl
from .rootsys import RootSystem, root_system
from .schubert import HClass, calculus


def parse_theta(spec: str | Iterable[int], sys: RootSystem) -> tuple[int, ...]:
    """Validated, sorted parabolic set from "1,3" or an iterable of indices."""
    if isinstance(spec, str):
        text = spec.strip()
        items = [] if not text else [int(x) for x in text.split(",")]
    else:
        items = [int(x) for x in spec]
    for i in items:
        if not 1 <= i <= sys.rank:
            raise ValueError(f"theta index {i} out of range 1..{sys.rank}")
    return tuple(sorted(set(items)))


def _poly_divide(num: list[int], den: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (coefficient lists, low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        q, r = divmod(num[k + len(den) - 1], den[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k] = q
        for j, c in enumerate(den):
            num[k + j] -= q * c
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


def quotient_poincare(sys: RootSystem, theta: Iterable[int]) -> list[int]:
    """Coefficients of W(t) / W_theta(t) from the two length censuses."""
    full = weyl.length_census(sys)
    sub = [0] * (sys.num_positive_roots + 1)
    for w in weyl.parabolic_subgroup(sys, theta):
        sub[w.length] += 1
    while len(sub) > 1 and sub[-1] == 0:
        sub.pop()
    return _poly_divide(full, sub)


@dataclass
class GPReport:
    type_label: str
    theta: tuple[int, ...]
    ranks: list[int]
    poincare: list[int]
    bases: dict[int, list[HClass]]
    coset_classes: dict[int, list[HClass]]
    products: dict[tuple[int, int], list[list[list[int]]]] = field(default_factory=dict)
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def schubert_basis_agreement(self) -> dict[int, bool]:
        """Per degree: does the fixed basis coincide with {z_w : w in W^theta}?"""
        return {n: set(b) == set(self.coset_classes[n])
                for n, b in self.bases.items()}


def coordinates(h: HClass, basis: list[HClass], sys: RootSystem) -> list[int] | None:
    calc = calculus(sys)
    vecs = [calc.coordinates(b) for b in basis]
    return linalg.solve_in_lattice(vecs, calc.coordinates(h))


def gp_report(sys: RootSystem, theta: Iterable[int], products: bool = True) -> GPReport:
    theta = parse_theta(theta, sys)
    calc = calculus(sys)
    reps = weyl.coset_min_reps(sys, theta)
    top = max(w.length for w in reps)
    census = [0] * (top + 1)
    for w in reps:
        census[w.length] += 1
    poincare = quotient_poincare(sys, theta)
    bases, coset_classes = {}, {}
    for n in range(top + 1):
        bases[n] = calc.theta_invariants(theta, n)
        coset_classes[n] = [HClass.basis_element(w) for w in reps if w.length == n]
    ranks = [len(bases[n]) for n in range(top + 1)]
    order = weyl.group_order(sys)
    sub_order = len(weyl.parabolic_subgroup(sys, theta))
    report = GPReport(sys.type.label, theta, ranks, poincare, bases, coset_classes)
    report.checks += [
        ("ranks_match_poincare", ranks == poincare, f"ranks {ranks}, W(t)/W_theta(t) {poincare}"),
        ("ranks_match_cosets", ranks == census, f"coset census {census}"),
        ("total_rank", sum(ranks) == order // sub_order, f"{sum(ranks)} = {order}/{sub_order}"),
        ("palindromic", ranks == ranks[::-1], "rank(n) = rank(top - n)"),
    ]
    if products:
        closed = True
        for i in range(top + 1):
            for j in range(i, top + 1 - i):
                slab = []
                for a in bases[i]:
                    row = []
                    for b in bases[j]:
                        coords = coordinates(calc.multiply(a, b), bases[i + j], sys)
                        if coords is None:
                            closed = False
                        row.append(coords)
                    slab.append(row)
                report.products[(i, j)] = slab
        report.checks.append(("closed_under_products", closed, "integer coordinates in the fixed basis"))
    return report


@dataclass
class GrassmannianCheck:
    square: list[int]
    square_names: list[str]
    rank2: int
    pairing_dets: list[int]
    checks: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def grassmannian_crosscheck() -> GrassmannianCheck:
    """G(2,4) = A3 / P_{1,3}: sigma_1^2 = sigma_2 + sigma_11 and duality."""
    sys = root_system("A3")
    rep = gp_report(sys, (1, 3))
    sigma1 = rep.bases[1][0]
    square = coordinates(calculus(sys).multiply(sigma1, sigma1), rep.bases[2], sys)
    calc = calculus(sys)
    top = rep.top_degree
    dets = []
    for i in range(top + 1):
        m = [[coordinates(calc.multiply(a, b), rep.bases[top], sys)[0] for b in rep.bases[top - i]]
             for a in rep.bases[i]]
        dets.append(linalg.determinant(m))
    names = [h.to_string(sys) for h in rep.bases[2]]
    checks = [
        ("square_coefficients", square == [1, 1], f"sigma_1^2 coordinates {square} on {names}"),
        ("rank_degree_2", rep.ranks[2] == 2, f"rank {rep.ranks[2]}"),
        ("top_pairing_unimodular", all(abs(d) == 1 for d in dets), f"determinants {dets}"),
    ]
    return GrassmannianCheck(square, names, rep.ranks[2], dets, checks)
