"""Rational double points: equations, weight data, Tjurina algebras.

Each ADE type has a normal form f(x, y, z) over Z.  Over Q the Tjurina
algebra Q[x,y,z]/(f, df) has a monomial basis whose quasi-homogeneous
weights, subtracted from the weight of f, give the fundamental degrees.
The extra weights (from deformations over Z) are stored, not recomputed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import linalg
from .polyring import Exps, Poly
from .rootsys import DynkinType

NAMES = ("x", "y", "z")


class NonIsolatedSingularityError(ValueError):
    """The Jacobian ideal has infinite colength."""


@dataclass(frozen=True)
class RdpRecord:
    type: DynkinType
    f: Poly
    pi_fund: tuple[int, ...]
    pi_extra: tuple[int, ...]

    def __post_init__(self):
        if len(self.pi_fund) != self.type.rank:
            raise ValueError(f"{self.type}: |pi_fund| = {len(self.pi_fund)} != rank")

    @property
    def n_plus(self) -> int:
        return len(self.pi_fund) + len(self.pi_extra)

    def equation(self) -> str:
        return self.f.to_string(NAMES)


@dataclass
class TjurinaBasis:
    monomials: list[Exps]
    weights: list[int] = field(default_factory=list)


@dataclass
class WeightReport:
    record: RdpRecord
    weights: tuple[int, int, int]
    weight_f: int
    weight_space_dim: int
    basis: TjurinaBasis
    deformation_weights: tuple[int, ...]
    checks: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def _f(text: str) -> Poly:
    return Poly.parse(text, 3, NAMES)


def record(t: DynkinType | str) -> RdpRecord:
    """The table row for one type (parametric families materialized)."""
    if isinstance(t, str):
        t = DynkinType.parse(t)
    n = t.rank
    if t.family == "A":
        return RdpRecord(t, _f(f"x*y + z^{n + 1}"), tuple(range(2, n + 2)), (1,))
    if t.family == "D":
        if n % 2 == 0:
            m = n // 2
            return RdpRecord(t, _f(f"x^2 + z^2*y + z*y^{m}"),
                             tuple(range(2, 4 * m - 1, 2)) + (2 * m,),
                             (1, 1) + tuple(range(3, 2 * m, 2)))
        m = (n - 1) // 2
        return RdpRecord(t, _f(f"x^2 + z^2*y + y^{m}*x"),
                         tuple(range(2, 4 * m - 1, 2)) + (4 * m, 2 * m + 1),
                         tuple(range(1, 2 * m, 2)))
    rows = {
        6: ("x^2 + x*z^2 + y^3", (2, 5, 6, 8, 9, 12), (1, 2, 3, 4, 6)),
        7: ("x^2 + z^3*y + y^3", (2, 6, 8, 10, 12, 14, 18), (1, 3, 4, 5, 9)),
        8: ("x^2 + y^3 + z^5", (2, 8, 12, 14, 18, 20, 24, 30), (3, 4, 5, 6, 9, 10, 15)),
    }
    if t.family == "E" and n in rows:
        text, fund, extra = rows[n]
        return RdpRecord(t, _f(text), fund, extra)
    raise ValueError(f"no rational double point of type {t}")


def table(max_rank: int = 10) -> list[RdpRecord]:
    types = [DynkinType("A", n) for n in range(1, max_rank + 1)]
    types += [DynkinType("D", n) for n in range(4, max_rank + 1)]
    types += [DynkinType("E", n) for n in (6, 7, 8) if n <= max_rank]
    return [record(t) for t in types]


# -- Groebner bases (grlex, x > y > z) -------------------------------------------


def _key(e: Exps):
    return (sum(e), e)


def _lead(p: Poly) -> tuple[Exps, Fraction]:
    e = max(p.terms, key=_key)
    return e, Fraction(p.terms[e])


def _monic(p: Poly) -> Poly:
    _, c = _lead(p)
    return p / c


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce(p: Poly, basis: list[Poly]) -> Poly:
    """Full normal form of p modulo a list of monic polynomials."""
    leads = [(_lead(g)[0], g) for g in basis]
    rem: dict[Exps, Fraction] = {}
    p = Poly(p.nvars, dict(p.terms))
    while not p.is_zero():
        e, c = _lead(p)
        for le, g in leads:
            if _divides(le, e):
                shift = tuple(a - b for a, b in zip(e, le))
                p = p - Poly.monomial(shift, c) * g
                break
        else:
            rem[e] = c
            p = p - Poly.monomial(e, c)
    return Poly(3, rem)


def _s_poly(f: Poly, g: Poly) -> Poly:
    ef, eg = _lead(f)[0], _lead(g)[0]
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = tuple(a - b for a, b in zip(lcm, ef))
    mg = tuple(a - b for a, b in zip(lcm, eg))
    return Poly.monomial(mf) * f - Poly.monomial(mg) * g


def groebner_basis(gens: list[Poly]) -> list[Poly]:
    """Reduced grlex Groebner basis over Q by Buchberger with sugar selection."""
    basis: list[Poly] = []
    sugar: list[int] = []
    for g in gens:
        if not g.is_zero():
            basis.append(_monic(g))
            sugar.append(g.degree)
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}

    def pair_sugar(ij):
        i, j = ij
        ei, ej = _lead(basis[i])[0], _lead(basis[j])[0]
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        return (max(sugar[i] + sum(lcm) - sum(ei), sugar[j] + sum(lcm) - sum(ej)), j, i)

    while pairs:
        ij = min(pairs, key=pair_sugar)
        pairs.discard(ij)
        i, j = ij
        ei, ej = _lead(basis[i])[0], _lead(basis[j])[0]
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue  # coprime leading monomials
        r = _reduce(_s_poly(basis[i], basis[j]), basis)
        if r.is_zero():
            continue
        basis.append(_monic(r))
        sugar.append(pair_sugar(ij)[0])
        k = len(basis) - 1
        pairs |= {(m, k) for m in range(k)}
    # minimalize and interreduce
    minimal = []
    for k, g in enumerate(basis):
        e = _lead(g)[0]
        if any(_divides(_lead(h)[0], e) and (_lead(h)[0] != e or m < k)
               for m, h in enumerate(basis) if m != k):
            continue
        minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        e, c = _lead(g)
        tail = _reduce(g - Poly.monomial(e, c), others)
        reduced.append(_monic(Poly.monomial(e, c) + tail))
    return sorted(reduced, key=lambda g: _key(_lead(g)[0]))


def partial(p: Poly, i: int) -> Poly:
    """Derivative with respect to the i-th variable (0-based)."""
    out = {}
    for e, c in p.terms.items():
        if e[i]:
            f = list(e)
            f[i] -= 1
            out[tuple(f)] = c * e[i]
    return Poly(p.nvars, out)


def tjurina_basis(f: Poly) -> TjurinaBasis:
    """Standard monomials of Q[x,y,z]/(f, f_x, f_y, f_z) in grlex order."""
    gb = groebner_basis([f] + [partial(f, i) for i in range(3)])
    leads = [_lead(g)[0] for g in gb]
    if not leads or any(l == (0, 0, 0) for l in leads):
        return TjurinaBasis([])
    bounds = []
    for i in range(3):
        pure = [l[i] for l in leads if sum(l) == l[i]]
        if not pure:
            raise NonIsolatedSingularityError(f"no pure power of {NAMES[i]} among leading terms")
        bounds.append(min(pure))
    mons = [e for e in product(*(range(b) for b in bounds))
            if not any(_divides(l, e) for l in leads)]
    return TjurinaBasis(sorted(mons, key=_key))


# -- weights ------------------------------------------------------------------------


def quasi_homogeneous_weights(f: Poly) -> tuple[tuple[int, int, int], int, int]:
    """((w_x, w_y, w_z), w_f, dim) with the smallest positive integral solution.

    ``dim`` is the dimension of the rational solution space.  When it exceeds
    one, w_f is minimized first and then (w_x, w_y, w_z) lexicographically.
    """
    rows = [list(e) + [-1] for e in f.terms]
    null = linalg.rational_nullspace(rows)
    if len(null) == 1:
        v = linalg.primitive(null[0])
        if v[3] < 0:
            v = [-x for x in v]
        if any(x <= 0 for x in v):
            raise ValueError("no positive quasi-homogeneous weights")
        return (v[0], v[1], v[2]), v[3], 1
    for wf in range(1, 10_000):
        for w in product(range(1, wf + 1), repeat=3):
            if all(sum(a * b for a, b in zip(e, w)) == wf for e in f.terms):
                return w, wf, len(null)
    raise ValueError("no positive quasi-homogeneous weights")


def verify_weights(rec: RdpRecord) -> WeightReport:
    (wx, wy, wz), wf, dim = quasi_homogeneous_weights(rec.f)
    basis = tjurina_basis(rec.f)
    basis.weights = [wx * e[0] + wy * e[1] + wz * e[2] for e in basis.monomials]
    deform = tuple(sorted(wf - w for w in basis.weights))
    checks = [
        ("quasi_homogeneous", all(wx * e[0] + wy * e[1] + wz * e[2] == wf for e in rec.f.terms),
         f"weights ({wx},{wy},{wz};{wf})"),
        ("tjurina_size", len(basis.monomials) == rec.type.rank,
         f"{len(basis.monomials)} basis monomials, rank {rec.type.rank}"),
        ("pi_fund", deform == tuple(sorted(rec.pi_fund)),
         f"deformation weights {list(deform)} vs {sorted(rec.pi_fund)}"),
        ("positive", all(w > 0 for w in deform + (wx, wy, wz, wf)), "all weights positive"),
        ("n_plus", rec.n_plus == rec.type.rank + len(rec.pi_extra), f"N+ = {rec.n_plus}"),
    ]
    return WeightReport(rec, (wx, wy, wz), wf, dim, basis, deform, checks)


def monomial_name(e: Exps) -> str:
    return Poly.monomial(e).to_string(NAMES)
