"""Integral invariant theory of W acting on Z[M].

Invariants and coinvariants are computed degree by degree in monomial
coordinates.  The characteristic map c is read off the Schubert functionals;
its cokernel (equivalently that of c-bar on coinvariants, since c kills the
ideal of positive-degree invariants) is described by elementary divisors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import linalg, rdp, weyl
from .linalg import SNFResult
from .polyring import Poly, monomials_of_degree, ring
from .rootsys import RootSystem
from .schubert import calculus

ANTIINVARIANT_MAX_COLUMNS = 10_000


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisor chain")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion orders must be at least 2")


@dataclass
class GradedAbelianGroup:
    pieces: dict[int, GradedPiece] = field(default_factory=dict)

    def add(self, piece: GradedPiece) -> None:
        self.pieces[piece.degree] = piece

    @property
    def total_free_rank(self) -> int:
        return sum(p.free_rank for p in self.pieces.values())

    def torsion_degrees(self) -> list[int]:
        return sorted(n for n, p in self.pieces.items() if p.torsion)


# -- invariants -------------------------------------------------------------------


def _reflection_rows(sys: RootSystem, n: int) -> tuple[list[dict[int, int]], list]:
    """Sparse rows of the stacked maps (s_i - 1) on degree-n monomials."""
    monos = monomials_of_degree(sys.rank, n)
    index = {m: k for k, m in enumerate(monos)}
    rg = ring(sys)
    rows: list[dict[int, int]] = []
    for i in range(1, sys.rank + 1):
        block: dict[int, dict[int, int]] = {}
        for k, m in enumerate(monos):
            image = dict(rg.reflect_monomial(i, m))
            image[m] = image.get(m, 0) - 1
            for e, c in image.items():
                if c:
                    block.setdefault(index[e], {})[k] = c
        rows.extend(block[t] for t in sorted(block))
    return rows, monos


@lru_cache(maxsize=None)
def _invariant_vectors(sys: RootSystem, n: int) -> tuple[tuple[int, ...], ...]:
    rows, monos = _reflection_rows(sys, n)
    return tuple(tuple(v) for v in linalg.sparse_integer_kernel(rows, len(monos)))


def invariant_basis(sys: RootSystem, n: int) -> list[Poly]:
    """Z-basis of Z[M]^W in degree n, in Hermite normal form on monomials."""
    monos = monomials_of_degree(sys.rank, n)
    return [Poly(sys.rank, {m: c for m, c in zip(monos, v) if c})
            for v in _invariant_vectors(sys, n)]


def invariant_dimension(sys: RootSystem, n: int) -> int:
    """dim over Q of the degree-n invariants (rank of the kernel)."""
    rows, monos = _reflection_rows(sys, n)
    return len(monos) - len(linalg.sparse_reduced_echelon(rows))


def degree_series(degrees, max_n: int) -> list[int]:
    """Coefficients of prod 1/(1 - t^d) up to t^max_n."""
    coeffs = [1] + [0] * max_n
    for d in degrees:
        for k in range(d, max_n + 1):
            coeffs[k] += coeffs[k - d]
    return coeffs


@dataclass
class DimensionReport:
    type_label: str
    degrees: tuple[int, ...]
    computed: list[int]
    expected: list[int]

    @property
    def ok(self) -> bool:
        return self.computed == self.expected


def rational_dimension_check(sys: RootSystem, max_n: int) -> DimensionReport:
    degrees = rdp.record(sys.type).pi_fund
    return DimensionReport(
        sys.type.label, degrees,
        [invariant_dimension(sys, n) for n in range(max_n + 1)],
        degree_series(degrees, max_n))


# -- characteristic map --------------------------------------------------------------


@lru_cache(maxsize=None)
def _scaled_weight_monomial(sys: RootSystem, e: tuple[int, ...]) -> Poly:
    """prod (det * varpi_i)^{e_i} in the simple-root variables (integral)."""
    r = sys.rank
    if not any(e):
        return Poly.constant(r, 1)
    i = next(k for k, x in enumerate(e) if x)
    prev = list(e)
    prev[i] -= 1
    det = linalg.determinant(sys.cartan)
    form = Poly.linear([int(det * x) for x in sys.fundamental_weights[i]])
    return _scaled_weight_monomial(sys, tuple(prev)) * form


def c_matrix(sys: RootSystem, n: int, lattice: str = "root") -> list[list[int]]:
    """Matrix of c in degree n: rows z_w (canonical order), columns monomials.

    With ``lattice="weight"`` the columns are monomials in the fundamental
    weights, i.e. c on Z[P] instead of Z[M].
    """
    if lattice not in ("root", "weight"):
        raise ValueError(f"unknown lattice {lattice!r}")
    calc = calculus(sys)
    size = len(calc.basis(n))
    cols = []
    for m in monomials_of_degree(sys.rank, n):
        if lattice == "root":
            cols.append(list(calc.functional(m)))
        else:
            scale = linalg.determinant(sys.cartan) ** n
            vec = calc.c_vector(_scaled_weight_monomial(sys, m), n)
            if any(x % scale for x in vec):
                raise ArithmeticError("c is not integral on the weight lattice")
            cols.append([x // scale for x in vec])
    return [[col[k] for col in cols] for k in range(size)]


@dataclass
class CokernelReport:
    type_label: str
    degree: int
    lattice: str
    snf: SNFResult
    free_rank: int
    torsion: tuple[int, ...]

    @property
    def trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def cbar_elementary_divisors(sys: RootSystem, n: int, lattice: str = "root") -> CokernelReport:
    """Elementary divisors of c in degree n and the cokernel they describe."""
    matrix = c_matrix(sys, n, lattice)
    rows = len(matrix)
    cols = len(matrix[0]) if matrix else 0
    generators = [{k: matrix[k][j] for k in range(rows) if matrix[k][j]} for j in range(cols)]
    free, torsion = linalg.lattice_cokernel(generators, rows)
    rank = rows - free
    diagonal = [1] * (rank - len(torsion)) + list(torsion)
    snf = SNFResult(diagonal, (rows, cols))
    return CokernelReport(sys.type.label, n, lattice, snf, free, tuple(torsion))


def oracle_elementary_divisors(matrix: list[list[int]]) -> list[int]:
    """Nonzero invariant factors by an independent dense implementation (sympy)."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    if not matrix or not matrix[0]:
        return []
    factors = invariant_factors(Matrix(matrix), domain=ZZ)
    return [abs(int(x)) for x in factors if x != 0]


# -- coinvariants ----------------------------------------------------------------------


def coinvariant_structure(sys: RootSystem, n: int) -> GradedPiece:
    """(Z[M] / Z[M] Z[M]^W_+) in degree n as free rank plus torsion."""
    monos = monomials_of_degree(sys.rank, n)
    index = {m: k for k, m in enumerate(monos)}
    generators = []
    for k in range(1, n + 1):
        invs = invariant_basis(sys, k)
        if not invs:
            continue
        for m in monomials_of_degree(sys.rank, n - k):
            shift = Poly.monomial(m)
            for g in invs:
                prod = shift * g
                generators.append({index[e]: c for e, c in prod.terms.items()})
    free, torsion = linalg.lattice_cokernel(generators, len(monos))
    return GradedPiece(n, free, tuple(torsion))


def coinvariant_groups(sys: RootSystem, max_n: int) -> GradedAbelianGroup:
    group = GradedAbelianGroup()
    for n in range(max_n + 1):
        group.add(coinvariant_structure(sys, n))
    return group


# -- J(a) = d ---------------------------------------------------------------------------


@dataclass
class AntiinvariantReport:
    type_label: str
    degree: int
    content: int
    solvable_z: bool
    witness_z: Poly | None
    solvable_q: bool
    witness_q: Poly | None
    checks: list[tuple[str, bool, str]]


def antiinvariant_solve(sys: RootSystem, max_columns: int = ANTIINVARIANT_MAX_COLUMNS,
                        verify: bool = True) -> AntiinvariantReport:
    """Decide whether J(a) = d has a solution a in Z[M]_N.

    For deg a = N, D_{w0}(a) is the constant eps D_{w0}(a) and J = d D_{w0},
    so J(a) = d is the single integer equation sum_m a_m eps D_{w0}(m) = 1.
    It is solvable iff the values eps D_{w0}(m) have gcd 1.
    """
    N = sys.num_positive_roots
    monos = monomials_of_degree(sys.rank, N)
    if len(monos) > max_columns:
        raise ValueError(f"{sys.type}: {len(monos)} degree-{N} monomials exceed the cap {max_columns}")
    calc = calculus(sys)
    values = [calc.functional(m)[0] for m in monos]
    g = 0
    for v in values:
        g = gcd(g, v)
    witness_q = None
    for m, v in zip(monos, values):
        if v:
            witness_q = Poly(sys.rank, {m: Fraction(1, v)})
            break
    witness_z = None
    if g == 1:
        coeffs, acc = {}, 0
        for m, v in zip(monos, values):
            if not v:
                continue
            h, s, t = linalg._xgcd(acc, v)
            coeffs = {k: s * c for k, c in coeffs.items()}
            coeffs[m] = t
            acc = h
            if acc == 1:
                break
        witness_z = Poly(sys.rank, coeffs)
    checks = [("rational_solvable", witness_q is not None, "some eps D_w0(m) is nonzero")]
    if verify and weyl.group_order(sys) <= 10**5:
        d = ring(sys).d()
        for name, w in (("witness_q", witness_q), ("witness_z", witness_z)):
            if w is not None:
                checks.append((f"{name}_J_equals_d", ring(sys).j_apply(w) == d, "J(a) computed directly"))
    return AntiinvariantReport(sys.type.label, N, g, g == 1, witness_z,
                               witness_q is not None, witness_q, checks)
