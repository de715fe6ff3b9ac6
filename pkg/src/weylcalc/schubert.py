"""Demazure's ring H with Schubert basis z_w.

The functionals eps.D_w (constant term of D_w(u)) on degree-n polynomials
are computed by dynamic programming over degrees:

    eps D_w(x^e) = sum_f Delta_j(x^e)[f] * eps D_{w s_j}(x^f),

where j is the last letter of the canonical reduced word of w.  Products in
H are computed through rational dual polynomials e_w with
eps D_u(e_w) = delta_uw, and every structure constant is checked to be an
integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import linalg, weyl
from .polyring import Exps, Poly, monomials_of_degree, ring
from .rootsys import RootSystem
from .weyl import WeylElement


class IntegralityError(ArithmeticError):
    """A structure constant or action coefficient came out non-integral."""


class SingularSystemError(ArithmeticError):
    """The functionals eps.D_w failed to be independent (an internal bug)."""


def word_name(word: Sequence[int]) -> str:
    return "".join(f"s{i}" for i in word) if word else "e"


@dataclass(frozen=True)
class HClass:
    """Homogeneous element of H: integer coefficients on z_w with l(w) = degree."""

    coeffs: Mapping[WeylElement, int]
    degree: int

    def __post_init__(self):
        clean = {}
        for w, c in self.coeffs.items():
            if not isinstance(c, int):
                q = Fraction(c)
                if q.denominator != 1:
                    raise IntegralityError(f"non-integral coefficient {c}")
                c = int(q)
            if w.length != self.degree:
                raise ValueError(f"element of length {w.length} in a degree-{self.degree} class")
            if c:
                clean[w] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis_element(cls, w: WeylElement) -> HClass:
        return cls({w: 1}, w.length)

    @classmethod
    def zero(cls, degree: int) -> HClass:
        return cls({}, degree)

    def coefficient(self, w: WeylElement) -> int:
        return self.coeffs.get(w, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: HClass) -> HClass:
        if other.degree != self.degree:
            raise ValueError("adding classes of different degrees")
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return HClass(out, self.degree)

    def __neg__(self) -> HClass:
        return HClass({w: -c for w, c in self.coeffs.items()}, self.degree)

    def __sub__(self, other: HClass) -> HClass:
        return self + (-other)

    def __rmul__(self, k: int) -> HClass:
        return HClass({w: k * c for w, c in self.coeffs.items()}, self.degree)

    def __eq__(self, other):
        if not isinstance(other, HClass):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def to_string(self, sys: RootSystem) -> str:
        """Stable rendering ``2*z[s1] - z[s2]``, basis order by canonical word."""
        if not self.coeffs:
            return "0"
        items = sorted(
            ((weyl.canonical_reduced_word(w, sys), c) for w, c in self.coeffs.items()))
        out = ""
        for k, (word, c) in enumerate(items):
            body = f"z[{word_name(word)}]" if abs(c) == 1 else f"{abs(c)}*z[{word_name(word)}]"
            if k == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def as_dict(self, sys: RootSystem) -> dict[str, int]:
        return {weyl.word_label(weyl.canonical_reduced_word(w, sys)): c
                for w, c in sorted(self.coeffs.items(),
                                   key=lambda t: weyl.canonical_reduced_word(t[0], sys))}


@dataclass
class DualBasis:
    """Rational polynomials e_w, l(w) = degree, with eps D_u(e_w) = delta_uw."""

    degree: int
    polys: dict[WeylElement, Poly]
    pivots: list[Exps] = field(default_factory=list)


class SchubertCalculus:
    """All H-level computations for one root system, with shared caches."""

    def __init__(self, sys: RootSystem):
        self.sys = sys
        self.ring = ring(sys)
        self.N = sys.num_positive_roots
        self._basis: dict[int, list[WeylElement]] = {}
        self._index: dict[int, dict[WeylElement, int]] = {}
        self._words: dict[WeylElement, tuple[int, ...]] = {}
        self._parent: dict[int, dict[int, list[tuple[int, int]]]] = {}
        self._functionals: dict[Exps, tuple[int, ...]] = {}
        self._duals: dict[int, DualBasis] = {}
        self._actions: dict[tuple[WeylElement, int], list[list[int]]] = {}
        self._reflections = None

    # -- bases ----------------------------------------------------------------

    def basis(self, n: int) -> list[WeylElement]:
        """Elements of length n ordered by canonical reduced word."""
        if n not in self._basis:
            if n < 0 or n > self.N:
                self._basis[n] = []
            else:
                level = weyl.elements_of_length(self.sys, n)
                for w in level:
                    self._words[w] = weyl.canonical_reduced_word(w, self.sys)
                level = sorted(level, key=lambda w: self._words[w])
                self._basis[n] = level
            self._index[n] = {w: k for k, w in enumerate(self._basis[n])}
        return self._basis[n]

    def word(self, w: WeylElement) -> tuple[int, ...]:
        if w not in self._words:
            self._words[w] = weyl.canonical_reduced_word(w, self.sys)
        return self._words[w]

    def index(self, w: WeylElement) -> int:
        self.basis(w.length)
        return self._index[w.length][w]

    def _parents(self, n: int) -> dict[int, list[tuple[int, int]]]:
        """For degree n: descent letter j -> [(index of w, index of w s_j)]."""
        if n not in self._parent:
            groups: dict[int, list[tuple[int, int]]] = {}
            self.basis(n - 1)
            for k, w in enumerate(self.basis(n)):
                j = self.word(w)[-1]
                parent = weyl.right_multiply(w, j, self.sys)
                groups.setdefault(j, []).append((k, self._index[n - 1][parent]))
            self._parent[n] = groups
        return self._parent[n]

    # -- functionals ------------------------------------------------------------

    def functional(self, e: Exps) -> tuple[int, ...]:
        """(eps D_w(x^e)) for w in basis(deg e)."""
        hit = self._functionals.get(e)
        if hit is not None:
            return hit
        n = sum(e)
        if n == 0:
            out = (1,)
        else:
            size = len(self.basis(n))
            vec = [0] * size
            if size:
                for j, pairs in self._parents(n).items():
                    image = self.ring.delta_monomial(j, e)
                    subs = [(c, self.functional(f)) for f, c in image.items()]
                    for k, parent in pairs:
                        vec[k] = sum(c * f[parent] for c, f in subs)
            out = tuple(vec)
        self._functionals[e] = out
        return out

    def functional_matrix(self, n: int) -> tuple[list[list[int]], list[Exps]]:
        """Rows basis(n), columns degree-n monomials in decreasing grlex order."""
        monos = monomials_of_degree(self.sys.rank, n)
        cols = [self.functional(m) for m in monos]
        rows = [[col[k] for col in cols] for k in range(len(self.basis(n)))]
        return rows, monos

    def c_vector(self, p: Poly, n: int) -> list:
        size = len(self.basis(n))
        vec = [0] * size
        for e, c in p.terms.items():
            f = self.functional(e)
            for k in range(size):
                if f[k]:
                    vec[k] += c * f[k]
        return vec

    def c_map(self, p: Poly) -> HClass:
        """c(p) = sum_w eps D_w(p) z_w for homogeneous p."""
        if p.nvars != self.sys.rank:
            raise ValueError("polynomial has the wrong number of variables")
        if not p.is_homogeneous():
            raise ValueError("c_map needs a homogeneous polynomial")
        n = max(p.degree, 0)
        if n > self.N:
            return HClass.zero(n)
        vec = self.c_vector(p, n)
        return HClass({w: vec[k] for k, w in enumerate(self.basis(n))}, n)

    # -- duals ------------------------------------------------------------------

    def dual_basis(self, n: int) -> DualBasis:
        if n not in self._duals:
            basis = self.basis(n)
            if not basis:
                self._duals[n] = DualBasis(n, {})
                return self._duals[n]
            rows, monos = self.functional_matrix(n)
            _, pivots = linalg.rational_row_reduce(rows)
            if len(pivots) != len(basis):
                raise SingularSystemError(
                    f"{self.sys.type} degree {n}: rank {len(pivots)} != {len(basis)} elements")
            square = [[row[c] for c in pivots] for row in rows]
            inv = linalg.rational_inverse(square)
            polys = {}
            for k, w in enumerate(basis):
                polys[w] = Poly(self.sys.rank, {monos[c]: inv[t][k] for t, c in enumerate(pivots)})
            self._duals[n] = DualBasis(n, polys, [monos[c] for c in pivots])
        return self._duals[n]

    def dual_poly(self, h: HClass) -> Poly:
        """The rational polynomial sum h_w e_w, a preimage of h under c."""
        duals = self.dual_basis(h.degree).polys
        out = Poly(self.sys.rank)
        for w, c in h.coeffs.items():
            out = out + duals[w] * c
        return out

    def _c_integral(self, p: Poly, n: int, what: str) -> HClass:
        vec = self.c_vector(p, n)
        for k, x in enumerate(vec):
            if isinstance(x, Fraction) and x.denominator != 1:
                w = self.basis(n)[k]
                raise IntegralityError(f"{what}: coefficient {x} at z[{word_name(self.word(w))}]")
        return HClass({w: vec[k] for k, w in enumerate(self.basis(n))}, n)

    # -- ring structure ---------------------------------------------------------

    def multiply(self, u: HClass, v: HClass) -> HClass:
        n = u.degree + v.degree
        if n > self.N or u.is_zero() or v.is_zero():
            return HClass.zero(n)
        prod = self.dual_poly(u) * self.dual_poly(v)
        return self._c_integral(prod, n, "structure constant")

    def z(self, word: Sequence[int]) -> HClass:
        w = weyl.from_word(word, self.sys)
        if w.length != len(word):
            raise ValueError(f"word {tuple(word)} is not reduced")
        return HClass.basis_element(w)

    def reflections(self) -> list[tuple[tuple[int, ...], WeylElement]]:
        if self._reflections is None:
            self._reflections = [(beta, weyl.reflection(beta, self.sys)) for beta in self.sys.positive_roots]
        return self._reflections

    def chevalley_multiply(self, lam: Poly, v: HClass) -> HClass:
        """c(lam) * v by the Chevalley rule:
        z_w -> sum over beta > 0 with l(w s_beta) = l(w) + 1 of (lam, beta) z_{w s_beta}."""
        if lam.is_zero():
            return HClass.zero(v.degree + 1)
        if lam.degree != 1 or not lam.is_homogeneous():
            raise ValueError("chevalley_multiply needs a homogeneous degree-1 polynomial")
        r = self.sys.rank
        coords = [lam.coefficient(tuple(int(j == i) for j in range(r))) for i in range(r)]
        out: dict[WeylElement, int] = {}
        for w, c in v.coeffs.items():
            for beta, s in self.reflections():
                ws = weyl.multiply(w, s, self.sys)
                if ws.length == w.length + 1:
                    out[ws] = out.get(ws, 0) + c * self.sys.pair(coords, beta)
        return HClass(out, v.degree + 1)

    def pairing_matrix(self, i: int) -> list[list[int]]:
        """Coefficient of z_{w0} in z_a z_b, l(a) = i, l(b) = N - i."""
        left, right = self.basis(i), self.basis(self.N - i)
        duals_l = self.dual_basis(i).polys
        duals_r = self.dual_basis(self.N - i).polys
        matrix = []
        for a in left:
            row = []
            for b in right:
                x = self.c_vector(duals_l[a] * duals_r[b], self.N)[0]
                if isinstance(x, Fraction) and x.denominator != 1:
                    raise IntegralityError(f"pairing entry {x}")
                row.append(int(x))
            matrix.append(row)
        return matrix

    # -- W-action -----------------------------------------------------------------

    def action_matrix(self, w: WeylElement, n: int) -> list[list[int]]:
        """A[t][v] = eps D_t(w(e_v)), the matrix of w on H_n."""
        key = (w, n)
        if key not in self._actions:
            duals = self.dual_basis(n).polys
            basis = self.basis(n)
            cols = []
            for v in basis:
                img = self.ring.act(w, duals[v])
                vec = self.c_vector(img, n)
                for x in vec:
                    if isinstance(x, Fraction) and x.denominator != 1:
                        raise IntegralityError(f"action coefficient {x}")
                cols.append([int(x) for x in vec])
            self._actions[key] = [[cols[v][t] for v in range(len(basis))] for t in range(len(basis))]
        return self._actions[key]

    def w_action(self, w: WeylElement, h: HClass) -> HClass:
        n = h.degree
        if w.is_identity() or h.is_zero():
            return h
        a = self.action_matrix(w, n)
        basis = self.basis(n)
        vec = [h.coefficient(v) for v in basis]
        out = linalg.matvec(a, vec)
        return HClass({t: out[k] for k, t in enumerate(basis)}, n)

    def theta_invariants(self, theta: Iterable[int], n: int) -> list[HClass]:
        """Z-basis (Hermite normal form) of the W_theta-fixed part of H_n."""
        theta = sorted(set(theta))
        basis = self.basis(n)
        if not basis:
            return []
        rows = []
        for i in theta:
            a = self.action_matrix(weyl.from_word((i,), self.sys), n)
            for t in range(len(basis)):
                rows.append([a[t][v] - (t == v) for v in range(len(basis))])
        kernel = linalg.integer_kernel(rows, ncols=len(basis))
        return [HClass({basis[k]: x for k, x in enumerate(vec)}, n) for vec in kernel]

    def coordinates(self, h: HClass) -> list[int]:
        return [h.coefficient(w) for w in self.basis(h.degree)]


@lru_cache(maxsize=None)
def calculus(sys: RootSystem) -> SchubertCalculus:
    return SchubertCalculus(sys)


# thin functional surface


def c_map(p: Poly, sys: RootSystem, max_len: int | None = None) -> HClass:
    if max_len is not None and p.degree > max_len:
        raise ValueError(f"degree {p.degree} exceeds max_len {max_len}")
    return calculus(sys).c_map(p)


def dual_polynomials(sys: RootSystem, n: int) -> DualBasis:
    return calculus(sys).dual_basis(n)


def multiply(u: HClass, v: HClass, sys: RootSystem) -> HClass:
    return calculus(sys).multiply(u, v)


def chevalley_multiply(lam: Poly, v: HClass, sys: RootSystem) -> HClass:
    return calculus(sys).chevalley_multiply(lam, v)


def pairing_matrix(sys: RootSystem, i: int) -> list[list[int]]:
    return calculus(sys).pairing_matrix(i)


def w_action_on_H(w: WeylElement, h: HClass, sys: RootSystem) -> HClass:
    return calculus(sys).w_action(w, h)


def theta_invariants(sys: RootSystem, theta: Iterable[int], n: int) -> list[HClass]:
    return calculus(sys).theta_invariants(theta, n)
