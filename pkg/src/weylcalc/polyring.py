"""Sparse polynomials over Z (or Q) and the Weyl group action on Z[M].

Variables x_1..x_r are the simple roots, each of degree 1.  The simple
reflection s_i acts by s_i(x_j) = x_j - C_ij x_i, so s_i(x_i) = -x_i and a
neighbouring x_j goes to x_j + x_i.  The divided difference is

    Delta_i(u) = (u - s_i(u)) / x_i,

with the sign fixed so that Delta_i(x_i) = 2.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

from .rootsys import RootSystem
from . import weyl
from .weyl import WeylElement

Exps = tuple[int, ...]


class InexactDivisionError(ArithmeticError):
    """A division that must be exact left a remainder."""


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class Poly:
    """Sparse polynomial: a dict from exponent tuples to nonzero coefficients.

    Coefficients are Python ints, or Fractions where rational polynomials
    are needed.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, Rational] | None = None):
        self.nvars = nvars
        if terms:
            self.terms = {e: _norm(c) for e, c in terms.items() if c}
        else:
            self.terms = {}

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Poly:
        # caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, nvars: int, c: Rational = 1) -> Poly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> Poly:
        """x_i, 1-based."""
        return cls(nvars, {tuple(int(j == i - 1) for j in range(nvars)): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Rational = 1) -> Poly:
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def linear(cls, coeffs: Sequence[Rational]) -> Poly:
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    # -- inspection ---------------------------------------------------------

    def __iter__(self) -> Iterator[tuple[Exps, Rational]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Sequence[int]) -> Rational:
        return self.terms.get(tuple(exps), 0)

    def constant_term(self) -> Rational:
        """The augmentation: value at the origin."""
        return self.terms.get((0,) * self.nvars, 0)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, n: int) -> Poly:
        return Poly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == n})

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def sorted_terms(self) -> list[tuple[Exps, Rational]]:
        """Terms in decreasing graded-lex order (x1 > x2 > ...)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_term(self) -> tuple[Exps, Rational]:
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly(self.nvars)
            return Poly._raw(self.nvars, {e: _norm(c * other) for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exps, Rational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, c) -> Poly:
        """Division by a scalar, exact over Q."""
        return Poly(self.nvars, {e: Fraction(v) / c for e, v in self.terms.items()})

    def exact_div(self, c: int) -> Poly:
        """Division by an integer that must leave an integral polynomial."""
        out = {}
        for e, v in self.terms.items():
            q, r = divmod(v, c)
            if r:
                raise InexactDivisionError(f"coefficient {v} not divisible by {c}")
            out[e] = _norm(q)
        return Poly._raw(self.nvars, out)

    def divide_by_variable(self, i: int) -> Poly:
        """p / x_i (1-based), which must be exact."""
        k = i - 1
        out = {}
        for e, c in self.terms.items():
            if e[k] == 0:
                raise InexactDivisionError(f"term {e} is not divisible by x{i}")
            out[e[:k] + (e[k] - 1,) + e[k + 1:]] = c
        return Poly._raw(self.nvars, out)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * self.nvars: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, point: Sequence[Rational]) -> Rational:
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def substitute(self, forms: Sequence[Poly]) -> Poly:
        """Replace x_j by forms[j] (all in the same target ring)."""
        nv = forms[0].nvars
        powers: dict[tuple[int, int], Poly] = {}

        def power(j, k):
            if (j, k) not in powers:
                powers[(j, k)] = forms[j] ** k
            return powers[(j, k)]

        total: dict[Exps, Rational] = {}
        for e, c in self.terms.items():
            term = Poly.constant(nv, c)
            for j, k in enumerate(e):
                if k:
                    term = term * power(j, k)
            for te, tc in term.terms.items():
                total[te] = total.get(te, 0) + tc
        return Poly(nv, total)

    # -- text ---------------------------------------------------------------

    def to_string(self, names: Sequence[str] | None = None) -> str:
        """Stable rendering like ``2*x1^2*x2 - x3`` in decreasing grlex order."""
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Poly({self.to_string()!r})"

    @classmethod
    def parse(cls, text: str, nvars: int | None = None, names: Sequence[str] | None = None) -> Poly:
        """Parse the format written by ``to_string``.

        Variables are ``x1..xn`` unless ``names`` is given; coefficients may
        be integers or fractions ``a/b``.
        """
        if names is None:
            if nvars is None:
                found = [int(m) for m in re.findall(r"x(\d+)", text)]
                nvars = max(found, default=1)
            names = [f"x{i + 1}" for i in range(nvars)]
        index = {n: i for i, n in enumerate(names)}
        n = len(names)
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        terms: dict[Exps, Rational] = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            coeff: Rational = 1
            exps = [0] * n
            for factor in body.split("*"):
                if not factor:
                    raise ValueError(f"malformed term {body!r}")
                m = re.fullmatch(r"(\d+)(?:/(\d+))?", factor)
                if m:
                    coeff *= Fraction(int(m.group(1)), int(m.group(2) or 1))
                    continue
                m = re.fullmatch(r"([A-Za-z]\w*?)(?:\^(\d+))?", factor)
                if not m or m.group(1) not in index:
                    raise ValueError(f"unknown factor {factor!r}")
                exps[index[m.group(1)]] += int(m.group(2) or 1)
            if sign == "-":
                coeff = -coeff
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + coeff
        if "".join(sign + body for sign, body in re.findall(r"([+-])([^+-]+)", s)) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        return cls(n, terms)


RatPoly = Poly  # rational coefficients are Fractions inside the same class


def monomials_of_degree(nvars: int, n: int) -> list[Exps]:
    """All exponent tuples of total degree n, in decreasing grlex order."""
    out: list[Exps] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + (k,), remaining - k, slots - 1)

    if nvars == 0:
        return [()] if n == 0 else []
    rec((), n, nvars)
    return out


# ---------------------------------------------------------------------------
# Weyl group action


class WeylPolyRing:
    """Z[M] for one root system, with memoised action on monomials."""

    def __init__(self, sys: RootSystem):
        self.sys = sys
        self.r = sys.rank
        # (0-based neighbour j, scalar c) with s_i(x_j) = x_j + c x_i
        self._shifts = [
            [(j, -sys.cartan[i][j]) for j in range(self.r) if j != i and sys.cartan[i][j]]
            for i in range(self.r)
        ]
        self._reflect_cache: list[dict[Exps, dict[Exps, int]]] = [{} for _ in range(self.r)]
        self._delta_cache: list[dict[Exps, dict[Exps, int]]] = [{} for _ in range(self.r)]
        self._word_cache: dict[tuple, dict[Exps, int]] = {}
        self._d = None
        self._chain = None

    def x(self, i: int) -> Poly:
        return Poly.variable(self.r, i)

    def root_form(self, v: Sequence[int]) -> Poly:
        """The degree-1 polynomial of a lattice vector."""
        return Poly.linear(list(v))

    # monomial level

    def reflect_monomial(self, i: int, e: Exps) -> dict[Exps, int]:
        """s_i(x^e) as a term dict (i is 1-based)."""
        cache = self._reflect_cache[i - 1]
        hit = cache.get(e)
        if hit is not None:
            return hit
        k = i - 1
        terms = {e: -1 if e[k] % 2 else 1}
        for j, c in self._shifts[k]:
            a = e[j]
            if not a:
                continue
            new: dict[Exps, int] = {}
            for f, coef in terms.items():
                for t in range(a + 1):
                    g = list(f)
                    g[j] -= t
                    g[k] += t
                    g = tuple(g)
                    new[g] = new.get(g, 0) + coef * comb(a, t) * c ** t
            terms = new
        terms = {f: v for f, v in terms.items() if v}
        cache[e] = terms
        return terms

    def delta_monomial(self, i: int, e: Exps) -> dict[Exps, int]:
        """Delta_i(x^e) as a term dict."""
        cache = self._delta_cache[i - 1]
        hit = cache.get(e)
        if hit is not None:
            return hit
        k = i - 1
        diff = {e: 1}
        for f, c in self.reflect_monomial(i, e).items():
            v = diff.get(f, 0) - c
            if v:
                diff[f] = v
            else:
                del diff[f]
        out = {}
        for f, c in diff.items():
            if f[k] == 0:
                raise InexactDivisionError(f"x^{f} not divisible by x{i} in Delta_{i}")
            out[f[:k] + (f[k] - 1,) + f[k + 1:]] = c
        cache[e] = out
        return out

    # polynomial level

    def _linear_image(self, p: Poly, table) -> Poly:
        out: dict[Exps, Rational] = {}
        for e, c in p.terms.items():
            for f, v in table(e).items():
                out[f] = out.get(f, 0) + c * v
        return Poly(self.r, out)

    def reflect(self, i: int, p: Poly) -> Poly:
        return self._linear_image(p, lambda e: self.reflect_monomial(i, e))

    def delta(self, i: int, p: Poly) -> Poly:
        return self._linear_image(p, lambda e: self.delta_monomial(i, e))

    def act(self, w: WeylElement, p: Poly) -> Poly:
        """w(p): substitute x_j -> w(beta_j)."""
        if w.is_identity() or p.is_zero():
            return p
        forms = [Poly.linear(img) for img in w.images]
        return p.substitute(forms)

    def act_word(self, word: Sequence[int], p: Poly) -> Poly:
        """s_{i1}(s_{i2}(...s_{ik}(p)))."""
        for i in reversed(word):
            p = self.reflect(i, p)
        return p

    def apply_word(self, word: Sequence[int], p: Poly, check: bool = True) -> Poly:
        """Delta_{i1} o ... o Delta_{ik} applied to p."""
        if check and not weyl.is_reduced(word, self.sys):
            raise ValueError(f"word {tuple(word)} is not reduced")
        for i in reversed(word):
            p = self.delta(i, p)
            if p.is_zero():
                break
        return p

    def apply_word_monomial(self, word: tuple[int, ...], e: Exps) -> dict[Exps, int]:
        """Delta_{i1} o ... o Delta_{ik} (x^e) as a term dict, cached on suffixes.

        No reducedness check: this is the raw composite along the given word.
        """
        key = (word, e)
        hit = self._word_cache.get(key)
        if hit is not None:
            return hit
        if not word:
            out = {e: 1}
        else:
            out: dict[Exps, int] = {}
            for f, c in self.apply_word_monomial(word[1:], e).items():
                for g, v in self.delta_monomial(word[0], f).items():
                    x = out.get(g, 0) + c * v
                    if x:
                        out[g] = x
                    else:
                        del out[g]
        self._word_cache[key] = out
        return out

    def d(self) -> Poly:
        """Product of the linear forms of all positive roots."""
        if self._d is None:
            out = Poly.constant(self.r)
            for root in self.sys.positive_roots:
                out = out * self.root_form(root)
            self._d = out
        return self._d

    def _antisymmetrizer_chain(self):
        """Coset data for J = A_r o ... o A_1, where A_j sums det(u) u over
        minimal coset representatives of W_{1..j} / W_{1..j-1}."""
        if self._chain is None:
            sys = self.sys
            chain = []
            for j in range(1, self.r + 1):
                group = weyl.parabolic_subgroup(sys, range(1, j + 1))
                reps = [u for u in group if all(weyl.is_positive(u.images[i - 1]) for i in range(1, j))]
                reps.sort(key=lambda u: (u.length, u.images))
                steps = []  # (rep, parent rep, left letter)
                for u in reps[1:]:
                    for i in range(1, j + 1):
                        parent = weyl.left_multiply(i, u, sys)
                        if parent.length < u.length:
                            steps.append((u, parent, i))
                            break
                chain.append((reps[0], steps))
            self._chain = chain
        return self._chain

    def j_apply(self, p: Poly, method: str = "chain") -> Poly:
        """J(p) = sum over w of det(w) w(p).

        ``chain`` factors J through a tower of parabolic subgroups and applies
        each coset sum by simple reflections; ``sum`` is the literal sum over
        the enumerated group.
        """
        if method == "sum":
            total = Poly(self.r)
            for w in weyl.all_elements(self.sys):
                term = self.act(w, p)
                total = total + (term if w.det == 1 else -term)
            return total
        if method != "chain":
            raise ValueError(f"unknown method {method!r}")
        order = weyl.group_order(self.sys)
        if order > weyl.DEFAULT_ENUMERATION_CAP:
            raise weyl.EnumerationCapError(f"|W| = {order} exceeds the enumeration cap")
        q = p
        for ident, steps in self._antisymmetrizer_chain():
            images = {ident: q}
            total = dict(q.terms)
            for u, parent, i in steps:
                img = self.reflect(i, images[parent])
                images[u] = img
                sign = u.det
                for e, c in img.terms.items():
                    total[e] = total.get(e, 0) + sign * c
            q = Poly(self.r, total)
        return q


@lru_cache(maxsize=None)
def ring(sys: RootSystem) -> WeylPolyRing:
    return WeylPolyRing(sys)


def act(w: WeylElement, p: Poly, sys: RootSystem) -> Poly:
    return ring(sys).act(w, p)


def delta(i: int, p: Poly, sys: RootSystem) -> Poly:
    if not 1 <= i <= sys.rank:
        raise ValueError(f"index {i} out of range")
    return ring(sys).delta(i, p)


def apply_Dw(word: Sequence[int], p: Poly, sys: RootSystem) -> Poly:
    return ring(sys).apply_word(tuple(word), p)


def d_poly(sys: RootSystem) -> Poly:
    return ring(sys).d()


def j_apply(p: Poly, sys: RootSystem, method: str = "chain") -> Poly:
    return ring(sys).j_apply(p, method)


def derivation_rules_check(i: int, u: Poly, v: Poly, sys: RootSystem) -> list[tuple[str, bool, str]]:
    """Check the standard identities of Delta_i on the given inputs.

    Each entry is (name, passed, description).
    """
    R = ring(sys)
    du, dv = R.delta(i, u), R.delta(i, v)
    su = R.reflect(i, u)
    checks = [
        ("leibniz", R.delta(i, u * v) == du * v + su * dv,
         f"Delta_{i}(uv) = Delta_{i}(u) v + s_{i}(u) Delta_{i}(v)"),
        ("square_zero", R.delta(i, du).is_zero(), f"Delta_{i}^2 (u) = 0"),
        ("delta_after_reflection", R.delta(i, su) == -du, f"Delta_{i}(s_{i} u) = -Delta_{i}(u)"),
        ("reflection_after_delta", R.reflect(i, du) == du, f"s_{i}(Delta_{i} u) = Delta_{i}(u)"),
        ("invariance", du.is_zero() == (su == u), f"Delta_{i}(u) = 0 iff s_{i}(u) = u"),
        ("linearity", R.delta(i, u + v) == du + dv, f"Delta_{i}(u + v) = Delta_{i}(u) + Delta_{i}(v)"),
    ]
    return checks


def random_homogeneous(rng, nvars: int, degree: int, terms: int = 4, coeff_range: int = 9) -> Poly:
    """A random homogeneous polynomial with up to ``terms`` monomials."""
    out: dict[Exps, int] = {}
    for _ in range(terms):
        cuts = sorted(rng.randint(0, degree) for _ in range(nvars - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [degree])]
        c = rng.randint(-coeff_range, coeff_range)
        out[tuple(parts)] = out.get(tuple(parts), 0) + c
    return Poly(nvars, out)
