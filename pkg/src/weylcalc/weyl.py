"""Weyl group elements, reduced words, enumeration and parabolic data.

An element w is stored as the tuple of images w(beta_1), ..., w(beta_r) in
simple-root coordinates.  That tuple is a faithful representation, so it is
used for equality and hashing; the length is cached alongside.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .rootsys import DynkinType, RootSystem, Vector, build_root_system, fundamental_degrees, cartan_matrix

DEFAULT_ENUMERATION_CAP = 10**6
DEFAULT_WORD_BOUND = 12


class EnumerationCapError(ValueError):
    """Raised when a full enumeration would exceed the configured cap."""


class WordBoundError(ValueError):
    """Raised when all_reduced_words is asked for an element that is too long."""


@dataclass(frozen=True)
class WeylElement:
    images: tuple[Vector, ...]
    length: int = field(compare=False)

    @property
    def rank(self) -> int:
        return len(self.images)

    @property
    def det(self) -> int:
        return -1 if self.length % 2 else 1

    def __call__(self, v: Sequence[int]) -> Vector:
        """Apply w to a vector in simple-root coordinates."""
        r = len(self.images)
        out = [0] * r
        for k, c in enumerate(v):
            if c:
                img = self.images[k]
                for j in range(r):
                    out[j] += c * img[j]
        return tuple(out)

    def is_identity(self) -> bool:
        return self.length == 0


def is_positive(v: Sequence[int]) -> bool:
    """True for a nonzero vector with non-negative coordinates."""
    return any(v) and all(x >= 0 for x in v)


def identity(sys: RootSystem) -> WeylElement:
    return WeylElement(tuple(sys.simple_root(i) for i in range(1, sys.rank + 1)), 0)


def _check_index(sys: RootSystem, i: int) -> None:
    if not 1 <= i <= sys.rank:
        raise ValueError(f"simple reflection index {i} out of range 1..{sys.rank}")


def right_multiply(w: WeylElement, i: int, sys: RootSystem) -> WeylElement:
    """w * s_i; (w s_i)(beta_j) = w(beta_j) - C_ij w(beta_i)."""
    c = sys.cartan[i - 1]
    wi = w.images[i - 1]
    images = []
    for j, img in enumerate(w.images):
        cij = c[j]
        if cij:
            images.append(tuple(a - cij * b for a, b in zip(img, wi)))
        else:
            images.append(img)
    step = 1 if is_positive(wi) else -1
    return WeylElement(tuple(images), w.length + step)


def reflect_vector(i: int, v: Sequence[int], sys: RootSystem) -> Vector:
    """s_i(v) = v - (beta_i, v) beta_i."""
    row = sys.cartan[i - 1]
    p = sum(row[j] * v[j] for j in range(len(v)) if row[j])
    if not p:
        return tuple(v)
    out = list(v)
    out[i - 1] -= p
    return tuple(out)


def left_multiply(i: int, w: WeylElement, sys: RootSystem) -> WeylElement:
    """s_i * w."""
    images = tuple(reflect_vector(i, img, sys) for img in w.images)
    return WeylElement(images, _length_of_images(images, sys))


def from_word(word: Sequence[int], sys: RootSystem) -> WeylElement:
    """The product s_{i1} s_{i2} ... s_{ik}."""
    w = identity(sys)
    for i in word:
        _check_index(sys, i)
        w = right_multiply(w, i, sys)
    return w


def _length_of_images(images: Sequence[Vector], sys: RootSystem) -> int:
    r = sys.rank
    count = 0
    for root in sys.positive_roots:
        v = [0] * r
        for k, c in enumerate(root):
            if c:
                img = images[k]
                for j in range(r):
                    v[j] += c * img[j]
        if not is_positive(v):
            count += 1
    return count


def element_from_images(images: Sequence[Sequence[int]], sys: RootSystem) -> WeylElement:
    images = tuple(tuple(v) for v in images)
    return WeylElement(images, _length_of_images(images, sys))


def multiply(u: WeylElement, v: WeylElement, sys: RootSystem) -> WeylElement:
    images = tuple(u(img) for img in v.images)
    return WeylElement(images, _length_of_images(images, sys))


def reflection(root: Sequence[int], sys: RootSystem) -> WeylElement:
    """The reflection s_beta in a (positive or negative) root."""
    images = []
    for j in range(sys.rank):
        p = sum(root[k] * sys.cartan[k][j] for k in range(sys.rank))
        images.append(tuple((k == j) - p * root[k] for k in range(sys.rank)))
    return element_from_images(images, sys)


def right_descents(w: WeylElement) -> list[int]:
    """Indices i (1-based) with l(w s_i) < l(w), i.e. w(beta_i) < 0."""
    return [i + 1 for i, img in enumerate(w.images) if not is_positive(img)]


def canonical_reduced_word(w: WeylElement, sys: RootSystem) -> tuple[int, ...]:
    """Reduced word built from the right, always stripping the smallest
    right descent first."""
    word = []
    while w.length:
        i = right_descents(w)[0]
        word.append(i)
        w = right_multiply(w, i, sys)
    return tuple(reversed(word))


def inverse(w: WeylElement, sys: RootSystem) -> WeylElement:
    return from_word(tuple(reversed(canonical_reduced_word(w, sys))), sys)


def left_descents(w: WeylElement, sys: RootSystem) -> list[int]:
    return right_descents(inverse(w, sys))


def inversion_set(w: WeylElement, sys: RootSystem) -> frozenset[Vector]:
    """{r > 0 : w^-1(r) < 0}."""
    winv = inverse(w, sys)
    return frozenset(r for r in sys.positive_roots if not is_positive(winv(r)))


def all_reduced_words(w: WeylElement, sys: RootSystem, bound: int = DEFAULT_WORD_BOUND) -> list[tuple[int, ...]]:
    """Every reduced word of w, sorted lexicographically."""
    if w.length > bound:
        raise WordBoundError(f"length {w.length} exceeds the reduced-word bound {bound}")
    memo: dict[WeylElement, list[tuple[int, ...]]] = {}

    def words(x: WeylElement) -> list[tuple[int, ...]]:
        if x.length == 0:
            return [()]
        if x in memo:
            return memo[x]
        out = []
        for i in right_descents(x):
            out.extend(p + (i,) for p in words(right_multiply(x, i, sys)))
        memo[x] = out
        return out

    return sorted(words(w))


def is_reduced(word: Sequence[int], sys: RootSystem) -> bool:
    return from_word(word, sys).length == len(word)


def group_order(sys: RootSystem) -> int:
    out = 1
    for d in fundamental_degrees(sys):
        out *= d
    return out


def poincare_coefficients(degrees: Iterable[int], max_len: int | None = None) -> list[int]:
    """Coefficients of prod_i (1 + t + ... + t^(d_i - 1)), optionally truncated."""
    coeffs = [1]
    for d in degrees:
        new = [0] * (len(coeffs) + d - 1)
        for k, c in enumerate(coeffs):
            for e in range(d):
                new[k + e] += c
        coeffs = new
        if max_len is not None:
            coeffs = coeffs[: max_len + 1]
    return coeffs


class _Levels:
    """BFS levels of W by length, extended on demand and shared per type."""

    def __init__(self, sys: RootSystem, gens: tuple[int, ...]):
        self.sys = sys
        self.gens = gens
        self.levels: list[list[WeylElement]] = [[identity(sys)]]
        self.complete = False

    def extend_to(self, max_len: float) -> None:
        sys = self.sys
        while not self.complete and len(self.levels) - 1 < max_len:
            seen = set()
            nxt = []
            for w in self.levels[-1]:
                for i in self.gens:
                    if is_positive(w.images[i - 1]):
                        u = right_multiply(w, i, sys)
                        if u not in seen:
                            seen.add(u)
                            nxt.append(u)
            if not nxt:
                self.complete = True
                break
            nxt.sort(key=lambda x: x.images)
            self.levels.append(nxt)

    def total(self) -> int:
        return sum(len(level) for level in self.levels)


_LEVEL_CACHE: dict[tuple[DynkinType, tuple[int, ...]], _Levels] = {}


def _levels(sys: RootSystem, gens: tuple[int, ...] | None = None) -> _Levels:
    gens = tuple(range(1, sys.rank + 1)) if gens is None else tuple(sorted(gens))
    key = (sys.type, gens)
    if key not in _LEVEL_CACHE:
        _LEVEL_CACHE[key] = _Levels(sys, gens)
    return _LEVEL_CACHE[key]


def enumerate_by_length(sys: RootSystem, max_len: int | None = None,
                        cap: int = DEFAULT_ENUMERATION_CAP) -> dict[int, list[WeylElement]]:
    """Elements of W grouped by length, each group sorted by images.

    Without ``max_len`` the whole group is enumerated, which is refused when
    |W| exceeds ``cap``.
    """
    if max_len is None:
        order = group_order(sys)
        if order > cap:
            raise EnumerationCapError(
                f"|W({sys.type})| = {order} exceeds the enumeration cap {cap}; pass max_len to truncate")
    lv = _levels(sys)
    lv.extend_to(float("inf") if max_len is None else max_len)
    top = len(lv.levels) - 1 if max_len is None else min(max_len, len(lv.levels) - 1)
    return {k: list(lv.levels[k]) for k in range(top + 1)}


def elements_of_length(sys: RootSystem, n: int) -> list[WeylElement]:
    lv = _levels(sys)
    lv.extend_to(n)
    return list(lv.levels[n]) if n < len(lv.levels) else []


def all_elements(sys: RootSystem, cap: int = DEFAULT_ENUMERATION_CAP) -> list[WeylElement]:
    return [w for level in enumerate_by_length(sys, cap=cap).values() for w in level]


def length_census(sys: RootSystem, max_len: int | None = None,
                  cap: int = DEFAULT_ENUMERATION_CAP) -> list[int]:
    return [len(v) for v in enumerate_by_length(sys, max_len, cap).values()]


def longest_element(sys: RootSystem) -> WeylElement:
    """w0, reached by multiplying by simple reflections while w(beta_i) > 0
    for some i."""
    w = identity(sys)
    while True:
        for i in range(1, sys.rank + 1):
            if is_positive(w.images[i - 1]):
                w = right_multiply(w, i, sys)
                break
        else:
            return w


def parabolic_subgroup(sys: RootSystem, theta: Iterable[int]) -> list[WeylElement]:
    """All elements of W_theta (generated by s_i, i in theta)."""
    theta = tuple(sorted(set(theta)))
    for i in theta:
        _check_index(sys, i)
    lv = _levels(sys, theta)
    lv.extend_to(float("inf"))
    return [w for level in lv.levels for w in level]


def coset_min_reps(sys: RootSystem, theta: Iterable[int], max_len: int | None = None,
                   cap: int = DEFAULT_ENUMERATION_CAP) -> list[WeylElement]:
    """Minimal representatives of the left cosets w W_theta:
    {w : w(beta_i) > 0 for all i in theta}."""
    theta = sorted(set(theta))
    for i in theta:
        _check_index(sys, i)
    out = []
    for level in enumerate_by_length(sys, max_len, cap).values():
        out.extend(w for w in level if all(is_positive(w.images[i - 1]) for i in theta))
    return out


def diagram_automorphisms(t: DynkinType) -> list[tuple[int, ...]]:
    """Permutations p of 1..r (as tuples p[i-1] = image of i) preserving the
    Cartan matrix, found by backtracking over node assignments."""
    from .rootsys import gram_isomorphisms

    c = cartan_matrix(t)
    return sorted(tuple(x + 1 for x in p) for p in gram_isomorphisms(c, c))


def brute_force_diagram_automorphisms(t: DynkinType) -> list[tuple[int, ...]]:
    c = cartan_matrix(t)
    r = t.rank
    return sorted(
        tuple(x + 1 for x in p) for p in permutations(range(r))
        if all(c[p[i]][p[j]] == c[i][j] for i in range(r) for j in range(r))
    )


def word_label(word: Sequence[int]) -> str:
    """Dot-separated reduced word, 'e' for the identity."""
    return ".".join(str(i) for i in word) if word else "e"


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        return tuple(int(x) for x in text.split("."))
    except ValueError:
        raise ValueError(f"cannot parse word {text!r}; expected dot-separated indices like 2.1") from None
