"""Exact integer and rational linear algebra.

Matrices are lists of rows of Python ints (or Fractions where noted).
Everything here is exact; entries are arbitrary-precision integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


class SingularMatrixError(ArithmeticError):
    pass


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_row_reduce(a: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (rref, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rational_rank(a: Sequence[Sequence]) -> int:
    return len(rational_row_reduce(a)[1]) if a else 0


def rational_inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rational_row_reduce(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red[:n]]


def rational_solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution x of a x = b over Q, or None when inconsistent."""
    cols = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rational_row_reduce(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return x


def rational_nullspace(a: Sequence[Sequence]) -> list[list[Fraction]]:
    cols = len(a[0]) if a else 0
    red, pivots = rational_row_reduce(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def primitive(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SNFResult:
    """Smith form ``left @ A @ right == D`` with ``D`` diagonal.

    ``diagonal`` lists the nonzero invariant factors d1 | d2 | ... followed by
    nothing: the rank is ``len(diagonal)``.  Transforms are present only when
    requested.
    """

    diagonal: list[int]
    shape: tuple[int, int]
    left: Matrix | None = field(default=None, repr=False)
    right: Matrix | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> list[int]:
        """Invariant factors > 1: the torsion of the cokernel."""
        return [d for d in self.diagonal if d > 1]

    @property
    def cokernel_free_rank(self) -> int:
        return self.shape[0] - self.rank

    def diagonal_matrix(self) -> Matrix:
        rows, cols = self.shape
        d = [[0] * cols for _ in range(rows)]
        for i, x in enumerate(self.diagonal):
            d[i][i] = x
        return d


def smith_normal_form(a: Sequence[Sequence[int]], transforms: bool = False) -> SNFResult:
    """Smith normal form by pivoting on the smallest nonzero entry.

    With ``transforms=True`` also returns unimodular ``left`` and ``right``
    such that ``left @ a @ right`` is the diagonal matrix.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [list(map(int, row)) for row in a]
    left = identity_matrix(rows) if transforms else None
    right = identity_matrix(cols) if transforms else None

    def swap_rows(i, j):
        if i != j:
            m[i], m[j] = m[j], m[i]
            if left is not None:
                left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        if i != j:
            for row in m:
                row[i], row[j] = row[j], row[i]
            if right is not None:
                for row in right:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        rs, rd = m[src], m[dst]
        for c in range(cols):
            if rs[c]:
                rd[c] += q * rs[c]
        if left is not None:
            ls, ld = left[src], left[dst]
            for c in range(rows):
                if ls[c]:
                    ld[c] += q * ls[c]

    def add_col(dst, src, q):
        for row in m:
            if row[src]:
                row[dst] += q * row[src]
        if right is not None:
            for row in right:
                if row[src]:
                    row[dst] += q * row[src]

    diagonal = []
    k = 0
    while k < min(rows, cols):
        # smallest nonzero entry of the trailing block
        best = None
        for i in range(k, rows):
            row = m[i]
            for j in range(k, cols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(k, best[1])
        swap_cols(k, best[2])
        while True:
            p = m[k][k]
            done = True
            for i in range(k + 1, rows):
                if m[i][k]:
                    q = m[i][k] // p
                    add_row(i, k, -q)
                    if m[i][k]:
                        done = False
            for j in range(k + 1, cols):
                if m[k][j]:
                    q = m[k][j] // p
                    add_col(j, k, -q)
                    if m[k][j]:
                        done = False
            if done:
                # divisibility of the remaining block
                bad = None
                for i in range(k + 1, rows):
                    row = m[i]
                    for j in range(k + 1, cols):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(k, bad, 1)
                continue
            # move the smallest remaining entry of row/col k to the pivot
            best = (abs(m[k][k]), k, k)
            for i in range(k + 1, rows):
                if m[i][k] and abs(m[i][k]) < best[0]:
                    best = (abs(m[i][k]), i, k)
            for j in range(k + 1, cols):
                if m[k][j] and abs(m[k][j]) < best[0]:
                    best = (abs(m[k][j]), k, j)
            swap_rows(k, best[1])
            swap_cols(k, best[2])
        if m[k][k] < 0:
            if left is not None:
                left[k] = [-x for x in left[k]]
            m[k] = [-x for x in m[k]]
        diagonal.append(m[k][k])
        k += 1
    return SNFResult(diagonal, (rows, cols), left, right)


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """A Z-basis of {v in Z^n : a v = 0}, in Hermite normal form.

    Sparse route: rational kernel by fraction-free elimination, then
    saturation inside Z^n.  ``ncols`` is needed only when ``a`` has no rows.
    """
    n = len(a[0]) if a else ncols
    if n is None:
        raise ValueError("cannot infer column count of an empty matrix")
    rows = [{j: int(x) for j, x in enumerate(row) if x} for row in a]
    return sparse_integer_kernel(rows, n)


def integer_kernel_snf(a: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Same lattice as :func:`integer_kernel`, read off the Smith transform."""
    n = len(a[0]) if a else ncols
    if n is None:
        raise ValueError("cannot infer column count of an empty matrix")
    if not a:
        return identity_matrix(n)
    res = smith_normal_form(a, transforms=True)
    basis = [[res.right[i][j] for i in range(n)] for j in range(res.rank, n)]
    return hermite_normal_form(basis)


SparseRow = dict[int, int]


def _content_normalize(r: SparseRow) -> SparseRow:
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            break
    if r[min(r)] < 0:
        g = -g
    if g not in (0, 1):
        r = {k: v // g for k, v in r.items()}
    return r


def _combine(r: SparseRow, fr: int, p: SparseRow, fp: int) -> SparseRow:
    """fr*r - fp*p with zeros dropped."""
    out = {k: fr * v for k, v in r.items()} if fr != 1 else dict(r)
    for k, v in p.items():
        x = out.get(k, 0) - fp * v
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def sparse_reduced_echelon(rows: Sequence[SparseRow]) -> dict[int, SparseRow]:
    """Fraction-free reduced echelon form over Q.

    Returns pivot column -> primitive integer row whose only nonzero entries
    in pivot columns sit at its own pivot.
    """
    piv: dict[int, SparseRow] = {}
    for r in rows:
        r = {k: v for k, v in r.items() if v}
        while r:
            c = min(r)
            p = piv.get(c)
            if p is None:
                piv[c] = _content_normalize(r)
                break
            g = gcd(p[c], r[c])
            r = _combine(r, p[c] // g, p, r[c] // g)
            if r:
                r = _content_normalize(r)
    for c in sorted(piv, reverse=True):
        row = piv[c]
        for k in sorted(k for k in row if k != c and k in piv):
            if k not in row:
                continue
            p = piv[k]
            g = gcd(p[k], row[k])
            row = _combine(row, p[k] // g, p, row[k] // g)
        piv[c] = _content_normalize(row)
    return piv


def sparse_integer_kernel(rows: Sequence[SparseRow], n: int) -> list[list[int]]:
    """Z-basis (HNF) of the integer kernel of a sparse matrix with n columns."""
    piv = sparse_reduced_echelon(rows)
    free = [j for j in range(n) if j not in piv]
    if not free:
        return []
    k = len(free)
    fidx = {f: t for t, f in enumerate(free)}
    # coefficients c in Z^k give the vector with free coordinates c and
    # pivot coordinates -sum_f c_f row[f] / row[p]; impose integrality
    lattice = identity_matrix(k)
    for p, row in piv.items():
        m = row[p]
        if m == 1:
            continue
        coeffs = [(fidx[f], v) for f, v in row.items() if f != p]
        vals = [sum(v * b[t] for t, v in coeffs) for b in lattice]
        lattice = _congruence_sublattice(lattice, vals, m)
    out = []
    for c in lattice:
        v = [0] * n
        for f, t in fidx.items():
            v[f] = c[t]
        for p, row in piv.items():
            s = sum(val * c[fidx[f]] for f, val in row.items() if f != p)
            q, rem = divmod(-s, row[p])
            assert rem == 0
            v[p] = q
        out.append(v)
    return hermite_normal_form(out)


def _congruence_sublattice(basis: list[list[int]], vals: list[int], m: int) -> list[list[int]]:
    """Rows y.basis with sum y_i vals_i = 0 mod m (basis square, full rank)."""
    basis = [list(b) for b in basis]
    vals = [x % m for x in vals]
    if not any(vals):
        return basis
    for i in range(1, len(basis)):
        if vals[i] == 0:
            continue
        g, s, t = _xgcd(vals[0], vals[i])
        u0, ui = vals[0] // g, vals[i] // g
        b0, bi = basis[0], basis[i]
        basis[0] = [s * x + t * y for x, y in zip(b0, bi)]
        basis[i] = [u0 * y - ui * x for x, y in zip(b0, bi)]
        vals[0], vals[i] = g, 0
    scale = m // gcd(vals[0], m)
    basis[0] = [scale * x for x in basis[0]]
    return hermite_normal_form(basis)


def hermite_normal_form(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Rows are returned with strictly increasing pivot columns, positive pivots,
    and entries above each pivot reduced into [0, pivot).  The result depends
    only on the lattice, so it serves as a canonical basis.
    """
    basis: dict[int, list[int]] = {}
    for v in vectors:
        _insert(basis, list(map(int, v)))
    rows = [basis[c] for c in sorted(basis)]
    for i, row in enumerate(rows):
        c = _pivot(row)
        for k in range(i):
            q = rows[k][c] // row[c]
            if q:
                rows[k] = [x - q * y for x, y in zip(rows[k], row)]
    return rows


def _pivot(v: Sequence[int]) -> int:
    for i, x in enumerate(v):
        if x:
            return i
    return -1


def _insert(basis: dict[int, list[int]], v: list[int]) -> None:
    # Echelon insertion with gcd steps; keeps pivots positive.
    while True:
        c = _pivot(v)
        if c < 0:
            return
        if c not in basis:
            if v[c] < 0:
                v = [-x for x in v]
            basis[c] = v
            return
        b = basis[c]
        if v[c] % b[c] == 0:
            q = v[c] // b[c]
            v = [x - q * y for x, y in zip(v, b)]
            continue
        g, s, t = _xgcd(b[c], v[c])
        u1, u2 = b[c] // g, v[c] // g
        new_b = [s * x + t * y for x, y in zip(b, v)]
        v = [u1 * y - u2 * x for x, y in zip(b, v)]
        if new_b[c] < 0:
            new_b = [-x for x in new_b]
        basis[c] = new_b


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def lattice_cokernel(generators: Sequence[Sequence[int]] | Sequence[SparseRow], dim: int) -> tuple[int, list[int]]:
    """Structure of Z^dim / span(generators) as (free rank, torsion factors).

    Generators (dense rows or sparse dicts) are put in echelon form by gcd
    insertion; unit pivots are then eliminated together with their column,
    and only the remaining small block goes through Smith normal form.
    """
    basis: dict[int, SparseRow] = {}
    for v in generators:
        if isinstance(v, dict):
            row = {k: int(x) for k, x in v.items() if x}
        else:
            row = {k: int(x) for k, x in enumerate(v) if x}
        _sparse_insert(basis, row)
    rank = len(basis)
    for c in sorted(basis, reverse=True):
        r = basis[c]
        if r[c] != 1:
            continue
        del basis[c]
        for k, other in basis.items():
            if c in other:
                basis[k] = _combine(other, 1, r, other[c])
    if not basis:
        return dim - rank, []
    cols = sorted({k for r in basis.values() for k in r})
    where = {k: t for t, k in enumerate(cols)}
    dense = []
    for r in basis.values():
        row = [0] * len(cols)
        for k, x in r.items():
            row[where[k]] = x
        dense.append(row)
    return dim - rank, smith_normal_form(dense).torsion


def _reduce_tail(basis: dict[int, SparseRow], v: SparseRow, c: int) -> SparseRow:
    """Reduce entries of v right of column c modulo the pivots in ``basis``."""
    k = c
    while True:
        later = [j for j in v if j > k and j in basis]
        if not later:
            return v
        k = min(later)
        b = basis[k]
        q = v[k] // b[k]
        if q:
            v = _combine(v, 1, b, q)


def _sparse_insert(basis: dict[int, SparseRow], v: SparseRow) -> None:
    while v:
        c = min(v)
        b = basis.get(c)
        if b is None:
            if v[c] < 0:
                v = {k: -x for k, x in v.items()}
            basis[c] = _reduce_tail(basis, v, c)
            return
        if v[c] % b[c] == 0:
            v = _combine(v, 1, b, v[c] // b[c])
            continue
        g, s, t = _xgcd(b[c], v[c])
        u1, u2 = b[c] // g, v[c] // g
        new_b = _combine({k: s * x for k, x in b.items()}, 1, v, -t)
        v = _combine({k: u1 * x for k, x in v.items()}, 1, b, u2)
        if new_b[c] < 0:
            new_b = {k: -x for k, x in new_b.items()}
        basis[c] = _reduce_tail(basis, new_b, c)


def lattice_cokernel_snf(generators: Sequence[Sequence[int]], dim: int) -> tuple[int, list[int]]:
    """Dense reference for :func:`lattice_cokernel`."""
    gens = [list(map(int, g)) for g in generators if any(g)]
    if not gens:
        return dim, []
    res = smith_normal_form(gens)
    return dim - res.rank, res.torsion


def solve_in_lattice(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``v`` in the (independent) rows ``basis``."""
    if not basis:
        return [] if not any(v) else None
    x = rational_solve(transpose(basis), list(v))
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return [int(c) for c in x]


def rank_mod_p(a: Sequence[Sequence[int]], p: int = 2_147_483_647) -> int:
    """Rank over GF(p); a lower bound for the rank over Q."""
    m = [[x % p for x in row] for row in a]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        row = [x * inv % p for x in m[rank]]
        m[rank] = row
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], row)]
        rank += 1
        if rank == len(m):
            break
    return rank
