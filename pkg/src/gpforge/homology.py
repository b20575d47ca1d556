"""Exact integer linear algebra: Smith normal form, abelianizations, and
cellular homology of two-dimensional chain complexes.

All entries are Python ints (arbitrary precision); SNF intermediate growth
is real even for small relator matrices, so fixed-width arithmetic is never
used.  Two elimination routines live here:

  * `smith_normal_form` -- dense, with unimodular transforms U, V such that
    U*A*V = D; deterministic pivot policy.
  * `invariant_factors` -- transform-free path that eliminates unit pivots
    sparsely first (boundary matrices of subdivided complexes are huge but
    almost entirely unit-pivoted) and hands the small leftover block to the
    dense routine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import InvalidComplexError
from .presentations import Presentation


class IntegerMatrix:
    """A rows x cols integer matrix, row-major, mutable entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Optional[Sequence[Sequence[int]]] = None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.entries = [[0] * cols for _ in range(rows)]
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ValueError("entry grid does not match declared dimensions")
            self.entries = [list(r) for r in entries]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        return cls(r, c, rows)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        m = cls(n, n)
        for i in range(n):
            m.entries[i][i] = 1
        return m

    def copy(self) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, self.entries)

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, IntegerMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = IntegerMatrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.entries[i]
            orow = out.entries[i]
            for k, aik in enumerate(row):
                if aik:
                    brow = other.entries[k]
                    for j in range(other.cols):
                        if brow[j]:
                            orow[j] += aik * brow[j]
        return out

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class SnfResult:
    """D = U*A*V diagonal with d1 | d2 | ...; U, V unimodular."""

    D: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        d = []
        for i in range(min(self.D.rows, self.D.cols)):
            v = self.D.entries[i][i]
            if v:
                d.append(abs(v))
        return tuple(d)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank plus cyclic torsion factors forming a divisibility chain."""

    rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def _det(entries: List[List[int]]) -> int:
    """Exact determinant by cofactor expansion (small matrices only)."""
    n = len(entries)
    if n == 0:
        return 1
    if n == 1:
        return entries[0][0]
    if n == 2:
        return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]
    total = 0
    rest = entries[1:]
    for j, a in enumerate(entries[0]):
        if not a:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rest]
        total += (-1) ** j * a * _det(minor)
    return total


def det(m: IntegerMatrix) -> int:
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    return _det(m.entries)


def smith_normal_form(a: IntegerMatrix) -> SnfResult:
    """Diagonalise by unimodular row/column operations.

    Pivot policy: smallest nonzero absolute value in the remaining block,
    ties broken row-major.  The returned D has nonnegative diagonal with
    d1 | d2 | ...; U*A*V = D holds exactly.
    """
    d = a.copy()
    u = IntegerMatrix.identity(a.rows)
    v = IntegerMatrix.identity(a.cols)
    m, n = a.rows, a.cols

    def row_swap(i, j):
        d.entries[i], d.entries[j] = d.entries[j], d.entries[i]
        u.entries[i], u.entries[j] = u.entries[j], u.entries[i]

    def col_swap(i, j):
        for row in d.entries:
            row[i], row[j] = row[j], row[i]
        for row in v.entries:
            row[i], row[j] = row[j], row[i]

    def row_add(src, dst, c):
        # dst += c * src
        ds, dd = d.entries[src], d.entries[dst]
        for k in range(n):
            dd[k] += c * ds[k]
        us, ud = u.entries[src], u.entries[dst]
        for k in range(m):
            ud[k] += c * us[k]

    def col_add(src, dst, c):
        for row in d.entries:
            row[dst] += c * row[src]
        for row in v.entries:
            row[dst] += c * row[src]

    def negate_row(i):
        d.entries[i] = [-x for x in d.entries[i]]
        u.entries[i] = [-x for x in u.entries[i]]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                val = abs(d.entries[i][j])
                if val and (best is None or val < best[0]):
                    best = (val, i, j)
        return best

    t = 0
    while True:
        found = find_pivot(t)
        if found is None:
            break
        _, pi, pj = found
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)

        while True:
            # Clear column t below/above the pivot.
            dirty = False
            piv = d.entries[t][t]
            for i in range(t, m):
                if i == t or d.entries[i][t] == 0:
                    continue
                q = d.entries[i][t] // piv
                if q:
                    row_add(t, i, -q)
                if d.entries[i][t]:
                    # Remainder smaller than the pivot: promote it.
                    row_swap(t, i)
                    dirty = True
                    break
            if dirty:
                continue
            piv = d.entries[t][t]
            for j in range(t, n):
                if j == t or d.entries[t][j] == 0:
                    continue
                q = d.entries[t][j] // piv
                if q:
                    col_add(t, j, -q)
                if d.entries[t][j]:
                    col_swap(t, j)
                    dirty = True
                    break
            if dirty:
                continue
            # Row and column are clear; force divisibility of the rest.
            piv = d.entries[t][t]
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d.entries[i][j] % piv != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(offender, t, 1)
        if d.entries[t][t] < 0:
            negate_row(t)
        t += 1
        if t == min(m, n):
            break

    return SnfResult(D=d, U=u, V=v)


def _dense_invariant_factors(rows: List[List[int]]) -> List[int]:
    if not rows or not rows[0]:
        return []
    res = smith_normal_form(IntegerMatrix.from_rows(rows))
    return list(res.invariant_factors)


def invariant_factors(rows: List[List[int]]) -> List[int]:
    """Invariant factors of the matrix given as a list of rows.

    Sparse phase: eliminate +-1 pivots (shortest rows first, then least
    column fill) with exact integer row operations; each unit pivot
    contributes a leading invariant factor 1.  Rows without unit entries
    are parked and revisited when touched; whatever survives goes to the
    dense SNF.  All operations are unimodular, so the concatenation is the
    true invariant-factor chain.
    """
    import heapq

    rowmap: dict = {}
    colcount: dict = {}
    columns: dict = {}  # col -> set of row indices with a nonzero entry
    for i, row in enumerate(rows):
        entries = {j: v for j, v in enumerate(row) if v}
        if entries:
            rowmap[i] = entries
            for j in entries:
                colcount[j] = colcount.get(j, 0) + 1
                columns.setdefault(j, set()).add(i)
    version = {i: 0 for i in rowmap}
    heap = [(len(r), i, 0) for i, r in rowmap.items()]
    heapq.heapify(heap)
    units = 0

    def touch(i):
        version[i] += 1
        heapq.heappush(heap, (len(rowmap[i]), i, version[i]))

    while heap:
        _, pi, ver = heapq.heappop(heap)
        if pi not in rowmap or version[pi] != ver:
            continue
        prow = rowmap[pi]
        unit_cols = [j for j, v in prow.items() if v in (1, -1)]
        if not unit_cols:
            continue  # parked; re-pushed if a later elimination touches it
        pj = min(unit_cols, key=lambda j: (colcount[j], j))
        pval = prow[pj]
        del rowmap[pi]
        for j in prow:
            colcount[j] -= 1
            columns[j].discard(pi)
        for i in sorted(columns.get(pj, ())):
            row = rowmap.get(i)
            if row is None:
                continue
            coeff = row.get(pj)
            if coeff is None:
                continue
            factor = -coeff * pval  # row -= (coeff / pval) * prow, pval = +-1
            for j, v in prow.items():
                old = row.get(j, 0)
                new = old + factor * v
                if old == 0 and new != 0:
                    row[j] = new
                    colcount[j] = colcount.get(j, 0) + 1
                    columns.setdefault(j, set()).add(i)
                elif old != 0 and new == 0:
                    del row[j]
                    colcount[j] -= 1
                    columns[j].discard(i)
                elif new != 0:
                    row[j] = new
            if not row:
                del rowmap[i]
            else:
                touch(i)
        units += 1

    leftover_cols = sorted({j for row in rowmap.values() for j in row})
    colidx = {j: k for k, j in enumerate(leftover_cols)}
    dense = []
    for i in sorted(rowmap):
        row = [0] * len(leftover_cols)
        for j, v in rowmap[i].items():
            row[colidx[j]] = v
        dense.append(row)
    rest = _dense_invariant_factors(dense)
    return [1] * units + rest


def gcd_of_minors_factors(a: IntegerMatrix) -> Tuple[int, ...]:
    """Independent oracle: d_k = gcd(k-minors) / gcd((k-1)-minors).

    Exponential in matrix size; meant for matrices up to ~5x5.
    """
    from itertools import combinations
    from math import gcd

    m, n = a.rows, a.cols
    factors = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows_sel in combinations(range(m), k):
            for cols_sel in combinations(range(n), k):
                sub = [[a.entries[i][j] for j in cols_sel] for i in rows_sel]
                g = gcd(g, _det(sub))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return tuple(factors)


def relation_matrix(p: Presentation) -> IntegerMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator
    in alphabet order."""
    cols = len(p.alphabet)
    rows = []
    for rel in p.relators:
        row = [0] * cols
        for sym, exp in rel.letters:
            row[p.alphabet.index(sym)] += exp
        rows.append(row)
    return IntegerMatrix(len(rows), cols, rows) if rows else IntegerMatrix(0, cols)


def abelianization(p: Presentation) -> AbelianGroup:
    """H_1 of the presented group: cokernel of the exponent-sum matrix."""
    mat = relation_matrix(p)
    factors = [f for f in invariant_factors(mat.entries) if f]
    rank = len(p.alphabet) - len(factors)
    torsion = tuple(f for f in factors if f > 1)
    return AbelianGroup(rank, torsion)


@dataclass(frozen=True)
class ChainComplexData:
    """Boundary matrices d1: C1 -> C0 and d2: C2 -> C1 (rows index the
    target basis, columns the source basis)."""

    d1: IntegerMatrix
    d2: IntegerMatrix

    @property
    def n0(self) -> int:
        return self.d1.rows

    @property
    def n1(self) -> int:
        return self.d1.cols

    @property
    def n2(self) -> int:
        return self.d2.cols

    def check_composition(self) -> None:
        if self.d2.rows != self.d1.cols:
            raise InvalidComplexError("boundary matrix dimensions do not compose")
        prod = self.d1 @ self.d2
        if any(any(row) for row in prod.entries):
            raise InvalidComplexError("d1 * d2 != 0")


def complex_homology(c: ChainComplexData) -> Tuple[AbelianGroup, AbelianGroup, AbelianGroup]:
    """(H0, H1, H2) of a 2-dimensional chain complex over Z.

    H_i = ker d_i / im d_{i+1}; ranks from matrix ranks, torsion of H_i
    from the invariant factors of d_{i+1}.
    """
    c.check_composition()
    f1 = [f for f in invariant_factors(c.d1.entries) if f]
    f2 = [f for f in invariant_factors(c.d2.entries) if f]
    r1, r2 = len(f1), len(f2)
    h0 = AbelianGroup(c.n0 - r1, tuple(f for f in f1 if f > 1))
    h1 = AbelianGroup(c.n1 - r1 - r2, tuple(f for f in f2 if f > 1))
    h2 = AbelianGroup(c.n2 - r2, tuple())
    return h0, h1, h2
