"""Smith normal form over the integers and first homology of a presentation.

Matrices are plain lists of lists of Python ints (arbitrary precision),
row-major.  Pivoting picks the smallest nonzero absolute value, ties by
position, which keeps entry growth in check and is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import Presentation, abelianized_relation_matrix

Matrix = list[list[int]]


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    rank: int
    row_transform: Matrix | None = None   # U with U*A*V diagonal
    col_transform: Matrix | None = None   # V


@dataclass(frozen=True)
class H1:
    """Abelian group descriptor: Z^free_rank x Z/d1 x ... (nontrivial di)."""
    free_rank: int
    torsion: tuple[int, ...]

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Matrix, transforms: bool = False) -> SmithForm:
    """Diagonalize by unimodular row/column operations; nonnegative diagonal
    with each entry dividing the next."""
    a = [row[:] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise ValueError("ragged matrix")
    u = _identity(rows) if transforms else None
    v = _identity(cols) if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        if u is not None:
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        if v is not None:
            for row in v:
                row[dst] += k * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (pivot is None
                                     or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:  # remainder smaller than pivot
                        swap_rows(t, i)
                        dirty = True
            # clear row t
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce divisibility chain d_i | d_{i+1}: replace each offending pair
    # with (gcd, lcm) via a 2x2 block elimination
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            if a[i + 1][i + 1] % a[i][i] != 0:
                add_col(i + 1, i, 1)  # puts d_{i+1} below the pivot
                while a[i + 1][i] != 0:  # Euclid on rows i, i+1
                    q = a[i][i] // a[i + 1][i]
                    add_row(i + 1, i, -q)
                    swap_rows(i, i + 1)
                q = a[i][i + 1] // a[i][i]  # exact: pivot is now the pair gcd
                add_col(i, i + 1, -q)
                if a[i][i] < 0:
                    negate_row(i)
                if a[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                assert a[i][i + 1] == 0 and a[i + 1][i] == 0
                assert a[i + 1][i + 1] % a[i][i] == 0
                changed = True

    diagonal = tuple(a[i][i] for i in range(min(rows, cols)))
    rank = sum(1 for d in diagonal if d != 0)
    return SmithForm(diagonal=diagonal, rank=rank,
                     row_transform=u, col_transform=v)


def homology_h1(p: Presentation) -> H1:
    """First homology (abelianization) of the presented group."""
    matrix = abelianized_relation_matrix(p)
    if not matrix or not p.generators:
        return H1(free_rank=len(p.generators), torsion=())
    snf = smith_normal_form(matrix)
    torsion = tuple(d for d in snf.diagonal if d not in (0, 1))
    return H1(free_rank=len(p.generators) - snf.rank, torsion=torsion)
