import math
import random
from itertools import combinations

from hypothesis import given, strategies as st

from fpverify import homology_h1, parse_presentation, smith_normal_form


def det(m):
    """Cofactor-expansion determinant (exact, small matrices only)."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det(minor)
    return total


def minor_gcd_invariants(m, rows, cols):
    """Invariant factors via gcd of k x k minors: d_1...d_k = g_k with
    g_k = gcd of all k x k minors (g_0 = 1)."""
    out = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                sub = [[m[i][j] for j in ci] for i in ri]
                g = math.gcd(g, det(sub))
        if g == 0:
            out.append(0)
            continue
        out.append(g // prev)
        prev = g
    # pad trailing zeros once a zero appears (rank bound reached)
    for i in range(1, len(out)):
        if out[i - 1] == 0:
            out[i] = 0
    return tuple(out)


def check_against_oracle(m):
    rows, cols = len(m), len(m[0]) if m else 0
    snf = smith_normal_form(m)
    assert snf.diagonal == minor_gcd_invariants(m, rows, cols)
    for i in range(snf.rank - 1):
        assert snf.diagonal[i + 1] % snf.diagonal[i] == 0


def test_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == (1, 6)
    assert smith_normal_form([[0, 0, 0], [0, 0, 0]]).diagonal == (0, 0)
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == \
        (1, 1, 1)


def test_empty_and_degenerate():
    assert smith_normal_form([]).diagonal == ()
    assert smith_normal_form([[5]]).diagonal == (5,)
    assert smith_normal_form([[-5]]).diagonal == (5,)


def test_transforms_reconstruct():
    m = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    snf = smith_normal_form(m, transforms=True)
    u, v = snf.row_transform, snf.col_transform
    n, c = len(m), len(m[0])
    ua = [[sum(u[i][k] * m[k][j] for k in range(n)) for j in range(c)]
          for i in range(n)]
    uav = [[sum(ua[i][k] * v[k][j] for k in range(c)) for j in range(c)]
           for i in range(n)]
    for i in range(n):
        for j in range(c):
            expected = snf.diagonal[i] if i == j and i < len(snf.diagonal) else 0
            assert uav[i][j] == expected
    assert abs(det(u)) == 1 and abs(det(v)) == 1


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-4, 4), min_size=c, max_size=c),
            min_size=r, max_size=r)))


@given(matrices)
def test_matches_minor_gcd_oracle(m):
    check_against_oracle(m)


@given(matrices)
def test_invariance_under_permutation_and_sign(m):
    rng = random.Random(sum(sum(abs(x) for x in row) for row in m))
    base = smith_normal_form(m).diagonal
    rows = m[:]
    rng.shuffle(rows)
    cols = list(range(len(m[0])))
    rng.shuffle(cols)
    shuffled = [[row[j] for j in cols] for row in rows]
    assert smith_normal_form(shuffled).diagonal == base
    flipped = [[-x for x in row] for row in m]
    assert smith_normal_form(flipped).diagonal == base


def test_h1_examples():
    h1 = homology_h1(parse_presentation("< a | a^2 >"))
    assert (h1.free_rank, h1.torsion) == (0, (2,))
    h1 = homology_h1(parse_presentation("< a, b | >"))
    assert (h1.free_rank, h1.torsion) == (2, ())
    h1 = homology_h1(parse_presentation("< a, b | a^2 b^-4, a b^2 >"))
    assert h1.free_rank == 0 and h1.torsion == (8,)


def test_h1_trivial_flag():
    assert homology_h1(parse_presentation("< a | a >")).is_trivial()
    assert not homology_h1(parse_presentation("< a | a^3 >")).is_trivial()
