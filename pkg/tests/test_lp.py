from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hilbstab import linalg
from hilbstab.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp


def test_small_lp_optimum():
    # max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
    A = [[1, 2, 1, 0], [3, 1, 0, 1]]
    res = solve_lp(A, [4, 6], [1, 1, 0, 0], maximize=True)
    assert res.status == OPTIMAL
    assert res.value == Fraction(14, 5)
    assert res.x[:2] == [Fraction(8, 5), Fraction(6, 5)] or tuple(res.x[:2]) == (Fraction(8, 5), Fraction(6, 5))


def test_infeasible_has_farkas_certificate():
    A = [[1, 1], [1, 1]]
    b = [1, 2]
    res = solve_lp(A, b, [0, 0])
    assert res.status == INFEASIBLE
    y = res.farkas
    # y·A >= 0 componentwise and y·b < 0
    assert all(sum(y[i] * A[i][j] for i in range(2)) >= 0 for j in range(2))
    assert sum(yi * bi for yi, bi in zip(y, b)) < 0


def test_unbounded():
    res = solve_lp([[1, -1]], [0], [1, 0], maximize=True)
    assert res.status == UNBOUNDED


def test_rank_nullspace_determinant():
    M = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert linalg.rank(M) == 2
    assert linalg.determinant(M) == 0
    for v in linalg.nullspace(M, 3):
        assert all(linalg.dot(r, v) == 0 for r in M)
    assert linalg.affine_dimension([(0, 0), (1, 1), (2, 2)]) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_lp_feasibility_agrees_with_certificates(A, b):
    res = solve_lp(A, b, [0, 0, 0])
    if res.status == OPTIMAL:
        assert all(x >= 0 for x in res.x)
        assert [sum(a * x for a, x in zip(row, res.x)) for row in A] == [Fraction(v) for v in b]
    else:
        assert res.status == INFEASIBLE
        y = res.farkas
        assert all(sum(y[i] * A[i][j] for i in range(3)) >= 0 for j in range(3))
        assert sum(yi * bi for yi, bi in zip(y, b)) < 0
