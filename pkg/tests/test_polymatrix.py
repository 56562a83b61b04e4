import random

import pytest

from loopsum.cyclofield import Cyclo
from loopsum.laurent import LaurentPoly, evaluate, random_point
from loopsum import symfunc as sf
from loopsum.polymatrix import (
    DetAlgo,
    FamilyValues,
    MatrixKind,
    PolyMatrix,
    SizeRuleError,
    build_entries,
    build_matrix,
    centro_blocks,
    det,
    det_field,
    is_centrosymmetric,
    matrix_size,
    reduction_matrices,
    row_column_reduce,
    transform_T,
)

Z3 = sf.zvars(3)


def test_staircase_small():
    m = build_matrix(MatrixKind.E_STAIRCASE, Z3)
    assert m.rows == m.cols == 2
    assert m[0, 0] == sf.elem_E(Z3, 1)
    assert m[0, 1] == 0 and m[1, 0] == 0
    assert m[1, 1] == sf.elem_E(Z3, 2)
    want = sf.elem_E(Z3, 1) * sf.elem_E(Z3, 2)
    assert det(m) == want
    assert det(m, DetAlgo.BAREISS) == want


def test_v_minus_and_mu_at_two_variables():
    v = sf.zvars(2)
    m = build_matrix(MatrixKind.V_MINUS, v)
    assert m.rows == 1 and m[0, 0] == sf.eps(v, 1)
    m = build_matrix(MatrixKind.MU, v)
    assert m.rows == 1 and m[0, 0] == sf.mu(v, 1)


def test_identity_determinant():
    assert det(PolyMatrix.identity(4, Z3)) == 1
    assert det(PolyMatrix.identity(4, Z3), "bareiss") == 1


@pytest.mark.parametrize("kind,n,size", [
    ("e-staircase", 5, 4),
    ("e-staircase-stripped", 5, 3),
    ("eps-doubled", 3, 4),
    ("mu", 6, 3),
    ("mu", 7, 3),
    ("lambda-diff", 7, 3),
    ("lambda-diff", 6, 2),
])
def test_size_rules(kind, n, size):
    assert matrix_size(kind, n) == size


def test_size_rule_errors():
    with pytest.raises(SizeRuleError):
        matrix_size("e-staircase", 0)
    with pytest.raises(SizeRuleError):
        matrix_size("e-staircase-stripped", 1)
    with pytest.raises(SizeRuleError):
        matrix_size("mu", -1)
    with pytest.raises(ValueError):
        det(PolyMatrix([[1, 2]], Z3))
    with pytest.raises(SizeRuleError):
        centro_blocks(PolyMatrix.identity(3, Z3))


def _random_matrix(n, vars, rng):
    gens = LaurentPoly.gens(vars)
    def entry():
        p = LaurentPoly.const(rng.randint(-3, 3), vars)
        for _ in range(rng.randint(0, 2)):
            g = rng.choice(gens)
            p = p + g ** rng.randint(-1, 2) * rng.randint(-2, 2)
        return p
    return PolyMatrix([[entry() for _ in range(n)] for _ in range(n)], vars)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_cofactor_matches_bareiss(n):
    rng = random.Random(n)
    for _ in range(3):
        m = _random_matrix(n, ("x", "y"), rng)
        assert det(m, DetAlgo.COFACTOR) == det(m, DetAlgo.BAREISS)


def test_multiplicative():
    rng = random.Random(11)
    a = _random_matrix(3, ("x", "y"), rng)
    b = _random_matrix(3, ("x", "y"), rng)
    assert det(a @ b) == det(a) * det(b)


def test_zero_row():
    rng = random.Random(2)
    m = _random_matrix(4, ("x",), rng)
    m.entries[2] = [LaurentPoly.zero(("x",))] * 4
    assert det(m) == 0


@pytest.mark.parametrize("kind", ["e-staircase", "mu", "lambda-diff", "nu-diff", "w-plus"])
def test_field_determinant_matches_symbolic(kind):
    vars = sf.zvars(5)
    pt = random_point(vars, random.Random(kind))
    sym = det(build_matrix(kind, vars))
    rows = build_entries(kind, FamilyValues([pt[v] for v in vars], Cyclo(1)))
    assert det_field(rows) == evaluate(sym, pt)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_transform_inverse(k):
    T, Ti = transform_T(k, ("x",))
    assert T @ Ti == PolyMatrix.identity(2 * k, ("x",))
    assert Ti @ T == PolyMatrix.identity(2 * k, ("x",))


def test_centro_blocks_example():
    vars = tuple("abcdefgh")
    a, b, c, d, e, f, g, h = LaurentPoly.gens(vars)
    m = PolyMatrix([[a, b, c, d], [e, f, g, h], [h, g, f, e], [d, c, b, a]], vars)
    assert is_centrosymmetric(m)
    top, bottom, residue = centro_blocks(m)
    assert top == PolyMatrix([[a - d, b - c], [e - h, f - g]], vars)
    assert bottom == PolyMatrix([[a + d, b + c], [e + h, f + g]], vars)
    assert residue == 0
    assert det(m) == det(top) * det(bottom)


def test_eps_doubled_residue_is_reported():
    m = build_matrix(MatrixKind.EPS_DOUBLED, sf.zvars(2))
    top, bottom, residue = centro_blocks(m)
    assert isinstance(residue, int)
    assert not is_centrosymmetric(m)
    assert residue > 0


@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_reduction_matrices_are_unimodular(size):
    z = LaurentPoly.var("z", ("z",))
    A, B = reduction_matrices(size, z)
    assert det(A) == 1 and det(B) == 1


def test_row_column_reduce_at_four_variables():
    names = ("z1", "z2", "z")
    z1, z2, z = LaurentPoly.gens(names)
    one = LaurentPoly.const(1, names)
    sub = build_entries(MatrixKind.MU, FamilyValues([z1, z2, -z, z], one))
    lead, corner, red = row_column_reduce(PolyMatrix(sub, names), "z")
    assert corner == sf.Pp_gen(("z1", "z2"), "z")
    assert lead == PolyMatrix(build_entries(MatrixKind.MU, FamilyValues([z1, z2], one)), names)
    assert red[1, 0] == 0
