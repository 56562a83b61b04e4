"""Polynomial matrices, exact determinants and the determinant builders.

Matrix entries are produced from a :class:`FamilyValues` bundle so that the
same builder yields a :class:`PolyMatrix` of Laurent polynomials or a plain
nested list of field elements at a point.
"""
from __future__ import annotations

import enum
import logging
from fractions import Fraction
from typing import Callable, Sequence

from .cyclofield import Cyclo
from .laurent import DivisibilityError, LaurentPoly, exact_divide
from . import symfunc as sf

log = logging.getLogger(__name__)

__all__ = [
    "MatrixKind",
    "DetAlgo",
    "FamilyValues",
    "PolyMatrix",
    "SizeRuleError",
    "build_matrix",
    "build_entries",
    "matrix_size",
    "det",
    "det_generic",
    "det_field",
    "centro_blocks",
    "transform_T",
    "reduction_matrices",
    "row_column_reduce",
]


class MatrixKind(enum.Enum):
    E_STAIRCASE = "e-staircase"
    E_STAIRCASE_STRIPPED = "e-staircase-stripped"
    EPS_DOUBLED = "eps-doubled"
    V_MINUS = "v-minus"
    W_PLUS = "w-plus"
    MU = "mu"
    NU_DIFF = "nu-diff"
    LAMBDA_DIFF = "lambda-diff"


class DetAlgo(enum.Enum):
    COFACTOR = "cofactor"
    BAREISS = "bareiss"


class SizeRuleError(ValueError):
    pass


class FamilyValues:
    """All family members of one variable list, in one ring.

    Symbolic bundles reuse the cached constructors of :mod:`symfunc`;
    numeric bundles compute from the point values directly.
    """

    def __init__(self, xs: Sequence, one, vars: Sequence[str] | None = None):
        self.xs = list(xs)
        self.n = len(self.xs)
        self.one = one
        self.zero = one * 0
        self.vars = tuple(vars) if vars is not None else None
        self._cache: dict[str, object] = {}

    @classmethod
    def symbolic(cls, vars: Sequence[str]) -> "FamilyValues":
        vars = tuple(vars)
        return cls(LaurentPoly.gens(vars), LaurentPoly.const(1, vars), vars)

    @classmethod
    def at_point(cls, values: Sequence[Cyclo]) -> "FamilyValues":
        return cls([Cyclo.coerce(v) for v in values], Cyclo(1))

    def _get(self, name: str, build: Callable):
        v = self._cache.get(name)
        if v is None:
            v = self._cache[name] = build()
        return v

    def E(self, m: int):
        if self.vars is not None:
            return sf.elem_E(self.vars, m)
        lst = self._get("E", lambda: sf.esp_values(self.xs, self.one))
        return lst[m] if 0 <= m < len(lst) else self.zero

    def eps(self, m: int):
        if self.vars is not None:
            return sf.eps(self.vars, m)
        lst = self._get("eps", lambda: sf.eps_values(self.xs, self.one))
        return lst[m] if 0 <= m < len(lst) else self.zero

    def mu(self, i: int):
        if self.vars is not None:
            return sf.mu(self.vars, i)
        return self._get("mu", lambda: sf.mu_values(self.xs, self.one)).get(i, self.zero)

    def nu(self, i: int):
        if self.vars is not None:
            return sf.nu(self.vars, i)
        return self._get("nu", lambda: sf.nu_values(self.xs, self.one)).get(i, self.zero)

    def lam(self, i: int):
        if i < 0:
            return self.zero
        if self.vars is not None:
            return sf.lam(self.vars, i)
        return self._get("lam", lambda: sf.lam_values(self.xs, self.one)).get(i, self.zero)


class PolyMatrix:
    """Rectangular matrix of Laurent polynomials over one variable list."""

    __slots__ = ("rows", "cols", "vars", "entries")

    def __init__(self, entries: Sequence[Sequence[LaurentPoly]], vars: Sequence[str]):
        self.vars = tuple(vars)
        rows = [list(r) for r in entries]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        for r in rows:
            for i, x in enumerate(r):
                if not isinstance(x, LaurentPoly):
                    r[i] = LaurentPoly.const(x, self.vars)
                elif x.vars != self.vars:
                    r[i] = x.embed(self.vars)
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    @classmethod
    def identity(cls, n: int, vars: Sequence[str]) -> "PolyMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], vars)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.vars == other.vars and self.entries == other.entries

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        zero = LaurentPoly.zero(self.vars)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.vars)

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix([[x * c for x in r] for r in self.entries], self.vars)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.vars)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def det(self, algo: "DetAlgo | str" = DetAlgo.COFACTOR) -> LaurentPoly:
        return det(self, algo)

    def to_text(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[x.to_json()["terms"] for x in r] for r in self.entries],
        }

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, vars={self.vars})"


# -- builders --------------------------------------------------------------

def matrix_size(kind: MatrixKind | str, n: int) -> int:
    """Side length of the ``kind`` matrix over ``n`` variables."""
    kind = MatrixKind(kind)
    if n < 0:
        raise SizeRuleError("variable count must be nonnegative")
    if kind in (MatrixKind.E_STAIRCASE, MatrixKind.V_MINUS, MatrixKind.W_PLUS):
        if n < 1:
            raise SizeRuleError(f"{kind.value} needs at least one variable")
        return n - 1
    if kind is MatrixKind.E_STAIRCASE_STRIPPED:
        if n < 2:
            raise SizeRuleError(f"{kind.value} needs at least two variables")
        return n - 2
    if kind is MatrixKind.EPS_DOUBLED:
        if n < 1:
            raise SizeRuleError("eps-doubled needs at least one variable")
        return 2 * n - 2
    if kind is MatrixKind.MU:
        return n // 2 if n % 2 == 0 else (n - 1) // 2
    if kind is MatrixKind.NU_DIFF:
        return n // 2 if n % 2 == 0 else (n - 1) // 2
    if kind is MatrixKind.LAMBDA_DIFF:
        return (n - 1) // 2 if n % 2 else max(n // 2 - 1, 0)
    raise SizeRuleError(f"unknown kind {kind}")


def build_entries(kind: MatrixKind | str, fam: FamilyValues) -> list[list]:
    """Entries of the ``kind`` matrix as ring elements of ``fam``."""
    kind = MatrixKind(kind)
    n = fam.n
    size = matrix_size(kind, n)
    rng = range(size)
    if kind is MatrixKind.E_STAIRCASE:
        # E_{3j-2i}, 1 <= i, j <= n-1
        return [[fam.E(3 * (j + 1) - 2 * (i + 1)) for j in rng] for i in rng]
    if kind is MatrixKind.E_STAIRCASE_STRIPPED:
        return [[fam.E(3 * (j + 1) - 2 * (i + 1) + 1) for j in rng] for i in rng]
    if kind is MatrixKind.EPS_DOUBLED:
        return [[fam.eps(3 * (j + 1) - 2 * (i + 1)) for j in rng] for i in rng]
    if kind is MatrixKind.V_MINUS:
        return [
            [fam.eps(3 * j - 2 * i) - fam.eps(3 * j + 2 * i - 4 * n) for j in range(1, n)]
            for i in range(1, n)
        ]
    if kind is MatrixKind.W_PLUS:
        return [
            [fam.eps(3 * j - 2 * i) + fam.eps(3 * j + 2 * i - 4 * n) for j in range(n, 2 * n - 1)]
            for i in range(n, 2 * n - 1)
        ]
    if kind is MatrixKind.MU:
        if n % 2 == 0:
            return [[fam.mu(3 * i - j + 1) for j in rng] for i in rng]
        return [[fam.mu(3 * i - j) for j in range(1, size + 1)] for i in range(1, size + 1)]
    if kind is MatrixKind.NU_DIFF:
        if n % 2:
            return [[fam.nu(3 * i - j + 1) - fam.nu(3 * i + j + 3 - n) for j in rng] for i in rng]
        return [[fam.nu(3 * i - j + 2) - fam.nu(3 * i + j + 2 - n) for j in rng] for i in rng]
    if kind is MatrixKind.LAMBDA_DIFF:
        r1 = range(1, size + 1)
        return [[fam.lam(3 * i - j) - fam.lam(3 * i + j) for j in r1] for i in r1]
    raise SizeRuleError(f"unknown kind {kind}")


def build_matrix(kind: MatrixKind | str, vars: Sequence[str]) -> PolyMatrix:
    vars = tuple(vars)
    return PolyMatrix(build_entries(kind, FamilyValues.symbolic(vars)), vars)


# -- determinants ------------------------------------------------------------

def det_generic(rows: Sequence[Sequence], zero, one):
    """Laplace expansion along columns, memoised on the set of unused rows.

    Works over any commutative ring; cost is O(n 2^n) ring multiplications.
    """
    n = len(rows)
    if n == 0:
        return one
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    # minors[mask] = det of rows in mask, columns n-popcount(mask)..n-1
    minors = {0: one}
    for col in range(n - 1, -1, -1):
        nxt = {}
        for mask, sub in minors.items():
            if not sub:
                continue
            for r in range(n):
                bit = 1 << r
                if mask & bit:
                    continue
                a = rows[r][col]
                if not a:
                    continue
                # sign: position of r among rows of mask | bit
                pos = bin(mask & (bit - 1)).count("1")
                term = a * sub
                if pos % 2:
                    term = -term
                m2 = mask | bit
                prev = nxt.get(m2)
                nxt[m2] = term if prev is None else prev + term
        minors = nxt
        if not minors:
            return zero
    return minors.get((1 << n) - 1, zero)


def det_field(rows: Sequence[Sequence[Cyclo]]) -> Cyclo:
    """Gaussian elimination over Q(w)."""
    n = len(rows)
    m = [[Cyclo.coerce(x) for x in r] for r in rows]
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    result = Cyclo(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Cyclo(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        p = m[c][c]
        result = result * p
        pinv = p.inv()
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f = f * pinv
                row_c = m[c]
                row_r = m[r]
                for k in range(c + 1, n):
                    if row_c[k]:
                        row_r[k] = row_r[k] - f * row_c[k]
    return result


def _det_bareiss(m: PolyMatrix) -> LaurentPoly:
    n = m.rows
    a = [list(r) for r in m.entries]
    one = LaurentPoly.const(1, m.vars)
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return LaurentPoly.zero(m.vars)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = exact_divide(num, prev) if prev != one else num
            a[i][k] = LaurentPoly.zero(m.vars)
        prev = pivot
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def det(m: PolyMatrix, algo: DetAlgo | str = DetAlgo.COFACTOR) -> LaurentPoly:
    """Exact determinant of a square polynomial matrix."""
    algo = DetAlgo(algo)
    if not m.is_square():
        raise ValueError(f"determinant of a {m.rows}x{m.cols} matrix")
    one = LaurentPoly.const(1, m.vars)
    if m.rows == 0:
        return one
    if algo is DetAlgo.BAREISS:
        try:
            return _det_bareiss(m)
        except DivisibilityError:
            log.warning("Bareiss step was not exact; falling back to cofactor expansion")
    return det_generic(m.entries, LaurentPoly.zero(m.vars), one)


# -- centrosymmetric block transformation ------------------------------------

def transform_T(k: int, vars: Sequence[str]) -> tuple[PolyMatrix, PolyMatrix]:
    """``T = [[-I, J], [I, J]]`` and its inverse ``1/2 [[-I, I], [J, J]]``."""
    n = 2 * k
    T = [[0] * n for _ in range(n)]
    Ti = [[0] * n for _ in range(n)]
    half = Fraction(1, 2)
    for i in range(k):
        T[i][i] = -1
        T[i][k + (k - 1 - i)] = 1
        T[k + i][i] = 1
        T[k + i][k + (k - 1 - i)] = 1
        Ti[i][i] = -half
        Ti[i][k + i] = half
        Ti[k + i][k - 1 - i] = half
        Ti[k + i][k + (k - 1 - i)] = half
    return PolyMatrix(T, vars), PolyMatrix(Ti, vars)


def centro_blocks(m: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix, int]:
    """Blocks of ``T m T^-1`` and the number of nonzero off-block entries."""
    if not m.is_square() or m.rows % 2:
        raise SizeRuleError("centro_blocks needs an even square matrix")
    k = m.rows // 2
    T, Ti = transform_T(k, m.vars)
    prod = T @ m @ Ti
    top = prod.submatrix(range(k), range(k))
    bottom = prod.submatrix(range(k, 2 * k), range(k, 2 * k))
    residue = sum(
        1
        for i in range(2 * k)
        for j in range(2 * k)
        if (i < k) != (j < k) and prod[i, j]
    )
    return top, bottom, residue


def is_centrosymmetric(m: PolyMatrix) -> bool:
    n = m.rows
    return all(m[i, j] == m[n - 1 - i, n - 1 - j] for i in range(n) for j in range(n))


# -- mu-matrix reduction -------------------------------------------------------

def reduction_matrices(size: int, z: LaurentPoly) -> tuple[PolyMatrix, PolyMatrix]:
    """Lower-triangular ``A`` with entries ``z^(6(i-j))`` and bidiagonal ``B`` with ``-z^2``."""
    vars = z.vars
    zero = LaurentPoly.zero(vars)
    one = LaurentPoly.const(1, vars)
    z6 = z ** 6
    A = [[zero] * size for _ in range(size)]
    B = [[zero] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1):
            A[i][j] = z6 ** (i - j)
        B[i][i] = one
        if i + 1 < size:
            B[i + 1][i] = -(z * z)
    return PolyMatrix(A, vars), PolyMatrix(B, vars)


def row_column_reduce(m: PolyMatrix, z: str) -> tuple[PolyMatrix, LaurentPoly, PolyMatrix]:
    """Apply ``A m B`` to the substituted even-size mu matrix.

    Returns the leading ``(size-1)`` block, the corner entry, and the full
    reduced matrix (whose last row should vanish off the corner).
    """
    if not m.is_square() or m.rows == 0:
        raise SizeRuleError("row_column_reduce needs a nonempty square matrix")
    zp = LaurentPoly.var(z, m.vars)
    A, B = reduction_matrices(m.rows, zp)
    red = A @ m @ B
    s = m.rows - 1
    return red.submatrix(range(s), range(s)), red[s, s], red
