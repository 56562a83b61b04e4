"""Symmetric polynomial families and their generating polynomials.

Every family is written once over a generic commutative ring: the ``*_values``
functions take a list of ring elements (``LaurentPoly`` generators for
symbolic work, ``Cyclo`` numbers for evaluation at a point) plus the ring's
``one``.  The public constructors taking a variable list are thin wrappers.

Index conventions: every family is zero outside its printed index range.
"""
from __future__ import annotations

import enum
from functools import lru_cache
from typing import Sequence

from .cyclofield import Cyclo, OMEGA, omega_pow
from .laurent import LaurentPoly, exact_divide

__all__ = [
    "Family",
    "zvars",
    "esp_values",
    "eps_values",
    "mu_values",
    "nu_values",
    "lam_values",
    "pp_gen_value",
    "p_open_gen_value",
    "pp_fixed_value",
    "p_open_fixed_value",
    "f_open_value",
    "f_periodic_value",
    "elem_E",
    "eps",
    "eps_conv",
    "F_open",
    "F_periodic",
    "Pp_gen",
    "P_open_gen",
    "Pp_fixed",
    "P_open_fixed",
    "Pp_fixed_oracle",
    "mu",
    "nu",
    "lam",
    "family",
    "SQRT_M3",
    "HALF_INV_SQRT_M3",
]

# w - 1/w = 2w - 1, whose square is -3
SQRT_M3 = OMEGA - OMEGA.inv()
HALF_INV_SQRT_M3 = (SQRT_M3 * 2).inv()


class Family(enum.Enum):
    E = "E"
    EPS = "eps"
    MU = "mu"
    NU = "nu"
    LAMBDA = "lambda"


def zvars(n: int, prefix: str = "z") -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


def _div(a, b):
    if isinstance(a, LaurentPoly) and isinstance(b, LaurentPoly):
        return exact_divide(a, b)
    return a / b


def _at(seq, i, zero=0):
    return seq[i] if 0 <= i < len(seq) else zero


# -- generic (ring-valued) constructions ---------------------------------------

def esp_values(xs: Sequence, one) -> list:
    """``[E_0, ..., E_n]`` of the elements ``xs``."""
    e = [one]
    for x in xs:
        nxt = e + [e[-1] * x]
        for m in range(len(e) - 1, 0, -1):
            nxt[m] = e[m] + e[m - 1] * x
        e = nxt
    return e


def eps_values(xs: Sequence, one) -> list:
    """``[eps_0, ..., eps_2n]``: elementary polynomials of ``xs`` and their inverses."""
    return esp_values(list(xs) + [x.inv() for x in xs], one)


def _omega_diff(k: int) -> Cyclo:
    # (w**k - w**-k) / (2 (w - 1/w))
    return (omega_pow(k) - omega_pow(-k)) * HALF_INV_SQRT_M3


def mu_values(xs: Sequence, one) -> dict[int, object]:
    """``{i: mu_i}`` for ``i = 1..L``, quadratic in the E's of ``xs``."""
    L = len(xs)
    E = esp_values(xs, one)
    out = {}
    for i in range(1, L + 1):
        acc = one * 0
        for m in range(0, L + 1):
            other = 2 * i - m - 1
            if not 0 <= other <= L:
                continue
            c = _omega_diff(2 * (i - m) - 1)
            if (L + m) % 2:
                c = -c
            acc = acc + E[m] * E[other] * c
        out[i] = acc
    return out


def nu_values(xs: Sequence, one) -> dict[int, object]:
    """``{i: nu_i}`` built from the eps's of ``xs`` (the open-boundary analogue of mu)."""
    L = len(xs)
    eps_ = eps_values(xs, one)
    out = {}
    for i in range(1, 2 * L + 1):
        acc = one * 0
        for j in range(0, 2 * L + 1):
            other = 2 * i - 1 - j
            if not 0 <= other <= 2 * L:
                continue
            c = _omega_diff(2 * (j - i) + 1)
            if (i + j) % 2:
                c = -c
            acc = acc + eps_[other] * eps_[j] * c
        if acc != 0:
            out[i] = acc
    return out


def lam_values(xs: Sequence, one) -> dict[int, object]:
    """``{i: lambda_i}`` with ``lambda_i = sum_{k=i}^{L-1} (-1)^k nu_{L-k}``."""
    L = len(xs)
    nu_ = nu_values(xs, one)
    zero = one * 0
    out = {}
    acc = zero
    for i in range(L - 1, -1, -1):
        term = nu_.get(L - i, zero)
        acc = acc + term if i % 2 == 0 else acc - term
        out[i] = acc
    return out


def pp_gen_value(xs: Sequence, t, one):
    """Periodic divisor with spectral variable ``t``."""
    w, wi = OMEGA, OMEGA.inv()
    p1 = one
    p2 = one
    for z in xs:
        p1 = p1 * (z * w + t) * (z * wi - t)
        p2 = p2 * (z * wi + t) * (z * w - t)
    return (p1 - p2) * t * HALF_INV_SQRT_M3


def _p_open_bracket(xs: Sequence, t, one):
    p1 = one
    p2 = one
    tinv = t.inv()
    for z in xs:
        zi = z.inv()
        for r in (1, 2):
            a = omega_pow(r)
            b = omega_pow(-r)
            p1 = p1 * (t + z * a) * (t * z + a) * zi * tinv
            p2 = p2 * (t + z * b) * (t * z + b) * zi * tinv
    return p1 - p2


def p_open_gen_value(xs: Sequence, t, one):
    """Open-boundary divisor with spectral variable ``t``.

    The bracket is divided by ``1 - t**2``; for polynomial ``t`` this is an
    exact division that raises if it leaves a remainder.
    """
    L = len(xs)
    bracket = _p_open_bracket(xs, t, one)
    q = _div(bracket, one - t * t)
    q = q * t * HALF_INV_SQRT_M3
    return -q if L % 2 else q


def pp_fixed_value(xs: Sequence, one):
    """Periodic divisor with the spectral parameter fixed at ``t**2 = -1``.

    Equal to ``sum_k (-1)^k mu_{L-k+1} / E_L``.  The compact closed form with
    the imaginary unit equals ``i**L`` times this value.
    """
    L = len(xs)
    mus = mu_values(xs, one)
    acc = one * 0
    for k in range(1, L + 1):
        term = mus[L - k + 1]
        acc = acc - term if k % 2 else acc + term
    prod = one
    for x in xs:
        prod = prod * x
    return _div(acc, prod)


def p_open_fixed_value(xs: Sequence, one):
    """Open-boundary divisor at ``t = w``."""
    return p_open_gen_value(xs, one * OMEGA, one)


def f_open_value(xs: Sequence, i: int, one):
    """Open recurrence factor distinguished at position ``i`` (0-based)."""
    if not 0 <= i < len(xs):
        raise IndexError(f"index {i} out of range for {len(xs)} variables")
    zi = xs[i]
    acc = one
    for j, zj in enumerate(xs):
        if j == i:
            continue
        acc = acc * (zi + zj) * (zi * zj + 1) * (zi * zj).inv()
    return acc


def f_periodic_value(xs: Sequence, i: int, one):
    """Periodic recurrence factor ``z_i prod_{j != i} (z_i + z_j)``."""
    if not 0 <= i < len(xs):
        raise IndexError(f"index {i} out of range for {len(xs)} variables")
    zi = xs[i]
    acc = one * zi
    for j, zj in enumerate(xs):
        if j != i:
            acc = acc * (zi + zj)
    return acc


# -- symbolic constructors ---------------------------------------------------

def _gens(vars: Sequence[str], extra: Sequence[str] = ()):
    allv = tuple(vars) + tuple(v for v in extra if v not in vars)
    gens = LaurentPoly.gens(allv)
    return allv, gens[: len(vars)], gens[len(vars):], LaurentPoly.const(1, allv)


@lru_cache(maxsize=256)
def _esp_list(vars: tuple[str, ...]) -> tuple[LaurentPoly, ...]:
    _, xs, _, one = _gens(vars)
    return tuple(esp_values(xs, one))


@lru_cache(maxsize=256)
def _eps_list(vars: tuple[str, ...]) -> tuple[LaurentPoly, ...]:
    _, xs, _, one = _gens(vars)
    return tuple(eps_values(xs, one))


@lru_cache(maxsize=256)
def _mu_map(vars: tuple[str, ...]) -> dict:
    _, xs, _, one = _gens(vars)
    return mu_values(xs, one)


@lru_cache(maxsize=256)
def _nu_map(vars: tuple[str, ...]) -> dict:
    _, xs, _, one = _gens(vars)
    return nu_values(xs, one)


@lru_cache(maxsize=256)
def _lam_map(vars: tuple[str, ...]) -> dict:
    _, xs, _, one = _gens(vars)
    return lam_values(xs, one)


def elem_E(vars: Sequence[str], m: int) -> LaurentPoly:
    """m-th elementary symmetric polynomial; zero for ``m < 0`` or ``m > len(vars)``."""
    vars = tuple(vars)
    return _at(_esp_list(vars), m, LaurentPoly.zero(vars))


def eps(vars: Sequence[str], m: int) -> LaurentPoly:
    """E_m of the doubled list ``(z_1..z_n, 1/z_1..1/z_n)``; zero outside ``[0, 2n]``."""
    vars = tuple(vars)
    return _at(_eps_list(vars), m, LaurentPoly.zero(vars))


def eps_conv(vars: Sequence[str], m: int) -> LaurentPoly:
    """eps_m through the convolution ``sum_n E_{L-n}(z) E_{L+n-m}(1/z)``."""
    vars = tuple(vars)
    L = len(vars)
    one = LaurentPoly.const(1, vars)
    E = _esp_list(vars)
    Einv = esp_values([x.inv() for x in LaurentPoly.gens(vars)], one)
    zero = LaurentPoly.zero(vars)
    acc = zero
    for n in range(L + 1):
        acc = acc + _at(E, L - n, zero) * _at(Einv, L + n - m, zero)
    return acc


def F_open(vars: Sequence[str], i: int | str) -> LaurentPoly:
    """Open recurrence factor ``prod_{j != i} (z_i + z_j)(z_i z_j + 1)/(z_i z_j)``."""
    vars = tuple(vars)
    if isinstance(i, str):
        i = vars.index(i)
    _, xs, _, one = _gens(vars)
    return f_open_value(xs, i, one)


def F_periodic(vars: Sequence[str], i: int | str) -> LaurentPoly:
    vars = tuple(vars)
    if isinstance(i, str):
        i = vars.index(i)
    _, xs, _, one = _gens(vars)
    return f_periodic_value(xs, i, one)


def Pp_gen(vars: Sequence[str], t: str = "t") -> LaurentPoly:
    """Periodic divisor as a polynomial in ``vars`` and the extra variable ``t``."""
    if t in vars:
        raise ValueError(f"generating variable {t!r} clashes with {tuple(vars)}")
    _, xs, (tt,), one = _gens(vars, (t,))
    return pp_gen_value(xs, tt, one)


def P_open_gen(vars: Sequence[str], t: str = "t") -> LaurentPoly:
    """Open-boundary divisor as a Laurent polynomial in ``vars`` and ``t``."""
    if t in vars:
        raise ValueError(f"generating variable {t!r} clashes with {tuple(vars)}")
    _, xs, (tt,), one = _gens(vars, (t,))
    return p_open_gen_value(xs, tt, one)


def Pp_fixed(vars: Sequence[str]) -> LaurentPoly:
    _, xs, _, one = _gens(vars)
    return pp_fixed_value(xs, one)


def Pp_fixed_oracle(vars: Sequence[str]) -> LaurentPoly:
    """``sum_{k odd} 3^((k-1)/2) E_{L-k}(u)`` with ``u_j = z_j + 1/z_j``.

    Expanding the two products of the closed form in ``u_j`` and the real
    quadratic irrationality gives this rational expression, which does not
    pass through the mu polynomials at all.
    """
    _, xs, _, one = _gens(vars)
    us = [x + x.inv() for x in xs]
    E = esp_values(us, one)
    L = len(xs)
    acc = one * 0
    for k in range(1, L + 1, 2):
        acc = acc + E[L - k] * 3 ** ((k - 1) // 2)
    return acc


def P_open_fixed(vars: Sequence[str]) -> LaurentPoly:
    _, xs, _, one = _gens(vars)
    return p_open_fixed_value(xs, one)


def mu(vars: Sequence[str], i: int) -> LaurentPoly:
    vars = tuple(vars)
    return _mu_map(vars).get(i, LaurentPoly.zero(vars))


def nu(vars: Sequence[str], i: int) -> LaurentPoly:
    vars = tuple(vars)
    return _nu_map(vars).get(i, LaurentPoly.zero(vars))


def lam(vars: Sequence[str], i: int) -> LaurentPoly:
    vars = tuple(vars)
    if i < 0:
        raise ValueError("lambda index must be nonnegative")
    return _lam_map(vars).get(i, LaurentPoly.zero(vars))


def family(tag: Family | str, vars: Sequence[str], index: int) -> LaurentPoly:
    tag = Family(tag)
    return {
        Family.E: elem_E,
        Family.EPS: eps,
        Family.MU: mu,
        Family.NU: nu,
        Family.LAMBDA: lam,
    }[tag](vars, index)
