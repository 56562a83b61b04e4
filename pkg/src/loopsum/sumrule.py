"""Sum rules by every determinant route, an interpolation oracle, and the verifier.

Every route is written once over a generic ring and evaluated either on
polynomial generators (symbolic mode) or on points of Q(w) (random mode).
A substitution such as ``z_{L-1} -> z*w, z_L -> z/w`` is then nothing more
than building a different input list.

Size convention: ``L`` is always the number of variables the formula is
evaluated on.  For the open model that list includes the two boundary
parameters, so ``Z`` over two variables is the empty-bulk value 1.
"""
from __future__ import annotations

import enum
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .cyclofield import Cyclo, OMEGA, ONE
from .laurent import (
    DivisibilityError,
    LaurentPoly,
    compare,
    evaluate,
    exact_divide,
    random_point,
    substitute,
)
from .polymatrix import (
    FamilyValues,
    MatrixKind,
    PolyMatrix,
    SizeRuleError,
    build_entries,
    det_field,
    det_generic,
    row_column_reduce,
)
from . import symfunc as sf

log = logging.getLogger(__name__)

__all__ = [
    "Method",
    "Model",
    "Mode",
    "Verdict",
    "IdentityId",
    "SumRuleResult",
    "VerificationReport",
    "SumRuleDivisibilityError",
    "InterpolationError",
    "InvariantError",
    "RouteMismatchError",
    "zp_value",
    "z_open_value",
    "zp_compute",
    "z_open_compute",
    "oracle_interpolate",
    "verify",
    "verify_many",
    "identity_min_size",
    "PERIODIC_METHODS",
    "OPEN_METHODS",
]


class Method(enum.Enum):
    DET_E = "det-e"
    DET_MU = "det-mu"
    V_OVER_PP = "v-over-pp"
    W_OVER_P = "w-over-p"
    DET_NU = "det-nu"
    DET_LAMBDA = "det-lambda"
    ORACLE_INTERP = "oracle-interp"


class Model(enum.Enum):
    PERIODIC = "periodic"
    OPEN = "open"


class Mode(enum.Enum):
    SYMBOLIC = "symbolic"
    RANDOM = "random"


class Verdict(enum.Enum):
    EXACT = "EXACT"
    PROPORTIONAL = "PROPORTIONAL"
    FAIL = "FAIL"


PERIODIC_METHODS = (Method.DET_E, Method.DET_MU)
OPEN_METHODS = (Method.V_OVER_PP, Method.W_OVER_P, Method.DET_NU, Method.DET_LAMBDA)


class SumRuleDivisibilityError(DivisibilityError):
    """A ratio route left a remainder; carries the method and size."""

    def __init__(self, method: Method, nvars: int, cause: DivisibilityError):
        super().__init__(
            f"{method.value} over {nvars} variables: numerator is not divisible by the "
            f"divisor ({len(cause.remainder)} remainder terms, leading "
            f"{cause.remainder.leading_term() if cause.remainder else None})",
            cause.remainder,
            cause.quotient,
        )
        self.method = method
        self.nvars = nvars


class InterpolationError(ArithmeticError):
    """Recurrence data did not fit any ansatz the node count can confirm."""

    def __init__(self, message: str, values: tuple = ()):
        super().__init__(message)
        self.values = values


class InvariantError(AssertionError):
    pass


class RouteMismatchError(ArithmeticError):
    """Two routes to the same sum rule are not proportional."""

    def __init__(self, method: Method, reference: Method, witness: dict | None):
        super().__init__(f"{method.value} is not proportional to {reference.value}; "
                         f"witness {witness}")
        self.method = method
        self.reference = reference
        self.witness = witness


# -- generic routes -----------------------------------------------------------

def _symbolic(one) -> bool:
    return isinstance(one, LaurentPoly)


def _det(rows, one):
    if _symbolic(one):
        return det_generic(rows, one * 0, one)
    return det_field(rows)


def _div(num, den, method: Method, n: int):
    if _symbolic(num):
        try:
            return exact_divide(num, den)
        except DivisibilityError as e:
            raise SumRuleDivisibilityError(method, n, e) from e
    return num / den


def _matdet(kind: MatrixKind, xs: Sequence, one):
    return _det(build_entries(kind, FamilyValues(xs, one)), one)


def zp_value(xs: Sequence, one, method: Method | str = Method.DET_E):
    """Periodic sum rule on the ring elements ``xs``."""
    method = Method(method)
    if not xs:
        raise ValueError("the periodic sum rule needs at least one variable")
    if method is Method.DET_E:
        return _matdet(MatrixKind.E_STAIRCASE, xs, one)
    if method is Method.DET_MU:
        return _matdet(MatrixKind.MU, xs, one)
    raise ValueError(f"{method.value} is not a periodic method")


def w_value(xs: Sequence, one):
    """Half the determinant of the symmetric block of the doubled eps matrix."""
    return _matdet(MatrixKind.W_PLUS, xs, one) * Fraction(1, 2)


def z_open_value(xs: Sequence, one, method: Method | str = Method.DET_LAMBDA):
    """Open-boundary sum rule on the ring elements ``xs`` (boundaries included)."""
    method = Method(method)
    n = len(xs)
    if n == 0:
        return one
    if method is Method.DET_LAMBDA:
        return _matdet(MatrixKind.LAMBDA_DIFF, xs, one)
    if method is Method.DET_NU:
        d = _matdet(MatrixKind.NU_DIFF, xs, one)
        if n % 2:
            return d
        return _div(d, sf.p_open_fixed_value(xs, one), method, n)
    if method is Method.V_OVER_PP:
        return _div(_matdet(MatrixKind.V_MINUS, xs, one), sf.pp_fixed_value(xs, one), method, n)
    if method is Method.W_OVER_P:
        return _div(w_value(xs, one), sf.p_open_fixed_value(xs, one), method, n)
    raise ValueError(f"{method.value} is not an open-boundary method")


def ztilde_value(xs: Sequence, one):
    return _matdet(MatrixKind.EPS_DOUBLED, xs, one)


# -- results -----------------------------------------------------------------

def _check_invariants(p: LaurentPoly, inversion: bool) -> None:
    vars = p.vars
    n = len(vars)
    if n >= 2:
        swap = p.rename({vars[0]: vars[1], vars[1]: vars[0]}).embed(vars)
        if swap != p:
            raise InvariantError(f"not symmetric under {vars[0]} <-> {vars[1]}")
        cyc = p.rename({v: vars[(i + 1) % n] for i, v in enumerate(vars)}).embed(vars)
        if cyc != p:
            raise InvariantError("not symmetric under the cyclic shift of variables")
    if inversion and n >= 1:
        inv = substitute(p, vars[0], (1, vars[0], -1))
        if inv != p:
            raise InvariantError(f"not invariant under {vars[0]} -> 1/{vars[0]}")


@dataclass(frozen=True)
class SumRuleResult:
    """A computed sum rule with the constant relating it to the reference route."""

    value: LaurentPoly
    method: Method
    vars: tuple
    normalization: Cyclo
    model: Model

    def __post_init__(self):
        _check_invariants(self.value, self.model is Model.OPEN)

    def to_json(self) -> dict:
        return {
            "model": self.model.value,
            "method": self.method.value,
            "vars": list(self.vars),
            "normalization": self.normalization.to_json(),
            "value": self.value.to_json(),
        }


def _normalization(value: LaurentPoly, reference: LaurentPoly,
                   method: Method, ref_method: Method) -> Cyclo:
    c = compare(reference, value)
    if not c:
        raise RouteMismatchError(method, ref_method,
                                 {k: str(v) for k, v in c.witness.items()})
    return c.constant


def zp_compute(vars: Sequence[str], method: Method | str = Method.DET_E) -> SumRuleResult:
    vars = tuple(vars)
    method = Method(method)
    fam = FamilyValues.symbolic(vars)
    value = zp_value(fam.xs, fam.one, method)
    if method is Method.DET_E:
        norm = ONE
    else:
        norm = _normalization(value, zp_value(fam.xs, fam.one, Method.DET_E),
                              method, Method.DET_E)
    return SumRuleResult(value, method, vars, norm, Model.PERIODIC)


def z_open_compute(vars: Sequence[str], method: Method | str = Method.DET_LAMBDA) -> SumRuleResult:
    """Open sum rule by one route; ratio routes raise on a nonzero remainder."""
    vars = tuple(vars)
    method = Method(method)
    fam = FamilyValues.symbolic(vars)
    value = z_open_value(fam.xs, fam.one, method)
    if method is Method.DET_LAMBDA:
        norm = ONE
    else:
        norm = _normalization(value, z_open_value(fam.xs, fam.one, Method.DET_LAMBDA),
                              method, Method.DET_LAMBDA)
    return SumRuleResult(value, method, vars, norm, Model.OPEN)


# -- interpolation oracle --------------------------------------------------------

def _newton(nodes: list, values: list) -> list:
    """Divided-difference coefficients; raises DivisibilityError if inconsistent."""
    d = list(values)
    n = len(d)
    coeffs = [d[0]]
    for j in range(1, n):
        for k in range(n - 1, j - 1, -1):
            diff = d[k] - d[k - 1]
            d[k] = exact_divide(diff, nodes[k] - nodes[k - j]) if diff else diff
        coeffs.append(d[j])
    return coeffs


def _recurrence_data(model: Model, prev: LaurentPoly, names: tuple) -> tuple[list, list]:
    """Nodes in the last variable and the values the first recurrence forces there."""
    inner = names[:-1]
    one = LaurentPoly.const(1, inner)
    nodes, values = [], []
    for j, u in enumerate(inner):
        others = inner[:j] + inner[j + 1:]
        shifted = prev.rename(dict(zip(prev.vars, others + ("_s",))))
        ugen = LaurentPoly.var(u, inner)
        gens = [LaurentPoly.var(v, inner) for v in others]
        for c in (OMEGA.inv(), OMEGA):
            # w = z/w0, u = z*w0 (or swapped), so z = c*u and w = c**2 * u
            z = ugen * c
            lower = substitute(shifted, "_s", (c, u, 1)).embed(inner)
            if model is Model.PERIODIC:
                f = sf.f_periodic_value(gens + [z], len(gens), one)
            else:
                f = sf.f_open_value(gens + [z], len(gens), one)
            val = f * lower
            w = ugen * (c * c)
            nodes.append(w)
            values.append(val)
            if model is Model.OPEN:
                nodes.append(w.inv())
                values.append(val)
    return nodes, values


def _fit(model, nodes, values, names, d, check: bool):
    span = d if model is Model.PERIODIC else 2 * d
    vals = values if model is Model.PERIODIC else [v * x ** d for v, x in zip(values, nodes)]
    coeffs = _newton(nodes, vals)
    if check and any(coeffs[span + 1:]):
        return None
    wgen = LaurentPoly.var(names[-1], names)
    acc = LaurentPoly.zero(names)
    basis = LaurentPoly.const(1, names)
    for k in range(span + 1):
        acc = acc + coeffs[k].embed(names) * basis
        basis = basis * (wgen - nodes[k].embed(names))
    if model is Model.OPEN and d:
        acc = acc * wgen ** (-d)
    return acc


def _interpolate_step(model: Model, prev: LaurentPoly, names: tuple,
                      degree_hint: Callable[[], int] | None = None) -> LaurentPoly:
    """Fit the last variable; ``degree_hint`` is consulted only when no surplus is left."""
    nodes, values = _recurrence_data(model, prev, names)
    n = len(nodes)
    for d in range(n):
        span = d if model is Model.PERIODIC else 2 * d
        if span + 1 >= n:
            break
        try:
            fit = _fit(model, nodes, values, names, d, True)
        except DivisibilityError:
            continue
        if fit is not None:
            return fit
    if degree_hint is not None:
        d = degree_hint()
        span = d if model is Model.PERIODIC else 2 * d
        if span + 1 <= n:
            log.info("%s step to %d variables fitted without surplus nodes", model.value, len(names))
            return _fit(model, nodes, values, names, d, False)
    raise InterpolationError(
        f"{model.value} recurrence data over {names} admits no ansatz confirmed by "
        f"surplus nodes ({n} nodes)",
        tuple(values),
    )


def oracle_interpolate(kind: Model | str, L: int, prefix: str = "z") -> SumRuleResult:
    """Rebuild the sum rule over ``L`` variables from the first recurrence alone.

    Starts from the value 1 over a single variable and adds one variable at a
    time, fitting the last variable through the values the recurrence fixes
    at the shifted points.  Surplus points must agree with the fitted degree.
    """
    kind = Model(kind)
    if L == 0 and kind is Model.OPEN:
        return SumRuleResult(LaurentPoly.const(1, ()), Method.ORACLE_INTERP, (), ONE, kind)
    if L < 1:
        raise ValueError("oracle needs at least one variable")

    def reference(vars):
        fam = FamilyValues.symbolic(vars)
        if kind is Model.PERIODIC:
            return zp_value(fam.xs, fam.one, Method.DET_E)
        return z_open_value(fam.xs, fam.one, Method.DET_LAMBDA)

    value = LaurentPoly.const(1, sf.zvars(1, prefix))
    for k in range(2, L + 1):
        names = sf.zvars(k, prefix)
        hint = lambda names=names: reference(names).max_degree(names[-1])
        value = _interpolate_step(kind, value, names, hint)
    vars = sf.zvars(L, prefix)
    ref = reference(vars)
    c = compare(ref, value)
    norm = c.constant if c else Cyclo(0)
    return SumRuleResult(value, Method.ORACLE_INTERP, vars, norm, kind)


# -- identities ---------------------------------------------------------------

class IdentityId(enum.Enum):
    REC1P = "rec1p"
    REC2P = "rec2p"
    RECZ = "recz"
    REC2_OPEN = "rec2-open"
    PMREC = "pmrec"
    PPMREC = "ppmrec"
    PREC1 = "prec1"
    MUREC = "murec"
    RECP = "recp"
    GENVAR = "genvar"
    GENMU = "genmu"
    EPS_CONV = "eps-conv"
    ZTILDE_VW = "ztilde-vw"
    ZTILDE_REC = "ztilde-rec"
    CROSS_PERIODIC = "cross-periodic"
    CROSS_OPEN = "cross-open"
    ORACLE_MATCH = "oracle-match"
    SYMMETRY = "symmetry"
    MU_REDUCTION = "mu-reduction"


@dataclass
class _Identity:
    min_size: int
    free: Callable[[int], tuple]
    sides: Callable  # (L, xs, one, names) -> list[(label, lhs, rhs)]
    per_component: bool = False
    even_only: bool = False


def _pair_names(L: int) -> tuple:
    return sf.zvars(L - 2) + ("z",)


def _pair_t_names(L: int) -> tuple:
    return sf.zvars(L - 2) + ("t",)


def _shifted_pair(xs):
    *rest, z = xs
    return list(rest), z, list(rest) + [z * OMEGA, z * OMEGA.inv()], list(rest) + [z]


def _rec1p(L, xs, one, names):
    rest, z, big, small = _shifted_pair(xs)
    lhs = zp_value(big, one)
    rhs = sf.f_periodic_value(small, L - 2, one) * zp_value(small, one)
    return [("rec1p", lhs, rhs)]


def _rec2p(L, xs, one, names):
    *rest, t = xs
    lhs = zp_value(list(rest) + [t, -t], one)
    rhs = sf.pp_gen_value(rest, t, one) * zp_value(rest, one)
    return [("rec2p", lhs, rhs)]


def _recz(L, xs, one, names):
    rest, z, big, small = _shifted_pair(xs)
    lhs = z_open_value(big, one)
    rhs = sf.f_open_value(small, L - 2, one) * z_open_value(small, one)
    return [("recz", lhs, rhs)]


def _rec2_open(L, xs, one, names):
    *rest, t = xs
    lhs = z_open_value(list(rest) + [t, -t], one)
    rhs = sf.p_open_gen_value(rest, t, one) * z_open_value(rest, one)
    return [("rec2-open", lhs, rhs)]


def _pmrec(L, xs, one, names):
    rest, z, big, small = _shifted_pair(xs)
    lhs = sf.pp_fixed_value(big, one)
    rhs = (z + z.inv()) * sf.pp_fixed_value(small, one)
    return [("pmrec", lhs, rhs)]


def _ppmrec(L, xs, one, names):
    rest, z, big, small = _shifted_pair(xs)
    lhs = sf.p_open_fixed_value(big, one)
    rhs = (z * z + one + (z * z).inv()) * sf.p_open_fixed_value(small, one)
    return [("ppmrec", lhs, rhs)]


def _prec1(L, xs, one, names):
    *rest, z, t = xs
    big = list(rest) + [z * OMEGA, z * OMEGA.inv()]
    small = list(rest) + [z]
    lhs = sf.p_open_gen_value(big, t, one)
    factor = z * z + (z * z).inv() - t * t - (t * t).inv()
    rhs = factor * sf.p_open_gen_value(small, t, one)
    return [("prec1", lhs, rhs)]


def _murec(L, xs, one, names):
    *rest, z = xs
    big = sf.mu_values(list(rest) + [-z, z], one)
    small = sf.mu_values(rest, one)
    zero = one * 0
    z2 = z * z
    out = []
    for i in range(1, L + 1):
        rhs = z2 * z2 * small.get(i - 2, zero) + z2 * small.get(i - 1, zero) + small.get(i, zero)
        out.append((f"mu_{i}", big.get(i, zero), rhs))
    return out


def _recp(L, xs, one, names):
    *rest, z, t = xs
    lhs = sf.pp_gen_value(list(rest) + [-z, z], t, one)
    t2, z2 = t * t, z * z
    rhs = (t2 * t2 + t2 * z2 + z2 * z2) * sf.pp_gen_value(rest, t, one)
    return [("recp", lhs, rhs)]


def _genvar(L, xs, one, names):
    *zs, t = xs
    lhs = sf.f_open_value(list(zs) + [t], L, one)
    eps = sf.eps_values(zs, one)
    rhs = one * 0
    for i in range(2 * L + 1):
        rhs = rhs + eps[i] * t ** (i - L)
    return [("genvar", lhs, rhs)]


def _genmu(L, xs, one, names):
    *zs, t = xs
    lhs = sf.pp_gen_value(zs, t, one)
    mus = sf.mu_values(zs, one)
    rhs = one * 0
    for i in range(1, L + 1):
        rhs = rhs + mus.get(L - i + 1, one * 0) * t ** (2 * i)
    return [("genmu", lhs, rhs)]


def _eps_conv(L, xs, one, names):
    eps = sf.eps_values(xs, one)
    E = sf.esp_values(xs, one)
    Einv = sf.esp_values([x.inv() for x in xs], one)
    zero = one * 0

    def at(seq, k):
        return seq[k] if 0 <= k < len(seq) else zero

    out = []
    for m in range(2 * L + 1):
        acc = zero
        for n in range(L + 1):
            acc = acc + at(E, L - n) * at(Einv, L + n - m)
        out.append((f"eps_{m}", eps[m], acc))
    return out


def _ztilde_vw(L, xs, one, names):
    lhs = ztilde_value(xs, one)
    rhs = _matdet(MatrixKind.V_MINUS, xs, one) * w_value(xs, one)
    return [("ztilde-vw", lhs, rhs)]


def _ztilde_rec(L, xs, one, names):
    rest, z, big, small = _shifted_pair(xs)
    lhs = ztilde_value(big, one)
    zi = z.inv()
    factor = (z + zi) * (z * z + one + zi * zi)
    for x in rest:
        f = (z + x) * (z * x + one) * (z * x).inv()
        factor = factor * f * f
    return [("ztilde-rec", lhs, factor * ztilde_value(small, one))]


def _cross_periodic(L, xs, one, names):
    return [("det-mu/det-e", zp_value(xs, one, Method.DET_MU), zp_value(xs, one, Method.DET_E))]


def _cross_open(L, xs, one, names):
    # cross-multiplied so that a failed division shows up as a verdict
    z = z_open_value(xs, one, Method.DET_LAMBDA)
    v = _matdet(MatrixKind.V_MINUS, xs, one)
    w = w_value(xs, one)
    nu = _matdet(MatrixKind.NU_DIFF, xs, one)
    p = sf.p_open_fixed_value(xs, one)
    out = [
        ("v-over-pp", v, z * sf.pp_fixed_value(xs, one)),
        ("w-over-p", w, z * p),
        ("det-nu", nu, z if L % 2 else z * p),
    ]
    return out


def _lift(poly: LaurentPoly, names: tuple, xs, one):
    if _symbolic(one):
        return poly.embed(names)
    return evaluate(poly, dict(zip(names, xs)))


def _oracle_match(L, xs, one, names):
    out = []
    for model, ref in (
        (Model.PERIODIC, zp_value(xs, one, Method.DET_E)),
        (Model.OPEN, z_open_value(xs, one, Method.DET_LAMBDA)),
    ):
        orc = oracle_interpolate(model, L).value
        out.append((f"oracle/{model.value}", _lift(orc, names, xs, one), ref))
    return out


def _symmetry(L, xs, one, names):
    xs = list(xs)
    perms = []
    if L >= 2:
        swapped = xs[:]
        swapped[0], swapped[1] = swapped[1], swapped[0]
        perms.append(("swap", swapped))
        perms.append(("cycle", xs[1:] + xs[:1]))
    inverted = [xs[0].inv()] + xs[1:]
    out = []

    def both(label, fn, invert):
        base = fn(xs)
        for pname, p in perms:
            out.append((f"{label}@{pname}", fn(p), base))
        if invert:
            out.append((f"{label}@inv", fn(inverted), base))

    both("det-e", lambda v: zp_value(v, one, Method.DET_E), False)
    both("det-mu", lambda v: zp_value(v, one, Method.DET_MU), False)
    for kind in (MatrixKind.LAMBDA_DIFF, MatrixKind.NU_DIFF, MatrixKind.V_MINUS, MatrixKind.W_PLUS):
        both(kind.value, lambda v, k=kind: _matdet(k, v, one), True)
    both("pp-fixed", lambda v: sf.pp_fixed_value(v, one), True)
    both("p-fixed", lambda v: sf.p_open_fixed_value(v, one), True)
    if not _symbolic(one):
        for m in OPEN_METHODS:
            both(m.value, lambda v, m=m: z_open_value(v, one, m), True)
    base_eps = sf.eps_values(xs, one)
    inv_eps = sf.eps_values(inverted, one)
    for k, (a, b) in enumerate(zip(inv_eps, base_eps)):
        out.append((f"eps_{k}@inv", a, b))
    zero = one * 0
    for fname, fn in (("nu", sf.nu_values), ("lambda", sf.lam_values)):
        base = fn(xs, one)
        inv = fn(inverted, one)
        for k in sorted(set(base) | set(inv)):
            out.append((f"{fname}_{k}@inv", inv.get(k, zero), base.get(k, zero)))
    return out


def _mu_reduction(L, xs, one, names):
    if not _symbolic(one):
        # build symbolically over the free variables, then evaluate
        fam = FamilyValues.symbolic(names)
        return [(lab, _lift(a, names, xs, one), _lift(b, names, xs, one))
                for lab, a, b in _mu_reduction(L, fam.xs, fam.one, names)]
    *rest, z = xs
    sub = build_entries(MatrixKind.MU, FamilyValues(list(rest) + [-z, z], one))
    lead, corner, red = row_column_reduce(PolyMatrix(sub, names), names[-1])
    small = build_entries(MatrixKind.MU, FamilyValues(rest, one))
    out = []
    s = lead.rows
    for i in range(s):
        for j in range(s):
            out.append((f"block[{i},{j}]", lead[i, j], small[i][j]))
    for j in range(s):
        out.append((f"lastrow[{j}]", red[s, j], one * 0))
    out.append(("corner", corner, sf.pp_gen_value(rest, z, one)))
    return out


_REGISTRY: dict[IdentityId, _Identity] = {
    IdentityId.REC1P: _Identity(2, _pair_names, _rec1p),
    IdentityId.REC2P: _Identity(3, _pair_t_names, _rec2p),
    IdentityId.RECZ: _Identity(2, _pair_names, _recz),
    IdentityId.REC2_OPEN: _Identity(2, _pair_t_names, _rec2_open),
    IdentityId.PMREC: _Identity(2, _pair_names, _pmrec),
    IdentityId.PPMREC: _Identity(2, _pair_names, _ppmrec),
    IdentityId.PREC1: _Identity(2, lambda L: _pair_names(L) + ("t",), _prec1),
    IdentityId.MUREC: _Identity(2, _pair_names, _murec),
    IdentityId.RECP: _Identity(2, lambda L: _pair_names(L) + ("t",), _recp),
    IdentityId.GENVAR: _Identity(1, lambda L: sf.zvars(L) + ("t",), _genvar),
    IdentityId.GENMU: _Identity(1, lambda L: sf.zvars(L) + ("t",), _genmu),
    IdentityId.EPS_CONV: _Identity(1, sf.zvars, _eps_conv),
    IdentityId.ZTILDE_VW: _Identity(1, sf.zvars, _ztilde_vw),
    IdentityId.ZTILDE_REC: _Identity(2, _pair_names, _ztilde_rec),
    IdentityId.CROSS_PERIODIC: _Identity(1, sf.zvars, _cross_periodic),
    IdentityId.CROSS_OPEN: _Identity(1, sf.zvars, _cross_open, per_component=True),
    IdentityId.ORACLE_MATCH: _Identity(1, sf.zvars, _oracle_match, per_component=True),
    IdentityId.SYMMETRY: _Identity(1, sf.zvars, _symmetry),
    IdentityId.MU_REDUCTION: _Identity(2, _pair_names, _mu_reduction, even_only=True),
}


def identity_min_size(id: IdentityId | str) -> int:
    return _REGISTRY[IdentityId(id)].min_size


# -- verification ---------------------------------------------------------------

@dataclass
class VerificationReport:
    """Outcome of checking one identity at one size."""

    id: IdentityId
    L: int
    mode: Mode
    seed: int
    trials: int
    verdict: Verdict
    constant: object = None  # Cyclo, or {label: Cyclo} when components differ
    witness: dict | None = None
    millis: int = 0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is not Verdict.FAIL

    def _constant_json(self):
        if self.constant is None:
            return None
        if isinstance(self.constant, dict):
            return {k: str(v) for k, v in self.constant.items()}
        return str(self.constant)

    def to_json(self) -> dict:
        return {
            "id": self.id.value,
            "L": self.L,
            "mode": self.mode.value,
            "trials": self.trials,
            "seed": self.seed,
            "verdict": self.verdict.value,
            "constant": self._constant_json(),
            "witness": self.witness,
            "millis": self.millis,
            "detail": self.detail,
        }

    def to_text(self) -> str:
        head = f"{self.id.value:<15} L={self.L:<3} {self.mode.value:<8} {self.verdict.value:<12}"
        c = self._constant_json()
        if c is not None and self.verdict is Verdict.PROPORTIONAL:
            head += f" c={c}"
        if self.witness:
            head += f" witness={self.witness}"
        if self.detail:
            head += f" ({self.detail})"
        return head


def _witness_json(point: dict) -> dict:
    return {k: str(v) for k, v in point.items()}


def _settle(rule: _Identity, constants: dict) -> tuple[Verdict, object, str]:
    """Turn per-component constants into a verdict."""
    vals = {k: v for k, v in constants.items() if v is not None}
    if not vals:
        return Verdict.EXACT, ONE, "all components vanish"
    distinct = set(vals.values())
    if len(distinct) == 1:
        c = next(iter(distinct))
        return (Verdict.EXACT if c == 1 else Verdict.PROPORTIONAL), c, ""
    if rule.per_component:
        if all(v == 1 for v in vals.values()):
            return Verdict.EXACT, ONE, ""
        return Verdict.PROPORTIONAL, vals, ""
    return Verdict.FAIL, vals, "components need different constants"


def _perturbation(xs, one):
    bump = one
    for x in xs:
        bump = bump * x
    return bump


def _run_symbolic(rule, id, L, names, seed, perturb):
    fam = FamilyValues.symbolic(names)
    try:
        comps = rule.sides(L, fam.xs, fam.one, names)
    except SumRuleDivisibilityError as e:
        rem = e.remainder
        c = compare(LaurentPoly.zero(rem.vars), rem, seed=seed)
        return Verdict.FAIL, None, _witness_json(c.witness), str(e)
    if perturb:
        lab, a, b = comps[0]
        comps[0] = (lab, a + _perturbation(fam.xs, fam.one), b)
    constants = {}
    for lab, lhs, rhs in comps:
        lhs = lhs.embed(names) if isinstance(lhs, LaurentPoly) else LaurentPoly.const(lhs, names)
        rhs = rhs.embed(names) if isinstance(rhs, LaurentPoly) else LaurentPoly.const(rhs, names)
        if not lhs and not rhs:
            constants[lab] = None
            continue
        c = compare(rhs, lhs, seed=seed)
        if not c:
            return Verdict.FAIL, None, _witness_json(c.witness), f"component {lab} differs"
        constants[lab] = c.constant
    v, c, d = _settle(rule, constants)
    return v, c, None, d


def _run_random(rule, id, L, names, seed, trials, perturb):
    rng = random.Random(f"{seed}:{id.value}:{L}")
    constants: dict[str, Cyclo | None] = {}
    done = 0
    rejected = 0
    while done < trials:
        point = random_point(names, rng)
        xs = [point[v] for v in names]
        try:
            comps = rule.sides(L, xs, ONE, names)
        except ZeroDivisionError:
            rejected += 1
            if rejected > 50 * trials:
                raise RuntimeError(f"{id.value}: could not find a regular point")
            continue
        if perturb:
            lab, a, b = comps[0]
            comps[0] = (lab, a + _perturbation(xs, ONE), b)
        done += 1
        for lab, lhs, rhs in comps:
            lhs, rhs = Cyclo.coerce(lhs), Cyclo.coerce(rhs)
            if not rhs:
                if lhs:
                    return Verdict.FAIL, None, _witness_json(point), f"component {lab}: rhs vanishes"
                continue
            c = lhs / rhs
            prev = constants.get(lab)
            if prev is None:
                constants[lab] = c
            elif prev != c:
                return Verdict.FAIL, None, _witness_json(point), f"component {lab}: ratio varies"
        if not rule.per_component:
            seen = {v for v in constants.values() if v is not None}
            if len(seen) > 1:
                return Verdict.FAIL, None, _witness_json(point), "components need different constants"
    for lab, *_ in comps:
        constants.setdefault(lab, None)
    v, c, d = _settle(rule, constants)
    return v, c, None, d


def verify(id: IdentityId | str, L: int, mode: Mode | str = Mode.SYMBOLIC, *,
           trials: int = 20, seed: int = 0, perturb: bool = False) -> VerificationReport:
    """Check one identity at size ``L``.

    ``perturb`` adds the product of all free variables to the first left
    side; it exists so the detection power of random mode can be tested.
    """
    id = IdentityId(id)
    mode = Mode(mode)
    rule = _REGISTRY[id]
    if L < rule.min_size:
        raise ValueError(f"{id.value} needs L >= {rule.min_size}")
    if rule.even_only and L % 2:
        raise ValueError(f"{id.value} is defined for even L only")
    names = rule.free(L)
    start = time.perf_counter()
    if mode is Mode.SYMBOLIC:
        v, c, wit, detail = _run_symbolic(rule, id, L, names, seed, perturb)
        used = 0
    else:
        v, c, wit, detail = _run_random(rule, id, L, names, seed, trials, perturb)
        used = trials
    millis = int((time.perf_counter() - start) * 1000)
    return VerificationReport(id, L, mode, seed, used, v, c, wit, millis, detail)


def _verify_task(args):
    id, L, mode, trials, seed = args
    return verify(id, L, mode, trials=trials, seed=seed)


def verify_many(tasks: Sequence[tuple], jobs: int = 1) -> list[VerificationReport]:
    """Run ``(id, L, mode, trials, seed)`` tasks; results keep the task order."""
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        return [_verify_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_task, tasks))
