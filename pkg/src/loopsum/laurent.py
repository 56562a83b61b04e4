"""Sparse multivariate Laurent polynomials over Q(w).

Monomials are packed into a single Python integer: each exponent occupies a
32-bit field with a bias, the first variable in the most significant field.
Multiplying monomials is then one integer addition, and integer order on the
packed keys is lexicographic order on exponent vectors.
"""
from __future__ import annotations

import heapq
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cyclofield import ONE, Cyclo, omega_pow, parse_rational

__all__ = [
    "LaurentPoly",
    "DivisibilityError",
    "VarSetMismatch",
    "Comparison",
    "exact_divide",
    "compare",
    "coeff_in_var",
    "substitute",
    "evaluate",
    "poly_arith",
    "random_point",
    "specialize",
    "render",
    "parse",
]

_W = 32
_BIAS = 1 << (_W - 1)
_MASK = (1 << _W) - 1
_OFFSETS: dict[int, int] = {}


def _offset(n: int) -> int:
    off = _OFFSETS.get(n)
    if off is None:
        off = 0
        for _ in range(n):
            off = (off << _W) | _BIAS
        _OFFSETS[n] = off
    return off


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for e in exps:
        if not -_BIAS <= e < _BIAS:
            raise OverflowError(f"exponent {e} out of range")
        key = (key << _W) | (e + _BIAS)
    return key


def _unpack(key: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = (key & _MASK) - _BIAS
        key >>= _W
    return tuple(out)


def _field(key: int, n: int, pos: int) -> int:
    return ((key >> (_W * (n - 1 - pos))) & _MASK) - _BIAS


class VarSetMismatch(ValueError):
    """Operands live over different variable lists."""


class DivisibilityError(ArithmeticError):
    """Exact division left a nonzero remainder."""

    def __init__(self, message: str, remainder: "LaurentPoly", quotient: "LaurentPoly | None" = None):
        super().__init__(message)
        self.remainder = remainder
        self.quotient = quotient


_Scalar = (int, Fraction, Cyclo)


def _as_cyclo(c) -> Cyclo:
    return c if isinstance(c, Cyclo) else Cyclo(c)


class LaurentPoly:
    """Immutable sparse Laurent polynomial with Q(w) coefficients.

    ``vars`` fixes the position of every variable in the exponent vectors.
    Zero coefficients are never stored, so two polynomials over the same
    variables are equal exactly when their term maps are equal.
    """

    __slots__ = ("vars", "_t", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None, vars: Sequence[str] = ()):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        n = len(self.vars)
        t: dict[int, Cyclo] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} does not match {n} variables")
            c = _as_cyclo(c)
            if not c:
                continue
            k = _pack(exps)
            prev = t.get(k)
            if prev is not None:
                c = prev + c
                if not c:
                    del t[k]
                    continue
            t[k] = c
        self._t = t
        self._hash = None

    @classmethod
    def _make(cls, vars: tuple[str, ...], t: dict[int, Cyclo]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.vars = vars
        obj._t = t
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, vars: Sequence[str]) -> "LaurentPoly":
        return cls._make(tuple(vars), {})

    @classmethod
    def const(cls, c, vars: Sequence[str]) -> "LaurentPoly":
        vars = tuple(vars)
        c = _as_cyclo(c)
        return cls._make(vars, {_offset(len(vars)): c} if c else {})

    @classmethod
    def var(cls, name: str, vars: Sequence[str], power: int = 1) -> "LaurentPoly":
        vars = tuple(vars)
        exps = [0] * len(vars)
        exps[vars.index(name)] = power
        return cls._make(vars, {_pack(exps): ONE})

    @classmethod
    def gens(cls, vars: Sequence[str]) -> list["LaurentPoly"]:
        return [cls.var(v, vars) for v in vars]

    @classmethod
    def monomial(cls, exps: Sequence[int], c, vars: Sequence[str]) -> "LaurentPoly":
        return cls({tuple(exps): c}, vars)

    # -- inspection -----------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    def terms(self) -> dict[tuple[int, ...], Cyclo]:
        """Exponent-vector to coefficient map in descending lex order."""
        n = len(self.vars)
        return {_unpack(k, n): self._t[k] for k in sorted(self._t, reverse=True)}

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and _offset(len(self.vars)) in self._t)

    def constant_value(self) -> Cyclo:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._t.get(_offset(len(self.vars)), Cyclo())

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_rational(self) -> bool:
        return all(c.b == 0 for c in self._t.values())

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            if self.vars != other.vars:
                return False
            return self._t == other._t
        if isinstance(other, _Scalar):
            c = _as_cyclo(other)
            if not c:
                return not self._t
            return self.is_constant() and self.constant_value() == c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._t.items())))
        return self._hash

    def max_degree(self, var: str) -> int:
        pos = self.vars.index(var)
        return max(_field(k, len(self.vars), pos) for k in self._t) if self._t else 0

    def min_degree(self, var: str) -> int:
        pos = self.vars.index(var)
        return min(_field(k, len(self.vars), pos) for k in self._t) if self._t else 0

    def total_degree(self) -> int:
        n = len(self.vars)
        return max((sum(_unpack(k, n)) for k in self._t), default=0)

    def min_total_degree(self) -> int:
        n = len(self.vars)
        return min((sum(_unpack(k, n)) for k in self._t), default=0)

    def support(self) -> set[str]:
        """Variables that actually occur."""
        n = len(self.vars)
        used = set()
        for k in self._t:
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    used.add(self.vars[i])
        return used

    def is_homogeneous(self) -> bool:
        n = len(self.vars)
        return len({sum(_unpack(k, n)) for k in self._t}) <= 1

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise VarSetMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, _Scalar):
            return LaurentPoly.const(other, self.vars)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __neg__(self):
        return LaurentPoly._make(self.vars, {k: -c for k, c in self._t.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, (LaurentPoly,) + _Scalar):
            return NotImplemented
        other = self._coerce(other)
        if len(other._t) > len(self._t):
            big, small = other._t, self._t
        else:
            big, small = self._t, other._t
        t = dict(big)
        for k, c in small.items():
            prev = t.get(k)
            if prev is None:
                t[k] = c
            else:
                s = prev + c
                if s:
                    t[k] = s
                else:
                    del t[k]
        return LaurentPoly._make(self.vars, t)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (LaurentPoly,) + _Scalar):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, _Scalar):
            return NotImplemented
        return self._coerce(other) - self

    def scale(self, c) -> "LaurentPoly":
        c = _as_cyclo(c)
        if not c:
            return LaurentPoly.zero(self.vars)
        if c == ONE:
            return self
        return LaurentPoly._make(self.vars, {k: v * c for k, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, _Scalar):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        other = self._coerce(other)
        return LaurentPoly._make(self.vars, _mul_terms(self._t, other._t, _offset(len(self.vars))))

    def __rmul__(self, other):
        if isinstance(other, _Scalar):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _Scalar):
            return self.scale(_as_cyclo(other).inv())
        if isinstance(other, LaurentPoly):
            return exact_divide(self, other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = LaurentPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inv(self) -> "LaurentPoly":
        """Inverse of a single-term polynomial (a unit of the Laurent ring)."""
        if len(self._t) != 1:
            raise DivisibilityError("only monomials are invertible", self)
        (k, c), = self._t.items()
        off = _offset(len(self.vars))
        return LaurentPoly._make(self.vars, {2 * off - k: c.inv()})

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        d = _pack(exps) - _offset(len(self.vars))
        return LaurentPoly._make(self.vars, {k + d: c for k, c in self._t.items()})

    # -- variable-set handling -------------------------------------------
    def embed(self, vars: Sequence[str]) -> "LaurentPoly":
        """Re-express over a variable list containing all of ``self.vars``."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        missing = set(self.support()) - set(vars)
        if missing:
            raise VarSetMismatch(f"variables {sorted(missing)} not in target list")
        n = len(self.vars)
        idx = [vars.index(v) if v in vars else None for v in self.vars]
        t = {}
        for k, c in self._t.items():
            e = [0] * len(vars)
            for i, x in enumerate(_unpack(k, n)):
                if x:
                    e[idx[i]] = x
            t[_pack(e)] = c
        return LaurentPoly._make(vars, t)

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPoly":
        vars = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"renaming produces duplicate names {vars}")
        return LaurentPoly._make(vars, dict(self._t))

    def substitute(self, var: str, c, target: str, e: int = 1) -> "LaurentPoly":
        return substitute(self, var, (c, target, e))

    def coeff(self, var: str, k: int) -> "LaurentPoly":
        return coeff_in_var(self, var, k)

    def evaluate(self, point: Mapping[str, object]) -> Cyclo:
        return evaluate(self, point)

    def map_coeffs(self, f) -> "LaurentPoly":
        t = {}
        for k, c in self._t.items():
            c2 = _as_cyclo(f(c))
            if c2:
                t[k] = c2
        return LaurentPoly._make(self.vars, t)

    def leading_term(self) -> tuple[tuple[int, ...], Cyclo]:
        k = max(self._t)
        return _unpack(k, len(self.vars)), self._t[k]

    # -- rendering --------------------------------------------------------
    def __repr__(self):
        return f"LaurentPoly({str(self)!r}, vars={self.vars})"

    def __str__(self):
        return render(self)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"exponents": list(e), "coeff": c.to_json()} for e, c in self.terms().items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "LaurentPoly":
        vars = tuple(obj["vars"])
        return cls({tuple(t["exponents"]): Cyclo.from_json(t["coeff"]) for t in obj["terms"]}, vars)

    @classmethod
    def parse(cls, text: str, vars: Sequence[str]) -> "LaurentPoly":
        return parse(text, vars)


def _mul_terms(t1: dict, t2: dict, off: int) -> dict:
    if len(t1) > len(t2):
        t1, t2 = t2, t1
    if not t1:
        return {}
    items_a = [(k, c.a) for k, c in t2.items() if c.a]
    items_b = [(k, c.b) for k, c in t2.items() if c.b]
    ra: dict[int, object] = {}
    rb: dict[int, object] = {}
    ra_get = ra.get
    rb_get = rb.get
    for k1, c1 in t1.items():
        a1, b1 = c1.a, c1.b
        base = k1 - off
        if a1:
            for k2, a2 in items_a:
                k = base + k2
                ra[k] = ra_get(k, 0) + a1 * a2
            for k2, b2 in items_b:
                k = base + k2
                rb[k] = rb_get(k, 0) + a1 * b2
        if b1:
            # b1*w * (a2 + b2 w) = -b1 b2 + (b1 a2 + b1 b2) w
            for k2, a2 in items_a:
                k = base + k2
                rb[k] = rb_get(k, 0) + b1 * a2
            for k2, b2 in items_b:
                k = base + k2
                p = b1 * b2
                ra[k] = ra_get(k, 0) - p
                rb[k] = rb_get(k, 0) + p
    out = {}
    for k, a in ra.items():
        b = rb.pop(k, 0)
        if a or b:
            out[k] = Cyclo(a, b)
    for k, b in rb.items():
        if b:
            out[k] = Cyclo(0, b)
    return out


# -- module-level operations ------------------------------------------------

def poly_arith(p: LaurentPoly, q: LaurentPoly, op: str) -> LaurentPoly:
    if p.vars != q.vars:
        raise VarSetMismatch(f"{p.vars} vs {q.vars}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def substitute(p: LaurentPoly, var: str, image) -> LaurentPoly:
    """Replace ``var**k`` by ``c**k * target**(e*k)``.

    ``image`` is ``(c, target, e)`` with ``c`` a nonzero field element and
    ``e`` in ``{+1, -1}``.  A fresh ``target`` takes the place of ``var`` in
    the variable list; an existing one absorbs it and ``var`` is dropped.
    """
    c, target, e = image
    c = _as_cyclo(c)
    if not c:
        raise ZeroDivisionError("substitution image must have a nonzero coefficient")
    if e not in (1, -1):
        raise ValueError("image exponent must be +1 or -1")
    if var not in p.vars:
        raise VarSetMismatch(f"{var!r} not among {p.vars}")
    n = len(p.vars)
    pos = p.vars.index(var)
    if target == var or target not in p.vars:
        new_vars = p.vars[:pos] + (target,) + p.vars[pos + 1:]
        tpos = pos
    else:
        new_vars = p.vars[:pos] + p.vars[pos + 1:]
        tpos = new_vars.index(target)
    dropped = len(new_vars) < n
    pows: dict[int, Cyclo] = {}
    # omega powers are cheap; everything else is cached per exponent
    omega_k = None
    for k6 in range(6):
        if omega_pow(k6) == c:
            omega_k = k6
            break
    t: dict[int, Cyclo] = {}
    for key, coef in p._t.items():
        exps = list(_unpack(key, n))
        k = exps[pos]
        if dropped:
            del exps[pos]
            exps[tpos] += e * k
        else:
            exps[tpos] = e * k
        if k:
            f = pows.get(k)
            if f is None:
                f = omega_pow(omega_k * k) if omega_k is not None else c ** k
                pows[k] = f
            coef = coef * f
        nk = _pack(exps)
        prev = t.get(nk)
        if prev is not None:
            coef = prev + coef
            if not coef:
                del t[nk]
                continue
        t[nk] = coef
    return LaurentPoly._make(new_vars, t)


def evaluate(p: LaurentPoly, point: Mapping[str, object]) -> Cyclo:
    """Exact value of ``p`` at a point assigning a nonzero value to each variable."""
    n = len(p.vars)
    vals = []
    for v in p.vars:
        if v not in point:
            raise KeyError(f"no value assigned to {v!r}")
        x = _as_cyclo(point[v])
        if not x:
            raise ZeroDivisionError(f"variable {v!r} assigned zero")
        vals.append(x)
    cache: list[dict[int, Cyclo]] = [{} for _ in range(n)]
    total = Cyclo()
    for key, coef in p._t.items():
        term = coef
        for i, e in enumerate(_unpack(key, n)):
            if e:
                f = cache[i].get(e)
                if f is None:
                    f = vals[i] ** e
                    cache[i][e] = f
                term = term * f
        total = total + term
    return total


def coeff_in_var(p: LaurentPoly, var: str, k: int) -> LaurentPoly:
    """Coefficient of ``var**k`` as a polynomial in the remaining variables."""
    n = len(p.vars)
    pos = p.vars.index(var)
    new_vars = p.vars[:pos] + p.vars[pos + 1:]
    t = {}
    for key, c in p._t.items():
        exps = _unpack(key, n)
        if exps[pos] == k:
            t[_pack(exps[:pos] + exps[pos + 1:])] = c
    return LaurentPoly._make(new_vars, t)


def _min_exps(t: dict, n: int) -> list[int]:
    mins = None
    for k in t:
        e = _unpack(k, n)
        mins = list(e) if mins is None else [min(a, b) for a, b in zip(mins, e)]
    return mins or [0] * n


def exact_divide(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Quotient ``q`` with ``q * den == num``; raise :class:`DivisibilityError` otherwise.

    Both operands are first shifted by monomials into ordinary polynomials,
    the divisor having no monomial factor; Laurent divisibility then agrees
    with polynomial divisibility.  Division is the single-divisor reduction
    in lex order, which leaves a zero remainder exactly when the divisor
    divides.
    """
    if num.vars != den.vars:
        raise VarSetMismatch(f"{num.vars} vs {den.vars}")
    if not den:
        raise ZeroDivisionError("exact_divide by the zero polynomial")
    vars = num.vars
    n = len(vars)
    if not num:
        return LaurentPoly.zero(vars)
    if len(den._t) == 1:
        return num * den.inv()
    off = _offset(n)
    dmin = _min_exps(den._t, n)
    nmin = _min_exps(num._t, n)
    dshift = off - _pack(dmin) + off  # key delta that divides by x^dmin
    nshift = off - _pack(nmin) + off
    D = {k + dshift - off: c for k, c in den._t.items()}
    R = {k + nshift - off: c for k, c in num._t.items()}
    lt_d = max(D)
    lc_d = D[lt_d]
    lc_inv = lc_d.inv()
    d_items = [(k - lt_d, c) for k, c in D.items() if k != lt_d]
    Q: dict[int, Cyclo] = {}
    rem: dict[int, Cyclo] = {}
    heap = [-k for k in R]
    heapq.heapify(heap)
    while heap:
        k = -heapq.heappop(heap)
        c = R.pop(k, None)
        if c is None:
            continue
        diff = _unpack(k - lt_d + off, n)
        if any(x < 0 for x in diff):
            rem[k] = c
            continue
        qc = c * lc_inv
        qk = k - lt_d + off
        Q[qk] = qc
        for dk, dc in d_items:
            kk = k + dk
            prev = R.get(kk)
            if prev is None:
                R[kk] = -(qc * dc)
                heapq.heappush(heap, -kk)
            else:
                s = prev - qc * dc
                if s:
                    R[kk] = s
                else:
                    del R[kk]
    back = _pack([a - b for a, b in zip(nmin, dmin)]) - off
    if rem:
        r = LaurentPoly._make(vars, {k - nshift + off: c for k, c in rem.items()})
        q = LaurentPoly._make(vars, {k + back: c for k, c in Q.items()})
        raise DivisibilityError(
            f"division leaves a remainder with {len(rem)} terms", remainder=r, quotient=q
        )
    return LaurentPoly._make(vars, {k + back: c for k, c in Q.items()})


# -- comparison -----------------------------------------------------------

@dataclass(frozen=True)
class Comparison:
    """Outcome of :func:`compare`: ``equal``, ``proportional`` or ``distinct``."""

    kind: str
    constant: Cyclo | None = None
    witness: dict | None = None

    def __bool__(self):
        return self.kind != "distinct"


def random_point(vars: Iterable[str], rng: random.Random, bound: int = 97,
                 avoid=None) -> dict[str, Cyclo]:
    """Random assignment of nonzero rationals ``p/q`` with ``|p|, q <= bound``.

    ``avoid`` is an optional predicate; points for which it returns True are
    rejected and redrawn.
    """
    vars = list(vars)
    while True:
        pt = {}
        for v in vars:
            p = 0
            while p == 0:
                p = rng.randint(-bound, bound)
            q = rng.randint(1, bound)
            pt[v] = Cyclo(Fraction(p, q))
        if avoid is None or not avoid(pt):
            return pt


def compare(p: LaurentPoly, q: LaurentPoly, seed: int = 0, trials: int = 20) -> Comparison:
    """Decide whether ``q == p``, ``q == c*p`` for a constant ``c``, or neither."""
    if p.vars != q.vars:
        raise VarSetMismatch(f"{p.vars} vs {q.vars}")
    if p._t == q._t:
        return Comparison("equal", ONE)
    if p and q and len(p._t) == len(q._t):
        k = max(p._t)
        if k in q._t:
            c = q._t[k] / p._t[k]
            if p.scale(c)._t == q._t:
                return Comparison("proportional", c)
    rng = random.Random(seed)
    witness = None
    for _ in range(trials):
        pt = random_point(p.vars, rng)
        if evaluate(p, pt) != evaluate(q, pt):
            witness = pt
            break
    if witness is None:
        # structural inequality guarantees a separating point exists;
        # fall back to a wider search range
        while witness is None:
            pt = random_point(p.vars, rng, bound=10**6)
            if evaluate(p, pt) != evaluate(q, pt):
                witness = pt
    return Comparison("distinct", None, witness)


# -- text rendering ---------------------------------------------------------

def _rat_text(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _coeff_text(c: Cyclo) -> tuple[str, str]:
    """Return (sign, body) where body excludes a leading minus when rational."""
    if c.b == 0:
        a = c.a
        sign = "-" if a < 0 else "+"
        return sign, _rat_text(abs(a))
    a, b = c.a, c.b
    bsign = "-" if b < 0 else "+"
    return "+", f"({_rat_text(a)} {bsign} {_rat_text(abs(b))}w)"


def render(p: LaurentPoly) -> str:
    if not p._t:
        return "0"
    n = len(p.vars)
    parts = []
    for k in sorted(p._t, reverse=True):
        c = p._t[k]
        exps = _unpack(k, n)
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(p.vars, exps) if e
        )
        sign, body = _coeff_text(c)
        if mono:
            text = mono if body == "1" else f"{body}*{mono}"
        else:
            text = body
        parts.append((sign, text))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out


_FACTOR = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")
_CYC = re.compile(r"\((-?\d+(?:/\d+)?) ([+-]) (\d+(?:/\d+)?)w\)$")


def _split_terms(text: str) -> list[tuple[int, str]]:
    text = text.strip()
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:].lstrip()
    out = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith((" + ", " - "), i):
            out.append((sign, text[start:i]))
            sign = 1 if text[i + 1] == "+" else -1
            i += 3
            start = i
            continue
        i += 1
    out.append((sign, text[start:]))
    return out


def parse(text: str, vars: Sequence[str]) -> LaurentPoly:
    """Inverse of :func:`render` for a known variable list."""
    vars = tuple(vars)
    if text.strip() == "0":
        return LaurentPoly.zero(vars)
    terms: dict[tuple[int, ...], Cyclo] = {}
    for sign, body in _split_terms(text):
        factors = body.split("*") if not body.startswith("(") else None
        coeff = Cyclo(1)
        exps = [0] * len(vars)
        if factors is None:
            close = body.index(")")
            m = _CYC.match(body[: close + 1])
            if not m:
                raise ValueError(f"bad coefficient in {body!r}")
            a = parse_rational(m.group(1))
            b = parse_rational(m.group(3)) * (1 if m.group(2) == "+" else -1)
            coeff = Cyclo(a, b)
            rest = body[close + 1:]
            factors = [f for f in rest.split("*") if f]
        elif factors and re.fullmatch(r"\d+(?:/\d+)?", factors[0]):
            coeff = Cyclo(parse_rational(factors[0]))
            factors = factors[1:]
        for f in factors:
            m = _FACTOR.match(f)
            if not m or m.group(1) not in vars:
                raise ValueError(f"bad factor {f!r}")
            exps[vars.index(m.group(1))] += int(m.group(2) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, Cyclo()) + coeff * sign
    return LaurentPoly(terms, vars)


def specialize(p: LaurentPoly, var: str, c) -> LaurentPoly:
    """Set ``var`` to the nonzero constant ``c``, dropping it from the variable list."""
    c = _as_cyclo(c)
    if not c:
        raise ZeroDivisionError("cannot specialise a Laurent variable to zero")
    n = len(p.vars)
    pos = p.vars.index(var)
    new_vars = p.vars[:pos] + p.vars[pos + 1:]
    pows: dict[int, Cyclo] = {}
    t: dict[int, Cyclo] = {}
    for key, coef in p._t.items():
        exps = _unpack(key, n)
        k = exps[pos]
        if k:
            f = pows.get(k)
            if f is None:
                f = pows[k] = c ** k
            coef = coef * f
        nk = _pack(exps[:pos] + exps[pos + 1:])
        prev = t.get(nk)
        if prev is not None:
            coef = prev + coef
            if not coef:
                del t[nk]
                continue
        t[nk] = coef
    return LaurentPoly._make(new_vars, t)
