"""Exact rational functions over Q.

Every exact quantity in the package is a :class:`RatFunc`: a reduced quotient
of two integer polynomials living in one fixed flint context.  The context
holds the parameters ``Q, T, A, B, C, D`` (with ``q = Q^2`` and ``t = T^2``)
together with the coordinate families used elsewhere:

* ``x1..x3`` -- the x-space variables,
* ``L1..L3`` -- spectral variables ``Lambda_i = q^{lambda_i}``,
* ``s1..s3`` -- spectral points ``s = q^lambda t^rho`` used by series duality,
* ``M``      -- scratch variable for square-root substitutions.

A "scalar" in the narrow sense is a RatFunc that only involves the six
parameters; :meth:`RatFunc.is_scalar` tests that.
"""

from __future__ import annotations

import ast
from functools import reduce
from typing import Iterable, Mapping

import flint

PARAMS = ("Q", "T", "A", "B", "C", "D")
XVARS = ("x1", "x2", "x3")
LVARS = ("L1", "L2", "L3")
SVARS = ("s1", "s2", "s3")
NAMES = PARAMS + XVARS + LVARS + SVARS + ("M",)

CTX = flint.fmpz_mpoly_ctx.get(NAMES, "deglex")
_GENS = CTX.gens()
INDEX = {name: i for i, name in enumerate(NAMES)}
NVARS = len(NAMES)
_ZERO_EXP = (0,) * NVARS


class ScalarError(ValueError):
    """Base class for malformed or singular scalar operations."""


class ZeroDenominator(ScalarError):
    pass


class PoleError(ScalarError):
    """A specialization made a denominator vanish."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class DivergentLimit(ScalarError):
    def __init__(self, message, excess):
        super().__init__(message)
        self.excess = excess


def _poly(value):
    if isinstance(value, flint.fmpz_mpoly):
        return value
    return CTX.constant(value)


class RatFunc:
    """Reduced quotient ``num/den`` of integer polynomials.

    The canonical form has ``gcd(num, den) = 1`` (integer content included)
    and a denominator whose leading coefficient, in graded-lex order, is
    positive.  Two RatFuncs are equal iff their canonical forms coincide.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, reduced=False):
        num = _poly(num)
        den = _poly(den)
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if not reduced:
            if num.is_zero():
                den = CTX.constant(1)
            elif not den.is_one():
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def gen(cls, name: str) -> "RatFunc":
        return cls(_GENS[INDEX[name]], reduced=True)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=1) -> "RatFunc":
        """Signed Laurent monomial ``coeff * prod name^k``."""
        up = [0] * NVARS
        down = [0] * NVARS
        for name, k in exps.items():
            if k > 0:
                up[INDEX[name]] += k
            elif k < 0:
                down[INDEX[name]] -= k
        num = CTX.term(exp_vec=tuple(up), coeff=coeff)
        den = CTX.term(exp_vec=tuple(down), coeff=1)
        return cls(num, den, reduced=(coeff != 0))

    @classmethod
    def coerce(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, flint.fmpz_mpoly):
            return cls(value, reduced=True)
        if isinstance(value, (int, flint.fmpz)):
            return cls(CTX.constant(value), reduced=True)
        if isinstance(value, flint.fmpq):
            return cls(CTX.constant(value.p), CTX.constant(value.q))
        from fractions import Fraction

        if isinstance(value, Fraction):
            return cls(CTX.constant(value.numerator), CTX.constant(value.denominator))
        raise TypeError(f"cannot coerce {type(value).__name__} to RatFunc")

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def variables(self) -> set[str]:
        used = set()
        for poly in (self.num, self.den):
            for name, d in zip(NAMES, poly.degrees()):
                if d:
                    used.add(name)
        return used

    def is_scalar(self) -> bool:
        return self.variables() <= set(PARAMS)

    def is_monomial(self) -> bool:
        return len(self.num) == 1 and len(self.den) == 1

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num + other.num, self.den, reduced=True)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.is_one():
            return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)
        b1 = self.den / g
        b2 = other.den / g
        return RatFunc(self.num * b2 + other.num * b1, b1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        a, d = self.num, other.den
        if not g1.is_one():
            a, d = a / g1, d / g1
        c, b = other.num, self.den
        if not g2.is_one():
            c, b = c / g2, b / g2
        num = a * c
        den = b * d
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFunc(num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num, reduced=False)

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k, reduced=True)

    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def __reduce__(self):
        # flint polynomials do not pickle; worker processes receive text
        return (_unpickle_ratfunc, (self.num.to_dict(), self.den.to_dict()))

    # text forms -----------------------------------------------------------
    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"

    def to_json(self) -> dict:
        return {"num": str(self.num), "den": str(self.den)}

    @classmethod
    def from_json(cls, data: Mapping) -> "RatFunc":
        return parse(data["num"]) / parse(data["den"])

    # substitution ---------------------------------------------------------
    def subs(self, mapping: Mapping[str, "RatFunc"]) -> "RatFunc":
        """Substitute variables by RatFuncs and renormalize.

        Raises :class:`PoleError` naming the vanishing denominator factor.
        """
        if not mapping:
            return self
        images = {INDEX[k]: RatFunc.coerce(v) for k, v in mapping.items()}
        dnum = self.num.degrees()
        dden = self.den.degrees()
        degs = {i: max(dnum[i], dden[i]) for i in images}
        num = _subs_poly(self.num, images, degs)
        den = _subs_poly(self.den, images, degs)
        if den.is_zero():
            factor = _vanishing_factor(self.den, images, degs)
            raise PoleError(f"denominator factor {factor} vanishes at specialization", factor)
        return RatFunc(num, den)

    def shift_powers(self, var_names: Iterable[str], shift: Iterable[int], base: str = "Q", scale: int = 2):
        """Return ``f(..., base^(scale*e_i) * v_i, ...)`` for Laurent-monomial shifts."""
        pairs = [(INDEX[v], e) for v, e in zip(var_names, shift) if e]
        if not pairs:
            return self
        b = INDEX[base]

        def moved(poly):
            out = []
            lo = 0
            for exps, c in poly.terms():
                extra = scale * sum(exps[i] * e for i, e in pairs)
                out.append((exps, c, extra))
                lo = min(lo, exps[b] + extra)
            return out, lo

        tn, lon = moved(self.num)
        td, lod = moved(self.den)
        offset = -min(lon, lod)

        def rebuild(terms):
            d = {}
            for exps, c, extra in terms:
                e = list(exps)
                e[b] += extra + offset
                d[tuple(e)] = c
            return CTX.from_dict(d) if d else CTX.constant(0)

        return RatFunc(rebuild(tn), rebuild(td))


def _coerce_or_none(value):
    try:
        return RatFunc.coerce(value)
    except TypeError:
        return None


def _subs_poly(poly, images, degs):
    if all(img.den.is_one() for img in images.values()):
        args = [images[i].num if i in images else _GENS[i] for i in range(NVARS)]
        return poly.compose(*args)
    # homogenize: multiply through by prod den_v^deg_v so everything stays polynomial
    pow_num = {i: _powers(images[i].num, degs[i]) for i in images}
    pow_den = {i: _powers(images[i].den, degs[i]) for i in images}
    total = CTX.constant(0)
    for exps, c in poly.terms():
        rest = list(exps)
        term = CTX.constant(c)
        for i in images:
            k = exps[i]
            rest[i] = 0
            term = term * pow_num[i][k] * pow_den[i][degs[i] - k]
        total = total + term * CTX.term(exp_vec=tuple(rest), coeff=1)
    return total


def _powers(p, n):
    out = [CTX.constant(1)]
    for _ in range(n):
        out.append(out[-1] * p)
    return out


def _vanishing_factor(den, images, degs):
    _, factors = den.factor()
    for f, _mult in factors:
        fd = f.degrees()
        local = {i: max(fd[i], 0) for i in images}
        if _subs_poly(f, images, local).is_zero():
            return str(f)
    return str(den)


def _unpickle_ratfunc(num: dict, den: dict) -> "RatFunc":
    return RatFunc(CTX.from_dict(num), CTX.from_dict(den), reduced=True)


ZERO = RatFunc(0)
ONE = RatFunc(1)


def gen(name: str) -> RatFunc:
    return RatFunc.gen(name)


Q, T, A, B, C, D = (gen(n) for n in PARAMS)
q = Q**2
t = T**2


def normal_form(value) -> RatFunc:
    """Canonical reduced representative; idempotent."""
    r = RatFunc.coerce(value)
    return RatFunc(r.num, r.den)


def t_infinity_leading(s: RatFunc, k: int = 0, var: str = "T") -> RatFunc:
    """``lim_{T -> oo} T^(2k) * s`` for a rational function ``s``.

    Raises :class:`DivergentLimit` when the T-degree excess is positive.
    """
    s = RatFunc.coerce(s)
    if s.is_zero():
        return ZERO
    i = INDEX[var]
    dn = s.num.degrees()[i]
    dd = s.den.degrees()[i]
    excess = dn - dd + 2 * k
    if excess > 0:
        raise DivergentLimit(f"limit diverges: {var}-degree excess {excess}", excess)
    if excess < 0:
        return ZERO
    return RatFunc(_top_coefficient(s.num, i, dn), _top_coefficient(s.den, i, dd))


def _top_coefficient(poly, i, d):
    out = {}
    for exps, c in poly.terms():
        if exps[i] == d:
            e = list(exps)
            e[i] = 0
            out[tuple(e)] = c
    return CTX.from_dict(out)


def exact_sqrt(r: RatFunc) -> RatFunc:
    """Square root with positive leading coefficient, or ScalarError."""
    r = RatFunc.coerce(r)
    if r.is_zero():
        return ZERO
    num, den = r.num, r.den
    if num.leading_coefficient() < 0:
        raise ScalarError(f"{r} has no square root with positive leading coefficient")
    try:
        n = num.sqrt()
        d = den.sqrt()
    except Exception as exc:  # flint raises DomainError
        raise ScalarError(f"{r} is not a perfect square") from exc
    if n.leading_coefficient() < 0:
        n = -n
    if d.leading_coefficient() < 0:
        d = -d
    return RatFunc(n, d)


def q_power(k: int) -> RatFunc:
    """``q^k = Q^(2k)``."""
    return RatFunc.monomial({"Q": 2 * k})


def t_power(k: int) -> RatFunc:
    return RatFunc.monomial({"T": 2 * k})


def product(values: Iterable[RatFunc]) -> RatFunc:
    return reduce(lambda a, b: a * b, values, ONE)


# parsing ----------------------------------------------------------------

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def parse(text: str) -> RatFunc:
    """Parse the canonical text form (``^`` powers, ``*``, ``/``, parentheses)."""
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                k = ev(exp)
                if not (k.is_scalar() and k.den.is_one() and k.num.is_constant()):
                    raise ValueError("exponent must be an integer")
                return ev(node.left) ** int(k.num.leading_coefficient() if not k.is_zero() else 0)
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise ValueError(f"unsupported operator in {text!r}")
            return op(ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -ev(node.operand)
            if isinstance(node.op, ast.UAdd):
                return ev(node.operand)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return RatFunc(node.value)
        if isinstance(node, ast.Name) and node.id in INDEX:
            return gen(node.id)
        raise ValueError(f"cannot parse {text!r}")

    return ev(tree)


# parameter points -------------------------------------------------------


class ParamPoint(dict):
    """Assignment ``generator -> RatFunc``; generators not present stay formal."""

    def __init__(self, assignments=None):
        super().__init__()
        for k, v in (assignments or {}).items():
            if k not in PARAMS:
                raise ValueError(f"unknown generator {k!r}")
            self[k] = RatFunc.coerce(v)
        for k, v in self.items():
            if k in v.variables():
                raise ValueError(f"assignment of {k} refers to itself")
            clash = v.variables() & set(self)
            if clash:
                raise ValueError(f"assignment of {k} uses assigned generators {sorted(clash)}")


def specialize(s: RatFunc, p: ParamPoint) -> RatFunc:
    return RatFunc.coerce(s).subs(p) if p else RatFunc.coerce(s)


class KParams:
    """Koornwinder parameters ``(a, b, c, d)`` as exact scalars."""

    __slots__ = ("a", "b", "c", "d", "name")

    def __init__(self, a, b, c, d, name="custom"):
        self.a, self.b, self.c, self.d = (RatFunc.coerce(v) for v in (a, b, c, d))
        self.name = name

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def __eq__(self, other):
        return isinstance(other, KParams) and tuple(self) == tuple(other)

    def __hash__(self):
        return hash(tuple(self))

    def __repr__(self):
        return f"KParams({self.name}: {', '.join(map(str, self))})"

    def __reduce__(self):
        return (KParams, (self.a, self.b, self.c, self.d, self.name))

    @property
    def sigma2(self) -> RatFunc:
        """``sigma^2 = abcd/q``."""
        return self.a * self.b * self.c * self.d / q

    @property
    def sigma(self) -> RatFunc:
        """``sigma`` when ``abcd/q`` is a perfect square (positive branch)."""
        try:
            return exact_sqrt(self.sigma2)
        except ScalarError as exc:
            raise UnsupportedParameter(f"sigma is not rational at {self!r}") from exc

    def dual(self) -> "KParams":
        """The starred parameters; signs of b*, d* as displayed, roots on the positive branch."""
        a, b, c, d = self
        try:
            return KParams(
                exact_sqrt(a * b * c * d / q),
                -exact_sqrt(q * a * b / (c * d)),
                exact_sqrt(q * a * c / (b * d)),
                -exact_sqrt(q * a * d / (b * c)),
                name=f"{self.name}*",
            )
        except ScalarError as exc:
            raise UnsupportedParameter(f"dual parameters are not monomial at {self!r}") from exc

    def to_json(self):
        return {"name": self.name, "a": str(self.a), "b": str(self.b), "c": str(self.c), "d": str(self.d)}


class UnsupportedParameter(ScalarError):
    pass


def _presets():
    return {
        "DN1": KParams(1, -1, Q, -Q, "DN1"),
        "BN1": KParams(t, -1, Q, -Q, "BN1"),
        "CN1": KParams(T, -T, T * Q, -T * Q, "CN1"),
        "A2N-1": KParams(T, -T, Q, -Q, "A2N-1"),
        "DN+12": KParams(t, -1, t * Q, -Q, "DN+12"),
        "A2N2": KParams(t, -1, T * Q, -T * Q, "A2N2"),
        "generic": KParams(A**2, -(B**2), C**2, -(D**2), "generic"),
        "formal": KParams(A, B, C, D, "formal"),
    }


PRESETS = _presets()
TABLE_ROWS = ("DN1", "BN1", "CN1", "A2N-1", "DN+12", "A2N2")
