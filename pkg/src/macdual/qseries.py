"""Truncated cone series, q-Pochhammer products and the Delta family.

A :class:`ConeSeries` stores ``sum_alpha c_alpha x^(o * alpha)`` over cone
elements ``alpha`` of height at most ``cutoff``; the orientation ``o`` is -1
for the usual expansion in ``x^-alpha`` and +1 for products such as
``Delta_plus`` that live in the opposite region.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .laurent import LaurentPoly
from .rootdata import (
    GENUS_TWO,
    Kind,
    WeightLabel,
    cone_coordinates,
    cone_elements,
    grade,
    in_cone,
    rho_vector,
    s_vector,
)
from .scalar import INDEX, ONE, ZERO, KParams, PoleError, RatFunc, ScalarError, gen, q_power, t

SCHEMA = "macdual/coneseries/1"


class SeriesError(ValueError):
    pass


class NonIntegralShift(SeriesError):
    pass


class ConeSeries:
    """Truncated series over the positive cone of a kind."""

    __slots__ = ("kind", "cutoff", "terms", "orientation")

    def __init__(self, kind: Kind, cutoff: int, terms: Mapping[tuple[int, ...], RatFunc] | None = None, orientation: int = -1):
        if cutoff < 0:
            raise SeriesError("cutoff must be nonnegative")
        if orientation not in (1, -1):
            raise SeriesError("orientation must be +1 or -1")
        self.kind = kind
        self.cutoff = cutoff
        self.orientation = orientation
        self.terms = {}
        for a, c in (terms or {}).items():
            a = tuple(a)
            if not in_cone(kind, a):
                raise SeriesError(f"{a} is not a cone element")
            if grade(kind, a) > cutoff:
                continue
            c = RatFunc.coerce(c)
            if not c.is_zero():
                self.terms[a] = c

    @classmethod
    def one(cls, kind, cutoff, orientation=-1):
        return cls(kind, cutoff, {(0,) * kind.N: ONE}, orientation)

    def coefficient(self, alpha) -> RatFunc:
        alpha = tuple(alpha)
        if grade(self.kind, alpha) > self.cutoff:
            raise SeriesError(f"coefficient at height {grade(self.kind, alpha)} is beyond the cutoff {self.cutoff}")
        return self.terms.get(alpha, ZERO)

    @property
    def constant(self) -> RatFunc:
        return self.terms.get((0,) * self.kind.N, ZERO)

    def _check(self, other):
        if self.kind != other.kind or self.orientation != other.orientation:
            raise SeriesError("series live in different cones")

    def __eq__(self, other):
        if not isinstance(other, ConeSeries):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.cutoff == other.cutoff
            and self.orientation == other.orientation
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.kind, self.cutoff, self.orientation, frozenset(self.terms.items())))

    def truncate(self, cutoff: int) -> "ConeSeries":
        if cutoff > self.cutoff:
            raise SeriesError("cannot raise the cutoff of a truncated series")
        return ConeSeries(self.kind, cutoff, self.terms, self.orientation)

    def __add__(self, other):
        self._check(other)
        h = min(self.cutoff, other.cutoff)
        out = dict(self.truncate(h).terms)
        for a, c in other.truncate(h).terms.items():
            out[a] = out[a] + c if a in out else c
        return ConeSeries(self.kind, h, out, self.orientation)

    def __neg__(self):
        return ConeSeries(self.kind, self.cutoff, {a: -c for a, c in self.terms.items()}, self.orientation)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ConeSeries":
        c = RatFunc.coerce(c)
        return ConeSeries(self.kind, self.cutoff, {a: c * v for a, v in self.terms.items()}, self.orientation)

    def __mul__(self, other):
        if not isinstance(other, ConeSeries):
            return self.scale(other)
        self._check(other)
        h = min(self.cutoff, other.cutoff)
        out: dict = {}
        for a, c1 in self.terms.items():
            ha = grade(self.kind, a)
            if ha > h:
                continue
            for b, c2 in other.terms.items():
                if ha + grade(self.kind, b) > h:
                    continue
                s = tuple(x + y for x, y in zip(a, b))
                v = c1 * c2
                out[s] = out[s] + v if s in out else v
        return ConeSeries(self.kind, h, out, self.orientation)

    __rmul__ = __mul__

    def inverse(self) -> "ConeSeries":
        c0 = self.constant
        if c0.is_zero():
            raise SeriesError("constant term is not invertible")
        inv0 = c0.inverse()
        out = {}
        rest = [(a, c) for a, c in self.terms.items() if any(a)]
        for alpha in cone_elements(self.kind, self.cutoff):
            if not any(alpha):
                out[alpha] = inv0
                continue
            acc = ZERO
            for b, c in rest:
                d = tuple(x - y for x, y in zip(alpha, b))
                if d in out:
                    acc = acc + c * out[d]
            if not acc.is_zero():
                out[alpha] = -inv0 * acc
        return ConeSeries(self.kind, self.cutoff, out, self.orientation)

    def shift(self, e: Sequence[int]) -> "ConeSeries":
        """The series of ``f(q^e x)``: ``x^(o alpha)`` picks up ``q^(o (e, alpha))``."""
        o = self.orientation
        return ConeSeries(
            self.kind,
            self.cutoff,
            {a: c * q_power(o * sum(x * y for x, y in zip(e, a))) for a, c in self.terms.items()},
            self.orientation,
        )

    def to_laurent(self, vars=None) -> LaurentPoly:
        vars = vars or self.kind.xvars
        o = self.orientation
        return LaurentPoly({tuple(o * x for x in a): c for a, c in self.terms.items()}, vars)

    def evaluate(self, point: Sequence[RatFunc]) -> RatFunc:
        return self.to_laurent().evaluate(point)

    def __repr__(self):
        return f"ConeSeries({self.kind.name}{self.kind.N}, h={self.cutoff}, {len(self.terms)} terms)"

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": self.kind.name,
            "N": self.kind.N,
            "cutoff": self.cutoff,
            "orientation": self.orientation,
            "terms": [{"alpha": list(a), "coef": self.terms[a].to_json()} for a in cone_elements(self.kind, self.cutoff) if a in self.terms],
        }

    @classmethod
    def from_json(cls, data) -> "ConeSeries":
        kind = Kind(data["kind"], data["N"])
        terms = {tuple(item["alpha"]): RatFunc.from_json(item["coef"]) for item in data["terms"]}
        return cls(kind, data["cutoff"], terms, data.get("orientation", -1))


# --- Pochhammer factors ------------------------------------------------------


@dataclass(frozen=True)
class PochFactor:
    """``prod_{n >= start} (1 - coeff * q^(base*n) * x^exp)^power``."""

    exp: tuple[int, ...]
    coeff: RatFunc = ONE
    base: int = 1
    power: int = 1
    start: int = 0

    def __post_init__(self):
        if self.power not in (1, -1):
            raise SeriesError("power must be +1 or -1")
        if self.start not in (0, 1):
            raise SeriesError("start index must be 0 or 1")
        if self.base < 1:
            raise SeriesError("base must be a positive power of q")

    def orientation(self, kind: Kind) -> int:
        neg = tuple(-x for x in self.exp)
        if any(self.exp) and in_cone(kind, neg):
            return -1
        if any(self.exp) and in_cone(kind, self.exp):
            return 1
        raise SeriesError(f"monomial x^{self.exp} is not strictly inside the cone")

    def value_at(self, u: RatFunc, n: int) -> RatFunc:
        return 1 - self.coeff * q_power(self.base * n) * u


def pochhammer_series(f: PochFactor, kind: Kind, cutoff: int, orientation: int | None = None) -> ConeSeries:
    """Expansion of a Pochhammer factor by the q-binomial theorem.

    With ``p = q^base`` and ``v = coeff p^start u``:
    ``(v; p)_oo = sum (-1)^m p^(m(m-1)/2) v^m / (p; p)_m`` and
    ``1/(v; p)_oo = sum v^m / (p; p)_m``.
    """
    o = f.orientation(kind)
    if orientation is not None and orientation != o:
        raise SeriesError("factor does not expand in the requested orientation")
    alpha = tuple(o * x for x in f.exp)
    step = grade(kind, alpha)
    v = f.coeff * q_power(f.base * f.start)
    terms = {}
    coef = ONE
    poch = ONE
    m = 0
    while m * step <= cutoff:
        if m > 0:
            poch = poch * (1 - q_power(f.base * m))
            if f.power == 1:
                sign = -1 if m % 2 else 1
                coef = sign * v**m * q_power(f.base * m * (m - 1) // 2) / poch
            else:
                coef = v**m / poch
        terms[tuple(m * a for a in alpha)] = coef
        m += 1
    return ConeSeries(kind, cutoff, terms, o)


def product_series(factors: Sequence[PochFactor], kind: Kind, cutoff: int) -> ConeSeries:
    if not factors:
        return ConeSeries.one(kind, cutoff)
    out = None
    for f in factors:
        s = pochhammer_series(f, kind, cutoff)
        out = s if out is None else out * s
    return out


# --- the Delta family --------------------------------------------------------


def _unit(N, i, s=1):
    return tuple(s if j == i else 0 for j in range(N))


def delta_factors_A(N: int) -> list[PochFactor]:
    """``prod_{n>=1} prod_{i<j} (1 - q^n x_j/x_i) / (1 - t^-1 q^n x_j/x_i)``."""
    out = []
    for i in range(N):
        for j in range(i + 1, N):
            u = tuple(a - b for a, b in zip(_unit(N, j), _unit(N, i)))
            out.append(PochFactor(u, ONE, 1, 1, 1))
            out.append(PochFactor(u, 1 / t, 1, -1, 1))
    return out


def delta_factors_A_plus(N: int) -> list[PochFactor]:
    """``prod_{n>=0} prod_{i<j} (1 - q^n x_i/x_j) / (1 - t q^n x_i/x_j)``."""
    out = []
    for i in range(N):
        for j in range(i + 1, N):
            u = tuple(a - b for a, b in zip(_unit(N, i), _unit(N, j)))
            out.append(PochFactor(u, ONE, 1, 1, 0))
            out.append(PochFactor(u, t, 1, -1, 0))
    return out


def delta_factors_K(N: int, params: KParams) -> list[PochFactor]:
    """Koornwinder weight: the four parameters enter the denominator only."""
    out = []
    for i in range(N):
        out.append(PochFactor(_unit(N, i, -2), ONE, 1, 1, 1))
        for p in params:
            out.append(PochFactor(_unit(N, i, -1), p.inverse(), 1, -1, 1))
    for i in range(N):
        for j in range(i + 1, N):
            for eps in (1, -1):
                u = tuple(a - b for a, b in zip(_unit(N, j, eps), _unit(N, i)))
                out.append(PochFactor(u, ONE, 1, 1, 1))
                out.append(PochFactor(u, 1 / t, 1, -1, 1))
    return out


def delta_factors_G2() -> list[PochFactor]:
    """Base ``q^2``: roots ``x_l^-2`` up, ``t^-1 x^-rho`` and ``t^-1 x^-alpha_i`` down."""
    a = ((1, 1, -1), (1, -1, 1), (-1, 1, 1))
    out = [PochFactor(_unit(3, l, -2), ONE, 2, 1, 1) for l in range(3)]
    out.append(PochFactor((-1, -1, -1), 1 / t, 2, -1, 1))
    for al in a:
        out.append(PochFactor(tuple(-x for x in al), 1 / t, 2, -1, 1))
    return out


def delta_factors(family: str, N: int = 3, params: KParams | None = None) -> list[PochFactor]:
    if family == "A":
        return delta_factors_A(N)
    if family == "A_plus":
        return delta_factors_A_plus(N)
    if family == "K":
        if params is None:
            raise SeriesError("Koornwinder Delta needs parameters")
        return delta_factors_K(N, params)
    if family == "G2":
        return delta_factors_G2()
    raise SeriesError(f"unknown Delta family {family!r}")


def family_kind(family: str, N: int) -> Kind:
    if family in ("A", "A_plus"):
        return Kind("A", N)
    if family == "K":
        return Kind("K", N)
    return GENUS_TWO


def delta_series(family: str, N: int, cutoff: int, params: KParams | None = None) -> ConeSeries:
    kind = family_kind(family, N)
    return product_series(delta_factors(family, kind.N, params), kind, cutoff)


# --- finite ratios at specialized points -------------------------------------


def _monomial_value(exp, point):
    out = ONE
    for e, p in zip(exp, point):
        if e:
            out = out * p**e
    return out


def _q_steps(ratio: RatFunc, base: int) -> int:
    """The integer ``m`` with ``ratio = q^(base*m)``, or NonIntegralShift."""
    qi = INDEX["Q"]
    nt = list(ratio.num.terms())
    dt = list(ratio.den.terms())
    if len(nt) != 1 or len(dt) != 1:
        raise NonIntegralShift(f"shift {ratio} is not a power of q")
    (en, cn), (ed, cd) = nt[0], dt[0]
    if cn != cd or any(en[i] != ed[i] for i in range(len(en)) if i != qi):
        raise NonIntegralShift(f"shift {ratio} is not a power of q")
    k = en[qi] - ed[qi]
    if k % (2 * base):
        raise NonIntegralShift(f"shift {ratio} is not an integral power of q^{base}")
    return k // (2 * base)


def factor_ratio(f: PochFactor, u: RatFunc, m: int) -> RatFunc:
    """``F(u) / F(p^m u)`` for ``F(u) = prod_{n>=start} (1 - c p^n u)``, raised to ``f.power``."""
    out = ONE
    if m >= 0:
        for n in range(f.start, f.start + m):
            out = out * f.value_at(u, n)
    else:
        for n in range(f.start + m, f.start):
            v = f.value_at(u, n)
            if v.is_zero():
                raise PoleError(f"factor 1 - {f.coeff} q^{f.base * n} u vanishes", v)
            out = out / v
    if f.power == 1:
        return out
    if out.is_zero():
        raise PoleError("a denominator Pochhammer factor vanishes", out)
    return out.inverse()


def delta_ratio(factors: Sequence[PochFactor], point_from: Sequence[RatFunc], point_to: Sequence[RatFunc]) -> RatFunc:
    """``Delta(point_from) / Delta(point_to)`` as a finite product."""
    out = ONE
    for f in factors:
        u_from = _monomial_value(f.exp, point_from)
        u_to = _monomial_value(f.exp, point_to)
        m = _q_steps(u_to / u_from, f.base)
        if m:
            out = out * factor_ratio(f, u_from, m)
    return out


def delta_ratio_shift(factors: Sequence[PochFactor], point: Sequence[RatFunc], shift: Sequence[int], vars: Sequence[str]) -> RatFunc:
    """``Delta(point) / Delta(q^shift point)``.

    The finite product is formed in formal variables ``vars`` and reduced
    before specializing, so factors that cancel identically (as for the
    degenerate parameter rows) never produce 0/0.
    """
    x = [gen(v) for v in vars]
    out = ONE
    for f in factors:
        k = sum(e * l for e, l in zip(f.exp, shift))
        if k % f.base:
            raise NonIntegralShift(f"shift {tuple(shift)} moves x^{f.exp} by a non-integral power of q^{f.base}")
        m = k // f.base
        if m:
            out = out * factor_ratio(f, _monomial_value(f.exp, x), m)
    return out.subs(dict(zip(vars, point)))


def delta_ratio_at(family: str, label_from: WeightLabel, label_to: WeightLabel, params: KParams | None = None) -> RatFunc:
    """``Delta(q^lambda t^rho) / Delta(q^mu t^rho)`` for two labels of one kind."""
    if label_from.kind != label_to.kind:
        raise SeriesError("labels of different kinds")
    kind = label_from.kind
    sigma = params.sigma if kind.name == "K" else None
    factors = delta_factors(family, kind.N, params)
    shift = [b - a for a, b in zip(label_from.lam, label_to.lam)]
    return delta_ratio_shift(factors, s_vector(label_from, sigma), shift, kind.xvars)


def norm_value(label: WeightLabel, params: KParams | None = None) -> RatFunc:
    """``t^(rho, lambda) Delta(t^rho) / Delta(q^lambda t^rho)`` in the kind's conventions."""
    from .rootdata import t_rho_power

    kind = label.kind
    family = {"A": "A", "K": "K", "G2": "G2"}[kind.name]
    zero = WeightLabel(kind, (0,) * kind.N)
    ratio = delta_ratio_at(family, zero, label, params)
    point = rho_vector(kind, params.a) if kind.name == "K" else None
    return t_rho_power(kind, label.lam, point) * ratio


# --- rational functions as cone series ------------------------------------------


def expand_rational(num: LaurentPoly, den: LaurentPoly, kind: Kind, cutoff: int, orientation: int = -1):
    """Expand ``num/den`` in the region where ``x^(o alpha)`` is small.

    Returns ``(offset, series)`` with ``num/den = x^offset * series``.  The
    denominator's extreme term must be unique and all others must differ from
    it by cone elements; for ``1/(x_i - x_j)``, ``i < j``, this is the region
    ``|x_j / x_i| < 1``.
    """
    if den.is_zero():
        raise SeriesError("zero denominator")
    if num.is_zero():
        return (0,) * kind.N, ConeSeries(kind, cutoff, {}, orientation)
    o = orientation

    def lead(p):
        best = None
        for e in p.terms:
            if best is None or -o * grade(kind, e) > -o * grade(kind, best):
                best = e
        ties = [e for e in p.terms if grade(kind, e) == grade(kind, best)]
        if len(ties) > 1:
            raise SeriesError("no unique leading term; expansion region undefined")
        return best

    def rel(p, top):
        out = {}
        for e, c in p.terms.items():
            a = tuple(o * (x - y) for x, y in zip(e, top))
            if not in_cone(kind, a):
                raise SeriesError(f"term x^{e} is outside the cone below the leading term")
            out[a] = c
        return ConeSeries(kind, cutoff, out, o)

    dtop = lead(den)
    ntop = lead(num)
    dser = rel(den, dtop)
    nser = rel(num, ntop)
    offset = tuple(a - b for a, b in zip(ntop, dtop))
    return offset, nser * dser.inverse()


def expand_ratfunc(r: RatFunc, kind: Kind, cutoff: int, orientation: int = -1, vars=None):
    """Expansion of a RatFunc in ``vars`` (default: the x variables of ``kind``)."""
    vars = tuple(vars or kind.xvars)
    num = LaurentPoly.from_ratfunc(RatFunc(r.num, reduced=True), vars)
    den = LaurentPoly.from_ratfunc(RatFunc(r.den, reduced=True), vars)
    return expand_rational(num, den, kind, cutoff, orientation)


def conjugation_coefficient(D: ConeSeries, shift: Sequence[int]) -> ConeSeries:
    """``D(q^shift x) / D(x)`` as a truncated series."""
    if D.constant.is_zero():
        raise SeriesError("constant term is not invertible")
    return D.shift(shift) * D.inverse()


def macdonald_A_coefficient(N: int, a: int) -> RatFunc:
    """``A_a(x) = prod_{i <= a < j} (t x_i - x_j)/(x_i - x_j)``."""
    x = [gen(f"x{i + 1}") for i in range(N)]
    out = ONE
    for i in range(a):
        for j in range(a, N):
            out = out * (t * x[i] - x[j]) / (x[i] - x[j])
    return out


__all__ = [
    "ConeSeries",
    "PochFactor",
    "SeriesError",
    "NonIntegralShift",
    "ScalarError",
    "pochhammer_series",
    "product_series",
    "delta_factors",
    "delta_factors_A",
    "delta_factors_A_plus",
    "delta_factors_K",
    "delta_factors_G2",
    "delta_series",
    "delta_ratio",
    "delta_ratio_at",
    "norm_value",
    "factor_ratio",
    "expand_rational",
    "expand_ratfunc",
    "conjugation_coefficient",
    "macdonald_A_coefficient",
    "cone_coordinates",
]
