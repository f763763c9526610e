"""q-difference operators: representation, action, algebra and constructors.

An operator is a finite sum ``sum_eps c_eps(x) Gamma^eps`` with
``Gamma_i f(x) = f(..., q x_i, ...)``.  The same class represents operators
in the spectral variables ``Lambda_i = q^{lambda_i}`` (flavor ``"lambda"``),
where the shift ``T_i`` plays the role of ``Gamma_i``.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Callable, Mapping, Sequence

from . import qseries
from .laurent import LaurentPoly
from .rootdata import GENUS_TWO, Kind, rho_vector
from .scalar import (
    CTX,
    ONE,
    ZERO,
    KParams,
    RatFunc,
    gen,
    q,
    q_power,
    t,
    t_infinity_leading,
    t_power,
)

SCHEMA = "macdual/diffop/1"


class OperatorError(ValueError):
    pass


class DiffOp:
    """Exact q-difference operator with merged, nonzero terms."""

    __slots__ = ("vars", "flavor", "terms", "_cleared")

    def __init__(self, terms: Mapping[tuple[int, ...], RatFunc], vars: Sequence[str], flavor: str = "x"):
        if flavor not in ("x", "lambda"):
            raise ValueError("flavor must be 'x' or 'lambda'")
        self.vars = tuple(vars)
        self.flavor = flavor
        self.terms = {}
        for e, c in terms.items():
            c = RatFunc.coerce(c)
            if len(e) != len(self.vars):
                raise ValueError("shift length does not match dimension")
            if not c.is_zero():
                self.terms[tuple(e)] = c
        self._cleared = None

    @property
    def dim(self) -> int:
        return len(self.vars)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.vars == other.vars and self.flavor == other.flavor and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, self.flavor, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, shift) -> RatFunc:
        return self.terms.get(tuple(shift), ZERO)

    def _compatible(self, other):
        if self.vars != other.vars or self.flavor != other.flavor:
            raise OperatorError("operators act on different spaces")

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return DiffOp(out, self.vars, self.flavor)

    def __neg__(self):
        return DiffOp({e: -c for e, c in self.terms.items()}, self.vars, self.flavor)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        c = RatFunc.coerce(c)
        return DiffOp({e: c * v for e, v in self.terms.items()}, self.vars, self.flavor)

    def map_coefficients(self, fn: Callable[[tuple, RatFunc], RatFunc]) -> "DiffOp":
        return DiffOp({e: fn(e, c) for e, c in self.terms.items()}, self.vars, self.flavor)

    def relabel(self, perm: Sequence[int]) -> "DiffOp":
        """Rename slot ``i`` to slot ``perm[i]`` in shifts and coefficients."""
        mapping = {self.vars[i]: gen(self.vars[perm[i]]) for i in range(self.dim)}
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.dim
            for i, k in enumerate(e):
                ne[perm[i]] = k
            out[tuple(ne)] = c.subs(mapping)
        return DiffOp(out, self.vars, self.flavor)

    # action ----------------------------------------------------------------
    def __call__(self, f: LaurentPoly) -> LaurentPoly:
        return apply(self, f)

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        return compose(self, other)

    def __repr__(self):
        return f"DiffOp({self.flavor}, {len(self.terms)} terms)"

    def __str__(self):
        sym = "Gamma" if self.flavor == "x" else "T"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"{sym}{i + 1}^{k}" if k != 1 else f"{sym}{i + 1}" for i, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        """Each coefficient as a pair of Laurent polynomials in the operator variables."""
        terms = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            num = LaurentPoly.from_ratfunc(RatFunc(c.num, reduced=True), self.vars)
            den = LaurentPoly.from_ratfunc(RatFunc(c.den, reduced=True), self.vars)
            terms.append({"shift": list(e), "num": num.to_json(), "den": den.to_json()})
        return {"schema": SCHEMA, "dim": self.dim, "flavor": self.flavor, "vars": list(self.vars), "terms": terms}

    @classmethod
    def from_json(cls, data) -> "DiffOp":
        terms = {}
        for item in data["terms"]:
            num = LaurentPoly.from_json(item["num"]).to_ratfunc()
            den = LaurentPoly.from_json(item["den"]).to_ratfunc()
            terms[tuple(item["shift"])] = num / den
        return cls(terms, data["vars"], data["flavor"])


def shift_coefficient(c: RatFunc, vars: Sequence[str], shift: Sequence[int]) -> RatFunc:
    """``c(q^shift x)``."""
    return c.shift_powers(vars, shift)


def apply(D: DiffOp, f: LaurentPoly) -> LaurentPoly:
    """Exact action on a Laurent polynomial.

    All terms are brought over the operator's common denominator and the sum
    is reduced once; a leftover non-monomial denominator raises NotLaurent.
    """
    if D.vars != f.vars:
        raise OperatorError("operator and polynomial use different variables")
    if f.is_zero() or D.is_zero():
        return LaurentPoly.zero(f.vars)
    den_l, nums = _cleared(D)
    F = f.to_ratfunc()
    total = ZERO
    for e, n in nums.items():
        total = total + RatFunc(n, reduced=True) * F.shift_powers(D.vars, e)
    return LaurentPoly.from_ratfunc(total / RatFunc(den_l, reduced=True), f.vars)


def _cleared(D: DiffOp):
    if D._cleared is None:
        den = CTX.constant(1)
        for c in D.terms.values():
            g = den.gcd(c.den)
            den = den * (c.den / g)
        nums = {e: c.num * (den / c.den) for e, c in D.terms.items()}
        D._cleared = (den, nums)
    return D._cleared


def compose(D1: DiffOp, D2: DiffOp) -> DiffOp:
    """``D1 o D2``: ``(c1 G^e1)(c2 G^e2) = c1 c2(q^e1 x) G^(e1+e2)``."""
    D1._compatible(D2)
    out: dict = {}
    for e1, c1 in D1.terms.items():
        for e2, c2 in D2.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = c1 * shift_coefficient(c2, D1.vars, e1)
            out[e] = out[e] + v if e in out else v
    return DiffOp(out, D1.vars, D1.flavor)


def commutator(D1: DiffOp, D2: DiffOp) -> DiffOp:
    return compose(D1, D2) - compose(D2, D1)


def identity(vars, flavor="x") -> DiffOp:
    return DiffOp({(0,) * len(vars): ONE}, vars, flavor)


def multiplication(f: RatFunc, vars, flavor="x") -> DiffOp:
    return DiffOp({(0,) * len(vars): f}, vars, flavor)


# --- constructors ----------------------------------------------------------


def _x(vars):
    return [gen(v) for v in vars]


def macdonald(N: int, a: int, n: int = 0) -> DiffOp:
    """Macdonald operator ``D_{a,n}``; ``n = 0`` is the untwisted operator."""
    if not 1 <= a <= N:
        raise OperatorError(f"Macdonald index a={a} out of range for N={N}")
    vars = tuple(f"x{i + 1}" for i in range(N))
    x = _x(vars)
    terms = {}
    for I in itertools.combinations(range(N), a):
        c = ONE
        for i in I:
            for j in range(N):
                if j not in I:
                    c = c * (t * x[i] - x[j]) / (x[i] - x[j])
            c = c * x[i] ** n
        terms[tuple(1 if i in I else 0 for i in range(N))] = c
    return DiffOp(terms, vars)


def koornwinder(N: int, params: KParams) -> DiffOp:
    """First Koornwinder operator, normalized so that ``D.1 = (1-t^N)/(1-t) (1 + sigma^2 t^(N-1))``."""
    vars = tuple(f"x{i + 1}" for i in range(N))
    x = _x(vars)
    a, b, c, d = params
    const = (1 - t**N) / (1 - t) * (1 + params.sigma2 * t ** (N - 1))
    terms = {}
    zero = (0,) * N
    total = ZERO
    for i in range(N):
        for eps in (1, -1):
            xi = x[i] ** eps
            phi = (1 - a * xi) * (1 - b * xi) * (1 - c * xi) * (1 - d * xi) / ((1 - xi**2) * (1 - q * xi**2))
            for j in range(N):
                if j != i:
                    phi = phi * (t * xi - x[j]) / (xi - x[j]) * (t * xi * x[j] - 1) / (xi * x[j] - 1)
            terms[tuple(eps if k == i else 0 for k in range(N))] = phi
            total = total + phi
    terms[zero] = const - total
    return DiffOp(terms, vars)


def genus_two(i: int, j: int) -> DiffOp:
    """Genus-2 operator ``D_{ij}`` (1-based, i < j)."""
    pair = tuple(sorted((i, j)))
    if pair not in ((1, 2), (1, 3), (2, 3)):
        raise OperatorError(f"invalid genus-2 pair {i},{j}")
    i, j = pair[0] - 1, pair[1] - 1
    k = 3 - i - j
    vars = GENUS_TWO.xvars
    x = _x(vars)
    terms = {}
    for ei, ej in itertools.product((1, -1), repeat=2):
        m = x[i] ** ei * x[j] ** ej
        c = (t * m * x[k] - 1) * (t * m / x[k] - 1) / ((x[i] ** (2 * ei) - 1) * (x[j] ** (2 * ej) - 1)) / t
        e = [0, 0, 0]
        e[i], e[j] = ei, ej
        terms[tuple(e)] = c
    return DiffOp(terms, vars)


G2_PAIR_OF_SLOT = {1: (1, 2), 2: (1, 3), 3: (2, 3)}
G2_SLOT_OF_PAIR = {v: k for k, v in G2_PAIR_OF_SLOT.items()}
# relabelings carrying slot 1 of H_1 to the slot multiplied by H_l
G2_CYCLIC = {1: (0, 1, 2), 2: (2, 0, 1), 3: (1, 2, 0)}


def pieri_explicit_A(N: int, a: int) -> DiffOp:
    """The explicit type-A Pieri operator in the variables ``Lambda``."""
    if not 1 <= a <= N:
        raise OperatorError(f"Pieri index a={a} out of range for N={N}")
    vars = tuple(f"L{i + 1}" for i in range(N))
    L = _x(vars)
    terms = {}
    for I in itertools.combinations(range(N), a):
        c = ONE
        for i in I:
            for j in range(i):
                if j in I:
                    continue
                d = i - j
                c = c * (t ** (d - 1) * L[j] - L[i]) / (t**d * L[j] - L[i])
                c = c * (t ** (d + 1) * L[j] - q * L[i]) / (t**d * L[j] - q * L[i])
        terms[tuple(1 if i in I else 0 for i in range(N))] = c
    return DiffOp(terms, vars, "lambda")


def pieri_explicit_G2(l: int) -> DiffOp:
    """Explicit genus-2 Pieri operator; ``l = 2, 3`` by cyclic relabeling of ``l = 1``."""
    if l not in (1, 2, 3):
        raise OperatorError("genus-2 Pieri index must be 1, 2 or 3")
    vars = GENUS_TWO.lvars
    L1, L2, L3 = _x(vars)
    qi = q_power(-2)
    t2 = t**2
    c_pm = t * L1 * L2 / L3 * (1 - L2 * L3 / L1) * (1 - qi * t2 * L2 * L3 / L1) / (
        (1 - t2 * L2**2) * (1 - qi * t2 * L2**2)
    )
    c_mp = t * L1 * L2 / L3 * (1 - L1 * L3 / L2) * (1 - qi * t2 * L1 * L3 / L2) / (
        (1 - t2 * L1**2) * (1 - qi * t2 * L1**2)
    )
    p = L1 * L2 * L3
    c_mm = (
        (1 - L1 * L2 / L3)
        * (1 - qi * t2 * L1 * L2 / L3)
        * (1 - t2 * p)
        * (1 - qi * t2**2 * p)
        / ((1 - t2 * L1**2) * (1 - t2 * L2**2) * (1 - qi * t2 * L1**2) * (1 - qi * t2 * L2**2))
    )
    H1 = DiffOp({(1, 1, 0): ONE, (1, -1, 0): c_pm, (-1, 1, 0): c_mp, (-1, -1, 0): c_mm}, vars, "lambda")
    return H1 if l == 1 else H1.relabel(G2_CYCLIC[l])


def toda_A(N: int) -> DiffOp:
    """``H_1 = T_1 + sum_{i>=2} (1 - Lambda_i / Lambda_{i-1}) T_i``."""
    vars = tuple(f"L{i + 1}" for i in range(N))
    L = _x(vars)
    terms = {tuple(1 if j == 0 else 0 for j in range(N)): ONE}
    for i in range(1, N):
        terms[tuple(1 if j == i else 0 for j in range(N))] = 1 - L[i] / L[i - 1]
    return DiffOp(terms, vars, "lambda")


def toda_G2(l: int) -> DiffOp:
    vars = GENUS_TWO.lvars
    L1, L2, L3 = _x(vars)
    H = DiffOp({(1, 1, 0): ONE, (-1, -1, 0): 1 - L3 / (L1 * L2)}, vars, "lambda")
    return H if l == 1 else H.relabel(G2_CYCLIC[l])


def whittaker_A(N: int, a: int, n: int = 0) -> DiffOp:
    """Direct q-Whittaker operator ``sum_I prod x_i/(x_i - x_j) prod x_i^n Gamma_I``."""
    vars = tuple(f"x{i + 1}" for i in range(N))
    x = _x(vars)
    terms = {}
    for I in itertools.combinations(range(N), a):
        c = ONE
        for i in I:
            for j in range(N):
                if j not in I:
                    c = c * x[i] / (x[i] - x[j])
            c = c * x[i] ** n
        terms[tuple(1 if i in I else 0 for i in range(N))] = c
    return DiffOp(terms, vars)


def a1_whittaker(slot: int, dim: int = 3) -> DiffOp:
    """``D_1(x) = x^2/(x^2-1) Gamma + x^-2/(x^-2-1) Gamma^-1`` acting on one slot."""
    vars = tuple(f"x{i + 1}" for i in range(dim))
    x = gen(vars[slot - 1])
    up = tuple(1 if k == slot - 1 else 0 for k in range(dim))
    down = tuple(-v for v in up)
    return DiffOp({up: x**2 / (x**2 - 1), down: x**-2 / (x**-2 - 1)}, vars)


def whittaker_G2(i: int, j: int) -> DiffOp:
    """Direct factorized limit ``sum x_i^{2e}/(x_i^{2e}-1) x_j^{2f}/(x_j^{2f}-1) Gamma_i^e Gamma_j^f``."""
    vars = GENUS_TWO.xvars
    x = _x(vars)
    terms = {}
    for ei, ej in itertools.product((1, -1), repeat=2):
        a = x[i - 1] ** (2 * ei)
        b = x[j - 1] ** (2 * ej)
        e = [0, 0, 0]
        e[i - 1], e[j - 1] = ei, ej
        terms[tuple(e)] = a / (a - 1) * b / (b - 1)
    return DiffOp(terms, vars)


def twist(D: DiffOp, n: int) -> DiffOp:
    """Adjoint action of the n-th power of the inverse Gaussian.

    ``Gamma^e -> x^(n e) q^(n |e|^2 / 2) Gamma^e``; the half power is ``Q^(n |e|^2)``.
    """
    def tw(e, c):
        mono = RatFunc.monomial({v: n * k for v, k in zip(D.vars, e)})
        return c * mono * RatFunc.monomial({"Q": n * sum(k * k for k in e)})

    return D.map_coefficients(tw)


def macdonald_twisted_via_gaussian(N: int, a: int, n: int) -> DiffOp:
    """``q^(-n a / 2) Ad_{gamma^-n} D_a`` built from the untwisted operator."""
    return twist(macdonald(N, a, 0), n).scale(RatFunc.monomial({"Q": -n * a}))


# --- limits ---------------------------------------------------------------


def op_t_limit(D: DiffOp, renorm: int) -> DiffOp:
    """Coefficient-wise ``lim_{t->oo} t^renorm * D``; vanishing terms dropped."""
    out = {}
    for e, c in D.terms.items():
        try:
            out[e] = t_infinity_leading(c, renorm)
        except ValueError as exc:
            raise OperatorError(f"term with shift {e} diverges: {exc}") from exc
    return DiffOp(out, D.vars, D.flavor)


# --- adjoint construction of Pieri operators ------------------------------


def _to_lambda_space(D: DiffOp, point: Sequence[RatFunc]) -> DiffOp:
    """Rewrite an x-space operator in spectral variables via ``x_i -> point_i``."""
    lvars = tuple(f"L{i + 1}" for i in range(D.dim))
    mapping = {v: p for v, p in zip(D.vars, point)}
    return DiffOp({e: c.subs(mapping) for e, c in D.terms.items()}, lvars, "lambda")


def adjoint_by_delta(D: DiffOp, factors, point: Sequence[RatFunc], weight: Callable[[tuple], RatFunc]) -> DiffOp:
    """``Ad_{Delta(s)^-1 w(lambda)} D(s)`` with ``s = point`` (functions of Lambda).

    Each term ``c(s) T^e`` becomes ``c(s) Delta(q^e s)/Delta(s) w(lambda)/w(lambda+e) T^e``;
    ``weight(e)`` must return ``w(lambda)/w(lambda+e)``.
    """
    L = _to_lambda_space(D, point)
    out = {}
    for e, c in L.terms.items():
        shifted = [p * q_power(k) for p, k in zip(point, e)]
        ratio = qseries.delta_ratio(factors, shifted, point)
        out[e] = c * ratio * weight(e)
    return DiffOp(out, L.vars, "lambda")


def pieri_adjoint_A(N: int, a: int) -> DiffOp:
    kind = Kind("A", N)
    L = [gen(f"L{i + 1}") for i in range(N)]
    point = [l * r for l, r in zip(L, rho_vector(kind))]
    rho = [N - 1 - i for i in range(N)]
    weight = lambda e: t_power(-sum(r * k for r, k in zip(rho, e)))  # noqa: E731
    H = adjoint_by_delta(macdonald(N, a), qseries.delta_factors_A(N), point, weight)
    return H.scale(t_power(comb(a, 2)))


def pieri_adjoint_G2(l: int) -> DiffOp:
    i, j = G2_PAIR_OF_SLOT[l]
    L = [gen(v) for v in GENUS_TWO.lvars]
    point = [t * v for v in L]
    weight = lambda e: RatFunc.monomial({"T": -sum(e)})  # noqa: E731
    return adjoint_by_delta(genus_two(i, j), qseries.delta_factors_G2(), point, weight)


def pieri_adjoint_K(N: int, params: KParams, m: int = 1) -> DiffOp:
    """Koornwinder Pieri operator from the dual-parameter operator.

    The conjugating weight ``t^(rho*, lambda)`` is ``prod (a t^(N-i))^lambda_i``.
    """
    if m != 1:
        raise OperatorError("only the first Koornwinder Pieri operator is available")
    dual = params.dual()
    sigma = params.sigma
    L = [gen(f"L{i + 1}") for i in range(N)]
    kind = Kind("K", N)
    point = [l * r for l, r in zip(L, rho_vector(kind, sigma))]
    rho_star = rho_vector(kind, params.a)

    def weight(e):
        w = ONE
        for r, k in zip(rho_star, e):
            w = w * r ** (-k)
        return w

    H = adjoint_by_delta(koornwinder(N, dual), qseries.delta_factors_K(N, dual), point, weight)
    return H.scale(params.a ** (-m) * t ** (m * (1 - N)))


def pieri_adjoint(kind: Kind, index: int, params: KParams | None = None) -> DiffOp:
    if kind.name == "A":
        return pieri_adjoint_A(kind.N, index)
    if kind.name == "G2":
        return pieri_adjoint_G2(index)
    return pieri_adjoint_K(kind.N, params, index)


def pieri_explicit(kind: Kind, index: int) -> DiffOp:
    if kind.name == "A":
        return pieri_explicit_A(kind.N, index)
    if kind.name == "G2":
        return pieri_explicit_G2(index)
    raise OperatorError("no explicit Koornwinder Pieri display; use pieri_adjoint")


def operators_for(kind: Kind, params: KParams | None = None) -> list[DiffOp]:
    """The commuting family whose joint eigenfunctions are the polynomials."""
    if kind.name == "A":
        return [macdonald(kind.N, a) for a in range(1, kind.N + 1)]
    if kind.name == "K":
        return [koornwinder(kind.N, params)]
    return [genus_two(1, 2), genus_two(1, 3), genus_two(2, 3)]


# --- psi normalization ----------------------------------------------------


def psi_pieri_G2(H: DiffOp) -> DiffOp:
    """Pieri operator for ``psi_lambda = r(lambda) P_lambda``.

    ``r(lambda) = t^-(rho,lambda) prod_k prod_{i<lambda_k} (1-t^4 q^2i)/(1-t^2 q^2i) / P_lambda(t^rho)``
    with ``P_lambda(t^rho) = t^((rho,lambda)/2) Delta(t^rho)/Delta(q^lambda t^rho)``.  The term
    ``c T^e`` becomes ``c r(lambda)/r(lambda+e) T^e``.
    """
    L = [gen(v) for v in GENUS_TWO.lvars]
    point = [t * v for v in L]
    factors = qseries.delta_factors_G2()

    def conv(e, c):
        # t-power part of r(lambda)/r(lambda+e): t^{(rho,e)} * t^{(rho,e)/2}
        ratio = RatFunc.monomial({"T": 3 * sum(e)})
        for Lk, k in zip(L, e):
            ratio = ratio * _pochhammer_block(Lk, k)
        # P_(lambda+e)(t^rho) / P_lambda(t^rho) contributes Delta(q^lambda s)/Delta(q^(lambda+e) s)
        shifted = [p * q_power(k) for p, k in zip(point, e)]
        ratio = ratio * qseries.delta_ratio(factors, point, shifted)
        return c * ratio

    return H.map_coefficients(conv)


def _pochhammer_block(Lk: RatFunc, k: int) -> RatFunc:
    """``prod_{i<lambda} f(i) / prod_{i<lambda+k} f(i)`` with ``f(i) = (1-t^2 q^2i... )``.

    Here ``f(i) = (1 - t^4 q^(2i)) / (1 - t^2 q^(2i))`` and ``q^lambda = Lk``.
    """
    out = ONE
    L2 = Lk**2
    if k > 0:
        for j in range(k):
            qq = L2 * q_power(2 * j)
            out = out * (1 - t * qq) / (1 - t**2 * qq)
    else:
        for j in range(1, -k + 1):
            qq = L2 * q_power(-2 * j)
            out = out * (1 - t**2 * qq) / (1 - t * qq)
    return out
