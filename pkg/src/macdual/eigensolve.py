"""Monic eigenpolynomials, eigenvalues and universal series.

Polynomials are solved by back-substitution in the orbit-sum basis: the
operators are triangular for the dominance order, so the eigen equation
determines each lower coefficient from the higher ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Mapping

from . import diffop
from .laurent import LaurentPoly, basis_monomial, dominant_coefficients, elementary
from .qseries import expand_ratfunc
from .rootdata import (
    Kind,
    WeightLabel,
    cone_elements,
    dominance_lower_set,
    grade,
    in_cone,
    label_of_exponent,
    leading_exponent,
    rho_vector,
    s_vector,
)
from .scalar import ONE, ZERO, KParams, RatFunc, gen, q_power, t, t_power

SCHEMA_POLY = "macdual/eigenpoly/1"
SCHEMA_SERIES = "macdual/universal/1"


class DegeneracyError(ArithmeticError):
    """A pivot of the triangular solve vanishes."""


class ResonanceError(ArithmeticError):
    """An eigenvalue difference in the universal recursion vanishes."""


class NotTriangular(ArithmeticError):
    pass


# --- eigenvalues -----------------------------------------------------------


def _elementary_values(values, a):
    """``e_a`` of a list of scalars by the usual recursion."""
    e = [ONE] + [ZERO] * a
    for v in values:
        for k in range(a, 0, -1):
            e[k] = e[k] + v * e[k - 1]
    return e[a]


def eigenvalue(label: WeightLabel, index: int = 1, params: KParams | None = None) -> RatFunc:
    """Eigenvalue of operator ``index`` on ``P_label``.

    Type A: ``t^-binom(a,2) e_a(s)``; Koornwinder (first operator only):
    ``sigma t^(N-1) hat e_1(s)``; genus 2 (index = l): ``s_l + 1/s_l``.
    """
    kind = label.kind
    if kind.name == "A":
        if not 1 <= index <= kind.N:
            raise ValueError(f"operator index {index} out of range")
        return t_power(-comb(index, 2)) * _elementary_values(s_vector(label), index)
    if kind.name == "K":
        if index != 1:
            raise ValueError("only the first Koornwinder operator is implemented")
        N = kind.N
        # sigma * s_i and sigma / s_i only involve sigma^2
        total = ZERO
        for i, l in enumerate(label.lam):
            tr = t_power(N - 1 - i) * q_power(l)
            total = total + params.sigma2 * tr + ONE / tr
        return t_power(N - 1) * total
    if index not in (1, 2, 3):
        raise ValueError("genus-2 operator index must be 1, 2 or 3")
    s = t * q_power(label.lam[index - 1])
    return s + s.inverse()


def eigenvalue_lambda(kind: Kind, index: int = 1, params: KParams | None = None) -> RatFunc:
    """The same eigenvalue as a function of the formal spectral variables ``Lambda``."""
    L = [gen(v) for v in kind.lvars]
    N = kind.N
    if kind.name == "A":
        s = [l * r for l, r in zip(L, rho_vector(kind))]
        return t_power(-comb(index, 2)) * _elementary_values(s, index)
    if kind.name == "K":
        total = ZERO
        for i, l in enumerate(L):
            tr = t_power(N - 1 - i) * l
            total = total + params.sigma2 * tr + tr.inverse()
        return t_power(N - 1) * total
    s = t * L[index - 1]
    return s + s.inverse()


# --- operators and basis matrices --------------------------------------------


@lru_cache(maxsize=None)
def family_operators(kind: Kind, params: KParams | None = None) -> tuple:
    return tuple(diffop.operators_for(kind, params))


def operator_indices(kind: Kind) -> tuple[int, ...]:
    if kind.name == "A":
        return tuple(range(1, kind.N + 1))
    if kind.name == "K":
        return (1,)
    return (1, 2, 3)


@lru_cache(maxsize=None)
def operator_column(kind: Kind, params: KParams | None, op_pos: int, lam: tuple[int, ...]) -> dict:
    """``D m_mu`` expanded on orbit sums: ``{nu: coefficient}``; checks triangularity."""
    D = family_operators(kind, params)[op_pos]
    label = WeightLabel(kind, lam)
    image = diffop.apply(D, basis_monomial(label))
    out = {}
    for e, c in dominant_coefficients(kind, image).items():
        nu = label_of_exponent(kind, e)
        out[nu] = c
    allowed = {m.lam for m in dominance_lower_set(label)}
    stray = set(out) - allowed
    if stray:
        raise NotTriangular(f"operator maps m_{lam} outside its lower set: {sorted(stray)}")
    return out


# --- eigenpolynomials -----------------------------------------------------------


@dataclass(frozen=True)
class EigenPoly:
    label: WeightLabel
    expansion: Mapping[tuple[int, ...], RatFunc]
    params: KParams | None = field(default=None, compare=True)

    def coefficient(self, mu) -> RatFunc:
        return self.expansion.get(tuple(mu), ZERO)

    def to_laurent(self) -> LaurentPoly:
        kind = self.label.kind
        out = LaurentPoly.zero(kind.xvars)
        for mu, c in self.expansion.items():
            out = out + basis_monomial(WeightLabel(kind, mu)) * c
        return out

    def evaluate(self, point) -> RatFunc:
        return self.to_laurent().evaluate(point)

    def ordered_items(self):
        order = [m.lam for m in dominance_lower_set(self.label)]
        return [(mu, self.expansion[mu]) for mu in order if mu in self.expansion]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_POLY,
            "kind": self.label.kind.name,
            "N": self.label.kind.N,
            "label": list(self.label.lam),
            "params": self.params.to_json() if self.params is not None else None,
            "expansion": [{"mu": list(mu), "coef": c.to_json()} for mu, c in self.ordered_items()],
        }


def eigen_poly(label: WeightLabel, params: KParams | None = None) -> EigenPoly:
    return _eigen_poly(label.kind, label.lam, params if label.kind.name == "K" else None)


@lru_cache(maxsize=None)
def _eigen_poly(kind: Kind, lam: tuple[int, ...], params: KParams | None) -> EigenPoly:
    if kind.name == "K" and params is None:
        raise ValueError("Koornwinder polynomials need parameters")
    label = WeightLabel(kind, lam)
    lower = [m.lam for m in dominance_lower_set(label)]
    # A and K: the first operator separates labels; G2 needs all three
    ops = (0,) if kind.name != "G2" else (0, 1, 2)
    idx = operator_indices(kind)
    E = {k: eigenvalue(label, idx[k], params) for k in ops}
    diag = {}
    coeffs = {lam: ONE}
    for nu in lower[1:]:
        pivot = None
        for k in ops:
            d = operator_column(kind, params, k, nu).get(nu, ZERO) - E[k]
            if not d.is_zero():
                pivot = (k, d)
                break
        if pivot is None:
            raise DegeneracyError(f"no operator separates {nu} from {lam}")
        k, d = pivot
        acc = ZERO
        for mu, c in coeffs.items():
            a = operator_column(kind, params, k, mu).get(nu)
            if a is not None:
                acc = acc + a * c
        diag[nu] = k
        value = -acc / d
        if not value.is_zero():
            coeffs[nu] = value
    # the label's own diagonal entry must equal the eigenvalue
    for k in ops:
        if operator_column(kind, params, k, lam).get(lam, ZERO) != E[k]:
            raise DegeneracyError(f"diagonal entry of operator {idx[k]} at {lam} differs from the eigenvalue")
    return EigenPoly(label, dict(coeffs), params)


def residual(P: EigenPoly, op_pos: int) -> dict:
    """``(D - E) P`` on orbit sums (empty iff the eigen equation holds)."""
    kind = P.label.kind
    idx = operator_indices(kind)
    E = eigenvalue(P.label, idx[op_pos], P.params)
    out: dict = {}
    for mu, c in P.expansion.items():
        for nu, a in operator_column(kind, P.params, op_pos, mu).items():
            out[nu] = out.get(nu, ZERO) + a * c
    out[P.label.lam] = out.get(P.label.lam, ZERO) - E
    for mu, c in P.expansion.items():
        if mu != P.label.lam:
            out[mu] = out.get(mu, ZERO) - E * c
    return {k: v for k, v in out.items() if not v.is_zero()}


def residual_direct(P: EigenPoly, D, E: RatFunc) -> LaurentPoly:
    """``D P - E P`` computed by applying the operator to the full polynomial."""
    f = P.to_laurent()
    return diffop.apply(D, f) - f * E


def expand_in_basis(f: LaurentPoly, kind: Kind, params: KParams | None, top: tuple[int, ...]) -> dict:
    """Coefficients of a symmetric ``f`` on ``{P_mu : mu <= top}`` by back-substitution."""
    remaining = {label_of_exponent(kind, e): c for e, c in dominant_coefficients(kind, f).items()}
    order = [m.lam for m in dominance_lower_set(WeightLabel(kind, top))]
    stray = set(remaining) - set(order)
    if stray:
        raise NotTriangular(f"support {sorted(stray)} is not below {top}")
    out = {}
    for mu in order:
        c = remaining.get(mu, ZERO)
        if c.is_zero():
            continue
        out[mu] = c
        P = eigen_poly(WeightLabel(kind, mu), params)
        for nu, v in P.expansion.items():
            remaining[nu] = remaining.get(nu, ZERO) - c * v
    return out


def pieri_top(kind: Kind, lam: tuple[int, ...], m: int) -> tuple[int, ...]:
    """The highest label that can occur in ``e_m P_lambda``."""
    if kind.name == "A":
        return tuple(l + (1 if i < m else 0) for i, l in enumerate(lam))
    if kind.name == "K":
        return tuple(l + (1 if i < m else 0) for i, l in enumerate(lam))
    e = list(leading_exponent(kind, lam))
    e[m - 1] += 1
    return label_of_exponent(kind, tuple(e))


def multiply_and_expand(kind: Kind, lam: tuple[int, ...], m: int, params: KParams | None = None) -> dict:
    """``e_m P_lambda`` in the eigenpolynomial basis."""
    P = eigen_poly(WeightLabel(kind, lam), params)
    f = elementary(kind, m) * P.to_laurent()
    return expand_in_basis(f, kind, params, pieri_top(kind, lam, m))


# --- universal series -----------------------------------------------------------


@dataclass(frozen=True)
class UniversalSeries:
    kind: Kind
    cutoff: int
    coefficients: Mapping[tuple[int, ...], RatFunc]
    params: KParams | None = None

    def coefficient(self, alpha) -> RatFunc:
        return self.coefficients.get(tuple(alpha), ZERO)

    @property
    def prefactor(self) -> str:
        return "q^((lambda, Omega mu)/2)" if self.kind.name == "G2" else "q^(lambda, mu)"

    def specialize(self, lam) -> dict:
        """Coefficients at ``Lambda = q^lam`` (poles propagate as PoleError)."""
        mapping = {v: q_power(l) for v, l in zip(self.kind.lvars, lam)}
        return {a: c.subs(mapping) for a, c in self.coefficients.items()}

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_SERIES,
            "kind": self.kind.name,
            "N": self.kind.N,
            "cutoff": self.cutoff,
            "prefactor": self.prefactor,
            "params": self.params.to_json() if self.params is not None else None,
            "coefficients": [
                {"alpha": list(a), "coef": self.coefficients[a].to_json()}
                for a in cone_elements(self.kind, self.cutoff)
                if a in self.coefficients
            ],
        }


def lambda_shift_monomial(kind: Kind, eps) -> RatFunc:
    """``Lambda^[eps]``: the factor ``Gamma^eps`` produces on the leading monomial."""
    if kind.name == "G2":
        al = ((1, 1, -1), (1, -1, 1), (-1, 1, 1))
        v = [sum(e * a[j] for e, a in zip(eps, al)) // 2 for j in range(3)]
    else:
        v = list(eps)
    return RatFunc.monomial(dict(zip(kind.lvars, v)))


@lru_cache(maxsize=None)
def _operator_expansion(kind: Kind, params: KParams | None, op_pos: int, cutoff: int) -> dict:
    """``{eps: {gamma: C_eps,gamma}}`` with ``C_eps(x) = sum C_eps,gamma x^-gamma``."""
    D = family_operators(kind, params)[op_pos]
    out = {}
    for eps, c in D.terms.items():
        offset, ser = expand_ratfunc(c, kind, cutoff)
        lift = tuple(-o for o in offset)
        if not in_cone(kind, lift):
            raise ResonanceError(f"coefficient of shift {eps} grows along the cone")
        out[eps] = {tuple(a + b for a, b in zip(g, lift)): v for g, v in ser.terms.items() if grade(kind, g) + grade(kind, lift) <= cutoff}
    return out


def universal_series(kind: Kind, cutoff: int, params: KParams | None = None) -> UniversalSeries:
    return _universal_series(kind, cutoff, params if kind.name == "K" else None)


@lru_cache(maxsize=None)
def _universal_series(kind: Kind, cutoff: int, params: KParams | None) -> UniversalSeries:
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    ops = (0,) if kind.name != "G2" else (0, 1, 2)
    idx = operator_indices(kind)
    data = {k: _operator_expansion(kind, params, k, cutoff) for k in ops}
    E = {k: eigenvalue_lambda(kind, idx[k], params) for k in ops}
    mono = {}

    def shift_factor(eps, beta):
        key = (eps, beta)
        if key not in mono:
            mono[key] = lambda_shift_monomial(kind, eps) * q_power(-sum(e * b for e, b in zip(eps, beta)))
        return mono[key]

    zero = (0,) * kind.N
    c = {}
    for alpha in cone_elements(kind, cutoff):
        if alpha == zero:
            for k in ops:
                diag0 = sum((v.get(zero, ZERO) * shift_factor(eps, zero) for eps, v in data[k].items()), ZERO)
                if diag0 != E[k]:
                    raise ResonanceError(f"operator {idx[k]} does not reproduce its eigenvalue on the leading term")
            c[alpha] = ONE
            continue
        for k in ops:
            den = E[k] - sum((v.get(zero, ZERO) * shift_factor(eps, alpha) for eps, v in data[k].items()), ZERO)
            if not den.is_zero():
                break
        else:
            raise ResonanceError(f"no operator determines the coefficient at {alpha}")
        acc = ZERO
        for eps, v in data[k].items():
            for gamma, cg in v.items():
                if not any(gamma):
                    continue
                beta = tuple(a - g for a, g in zip(alpha, gamma))
                if beta in c:
                    acc = acc + cg * shift_factor(eps, beta) * c[beta]
        value = acc / den
        if not value.is_zero():
            c[alpha] = value
    return UniversalSeries(kind, cutoff, c, params)


def universal_residual(series: UniversalSeries, op_pos: int) -> dict:
    """Coefficients of ``(D - E) P(x; s)`` below the cutoff (empty iff solved)."""
    kind = series.kind
    data = _operator_expansion(kind, series.params, op_pos, series.cutoff)
    E = eigenvalue_lambda(kind, operator_indices(kind)[op_pos], series.params)
    out = {}
    for alpha in cone_elements(kind, series.cutoff):
        acc = -E * series.coefficient(alpha)
        for eps, v in data.items():
            for gamma, cg in v.items():
                beta = tuple(a - g for a, g in zip(alpha, gamma))
                cb = series.coefficients.get(beta)
                if cb is not None:
                    acc = acc + cg * lambda_shift_monomial(kind, eps) * q_power(-sum(e * b for e, b in zip(eps, beta))) * cb
        if not acc.is_zero():
            out[alpha] = acc
    return out
