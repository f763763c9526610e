"""Multivariate Laurent polynomials with exact rational coefficients."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Mapping, Sequence

from .rootdata import Kind, WeightLabel, dominant, leading_exponent
from .scalar import CTX, INDEX, NVARS, ONE, ZERO, RatFunc


class NotLaurent(ValueError):
    """A rational function whose denominator is not a monomial in the variables."""


class LaurentPoly:
    """Finite map ``exponent vector -> RatFunc`` in the variables ``vars``."""

    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[tuple[int, ...], RatFunc] | None = None, vars: Sequence[str] = ("x1",)):
        self.vars = tuple(vars)
        self.terms = {}
        for e, c in (terms or {}).items():
            c = RatFunc.coerce(c)
            if not c.is_zero():
                self.terms[tuple(e)] = c

    @property
    def dim(self) -> int:
        return len(self.vars)

    @classmethod
    def zero(cls, vars):
        return cls({}, vars)

    @classmethod
    def constant(cls, c, vars):
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def monomial(cls, exp, vars, coeff=ONE):
        return cls({tuple(exp): coeff}, vars)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError("Laurent polynomials in different variables")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.vars)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = RatFunc.coerce(other)
            return LaurentPoly({e: c * v for e, v in self.terms.items()}, self.vars)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return LaurentPoly(out, self.vars)

    __rmul__ = __mul__

    def coefficient(self, exp) -> RatFunc:
        return self.terms.get(tuple(exp), ZERO)

    def evaluate(self, point: Sequence[RatFunc]) -> RatFunc:
        """Substitute ``vars[i] -> point[i]`` (exact)."""
        powers = [_power_table(RatFunc.coerce(p)) for p in point]
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for table, k in zip(powers, e):
                term = term * table(k)
            total = total + term
        return total

    def map_coefficients(self, fn) -> "LaurentPoly":
        return LaurentPoly({e: fn(c) for e, c in self.terms.items()}, self.vars)

    def rename(self, vars: Sequence[str]) -> "LaurentPoly":
        return LaurentPoly(self.terms, vars)

    # conversion to and from the flint field -------------------------------
    def to_ratfunc(self) -> RatFunc:
        if not self.terms:
            return ZERO
        den_poly = CTX.constant(1)
        for c in self.terms.values():
            if not c.den.is_one():
                g = den_poly.gcd(c.den)
                den_poly = den_poly * (c.den / g)
        lows = [min(e[i] for e in self.terms) for i in range(self.dim)]
        shift = [max(0, -lo) for lo in lows]
        idx = [INDEX[v] for v in self.vars]
        total = CTX.constant(0)
        for e, c in self.terms.items():
            exp = [0] * NVARS
            for j, (i, k) in enumerate(zip(idx, e)):
                exp[i] = k + shift[j]
            mono = CTX.term(exp_vec=tuple(exp), coeff=1)
            total = total + c.num * (den_poly / c.den) * mono
        down = [0] * NVARS
        for i, s in zip(idx, shift):
            down[i] = s
        return RatFunc(total, den_poly * CTX.term(exp_vec=tuple(down), coeff=1))

    @classmethod
    def from_ratfunc(cls, r: RatFunc, vars: Sequence[str]) -> "LaurentPoly":
        r = RatFunc.coerce(r)
        idx = [INDEX[v] for v in vars]
        # denominator must be (param polynomial) * (monomial in vars)
        den_exp = None
        den_rest = {}
        for exps, c in r.den.terms():
            xe = tuple(exps[i] for i in idx)
            if den_exp is None:
                den_exp = xe
            elif xe != den_exp:
                raise NotLaurent(f"denominator {r.den} is not a monomial in {vars}")
            rest = list(exps)
            for i in idx:
                rest[i] = 0
            den_rest[tuple(rest)] = c
        den_scalar = CTX.from_dict(den_rest)
        groups: dict[tuple[int, ...], dict] = {}
        for exps, c in r.num.terms():
            xe = tuple(int(exps[i] - d) for i, d in zip(idx, den_exp))
            rest = list(exps)
            for i in idx:
                rest[i] = 0
            groups.setdefault(xe, {})[tuple(rest)] = c
        return cls({e: RatFunc(CTX.from_dict(g), den_scalar) for e, g in groups.items()}, vars)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"{v}^{k}" if k != 1 else v for v, k in zip(self.vars, e) if k)
            c = self.terms[e]
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def to_json(self):
        return {
            "dim": self.dim,
            "vars": list(self.vars),
            "terms": [{"exp": [int(v) for v in e], "coef": self.terms[e].to_json()} for e in sorted(self.terms, reverse=True)],
        }

    @classmethod
    def from_json(cls, data):
        vars = data.get("vars") or [f"x{i + 1}" for i in range(data["dim"])]
        return cls({tuple(t["exp"]): RatFunc.from_json(t["coef"]) for t in data["terms"]}, vars)


def _power_table(p: RatFunc):
    cache = {0: ONE, 1: p}

    def power(k):
        if k not in cache:
            cache[k] = p**k
        return cache[k]

    return power


# --- Weyl groups -----------------------------------------------------------


class GroupAction:
    """Finite group acting on exponent vectors by permutations and sign flips."""

    def __init__(self, kind: Kind):
        self.kind = kind
        self.elements = _group_elements(kind.name, kind.N)

    def __len__(self):
        return len(self.elements)

    def act(self, element, exp):
        perm, signs = element
        return tuple(signs[i] * exp[perm[i]] for i in range(len(exp)))

    def orbit(self, exp) -> list[tuple[int, ...]]:
        return sorted({self.act(g, exp) for g in self.elements}, reverse=True)

    def generators(self):
        N = self.kind.N
        ident = tuple(range(N))
        gens = []
        if self.kind.name in ("A", "K"):
            for i in range(N - 1):
                p = list(ident)
                p[i], p[i + 1] = p[i + 1], p[i]
                gens.append((tuple(p), (1,) * N))
        if self.kind.name in ("K", "G2"):
            for i in range(N):
                gens.append((ident, tuple(-1 if j == i else 1 for j in range(N))))
        return gens


@lru_cache(maxsize=None)
def _group_elements(name, N):
    ident = tuple(range(N))
    if name == "A":
        return tuple((p, (1,) * N) for p in itertools.permutations(range(N)))
    signs = tuple(itertools.product((1, -1), repeat=N))
    if name == "K":
        return tuple((p, s) for p in itertools.permutations(range(N)) for s in signs)
    return tuple((ident, s) for s in signs)


def symmetrize(f: LaurentPoly, group: GroupAction) -> LaurentPoly:
    """Plain orbit sum ``sum_w w.f`` (no normalization)."""
    if f.dim != group.kind.N:
        raise ValueError("dimension mismatch")
    out: dict = {}
    for g in group.elements:
        for e, c in f.terms.items():
            we = group.act(g, e)
            out[we] = out[we] + c if we in out else c
    return LaurentPoly(out, f.vars)


@lru_cache(maxsize=None)
def _orbit(kind: Kind, exp: tuple[int, ...]):
    return tuple(GroupAction(kind).orbit(exp))


def monomial_symmetric(kind: Kind, exp: Sequence[int], vars=None) -> LaurentPoly:
    """Orbit sum with multiplicity one of ``x^exp``."""
    vars = vars or kind.xvars
    return LaurentPoly({e: ONE for e in _orbit(kind, tuple(exp))}, vars)


def basis_monomial(label: WeightLabel) -> LaurentPoly:
    """``m_lambda``: orbit sum of the leading monomial of the label."""
    return monomial_symmetric(label.kind, leading_exponent(label.kind, label.lam))


def elementary(kind: Kind, m: int) -> LaurentPoly:
    """The Pieri multiplier: ``e_m`` (A), ``hat e_m`` (K) or ``x_m + 1/x_m`` (G2)."""
    N = kind.N
    vars = kind.xvars
    if kind.name == "A":
        if not 1 <= m <= N:
            raise ValueError(f"e_{m} out of range for N={N}")
        terms = {}
        for I in itertools.combinations(range(N), m):
            terms[tuple(1 if i in I else 0 for i in range(N))] = ONE
        return LaurentPoly(terms, vars)
    if kind.name == "K":
        if not 1 <= m <= N:
            raise ValueError(f"hat e_{m} out of range for N={N}")
        # e_m(x1, 1/x1, ..., xN, 1/xN)
        letters = [tuple((1 if j == i else 0) * s for j in range(N)) for i in range(N) for s in (1, -1)]
        out: dict = {}
        for combo in itertools.combinations(letters, m):
            e = tuple(sum(c[j] for c in combo) for j in range(N))
            out[e] = out.get(e, ZERO) + ONE
        return LaurentPoly(out, vars)
    if not 1 <= m <= 3:
        raise ValueError("genus-2 multiplier index must be 1, 2 or 3")
    return LaurentPoly(
        {tuple(1 if j == m - 1 else 0 for j in range(3)): ONE, tuple(-1 if j == m - 1 else 0 for j in range(3)): ONE},
        vars,
    )


def dominant_coefficients(kind: Kind, f: LaurentPoly) -> dict[tuple[int, ...], RatFunc]:
    """Coefficients of ``f`` on orbit sums, read at dominant exponents.

    Raises ValueError when ``f`` is not Weyl invariant.
    """
    out = {}
    seen = 0
    for e, c in f.terms.items():
        d = dominant(kind, e)
        if d == e:
            out[e] = c
    for e, c in out.items():
        for o in _orbit(kind, e):
            if f.terms.get(o) != c:
                raise ValueError(f"not Weyl invariant at orbit of {e}")
            seen += 1
    if seen != len(f.terms):
        raise ValueError("not Weyl invariant")
    return out
