"""Weights, cones and Weyl-group data for the three theories.

``Kind("A", N)`` is type A_{N-1} (Macdonald), ``Kind("K", N)`` the BC_N
Koornwinder system, and ``Kind("G2")`` the rank-one genus-2 analog, which
always has three ambient coordinates.

Exponent vectors of Laurent monomials live in x-space.  For types A and K a
label is its own leading exponent; a genus-2 label ``lam`` has leading
exponent ``e_i = (alpha_i, lam) / 2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .scalar import RatFunc, ONE

G2_ALPHA = ((1, 1, -1), (1, -1, 1), (-1, 1, 1))
G2_OMEGA = ((1, 1, 0), (1, 0, 1), (0, 1, 1))
G2_RHO = (1, 1, 1)
# Omega has the alpha_i as rows (and columns: it is symmetric)
G2_OMEGA_MATRIX = G2_ALPHA

KIND_NAMES = {"A": "TypeA", "K": "Koornwinder", "G2": "GenusTwo"}


@dataclass(frozen=True)
class Kind:
    name: str
    N: int = 3

    def __post_init__(self):
        if self.name not in KIND_NAMES:
            raise ValueError(f"unknown theory kind {self.name!r}")
        if self.name == "G2" and self.N != 3:
            object.__setattr__(self, "N", 3)
        if self.N < 1 or self.N > 3:
            raise ValueError("ambient dimension must be 1..3")

    def __str__(self):
        return self.name if self.name == "G2" else f"{self.name}{self.N}"

    @property
    def xvars(self) -> tuple[str, ...]:
        return tuple(f"x{i + 1}" for i in range(self.N))

    @property
    def lvars(self) -> tuple[str, ...]:
        return tuple(f"L{i + 1}" for i in range(self.N))

    @property
    def svars(self) -> tuple[str, ...]:
        return tuple(f"s{i + 1}" for i in range(self.N))

    def to_json(self):
        return {"kind": self.name, "N": self.N}


def TypeA(N: int) -> Kind:
    return Kind("A", N)


def Koornwinder(N: int) -> Kind:
    return Kind("K", N)


GENUS_TWO = Kind("G2", 3)


# --- cones ---------------------------------------------------------------


def cone_generators(kind: Kind) -> tuple[tuple[int, ...], ...]:
    N = kind.N
    if kind.name == "A":
        return tuple(
            tuple(1 if j == i else -1 if j == i + 1 else 0 for j in range(N)) for i in range(N - 1)
        )
    if kind.name == "K":
        gens = [tuple(1 if j == i else -1 if j == i + 1 else 0 for j in range(N)) for i in range(N - 1)]
        gens.append(tuple(1 if j == N - 1 else 0 for j in range(N)))
        return tuple(gens)
    return G2_ALPHA


def grade(kind: Kind, v: Sequence[int]) -> int:
    """Linear functional equal to the cone height on cone elements."""
    N = kind.N
    if kind.name == "A":
        return sum((N - 1 - j) * v[j] for j in range(N))
    if kind.name == "K":
        return sum((N - j) * v[j] for j in range(N))
    return sum(v)


def cone_coordinates(kind: Kind, v: Sequence[int]):
    """Coefficients of ``v`` on the cone generators, or None if not integral."""
    N = kind.N
    if kind.name == "A":
        if sum(v) != 0:
            return None
        return tuple(itertools.accumulate(v))[: N - 1]
    if kind.name == "K":
        return tuple(itertools.accumulate(v))
    a, b, c = v
    if (a + b) % 2 or (a + c) % 2:
        return None
    return ((a + b) // 2, (a + c) // 2, (b + c) // 2)


def in_cone(kind: Kind, v: Sequence[int]) -> bool:
    k = cone_coordinates(kind, v)
    return k is not None and all(x >= 0 for x in k)


def cone_height(kind: Kind, v: Sequence[int]) -> int:
    if not in_cone(kind, v):
        raise ValueError(f"{tuple(v)} is not in the positive cone of {kind}")
    return grade(kind, v)


@lru_cache(maxsize=None)
def cone_elements(kind: Kind, height: int) -> tuple[tuple[int, ...], ...]:
    """Cone elements of height <= ``height``, graded then lexicographic, including 0."""
    if height < 0:
        raise ValueError("height must be nonnegative")
    gens = cone_generators(kind)
    N = kind.N
    seen = set()
    for coeffs in itertools.product(range(height + 1), repeat=len(gens)):
        if sum(coeffs) > height:
            continue
        vec = tuple(sum(c * g[j] for c, g in zip(coeffs, gens)) for j in range(N))
        seen.add(vec)
    return tuple(sorted(seen, key=lambda v: (grade(kind, v), tuple(-x for x in v))))


# --- labels --------------------------------------------------------------


def is_g2_partition(lam: Sequence[int]) -> bool:
    """Closed-form membership test for the genus-2 partitions."""
    l1, l2, l3 = lam
    return (l1 + l2 + l3) % 2 == 0 and l1 + l2 >= l3 and l1 + l3 >= l2 and l2 + l3 >= l1


def is_g2_partition_by_pairing(lam: Sequence[int]) -> bool:
    """Defining test: every pairing ``(alpha_i, lam)`` is even and nonnegative."""
    for a in G2_ALPHA:
        p = sum(x * y for x, y in zip(a, lam))
        if p < 0 or p % 2:
            return False
    return True


@dataclass(frozen=True)
class WeightLabel:
    kind: Kind
    lam: tuple[int, ...]

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lam)
        object.__setattr__(self, "lam", lam)
        if len(lam) != self.kind.N:
            raise ValueError(f"label {lam} has wrong length for {self.kind}")
        if not is_label(self.kind, lam):
            raise ValueError(f"{lam} is not a valid {KIND_NAMES[self.kind.name]} label")

    @property
    def exponent(self) -> tuple[int, ...]:
        return leading_exponent(self.kind, self.lam)

    @property
    def size(self) -> int:
        return sum(self.lam)

    def __str__(self):
        return "(" + ",".join(map(str, self.lam)) + ")"

    def to_json(self):
        return {"kind": self.kind.name, "N": self.kind.N, "lambda": list(self.lam)}

    @classmethod
    def from_json(cls, data):
        return cls(Kind(data["kind"], data.get("N", 3)), tuple(data["lambda"]))


def is_label(kind: Kind, lam: Sequence[int]) -> bool:
    if kind.name == "G2":
        return len(lam) == 3 and is_g2_partition(lam)
    return all(x >= 0 for x in lam) and all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def leading_exponent(kind: Kind, lam: Sequence[int]) -> tuple[int, ...]:
    if kind.name == "G2":
        return tuple(sum(a * l for a, l in zip(alpha, lam)) // 2 for alpha in G2_ALPHA)
    return tuple(lam)


def label_of_exponent(kind: Kind, e: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`leading_exponent` on dominant exponents."""
    if kind.name == "G2":
        e1, e2, e3 = e
        return (e1 + e2, e1 + e3, e2 + e3)
    return tuple(e)


def dominant(kind: Kind, e: Sequence[int]) -> tuple[int, ...]:
    """Representative of the Weyl orbit of an exponent that is maximal in the cone order."""
    if kind.name == "A":
        return tuple(sorted(e, reverse=True))
    if kind.name == "K":
        return tuple(sorted((abs(x) for x in e), reverse=True))
    return tuple(abs(x) for x in e)


def precedes(kind: Kind, mu: Sequence[int], lam: Sequence[int]) -> bool:
    """``mu <= lam`` in dominance, i.e. leading exponents differ by a cone element."""
    d = [a - b for a, b in zip(leading_exponent(kind, lam), leading_exponent(kind, mu))]
    return in_cone(kind, d)


@lru_cache(maxsize=None)
def _lower_set(kind: Kind, lam: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    N = kind.N
    if kind.name == "A":
        n = sum(lam)
        cands = [p for p in partitions_in_box(n, N, n) if sum(p) == n]
    elif kind.name == "K":
        n = sum(lam)
        cands = [p for m in range(n + 1) for p in partitions_in_box(m, N, m) if sum(p) == m]
    else:
        top = max(lam)
        cands = [
            p
            for p in itertools.product(range(top + 1), repeat=3)
            if is_g2_partition(p)
        ]
    out = [p for p in cands if precedes(kind, p, lam)]
    return tuple(sorted(out, key=lambda p: (-grade(kind, leading_exponent(kind, p)), tuple(-x for x in p))))


def dominance_lower_set(label: WeightLabel) -> list[WeightLabel]:
    """Labels below ``label`` (itself included), ordered by decreasing grade."""
    return [WeightLabel(label.kind, mu) for mu in _lower_set(label.kind, label.lam)]


def partitions_in_box(n: int, parts: int, largest: int) -> Iterator[tuple[int, ...]]:
    """Partitions of exactly ``n`` with at most ``parts`` parts, each <= ``largest``, padded."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(n, largest), -1, -1):
        if first * parts < n:
            break
        for rest in partitions_in_box(n - first, parts - 1, first):
            yield (first,) + rest


def labels_up_to(kind: Kind, bound: int) -> list[WeightLabel]:
    """Test lattice: |lam| <= bound for types A/K, max lam_i <= bound for G2."""
    if kind.name == "G2":
        labs = [p for p in itertools.product(range(bound + 1), repeat=3) if is_g2_partition(p)]
        labs.sort(key=lambda p: (sum(p), tuple(-x for x in p)))
    else:
        labs = [p for n in range(bound + 1) for p in partitions_in_box(n, kind.N, n)]
    return [WeightLabel(kind, p) for p in labs]


# --- frames ---------------------------------------------------------------


@dataclass(frozen=True)
class RootFrame:
    kind: Kind
    positive_roots: tuple[tuple[int, ...], ...]
    cone_generators: tuple[tuple[int, ...], ...]
    omegas: tuple[tuple[int, ...], ...]
    weyl: str
    rho: tuple[int, ...] = field(default=())


def root_frame(kind: Kind) -> RootFrame:
    N = kind.N
    unit = lambda i: tuple(1 if j == i else 0 for j in range(N))  # noqa: E731
    if kind.name == "A":
        pos = tuple(
            tuple(a - b for a, b in zip(unit(i), unit(j))) for i in range(N) for j in range(i + 1, N)
        )
        omegas = tuple(tuple(1 if j <= i else 0 for j in range(N)) for i in range(N))
        return RootFrame(kind, pos, cone_generators(kind), omegas, "S_N", tuple(N - 1 - i for i in range(N)))
    if kind.name == "K":
        pos = []
        for i in range(N):
            for j in range(i + 1, N):
                pos.append(tuple(a - b for a, b in zip(unit(i), unit(j))))
                pos.append(tuple(a + b for a, b in zip(unit(i), unit(j))))
            pos.append(unit(i))
            pos.append(tuple(2 * a for a in unit(i)))
        omegas = tuple(tuple(1 if j <= i else 0 for j in range(N)) for i in range(N))
        return RootFrame(kind, tuple(pos), cone_generators(kind), omegas, "Z2^N x| S_N", tuple(N - 1 - i for i in range(N)))
    a1, a2, a3 = G2_ALPHA
    add = lambda *vs: tuple(sum(c) for c in zip(*vs))  # noqa: E731
    pos = (a1, a2, a3, add(a1, a2), add(a1, a3), add(a2, a3), add(a1, a2, a3))
    return RootFrame(kind, pos, G2_ALPHA, G2_OMEGA, "S2 x S2 x S2", G2_RHO)


# --- spectral points --------------------------------------------------------


def rho_vector(kind: Kind, sigma: RatFunc | None = None) -> list[RatFunc]:
    """The point ``t^rho`` as a vector of monomials.

    Type A: ``t^(N-i)``; Koornwinder: ``sigma t^(N-i)``; genus 2: ``t`` in each slot.
    """
    N = kind.N
    if kind.name == "A":
        return [RatFunc.monomial({"T": 2 * (N - 1 - i)}) for i in range(N)]
    if kind.name == "K":
        if sigma is None:
            raise ValueError("Koornwinder t^rho needs sigma")
        return [sigma * RatFunc.monomial({"T": 2 * (N - 1 - i)}) for i in range(N)]
    return [RatFunc.monomial({"T": 2}) for _ in range(3)]


def s_vector(label: WeightLabel, sigma: RatFunc | None = None) -> list[RatFunc]:
    """``s = q^lambda t^rho`` for a label (sigma required for Koornwinder)."""
    rv = rho_vector(label.kind, sigma)
    return [r * RatFunc.monomial({"Q": 2 * l}) for r, l in zip(rv, label.lam)]


def rho_pairing(kind: Kind, lam: Sequence[int]) -> int:
    """(rho, lam) with the integer rho of the kind (G2: rho = (1,1,1))."""
    return sum(r * l for r, l in zip(root_frame(kind).rho, lam))


def t_rho_power(kind: Kind, lam: Sequence[int], point: Sequence[RatFunc] | None = None) -> RatFunc:
    """The factor ``t^(rho, lam)``; for Koornwinder this is ``prod (t^rho)_i^lam_i``.

    Genus 2 uses the half pairing ``t^((rho, lam)/2)`` that appears in its
    normalization theorem.
    """
    if kind.name == "A":
        return RatFunc.monomial({"T": 2 * rho_pairing(kind, lam)})
    if kind.name == "G2":
        return RatFunc.monomial({"T": sum(lam)})
    out = ONE
    for p, l in zip(point, lam):
        out = out * p**l
    return out
