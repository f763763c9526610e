"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from macdual.scalar import ONE, RatFunc

_NAMES = ("Q", "T", "A")


@st.composite
def polynomials(draw, max_terms=3, max_exp=2, names=_NAMES):
    out = RatFunc(0)
    for _ in range(draw(st.integers(1, max_terms))):
        coeff = draw(st.integers(-4, 4))
        exps = {n: draw(st.integers(0, max_exp)) for n in names}
        out = out + RatFunc.monomial(exps, coeff)
    return out


@st.composite
def ratfuncs(draw, names=_NAMES):
    num = draw(polynomials(names=names))
    den = draw(polynomials(names=names).filter(lambda p: not p.is_zero()))
    return num / den


@st.composite
def nonzero_ratfuncs(draw, names=_NAMES):
    return draw(ratfuncs(names=names).filter(lambda r: not r.is_zero()))


def units():
    """Signed monomials; always invertible."""
    return st.builds(
        lambda s, a, b: RatFunc.monomial({"Q": a, "T": b}, s),
        st.sampled_from((1, -1)),
        st.integers(-3, 3),
        st.integers(-3, 3),
    )


__all__ = ["polynomials", "ratfuncs", "nonzero_ratfuncs", "units", "ONE"]
