from fractions import Fraction

from hypothesis import strategies as st


@st.composite
def partitions_st(draw, max_n=8, min_n=1):
    n = draw(st.integers(min_n, max_n))
    parts = []
    left = n
    while left:
        p = draw(st.integers(1, min(left, parts[-1] if parts else left)))
        parts.append(p)
        left -= p
    return tuple(parts)


@st.composite
def generic_m(draw, bound=6):
    """Rationals with 2m not an integer, in (-bound, bound)."""
    den = draw(st.sampled_from([3, 4, 5, 6, 7, 8, 12]))
    num = draw(st.integers(-bound * den + 1, bound * den - 1))
    m = Fraction(num, den)
    if (2 * m).denominator == 1:
        m += Fraction(1, 4 * den)
    return m


quarter_m = st.integers(0, 5).map(lambda k: Fraction(2 * k + 1, 4))
