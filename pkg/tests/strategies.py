from gmpy2 import mpq
from hypothesis import strategies as st

from detkit.poly import Ring

R3 = Ring(["x", "y", "z"])
R3P = Ring(["x", "y", "z"], 101)

exponents = st.tuples(*[st.integers(0, 3)] * 3)
small_ints = st.integers(-6, 6)
rationals = st.builds(lambda a, b: mpq(a, b), st.integers(-9, 9), st.integers(1, 5))


def polys(ring=R3, coeffs=small_ints, max_terms=5):
    return st.dictionaries(exponents, coeffs, max_size=max_terms).map(ring.from_terms)


def nonzero_polys(ring=R3, coeffs=small_ints, max_terms=4):
    return polys(ring, coeffs, max_terms).filter(bool)
