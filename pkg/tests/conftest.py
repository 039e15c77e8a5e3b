from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("ramlab", max_examples=150, deadline=None)
settings.load_profile("ramlab")

F = Fraction

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_rats = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def fr(lo, hi, den):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=den)
