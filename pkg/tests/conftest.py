import os

from hypothesis import HealthCheck, settings, strategies as st

from heisdyn.laurent import LaurentPoly1, LaurentPolyN
from heisdyn.ring import GroupRingElement

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small = st.integers(-3, 3)
coef = st.integers(-4, 4).filter(bool)
monos = st.tuples(small, small, small)


@st.composite
def elements(draw, max_terms=4):
    d = draw(st.dictionaries(monos, coef, min_size=0, max_size=max_terms))
    return GroupRingElement(d)


@st.composite
def nonzero_elements(draw, max_terms=4):
    d = draw(st.dictionaries(monos, coef, min_size=1, max_size=max_terms))
    return GroupRingElement(d)


@st.composite
def poly1(draw, max_deg=6, low=0):
    cs = draw(st.lists(st.integers(-5, 5), min_size=1, max_size=max_deg + 1))
    if not any(cs):
        cs[-1] = 1
    return LaurentPoly1(cs, low)


@st.composite
def poly2(draw, max_terms=4, rng=2):
    e = st.tuples(st.integers(-rng, rng), st.integers(-rng, rng))
    d = draw(st.dictionaries(e, coef, min_size=1, max_size=max_terms))
    return LaurentPolyN(d, 2)
