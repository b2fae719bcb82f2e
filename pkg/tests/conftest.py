import random

import pytest

from sp4lab.exactfield import parse_field

FIELD_NAMES = ["Q2", "Q3", "Q5", "F2((t))", "F3((t))", "F4((t))"]


@pytest.fixture(scope="session")
def fields():
    return {name: parse_field(name) for name in FIELD_NAMES}


@pytest.fixture()
def rng():
    return random.Random(0xC0FFEE)


def random_element(spec, rnd, span=40):
    """A random field element: random small rational / rational function
    times a random power of the uniformizer."""
    shift = rnd.randrange(-6, 7)
    if spec.kind == "mixed":
        num = rnd.randrange(-span, span + 1)
        den = rnd.randrange(1, span)
        return spec.rational(num, den).shift(shift)
    k = spec.residue_gf
    num = tuple(rnd.randrange(k.q) for _ in range(rnd.randrange(1, 4)))
    den = (rnd.randrange(1, k.q),) + tuple(rnd.randrange(k.q) for _ in range(rnd.randrange(0, 3)))
    from sp4lab.exactfield import LaurentElem
    from sp4lab.gfq import poly_trim
    num = poly_trim(num)
    if not num:
        return spec.zero()
    return LaurentElem(spec, 0, num, poly_trim(den)).shift(shift)
