import cmath
import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qchromatic.core import (
    CyclotomicInteger,
    TypeVector,
    count_types,
    enumerate_types,
    is_prime,
    krawtchouk,
    multinomial,
    type_of,
)
from qchromatic.errors import ParameterError

PRIMES = [2, 3, 5, 7]


def test_is_prime_small():
    assert [k for k in range(30) if is_prime(k)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_type_vector_rejects_bad_input():
    with pytest.raises(ParameterError):
        TypeVector((3,))
    with pytest.raises(ParameterError):
        TypeVector((1, -1, 2))


def test_type_vector_basics():
    t = TypeVector((2, 0, 5))
    assert (t.p, t.n) == (3, 7)
    assert t.canonical() == (0, 2, 5)
    assert t.negated() == (2, 5, 0)
    assert TypeVector((4, 0, 0)).is_zero()
    assert not t.is_zero()


def test_multinomial():
    assert multinomial(6, (2, 2, 2)) == 90
    assert multinomial(9, (3, 3, 3)) == 1680
    assert multinomial(0, (0, 0)) == 1
    with pytest.raises(ParameterError):
        multinomial(5, (2, 2))


@given(st.integers(2, 5), st.integers(0, 9))
def test_enumerate_types_counts_and_order(p, n):
    types = list(enumerate_types(p, n))
    assert len(types) == count_types(p, n) == len(set(types))
    assert types == sorted(types)
    assert all(t.n == n and t.p == p for t in types)
    canon = list(enumerate_types(p, n, canonical=True))
    assert canon == sorted({t.canonical() for t in types})


@given(st.integers(2, 4), st.integers(1, 5))
def test_multinomials_sum_to_group_order(p, n):
    assert sum(multinomial(n, t) for t in enumerate_types(p, n)) == p**n


def test_type_of():
    assert type_of((0, 2, 2, 1, 0), 3) == (2, 1, 2)
    with pytest.raises(ParameterError):
        type_of((0, 3), 3)


@given(st.integers(0, 10), st.data())
def test_krawtchouk_matches_character_sum(n, data):
    r = data.draw(st.integers(0, n))
    w = data.draw(st.integers(0, n))
    v = [1] * w + [0] * (n - w)
    brute = sum((-1) ** sum(v[i] for i in s) for s in itertools.combinations(range(n), r))
    assert krawtchouk(n, r, w) == brute


def cyclo(p):
    return st.lists(st.integers(-20, 20), min_size=p - 1, max_size=p - 1).map(
        lambda c: CyclotomicInteger(p, c)
    )


@pytest.mark.parametrize("p", PRIMES)
def test_zeta_identities(p):
    z = CyclotomicInteger.zeta(p)
    assert z**p == CyclotomicInteger.from_int(p, 1)
    assert sum((z**k for k in range(p)), CyclotomicInteger.from_int(p, 0)).is_zero()
    assert z * z.conjugate() == CyclotomicInteger.from_int(p, 1)


@pytest.mark.parametrize("p", PRIMES)
@given(data=st.data())
def test_ring_axioms_and_complex_embedding(p, data):
    a, b, c = (data.draw(cyclo(p)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - b) + b == a
    w = cmath.exp(2j * math.pi / p)
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-6 * (1 + abs(complex(a) * complex(b)))
    assert abs(complex(a.conjugate()) - complex(a).conjugate()) < 1e-6 * (1 + abs(complex(a)))
    assert abs(complex(CyclotomicInteger.zeta(p)) - w) < 1e-12


@pytest.mark.parametrize("p", PRIMES)
@given(data=st.data())
def test_residue_counts_rational_iff_balanced(p, data):
    counts = data.draw(st.lists(st.integers(0, 9), min_size=p, max_size=p))
    x = CyclotomicInteger.from_residue_counts(p, counts)
    assert x.is_rational() == (len(set(counts[1:])) == 1)
    if x.is_rational():
        assert x.to_int() == counts[0] - counts[1]
        assert abs(complex(x) - x.to_int()) < 1e-9


def test_cyclotomic_errors():
    with pytest.raises(ParameterError):
        CyclotomicInteger(4, [1, 2])
    with pytest.raises(ParameterError):
        CyclotomicInteger(3, [1, 2, 3, 4])
    with pytest.raises(ParameterError):
        CyclotomicInteger.zeta(3) + CyclotomicInteger.zeta(5)
    with pytest.raises(ValueError):
        CyclotomicInteger.zeta(3).to_int()
