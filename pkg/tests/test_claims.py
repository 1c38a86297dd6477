import json

import pytest

from qchromatic.claims import (
    balanced_eigenvalues,
    verify_appendix_claims,
    verify_extremal_claims,
)
from qchromatic.core import TypeVector, multinomial
from qchromatic.errors import ParameterError


@pytest.mark.parametrize("l", range(1, 9))
def test_extremal_claims_small(l):
    v = verify_extremal_claims(l)
    assert v.passed, v.counterexamples
    n = 3 * l
    assert v.smallest * (n - 1) == -multinomial(n, (l, l, l))
    assert v.smallest_witnesses == [TypeVector((1, 1, n - 2))]
    if n >= 9:
        assert v.second_largest * (n - 1) * (n - 2) == 2 * multinomial(n, (l, l, l))
        assert TypeVector((2, 2, n - 4)) in v.second_largest_witnesses


def test_second_largest_tie_at_l3():
    v = verify_extremal_claims(3)
    assert v.second_largest == 60
    assert v.second_largest_witnesses == [(0, 3, 6), (2, 2, 5)]
    doc = v.to_json()
    assert doc["smallest"] == "-210" and doc["second_largest"] == "60"
    assert doc["smallest_witnesses"] == [[1, 1, 7]]
    json.dumps(doc)


@pytest.mark.parametrize("engine", ["convolution", "closed"])
def test_engines_agree(engine):
    assert balanced_eigenvalues(4, engine) == balanced_eigenvalues(4, "both")


@pytest.mark.parametrize("l", range(1, 9))
def test_appendix_claims_small(l):
    v = verify_appendix_claims(l)
    assert v.passed, v.failures
    assert v.equality_t0_le_2


def test_majorant_equality_breaks_only_for_large_t0():
    v = verify_appendix_claims(4)
    assert v.equality_breaks_at == [[3, 3, 6], [4, 4, 4]]


def test_claim_errors():
    with pytest.raises(ParameterError):
        verify_extremal_claims(0)
    with pytest.raises(ParameterError):
        verify_appendix_claims(0)
    with pytest.raises(ParameterError):
        balanced_eigenvalues(2, "fast")
