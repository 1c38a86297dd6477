import itertools
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qchromatic.core import TypeVector, enumerate_types, krawtchouk, multinomial, type_of
from qchromatic.errors import BudgetError, DomainError, InvariantError, ParameterError
from qchromatic.families import hamming_graph, orthogonality_graph
from qchromatic.spectrum import (
    CayleySpec,
    SpectrumReport,
    WeightEnumerator,
    balanced_eigenvalue,
    cubic_power,
    duality_check,
    eigenvalue_of_type,
    full_spectrum,
    macwilliams_transform,
    residue_counts,
    residue_counts_reference,
    spectral_lower_bound,
)


@st.composite
def type_pairs(draw, primes=(2, 3, 5, 7), max_n=12):
    p = draw(st.sampled_from(primes))
    n = draw(st.integers(1, max_n))
    types = list(enumerate_types(p, n))
    return draw(st.sampled_from(types)), draw(st.sampled_from(types))


@given(type_pairs())
def test_multimodular_counts_match_big_int_reference(pair):
    v, s = pair
    assert residue_counts(v, s) == residue_counts_reference(v, s)


@given(type_pairs(primes=(2, 3, 5), max_n=5))
def test_residue_counts_match_enumeration(pair):
    v, s = pair
    p, n = v.p, v.n
    vec = [a for a in range(p) for _ in range(v[a])]
    counts = [0] * p
    for w in itertools.product(range(p), repeat=n):
        if type_of(w, p) == s:
            counts[sum(x * y for x, y in zip(vec, w)) % p] += 1
    assert residue_counts(v, s) == tuple(counts)


def test_worked_residue_count():
    assert residue_counts(TypeVector((4, 2)), TypeVector((4, 2))) == (7, 8)


def test_cayley_spec_validation():
    with pytest.raises(ParameterError):
        CayleySpec(3, 3, [(0, 1, 2)])  # negation (0, 2, 1) missing
    with pytest.raises(ParameterError):
        CayleySpec(3, 3, [(3, 0, 0)])
    with pytest.raises(ParameterError):
        CayleySpec(3, 3, [(1, 1)])
    spec = CayleySpec.closed(3, 3, [(0, 1, 2)])
    assert spec.generators == {(0, 1, 2), (0, 2, 1)}
    assert spec.degree == 6 and spec.order == 27


@pytest.mark.parametrize("n", range(2, 13))
@pytest.mark.parametrize("r", [1, 2, 3])
def test_hamming_spectrum_is_krawtchouk(n, r):
    if r > n:
        return
    report = full_spectrum(hamming_graph(n, r))
    for t, (ev, mult) in report.entries.items():
        assert ev == krawtchouk(n, r, t[1])
        assert mult == multinomial(n, t)


@pytest.mark.parametrize("n", range(2, 21))
def test_hamming_spectral_bound(n):
    assert spectral_lower_bound(full_spectrum(hamming_graph(n))) == (n if n % 2 == 0 else n + 1)


@st.composite
def specs(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 7 if p < 5 else 4))
    types = [t for t in enumerate_types(p, n) if not t.is_zero()]
    gens = draw(st.lists(st.sampled_from(types), min_size=1, max_size=3))
    return CayleySpec.closed(p, n, gens, units=True)


@given(specs())
def test_trace_identities(spec):
    s1, s2, expected = full_spectrum(spec).trace_identities()
    assert s1 == 0
    assert s2 == expected


@given(specs())
def test_eigenvalues_bounded_by_degree(spec):
    report = full_spectrum(spec)
    assert report.lambda_max == spec.degree
    assert report.eigenvalue([spec.n] + [0] * (spec.p - 1)) == spec.degree
    assert all(abs(ev) <= spec.degree for ev, _ in report.entries.values())


@pytest.mark.parametrize("l", range(1, 7))
def test_balanced_closed_form_matches_engine(l):
    spec = orthogonality_graph(3, l)
    for t in enumerate_types(3, 3 * l):
        assert eigenvalue_of_type(spec, t) == balanced_eigenvalue(l, t)


def test_worked_eigenvalues():
    assert eigenvalue_of_type(orthogonality_graph(3, 2), (1, 1, 4)) == -18
    assert eigenvalue_of_type(orthogonality_graph(3, 3), (2, 2, 5)) == 60
    assert balanced_eigenvalue(2, (1, 1, 4)) == -18


def test_cubic_power_small():
    assert cubic_power(1, -1) == {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1, (1, 1, 1): -3}
    assert cubic_power(1, +1)[(1, 1, 1)] == 3


@pytest.mark.parametrize("l,bound", [(1, 3), (2, 6), (3, 9), (4, 12)])
def test_orthogonality_graph_bounds(l, bound):
    assert full_spectrum(orthogonality_graph(3, l)).bound == bound


def test_irrational_spectrum_rejected():
    spec = CayleySpec.closed(5, 1, [(0, 1, 0, 0, 0)])
    assert not spec.scaling_closed()
    with pytest.raises(ParameterError, match="irrational"):
        full_spectrum(spec)
    full = CayleySpec.closed(5, 1, [(0, 1, 0, 0, 0)], units=True)
    assert full.scaling_closed() and full.degree == 4
    assert full_spectrum(full).lambda_min == -1


def test_composite_modulus_rejected():
    with pytest.raises(ParameterError):
        full_spectrum(CayleySpec(4, 4, [(1, 1, 1, 1)]))


def test_type_budget():
    with pytest.raises(BudgetError) as exc:
        full_spectrum(orthogonality_graph(3, 10), budget=100)
    assert exc.value.required == 496 and exc.value.limit == 100


def test_spectral_bound_undefined_without_negative_eigenvalue():
    spec = hamming_graph(2, 1)
    report = SpectrumReport(spec, {TypeVector((2, 0)): (2, 1), TypeVector((0, 2)): (0, 1)})
    with pytest.raises(DomainError):
        spectral_lower_bound(report)
    assert report.bound is None


def test_report_json_is_deterministic_and_stringly():
    a = full_spectrum(orthogonality_graph(3, 2)).dumps()
    b = full_spectrum(orthogonality_graph(3, 2)).dumps()
    assert a == b
    doc = json.loads(a)
    assert doc["bound"] == "6" and doc["lambda_min"] == "-18"
    assert all(isinstance(e["eigenvalue"], str) for e in doc["entries"])


@pytest.mark.parametrize("n", [3, 6, 9])
def test_duality_identity_all_pairs(n):
    types = list(enumerate_types(3, n))
    for s, t in itertools.combinations_with_replacement(types, 2):
        lhs, rhs = duality_check(n, s, t)
        assert lhs == rhs


def test_duality_rejects_wrong_length():
    with pytest.raises(ParameterError):
        duality_check(3, (1, 1, 1), (1, 1, 2))


# ---------------------------------------------------------------------------
# MacWilliams transform


def _span(rows, n):
    words = set()
    for coeffs in itertools.product(range(3), repeat=len(rows)):
        words.add(tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % 3 for i in range(n)))
    return words


def _dual(code, n):
    return {v for v in itertools.product(range(3), repeat=n)
            if all(sum(a * b for a, b in zip(v, c)) % 3 == 0 for c in code)}


def random_codes(count=20, seed=2024):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, 6)
        k = rng.randint(1, n - 1)
        rows = [[rng.randrange(3) for _ in range(n)] for _ in range(k)]
        out.append((n, _span(rows, n)))
    return out


@pytest.mark.parametrize("n,code", random_codes())
def test_macwilliams_biduality(n, code):
    enum = WeightEnumerator.from_codewords(n, code)
    dual = _dual(code, n)
    dual_enum = macwilliams_transform(enum, len(code))
    assert dual_enum == WeightEnumerator.from_codewords(n, dual)
    assert macwilliams_transform(dual_enum, len(dual)) == enum


def test_macwilliams_rejects_non_code():
    enum = WeightEnumerator(2, {TypeVector((2, 0, 0)): 1, TypeVector((1, 1, 0)): 1})
    with pytest.raises(InvariantError):
        macwilliams_transform(enum, 2)


def test_weight_enumerator_validation():
    with pytest.raises(ParameterError):
        WeightEnumerator(3, {TypeVector((1, 1)): 1})
    with pytest.raises(ParameterError):
        WeightEnumerator(2, {TypeVector((2, 0, 0)): -1})
