"""Per-n exhaustive checks of the extremal-eigenvalue results for O_{3l,3}.

Each function certifies one value of ``l`` and returns a verdict record; a
violated inequality is reported as a counterexample, never raised.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .core import TypeVector, enumerate_types, multinomial
from .errors import InvariantError, ParameterError
from .families import orthogonality_graph
from .spectrum import balanced_eigenvalue, cubic_power, eigenvalue_of_type

ENGINES = ("convolution", "closed", "both")


def balanced_eigenvalues(l: int, engine: str = "both") -> dict:
    """lambda(T) of O_{3l,3} for every canonical type T.

    ``convolution`` uses the character-sum engine, ``closed`` the
    balanced-cubic coefficient formula; ``both`` computes the two and raises
    on the first disagreement.
    """
    if engine not in ENGINES:
        raise ParameterError(f"engine must be one of {ENGINES}")
    spec = orthogonality_graph(3, l)
    out = {}
    for t in enumerate_types(3, 3 * l, canonical=True):
        if engine == "closed":
            out[t] = balanced_eigenvalue(l, t)
            continue
        ev = eigenvalue_of_type(spec, t)
        if engine == "both":
            closed = balanced_eigenvalue(l, t)
            if closed != ev:
                raise InvariantError(
                    "engine and closed form disagree", l=l, type=t, engine=ev, closed_form=closed
                )
        out[t] = ev
    return out


def _jsonable(obj, big: tuple = ()):
    """Plain JSON structure; keys listed in ``big`` hold eigenvalue-sized
    integers and become decimal strings."""
    if isinstance(obj, dict):
        return {str(k): str(v) if k in big else _jsonable(v, big) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x, big) for x in obj]
    return obj


@dataclass
class ExtremalVerdict:
    l: int
    n: int
    passed: bool
    engine: str
    types_checked: int
    lambda_max: int
    smallest: int
    smallest_witnesses: list
    second_largest: int
    second_largest_witnesses: list
    second_abs_witnesses: list
    checks: dict
    counterexamples: list = field(default_factory=list)

    def to_json(self) -> dict:
        return _jsonable(asdict(self), big=("lambda_max", "smallest", "second_largest"))


def verify_extremal_claims(l: int, engine: str = "both") -> ExtremalVerdict:
    """Check the smallest-eigenvalue claim (all l >= 1) and the
    second-largest-eigenvalue claim (n = 3l >= 9) over every canonical type."""
    if l < 1:
        raise ParameterError("l must be at least 1")
    n = 3 * l
    m_bal = multinomial(n, (l, l, l))
    lam = balanced_eigenvalues(l, engine)
    top = TypeVector((0, 0, n))
    small = TypeVector((1, 1, n - 2))
    second = TypeVector((2, 2, n - 4)) if n >= 4 else None
    checks: dict = {}
    bad: list = []

    checks["largest_is_degree"] = lam[top] == m_bal and all(v <= m_bal for v in lam.values())
    if not checks["largest_is_degree"]:
        bad.append({"claim": "largest_is_degree", "type": list(top), "value": str(lam[top])})

    expected_small = Fraction(-m_bal, n - 1) if n > 1 else None
    checks["smallest_closed_form"] = expected_small is not None and lam[small] == expected_small
    if not checks["smallest_closed_form"]:
        bad.append({"claim": "smallest_closed_form", "type": list(small), "value": str(lam[small]),
                    "expected": str(expected_small)})

    bound = abs(lam[small])
    ok = True
    for t, v in lam.items():
        if t != top and abs(v) > bound:
            ok = False
            bad.append({"claim": "abs_le_smallest", "type": list(t), "value": str(v), "bound": str(bound)})
    checks["abs_le_smallest"] = ok

    if n >= 9:
        expected_second = Fraction(2 * m_bal, (n - 1) * (n - 2))
        checks["second_closed_form"] = lam[second] == expected_second
        if not checks["second_closed_form"]:
            bad.append({"claim": "second_closed_form", "type": list(second), "value": str(lam[second]),
                        "expected": str(expected_second)})
        bound2 = abs(lam[second])
        ok = True
        for t, v in lam.items():
            if t not in (top, small) and abs(v) > bound2:
                ok = False
                bad.append({"claim": "abs_le_second", "type": list(t), "value": str(v), "bound": str(bound2)})
        checks["abs_le_second"] = ok

    rest = {t: v for t, v in lam.items() if t != top}
    low = min(lam.values())
    high = max(rest.values()) if rest else lam[top]
    top_abs = max((abs(v) for v in rest.values()), default=0)
    return ExtremalVerdict(
        l=l,
        n=n,
        passed=all(checks.values()),
        engine=engine,
        types_checked=len(lam),
        lambda_max=lam[top],
        smallest=low,
        smallest_witnesses=sorted(t for t, v in lam.items() if v == low),
        second_largest=high,
        second_largest_witnesses=sorted(t for t, v in rest.items() if v == high),
        second_abs_witnesses=sorted(t for t, v in rest.items() if abs(v) == top_abs),
        checks=checks,
        counterexamples=bad,
    )


@dataclass
class AppendixVerdict:
    l: int
    n: int
    passed: bool
    checks: dict
    failures: list = field(default_factory=list)
    equality_t0_le_2: bool = True
    equality_breaks_at: list = field(default_factory=list)

    def to_json(self) -> dict:
        return _jsonable(asdict(self))


def _claim_closed_form(l: int, t: TypeVector) -> tuple:
    """(lambda closed form, inequality for the smallest-eigenvalue claim,
    inequality for the second-largest claim or None) for canonical ``t`` with
    ``t0 <= 2`` and all parts congruent mod 3."""
    n = 3 * l
    m_bal = multinomial(n, (l, l, l))
    t0, t1, _ = t
    if t0 == 0:
        j = t1 // 3
        value = Fraction(m_bal, math.comb(n, t1)) * math.comb(l, j)
        rhs = math.comb(n, t1)
        first = (n - 1) * math.comb(l, j) <= rhs
        second = (n - 1) * (n - 2) * math.comb(l, j) <= 2 * rhs
    elif t0 == 1:
        j = (t1 - 1) // 3
        value = Fraction(-n * m_bal * math.comb(l - 1, j), multinomial(n, t))
        rhs = math.comb(n - 1, t1)
        first = (n - 1) * math.comb(l - 1, j) <= rhs
        second = None if t1 == 1 else (n - 1) * (n - 2) * math.comb(l - 1, j) <= 2 * rhs
    else:
        k = (t1 - 2) // 3
        value = Fraction(9 * m_bal * math.comb(l, 2) * math.comb(max(l - 2, 0), k), multinomial(n, t))
        rhs = math.comb(n - 2, t1)
        first = (n - 3) * math.comb(max(l - 2, 0), k) <= rhs
        second = (n - 2) * (n - 3) * math.comb(max(l - 2, 0), k) <= 2 * rhs
    return value, first, second


def _step_polynomials(t: TypeVector) -> tuple:
    n = sum(t)
    cubes = sum(x * (x - 1) * (x - 2) for x in t)
    prod = 3 * t[0] * t[1] * t[2]
    return (n - 4) * (n - 2) * n - cubes - prod, n * (n - 4) * (n - 5) - cubes - prod


def verify_appendix_claims(l: int, engine: str = "closed") -> AppendixVerdict:
    """Base-case and induction-step inequalities behind the extremal claims.

    For every canonical type with ``t0 <= 2`` the explicit eigenvalue formula
    is compared with the engine value and both ratio inequalities are checked
    as integer comparisons. Types with all parts >= 3 get the two cubic step
    inequalities. Independently, the absolute value is compared with the
    ``(x^3+y^3+z^3+3xyz)^l`` majorant, which should be tight when ``t0 <= 2``.
    """
    if l < 1:
        raise ParameterError("l must be at least 1")
    n = 3 * l
    m_bal = multinomial(n, (l, l, l))
    lam = balanced_eigenvalues(l, engine)
    plus = cubic_power(l, +1)
    checks = {"closed_forms": True, "base_smallest": True, "base_second": True,
              "zero_off_congruence": True, "step_smallest": True, "step_second": True,
              "majorant": True}
    failures: list = []
    equality = True
    breaks: list = []

    for t, v in lam.items():
        congruent = t[0] % 3 == t[1] % 3 == t[2] % 3
        h = plus.get(tuple(t), 0)
        majorant = Fraction(m_bal, multinomial(n, t)) * h
        if abs(v) > majorant:
            checks["majorant"] = False
            failures.append({"claim": "majorant", "type": list(t)})
        if abs(v) != majorant:
            if t[0] <= 2:
                equality = False
            breaks.append(list(t))
        if not congruent:
            if v != 0 or h != 0:
                checks["zero_off_congruence"] = False
                failures.append({"claim": "zero_off_congruence", "type": list(t), "value": str(v)})
            continue
        if t[0] <= 2 and t != (0, 0, n):
            value, first, second = _claim_closed_form(l, t)
            if value != v:
                checks["closed_forms"] = False
                failures.append({"claim": "closed_form", "type": list(t), "value": str(v),
                                 "formula": str(value)})
            if n >= 4 and not first:
                checks["base_smallest"] = False
                failures.append({"claim": "base_smallest", "type": list(t)})
            if n >= 9 and second is not None and t != (1, 1, n - 2) and not second:
                checks["base_second"] = False
                failures.append({"claim": "base_second", "type": list(t)})
        elif t[0] >= 3:
            g_val, f_val = _step_polynomials(t)
            if g_val < 0:
                checks["step_smallest"] = False
                failures.append({"claim": "step_smallest", "type": list(t), "value": str(g_val)})
            if f_val < 0:
                checks["step_second"] = False
                failures.append({"claim": "step_second", "type": list(t), "value": str(f_val)})
    return AppendixVerdict(
        l=l,
        n=n,
        passed=all(checks.values()),
        checks=checks,
        failures=failures,
        equality_t0_le_2=equality,
        equality_breaks_at=breaks,
    )
