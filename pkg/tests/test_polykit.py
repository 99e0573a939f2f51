from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dioquad.polykit import IdentityReport, Polynomial, UnboundVariableError, poly_equal, prod, variables
from dioquad.quadruple import p4_poly

NAMES = ["a", "b", "c", "x1", "x2", "x10"]


monomials = st.lists(st.sampled_from(NAMES), max_size=3)
terms = st.tuples(st.integers(-5, 5), monomials)


@st.composite
def polynomials(draw):
    total = Polynomial()
    for coeff, names in draw(st.lists(terms, max_size=5)):
        total = total + coeff * prod(Polynomial.var(n) for n in names)
    return total


@given(polynomials(), polynomials(), polynomials())
@settings(max_examples=60)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p
    assert p * q == q * p
    assert p - p == 0
    assert p * 1 == p and p * 0 == 0


def test_no_zero_coefficients_stored():
    a, b = variables("a b")
    p = (a + b) * (a - b) + b * b
    assert p.terms == {(("a", 2),): 1}
    assert len(p) == 1


def test_zero_polynomial():
    assert Polynomial().is_zero()
    assert Polynomial().degree() == -1
    assert str(Polynomial()) == "0"


def test_natural_variable_order_and_text():
    x2, x10 = variables("x2 x10")
    p = 2 * x10 * x2 - 3
    assert p.variables() == ["x2", "x10"]
    assert str(p) == "+2*x2*x10 -3"
    a, b = variables("a b")
    assert str(a * a * b - 4 * a * b + 1) == "+a^2*b -4*a*b +1"


def test_substitute_is_simultaneous():
    a, b = variables("a b")
    p = a - 2 * b
    assert p.substitute({"a": b, "b": a}) == b - 2 * a


def test_eval_and_unbound():
    a, b = variables("a b")
    p = a * a * b + 1
    assert p.eval({"a": Fraction(1, 2), "b": 4}) == 2
    with pytest.raises(UnboundVariableError) as exc:
        p.eval({"a": 1})
    assert "b" in str(exc.value)


def test_p4_examples():
    P = p4_poly()
    assert P.eval(dict(zip("abcd", (1, 3, 8, 120)))) == 0
    assert P.eval(dict(zip("abcd", (1, 3, 8, 119)))) != 0
    assert P.eval(dict(zip("abcd", (0, 0, 0, 0)))) == -4


def test_pair_form_identity():
    a, b, c, d = variables("a b c d")
    assert poly_equal(p4_poly(), (c + d - a - b) ** 2 - 4 * (a * b + 1) * (c * d + 1))


def test_collect():
    a, t = variables("a t")
    p = 3 * t * t * a + 2 * t - 5
    parts = p.collect("t")
    assert parts[2] == 3 * a and parts[1] == 2 and parts[0] == -5


def _to_sympy(p: Polynomial):
    syms = {}
    expr = 0
    for mono, coeff in p.terms.items():
        term = sympy.Integer(coeff)
        for v, e in mono:
            syms.setdefault(v, sympy.Symbol(v))
            term *= syms[v] ** e
        expr += term
    return sympy.expand(expr)


@given(polynomials(), polynomials())
@settings(max_examples=40, deadline=None)
def test_product_agrees_with_sympy(p, q):
    assert sympy.expand(_to_sympy(p * q) - _to_sympy(p) * _to_sympy(q)) == 0


def test_identity_report_lines():
    rep = IdentityReport("demo")
    a, = variables("a")
    rep.check("square", (a + 1) ** 2, a * a + 2 * a + 1)
    rep.check("wrong", (a + 1) ** 2, a * a + 1)
    assert rep.lines()[0] == "IDENTITY square: PASS"
    assert rep.lines()[1] == "IDENTITY wrong: FAIL [+2*a]"
    assert not rep.passed
    assert rep.to_json()["identities"][1]["difference"] == "+2*a"


def test_prod_helper():
    a, b = variables("a b")
    assert prod([a, b, 2]) == 2 * a * b
