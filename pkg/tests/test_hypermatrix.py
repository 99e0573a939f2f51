import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dioquad.errors import DegenerateError, IndeterminateError, PreconditionError
from dioquad.hypermatrix import (
    ENTRY_NAMES, GenQuadruple, Hypermatrix222, KernelVectors, Rotation, SymParam, apply_sl2,
    check_generalized_solution, complete, face_determinant, face_determinants, from_xy,
    hyperdet, hyperdet_printed_poly, kernel_check, kernel_solve, p4h, pair_values,
    parameterize_asymmetric, parameterize_symmetric, rotate, symmetric_hypermatrix, to_xy,
    verify_hypermatrix_identities,
)
from dioquad.quadruple import p4

ONES = (1, 1, 1, 1)
FERMAT = GenQuadruple((1, 3, 8, 120), ONES, (2, 3, 11, 5, 19, 31))

small = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def random_hypermatrix(rng, lo=-9, hi=9):
    return Hypermatrix222([Fraction(rng.randint(lo, hi)) for _ in range(8)])


def sympy_hyperdet(A):
    t = sympy.Symbol("t")
    m = sympy.Matrix(2, 2, lambda j, k: sympy.Rational(A[0, j, k]) + t * sympy.Rational(A[1, j, k]))
    return sympy.discriminant(sympy.expand(m.det()), t) if sympy.degree(m.det(), t) == 2 else None


def test_p4h_examples():
    assert p4h((1, 3, 8, 120), ONES) == 0
    assert p4h(ONES, ONES) == -16
    assert p4h((1, 2, 3, 4), (5, 6, 7, 8)) == p4h((5, 6, 7, 8), (1, 2, 3, 4))


def test_hyperdet_via_mapping():
    A = from_xy((1, 3, 8, 120), ONES)
    assert hyperdet(A) == 0
    rng = random.Random(5)
    for _ in range(1000):
        x = [Fraction(rng.randint(-30, 30)) for _ in range(4)]
        y = [Fraction(rng.randint(-30, 30)) for _ in range(4)]
        assert hyperdet(from_xy(x, y)) == p4h(x, y)
        assert to_xy(from_xy(x, y)) == (tuple(x), tuple(y))


def test_hyperdet_agrees_with_sympy_discriminant():
    rng = random.Random(17)
    checked = 0
    while checked < 30:
        A = random_hypermatrix(rng)
        d = sympy_hyperdet(A)
        if d is None:
            continue
        assert Fraction(int(d)) == hyperdet(A)
        checked += 1


def test_printed_determinant_list_differs():
    from dioquad.hypermatrix import hyperdet_textbook_poly
    assert hyperdet_printed_poly() != hyperdet(Hypermatrix222.symbolic())
    assert hyperdet_textbook_poly() == hyperdet(Hypermatrix222.symbolic())


def test_face_determinant_matches_system():
    x, y = (2, 3, 5, 7), (11, 13, 17, 19)
    A = from_xy(x, y)
    assert A["010"] * A["100"] - A["000"] * A["110"] == x[0] * x[1] + y[2] * y[3]
    assert face_determinants(A) == pair_values(x, y)


def test_check_generalized_examples():
    rep = check_generalized_solution(GenQuadruple((1, 3, 8, 120), ONES))
    assert rep.all_square and rep.regular
    assert rep.roots == (2, 3, 11, 5, 19, 31)
    rep = check_generalized_solution(GenQuadruple(ONES, ONES))
    assert rep.values == (2,) * 6 and not any(r is not None for r in rep.roots)
    assert not rep.regular and rep.p4h == -16
    rep = check_generalized_solution(GenQuadruple((0, 0, 0, 0), (1, 4, 9, 16)))
    assert rep.all_square


def test_genquadruple_validates_witnesses():
    with pytest.raises(ValueError, match="z12"):
        GenQuadruple((1, 3, 8, 120), ONES, (3, 3, 11, 5, 19, 31))
    signed = GenQuadruple((1, 3, 8, 120), ONES, (-2, 3, 11, 5, 19, -31))
    assert signed.canonical() == FERMAT


def test_json_round_trips():
    A = Hypermatrix222([1, "-2/3", 0, 4, 5, 6, 7, "8/9"])
    data = A.to_json()
    assert data["a"][0][0][1] == "-2/3"
    assert Hypermatrix222.from_json(data) == A
    assert GenQuadruple.from_json(FERMAT.to_json()) == FERMAT
    sp = SymParam((1, 2), (3, "1/2"), (0, 1), 2, 3, 1, 2, 5)
    assert SymParam.from_json(sp.to_json()) == sp


def test_rotate_identity():
    assert rotate(FERMAT, "15a", Rotation(1, 0)) == FERMAT


def test_rotate_fermat_three_fifths():
    out = rotate(FERMAT, "15a", Rotation(Fraction(3, 5), Fraction(4, 5)))
    assert p4h(out.x, out.y) == 0
    rep = check_generalized_solution(out)
    assert rep.all_square
    # recompute each face equation from the new coordinates
    for z, v in zip(out.z, pair_values(out.x, out.y)):
        assert z * z == v
    # z34 enters the transport as -31, the sign for which 2*z12*z34 equals the cross term
    assert out.z[0] == Fraction(3, 5) * 2 + Fraction(4, 5) * -31
    assert out.z[0] ** 2 == out.x[0] * out.x[1] + out.y[2] * out.y[3]
    assert out.z[1:5] == FERMAT.z[1:5]


@pytest.mark.parametrize("variant", ["15a", "15b", "15c"])
def test_rotate_all_variants(variant):
    for m, n in [(2, 1), (3, 2), (5, 7)]:
        out = rotate(FERMAT, variant, Rotation.pythagorean(m, n))
        assert check_generalized_solution(out).all_square
        assert check_generalized_solution(out).regular


def test_rotate_without_witnesses_scales():
    sol = GenQuadruple((1, 3, 8, 120), (1, 2, 1, 1))
    out = rotate(sol, "15b", Rotation(1, 1))
    assert out.z is None
    assert p4h(out.x, out.y) == 4 * p4h(sol.x, sol.y)


def test_rotate_errors():
    with pytest.raises(PreconditionError):
        rotate(FERMAT, "15a", Rotation(1, 1))
    with pytest.raises(ValueError):
        rotate(FERMAT, "16a", Rotation(1, 0))
    irregular = GenQuadruple((0, 0, 0, 0), (1, 4, 9, 16), (12, 8, 6, 4, 3, 2))
    with pytest.raises(PreconditionError):
        rotate(irregular, "15a", Rotation(Fraction(3, 5), Fraction(4, 5)))


def test_apply_sl2_examples():
    rng = random.Random(2)
    A = random_hypermatrix(rng)
    I = ((1, 0), (0, 1))
    for axis in (1, 2, 3):
        assert apply_sl2(A, axis, I) == A
        half = ((2, 0), (0, Fraction(1, 2)))
        assert hyperdet(apply_sl2(A, axis, half)) == hyperdet(A)
        m = ((2, 3), (1, 2))
        assert hyperdet(apply_sl2(A, axis, m)) == hyperdet(A)
        m = ((2, 3), (1, 5))  # det 7
        assert hyperdet(apply_sl2(A, axis, m)) == 49 * hyperdet(A)
    with pytest.raises(ValueError):
        apply_sl2(A, 4, I)


def test_complete_fermat():
    A = from_xy((1, 3, 8, 120), ONES)
    roots = complete(A, "000")
    assert roots == [-1, -11781]
    for r in roots:
        x, y = to_xy(A.replace("000", r))
        rep = check_generalized_solution(GenQuadruple(x, y))
        assert rep.regular and rep.all_square


def test_complete_non_square_is_empty():
    A = from_xy((0, 1, 1, 1), (1, 1, 1, 1))
    roots = complete(A, "000")
    assert roots == []


def test_complete_linear_case():
    # y1 = 0 removes the leading coefficient in x1 (a000 = -x1)
    A = from_xy((5, 3, 8, 120), (0, 1, 1, 1))
    roots = complete(A, "000")
    assert len(roots) == 1
    assert hyperdet(A.replace("000", roots[0])) == 0


def test_complete_indeterminate():
    with pytest.raises(IndeterminateError):
        complete(Hypermatrix222.zero(), "101")


def test_parameterize_asymmetric_example():
    sol = parameterize_asymmetric(1, 3, 8, 120, 5, 19, 31)
    assert sol.x == (11781, 3, 8, 120)
    assert sol.y == ONES
    assert check_generalized_solution(sol).regular
    assert p4(*sol.x) == 0
    # the other root of the completion quadratic
    assert sorted(-r for r in complete(from_xy(sol.x, sol.y), "000")) == [1, 11781]


def test_parameterize_asymmetric_degenerate():
    with pytest.raises(DegenerateError):
        parameterize_asymmetric(0, 3, 8, 120, 5, 19, 31)


@given(small.filter(lambda v: v != 0), small, small, small, small, small, small)
@settings(max_examples=80, deadline=None)
def test_parameterize_asymmetric_property(y1, x2, x3, x4, z23, z24, z34):
    sol = parameterize_asymmetric(y1, x2, x3, x4, z23, z24, z34)
    rep = check_generalized_solution(sol)
    assert rep.regular and rep.all_square
    assert [abs(z) for z in sol.z] == list(rep.roots)


def test_parameterize_symmetric_unit_vectors():
    sp = SymParam((1, 0), (1, 0), (1, 0), 1, 1, 1, 1, 1)
    A = parameterize_symmetric(sp)
    assert kernel_check(A, KernelVectors(sp.p, sp.q, sp.r))
    assert hyperdet(A) == 0
    # perp((1, 0)) = (0, -1): the b0 term lands on a111 with sign (-1)^3 and each
    # b_n term (here g h^2 / |p|^2 = 1) on the entry with a single zero index
    assert A["111"] == -1
    assert (A["011"], A["101"], A["110"]) == (1, 1, 1)
    assert all(A[idx] == 0 for idx in ("000", "001", "010", "100"))


def test_parameterize_symmetric_zero_norm():
    with pytest.raises(DegenerateError):
        SymParam((0, 0), (1, 0), (1, 0), 1, 1, 1, 1, 1)


pairs = st.tuples(small, small).filter(lambda v: v != (0, 0))


@given(pairs, pairs, pairs, small, small.filter(lambda v: v != 0), small, small, small)
@settings(max_examples=60, deadline=None)
def test_parameterize_symmetric_property(p, q, r, b0, g, h1, h2, h3):
    sp = SymParam(p, q, r, b0, g, h1, h2, h3)
    A = parameterize_symmetric(sp)
    assert hyperdet(A) == 0
    assert kernel_check(A, KernelVectors(p, q, r))
    assert all(rational_square(f) for f in face_determinants(A))


def rational_square(q):
    from dioquad.exact_arith import is_rational_square
    return is_rational_square(q)


def test_symmetric_rescaling_relation():
    # the seven-variable form is the four-coefficient family up to an overall factor
    rng = random.Random(23)
    for _ in range(50):
        vec = lambda: (Fraction(rng.randint(-5, 5) or 1), Fraction(rng.randint(-5, 5)))
        p, q, r = vec(), vec(), vec()
        b0, g, h1, h2, h3 = (Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)) for _ in range(5))
        A = parameterize_symmetric(SymParam(p, q, r, b0, g, h1, h2, h3))
        scaled = lambda v, h: (v[0] / h, v[1] / h)
        B = symmetric_hypermatrix(b0 / g, scaled(p, h1), scaled(q, h2), scaled(r, h3))
        assert A.entries == tuple(g * h1 * h2 * h3 * v for v in B.entries)


def test_kernel_check_examples():
    A = Hypermatrix222.from_dict({"a000": 1})
    assert kernel_check(A, KernelVectors((0, 1), (0, 1), (0, 1)))
    rng = random.Random(9)
    for _ in range(50):
        B = random_hypermatrix(rng)
        if hyperdet(B) == 0:
            continue
        kv = KernelVectors((rng.randint(1, 5), rng.randint(-5, 5)), (1, rng.randint(-5, 5)), (rng.randint(-5, 5), 1))
        assert not kernel_check(B, kv)


def test_kernel_solve_examples():
    A = Hypermatrix222.from_dict({"a000": 1})
    assert kernel_check(A, kernel_solve(A))
    F = from_xy((1, 3, 8, 120), ONES)
    assert kernel_check(F, kernel_solve(F))
    z = kernel_solve(Hypermatrix222.zero())
    assert (z.p, z.q, z.r) == ((1, 0), (1, 0), (1, 0))
    with pytest.raises(PreconditionError):
        kernel_solve(from_xy(ONES, ONES))


def test_kernel_solve_degenerate_strata():
    cases = [
        {"a000": 1, "a001": 2},                       # rank-one slice only
        {"a000": 1, "a100": 3},                       # shared column space
        {"a000": 1, "a010": 2, "a100": 2, "a110": 4},  # product tensor
        {"a011": 5, "a111": 7},
        {"a000": 1, "a011": 1},                        # pencil with double root at infinity
    ]
    for entries in cases:
        A = Hypermatrix222.from_dict(entries)
        if hyperdet(A) != 0:
            continue
        kv = kernel_solve(A)
        assert kv is not None and kernel_check(A, kv), entries


def test_kernel_solve_on_parameterized_and_transformed():
    rng = random.Random(31)
    for _ in range(100):
        vec = lambda: (Fraction(rng.randint(-4, 4) or 2), Fraction(rng.randint(-4, 4)))
        sp = SymParam(vec(), vec(), vec(), rng.randint(-3, 3), rng.choice([1, 2, -1]), 1, rng.randint(1, 3), 1)
        A = parameterize_symmetric(sp)
        A = apply_sl2(A, rng.randint(1, 3), ((1, rng.randint(-3, 3)), (0, 1)))
        kv = kernel_solve(A)
        assert kv is not None and kernel_check(A, kv)


def test_identity_suite():
    rep = verify_hypermatrix_identities()
    assert rep.passed, [l for l in rep.lines() if "FAIL" in l]
    assert len(rep.findings) == 2
