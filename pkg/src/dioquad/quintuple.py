"""Regular quintuples, Dujella extension, and the ten-variable generalisation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateError
from .exact_arith import format_rational, parse_rational, to_rational
from .polykit import IdentityReport, Polynomial, prod, variables
from .quadruple import _pair_root, p4_poly


def _esym(values, k):
    return sum((prod(c) for c in itertools.combinations(values, k)), Fraction(0))


def p5(a, b, c, d, e) -> Fraction:
    """Value of the regular-quintuple polynomial (symmetric in its five arguments)."""
    v = [to_rational(t) for t in (a, b, c, d, e)]
    total = sum(v)
    pi = prod(v)
    return (pi * pi - 2 * pi * total + sum(t * t for t in v)
            - 4 * _esym(v, 4) - 4 - 2 * _esym(v, 2))


def is_regular_quintuple(a, b, c, d, e) -> bool:
    return p5(a, b, c, d, e) == 0


def dujella_extend(a, b, c, d) -> tuple[Fraction, Fraction]:
    """Both roots e of P(a,b,c,d,e) = 0 for a rational Diophantine quadruple, larger first."""
    a, b, c, d = (to_rational(v) for v in (a, b, c, d))
    q = a * b * c * d
    if q == 1:
        raise DegenerateError("abcd = 1: the quadratic in e has vanishing leading coefficient")
    names = "abcd"
    vals = (a, b, c, d)
    root_product = Fraction(1)
    for i, j in itertools.combinations(range(4), 2):
        root_product *= _pair_root(vals[i], vals[j], f"pair ({names[i]},{names[j]})")
    s1 = a + b + c + d
    centre = q * s1 + 2 * (a*b*c + a*b*d + a*c*d + b*c*d) + s1
    denom = (q - 1) ** 2
    r1 = (centre + 2 * root_product) / denom
    r2 = (centre - 2 * root_product) / denom
    return (r1, r2) if r1 >= r2 else (r2, r1)


@dataclass(frozen=True)
class QuintupleVars:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]

    def __post_init__(self):
        x = tuple(to_rational(v) for v in self.x)
        y = tuple(to_rational(v) for v in self.y)
        if len(x) != 5 or len(y) != 5:
            raise ValueError("QuintupleVars needs five x and five y values")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def X(self) -> Fraction:
        return prod(self.x)

    @property
    def Y(self) -> Fraction:
        return prod(self.y)

    @property
    def w(self) -> tuple[Fraction, ...]:
        return tuple(a * b for a, b in zip(self.x, self.y))

    def to_json(self) -> dict:
        return {"x": [format_rational(v) for v in self.x], "y": [format_rational(v) for v in self.y]}

    @classmethod
    def from_json(cls, data: dict) -> QuintupleVars:
        return cls(tuple(parse_rational(v) for v in data["x"]), tuple(parse_rational(v) for v in data["y"]))


def _complement(seq, i):
    return prod(v for k, v in enumerate(seq) if k != i)


def _p5_general_expr(x, y, X, Y, zero):
    # X*Y^2/w_i is written as (prod of x over j != i)(prod of y over j != i)*Y
    w = [a * b for a, b in zip(x, y)]
    sq = sum((t * t for t in w), zero)
    inv = sum((_complement(x, i) * _complement(y, i) for i in range(5)), zero)
    pairs = sum((w[i] * w[j] for i, j in itertools.combinations(range(5), 2)), zero)
    return (Y * Y * sq - 4 * Y * inv - 2 * Y * Y * pairs
            - 2 * X * Y * sum(w, zero) - 4 * Y ** 3 + X * X)


def p5_general(v: QuintupleVars) -> Fraction:
    return _p5_general_expr(v.x, v.y, v.X, v.Y, Fraction(0))


# symbolic forms -----------------------------------------------------------

def p5_poly(a=None, b=None, c=None, d=None, e=None) -> Polynomial:
    if a is None:
        a, b, c, d, e = variables("a b c d e")
    v = (a, b, c, d, e)
    pi = prod(v)
    zero = Polynomial()
    sigma2 = sum((s * t for s, t in itertools.combinations(v, 2)), zero)
    sigma4 = sum((prod(c4) for c4 in itertools.combinations(v, 4)), zero)
    return pi**2 - 2 * pi * sum(v, zero) + sum((t**2 for t in v), zero) - 4 * sigma4 - 4 - 2 * sigma2


def p5_general_poly() -> Polynomial:
    x = variables("x1 x2 x3 x4 x5")
    y = variables("y1 y2 y3 y4 y5")
    return _p5_general_expr(x, y, prod(x), prod(y), Polynomial())


def p5_general_factored_poly(sign_w4: int = -1) -> Polynomial:
    """Right-hand side of the generalised factored form.

    ``sign_w4=+1`` reproduces the printed ``+Y w4`` term; -1 is the form that
    reduces to the five-variable factorisation at y = 1.
    """
    x1, x2, x3, x4, x5 = x = variables("x1 x2 x3 x4 x5")
    y1, y2, y3, y4, y5 = y = variables("y1 y2 y3 y4 y5")
    X, Y = prod(x), prod(y)
    w1, w2, w3, w4, w5 = (a * b for a, b in zip(x, y))
    base = X + 2 * w1 * w2 * w3 + Y * w1 + Y * w2 + Y * w3 + sign_w4 * Y * w4 - Y * w5
    return base**2 - 4 * y1 * y2 * y3 * (x1*x2 + y3*y4*y5) * (x1*x3 + y2*y4*y5) \
        * (x2*x3 + y1*y4*y5) * (x4*x5 + y1*y2*y3)


def verify_quintuple_identities() -> IdentityReport:
    report = IdentityReport("quintuple")
    a, b, c, d, e = variables("a b c d e")
    P = p5_poly(a, b, c, d, e)
    abc, abcd = a * b * c, a * b * c * d

    report.check("P5 == split form (abc|de)", P,
                 (a*b*c*d*e + 2*abc + a + b + c - d - e)**2
                 - 4 * (a*b + 1) * (a*c + 1) * (b*c + 1) * (d*e + 1))
    report.check("e^2*P5 == cleared form in e", e**2 * P,
                 (e**2 - a*e - b*e - c*e - d*e - 2 + a*b*c*d*e**2)**2
                 - 4 * (a*e + 1) * (b*e + 1) * (c*e + 1) * (d*e + 1))
    report.check("(abcd-1)^2*P5 == quadratic in e", (abcd - 1)**2 * P,
                 (e * (abcd - 1)**2 - abcd * (a + b + c + d)
                  - 2*a*b*c - 2*a*b*d - 2*b*c*d - 2*a*c*d - a - b - c - d)**2
                 - 4 * prod(s * t + 1 for s, t in itertools.combinations((a, b, c, d), 2)))
    report.check("P5(e=0) == P4", P.substitute({"e": 0}), p4_poly(a, b, c, d))
    report.record("P5 symmetric under S5", all(
        P.substitute(dict(zip("abcde", perm))) == P
        for perm in itertools.permutations((a, b, c, d, e))))

    general = p5_general_poly()
    ones = {f"y{i}": 1 for i in range(1, 6)}
    rename = {f"x{i}": v for i, v in enumerate((a, b, c, d, e), start=1)}
    report.check("P5gen(y=1) == P5", general.substitute(ones).substitute(rename), P)
    report.check("P5gen == factored form", general, p5_general_factored_poly(-1),
                 note="factored form with -Y*w4; see findings")

    printed_diff = general - p5_general_factored_poly(+1)
    if not printed_diff.is_zero():
        report.findings.append(
            "the factored form printed with +Y*w4 is not identical to P5gen; the failing term "
            f"is +Y*w4, difference P5gen - printed = {printed_diff}; the -Y*w4 form matches "
            "P5gen and reduces to the split form at y=1")
    return report
