"""Regular Diophantine quadruples.

``P(a,b,c,d)`` vanishes exactly on regular quadruples; the factored forms
make the Arkin-Hoggatt-Strauss extension of a triple visible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .exact_arith import format_rational, parse_rational, rational_sqrt_exact, to_rational
from .polykit import IdentityReport, Polynomial, prod, variables

Pair = tuple[int, int]


@dataclass(frozen=True)
class MTuple:
    elements: tuple[Fraction, ...]
    witnesses: dict[Pair, Fraction] | None = None

    def __post_init__(self):
        elems = tuple(to_rational(e) for e in self.elements)
        if not 2 <= len(elems) <= 6:
            raise ValueError(f"tuple length must be 2..6, got {len(elems)}")
        object.__setattr__(self, "elements", elems)
        if self.witnesses is not None:
            wit = {tuple(k): to_rational(v) for k, v in self.witnesses.items()}
            for (i, j), z in wit.items():
                if z < 0 or z * z != elems[i] * elems[j] + 1:
                    raise ValueError(f"bad witness for pair ({i},{j}): {z}")
            object.__setattr__(self, "witnesses", wit)

    def __len__(self):
        return len(self.elements)

    def is_distinct(self) -> bool:
        return len(set(self.elements)) == len(self.elements)

    def to_json(self) -> dict:
        out: dict = {"elements": [format_rational(e) for e in self.elements]}
        if self.witnesses is not None:
            out["witnesses"] = {f"{i},{j}": format_rational(z) for (i, j), z in sorted(self.witnesses.items())}
        return out

    @classmethod
    def from_json(cls, data: dict) -> MTuple:
        elements = [parse_rational(e) for e in data["elements"]]
        witnesses = None
        if data.get("witnesses") is not None:
            witnesses = {}
            for key, value in data["witnesses"].items():
                i, j = (int(part) for part in key.split(","))
                witnesses[(i, j)] = parse_rational(value)
        return cls(tuple(elements), witnesses)


def p4(a, b, c, d) -> Fraction:
    """Value of the regular-quadruple polynomial; zero iff (a,b,c,d) is regular."""
    a, b, c, d = (to_rational(v) for v in (a, b, c, d))
    return (a * a + b * b + c * c + d * d
            - 2 * (a * b + a * c + a * d + b * c + b * d + c * d)
            - 4 * a * b * c * d - 4)


def is_regular_quadruple(a, b, c, d) -> bool:
    return p4(a, b, c, d) == 0


@dataclass
class PairCheck:
    i: int
    j: int
    value: Fraction
    root: Fraction | None

    @property
    def passed(self) -> bool:
        return self.root is not None


@dataclass
class DiophantineReport:
    passed: bool
    pairs: list[PairCheck] = field(default_factory=list)
    tuple: MTuple | None = None

    @property
    def failures(self) -> list[PairCheck]:
        return [p for p in self.pairs if not p.passed]

    @property
    def witnesses(self) -> list[Fraction | None]:
        return [p.root for p in self.pairs]

    def to_json(self) -> dict:
        return {
            "diophantine": self.passed,
            "pairs": [
                {"pair": [p.i, p.j], "value": format_rational(p.value),
                 "root": None if p.root is None else format_rational(p.root)}
                for p in self.pairs
            ],
        }


def is_diophantine(t: MTuple | Sequence) -> DiophantineReport:
    """Check that every pairwise product plus one is a rational square."""
    if not isinstance(t, MTuple):
        t = MTuple(tuple(t))
    pairs = []
    for i, j in itertools.combinations(range(len(t)), 2):
        value = t.elements[i] * t.elements[j] + 1
        pairs.append(PairCheck(i, j, value, rational_sqrt_exact(value)))
    ok = all(p.passed for p in pairs)
    filled = MTuple(t.elements, {(p.i, p.j): p.root for p in pairs}) if ok else None
    return DiophantineReport(ok, pairs, filled)


def _pair_root(x, y, label: str) -> Fraction:
    root = rational_sqrt_exact(x * y + 1)
    if root is None:
        raise PreconditionError(f"{label}: {format_rational(x)}*{format_rational(y)}+1 = "
                                f"{format_rational(x * y + 1)} is not a rational square")
    return root


def ahs_extend(a, b, c) -> tuple[Fraction, Fraction]:
    """Both roots d of P(a,b,c,d) = 0 for a Diophantine triple, larger first."""
    a, b, c = (to_rational(v) for v in (a, b, c))
    zab = _pair_root(a, b, "pair (a,b)")
    zac = _pair_root(a, c, "pair (a,c)")
    zbc = _pair_root(b, c, "pair (b,c)")
    centre = a + b + c + 2 * a * b * c
    offset = 2 * zab * zac * zbc
    return centre + offset, centre - offset


# symbolic forms -----------------------------------------------------------

def p4_poly(a=None, b=None, c=None, d=None) -> Polynomial:
    if a is None:
        a, b, c, d = variables("a b c d")
    return (a**2 + b**2 + c**2 + d**2
            - 2 * a * b - 2 * a * c - 2 * a * d - 2 * b * c - 2 * b * d - 2 * c * d
            - 4 * a * b * c * d - 4)


def p4_poly_as_printed() -> Polynomial:
    """The printed monomial list, which lacks the -2bd term."""
    a, b, c, d = variables("a b c d")
    return (a**2 + b**2 + c**2 + d**2
            - 2 * a * b - 2 * a * c - 2 * a * d - 2 * b * c - 2 * c * d
            - 4 * a * b * c * d - 4)


def _factored_forms() -> dict[str, tuple[Polynomial, Polynomial]]:
    a, b, c, d = variables("a b c d")
    P = p4_poly(a, b, c, d)
    forms = {
        "P4 == pair form (ab|cd)": (P, (c + d - a - b)**2 - 4 * (a*b + 1) * (c*d + 1)),
        "P4 == pair form (ad|bc)": (P, (c + b - a - d)**2 - 4 * (a*d + 1) * (c*b + 1)),
        "P4 == pair form (bd|ac)": (P, (c + a - b - d)**2 - 4 * (b*d + 1) * (c*a + 1)),
        "P4 == triple form solved for d": (P, (d - a - b - c - 2*a*b*c)**2 - 4 * (a*b + 1) * (a*c + 1) * (b*c + 1)),
        "P4 == triple form solved for c": (P, (c - a - b - d - 2*a*b*d)**2 - 4 * (a*b + 1) * (a*d + 1) * (b*d + 1)),
        "P4 == triple form solved for b": (P, (b - a - c - d - 2*a*c*d)**2 - 4 * (a*c + 1) * (a*d + 1) * (c*d + 1)),
        "P4 == triple form solved for a": (P, (a - b - c - d - 2*b*c*d)**2 - 4 * (b*c + 1) * (b*d + 1) * (c*d + 1)),
    }
    for name, v in zip("abcd", (a, b, c, d)):
        others = [w for w in (a, b, c, d) if w is not v]
        base = v**2 - sum((w * v for w in others), Polynomial()) - 2
        rhs = base**2 - 4 * prod(w * v + 1 for w in others)
        forms[f"{name}^2*P4 == cleared form in {name}"] = (v**2 * P, rhs)
    return forms


def verify_quadruple_identities() -> IdentityReport:
    report = IdentityReport("quadruple")
    for name, (lhs, rhs) in _factored_forms().items():
        report.check(name, lhs, rhs)

    a, b, c, d = variables("a b c d")
    P = p4_poly(a, b, c, d)
    symmetric = all(
        P.substitute(dict(zip("abcd", perm))) == P
        for perm in itertools.permutations((a, b, c, d))
    )
    report.record("P4 symmetric under S4", symmetric)

    missing = p4_poly_as_printed() - P
    if not missing.is_zero():
        report.findings.append(
            f"printed monomial list of P(a,b,c,d) differs from the factored forms by {missing}; "
            "the symmetric polynomial (with -2bd) is used")
    return report
