"""Sparse multivariate polynomials with integer coefficients.

Every identity in the package is proved by expanding both sides into the
canonical form below and comparing structurally: a polynomial is a dict from
monomial to nonzero ``int`` coefficient, and a monomial is a tuple of
``(variable, exponent)`` pairs sorted by variable order with no zero exponents.

Variable order is natural order on names (``x2`` before ``x10``); term order
is graded lexicographic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple  # tuple[tuple[str, int], ...]

_NAME_RE = re.compile(r"([A-Za-z_]*)(\d*)(.*)")


def var_key(name: str):
    prefix, digits, rest = _NAME_RE.fullmatch(name).groups()
    return (prefix, int(digits) if digits else -1, len(digits), rest)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda item: var_key(item[0])))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _grlex_key(m: Monomial):
    return (-_mono_degree(m), tuple((var_key(v), -e) for v, e in m))


class UnboundVariableError(KeyError):
    pass


class Polynomial:
    """Immutable sparse polynomial over the integers."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    if not isinstance(coeff, int):
                        raise TypeError(f"coefficients must be int, got {coeff!r}")
                    clean[mono] = coeff
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def var(cls, name: str) -> Polynomial:
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: int) -> Polynomial:
        return cls({(): c}) if c else cls()

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.const(other)
        if isinstance(other, Fraction) and other.denominator == 1:
            return Polynomial.const(other.numerator)
        return NotImplemented

    # inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(_mono_degree(m) for m in self._terms)

    def variables(self) -> list[str]:
        names = {v for m in self._terms for v, _ in m}
        return sorted(names, key=var_key)

    def coefficient(self, mono: Mapping[str, int] | Monomial) -> int:
        if isinstance(mono, Mapping):
            mono = tuple(sorted(((v, e) for v, e in mono.items() if e), key=lambda t: var_key(t[0])))
        return self._terms.get(tuple(mono), 0)

    def collect(self, name: str) -> dict[int, Polynomial]:
        """Split into coefficients of powers of one variable."""
        out: dict[int, dict] = {}
        for mono, coeff in self._terms.items():
            power = 0
            rest = []
            for v, e in mono:
                if v == name:
                    power = e
                else:
                    rest.append((v, e))
            bucket = out.setdefault(power, {})
            bucket[tuple(rest)] = coeff
        return {power: Polynomial(terms) for power, terms in out.items()}

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda item: _grlex_key(item[0]))

    def __len__(self) -> int:
        return len(self._terms)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # substitution / evaluation -----------------------------------------

    def substitute(self, bindings: Mapping[str, object]) -> Polynomial:
        """Simultaneous substitution; unbound variables are left alone."""
        bound = {v: self._coerce(p) for v, p in bindings.items()}
        power_cache: dict = {}
        out = Polynomial()
        for mono, coeff in self._terms.items():
            keep = []
            term = Polynomial.const(coeff)
            for v, e in mono:
                if v in bound:
                    key = (v, e)
                    if key not in power_cache:
                        power_cache[key] = bound[v] ** e
                    term = term * power_cache[key]
                else:
                    keep.append((v, e))
            if keep:
                term = term * Polynomial({tuple(keep): 1})
            out = out + term
        return out

    def eval(self, assignment: Mapping[str, object]) -> Fraction:
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            value = Fraction(coeff)
            for v, e in mono:
                try:
                    x = assignment[v]
                except KeyError:
                    raise UnboundVariableError(f"variable {v!r} is not bound") from None
                value *= Fraction(x) ** e
            total += value
        return total

    # text form ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            sign = "-" if coeff < 0 else "+"
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            mag = abs(coeff)
            if not body:
                parts.append(f"{sign}{mag}")
            elif mag == 1:
                parts.append(f"{sign}{body}")
            else:
                parts.append(f"{sign}{mag}*{body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def variables(names: str | Iterable[str]) -> tuple[Polynomial, ...]:
    """``variables("a b c")`` -> three single-variable polynomials."""
    if isinstance(names, str):
        names = names.split()
    return tuple(Polynomial.var(n) for n in names)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_substitute(p: Polynomial, bindings: Mapping[str, object]) -> Polynomial:
    return p.substitute(bindings)


def poly_eval(p: Polynomial, assignment: Mapping[str, object]) -> Fraction:
    return p.eval(assignment)


def poly_equal(p: Polynomial, q: Polynomial) -> bool:
    return p == q


def prod(items, start=1):
    out = start
    for item in items:
        out = out * item
    return out


# identity reports ---------------------------------------------------------


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    difference: Polynomial = field(default_factory=Polynomial)
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"IDENTITY {self.name}: {status}"
        if not self.passed and not self.difference.is_zero():
            text += f" [{self.difference}]"
        if self.note:
            text += f" ({self.note})"
        return text


@dataclass
class IdentityReport:
    suite: str
    checks: list[IdentityCheck] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)

    def check(self, name: str, lhs, rhs, note: str = "") -> IdentityCheck:
        diff = Polynomial._coerce(lhs) - Polynomial._coerce(rhs)
        item = IdentityCheck(name, diff.is_zero(), diff, note)
        self.checks.append(item)
        return item

    def record(self, name: str, passed: bool, note: str = "") -> IdentityCheck:
        item = IdentityCheck(name, passed, Polynomial(), note)
        self.checks.append(item)
        return item

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> IdentityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks]
        out.extend(f"FINDING {self.suite}: {f}" for f in self.findings)
        return out

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "identities": [
                {"name": c.name, "status": "PASS" if c.passed else "FAIL",
                 **({"difference": str(c.difference)} if not c.passed else {}),
                 **({"note": c.note} if c.note else {})}
                for c in self.checks
            ],
            "findings": list(self.findings),
        }
