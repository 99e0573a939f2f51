"""The 2x2x2 hypermatrix and the generalised Diophantine system.

A generalised quadruple is a pair of 4-vectors ``x, y`` with the six
quantities ``x_i x_j + y_k y_l`` ({i,j,k,l} = {1,2,3,4}) all rational squares.
Relabelling ``x, y`` as the entries of a 2x2x2 hypermatrix turns those six
quantities into the face determinants and the regularity polynomial into
Cayley's hyperdeterminant.

Entries may be Fractions or :class:`~dioquad.polykit.Polynomial` objects; every
formula here is written once and serves both the numeric and the symbolic path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateError, IndeterminateError, PreconditionError
from .exact_arith import format_rational, parse_rational, rational_sqrt_exact, to_rational
from .polykit import IdentityReport, Polynomial, variables

INDICES = tuple(itertools.product((0, 1), repeat=3))
ENTRY_NAMES = tuple(f"a{i}{j}{k}" for i, j, k in INDICES)

# (i, j, k, l): z_ij^2 = x_i x_j + y_k y_l, zero-based, in the order z12 z13 z14 z23 z24 z34
PAIRINGS = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2), (1, 2, 0, 3), (1, 3, 0, 2), (2, 3, 0, 1))
WITNESS_LABELS = ("z12", "z13", "z14", "z23", "z24", "z34")


def _coerce_entry(v):
    if isinstance(v, Polynomial):
        return v
    return to_rational(v)


def _parse_index(idx) -> tuple[int, int, int]:
    if isinstance(idx, str):
        if len(idx) != 3 or any(ch not in "01" for ch in idx):
            raise ValueError(f"bad hypermatrix index {idx!r}")
        idx = tuple(int(ch) for ch in idx)
    idx = tuple(idx)
    if len(idx) != 3 or any(v not in (0, 1) for v in idx):
        raise ValueError(f"bad hypermatrix index {idx!r}")
    return idx


@dataclass(frozen=True)
class Hypermatrix222:
    """Eight entries a_ijk stored in (i, j, k) lexicographic order."""

    entries: tuple

    def __post_init__(self):
        vals = tuple(_coerce_entry(v) for v in self.entries)
        if len(vals) != 8:
            raise ValueError("a 2x2x2 hypermatrix has eight entries")
        object.__setattr__(self, "entries", vals)

    def __getitem__(self, idx):
        i, j, k = _parse_index(idx)
        return self.entries[4 * i + 2 * j + k]

    def replace(self, idx, value) -> Hypermatrix222:
        i, j, k = _parse_index(idx)
        vals = list(self.entries)
        vals[4 * i + 2 * j + k] = value
        return Hypermatrix222(tuple(vals))

    @classmethod
    def from_function(cls, f) -> Hypermatrix222:
        return cls(tuple(f(i, j, k) for i, j, k in INDICES))

    @classmethod
    def from_dict(cls, values: dict) -> Hypermatrix222:
        return cls(tuple(values.get(name, 0) for name in ENTRY_NAMES))

    @classmethod
    def symbolic(cls) -> Hypermatrix222:
        return cls(variables(ENTRY_NAMES))

    @classmethod
    def zero(cls) -> Hypermatrix222:
        return cls((0,) * 8)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries)

    def nested(self) -> list:
        return [[[self[i, j, k] for k in (0, 1)] for j in (0, 1)] for i in (0, 1)]

    def to_json(self) -> dict:
        return {"a": [[[format_rational(self[i, j, k]) for k in (0, 1)] for j in (0, 1)] for i in (0, 1)]}

    @classmethod
    def from_json(cls, data: dict) -> Hypermatrix222:
        a = data["a"]
        if len(a) != 2 or any(len(row) != 2 or any(len(cell) != 2 for cell in row) for row in a):
            raise ValueError("hypermatrix JSON must be a 2x2x2 nested array")
        return cls(tuple(parse_rational(a[i][j][k]) for i, j, k in INDICES))


@dataclass(frozen=True)
class GenQuadruple:
    """Solution candidate of the six-equation system; z, when present, holds signed witnesses."""

    x: tuple
    y: tuple
    z: tuple | None = None

    def __post_init__(self):
        x = tuple(to_rational(v) for v in self.x)
        y = tuple(to_rational(v) for v in self.y)
        if len(x) != 4 or len(y) != 4:
            raise ValueError("GenQuadruple needs four x and four y values")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if self.z is not None:
            z = tuple(to_rational(v) for v in self.z)
            if len(z) != 6:
                raise ValueError("GenQuadruple needs six witnesses")
            for label, zz, val in zip(WITNESS_LABELS, z, pair_values(x, y)):
                if zz * zz != val:
                    raise ValueError(f"witness {label}={format_rational(zz)} does not square to {format_rational(val)}")
            object.__setattr__(self, "z", z)

    def canonical(self) -> GenQuadruple:
        """Same solution with nonnegative witnesses."""
        if self.z is None:
            return self
        return GenQuadruple(self.x, self.y, tuple(abs(v) for v in self.z))

    def to_json(self) -> dict:
        out = {"x": [format_rational(v) for v in self.x], "y": [format_rational(v) for v in self.y]}
        if self.z is not None:
            out["z"] = [format_rational(v) for v in self.z]
        return out

    @classmethod
    def from_json(cls, data: dict) -> GenQuadruple:
        z = data.get("z")
        return cls(tuple(parse_rational(v) for v in data["x"]),
                   tuple(parse_rational(v) for v in data["y"]),
                   None if z is None else tuple(parse_rational(v) for v in z))


@dataclass(frozen=True)
class Rotation:
    c: Fraction
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", to_rational(self.c))
        object.__setattr__(self, "s", to_rational(self.s))

    @property
    def norm(self) -> Fraction:
        return self.c * self.c + self.s * self.s

    @classmethod
    def pythagorean(cls, m: int, n: int) -> Rotation:
        """(c, s) = ((m^2-n^2)/(m^2+n^2), 2mn/(m^2+n^2)); unit norm."""
        h = m * m + n * n
        if h == 0:
            raise ValueError("m and n cannot both be zero")
        return cls(Fraction(m * m - n * n, h), Fraction(2 * m * n, h))


def _pair(v) -> tuple[Fraction, Fraction]:
    a, b = (to_rational(t) for t in v)
    return (a, b)


@dataclass(frozen=True)
class KernelVectors:
    p: tuple
    q: tuple
    r: tuple

    def __post_init__(self):
        for name in ("p", "q", "r"):
            pair = _pair(getattr(self, name))
            if pair == (0, 0):
                raise ValueError(f"kernel vector {name} must be nonzero")
            object.__setattr__(self, name, pair)

    def to_json(self) -> dict:
        return {n: [format_rational(v) for v in getattr(self, n)] for n in ("p", "q", "r")}


@dataclass(frozen=True)
class SymParam:
    """Inputs of the symmetric parameterisation; b1..b3 are solved from g, h."""

    p: tuple
    q: tuple
    r: tuple
    b0: Fraction
    g: Fraction
    h1: Fraction
    h2: Fraction
    h3: Fraction

    def __post_init__(self):
        for name in ("p", "q", "r"):
            pair = _pair(getattr(self, name))
            if pair[0] ** 2 + pair[1] ** 2 == 0:
                raise DegenerateError(f"pair {name} has zero norm")
            object.__setattr__(self, name, pair)
        for name in ("b0", "g", "h1", "h2", "h3"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    @staticmethod
    def _norm(v):
        return v[0] ** 2 + v[1] ** 2

    @property
    def b1(self) -> Fraction:
        return self.g * self.h1 ** 2 / self._norm(self.p)

    @property
    def b2(self) -> Fraction:
        return self.g * self.h2 ** 2 / self._norm(self.q)

    @property
    def b3(self) -> Fraction:
        return self.g * self.h3 ** 2 / self._norm(self.r)

    def to_json(self) -> dict:
        out = {n: [format_rational(v) for v in getattr(self, n)] for n in ("p", "q", "r")}
        out.update({n: format_rational(getattr(self, n)) for n in ("b0", "g", "h1", "h2", "h3")})
        return out

    @classmethod
    def from_json(cls, data: dict) -> SymParam:
        pairs = {n: tuple(parse_rational(v) for v in data[n]) for n in ("p", "q", "r")}
        scalars = {n: parse_rational(data[n]) for n in ("b0", "g", "h1", "h2", "h3")}
        return cls(**pairs, **scalars)


# regularity polynomial / hyperdeterminant -----------------------------------

def _p4h_parts(w: Sequence, xx, yy):
    """sum w_i^2 - 2 sum_{i<j} w_i w_j - 4 xx - 4 yy."""
    total = 0
    for a in w:
        total = total + a * a
    for a, b in itertools.combinations(w, 2):
        total = total - 2 * a * b
    return total - 4 * xx - 4 * yy


def p4h(x: Sequence, y: Sequence):
    """Homogenised regularity polynomial in (x1..x4, y1..y4)."""
    x1, x2, x3, x4 = x
    y1, y2, y3, y4 = y
    return _p4h_parts([a * b for a, b in zip(x, y)], x1 * x2 * x3 * x4, y1 * y2 * y3 * y4)


def pair_values(x: Sequence, y: Sequence) -> tuple:
    """The six quantities x_i x_j + y_k y_l in witness order z12..z34."""
    return tuple(x[i] * x[j] + y[k] * y[l] for i, j, k, l in PAIRINGS)


def from_xy(x: Sequence, y: Sequence) -> Hypermatrix222:
    x1, x2, x3, x4 = x
    y1, y2, y3, y4 = y
    return Hypermatrix222.from_dict({
        "a000": -x1, "a110": x2, "a101": x3, "a011": x4,
        "a111": -y1, "a001": y2, "a010": y3, "a100": y4,
    })


def to_xy(A: Hypermatrix222) -> tuple[tuple, tuple]:
    x = (-A["000"], A["110"], A["101"], A["011"])
    y = (-A["111"], A["001"], A["010"], A["100"])
    return x, y


def hyperdet(A: Hypermatrix222):
    """Cayley hyperdeterminant, defined through the relabelling onto p4h."""
    return p4h(*to_xy(A))


def hyperdet_printed_poly() -> Polynomial:
    """The monomial list exactly as printed, including its two +4 terms."""
    a = dict(zip(ENTRY_NAMES, variables(ENTRY_NAMES)))
    return (a["a000"]**2 * a["a111"]**2 + a["a110"]**2 * a["a001"]**2
            + a["a101"]**2 * a["a010"]**2 + a["a011"]**2 * a["a100"]**2
            - 2 * (a["a000"] * a["a111"] * a["a001"] * a["a110"]
                   + a["a000"] * a["a111"] * a["a010"] * a["a101"]
                   + a["a000"] * a["a111"] * a["a011"] * a["a100"]
                   + a["a001"] * a["a110"] * a["a010"] * a["a101"]
                   + a["a001"] * a["a110"] * a["a011"] * a["a100"]
                   + a["a010"] * a["a101"] * a["a011"] * a["a100"])
            + 4 * (a["a000"] * a["a010"] * a["a101"] * a["a110"]
                   + a["a111"] * a["a101"] * a["a010"] * a["a001"]))


def hyperdet_textbook_poly() -> Polynomial:
    """Cayley's formula written out independently of the relabelling."""
    a = dict(zip(ENTRY_NAMES, variables(ENTRY_NAMES)))
    diag = [("a000", "a111"), ("a001", "a110"), ("a010", "a101"), ("a100", "a011")]
    out = Polynomial()
    for u, v in diag:
        out = out + a[u]**2 * a[v]**2
    for (u1, v1), (u2, v2) in itertools.combinations(diag, 2):
        out = out - 2 * a[u1] * a[v1] * a[u2] * a[v2]
    out = out + 4 * a["a000"] * a["a011"] * a["a101"] * a["a110"]
    out = out + 4 * a["a001"] * a["a010"] * a["a100"] * a["a111"]
    return out


def face_determinant(A: Hypermatrix222, axis: int, t: int):
    """Determinant of the face where index number ``axis`` (1..3) is fixed to ``t``."""
    if axis == 1:
        return A[t, 0, 1] * A[t, 1, 0] - A[t, 0, 0] * A[t, 1, 1]
    if axis == 2:
        return A[0, t, 1] * A[1, t, 0] - A[0, t, 0] * A[1, t, 1]
    if axis == 3:
        return A[0, 1, t] * A[1, 0, t] - A[0, 0, t] * A[1, 1, t]
    raise ValueError(f"axis must be 1, 2 or 3, got {axis}")


# witness order z12 z13 z14 z23 z24 z34 as (axis, fixed value)
FACE_ORDER = ((3, 0), (2, 0), (1, 0), (1, 1), (2, 1), (3, 1))


def face_determinants(A: Hypermatrix222) -> tuple:
    return tuple(face_determinant(A, axis, t) for axis, t in FACE_ORDER)


# generalised system ---------------------------------------------------------

@dataclass
class GeneralizedReport:
    values: tuple
    roots: tuple
    regular: bool
    p4h: Fraction
    solution: GenQuadruple | None

    @property
    def all_square(self) -> bool:
        return all(r is not None for r in self.roots)

    def to_json(self) -> dict:
        return {
            "values": dict(zip(WITNESS_LABELS, (format_rational(v) for v in self.values))),
            "witnesses": dict(zip(WITNESS_LABELS, (None if r is None else format_rational(r) for r in self.roots))),
            "all_square": self.all_square,
            "regular": self.regular,
            "p4h": format_rational(self.p4h),
        }


def check_generalized_solution(s: GenQuadruple) -> GeneralizedReport:
    values = pair_values(s.x, s.y)
    roots = tuple(rational_sqrt_exact(v) for v in values)
    value = p4h(s.x, s.y)
    solution = GenQuadruple(s.x, s.y, roots) if all(r is not None for r in roots) else None
    return GeneralizedReport(values, roots, value == 0, value, solution)


# linear symmetries ----------------------------------------------------------

# y index paired with x_i under each rotation
VARIANTS = {"15a": (1, 0, 3, 2), "15b": (3, 2, 1, 0), "15c": (2, 3, 0, 1)}


def _variant_pair(variant: str) -> tuple[int, int]:
    """Positions (in witness order) of the two witnesses a variant mixes."""
    partner = VARIANTS[variant][0]
    first = next(n for n, (i, j, _, _) in enumerate(PAIRINGS) if (i, j) == (0, partner))
    rest = tuple(sorted(set(range(4)) - {0, partner}))
    second = next(n for n, (i, j, _, _) in enumerate(PAIRINGS) if (i, j) == rest)
    return first, second


def _variant_cross_term(variant: str, x, y):
    """w_0 + w_partner - (other two w); equals 2 z_first z_second on regular solutions."""
    partner = VARIANTS[variant][0]
    w = [a * b for a, b in zip(x, y)]
    return sum(w[i] if i in (0, partner) else -w[i] for i in range(4))


def rotate_xy(x: Sequence, y: Sequence, variant: str, c, s) -> tuple[list, list]:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {sorted(VARIANTS)}")
    perm = VARIANTS[variant]
    x_new = list(x)
    y_new = list(y)
    for i, k in enumerate(perm):
        x_new[i] = c * x[i] + s * y[k]
        y_new[k] = -s * x[i] + c * y[k]
    return x_new, y_new


def rotate(sol: GenQuadruple, variant: str, rot: Rotation) -> GenQuadruple:
    """Apply one of the three commuting rotations; transports witnesses when present.

    Witness transport needs a unit rotation and a regular solution. The sign of
    the second mixed witness is aligned so that twice the product of the mixed
    pair equals the cross term, which is what makes the transport exact, and
    restored afterwards.
    """
    c, s = rot.c, rot.s
    x_new, y_new = rotate_xy(sol.x, sol.y, variant, c, s)
    if sol.z is None:
        return GenQuadruple(tuple(x_new), tuple(y_new))
    if rot.norm != 1:
        raise PreconditionError("witness transport needs c^2 + s^2 = 1")
    if p4h(sol.x, sol.y) != 0:
        raise PreconditionError("witness transport needs a regular solution (p4h = 0)")
    first, second = _variant_pair(variant)
    z = list(sol.z)
    flipped = 2 * z[first] * z[second] != _variant_cross_term(variant, sol.x, sol.y)
    if flipped:
        z[second] = -z[second]
    zf, zs = z[first], z[second]
    z[first] = c * zf + s * zs
    z[second] = -s * zf + c * zs
    if flipped:
        # hand back the caller's sign convention; (1, 0) is then the identity
        z[second] = -z[second]
    return GenQuadruple(tuple(x_new), tuple(y_new), tuple(z))


def apply_sl2(A: Hypermatrix222, axis: int, m) -> Hypermatrix222:
    """Contract a 2x2 matrix ``m`` into index slot ``axis`` (1, 2 or 3)."""
    (m00, m01), (m10, m11) = m
    mm = ((m00, m01), (m10, m11))
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")

    def entry(i, j, k):
        idx = [i, j, k]
        total = 0
        for t in (0, 1):
            src = list(idx)
            src[axis - 1] = t
            total = total + mm[idx[axis - 1]][t] * A[tuple(src)]
        return total

    return Hypermatrix222.from_function(entry)


def det2(m):
    (a, b), (c, d) = m
    return a * d - b * c


# completion -----------------------------------------------------------------

def completion_quadratic(A: Hypermatrix222, missing) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients (lead, mid, const) of hyperdet as a quadratic in the missing entry."""
    idx = _parse_index(missing)
    h0 = hyperdet(A.replace(idx, 0))
    h1 = hyperdet(A.replace(idx, 1))
    hm = hyperdet(A.replace(idx, -1))
    lead = (h1 + hm) / 2 - h0
    mid = (h1 - hm) / 2
    return lead, mid, h0


def opposite_faces(A: Hypermatrix222, missing) -> tuple:
    """The three face determinants that do not involve the missing entry."""
    i, j, k = _parse_index(missing)
    return (face_determinant(A, 1, 1 - i), face_determinant(A, 2, 1 - j), face_determinant(A, 3, 1 - k))


def complete(A: Hypermatrix222, missing) -> list[Fraction]:
    """All rational values of the missing entry making the hyperdeterminant vanish.

    Returns two values (larger first) when the reduced discriminant
    ``mid^2/4 - lead*const`` is a nonzero rational square, one value for a
    double root or a linear equation, none otherwise.
    """
    lead, mid, const = completion_quadratic(A, missing)
    if lead == 0:
        if mid == 0:
            if const == 0:
                raise IndeterminateError("hyperdeterminant vanishes for every value of the missing entry")
            return []
        return [-const / mid]
    disc = mid * mid / 4 - lead * const
    root = rational_sqrt_exact(disc) if disc >= 0 else None
    if root is None:
        return []
    roots = {(-mid / 2 + root) / lead, (-mid / 2 - root) / lead}
    return sorted(roots, reverse=True)


# parameterisations ----------------------------------------------------------

def _asymmetric_numerators(y1, x2, x3, x4, z23, z24, z34):
    """Numerators of the completion parameterisation; denominators are y1 or y1^2."""
    n_y2 = z34 * z34 - x3 * x4
    n_y3 = z24 * z24 - x4 * x2
    n_y4 = z23 * z23 - x2 * x3
    n_x1 = x2 * z34 * z34 + x3 * z24 * z24 + x4 * z23 * z23 - x2 * x3 * x4 + 2 * z23 * z24 * z34
    n_z12 = z24 * z23 + z34 * x2
    n_z13 = z34 * z23 + z24 * x3
    n_z14 = z24 * z34 + z23 * x4
    return n_y2, n_y3, n_y4, n_x1, n_z12, n_z13, n_z14


def parameterize_asymmetric(y1, x2, x3, x4, z23, z24, z34) -> GenQuadruple:
    """Regular solution built from seven free rationals (y1 != 0)."""
    y1, x2, x3, x4, z23, z24, z34 = (to_rational(v) for v in (y1, x2, x3, x4, z23, z24, z34))
    if y1 == 0:
        raise DegenerateError("y1 = 0: the parameterisation divides by y1")
    n_y2, n_y3, n_y4, n_x1, n_z12, n_z13, n_z14 = _asymmetric_numerators(y1, x2, x3, x4, z23, z24, z34)
    x = (n_x1 / y1**2, x2, x3, x4)
    y = (y1, n_y2 / y1, n_y3 / y1, n_y4 / y1)
    z = (n_z12 / y1, n_z13 / y1, n_z14 / y1, z23, z24, z34)
    # GenQuadruple validates every witness against its face equation
    sol = GenQuadruple(x, y, z)
    if p4h(x, y) != 0:
        raise ArithmeticError("asymmetric parameterisation produced a non-regular solution")
    return sol


def perp(v):
    """Orthogonal partner (v1, -v0)."""
    return (v[1], -v[0])


def tensor_hypermatrix(coeffs, p_vecs, q_vecs, r_vecs) -> Hypermatrix222:
    """sum_n coeff_n p_n[i] q_n[j] r_n[k]."""
    def entry(i, j, k):
        total = 0
        for c, p, q, r in zip(coeffs, p_vecs, q_vecs, r_vecs):
            total = total + c * p[i] * q[j] * r[k]
        return total
    return Hypermatrix222.from_function(entry)


def parameterize_symmetric_raw(b, p, q, r) -> Hypermatrix222:
    """Four-coefficient family b = (b0..b3): every member has a kernel (p, q, r)."""
    pl, ql, rl = perp(p), perp(q), perp(r)
    return tensor_hypermatrix(b, (pl, p, pl, pl), (ql, ql, q, ql), (rl, rl, rl, r))


def symmetric_hypermatrix(b, p, q, r) -> Hypermatrix222:
    """Seven-variable form: coefficients (b, 1/|p|^2, 1/|q|^2, 1/|r|^2)."""
    p, q, r = _pair(p), _pair(q), _pair(r)
    norms = [v[0] ** 2 + v[1] ** 2 for v in (p, q, r)]
    if 0 in norms:
        raise DegenerateError("kernel pair with zero norm")
    return parameterize_symmetric_raw((to_rational(b), 1 / norms[0], 1 / norms[1], 1 / norms[2]), p, q, r)


def symmetric_witnesses(sp: SymParam) -> tuple:
    """Signed square roots of the six faces, in order z12..z34."""
    p, q, r, g = sp.p, sp.q, sp.r, sp.g
    fp, fq, fr = g * sp.h2 * sp.h3, g * sp.h1 * sp.h3, g * sp.h1 * sp.h2
    roots = {
        (1, 0): fp * perp(p)[0], (1, 1): fp * perp(p)[1],
        (2, 0): fq * perp(q)[0], (2, 1): fq * perp(q)[1],
        (3, 0): fr * perp(r)[0], (3, 1): fr * perp(r)[1],
    }
    return tuple(roots[face] for face in FACE_ORDER)


def predicted_faces(b, p, q, r) -> tuple:
    """Face determinants of the four-coefficient family in closed form."""
    _, b1, b2, b3 = b
    np_, nq, nr = (v[0] ** 2 + v[1] ** 2 for v in (p, q, r))
    pl, ql, rl = perp(p), perp(q), perp(r)
    table = {}
    for t in (0, 1):
        table[(1, t)] = b2 * b3 * nr * nq * pl[t] ** 2
        table[(2, t)] = b1 * b3 * np_ * nr * ql[t] ** 2
        table[(3, t)] = b1 * b2 * np_ * nq * rl[t] ** 2
    return tuple(table[face] for face in FACE_ORDER)


def parameterize_symmetric(sp: SymParam) -> Hypermatrix222:
    """Hypermatrix with kernel (p, q, r) and all six face determinants square."""
    b = (sp.b0, sp.b1, sp.b2, sp.b3)
    A = parameterize_symmetric_raw(b, sp.p, sp.q, sp.r)
    if not kernel_check(A, KernelVectors(sp.p, sp.q, sp.r)):
        raise ArithmeticError("symmetric parameterisation lost its kernel")
    faces = face_determinants(A)
    if faces != predicted_faces(b, sp.p, sp.q, sp.r):
        raise ArithmeticError("face determinants disagree with their closed form")
    if any(z * z != f for z, f in zip(symmetric_witnesses(sp), faces)):
        raise ArithmeticError("face determinants are not the predicted squares")
    return A


# kernel vectors -------------------------------------------------------------

def kernel_equations(A: Hypermatrix222, p, q, r) -> list:
    """The six bilinear forms that must vanish, grouped (pq over k, pr over j, qr over i)."""
    out = []
    for k in (0, 1):
        out.append(sum(A[i, j, k] * p[i] * q[j] for i in (0, 1) for j in (0, 1)))
    for j in (0, 1):
        out.append(sum(A[i, j, k] * p[i] * r[k] for i in (0, 1) for k in (0, 1)))
    for i in (0, 1):
        out.append(sum(A[i, j, k] * q[j] * r[k] for j in (0, 1) for k in (0, 1)))
    return out


def kernel_check(A: Hypermatrix222, kv: KernelVectors) -> bool:
    return all(v == 0 for v in kernel_equations(A, kv.p, kv.q, kv.r))


def _slice(A: Hypermatrix222, axis: int, t: int):
    """2x2 matrix obtained by fixing index ``axis``; rows/cols are the remaining indices in order."""
    def pick(u, v):
        idx = [u, v]
        idx.insert(axis - 1, t)
        return A[tuple(idx)]
    return ((pick(0, 0), pick(0, 1)), (pick(1, 0), pick(1, 1)))


def _orthogonal_to_all(vectors: Iterable) -> tuple | None:
    """Nonzero v with dot(u, v) = 0 for every u, or None."""
    vectors = [tuple(u) for u in vectors]
    nonzero = [u for u in vectors if u != (0, 0)]
    if not nonzero:
        return (Fraction(1), Fraction(0))
    v = perp(nonzero[0])
    if all(u[0] * v[0] + u[1] * v[1] == 0 for u in nonzero):
        return v
    return None


def _rows(m):
    return [m[0], m[1]]


def _cols(m):
    return [(m[0][0], m[1][0]), (m[0][1], m[1][1])]


def pencil_coefficients(A: Hypermatrix222) -> tuple:
    """det(t0 A_0.. + t1 A_1..) = alpha t0^2 + beta t0 t1 + gamma t1^2 (slices along index 1)."""
    A0, A1 = _slice(A, 1, 0), _slice(A, 1, 1)
    alpha, gamma = det2(A0), det2(A1)
    both = tuple(tuple(u + v for u, v in zip(r0, r1)) for r0, r1 in zip(A0, A1))
    beta = det2(both) - alpha - gamma
    return alpha, beta, gamma


def kernel_solve(A: Hypermatrix222) -> KernelVectors | None:
    """Nonzero (p, q, r) annihilating A, for A with vanishing hyperdeterminant."""
    if hyperdet(A) != 0:
        raise PreconditionError("kernel vectors exist only when the hyperdeterminant vanishes")
    one, zero = Fraction(1), Fraction(0)
    if A.is_zero():
        return KernelVectors((one, zero), (one, zero), (one, zero))

    A0, A1 = _slice(A, 1, 0), _slice(A, 1, 1)
    alpha, beta, gamma = pencil_coefficients(A)
    candidate = None
    if (alpha, beta, gamma) != (0, 0, 0):
        # double root of the pencil determinant; beta = 0 whenever alpha = 0 here
        p = (-beta, 2 * alpha) if alpha != 0 else (one, zero)
        M = tuple(tuple(p[0] * u + p[1] * v for u, v in zip(r0, r1)) for r0, r1 in zip(A0, A1))
        if any(v != 0 for row in M for v in row):
            q = _orthogonal_to_all(_cols(M))
            r = _orthogonal_to_all(_rows(M))
        else:
            N = A0 if any(v != 0 for row in A0 for v in row) else A1
            q = (one, zero)
            r = _orthogonal_to_all([N[0]])
        if q is not None and r is not None:
            candidate = (p, q, r)
    else:
        # every member of the pencil is singular: the slices share a row or column space
        q = _orthogonal_to_all(_cols(A0) + _cols(A1))
        if q is not None:
            slices = [_slice(A, 2, t) for t in (0, 1)]
            N = next(m for m in slices if any(v != 0 for row in m for v in row))
            candidate = ((one, zero), q, _orthogonal_to_all([N[0]]))
        else:
            r = _orthogonal_to_all(_rows(A0) + _rows(A1))
            if r is not None:
                slices = [_slice(A, 3, t) for t in (0, 1)]
                N = next(m for m in slices if any(v != 0 for row in m for v in row))
                candidate = ((one, zero), _orthogonal_to_all([N[0]]), r)
    if candidate is None or any(v is None for v in candidate):
        return None
    kv = KernelVectors(*candidate)
    return kv if kernel_check(A, kv) else None


# symbolic verification --------------------------------------------------------

def verify_hypermatrix_identities() -> IdentityReport:
    from .quadruple import p4_poly

    report = IdentityReport("hypermatrix")
    x = variables("x1 x2 x3 x4")
    y = variables("y1 y2 y3 y4")
    x1, x2, x3, x4 = x
    y1, y2, y3, y4 = y
    P = p4h(x, y)
    w1, w2, w3, w4 = (a * b for a, b in zip(x, y))

    report.check("P(x, y=1) == P4(a,b,c,d)",
                 P.substitute({"y1": 1, "y2": 1, "y3": 1, "y4": 1})
                  .substitute(dict(zip(("x1", "x2", "x3", "x4"), variables("a b c d")))),
                 p4_poly())
    report.check("P(x, y) == P(y, x)", P, p4h(y, x))
    report.check("P == pair form (12|34)", P, (w1 + w2 - w3 - w4)**2 - 4 * (x1*x2 + y3*y4) * (x3*x4 + y1*y2))
    report.check("P == pair form (13|24)", P, (w1 + w3 - w2 - w4)**2 - 4 * (x1*x3 + y2*y4) * (x2*x4 + y1*y3))
    report.check("P == pair form (14|23)", P, (w1 + w4 - w2 - w3)**2 - 4 * (x1*x4 + y2*y3) * (x2*x3 + y1*y4))
    report.check("y1^2*P == completed square in x1", y1**2 * P,
                 (x1*y1**2 - x2*y2*y1 - x3*y3*y1 - x4*y4*y1 - 2*x2*x3*x4)**2
                 - 4 * (x2*x3 + y1*y4) * (x2*x4 + y1*y3) * (x3*x4 + y1*y2))

    c, s = variables("c s")
    for variant in VARIANTS:
        xn, yn = rotate_xy(x, y, variant, c, s)
        report.check(f"rotation {variant} scales P by (c^2+s^2)^2", p4h(xn, yn), (c**2 + s**2)**2 * P)
        first, second = _variant_pair(variant)
        vals, new_vals = pair_values(x, y), pair_values(xn, yn)
        cross = _variant_cross_term(variant, x, y)
        report.check(f"rotation {variant}: first transported square",
                     new_vals[first], c**2 * vals[first] + c * s * cross + s**2 * vals[second])
        report.check(f"rotation {variant}: second transported square",
                     new_vals[second], c**2 * vals[second] - c * s * cross + s**2 * vals[first])
        untouched = [n for n in range(6) if n not in (first, second)]
        report.record(f"rotation {variant}: other four quantities scale by c^2+s^2",
                      all(new_vals[n] == (c**2 + s**2) * vals[n] for n in untouched))
        report.check(f"pair form matching rotation {variant}", P,
                     cross**2 - 4 * vals[first] * vals[second])

    A = Hypermatrix222.symbolic()
    H = hyperdet(A)
    report.check("P under the entry mapping == Cayley hyperdeterminant", H, hyperdet_textbook_poly())
    report.check("hyperdet(from_xy(x, y)) == P(x, y)", hyperdet(from_xy(x, y)), P)
    report.record("faces of from_xy(x, y) == x_i x_j + y_k y_l",
                  face_determinants(from_xy(x, y)) == pair_values(x, y))
    printed = hyperdet_printed_poly()
    diff = printed - H
    if not diff.is_zero():
        extra = [str(Polynomial({m: c})) for m, c in printed.sorted_terms() if H.coefficient(m) != c]
        absent = [str(Polynomial({m: c})) for m, c in H.sorted_terms() if printed.coefficient(m) != c]
        report.findings.append(
            "printed monomial list of det(A) differs from the relabelled polynomial: "
            f"printed-only terms {extra}, mapping-only terms {absent}; the relabelling is used")

    m = variables("m00 m01 m10 m11")
    mat = ((m[0], m[1]), (m[2], m[3]))
    for axis in (1, 2, 3):
        report.check(f"hyperdet(apply_sl2 axis {axis})==det(m)^2*hyperdet",
                     hyperdet(apply_sl2(A, axis, mat)), det2(mat)**2 * H)

    t = Polynomial.var("t")
    for idx in INDICES:
        name = ENTRY_NAMES[INDICES.index(idx)]
        At = A.replace(idx, t)
        parts = hyperdet(At).collect("t")
        lead, mid, const = (parts.get(n, Polynomial()) for n in (2, 1, 0))
        f1, f2, f3 = opposite_faces(At, idx)
        # full discriminant = 4 * reduced discriminant = 16 * faces
        report.check(f"completion discriminant for {name} == 4*faces",
                     mid**2 - 4 * lead * const, 16 * f1 * f2 * f3)

    alpha, beta, gamma = pencil_coefficients(A)
    report.check("pencil discriminant == hyperdet", beta**2 - 4 * alpha * gamma, H)

    Y1, X2, X3, X4, Z23, Z24, Z34 = variables("y1 x2 x3 x4 z23 z24 z34")
    n_y2, n_y3, n_y4, n_x1, n_z12, n_z13, n_z14 = _asymmetric_numerators(Y1, X2, X3, X4, Z23, Z24, Z34)
    # numerators: x1 = n_x1/y1^2, y_k = n_yk/y1, z1k = n_z1k/y1; equations cleared by y1^2
    report.check("asymmetric family: face z12", n_x1 * X2 + n_y3 * n_y4, n_z12**2)
    report.check("asymmetric family: face z13", n_x1 * X3 + n_y2 * n_y4, n_z13**2)
    report.check("asymmetric family: face z14 (z24*z34 numerator)", n_x1 * X4 + n_y2 * n_y3, n_z14**2)
    # y1*y4 = n_y4 etc. once cleared by y1
    report.check("asymmetric family: face z23", X2 * X3 + n_y4, Z23**2)
    report.check("asymmetric family: face z24", X2 * X4 + n_y3, Z24**2)
    report.check("asymmetric family: face z34", X3 * X4 + n_y2, Z34**2)
    W = [n_x1, X2 * n_y2, X3 * n_y3, X4 * n_y4]
    report.check("asymmetric family: y1^2*P == 0",
                 _p4h_parts(W, n_x1 * X2 * X3 * X4, n_y2 * n_y3 * n_y4), 0)
    printed_z14 = Z34 * Z34 + Z23 * X4
    bad = n_x1 * X4 + n_y2 * n_y3 - printed_z14**2
    if not bad.is_zero():
        report.findings.append(
            "printed z14 = (z34*z34 + z23*x4)/y1 does not satisfy x1*x4 + y2*y3 = z14^2; "
            "z14 = (z24*z34 + z23*x4)/y1 does and is used")

    p = variables("p0 p1")
    q = variables("q0 q1")
    r = variables("r0 r1")
    bs = variables("b0 b1 b2 b3")
    S = parameterize_symmetric_raw(bs, p, q, r)
    report.record("symmetric family: kernel equations vanish", all(e.is_zero() for e in kernel_equations(S, p, q, r)))
    report.check("symmetric family: hyperdet == 0", hyperdet(S), 0)
    faces = face_determinants(S)
    for label, got, want in zip(WITNESS_LABELS, faces, predicted_faces(bs, p, q, r)):
        report.check(f"symmetric family: face {label}", got, want)
    return report
