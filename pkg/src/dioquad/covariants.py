"""Invariants and covariants built by contracting the alternating tensor.

Index slots follow one fixed lettering: a..h for the first hypermatrix
index, i..q for the second, r..y for the third. A contraction is written as a
list of alternating-tensor letter pairs and a list of three-letter entry
factors, e.g. ``I0 = contract(A, ["ab", "ij", "rs"], ["air", "bjs"])``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .hypermatrix import (
    ENTRY_NAMES, INDICES, Hypermatrix222, face_determinant, from_xy, hyperdet,
)
from .polykit import IdentityReport, Polynomial, variables

SLOT_LETTERS = ("abcdefgh", "ijklmnopq", "rstuvwxy")


def eps(i: int, j: int) -> int:
    """Alternating symbol with eps(0, 1) = 1."""
    return (i < j) - (i > j)


def _check_slots(pairs, factors):
    for pair in pairs:
        slots = {next(n for n, letters in enumerate(SLOT_LETTERS) if ch in letters) for ch in pair}
        if len(slots) != 1:
            raise ValueError(f"alternating tensor {pair!r} pairs indices from different slots")
    for fac in factors:
        for pos, ch in enumerate(fac):
            if ch not in SLOT_LETTERS[pos]:
                raise ValueError(f"index {ch!r} in factor {fac!r} is in the wrong slot")


def contract(A: Hypermatrix222, pairs, factors, fixed: dict | None = None):
    """Sum over every letter bound by an alternating tensor; ``fixed`` sets free letters."""
    _check_slots(pairs, factors)
    fixed = dict(fixed or {})
    total = 0
    for signs in itertools.product((0, 1), repeat=len(pairs)):
        value = dict(fixed)
        for (u, v), flip in zip(pairs, signs):
            value[u], value[v] = (1, 0) if flip else (0, 1)
        weight = 1
        for (u, v), flip in zip(pairs, signs):
            weight *= eps(value[u], value[v])
        term = weight
        for fac in factors:
            term = term * A[tuple(value[ch] for ch in fac)]
        total = total + term
    return total


_QUARTIC = {
    1: ["air", "bkt", "cju", "dls"],
    2: ["air", "bjt", "cks", "dlu"],
    3: ["air", "bks", "cjt", "dlu"],
    4: ["air", "cjs", "bkt", "dlu"],
}
_QUARTIC_PAIRS = ["ab", "cd", "ij", "kl", "rs", "tu"]


def invariant_I(A: Hypermatrix222, which: int):
    if which == 0:
        return contract(A, ["ab", "ij", "rs"], ["air", "bjs"])
    if which not in _QUARTIC:
        raise ValueError(f"invariant index must be 0..4, got {which}")
    return contract(A, _QUARTIC_PAIRS, _QUARTIC[which])


def s_matrix(A):
    return tuple(tuple(contract(A, ["ab", "ij"], ["air", "bjt"], {"r": r, "t": t}) for t in (0, 1)) for r in (0, 1))


def t_matrix(A):
    return tuple(tuple(contract(A, ["ab", "rs"], ["air", "bks"], {"i": i, "k": k}) for k in (0, 1)) for i in (0, 1))


def u_matrix(A):
    return tuple(tuple(contract(A, ["ij", "rs"], ["air", "cjs"], {"a": a, "c": c}) for c in (0, 1)) for a in (0, 1))


# The cubic covariant pairs the free first and second indices on one copy of A.
# Placing each free index on a different copy (c on the i,r copy, k on the a,s
# copy, t on the b,j copy) contracts to the zero hypermatrix.
CUBIC_FACTORS = ["air", "bjt", "cks"]
CUBIC_FACTORS_ZERO = ["cir", "aks", "bjt"]


def b_hypermatrix(A, factors=CUBIC_FACTORS) -> Hypermatrix222:
    """Cubic covariant b_ckt."""
    return Hypermatrix222.from_function(
        lambda c, k, t: contract(A, ["ab", "ij", "rs"], factors, {"c": c, "k": k, "t": t}))


@dataclass(frozen=True)
class CovariantSet:
    S: tuple
    T: tuple
    U: tuple
    B: Hypermatrix222

    def is_symmetric(self) -> bool:
        return all(m[0][1] == m[1][0] for m in (self.S, self.T, self.U))


def covariant_set(A: Hypermatrix222) -> CovariantSet:
    cs = CovariantSet(s_matrix(A), t_matrix(A), u_matrix(A), b_hypermatrix(A))
    if not cs.is_symmetric():
        raise ArithmeticError("S, T, U must be symmetric")
    return cs


def det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def cubic_sides(A: Hypermatrix222, cs: CovariantSet, idx, sign: int = 1):
    """(lhs, rhs) of 2 det(A) a_air a_bjs = 2 b_air b_bjs + sign * u_ab t_ij s_rs."""
    a, i, r, b, j, s = idx
    lhs = 2 * hyperdet(A) * A[a, i, r] * A[b, j, s]
    rhs = 2 * cs.B[a, i, r] * cs.B[b, j, s] + sign * cs.U[a][b] * cs.T[i][j] * cs.S[r][s]
    return lhs, rhs


def cubic_sides_symmetrized(A: Hypermatrix222, cs: CovariantSet, idx):
    """Form that holds in every component: the b b term is spread over index swaps."""
    a, i, r, b, j, s = idx
    B = cs.B
    lhs = 2 * hyperdet(A) * A[a, i, r] * A[b, j, s]
    rhs = (B[a, i, s] * B[b, j, r] + B[a, j, r] * B[b, i, s] + B[b, i, r] * B[a, j, s]
           - B[a, i, r] * B[b, j, s] + cs.U[a][b] * cs.T[i][j] * cs.S[r][s])
    return lhs, rhs


def _face_product(A, idx):
    out = 1
    for axis, v in zip((1, 2, 3), idx):
        out = out * face_determinant(A, axis, v)
    return out


def verify_covariant_identities() -> IdentityReport:
    report = IdentityReport("covariants")

    bad = [idx for idx in itertools.product((0, 1), repeat=4)
           if eps(idx[0], idx[1]) * eps(idx[2], idx[3]) + eps(idx[0], idx[2]) * eps(idx[3], idx[1])
           + eps(idx[0], idx[3]) * eps(idx[1], idx[2]) != 0]
    report.record("e_ij e_kl + e_ik e_lj + e_il e_jk == 0 (16 components)", not bad,
                  note="" if not bad else f"fails at {bad}")

    A = Hypermatrix222.symbolic()
    I = {n: invariant_I(A, n) for n in range(5)}
    report.check("I0 == 0", I[0], 0)
    report.check("I1 - I3 + I2 == 0", I[1] - I[3] + I[2], 0)
    report.check("I1 - I2 + I4 == 0", I[1] - I[2] + I[4], 0)
    report.check("I1 - I4 + I3 == 0", I[1] - I[4] + I[3], 0)
    report.check("I1 == 0", I[1], 0)
    report.check("I2 == I3", I[2], I[3])
    report.check("I3 == I4", I[3], I[4])

    cs = covariant_set(A)
    S, T, U = cs.S, cs.T, cs.U
    report.record("S, T, U symmetric", cs.is_symmetric())
    for k in (0, 1):
        face = ((A[0, 0, k], A[0, 1, k]), (A[1, 0, k], A[1, 1, k]))
        report.check(f"s{k}{k} == 2 det(face k={k})", S[k][k], 2 * det2(face))
    report.check("I2 == 2 det(S)", I[2], 2 * det2(S))
    report.check("e_rs e_tu s_rt s_su == 2 det(S)",
                 sum((eps(r, s) * eps(t, u) * S[r][t] * S[s][u]
                      for r, s, t, u in itertools.product((0, 1), repeat=4)), Polynomial()),
                 2 * det2(S))
    H = hyperdet(A)
    report.check("det(A) == s01^2 - s00*s11", H, S[0][1] ** 2 - S[0][0] * S[1][1])
    report.check("2 det(A) == -I2", 2 * H, -I[2])
    report.check("det(T) == det(S)", det2(T), det2(S))
    report.check("det(U) == det(S)", det2(U), det2(S))

    printed_b = b_hypermatrix(A, CUBIC_FACTORS_ZERO)
    if printed_b.is_zero():
        report.findings.append(
            "b_ckt = e_ab e_ij e_rs a_cir a_aks a_bjt contracts to zero; the nonzero cubic "
            "covariant is e_ab e_ij e_rs a_air a_bjt a_cks, used here")

    # diagonal components: the completed square for the opposite entry
    t = Polynomial.var("t")
    for idx in INDICES:
        opp = tuple(1 - v for v in idx)
        name = ENTRY_NAMES[INDICES.index(opp)]
        parts = hyperdet(A.replace(opp, t)).collect("t")
        lead, mid = parts.get(2, Polynomial()), parts.get(1, Polynomial())
        a, i, r = idx
        tag = "".join(map(str, idx))
        report.check(f"(2 b_{tag})^2 == (2 lead*{name} + mid)^2 for the quadratic in {name}",
                     4 * cs.B[idx] ** 2, (2 * lead * Polynomial.var(name) + mid) ** 2)
        report.check(f"u t s at {tag} == -8 * faces through a_{tag}",
                     U[a][a] * T[i][i] * S[r][r], -8 * _face_product(A, idx))
        lhs, rhs = cubic_sides(A, cs, idx + idx)
        report.check(f"2 det(A) a_{tag}^2 == 2 b_{tag}^2 + u t s", lhs, rhs)

    minus_ok = sum(1 for idx in itertools.product((0, 1), repeat=6)
                   if operator_eq(*cubic_sides(A, cs, idx, sign=-1)))
    report.findings.append(
        f"with -u_ab t_ij s_rs the cubic identity holds in {minus_ok} of 64 components; "
        "+u_ab t_ij s_rs is the sign consistent with det(A) = s01^2 - s00*s11 and the "
        "completed-square form in x1")

    failures = [idx for idx in itertools.product((0, 1), repeat=6)
                if not operator_eq(*cubic_sides(A, cs, idx))]
    note = ""
    if failures:
        multi = all(sum(idx[n] != idx[n + 3] for n in range(3)) >= 2 for idx in failures)
        note = (f"{64 - len(failures)} of 64 components hold; failing components "
                f"{' '.join(''.join(map(str, f)) for f in failures)}"
                + ("; each failing component has unequal indices in at least two of its three index pairs" if multi else ""))
    report.record("2 det(A) a_air a_bjs == 2 b_air b_bjs + u_ab t_ij s_rs (64 components)",
                  not failures, note=note)

    sym_fail = [idx for idx in itertools.product((0, 1), repeat=6)
                if not operator_eq(*cubic_sides_symmetrized(A, cs, idx))]
    report.record("symmetrized cubic identity (64 components)", not sym_fail,
                  note="" if not sym_fail else f"failing components {sym_fail}")

    x = variables("x1 x2 x3 x4")
    y = variables("y1 y2 y3 y4")
    x1, x2, x3, x4 = x
    y1, y2, y3, y4 = y
    mapping = dict(zip(ENTRY_NAMES, from_xy(x, y).entries))
    lhs, rhs = cubic_sides(A, cs, (1, 1, 1, 1, 1, 1))
    lhs, rhs = lhs.substitute(mapping), rhs.substitute(mapping)
    P = hyperdet(from_xy(x, y))
    completed = ((x1 * y1**2 - x2 * y2 * y1 - x3 * y3 * y1 - x4 * y4 * y1 - 2 * x2 * x3 * x4) ** 2
                 - 4 * (x2 * x3 + y1 * y4) * (x2 * x4 + y1 * y3) * (x3 * x4 + y1 * y2))
    report.check("component 111111 lhs == 2 y1^2 P(x, y)", lhs, 2 * y1**2 * P)
    report.check("component 111111 rhs == 2 * completed square in x1", rhs, 2 * completed)
    return report


def operator_eq(lhs, rhs) -> bool:
    return Polynomial._coerce(lhs - rhs).is_zero()


def observed_s_transformation(A: Hypermatrix222, m) -> dict:
    """Compare S of the axis-3 transformed hypermatrix with m S m^T and m^T S m.

    Nothing is claimed about which (if either) holds; the caller records it.
    """
    from .hypermatrix import apply_sl2
    S = s_matrix(A)
    S2 = s_matrix(apply_sl2(A, 3, m))

    def mul(p, q):
        return tuple(tuple(sum(p[r][n] * q[n][c] for n in (0, 1)) for c in (0, 1)) for r in (0, 1))

    mt = ((m[0][0], m[1][0]), (m[0][1], m[1][1]))
    return {"m S m^T": S2 == mul(mul(m, S), mt), "m^T S m": S2 == mul(mul(mt, S), m)}
