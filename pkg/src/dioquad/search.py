"""Desk-scale searches and the rank-2 matrix reduction.

Integer Diophantine tuples are enumerated as cliques in the graph joining
``a < b`` whenever ``ab + 1`` is a perfect square. The rank-2 reduction turns a
symmetric matrix with square off-diagonal entries into the one-parameter
shape ``k x_i x_j + m``.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError, RankError
from .exact_arith import format_rational, parse_rational, rational_sqrt_exact, to_rational
from .hypermatrix import Rotation
from .quadruple import MTuple, is_diophantine, p4
from .quintuple import p5


@dataclass(frozen=True)
class SearchConfig:
    bound: int
    arity: int
    require_distinct: bool = True
    shard: tuple[int, int] = (0, 1)

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("bound must be at least 1")
        if self.arity not in (2, 3, 4):
            raise ValueError(f"arity must be 2, 3 or 4, got {self.arity}")
        index, count = self.shard
        if count < 1 or not 0 <= index < count:
            raise ValueError(f"bad shard {index}/{count}")


def square_partners(a: int, bound: int, distinct: bool = True) -> list[int]:
    """All b with a < b <= bound (a <= b when not distinct) and ab + 1 a perfect square."""
    out = []
    low = a + 1 if distinct else a
    # ab + 1 = r^2 with b >= low  =>  r >= sqrt(a*low + 1)
    r = math.isqrt(a * low + 1)
    top = math.isqrt(a * bound + 1)
    while r <= top:
        if (r * r - 1) % a == 0:
            b = (r * r - 1) // a
            if low <= b <= bound:
                out.append(b)
        r += 1
    return out


def enumerate_diophantine(cfg: SearchConfig) -> list[MTuple]:
    """Increasing positive-integer tuples with every pairwise product + 1 a square."""
    index, count = cfg.shard
    cache: dict[int, list[int]] = {}
    cache_sets: dict[int, set[int]] = {}

    def partners(a):
        if a not in cache:
            cache[a] = square_partners(a, cfg.bound, cfg.require_distinct)
            cache_sets[a] = set(cache[a])
        return cache[a]

    found = []

    def extend(chosen, candidates):
        if len(chosen) == cfg.arity:
            found.append(tuple(chosen))
            return
        for b in candidates:
            partners(b)
            nxt = [c for c in candidates
                   if (c > b or (not cfg.require_distinct and c == b)) and c in cache_sets[b]]
            extend(chosen + [b], nxt)

    for a in range(1, cfg.bound + 1):
        if a % count != index:
            continue
        extend([a], partners(a))
    found.sort()
    return [MTuple(t) for t in found]


def _shard_worker(args) -> list[tuple[int, ...]]:
    bound, arity, distinct, shard = args
    cfg = SearchConfig(bound, arity, distinct, shard)
    return [tuple(int(e) for e in t.elements) for t in enumerate_diophantine(cfg)]


def enumerate_parallel(bound: int, arity: int, jobs: int = 1, require_distinct: bool = True) -> list[MTuple]:
    """Run ``jobs`` shards in worker processes and merge in lexicographic order."""
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    tasks = [(bound, arity, require_distinct, (i, jobs)) for i in range(jobs)]
    if jobs == 1:
        parts = [_shard_worker(tasks[0])]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_shard_worker, tasks))
    merged = sorted(itertools.chain.from_iterable(parts))
    return [MTuple(t) for t in merged]


# regularity classification -------------------------------------------------

@dataclass
class RegularityEntry:
    tuple: MTuple
    value: Fraction
    regular: bool


@dataclass
class RegularityReport:
    entries: list[RegularityEntry] = field(default_factory=list)

    @property
    def regular_count(self) -> int:
        return sum(1 for e in self.entries if e.regular)

    @property
    def total(self) -> int:
        return len(self.entries)

    @property
    def all_regular(self) -> bool:
        return self.regular_count == self.total

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "regular": self.regular_count,
            "tuples": [{"elements": [format_rational(v) for v in e.tuple.elements],
                        "value": format_rational(e.value), "regular": e.regular}
                       for e in self.entries],
        }


def regularity_value(t: MTuple) -> Fraction:
    if len(t) == 4:
        return p4(*t.elements)
    if len(t) == 5:
        return p5(*t.elements)
    raise ValueError(f"regularity is defined for 4- and 5-tuples, got length {len(t)}")


def classify_regular(tuples) -> RegularityReport:
    report = RegularityReport()
    for t in tuples:
        if not isinstance(t, MTuple):
            t = MTuple(tuple(t))
        value = regularity_value(t)
        report.entries.append(RegularityEntry(t, value, value == 0))
    return report


# CSV -----------------------------------------------------------------------

def csv_header(arity: int) -> list[str]:
    pairs = [f"z{i + 1}{j + 1}" for i, j in itertools.combinations(range(arity), 2)]
    return [f"e{i + 1}" for i in range(arity)] + pairs + ["regular"]


def write_csv(tuples, arity: int, stream) -> None:
    """One row per tuple: elements, witnesses in pair order, then the regular flag."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(csv_header(arity))
    for t in tuples:
        rep = is_diophantine(t)
        if not rep.passed:
            raise ValueError(f"tuple {t.elements} is not Diophantine")
        regular = ""
        if len(t) in (4, 5):
            regular = "true" if regularity_value(t) == 0 else "false"
        writer.writerow([format_rational(e) for e in t.elements]
                        + [format_rational(z) for z in rep.witnesses] + [regular])


def csv_text(tuples, arity: int) -> str:
    buf = io.StringIO()
    write_csv(tuples, arity, buf)
    return buf.getvalue()


# rank-2 matrix reduction ------------------------------------------------------

def matrix_rank(rows) -> int:
    """Exact rank by Gaussian elimination over the rationals."""
    m = [[to_rational(v) for v in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class SymmetricMatrixInstance:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(to_rational(v) for v in row) for row in self.entries)
        n = len(rows)
        if n < 2 or any(len(row) != n for row in rows):
            raise ValueError("matrix must be square with n >= 2")
        for i, j in itertools.combinations(range(n), 2):
            if rows[i][j] != rows[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def from_xy(cls, xs, ys) -> SymmetricMatrixInstance:
        """e_ij = x_i x_j + y_i y_j, which has rank at most 2."""
        xs = [to_rational(v) for v in xs]
        ys = [to_rational(v) for v in ys]
        return cls(tuple(tuple(xi * xj + yi * yj for xj, yj in zip(xs, ys)) for xi, yi in zip(xs, ys)))

    def to_json(self) -> dict:
        return {"entries": [[format_rational(v) for v in row] for row in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> SymmetricMatrixInstance:
        return cls(tuple(tuple(parse_rational(v) for v in row) for row in data["entries"]))


@dataclass(frozen=True)
class ReducedProblem:
    """k x_i x_j + m for rows 2..n; ``first_row`` keeps e_12..e_1n for the round trip."""

    k: Fraction
    m: Fraction
    x: tuple
    first_row: tuple

    @property
    def scales(self) -> tuple:
        """Square factors applied to rows/columns 2..n in the first step."""
        return tuple(1 / e for e in self.first_row)

    def reduced_entry(self, i: int, j: int) -> Fraction:
        """Entry (i, j) of the scaled matrix, zero-based over rows 2..n."""
        return self.k * self.x[i] * self.x[j] + self.m

    def reconstruct(self) -> SymmetricMatrixInstance:
        n = len(self.x) + 1
        rows = [[Fraction(0)] * n for _ in range(n)]
        rows[0][0] = 1 / self.m
        for i, e in enumerate(self.first_row, start=1):
            rows[0][i] = rows[i][0] = e
        for i in range(1, n):
            for j in range(1, n):
                rows[i][j] = self.reduced_entry(i - 1, j - 1) * self.first_row[i - 1] * self.first_row[j - 1]
        return SymmetricMatrixInstance(tuple(tuple(r) for r in rows))

    def to_json(self) -> dict:
        return {"k": format_rational(self.k), "m": format_rational(self.m),
                "x": [format_rational(v) for v in self.x],
                "scales": [format_rational(v) for v in self.scales]}


def reduce_rank2(M: SymmetricMatrixInstance) -> ReducedProblem:
    """Scale by squares so row 1 is constant, subtract it, and factor the rank-1 rest."""
    rank = matrix_rank(M.entries)
    if rank != 2:
        raise RankError(f"matrix has rank {rank}; the reduction needs rank exactly 2")
    e = M.entries
    n = M.n
    first = e[0][1:]
    for i, v in enumerate(first, start=2):
        if v == 0:
            raise PreconditionError(f"entry (1,{i}) is zero, so row {i} cannot be normalised")
        if rational_sqrt_exact(v) is None:
            raise PreconditionError(
                f"entry (1,{i}) = {format_rational(v)} is not a rational square; "
                f"normalising it to 1 would scale row {i} by a non-square")
    if e[0][0] == 0:
        raise PreconditionError("entry (1,1) is zero, so m = 1/e11 is undefined")
    m = 1 / e[0][0]
    # after scaling row/column i by 1/e_1i (a square) the entries are e_ij/(e_1i e_1j);
    # row 1 scaled by m reads (m, m, ..., m), and subtracting m leaves R
    R = [[e[i][j] / (first[i - 1] * first[j - 1]) - m for j in range(1, n)] for i in range(1, n)]
    if matrix_rank(R) != 1:
        raise RankError("the residual block is not rank 1")
    p = next(i for i in range(n - 1) if R[i][i] != 0)
    k = R[p][p]
    x = tuple(R[i][p] / k for i in range(n - 1))
    out = ReducedProblem(k, m, x, tuple(first))
    for i in range(n - 1):
        for j in range(n - 1):
            if out.reduced_entry(i, j) != R[i][j] + m:
                raise ArithmeticError("rank-1 factorisation does not reproduce the residual")
    if out.reconstruct() != M:
        raise ArithmeticError("reduction does not round-trip")
    return out


def pythagorean_rotate(xs, ys, rot: Rotation) -> tuple[list, list]:
    """(x, y) -> (c x + s y, -s x + c y) componentwise; pair sums scale by c^2 + s^2."""
    xs = [to_rational(v) for v in xs]
    ys = [to_rational(v) for v in ys]
    if len(xs) != len(ys):
        raise ValueError(f"xs has {len(xs)} entries but ys has {len(ys)}")
    c, s = rot.c, rot.s
    xn = [c * a + s * b for a, b in zip(xs, ys)]
    yn = [-s * a + c * b for a, b in zip(xs, ys)]
    for i, j in itertools.combinations_with_replacement(range(len(xs)), 2):
        if xn[i] * xn[j] + yn[i] * yn[j] != rot.norm * (xs[i] * xs[j] + ys[i] * ys[j]):
            raise ArithmeticError("pair sums did not scale by c^2 + s^2")
    return xn, yn
