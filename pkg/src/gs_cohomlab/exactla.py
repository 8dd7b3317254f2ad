"""Exact linear algebra over GF(p) and the rationals.

Vectors are sparse ``dict`` objects mapping a hashable index to a nonzero field
element.  Matrices are stored column-major as a tuple of such dicts.  Nothing
here uses floating point or randomisation, so every result is reproducible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import CompositionError, InvalidStructure

Vector = dict  # index -> nonzero field element


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """A coefficient field: ``GF(p)`` when ``p > 0``, the rationals when ``p == 0``."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not (2 <= self.p < 2**31 and _is_prime(self.p)):
            raise InvalidStructure(f"modulus {self.p} is not a prime in [2, 2^31)")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(int(p))

    @classmethod
    def rational(cls) -> "Field":
        return cls(0)

    @classmethod
    def parse(cls, text) -> "Field":
        """Accept ``5``, ``"5"``, ``"GF(5)"``, ``"Q"``/``"QQ"``/``"rational"``."""
        if isinstance(text, Field):
            return text
        if isinstance(text, int):
            return cls.prime(text)
        s = str(text).strip()
        if s.upper() in ("Q", "QQ", "RATIONAL", "RATIONALS", "0"):
            return cls.rational()
        if s.upper().startswith("GF(") and s.endswith(")"):
            s = s[3:-1]
        try:
            return cls.prime(int(s))
        except ValueError:
            raise InvalidStructure(f"cannot parse field {text!r}") from None

    @property
    def is_prime(self) -> bool:
        return self.p != 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x):
        """Canonical representative of ``x``."""
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def div(self, a, b):
        return self(a * self.inv(b))

    def neg(self, x):
        return self(-x)

    def to_json(self):
        return self.p if self.p else "Q"

    def encode(self, x):
        """JSON-friendly value (ints stay ints, rationals become ``"n/d"``)."""
        if self.p or Fraction(x).denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"

    def decode(self, x):
        if isinstance(x, str):
            return self(Fraction(x))
        return self(x)

    def __str__(self):
        return f"GF({self.p})" if self.p else "QQ"


# ---------------------------------------------------------------------------
# sparse vector helpers


def axpy(y: dict, a, x: Mapping, p: int) -> dict:
    """In place ``y += a*x``; drops zeros.  Returns ``y``."""
    if not a:
        return y
    if p:
        for k, v in x.items():
            nv = (y.get(k, 0) + a * v) % p
            if nv:
                y[k] = nv
            elif k in y:
                del y[k]
    else:
        for k, v in x.items():
            nv = y.get(k, 0) + a * v
            if nv:
                y[k] = nv
            elif k in y:
                del y[k]
    return y


def scale(x: Mapping, a, p: int) -> dict:
    if not a:
        return {}
    if p:
        return {k: v * a % p for k, v in x.items()}
    return {k: v * a for k, v in x.items()}


def vsum(vectors: Iterable[tuple], p: int) -> dict:
    """Sum of ``coef * vec`` over ``(coef, vec)`` pairs."""
    out: dict = {}
    for a, x in vectors:
        axpy(out, a, x, p)
    return out


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """Immutable sparse matrix; ``columns[j]`` maps row index to value."""

    rows: int
    cols: int
    field: Field
    columns: tuple = dc_field(repr=False)

    def __post_init__(self):
        if len(self.columns) != self.cols:
            raise InvalidStructure("column count mismatch")
        for c in self.columns:
            for r, v in c.items():
                if not (0 <= r < self.rows) or not v:
                    raise InvalidStructure(f"bad entry at row {r}")

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping], field: Field) -> "SparseMatrix":
        cols = tuple({r: field(v) for r, v in c.items() if field(v)} for c in columns)
        return cls(rows, len(cols), field, cols)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple], field: Field) -> "SparseMatrix":
        columns = [dict() for _ in range(cols)]
        for r, c, v in entries:
            if r in columns[c]:
                raise InvalidStructure(f"duplicate entry ({r}, {c})")
            v = field(v)
            if v:
                columns[c][r] = v
        return cls(rows, cols, field, tuple(columns))

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], field: Field, cols: int | None = None) -> "SparseMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        columns = [dict() for _ in range(cols)]
        for i, row in enumerate(data):
            if len(row) != cols:
                raise InvalidStructure("ragged dense matrix")
            for j, v in enumerate(row):
                v = field(v)
                if v:
                    columns[j][i] = v
        return cls(rows, cols, field, tuple(columns))

    @classmethod
    def zero(cls, rows: int, cols: int, field: Field) -> "SparseMatrix":
        return cls(rows, cols, field, tuple({} for _ in range(cols)))

    @classmethod
    def identity(cls, n: int, field: Field) -> "SparseMatrix":
        return cls(n, n, field, tuple({i: field(1)} for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def entries(self) -> list[tuple]:
        return sorted((r, j, v) for j, c in enumerate(self.columns) for r, v in c.items())

    def __getitem__(self, rc):
        r, c = rc
        return self.columns[c].get(r, self.field(0))

    def column(self, j: int) -> dict:
        return dict(self.columns[j])

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def to_dense(self) -> list[list]:
        out = [[self.field(0)] * self.cols for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for r, v in c.items():
                out[r][j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        columns = [dict() for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for r, v in c.items():
                columns[r][j] = v
        return SparseMatrix(self.cols, self.rows, self.field, tuple(columns))

    def apply(self, x: Mapping) -> dict:
        p = self.field.p
        out: dict = {}
        for j, a in x.items():
            axpy(out, a, self.columns[j], p)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise InvalidStructure(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix(self.rows, other.cols, self.field,
                            tuple(self.apply(c) for c in other.columns))

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise InvalidStructure("shape mismatch")
        p = self.field.p
        return SparseMatrix(self.rows, self.cols, self.field,
                            tuple(axpy(dict(a), 1, b, p) for a, b in zip(self.columns, other.columns)))

    def __neg__(self) -> "SparseMatrix":
        p = self.field.p
        return SparseMatrix(self.rows, self.cols, self.field, tuple(scale(c, -1, p) for c in self.columns))

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scaled(self, a) -> "SparseMatrix":
        a = self.field(a)
        return SparseMatrix(self.rows, self.cols, self.field,
                            tuple(scale(c, a, self.field.p) for c in self.columns))

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and all(
            a == b for a, b in zip(self.columns, other.columns))

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(c.items())) for c in self.columns)))

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols} over {self.field}, nnz={self.nnz})"


# ---------------------------------------------------------------------------
# elimination


class Echelon:
    """Ordered pivot list supporting reduction and coefficient tracking.

    Pivot ``t`` has zeros in the pivot rows of all pivots ``< t``, so a single
    pass in pivot order reduces any vector.  Each pivot carries a ``combo``
    expressing it in some auxiliary coordinates chosen by the caller.
    """

    def __init__(self, p: int):
        self.p = p
        self.rows: list = []
        self.vecs: list[dict] = []
        self.combos: list[dict] = []
        self.index: dict = {}

    def __len__(self):
        return len(self.rows)

    def add_pivot(self, row, vec: dict, combo: dict | None = None):
        self.index[row] = len(self.rows)
        self.rows.append(row)
        self.vecs.append(vec)
        self.combos.append(combo or {})

    def reduce(self, v: Mapping, track: bool = True) -> tuple[dict, dict]:
        """Return ``(residue, coeff)`` with ``v = sum f_t pivot_t + residue``.

        ``coeff`` is ``sum f_t combo_t``.
        """
        p = self.p
        v = dict(v)
        coeff: dict = {}
        index = self.index
        heap = [index[k] for k in v if k in index]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            t = heapq.heappop(heap)
            row = self.rows[t]
            a = v.get(row)
            if not a:
                continue
            pv = self.vecs[t]
            f = a * pow(pv[row], -1, p) % p if p else a / pv[row]
            neg = (-f) % p if p else -f
            for k, x in pv.items():
                nv = v.get(k, 0) + neg * x
                if p:
                    nv %= p
                if nv:
                    if k not in v:
                        s = index.get(k)
                        if s is not None and s not in seen:
                            seen.add(s)
                            heapq.heappush(heap, s)
                    v[k] = nv
                elif k in v:
                    del v[k]
            if track and self.combos[t]:
                axpy(coeff, f, self.combos[t], p)
        return v, coeff

    def insert(self, v: Mapping, combo: dict | None = None) -> bool:
        """Reduce ``v`` and keep the residue as a new pivot; return whether it was new.

        When ``combo`` is given, the stored combo is ``combo - coeff``.
        """
        res, coeff = self.reduce(v, track=combo is not None)
        if not res:
            return False
        if combo is not None:
            c = dict(combo)
            axpy(c, -1 % self.p if self.p else -1, coeff, self.p)
        else:
            c = {}
        self.add_pivot(next(iter(res)), res, c)
        return True


def _eliminate(columns: Sequence[Mapping], p: int, track: bool):
    """Column elimination with Markowitz-style pivoting.

    The next pivot column is one with the fewest nonzeros; inside it the row
    with the fewest nonzeros across live columns.  Returns ``(echelon, zero)``:
    the pivots in elimination order (combos over original column indices when
    ``track``) and, for each column reduced to zero, its combo (or index).
    """
    n = len(columns)
    work = [dict(c) for c in columns]
    combos = [{j: 1 if p else Fraction(1)} for j in range(n)] if track else None
    row_index: dict = {}
    for j, c in enumerate(work):
        for r in c:
            s = row_index.get(r)
            if s is None:
                row_index[r] = {j}
            else:
                s.add(j)
    alive = [bool(c) for c in work]
    zero = [j for j in range(n) if not work[j]]
    heap = [(len(work[j]), j) for j in range(n) if work[j]]
    heapq.heapify(heap)
    ech = Echelon(p)
    while heap:
        cnt, j = heapq.heappop(heap)
        if not alive[j] or cnt != len(work[j]):
            continue
        col = work[j]
        alive[j] = False
        best = None
        bestc = -1
        for r in col:
            rc = len(row_index[r])
            if best is None or rc < bestc:
                best, bestc = r, rc
                if rc == 1:
                    break
        for r in col:
            row_index[r].discard(j)
        r = best
        piv = col[r]
        inv = pow(piv, -1, p) if p else 1 / piv
        for k in sorted(row_index[r]):
            ck = work[k]
            f = ck[r] * inv
            if p:
                f %= p
            neg = (-f) % p if p else -f
            for rr, v in col.items():
                old = ck.get(rr)
                nv = (old or 0) + neg * v
                if p:
                    nv %= p
                if nv:
                    if old is None:
                        row_index[rr].add(k)
                    ck[rr] = nv
                elif old is not None:
                    del ck[rr]
                    row_index[rr].discard(k)
            if track:
                axpy(combos[k], neg, combos[j], p)
            if ck:
                heapq.heappush(heap, (len(ck), k))
            else:
                alive[k] = False
                zero.append(k)
        ech.add_pivot(r, col, combos[j] if track else None)
    kernel = [combos[j] for j in zero] if track else zero
    return ech, kernel


def rank_of_columns(columns: Sequence[Mapping], p: int) -> int:
    ech, _ = _eliminate(columns, p, track=False)
    return len(ech)


def kernel_of_columns(columns: Sequence[Mapping], p: int) -> list[dict]:
    """Null-space basis; each vector is indexed by column position."""
    _, kernel = _eliminate(columns, p, track=True)
    # each kernel vector is tagged by the column that became zero; sort for stability
    return sorted(({k: v[k] for k in sorted(v)} for v in kernel), key=lambda v: tuple(v))


def rank(m: SparseMatrix) -> int:
    """Rank of ``m`` over its field."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return rank_of_columns(m.columns, m.field.p)


def kernel_basis(m: SparseMatrix) -> list[dict]:
    """Basis of the null space of ``m`` (``cols - rank`` sparse vectors)."""
    return kernel_of_columns(m.columns, m.field.p)


def solve(m: SparseMatrix, b: Mapping | Sequence):
    """Some ``x`` with ``m @ x == b`` as a sparse dict, or ``None`` if none exists."""
    if not isinstance(b, Mapping):
        if len(b) != m.rows:
            raise InvalidStructure("right-hand side has wrong length")
        b = {i: m.field(v) for i, v in enumerate(b) if m.field(v)}
    p = m.field.p
    ech, _ = _eliminate(m.columns, p, track=True)
    res, x = ech.reduce(b)
    if res:
        return None
    return {k: x[k] for k in sorted(x)}


def to_dense_vector(x: Mapping, n: int, field: Field) -> list:
    out = [field(0)] * n
    for k, v in x.items():
        out[k] = v
    return out


def inverse(m: SparseMatrix) -> SparseMatrix:
    """Inverse of a square invertible matrix; raises ``ValueError`` otherwise."""
    if m.rows != m.cols:
        raise ValueError("matrix is not square")
    p = m.field.p
    ech, kernel = _eliminate(m.columns, p, track=True)
    if kernel:
        raise ValueError("matrix is singular")
    one = m.field(1)
    cols = []
    for i in range(m.rows):
        res, x = ech.reduce({i: one})
        if res:
            raise ValueError("matrix is singular")
        cols.append(x)
    return SparseMatrix(m.cols, m.rows, m.field, tuple(cols))


# ---------------------------------------------------------------------------
# cochain complexes


@dataclass(frozen=True, eq=False)
class CochainComplexRep:
    """``dims[n]`` and ``diffs[n]: C^n -> C^{n+1}``; ``d∘d = 0`` checked on construction."""

    dims: tuple
    diffs: tuple

    def __post_init__(self):
        dims = tuple(self.dims)
        diffs = tuple(self.diffs)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "diffs", diffs)
        if len(diffs) not in (len(dims) - 1, len(dims)):
            raise InvalidStructure("need one differential per degree (the last may be omitted)")
        for n, d in enumerate(diffs):
            target = dims[n + 1] if n + 1 < len(dims) else d.rows
            if d.shape != (target, dims[n]):
                raise InvalidStructure(f"d^{n} has shape {d.shape}, expected {(target, dims[n])}")
        for n in range(len(diffs) - 1):
            if not (diffs[n + 1] @ diffs[n]).is_zero():
                raise CompositionError(f"d^{n + 1} ∘ d^{n} != 0")


def cohomology_dims(c: CochainComplexRep) -> list[int]:
    """``dim H^n = dims[n] - rank d^n - rank d^{n-1}`` for every stored degree.

    A degree whose outgoing differential is not stored is treated as the end of
    the complex (``d^n = 0``).
    """
    ranks = [rank(d) for d in c.diffs]
    out = []
    for n, dim in enumerate(c.dims):
        r_out = ranks[n] if n < len(ranks) else 0
        r_in = ranks[n - 1] if n >= 1 else 0
        out.append(dim - r_out - r_in)
    return out


class CohomologyBasis:
    """Representative cocycles of ``ker(d_out) / im(d_in)`` plus class coordinates.

    ``cocycles`` are a kernel basis in deterministic order; ``image`` spans the
    coboundaries.  Representatives are the cocycles that are independent modulo
    the image, kept in their original order.
    """

    def __init__(self, image: Iterable[Mapping], cocycles: Iterable[Mapping], p: int):
        self.p = p
        self._ech = Echelon(p)
        for v in image:
            self._ech.insert(v)
        self.reps: list[dict] = []
        one = 1 if p else Fraction(1)
        for z in cocycles:
            if self._ech.insert(z, {len(self.reps): one}):
                self.reps.append(dict(z))

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, x: Mapping) -> dict:
        """Coordinates of the class of cocycle ``x``; raises if ``x`` is not in the span."""
        res, coeff = self._ech.reduce(x)
        if res:
            raise ValueError("vector is not a cocycle of this complex")
        return coeff

    def is_coboundary(self, x: Mapping) -> bool:
        res, coeff = self._ech.reduce(x)
        return not res and not coeff

    def matrix_of(self, images: Iterable[Mapping], field: Field, source_dim: int | None = None) -> SparseMatrix:
        """Matrix whose j-th column is ``coords(images[j])``."""
        cols = [self.coords(x) for x in images]
        return SparseMatrix(self.dim, len(cols), field, tuple(cols))
