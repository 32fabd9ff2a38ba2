"""Exact sparse linear algebra over Q(zeta_n).

Matrices are immutable dict-of-rows structures whose entries are nonzero
CycScalars.  Rank, nullspace, solving and cokernel computations all run
fraction-managed Gaussian elimination with a fill-minimizing pivot rule
(fewest nonzeros in row, then fewest rows in column); pivot choice only
affects speed, never results.  A dense elimination path takes over when
the matrix is small and dense.
"""

from __future__ import annotations

from math import lcm
from typing import Iterable, Iterator, Sequence

from .scalars import CycScalar, ONE, ZERO, cyc, format_scalar

Vector = tuple[CycScalar, ...]

DENSE_FALLBACK_THRESHOLD = 0.3  # density above which small matrices go dense
DENSE_FALLBACK_MAX_CELLS = 40_000


def vec(values: Iterable) -> Vector:
    return tuple(cyc(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def add_vectors(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub_vectors(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale_vector(c, a: Vector) -> Vector:
    c = cyc(c)
    return tuple(c * x for x in a)


def dot(a: Vector, b: Vector) -> CycScalar:
    assert len(a) == len(b)
    out = ZERO
    for x, y in zip(a, b):
        if x and y:
            out = out + x * y
    return out


class SparseMatrix:
    """Immutable sparse matrix; absent entries are zero, stored ones are not."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: int, cols: int, entries=None):
        data: list[dict[int, CycScalar]] = [dict() for _ in range(rows)]
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (r, c), v in items:
                v = cyc(v)
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                if v:
                    data[r][c] = v
                elif c in data[r]:
                    del data[r][c]
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_rows", data)

    def __setattr__(self, *a):
        raise AttributeError("SparseMatrix is immutable")

    @staticmethod
    def _wrap(rows: int, cols: int, data: list[dict[int, CycScalar]]) -> "SparseMatrix":
        m = SparseMatrix.__new__(SparseMatrix)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "_rows", data)
        return m

    @staticmethod
    def from_rows(rows_data: Sequence[dict[int, CycScalar]], cols: int) -> "SparseMatrix":
        data = [{c: cyc(v) for c, v in row.items() if cyc(v)} for row in rows_data]
        return SparseMatrix._wrap(len(data), cols, data)

    @staticmethod
    def from_dense(table: Sequence[Sequence]) -> "SparseMatrix":
        rows = len(table)
        cols = len(table[0]) if rows else 0
        data = []
        for row in table:
            assert len(row) == cols
            data.append({c: cyc(v) for c, v in enumerate(row) if cyc(v)})
        return SparseMatrix._wrap(rows, cols, data)

    @staticmethod
    def identity(n: int) -> "SparseMatrix":
        return SparseMatrix._wrap(n, n, [{i: ONE} for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "SparseMatrix":
        return SparseMatrix._wrap(rows, cols, [dict() for _ in range(rows)])

    @staticmethod
    def from_columns(columns: Sequence[Vector], rows: int) -> "SparseMatrix":
        data: list[dict[int, CycScalar]] = [dict() for _ in range(rows)]
        for c, col in enumerate(columns):
            assert len(col) == rows
            for r, v in enumerate(col):
                if v:
                    data[r][c] = v
        return SparseMatrix._wrap(rows, len(columns), data)

    # --- inspection ---

    def entry(self, r: int, c: int) -> CycScalar:
        return self._rows[r].get(c, ZERO)

    def entries(self) -> Iterator[tuple[int, int, CycScalar]]:
        for r, row in enumerate(self._rows):
            for c, v in row.items():
                yield r, c, v

    def nnz(self) -> int:
        return sum(len(row) for row in self._rows)

    def density(self) -> float:
        cells = self.rows * self.cols
        return self.nnz() / cells if cells else 0.0

    def is_zero(self) -> bool:
        return all(not row for row in self._rows)

    @property
    def field_order(self) -> int:
        n = 1
        for row in self._rows:
            for v in row.values():
                n = lcm(n, v.order)
        return n

    def row_vector(self, r: int) -> Vector:
        row = self._rows[r]
        return tuple(row.get(c, ZERO) for c in range(self.cols))

    def column_vector(self, c: int) -> Vector:
        return tuple(row.get(c, ZERO) for row in self._rows)

    def to_dense(self) -> list[list[CycScalar]]:
        return [[self.entry(r, c) for c in range(self.cols)] for r in range(self.rows)]

    def dump(self) -> str:
        """Debug format: header `rows cols field_order`, then one
        `(row, col, scalar)` triplet per line, row-major order."""
        lines = [f"{self.rows} {self.cols} {self.field_order}"]
        for r, c, v in self.entries():
            lines.append(f"({r}, {c}, {format_scalar(v)})")
        return "\n".join(lines)

    # --- algebra ---

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._rows == other._rows

    def __hash__(self):
        return hash((self.rows, self.cols, self.nnz()))

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        data = []
        for ra, rb in zip(self._rows, other._rows):
            row = dict(ra)
            for c, v in rb.items():
                s = row.get(c, ZERO) + v
                if s:
                    row[c] = s
                elif c in row:
                    del row[c]
            data.append(row)
        return SparseMatrix._wrap(self.rows, self.cols, data)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "SparseMatrix":
        c = cyc(c)
        if not c:
            return SparseMatrix.zero(self.rows, self.cols)
        data = [{j: c * v for j, v in row.items()} for row in self._rows]
        return SparseMatrix._wrap(self.rows, self.cols, data)

    def __mul__(self, other: "SparseMatrix") -> "SparseMatrix":
        assert self.cols == other.rows, f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}"
        data: list[dict[int, CycScalar]] = [dict() for _ in range(self.rows)]
        for r, row in enumerate(self._rows):
            acc = data[r]
            for k, a in row.items():
                for c, b in other._rows[k].items():
                    s = acc.get(c, ZERO) + a * b
                    if s:
                        acc[c] = s
                    elif c in acc:
                        del acc[c]
        return SparseMatrix._wrap(self.rows, other.cols, data)

    def transpose(self) -> "SparseMatrix":
        data: list[dict[int, CycScalar]] = [dict() for _ in range(self.cols)]
        for r, row in enumerate(self._rows):
            for c, v in row.items():
                data[c][r] = v
        return SparseMatrix._wrap(self.cols, self.rows, data)

    def apply(self, v: Vector) -> Vector:
        assert len(v) == self.cols
        out = []
        for row in self._rows:
            s = ZERO
            for c, a in row.items():
                if v[c]:
                    s = s + a * v[c]
            out.append(s)
        return tuple(out)

    def trace(self) -> CycScalar:
        assert self.rows == self.cols
        s = ZERO
        for r, row in enumerate(self._rows):
            if r in row:
                s = s + row[r]
        return s


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Kronecker product with row-major index convention
    (i_a * rows_b + i_b, j_a * cols_b + j_b)."""
    data: list[dict[int, CycScalar]] = [dict() for _ in range(a.rows * b.rows)]
    for ra, ca, va in a.entries():
        for rb, cb, vb in b.entries():
            data[ra * b.rows + rb][ca * b.cols + cb] = va * vb
    return SparseMatrix._wrap(a.rows * b.rows, a.cols * b.cols, data)


# --- elimination core -------------------------------------------------------

def _eliminate(data: list[dict[int, CycScalar]], cols: int,
               want_reduced: bool = False,
               pivot_limit: int | None = None) -> list[tuple[int, int]]:
    """In-place forward elimination with fill-minimizing pivoting.

    Pivot rule: a minimum-nnz active row, then its least-populated column.
    Returns pivots as (row_index, col) pairs sorted by column.  With
    want_reduced, pivot rows are normalized to 1 and cleared above as well.
    Columns >= pivot_limit are never chosen as pivots (used by `solve` to
    protect the augmented column); rows supported only there are left alone.

    Pivot positions need not be at leading columns, so the result is an
    echelon basis but not the canonical reduced form; `_canonical_rref`
    finishes the job where canonical output matters.
    """
    nrows = len(data)
    col_rows: dict[int, dict[int, None]] = {}
    for r, row in enumerate(data):
        for c in row:
            col_rows.setdefault(c, {})[r] = None
    # active rows live in nnz buckets for cheap min-length retrieval
    buckets: dict[int, dict[int, None]] = {}
    row_len = [0] * nrows
    for r, row in enumerate(data):
        if row:
            buckets.setdefault(len(row), {})[r] = None
            row_len[r] = len(row)
    is_active = [True] * nrows

    def rebucket(r: int):
        new_len = len(data[r])
        old = row_len[r]
        if old == new_len:
            return
        if old:
            b = buckets.get(old)
            if b is not None:
                b.pop(r, None)
                if not b:
                    del buckets[old]
        if new_len:
            buckets.setdefault(new_len, {})[r] = None
        row_len[r] = new_len

    pivots: list[tuple[int, int]] = []
    while buckets:
        lmin = min(buckets)
        bucket = buckets[lmin]
        r = next(iter(bucket))
        del bucket[r]
        if not bucket:
            del buckets[lmin]
        row_len[r] = 0
        is_active[r] = False
        row = data[r]
        if pivot_limit is not None:
            eligible = [j for j in row if j < pivot_limit]
            if not eligible:
                continue  # row stuck in protected columns; never a pivot
            c = min(eligible, key=lambda j: (len(col_rows[j]), j))
        else:
            c = min(row, key=lambda j: (len(col_rows[j]), j))
        piv = row[c]
        pivots.append((r, c))
        targets = [t for t in col_rows[c] if t != r and (is_active[t] or want_reduced)]
        for t in targets:
            trow = data[t]
            factor = trow[c] / piv
            for j, v in row.items():
                s = trow.get(j, ZERO) - factor * v
                if s:
                    if j not in trow:
                        col_rows.setdefault(j, {})[t] = None
                    trow[j] = s
                else:
                    if j in trow:
                        del trow[j]
                        col_rows[j].pop(t, None)
            if is_active[t]:
                rebucket(t)
        col_rows[c] = {r: None}
    if want_reduced:
        for r, c in pivots:
            piv = data[r][c]
            if piv != ONE:
                inv = piv.inverse()
                data[r] = {j: inv * v for j, v in data[r].items()}
    pivots.sort(key=lambda rc: rc[1])
    return pivots


def _copy_rows(m: SparseMatrix) -> list[dict[int, CycScalar]]:
    return [dict(row) for row in m._rows]


def _dense_rank(m: SparseMatrix) -> int:
    grid = m.to_dense()
    rows, cols = m.rows, m.cols
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if grid[r][c]), None)
        if piv is None:
            continue
        grid[rank], grid[piv] = grid[piv], grid[rank]
        inv = grid[rank][c].inverse()
        for r in range(rank + 1, rows):
            if grid[r][c]:
                f = grid[r][c] * inv
                grid[r] = [a - f * b for a, b in zip(grid[r], grid[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def rank(m: SparseMatrix, dense_threshold: float = DENSE_FALLBACK_THRESHOLD,
         dense_max_cells: int = DENSE_FALLBACK_MAX_CELLS) -> int:
    cells = m.rows * m.cols
    if 0 < cells <= dense_max_cells and m.density() > dense_threshold:
        return _dense_rank(m)
    data = _copy_rows(m)
    return len(_eliminate(data, m.cols))


class Subspace:
    """A subspace of Q(zeta)^n held as a reduced-echelon row basis.

    The representation is canonical: two Subspace objects are equal exactly
    when they describe the same subspace.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Sequence[Vector], *, _canonical=False):
        if not _canonical:
            basis = _rref_rows(basis, ambient_dim)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(basis))

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def from_vectors(vectors: Sequence[Vector], ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, vectors)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vector) -> bool:
        assert len(v) == self.ambient_dim
        residue = list(v)
        for row in self.basis:
            lead = next(i for i, x in enumerate(row) if x)
            if residue[lead]:
                f = residue[lead]  # pivot normalized to 1
                residue = [a - f * b for a, b in zip(residue, row)]
        return not any(residue)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.dim))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def _canonical_rref(data: list[dict[int, CycScalar]]) -> list[dict[int, CycScalar]]:
    """Gauss-Jordan with leading-column pivots on an already-thin row list;
    output rows are the canonical reduced echelon basis, sorted by pivot."""
    rows = [row for row in data if row]
    done: list[tuple[int, dict[int, CycScalar]]] = []
    while rows:
        lead, idx = None, None
        for i, row in enumerate(rows):
            m = min(row)
            if lead is None or m < lead:
                lead, idx = m, i
        row = rows.pop(idx)
        piv = row[lead]
        if piv != ONE:
            inv = piv.inverse()
            row = {j: inv * v for j, v in row.items()}
        for other_list in (rows, [d for _, d in done]):
            for other in other_list:
                f = other.get(lead)
                if f:
                    for j, v in row.items():
                        s = other.get(j, ZERO) - f * v
                        if s:
                            other[j] = s
                        elif j in other:
                            del other[j]
        done.append((lead, row))
        rows = [r for r in rows if r]
    done.sort(key=lambda t: t[0])
    return [row for _, row in done]


def _rref_rows(vectors: Sequence[Vector], ambient: int) -> list[Vector]:
    data = []
    for v in vectors:
        assert len(v) == ambient
        row = {i: x for i, x in enumerate(v) if x}
        if row:
            data.append(row)
    # thin out with the fill-minimizing eliminator, then canonicalize
    pivots = _eliminate(data, ambient, want_reduced=True)
    thin = [data[r] for r, _ in pivots]
    reduced = _canonical_rref(thin)
    return [tuple(row.get(j, ZERO) for j in range(ambient)) for row in reduced]


def rref(vectors: Sequence[Vector], ambient: int) -> Subspace:
    return Subspace(ambient, _rref_rows(vectors, ambient), _canonical=True)


def nullspace(m: SparseMatrix) -> Subspace:
    """Canonical basis of { v : m.apply(v) = 0 }."""
    data = _copy_rows(m)
    pivots = _eliminate(data, m.cols, want_reduced=True)
    pivot_cols = [c for _, c in pivots]
    pivot_of = {c: r for r, c in pivots}
    free = [c for c in range(m.cols) if c not in pivot_of]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for c in pivot_cols:
            coeff = data[pivot_of[c]].get(f, ZERO)
            if coeff:
                v[c] = -coeff
        basis.append(tuple(v))
    return Subspace(m.cols, basis)


def solve(m: SparseMatrix, b: Vector) -> Vector | None:
    """Some x with m.apply(x) = b, or None when the system is inconsistent."""
    assert len(b) == m.rows
    data = _copy_rows(m)
    aug = m.cols  # augmented column index, protected from pivoting
    for r, v in enumerate(b):
        if v:
            data[r][aug] = v
    pivots = _eliminate(data, m.cols + 1, want_reduced=True, pivot_limit=m.cols)
    pivot_rows = {r for r, _ in pivots}
    for r, row in enumerate(data):
        if r not in pivot_rows and aug in row:
            return None  # a residual equation 0 = nonzero
    x = [ZERO] * m.cols
    for r, c in pivots:
        x[c] = data[r].get(aug, ZERO)
    return tuple(x)


def cokernel_projector(m: SparseMatrix) -> tuple[Subspace, SparseMatrix]:
    """Complement of the column space (coordinates avoiding its pivots) and
    the projection of the ambient space onto it; projection * m = 0."""
    colspace = rref([m.column_vector(c) for c in range(m.cols)], m.rows)
    pivot_coords = []
    for row in colspace.basis:
        pivot_coords.append(next(i for i, x in enumerate(row) if x))
    pivot_set = set(pivot_coords)
    free = [i for i in range(m.rows) if i not in pivot_set]
    proj_rows: list[dict[int, CycScalar]] = []
    pos = {f: k for k, f in enumerate(free)}
    for f in free:
        proj_rows.append({f: ONE})
    for row, p in zip(colspace.basis, pivot_coords):
        for i, x in enumerate(row):
            if x and i in pos:
                prow = proj_rows[pos[i]]
                s = prow.get(p, ZERO) - x
                if s:
                    prow[p] = s
                elif p in prow:
                    del prow[p]
    projection = SparseMatrix.from_rows(proj_rows, m.rows)
    complement = Subspace(m.rows, [unit_vector(m.rows, f) for f in free], _canonical=True)
    return complement, projection


def column_space_dim(m: SparseMatrix) -> int:
    return rank(m)
