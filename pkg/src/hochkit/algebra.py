"""Finite-dimensional unital associative algebras over Q(zeta_n).

An Algebra packages sparse structure constants, the unit, optional
symmetric Frobenius trace data and a provenance record.  Combinators
(tensor, opposite, enveloping) derive their structure constants lazily
from the factors, so large tensor algebras never materialize a full
multiplication table.

Constructed algebras are validated (group tables, matrix algebras and
file input eagerly; combinators inherit validity from their factors) and
immutable afterwards, so they are safe to share between threads.
"""

from __future__ import annotations

from math import lcm
from typing import Optional, Sequence

from .errors import (
    DegenerateFrobeniusForm, HochkitError, NotAGroup, NotAssociative,
    UnitLawFails,
)
from .linalg import (
    SparseMatrix, Subspace, Vector, nullspace, rank, rref, unit_vector, vec,
)
from .scalars import CycScalar, ONE, ZERO

SparseVec = dict[int, CycScalar]


class StructureConstants:
    """Products of basis elements: (i, j) -> sparse coordinate dict of e_i*e_j."""

    def product(self, i: int, j: int) -> SparseVec:
        raise NotImplementedError


class DictSC(StructureConstants):
    def __init__(self, table: dict[tuple[int, int], SparseVec]):
        self.table = {ij: {k: v for k, v in row.items() if v} for ij, row in table.items()}

    def product(self, i, j):
        return self.table.get((i, j), {})


class TensorSC(StructureConstants):
    """Structure constants of A (x) B, derived from the factors on demand."""

    def __init__(self, a: "Algebra", b: "Algebra"):
        self.a = a
        self.b = b
        self._cache: dict[tuple[int, int], SparseVec] = {}

    def product(self, i, j):
        got = self._cache.get((i, j))
        if got is not None:
            return got
        db = self.b.dim
        ia, ib = divmod(i, db)
        ja, jb = divmod(j, db)
        pa = self.a.sc.product(ia, ja)
        pb = self.b.sc.product(ib, jb)
        out: SparseVec = {}
        for ka, va in pa.items():
            for kb, vb in pb.items():
                out[ka * db + kb] = va * vb
        self._cache[(i, j)] = out
        return out


class OppositeSC(StructureConstants):
    def __init__(self, base: StructureConstants):
        self.base = base

    def product(self, i, j):
        return self.base.product(j, i)


class SerreData:
    """Symmetric Frobenius trace data; only the trivial Nakayama twist is
    supported, which is exactly the symmetric-algebra case."""

    __slots__ = ("functional", "nakayama")

    def __init__(self, functional: Vector, nakayama: str = "identity"):
        if nakayama != "identity":
            raise HochkitError("only the identity Nakayama twist is supported")
        self.functional = vec(functional)
        self.nakayama = nakayama

    def value(self, coords: Vector) -> CycScalar:
        out = ZERO
        for lam, c in zip(self.functional, coords):
            if lam and c:
                out = out + lam * c
        return out


class Algebra:
    def __init__(self, dim: int, sc: StructureConstants, unit: Vector,
                 labels: Optional[Sequence[str]] = None,
                 serre: Optional[SerreData] = None,
                 field_order: int = 1,
                 gens: Optional[Sequence[Vector]] = None,
                 provenance: tuple = ("custom",),
                 validated: bool = False):
        self.dim = dim
        self.sc = sc
        self.unit = vec(unit)
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(dim))
        assert len(self.labels) == dim and len(self.unit) == dim
        self.serre = serre
        self.field_order = field_order
        # generating set (as coordinate vectors); products of generators span,
        # which lets balanced tensor products use far fewer relation columns
        self.gens = tuple(vec(g) for g in gens) if gens is not None \
            else tuple(unit_vector(dim, i) for i in range(dim))
        self.provenance = provenance
        self.simple_reps: Optional[tuple] = None  # attached by fixtures
        self._semisimple: Optional[bool] = None
        self._left_mult: dict[int, SparseMatrix] = {}
        self._right_mult: dict[int, SparseMatrix] = {}
        if not validated:
            validate(self)

    # --- multiplication ---

    def mul(self, x: Vector, y: Vector) -> Vector:
        out: SparseVec = {}
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                coeff = xi * yj
                for k, c in self.sc.product(i, j).items():
                    s = out.get(k, ZERO) + coeff * c
                    if s:
                        out[k] = s
                    elif k in out:
                        del out[k]
        return tuple(out.get(k, ZERO) for k in range(self.dim))

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def left_mult_matrix(self, x: Vector) -> SparseMatrix:
        """Matrix of a |-> x * a on the basis."""
        entries = {}
        for i, xi in enumerate(x):
            if not xi:
                continue
            for k in range(self.dim):
                for r, c in self.sc.product(i, k).items():
                    key = (r, k)
                    s = entries.get(key, ZERO) + xi * c
                    if s:
                        entries[key] = s
                    elif key in entries:
                        del entries[key]
        return SparseMatrix(self.dim, self.dim, entries)

    def right_mult_matrix(self, x: Vector) -> SparseMatrix:
        """Matrix of a |-> a * x on the basis."""
        entries = {}
        for j, xj in enumerate(x):
            if not xj:
                continue
            for k in range(self.dim):
                for r, c in self.sc.product(k, j).items():
                    key = (r, k)
                    s = entries.get(key, ZERO) + xj * c
                    if s:
                        entries[key] = s
                    elif key in entries:
                        del entries[key]
        return SparseMatrix(self.dim, self.dim, entries)

    def basis_left_mult(self, i: int) -> SparseMatrix:
        m = self._left_mult.get(i)
        if m is None:
            m = self.left_mult_matrix(self.basis_vector(i))
            self._left_mult[i] = m
        return m

    def basis_right_mult(self, i: int) -> SparseMatrix:
        m = self._right_mult.get(i)
        if m is None:
            m = self.right_mult_matrix(self.basis_vector(i))
            self._right_mult[i] = m
        return m

    # --- identity / comparison ---

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        if (self.dim, self.field_order) != (other.dim, other.field_order):
            return False
        if self.provenance == other.provenance and self.provenance[0] != "custom":
            return True
        if self.unit != other.unit:
            return False
        return all(self.sc.product(i, j) == other.sc.product(i, j)
                   for i in range(self.dim) for j in range(self.dim))

    def __hash__(self):
        return hash((self.dim, self.field_order, self.unit))

    def __repr__(self):
        return f"Algebra({self.provenance[0]}, dim {self.dim})"

    def is_semisimple(self) -> bool:
        """Nondegeneracy of the regular trace form, the characteristic-zero
        criterion for semisimplicity."""
        if self._semisimple is None:
            traces = [regular_trace(self, self.basis_vector(k)) for k in range(self.dim)]
            entries = {}
            for i in range(self.dim):
                for j in range(self.dim):
                    s = ZERO
                    for k, c in self.sc.product(i, j).items():
                        if traces[k]:
                            s = s + c * traces[k]
                    if s:
                        entries[(i, j)] = s
            self._semisimple = rank(SparseMatrix(self.dim, self.dim, entries)) == self.dim
        return self._semisimple


class CentralElement:
    """An element commuting with every basis element, checked at creation."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords: Vector, *, _checked=False):
        coords = vec(coords)
        assert len(coords) == algebra.dim
        if not _checked:
            for i in range(algebra.dim):
                e = algebra.basis_vector(i)
                if algebra.mul(coords, e) != algebra.mul(e, coords):
                    raise HochkitError(f"element is not central (fails at basis {i})")
        self.algebra = algebra
        self.coords = coords

    def __eq__(self, other):
        return isinstance(other, CentralElement) and self.coords == other.coords \
            and self.algebra == other.algebra

    def __repr__(self):
        return f"CentralElement({[str(c) for c in self.coords]})"


# --- validation -------------------------------------------------------------

def validate(a: Algebra) -> None:
    """Check unit laws, associativity on all basis triples, and (if present)
    symmetry and nondegeneracy of the Frobenius form.  Raises the first
    defect found, with its witness."""
    for i in range(a.dim):
        e = a.basis_vector(i)
        if a.mul(a.unit, e) != e or a.mul(e, a.unit) != e:
            raise UnitLawFails(i)
    for i in range(a.dim):
        ei = a.basis_vector(i)
        for j in range(a.dim):
            ej = a.basis_vector(j)
            left = a.mul(ei, ej)
            for k in range(a.dim):
                ek = a.basis_vector(k)
                if a.mul(left, ek) != a.mul(ei, a.mul(ej, ek)):
                    raise NotAssociative(i, j, k)
    if a.serre is not None:
        _validate_serre(a)


def _validate_serre(a: Algebra) -> None:
    lam = a.serre
    entries = {}
    for i in range(a.dim):
        for j in range(a.dim):
            v = lam.value(tuple(a.sc.product(i, j).get(k, ZERO) for k in range(a.dim)))
            if v:
                entries[(i, j)] = v
    gram = SparseMatrix(a.dim, a.dim, entries)
    if gram != gram.transpose():
        raise DegenerateFrobeniusForm("form is not symmetric")
    if rank(gram) != a.dim:
        raise DegenerateFrobeniusForm("gram matrix is singular")


# --- constructors -------------------------------------------------------------

def group_algebra(mult_table: Sequence[Sequence[int]],
                  labels: Optional[Sequence[str]] = None,
                  gens: Optional[Sequence[int]] = None,
                  name: str = "group") -> Algebra:
    """Group algebra of the group given by an index multiplication table.

    The Frobenius trace picks out the coefficient of the identity, and the
    scalar field is Q(zeta_e) for e the exponent of the group, so every
    character value of the group is representable.
    """
    n = len(mult_table)
    table = [list(row) for row in mult_table]
    for row in table:
        if len(row) != n or any(not (0 <= x < n) for x in row):
            raise NotAGroup("table is not square over indices 0..n-1")
    identity = None
    for e in range(n):
        if all(table[e][g] == g and table[g][e] == g for g in range(n)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no two-sided identity")
    for g in range(n):
        if not any(table[g][h] == identity and table[h][g] == identity for h in range(n)):
            raise NotAGroup(f"element {g} has no inverse")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise NotAGroup(f"associativity fails at ({i}, {j}, {k})")
    exponent = 1
    for g in range(n):
        order, x = 1, g
        while x != identity:
            x = table[x][g]
            order += 1
        exponent = lcm(exponent, order)
    sc = DictSC({(i, j): {table[i][j]: ONE} for i in range(n) for j in range(n)})
    functional = [ONE if g == identity else ZERO for g in range(n)]
    gen_vectors = None
    if gens is not None:
        gen_vectors = [unit_vector(n, g) for g in gens]
    return Algebra(
        n, sc, unit_vector(n, identity), labels=labels,
        serre=SerreData(functional), field_order=exponent, gens=gen_vectors,
        provenance=("group", name, tuple(tuple(row) for row in table), identity),
        validated=True,  # group axioms verified above imply the algebra ones
    )


def matrix_algebra(n: int) -> Algebra:
    """Full matrix algebra with basis e_ij (row-major) and trace Frobenius form."""
    assert n >= 1
    def idx(i, j):
        return i * n + j
    table: dict[tuple[int, int], SparseVec] = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        table[(idx(i, j), idx(k, l))] = {idx(i, l): ONE}
    labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    unit = [ONE if i == j else ZERO for i in range(n) for j in range(n)]
    functional = [ONE if i == j else ZERO for i in range(n) for j in range(n)]
    if n == 1:
        gens = [vec([1])]
    else:
        gens = [unit_vector(n * n, idx(i, (i + 1) % n)) for i in range(n)]
    a = Algebra(n * n, DictSC(table), unit, labels=labels,
                serre=SerreData(functional), field_order=1, gens=gens,
                provenance=("matrix", n), validated=True)
    validate(a)
    return a


def truncated_poly(k: int) -> Algebra:
    """C[x]/x^k; not symmetric-Frobenius here (no Serre data), but all
    Hochschild computations apply."""
    assert k >= 2
    table = {(i, j): ({i + j: ONE} if i + j < k else {})
             for i in range(k) for j in range(k)}
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, k)]
    a = Algebra(k, DictSC(table), unit_vector(k, 0), labels=labels,
                serre=None, field_order=1, gens=[unit_vector(k, 1)],
                provenance=("trunc", k), validated=True)
    validate(a)
    return a


def field_algebra() -> Algebra:
    return Algebra(1, DictSC({(0, 0): {0: ONE}}), vec([1]), labels=["1"],
                   serre=SerreData(vec([1])), field_order=1, gens=[],
                   provenance=("field",), validated=True)


def opposite(a: Algebra) -> Algebra:
    out = Algebra(a.dim, OppositeSC(a.sc), a.unit, labels=a.labels,
                  serre=a.serre, field_order=a.field_order, gens=a.gens,
                  provenance=("opposite", a), validated=True)
    return out


def tensor(a: Algebra, b: Algebra) -> Algebra:
    db = b.dim
    unit = tuple(ua * ub for ua in a.unit for ub in b.unit)
    labels = [f"{la}(x){lb}" for la in a.labels for lb in b.labels]
    serre = None
    if a.serre is not None and b.serre is not None:
        serre = SerreData(tuple(x * y for x in a.serre.functional
                                for y in b.serre.functional))
    gens = []
    for g in a.gens:
        gens.append(tuple(ga * ub for ga in g for ub in b.unit))
    for g in b.gens:
        gens.append(tuple(ua * gb for ua in a.unit for gb in g))
    return Algebra(a.dim * db, TensorSC(a, b), unit, labels=labels, serre=serre,
                   field_order=lcm(a.field_order, b.field_order), gens=gens,
                   provenance=("tensor", a, b), validated=True)


def enveloping(a: Algebra) -> Algebra:
    return tensor(a, opposite(a))


# --- structural operations ---------------------------------------------------

def center_basis(a: Algebra) -> list[CentralElement]:
    """Basis of { z : z e_i = e_i z for all i } via one nullspace computation."""
    entries = {}
    for i in range(a.dim):
        for j in range(a.dim):
            row = dict(a.sc.product(j, i))
            for k, v in a.sc.product(i, j).items():
                s = row.get(k, ZERO) - v
                if s:
                    row[k] = s
                elif k in row:
                    del row[k]
            for k, v in row.items():
                entries[(i * a.dim + k, j)] = v
    system = SparseMatrix(a.dim * a.dim, a.dim, entries)
    basis = nullspace(system).basis
    return [CentralElement(a, v) for v in basis]


def commutator_subspace(a: Algebra) -> Subspace:
    """Span of all e_i e_j - e_j e_i; its codimension is dim HH_0."""
    vectors = []
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            row = dict(a.sc.product(i, j))
            for k, v in a.sc.product(j, i).items():
                s = row.get(k, ZERO) - v
                if s:
                    row[k] = s
                elif k in row:
                    del row[k]
            if row:
                vectors.append(tuple(row.get(k, ZERO) for k in range(a.dim)))
    return rref(vectors, a.dim)


def regular_trace(a: Algebra, x: Vector) -> CycScalar:
    """Trace of left multiplication by x on the algebra itself."""
    out = ZERO
    for i, xi in enumerate(x):
        if not xi:
            continue
        for k in range(a.dim):
            c = a.sc.product(i, k).get(k)
            if c:
                out = out + xi * c
    return out
