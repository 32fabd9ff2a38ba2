"""Finite-dimensional modules, bimodule kernels, and the kernel calculus.

Conventions (fixed once, used everywhere):

* A ModuleRep over A is a LEFT A-module: action(e_i) are matrices acting on
  column vectors with action(e_i) action(e_j) = sum_k c_ij^k action(e_k).
* A right A-module is carried as a ModuleRep over opposite(A).
* A kernel from A to B (Bimodule with source A, target B) is a (B, A)-
  bimodule: its underlying ModuleRep lives over tensor(B, opposite(A)),
  and the induced integral transform is M |-> K (x)_A M : LMod(A) -> LMod(B).
  Composition is convolve(k1: A->B, k2: B->C) = K2 (x)_B K1, so that
  apply(convolve(k1, k2)) = apply(k2) o apply(k1) on the nose.
* outer_kernel(V, W) for V over opposite(A) and W over B is the kernel
  W (x) V with the evident actions; it sends M to W^(dim Hom(V*, M)).

Balanced tensor products over a non-semisimple algebra are refused: the
underived tensor would not compute the honest (derived) convolution there.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .algebra import Algebra, opposite, tensor
from .errors import (
    AlgebraMismatch, DegreeCapExceeded, HochkitError, MiddleNotSemisimple,
    MissingSerreData, MissingSimples, ModuleDefect,
)
from .linalg import SparseMatrix, Vector, kron, nullspace, rank, unit_vector
from .scalars import CycScalar, ONE, ZERO

MAX_COORDINATES = 200_000  # size guard for quotient/resolution spaces


class ModuleRep:
    """A left module: one action matrix per algebra basis element."""

    def __init__(self, algebra: Algebra, dim: int, action: Sequence[SparseMatrix],
                 name: str = "", check: bool = True):
        assert len(action) == algebra.dim
        for m in action:
            assert m.rows == dim and m.cols == dim
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(action)
        self.name = name
        if check:
            validate_module(self)

    def act(self, coords: Vector) -> SparseMatrix:
        """Action matrix of the algebra element with the given coordinates."""
        out = SparseMatrix.zero(self.dim, self.dim)
        for i, c in enumerate(coords):
            if c:
                out = out + self.action[i].scale(c)
        return out

    def character(self, coords: Vector) -> CycScalar:
        out = ZERO
        for i, c in enumerate(coords):
            if c:
                out = out + c * self.action[i].trace()
        return out

    def direct_sum(self, other: "ModuleRep") -> "ModuleRep":
        if self.algebra != other.algebra:
            raise AlgebraMismatch("direct sum needs a common algebra")
        d = self.dim + other.dim
        action = []
        for a, b in zip(self.action, other.action):
            entries = {(r, c): v for r, c, v in a.entries()}
            entries.update({(self.dim + r, self.dim + c): v for r, c, v in b.entries()})
            action.append(SparseMatrix(d, d, entries))
        return ModuleRep(self.algebra, d, action,
                         name=f"{self.name}(+){other.name}", check=False)

    def dual(self) -> "ModuleRep":
        """Linear dual, a left module over the opposite algebra."""
        return ModuleRep(opposite(self.algebra), self.dim,
                         [m.transpose() for m in self.action],
                         name=f"{self.name}*", check=False)

    def __repr__(self):
        return f"ModuleRep({self.name or '?'}, dim {self.dim} over {self.algebra!r})"


def validate_module(m: ModuleRep) -> None:
    a = m.algebra
    if m.act(a.unit) != SparseMatrix.identity(m.dim):
        raise ModuleDefect("unit does not act as the identity")
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = m.action[i] * m.action[j]
            rhs = SparseMatrix.zero(m.dim, m.dim)
            for k, c in a.sc.product(i, j).items():
                rhs = rhs + m.action[k].scale(c)
            if lhs != rhs:
                raise ModuleDefect(f"action is not multiplicative at basis pair ({i}, {j})")


def regular_module(a: Algebra) -> ModuleRep:
    return ModuleRep(a, a.dim, [a.basis_left_mult(i) for i in range(a.dim)],
                     name="regular", check=False)


def is_intertwiner(t: SparseMatrix, m: ModuleRep, n: ModuleRep) -> bool:
    if m.algebra != n.algebra or t.cols != m.dim or t.rows != n.dim:
        return False
    gens = m.algebra.gens or [unit_vector(m.algebra.dim, i) for i in range(m.algebra.dim)]
    return all(t * m.act(g) == n.act(g) * t for g in gens)


class HomBasis:
    def __init__(self, source: ModuleRep, target: ModuleRep,
                 basis: Sequence[SparseMatrix]):
        self.source = source
        self.target = target
        self.basis = tuple(basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates_of(self, t: SparseMatrix) -> Vector:
        """Coordinates of an intertwiner in this basis (it must lie in the span)."""
        cols = [_vectorize(b) for b in self.basis]
        target = _vectorize(t)
        system = SparseMatrix.from_columns(cols, len(target))
        from .linalg import solve
        x = solve(system, target)
        if x is None:
            raise HochkitError("matrix is not in the span of the Hom basis")
        return x


def _vectorize(t: SparseMatrix) -> Vector:
    out = [ZERO] * (t.rows * t.cols)
    for r, c, v in t.entries():
        out[r * t.cols + c] = v
    return tuple(out)


def hom_space(m: ModuleRep, n: ModuleRep) -> HomBasis:
    """Basis of the A-linear maps M -> N via one nullspace computation."""
    if m.algebra != n.algebra:
        raise AlgebraMismatch("hom_space needs modules over the same algebra")
    a = m.algebra
    gens = a.gens or [unit_vector(a.dim, i) for i in range(a.dim)]
    # unknowns: T[r, c], r < n.dim, c < m.dim, vectorized row-major
    rows: list[dict[int, CycScalar]] = []
    for g in gens:
        rho_m = m.act(g)
        rho_n = n.act(g)
        for r in range(n.dim):
            for c in range(m.dim):
                row: dict[int, CycScalar] = {}
                for k, v in ((k, rho_m.entry(k, c)) for k in range(m.dim)):
                    if v:
                        row[r * m.dim + k] = row.get(r * m.dim + k, ZERO) + v
                for k in range(n.dim):
                    v = rho_n.entry(r, k)
                    if v:
                        key = k * m.dim + c
                        s = row.get(key, ZERO) - v
                        if s:
                            row[key] = s
                        elif key in row:
                            del row[key]
                if row:
                    rows.append(row)
    system = SparseMatrix.from_rows(rows, n.dim * m.dim)
    basis = []
    for v in nullspace(system).basis:
        entries = {}
        for idx, x in enumerate(v):
            if x:
                entries[divmod(idx, m.dim)] = x
        basis.append(SparseMatrix(n.dim, m.dim, entries))
    return HomBasis(m, n, basis)


def multiplicity_vector(m: ModuleRep, simples: Sequence[ModuleRep]) -> tuple[int, ...]:
    """Hom dimensions against a fixed list of simples; the working notion of
    isomorphism class for semisimple fixtures."""
    return tuple(hom_space(s, m).dim for s in simples)


# --- simples registry ---------------------------------------------------------

def attach_simples(a: Algebra, simples: Sequence[ModuleRep]) -> None:
    a.simple_reps = tuple(simples)


def simples_of(a: Algebra) -> tuple[ModuleRep, ...]:
    """A complete list of simple modules: attached by the fixtures for group
    algebras, derived structurally for combinators."""
    if a.simple_reps is not None:
        return a.simple_reps
    kind = a.provenance[0]
    if kind == "field":
        result = (ModuleRep(a, 1, [SparseMatrix.identity(1)], name="1", check=False),)
    elif kind == "matrix":
        n = a.provenance[1]
        action = []
        for i in range(n):
            for j in range(n):
                action.append(SparseMatrix(n, n, {(i, j): ONE}))
        result = (ModuleRep(a, n, action, name=f"col{n}", check=False),)
    elif kind == "opposite":
        base = a.provenance[1]
        result = tuple(_as_module_over(s.dual(), a) for s in simples_of(base))
    elif kind == "tensor":
        left, right = a.provenance[1], a.provenance[2]
        out = []
        for s in simples_of(left):
            for t in simples_of(right):
                action = []
                for i in range(left.dim):
                    for j in range(right.dim):
                        action.append(kron(s.action[i], t.action[j]))
                out.append(ModuleRep(a, s.dim * t.dim, action,
                                     name=f"{s.name}(x){t.name}", check=False))
        result = tuple(out)
    else:
        raise MissingSimples(f"no simple modules known for {a!r}")
    a.simple_reps = result
    return result


def _as_module_over(m: ModuleRep, a: Algebra) -> ModuleRep:
    """Re-tag a module whose algebra is structurally equal to `a`."""
    if m.algebra != a:
        raise AlgebraMismatch("module algebra does not match")
    return ModuleRep(a, m.dim, m.action, name=m.name, check=False)


# --- balanced tensor products ---------------------------------------------------

class BalancedTensor:
    """M (x)_A N presented as a quotient of M (x) N: a projection onto
    complement coordinates, the coordinate section, and the relation matrix
    that was quotiented out (kept for well-definedness checks)."""

    def __init__(self, dim: int, project: SparseMatrix, include: SparseMatrix,
                 relations: SparseMatrix):
        self.dim = dim
        self.project = project
        self.include = include
        self.relations = relations

    def descend(self, big: SparseMatrix, check: bool = True) -> SparseMatrix:
        """Induced map on the quotient of an ambient map; with check, verify
        the map preserves the relation subspace (well-definedness)."""
        if check and not (self.project * (big * self.relations)).is_zero():
            raise HochkitError("ambient map does not descend to the quotient")
        return self.project * (big * self.include)


def balanced_tensor(mid: Algebra,
                    right_act: Callable[[Vector], SparseMatrix], m_dim: int,
                    left_act: Callable[[Vector], SparseMatrix], n_dim: int) -> BalancedTensor:
    """Quotient of M (x) N by span{ m.a (x) n - m (x) a.n } over the
    generators of `mid` (products of generators are spanned, so this is the
    full relation space).  Index convention: (mu, nu) -> mu * n_dim + nu."""
    if not mid.is_semisimple():
        raise MiddleNotSemisimple(
            f"balanced tensor over non-semisimple algebra {mid!r} refused")
    ambient = m_dim * n_dim
    if ambient > MAX_COORDINATES:
        raise DegreeCapExceeded(f"tensor ambient {ambient} exceeds size guard")
    gens = mid.gens or [unit_vector(mid.dim, i) for i in range(mid.dim)]
    id_m = SparseMatrix.identity(m_dim)
    id_n = SparseMatrix.identity(n_dim)
    blocks = []
    for g in gens:
        rel = kron(right_act(g), id_n) - kron(id_m, left_act(g))
        blocks.append(rel)
    total_cols = sum(b.cols for b in blocks)
    entries = {}
    offset = 0
    for b in blocks:
        for r, c, v in b.entries():
            entries[(r, offset + c)] = v
        offset += b.cols
    relations = SparseMatrix(ambient, total_cols, entries)
    from .linalg import cokernel_projector
    complement, project = cokernel_projector(relations)
    include_entries = {}
    for k, basis_vec in enumerate(complement.basis):
        coord = next(i for i, x in enumerate(basis_vec) if x)
        include_entries[(coord, k)] = ONE
    include = SparseMatrix(ambient, complement.dim, include_entries)
    return BalancedTensor(complement.dim, project, include, relations)


def tensor_over(m: ModuleRep, n: ModuleRep) -> BalancedTensor:
    """M (x)_A N for M a right A-module (carried over opposite(A)) and N a
    left A-module."""
    a = n.algebra
    if m.algebra != opposite(a):
        raise AlgebraMismatch("left factor must be a module over opposite(A)")
    return balanced_tensor(a, lambda g: m.act(g), m.dim, lambda g: n.act(g), n.dim)


# --- bimodule kernels -----------------------------------------------------------

class Bimodule:
    """A kernel from `source` to `target`: a (target, source)-bimodule whose
    underlying module lives over tensor(target, opposite(source))."""

    def __init__(self, source: Algebra, target: Algebra, underlying: ModuleRep,
                 name: str = ""):
        self.source = source
        self.target = target
        self.underlying = underlying
        self.carrier = tensor(target, opposite(source))
        if underlying.algebra != self.carrier:
            raise AlgebraMismatch("underlying module must live over tensor(target, op(source))")
        self.name = name

    @property
    def dim(self) -> int:
        return self.underlying.dim

    def left_action(self, coords_target: Vector) -> SparseMatrix:
        """Action of an element of the target algebra (the left structure)."""
        return self.underlying.act(
            tuple(tc * us for tc in coords_target for us in self.source.unit))

    def right_action(self, coords_source: Vector) -> SparseMatrix:
        """Action of an element of the source algebra (the right structure)."""
        return self.underlying.act(
            tuple(ut * sc for ut in self.target.unit for sc in coords_source))

    def __repr__(self):
        return f"Bimodule({self.name or '?'}: {self.source!r} -> {self.target!r}, dim {self.dim})"


def regular_bimodule(a: Algebra) -> Bimodule:
    """The identity kernel: the algebra over its enveloping algebra."""
    action = []
    for i in range(a.dim):
        li = a.basis_left_mult(i)
        for j in range(a.dim):
            action.append(li * a.basis_right_mult(j))
    underlying = ModuleRep(tensor(a, opposite(a)), a.dim, action,
                           name="regular-bimodule", check=False)
    return Bimodule(a, a, underlying, name=f"id_{a.provenance[0]}")


def outer_kernel(v: ModuleRep, w: ModuleRep, source: Algebra) -> Bimodule:
    """Kernel W (x) V from `source` to w.algebra, where V is a right
    `source`-module (a ModuleRep over opposite(source)) and W a left module."""
    if v.algebra != opposite(source):
        raise AlgebraMismatch("outer kernel needs V over opposite(source)")
    b = w.algebra
    action = []
    for i in range(b.dim):
        for j in range(source.dim):
            action.append(kron(w.action[i], v.action[j]))
    underlying = ModuleRep(tensor(b, opposite(source)), w.dim * v.dim, action,
                           name=f"{w.name}(x){v.name}", check=False)
    return Bimodule(source, b, underlying, name=f"outer({v.name},{w.name})")


class AppliedKernel:
    """apply_kernel output plus the data needed to push morphisms through."""

    def __init__(self, module: ModuleRep, quotient: BalancedTensor, kernel: Bimodule):
        self.module = module
        self.quotient = quotient
        self.kernel = kernel

    def map_morphism(self, mu: SparseMatrix) -> SparseMatrix:
        """The functor on morphisms: mu: M -> M induces id_K (x) mu on K (x)_A M."""
        big = kron(SparseMatrix.identity(self.kernel.dim), mu)
        return self.quotient.descend(big)


def apply_kernel_full(k: Bimodule, m: ModuleRep) -> AppliedKernel:
    if m.algebra != k.source:
        raise AlgebraMismatch("module must live over the kernel's source algebra")
    a = k.source
    bt = balanced_tensor(a, lambda g: k.right_action(g), k.dim,
                         lambda g: m.act(g), m.dim)
    target = k.target
    id_m = SparseMatrix.identity(m.dim)
    # well-definedness on target generators; unit and products descend with them
    for g in target.gens:
        bt.descend(kron(k.left_action(g), id_m), check=True)
    action = []
    for i in range(target.dim):
        big = kron(k.left_action(unit_vector(target.dim, i)), id_m)
        action.append(bt.descend(big, check=False))
    module = ModuleRep(target, bt.dim, action,
                       name=f"{k.name}({m.name})", check=False)
    return AppliedKernel(module, bt, k)


def apply_kernel(k: Bimodule, m: ModuleRep) -> ModuleRep:
    """The integral transform with kernel k applied to m: K (x)_A M."""
    return apply_kernel_full(k, m).module


def convolve(k1: Bimodule, k2: Bimodule) -> Bimodule:
    """Composite kernel: apply(convolve(k1, k2)) = apply(k2) o apply(k1)."""
    if k1.target != k2.source:
        raise AlgebraMismatch("middle algebras do not match")
    b = k1.target
    bt = balanced_tensor(b, lambda g: k2.right_action(g), k2.dim,
                         lambda g: k1.left_action(g), k1.dim)
    a, c = k1.source, k2.target
    # well-definedness on the outer generators
    for g in c.gens:
        bt.descend(kron(k2.left_action(g), SparseMatrix.identity(k1.dim)), check=True)
    for g in a.gens:
        bt.descend(kron(SparseMatrix.identity(k2.dim), k1.right_action(g)), check=True)
    action = []
    for i in range(c.dim):
        left = k2.left_action(unit_vector(c.dim, i))
        for j in range(a.dim):
            right = k1.right_action(unit_vector(a.dim, j))
            action.append(bt.descend(kron(left, right), check=False))
    underlying = ModuleRep(tensor(c, opposite(a)), bt.dim, action,
                           name=f"{k2.name}*{k1.name}", check=False)
    return Bimodule(a, c, underlying, name=f"({k2.name} o {k1.name})")


def dual_kernel(k: Bimodule) -> Bimodule:
    """The adjoint kernel: the linear dual with swapped actions.  With the
    trivial Serre twist this is simultaneously the left and the right
    adjoint, which is why both algebras must carry Frobenius data."""
    if k.source.serre is None or k.target.serre is None:
        raise MissingSerreData("dual kernel needs Frobenius data on both algebras")
    a, b = k.source, k.target
    action = []
    for i in range(a.dim):
        for j in range(b.dim):
            action.append(k.underlying.action[j * a.dim + i].transpose())
    underlying = ModuleRep(tensor(a, opposite(b)), k.dim, action,
                           name=f"{k.underlying.name}^", check=False)
    return Bimodule(b, a, underlying, name=f"dual({k.name})")


def parallel_kernels(k1: Bimodule, k2: Bimodule) -> Bimodule:
    """Disjoint-union kernel: acts as k1 on the first tensor factor and k2 on
    the second (used by the surface evaluator for bystander circles)."""
    a = tensor(k1.source, k2.source)
    b = tensor(k1.target, k2.target)
    u1, u2 = k1.underlying, k2.underlying
    action = []
    for bi in range(b.dim):
        b1, b2 = divmod(bi, k2.target.dim)
        for ai in range(a.dim):
            a1, a2 = divmod(ai, k2.source.dim)
            m1 = u1.action[b1 * k1.source.dim + a1]
            m2 = u2.action[b2 * k2.source.dim + a2]
            action.append(kron(m1, m2))
    underlying = ModuleRep(tensor(b, opposite(a)), k1.dim * k2.dim, action,
                           name=f"{u1.name}||{u2.name}", check=False)
    return Bimodule(a, b, underlying, name=f"({k1.name} || {k2.name})")


# --- Ext via the reduced bar resolution ----------------------------------------

MAX_EXT_DEGREE = 32


def ext_dims(m: ModuleRep, n: ModuleRep, maxdeg: int,
             max_coordinates: int = MAX_COORDINATES,
             degree_cap: int = MAX_EXT_DEGREE) -> list[int]:
    """dim Ext^i(M, N) for 0 <= i <= maxdeg, from the reduced bar resolution
    of M; degree 0 always agrees with hom_space."""
    if maxdeg > degree_cap:
        raise DegreeCapExceeded(
            f"degree {maxdeg} exceeds the configured cap {degree_cap}")
    if m.algebra != n.algebra:
        raise AlgebraMismatch("ext needs modules over the same algebra")
    a = m.algebra
    split = a_unit_split(a)
    dbar = len(split.bar_indices)
    # cochain spaces C^p = Hom(Abar^(x p) (x) M, N)
    dims = []
    for p in range(maxdeg + 2):
        size = (dbar ** p) * m.dim * n.dim
        if size > max_coordinates:
            raise DegreeCapExceeded(
                f"cochain space at degree {p} has {size} coordinates")
        dims.append(size)
    deltas = [_ext_delta(a, split, m, n, p) for p in range(maxdeg + 1)]
    out = []
    for p in range(maxdeg + 1):
        kernel = dims[p] - rank(deltas[p])
        image = rank(deltas[p - 1]) if p >= 1 else 0
        assert kernel - image >= 0
        out.append(kernel - image)
    return out


class UnitSplit:
    """A = C.unit (+) span{e_k : k != i0}, where i0 is a basis coordinate on
    which the unit is supported.  `split` writes a coordinate vector as
    (unit coefficient, reduced coordinates)."""

    def __init__(self, algebra: Algebra):
        u = algebra.unit
        self.algebra = algebra
        self.i0 = next(i for i, c in enumerate(u) if c)
        self.u0 = u[self.i0]
        self.bar_indices = tuple(i for i in range(algebra.dim) if i != self.i0)
        self.pos = {k: t for t, k in enumerate(self.bar_indices)}
        self._bar_products: dict[tuple[int, int], tuple[CycScalar, dict[int, CycScalar]]] = {}

    def split_sparse(self, coords: dict[int, CycScalar]) -> tuple[CycScalar, dict[int, CycScalar]]:
        eps = coords.get(self.i0, ZERO) / self.u0
        reduced = {}
        support = set(coords)
        if eps:
            support.update(k for k, u in enumerate(self.algebra.unit) if u)
        for k in support:
            if k == self.i0:
                continue
            v = coords.get(k, ZERO)
            u = self.algebra.unit[k]
            adj = v - eps * u if (eps and u) else v
            if adj:
                reduced[self.pos[k]] = adj
        return eps, reduced

    def bar_product(self, s: int, t: int):
        """Product of reduced basis elements s, t (positions in bar_indices),
        split as (unit part, reduced part)."""
        got = self._bar_products.get((s, t))
        if got is None:
            prod = self.algebra.sc.product(self.bar_indices[s], self.bar_indices[t])
            got = self.split_sparse(prod)
            self._bar_products[(s, t)] = got
        return got


_SPLIT_CACHE: dict[int, UnitSplit] = {}


def a_unit_split(a: Algebra) -> UnitSplit:
    key = id(a)
    if key not in _SPLIT_CACHE:
        _SPLIT_CACHE[key] = UnitSplit(a)
    return _SPLIT_CACHE[key]


def _ext_delta(a: Algebra, split: UnitSplit, m: ModuleRep, n: ModuleRep,
               p: int) -> SparseMatrix:
    """Coboundary C^p -> C^(p+1) for C^p = Hom(Abar^p (x) M, N).

    Cochain coordinates: f[(word, mu) -> nu] indexed nu + n.dim * (mu + m.dim * word),
    word in base-dbar digits, leftmost argument most significant.
    """
    dbar = len(split.bar_indices)
    size_p = (dbar ** p) * m.dim * n.dim
    size_q = (dbar ** (p + 1)) * m.dim * n.dim

    def f_index(word: tuple[int, ...], mu: int, nu: int) -> int:
        w = 0
        for d in word:
            w = w * dbar + d
        return nu + n.dim * (mu + m.dim * w)

    entries: dict[tuple[int, int], CycScalar] = {}

    def add(r: int, c: int, v: CycScalar):
        if not v:
            return
        s = entries.get((r, c), ZERO) + v
        if s:
            entries[(r, c)] = s
        elif (r, c) in entries:
            del entries[(r, c)]

    last_sign = ONE if (p + 1) % 2 == 0 else -ONE
    for w in range(dbar ** (p + 1)):
        word = []
        x = w
        for _ in range(p + 1):
            word.append(x % dbar)
            x //= dbar
        word.reverse()
        word = tuple(word)
        rho_first = n.action[split.bar_indices[word[0]]]
        rho_last = m.action[split.bar_indices[word[p]]]
        rest, head = word[1:], word[:p]
        for mu in range(m.dim):
            # rho_N(a_1) f(a_2..a_{p+1}, mu)
            for r_out, nu_mid, v in rho_first.entries():
                add(f_index(word, mu, r_out), f_index(rest, mu, nu_mid), v)
            # interior merges; the unit component of a product is degenerate
            sign = ONE
            for i in range(p):
                sign = -sign
                _eps, reduced = split.bar_product(word[i], word[i + 1])
                for d, coeff in reduced.items():
                    new_word = word[:i] + (d,) + word[i + 2:]
                    for nu in range(n.dim):
                        add(f_index(word, mu, nu),
                            f_index(new_word, mu, nu), sign * coeff)
            # (-1)^(p+1) f(a_1..a_p, a_{p+1}.m)
            for r_, v in ((r_, rho_last.entry(r_, mu)) for r_ in range(m.dim)):
                if v:
                    for nu in range(n.dim):
                        add(f_index(word, mu, nu),
                            f_index(head, r_, nu), last_sign * v)
    return SparseMatrix(size_q, size_p, entries)
