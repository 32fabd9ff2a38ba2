"""Serre/partial traces, the pairing on HH_0, Chern characters, transfer
maps, and the identity verifiers built from them.

Normalization, fixed throughout: the trace on End(M) is the ordinary
matrix trace, and the trace on bimodule endomorphisms (central elements)
is the regular trace of the algebra.  That pair is forced by asking the
pairing to be nondegenerate and the Riemann-Roch identity to hold on the
nose.  The Serre twist is trivial in this setting (symmetric Frobenius
algebras only); `_tau` is the explicit hook where a nontrivial twist
would act, and it is the identity here.

Chern characters are never written down from idempotent formulas: they
are solved from the defining trace property, so the Riemann-Roch and
Cardy checks are genuine theorem tests rather than circular ones.  For an
irreducible module the solved class is the block idempotent divided by
the module's dimension.
"""

from __future__ import annotations

from typing import Callable, Optional

from .algebra import (
    Algebra, CentralElement, center_basis, matrix_algebra, opposite,
    regular_trace, tensor,
)
from .errors import (
    AlgebraMismatch, AugmentationNot1Dim, MissingSerreData, NotIntertwiner,
    RoutesDisagree, ShapeMismatch, SingularGram,
)
from .linalg import SparseMatrix, Vector, kron, rank, solve, vec
from .modules import (
    Bimodule, ModuleRep, apply_kernel, apply_kernel_full, convolve,
    dual_kernel, hom_space, is_intertwiner, simples_of,
)
from .scalars import CycScalar, ONE, ZERO, cyc, format_scalar


class MukaiClass:
    """An element of HH_0: a central element of an algebra with Frobenius data."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords: Vector, *, _checked=False):
        if algebra.serre is None:
            raise MissingSerreData("Mukai classes need Frobenius data")
        coords = vec(coords)
        if not _checked:
            CentralElement(algebra, coords)  # validates centrality
        self.algebra = algebra
        self.coords = coords

    def __add__(self, other: "MukaiClass") -> "MukaiClass":
        self._same(other)
        return MukaiClass(self.algebra,
                          tuple(a + b for a, b in zip(self.coords, other.coords)),
                          _checked=True)

    def __sub__(self, other: "MukaiClass") -> "MukaiClass":
        self._same(other)
        return MukaiClass(self.algebra,
                          tuple(a - b for a, b in zip(self.coords, other.coords)),
                          _checked=True)

    def scale(self, c) -> "MukaiClass":
        c = cyc(c)
        return MukaiClass(self.algebra, tuple(c * x for x in self.coords), _checked=True)

    def mul(self, other: "MukaiClass") -> "MukaiClass":
        self._same(other)
        return MukaiClass(self.algebra, self.algebra.mul(self.coords, other.coords),
                          _checked=True)

    def _same(self, other: "MukaiClass"):
        if self.algebra != other.algebra:
            raise AlgebraMismatch("Mukai classes live over different algebras")

    def __eq__(self, other):
        return isinstance(other, MukaiClass) and self.algebra == other.algebra \
            and self.coords == other.coords

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return f"MukaiClass[{', '.join(format_scalar(c) for c in self.coords)}]"


def _tau(v: MukaiClass) -> MukaiClass:
    # Serre-twist hook; the twist is trivial for symmetric algebras.
    return v


class CheckReport:
    """Outcome of one identity check: every compared pair of scalars, and
    whether all of them matched exactly."""

    def __init__(self, name: str, check_id: str):
        self.name = name
        self.check_id = check_id
        self.comparisons: list[tuple[str, str, str, bool]] = []
        self.notes: list[str] = []

    def compare(self, label: str, left, right) -> bool:
        ok = left == right
        self.comparisons.append((label, _fmt(left), _fmt(right), ok))
        return ok

    def note(self, text: str):
        self.notes.append(text)

    @property
    def ok(self) -> bool:
        return all(ok for *_, ok in self.comparisons)

    def failures(self) -> list[tuple[str, str, str]]:
        return [(label, l, r) for label, l, r, ok in self.comparisons if not ok]

    def __repr__(self):
        status = "ok" if self.ok else f"FAIL({len(self.failures())})"
        return f"CheckReport({self.name}: {status}, {len(self.comparisons)} comparisons)"


def _fmt(x) -> str:
    if isinstance(x, CycScalar):
        return format_scalar(x)
    if isinstance(x, MukaiClass):
        return repr(x)
    return str(x)


# --- traces --------------------------------------------------------------------

def serre_trace(m: ModuleRep, f: SparseMatrix) -> CycScalar:
    """Trace of an intertwiner on a module (the Hom-pairing trace)."""
    if not is_intertwiner(f, m, m):
        raise NotIntertwiner("serre_trace needs an algebra-linear endomorphism")
    return f.trace()


def generalized_trace(mu: SparseMatrix, f_dim: int, g_dim: int, e_dim: int) -> SparseMatrix:
    """Partial trace over the second tensor factor: a map F (x) E -> G (x) E
    becomes a map F -> G.  Index convention: (i_F * e_dim + i_E)."""
    if mu.rows != g_dim * e_dim or mu.cols != f_dim * e_dim:
        raise ShapeMismatch(
            f"expected {g_dim * e_dim}x{f_dim * e_dim}, got {mu.rows}x{mu.cols}")
    entries: dict[tuple[int, int], CycScalar] = {}
    for r, c, v in mu.entries():
        ig, ie_out = divmod(r, e_dim)
        if_, ie_in = divmod(c, e_dim)
        if ie_out != ie_in:
            continue
        key = (ig, if_)
        s = entries.get(key, ZERO) + v
        if s:
            entries[key] = s
        elif key in entries:
            del entries[key]
    return SparseMatrix(g_dim, f_dim, entries)


def assemble_split_map(e: SparseMatrix, g: SparseMatrix, phi: SparseMatrix,
                       dim_e: int, dim_g: int, dim_h: int) -> SparseMatrix:
    """Build f: (E (+) G) -> H (x) (E (+) G) in the block form [[e, phi], [0, g]]
    coming from a split exact sequence; index (i_H * (e+g) + j)."""
    total = dim_e + dim_g
    entries = {}
    for r, c, v in e.entries():  # e: E -> H (x) E, index (i_H * e + i_E)
        ih, ie = divmod(r, dim_e)
        entries[(ih * total + ie, c)] = v
    for r, c, v in g.entries():  # g: G -> H (x) G
        ih, ig = divmod(r, dim_g)
        entries[(ih * total + dim_e + ig, dim_e + c)] = v
    for r, c, v in phi.entries():  # phi: G -> H (x) E
        ih, ie = divmod(r, dim_e)
        entries[(ih * total + ie, dim_e + c)] = v
    return SparseMatrix(dim_h * total, total, entries)


def _partial_trace_first(mu: SparseMatrix, dim_h: int, dim_x: int) -> Vector:
    """Tr_X of x: X -> H (x) X, a vector in H."""
    if mu.rows != dim_h * dim_x or mu.cols != dim_x:
        raise ShapeMismatch(f"expected {dim_h * dim_x}x{dim_x}, got {mu.rows}x{mu.cols}")
    out = [ZERO] * dim_h
    for r, c, v in mu.entries():
        ih, ix = divmod(r, dim_x)
        if ix == c:
            out[ih] = out[ih] + v
    return tuple(out)


def trace_triangle_check(e: SparseMatrix, f: SparseMatrix, g: SparseMatrix,
                         dim_e: int, dim_g: int, dim_h: int) -> CheckReport:
    """For maps e: E -> H(x)E, g: G -> H(x)G and f on the split sum commuting
    with the inclusion and projection, the alternating sum of partial traces
    vanishes: Tr_E(e) - Tr_F(f) + Tr_G(g) = 0 in H."""
    report = CheckReport("trace triangle additivity", "trace-additivity")
    total = dim_e + dim_g
    if f.rows != dim_h * total or f.cols != total:
        raise ShapeMismatch("middle map has wrong shape for the split sum")
    # split hypothesis: f has no E -> G component, and matches e and g on blocks
    hypotheses_ok = True
    for r, c, v in f.entries():
        ih, j = divmod(r, total)
        if c < dim_e and j >= dim_e and v:
            hypotheses_ok = False
    report.compare("split hypothesis (no E->G block)", hypotheses_ok, True)
    for r, c, v in e.entries():
        ih, ie = divmod(r, dim_e)
        if f.entry(ih * total + ie, c) != v:
            report.compare("f restricts to e on E", False, True)
            break
    for r, c, v in g.entries():
        ih, ig = divmod(r, dim_g)
        if f.entry(ih * total + dim_e + ig, dim_e + c) != v:
            report.compare("f induces g on G", False, True)
            break
    tr_e = _partial_trace_first(e, dim_h, dim_e)
    tr_f = _partial_trace_first(f, dim_h, total)
    tr_g = _partial_trace_first(g, dim_h, dim_g)
    defect = tuple(a - b + c for a, b, c in zip(tr_e, tr_f, tr_g))
    report.compare("Tr_E(e) - Tr_F(f) + Tr_G(g)",
                   tuple(format_scalar(x) for x in defect),
                   tuple("0" for _ in defect))
    if not report.ok:
        report.note(f"defect vector in H: {[format_scalar(x) for x in defect]}")
    return report


def hochschild_trace(a: Algebra, z: Vector) -> CycScalar:
    """The trace functional on HH_0: the regular trace of the element (for a
    group algebra, the regular character)."""
    if a.serre is None:
        raise MissingSerreData("hochschild_trace needs Frobenius data")
    return regular_trace(a, z)


# --- Chern characters and the pairing --------------------------------------------

def _center_gram(a: Algebra) -> tuple[list[CentralElement], SparseMatrix]:
    basis = center_basis(a)
    n = len(basis)
    entries = {}
    for i in range(n):
        for j in range(n):
            v = hochschild_trace(a, a.mul(basis[i].coords, basis[j].coords))
            if v:
                entries[(i, j)] = v
    return basis, SparseMatrix(n, n, entries)


def _solve_against_center(a: Algebra, rhs_of: Callable[[CentralElement], CycScalar]) -> MukaiClass:
    """The unique central z with hochschild_trace(z * f) = rhs(f) for every
    central f, via the Gram system of the pairing on the center."""
    basis, gram = _center_gram(a)
    rhs = tuple(rhs_of(f) for f in basis)
    x = solve(gram, rhs)
    if x is None or rank(gram) != len(basis):
        raise SingularGram("trace pairing on the center is singular here")
    coords = [ZERO] * a.dim
    for c, z in zip(x, basis):
        if c:
            coords = [acc + c * zc for acc, zc in zip(coords, z.coords)]
    return MukaiClass(a, tuple(coords), _checked=True)


def iota_solve(m: ModuleRep, e: SparseMatrix) -> MukaiClass:
    """The class of an endomorphism: the unique central z with
    hochschild_trace(z * f) = trace(f_M o e) for every central f."""
    a = m.algebra
    if a.serre is None:
        raise MissingSerreData("iota_solve needs Frobenius data")
    if not is_intertwiner(e, m, m):
        raise NotIntertwiner("iota_solve needs an algebra-linear endomorphism")
    return _solve_against_center(a, lambda f: (m.act(f.coords) * e).trace())


def chern(m: ModuleRep) -> MukaiClass:
    """Chern character: the class of the identity endomorphism, solved from
    the defining property  trace_{HH}(ch(M) * f) = trace(f on M)."""
    a = m.algebra
    if a.serre is None:
        raise MissingSerreData("chern needs Frobenius data")
    return _solve_against_center(a, lambda f: m.character(f.coords))


def chern_additivity_check(m: ModuleRep, n: ModuleRep) -> CheckReport:
    report = CheckReport("chern additivity on split triangles", "chern-additivity")
    both = chern(m.direct_sum(n))
    summed = chern(m) + chern(n)
    report.compare("ch(M (+) N) = ch(M) + ch(N)", both, summed)
    if not report.ok:
        diff = both - summed
        report.note(f"defect vector: {[format_scalar(c) for c in diff.coords]}")
    return report


def mukai_pairing(v: MukaiClass, w: MukaiClass) -> CycScalar:
    """<v, w> = trace_{HH}(tau(v) * w); symmetric here since the twist is trivial."""
    if v.algebra != w.algebra:
        raise AlgebraMismatch("pairing needs classes over the same algebra")
    return hochschild_trace(v.algebra, v.algebra.mul(_tau(v).coords, w.coords))


class PairingReport:
    """A pairing evaluation with enough context to recompute it: the value is
    always the trace of the central product of the two classes."""

    __slots__ = ("left", "right", "value", "method")

    def __init__(self, left: MukaiClass, right: MukaiClass, value: CycScalar,
                 method: str):
        assert value == hochschild_trace(left.algebra,
                                         left.algebra.mul(left.coords, right.coords))
        self.left = left
        self.right = right
        self.value = value
        self.method = method

    def __repr__(self):
        return f"PairingReport({format_scalar(self.value)} via {self.method})"


def pairing_report(v: MukaiClass, w: MukaiClass,
                   method: str = "trace-of-central-product") -> PairingReport:
    return PairingReport(v, w, mukai_pairing(v, w), method)


def euler_pairing(m: ModuleRep, n: ModuleRep) -> int:
    """chi(M, N) for semisimple algebras: dim Hom(M, N), higher Ext vanishing."""
    return hom_space(m, n).dim


def hrr_check(m: ModuleRep, n: ModuleRep) -> CheckReport:
    """<ch(M), ch(N)> = chi(M, N), exactly."""
    report = CheckReport("riemann-roch pairing identity", "riemann-roch")
    pairing = mukai_pairing(chern(m), chern(n))
    chi = euler_pairing(m, n)
    report.compare(f"<ch {m.name}, ch {n.name}> = chi", pairing, cyc(chi))
    return report


def todd(a: Algebra, augmentation: ModuleRep) -> MukaiClass:
    """The distinguished class of the designated one-dimensional structure
    module (for a group algebra: the trivial representation)."""
    if augmentation.dim != 1:
        raise AugmentationNot1Dim("structure module must be one-dimensional")
    return chern(augmentation)


def todd_hrr_check(a: Algebra, augmentation: ModuleRep, m: ModuleRep) -> CheckReport:
    report = CheckReport("euler characteristic via the structure class", "todd-euler")
    td = todd(a, augmentation)
    lhs = hochschild_trace(a, a.mul(td.coords, chern(m).coords))
    chi = hom_space(augmentation, m).dim
    report.compare(f"trace(Td * ch {m.name}) = chi({m.name})", lhs, cyc(chi))
    return report


def cardy_check(e_mod: ModuleRep, f_mod: ModuleRep,
                e: SparseMatrix, f: SparseMatrix) -> CheckReport:
    """<iota(e), iota(f)> equals the trace of T |-> f o T o e on Hom(E, F)."""
    report = CheckReport("cardy condition", "cardy")
    if not is_intertwiner(e, e_mod, e_mod) or not is_intertwiner(f, f_mod, f_mod):
        raise NotIntertwiner("cardy check needs intertwiner endomorphisms")
    pairing = mukai_pairing(iota_solve(e_mod, e), iota_solve(f_mod, f))
    homs = hom_space(e_mod, f_mod)
    operator_trace = ZERO
    if homs.dim:
        images = [f * t * e for t in homs.basis]
        for i, img in enumerate(images):
            coords = homs.coordinates_of(img)
            operator_trace = operator_trace + coords[i]
    report.compare("<iota(e), iota(f)> = tr(T -> f T e)", pairing, operator_trace)
    return report


# --- transfer maps ----------------------------------------------------------------

def adjoint_transfer(k: Bimodule, nu: MukaiClass) -> MukaiClass:
    """Pull a class on the target back along the kernel: the unique central z
    over the source with trace(z on S o mu) = trace(nu on K(S) o K(mu)) for
    every simple S and every basis intertwiner mu of End(S)."""
    a, b = k.source, k.target
    if nu.algebra != b:
        raise AlgebraMismatch("class must live over the kernel's target")
    if a.serre is None or b.serre is None:
        raise MissingSerreData("adjoint transfer needs Frobenius data on both sides")
    simples = simples_of(a)
    rows: list[list[CycScalar]] = []
    rhs: list[CycScalar] = []
    zbasis = center_basis(a)
    for s in simples:
        applied = apply_kernel_full(k, s)
        nu_action = applied.module.act(nu.coords)
        for mu in hom_space(s, s).basis:
            rows.append([(s.act(z.coords) * mu).trace() for z in zbasis])
            rhs.append((nu_action * applied.map_morphism(mu)).trace())
    system = SparseMatrix.from_dense(rows)
    x = solve(system, tuple(rhs))
    if x is None or rank(system) < len(zbasis):
        raise SingularGram("character system of the simples does not determine z")
    coords = [ZERO] * a.dim
    for c, z in zip(x, zbasis):
        if c:
            coords = [acc + c * zc for acc, zc in zip(coords, z.coords)]
    return MukaiClass(a, tuple(coords), _checked=True)


def pushforward(k: Bimodule, v: MukaiClass) -> MukaiClass:
    """The map on HH_0 induced by a kernel, computed by two independent
    routes that must agree exactly:

    route A: expand v over the Chern characters of the source simples and
    map ch(S) to ch(K(S));
    route B: solve the adjoint-transfer system <transfer(nu), v> = <nu, w>
    against the center of the target.

    Disagreement raises RoutesDisagree: it indicates an implementation bug
    and is never swallowed.
    """
    a, b = k.source, k.target
    if v.algebra != a:
        raise AlgebraMismatch("class must live over the kernel's source")
    # route A
    simples = simples_of(a)
    columns = [chern(s).coords for s in simples]
    system = SparseMatrix.from_columns(columns, a.dim)
    x = solve(system, v.coords)
    if x is None:
        raise SingularGram("simples' Chern characters do not span the center")
    route_a: Optional[MukaiClass] = None
    for c, s in zip(x, simples):
        if c:
            term = chern(apply_kernel(k, s)).scale(c)
            route_a = term if route_a is None else route_a + term
    if route_a is None:
        route_a = MukaiClass(b, (ZERO,) * b.dim, _checked=True)
    # route B
    zbasis_b, gram_b = _center_gram(b)
    rhs = []
    for z in zbasis_b:
        nu = MukaiClass(b, z.coords, _checked=True)
        pulled = adjoint_transfer(k, nu)
        rhs.append(hochschild_trace(a, a.mul(pulled.coords, v.coords)))
    y = solve(gram_b, tuple(rhs))
    if y is None:
        raise SingularGram("pairing on the target center is singular")
    coords = [ZERO] * b.dim
    for c, z in zip(y, zbasis_b):
        if c:
            coords = [acc + c * zc for acc, zc in zip(coords, z.coords)]
    route_b = MukaiClass(b, tuple(coords), _checked=True)
    if route_a != route_b:
        raise RoutesDisagree(
            f"pushforward routes disagree: {route_a!r} vs {route_b!r}")
    return route_a


def adjointness_check(k: Bimodule) -> CheckReport:
    """<v, K_* w>_target = <(dual K)_* v, w>_source on all center basis pairs."""
    report = CheckReport("adjointness of transfer maps", "adjoint-pairing")
    dk = dual_kernel(k)
    a, b = k.source, k.target
    za = [MukaiClass(a, z.coords, _checked=True) for z in center_basis(a)]
    zb = [MukaiClass(b, z.coords, _checked=True) for z in center_basis(b)]
    for i, vb in enumerate(zb):
        pulled = pushforward(dk, vb)
        for j, wa in enumerate(za):
            lhs = mukai_pairing(vb, pushforward(k, wa))
            rhs = mukai_pairing(pulled, wa)
            report.compare(f"pair ({i}, {j})", lhs, rhs)
    return report


def functoriality_check(k1: Bimodule, k2: Bimodule) -> CheckReport:
    """(K2 o K1)_* = (K2)_* o (K1)_* on the source center basis."""
    report = CheckReport("pushforward functoriality", "pushforward-composition")
    composed = convolve(k1, k2)
    a = k1.source
    for i, z in enumerate(center_basis(a)):
        v = MukaiClass(a, z.coords, _checked=True)
        direct = pushforward(composed, v)
        stepped = pushforward(k2, pushforward(k1, v))
        report.compare(f"basis vector {i}", direct, stepped)
    return report


def chern_commutation_check(k: Bimodule, m: ModuleRep) -> CheckReport:
    """Pushforward commutes with the Chern character: K_* ch(M) = ch(K(M))."""
    report = CheckReport("pushforward commutes with chern", "chern-commutation")
    lhs = pushforward(k, chern(m))
    rhs = chern(apply_kernel(k, m))
    report.compare(f"K_* ch({m.name}) = ch(K {m.name})", lhs, rhs)
    return report


def morita_kernel(a: Algebra, n: int) -> Bimodule:
    """The row-space kernel implementing the equivalence between A and
    M_n (x) A: carrier C^n (x) A with matrix action on the left and algebra
    multiplication on both sides."""
    b = tensor(matrix_algebra(n), a)
    dim_k = n * a.dim
    action = []
    for p in range(n):
        for q in range(n):
            e_pq = SparseMatrix(n, n, {(p, q): ONE})
            for x in range(a.dim):
                lx = a.basis_left_mult(x)
                for y in range(a.dim):
                    ry = a.basis_right_mult(y)
                    action.append(kron(e_pq, lx * ry))
    underlying = ModuleRep(tensor(b, opposite(a)), dim_k, action,
                           name=f"rows({n})", check=False)
    return Bimodule(a, b, underlying, name=f"morita({n})")


def cohomology_transport(k: Bimodule, nu: MukaiClass) -> MukaiClass:
    """Transport a central element along an equivalence kernel: the unique
    central element of the target acting on each K(S) by the same scalar by
    which nu acts on the simple S.  This is the degree-0 piece of the ring
    isomorphism on cohomology (distinct from the pushforward on homology)."""
    a, b = k.source, k.target
    if nu.algebra != a:
        raise AlgebraMismatch("element must live over the kernel's source")
    simples = simples_of(a)
    zbasis = center_basis(b)
    rows, rhs = [], []
    for s in simples:
        applied = apply_kernel_full(k, s)
        omega = s.act(nu.coords).trace() / cyc(s.dim)  # scalar action on S
        rows.append([applied.module.character(z.coords) for z in zbasis])
        rhs.append(omega * cyc(applied.module.dim))
    system = SparseMatrix.from_dense(rows)
    x = solve(system, tuple(rhs))
    if x is None or rank(system) < len(zbasis):
        raise SingularGram("kernel images do not determine the transported element")
    coords = [ZERO] * b.dim
    for c, z in zip(x, zbasis):
        if c:
            coords = [acc + c * zc for acc, zc in zip(coords, z.coords)]
    return MukaiClass(b, tuple(coords), _checked=True)


def morita_isometry_check(a: Algebra, n: int,
                          hh_maxdeg: Optional[int] = None) -> CheckReport:
    """The Morita kernel induces a bijective isometry on HH_0; the ring
    structure transports along the kernel on HH^0 and the two transports
    intertwine central multiplication (the module structure).  Optionally
    also compare all Hochschild dimensions through hh_maxdeg."""
    report = CheckReport(f"morita invariance vs M_{n} amplification", "morita-invariance")
    if a.serre is None:
        raise MissingSerreData("morita check needs Frobenius data")
    k = morita_kernel(a, n)
    b = k.target
    za = center_basis(a)
    zb = center_basis(b)
    report.compare("HH_0 dimensions equal", len(za), len(zb))
    images = []
    for z in za:
        images.append(pushforward(k, MukaiClass(a, z.coords, _checked=True)))
    image_matrix = SparseMatrix.from_columns([im.coords for im in images], b.dim)
    report.compare("pushforward is injective on HH_0", rank(image_matrix), len(za))
    # isometry on all basis pairs
    for i in range(len(za)):
        vi = MukaiClass(a, za[i].coords, _checked=True)
        for j in range(len(za)):
            vj = MukaiClass(a, za[j].coords, _checked=True)
            report.compare(
                f"pairing preserved ({i}, {j})",
                mukai_pairing(images[i], images[j]),
                mukai_pairing(vi, vj))
    # ring structure on HH^0 transports multiplicatively
    transports = [cohomology_transport(k, MukaiClass(a, z.coords, _checked=True))
                  for z in za]
    unit_a = MukaiClass(a, a.unit, _checked=True)
    report.compare("ring transport sends unit to unit",
                   cohomology_transport(k, unit_a),
                   MukaiClass(b, b.unit, _checked=True))
    for i in range(len(za)):
        vi = MukaiClass(a, za[i].coords, _checked=True)
        for j in range(len(za)):
            vj = MukaiClass(a, za[j].coords, _checked=True)
            report.compare(
                f"ring transport multiplicative ({i}, {j})",
                cohomology_transport(k, vi.mul(vj)),
                transports[i].mul(transports[j]))
            # homology is a module over cohomology, and both maps respect it
            report.compare(
                f"central module structure intertwined ({i}, {j})",
                pushforward(k, vi.mul(vj)),
                transports[i].mul(images[j]))
    if hh_maxdeg is not None:
        from .hochschild import hh_cohomology_dims, hh_homology_dims
        report.compare("homology dims equal",
                       hh_homology_dims(a, hh_maxdeg).dims,
                       hh_homology_dims(b, hh_maxdeg).dims)
        report.compare("cohomology dims equal",
                       hh_cohomology_dims(a, hh_maxdeg).dims,
                       hh_cohomology_dims(b, hh_maxdeg).dims)
    else:
        report.note("hochschild dimension comparison skipped (no degree requested)")
    return report


def pairing_gram(a: Algebra) -> SparseMatrix:
    """Gram matrix of the pairing on the center basis; full rank exactly when
    the pairing is nondegenerate on HH_0."""
    _, gram = _center_gram(a)
    return gram
