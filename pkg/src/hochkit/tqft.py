"""Closed-surface evaluator over a group algebra.

A surface is described as a word of elementary cobordisms read left to
right, starting and ending with empty boundary:

    cap_in       ()  -> (o)         the disk, entering
    cap_out      (o) -> ()          the disk, leaving
    pants_split  (o) -> (o)(o)      pair of pants, one circle in
    pants_merge  (o)(o) -> (o)      pair of pants, two circles in

A generator may carry a position suffix `@i` naming the circle it acts
on; bystander circles pass through identity kernels.  `genus:g` expands
to cap_in (pants_split pants_merge)^g cap_out.

Each circle carries the group algebra A; a word evaluates by convolving
the generator kernels, and a closed word lands in a kernel from the base
field to itself, a plain vector space whose dimension is the invariant.
The pants kernels are the diagonal bimodules (restriction and induction
along g -> (g, g)), and the caps use the trivial representation, which is
why the evaluator requires a group algebra.  The sphere computes the
invariants of the trivial module and the torus computes dim HH_0: the
number of conjugacy classes.

For genus >= 2 the CLI prints the commutator-solution count
|Hom(pi_1, G)| / |G| alongside; the two normalizations differ and only
genus 0 and 1 are hard assertions.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .algebra import Algebra, field_algebra, opposite, tensor
from .errors import ArityMismatch, MissingAugmentation, ParseError
from .linalg import SparseMatrix, kron
from .modules import (
    Bimodule, ModuleRep, convolve, parallel_kernels, regular_bimodule,
)
GENERATORS = {
    "cap_in": (0, 1),
    "cap_out": (1, 0),
    "pants_split": (1, 2),
    "pants_merge": (2, 1),
}


class CobordismWord:
    """A validated, composable sequence of (generator, position) steps."""

    def __init__(self, steps: Sequence[tuple[str, int]]):
        self.steps = tuple(steps)
        self.arities = self._validate()

    def _validate(self) -> tuple[int, ...]:
        """Check composability and track connected components along the way:
        each open circle carries a component id, components merge through
        pants and close when their last circle is capped; the Euler
        characteristics of the closed pieces give their genera."""
        circles: list[int] = []   # component id per open circle, in order
        chi: dict[int, int] = {}  # Euler characteristic per component
        open_count: dict[int, int] = {}
        closed: list[int] = []    # chi of each closed component
        next_id = 0
        trail = [0]
        for idx, (gen, pos) in enumerate(self.steps):
            if gen not in GENERATORS:
                raise ArityMismatch(f"unknown generator {gen!r}", idx)
            consumed, produced = GENERATORS[gen]
            arity = len(circles)
            if pos < 0:
                raise ArityMismatch(f"negative position {pos}", idx)
            if consumed == 0 and pos > arity:
                raise ArityMismatch(
                    f"{gen} inserts at position {pos} but only {arity} "
                    f"circle(s) present", idx)
            if consumed > 0 and pos + consumed > arity:
                raise ArityMismatch(
                    f"{gen} at position {pos} needs circles "
                    f"{pos}..{pos + consumed - 1} but only {arity} present", idx)
            if gen == "cap_in":
                comp = next_id
                next_id += 1
                chi[comp] = 1
                open_count[comp] = 1
                circles.insert(pos, comp)
            elif gen == "cap_out":
                comp = circles.pop(pos)
                chi[comp] += 1
                open_count[comp] -= 1
                if open_count[comp] == 0:
                    closed.append(chi[comp])
            elif gen == "pants_split":
                comp = circles[pos]
                chi[comp] -= 1
                open_count[comp] += 1
                circles.insert(pos + 1, comp)
            else:  # pants_merge
                c1 = circles[pos]
                c2 = circles.pop(pos + 1)
                if c1 == c2:
                    chi[c1] -= 1
                    open_count[c1] -= 1
                else:  # connect two components
                    chi[c1] = chi[c1] + chi[c2] - 1
                    open_count[c1] += open_count[c2] - 1
                    del chi[c2], open_count[c2]
                    circles = [c1 if c == c2 else c for c in circles]
            trail.append(len(circles))
        if circles:
            raise ArityMismatch(
                f"word ends with {len(circles)} open circle(s); closed "
                "surfaces only", len(self.steps))
        self._closed_chis = tuple(closed)
        return tuple(trail)

    @property
    def genus(self) -> Optional[int]:
        """Genus when the word describes one connected closed surface
        (chi = 2 - 2g); None for disconnected words."""
        if len(self._closed_chis) != 1:
            return None
        chi = self._closed_chis[0]
        assert chi % 2 == 0 and chi <= 2
        return (2 - chi) // 2

    @property
    def component_genera(self) -> tuple[int, ...]:
        return tuple((2 - chi) // 2 for chi in self._closed_chis)

    def __repr__(self):
        return " ".join(g if p == 0 else f"{g}@{p}" for g, p in self.steps)


def parse_word(text: str) -> CobordismWord:
    text = text.strip()
    if text.startswith("genus:"):
        try:
            g = int(text[len("genus:"):])
        except ValueError:
            raise ParseError(f"invalid genus in {text!r}") from None
        if g < 0:
            raise ParseError("genus must be non-negative")
        steps = [("cap_in", 0)]
        steps += [("pants_split", 0), ("pants_merge", 0)] * g
        steps.append(("cap_out", 0))
        return CobordismWord(steps)
    steps = []
    for col, token in _tokens_with_columns(text):
        if "@" in token:
            gen, _, pos_text = token.partition("@")
            try:
                pos = int(pos_text)
            except ValueError:
                raise ParseError(f"invalid position in {token!r}", col=col) from None
        else:
            gen, pos = token, 0
        if gen not in GENERATORS:
            raise ParseError(f"unknown generator {gen!r}", col=col)
        steps.append((gen, pos))
    if not steps:
        raise ParseError("empty cobordism word")
    return CobordismWord(steps)


def _tokens_with_columns(text: str):
    col = 0
    for token in text.split():
        col = text.index(token, col)
        yield col + 1, token
        col += len(token)


class GeneratorKernels:
    """The four elementary kernels over a fixed group algebra."""

    def __init__(self, a: Algebra, augmentation: ModuleRep):
        if a.provenance[0] != "group":
            raise MissingAugmentation(
                "surface evaluation needs a group algebra (the caps use the "
                "trivial representation as the designated structure module)")
        if augmentation.dim != 1:
            raise MissingAugmentation("augmentation module must be one-dimensional")
        self.algebra = a
        self.augmentation = augmentation
        self.field = field_algebra()
        self._table = a.provenance[2]
        self._cache: dict[str, Bimodule] = {}

    def cap_in(self) -> Bimodule:
        """field -> A: the structure module as a kernel."""
        if "cap_in" not in self._cache:
            aug = self.augmentation
            underlying = ModuleRep(tensor(self.algebra, opposite(self.field)),
                                   1, list(aug.action), name="cap_in", check=False)
            self._cache["cap_in"] = Bimodule(self.field, self.algebra, underlying,
                                             name="cap_in")
        return self._cache["cap_in"]

    def cap_out(self) -> Bimodule:
        """A -> field: the structure module on the other side."""
        if "cap_out" not in self._cache:
            aug = self.augmentation
            underlying = ModuleRep(tensor(self.field, opposite(self.algebra)),
                                   1, list(aug.action), name="cap_out", check=False)
            self._cache["cap_out"] = Bimodule(self.algebra, self.field, underlying,
                                              name="cap_out")
        return self._cache["cap_out"]

    def pants_split(self) -> Bimodule:
        """A -> A(x)A: induction along the diagonal; carrier A(x)A with the
        regular left action and the diagonal right action."""
        if "pants_split" not in self._cache:
            a = self.algebra
            aa = tensor(a, a)
            d = a.dim
            carrier = tensor(aa, opposite(a))
            action = []
            for li in range(aa.dim):
                l1, l2 = divmod(li, d)
                left = kron(a.basis_left_mult(l1), a.basis_left_mult(l2))
                for g in range(d):
                    right = kron(a.basis_right_mult(g), a.basis_right_mult(g))
                    action.append(left * right)
            underlying = ModuleRep(carrier, d * d, action, name="split", check=False)
            self._cache["pants_split"] = Bimodule(a, aa, underlying, name="pants_split")
        return self._cache["pants_split"]

    def pants_merge(self) -> Bimodule:
        """A(x)A -> A: restriction along the diagonal; carrier A(x)A with the
        diagonal left action and the regular right action."""
        if "pants_merge" not in self._cache:
            a = self.algebra
            aa = tensor(a, a)
            d = a.dim
            carrier = tensor(a, opposite(aa))
            action = []
            for g in range(d):
                left = kron(a.basis_left_mult(g), a.basis_left_mult(g))
                for ri in range(aa.dim):
                    r1, r2 = divmod(ri, d)
                    right = kron(a.basis_right_mult(r1), a.basis_right_mult(r2))
                    action.append(left * right)
            underlying = ModuleRep(carrier, d * d, action, name="merge", check=False)
            self._cache["pants_merge"] = Bimodule(aa, a, underlying, name="pants_merge")
        return self._cache["pants_merge"]

    def step_kernel(self, gen: str, pos: int, arity: int) -> Bimodule:
        """Kernel of one generator acting at `pos` with identity kernels on
        the other circles at the current arity."""
        base = {"cap_in": self.cap_in, "cap_out": self.cap_out,
                "pants_split": self.pants_split, "pants_merge": self.pants_merge}[gen]()
        consumed, _ = GENERATORS[gen]
        k = base
        for _ in range(pos):
            k = parallel_kernels(regular_bimodule(self.algebra), k)
        bystanders_after = arity - pos - consumed
        for _ in range(bystanders_after):
            k = parallel_kernels(k, regular_bimodule(self.algebra))
        return k


class SurfaceInvariant:
    def __init__(self, dims: int, word: CobordismWord, algebra: Algebra):
        assert dims >= 0
        self.dims = dims
        self.word = word
        self.algebra = algebra

    def __repr__(self):
        return f"SurfaceInvariant(dim {self.dims} for word '{self.word}')"


def generator_kernels(a: Algebra, augmentation: ModuleRep) -> GeneratorKernels:
    return GeneratorKernels(a, augmentation)


def trivial_representation(a: Algebra) -> ModuleRep:
    """The trivial representation of a group algebra: every group element
    acts as 1."""
    if a.provenance[0] != "group":
        raise MissingAugmentation("trivial representation needs a group algebra")
    one = SparseMatrix.identity(1)
    return ModuleRep(a, 1, [one] * a.dim, name="triv", check=True)


def evaluate(a: Algebra, word: CobordismWord,
             augmentation: Optional[ModuleRep] = None) -> SurfaceInvariant:
    """Convolve the generator kernels left to right; the closed word ends as
    a kernel field -> field whose carrier dimension is the invariant."""
    if augmentation is None:
        augmentation = trivial_representation(a)
    gens = GeneratorKernels(a, augmentation)
    total: Optional[Bimodule] = None
    arity = 0
    for gen, pos in word.steps:
        step = gens.step_kernel(gen, pos, arity)
        total = step if total is None else convolve(total, step)
        consumed, produced = GENERATORS[gen]
        arity = arity - consumed + produced
    assert total is not None and total.source.dim == 1 and total.target.dim == 1
    return SurfaceInvariant(total.dim, word, a)


def commutator_solution_count(a: Algebra, genus: int) -> int:
    """|Hom(pi_1(Sigma_g), G)| / |G| by brute-force enumeration of
    (a_1, b_1, .., a_g, b_g) with prod [a_i, b_i] = identity.  Reported
    alongside higher-genus evaluations; the normalizations differ."""
    assert a.provenance[0] == "group"
    table = a.provenance[2]
    identity = a.provenance[3]
    n = a.dim
    inverse = [next(h for h in range(n) if table[g][h] == identity) for g in range(n)]

    def commutator(x, y):
        return table[table[x][y]][table[inverse[x]][inverse[y]]]

    count = 0
    stack = [(0, identity)]
    # iterate over all 2g-tuples; genus <= 2 keeps this at |G|^4
    def recurse(depth: int, acc: int) -> int:
        if depth == genus:
            return 1 if acc == identity else 0
        total = 0
        for x in range(n):
            for y in range(n):
                total += recurse(depth + 1, table[acc][commutator(x, y)])
        return total

    count = recurse(0, identity)
    assert count % n == 0
    return count // n
