"""The calculus of relations between finite sets.

Relations are boolean matrices (rows indexed by the source, columns by the
target), so composites, converses and the difunctionality condition
``R R° R <= R`` are literal matrix algebra.  Pair-list views are derived.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CompositionError, NotEquivalenceError, PreconditionError
from .fsets import (
    FiniteSet,
    SetFunction,
    Span,
    coproduct,
    pair_name,
    quotient_by_partition,
)

Matrix = tuple[tuple[bool, ...], ...]


@dataclass(frozen=True)
class Relation:
    """A subset of source x target as a boolean matrix."""

    source: FiniteSet
    target: FiniteSet
    matrix: Matrix

    def __post_init__(self) -> None:
        rows = tuple(tuple(bool(x) for x in row) for row in self.matrix)
        if len(rows) != len(self.source):
            raise ValueError(
                f"matrix has {len(rows)} rows for a source of size {len(self.source)}"
            )
        if any(len(row) != len(self.target) for row in rows):
            raise ValueError(
                f"matrix rows must all have length {len(self.target)}"
            )
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_pairs(
        cls, source: FiniteSet, target: FiniteSet, pairs: Iterable[tuple[str, str]]
    ) -> "Relation":
        grid = [[False] * len(target) for _ in source]
        for a, b in pairs:
            grid[source.index(a)][target.index(b)] = True
        return cls(source, target, tuple(tuple(row) for row in grid))

    @classmethod
    def empty(cls, source: FiniteSet, target: FiniteSet) -> "Relation":
        return cls.from_pairs(source, target, ())

    @classmethod
    def full(cls, source: FiniteSet, target: FiniteSet) -> "Relation":
        return cls(source, target, tuple(
            tuple(True for _ in target) for _ in source
        ))

    @classmethod
    def diagonal(cls, a: FiniteSet) -> "Relation":
        return cls.from_pairs(a, a, ((x, x) for x in a))

    def holds(self, a: str, b: str) -> bool:
        return self.matrix[self.source.index(a)][self.target.index(b)]

    def pairs(self) -> Iterator[tuple[str, str]]:
        for i, a in enumerate(self.source):
            for j, b in enumerate(self.target):
                if self.matrix[i][j]:
                    yield a, b

    def __repr__(self) -> str:
        return "{" + ", ".join(pair_name(a, b) for a, b in self.pairs()) + "}"


def rel_compose(s: Relation, r: Relation) -> Relation:
    """Composite s after r: boolean matrix product."""
    if r.target != s.source:
        raise CompositionError(
            f"cannot compose: target {r.target} != source {s.source}"
        )
    mid = range(len(r.target))
    matrix = tuple(
        tuple(
            any(r.matrix[i][j] and s.matrix[j][k] for j in mid)
            for k in range(len(s.target))
        )
        for i in range(len(r.source))
    )
    return Relation(r.source, s.target, matrix)


def converse(r: Relation) -> Relation:
    """Matrix transpose; swaps source and target."""
    matrix = tuple(
        tuple(r.matrix[i][j] for i in range(len(r.source)))
        for j in range(len(r.target))
    )
    return Relation(r.target, r.source, matrix)


def _require_parallel(r: Relation, s: Relation) -> None:
    if r.source != s.source or r.target != s.target:
        raise CompositionError("relations must have the same source and target")


def union(r: Relation, s: Relation) -> Relation:
    _require_parallel(r, s)
    matrix = tuple(
        tuple(x or y for x, y in zip(row_r, row_s))
        for row_r, row_s in zip(r.matrix, s.matrix)
    )
    return Relation(r.source, r.target, matrix)


def leq(r: Relation, s: Relation) -> bool:
    """Pointwise containment r <= s."""
    _require_parallel(r, s)
    return all(
        (not x) or y
        for row_r, row_s in zip(r.matrix, s.matrix)
        for x, y in zip(row_r, row_s)
    )


def graph_of(f: SetFunction) -> Relation:
    return Relation.from_pairs(
        f.domain, f.codomain, zip(f.domain.elements, f.values)
    )


def span_to_relation(s: Span) -> Relation:
    """The relation a span embodies: (a, b) holds when some apex element maps
    to both.  Equals right-graph composed with the converse of left-graph."""
    return Relation.from_pairs(
        *s.feet, ((s.left(c), s.right(c)) for c in s.apex)
    )


def tabulate(r: Relation) -> Span:
    """Jointly monic span of projections from the pair set of r."""
    pairs = list(r.pairs())
    apex = FiniteSet(tuple(pair_name(a, b) for a, b in pairs))
    by_name = {pair_name(a, b): (a, b) for a, b in pairs}
    left = SetFunction(apex, r.source, tuple(by_name[p][0] for p in apex))
    right = SetFunction(apex, r.target, tuple(by_name[p][1] for p in apex))
    return Span(apex, left, right)


def is_difunctional(r: Relation) -> bool:
    """True when R R° R <= R."""
    return leq(rel_compose(r, rel_compose(converse(r), r)), r)


def difunctionality_witness(r: Relation) -> tuple[str, str, str, str] | None:
    """First quadruple (a, b, a2, b2), in canonical element order, with
    (a,b), (a,b2), (a2,b) all related but (a2,b2) not; None if difunctional.

    This is the elementwise oracle; ``is_difunctional`` is the matrix route.
    """
    m = r.matrix
    for i, a in enumerate(r.source):
        for j, b in enumerate(r.target):
            if not m[i][j]:
                continue
            for i2, a2 in enumerate(r.source):
                if not m[i2][j]:
                    continue
                for j2, b2 in enumerate(r.target):
                    if m[i][j2] and not m[i2][j2]:
                        return (a, b, a2, b2)
    return None


def difunctional_closure(r: Relation) -> Relation:
    """Least difunctional relation containing r, by iterating
    R <- R u R R° R to a fixpoint."""
    current = r
    for _ in range(max(1, len(r.source) * len(r.target))):
        step = union(current, rel_compose(current, rel_compose(converse(current), current)))
        if step == current:
            return current
        current = step
    if current != union(
        current, rel_compose(current, rel_compose(converse(current), current))
    ):
        raise AssertionError("difunctional closure failed to converge")
    return current


def is_reflexive(e: Relation) -> bool:
    _require_endo(e)
    return all(e.matrix[i][i] for i in range(len(e.source)))


def is_symmetric(e: Relation) -> bool:
    _require_endo(e)
    return e == converse(e)


def is_transitive(e: Relation) -> bool:
    _require_endo(e)
    return leq(rel_compose(e, e), e)


def is_equivalence(e: Relation) -> bool:
    """Reflexive, symmetric and transitive.

    Symmetry is checked explicitly: a reflexive difunctional endo-relation
    need not be symmetric as a relation (only the span reading identifies a
    relation with its converse), and the quotient construction needs it.
    """
    return is_reflexive(e) and is_symmetric(e) and is_transitive(e)


def _require_endo(e: Relation) -> None:
    if e.source != e.target:
        raise PreconditionError(
            f"expected an endo-relation, got {e.source} to {e.target}"
        )


def equivalence_classes(e: Relation) -> list[tuple[str, ...]]:
    """The blocks of an equivalence relation, each sorted, in order of least
    member."""
    if not is_equivalence(e):
        raise NotEquivalenceError(f"relation is not an equivalence: {e!r}")
    seen: set[str] = set()
    blocks = []
    for i, a in enumerate(e.source):
        if a in seen:
            continue
        block = tuple(b for j, b in enumerate(e.source) if e.matrix[i][j])
        seen.update(block)
        blocks.append(block)
    return blocks


def quotient_by_equivalence(a: FiniteSet, e: Relation) -> SetFunction:
    """Surjection onto the classes of e, each class named by its least
    member.  Coequalizes the two projections of e."""
    if e.source != a or e.target != a:
        raise PreconditionError(f"relation is not an endo-relation on {a}")
    return quotient_by_partition(a, equivalence_classes(e))


def joint_monicity_witness(s: Span) -> tuple[str, str, tuple[str, str]] | None:
    """Two apex elements with the same image pair, or None if jointly monic."""
    seen: dict[tuple[str, str], str] = {}
    for c in s.apex:
        image = (s.left(c), s.right(c))
        if image in seen:
            return seen[image], c, image
        seen[image] = c
    return None


def is_jointly_monic(s: Span) -> bool:
    return joint_monicity_witness(s) is None


def is_malcev_span(s: Span) -> bool:
    """Jointly monic with a difunctional underlying relation."""
    return is_jointly_monic(s) and is_difunctional(span_to_relation(s))


def malcev_factorization_exists(s: Span) -> bool:
    """Equivalent criterion via the triple-pullback factorization: for every
    chain c1, c2, c3 with right(c1) = right(c2) and left(c2) = left(c3),
    some apex element pairs left(c1) with right(c3).

    Kept independent of the matrix route; the two must agree on jointly
    monic spans (and the definition requires joint monicity first).
    """
    if not is_jointly_monic(s):
        return False
    images = {(s.left(c), s.right(c)) for c in s.apex}
    for c1, c2, c3 in itertools.product(s.apex, repeat=3):
        if s.right(c1) == s.right(c2) and s.left(c2) == s.left(c3):
            if (s.left(c1), s.right(c3)) not in images:
                return False
    return True


@dataclass(frozen=True)
class BlockRelation:
    """A 2x2 block matrix of relations describing a relation between tagged
    coproducts: ``blocks[i][j]`` relates summand j to summand i."""

    blocks: tuple[tuple[Relation, Relation], tuple[Relation, Relation]]

    def __post_init__(self) -> None:
        (tl, tr), (bl, br) = self.blocks
        a, b = tl.source, br.source
        expected = {
            (0, 0): (a, a),
            (0, 1): (b, a),
            (1, 0): (a, b),
            (1, 1): (b, b),
        }
        for (i, j), (src, tgt) in expected.items():
            block = self.blocks[i][j]
            if block.source != src or block.target != tgt:
                raise ValueError(
                    f"block [{i}][{j}] must be a relation {src} to {tgt}, "
                    f"got {block.source} to {block.target}"
                )

    @property
    def left_set(self) -> FiniteSet:
        return self.blocks[0][0].source

    @property
    def right_set(self) -> FiniteSet:
        return self.blocks[1][1].source


def assemble_block(e: BlockRelation) -> Relation:
    """The relation on the tagged coproduct whose restriction to each tag
    pair is the corresponding block."""
    a, b = e.left_set, e.right_set
    total, _, _ = coproduct(a, b)

    def untag(name: str) -> tuple[int, str]:
        return (0, name[2:]) if name.startswith("l:") else (1, name[2:])

    pairs = []
    for x in total:
        j, x_raw = untag(x)
        for y in total:
            i, y_raw = untag(y)
            if e.blocks[i][j].holds(x_raw, y_raw):
                pairs.append((x, y))
    return Relation.from_pairs(total, total, pairs)
