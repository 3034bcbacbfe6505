"""
Spans of orbits S1 ← G/K → S2 and their composition by fibered products.

A span is stored as (apex object, left leg index, right leg index) in the
full orbit category, canonicalized by minimizing the leg pair over Aut(apex).
"""
import logging
from typing import Dict, List, NamedTuple, Tuple

from src.gset import OrbitCat, fibered_product, orbit_partition, orbits, product
from src.grp import subgroup_classes

logger = logging.getLogger(__name__)


class Span(NamedTuple):
    """c1 ← apex → c2, legs given as hom indices."""

    source: int
    target: int
    apex: int
    left: int
    right: int


def canonical_span(cat: OrbitCat, source: int, target: int, apex: int, left: int, right: int) -> Span:
    """The representative of the span's isomorphism class."""
    best = None
    for sigma in range(len(cat.hom(apex, apex))):
        pair = (
            cat.compose(apex, apex, source, sigma, left),
            cat.compose(apex, apex, target, sigma, right),
        )
        if best is None or pair < best:
            best = pair
    return Span(source, target, apex, best[0], best[1])


def identity_span(cat: OrbitCat, c: int) -> Span:
    ident = cat.identity(c)
    return Span(c, c, c, ident, ident)


def span_from_map(cat: OrbitCat, source: int, target: int, k: int, covariant: bool = True) -> Span:
    """
    The image of f: source → target in the span category.

    Args:
        covariant: True for source ← source → target (identity, f); False
            for the transpose target ← source → source (f, identity)
    """
    ident = cat.identity(source)
    if covariant:
        return canonical_span(cat, source, target, source, ident, k)
    return canonical_span(cat, target, source, source, k, ident)


class SpanHom:
    """
    The free abelian group on isomorphism classes of spans c1 ← G/K → c2.

    Example:
        >>> cat = OrbitCat(cyclic(2))
        >>> SpanHom(cat, 0, 0).rank
        2
    """

    def __init__(self, cat: OrbitCat, source: int, target: int):
        self.cat = cat
        self.source = source
        self.target = target
        found = set()
        for apex in range(len(cat)):
            for left in range(len(cat.hom(apex, source))):
                for right in range(len(cat.hom(apex, target))):
                    found.add(canonical_span(cat, source, target, apex, left, right))
        self.basis: List[Span] = sorted(found)
        self._position = {s: k for k, s in enumerate(self.basis)}

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, span: Span) -> int:
        return self._position[span]

    def predicted_rank(self) -> int:
        """Σ over orbits p of c1 × c2 of the number of subgroup classes of the stabilizer H_p."""
        cat = self.cat
        x = product(cat.objects[self.source], cat.objects[self.target])
        total = 0
        for _, stab in orbits(x):
            sub, _ = stab.as_group()
            total += len(subgroup_classes(sub))
        return total


def span_hom(cat: OrbitCat, c1: int, c2: int) -> SpanHom:
    return SpanHom(cat, c1, c2)


def compose_spans(cat: OrbitCat, first: Span, second: Span) -> Dict[Span, int]:
    """
    The composite second ∘ first as an integer combination of basis spans.

    The apex of the composite is the fibered product of the two apexes over
    the middle orbit, decomposed into orbits.

    Raises:
        ValueError: If the target of ``first`` is not the source of ``second``
    """
    if first.target != second.source:
        raise ValueError(f"Spans do not compose: target {first.target} != source {second.source}")
    a_right = cat.morphism((first.apex, first.target, first.right))
    b_left = cat.morphism((second.apex, second.source, second.left))
    a_left = cat.morphism((first.apex, first.source, first.left))
    b_right = cat.morphism((second.apex, second.target, second.right))
    fp, p1, p2 = fibered_product(a_right, b_left)
    out: Dict[Span, int] = {}
    for points in orbit_partition(fp):
        apex, phi = cat.identify_orbit(fp, points)
        left = cat.index_of(apex, first.source, [a_left(p1(x)) for x in phi])
        right = cat.index_of(apex, second.target, [b_right(p2(x)) for x in phi])
        span = canonical_span(cat, first.source, second.target, apex, left, right)
        out[span] = out.get(span, 0) + 1
    return dict(sorted(out.items()))


def compose_combinations(cat: OrbitCat, first: Dict[Span, int], second: Dict[Span, int]) -> Dict[Span, int]:
    """Bilinear extension of ``compose_spans``."""
    out: Dict[Span, int] = {}
    for a, x in first.items():
        for b, y in second.items():
            for s, z in compose_spans(cat, a, b).items():
                out[s] = out.get(s, 0) + x * y * z
    return {s: v for s, v in sorted(out.items()) if v}


def transpose(cat: OrbitCat, span: Span) -> Span:
    """
    The span with its legs swapped, as a basis span of SpanHom(target, source).

    Reverses composition: transpose(b ∘ a) = transpose(a) ∘ transpose(b).
    """
    return canonical_span(cat, span.target, span.source, span.apex, span.right, span.left)


def transpose_combination(cat: OrbitCat, combination: Dict[Span, int]) -> Dict[Span, int]:
    out: Dict[Span, int] = {}
    for s, v in combination.items():
        t = transpose(cat, s)
        out[t] = out.get(t, 0) + v
    return {s: v for s, v in sorted(out.items()) if v}


def span_counts(cat: OrbitCat) -> Dict[Tuple[int, int], int]:
    """Rank of every SpanHom(c1, c2)."""
    return {(i, j): SpanHom(cat, i, j).rank for i in range(len(cat)) for j in range(len(cat))}
