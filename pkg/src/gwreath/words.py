"""Words over vertex copies of a coefficient group, with a canonical form.

An element of the product group attached to a graph is a sequence of
syllables (vertex, value).  Copies at adjacent vertices commute; no
other relations hold beyond the group laws inside each copy.  Words are
brought to a canonical form in three moves: drop identity syllables,
merge same-vertex syllables whose separators all commute past them, and
finally order the result as the lexicographically least shuffle of its
commutation class.  Equal group elements always produce equal canonical
words, so equality and triviality testing reduce to comparison against
this form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import LoopObstruction, WordError
from .groups import Element, GroupSpec, Homomorphism
from .graphs import Vertex


@dataclass(frozen=True)
class Syllable:
    vertex: Vertex
    value: Element


@dataclass(frozen=True)
class Word:
    syllables: tuple[Syllable, ...] = ()

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    @property
    def is_empty(self) -> bool:
        return not self.syllables

    def vertices(self) -> frozenset[Vertex]:
        return frozenset(s.vertex for s in self.syllables)


EMPTY_WORD = Word()


def word(delta: GroupSpec, pairs: Iterable[tuple[Vertex, Element]]) -> Word:
    """Build a word, rejecting identity-valued syllables."""
    out = []
    for vertex, value in pairs:
        delta.check(value)
        if delta.is_identity(value):
            raise WordError(f"identity syllable at vertex {vertex!r}")
        out.append(Syllable(vertex, value))
    return Word(tuple(out))


def _validate(graph, delta: GroupSpec, w: Word | Iterable[Syllable]) -> list[Syllable]:
    sylls = list(w)
    for s in sylls:
        if not graph.has_vertex(s.vertex):
            raise WordError(f"syllable vertex {s.vertex!r} does not belong to the graph")
        delta.check(s.value)
    return sylls


def canonical_form(graph, delta: GroupSpec, w: Word | Iterable[Syllable]) -> Word:
    """The unique canonical word equal to ``w``.

    Merging is applied to the nearest pair of same-vertex syllables
    whose in-between vertices are all adjacent to theirs; such a pair
    can always be brought together by swaps, and no other pair ever
    can, so iterating to a fixed point yields a fully reduced word.
    The reduced word is then rewritten as the least shuffle of its
    class: repeatedly emit the syllable with the smallest vertex among
    those whose remaining predecessors all commute past it.
    """
    sylls = [s for s in _validate(graph, delta, w) if not delta.is_identity(s.value)]

    changed = True
    while changed:
        changed = False
        for i in range(len(sylls)):
            v = sylls[i].vertex
            for j in range(i + 1, len(sylls)):
                if sylls[j].vertex != v:
                    continue
                if all(graph.adjacent(sylls[k].vertex, v) for k in range(i + 1, j)):
                    merged = delta.compose(sylls[i].value, sylls[j].value)
                    del sylls[j]
                    if delta.is_identity(merged):
                        del sylls[i]
                    else:
                        sylls[i] = Syllable(v, merged)
                    changed = True
                break  # a same-vertex syllable blocks any later merge with i
            if changed:
                break

    out: list[Syllable] = []
    remaining = sylls
    while remaining:
        best = None
        for i, s in enumerate(remaining):
            if all(graph.adjacent(remaining[k].vertex, s.vertex) for k in range(i)):
                if best is None or graph.vertex_key(s.vertex) < graph.vertex_key(
                    remaining[best].vertex
                ):
                    best = i
        out.append(remaining.pop(best))
    return Word(tuple(out))


def gp_compose(graph, delta: GroupSpec, w1: Word, w2: Word) -> Word:
    return canonical_form(graph, delta, tuple(w1) + tuple(w2))


def gp_invert(graph, delta: GroupSpec, w: Word) -> Word:
    reversed_inverses = [
        Syllable(s.vertex, delta.invert(s.value)) for s in reversed(tuple(w))
    ]
    return canonical_form(graph, delta, reversed_inverses)


def support(graph, delta: GroupSpec, w: Word) -> frozenset[Vertex]:
    """Vertices of the canonical form: a valid (not necessarily minimal)
    support of the element."""
    return canonical_form(graph, delta, w).vertices()


def retract(graph, delta: GroupSpec, w: Word, keep: Iterable[Vertex]) -> Word:
    """Kill every syllable outside ``keep``.

    This is the homomorphism onto the subgroup generated by the copies
    at ``keep``; composed with the inclusion of a word supported there
    it is the identity.
    """
    keep_set = set(keep)
    kept = [s for s in _validate(graph, delta, w) if s.vertex in keep_set]
    return canonical_form(graph, delta, kept)


def push_forward(
    src_graph,
    delta: GroupSpec,
    w: Word,
    vertex_map: Mapping | Callable,
    delta_hom: Homomorphism,
    dst_graph,
) -> Word:
    """Map a word along a vertex map and a coefficient homomorphism.

    The result lives over ``dst_graph`` and is canonicalized there.
    When the destination carries a loop at an image vertex of the
    support and the target coefficients are non-abelian, no such
    homomorphism exists and LoopObstruction is raised.
    """
    if delta_hom.source != delta:
        raise WordError("coefficient homomorphism source does not match the word")
    canonical = canonical_form(src_graph, delta, w)

    if callable(vertex_map) and not isinstance(vertex_map, Mapping):
        mapper = vertex_map
    else:
        mapping = dict(vertex_map)

        def mapper(v):
            try:
                return mapping[v]
            except KeyError:
                raise WordError(f"vertex {v!r} is not mapped") from None

    images = {}
    for v in canonical.vertices():
        u = mapper(v)
        if not dst_graph.has_vertex(u):
            raise WordError(f"image vertex {u!r} does not belong to the destination")
        images[v] = u
    if not delta_hom.target.is_abelian():
        for u in sorted(images.values(), key=dst_graph.vertex_key):
            if dst_graph.has_loop(u):
                raise LoopObstruction(u)
    mapped = [Syllable(images[s.vertex], delta_hom.apply(s.value)) for s in canonical]
    return canonical_form(dst_graph, delta_hom.target, mapped)
