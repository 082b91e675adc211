"""Shared instance builders, random samplers, and independent oracles.

The oracles here deliberately avoid the library's own algorithms: the
word-problem oracle is a breadth-first search over elementary rewriting
moves, and the quotient oracle enumerates lifts in a window.  They are
the ground truth the fast paths are checked against.
"""

from __future__ import annotations

import itertools
from collections import deque

from gwreath import (
    ArithmeticOffsets,
    Cyclic,
    CyclicPower,
    FactorialOffsets,
    FiniteModeGraph,
    FiniteOffsets,
    FiniteTable,
    FreeAbelian,
    Instance,
    Symmetric,
    Syllable,
    TranslationGraph,
    Word,
    WreathElement,
)

# ---------------------------------------------------------------------------
# instance builders


def line_graph() -> TranslationGraph:
    return TranslationGraph(("c",), {("c", "c"): (FiniteOffsets(frozenset({1})),)})


def offsets_graph(*offsets: int, labels=("c",)) -> TranslationGraph:
    return TranslationGraph(
        labels, {(labels[0], labels[0]): (FiniteOffsets(frozenset(offsets)),)}
    )


def factorial_graph(shift: int = 0) -> TranslationGraph:
    return TranslationGraph(("c",), {("c", "c"): (FactorialOffsets(shift),)})


def complete_z_graph() -> TranslationGraph:
    return TranslationGraph(("c",), {("c", "c"): (ArithmeticOffsets(1, 1),)})


def edgeless_graph() -> TranslationGraph:
    return TranslationGraph(("c",), {})


def two_orbit_graph() -> TranslationGraph:
    return TranslationGraph(
        ("a", "b"),
        {
            ("a", "a"): (FiniteOffsets(frozenset({1})),),
            ("a", "b"): (FiniteOffsets(frozenset({2})),),
        },
    )


def k5_cyclic() -> FiniteModeGraph:
    edges = frozenset((i, j) for i in range(5) for j in range(i + 1, 5))
    return FiniteModeGraph(tuple(range(5)), edges, ((1, 2, 3, 4, 0),))


def path3_graph() -> FiniteModeGraph:
    """The path on three vertices with a trivial action."""
    return FiniteModeGraph((0, 1, 2), frozenset({(0, 1), (1, 2)}), ())


def klein_table() -> FiniteTable:
    table = (
        (0, 1, 2, 3),
        (1, 0, 3, 2),
        (2, 3, 0, 1),
        (3, 2, 1, 0),
    )
    return FiniteTable(4, table, 0)


# ---------------------------------------------------------------------------
# random sampling


def random_element(spec, rng):
    if isinstance(spec, Cyclic):
        return rng.randrange(spec.n)
    if isinstance(spec, Symmetric):
        perm = list(range(spec.degree))
        rng.shuffle(perm)
        return tuple(perm)
    if isinstance(spec, FiniteTable):
        return rng.randrange(spec.size)
    if isinstance(spec, FreeAbelian):
        return tuple(rng.randint(-5, 5) for _ in range(spec.rank))
    if isinstance(spec, CyclicPower):
        return tuple(rng.randrange(spec.n) for _ in range(spec.rank))
    raise TypeError(f"no sampler for {spec!r}")


def random_nontrivial(spec, rng):
    while True:
        value = random_element(spec, rng)
        if not spec.is_identity(value):
            return value


def random_vertex(graph, rng, window: int = 6):
    if isinstance(graph, TranslationGraph):
        return (rng.choice(graph.labels), rng.randint(-window, window))
    return rng.choice(graph.vertices)


def random_word(graph, delta, rng, max_len: int = 5, window: int = 6) -> Word:
    n = rng.randint(0, max_len)
    return Word(
        tuple(
            Syllable(random_vertex(graph, rng, window), random_nontrivial(delta, rng))
            for _ in range(n)
        )
    )


def random_gamma(instance: Instance, rng, window: int = 6):
    if instance.graph.gamma_kind == "z":
        return rng.randint(-window, window)
    return tuple(rng.randint(-window, window) for _ in range(instance.graph.rank))


def random_wreath(instance: Instance, rng, max_len: int = 5, window: int = 6) -> WreathElement:
    return WreathElement(
        random_word(instance.graph, instance.delta, rng, max_len, window),
        random_gamma(instance, rng, window),
    )


# ---------------------------------------------------------------------------
# the word-problem oracle


def bfs_trivial(graph, delta, syllables) -> bool:
    """Complete decision procedure for triviality by breadth-first search.

    Moves: delete an identity syllable, merge or cancel two adjacent
    same-vertex syllables, swap neighbouring syllables whose vertices
    are adjacent.  No move increases the length, so the reachable set
    is finite and emptiness is decided exactly.
    """
    start = tuple((s.vertex, s.value) for s in syllables)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        if not current:
            return True
        nexts = []
        for i, (v, g) in enumerate(current):
            if delta.is_identity(g):
                nexts.append(current[:i] + current[i + 1 :])
        for i in range(len(current) - 1):
            (v1, g1), (v2, g2) = current[i], current[i + 1]
            if v1 == v2:
                product = delta.compose(g1, g2)
                if delta.is_identity(product):
                    nexts.append(current[:i] + current[i + 2 :])
                else:
                    nexts.append(current[:i] + ((v1, product),) + current[i + 2 :])
            elif graph.adjacent(v1, v2):
                nexts.append(
                    current[:i] + (current[i + 1], current[i]) + current[i + 2 :]
                )
        for candidate in nexts:
            if candidate not in seen:
                seen.add(candidate)
                queue.append(candidate)
    return False


# ---------------------------------------------------------------------------
# the quotient oracle


def brute_quotient(graph: TranslationGraph, m: int, window: int | None = None):
    """Quotient edges and loops by scanning lifts in a window."""
    dmax = max(graph.max_finite_offset(), 1)
    width = window if window is not None else 3 * m * dmax
    ids = [(c, r) for c in graph.labels for r in range(m)]
    edges, loops = set(), set()
    for i, u in enumerate(ids):
        for w in ids[i:]:
            hit_edge = hit_loop = False
            for pu in range(u[1] - width, u[1] + width + 1, m):
                for pw in range(w[1] - width, w[1] + width + 1, m):
                    vu, vw = (u[0], pu), (w[0], pw)
                    if vu == vw:
                        continue
                    if graph.adjacent(vu, vw):
                        if u == w:
                            hit_loop = True
                        else:
                            hit_edge = True
            if hit_edge:
                edges.add((u, w))
            if hit_loop:
                loops.add(u)
    return edges, loops


def brute_factorial_residues(shift: int, m: int, extra: int = 5) -> frozenset[int]:
    out = set()
    f = 1
    for n in range(1, m + extra + 1):
        f *= n
        out.add((shift + f) % m)
        out.add((-(shift + f)) % m)
    return frozenset(out)


def all_short_words(vertices, values, max_len: int):
    """Every syllable sequence of length <= max_len, identity values included."""
    alphabet = [Syllable(v, g) for v in vertices for g in values]
    for length in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=length):
            yield combo
