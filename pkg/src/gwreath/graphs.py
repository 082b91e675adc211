"""Graphs carrying a group action, and their finite quotients.

Two instance classes are supported.  Translation graphs have vertex set
C x Z for a finite label set C, with edges described by difference
families (sets of offsets closed under negation), and the integers
acting by translation.  Finite-mode graphs are finite simplicial graphs
on which Z^n acts through a list of commuting automorphisms.  Both
classes admit exact computation of adjacency, orbits, and quotient
graphs by finite-index subgroups, which is what every construction in
this package ultimately reduces to.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GraphError

# A vertex is (label, position) in translation mode and a plain int id
# in finite mode.
Vertex = tuple[str, int] | int
Gamma = int | tuple[int, ...]


# ---------------------------------------------------------------------------
# difference families


@dataclass(frozen=True)
class FiniteOffsets:
    """A finite, negation-closed set of nonzero offsets."""

    offsets: frozenset[int]

    def __post_init__(self):
        if 0 in self.offsets:
            raise GraphError("offset 0 would create a loop")
        object.__setattr__(
            self, "offsets", frozenset(self.offsets) | frozenset(-d for d in self.offsets)
        )

    def contains(self, d: int) -> bool:
        return d in self.offsets

    def residues(self, m: int) -> frozenset[int]:
        return frozenset(d % m for d in self.offsets)

    def is_finite(self) -> bool:
        return True

    def max_offset(self) -> int:
        return max((abs(d) for d in self.offsets), default=0)

    def datum(self) -> int:
        return self.max_offset()


@dataclass(frozen=True)
class FactorialOffsets:
    """Offsets {±(shift + n!) : n >= 1}."""

    shift: int

    def __post_init__(self):
        if self.shift < 0:
            raise GraphError(f"shift must be >= 0, got {self.shift}")

    def contains(self, d: int) -> bool:
        target = abs(d) - self.shift
        if target < 1:
            return False
        f, n = 1, 1
        while f < target:
            n += 1
            f *= n
        return f == target

    def residues(self, m: int) -> frozenset[int]:
        # n! is divisible by m once n >= m, so the tail contributes
        # exactly the residues of +-shift; small n are computed directly.
        out = {self.shift % m, (-self.shift) % m}
        f = 1
        for n in range(1, max(m, 2)):
            f *= n
            out.add((self.shift + f) % m)
            out.add((-(self.shift + f)) % m)
        return frozenset(out)

    def is_finite(self) -> bool:
        return False

    def datum(self) -> int:
        return max(self.shift, 1)


@dataclass(frozen=True)
class ArithmeticOffsets:
    """Offsets {±(start + step * k) : k >= 0}."""

    start: int
    step: int

    def __post_init__(self):
        if self.start < 1 or self.step < 1:
            raise GraphError("start and step must both be >= 1")

    def contains(self, d: int) -> bool:
        return abs(d) >= self.start and (abs(d) - self.start) % self.step == 0

    def residues(self, m: int) -> frozenset[int]:
        out = set()
        for k in range(m):
            value = self.start + self.step * k
            out.add(value % m)
            out.add((-value) % m)
        return frozenset(out)

    def is_finite(self) -> bool:
        return False

    def datum(self) -> int:
        return self.start + self.step


DifferenceFamily = FiniteOffsets | FactorialOffsets | ArithmeticOffsets


def residues_mod(family: DifferenceFamily, m: int) -> frozenset[int]:
    """Exact residue set { d mod m : d in family }."""
    if m < 1:
        raise GraphError(f"modulus must be >= 1, got {m}")
    return family.residues(m)


def family_contains(family: DifferenceFamily, d: int) -> bool:
    return family.contains(d)


def residues_of(families: Iterable[DifferenceFamily], m: int) -> frozenset[int]:
    out: frozenset[int] = frozenset()
    for family in families:
        out |= residues_mod(family, m)
    return out


def contains_offset(families: Iterable[DifferenceFamily], d: int) -> bool:
    return any(family.contains(d) for family in families)


def covers_all_nonzero(families: Sequence[DifferenceFamily]) -> bool:
    """Whether the union of the families contains every nonzero offset.

    Decidable because only arithmetic families can cover all large
    offsets: their residue classes must cover Z/B for B the lcm of the
    steps, after which a finite window check handles small offsets.
    """
    arith = [f for f in families if isinstance(f, ArithmeticOffsets)]
    if not arith:
        return False
    big = 1
    for f in arith:
        big = big * f.step // _gcd(big, f.step)
    if any(
        not any((r - f.start) % f.step == 0 for f in arith) for r in range(big)
    ):
        return False
    window = max(f.start for f in arith) + big
    return all(contains_offset(families, n) for n in range(1, window + 1))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# translation graphs


def _pair_key(labels: Sequence[str], c1: str, c2: str) -> tuple[str, str]:
    i, j = labels.index(c1), labels.index(c2)
    return (c1, c2) if i <= j else (c2, c1)


@dataclass(frozen=True)
class TranslationGraph:
    """Vertices C x Z with Z translating positions.

    ``families`` maps an unordered label pair (stored with the lower
    label index first) to the difference families generating edges
    between the two orbits: (c, x) ~ (c', y) iff y - x lies in some
    family of the pair.  Negation closure of the families makes this
    orientation-independent.
    """

    labels: tuple[str, ...]
    families: dict[tuple[str, str], tuple[DifferenceFamily, ...]] = field(
        default_factory=dict
    )

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise GraphError("orbit labels must be distinct")
        normalized: dict[tuple[str, str], tuple[DifferenceFamily, ...]] = {}
        for (c1, c2), fams in self.families.items():
            if c1 not in self.labels or c2 not in self.labels:
                raise GraphError(f"family references unknown label in ({c1!r}, {c2!r})")
            key = _pair_key(self.labels, c1, c2)
            if key in normalized:
                raise GraphError(f"duplicate family entry for pair {key!r}")
            normalized[key] = tuple(fams)
        object.__setattr__(self, "families", normalized)

    @property
    def gamma_kind(self) -> str:
        return "z"

    def label_index(self, c: str) -> int:
        try:
            return self.labels.index(c)
        except ValueError:
            raise GraphError(f"unknown orbit label {c!r}") from None

    def has_vertex(self, v: Vertex) -> bool:
        return (
            isinstance(v, tuple)
            and len(v) == 2
            and v[0] in self.labels
            and isinstance(v[1], int)
        )

    def check_vertex(self, v: Vertex) -> None:
        if not self.has_vertex(v):
            raise GraphError(f"{v!r} is not a vertex of this graph")

    def families_for(self, c1: str, c2: str) -> tuple[DifferenceFamily, ...]:
        return self.families.get(_pair_key(self.labels, c1, c2), ())

    def adjacent(self, v: Vertex, w: Vertex) -> bool:
        self.check_vertex(v)
        self.check_vertex(w)
        if v == w:
            return False
        (c1, x), (c2, y) = v, w
        return contains_offset(self.families_for(c1, c2), y - x)

    def act(self, gamma: int, v: Vertex) -> Vertex:
        self.check_vertex(v)
        return (v[0], v[1] + gamma)

    def vertex_key(self, v: Vertex):
        return (self.label_index(v[0]), v[1])

    def has_loop(self, v: Vertex) -> bool:
        return False

    def max_finite_offset(self) -> int:
        out = 0
        for fams in self.families.values():
            for f in fams:
                if f.is_finite():
                    out = max(out, f.max_offset())
        return out

    def all_finite(self) -> bool:
        return all(f.is_finite() for fams in self.families.values() for f in fams)


# ---------------------------------------------------------------------------
# finite-mode graphs


def _norm_edge(key, u, w) -> tuple:
    return (u, w) if key(u) <= key(w) else (w, u)


def _perm_compose(p: dict, q: dict) -> dict:
    return {v: p[q[v]] for v in q}


@dataclass(frozen=True)
class FiniteModeGraph:
    """A finite simplicial graph with Z^n acting through commuting
    edge-preserving automorphisms.

    Vertices are distinct integer ids; ``generators[i][k]`` is the image
    of ``vertices[k]`` under the i-th generator.  Generators must
    pairwise commute (so the image of Z^n stays abelian) and map edges
    to edges; both properties are checked exhaustively at construction.
    """

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    generators: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        verts = tuple(sorted(self.vertices))
        if len(set(verts)) != len(verts):
            raise GraphError("vertex ids must be distinct")
        object.__setattr__(self, "vertices", verts)
        vset = set(verts)
        edges = set()
        for e in self.edges:
            u, w = e
            if u == w:
                raise GraphError(f"loop at vertex {u} is not allowed")
            if u not in vset or w not in vset:
                raise GraphError(f"edge {e!r} references an unknown vertex")
            edges.add((min(u, w), max(u, w)))
        object.__setattr__(self, "edges", frozenset(edges))
        maps = []
        for g in self.generators:
            if len(g) != len(verts) or set(g) != vset:
                raise GraphError(f"generator {g!r} is not a permutation of the vertices")
            maps.append({verts[i]: g[i] for i in range(len(verts))})
        for gm in maps:
            for u, w in edges:
                if (min(gm[u], gm[w]), max(gm[u], gm[w])) not in edges:
                    raise GraphError("generator does not preserve the edge set")
        for a, b in itertools.combinations(maps, 2):
            if _perm_compose(a, b) != _perm_compose(b, a):
                raise GraphError("generators must pairwise commute")

    @property
    def gamma_kind(self) -> str:
        return "zn"

    @property
    def rank(self) -> int:
        return len(self.generators)

    def _gen_maps(self) -> list[dict]:
        return [
            {self.vertices[i]: g[i] for i in range(len(self.vertices))}
            for g in self.generators
        ]

    def has_vertex(self, v: Vertex) -> bool:
        return isinstance(v, int) and v in set(self.vertices)

    def check_vertex(self, v: Vertex) -> None:
        if not self.has_vertex(v):
            raise GraphError(f"{v!r} is not a vertex of this graph")

    def adjacent(self, v: int, w: int) -> bool:
        self.check_vertex(v)
        self.check_vertex(w)
        if v == w:
            return False
        return (min(v, w), max(v, w)) in self.edges

    def perm_of(self, gamma: tuple[int, ...]) -> dict:
        """The automorphism through which a Z^n element acts."""
        if len(gamma) != self.rank:
            raise GraphError(f"gamma must have {self.rank} coordinates, got {gamma!r}")
        out = {v: v for v in self.vertices}
        for g, power in zip(self._gen_maps(), gamma):
            step = g if power >= 0 else {img: v for v, img in g.items()}
            for _ in range(abs(power) % _perm_order(g)):
                out = _perm_compose(step, out)
        return out

    def act(self, gamma: tuple[int, ...], v: int) -> int:
        self.check_vertex(v)
        return self.perm_of(gamma)[v]

    def vertex_key(self, v: int) -> int:
        return v

    def has_loop(self, v: int) -> bool:
        return False

    def image_group(self) -> list[dict]:
        """The finite abelian group generated by the generator maps."""
        return close_permutations(self._gen_maps(), self.vertices)


def _perm_order(g: dict) -> int:
    out = 1
    current = g
    ident = {v: v for v in g}
    while current != ident:
        current = _perm_compose(g, current)
        out += 1
    return out


def close_permutations(maps: Sequence[dict], vertices: Sequence[int]) -> list[dict]:
    """Closure of a set of permutations under composition, sorted."""
    ident = {v: v for v in vertices}
    seen = {_perm_tuple(ident, vertices): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in maps:
                q = _perm_compose(g, p)
                key = _perm_tuple(q, vertices)
                if key not in seen:
                    seen[key] = q
                    nxt.append(q)
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


def _perm_tuple(p: dict, vertices: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[v] for v in sorted(vertices))


# ---------------------------------------------------------------------------
# plain finite graphs (induced subgraphs, oracle helpers)


class FiniteGraph:
    """A bare finite simplicial graph with an explicit vertex order."""

    def __init__(self, vertices, edges, key=None):
        self.key = key if key is not None else lambda v: v
        self.vertices = tuple(sorted(vertices, key=self.key))
        self.edges = frozenset(_norm_edge(self.key, u, w) for u, w in edges)
        for u, w in self.edges:
            if u == w:
                raise GraphError(f"loop at vertex {u!r} is not allowed")

    def has_vertex(self, v) -> bool:
        return v in self.vertices

    def check_vertex(self, v) -> None:
        if not self.has_vertex(v):
            raise GraphError(f"{v!r} is not a vertex of this graph")

    def adjacent(self, v, w) -> bool:
        if v == w:
            return False
        return _norm_edge(self.key, v, w) in self.edges

    def vertex_key(self, v):
        return self.key(v)

    def has_loop(self, v) -> bool:
        return False

    def __eq__(self, other):
        if not isinstance(other, FiniteGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __repr__(self):
        return f"FiniteGraph(vertices={self.vertices!r}, edges={sorted(self.edges)!r})"


def induced(graph, subset: Iterable[Vertex]) -> FiniteGraph:
    """The subgraph on ``subset`` with exactly the ambient edges."""
    verts = list(dict.fromkeys(subset))
    for v in verts:
        graph.check_vertex(v)
    edges = [
        (u, w) for u, w in itertools.combinations(verts, 2) if graph.adjacent(u, w)
    ]
    return FiniteGraph(verts, edges, key=graph.vertex_key)


# ---------------------------------------------------------------------------
# quotient graphs


class QuotientGraph:
    """The orbit graph of a graph under a finite-index subgroup.

    Vertices are orbit ids; two distinct orbits are joined when any of
    their members are, and an orbit carries a loop flag when two
    distinct members of it are adjacent.  Loops are recorded and never
    dropped: whether a loop is fatal is a property of the coefficient
    group, decided downstream.
    """

    def __init__(self, kind, vertices, edges, loops, lift, *, modulus=None,
                 labels=None, orbit_map=None, subgroup_perms=None):
        self.kind = kind  # "translation" | "finite"
        self.vertices = tuple(vertices)
        self.edges = frozenset(edges)
        self.loops = frozenset(loops)
        self.lift = dict(lift)
        self.modulus = modulus
        self.labels = tuple(labels) if labels is not None else None
        self.orbit_map = dict(orbit_map) if orbit_map is not None else None
        self.subgroup_perms = subgroup_perms

    @property
    def gamma_kind(self) -> str:
        return "z-mod" if self.kind == "translation" else "finite-quotient"

    def project(self, v: Vertex):
        """Orbit id of an ambient vertex."""
        if self.kind == "translation":
            return (v[0], v[1] % self.modulus)
        return self.orbit_map[v]

    def has_vertex(self, v) -> bool:
        return v in set(self.vertices)

    def check_vertex(self, v) -> None:
        if not self.has_vertex(v):
            raise GraphError(f"{v!r} is not an orbit of this quotient")

    def adjacent(self, u, w) -> bool:
        if u == w:
            return False
        return (u, w) in self.edges or (w, u) in self.edges

    def has_loop(self, u) -> bool:
        return u in self.loops

    def vertex_key(self, u):
        if self.kind == "translation":
            return (self.labels.index(u[0]), u[1])
        return u

    def act(self, gamma_residue: int, u):
        """Residue translation on a translation quotient."""
        if self.kind != "translation":
            raise GraphError("acting on a finite-mode quotient requires a coset")
        return (u[0], (u[1] + gamma_residue) % self.modulus)

    def content(self) -> tuple:
        return (self.kind, self.vertices, self.edges, self.loops,
                tuple(sorted(self.lift.items())))

    def __eq__(self, other):
        if not isinstance(other, QuotientGraph):
            return NotImplemented
        return self.content() == other.content()


def quotient_graph(graph, subgroup) -> QuotientGraph:
    """Quotient by mZ (translation) or by a subgroup of the finite image.

    Translation mode takes a modulus m >= 1 and computes edges through
    the residue sets of the difference families.  Finite mode takes the
    subgroup as an iterable of gamma vectors (or permutation dicts) and
    enumerates orbits exhaustively.
    """
    if isinstance(graph, TranslationGraph):
        return _translation_quotient(graph, subgroup)
    if isinstance(graph, FiniteModeGraph):
        return _finite_quotient(graph, subgroup)
    raise GraphError(f"cannot quotient {type(graph).__name__}")


def _translation_quotient(graph: TranslationGraph, m: int) -> QuotientGraph:
    if not isinstance(m, int) or m < 1:
        raise GraphError(f"modulus must be a positive integer, got {m!r}")
    vertices = [(c, r) for c in graph.labels for r in range(m)]
    edges = set()
    loops = set()
    for (c1, c2), fams in graph.families.items():
        res = residues_of(fams, m)
        for r1 in range(m):
            for r2 in range(m):
                u, w = (c1, r1), (c2, r2)
                if (r2 - r1) % m in res and u != w:
                    edges.add(_ordered_pair(graph.labels, u, w))
        # 0 in the residue set means two distinct lifts of one orbit are
        # adjacent, which is exactly the loop condition.
        if c1 == c2 and 0 in res:
            loops.update((c1, r) for r in range(m))
    lift = {(c, r): (c, r) for c, r in vertices}
    return QuotientGraph(
        "translation", vertices, edges, loops, lift, modulus=m, labels=graph.labels
    )


def _ordered_pair(labels, u, w):
    ku = (labels.index(u[0]), u[1])
    kw = (labels.index(w[0]), w[1])
    return (u, w) if ku <= kw else (w, u)


def normalize_subgroup(graph: FiniteModeGraph, subgroup) -> list[dict]:
    """Closure of the given generators inside the finite image group."""
    image = graph.image_group()
    image_keys = {_perm_tuple(p, graph.vertices) for p in image}
    maps = []
    for g in subgroup:
        if isinstance(g, dict):
            p = dict(g)
        else:
            p = graph.perm_of(tuple(g))
        if _perm_tuple(p, graph.vertices) not in image_keys:
            raise GraphError("subgroup generator lies outside the acting image")
        maps.append(p)
    return close_permutations(maps, graph.vertices)


def _finite_quotient(graph: FiniteModeGraph, subgroup) -> QuotientGraph:
    perms = normalize_subgroup(graph, subgroup)
    orbit_map: dict[int, int] = {}
    for v in graph.vertices:
        if v not in orbit_map:
            orbit = sorted({p[v] for p in perms})
            rep = orbit[0]
            for u in orbit:
                orbit_map[u] = rep
    vertices = sorted(set(orbit_map.values()))
    edges = set()
    loops = set()
    for u, w in graph.edges:
        ou, ow = orbit_map[u], orbit_map[w]
        if ou == ow:
            loops.add(ou)
        else:
            edges.add((min(ou, ow), max(ou, ow)))
    lift = {rep: rep for rep in vertices}
    return QuotientGraph(
        "finite",
        vertices,
        edges,
        loops,
        lift,
        orbit_map=orbit_map,
        subgroup_perms=tuple(sorted(_perm_tuple(p, graph.vertices) for p in perms)),
    )


def enumerate_subgroups(graph: FiniteModeGraph) -> list[list[dict]]:
    """All subgroups of the acting image, by ascending index.

    Built as joins of cyclic subgroups and deduplicated; within one
    index the order is fixed by the sorted permutation tuples, so the
    subgroup searches downstream are deterministic.
    """
    image = graph.image_group()
    verts = graph.vertices

    def key_of(perms):
        return tuple(sorted(_perm_tuple(p, verts) for p in perms))

    cyclics = {}
    for p in image:
        sub = close_permutations([p], verts)
        cyclics[key_of(sub)] = sub
    subgroups = {key_of(close_permutations([], verts)): close_permutations([], verts)}
    frontier = dict(subgroups)
    while frontier:
        nxt = {}
        for sub in frontier.values():
            for cyc in cyclics.values():
                joined = close_permutations(list(sub) + list(cyc), verts)
                k = key_of(joined)
                if k not in subgroups:
                    subgroups[k] = joined
                    nxt[k] = joined
        frontier = nxt
    total = len(image)
    return sorted(subgroups.values(), key=lambda s: (total // len(s), key_of(s)))


# ---------------------------------------------------------------------------
# orbit counting and completeness


def orbit_counts(graph) -> tuple[int, int | None]:
    """(vertex orbit count, edge orbit count); None means infinite."""
    if isinstance(graph, TranslationGraph):
        vertex_orbits = len(graph.labels)
        if not graph.all_finite():
            return vertex_orbits, None
        edge_orbits = 0
        for (c1, c2), fams in graph.families.items():
            offsets = set()
            for f in fams:
                offsets |= f.offsets
            if c1 == c2:
                edge_orbits += len(offsets) // 2
            else:
                edge_orbits += len(offsets)
        return vertex_orbits, edge_orbits
    if isinstance(graph, FiniteModeGraph):
        perms = graph.image_group()
        seen_v = set()
        vertex_orbits = 0
        for v in graph.vertices:
            if v not in seen_v:
                vertex_orbits += 1
                seen_v.update(p[v] for p in perms)
        seen_e = set()
        edge_orbits = 0
        for u, w in sorted(graph.edges):
            if (u, w) not in seen_e:
                edge_orbits += 1
                for p in perms:
                    seen_e.add((min(p[u], p[w]), max(p[u], p[w])))
        return vertex_orbits, edge_orbits
    raise GraphError(f"cannot count orbits of {type(graph).__name__}")


def is_complete(graph) -> bool:
    """Whether every pair of distinct vertices is joined by an edge.

    A translation graph can only be complete with a single orbit label,
    because cross-label pairs at offset 0 can never be adjacent.
    """
    if isinstance(graph, TranslationGraph):
        if len(graph.labels) != 1:
            return False
        c = graph.labels[0]
        return covers_all_nonzero(graph.families_for(c, c))
    if isinstance(graph, FiniteModeGraph):
        n = len(graph.vertices)
        return len(graph.edges) == n * (n - 1) // 2
    raise GraphError(f"cannot test completeness of {type(graph).__name__}")
