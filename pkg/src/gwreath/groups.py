"""Exact arithmetic in the supported coefficient and acting groups.

Group elements are plain immutable values: residues for cyclic groups,
image tuples for permutations, indices for table groups, integer tuples
for free-abelian groups and for finite cyclic powers.  Every operation
is a pure function of (spec, value), so shared specs are safe to reuse
across threads and tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import GroupError

Element = int | tuple[int, ...]


class GroupSpec:
    """Common interface of the concrete group classes."""

    def identity(self) -> Element:
        raise NotImplementedError

    def compose(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def invert(self, a: Element) -> Element:
        raise NotImplementedError

    def contains(self, a: Element) -> bool:
        raise NotImplementedError

    def is_abelian(self) -> bool:
        raise NotImplementedError

    def is_finite(self) -> bool:
        return True

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        raise NotImplementedError

    def elements(self) -> Iterator[Element]:
        """Deterministic enumeration; only available for finite specs."""
        raise NotImplementedError

    def is_identity(self, a: Element) -> bool:
        return a == self.identity()

    def check(self, a: Element) -> None:
        if not self.contains(a):
            raise GroupError(f"{a!r} is not an element of {self!r}")


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    """Integers modulo ``n`` under addition; elements are residues."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise GroupError(f"cyclic order must be >= 1, got {self.n}")

    def identity(self) -> int:
        return 0

    def compose(self, a, b):
        self.check(a)
        self.check(b)
        return (a + b) % self.n

    def invert(self, a):
        self.check(a)
        return (-a) % self.n

    def contains(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.n

    def is_abelian(self) -> bool:
        return True

    def order(self) -> int:
        return self.n

    def elements(self):
        return iter(range(self.n))


@dataclass(frozen=True)
class Symmetric(GroupSpec):
    """All permutations of {0, ..., degree-1} as image tuples.

    Composition applies the right factor first: (a * b)(x) = a(b(x)),
    matching ordinary function composition.  The worked values in the
    tests depend on this convention.
    """

    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise GroupError(f"symmetric degree must be >= 1, got {self.degree}")

    def identity(self) -> tuple[int, ...]:
        return tuple(range(self.degree))

    def compose(self, a, b):
        self.check(a)
        self.check(b)
        return tuple(a[b[i]] for i in range(self.degree))

    def invert(self, a):
        self.check(a)
        out = [0] * self.degree
        for i, image in enumerate(a):
            out[image] = i
        return tuple(out)

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == self.degree
            and sorted(a) == list(range(self.degree))
        )

    def is_abelian(self) -> bool:
        return self.degree <= 2

    def order(self) -> int:
        out = 1
        for k in range(2, self.degree + 1):
            out *= k
        return out

    def elements(self):
        return itertools.permutations(range(self.degree))


@dataclass(frozen=True)
class FiniteTable(GroupSpec):
    """A finite group given by its full multiplication table.

    ``table[i][j]`` is the index of the product of elements i and j.
    The table is validated eagerly at construction: closure, the
    declared identity, inverses, and associativity are all checked by
    exhaustive scan, and invalid tables are rejected outright.
    """

    size: int
    table: tuple[tuple[int, ...], ...]
    identity_index: int = 0

    def __post_init__(self):
        n = self.size
        if n < 1:
            raise GroupError("table group must have at least one element")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise GroupError(f"multiplication table must be {n}x{n}")
        if not 0 <= self.identity_index < n:
            raise GroupError(f"identity index {self.identity_index} out of range")
        for row in self.table:
            for entry in row:
                if not isinstance(entry, int) or not 0 <= entry < n:
                    raise GroupError(f"table entry {entry!r} out of range (not closed)")
        e = self.identity_index
        for i in range(n):
            if self.table[e][i] != i or self.table[i][e] != i:
                raise GroupError(f"index {e} is not a two-sided identity")
        for i in range(n):
            if not any(
                self.table[i][j] == e and self.table[j][i] == e for j in range(n)
            ):
                raise GroupError(f"element {i} has no inverse")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        raise GroupError(
                            f"table is not associative at ({i}, {j}, {k})"
                        )

    def identity(self) -> int:
        return self.identity_index

    def compose(self, a, b):
        self.check(a)
        self.check(b)
        return self.table[a][b]

    def invert(self, a):
        self.check(a)
        e = self.identity_index
        for b in range(self.size):
            if self.table[a][b] == e:
                return b
        raise GroupError(f"no inverse for {a}")  # unreachable after validation

    def contains(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.size

    def is_abelian(self) -> bool:
        n = self.size
        return all(
            self.table[i][j] == self.table[j][i] for i in range(n) for j in range(n)
        )

    def order(self) -> int:
        return self.size

    def elements(self):
        return iter(range(self.size))


@dataclass(frozen=True)
class FreeAbelian(GroupSpec):
    """Integer vectors of a fixed rank under addition."""

    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise GroupError(f"rank must be >= 0, got {self.rank}")

    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def compose(self, a, b):
        self.check(a)
        self.check(b)
        return tuple(x + y for x, y in zip(a, b))

    def invert(self, a):
        self.check(a)
        return tuple(-x for x in a)

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == self.rank
            and all(isinstance(x, int) for x in a)
        )

    def is_abelian(self) -> bool:
        return True

    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int | None:
        return 1 if self.rank == 0 else None

    def elements(self):
        if self.rank == 0:
            return iter([()])
        raise GroupError("free abelian group of positive rank is infinite")


@dataclass(frozen=True)
class CyclicPower(GroupSpec):
    """(Z/n)^rank with residue-vector elements.

    This is the target of the coordinatewise reduction maps used to
    separate free-abelian elements.
    """

    n: int
    rank: int

    def __post_init__(self):
        if self.n < 1:
            raise GroupError(f"modulus must be >= 1, got {self.n}")
        if self.rank < 0:
            raise GroupError(f"rank must be >= 0, got {self.rank}")

    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def compose(self, a, b):
        self.check(a)
        self.check(b)
        return tuple((x + y) % self.n for x, y in zip(a, b))

    def invert(self, a):
        self.check(a)
        return tuple((-x) % self.n for x in a)

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == self.rank
            and all(isinstance(x, int) and 0 <= x < self.n for x in a)
        )

    def is_abelian(self) -> bool:
        return True

    def order(self) -> int:
        return self.n**self.rank

    def elements(self):
        return itertools.product(range(self.n), repeat=self.rank)


def commutator(spec: GroupSpec, a: Element, b: Element) -> Element:
    """a * b * a^-1 * b^-1."""
    return spec.compose(spec.compose(a, b), spec.compose(spec.invert(a), spec.invert(b)))


def noncommuting_pair(spec: GroupSpec) -> tuple[Element, Element] | None:
    """First pair of elements that fail to commute, in enumeration order.

    Returns None for abelian specs (including infinite ones).
    """
    if spec.is_abelian():
        return None
    pool = list(spec.elements())
    for a in pool:
        for b in pool:
            if spec.compose(a, b) != spec.compose(b, a):
                return a, b
    return None


def first_nontrivial(spec: GroupSpec) -> Element | None:
    """Deterministically chosen non-identity element, or None if trivial."""
    if isinstance(spec, FreeAbelian):
        if spec.rank == 0:
            return None
        return (1,) + (0,) * (spec.rank - 1)
    e = spec.identity()
    for a in spec.elements():
        if a != e:
            return a
    return None


@dataclass(frozen=True)
class Homomorphism:
    """A group homomorphism given by one of three rules.

    ``identity`` maps a spec to itself; ``reduce-mod`` reduces a
    free-abelian vector coordinatewise into a cyclic power; ``table``
    is a full element map from a finite source, validated against the
    composition law on every pair at construction.
    """

    source: GroupSpec
    target: GroupSpec
    rule: str
    modulus: int | None = None
    mapping: tuple[tuple[Element, Element], ...] | None = None

    def __post_init__(self):
        if self.rule == "identity":
            if self.source != self.target:
                raise GroupError("identity rule requires equal source and target")
        elif self.rule == "reduce-mod":
            if not isinstance(self.source, FreeAbelian):
                raise GroupError("reduce-mod requires a free-abelian source")
            if self.modulus is None or self.modulus < 1:
                raise GroupError("reduce-mod requires a positive modulus")
            expected = CyclicPower(self.modulus, self.source.rank)
            if self.target != expected:
                raise GroupError(f"reduce-mod target must be {expected!r}")
        elif self.rule == "table":
            if not self.source.is_finite():
                raise GroupError("table rule requires a finite source")
            if self.mapping is None:
                raise GroupError("table rule requires an element map")
            lookup = dict(self.mapping)
            domain = list(self.source.elements())
            if set(lookup) != set(domain) or len(self.mapping) != len(domain):
                raise GroupError("table map must cover the source exactly once")
            for image in lookup.values():
                self.target.check(image)
            for a in domain:
                for b in domain:
                    left = lookup[self.source.compose(a, b)]
                    right = self.target.compose(lookup[a], lookup[b])
                    if left != right:
                        raise GroupError(
                            f"table map does not respect composition at ({a!r}, {b!r})"
                        )
        else:
            raise GroupError(f"unknown homomorphism rule {self.rule!r}")

    def apply(self, a: Element) -> Element:
        self.source.check(a)
        if self.rule == "identity":
            return a
        if self.rule == "reduce-mod":
            return tuple(x % self.modulus for x in a)
        return dict(self.mapping)[a]


def identity_hom(spec: GroupSpec) -> Homomorphism:
    return Homomorphism(source=spec, target=spec, rule="identity")


def separating_quotient(spec: GroupSpec, a: Element) -> tuple[Homomorphism, Element]:
    """A map to a finite group under which ``a`` keeps a nontrivial image.

    Finite specs separate themselves via the identity rule.  For a
    free-abelian spec the smallest modulus m >= 2 leaving some
    coordinate of ``a`` nonzero is used, which makes the output
    deterministic.
    """
    spec.check(a)
    if spec.is_identity(a):
        raise GroupError("cannot separate the identity from itself")
    if spec.is_finite():
        hom = identity_hom(spec)
        image = hom.apply(a)
        assert not spec.is_identity(image)
        return hom, image
    if not isinstance(spec, FreeAbelian):
        raise GroupError(f"no separating quotient rule for {spec!r}")
    m = 2
    while all(x % m == 0 for x in a):
        m += 1
    hom = Homomorphism(
        source=spec, target=CyclicPower(m, spec.rank), rule="reduce-mod", modulus=m
    )
    image = hom.apply(a)
    assert not hom.target.is_identity(image)
    return hom, image
