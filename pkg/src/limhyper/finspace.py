"""Finite topological spaces on small ground sets.

Points are the integers ``0..n-1`` and every point set is an ``int``
bitmask, so a space on at most 16 points stores its whole topology as a
tuple of machine words. All values are immutable after construction and
safe to share between parallel workers.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import AxiomViolation, BudgetExceeded, GroundMismatch

MAX_POINTS = 16
MAX_ENUM_POINTS = 5


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bits(mask: int) -> Iterator[int]:
    """Yield the points of a bitmask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def canonical_key(mask: int) -> tuple[int, int]:
    """Sort key for set families: cardinality first, then mask value."""
    return (mask.bit_count(), mask)


def set_repr(mask: int) -> str:
    """Render a bitmask as ``{0,2}`` for error messages and debugging."""
    return "{" + ",".join(str(p) for p in bits(mask)) + "}"


@dataclass(frozen=True)
class FinTopSpace:
    """A validated finite topology: point count plus its open-set family.

    ``opens`` is deduplicated and canonically ordered, so equal spaces
    compare equal and serialize identically.
    """

    n: int
    opens: tuple[int, ...]

    @property
    def full(self) -> int:
        return full_mask(self.n)

    def __repr__(self) -> str:
        sets = " ".join(set_repr(u) for u in self.opens)
        return f"FinTopSpace(n={self.n}, opens=[{sets}])"


def validate_topology(n: int, opens: Iterable[int]) -> FinTopSpace:
    """Check the topology axioms and return the canonicalized space.

    The family must contain the empty set and the ground set and be closed
    under pairwise union and pairwise intersection; pairwise closure
    suffices because the family is finite.
    """
    if n < 0 or n > MAX_POINTS:
        raise GroundMismatch(f"point count {n} outside 0..{MAX_POINTS}")
    full = full_mask(n)
    fam = set()
    for m in opens:
        if m < 0 or m & ~full:
            raise GroundMismatch(f"open set {m} not within the {n}-point ground set")
        fam.add(m)
    ordered = sorted(fam, key=canonical_key)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if a | b not in fam:
                raise AxiomViolation(
                    f"union of opens {set_repr(a)} and {set_repr(b)} missing",
                    witness=(a, b),
                )
            if a & b not in fam:
                raise AxiomViolation(
                    f"intersection of opens {set_repr(a)} and {set_repr(b)} missing",
                    witness=(a, b),
                )
    if 0 not in fam:
        raise AxiomViolation("empty set missing from the open family")
    if full not in fam:
        raise AxiomViolation("ground set missing from the open family")
    return FinTopSpace(n, tuple(ordered))


def _check_subset(space: FinTopSpace, s: int) -> None:
    if s < 0 or s & ~space.full:
        raise GroundMismatch(f"point set {set_repr(s)} outside the {space.n}-point ground set")


def closure(space: FinTopSpace, s: int) -> int:
    """Smallest closed superset of ``s``.

    The union of all opens disjoint from ``s`` is the largest open avoiding
    it; the complement of that union is the closure.
    """
    _check_subset(space, s)
    avoid = 0
    for u in space.opens:
        if not u & s:
            avoid |= u
    return space.full & ~avoid


def min_nbhd(space: FinTopSpace, x: int) -> int:
    """The inclusion-least open set containing the point ``x``.

    Finite intersection-closure of the open family guarantees the result
    is itself open.
    """
    if not 0 <= x < space.n:
        raise GroundMismatch(f"point {x} outside the {space.n}-point ground set")
    m = space.full
    bit = 1 << x
    for u in space.opens:
        if u & bit:
            m &= u
    return m


def closed_sets(space: FinTopSpace) -> tuple[int, ...]:
    """Complements of the opens, canonically ordered."""
    full = space.full
    return tuple(sorted((full ^ u for u in space.opens), key=canonical_key))


def is_T0(space: FinTopSpace) -> bool:
    """True when singleton closures are pairwise distinct."""
    seen = {closure(space, 1 << x) for x in range(space.n)}
    return len(seen) == space.n


def is_connected(space: FinTopSpace) -> bool:
    """True when no set other than the empty set and the ground set is clopen."""
    fam = set(space.opens)
    full = space.full
    return not any(u not in (0, full) and (full ^ u) in fam for u in space.opens)


def separated_points(space: FinTopSpace) -> int:
    """Points y that have a neighborhood disjoint from some neighborhood of
    every z outside closure({y}); returned as a bitmask.

    Disjoint opens around y and z exist exactly when the minimal
    neighborhoods of y and z are disjoint.
    """
    mins = [min_nbhd(space, x) for x in range(space.n)]
    out = 0
    for y in range(space.n):
        cl = closure(space, 1 << y)
        if all(not mins[y] & mins[z] for z in bits(space.full & ~cl)):
            out |= 1 << y
    return out


def specialization_pairs(space: FinTopSpace) -> tuple[tuple[int, int], ...]:
    """All pairs (x, y) with x in closure({y}), reflexive pairs included."""
    pairs = []
    for y in range(space.n):
        cl = closure(space, 1 << y)
        pairs.extend((x, y) for x in bits(cl))
    return tuple(sorted(pairs))


def _space_from_rows(n: int, rows: tuple[int, ...]) -> FinTopSpace:
    """Topology whose opens are the unions of the given minimal neighborhoods."""
    fam = {0}
    for sub in range(1 << n):
        u = 0
        for i in bits(sub):
            u |= rows[i]
        fam.add(u)
    return FinTopSpace(n, tuple(sorted(fam, key=canonical_key)))


def from_preorder(n: int, relation: Iterable[tuple[int, int]]) -> FinTopSpace:
    """Topology whose opens are the up-sets of a preorder.

    A pair (a, b) means a <= b. The reflexive-transitive closure is taken
    internally. The convention matches the specialization preorder
    x <= y iff x in closure({y}): the minimal neighborhood of x comes out
    as {y : x <= y}, so ``from_preorder`` composed with
    ``specialization_pairs`` is the identity on spaces.
    """
    if n < 0 or n > MAX_POINTS:
        raise GroundMismatch(f"point count {n} outside 0..{MAX_POINTS}")
    rows = [1 << i for i in range(n)]
    for a, b in relation:
        if not (0 <= a < n and 0 <= b < n):
            raise GroundMismatch(f"relation pair ({a},{b}) outside the {n}-point ground set")
        rows[a] |= 1 << b
    changed = True
    while changed:
        changed = False
        for i in range(n):
            merged = rows[i]
            for j in bits(rows[i]):
                merged |= rows[j]
            if merged != rows[i]:
                rows[i] = merged
                changed = True
    return _space_from_rows(n, tuple(rows))


def _preorder_rows(n: int) -> Iterator[tuple[int, ...]]:
    """Every reflexive transitive row table on n points, depth first.

    rows[i] is the bitmask {j : i <= j}; transitivity is the row condition
    j in rows[i] implies rows[j] subset of rows[i], checked incrementally.
    """
    if n == 0:
        yield ()
        return
    full = full_mask(n)
    candidates = [[m for m in range(full + 1) if m & (1 << i)] for i in range(n)]
    rows: list[int] = []

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(rows)
            return
        for m in candidates[k]:
            ok = True
            for i in range(k):
                ri = rows[i]
                if (m >> i) & 1 and ri & ~m:
                    ok = False
                    break
                if (ri >> k) & 1 and m & ~ri:
                    ok = False
                    break
            if ok:
                rows.append(m)
                yield from extend(k + 1)
                rows.pop()

    yield from extend(0)


def enumerate_topologies(n: int) -> Iterator[FinTopSpace]:
    """Every labeled topology on n points, each exactly once, in a
    deterministic order.

    Preorders and topologies on a finite labeled set are in bijection, so
    the stream enumerates transitive reflexive row tables and converts
    each to its up-set topology; no deduplication is needed.
    """
    if n < 0:
        raise GroundMismatch("negative point count")
    if n > MAX_ENUM_POINTS:
        raise BudgetExceeded(f"enumeration capped at {MAX_ENUM_POINTS} points, got {n}")
    for rows in _preorder_rows(n):
        yield _space_from_rows(n, rows)


def digest(space: FinTopSpace) -> str:
    """Short stable identifier of a space, derived from its canonical form."""
    payload = f"{space.n}|{','.join(map(str, space.opens))}"
    return hashlib.sha256(payload.encode()).hexdigest()[:12]
