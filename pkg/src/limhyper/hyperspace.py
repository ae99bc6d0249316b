"""The lower semifinite topology (tau_w) and the Fell topology (tau_s) on a
carrier of closed sets.

Both topologies are represented by minimal neighborhoods: on a finite
space every carrier element has an inclusion-least basic open around it,
and the table of those neighborhoods determines closure, density,
separation and convergence. ``build_topology`` uses closed forms for the
tables; ``min_nbhd_oracle`` recomputes them by literally intersecting
basic opens and exists so the closed forms are never trusted silently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceeded, NotOpen
from .finspace import FinTopSpace, bits, canonical_key, min_nbhd, set_repr
from .limitsets import HyperCarrier, carrier as build_carrier

FLAVORS = ("w", "s")

ORACLE_EXACT_OPENS = 12


@dataclass(frozen=True)
class HyperTopology:
    """Minimal-neighborhood table of tau_w or tau_s restricted to a carrier.

    ``min_nbhds[i]`` is the set of carrier indices inside the least open
    neighborhood of element i.
    """

    carrier: HyperCarrier
    flavor: str
    min_nbhds: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.carrier.elements)


@dataclass(frozen=True)
class EvPerSeq:
    """An eventually periodic sequence: a finite preperiod and a nonempty
    cycle repeated forever. Entries are carrier indices for topology-level
    operations and closed-set masks for the point-selection conditions.
    """

    preperiod: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must be nonempty")

    def term(self, k: int) -> int:
        if k < len(self.preperiod):
            return self.preperiod[k]
        return self.cycle[(k - len(self.preperiod)) % len(self.cycle)]


def basic_open_membership(space: FinTopSpace, a: int, c: int, phi: Iterable[int]) -> bool:
    """Membership of a in the basic set determined by the miss set c and
    the finite hit family phi: a avoids c and meets every member of phi.
    Every subset of a finite space is compact, so c is unconstrained.
    """
    fam = set(space.opens)
    members = list(phi)
    for u in members:
        if u not in fam:
            raise NotOpen(f"hit family member {set_repr(u)} is not open")
    return not a & c and all(a & u for u in members)


def build_topology(car: HyperCarrier, flavor: str) -> HyperTopology:
    """Closed-form minimal neighborhoods.

    tau_w: B is in the minimal neighborhood of A iff B meets every open
    that meets A. tau_s additionally requires B to be a subset of A: the
    union of the compacts disjoint from A is the complement of A, so the
    tightest miss constraint around A is exactly that complement.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected 'w' or 's'")
    space = car.space
    elems = car.elements
    nbhds = []
    for a in elems:
        hits = [u for u in space.opens if u & a]
        members = set()
        for j, b in enumerate(elems):
            if flavor == "s" and b & ~a:
                continue
            if all(b & u for u in hits):
                members.add(j)
        nbhds.append(frozenset(members))
    return HyperTopology(car, flavor, tuple(nbhds))


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def min_nbhd_oracle(
    car: HyperCarrier,
    flavor: str,
    a: int,
    mode: str = "auto",
    samples: int = 2048,
    seed: int = 20260809,
) -> frozenset[int]:
    """Minimal neighborhood of ``a`` by brute force: intersect every basic
    open containing a, restricted to the carrier.

    For tau_s the miss set ranges over all subsets disjoint from a and the
    hit family over all subfamilies of opens meeting a; for tau_w the miss
    set is empty. Exact up to ``ORACLE_EXACT_OPENS`` opens; ``auto``
    switches to seeded sampling beyond that, ``exact`` raises instead.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected 'w' or 's'")
    if mode not in ("auto", "exact", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    space = car.space
    elems = car.elements
    idx = car.index(a)
    hits = [u for u in space.opens if u & a]
    comp = space.full & ~a
    exact = len(space.opens) <= ORACLE_EXACT_OPENS
    if mode == "exact" and not exact:
        raise BudgetExceeded(
            f"exact oracle limited to {ORACLE_EXACT_OPENS} opens, space has {len(space.opens)}"
        )

    result = set(range(len(elems)))

    def restrict(c: int, phi: list[int]) -> None:
        kept = set()
        for j in result:
            b = elems[j]
            if not b & c and all(b & u for u in phi):
                kept.add(j)
        result.intersection_update(kept)

    if exact and mode != "sampled":
        c_values = list(_submasks(comp)) if flavor == "s" else [0]
        for c in c_values:
            for chosen in range(1 << len(hits)):
                restrict(c, [hits[i] for i in bits(chosen)])
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            c = rng.getrandbits(space.n) & comp if flavor == "s" else 0
            chosen = rng.getrandbits(len(hits)) if hits else 0
            restrict(c, [hits[i] for i in bits(chosen)])
    assert idx in result
    return frozenset(result)


def hyper_closure(top: HyperTopology, s: Iterable[int]) -> frozenset[int]:
    """Closure of a set of carrier indices: everything whose minimal
    neighborhood meets the set."""
    sset = frozenset(s)
    return frozenset(i for i in range(len(top)) if top.min_nbhds[i] & sset)


def is_dense(top: HyperTopology, s: Iterable[int]) -> bool:
    return hyper_closure(top, s) == frozenset(range(len(top)))


def is_closed_sub(top: HyperTopology, s: Iterable[int]) -> bool:
    return hyper_closure(top, s) == frozenset(s)


def identity_continuous_at(
    space: FinTopSpace,
    a: int,
    topologies: tuple[HyperTopology, HyperTopology] | None = None,
) -> bool:
    """Continuity at ``a`` of the identity map from (L(X), tau_w) to
    (L(X), tau_s): the tau_w minimal neighborhood must already fit inside
    the tau_s one. Prebuilt (tau_w, tau_s) tables over L may be passed to
    avoid rebuilding them per query.
    """
    if topologies is None:
        car = build_carrier(space, "L")
        topologies = (build_topology(car, "w"), build_topology(car, "s"))
    tw, ts = topologies
    idx = tw.carrier.index(a)
    return tw.min_nbhds[idx] <= ts.min_nbhds[idx]


def is_separated_in(top: HyperTopology, i: int) -> bool:
    """True when element i has a neighborhood disjoint from one of every
    element outside its closure."""
    cl = hyper_closure(top, (i,))
    mine = top.min_nbhds[i]
    return all(not mine & top.min_nbhds[j] for j in range(len(top)) if j not in cl)


def is_hausdorff(top: HyperTopology) -> bool:
    k = len(top)
    return all(
        not top.min_nbhds[i] & top.min_nbhds[j]
        for i in range(k)
        for j in range(i + 1, k)
    )


def is_connected_hyper(top: HyperTopology) -> bool:
    """No proper nonempty clopen subset; equivalently the symmetric
    minimal-neighborhood adjacency graph has one component."""
    k = len(top)
    if k <= 1:
        return True
    adj = [set() for _ in range(k)]
    for i in range(k):
        for j in top.min_nbhds[i]:
            adj[i].add(j)
            adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == k


def _is_open_subset(top: HyperTopology, s: frozenset[int]) -> bool:
    return all(top.min_nbhds[i] <= s for i in s)


def is_compact_cover(top: HyperTopology, s: Iterable[int], cover: Sequence[Iterable[int]]) -> bool:
    """Verify a finite subcover of ``s`` exists inside ``cover``.

    Cover members must be open (unions of minimal neighborhoods). Returns
    False when the cover fails to cover ``s``, which is the only way the
    search can fail on a finite carrier.
    """
    sset = frozenset(s)
    members = [frozenset(m) for m in cover]
    for m in members:
        if not _is_open_subset(top, m):
            raise NotOpen(f"cover member {sorted(m)} is not open in the hyperspace")
    covered: set[int] = set()
    for i in sorted(sset):
        if i in covered:
            continue
        for m in members:
            if i in m:
                covered |= m
                break
        else:
            return False
    return True


def product_min_nbhd(
    t1: HyperTopology, t2: HyperTopology, pair: tuple[int, int]
) -> frozenset[tuple[int, int]]:
    """Minimal neighborhood of a pair in the product topology: the product
    of the factor minimal neighborhoods."""
    i, j = pair
    return frozenset((x, y) for x in t1.min_nbhds[i] for y in t2.min_nbhds[j])


def product_closure(
    t1: HyperTopology, t2: HyperTopology, pairs: Iterable[tuple[int, int]]
) -> frozenset[tuple[int, int]]:
    pset = frozenset(pairs)
    out = set()
    for i in range(len(t1)):
        for j in range(len(t2)):
            if any((x, y) in pset for x in t1.min_nbhds[i] for y in t2.min_nbhds[j]):
                out.add((i, j))
    return frozenset(out)


def product_is_closed(
    t1: HyperTopology, t2: HyperTopology, pairs: Iterable[tuple[int, int]]
) -> bool:
    pset = frozenset(pairs)
    return product_closure(t1, t2, pset) == pset


def S_of(m: Iterable[tuple[int, int]], top: HyperTopology) -> frozenset[int]:
    """Elements whose whole row lies inside the product set m: the slice
    map {a : {a} x carrier inside m}."""
    mset = frozenset(m)
    k = len(top)
    return frozenset(a for a in range(k) if all((a, b) in mset for b in range(k)))


def inclusion_relation(car: HyperCarrier) -> frozenset[tuple[int, int]]:
    """Index pairs (i, j) with element i a subset of element j."""
    elems = car.elements
    return frozenset(
        (i, j)
        for i, a in enumerate(elems)
        for j, b in enumerate(elems)
        if not a & ~b
    )


def seq_limits(top: HyperTopology, seq: EvPerSeq) -> frozenset[int]:
    """Limits of an eventually periodic sequence of carrier elements: the
    tail visits only the cycle, so A is a limit exactly when every cycle
    term sits in the minimal neighborhood of A."""
    cyc = set(seq.cycle)
    return frozenset(i for i in range(len(top)) if cyc <= top.min_nbhds[i])


def seq_clusters(top: HyperTopology, seq: EvPerSeq) -> frozenset[int]:
    """Cluster points: some cycle term recurs inside the minimal
    neighborhood."""
    cyc = set(seq.cycle)
    return frozenset(i for i in range(len(top)) if cyc & top.min_nbhds[i])


def is_primitive(top: HyperTopology, seq: EvPerSeq) -> bool:
    """A sequence is primitive when its limit set equals its cluster set."""
    return seq_limits(top, seq) == seq_clusters(top, seq)


def conv1_conditions(space: FinTopSpace, seq: EvPerSeq, a: int) -> tuple[bool, bool]:
    """Point-selection conditions for a sequence of closed-set masks
    against a target closed set ``a``.

    First condition: every point obtainable as the limit of points picked
    from infinitely many cycle terms lies in ``a``. A periodic selection
    converges to x exactly when each chosen point sits in min_nbhd(x), and
    selecting through more positions only shrinks the attainable limits,
    so single-position selections decide the condition.

    Second condition: every point of ``a`` is the limit of a full
    selection through the cycle. The positions constrain independently, so
    this holds iff every cycle term meets min_nbhd(x) for each x in a.

    Convergence is a tail property; the preperiod never matters.
    """
    mins = [min_nbhd(space, x) for x in range(space.n)]
    terms = sorted(set(seq.cycle), key=canonical_key)

    cond_a = True
    for t in terms:
        if not cond_a:
            break
        for p in bits(t):
            bad = any((mins[x] >> p) & 1 and not (a >> x) & 1 for x in range(space.n))
            if bad:
                cond_a = False
                break

    cond_b = all(t & mins[x] for x in bits(a) for t in terms)
    return cond_a, cond_b
