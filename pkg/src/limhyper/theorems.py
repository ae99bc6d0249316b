"""One named check per structural claim about the hyperspaces, a driver
that runs them all over a space or an enumeration sweep, and a
corrupted-carrier exploration mode proving the checks can actually fail.

Checks assert statements, never proof intermediates. Facts that finite
spaces make automatic (every subset compact, countable intersections
finite) still go through the generic machinery and are reported with the
distinct status ``trivially_true`` so they are never confused with
substantive passes. Sequence-based convergence checks carry the status
``proxy``.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass
from multiprocessing import Pool

from .errors import BudgetExceeded, NotInCarrier, NotOpen
from .finspace import (
    FinTopSpace,
    bits,
    canonical_key,
    closed_sets,
    digest,
    enumerate_topologies,
    is_connected,
    min_nbhd,
    separated_points,
)
from .hyperspace import (
    EvPerSeq,
    HyperTopology,
    S_of,
    build_topology,
    conv1_conditions,
    hyper_closure,
    identity_continuous_at,
    inclusion_relation,
    is_closed_sub,
    is_compact_cover,
    is_connected_hyper,
    is_dense,
    is_primitive,
    is_separated_in,
    product_closure,
    product_is_closed,
    product_min_nbhd,
    seq_limits,
)
from .limitsets import HyperCarrier, carrier as build_carrier, eta, is_limit_set

PASS = "pass"
FAIL = "fail"
TRIVIALLY_TRUE = "trivially_true"
PROXY = "proxy"

_ALPHABET = "abcdefghijklmnop"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: str
    witness: tuple[tuple[str, str], ...] = ()
    notes: str = ""


@dataclass(frozen=True)
class VerificationReport:
    space_digest: str
    n: int
    labels: tuple[str, ...]
    results: tuple[CheckResult, ...]
    elapsed_s: float = 0.0


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(_ALPHABET[i] for i in range(n))


class CheckEnv:
    """The carriers and hyperspace topologies that one space's checks share.

    Mining hands in corrupted carriers or raw neighborhood tables through
    the ``carriers`` / ``topologies`` overrides; every check then runs its
    ordinary logic against the broken structures.
    """

    def __init__(self, space, labels=None, carriers=None, topologies=None):
        self.space = space
        self.labels = tuple(labels) if labels else default_labels(space.n)
        self._carriers: dict[str, HyperCarrier] = dict(carriers or {})
        self._topologies: dict[tuple[str, str], HyperTopology] = dict(topologies or {})

    def carrier(self, kind: str) -> HyperCarrier:
        if kind not in self._carriers:
            self._carriers[kind] = build_carrier(self.space, kind)
        return self._carriers[kind]

    def topology(self, kind: str, flavor: str) -> HyperTopology:
        key = (kind, flavor)
        if key not in self._topologies:
            self._topologies[key] = build_topology(self.carrier(kind), flavor)
        return self._topologies[key]

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.labels[p] for p in bits(mask)) + "}"

    def fmt_family(self, masks) -> str:
        ordered = sorted(masks, key=canonical_key)
        return "[" + " ".join(self.fmt(m) for m in ordered) + "]"

    def fmt_indices(self, car: HyperCarrier, indices) -> str:
        return self.fmt_family(car.elements[i] for i in indices)


def check_closure_singleton(space, env):
    """The closure of one closed set in the lower topology on F(X) must be
    exactly its closed subsets."""
    t = env.topology("F", "w")
    elems = t.carrier.elements
    for i, a in enumerate(elems):
        got = hyper_closure(t, (i,))
        expected = frozenset(j for j, b in enumerate(elems) if not b & ~a)
        if got != expected:
            return CheckResult(
                "check_closure_singleton",
                FAIL,
                witness=(
                    ("element", env.fmt(a)),
                    ("closure", env.fmt_indices(t.carrier, sorted(got))),
                    ("expected", env.fmt_indices(t.carrier, sorted(expected))),
                ),
            )
    return CheckResult("check_closure_singleton", PASS)


def check_eta_closure_and_density(space, env):
    """Point-closure image: its closure in (F(X), tau_w) is L(X); Fprime is
    dense in F(X); ML(X) is dense in L(X); and L(X) is closed in both
    topologies on F(X)."""
    cid = "check_eta_closure_and_density"
    tf = env.topology("F", "w")
    fcar = tf.carrier
    lcar = env.carrier("L")

    eta_idx = {fcar.index(eta(space, x)) for x in range(space.n)}
    l_idx = frozenset(fcar.index(m) for m in lcar.elements)
    got = hyper_closure(tf, eta_idx)
    if got != l_idx:
        return CheckResult(
            cid,
            FAIL,
            witness=(
                ("closure_of_eta_image", env.fmt_indices(fcar, sorted(got))),
                ("limit_carrier", env.fmt_indices(fcar, sorted(l_idx))),
            ),
        )

    fp_idx = [i for i, m in enumerate(fcar.elements) if m]
    if not is_dense(tf, fp_idx):
        return CheckResult(cid, FAIL, witness=(("not_dense", "Fprime in (F,tau_w)"),))

    tl = env.topology("L", "w")
    ml_idx = [lcar.index(m) for m in env.carrier("ML").elements]
    if not is_dense(tl, ml_idx):
        return CheckResult(cid, FAIL, witness=(("not_dense", "ML in (L,tau_w)"),))

    if not is_closed_sub(tf, l_idx):
        return CheckResult(cid, FAIL, witness=(("not_closed", "L in (F,tau_w)"),))
    if not is_closed_sub(env.topology("F", "s"), l_idx):
        return CheckResult(cid, FAIL, witness=(("not_closed", "L in (F,tau_s)"),))
    return CheckResult(cid, PASS)


def _ml_inside_l(env):
    """Index set of ML within the L carrier; None plus witness when a
    claimed maximal set is not even a carrier element."""
    lcar = env.carrier("L")
    ml_idx = set()
    for m in env.carrier("ML").elements:
        if m not in lcar.elements:
            return None, (("ml_member_outside_L", env.fmt(m)),)
        ml_idx.add(lcar.index(m))
    return ml_idx, None


def check_cont_iff_maximal(space, env):
    """Identity map from (L, tau_w) to (L, tau_s) is continuous exactly at
    the maximal limit sets, and the two topologies agree on ML."""
    cid = "check_cont_iff_maximal"
    lcar = env.carrier("L")
    tw = env.topology("L", "w")
    ts = env.topology("L", "s")
    ml_idx, bad = _ml_inside_l(env)
    if bad:
        return CheckResult(cid, FAIL, witness=bad)
    for i, a in enumerate(lcar.elements):
        cont = identity_continuous_at(space, a, topologies=(tw, ts))
        if cont != (i in ml_idx):
            return CheckResult(
                cid,
                FAIL,
                witness=(
                    ("element", env.fmt(a)),
                    ("continuous", str(cont).lower()),
                    ("maximal", str(i in ml_idx).lower()),
                ),
            )
    tmw = env.topology("ML", "w")
    tms = env.topology("ML", "s")
    if tmw.min_nbhds != tms.min_nbhds:
        for i, m in enumerate(env.carrier("ML").elements):
            if tmw.min_nbhds[i] != tms.min_nbhds[i]:
                return CheckResult(
                    cid,
                    FAIL,
                    witness=(
                        ("element", env.fmt(m)),
                        ("tau_w_nbhd", env.fmt_indices(tmw.carrier, sorted(tmw.min_nbhds[i]))),
                        ("tau_s_nbhd", env.fmt_indices(tms.carrier, sorted(tms.min_nbhds[i]))),
                    ),
                )
    return CheckResult(cid, PASS)


def check_separated_iff_maximal(space, env):
    """An element of (L, tau_w) is a separated point exactly when it is a
    maximal limit set."""
    cid = "check_separated_iff_maximal"
    lcar = env.carrier("L")
    tw = env.topology("L", "w")
    ml_idx, bad = _ml_inside_l(env)
    if bad:
        return CheckResult(cid, FAIL, witness=bad)
    for i, a in enumerate(lcar.elements):
        sep = is_separated_in(tw, i)
        if sep != (i in ml_idx):
            return CheckResult(
                cid,
                FAIL,
                witness=(
                    ("element", env.fmt(a)),
                    ("separated", str(sep).lower()),
                    ("maximal", str(i in ml_idx).lower()),
                ),
            )
    return CheckResult(cid, PASS)


def check_connectedness(space, env):
    """Connected ground space forces (L, tau_w) connected. The Fell-side
    analogue fails routinely and is reported as an informational note,
    not asserted."""
    cid = "check_connectedness"
    if not is_connected(space):
        return CheckResult(cid, PASS, notes="hypothesis not met: the space is disconnected")
    tw = env.topology("L", "w")
    if not is_connected_hyper(tw):
        comp = _component_of(tw, 0)
        return CheckResult(
            cid,
            FAIL,
            witness=(("clopen_component", env.fmt_indices(tw.carrier, sorted(comp))),),
        )
    notes = ""
    if not is_connected_hyper(env.topology("L", "s")):
        notes = "informational: (L(X),tau_s) is disconnected although X is connected"
    return CheckResult(cid, PASS, notes=notes)


def _component_of(top, start):
    adj = [set() for _ in range(len(top))]
    for i in range(len(top)):
        for j in top.min_nbhds[i]:
            adj[i].add(j)
            adj[j].add(i)
    seen = {start}
    stack = [start]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return frozenset(seen)


def check_compactness_lemma(space, env, families=None):
    """The set of closed sets hitting each member of a finite family is
    compact in (F, tau_w). Finite carriers make this automatic; the
    check still runs the generic subcover search over a basis cover."""
    cid = "check_compactness_lemma"
    t = env.topology("F", "w")
    elems = t.carrier.elements
    if families is None:
        families = [()]
        families += [(1 << x,) for x in range(space.n)]
        if space.n:
            families.append(tuple(1 << x for x in range(space.n)))
    for fam in families:
        s = [i for i, a in enumerate(elems) if all(a & c for c in fam)]
        cover = [t.min_nbhds[i] for i in s]
        if not is_compact_cover(t, s, cover):
            return CheckResult(
                cid,
                FAIL,
                witness=(("family", env.fmt_family(fam)), ("uncovered", env.fmt_indices(t.carrier, s))),
            )
    return CheckResult(
        cid, TRIVIALLY_TRUE, notes=f"finite subcover found for {len(families)} hit families"
    )


def check_local_compactness(space, env):
    """Every element of F, Fprime, L and Lprime has a compact neighborhood
    sandwiched between basic neighborhoods, built constructively from
    minimal point neighborhoods."""
    cid = "check_local_compactness"
    witnessed = 0
    for kind in ("F", "Fprime", "L", "Lprime"):
        t = env.topology(kind, "w")
        elems = t.carrier.elements
        for i, a in enumerate(elems):
            hits = [u for u in space.opens if u & a]
            vs = []
            for u in hits:
                x = ((a & u) & -(a & u)).bit_length() - 1
                v = min_nbhd(space, x)
                if v & ~u:
                    return CheckResult(
                        cid, FAIL, witness=(("inner_nbhd_escapes", env.fmt(v)), ("open", env.fmt(u)))
                    )
                vs.append(v)
            inner = frozenset(j for j, b in enumerate(elems) if all(b & v for v in vs))
            outer = frozenset(j for j, b in enumerate(elems) if all(b & u for u in hits))
            if i not in inner or not inner <= outer:
                return CheckResult(
                    cid,
                    FAIL,
                    witness=(
                        ("carrier", kind),
                        ("element", env.fmt(a)),
                        ("inner", env.fmt_indices(t.carrier, sorted(inner))),
                        ("outer", env.fmt_indices(t.carrier, sorted(outer))),
                    ),
                )
            if not is_compact_cover(t, inner, [t.min_nbhds[j] for j in inner]):
                return CheckResult(
                    cid,
                    FAIL,
                    witness=(("carrier", kind), ("element", env.fmt(a))),
                )
            witnessed += 1
    return CheckResult(
        cid,
        TRIVIALLY_TRUE,
        notes=f"sandwich neighborhoods constructed for {witnessed} carrier elements",
    )


def _alexandrov_opens(top, exact_limit=16, samples=512, seed=20260809):
    """All distinct open subsets of a finite hyperspace, as unions of the
    minimal-neighborhood base; seeded sampling past the size limit."""
    k = len(top)
    base = sorted({top.min_nbhds[i] for i in range(k)}, key=sorted)
    if k <= exact_limit:
        result = {frozenset()}
        for b in base:
            result |= {s | b for s in result}
        return sorted(result, key=lambda s: (len(s), sorted(s))), f"exact:{len(result)}"
    rng = random.Random(seed)
    result = {frozenset()}
    if base:
        result.add(frozenset().union(*base))
        result.update(base)
    for _ in range(samples):
        chosen = rng.getrandbits(len(base))
        u = frozenset()
        for i in bits(chosen):
            u |= base[i]
        result.add(u)
    return sorted(result, key=lambda s: (len(s), sorted(s))), f"sampled:{len(result)}"


def check_baire(space, env):
    """The intersection of all dense open subsets of (L, tau_w),
    (Lprime, tau_w) and (ML, tau_w) is dense: the strongest Baire
    statement a finite carrier supports, computed rather than assumed."""
    cid = "check_baire"
    modes = []
    for kind in ("L", "Lprime", "ML"):
        t = env.topology(kind, "w")
        all_idx = frozenset(range(len(t)))
        opens_list, mode = _alexandrov_opens(t)
        inter = all_idx
        for o in opens_list:
            if hyper_closure(t, o) == all_idx:
                inter &= o
        if not is_dense(t, inter):
            return CheckResult(
                cid,
                FAIL,
                witness=(
                    ("carrier", kind),
                    ("intersection_of_dense_opens", env.fmt_indices(t.carrier, sorted(inter))),
                ),
            )
        modes.append(f"{kind}={mode}")
    return CheckResult(cid, TRIVIALLY_TRUE, notes="dense-open enumeration " + ", ".join(modes))


def check_gdelta_ML(space, env):
    """ML(X) is open inside (L(X), tau_s); countable intersections of opens
    collapse to finite ones here, so Gdelta and open coincide."""
    cid = "check_gdelta_ML"
    lcar = env.carrier("L")
    ts = env.topology("L", "s")
    ml_idx, bad = _ml_inside_l(env)
    if bad:
        return CheckResult(cid, FAIL, witness=bad)
    for i in sorted(ml_idx):
        if not ts.min_nbhds[i] <= ml_idx:
            leak = sorted(ts.min_nbhds[i] - ml_idx)[0]
            return CheckResult(
                cid,
                FAIL,
                witness=(
                    ("element", env.fmt(lcar.elements[i])),
                    ("nbhd_leaks_to", env.fmt(lcar.elements[leak])),
                ),
            )
    return CheckResult(cid, PASS, notes="Gdelta reduced to open: finite carrier")


def check_product_structure(space, env, exact_pairs_budget=12, samples=256):
    """Product-side facts over (L, tau_s) x (L, tau_s): the inclusion
    relation is closed, and the slice map of any product open is open.

    Product opens are generated as unions of product minimal
    neighborhoods, exhaustively while the pair count stays within budget
    and by seeded sampling beyond; an integer fast path does the bulk
    and a sample is re-checked through the public slice operation.
    """
    cid = "check_product_structure"
    lcar = env.carrier("L")
    ts = env.topology("L", "s")
    e = inclusion_relation(lcar)
    if not product_is_closed(ts, ts, e):
        extra = sorted(product_closure(ts, ts, e) - e)[0]
        return CheckResult(
            cid,
            FAIL,
            witness=(
                ("pair_in_closure_only",
                 env.fmt(lcar.elements[extra[0]]) + "," + env.fmt(lcar.elements[extra[1]])),
            ),
        )

    k = len(lcar.elements)
    pairs = [(i, j) for i in range(k) for j in range(k)]
    pair_pos = {p: t for t, p in enumerate(pairs)}
    gens = []
    for p in pairs:
        g = 0
        for q in product_min_nbhd(ts, ts, p):
            g |= 1 << pair_pos[q]
        gens.append(g)
    rows = [0] * k
    nb = [0] * k
    for a in range(k):
        for b in range(k):
            rows[a] |= 1 << pair_pos[(a, b)]
        for j in ts.min_nbhds[a]:
            nb[a] |= 1 << j

    rng = random.Random(20260809)
    if len(pairs) <= exact_pairs_budget:
        opens_m = {0}
        for g in gens:
            opens_m |= {m | g for m in opens_m}
        mode = f"exact:{len(opens_m)}"
    else:
        opens_m = {0, (1 << len(pairs)) - 1}
        for _ in range(samples):
            m = 0
            for t in bits(rng.getrandbits(len(gens))):
                m |= gens[t]
            opens_m.add(m)
        mode = f"sampled:{len(opens_m)}"

    ordered = sorted(opens_m)
    for m in ordered:
        s_mask = 0
        for a in range(k):
            if rows[a] & m == rows[a]:
                s_mask |= 1 << a
        for a in bits(s_mask):
            if nb[a] & ~s_mask:
                return CheckResult(
                    cid,
                    FAIL,
                    witness=(
                        ("slice", env.fmt_indices(lcar, bits(s_mask))),
                        ("not_open_at", env.fmt(lcar.elements[a])),
                    ),
                )
    # spot-check the fast path against the public slice map
    for m in (ordered[t * len(ordered) // 8] for t in range(min(8, len(ordered)))):
        mset = frozenset(pairs[t] for t in bits(m))
        s_mask = 0
        for a in range(k):
            if rows[a] & m == rows[a]:
                s_mask |= 1 << a
        if S_of(mset, ts) != frozenset(bits(s_mask)):
            return CheckResult(
                cid,
                FAIL,
                witness=(("disagreement", "integer slice path vs public slice map"),),
            )
    return CheckResult(cid, PASS, notes=f"product opens {mode}")


def check_separated_points_corollary(space, env):
    """Point closures of separated points are exactly the maximal point
    closures; the family is dense in (ML, tau_w) and open in (L, tau_s)."""
    cid = "check_separated_points_corollary"
    sep = separated_points(space)
    fam = {eta(space, x) for x in bits(sep)}
    eta_all = {eta(space, x) for x in range(space.n)}
    ml_masks = set(env.carrier("ML").elements)
    if fam != eta_all & ml_masks:
        return CheckResult(
            cid,
            FAIL,
            witness=(
                ("separated_point_closures", env.fmt_family(fam)),
                ("maximal_point_closures", env.fmt_family(eta_all & ml_masks)),
            ),
        )
    tml = env.topology("ML", "w")
    fam_ml_idx = {tml.carrier.index(m) for m in fam}
    if not is_dense(tml, fam_ml_idx):
        return CheckResult(cid, FAIL, witness=(("not_dense_in_ML", env.fmt_family(fam)),))
    lcar = env.carrier("L")
    ts = env.topology("L", "s")
    fam_l_idx = {lcar.index(m) for m in fam}
    for i in sorted(fam_l_idx):
        if not ts.min_nbhds[i] <= fam_l_idx:
            return CheckResult(
                cid, FAIL, witness=(("not_tau_s_open_at", env.fmt(lcar.elements[i])),)
            )
    return CheckResult(cid, PASS)


def _fmt_seq(env, elems, indices) -> str:
    return "(" + " ".join(env.fmt(elems[t]) for t in indices) + ")"


def check_conv_props(space, env, max_pre=1, max_cycle=2):
    """Triple equivalence over every in-budget eventually periodic sequence
    of closed sets and every closed target A: Fell convergence to A, the
    point-selection conditions, and primitivity in tau_w with limit set
    equal to the closed subsets of A.

    Verdicts are computed from per-element membership tables for speed;
    a seeded sample is re-evaluated through the public sequence
    operations so the tables are never trusted silently.
    """
    cid = "check_conv_props"
    tw = env.topology("F", "w")
    ts = env.topology("F", "s")
    elems = tw.carrier.elements
    k = len(elems)
    if k == 0:
        return CheckResult(cid, PROXY, notes="empty carrier")

    n_cycles = sum(k**c for c in range(1, max_cycle + 1))
    if n_cycles > 2_000_000:
        raise BudgetExceeded(f"{n_cycles} cycles exceed the sequence budget")

    memb_w = [0] * k
    memb_s = [0] * k
    for j in range(k):
        for i in tw.min_nbhds[j]:
            memb_w[i] |= 1 << j
        for i in ts.min_nbhds[j]:
            memb_s[i] |= 1 << j
    subset_mask = [0] * k
    for j in range(k):
        for i in range(k):
            if not elems[i] & ~elems[j]:
                subset_mask[j] |= 1 << i

    mins = [min_nbhd(space, x) for x in range(space.n)]
    # reach[t]: points reachable as limits of single points drawn from t
    reach = [0] * k
    goodpts = [0] * k
    for t, m in enumerate(elems):
        for p in bits(m):
            for x in range(space.n):
                if (mins[x] >> p) & 1:
                    reach[t] |= 1 << x
        for x in range(space.n):
            if m & mins[x]:
                goodpts[t] |= 1 << x

    full_t = (1 << k) - 1
    cycles = []
    for c in range(1, max_cycle + 1):
        cycles.extend(itertools.product(range(k), repeat=c))

    verdicts = {}
    for cyc in cycles:
        lim_w = full_t
        clu_w = 0
        lim_s = full_t
        reach_all = 0
        good_all = space.full
        for t in set(cyc):
            lim_w &= memb_w[t]
            clu_w |= memb_w[t]
            lim_s &= memb_s[t]
            reach_all |= reach[t]
            good_all &= goodpts[t]
        prim = lim_w == clu_w
        ts_vec = lim_s
        for a in range(k):
            ts_conv = (lim_s >> a) & 1 == 1
            conds = (reach_all & ~elems[a]) == 0 and (elems[a] & ~good_all) == 0
            p22 = prim and lim_w == subset_mask[a]
            if not (ts_conv == conds == p22):
                return CheckResult(
                    cid,
                    FAIL,
                    witness=(
                        ("cycle", _fmt_seq(env, elems, cyc)),
                        ("target", env.fmt(elems[a])),
                        ("fell_convergence", str(ts_conv).lower()),
                        ("selection_conditions", str(conds).lower()),
                        ("primitive_characterization", str(p22).lower()),
                    ),
                )
        verdicts[cyc] = (lim_w, clu_w, ts_vec)

    # the tables must agree with the public sequence operations
    rng = random.Random(20260809)
    for _ in range(min(64, 8 * len(cycles))):
        cyc = cycles[rng.randrange(len(cycles))]
        a = rng.randrange(k)
        seq = EvPerSeq((), cyc)
        lim_w, clu_w, ts_vec = verdicts[cyc]
        pub_lim_w = seq_limits(tw, seq)
        pub_ts = a in seq_limits(ts, seq)
        ca, cb = conv1_conditions(space, EvPerSeq((), tuple(elems[t] for t in cyc)), elems[a])
        reach_all = 0
        good_all = space.full
        for t in set(cyc):
            reach_all |= reach[t]
            good_all &= goodpts[t]
        tbl_conds = (reach_all & ~elems[a]) == 0 and (elems[a] & ~good_all) == 0
        tbl_p22 = lim_w == clu_w and lim_w == subset_mask[a]
        pub_p22 = is_primitive(tw, seq) and pub_lim_w == frozenset(bits(subset_mask[a]))
        if (
            pub_lim_w != frozenset(bits(lim_w))
            or pub_ts != ((ts_vec >> a) & 1 == 1)
            or (ca and cb) != tbl_conds
            or pub_p22 != tbl_p22
        ):
            return CheckResult(
                cid,
                FAIL,
                witness=(
                    ("cycle", _fmt_seq(env, elems, cyc)),
                    ("target", env.fmt(elems[a])),
                    ("disagreement", "internal tables vs public sequence operations"),
                ),
            )

    # preperiods never move the verdicts: convergence is a tail property
    n_seq = 0
    pres = []
    for p in range(max_pre + 1):
        pres.extend(itertools.product(range(k), repeat=p))
    if k <= 16:
        pairs = ((pre, cyc) for pre in pres for cyc in cycles)
    else:
        pairs = (
            (pres[rng.randrange(len(pres))], cycles[rng.randrange(len(cycles))])
            for _ in range(512)
        )
    for pre, cyc in pairs:
        seq = EvPerSeq(tuple(pre), cyc)
        if seq_limits(tw, seq) != frozenset(bits(verdicts[cyc][0])):
            return CheckResult(
                cid,
                FAIL,
                witness=(
                    ("preperiod", _fmt_seq(env, elems, pre)),
                    ("cycle", _fmt_seq(env, elems, cyc)),
                    ("disagreement", "preperiod changed the limit set"),
                ),
            )
        n_seq += 1
    return CheckResult(
        cid,
        PROXY,
        notes=(
            f"sequences stand in for nets; {len(cycles)} cycles, {n_seq} sequences "
            f"(preperiod<={max_pre}, cycle<={max_cycle}) over F(X)"
        ),
    )


CHECKS = {
    "check_closure_singleton": check_closure_singleton,
    "check_eta_closure_and_density": check_eta_closure_and_density,
    "check_cont_iff_maximal": check_cont_iff_maximal,
    "check_separated_iff_maximal": check_separated_iff_maximal,
    "check_connectedness": check_connectedness,
    "check_compactness_lemma": check_compactness_lemma,
    "check_local_compactness": check_local_compactness,
    "check_baire": check_baire,
    "check_gdelta_ML": check_gdelta_ML,
    "check_product_structure": check_product_structure,
    "check_separated_points_corollary": check_separated_points_corollary,
    "check_conv_props": check_conv_props,
}


def run_check(check_id: str, space: FinTopSpace, env: CheckEnv | None = None, **kwargs) -> CheckResult:
    """Run one registered check; inconsistent carrier or neighborhood
    structures surface as failures instead of exceptions."""
    fn = CHECKS[check_id]
    if env is None:
        env = CheckEnv(space)
    try:
        return fn(space, env, **kwargs)
    except (NotOpen, NotInCarrier) as exc:
        return CheckResult(
            check_id,
            FAIL,
            witness=(("structural_error", str(exc)),),
            notes="carrier or neighborhood structure inconsistent",
        )


def verify_all(space: FinTopSpace, labels=None, conv_pre=1, conv_cycle=2) -> VerificationReport:
    """Run every registered check once and collect the results."""
    if space.n < 1:
        raise ValueError("verification needs at least one point")
    env = CheckEnv(space, labels)
    t0 = time.perf_counter()
    results = []
    for check_id in CHECKS:
        kwargs = {}
        if check_id == "check_conv_props":
            kwargs = {"max_pre": conv_pre, "max_cycle": conv_cycle}
        results.append(run_check(check_id, space, env, **kwargs))
    return VerificationReport(
        digest(space), space.n, env.labels, tuple(results), time.perf_counter() - t0
    )


@dataclass(frozen=True)
class SweepResult:
    n: int
    space_count: int
    failure_count: int
    first_failures: tuple[tuple[str, str], ...]  # (check_id, space digest)
    elapsed_s: float


def _sweep_worker(space: FinTopSpace) -> tuple[str, tuple[str, ...]]:
    report = verify_all(space)
    failing = tuple(r.check_id for r in report.results if r.status == FAIL)
    return report.space_digest, failing


def sweep(n: int, long_run: bool = False, jobs: int | None = None) -> SweepResult:
    """Run the whole suite over every labeled topology on n points.

    The five-point sweep multiplies 6942 spaces by the full suite and must
    be requested explicitly through ``long_run``.
    """
    if n < 1:
        raise ValueError("sweep needs at least one point")
    if n >= 5 and not long_run:
        raise BudgetExceeded("sweep over five points requires the long-run flag")
    if jobs is None:
        jobs = int(os.environ.get("LH_JOBS", "1"))
    spaces = list(enumerate_topologies(n))
    t0 = time.perf_counter()
    if jobs > 1:
        chunk = max(1, len(spaces) // (jobs * 8))
        with Pool(jobs) as pool:
            rows = pool.map(_sweep_worker, spaces, chunksize=chunk)
    else:
        rows = [_sweep_worker(s) for s in spaces]
    failures = 0
    first: dict[str, str] = {}
    for dig, failing in rows:
        failures += len(failing)
        for check_id in failing:
            first.setdefault(check_id, dig)
    return SweepResult(
        n,
        len(spaces),
        failures,
        tuple(sorted(first.items())),
        time.perf_counter() - t0,
    )


@dataclass
class MiningHit:
    description: str
    env: CheckEnv
    result: CheckResult


def _canon_carrier(space, kind, masks) -> HyperCarrier:
    return HyperCarrier(space, kind, tuple(sorted(masks, key=canonical_key)))


def _cyclic_topology(space, kind, flavor) -> HyperTopology | None:
    car = build_carrier(space, kind)
    k = len(car.elements)
    if k < 3:
        return None
    nbhds = tuple(frozenset({i, (i + 1) % k}) for i in range(k))
    return HyperTopology(car, flavor, nbhds)


def corrupted_environments(space: FinTopSpace):
    """Yield (description, env_factory) pairs with deliberately broken
    carriers or neighborhood tables, for expect-fail exploration."""
    closed = set(closed_sets(space))
    all_subsets = sorted(range(space.full + 1), key=canonical_key)

    non_closed = next((m for m in all_subsets if m not in closed), None)
    if non_closed is not None:
        f_plus = _canon_carrier(space, "F", closed | {non_closed})
        yield ("non-closed set injected into F", lambda c=f_plus: CheckEnv(space, carriers={"F": c}))

    lcar = build_carrier(space, "L")
    lset = set(lcar.elements)
    non_limit = next((m for m in closed if m not in lset), None)
    if non_limit is not None:
        l_plus = _canon_carrier(space, "L", lset | {non_limit})
        yield ("non-limit closed set injected into L", lambda c=l_plus: CheckEnv(space, carriers={"L": c}))

    if non_closed is not None and is_limit_set(space, non_closed):
        l_open = _canon_carrier(space, "L", lset | {non_closed})
        yield ("non-closed set injected into L", lambda c=l_open: CheckEnv(space, carriers={"L": c}))

    mlcar = build_carrier(space, "ML")
    mlset = set(mlcar.elements)
    non_maximal = next((m for m in lcar.elements if m not in mlset), None)
    if non_maximal is not None:
        ml_plus = _canon_carrier(space, "ML", mlset | {non_maximal})
        yield (
            "non-maximal limit set injected into ML",
            lambda c=ml_plus: CheckEnv(space, carriers={"ML": c}),
        )

    if mlset:
        dropped = sorted(mlset, key=canonical_key)[-1]
        ml_minus = _canon_carrier(space, "ML", mlset - {dropped})
        yield ("maximal limit set removed from ML", lambda c=ml_minus: CheckEnv(space, carriers={"ML": c}))

    if len(mlset) >= 2:
        l_as_ml = _canon_carrier(space, "L", mlset)
        yield ("L restricted to its maximal elements", lambda c=l_as_ml: CheckEnv(space, carriers={"L": c}))

    for kind in ("F", "L"):
        cyc = _cyclic_topology(space, kind, "w")
        if cyc is not None:
            yield (
                f"cyclic neighborhood table on ({kind},tau_w)",
                lambda k=kind, t=cyc: CheckEnv(space, topologies={(k, "w"): t}),
            )

    swapped = build_topology(build_carrier(space, "F"), "s")
    swapped = HyperTopology(swapped.carrier, "w", swapped.min_nbhds)
    yield (
        "Fell table served as the lower topology on F",
        lambda t=swapped: CheckEnv(space, topologies={("F", "w"): t}),
    )

    widened = build_topology(build_carrier(space, "L"), "w")
    widened = HyperTopology(widened.carrier, "s", widened.min_nbhds)
    yield (
        "lower table served as the Fell topology on L",
        lambda t=widened: CheckEnv(space, topologies={("L", "s"): t}),
    )


def mine_check_failures(space: FinTopSpace, check_ids=None) -> dict[str, MiningHit]:
    """Expect-fail exploration: corrupt the structures and record, per
    check, the first corruption it detects. Proves the suite is
    non-vacuous."""
    if check_ids is None:
        check_ids = tuple(CHECKS)
    found: dict[str, MiningHit] = {}
    for description, factory in corrupted_environments(space):
        remaining = [cid for cid in check_ids if cid not in found]
        if not remaining:
            break
        for cid in remaining:
            env = factory()
            result = run_check(cid, space, env)
            if result.status == FAIL:
                found[cid] = MiningHit(description, env, result)
    return found
