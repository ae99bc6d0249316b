import itertools
import random

import pytest

from limhyper import (
    EvPerSeq,
    NotInCarrier,
    NotOpen,
    S_of,
    basic_open_membership,
    build_topology,
    carrier,
    conv1_conditions,
    enumerate_topologies,
    eta,
    hyper_closure,
    identity_continuous_at,
    inclusion_relation,
    is_closed_sub,
    is_compact_cover,
    is_connected,
    is_connected_hyper,
    is_dense,
    is_hausdorff,
    is_primitive,
    is_separated_in,
    min_nbhd_oracle,
    product_is_closed,
    product_min_nbhd,
    seq_clusters,
    seq_limits,
    validate_topology,
)
from limhyper.finspace import bits
from limhyper.limitsets import CARRIER_KINDS


def spaces_upto(n_max, start=0):
    for n in range(start, n_max + 1):
        yield from enumerate_topologies(n)


# ------------------------------------------------------------ basic opens

def test_basic_open_membership_examples(sierpinski):
    assert basic_open_membership(sierpinski, 0b10, 0, [0b11])
    assert basic_open_membership(sierpinski, 0b10, 0b01, [0b11])
    assert not basic_open_membership(sierpinski, 0b11, 0b01, [])
    with pytest.raises(NotOpen):
        basic_open_membership(sierpinski, 0b10, 0, [0b10])


# ------------------------------------------------- building the topologies

def test_build_topology_sierpinski_tables(sierpinski):
    f = carrier(sierpinski, "F")  # elements (0, {1}, X)
    tw = build_topology(f, "w")
    assert tw.min_nbhds == (frozenset({0, 1, 2}), frozenset({1, 2}), frozenset({2}))
    ts = build_topology(f, "s")
    assert ts.min_nbhds == (frozenset({0}), frozenset({1}), frozenset({2}))


def test_tau_w_min_nbhd_of_empty_is_whole_carrier():
    for space in spaces_upto(3, start=1):
        f = carrier(space, "F")
        tw = build_topology(f, "w")
        assert tw.min_nbhds[f.index(0)] == frozenset(range(len(f.elements)))


def test_build_topology_structural_invariants():
    for space in spaces_upto(3):
        for kind in CARRIER_KINDS:
            car = carrier(space, kind)
            tw = build_topology(car, "w")
            ts = build_topology(car, "s")
            for i in range(len(car.elements)):
                assert i in tw.min_nbhds[i]
                assert ts.min_nbhds[i] <= tw.min_nbhds[i]
                for j in tw.min_nbhds[i]:
                    assert tw.min_nbhds[j] <= tw.min_nbhds[i]
                for j in ts.min_nbhds[i]:
                    assert ts.min_nbhds[j] <= ts.min_nbhds[i]


def test_min_nbhd_oracle_examples(sierpinski):
    f = carrier(sierpinski, "F")
    assert min_nbhd_oracle(f, "s", 0b10) == frozenset({f.index(0b10)})
    assert min_nbhd_oracle(f, "w", 0b11) == frozenset({f.index(0b11)})


def test_min_nbhd_oracle_modes(sierpinski):
    f = carrier(sierpinski, "F")
    exact = min_nbhd_oracle(f, "w", 0b10, mode="exact")
    sampled = min_nbhd_oracle(f, "w", 0b10, mode="sampled")
    assert exact == sampled == frozenset({1, 2})
    from limhyper import BudgetExceeded

    big = validate_topology(4, range(16))
    with pytest.raises(BudgetExceeded):
        min_nbhd_oracle(carrier(big, "F"), "w", 0, mode="exact")
    # sampling never cuts below the true minimal neighborhood
    auto = min_nbhd_oracle(carrier(big, "F"), "w", 0b0011)
    built = build_topology(carrier(big, "F"), "w")
    assert built.min_nbhds[carrier(big, "F").index(0b0011)] <= auto


# ------------------------------------------------------------ closure ops

def test_hyper_closure_examples(sierpinski):
    f = carrier(sierpinski, "F")
    tw = build_topology(f, "w")
    assert hyper_closure(tw, (f.index(0b11),)) == frozenset({0, 1, 2})
    assert hyper_closure(tw, ()) == frozenset()
    ts = build_topology(f, "s")
    assert hyper_closure(ts, (f.index(0b10),)) == frozenset({f.index(0b10)})


def test_closure_of_singleton_formula_exhaustive_n4():
    for space in spaces_upto(4, start=1):
        f = carrier(space, "F")
        tw = build_topology(f, "w")
        for i, a in enumerate(f.elements):
            expected = frozenset(j for j, b in enumerate(f.elements) if not b & ~a)
            assert hyper_closure(tw, (i,)) == expected


def test_eta_closure_is_limit_carrier_exhaustive_n4():
    for space in spaces_upto(4, start=1):
        f = carrier(space, "F")
        tw = build_topology(f, "w")
        eta_idx = {f.index(eta(space, x)) for x in range(space.n)}
        l_idx = frozenset(f.index(m) for m in carrier(space, "L").elements)
        assert hyper_closure(tw, eta_idx) == l_idx


def test_density_and_closedness_examples(sierpinski, discrete2):
    f = carrier(sierpinski, "F")
    tw = build_topology(f, "w")
    fprime = [i for i, m in enumerate(f.elements) if m]
    assert is_dense(tw, fprime)
    l_idx = [f.index(m) for m in carrier(sierpinski, "L").elements]
    assert is_closed_sub(tw, l_idx)

    f2 = carrier(discrete2, "F")
    tw2 = build_topology(f2, "w")
    l2 = [f2.index(m) for m in carrier(discrete2, "L").elements]
    assert is_closed_sub(tw2, l2)
    assert f2.index(0b11) not in hyper_closure(tw2, l2)


# ----------------------------------------------------- continuity / separation

def test_identity_continuous_examples(sierpinski, three_point):
    assert identity_continuous_at(sierpinski, 0b11)
    assert not identity_continuous_at(sierpinski, 0b10)
    assert not identity_continuous_at(sierpinski, 0)
    assert identity_continuous_at(three_point, 0b101)
    with pytest.raises(NotInCarrier):
        identity_continuous_at(validate_topology(2, [0, 1, 2, 3]), 0b11)


def test_is_separated_in_examples(sierpinski, three_point):
    l = carrier(sierpinski, "L")
    tw = build_topology(l, "w")
    assert is_separated_in(tw, l.index(0b11))
    assert not is_separated_in(tw, l.index(0b10))

    l3 = carrier(three_point, "L")
    tw3 = build_topology(l3, "w")
    assert is_separated_in(tw3, l3.index(0b110))

    ts = build_topology(l, "s")
    assert all(is_separated_in(ts, i) for i in range(len(l.elements)))


# ------------------------------------- hausdorff / connected / compact cover

def test_fell_topology_is_hausdorff_everywhere():
    for space in spaces_upto(4):
        f = carrier(space, "F")
        assert is_hausdorff(build_topology(f, "s"))


def test_connectedness_implication_exhaustive_n4():
    for space in spaces_upto(4, start=1):
        if is_connected(space):
            tw = build_topology(carrier(space, "L"), "w")
            assert is_connected_hyper(tw)


def test_connectedness_examples(sierpinski, discrete2):
    tw = build_topology(carrier(sierpinski, "L"), "w")
    assert is_connected_hyper(tw)
    # the empty set's minimal neighborhood is the whole carrier, so (L, tau_w)
    # stays connected even over a disconnected space; dropping the empty set
    # breaks the bridge
    tw2 = build_topology(carrier(discrete2, "L"), "w")
    assert is_connected_hyper(tw2)
    tw2p = build_topology(carrier(discrete2, "Lprime"), "w")
    assert not is_connected_hyper(tw2p)


def test_compact_cover(sierpinski):
    f = carrier(sierpinski, "F")
    tw = build_topology(f, "w")
    everything = list(range(len(f.elements)))
    assert is_compact_cover(tw, everything, [tw.min_nbhds[i] for i in everything])
    assert not is_compact_cover(tw, everything, [tw.min_nbhds[f.index(0b11)]])
    with pytest.raises(NotOpen):
        is_compact_cover(tw, everything, [{f.index(0)}])


# ------------------------------------------------------------ product side

def test_product_ops_and_inclusion_closed(sierpinski):
    l = carrier(sierpinski, "L")
    ts = build_topology(l, "s")
    e = inclusion_relation(l)
    assert (l.index(0b10), l.index(0b11)) in e
    assert (l.index(0b11), l.index(0b10)) not in e
    assert product_is_closed(ts, ts, e)
    assert product_min_nbhd(ts, ts, (0, 1)) == frozenset({(0, 1)})

    everything = frozenset(
        (i, j) for i in range(len(l.elements)) for j in range(len(l.elements))
    )
    assert S_of(everything, ts) == frozenset(range(len(l.elements)))


def test_inclusion_relation_closed_exhaustive_n4():
    for space in spaces_upto(4, start=1):
        l = carrier(space, "L")
        ts = build_topology(l, "s")
        assert product_is_closed(ts, ts, inclusion_relation(l))


def test_slice_of_product_open_is_open():
    # exhaustive over all unions of product minimal neighborhoods while the
    # pair count stays within 2**16 unions; seeded sampling beyond that
    rng = random.Random(1105)
    for space in spaces_upto(3, start=1):
        l = carrier(space, "L")
        ts = build_topology(l, "s")
        k = len(l.elements)
        pairs = [(i, j) for i in range(k) for j in range(k)]
        pair_pos = {p: t for t, p in enumerate(pairs)}
        gen_masks = []
        for p in pairs:
            m = 0
            for q in product_min_nbhd(ts, ts, p):
                m |= 1 << pair_pos[q]
            gen_masks.append(m)
        row = [0] * k
        for a in range(k):
            for b in range(k):
                row[a] |= 1 << pair_pos[(a, b)]
        nb = [0] * k
        for a in range(k):
            for j in ts.min_nbhds[a]:
                nb[a] |= 1 << j

        if len(pairs) <= 16:
            opens = {0}
            for g in gen_masks:
                opens |= {m | g for m in opens}
        else:
            opens = {0, (1 << len(pairs)) - 1}
            for _ in range(512):
                m = 0
                for t in bits(rng.getrandbits(len(pairs))):
                    m |= gen_masks[t]
                opens.add(m)
        for m in opens:
            s_mask = 0
            for a in range(k):
                if row[a] & m == row[a]:
                    s_mask |= 1 << a
            for a in bits(s_mask):
                assert nb[a] & ~s_mask == 0
        # the integer fast path must agree with the public slice operation
        for m in list(sorted(opens))[:: max(1, len(opens) // 16)]:
            mset = frozenset(pairs[t] for t in bits(m))
            s_pub = S_of(mset, ts)
            s_mask = 0
            for a in range(k):
                if row[a] & m == row[a]:
                    s_mask |= 1 << a
            assert s_pub == frozenset(bits(s_mask))


def test_slice_open_sampled_n4():
    rng = random.Random(44)
    spaces = list(enumerate_topologies(4))
    for space in rng.sample(spaces, 40):
        l = carrier(space, "L")
        ts = build_topology(l, "s")
        k = len(l.elements)
        for _ in range(32):
            m = set()
            for i in range(k):
                for j in range(k):
                    if rng.random() < 0.4:
                        m |= product_min_nbhd(ts, ts, (i, j))
            s = S_of(m, ts)
            for a in s:
                assert ts.min_nbhds[a] <= s


# --------------------------------------------------------------- sequences

def test_evperseq_terms():
    seq = EvPerSeq((7,), (1, 2))
    assert [seq.term(k) for k in range(6)] == [7, 1, 2, 1, 2, 1]
    with pytest.raises(ValueError):
        EvPerSeq((), ())


def test_seq_ops_sierpinski_constant_at_x(sierpinski):
    f = carrier(sierpinski, "F")
    tw = build_topology(f, "w")
    ts = build_topology(f, "s")
    x = f.index(0b11)
    const = EvPerSeq((), (x,))
    assert seq_limits(tw, const) == frozenset({0, 1, 2})
    assert seq_limits(ts, const) == frozenset({x})
    assert is_primitive(tw, const)


def test_seq_ops_sierpinski_cycle(sierpinski):
    f = carrier(sierpinski, "F")
    tw = build_topology(f, "w")
    ts = build_topology(f, "s")
    seq = EvPerSeq((), (f.index(0b10), f.index(0b11)))
    assert seq_limits(tw, seq) == frozenset({f.index(0), f.index(0b10)})
    assert seq_clusters(tw, seq) == frozenset({0, 1, 2})
    assert not is_primitive(tw, seq)
    assert seq_limits(ts, seq) == frozenset()


def test_constant_sequence_always_converges_to_itself():
    for space in spaces_upto(3):
        f = carrier(space, "F")
        for flavor in ("w", "s"):
            top = build_topology(f, flavor)
            for i in range(len(f.elements)):
                assert i in seq_limits(top, EvPerSeq((), (i,)))


def seq_limit_oracle(space, car, flavor, seq, a_idx):
    """A is a limit iff each basic open around A eventually swallows the
    sequence; with an eventually periodic sequence that means every cycle
    term is a member of every such basic set."""
    a = car.elements[a_idx]
    hits = [u for u in space.opens if u & a]
    comp = space.full & ~a
    c_values = []
    if flavor == "s":
        sub = comp
        while True:
            c_values.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & comp
    else:
        c_values = [0]
    for c in c_values:
        for r in range(1 << len(hits)):
            phi = [hits[i] for i in bits(r)]
            if not basic_open_membership(space, a, c, phi):
                continue
            for t in seq.cycle:
                if not basic_open_membership(space, car.elements[t], c, phi):
                    return False
    return True


def test_seq_limits_match_literal_basic_open_oracle():
    for space in spaces_upto(2):
        f = carrier(space, "F")
        k = len(f.elements)
        for flavor in ("w", "s"):
            top = build_topology(f, flavor)
            for c in range(1, 3):
                for cyc in itertools.product(range(k), repeat=c):
                    seq = EvPerSeq((), cyc)
                    lim = seq_limits(top, seq)
                    for a in range(k):
                        assert (a in lim) == seq_limit_oracle(space, f, flavor, seq, a)


def test_seq_limits_match_oracle_three_point(three_point):
    f = carrier(three_point, "F")
    k = len(f.elements)
    for flavor in ("w", "s"):
        top = build_topology(f, flavor)
        for cyc in itertools.product(range(k), repeat=2):
            seq = EvPerSeq((1,), cyc)
            lim = seq_limits(top, seq)
            for a in range(k):
                assert (a in lim) == seq_limit_oracle(three_point, f, flavor, seq, a)


# ----------------------------------------------- point-selection conditions

def point_seq_converges(space, choices, x):
    """Literal convergence of the periodic point sequence given by the
    choices: eventually inside every open containing x."""
    return all(
        all((u >> c) & 1 for c in choices)
        for u in space.opens
        if (u >> x) & 1
    )


def conv1_oracle(space, cycle_masks, a):
    """Quantify over selections literally.

    First condition ranges over selections through every nonempty subset of
    cycle positions; second over full selections through the whole cycle.
    """
    positions = range(len(cycle_masks))
    cond_a = True
    for size in range(1, len(cycle_masks) + 1):
        for chosen in itertools.combinations(positions, size):
            pools = [list(bits(cycle_masks[i])) for i in chosen]
            if any(not p for p in pools):
                continue
            for choices in itertools.product(*pools):
                for x in range(space.n):
                    if point_seq_converges(space, choices, x) and not (a >> x) & 1:
                        cond_a = False

    pools = [list(bits(m)) for m in cycle_masks]
    cond_b = True
    for x in bits(a):
        if any(not p for p in pools):
            cond_b = False
            break
        if not any(
            point_seq_converges(space, choices, x)
            for choices in itertools.product(*pools)
        ):
            cond_b = False
            break
    return cond_a, cond_b


def test_conv1_examples(sierpinski):
    f = carrier(sierpinski, "F")
    const_x = EvPerSeq((), (0b11,))
    assert conv1_conditions(sierpinski, const_x, 0b11) == (True, True)
    cond_a, cond_b = conv1_conditions(sierpinski, const_x, 0b10)
    assert not cond_a
    const_b = EvPerSeq((), (0b10,))
    assert conv1_conditions(sierpinski, const_b, 0b10) == (True, True)


def test_conv1_matches_selection_oracle_exhaustive_n2():
    for space in spaces_upto(2):
        closed = carrier(space, "F").elements
        for c in range(1, 3):
            for cyc in itertools.product(closed, repeat=c):
                seq = EvPerSeq((), cyc)
                for a in closed:
                    assert conv1_conditions(space, seq, a) == conv1_oracle(space, cyc, a)


def test_conv1_matches_selection_oracle_three_point(three_point):
    closed = carrier(three_point, "F").elements
    for cyc in itertools.product(closed, repeat=2):
        seq = EvPerSeq((), cyc)
        for a in closed:
            assert conv1_conditions(three_point, seq, a) == conv1_oracle(three_point, cyc, a)


def test_primitive_characterization_matches_fell_convergence():
    # a sequence Fell-converges to A exactly when it is primitive in tau_w
    # and its tau_w-limit set is the closed subsets of A
    for space in spaces_upto(2, start=1):
        f = carrier(space, "F")
        tw = build_topology(f, "w")
        ts = build_topology(f, "s")
        k = len(f.elements)
        for c in (1, 2, 3):
            for cyc in itertools.product(range(k), repeat=c):
                for pre in ((), (0,)):
                    seq = EvPerSeq(pre, cyc)
                    lim_s = seq_limits(ts, seq)
                    lim_w = seq_limits(tw, seq)
                    prim = is_primitive(tw, seq)
                    for a in range(k):
                        subs = frozenset(
                            j for j in range(k) if not f.elements[j] & ~f.elements[a]
                        )
                        assert (a in lim_s) == (prim and lim_w == subs)


def test_conv1_equivalent_to_fell_convergence():
    # both conditions together characterize Fell convergence of the sequence
    for space in spaces_upto(3, start=1):
        f = carrier(space, "F")
        ts = build_topology(f, "s")
        k = len(f.elements)
        for c in range(1, 3):
            for cyc in itertools.product(range(k), repeat=c):
                seq = EvPerSeq((), cyc)
                lim = seq_limits(ts, seq)
                mask_seq = EvPerSeq((), tuple(f.elements[t] for t in cyc))
                for a in range(k):
                    ca, cb = conv1_conditions(space, mask_seq, f.elements[a])
                    assert (ca and cb) == (a in lim)
