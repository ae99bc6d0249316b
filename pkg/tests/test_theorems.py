import pytest

from limhyper import (
    BudgetExceeded,
    enumerate_topologies,
    mine_check_failures,
    run_check,
    sweep,
    validate_topology,
    verify_all,
)
from limhyper.spaceio import parse_point_set
from limhyper.theorems import (
    CHECKS,
    FAIL,
    PASS,
    PROXY,
    TRIVIALLY_TRUE,
    corrupted_environments,
)


ALL_OK = (PASS, TRIVIALLY_TRUE, PROXY)


def test_registry_names_are_stable():
    assert list(CHECKS) == [
        "check_closure_singleton",
        "check_eta_closure_and_density",
        "check_cont_iff_maximal",
        "check_separated_iff_maximal",
        "check_connectedness",
        "check_compactness_lemma",
        "check_local_compactness",
        "check_baire",
        "check_gdelta_ML",
        "check_product_structure",
        "check_separated_points_corollary",
        "check_conv_props",
    ]


def test_verify_all_sierpinski(sierpinski):
    report = verify_all(sierpinski)
    assert [r.check_id for r in report.results] == list(CHECKS)
    assert all(r.status in ALL_OK for r in report.results)
    by_id = {r.check_id: r for r in report.results}
    assert by_id["check_closure_singleton"].status == PASS
    assert by_id["check_compactness_lemma"].status == TRIVIALLY_TRUE
    assert by_id["check_baire"].status == TRIVIALLY_TRUE
    assert by_id["check_conv_props"].status == PROXY
    assert "informational" in by_id["check_connectedness"].notes


def test_verify_all_named_spaces(three_point, discrete2, indiscrete2):
    for space in (three_point, discrete2, indiscrete2):
        report = verify_all(space)
        assert all(r.status in ALL_OK for r in report.results)


def test_connectedness_vacuous_note(discrete2):
    r = run_check("check_connectedness", discrete2)
    assert r.status == PASS
    assert "hypothesis not met" in r.notes


def test_verify_all_rejects_empty_space():
    empty = validate_topology(0, [0])
    with pytest.raises(ValueError):
        verify_all(empty)


def test_checks_are_deterministic(three_point):
    first = verify_all(three_point)
    second = verify_all(three_point)
    assert first.results == second.results
    assert first.space_digest == second.space_digest


def test_compactness_lemma_accepts_explicit_families(three_point):
    r = run_check("check_compactness_lemma", three_point, families=[(0b100, 0b011)])
    assert r.status == TRIVIALLY_TRUE


def test_conv_props_budget_guard(sierpinski):
    with pytest.raises(BudgetExceeded):
        run_check("check_conv_props", sierpinski, max_pre=0, max_cycle=30)


def test_sweep_counts_and_cleanliness():
    r2 = sweep(2)
    assert (r2.space_count, r2.failure_count) == (4, 0)
    r3 = sweep(3)
    assert (r3.space_count, r3.failure_count) == (29, 0)
    assert r3.first_failures == ()


def test_trivially_true_only_where_expected():
    allowed = {"check_compactness_lemma", "check_local_compactness", "check_baire"}
    for space in enumerate_topologies(3):
        for r in verify_all(space).results:
            if r.status == TRIVIALLY_TRUE:
                assert r.check_id in allowed


def test_lh_jobs_env_is_the_default(monkeypatch):
    monkeypatch.setenv("LH_JOBS", "2")
    r = sweep(2)
    assert (r.space_count, r.failure_count) == (4, 0)


def test_sweep_jobs_do_not_change_results():
    serial = sweep(2, jobs=1)
    parallel = sweep(2, jobs=2)
    assert (serial.space_count, serial.failure_count) == (
        parallel.space_count,
        parallel.failure_count,
    )


def test_sweep_guards():
    with pytest.raises(ValueError):
        sweep(0)
    with pytest.raises(BudgetExceeded):
        sweep(5)


# ------------------------------------------------------- expect-fail mining

def test_mining_detects_failures_per_check(sierpinski, three_point):
    found = dict(mine_check_failures(sierpinski))
    found.update(mine_check_failures(three_point))
    missing = [cid for cid in CHECKS if cid not in found]
    assert not missing, f"checks never failed under corruption: {missing}"
    for cid, hit in found.items():
        assert hit.result.status == FAIL
        assert hit.result.witness, cid


def test_corruptions_do_not_fool_honest_env(sierpinski):
    # the corrupted environments really are the reason checks fail
    for cid in CHECKS:
        assert run_check(cid, sierpinski).status in ALL_OK
    descriptions = [d for d, _ in corrupted_environments(sierpinski)]
    assert len(descriptions) == len(set(descriptions))


def test_mined_witness_self_validates(sierpinski):
    # re-evaluate a mined closure-singleton witness through public operations
    from limhyper import hyper_closure

    found = mine_check_failures(sierpinski, check_ids=("check_closure_singleton",))
    hit = found["check_closure_singleton"]
    witness = dict(hit.result.witness)
    env = hit.env
    t = env.topology("F", "w")
    elem = parse_point_set(witness["element"], env.labels)
    i = t.carrier.index(elem)
    got = hyper_closure(t, (i,))
    expected = frozenset(
        j for j, b in enumerate(t.carrier.elements) if not b & ~elem
    )
    assert got != expected


def test_mining_covers_gdelta_flip(sierpinski_plus_isolated):
    # a corrupted maximal-limit family over the two-component space flips
    # at least one of the embedding checks
    found = mine_check_failures(
        sierpinski_plus_isolated,
        check_ids=("check_gdelta_ML", "check_cont_iff_maximal"),
    )
    assert found


def test_report_invariant_every_check_once():
    for space in enumerate_topologies(2):
        report = verify_all(space)
        assert sorted(r.check_id for r in report.results) == sorted(CHECKS)


def test_fail_results_always_carry_witness(sierpinski, three_point):
    for space in (sierpinski, three_point):
        for cid, hit in mine_check_failures(space).items():
            assert hit.result.status == FAIL
            assert len(hit.result.witness) >= 1
