import numpy as np
import pytest

from qcover.algebra.racks import validate_rack
from qcover.covers.coverings import Horn, horn_analyze
from qcover.schemas import RunConfig
from qcover.suite import generators as gen
from qcover.suite.properties import (
    PROPERTIES,
    Property,
    SuiteContext,
    find_property,
    shrink_horn,
    smaller_subracks,
)
from qcover.suite.runner import format_summary, run_property, sample_count, suite_run


def small_config(seed=0xC0FFEE, samples=4):
    return RunConfig(seed=seed, samples=samples, free_samples=samples, kernel_samples=samples,
                     horn_samples=20, rewrite_depth=2)


def test_every_module_has_properties():
    modules = {p.module for p in PROPERTIES}
    assert modules == {"rack-core", "free-words", "path-groups", "galois-covers"}
    assert len(PROPERTIES) >= 12
    assert len({p.name for p in PROPERTIES}) == len(PROPERTIES)


def test_small_run_is_ok():
    summary = suite_run(small_config())
    assert summary.ok, format_summary(summary)
    assert all(p.passed + p.skipped == 4 for p in summary.properties)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_other_seeds(seed):
    summary = suite_run(small_config(seed=seed, samples=3),
                        names=["rack_axioms", "covering_methods_agree", "centralize_agreement",
                               "frq_centralize_commute", "double_extension_quotient"])
    assert summary.ok, format_summary(summary)


def test_runs_are_reproducible():
    names = ["horn_retraction", "word_eq3_sound"]
    first = suite_run(small_config(), names=names)
    second = suite_run(small_config(), names=names)
    assert first == second


def test_mutated_tables_are_caught():
    summary = suite_run(small_config(samples=50), mutate=True, names=["rack_axioms"])
    assert not summary.ok
    (outcome,) = summary.properties
    assert outcome.failed > 0
    assert outcome.witness is not None
    assert "FAILED" in format_summary(summary)


def test_find_property():
    assert find_property("rack_axioms").module == "rack-core"
    assert find_property("nope") is None


def test_random_racks_are_racks():
    rng = np.random.default_rng(11)
    for _ in range(100):
        X = gen.random_rack(rng, 6)
        assert 1 <= X.order <= 6
        validate_rack(X.table_pos, X.elements)


def test_random_kernel_word_has_kernel_image():
    rng = np.random.default_rng(5)
    f = [0, 0, 1]
    for _ in range(50):
        w = gen.random_kernel_word(rng, f)
        sums = w.exponent_sums(3)
        assert sums[0] + sums[1] == 0 and sums[2] == 0


def test_smaller_subracks(qabs):
    found = [(S.elements, pos) for S, pos in smaller_subracks(qabs)]
    assert found == [(("a", "b"), {0: 0, 1: 1})]


def test_shrink_horn(rack6_to_t2):
    X = rack6_to_t2.dom
    one, two, a = X.index("1"), X.index("2"), X.index("a")
    h = Horn(a, ((a, a, 1), (one, two, 1), (a, a, -1)), rack6_to_t2)

    def fails(c):
        return not horn_analyze(c).retracts

    assert fails(h)
    assert shrink_horn(h, fails).steps == ((one, two, 1),)


def test_random_racks_of_order_one():
    for seed in range(300):
        assert gen.random_rack(np.random.default_rng(seed), 1).order == 1


def test_random_racks_of_order_two_or_less():
    rng = np.random.default_rng(3)
    for _ in range(300):
        assert gen.random_rack(rng, 2).order <= 2


def _raising_generator(rng, ctx):
    raise ValueError("low >= high")


def _raising_check(case, ctx):
    raise KeyError(case)


def test_generator_errors_are_reported_as_failures():
    prop = Property("broken_generator", "rack-core", _raising_generator, lambda case, ctx: None)
    outcome = run_property(prop, 0, SuiteContext(small_config()))
    assert outcome.failed == 4 and outcome.passed == 0
    assert "ValueError" in outcome.witness


def test_unexpected_check_errors_are_reported_as_failures():
    prop = Property("broken_check", "rack-core", lambda rng, ctx: 7, _raising_check)
    outcome = run_property(prop, 0, SuiteContext(small_config()))
    assert outcome.failed == 4
    assert outcome.witness.startswith("7: KeyError")


def test_free_word_batteries_use_their_own_counts():
    config = RunConfig(samples=3, free_samples=11, kernel_samples=7)
    summary = suite_run(config, names=["free_rack_axioms", "kernel_pairing_round_trip", "rack_axioms"])
    counts = {p.name: p.passed + p.failed + p.skipped for p in summary.properties}
    assert counts == {"free_rack_axioms": 11, "kernel_pairing_round_trip": 7, "rack_axioms": 3}


def test_default_configuration_passes():
    config = RunConfig()
    summary = suite_run(config)
    assert summary.ok, format_summary(summary)
    assert len(summary.properties) == len(PROPERTIES)
    free = find_property("free_quandle_axioms")
    assert sample_count(free, config) == 10_000
    assert sample_count(find_property("kernel_pairing_round_trip"), config) == 1_000


def test_full_mutated_suite_terminates_with_failures():
    summary = suite_run(small_config(samples=20), mutate=True)
    assert not summary.ok
    by_name = {p.name: p for p in summary.properties}
    assert by_name["rack_axioms"].failed > 0
    assert by_name["rack_axioms"].witness is not None
    assert format_summary(summary).rstrip().endswith("FAILED")
