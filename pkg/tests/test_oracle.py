import pytest

from dyckbaker.errors import ResourceLimitError
from dyckbaker.krieger import Side, mme_cylinder
from dyckbaker.oracle import (
    DEFAULT_SEED,
    MonteCarloConfig,
    brute_periodic,
    mc_cylinder_table,
    mc_mme_cylinder,
    naive_reduce,
)
from dyckbaker.words import (
    IDENTITY,
    PeriodClass,
    ReducedForm,
    parse_word,
)

W = parse_word


def test_naive_reduce_examples():
    assert naive_reduce(W("a1,b1")) == IDENTITY
    assert naive_reduce(W("a1,b2")).is_zero
    assert naive_reduce(W("b2,a1,a1,b1")) == ReducedForm((2,), (1,))
    assert naive_reduce(()) == IDENTITY


def test_brute_periodic_small_counts():
    assert brute_periodic(2, 1) == {
        W("a1"): PeriodClass.ALPHA,
        W("a2"): PeriodClass.ALPHA,
        W("b1"): PeriodClass.BETA,
        W("b2"): PeriodClass.BETA,
    }
    by_class = {}
    for w, c in brute_periodic(2, 2).items():
        by_class.setdefault(c, set()).add(w)
    assert {len(v) for v in by_class.values()} == {4}
    n3 = brute_periodic(2, 3)
    assert sum(1 for c in n3.values() if c is PeriodClass.ALPHA) == 20
    assert sum(1 for c in n3.values() if c is PeriodClass.ZERO) == 0


def test_brute_periodic_budget():
    with pytest.raises(ResourceLimitError):
        brute_periodic(2, 30)


def test_mc_config_validation():
    with pytest.raises(ValueError):
        MonteCarloConfig(0)
    with pytest.raises(ValueError):
        MonteCarloConfig(10, window_radius=0)
    with pytest.raises(ValueError):
        MonteCarloConfig(10, shards=0)


def test_mc_determinism_and_seed_sensitivity():
    cfg = MonteCarloConfig(20_000)
    e1 = mc_mme_cylinder(Side.ALPHA, W("a1"), 2, cfg)
    e2 = mc_mme_cylinder(Side.ALPHA, W("a1"), 2, cfg)
    assert e1 == e2
    e3 = mc_mme_cylinder(Side.ALPHA, W("a1"), 2, MonteCarloConfig(20_000, seed=7))
    assert e3.estimate != e1.estimate


def test_mc_matches_exact_values_loosely():
    cfg = MonteCarloConfig(50_000)
    for side in (Side.ALPHA, Side.BETA):
        table = mc_cylinder_table(side, 2, 2, cfg)
        for text in ("a1", "b2", "a1,b1", "b1,a2"):
            est = table.estimate(W(text))
            exact = float(mme_cylinder(side, W(text), 2))
            assert abs(est.estimate - exact) <= 5 * max(est.stderr, 1e-4)


def test_mc_inadmissible_cylinder_is_never_hit():
    est = mc_mme_cylinder(Side.ALPHA, W("a1,b2"), 2, MonteCarloConfig(30_000))
    assert est.estimate == 0.0 and est.stderr == 0.0


def test_mc_empty_window():
    est = mc_mme_cylinder(Side.ALPHA, (), 2, MonteCarloConfig(1000))
    assert est.estimate == 1.0 and est.discarded == 0


def test_mc_tiny_radius_discards_and_reports():
    cfg = MonteCarloConfig(20_000, window_radius=1)
    table = mc_cylinder_table(Side.ALPHA, 2, 2, cfg)
    est = table.estimate(W("b1,a1"))
    assert est.discarded > 0
    assert est.discarded_fraction > 0
    assert est.valid + est.discarded == 20_000


def test_mc_sharded_merge_is_deterministic():
    cfg = MonteCarloConfig(30_000, shards=3)
    a = mc_mme_cylinder(Side.BETA, W("b1"), 2, cfg)
    b = mc_mme_cylinder(Side.BETA, W("b1"), 2, cfg)
    assert a == b
    assert a.samples == 30_000


def test_default_seed_value():
    assert DEFAULT_SEED == 0x5EED
