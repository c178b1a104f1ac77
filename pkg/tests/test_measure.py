"""Collision measures against the naive pair-loop oracle and frozen values."""

from fractions import Fraction as F

import pytest

from recmac import (
    BudgetExceeded,
    CounterexampleFamily,
    MulFamily,
    PolyFamily,
    TableFamily,
    ToeplitzFamily,
    lift_to_asu2,
    measure_asu2,
    measure_axu2,
    sample_axu2,
    tag_marginal,
)

from conftest import asu2_oracle, axu2_oracle

SMALL_FAMILIES = [
    MulFamily(2),
    MulFamily(3),
    PolyFamily(2, 2),
    PolyFamily(3, 2),
    ToeplitzFamily(3, 2),
    CounterexampleFamily(2),
    CounterexampleFamily(3),
    lift_to_asu2(MulFamily(2)),
    TableFamily([0, 1, 2], [[0, 1, 1], [1, 1, 0], [0, 0, 1], [1, 0, 0]]),
]


@pytest.mark.parametrize("fam", SMALL_FAMILIES, ids=lambda f: f.descriptor())
def test_axu2_matches_pair_loop_oracle(fam):
    assert measure_axu2(fam).epsilon == axu2_oracle(fam)


@pytest.mark.parametrize("fam", SMALL_FAMILIES, ids=lambda f: f.descriptor())
def test_asu2_matches_pair_loop_oracle(fam):
    assert measure_asu2(fam).epsilon == asu2_oracle(fam)


def test_mul_axu2_frozen():
    for m in range(2, 9):
        assert measure_axu2(MulFamily(m)).epsilon == F(1, 2 ** m)


def test_poly_axu2_frozen():
    assert measure_axu2(PolyFamily(4, 2)).epsilon == F(1, 8)
    assert measure_axu2(PolyFamily(4, 3)).epsilon == F(3, 16)


def test_toeplitz_axu2_frozen():
    assert measure_axu2(ToeplitzFamily(4, 3)).epsilon == F(1, 8)


def test_counterexample_axu2_frozen():
    for m in (2, 3, 4):
        assert measure_axu2(CounterexampleFamily(m)).epsilon == F(1, 2 ** m - 1)


def test_single_message_family_is_trivially_safe():
    fam = TableFamily([7], [[0], [1]])
    assert measure_axu2(fam).epsilon == 0
    assert measure_axu2(fam).witness is None
    assert measure_asu2(fam).epsilon == 0


def test_constant_rows_are_maximally_bad():
    fam = TableFamily([0, 1], [[1, 1], [2, 2]])
    assert measure_axu2(fam).epsilon == 1
    m = measure_asu2(fam)
    assert m.epsilon == F(4, 2) * 1   # |T| * max cell probability = 4 * 1/2


def test_lift_asu2_equals_base_axu2():
    for base in (MulFamily(2), MulFamily(3), ToeplitzFamily(3, 2),
                 CounterexampleFamily(2)):
        assert measure_asu2(lift_to_asu2(base)).epsilon == \
            measure_axu2(base).epsilon


def test_axu2_witness_attains_epsilon():
    for fam in SMALL_FAMILIES:
        meas = measure_axu2(fam)
        x1, x2, t = meas.witness
        assert x1 != x2
        hits = sum(1 for k in fam.keys() if fam.tag(k, x1) ^ fam.tag(k, x2) == t)
        assert F(hits, fam.key_count) == meas.epsilon


def test_asu2_witness_attains_epsilon():
    for fam in SMALL_FAMILIES:
        meas = measure_asu2(fam)
        x1, x2, t1, t2 = meas.witness
        assert x1 != x2
        hits = sum(
            1 for k in fam.keys()
            if fam.tag(k, x1) == t1 and fam.tag(k, x2) == t2
        )
        assert F(fam.tag_count * hits, fam.key_count) == meas.epsilon


def test_budget_refusal_names_sampling():
    fam = ToeplitzFamily(12, 12)
    with pytest.raises(BudgetExceeded, match="sample_axu2"):
        measure_axu2(fam)
    with pytest.raises(BudgetExceeded):
        measure_asu2(fam)
    with pytest.raises(BudgetExceeded):
        measure_axu2(MulFamily(4), budget=10)


def test_sampling_is_deterministic_and_below_exact():
    fam = MulFamily(6)
    exact = measure_axu2(fam).epsilon
    a = sample_axu2(fam, pairs=200, seed=9)
    b = sample_axu2(fam, pairs=200, seed=9)
    assert a == b
    assert a.epsilon_estimate <= exact
    assert 0 < a.pair_coverage <= 1
    assert a.interval[0] <= float(a.epsilon_estimate) <= a.interval[1]
    x1, x2, t = a.witness
    hits = sum(1 for k in fam.keys() if fam.tag(k, x1) ^ fam.tag(k, x2) == t)
    assert F(hits, fam.key_count) == a.epsilon_estimate


def test_sampling_finds_maximum_on_tiny_family():
    fam = MulFamily(2)
    s = sample_axu2(fam, pairs=500, seed=0)
    assert s.epsilon_estimate == measure_axu2(fam).epsilon


def test_tag_marginal():
    fam = MulFamily(3)
    assert tag_marginal(fam, 0) == {t: F(1 if t == 0 else 0) for t in fam.tags()}
    for x in range(1, 8):
        marg = tag_marginal(fam, x)
        assert all(p == F(1, 8) for p in marg.values())
    lifted = lift_to_asu2(CounterexampleFamily(2))
    for x in lifted.messages:
        marg = tag_marginal(lifted, x)
        assert all(p == F(1, 4) for p in marg.values())
