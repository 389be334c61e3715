import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats as scipy_stats

from metrotrade.errors import BudgetError
from metrotrade.sampling import (
    EXACT_ENUM_LIMIT,
    OutcomeStats,
    binary_stats,
    draw_count_matrix,
    draw_samples,
    enumerate_binomial,
    povm_stats,
)
from metrotrade.states import ProbeKind, ProbePhaseState


def test_binary_stats_deterministic_outcome():
    s = binary_stats(1.0, 5)
    assert s.probabilities == (1.0, 0.0)
    assert s.std_devs == (0.0, 0.0)


def test_binary_stats_fair_coin():
    s = binary_stats(0.5, 100)
    assert abs(s.std_devs[0] - 0.05) < 1e-15


def test_binary_stats_matches_half_sine():
    # sqrt(p(1-p)) = sin(phi)/2 when p = (1 + cos phi)/2
    p = (1.0 + math.cos(0.2)) / 2.0
    s = binary_stats(p, 100)
    assert abs(s.std_devs[0] - math.sin(0.2) / 20.0) < 1e-12


def test_outcome_stats_recompute_invariant():
    s = OutcomeStats((0.2, 0.3, 0.5), 40)
    for p, sd in zip(s.probabilities, s.std_devs):
        assert sd == math.sqrt(p * (1.0 - p) / 40)


def test_outcome_stats_rejects_bad_input():
    with pytest.raises(ValueError):
        OutcomeStats((1.0,), 10)
    with pytest.raises(ValueError):
        OutcomeStats((0.5, 0.6), 10)
    with pytest.raises(ValueError):
        OutcomeStats((0.5, 0.5), 0)
    with pytest.raises(ValueError):
        OutcomeStats((-0.1, 1.1), 10)
    with pytest.raises(ValueError):
        binary_stats(1.5, 10)


def test_povm_stats_identical_states():
    a = ProbePhaseState(0.7)
    s0, s1 = povm_stats(a, ProbePhaseState(0.7), 10)
    assert s0.probabilities == (1.0, 0.0)
    assert s1.probabilities == (1.0, 0.0)


def test_povm_stats_orthogonal():
    s0, s1 = povm_stats(ProbePhaseState(0.0), ProbePhaseState(math.pi), 10)
    assert s1.probabilities[0] == pytest.approx(0.0, abs=1e-15)
    assert s1.probabilities[1] == pytest.approx(1.0, abs=1e-15)


def test_povm_stats_pi_over_3():
    _, s1 = povm_stats(ProbePhaseState(0.0), ProbePhaseState(math.pi / 3.0), 12)
    assert abs(s1.probabilities[0] - 0.75) < 1e-15


def test_povm_stats_rejects_mismatched_probes():
    a = ProbePhaseState(0.0, particles=2, kind=ProbeKind.GHZ)
    b = ProbePhaseState(0.1, particles=3, kind=ProbeKind.GHZ)
    with pytest.raises(ValueError):
        povm_stats(a, b, 5)
    c = ProbePhaseState(0.1, particles=2, kind=ProbeKind.PRODUCT)
    with pytest.raises(ValueError):
        povm_stats(a, c, 5)


def test_enumerate_binomial_two_shots():
    assert enumerate_binomial(0.5, 2) == [(0, 0.25), (1, 0.5), (2, 0.25)]


def test_enumerate_binomial_degenerate():
    pmf = dict(enumerate_binomial(0.0, 5))
    assert pmf[0] == 1.0
    assert all(pmf[k] == 0.0 for k in range(1, 6))


def test_enumerate_binomial_mean_identity():
    pmf = enumerate_binomial(0.3, 10)
    mean = math.fsum(k * w for k, w in pmf)
    assert abs(mean - 3.0) < 1e-12


def test_enumerate_binomial_sums_to_one():
    for p in (0.01, 0.3, 0.5, 0.77, 0.999):
        total = math.fsum(w for _, w in enumerate_binomial(p, 64))
        assert abs(total - 1.0) < 1e-12


def test_enumerate_binomial_matches_scipy():
    p, n = 0.37, 20
    ref = scipy_stats.binom.pmf(np.arange(n + 1), n, p)
    got = [w for _, w in enumerate_binomial(p, n)]
    assert np.allclose(got, ref, rtol=1e-12, atol=1e-300)


def test_enumerate_binomial_budget():
    with pytest.raises(BudgetError):
        enumerate_binomial(0.5, EXACT_ENUM_LIMIT + 1)


def test_draw_samples_certain_outcome():
    draws = draw_samples(binary_stats(1.0, 7), seed=123, trials=20)
    assert all(d.counts == (7, 0) for d in draws)


def test_draw_samples_deterministic():
    s = binary_stats(0.42, 30)
    a = draw_samples(s, seed=99, trials=50)
    b = draw_samples(s, seed=99, trials=50)
    assert [d.counts for d in a] == [d.counts for d in b]


def test_draw_samples_prefix_stable():
    # the first T trials never depend on how many more are requested
    s = binary_stats(0.42, 30)
    short = draw_count_matrix(s, seed=5, trials=100)
    long = draw_count_matrix(s, seed=5, trials=1000)
    assert np.array_equal(short, long[:100])


def test_draw_samples_seed_sensitivity():
    s = binary_stats(0.42, 30)
    a = draw_count_matrix(s, seed=1, trials=200)
    b = draw_count_matrix(s, seed=2, trials=200)
    assert not np.array_equal(a, b)


def test_draw_samples_clt_mean():
    # grand mean of k/n over T trials within 4 sigma of p
    n, trials = 10**4, 10**4
    counts = draw_count_matrix(binary_stats(0.5, n), seed=2024, trials=trials)
    grand = counts[:, 0].mean() / n
    assert abs(grand - 0.5) <= 2e-4


def test_empirical_pmf_total_variation():
    trials = 10**5
    for n in (4, 16):
        for p in (0.3, 0.5):
            counts = draw_count_matrix(binary_stats(p, n), seed=7, trials=trials)[:, 0]
            hist = np.bincount(counts, minlength=n + 1) / trials
            exact = np.array([w for _, w in enumerate_binomial(p, n)])
            tv = 0.5 * np.abs(hist - exact).sum()
            assert tv <= 0.01


def test_multinomial_three_outcomes():
    s = OutcomeStats((0.2, 0.5, 0.3), 60)
    counts = draw_count_matrix(s, seed=11, trials=4000)
    assert counts.shape == (4000, 3)
    assert (counts.sum(axis=1) == 60).all()
    assert (counts >= 0).all()
    # per-category empirical mean within 4 sigma of n p_i
    for i, p in enumerate(s.probabilities):
        se = math.sqrt(60 * p * (1.0 - p) / 4000)
        assert abs(counts[:, i].mean() - 60 * p) <= 4.0 * se


def test_multinomial_matches_exact_marginal():
    # first category of a 3-way split is binomial(n, p0)
    s = OutcomeStats((0.25, 0.45, 0.3), 12)
    counts = draw_count_matrix(s, seed=3, trials=10**5)[:, 0]
    hist = np.bincount(counts, minlength=13) / 10**5
    exact = np.array([w for _, w in enumerate_binomial(0.25, 12)])
    assert 0.5 * np.abs(hist - exact).sum() <= 0.01


def test_seed_validation():
    s = binary_stats(0.5, 4)
    with pytest.raises(ValueError):
        draw_samples(s, seed=-1, trials=5)
    with pytest.raises(ValueError):
        draw_samples(s, seed=2**64, trials=5)
    with pytest.raises(ValueError):
        draw_samples(s, seed=0, trials=0)
    # extreme seeds are legal
    assert draw_samples(s, seed=2**64 - 1, trials=2)
    assert draw_samples(s, seed=0, trials=2)


def test_sample_draw_checks_totals():
    from metrotrade.sampling import SampleDraw

    with pytest.raises(ValueError):
        SampleDraw((3, 2), seed=0, n=6)
    with pytest.raises(ValueError):
        SampleDraw((-1, 7), seed=0, n=6)


@given(
    st.lists(st.floats(min_value=0.01, max_value=1.0), min_size=2, max_size=6),
    st.integers(min_value=1, max_value=500),
)
def test_outcome_stats_property(raw, n):
    total = math.fsum(raw)
    probs = tuple(x / total for x in raw)
    s = OutcomeStats(probs, n)
    assert abs(math.fsum(s.probabilities) - 1.0) < 1e-9
    for p, sd in zip(s.probabilities, s.std_devs):
        assert sd == math.sqrt(p * (1.0 - p) / n)
        assert sd <= 0.5 / math.sqrt(n) + 1e-15
