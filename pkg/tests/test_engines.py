import math
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from ordinal_msp import greedy_opt
from ordinal_msp.engines import (ENGINES, ArrivalTrial, discrete_product_bound, draw_sample_size, engine_k,
                                 forbidden_set, get_engine, interval_budgets, key_lemma_bound, key_lemma_values,
                                 make_trial, run_classical_secretary, run_improving_greedy, run_kleinberg_original,
                                 run_tpa, run_uniform_variant, threshold_index, tpa_scales, trial_rng,
                                 verify_forbidden_property)
from ordinal_msp.engines.verifier import FORBIDDEN_SETS, MUTANTS
from ordinal_msp.fixtures import load_fixtures
from ordinal_msp.harness import exhaustive_run
from ordinal_msp.zoo import (GammoidMatroid, GraphicMatroid, HypergraphicMatroid, LaminarMatroid, LinearMatroid,
                             MatchingMatroid, TransversalMatroid, UniformMatroid, laminar_as_gammoid)

FORBIDDEN_ENGINES = ("classical", "transversal", "gammoid", "packing", "graphic", "hypergraphic", "framed",
                     "semiplanar", "laminar")


def _singleton(engine):
    return {
        "classical": UniformMatroid(1, 1),
        "transversal": TransversalMatroid(1, [[0]]),
        "gammoid": GammoidMatroid(2, [(0, 1)], [0], [1], mu=1),
        "packing": MatchingMatroid(2, [(0, 1)], [0]),
        "graphic": GraphicMatroid(2, [(0, 1)]),
        "hypergraphic": HypergraphicMatroid(3, [(0, 1, 2)]),
        "framed": LinearMatroid([[1]], 2),
        "semiplanar": laminar_as_gammoid(LaminarMatroid(1, [], [])),
        "laminar": LaminarMatroid(1, [], []),
    }[engine]


# ---------------------------------------------------------------- key lemma

@pytest.mark.parametrize("k, p, a", [
    (1, math.exp(-1), math.e),
    (2, 0.5, 4.0),
    (3, 3 ** -0.5, 3 * math.sqrt(3)),
    (4, 4 ** (-1 / 3), 4 ** (4 / 3)),
])
def test_key_lemma_values(k, p, a):
    got_p, got_a = key_lemma_values(k)
    assert got_p == pytest.approx(p, rel=1e-12)
    assert got_a == pytest.approx(a, rel=1e-12)
    assert key_lemma_bound(k, got_p) == pytest.approx(1 / got_a, rel=1e-12)


def test_key_lemma_bound_at_half_for_pairs():
    assert key_lemma_bound(2, 0.5) == pytest.approx(0.25)
    assert key_lemma_bound(1, math.exp(-1)) == pytest.approx(math.exp(-1))


@pytest.mark.parametrize("bad", [0, -1, 1.5])
def test_key_lemma_rejects_bad_k(bad):
    with pytest.raises(ValueError):
        key_lemma_values(bad)


def test_key_lemma_optimum_is_maximiser():
    for k in (1, 2, 3, 5):
        p, _ = key_lemma_values(k)
        grid = np.linspace(0.01, 0.99, 981)
        assert max(key_lemma_bound(k, q) for q in grid) <= key_lemma_bound(k, p) + 1e-12


def _product_bound_exact(n, k, p):
    p = Fraction(p)
    total = Fraction(0)
    for s in range(n + 1):
        w = math.comb(n, s) * p ** s * (1 - p) ** (n - s)
        inner = Fraction(0)
        for t in range(s + 1, n + 1):
            prod = Fraction(1)
            for j in range(s + 1, t):
                prod *= max(Fraction(0), 1 - Fraction(k, j))
            inner += prod
        total += w * inner / n
    return total


def test_discrete_product_bound_examples():
    assert discrete_product_bound(1, 3, 0.0) == 1.0
    v = discrete_product_bound(20, 2, 0.5)
    assert v == pytest.approx(float(_product_bound_exact(20, 2, Fraction(1, 2))), rel=1e-12)
    assert v == pytest.approx(0.25000004768371586, rel=1e-12)
    assert v >= key_lemma_bound(2, 0.5)
    assert abs(discrete_product_bound(1000, 1, math.exp(-1)) - math.exp(-1)) <= 1 / 1000


# ---------------------------------------------------------------- trials

def test_draw_sample_size_edges():
    rng = np.random.default_rng(0)
    assert draw_sample_size(10, 0.0, rng) == 0
    assert draw_sample_size(10, 1.0, rng) == 10
    with pytest.raises(ValueError):
        draw_sample_size(10, 1.5, rng)


def test_draw_sample_size_clt():
    rng = np.random.default_rng(1)
    n = 10 ** 6
    draws = [draw_sample_size(n, 0.5, rng) for _ in range(100)]
    sigma = math.sqrt(n * 0.25 / 100)
    assert abs(np.mean(draws) - n / 2) <= 3 * sigma


def test_trial_validation():
    with pytest.raises(ValueError):
        ArrivalTrial((0, 0, 1), 0)
    with pytest.raises(ValueError):
        ArrivalTrial((0, 1), 3)
    with pytest.raises(ValueError):
        ArrivalTrial((0, 1), 0, times=(0.5, 0.2))
    t = ArrivalTrial((1, 0), 1, times=(0.5, 0.2))
    assert t.n == 2 and t.with_sample(0).s == 0


def test_trial_rng_is_index_keyed():
    a = trial_rng(5, 17).integers(0, 1 << 30, size=4)
    b = trial_rng(5, 17).integers(0, 1 << 30, size=4)
    c = trial_rng(5, 18).integers(0, 1 << 30, size=4)
    assert (a == b).all() and not (a == c).all()


def test_make_trial_with_times_sorted():
    t = make_trial(50, rng=np.random.default_rng(2), with_times=True)
    seq = [t.times[e] for e in t.order]
    assert seq == sorted(seq)


# ---------------------------------------------------------------- forbidden-set engines

@pytest.mark.parametrize("engine", FORBIDDEN_ENGINES)
def test_single_element_taken_without_sample(engine):
    M = _singleton(engine)
    assert ENGINES[engine].replay(M, ArrivalTrial((0,), 0)).selected == {0}
    assert ENGINES[engine].replay(M, ArrivalTrial((0,), 1)).selected == frozenset()


QUICK = [fx for fx in load_fixtures("quick") if fx.engines]


@pytest.mark.parametrize("fx", QUICK, ids=[fx.name for fx in QUICK])
def test_full_sample_selects_nothing_and_alg_independent(fx):
    M = fx.instance
    for engine in fx.engines:
        spec = get_engine(engine)
        for order in permutations(range(M.n)):
            if spec.sample == "times":
                assert M.indep(spec.run(M, ArrivalTrial(order, 0, times=_times(order)), None, {}).selected)
                continue
            if spec.sample == "binomial":
                assert not spec.replay(M, ArrivalTrial(order, M.n)).selected
            for s in range(M.n + 1):
                assert M.indep(spec.replay(M, ArrivalTrial(order, s)).selected)


def _times(order):
    n = len(order)
    times = [0.0] * n
    for i, e in enumerate(order):
        times[e] = (i + 0.5) / n
    return times


def test_classical_exact_top_probability_matches_formula():
    n, p = 4, math.exp(-1)

    def per_s(s):
        if s == 0:
            return 1 / n
        return sum(s / (i - 1) for i in range(s + 1, n + 1)) / n

    want = sum(math.comb(n, s) * p ** s * (1 - p) ** (n - s) * per_s(s) for s in range(n + 1))
    got = exhaustive_run(UniformMatroid(n, 1), "classical").freq[0]
    assert got == pytest.approx(want, rel=1e-12)
    assert got == pytest.approx(0.37693050706448694, rel=1e-12)


def test_classical_n6_beats_one_over_e():
    ex = exhaustive_run(UniformMatroid(6, 1), "classical")
    assert ex.leaves == 720 * 7
    assert ex.freq[0] >= math.exp(-1)


def test_classical_trace():
    out = run_classical_secretary(ArrivalTrial((2, 0, 1), 1), trace=True)
    assert out.selected == {0}
    assert [line.split("\t")[1] for line in out.trace_lines()] == ["2", "0", "1"]


@pytest.mark.parametrize("engine", sorted(FORBIDDEN_SETS))
def test_forbidden_sets_within_size(engine):
    fx = next((f for f in load_fixtures("quick") if engine in f.engines), None)
    if fx is None:
        pytest.skip("no quick fixture")
    M = fx.instance
    k = engine_k(engine, M)
    for order in permutations(range(M.n)):
        Y = frozenset(order)
        for r in greedy_opt(M):
            X = frozenset(order[:2]) - {r}
            assert len(forbidden_set(engine, M, X, Y, r)) <= k


def test_forbidden_set_argument_checks():
    M = UniformMatroid(3, 1)
    with pytest.raises(ValueError):
        forbidden_set("classical", M, {0}, {0, 1}, 0)
    with pytest.raises(ValueError):
        forbidden_set("classical", M, set(), {0, 1}, 1)


def test_history_matching_mutant_is_caught():
    fx = next(f for f in load_fixtures("quick") if f.name == "transversal_5")
    good = verify_forbidden_property("transversal", fx.instance, 1)
    bad = verify_forbidden_property("transversal", fx.instance, 1, run=MUTANTS["history-matching"][1])
    assert good.ok
    assert not bad.ok and bad.counterexamples
    assert "order=[" in bad.counterexamples[0].line()


def test_engine_registry():
    with pytest.raises(ValueError, match="unknown engine"):
        get_engine("nope")
    assert not get_engine("graphic").supports(UniformMatroid(3, 1))
    assert get_engine("tpa").supports(UniformMatroid(3, 1))
    with pytest.raises(ValueError):
        engine_k("tpa", UniformMatroid(3, 1))
    with pytest.raises(ValueError, match="mu"):
        engine_k("gammoid", GammoidMatroid(2, [(0, 1)], [0], [1]))
    assert get_engine("laminar").param_p(LaminarMatroid(2, [], [])) == pytest.approx(3 ** -0.5)


# ---------------------------------------------------------------- greedy family

def test_improving_greedy_rank_one_exact():
    U = UniformMatroid(3, 1)
    hits = considered = 0
    for order in permutations(range(3)):
        out = run_improving_greedy(U, ArrivalTrial(order, 1))
        hits += 0 in out.selected
        considered += out.extra["considered"]
    assert Fraction(hits, 6) == Fraction(1, 2)
    assert Fraction(considered, 6) == Fraction(5, 6)


@pytest.mark.parametrize("n, rho, s", [(5, 2, 2), (6, 3, 1), (4, 4, 2), (6, 2, 3)])
def test_improving_greedy_considered_count_on_uniform(n, rho, s):
    # r_i enters OPT(R_i) with probability min(1, rho / i)
    U = UniformMatroid(n, rho)
    total = sum(run_improving_greedy(U, ArrivalTrial(o, s)).extra["considered"] for o in permutations(range(n)))
    got = Fraction(total, math.factorial(n))
    assert got == sum(min(Fraction(1), Fraction(rho, i)) for i in range(s + 1, n + 1))
    harmonic = rho * sum(Fraction(1, i) for i in range(s + 1, n + 1))
    assert got <= harmonic
    assert (got == harmonic) == (s + 1 >= rho)


def test_improving_greedy_full_sample_empty():
    U = UniformMatroid(3, 2)
    assert run_improving_greedy(U, ArrivalTrial((0, 1, 2), 3)).selected == frozenset()


def test_tpa_equal_weights_take_first_after_sample():
    U = UniformMatroid(5, 1)
    w = [1.0] * 5
    rng = np.random.default_rng(0)
    out = run_tpa(U, w, ArrivalTrial((3, 1, 4, 0, 2), 2), rng)
    assert out.selected == {4}


def test_tpa_tau_zero_with_top_sampled_takes_nothing_below_top():
    U = UniformMatroid(6, 3)
    w = [6.0, 5.0, 4.0, 3.0, 2.0, 1.0]
    for order in permutations(range(6)):
        if order.index(0) >= 2:
            continue
        out = run_tpa(U, w, ArrivalTrial(order, 2), None, tau=0)
        assert out.selected == frozenset()


def test_tpa_scales():
    assert [tpa_scales(r) for r in (1, 2, 3, 4, 10)] == [1, 2, 3, 3, 5]
    with pytest.raises(ValueError):
        run_tpa(UniformMatroid(4, 2), [4, 3, 2, 1], ArrivalTrial((0, 1, 2, 3), 1), None, tau=5)


# ---------------------------------------------------------------- uniform matroids

def test_interval_budgets_floor():
    assert interval_budgets(4, 5) == [2, 1, 0, 0, 0]


def test_threshold_undefined_means_no_selection():
    rho = 4
    q = threshold_index(rho, 0)
    n = q - 1
    order = tuple(range(n))
    times = [0.5 + 0.4 * i / n for i in range(n)]
    out = run_uniform_variant(rho, ArrivalTrial(order, 0, times=times))
    assert out.selected == frozenset()


def test_uniform_variant_respects_rank():
    rng = np.random.default_rng(4)
    for _ in range(10 ** 4):
        out = run_uniform_variant(64, make_trial(2000, rng=rng, with_times=True))
        assert len(out.selected) <= 64


def test_uniform_variant_exact_on_small_instance():
    ex = exhaustive_run(UniformMatroid(5, 2), "uniform_variant")
    assert ex.freq[:4] == pytest.approx([1 / 32] * 4, abs=1e-15)
    assert ex.freq[4] == 0.0


def test_kleinberg_rank_one_takes_first_arrival():
    rng = np.random.default_rng(0)
    for _ in range(20):
        t = make_trial(8, rng=rng, s=0)
        assert run_kleinberg_original(1, t).selected == {t.order[0]}


def test_kleinberg_full_rank_takes_everything():
    rng = np.random.default_rng(1)
    t = make_trial(16, rng=rng, s=0)
    assert run_kleinberg_original(16, t).selected == set(range(16))


def test_kleinberg_rejects_non_powers():
    with pytest.raises(ValueError):
        run_kleinberg_original(3, make_trial(8, rng=np.random.default_rng(0)))
