"""The batched engine must be an exact pixel-for-pixel copy of the per-trial
reference in simulate / greedy — same tags, same acceptances, same RNG stream
regardless of chunking."""

import pickle

import numpy as np
import pytest

from poset_secretary.engine import (
    CHUNK_TRIALS,
    batch_accept,
    batch_greedy_maximum,
    batch_last_tag_time,
    batch_tag_matrix,
    chunk_layout,
    chunk_uniforms,
    trial_for_index,
)
from poset_secretary.families import antichain, boolean_lattice, chain, random_poset, wedge
from poset_secretary.greedy import WeightRanking, greedy_maximum
from poset_secretary.posets import from_relations
from poset_secretary.simulate import Trial, run_strategy, tag_sequence

POSETS = [
    chain(1),
    chain(5),
    antichain(4),
    wedge(),
    boolean_lattice(2),
    from_relations(6, [(0, 2), (1, 2), (3, 4)]),
    random_poset(7, 0.3, seed=5),
]


def batches(n, count, seed):
    rng = np.random.default_rng(seed)
    return rng.random((count, n)), rng.random((count, n))


class TestChunking:
    def test_layout_partitions_trials(self):
        layout = chunk_layout(2 * CHUNK_TRIALS + 17)
        assert layout == [(0, CHUNK_TRIALS), (1, CHUNK_TRIALS), (2, 17)]
        assert chunk_layout(CHUNK_TRIALS) == [(0, CHUNK_TRIALS)]
        assert chunk_layout(0) == []

    def test_partial_chunk_is_a_prefix(self):
        t_part, w_part = chunk_uniforms(5, 99, 3, 40)
        t_full, w_full = chunk_uniforms(5, 99, 3, 1000)
        assert np.array_equal(t_part, t_full[:40])
        assert np.array_equal(w_part, w_full[:40])

    def test_chunks_differ(self):
        t0, _ = chunk_uniforms(5, 99, 0, 10)
        t1, _ = chunk_uniforms(5, 99, 1, 10)
        assert not np.array_equal(t0, t1)

    def test_seeds_differ(self):
        t0, _ = chunk_uniforms(5, 1, 0, 10)
        t1, _ = chunk_uniforms(5, 2, 0, 10)
        assert not np.array_equal(t0, t1)

    def test_trial_for_index_spans_chunks(self):
        for idx in [0, 7, CHUNK_TRIALS - 1, CHUNK_TRIALS, CHUNK_TRIALS + 5]:
            tr = trial_for_index(4, 42, idx)
            chunk, row = divmod(idx, CHUNK_TRIALS)
            times, weights = chunk_uniforms(4, 42, chunk, row + 1)
            assert np.array_equal(tr.arrival_times, times[row])
            assert np.array_equal(tr.weights, weights[row])

    def test_trial_index_validated(self):
        with pytest.raises(ValueError):
            trial_for_index(4, 42, -1)

    def test_seed_must_fit_64_bits(self):
        with pytest.raises(ValueError):
            chunk_uniforms(4, 1 << 64, 0, 1)
        with pytest.raises(ValueError):
            chunk_uniforms(4, -1, 0, 1)


class TestTagMatrix:
    @pytest.mark.parametrize("p", POSETS)
    def test_matches_per_trial_reference(self, p):
        times, weights = batches(p.n, 300, seed=p.n * 1000 + 7)
        aorder, tsorted, tagged = batch_tag_matrix(p, times, weights)
        for b in range(300):
            evs = tag_sequence(p, Trial(times[b], weights[b]))
            assert [e.element for e in evs] == aorder[b].tolist()
            assert [e.time for e in evs] == pytest.approx(tsorted[b].tolist())
            assert [e.tagged for e in evs] == tagged[b].tolist()

    def test_first_arrival_column_always_tagged(self):
        p = random_poset(6, 0.5, seed=8)
        times, weights = batches(6, 500, seed=1)
        _, _, tagged = batch_tag_matrix(p, times, weights)
        assert tagged[:, 0].all()


class TestBatchAccept:
    @pytest.mark.parametrize("tau", [0.0, 0.25, 1 / 2.718281828459045, 0.9])
    def test_matches_run_strategy(self, tau):
        p = random_poset(7, 0.3, seed=5)
        times, weights = batches(7, 400, seed=17)
        aorder, tsorted, tagged = batch_tag_matrix(p, times, weights)
        accepted, success = batch_accept(aorder, tsorted, tagged, tau, p.is_maximal)
        for b in range(400):
            out = run_strategy(p, Trial(times[b], weights[b]), tau)
            assert accepted[b] == (-1 if out.accepted is None else out.accepted)
            assert success[b] == out.success


class TestLastTagTime:
    def test_matches_reference_scan(self):
        p = random_poset(6, 0.4, seed=2)
        times, weights = batches(6, 400, seed=23)
        _, tsorted, tagged = batch_tag_matrix(p, times, weights)
        for t in (0.3, 0.7, 1.0):
            got = batch_last_tag_time(tsorted, tagged, t)
            for b in range(400):
                evs = tag_sequence(p, Trial(times[b], weights[b]))
                ref = [e.time for e in evs if e.tagged and e.time < t]
                if ref:
                    assert got[b] == pytest.approx(ref[-1])
                else:
                    assert np.isnan(got[b])

    def test_no_arrival_before_t_is_nan(self):
        p = chain(2)
        times = np.array([[0.8, 0.9]])
        weights = np.array([[0.1, 0.2]])
        _, tsorted, tagged = batch_tag_matrix(p, times, weights)
        assert np.isnan(batch_last_tag_time(tsorted, tagged, 0.5)[0])


class TestBatchGreedyMax:
    @pytest.mark.parametrize("p", POSETS)
    def test_matches_definitional(self, p):
        _, weights = batches(p.n, 300, seed=p.n * 31)
        got = batch_greedy_maximum(p.lt, weights)
        for b in range(300):
            want = greedy_maximum(p, WeightRanking.from_weights(weights[b]))
            assert got[b] == want


def test_poset_pickle_round_trip():
    p = random_poset(7, 0.3, seed=5)
    _ = p.maximal  # populate cached views first
    q = pickle.loads(pickle.dumps(p))
    assert q == p
    assert not q.lt.flags.writeable
    assert q.maximal == p.maximal
