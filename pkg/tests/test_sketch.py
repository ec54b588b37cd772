import random

import pytest

from streamsched import (
    EmptyStreamError,
    KnowledgeMode,
    Sketch,
    SketchBuilder,
    bucket_index,
    rounded_value,
    sketch_stream,
)

TAU = 1.0 / 15.0


class TestBucketing:
    def test_p_one_is_bucket_one(self):
        for tau in (0.01, TAU, 0.5, 1.0):
            assert bucket_index(1, tau) == 1

    def test_powers_of_two(self):
        assert bucket_index(5, 1.0) == 3  # 5 in [4, 8)

    def test_tau_fifteenth(self):
        assert bucket_index(2, TAU) == 11

    def test_rounded_values(self):
        assert rounded_value(3, 1.0) == 8
        assert rounded_value(1, 0.5) == 1
        assert rounded_value(11, TAU) == 2

    def test_rounding_bracket(self):
        # every integer is bounded by its rounded value within one ratio step
        for tau in (0.01, TAU, 0.2):
            for p in range(1, 2000):
                rp = rounded_value(bucket_index(p, tau), tau)
                assert p <= rp < (1 + tau) * p


class TestObserve:
    def test_small_stream(self):
        b = SketchBuilder(1.0, 1.0)
        for p in (1, 1, 2):
            b.observe(p)
        assert b.n_cur == 3
        assert b.p_curMax == 2
        sk = b.finalize()
        assert sk.entries == ((1, 2), (2, 1))
        assert sk.p_minL_final == pytest.approx(2 / 27)

    def test_threshold_rises_with_n_upper(self):
        b = SketchBuilder(1.0, 1.0, KnowledgeMode(n_upper=10))
        b.observe(3 * 10**6)
        assert b.p_minL == pytest.approx(10**4)
        before = len(b._store)
        b.observe(5)  # below threshold: skipped
        assert len(b._store) == before
        assert b.n_cur == 2

    def test_skip_updates_bookkeeping_only(self):
        b = SketchBuilder(1.0, 1.0, KnowledgeMode(n_upper=2))
        b.observe(1000)  # threshold becomes 1000/12
        live = b.live_size()
        b.observe(3)
        assert b.live_size() == live
        assert b.n_cur == 2
        assert b.p_curMax == 1000


class TestFinalize:
    def test_single_job(self):
        sk = sketch_stream([1], 1.0, 1.0)
        assert sk.entries == ((1, 1),)
        assert sk.p_minL_final == pytest.approx(1 / 3)

    def test_boundary_entry_dropped(self):
        # p_minL_final = 300/(3*100) = 1.0 exactly; rp=1 fails the strict filter
        stream = [1] * 9 + [300]
        sk = sketch_stream(stream, 1.0, 1.0)
        assert sk.p_minL_final == 1.0
        assert all(rp > 1 for rp, _ in sk.entries)
        assert sum(c for _, c in sk.entries) == 1

    def test_empty_stream(self):
        with pytest.raises(EmptyStreamError):
            SketchBuilder(1.0, 1.0).finalize()

    def test_counts_bounded_by_n(self):
        rng = random.Random(3)
        stream = [rng.randint(1, 500) for _ in range(200)]
        sk = sketch_stream(stream, 0.5, 0.5)
        assert sum(c for _, c in sk.entries) <= sk.n == 200
        rps = [rp for rp, _ in sk.entries]
        assert rps == sorted(set(rps))


class TestOrderInvariance:
    @pytest.mark.parametrize(
        "mode",
        [
            KnowledgeMode(),
            KnowledgeMode(pmax_lower=100),
            KnowledgeMode(n_upper=400),
            KnowledgeMode(n_upper=400, pmax_lower=100),
        ],
    )
    def test_permutations_identical(self, mode):
        rng = random.Random(11)
        stream = [rng.randint(1, 500) for _ in range(200)]
        reference = sketch_stream(stream, 1.0, 1.0, mode).to_json()
        for _ in range(10):
            rng.shuffle(stream)
            assert sketch_stream(stream, 1.0, 1.0, mode).to_json() == reference


class TestSpaceBounds:
    def _log_ratio(self, x, tau):
        import math

        return math.log(x) / math.log(1 + tau)

    def test_array_mode_live_size(self):
        rng = random.Random(7)
        c2 = 4
        pmax_lower = 250
        stream = [rng.randint(1, c2 * pmax_lower) for _ in range(5000)]
        b = SketchBuilder(1.0, 1.0, KnowledgeMode(pmax_lower=pmax_lower, c2=c2))
        for p in stream:
            b.observe(p)
        assert b.max_live_size <= self._log_ratio(c2 * pmax_lower, b.tau) + 1
        assert b.max_store_ops <= 1

    def test_map_mode_live_size(self):
        rng = random.Random(8)
        n = 5000
        stream = [rng.randint(1, 10**6) for _ in range(n)]
        b = SketchBuilder(1.0, 1.0, KnowledgeMode(n_upper=n))
        for p in stream:
            b.observe(p)
            bound = min(
                self._log_ratio(3 * n**2 / (b.eps * b.alpha0), b.tau),
                self._log_ratio(max(b.p_curMax, 2), b.tau),
            ) + 2
            assert b.live_size() <= bound
        assert b.max_store_ops <= 3

    def test_no_knowledge_live_size(self):
        rng = random.Random(9)
        stream = [rng.randint(1, 10**6) for _ in range(5000)]
        b = SketchBuilder(1.0, 1.0)
        for p in stream:
            b.observe(p)
            assert b.live_size() <= self._log_ratio(max(b.p_curMax, 2), b.tau) + 1


class TestSerialization:
    def test_roundtrip(self):
        rng = random.Random(5)
        stream = [rng.randint(1, 3000) for _ in range(300)]
        sk = sketch_stream(stream, 0.5, 1.0)
        back = Sketch.from_json(sk.to_json())
        assert back.entries == sk.entries
        assert back.bucket_indices == sk.bucket_indices
        assert back.n == sk.n and back.p_max == sk.p_max
        assert back.to_json() == sk.to_json()
