import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from streamsched import (
    Instance,
    Job,
    MissingJobError,
    OverlapError,
    PlacedJob,
    Schedule,
    WorkMismatchError,
    evaluate_schedule,
    flat_profile,
    run_batch,
    spt_on_assignment,
    work_between,
    work_to_time,
)

from conftest import make_profile, random_profile


class TestWorkToTime:
    def test_piecewise_integration(self):
        prof = make_profile([(2, 1.0), (2, 0.5), (None, 1.0)])
        assert work_to_time(prof, 0, 3) == pytest.approx(4.0)

    def test_zero_work_identity(self):
        prof = make_profile([(2, 1.0), (2, 0.5), (None, 1.0)])
        assert work_to_time(prof, 3.7, 0) == 3.7

    def test_mid_interval_start(self):
        prof = make_profile([(2, 1.0), (2, 0.5), (None, 1.0)])
        assert work_to_time(prof, 3, 2) == pytest.approx(5.5)

    def test_full_capacity_is_additive(self):
        prof = flat_profile(1.0)
        for s, w in [(0.0, 1.0), (2.5, 3.25), (10.0, 0.5)]:
            assert work_to_time(prof, s, w) == s + w


class TestRunBatch:
    def test_full_capacity_prefix_sums(self, unit_profile):
        res = run_batch(unit_profile, 0, 3, 1)
        assert res.completions == (1, 2, 3)
        assert res.sigma == 6
        assert res.finish == 3

    def test_half_capacity_doubles(self):
        res = run_batch(flat_profile(0.5), 0, 3, 1)
        assert res.completions == (2, 4, 6)
        assert res.sigma == 12

    def test_empty_batch(self, unit_profile):
        res = run_batch(unit_profile, 5.0, 0, 1)
        assert res.completions == ()
        assert res.sigma == 0
        assert res.finish == 5.0


class TestEvaluateSchedule:
    def _spt_instance(self):
        jobs = tuple(Job(i + 1, p) for i, p in enumerate([1, 2, 2, 3, 4]))
        return Instance((flat_profile(1.0),), jobs, 1.0)

    def test_spt_back_to_back(self):
        inst = self._spt_instance()
        sched = spt_on_assignment(inst, {j.id: 1 for j in inst.jobs})
        assert evaluate_schedule(inst, sched) == pytest.approx(29.0)

    def test_single_job_half_capacity(self):
        inst = Instance((flat_profile(0.5),), (Job(1, 4),), 0.5)
        sched = Schedule((PlacedJob(1, 1, 0.0, 8.0),))
        assert evaluate_schedule(inst, sched) == pytest.approx(8.0)

    def test_overlap_rejected(self):
        inst = Instance((flat_profile(1.0),), (Job(1, 2), Job(2, 2)), 1.0)
        sched = Schedule((PlacedJob(1, 1, 0.0, 2.0), PlacedJob(2, 1, 1.0, 3.0)))
        with pytest.raises(OverlapError):
            evaluate_schedule(inst, sched)

    def test_work_mismatch_rejected(self):
        inst = Instance((flat_profile(1.0),), (Job(1, 2),), 1.0)
        sched = Schedule((PlacedJob(1, 1, 0.0, 3.0),))
        with pytest.raises(WorkMismatchError):
            evaluate_schedule(inst, sched)

    def test_missing_job_rejected(self):
        inst = Instance((flat_profile(1.0),), (Job(1, 2), Job(2, 2)), 1.0)
        sched = Schedule((PlacedJob(1, 1, 0.0, 2.0),))
        with pytest.raises(MissingJobError):
            evaluate_schedule(inst, sched)

    def test_duplicate_placement_rejected(self):
        inst = Instance((flat_profile(1.0),), (Job(1, 2),), 1.0)
        sched = Schedule((PlacedJob(1, 1, 0.0, 2.0), PlacedJob(1, 1, 2.0, 4.0)))
        with pytest.raises(MissingJobError):
            evaluate_schedule(inst, sched)


class TestSptOnAssignment:
    def test_two_machine_split(self):
        jobs = (Job(1, 1), Job(2, 2), Job(3, 3))
        inst = Instance((flat_profile(1.0, 1), flat_profile(1.0, 2)), jobs, 1.0)
        sched = spt_on_assignment(inst, {1: 1, 2: 2, 3: 1})
        assert evaluate_schedule(inst, sched) == pytest.approx(7.0)

    def test_empty_machine_contributes_nothing(self):
        jobs = (Job(1, 1),)
        inst = Instance((flat_profile(1.0, 1), flat_profile(1.0, 2)), jobs, 1.0)
        sched = spt_on_assignment(inst, {1: 1})
        assert all(p.machine_index == 1 for p in sched.placements)
        assert evaluate_schedule(inst, sched) == pytest.approx(1.0)


profile_strategy = st.builds(
    lambda seed, alpha0: (random_profile(random.Random(seed), alpha0), alpha0),
    st.integers(0, 10**6),
    st.sampled_from([0.3, 0.5, 0.8, 1.0]),
)


@given(profile_strategy, st.floats(0, 50), st.floats(0, 100))
def test_work_to_time_inverse_consistency(prof_alpha, start, work):
    prof, _ = prof_alpha
    t = work_to_time(prof, start, work)
    assert work_between(prof, start, t) == pytest.approx(work, rel=1e-9, abs=1e-9)


@given(profile_strategy, st.floats(0, 20), st.integers(0, 5), st.integers(0, 5),
       st.integers(1, 9))
def test_batch_concatenation(prof_alpha, start, a, b, p):
    prof, _ = prof_alpha
    whole = run_batch(prof, start, a + b, p)
    first = run_batch(prof, start, a, p)
    second = run_batch(prof, first.finish, b, p)
    assert whole.finish == pytest.approx(second.finish, rel=1e-12)
    assert whole.sigma == pytest.approx(first.sigma + second.sigma, rel=1e-12)


@given(profile_strategy, st.floats(0, 30), st.integers(1, 8), st.integers(1, 10))
def test_identical_batch_sigma_bounds(prof_alpha, t0, x, p):
    prof, alpha0 = prof_alpha
    sigma = run_batch(prof, t0, x, p).sigma
    lo = x * t0 + x * (1 + x) * p / 2.0
    hi = x * t0 + x * (1 + x) * p / (2.0 * alpha0)
    assert lo <= sigma * (1 + 1e-12)
    assert sigma <= hi * (1 + 1e-12)


@given(profile_strategy, st.floats(0.1, 30), st.integers(1, 8), st.integers(1, 10),
       st.floats(0.01, 1.0))
@settings(max_examples=200)
def test_batch_shift_inequality(prof_alpha, t0, x, p, delta):
    prof, alpha0 = prof_alpha
    base = run_batch(prof, t0, x, p).sigma
    shifted = run_batch(prof, (1 + delta) * t0, x, p).sigma
    assert shifted <= (1 + delta / alpha0) * base * (1 + 1e-12)


@given(profile_strategy, st.floats(0, 30), st.integers(1, 8), st.integers(1, 10),
       st.floats(0.01, 1.0))
@settings(max_examples=200)
def test_batch_append_inequality(prof_alpha, t0, x, p, delta):
    prof, alpha0 = prof_alpha
    base = run_batch(prof, t0, x, p).sigma
    extended = run_batch(prof, t0, x + math.floor(x * delta), p).sigma
    assert extended <= (1 + 3 * delta / alpha0) * base * (1 + 1e-12)
