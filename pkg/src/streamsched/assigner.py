"""Pass 2: replay the job stream against a plan and emit a feasible schedule.

Each incoming job is matched to a remaining (machine, group) slot by rounded
processing time; when a bucket's slots are exhausted (or the job rounds below
every group) the job joins the small pile on machine 1. Working space is the
plan's m-by-mu counters plus the single in-flight job.

Large jobs start exactly at their planned slot time: a job's true length never
exceeds the rounded length the slot was sized for, so planned slots are
pairwise disjoint regardless of arrival order. Small jobs fill the head
reservation on machine 1; any small that no longer fits ahead of machine 1's
first planned large slot is appended past the planned horizon instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import MachineProfile, PlacedJob, Schedule, work_to_time
from .planner import Plan
from .sketch import bucket_index, rounded_value


class StreamMismatchError(Exception):
    """Pass-2 job count differs from the plan's n."""


@dataclass
class EmitReport:
    n_jobs: int = 0
    large_placed: int = 0
    small_placed: int = 0
    # jobs that rounded into a plan bucket whose slots were already consumed;
    # nonzero means pass 1 and pass 2 disagreed near the largeness threshold
    bucket_overflow: int = 0
    # small jobs that no longer fit ahead of machine 1's first large slot
    reservation_overflow: int = 0

    @property
    def mismatch(self) -> bool:
        return self.bucket_overflow > 0


class EmitterState:
    """Mutable pass-2 cursors; O(m * number of groups) counters."""

    def __init__(self, plan: Plan, profiles: tuple[MachineProfile, ...]):
        self.plan = plan
        self.group_by_rp = {rp: g for g, (_k, rp, _nk) in enumerate(plan.groups)}
        self.remaining = [list(row) for row in plan.counts]
        self.cursor = [list(row) for row in plan.starts]
        self.small_cursor = 0.0
        # first planned large slot on machine 1: smalls must finish before it
        head = [
            plan.starts[0][g]
            for g in range(len(plan.groups))
            if plan.counts[0][g] > 0
        ]
        self.head_limit = min(head) if head else math.inf
        # end of machine 1's planned slot timeline; overflow smalls go there
        tail = 0.0
        for g, (_k, rp, _nk) in enumerate(plan.groups):
            c = plan.counts[0][g]
            if c:
                t = plan.starts[0][g]
                for _ in range(c):
                    t = work_to_time(profiles[0], t, float(rp))
                tail = max(tail, t)
        self.tail_cursor = tail


def classify(p: int, plan: Plan, state: EmitterState):
    """Group index for a large job with an unconsumed slot, else None (small)."""
    if p < 1:
        raise ValueError("processing time must be >= 1")
    rp = rounded_value(bucket_index(p, plan.tau), plan.tau)
    g = state.group_by_rp.get(rp)
    if g is None:
        return None
    if any(row[g] > 0 for row in state.remaining):
        return g
    return None


def emit(
    plan: Plan, stream, profiles: tuple[MachineProfile, ...]
) -> tuple[Schedule, EmitReport]:
    """Place every job of the stream; the stream must be the pass-1 multiset
    (any order). Completions use the job's true processing time; the slot
    cursor advances by the rounded length, reproducing the planned starts."""
    state = EmitterState(plan, profiles)
    report = EmitReport()
    placements = []
    for job_id, p in enumerate(stream, start=1):
        report.n_jobs += 1
        g = classify(p, plan, state)
        if g is None:
            rp = rounded_value(bucket_index(p, plan.tau), plan.tau)
            if rp in state.group_by_rp:
                report.bucket_overflow += 1
            placements.append(_place_small(state, report, job_id, p, profiles[0]))
        else:
            placements.append(_place_large(state, report, job_id, p, g, profiles))
    if report.n_jobs != plan.n:
        raise StreamMismatchError(
            f"pass 2 saw {report.n_jobs} jobs, plan expects {plan.n}"
        )
    return Schedule(tuple(placements)), report


def _place_large(state, report, job_id, p, g, profiles):
    machine = next(i for i, row in enumerate(state.remaining) if row[g] > 0)
    profile = profiles[machine]
    rp = state.plan.groups[g][1]
    start = state.cursor[machine][g]
    completion = work_to_time(profile, start, float(p))
    state.cursor[machine][g] = work_to_time(profile, start, float(rp))
    state.remaining[machine][g] -= 1
    report.large_placed += 1
    return PlacedJob(job_id, profile.machine_index, start, completion)


def _place_small(state, report, job_id, p, profile):
    start = state.small_cursor
    completion = work_to_time(profile, start, float(p))
    if completion > state.head_limit:
        # would run into machine 1's first large slot: append past the
        # planned horizon instead
        report.reservation_overflow += 1
        start = state.tail_cursor
        completion = work_to_time(profile, start, float(p))
        state.tail_cursor = completion
    else:
        state.small_cursor = completion
    report.small_placed += 1
    return PlacedJob(job_id, profile.machine_index, start, completion)
