"""Core domain types: jobs, piecewise-constant capacity profiles, schedules.

Also the exact evaluator that converts work into time under a varying
capacity and the SPT helper used by the brute-force oracle.
"""
from __future__ import annotations

import csv
import json
import math
from bisect import bisect_right
from dataclasses import dataclass

REL_TOL = 1e-9


class ScheduleError(Exception):
    """Base class for schedule feasibility violations."""


class OverlapError(ScheduleError):
    """Two placements intersect in time on the same machine."""


class WorkMismatchError(ScheduleError):
    """A placement's completion is inconsistent with the machine profile."""


class MissingJobError(ScheduleError):
    """A job is missing from, or duplicated in, a schedule."""


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= REL_TOL * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class Job:
    id: int
    p: int

    def __post_init__(self):
        if self.id < 1:
            raise ValueError(f"job id must be >= 1, got {self.id}")
        if self.p < 1:
            raise ValueError(f"processing time must be >= 1, got {self.p}")


@dataclass(frozen=True)
class CapacityInterval:
    start: float
    end: float  # math.inf for the last, unbounded interval
    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"capacity must be in (0, 1], got {self.alpha}")
        if self.end <= self.start:
            raise ValueError(f"interval end {self.end} <= start {self.start}")


@dataclass(frozen=True)
class MachineProfile:
    machine_index: int
    intervals: tuple[CapacityInterval, ...]

    def __post_init__(self):
        if not self.intervals:
            raise ValueError("profile needs at least one interval")
        if self.intervals[0].start != 0.0:
            raise ValueError("intervals must start at time 0")
        for prev, cur in zip(self.intervals, self.intervals[1:]):
            if cur.start != prev.end:
                raise ValueError("intervals must be contiguous")
        if self.intervals[-1].end != math.inf:
            raise ValueError("last interval must be unbounded")
        object.__setattr__(
            self, "_starts", tuple(iv.start for iv in self.intervals)
        )

    def interval_index_at(self, t: float) -> int:
        return bisect_right(self._starts, t) - 1

    @property
    def min_alpha(self) -> float:
        return min(iv.alpha for iv in self.intervals)


def flat_profile(alpha: float, machine_index: int = 1) -> MachineProfile:
    """Single unbounded interval at constant capacity; test/CLI convenience."""
    return MachineProfile(
        machine_index, (CapacityInterval(0.0, math.inf, alpha),)
    )


@dataclass(frozen=True)
class Instance:
    machines: tuple[MachineProfile, ...]
    jobs: tuple[Job, ...]
    alpha0: float

    def __post_init__(self):
        if not 0.0 < self.alpha0 <= 1.0:
            raise ValueError(f"alpha0 must be in (0, 1], got {self.alpha0}")
        for prof in self.machines:
            if prof.min_alpha < self.alpha0 - REL_TOL:
                raise ValueError(
                    f"machine {prof.machine_index} has capacity below alpha0"
                )
        ids = [j.id for j in self.jobs]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate job ids")


@dataclass(frozen=True)
class PlacedJob:
    job_id: int
    machine_index: int
    start: float
    completion: float


@dataclass(frozen=True)
class Schedule:
    placements: tuple[PlacedJob, ...]


def work_to_time(profile: MachineProfile, start: float, work: float) -> float:
    """Smallest t >= start such that the capacity integral over [start, t) is `work`."""
    if start < 0:
        raise ValueError("start must be >= 0")
    if work < 0:
        raise ValueError("work must be >= 0")
    if work == 0:
        return start
    idx = profile.interval_index_at(start)
    intervals = profile.intervals
    t = start
    remaining = work
    while True:
        iv = intervals[idx]
        if iv.end == math.inf:
            return t + remaining / iv.alpha
        chunk = iv.alpha * (iv.end - t)
        if chunk >= remaining:
            return t + remaining / iv.alpha
        remaining -= chunk
        t = iv.end
        idx += 1


def work_between(profile: MachineProfile, t0: float, t1: float) -> float:
    """Capacity integral over [t0, t1)."""
    if t1 < t0:
        raise ValueError("t1 must be >= t0")
    idx = profile.interval_index_at(t0)
    intervals = profile.intervals
    total = 0.0
    t = t0
    while t < t1:
        iv = intervals[idx]
        seg_end = min(iv.end, t1)
        total += iv.alpha * (seg_end - t)
        t = seg_end
        idx += 1
    return total


@dataclass(frozen=True)
class BatchResult:
    completions: tuple[float, ...]
    sigma: float
    finish: float


def run_batch(
    profile: MachineProfile, start: float, count: int, length: float
) -> BatchResult:
    """Schedule `count` identical jobs of `length` back-to-back from `start`."""
    if count < 0:
        raise ValueError("count must be >= 0")
    if length <= 0:
        raise ValueError("length must be > 0")
    completions = []
    t = start
    sigma = 0.0
    for _ in range(count):
        t = work_to_time(profile, t, length)
        completions.append(t)
        sigma += t
    return BatchResult(tuple(completions), sigma, t)


def evaluate_schedule(instance: Instance, schedule: Schedule) -> float:
    """Total completion time of a schedule; raises on any feasibility violation."""
    jobs = {j.id: j for j in instance.jobs}
    seen: set[int] = set()
    profiles = {p.machine_index: p for p in instance.machines}
    per_machine: dict[int, list[PlacedJob]] = {}
    for pl in schedule.placements:
        if pl.job_id not in jobs:
            raise MissingJobError(f"placement for unknown job {pl.job_id}")
        if pl.job_id in seen:
            raise MissingJobError(f"job {pl.job_id} placed more than once")
        seen.add(pl.job_id)
        if pl.machine_index not in profiles:
            raise ScheduleError(f"unknown machine {pl.machine_index}")
        if pl.completion <= pl.start:
            raise WorkMismatchError(
                f"job {pl.job_id}: completion {pl.completion} <= start {pl.start}"
            )
        per_machine.setdefault(pl.machine_index, []).append(pl)
    missing = set(jobs) - seen
    if missing:
        raise MissingJobError(f"jobs never placed: {sorted(missing)}")

    total = 0.0
    for mi, placed in per_machine.items():
        profile = profiles[mi]
        placed.sort(key=lambda pl: pl.start)
        prev_end = 0.0
        for pl in placed:
            if pl.start < prev_end and not _close(pl.start, prev_end):
                raise OverlapError(
                    f"machine {mi}: job {pl.job_id} starts at {pl.start} "
                    f"before previous completion {prev_end}"
                )
            delivered = work_between(profile, pl.start, pl.completion)
            p = jobs[pl.job_id].p
            if not _close(delivered, float(p)):
                raise WorkMismatchError(
                    f"job {pl.job_id} on machine {mi}: delivered {delivered}, "
                    f"needs {p}"
                )
            prev_end = pl.completion
            total += pl.completion
    return total


def spt_on_assignment(instance: Instance, assignment: dict[int, int]) -> Schedule:
    """SPT order per machine for a fixed job->machine assignment, from time 0.

    SPT per machine is optimal for a fixed assignment: the completion of the
    j-th job on a machine is a nondecreasing function of the cumulative work
    prefix, which sorting by processing time minimizes pointwise.
    """
    profiles = {p.machine_index: p for p in instance.machines}
    by_machine: dict[int, list[Job]] = {}
    for job in instance.jobs:
        by_machine.setdefault(assignment[job.id], []).append(job)
    placements = []
    for mi, jobs in by_machine.items():
        profile = profiles[mi]
        t = 0.0
        for job in sorted(jobs, key=lambda j: (j.p, j.id)):
            end = work_to_time(profile, t, float(job.p))
            placements.append(PlacedJob(job.id, mi, t, end))
            t = end
    return Schedule(tuple(placements))


# ---------------------------------------------------------------------------
# File formats


def load_profiles(path: str) -> tuple[MachineProfile, ...]:
    """Profile JSON: [{"machine": i, "pieces": [{"end": t|null, "alpha": a}]}].

    Pieces are implicitly contiguous from time 0; exactly the last piece has
    end=null (unbounded).
    """
    with open(path) as fh:
        raw = json.load(fh)
    return profiles_from_obj(raw)


def profiles_from_obj(raw: list[dict]) -> tuple[MachineProfile, ...]:
    profiles = []
    for entry in raw:
        pieces = entry["pieces"]
        if any(p["end"] is None for p in pieces[:-1]) or pieces[-1]["end"] is not None:
            raise ValueError("exactly the last piece must have end=null")
        intervals = []
        t = 0.0
        for piece in pieces:
            end = math.inf if piece["end"] is None else float(piece["end"])
            intervals.append(CapacityInterval(t, end, float(piece["alpha"])))
            t = end
        profiles.append(MachineProfile(int(entry["machine"]), tuple(intervals)))
    return tuple(profiles)


def profiles_to_obj(profiles: tuple[MachineProfile, ...]) -> list[dict]:
    out = []
    for prof in profiles:
        pieces = [
            {"end": None if iv.end == math.inf else iv.end, "alpha": iv.alpha}
            for iv in prof.intervals
        ]
        out.append({"machine": prof.machine_index, "pieces": pieces})
    return out


def dump_profiles(profiles: tuple[MachineProfile, ...], path: str) -> None:
    with open(path, "w") as fh:
        json.dump(profiles_to_obj(profiles), fh, indent=2)
        fh.write("\n")


def write_schedule_csv(schedule: Schedule, path: str) -> None:
    """CSV with header job_id,machine,start,completion; 12 significant digits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["job_id", "machine", "start", "completion"])
        for pl in schedule.placements:
            writer.writerow(
                [pl.job_id, pl.machine_index, f"{pl.start:.12g}", f"{pl.completion:.12g}"]
            )


def read_schedule_csv(path: str) -> Schedule:
    placements = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            placements.append(
                PlacedJob(
                    int(row["job_id"]),
                    int(row["machine"]),
                    float(row["start"]),
                    float(row["completion"]),
                )
            )
    return Schedule(tuple(placements))
