"""Group-by-group enumerate-and-prune dynamic program over the sketch.

Groups (one per distinct rounded processing time) are appended in ascending
order; after each group the surviving partial schedules are reduced to one
representative per geometric similarity class. The best survivor yields the
reported approximate value and the per-machine group counts and start times
consumed by the second pass.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .model import MachineProfile, work_to_time
from .partition import PartitionTuple, enumerate_partitions
from .sketch import Sketch

ZERO = "Z"  # signature symbol for an empty machine (log of 0 is undefined)


class EmptySketchError(Exception):
    """The sketch has no entries to plan over."""


@dataclass(frozen=True)
class PlanState:
    """Partial-schedule fingerprint: per-machine finish/work/total-completion
    plus the per-group per-machine count matrix (group-major)."""

    finish: tuple[float, ...]
    work: tuple[float, ...]
    sigma: tuple[float, ...]
    counts: tuple[tuple[int, ...], ...]

    @property
    def total_sigma(self) -> float:
        return sum(self.sigma)


def empty_state(m: int) -> PlanState:
    zeros = (0.0,) * m
    return PlanState(zeros, zeros, zeros, ())


def delta_from(sketch: Sketch, eps: float, alpha0: float) -> float:
    """Similarity granularity eps*alpha0/(24*mu), mu = number of groups."""
    mu = len(sketch.entries)
    if mu == 0:
        raise EmptySketchError("sketch has no entries")
    return eps * alpha0 / (24.0 * mu)


def _batch(profile: MachineProfile, start: float, count: int, length: float):
    """(added sigma, finish) of `count` identical jobs back-to-back from start."""
    t = start
    sigma = 0.0
    for _ in range(count):
        t = work_to_time(profile, t, length)
        sigma += t
    return sigma, t


def append_group(
    state: PlanState,
    rp: int,
    part: PartitionTuple,
    profiles: tuple[MachineProfile, ...],
    memo: dict | None = None,
) -> PlanState:
    """Extend a partial schedule with one group split across machines."""
    finish = list(state.finish)
    work = list(state.work)
    sigma = list(state.sigma)
    for i, count in enumerate(part):
        if count == 0:
            continue
        key = (i, finish[i], count)
        hit = memo.get(key) if memo is not None else None
        if hit is None:
            hit = _batch(profiles[i], finish[i], count, float(rp))
            if memo is not None:
                memo[key] = hit
        dsigma, end = hit
        sigma[i] += dsigma
        finish[i] = end
        work[i] += count * rp
    return PlanState(
        tuple(finish), tuple(work), tuple(sigma), state.counts + (tuple(part),)
    )


def _gbucket(v: float, inv_log: float):
    if v <= 0.0:
        return ZERO
    return math.floor(math.log(v) * inv_log)


def signature(state: PlanState, delta: float):
    """Per-machine geometric bucket indices of (work, total completion)."""
    inv_log = 1.0 / math.log1p(delta)
    return tuple(
        (_gbucket(p, inv_log), _gbucket(s, inv_log))
        for p, s in zip(state.work, state.sigma)
    )


def _keep_key(state: PlanState):
    # minimum total completion first; ties broken lexicographically on the
    # flattened (work, sigma) vector, then the count matrix, so merges are
    # order independent
    flat = tuple(v for pair in zip(state.work, state.sigma) for v in pair)
    return (state.total_sigma, flat, state.counts)


def prune(states, delta: float) -> list[PlanState]:
    """One representative per similarity signature (deterministic keep-rule)."""
    best: dict[tuple, PlanState] = {}
    for state in states:
        sig = signature(state, delta)
        cur = best.get(sig)
        if cur is None or _keep_key(state) < _keep_key(cur):
            best[sig] = state
    return list(best.values())


@dataclass
class Plan:
    """Selected schedule of the sketch jobs plus everything pass 2 needs."""

    V: float
    sigma_S_prime: float
    eps: float
    alpha0: float
    tau: float
    delta: float
    n: int
    p_max: int
    p_minL_final: float
    p_minL_stream: float
    small_reservation: float
    groups: tuple[tuple[int, int, int], ...]  # (k, rp, n_k)
    counts: tuple[tuple[int, ...], ...]  # [machine][group]
    starts: tuple[tuple[float, ...], ...]  # [machine][group]
    max_states: int = field(default=0, compare=False)

    def to_json(self) -> str:
        obj = {
            "V": self.V,
            "sigma_S_prime": self.sigma_S_prime,
            "eps": self.eps,
            "alpha0": self.alpha0,
            "tau": self.tau,
            "delta": self.delta,
            "n": self.n,
            "p_max": self.p_max,
            "p_minL_final": self.p_minL_final,
            "p_minL_stream": self.p_minL_stream,
            "small_reservation": self.small_reservation,
            "groups": [
                {"k": k, "rp": rp, "n_k": nk} for k, rp, nk in self.groups
            ],
            "counts": [list(row) for row in self.counts],
            "starts": [list(row) for row in self.starts],
        }
        return json.dumps(obj, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Plan":
        obj = json.loads(text)
        return cls(
            V=obj["V"],
            sigma_S_prime=obj["sigma_S_prime"],
            eps=obj["eps"],
            alpha0=obj["alpha0"],
            tau=obj["tau"],
            delta=obj["delta"],
            n=int(obj["n"]),
            p_max=int(obj["p_max"]),
            p_minL_final=obj["p_minL_final"],
            p_minL_stream=obj["p_minL_stream"],
            small_reservation=obj["small_reservation"],
            groups=tuple(
                (int(g["k"]), int(g["rp"]), int(g["n_k"])) for g in obj["groups"]
            ),
            counts=tuple(tuple(int(c) for c in row) for row in obj["counts"]),
            starts=tuple(tuple(float(t) for t in row) for row in obj["starts"]),
        )


def _state_bound(sketch: Sketch, alpha0: float, delta: float, m: int) -> float:
    # largest completion time under rounded processing is at most
    # sum(rp * count) / alpha0; total completion at most n times that
    total_work = sum(rp * c for rp, c in sketch.entries)
    L = max(total_work / alpha0, 2.0)
    inv = 1.0 / math.log1p(delta)
    b_p = math.log(L) * inv + 2.0
    b_s = math.log(sketch.n * L) * inv + 2.0
    return (b_p * b_s) ** m


def plan(
    sketch: Sketch,
    profiles: tuple[MachineProfile, ...],
    eps: float,
    alpha0: float,
    parallel: bool = False,
    trace: list | None = None,
) -> Plan:
    """Run the DP over the sketch and package the best surviving schedule.

    With parallel=True the (state x partition) cross product of each group is
    split across worker threads; the per-signature keep-rule is a commutative
    and associative reduction, so the surviving set is identical either way.
    """
    if not sketch.entries:
        raise EmptySketchError("sketch has no entries")
    m = len(profiles)
    delta = delta_from(sketch, eps, alpha0)
    bound = _state_bound(sketch, alpha0, delta, m)

    states = [empty_state(m)]
    max_states = 1
    for (rp, n_k), _k in zip(sketch.entries, sketch.bucket_indices):
        parts = sorted(enumerate_partitions(n_k, m, delta))
        memo: dict = {}

        def expand(chunk, frontier=states, rp=rp, memo=memo):
            best: dict[tuple, PlanState] = {}
            for s in frontier:
                for part in chunk:
                    ns = append_group(s, rp, part, profiles, memo)
                    sig = signature(ns, delta)
                    cur = best.get(sig)
                    if cur is None or _keep_key(ns) < _keep_key(cur):
                        best[sig] = ns
            return best

        if parallel and len(parts) > 1:
            workers = min(4, len(parts))
            chunks = [parts[w::workers] for w in range(workers)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(expand, chunks))
            merged: dict[tuple, PlanState] = {}
            for local in results:
                for sig, ns in local.items():
                    cur = merged.get(sig)
                    if cur is None or _keep_key(ns) < _keep_key(cur):
                        merged[sig] = ns
        else:
            merged = expand(parts)

        states = list(merged.values())
        assert len(states) <= bound, "surviving state count exceeds bucket bound"
        if trace is not None:
            trace.append(list(states))
        max_states = max(max_states, len(states))

    best_state = min(states, key=_keep_key)
    sigma_sp = best_state.total_sigma
    V = (1.0 + eps / 3.0) * (1.0 + eps / 15.0) * sigma_sp

    # counts[machine][group], and planned group start times replayed from 0
    counts = tuple(
        tuple(best_state.counts[g][i] for g in range(len(sketch.entries)))
        for i in range(m)
    )
    # machine 1's timeline is replayed from the end of the head reservation
    # (an additive shift would misalign slot boundaries on varying profiles)
    reservation = eps * sketch.p_max / (3.0 * sketch.n)
    starts = []
    for i in range(m):
        cur = reservation if i == 0 else 0.0
        row = []
        for g, (rp, _) in enumerate(sketch.entries):
            row.append(cur)
            c = counts[i][g]
            if c:
                _, cur = _batch(profiles[i], cur, c, float(rp))
        starts.append(tuple(row))

    groups = tuple(
        (k, rp, n_k)
        for (rp, n_k), k in zip(sketch.entries, sketch.bucket_indices)
    )
    return Plan(
        V=V,
        sigma_S_prime=sigma_sp,
        eps=eps,
        alpha0=alpha0,
        tau=sketch.tau,
        delta=delta,
        n=sketch.n,
        p_max=sketch.p_max,
        p_minL_final=sketch.p_minL_final,
        p_minL_stream=sketch.p_minL_stream,
        small_reservation=reservation,
        groups=groups,
        counts=counts,
        starts=tuple(starts),
        max_states=max_states,
    )
