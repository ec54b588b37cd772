"""One-pass streaming construction of the rounded large-job summary.

Jobs are geometrically bucketed with ratio (1+tau), tau = eps*alpha0/15.
Jobs below a running largeness threshold are skipped; the threshold depends
on which of the prior-knowledge inputs (job-count upper bound, max-processing
lower bound) are available.
"""
from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field


class EmptyStreamError(Exception):
    """The job stream contained no jobs."""


@dataclass(frozen=True)
class KnowledgeMode:
    """Optional prior knowledge about the stream.

    n_upper: claimed upper bound n' with n <= n' <= c1*n.
    pmax_lower: claimed lower bound p' with 1 <= p' <= p_max <= c2*p'.
    c1/c2 document the quality of the bounds; they are not used by the
    builder itself, only by space-bound assertions in tests.
    """

    n_upper: int | None = None
    pmax_lower: int | None = None
    c1: float | None = None
    c2: float | None = None

    def __post_init__(self):
        if self.n_upper is not None and self.n_upper < 1:
            raise ValueError("n_upper must be >= 1")
        if self.pmax_lower is not None and self.pmax_lower < 1:
            raise ValueError("pmax_lower must be >= 1")

    @property
    def case(self) -> int:
        if self.n_upper is not None and self.pmax_lower is not None:
            return 1
        if self.pmax_lower is not None:
            return 2
        if self.n_upper is not None:
            return 3
        return 4


# Memoized (1+tau)^k tables, keyed by tau.  Powers are built by repeated
# multiplication so bucket boundaries are bit-stable across platforms.
_POWER_TABLES: dict[float, list[float]] = {}


def _powers(tau: float) -> list[float]:
    table = _POWER_TABLES.get(tau)
    if table is None:
        table = [1.0]
        _POWER_TABLES[tau] = table
    return table


def _power(tau: float, k: int) -> float:
    table = _powers(tau)
    base = 1.0 + tau
    while len(table) <= k:
        table.append(table[-1] * base)
    return table[k]


def bucket_index(p: int, tau: float) -> int:
    """The unique k >= 1 with (1+tau)^(k-1) <= p < (1+tau)^k.

    A log-based seed index is corrected by direct comparison against the
    memoized power table, so boundary values are handled deterministically.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if tau <= 0:
        raise ValueError("tau must be > 0")
    if p == 1:
        return 1
    k = int(math.log(p) / math.log1p(tau)) + 1
    if k < 1:
        k = 1
    while _power(tau, k) <= p:
        k += 1
    while k > 1 and _power(tau, k - 1) > p:
        k -= 1
    return k


def rounded_value(k: int, tau: float) -> int:
    """floor((1+tau)^k), the rounded processing time of bucket k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return int(math.floor(_power(tau, k)))


def source_bucket(rp: int, tau: float) -> int:
    """Smallest bucket index whose rounded value is rp (inverse of rounding)."""
    k = bucket_index(rp, tau)
    while k > 1 and rounded_value(k - 1, tau) >= rp:
        k -= 1
    return k


@dataclass(frozen=True)
class Sketch:
    """Finalized multiset summary of the large jobs."""

    entries: tuple[tuple[int, int], ...]  # (rp, count), ascending by rp
    bucket_indices: tuple[int, ...]  # source bucket per entry, same order
    n: int
    p_max: int
    p_minL_final: float
    p_minL_stream: float
    tau: float
    eps: float
    alpha0: float
    k0: int
    k1: int

    def to_json(self) -> str:
        obj = {
            "eps": self.eps,
            "alpha0": self.alpha0,
            "tau": self.tau,
            "n": self.n,
            "p_max": self.p_max,
            "p_minL_final": self.p_minL_final,
            "p_minL_stream": self.p_minL_stream,
            "entries": [{"rp": rp, "count": c} for rp, c in self.entries],
        }
        return json.dumps(obj, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Sketch":
        obj = json.loads(text)
        tau = obj["tau"]
        entries = tuple(
            sorted((int(e["rp"]), int(e["count"])) for e in obj["entries"])
        )
        ks = tuple(source_bucket(rp, tau) for rp, _ in entries)
        return cls(
            entries=entries,
            bucket_indices=ks,
            n=int(obj["n"]),
            p_max=int(obj["p_max"]),
            p_minL_final=obj["p_minL_final"],
            p_minL_stream=obj["p_minL_stream"],
            tau=tau,
            eps=obj["eps"],
            alpha0=obj["alpha0"],
            k0=ks[0] if ks else 0,
            k1=ks[-1] if ks else 0,
        )


@dataclass
class SketchBuilder:
    """Single-writer streaming accumulator; call observe() per job, then finalize().

    Storage: a growable array indexed by bucket when a p_max lower bound is
    known (the bucket range is bounded a priori), otherwise an ordered map
    (dict plus min-heap of keys) with one lazy eviction of the smallest stale
    bucket per insertion.
    """

    eps: float
    alpha0: float
    mode: KnowledgeMode = field(default_factory=KnowledgeMode)

    def __post_init__(self):
        if not 0.0 < self.eps <= 1.0:
            raise ValueError("eps must be in (0, 1]")
        if not 0.0 < self.alpha0 <= 1.0:
            raise ValueError("alpha0 must be in (0, 1]")
        self.tau = self.eps * self.alpha0 / 15.0
        _power(self.tau, 1)  # prime the table
        self.n_cur = 0
        self.p_curMax = 0
        # threshold coefficient eps*alpha0/(3 n'^2); zero when n' is unknown
        # (infinity treated as a number, 1/infinity as 0)
        if self.mode.n_upper is not None:
            self._thr_coeff = self.eps * self.alpha0 / (3.0 * self.mode.n_upper**2)
        else:
            self._thr_coeff = 0.0
        pmax_seed = self.mode.pmax_lower if self.mode.pmax_lower is not None else 1
        self.p_minL = max(self._thr_coeff * pmax_seed, 1.0)
        self._array_mode = self.mode.pmax_lower is not None
        if self._array_mode:
            self._counts: list[int] = [0, 0]  # indexed by bucket k, grows
            self._occupied = 0
        else:
            self._store: dict[int, int] = {}
            self._heap: list[int] = []
        # instrumentation for space/update-cost assertions
        self.max_live_size = 0
        self.max_store_ops = 0

    def live_size(self) -> int:
        return self._occupied if self._array_mode else len(self._store)

    def observe(self, p: int) -> None:
        if p < 1:
            raise ValueError("processing time must be >= 1")
        self.n_cur += 1
        if p > self.p_curMax:
            self.p_curMax = p
            cand = self._thr_coeff * p
            if self.p_minL < cand:
                self.p_minL = cand
        if p < self.p_minL:
            return
        k = bucket_index(p, self.tau)
        if self._array_mode:
            counts = self._counts
            if k >= len(counts):
                counts.extend([0] * (k + 1 - len(counts)))
            if counts[k] == 0:
                self._occupied += 1
            counts[k] += 1
            ops = 1
        else:
            store = self._store
            if k in store:
                store[k] += 1
                ops = 1
            else:
                store[k] = 1
                heapq.heappush(self._heap, k)
                ops = 2
                kmin = self._heap[0]
                if rounded_value(kmin, self.tau) < self.p_minL:
                    heapq.heappop(self._heap)
                    del store[kmin]
                    ops = 3
        if ops > self.max_store_ops:
            self.max_store_ops = ops
        live = self.live_size()
        if live > self.max_live_size:
            self.max_live_size = live

    def finalize(self) -> Sketch:
        if self.n_cur == 0:
            raise EmptyStreamError("no jobs observed")
        n = self.n_cur
        p_max = self.p_curMax
        p_minL_final = self.eps * self.alpha0 * p_max / (3.0 * n * n)
        if self.mode.n_upper is not None:
            p_minL_stream = max(
                self.eps * self.alpha0 * p_max / (3.0 * self.mode.n_upper**2), 1.0
            )
        else:
            p_minL_stream = 1.0
        if self._array_mode:
            raw = [(k, c) for k, c in enumerate(self._counts) if c > 0]
        else:
            raw = sorted(self._store.items())
        # buckets with equal rounded value are merged under the smallest bucket
        merged: dict[int, tuple[int, int]] = {}
        for k, count in raw:
            rp = rounded_value(k, self.tau)
            if rp in merged:
                k_old, c_old = merged[rp]
                merged[rp] = (min(k_old, k), c_old + count)
            else:
                merged[rp] = (k, count)
        kept = sorted(
            (rp, k, c) for rp, (k, c) in merged.items() if rp > p_minL_final
        )
        entries = tuple((rp, c) for rp, _, c in kept)
        ks = tuple(k for _, k, _ in kept)
        return Sketch(
            entries=entries,
            bucket_indices=ks,
            n=n,
            p_max=p_max,
            p_minL_final=p_minL_final,
            p_minL_stream=p_minL_stream,
            tau=self.tau,
            eps=self.eps,
            alpha0=self.alpha0,
            k0=ks[0] if ks else 0,
            k1=ks[-1] if ks else 0,
        )


def iter_job_stream(path: str):
    """Yield processing times from a job stream file, one integer per line.

    Lazy: never buffers the file.
    """
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield int(line)


def sketch_stream(
    stream, eps: float, alpha0: float, mode: KnowledgeMode | None = None
) -> Sketch:
    """Build a sketch from any iterable of processing times."""
    builder = SketchBuilder(eps, alpha0, mode or KnowledgeMode())
    for p in stream:
        builder.observe(p)
    return builder.finalize()
