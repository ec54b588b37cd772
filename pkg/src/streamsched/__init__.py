"""Streaming (1+eps)-approximation toolkit for total completion time on
parallel machines with piecewise-constant processing capacities."""

from .assigner import EmitReport, StreamMismatchError, classify, emit
from .model import (
    CapacityInterval,
    Instance,
    Job,
    MachineProfile,
    MissingJobError,
    OverlapError,
    PlacedJob,
    Schedule,
    ScheduleError,
    WorkMismatchError,
    dump_profiles,
    evaluate_schedule,
    flat_profile,
    load_profiles,
    read_schedule_csv,
    write_schedule_csv,
    run_batch,
    spt_on_assignment,
    work_between,
    work_to_time,
)
from .oracle import OracleResult, TooLargeError, brute_force_opt
from .partition import enumerate_partitions, is_valid_partition, ladder_values
from .planner import (
    EmptySketchError,
    Plan,
    PlanState,
    append_group,
    delta_from,
    plan,
    prune,
    signature,
)
from .sketch import (
    EmptyStreamError,
    KnowledgeMode,
    Sketch,
    SketchBuilder,
    bucket_index,
    iter_job_stream,
    rounded_value,
    sketch_stream,
)

__all__ = [
    "CapacityInterval",
    "EmitReport",
    "EmptySketchError",
    "EmptyStreamError",
    "Instance",
    "Job",
    "KnowledgeMode",
    "MachineProfile",
    "MissingJobError",
    "OracleResult",
    "OverlapError",
    "PlacedJob",
    "Plan",
    "PlanState",
    "Schedule",
    "ScheduleError",
    "Sketch",
    "SketchBuilder",
    "StreamMismatchError",
    "TooLargeError",
    "WorkMismatchError",
    "append_group",
    "brute_force_opt",
    "bucket_index",
    "classify",
    "delta_from",
    "dump_profiles",
    "emit",
    "enumerate_partitions",
    "evaluate_schedule",
    "flat_profile",
    "is_valid_partition",
    "iter_job_stream",
    "ladder_values",
    "load_profiles",
    "plan",
    "prune",
    "read_schedule_csv",
    "rounded_value",
    "run_batch",
    "signature",
    "sketch_stream",
    "spt_on_assignment",
    "work_between",
    "work_to_time",
    "write_schedule_csv",
]
