from .core import (
    SCHEMA_VERSION,
    Instance,
    InstanceKey,
    Runner,
    VerifyResult,
    build_instance,
    compare,
    indegree_support,
    make_key,
    verify_instance,
)
from .sweep import (
    KnownDiscrepancy,
    SweepSummary,
    explain,
    format_known,
    iter_sweep,
    load_known,
    parse_known,
    sweep,
    sweep_keys,
)
