"""Succinct indexes for horizontal segments in rank space."""

from ._segwt import (
    BinaryIndex,
    DeltaIndex,
    Error,
    FormatError,
    Instance,
    IoError,
    LimitError,
    NotFoundError,
    ParseError,
    RangeError,
    TieError,
    ValidationError,
    count_instances,
    expected_instance_count,
    load,
    load_bytes,
    oracle_access,
    oracle_crossing_count,
    oracle_rank,
    oracle_select,
    random_instance,
    reduce,
)

__all__ = [name for name in dir() if not name.startswith("_")]
