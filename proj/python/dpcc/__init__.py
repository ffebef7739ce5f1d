"""Demand-private coded caching."""

from ._dpcc import (
    CacheContent,
    DeliverySignal,
    FileLibrary,
    SchemeParams,
    assemble_delivery,
    aux_demand,
    binomial,
    build_u_vector,
    build_v,
    converse_rate,
    decode,
    envelope_corners,
    f_map,
    g_map,
    memory_rate,
    parse_cache,
    parse_delivery,
    place,
    place_user,
    subset_rank,
    subset_unrank,
    tightness_report,
    verify,
)

__all__ = [
    "CacheContent",
    "DeliverySignal",
    "FileLibrary",
    "SchemeParams",
    "assemble_delivery",
    "aux_demand",
    "binomial",
    "build_u_vector",
    "build_v",
    "converse_rate",
    "decode",
    "envelope_corners",
    "f_map",
    "g_map",
    "memory_rate",
    "parse_cache",
    "parse_delivery",
    "place",
    "place_user",
    "subset_rank",
    "subset_unrank",
    "tightness_report",
    "verify",
]
