"""Binary sieve cache ("ERA1" format).

Layout, all little-endian::

    b"ERA1"          4 bytes magic
    version          1 byte, currently 1
    sieve_bound      unsigned 64-bit
    bitset           odd-only primality bits, bit i <-> 2i+3, LSB first,
                     zero-padded to whole bytes

The loader rejects anything whose magic, version or byte length is off.
"""

from __future__ import annotations

import logging
import os
import struct
from pathlib import Path

import numpy as np

from .errors import CacheFormatError
from .primecore import (
    DEFAULT_COUNT_BOUND,
    DEFAULT_SIEVE_BOUND,
    PrimeIndexer,
    build_indexer,
    check_resources,
    odd_sieve,
    odd_slots,
)

log = logging.getLogger(__name__)

MAGIC = b"ERA1"
VERSION = 1
_HEADER = struct.Struct("<4sBQ")
# leading slots re-sieved on load as a cheap content check
_SPOT_CHECK = 4096

ENV_VAR = "ERA_CACHE"


def expected_size(sieve_bound: int) -> int:
    return _HEADER.size + (odd_slots(sieve_bound) + 7) // 8


def encode(sieve_bound: int, odd_bits: np.ndarray) -> bytes:
    packed = np.packbits(odd_bits, bitorder="little")
    return _HEADER.pack(MAGIC, VERSION, sieve_bound) + packed.tobytes()


def decode(data: bytes) -> tuple[int, np.ndarray]:
    """Parse a cache image into ``(sieve_bound, odd_bits)``."""
    if len(data) < _HEADER.size:
        raise CacheFormatError(f"file too short for header ({len(data)} bytes)")
    magic, version, sieve_bound = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CacheFormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise CacheFormatError(f"unsupported version {version}")
    if sieve_bound < 2:
        raise CacheFormatError(f"invalid sieve_bound {sieve_bound}")
    if len(data) != expected_size(sieve_bound):
        raise CacheFormatError(
            f"size {len(data)} does not match sieve_bound {sieve_bound} "
            f"(expected {expected_size(sieve_bound)})"
        )
    m = odd_slots(sieve_bound)
    raw = np.frombuffer(data, dtype=np.uint8, offset=_HEADER.size)
    bits = np.unpackbits(raw, bitorder="little")
    if bits[m:].any():
        raise CacheFormatError("nonzero padding bits")
    bits = bits[:m].astype(bool)
    head = min(m, _SPOT_CHECK)
    if not np.array_equal(bits[:head], odd_sieve(2 * head + 2)[:head]):
        raise CacheFormatError("bitset content does not match a fresh sieve")
    return sieve_bound, bits


def save(indexer: PrimeIndexer, path) -> Path:
    """Write ``indexer``'s dense sieve to ``path`` atomically."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(encode(indexer.sieve_bound, indexer.odd_bits))
    os.replace(tmp, path)
    return path


def load(path, count_bound: int | None = None) -> PrimeIndexer:
    """Rebuild an indexer from a cache file; raises CacheFormatError if invalid."""
    sieve_bound, bits = decode(Path(path).read_bytes())
    if count_bound is None:
        count_bound = max(sieve_bound, DEFAULT_COUNT_BOUND)
    if count_bound < sieve_bound:
        raise CacheFormatError(
            f"cached sieve_bound {sieve_bound} exceeds requested count_bound {count_bound}"
        )
    check_resources(sieve_bound, count_bound)
    return PrimeIndexer(sieve_bound, count_bound, bits)


def load_or_build(
    path,
    sieve_bound: int = DEFAULT_SIEVE_BOUND,
    count_bound: int = DEFAULT_COUNT_BOUND,
    write: bool = True,
) -> PrimeIndexer:
    """Load a matching cache or build fresh (and rewrite the cache).

    A missing, corrupt or mismatched file never raises; it is logged and
    replaced.
    """
    path = Path(path)
    if path.exists():
        try:
            idx = load(path, count_bound)
        except (CacheFormatError, OSError) as exc:
            log.warning("rejecting sieve cache %s: %s", path, exc)
        else:
            if idx.sieve_bound == sieve_bound:
                return idx
            log.warning(
                "sieve cache %s has sieve_bound %d, wanted %d; rebuilding",
                path, idx.sieve_bound, sieve_bound,
            )
    idx = build_indexer(sieve_bound, count_bound)
    if write:
        try:
            save(idx, path)
        except OSError as exc:
            log.warning("could not write sieve cache %s: %s", path, exc)
    return idx

