"""
Line-delimited JSON cache for enumerated Whitehead posets.

Line 1 is a header; each following line is one tree with its row of
the order matrix packed into hex. Both digests are recomputed on load.
"""

import hashlib
import json
import logging
import os
import time
from typing import Optional

import numpy as np

from src.config import SCHEMA_VERSION, get_cache_dir
from src.errors import CacheCorruption
from src.whitehead import HyperTree, WhiteheadPoset, check_family, enumerate_poset, label_count

logger = logging.getLogger(__name__)

FORMAT = "mccool-poset"


def cache_path(n: int, family: str, cache_dir: Optional[str] = None) -> str:
    return os.path.join(cache_dir or get_cache_dir(), f"wo_{check_family(family)}_{n}.jsonl")


def order_digest(order: np.ndarray) -> str:
    return hashlib.sha256(np.packbits(order, axis=1).tobytes() + str(order.shape).encode()).hexdigest()


def save(P: WhiteheadPoset, cache_dir: Optional[str] = None) -> str:
    path = cache_path(P.n, P.family, cache_dir)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    # lazy posets are stored without their order rows
    order = P.order if P.is_dense else None
    header = {
        "format": FORMAT,
        "schema_version": SCHEMA_VERSION,
        "n": P.n,
        "family": P.family,
        "count": len(P),
        "element_digest": P.digest(),
        "order_digest": None if order is None else order_digest(order),
    }
    with open(path, "w") as f:
        f.write(json.dumps(header, sort_keys=True) + "\n")
        for k, T in enumerate(P.elements):
            record = {"petals": [list(p) for p in T.petals]}
            if order is not None:
                record["up"] = np.packbits(order[k]).tobytes().hex()
            f.write(json.dumps(record) + "\n")
    logger.info("Wrote %d trees to %s", len(P), path)
    return path


def load(n: int, family: str, cache_dir: Optional[str] = None) -> Optional[WhiteheadPoset]:
    """The cached poset, None when absent, CacheCorruption when tampered."""
    path = cache_path(n, family, cache_dir)
    if not os.path.exists(path):
        return None
    family = check_family(family)
    try:
        with open(path, "r") as f:
            lines = [json.loads(line) for line in f if line.strip()]
    except (OSError, json.JSONDecodeError) as e:
        raise CacheCorruption(f"Could not read cache {path}: {e}")
    if not lines:
        raise CacheCorruption(f"Cache {path} is empty")

    header, records = lines[0], lines[1:]
    expected = {"format": FORMAT, "schema_version": SCHEMA_VERSION, "n": n, "family": family, "count": len(records)}
    for key, value in expected.items():
        if header.get(key) != value:
            raise CacheCorruption(f"Cache {path}: header field '{key}' is {header.get(key)!r}, expected {value!r}")

    labels = label_count(n, family)
    k = len(records)
    try:
        elements = [HyperTree(labels, tuple(tuple(p) for p in r["petals"])) for r in records]
        order = None
        if header.get("order_digest") is not None:
            rows = [np.frombuffer(bytes.fromhex(r["up"]), dtype=np.uint8) for r in records]
            order = np.unpackbits(np.array(rows), axis=1)[:, :k].astype(bool)
    except Exception as e:
        raise CacheCorruption(f"Cache {path} has a malformed record: {e}")

    P = WhiteheadPoset(n, family, elements, order)
    if list(P.elements) != elements:
        raise CacheCorruption(f"Cache {path}: trees are not in canonical order")
    if P.digest() != header.get("element_digest"):
        raise CacheCorruption(f"Cache {path}: element digest mismatch")
    if order is not None and order_digest(order) != header.get("order_digest"):
        raise CacheCorruption(f"Cache {path}: order digest mismatch")
    logger.info("Loaded %d trees from %s", k, path)
    return P


def get_poset(n: int, family: str, cache_dir: Optional[str] = None, jobs: int = 1, use_cache: bool = True) -> WhiteheadPoset:
    """Cached poset if present, otherwise enumerate and write it."""
    if use_cache:
        P = load(n, family, cache_dir)
        if P is not None:
            return P
    start = time.time()
    P = enumerate_poset(n, family, jobs)
    logger.info("Enumerated %s in %.2fs", P, time.time() - start)
    if use_cache:
        save(P, cache_dir)
    return P
