"""Exhaustive enumeration of diameter-normalized subsets of [0, n].

Every subset of [0, n] containing both endpoints is visited (each set with
diameter n, up to translation) and tested for the MSTD or RSD predicate.
Three engines produce identical results:

* ``numpy``  - vectorized over batches of low interior masks with
  precomputed half-set tables; used automatically for n <= 31, where the
  sum bit vector fits in a 64-bit word.
* ``bits``   - per-mask big-integer bit vectors; any n.
* ``naive``  - recomputes sum/difference sets from scratch per subset via
  the double-loop oracles; the reference the others are tested against.

Work is split into contiguous mask ranges (chunks) that are processed
independently, optionally by a process pool, and folded in chunk order, so
results do not depend on the worker count.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass
from multiprocessing import Pool

try:
    import numpy as np
except ImportError:  # pragma: no cover - numpy is a hard dependency
    np = None

from . import setcore
from .setcore import IntegerSet, affine_normalize

__all__ = [
    "N_MAX",
    "SearchTask",
    "SearchResult",
    "enumerate_sets",
    "count_sets",
    "collect_sets",
    "smallest_cardinality",
    "SmallestCardinality",
    "rsd_minimum_diameter",
]

N_MAX = 40  # hard cap; the enumeration space doubles per step
_PREDICATES = ("MSTD", "RSD")
_ENGINES = ("auto", "numpy", "bits", "naive")
_LOW_BITS = 15  # low-half table size 2^15
_CHUNK_EXTRA_BITS = 6  # chunks = 2^(ceil(log2 threads) + 6), capped by the space


@dataclass(frozen=True)
class SearchTask:
    """One enumeration request over subsets of [0, n] with fixed endpoints."""

    n: int
    predicate: str = "MSTD"
    mode: str = "count"  # "count" | "collect"
    limit: int | None = None
    threads: int = 1
    symmetry: bool = True
    engine: str = "auto"
    checkpoint: str | None = None

    def __post_init__(self):
        if not 2 <= self.n <= N_MAX:
            raise ValueError(f"n out of range: need 2 <= n <= {N_MAX}, got {self.n}")
        object.__setattr__(self, "predicate", self.predicate.upper())
        if self.predicate not in _PREDICATES:
            raise ValueError(f"predicate must be one of {_PREDICATES}")
        if self.mode not in ("count", "collect"):
            raise ValueError("mode must be 'count' or 'collect'")
        if self.engine not in _ENGINES:
            raise ValueError(f"engine must be one of {_ENGINES}")
        if self.threads < 1:
            raise ValueError("threads must be positive")
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be positive when given")


@dataclass
class SearchResult:
    """Outcome of one enumeration.

    With symmetry on, ``counted`` tallies canonical (lexicographically
    minimal under reflection) qualifying masks and ``full_count``
    reconstructs the total number of qualifying sets; with symmetry off the
    two agree.  ``sets`` holds collected sets in ascending interior-mask
    order, with a parallel self-symmetry flag so both members of a
    reflection class can be reconstructed.
    """

    n: int
    predicate: str
    symmetry: bool
    counted: int = 0
    self_symmetric: int = 0
    masks_tested: int = 0
    elapsed: float = 0.0
    truncated: bool = False
    sets: tuple[IntegerSet, ...] = ()
    set_self_symmetric: tuple[bool, ...] = ()

    @property
    def full_count(self) -> int:
        if self.symmetry:
            return 2 * self.counted - self.self_symmetric
        return self.counted


# -- shared helpers ----------------------------------------------------------

def _interior_to_full(n: int, m: int) -> int:
    # interior mask bit i <-> element i+1
    return 1 | (m << 1) | (1 << n)


def _reflect(m: int, bits: int) -> int:
    out = 0
    for _ in range(bits):
        out = (out << 1) | (m & 1)
        m >>= 1
    return out


def _fold_hits(n, raw_hits, symmetry, collect):
    """Apply the reflection convention to raw qualifying interior masks."""
    bits = n - 1
    counted = selfsym = 0
    kept = []
    for m in raw_hits:
        r = _reflect(m, bits)
        if symmetry and m > r:
            continue
        counted += 1
        if m == r:
            selfsym += 1
        if collect:
            kept.append(m)
    return counted, selfsym, kept


# -- naive engine (reference) ------------------------------------------------

def _scan_naive(n, predicate, lo, hi):
    hits = []
    for m in range(lo, hi):
        elems = [0] + [i + 1 for i in range(n - 1) if (m >> i) & 1] + [n]
        a = IntegerSet(elems)
        diffs = setcore.difference_set_naive(a)
        if predicate == "RSD":
            ok = len(setcore.restricted_sumset_naive(a)) > len(diffs)
        else:
            ok = len(setcore.sumset_naive(a)) > len(diffs)
        if ok:
            hits.append(m)
    return hits


# -- big-integer engine ------------------------------------------------------

def _scan_bits(n, predicate, lo, hi):
    hits = []
    top = 1 << n
    rsd = predicate == "RSD"
    for m in range(lo, hi):
        full = 1 | (m << 1) | top
        s = p = 0
        mm = full
        while mm:
            low = mm & -mm
            a = low.bit_length() - 1
            s |= full << a
            p |= full >> a
            mm ^= low
        ndiff = 2 * p.bit_count() - 1
        if s.bit_count() <= ndiff:
            continue
        if rsd:
            r = 0
            mm = full
            while mm:
                low = mm & -mm
                r |= (full ^ low) << (low.bit_length() - 1)
                mm ^= low
            if r.bit_count() <= ndiff:
                continue
        hits.append(m)
    return hits


# -- numpy engine ------------------------------------------------------------

_low_tables_cache: dict[int, tuple] = {}


def _low_tables(low_bits):
    """Per low-mask tables over AL = {0} + low interior elements.

    almask: element bit vector; ts: AL+AL; tp: positive part of AL-AL;
    rev: {low_bits - a : a in AL} (for shifting cross differences);
    brev: the mask with its low_bits bits reversed (for reflection tests).
    """
    cached = _low_tables_cache.get(low_bits)
    if cached is not None:
        return cached
    size = 1 << low_bits
    almask = [0] * size
    ts = [0] * size
    tp = [0] * size
    brev = [0] * size
    almask[0] = ts[0] = tp[0] = 1
    for m in range(1, size):
        low = m & -m
        e = low.bit_length()  # smallest interior element in the mask
        prev = m ^ low
        am = (m << 1) | 1
        almask[m] = am
        ts[m] = ts[prev] | (am << e)
        tp[m] = tp[prev] | (am >> e) | (1 << e)
        brev[m] = brev[prev] | (1 << (low_bits - e))
    tables = (
        np.array(almask, dtype=np.uint64),
        np.array(ts, dtype=np.uint64),
        np.array(tp, dtype=np.uint64),
        np.array(brev, dtype=np.uint64) | np.uint64(1 << low_bits),  # rev
        np.array(brev, dtype=np.uint64),
        np.arange(size, dtype=np.uint64),
    )
    _low_tables_cache[low_bits] = tables
    return tables


def _scan_numpy(n, predicate, lo, hi, symmetry, collect):
    """Scan full interior masks in [lo, hi); the range must align to whole
    low-mask batches.  Returns (counted, selfsym, hits)."""
    interior = n - 1
    low_bits = min(_LOW_BITS, interior)
    high_bits = interior - low_bits
    almask, ts, tp, rev, brev, arange = _low_tables(low_bits)
    size = 1 << low_bits
    assert lo % size == 0 and hi % size == 0

    s_buf = np.empty(size, dtype=np.uint64)
    p_buf = np.empty(size, dtype=np.uint64)
    tmp = np.empty(size, dtype=np.uint64)
    rsd = predicate == "RSD"

    counted = selfsym = 0
    hits: list[int] = []
    for mh in range(lo >> low_bits, hi >> low_bits):
        high_vals = [low_bits + 1 + j for j in range(high_bits) if (mh >> j) & 1]
        high_vals.append(n)
        hm = 0
        for v in high_vals:
            hm |= 1 << v
        sh = ph = 0
        for v in high_vals:
            sh |= hm << v
            ph |= hm >> v
        np.bitwise_or(ts, np.uint64(sh), out=s_buf)
        np.bitwise_or(tp, np.uint64(ph), out=p_buf)
        for v in high_vals:
            np.left_shift(almask, np.uint64(v), out=tmp)
            np.bitwise_or(s_buf, tmp, out=s_buf)
            np.left_shift(rev, np.uint64(v - low_bits), out=tmp)
            np.bitwise_or(p_buf, tmp, out=p_buf)
        nsum = np.bitwise_count(s_buf).astype(np.int16)
        npos = np.bitwise_count(p_buf).astype(np.int16)
        qualifies = nsum > 2 * npos - 1  # |A+A| > |A-A|
        if rsd and qualifies.any():
            # refine the (rare) MSTD candidates by the restricted sum count
            cand = np.flatnonzero(qualifies)
            qualifies = np.zeros(size, dtype=bool)
            base = 1 | (mh << (low_bits + 1)) | (1 << n)
            for ml in cand.tolist():
                full = base | (ml << 1)
                r = 0
                mm = full
                while mm:
                    low = mm & -mm
                    r |= (full ^ low) << (low.bit_length() - 1)
                    mm ^= low
                if r.bit_count() > 2 * int(npos[ml]) - 1:
                    qualifies[ml] = True
        if not qualifies.any():
            continue
        if symmetry:
            mvals = arange + np.uint64(mh << low_bits)
            refl = (brev << np.uint64(high_bits)) | np.uint64(_reflect(mh, high_bits))
            canonical = qualifies & (mvals <= refl)
            counted += int(np.count_nonzero(canonical))
            selfsym += int(np.count_nonzero(qualifies & (mvals == refl)))
            chosen = canonical
        else:
            counted += int(np.count_nonzero(qualifies))
            chosen = qualifies
        if collect:
            offset = mh << low_bits
            hits.extend(offset | int(x) for x in np.flatnonzero(chosen))
    return counted, selfsym, hits


# -- chunked driver ----------------------------------------------------------

def _chunk_worker(args):
    (idx, n, predicate, lo, hi, symmetry, collect, engine) = args
    if engine == "numpy":
        counted, selfsym, hits = _scan_numpy(n, predicate, lo, hi, symmetry, collect)
    else:
        scan = _scan_bits if engine == "bits" else _scan_naive
        raw = scan(n, predicate, lo, hi)
        counted, selfsym, hits = _fold_hits(n, raw, symmetry, collect)
    return idx, counted, selfsym, hi - lo, hits


def _resolve_engine(task: SearchTask) -> str:
    if task.engine != "auto":
        if task.engine == "numpy" and (np is None or task.n > 31):
            raise ValueError("numpy engine requires numpy and n <= 31")
        return task.engine
    if np is not None and task.n <= 31:
        return "numpy"
    return "bits"


def _chunk_ranges(task: SearchTask, engine: str) -> list[tuple[int, int]]:
    space_bits = task.n - 1
    grain = min(_LOW_BITS, space_bits) if engine == "numpy" else 0
    chunk_bits = math.ceil(math.log2(task.threads)) + _CHUNK_EXTRA_BITS
    chunk_bits = min(chunk_bits, space_bits - grain)
    if chunk_bits < 0:
        chunk_bits = 0
    nchunks = 1 << chunk_bits
    step = 1 << (space_bits - chunk_bits)
    return [(i * step, (i + 1) * step) for i in range(nchunks)]


def _load_checkpoint(path, header):
    done = {}
    if not path or not os.path.exists(path):
        return done
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        return done
    if lines[0].startswith("#"):
        if lines[0] != header:
            raise ValueError(
                f"checkpoint {path!r} was written for a different task: {lines[0]!r}"
            )
        lines = lines[1:]
    for line in lines:
        parts = line.split()
        if not parts:
            continue
        idx, counted, selfsym = int(parts[0]), int(parts[1]), int(parts[2])
        masks = [int(p) for p in parts[3:]]
        done[idx] = (counted, selfsym, masks)
    return done


def enumerate_sets(task: SearchTask) -> SearchResult:
    """Run the enumeration described by ``task``."""
    engine = _resolve_engine(task)
    ranges = _chunk_ranges(task, engine)
    collect = task.mode == "collect"
    header = (
        f"# mstd-checkpoint n={task.n} predicate={task.predicate} "
        f"mode={task.mode} symmetry={int(task.symmetry)} chunks={len(ranges)}"
    )
    done = _load_checkpoint(task.checkpoint, header)

    ckpt = None
    if task.checkpoint:
        fresh = not os.path.exists(task.checkpoint) or not done
        ckpt = open(task.checkpoint, "a", encoding="utf-8")
        if fresh and ckpt.tell() == 0:
            print(header, file=ckpt, flush=True)

    started = time.monotonic()
    result = SearchResult(n=task.n, predicate=task.predicate, symmetry=task.symmetry)
    sets: list[IntegerSet] = []
    flags: list[bool] = []

    def fold(idx, counted, selfsym, tested, hits, from_checkpoint):
        result.counted += counted
        result.self_symmetric += selfsym
        result.masks_tested += tested
        if collect:
            for m in hits:
                sets.append(IntegerSet.from_mask(_interior_to_full(task.n, m)))
                flags.append(m == _reflect(m, task.n - 1))
        if ckpt and not from_checkpoint:
            line = f"{idx} {counted} {selfsym}"
            if hits:
                line += " " + " ".join(str(m) for m in hits)
            print(line, file=ckpt, flush=True)
        return task.limit is not None and result.counted >= task.limit

    try:
        pending = [
            (i, task.n, task.predicate, lo, hi, task.symmetry, collect, engine)
            for i, (lo, hi) in enumerate(ranges)
            if i not in done
        ]
        # Buffer out-of-order arrivals so chunks always fold in index order,
        # keeping results and collection order independent of worker count
        # and of which chunks a checkpoint already covered.
        buffered: dict[int, tuple] = {}
        for idx, (counted, selfsym, masks) in done.items():
            lo, hi = ranges[idx]
            buffered[idx] = (idx, counted, selfsym, hi - lo, masks, True)
        next_idx = 0
        stop = False

        def drain() -> bool:
            nonlocal next_idx
            while next_idx in buffered:
                if fold(*buffered.pop(next_idx)):
                    return True
                next_idx += 1
            return False

        stop = drain()
        if not stop and pending:
            if task.threads > 1 and len(pending) > 1:
                with Pool(task.threads) as pool:
                    for out in pool.imap(_chunk_worker, pending):
                        buffered[out[0]] = (*out, False)
                        if drain():
                            stop = True
                            break
            else:
                for args in pending:
                    buffered[args[0]] = (*_chunk_worker(args), False)
                    if drain():
                        stop = True
                        break
        result.truncated = stop and result.masks_tested < 1 << (task.n - 1)
    finally:
        if ckpt:
            ckpt.close()

    result.sets = tuple(sets)
    result.set_self_symmetric = tuple(flags)
    result.elapsed = time.monotonic() - started
    return result


def count_sets(n, predicate, threads=1, symmetry=True, engine="auto"):
    """Number of qualifying subsets of [0, n] containing both endpoints."""
    task = SearchTask(n=n, predicate=predicate, threads=threads,
                      symmetry=symmetry, engine=engine)
    return enumerate_sets(task).full_count


def collect_sets(n, predicate, threads=1, engine="auto"):
    """All qualifying subsets of [0, n] containing both endpoints."""
    task = SearchTask(n=n, predicate=predicate, mode="collect",
                      threads=threads, symmetry=False, engine=engine)
    return enumerate_sets(task).sets


@dataclass(frozen=True)
class SmallestCardinality:
    """Minimum qualifying cardinality with every witness at that size.

    Witnesses are diameter-normalized (they contain 0); ``affine_classes``
    counts them up to translation, scaling and reflection.
    """

    cardinality: int | None
    witnesses: tuple[IntegerSet, ...]
    affine_classes: int


def smallest_cardinality(predicate, n_max, threads=1) -> SmallestCardinality:
    """Scan every diameter up to n_max for the smallest qualifying set."""
    if n_max > N_MAX:
        raise ValueError(f"n_max out of range: need <= {N_MAX}")
    best: int | None = None
    witnesses: list[IntegerSet] = []
    for n in range(2, n_max + 1):
        for a in collect_sets(n, predicate, threads=threads):
            if best is None or len(a) < best:
                best = len(a)
                witnesses = [a]
            elif len(a) == best:
                witnesses.append(a)
    classes = {affine_normalize(a) for a in witnesses}
    return SmallestCardinality(best, tuple(witnesses), len(classes))


def rsd_minimum_diameter(n_max, threads=1) -> int | None:
    """Least diameter <= n_max admitting an RSD set, or None."""
    if n_max > N_MAX:
        raise ValueError(f"n_max out of range: need <= {N_MAX}")
    for n in range(2, n_max + 1):
        task = SearchTask(n=n, predicate="RSD", limit=1, threads=threads)
        if enumerate_sets(task).counted:
            return n
    return None
