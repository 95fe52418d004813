"""Meandric systems as pairs of non-crossing partitions.

A pair (alpha, beta) on n points describes the closed curves obtained by
drawing the fattened arcs of alpha above a horizontal line and those of
beta below it.  The loop count equals the number of cycles of the
permutation alpha∘beta⁻¹; an independent geometric tracer provides the
cross-check.  The (r, a, b) statistics grade pairs by the transposition
distance between the partitions and by their individual lengths, and the
irreducible pairs (meet discrete, join full) are the generating data for
everything downstream.
"""

from __future__ import annotations

import os
import time
from array import array
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Iterator, NamedTuple

from . import _kernel
from .errors import (
    CacheIntegrityError,
    GroundSetMismatchError,
    SizeLimitError,
)
from .nclat import (
    NcPartition,
    catalan,
    fatten,
    format_cycles,
    iter_nc,
    join,
    kreweras,
    length,
    meet,
    perm_product_cycles,
)

BRUTE_PAIR_CAP = 9          # Cat_n^2 pair sweeps beyond this refuse to run
BRUTE_SET_CAP = 8
IRREDUCIBLE_CAP = 12        # covers r <= 6; override for larger runs
CACHE_VERSION = "v1"


class StatQuadruple(NamedTuple):
    n: int
    r: int
    a: int
    b: int


@dataclass(frozen=True)
class MeandricSystem:
    """An ordered pair of partitions with its derived loop count."""

    alpha: NcPartition
    beta: NcPartition
    loops: int = field(init=False)

    def __post_init__(self):
        if self.alpha.n != self.beta.n:
            raise GroundSetMismatchError(
                f"n={self.alpha.n} vs n={self.beta.n}")
        loops = loop_count_algebraic(self.alpha, self.beta)
        assert 1 <= loops <= self.alpha.n
        object.__setattr__(self, "loops", loops)

    @property
    def n(self) -> int:
        return self.alpha.n


def loop_count_algebraic(alpha: NcPartition, beta: NcPartition) -> int:
    """Loop count as the number of cycles of alpha∘beta⁻¹."""
    return perm_product_cycles(alpha, beta)


def trace_loops(alpha: NcPartition, beta: NcPartition) -> list[tuple[int, ...]]:
    """Trace the closed curves through the 2n fattened points, alternating
    between alpha's arcs above the line and beta's arcs below.

    Returns the curves ordered by smallest visited label, each listed in
    trace order starting from that label along its upper arc.
    """
    if alpha.n != beta.n:
        raise GroundSetMismatchError(f"n={alpha.n} vs n={beta.n}")
    upper = fatten(alpha).mates()
    lower = fatten(beta).mates()
    visited = [False] * (2 * alpha.n)
    loops = []
    for start in range(1, 2 * alpha.n + 1):
        if visited[start - 1]:
            continue
        curve = []
        x = start
        while not visited[x - 1]:
            visited[x - 1] = True
            curve.append(x)
            y = upper[x - 1]
            visited[y - 1] = True
            curve.append(y)
            x = lower[y - 1]
        loops.append(tuple(curve))
    return loops


def loop_count_geometric(alpha: NcPartition, beta: NcPartition) -> int:
    """Loop count by explicit curve tracing; independent oracle for
    :func:`loop_count_algebraic`."""
    return len(trace_loops(alpha, beta))


def _distance(alpha: NcPartition, beta: NcPartition) -> int:
    return alpha.n - perm_product_cycles(alpha, beta)


def stats_I(alpha: NcPartition, beta: NcPartition) -> StatQuadruple:
    """(n, distance, |alpha|, |beta|): the grading used for irreducible
    pairs."""
    if alpha.n != beta.n:
        raise GroundSetMismatchError(f"n={alpha.n} vs n={beta.n}")
    return StatQuadruple(alpha.n, _distance(alpha, beta),
                         length(alpha), length(beta))


def stats_M(alpha: NcPartition, beta: NcPartition) -> StatQuadruple:
    """(n, distance, d(alpha, join), d(beta, join)); the distances to the
    join reduce to length differences because each partition lies on a
    minimal path below the join."""
    if alpha.n != beta.n:
        raise GroundSetMismatchError(f"n={alpha.n} vs n={beta.n}")
    sigma = join(alpha, beta)
    return StatQuadruple(alpha.n, _distance(alpha, beta),
                         length(sigma) - length(alpha),
                         length(sigma) - length(beta))


def stats_K(alpha: NcPartition, beta: NcPartition) -> StatQuadruple | None:
    """(n, distance, n-1-|alpha|, n-1-|beta|) when the join is the full
    partition; None otherwise."""
    if alpha.n != beta.n:
        raise GroundSetMismatchError(f"n={alpha.n} vs n={beta.n}")
    if len(meet(kreweras(alpha), kreweras(beta)).blocks) != alpha.n:
        return None
    n = alpha.n
    return StatQuadruple(n, _distance(alpha, beta),
                         n - 1 - length(alpha), n - 1 - length(beta))


def is_irreducible(alpha: NcPartition, beta: NcPartition) -> bool:
    """True when meet(alpha, beta) is discrete and join(alpha, beta) is the
    one-block partition; the join test runs through complements."""
    if alpha.n != beta.n:
        raise GroundSetMismatchError(f"n={alpha.n} vs n={beta.n}")
    n = alpha.n
    if len(meet(alpha, beta).blocks) != n:
        return False
    return len(meet(kreweras(alpha), kreweras(beta)).blocks) == n


def is_compatible_triple(r: int, a: int, b: int) -> bool:
    """Arithmetic conditions necessary for irreducible pairs of type
    (r, a, b) to exist, ignoring the point count."""
    if a > max(2 * r - 2, 1) or b > max(2 * r - 2, 1):
        return False
    if not abs(a - b) <= r <= a + b:
        return False
    if (a - b) % 2 != r % 2 or (a + b) % 2 != r % 2:
        return False
    if r == abs(a - b) and not (min(a, b) == 0 and max(a, b) == r):
        return False
    return True


def is_compatible(n: int, r: int, a: int, b: int) -> bool:
    """Full compatibility for a quadruple, adding the point-count window
    r+1 <= n <= 2r (with the n = 1 exception)."""
    if not is_compatible_triple(r, a, b):
        return False
    return r + 1 <= n <= 2 * r + (1 if n == 1 else 0)


def brute_meander_counts(n: int) -> dict[int, int]:
    """Loop-count tally over all Cat_n^2 pairs; brute-force oracle.

    >>> brute_meander_counts(2)
    {1: 2, 2: 2}
    """
    if not 1 <= n <= BRUTE_PAIR_CAP:
        raise SizeLimitError(
            f"brute_meander_counts supports 1 <= n <= {BRUTE_PAIR_CAP}, got {n}")
    perms = [[v - 1 for v in p.perm] for p in iter_nc(n)]
    table = _kernel.loop_table(n, perms)
    return {k: int(c) for k, c in enumerate(table) if c}


def brute_set_counts(n: int, kind: str) -> dict[tuple[int, int, int], int]:
    """Exhaustive (r, a, b) tallies over NC(n)^2 for one of the three
    statistics families: "I" (irreducible pairs), "K" (full-join pairs),
    "M" (all pairs).  Oracle for the series pipeline."""
    if kind not in ("I", "K", "M"):
        raise ValueError(f"kind must be I, K or M, got {kind!r}")
    if not 1 <= n <= BRUTE_SET_CAP:
        raise SizeLimitError(
            f"brute_set_counts supports 1 <= n <= {BRUTE_SET_CAP}, got {n}")
    parts = list(iter_nc(n))
    counts: dict[tuple[int, int, int], int] = {}
    for alpha in parts:
        for beta in parts:
            if kind == "I":
                if not is_irreducible(alpha, beta):
                    continue
                stat = stats_I(alpha, beta)
            elif kind == "K":
                stat = stats_K(alpha, beta)
                if stat is None:
                    continue
            else:
                stat = stats_M(alpha, beta)
            key = (stat.r, stat.a, stat.b)
            counts[key] = counts.get(key, 0) + 1
    return counts


def _alpha_arrays(alpha: NcPartition):
    n = alpha.n
    ablock = alpha.block_index()
    kblock = kreweras(alpha).block_index()
    aperm = [v - 1 for v in alpha.perm]
    return ablock, kblock, aperm, n - len(alpha.blocks)


def enumerate_irreducible(
    n: int, *, override_guard: bool = False
) -> Iterator[tuple[NcPartition, NcPartition, StatQuadruple]]:
    """Yield every irreducible pair (alpha, beta) with its statistics, in
    lexicographic (alpha, beta) order.  beta is generated block-by-block
    under the meet/join pruning, never post-filtered."""
    if n > IRREDUCIBLE_CAP and not override_guard:
        raise SizeLimitError(
            f"enumerate_irreducible guard is n <= {IRREDUCIBLE_CAP}; "
            "pass override_guard=True to go further")
    if n < 1:
        raise SizeLimitError(f"n must be >= 1, got {n}")
    for alpha in iter_nc(n):
        ablock, kblock, aperm, alen = _alpha_arrays(alpha)
        for blocks0, r, b in _kernel.iter_irreducible_for_alpha(
                n, ablock, kblock, aperm):
            blocks = tuple(tuple(x + 1 for x in blk) for blk in blocks0)
            beta = NcPartition._make(n, blocks)
            yield alpha, beta, StatQuadruple(n, r, alen, b)


def count_irreducible_slice(n: int, residue: int = 0, stride: int = 1,
                            kernel=None) -> dict[tuple[int, int, int], int]:
    """Tally irreducible pairs by (r, a, b) for the alphas whose index in
    the canonical NC(n) order is congruent to residue modulo stride.
    Interleaving balances work across workers: the per-alpha search tree
    size varies wildly."""
    count_fn = kernel if kernel is not None else _kernel.count_for_alpha
    nn = n + 1
    acc = array("q", bytes(8 * nn * nn * nn))
    for idx, alpha in enumerate(iter_nc(n)):
        if idx % stride != residue:
            continue
        ablock, kblock, aperm, alen = _alpha_arrays(alpha)
        count_fn(n, ablock, kblock, aperm, alen, acc)
    counts = {}
    for r in range(nn):
        for a in range(nn):
            for b in range(nn):
                v = acc[(r * nn + a) * nn + b]
                if v:
                    counts[(r, a, b)] = v
    return counts


def _merge_counts(parts):
    total: dict[tuple[int, int, int], int] = {}
    for part in parts:
        for key, v in part.items():
            total[key] = total.get(key, 0) + v
    return total


def _count_slice_job(args):
    n, residue, stride = args
    return count_irreducible_slice(n, residue, stride)


def resolve_workers(workers) -> int:
    if workers in (None, "auto"):
        return os.cpu_count() or 1
    w = int(workers)
    if w < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    return w


def compute_irreducible_counts(n: int, *, workers=1
                               ) -> dict[tuple[int, int, int], int]:
    """Count all irreducible pairs on n points, grouped by (r, a, b),
    spreading the alpha sweep across a worker pool.  The merge is a plain
    sum, so results are identical for any worker count."""
    w = min(resolve_workers(workers), catalan(n))
    if w == 1:
        return count_irreducible_slice(n)
    jobs = [(n, k, w) for k in range(w)]
    with Pool(processes=w) as pool:
        parts = pool.map(_count_slice_job, jobs)
    return _merge_counts(parts)


# -- cache -----------------------------------------------------------------

def cache_path(cache_dir, n: int) -> Path:
    return Path(cache_dir) / f"irreducible-n{n:02d}.txt"


def save_irreducible_counts(path, n: int,
                            counts: dict[tuple[int, int, int], int]) -> None:
    """Write counts in the stable text format: a header line, then
    ``n,r,a,b,count`` rows sorted by key."""
    path = Path(path)
    lines = [f"# meander-irreducible {CACHE_VERSION} n={n}"]
    for (r, a, b) in sorted(counts):
        lines.append(f"{n},{r},{a},{b},{counts[(r, a, b)]}")
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="ascii")
    tmp.replace(path)


def load_irreducible_counts(path, n: int) -> dict[tuple[int, int, int], int]:
    """Read and strictly validate a cache file; any anomaly raises
    :class:`CacheIntegrityError` (delete the file to force a recompute)."""
    path = Path(path)

    def bad(reason):
        return CacheIntegrityError(
            f"{path}: {reason}; delete the file to force a recompute")

    try:
        text = path.read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as exc:
        raise bad(f"unreadable ({exc})") from exc
    lines = text.split("\n")
    if not lines or lines[-1] != "":
        raise bad("missing trailing newline")
    lines = lines[:-1]
    if not lines or lines[0] != f"# meander-irreducible {CACHE_VERSION} n={n}":
        raise bad("bad header")
    counts = {}
    prev_key = None
    for line in lines[1:]:
        fields = line.split(",")
        if len(fields) != 5:
            raise bad(f"malformed row {line!r}")
        try:
            vals = [int(f) for f in fields]
        except ValueError as exc:
            raise bad(f"non-integer row {line!r}") from exc
        row_n, r, a, b, count = vals
        if row_n != n or count <= 0:
            raise bad(f"invalid row {line!r}")
        key = (n, r, a, b)
        if prev_key is not None and key <= prev_key:
            raise bad(f"rows not strictly sorted at {line!r}")
        prev_key = key
        counts[(r, a, b)] = count
    return counts


def irreducible_counts_for_n(n: int, *, cache_dir=None, workers=1,
                             override_guard: bool = False
                             ) -> dict[tuple[int, int, int], int]:
    """Counts of irreducible pairs on n points by (r, a, b), loading from
    the cache when a valid file exists and persisting after a compute."""
    if n > IRREDUCIBLE_CAP and not override_guard:
        raise SizeLimitError(
            f"irreducible enumeration guard is n <= {IRREDUCIBLE_CAP}; "
            "pass override_guard=True to go further")
    if cache_dir is not None:
        path = cache_path(cache_dir, n)
        if path.exists():
            return load_irreducible_counts(path, n)
    counts = compute_irreducible_counts(n, workers=workers)
    if cache_dir is not None:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        save_irreducible_counts(cache_path(cache_dir, n), n, counts)
    return counts


# -- the assembled table ---------------------------------------------------

@dataclass
class IrreducibleTable:
    """Irreducible pair counts keyed by (n, r, a, b), with r truncated to
    max_r.  Absent key means zero.  covered_n records which point counts
    were actually enumerated, so zero and unknown stay distinct."""

    entries: dict[tuple[int, int, int, int], int]
    max_r: int
    covered_n: tuple[int, ...]
    provenance: dict

    def count(self, n: int, r: int, a: int, b: int) -> int:
        return self.entries.get((n, r, a, b), 0)

    def total(self, n: int) -> int:
        return sum(v for (en, _, _, _), v in self.entries.items() if en == n)

    def sorted_items(self):
        return sorted(self.entries.items())


def build_irreducible_table(max_r: int, *, cache_dir=None, workers=1,
                            override_guard: bool = False) -> IrreducibleTable:
    """Enumerate (or load) irreducible counts for n = 1 .. 2*max_r and
    truncate to r <= max_r.  Counts with r beyond max_r exist only for
    n < 2*max_r and are dropped; they are invisible at the truncation
    orders the table serves."""
    if max_r < 0:
        raise ValueError(f"max_r must be >= 0, got {max_r}")
    backend = _kernel.BACKEND
    entries: dict[tuple[int, int, int, int], int] = {}
    n_range = range(1, 2 * max_r + 1) if max_r >= 1 else range(1, 2)
    for n in n_range:
        counts = irreducible_counts_for_n(
            n, cache_dir=cache_dir, workers=workers,
            override_guard=override_guard)
        for (r, a, b), v in counts.items():
            if r <= max_r:
                entries[(n, r, a, b)] = v
    return IrreducibleTable(
        entries=entries,
        max_r=max_r,
        covered_n=tuple(n_range),
        provenance={
            "max_r": max_r,
            "backend": backend,
            "built_at": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
        },
    )


def compatible_unrealized(table: IrreducibleTable) -> list[tuple[int, int, int, int]]:
    """Compatible quadruples inside the table's coverage whose count is
    zero.  Compatibility is necessary but not sufficient; this reports the
    gap without attempting a characterization."""
    out = []
    for n in table.covered_n:
        for r in range(1, min(table.max_r, n - 1) + 1):
            if not r + 1 <= n <= 2 * r:
                continue
            lim = max(2 * r - 2, 1)
            for a in range(lim + 1):
                for b in range(lim + 1):
                    if is_compatible(n, r, a, b) and table.count(n, r, a, b) == 0:
                        out.append((n, r, a, b))
    return out


def write_pairs_file(path, n: int, *, override_guard: bool = False) -> int:
    """Emit every irreducible pair as ``n;<alpha cycles>;<beta cycles>``
    lines in canonical cycle notation; returns the number of pairs."""
    path = Path(path)
    count = 0
    with path.open("w", encoding="ascii") as fh:
        for alpha, beta, _ in enumerate_irreducible(
                n, override_guard=override_guard):
            fh.write(f"{n};{format_cycles(alpha)};{format_cycles(beta)}\n")
            count += 1
    return count
