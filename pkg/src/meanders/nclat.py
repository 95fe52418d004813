"""Non-crossing partitions of {1..n} and their lattice structure.

A non-crossing partition is kept in two mutually consistent views:

- ``blocks``: disjoint tuples covering ``1..n``, each sorted ascending,
  blocks ordered by their minimum.  This view drives meets, refinement
  tests and canonical ordering.
- ``perm``: the permutation (one-line notation, ``perm[i-1]`` is the image
  of point ``i``) whose cycles traverse each block in increasing order.
  This view makes products, lengths and complements O(n).

Such permutations are exactly the ones lying on a minimal transposition
path between the identity and the full cycle (1,2,...,n); the identity
``length(p) + number_of_blocks(p) == n`` ties the two views together.

All values are immutable after construction and safe to share between
workers.  Enumeration is available both materialized (:func:`enumerate_nc`,
bounded for memory) and streaming (:func:`iter_nc`, single consumer).
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, Sequence

from .errors import (
    CycleParseError,
    GroundSetMismatchError,
    InvalidPartitionError,
    SizeLimitError,
)

# Materializing NC(n) beyond this is impractical (Cat_16 ~ 35M entries);
# use iter_nc for single passes.
ENUMERATION_CAP = 16


def catalan(n: int) -> int:
    """The n-th Catalan number, |NC(n)|.

    >>> [catalan(n) for n in range(7)]
    [1, 1, 2, 5, 14, 42, 132]
    """
    return math.comb(2 * n, n) // (n + 1)


def _check_noncrossing(n: int, block_id: Sequence[int]) -> bool:
    """Scan check: block openings/closings must nest like parentheses."""
    first = {}
    last = {}
    for i in range(n):
        b = block_id[i]
        if b not in first:
            first[b] = i
        last[b] = i
    stack: list[int] = []
    for i in range(n):
        b = block_id[i]
        if first[b] == i:
            stack.append(b)
        elif not stack or stack[-1] != b:
            return False
        if last[b] == i:
            if not stack or stack[-1] != b:
                return False
            stack.pop()
    return True


def _perm_from_blocks(n: int, blocks: Iterable[Sequence[int]]) -> tuple[int, ...]:
    word = list(range(1, n + 1))
    for block in blocks:
        for i, x in enumerate(block):
            word[x - 1] = block[(i + 1) % len(block)]
    return tuple(word)


def _cycles_from_perm(perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Cycles traversed from their minimum, ordered by minimum."""
    n = len(perm)
    seen = [False] * n
    blocks = []
    for i in range(1, n + 1):
        if seen[i - 1]:
            continue
        cyc = []
        j = i
        while not seen[j - 1]:
            seen[j - 1] = True
            cyc.append(j)
            j = perm[j - 1]
        blocks.append(tuple(cyc))
    return tuple(blocks)


class NcPartition:
    """A non-crossing partition with its permutation view.

    Construct from blocks (validated) or via :meth:`from_perm`; internal
    code building already-valid data uses the trusted fast paths.
    """

    __slots__ = ("n", "blocks", "perm")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        canon = tuple(sorted(tuple(sorted(b)) for b in blocks))
        seen = [False] * n
        for block in canon:
            if not block:
                raise InvalidPartitionError("empty block")
            for x in block:
                if not 1 <= x <= n:
                    raise InvalidPartitionError(f"point {x} outside 1..{n}")
                if seen[x - 1]:
                    raise InvalidPartitionError(f"point {x} repeated")
                seen[x - 1] = True
        if not all(seen):
            missing = [i + 1 for i, s in enumerate(seen) if not s]
            raise InvalidPartitionError(f"points {missing} not covered")
        bid = [0] * n
        for k, block in enumerate(canon):
            for x in block:
                bid[x - 1] = k
        if not _check_noncrossing(n, bid):
            raise InvalidPartitionError(f"blocks cross: {canon}")
        self.n = n
        self.blocks = canon
        self.perm = _perm_from_blocks(n, canon)

    @classmethod
    def _make(cls, n: int, blocks: tuple[tuple[int, ...], ...],
              perm: tuple[int, ...] | None = None) -> "NcPartition":
        # Trusted constructor: caller guarantees canonical non-crossing data.
        self = object.__new__(cls)
        self.n = n
        self.blocks = blocks
        self.perm = perm if perm is not None else _perm_from_blocks(n, blocks)
        return self

    @classmethod
    def from_perm(cls, perm: Sequence[int]) -> "NcPartition":
        """Build from one-line notation, validating geodesicity.

        >>> NcPartition.from_perm([2, 3, 1, 5, 4]).blocks
        ((1, 2, 3), (4, 5))
        """
        n = len(perm)
        if sorted(perm) != list(range(1, n + 1)):
            raise InvalidPartitionError("not a permutation of 1..n")
        blocks = _cycles_from_perm(perm)
        for block in blocks:
            if list(block) != sorted(block):
                raise InvalidPartitionError(
                    f"cycle {block} does not increase from its minimum")
        return cls(n, blocks)

    @classmethod
    def _from_perm_trusted(cls, perm: tuple[int, ...]) -> "NcPartition":
        return cls._make(len(perm), _cycles_from_perm(perm), perm)

    @classmethod
    def bottom(cls, n: int) -> "NcPartition":
        """The all-singletons partition (identity permutation)."""
        return cls._make(n, tuple((i,) for i in range(1, n + 1)),
                         tuple(range(1, n + 1)))

    @classmethod
    def top(cls, n: int) -> "NcPartition":
        """The one-block partition (full cycle 1 -> 2 -> ... -> n -> 1)."""
        return cls._make(n, (tuple(range(1, n + 1)),),
                         tuple(range(2, n + 1)) + (1,))

    def block_index(self) -> list[int]:
        """List mapping point i (0-based index i-1) to its block id."""
        bid = [0] * self.n
        for k, block in enumerate(self.blocks):
            for x in block:
                bid[x - 1] = k
        return bid

    def refines(self, other: "NcPartition") -> bool:
        """True if every block of self is contained in a block of other."""
        if self.n != other.n:
            raise GroundSetMismatchError(f"n={self.n} vs n={other.n}")
        oid = other.block_index()
        return all(len({oid[x - 1] for x in block}) == 1 for block in self.blocks)

    def __eq__(self, other):
        return (isinstance(other, NcPartition)
                and self.n == other.n and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __repr__(self):
        return f"NcPartition({self.n}, {format_cycles(self)!r})"


def _iter_tails(start: int, hi: int) -> Iterator[tuple[int, ...]]:
    # Increasing tuples drawn from [start, hi], lexicographic, empty first.
    yield ()
    for x in range(start, hi + 1):
        for rest in _iter_tails(x + 1, hi):
            yield (x,) + rest


def _iter_interval_blocks(lo: int, hi: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    # Non-crossing partitions of the interval [lo, hi] as block tuples,
    # in lexicographic order of the canonical block sequence.  The block
    # containing lo splits the rest into independent gaps and a tail.
    if lo > hi:
        yield ()
        return
    for tail_elems in _iter_tails(lo + 1, hi):
        block = (lo,) + tail_elems
        segs = []
        prev = lo
        for c in tail_elems:
            if prev + 1 <= c - 1:
                segs.append((prev + 1, c - 1))
            prev = c
        if prev + 1 <= hi:
            segs.append((prev + 1, hi))
        for rest in _iter_segment_product(segs, 0):
            yield (block,) + rest


def _iter_segment_product(segs: list[tuple[int, int]], i: int
                          ) -> Iterator[tuple[tuple[int, ...], ...]]:
    if i == len(segs):
        yield ()
        return
    for head in _iter_interval_blocks(*segs[i]):
        for rest in _iter_segment_product(segs, i + 1):
            yield head + rest


def iter_nc(n: int) -> Iterator[NcPartition]:
    """Stream NC(n) in canonical lexicographic order (single consumer)."""
    if n < 1:
        raise SizeLimitError(f"n must be >= 1, got {n}")
    for blocks in _iter_interval_blocks(1, n):
        yield NcPartition._make(n, blocks)


def enumerate_nc(n: int) -> list[NcPartition]:
    """All of NC(n), materialized, in canonical lexicographic order.

    >>> [format_cycles(p) for p in enumerate_nc(3)]
    ['', '(2,3)', '(1,2)', '(1,2,3)', '(1,3)']
    """
    if not 1 <= n <= ENUMERATION_CAP:
        raise SizeLimitError(
            f"enumerate_nc supports 1 <= n <= {ENUMERATION_CAP}, got {n}; "
            "use iter_nc for streaming passes")
    return list(iter_nc(n))


def length(p: NcPartition) -> int:
    """Minimal number of transpositions multiplying to p's permutation;
    equals n minus the number of blocks."""
    return p.n - len(p.blocks)


def perm_product_cycles(p: NcPartition, q: NcPartition) -> int:
    """Number of cycles of the permutation p∘q⁻¹ (apply q⁻¹, then p)."""
    if p.n != q.n:
        raise GroundSetMismatchError(f"n={p.n} vs n={q.n}")
    n = p.n
    pw = p.perm
    qinv = [0] * n
    for i, v in enumerate(q.perm):
        qinv[v - 1] = i + 1
    seen = [False] * n
    cycles = 0
    for i in range(1, n + 1):
        if seen[i - 1]:
            continue
        cycles += 1
        j = i
        while not seen[j - 1]:
            seen[j - 1] = True
            j = pw[qinv[j - 1] - 1]
    return cycles


def kreweras(p: NcPartition) -> NcPartition:
    """The complement p⁻¹∘(1,2,...,n); an order-reversing bijection with
    length(kreweras(p)) == n - 1 - length(p).

    >>> format_cycles(kreweras(parse_cycles("(2,6)(3,4)", 6)))
    '(1,6)(2,4,5)'
    """
    n = p.n
    inv = [0] * n
    for i, v in enumerate(p.perm):
        inv[v - 1] = i + 1
    word = tuple(inv[i % n] for i in range(1, n + 1))
    return NcPartition._from_perm_trusted(word)


def kreweras_inverse(p: NcPartition) -> NcPartition:
    """Inverse bijection of :func:`kreweras`: p maps to (1,2,...,n)∘p⁻¹."""
    n = p.n
    inv = [0] * n
    for i, v in enumerate(p.perm):
        inv[v - 1] = i + 1
    word = tuple(inv[i] % n + 1 for i in range(n))
    return NcPartition._from_perm_trusted(word)


def meet(p: NcPartition, q: NcPartition) -> NcPartition:
    """Largest partition below both: the common refinement, which is
    automatically non-crossing."""
    if p.n != q.n:
        raise GroundSetMismatchError(f"n={p.n} vs n={q.n}")
    pid = p.block_index()
    qid = q.block_index()
    groups: dict[tuple[int, int], list[int]] = {}
    for i in range(p.n):
        groups.setdefault((pid[i], qid[i]), []).append(i + 1)
    blocks = tuple(tuple(g) for g in groups.values())
    return NcPartition._make(p.n, blocks)


def join(p: NcPartition, q: NcPartition) -> NcPartition:
    """Smallest partition above both, via complement duality:
    join(p, q) = kreweras_inverse(meet(kreweras(p), kreweras(q)))."""
    if p.n != q.n:
        raise GroundSetMismatchError(f"n={p.n} vs n={q.n}")
    return kreweras_inverse(meet(kreweras(p), kreweras(q)))


class Pairing2n:
    """A non-crossing perfect matching on the 2n fattened labels.

    Point i of the base set doubles into i⁻ and i⁺, laid out linearly as
    1⁻, 1⁺, 2⁻, 2⁺, ...; internally label i⁻ is 2i-1 and i⁺ is 2i.
    """

    __slots__ = ("n", "pairs")

    def __init__(self, n: int, pairs: Iterable[tuple[int, int]]):
        canon = tuple(sorted(tuple(sorted(pr)) for pr in pairs))
        mate = [0] * (2 * n)
        for x, y in canon:
            if not (1 <= x <= 2 * n and 1 <= y <= 2 * n) or x == y:
                raise InvalidPartitionError(f"bad pair ({x}, {y})")
            if mate[x - 1] or mate[y - 1]:
                raise InvalidPartitionError(f"label repeated in ({x}, {y})")
            mate[x - 1] = y
            mate[y - 1] = x
        if len(canon) != n:
            raise InvalidPartitionError(f"expected {n} pairs, got {len(canon)}")
        stack: list[int] = []
        for i in range(1, 2 * n + 1):
            if mate[i - 1] > i:
                stack.append(i)
            else:
                if not stack or stack[-1] != mate[i - 1]:
                    raise InvalidPartitionError(f"pairs cross at label {i}")
                stack.pop()
        self.n = n
        self.pairs = canon

    @staticmethod
    def label(x: int) -> str:
        """Human-readable name of a fattened label: 3 -> '2-', 4 -> '2+'."""
        i, rem = divmod(x + 1, 2)
        return f"{i}{'-' if rem == 0 else '+'}"

    def mates(self) -> list[int]:
        """List mapping label x (index x-1) to its partner."""
        mate = [0] * (2 * self.n)
        for x, y in self.pairs:
            mate[x - 1] = y
            mate[y - 1] = x
        return mate

    def __eq__(self, other):
        return (isinstance(other, Pairing2n)
                and self.n == other.n and self.pairs == other.pairs)

    def __hash__(self):
        return hash((self.n, self.pairs))

    def __repr__(self):
        body = "".join(f"({self.label(x)},{self.label(y)})" for x, y in self.pairs)
        return f"Pairing2n({self.n}, {body})"


def fatten(p: NcPartition) -> Pairing2n:
    """Double each point into i⁻, i⁺ and pair i⁺ with p(i)⁻.

    A pair (i⁻, i⁺) appears exactly when i is a fixed point; a pair
    (i⁻, j⁺) with i < j exactly when p has the increasing cycle (i,...,j).
    """
    pairs = []
    for i in range(1, p.n + 1):
        j = p.perm[i - 1]
        pairs.append((2 * i, 2 * j - 1))
    return Pairing2n(p.n, pairs)


_CYCLE_TEXT = re.compile(r"^\s*(\(\s*\d+(\s*,\s*\d+)*\s*\)\s*)*$")


def parse_cycles(text: str, n: int) -> NcPartition:
    """Parse cycle notation like "(1,2,3)(4,5)"; omitted points are fixed.

    The empty string denotes the all-singletons partition.  Crossing or
    non-geodesic input is rejected.
    """
    if not _CYCLE_TEXT.match(text):
        raise CycleParseError(f"malformed cycle text: {text!r}")
    word = list(range(1, n + 1))
    used = [False] * n
    for group in re.findall(r"\(([^)]*)\)", text):
        elems = [int(tok) for tok in group.split(",")]
        for x in elems:
            if not 1 <= x <= n:
                raise CycleParseError(f"point {x} outside 1..{n}")
            if used[x - 1]:
                raise CycleParseError(f"point {x} repeated")
            used[x - 1] = True
        for i, x in enumerate(elems):
            word[x - 1] = elems[(i + 1) % len(elems)]
    try:
        return NcPartition.from_perm(word)
    except InvalidPartitionError as exc:
        raise CycleParseError(f"{text!r} is not non-crossing geodesic: {exc}") from exc


def format_cycles(p: NcPartition) -> str:
    """Minimal canonical cycle text: fixed points omitted, n carried
    separately.  Round-trips through :func:`parse_cycles`."""
    return "".join(
        "(" + ",".join(map(str, block)) + ")"
        for block in p.blocks if len(block) > 1)
