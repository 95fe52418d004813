"""Independent oracles used across the test suite.

These deliberately avoid the library's own code paths: set partitions are
generated by the textbook recursion and filtered, the join is computed by
merge closure, Catalan numbers come from the additive recurrence, and the
moment series is summed literally over the lattice.
"""

import random

from meanders.nclat import NcPartition


def catalan_recurrence(n):
    cats = [1]
    for m in range(n):
        cats.append(sum(cats[i] * cats[m - i] for i in range(m + 1)))
    return cats[n]


def all_set_partitions(n):
    """Every partition of {1..n} (crossing or not), textbook recursion."""
    if n == 0:
        yield []
        return
    for rest in all_set_partitions(n - 1):
        yield rest + [[n]]
        for i in range(len(rest)):
            grown = [list(b) for b in rest]
            grown[i].append(n)
            yield grown


def is_crossing(blocks):
    for bi in range(len(blocks)):
        for bj in range(len(blocks)):
            if bi == bj:
                continue
            for a in blocks[bi]:
                for b in blocks[bi]:
                    if a >= b:
                        continue
                    for c in blocks[bj]:
                        for d in blocks[bj]:
                            if a < c < b < d:
                                return True
    return False


def brute_noncrossing_blocksets(n):
    """Canonical block tuples of every non-crossing partition of {1..n},
    by brute filter over all set partitions."""
    out = set()
    for blocks in all_set_partitions(n):
        if not is_crossing(blocks):
            out.add(tuple(sorted(tuple(sorted(b)) for b in blocks)))
    return out


def join_closure(p, q):
    """Lattice join by merge closure: repeatedly merge blocks that share
    a point or cross, until stable.  Independent of the complement-based
    implementation it checks."""
    blocks = [set(b) for b in p.blocks] + [set(b) for b in q.blocks]

    def crosses(x, y):
        for a in x:
            for b in x:
                if a >= b:
                    continue
                for c in y:
                    for d in y:
                        if a < c < b < d or c < a < d < b:
                            return True
        return False

    changed = True
    while changed:
        changed = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if blocks[i] & blocks[j] or crosses(blocks[i], blocks[j]):
                    blocks[i] |= blocks[j]
                    del blocks[j]
                    changed = True
                    break
            if changed:
                break
    return NcPartition(p.n, [sorted(b) for b in blocks])


def random_nc(n, rng):
    """Uniform non-crossing partition via the cycle lemma: a uniformly
    rotated balanced word is a balanced parenthesis word, whose arch
    system fattens down to a partition."""
    word = [1] * n + [-1] * n
    rng.shuffle(word)
    # rotate to the unique cyclic shift making all prefixes positive
    total, low, low_at = 0, 0, -1
    for i, w in enumerate(word):
        total += w
        if total < low:
            low = total
            low_at = i
    word = word[low_at + 1:] + word[:low_at + 1]
    stack, mate = [], {}
    for i, w in enumerate(word, start=1):
        if w == 1:
            stack.append(i)
        else:
            j = stack.pop()
            mate[j] = i
            mate[i] = j
    # arcs pair label 2i-1/2i boundaries; thin back: i joins j when the
    # arc at i's right shoulder (label 2i) lands on 2j-1
    perm = [0] * n
    for i in range(1, n + 1):
        j = mate[2 * i] if 2 * i in mate else None
        assert j is not None
        perm[i - 1] = (j + 1) // 2
    return NcPartition.from_perm(perm)


def moment_sum_over_lattice(parts_by_n, cumulants, n):
    """Literal moment-cumulant sum: over every non-crossing partition of
    {1..n}, multiply cumulant factors indexed by block sizes."""
    total = None
    for p in parts_by_n[n]:
        prod = None
        for block in p.blocks:
            factor = cumulants[len(block)]
            prod = factor if prod is None else prod * factor
        total = prod if total is None else total + prod
    return total


def seeded(seed=20260810):
    return random.Random(seed)
