"""Pure-Python enumeration kernels.

Mirror of the compiled ``_core`` extension; selected by ``_kernel`` when
the extension is unavailable (or forced via MEANDER_BACKEND=python).

The central routine walks, for a fixed upper partition alpha, every lower
partition beta such that the pair is irreducible (meet is the discrete
partition, join is the one-block partition).  Both conditions are pruned
during generation rather than filtered afterwards:

- meet: a block under construction keeps a bitmask of alpha-block ids;
  a candidate point whose alpha-block is already present is skipped.
- join: the complement of beta is built incrementally as the "faces" of
  beta's arc diagram.  When a point p becomes the maximum of its block it
  joins the ambient face of its segment; when the block instead extends
  past p, p sits in the fresh face of the gap it opens.  Two points
  sharing a face and a complement-block of alpha would make the
  complements' meet nontrivial, i.e. the join would not be full, so that
  branch is cut immediately.

Counts are accumulated into a flat (n+1)^3 tally indexed by
(r, a, b) = (distance, |alpha|, |beta|); loop counts for whole-lattice
pair sweeps use the same cycle-walk primitive.
"""

BACKEND_NAME = "python"


def count_for_alpha(n, ablock, kblock, aperm, alen, acc):
    """Tally (r, alen, b) over all beta forming an irreducible pair with
    the partition described by (ablock, kblock, aperm); 0-based arrays."""
    bperm = [0] * n
    binv = [0] * n
    blk = [0] * (n + 1)
    gapface = [0] * (n + 1)
    seg_lo = [0] * (2 * n + 2)
    seg_hi = [0] * (2 * n + 2)
    seg_fid = [0] * (2 * n + 2)
    face_mask = [0] * (n + 2)
    stamp = [0] * n
    seg_top = 1
    blk_top = 0
    face_top = 1
    bblocks = 0
    stamp_ctr = 0
    nn = n + 1

    def leaf():
        nonlocal stamp_ctr
        stamp_ctr += 1
        cycles = 0
        for i in range(n):
            if stamp[i] != stamp_ctr:
                cycles += 1
                j = i
                while stamp[j] != stamp_ctr:
                    stamp[j] = stamp_ctr
                    j = aperm[binv[j]]
        acc[((n - cycles) * nn + alen) * nn + (n - bblocks)] += 1

    def rec_stack():
        nonlocal seg_top, blk_top
        if seg_top == 0:
            leaf()
            return
        seg_top -= 1
        lo = seg_lo[seg_top]
        hi = seg_hi[seg_top]
        fid = seg_fid[seg_top]
        blk[blk_top] = lo
        blk_top += 1
        rec_block(lo, hi, fid, 1, 1 << ablock[lo])
        blk_top -= 1
        # deeper pushes reuse this slot; restore contents, not just the top
        seg_lo[seg_top] = lo
        seg_hi[seg_top] = hi
        seg_fid[seg_top] = fid
        seg_top += 1

    def rec_block(lo, hi, fid, m, mask):
        nonlocal seg_top, blk_top, face_top, bblocks
        top = blk_top
        p = blk[top - 1]
        kb = 1 << kblock[p]
        if not face_mask[fid] & kb:
            # close the block: p joins the ambient face
            face_mask[fid] |= kb
            base = top - m
            first = blk[base]
            prev = first
            for j in range(base + 1, top):
                c = blk[j]
                bperm[prev] = c
                binv[c] = prev
                prev = c
            bperm[p] = first
            binv[first] = p
            bblocks += 1
            pushed = 0
            if p < hi:
                seg_lo[seg_top] = p + 1
                seg_hi[seg_top] = hi
                seg_fid[seg_top] = fid
                seg_top += 1
                pushed += 1
            for j in range(top - 2, base - 1, -1):
                gl = blk[j] + 1
                gh = blk[j + 1] - 1
                if gl <= gh:
                    seg_lo[seg_top] = gl
                    seg_hi[seg_top] = gh
                    seg_fid[seg_top] = gapface[j + 1]
                    seg_top += 1
                    pushed += 1
            rec_stack()
            seg_top -= pushed
            bblocks -= 1
            face_mask[fid] &= ~kb
        last = blk[top - 1]
        for c in range(last + 1, hi + 1):
            ab = 1 << ablock[c]
            if mask & ab:
                continue
            face_mask[face_top] = 1 << kblock[last]
            gapface[top] = face_top
            face_top += 1
            blk[top] = c
            blk_top = top + 1
            rec_block(lo, hi, fid, m + 1, mask | ab)
            blk_top = top
            face_top -= 1

    seg_lo[0] = 0
    seg_hi[0] = n - 1
    seg_fid[0] = 0
    rec_stack()


def iter_irreducible_for_alpha(n, ablock, kblock, aperm):
    """Yield (blocks, r, b) for every irreducible partner beta of the
    partition described by the 0-based arrays, in lexicographic order of
    beta's canonical block sequence."""
    bperm = [0] * n
    binv = [0] * n
    blk = [0] * (n + 1)
    gapface = [0] * (n + 1)
    face_mask = [0] * (n + 2)
    stamp = [0] * n
    state = {"blk_top": 0, "face_top": 1, "stamp_ctr": 0}
    cur_blocks = []

    def leaf():
        state["stamp_ctr"] += 1
        ctr = state["stamp_ctr"]
        cycles = 0
        for i in range(n):
            if stamp[i] != ctr:
                cycles += 1
                j = i
                while stamp[j] != ctr:
                    stamp[j] = ctr
                    j = aperm[binv[j]]
        yield tuple(cur_blocks), n - cycles, n - len(cur_blocks)

    def rec_stack(segs):
        # segs: pending (lo, hi, fid) sorted by position; processing the
        # leftmost first yields betas in lexicographic order.
        if not segs:
            yield from leaf()
            return
        lo, hi, fid = segs[0]
        blk[state["blk_top"]] = lo
        state["blk_top"] += 1
        yield from rec_block(segs, lo, hi, fid, 1, 1 << ablock[lo])
        state["blk_top"] -= 1

    def rec_block(segs, lo, hi, fid, m, mask):
        top = state["blk_top"]
        p = blk[top - 1]
        kb = 1 << kblock[p]
        if not face_mask[fid] & kb:
            face_mask[fid] |= kb
            base = top - m
            first = blk[base]
            prev = first
            for j in range(base + 1, top):
                c = blk[j]
                bperm[prev] = c
                binv[c] = prev
                prev = c
            bperm[p] = first
            binv[first] = p
            rest = []
            for j in range(base, top - 1):
                gl = blk[j] + 1
                gh = blk[j + 1] - 1
                if gl <= gh:
                    rest.append((gl, gh, gapface[j + 1]))
            if p < hi:
                rest.append((p + 1, hi, fid))
            cur_blocks.append(tuple(blk[base:top]))
            yield from rec_stack(rest + segs[1:])
            cur_blocks.pop()
            face_mask[fid] &= ~kb
        last = blk[top - 1]
        for c in range(last + 1, hi + 1):
            ab = 1 << ablock[c]
            if mask & ab:
                continue
            g = state["face_top"]
            face_mask[g] = 1 << kblock[last]
            gapface[top] = g
            state["face_top"] = g + 1
            blk[top] = c
            state["blk_top"] = top + 1
            yield from rec_block(segs, lo, hi, fid, m + 1, mask | ab)
            state["blk_top"] = top
            state["face_top"] = g

    yield from rec_stack([(0, n - 1, 0)])


def loop_table(n, perms):
    """Loop-count tally over all ordered pairs of the given permutations
    (0-based one-line words).  Returns counts indexed by loop count k."""
    counts = [0] * (n + 1)
    m = len(perms)
    invs = []
    for w in perms:
        inv = [0] * n
        for i, v in enumerate(w):
            inv[v] = i
        invs.append(inv)
    stamp = [0] * n
    ctr = 0
    rng = range(n)
    for i in range(m):
        pw = perms[i]
        for j in range(i, m):
            qinv = invs[j]
            ctr += 1
            cycles = 0
            for s in rng:
                if stamp[s] != ctr:
                    cycles += 1
                    t = s
                    while stamp[t] != ctr:
                        stamp[t] = ctr
                        t = pw[qinv[t]]
            counts[cycles] += 1 if i == j else 2
    return counts
