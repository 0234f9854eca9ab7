"""Compiled inner loops for the brute-force oracle.

Field elements are packed ints.  When the field carries full q x q
tables (use_table) multiplication and addition are single lookups;
otherwise multiplication goes through log/exp and addition through a
digit loop.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _tmul(a, b, mult, use_table, log, exp, qm1):
    if use_table:
        return mult[a, b]
    return _fmul(a, b, log, exp, qm1)


@njit(cache=True)
def _fmul(a, b, log, exp, qm1):
    if a == 0 or b == 0:
        return 0
    e = log[a] + log[b]
    if e >= qm1:
        e -= qm1
    return exp[e]


@njit(cache=True)
def _fadd(a, b, addt, use_table, p, s):
    if s == 1:
        r = a + b
        return r - p if r >= p else r
    if use_table:
        return addt[a, b]
    out = 0
    w = 1
    for _ in range(s):
        d = a % p + b % p
        if d >= p:
            d -= p
        out += d * w
        w *= p
        a //= p
        b //= p
    return out


@njit(cache=True)
def _ext_mul(x1, y1, x2, y2, bb, mult, addt, use_table, log, exp, qm1, p, s):
    x = _fadd(
        _tmul(x1, x2, mult, use_table, log, exp, qm1),
        _tmul(bb, _tmul(y1, y2, mult, use_table, log, exp, qm1), mult, use_table, log, exp, qm1),
        addt, use_table, p, s,
    )
    y = _fadd(
        _tmul(x1, y2, mult, use_table, log, exp, qm1),
        _tmul(x2, y1, mult, use_table, log, exp, qm1),
        addt, use_table, p, s,
    )
    return x, y


@njit(cache=True)
def frob_diff_power(q, e, bb, neg, mult, addt, use_table, log, exp, p, s):
    """Per node X = <x, y>: (X^q - X)**e, returned as two coordinate arrays."""
    N = q * q
    qm1 = q - 1
    wx = np.empty(N, np.int64)
    wy = np.empty(N, np.int64)
    for i in range(N):
        y = i % q
        # X^q - X = <0, -2y>
        dy = _fadd(neg[y], neg[y], addt, use_table, p, s)
        rx, ry = 1, 0
        bx, by = 0, dy
        k = e
        while k > 0:
            if k & 1:
                rx, ry = _ext_mul(rx, ry, bx, by, bb, mult, addt, use_table, log, exp, qm1, p, s)
            bx, by = _ext_mul(bx, by, bx, by, bb, mult, addt, use_table, log, exp, qm1, p, s)
            k >>= 1
        wx[i] = rx
        wy[i] = ry
    return wx, wy


@njit(cache=True)
def direct_successors(q, a, c, bb, wx, wy, neg, mult, addt, use_table, log, exp, p, s):
    """succ[i] from (c X^q + a X) * W with W = (X^q - X)^(n-1) precomputed."""
    qm1 = q - 1
    out = np.empty(q * q, np.int64)
    if use_table:
        return _direct_tabled(q, a, c, bb, wx, wy, neg, mult, addt, out)
    i = 0
    for x in range(q):
        cx = _tmul(c, x, mult, use_table, log, exp, qm1)
        ax = _tmul(a, x, mult, use_table, log, exp, qm1)
        vx = _fadd(cx, ax, addt, use_table, p, s)
        for y in range(q):
            # c * <x, -y> + a * <x, y>
            vy = _fadd(
                _tmul(c, neg[y], mult, use_table, log, exp, qm1),
                _tmul(a, y, mult, use_table, log, exp, qm1),
                addt, use_table, p, s,
            )
            fx, fy = _ext_mul(vx, vy, wx[i], wy[i], bb, mult, addt, use_table, log, exp, qm1, p, s)
            out[i] = fx * q + fy
            i += 1
    return out


@njit(cache=True)
def _direct_tabled(q, a, c, bb, wx, wy, neg, mult2, addt2, out):
    # same computation as the generic loop, with every operation a lookup
    # into the flattened tables (cheaper than 2-D indexing); the y-only
    # factors vy and b*vy are hoisted out of the node loop
    mult = mult2.ravel()
    addt = addt2.ravel()
    vy = np.empty(q, np.int64)
    bvy = np.empty(q, np.int64)
    for y in range(q):
        vy[y] = addt[mult[c * q + neg[y]] * q + mult[a * q + y]]
        bvy[y] = mult[bb * q + vy[y]] * q
    i = 0
    for x in range(q):
        vx = addt[mult[c * q + x] * q + mult[a * q + x]]
        row = vx * q
        for y in range(q):
            u = wx[i]
            v = wy[i]
            fx = addt[mult[row + u] * q + mult[bvy[y] + v]]
            fy = addt[mult[row + v] * q + mult[u * q + vy[y]]]
            out[i] = fx * q + fy
            i += 1
    return out


@njit(cache=True)
def coord_successors(q, first_y, second_y, odd, mult, use_table, log, exp):
    """Even n: <first_y[y], second_y[y]*x>.  Odd n: <first_y[y]*x, second_y[y]>."""
    qm1 = q - 1
    out = np.empty(q * q, np.int64)
    for x in range(q):
        for y in range(q):
            if odd:
                out[x * q + y] = _tmul(first_y[y], x, mult, use_table, log, exp, qm1) * q + second_y[y]
            else:
                out[x * q + y] = first_y[y] * q + _tmul(second_y[y], x, mult, use_table, log, exp, qm1)
    return out


@njit(cache=True)
def walk_into(succ, state, cyc_len, cyc_id, stack):
    """Three-state iterative walk over a functional graph, into given buffers.

    On return cyc_len > 0 only on cyclic nodes and cyc_id is the least node
    index on the node's eventual cycle.
    """
    N = succ.size
    for i in range(N):
        state[i] = 0
        cyc_len[i] = 0
    for start in range(N):
        if state[start] != 0:
            continue
        top = 0
        v = start
        while state[v] == 0:
            state[v] = 1
            stack[top] = v
            top += 1
            v = succ[v]
        if state[v] == 1:
            length = 1
            least = v
            u = succ[v]
            while u != v:
                length += 1
                if u < least:
                    least = u
                u = succ[u]
            u = v
            for _ in range(length):
                cyc_len[u] = length
                cyc_id[u] = least
                state[u] = 2
                u = succ[u]
        while top > 0:
            top -= 1
            w = stack[top]
            if state[w] == 2:
                continue
            nxt = succ[w]
            cyc_id[w] = cyc_id[nxt]
            state[w] = 2


@njit(cache=True)
def walk(succ):
    N = succ.size
    state = np.empty(N, np.int8)
    cyc_len = np.empty(N, np.int64)
    cyc_id = np.empty(N, np.int64)
    stack = np.empty(N, np.int64)
    walk_into(succ, state, cyc_len, cyc_id, stack)
    return cyc_len, cyc_id


@njit(cache=True)
def _seq_hash(seq, st, k):
    h = k * 0x9E3779B1 + 1
    for i in range(st, st + k):
        h = (h ^ seq[i]) * 0x100000001B3
        h ^= h >> 29
    return h


@njit(cache=True)
def _rehash(table, cap, start, length, buf, nlab):
    mask = cap - 1
    for i in range(cap):
        table[i] = -1
    for lab in range(nlab):
        slot = _seq_hash(buf, start[lab], length[lab]) & mask
        while table[slot] != -1:
            slot = (slot + 1) & mask
        table[slot] = lab


@njit(cache=True)
def analyze_into(succ, pending, head, nxt, sub, cyc_len, table, start, length, buf,
                 label, scratch, mark, deghist, lens, sizes):
    """One pass of cycle finding, subtree interning and summary counts.

    Leaves are peeled Kahn-style: once every predecessor of a node is
    labelled, the node gets the AHU label of its sorted child-label sequence
    and is released to its successor.  Nodes never released are exactly the
    cyclic ones.  Released children are chained per parent through head/nxt,
    so no predecessor index is built.

    Two nodes share a label iff their subtrees of non-periodic predecessors
    are isomorphic rooted trees; label l has child labels
    buf[start[l]:start[l] + length[l]], label 0 is the bare leaf, and labels
    are numbered children-first.

    Outputs: cyc_len (0 off cycles), label, per-cycle lens and component
    sizes ordered by least node, label multiplicities over nonzero cyclic
    nodes in mark, in-degree histogram over nonzero nodes in deghist.
    Returns (number of labels, number of cycles).
    """
    N = succ.size
    for v in range(N):
        pending[v] = 0
        head[v] = -1
        sub[v] = 1
        cyc_len[v] = 0
        label[v] = -1
    for u in range(N):
        pending[succ[u]] += 1
    for i in range(N + 1):
        deghist[i] = 0
    for v in range(1, N):
        deghist[pending[v]] += 1

    # distinct labels are few, so the open-addressing table starts small
    # (staying in cache) and doubles whenever it gets half full
    cap = min(256, table.size)
    mask = cap - 1
    for i in range(cap):
        table[i] = -1
    # the empty sequence hashes to slot 1 and is the leaf label
    start[0] = 0
    length[0] = 0
    table[1 & mask] = 0
    nlab = 1
    bufpos = 0

    # phase 0 peels from every leaf; phase 1 labels the cyclic nodes, whose
    # chains then hold exactly their non-periodic predecessors
    for phase in range(2):
        for v in range(N):
            if phase == 0:
                if pending[v] != 0 or label[v] != -1:
                    continue
                u = v
            else:
                if pending[v] == 0:
                    continue
                u = v
            while True:
                k = 0
                w = head[u]
                while w != -1:
                    scratch[k] = label[w]
                    k += 1
                    w = nxt[w]
                if k > 32:
                    scratch[:k].sort()
                else:
                    for i in range(1, k):
                        x = scratch[i]
                        j = i - 1
                        while j >= 0 and scratch[j] > x:
                            scratch[j + 1] = scratch[j]
                            j -= 1
                        scratch[j + 1] = x
                h = _seq_hash(scratch, 0, k)
                slot = h & mask
                while True:
                    lab = table[slot]
                    if lab == -1:
                        lab = nlab
                        table[slot] = lab
                        start[lab] = bufpos
                        length[lab] = k
                        for i in range(k):
                            buf[bufpos + i] = scratch[i]
                        nlab += 1
                        bufpos += k
                        if 2 * nlab > cap and cap < table.size:
                            cap *= 2
                            mask = cap - 1
                            _rehash(table, cap, start, length, buf, nlab)
                        break
                    if length[lab] == k:
                        st = start[lab]
                        same = True
                        for i in range(k):
                            if buf[st + i] != scratch[i]:
                                same = False
                                break
                        if same:
                            break
                    slot = (slot + 1) & mask
                label[u] = lab
                if phase == 1:
                    break
                w = succ[u]
                sub[w] += sub[u]
                nxt[u] = head[w]
                head[w] = u
                pending[w] -= 1
                if pending[w] != 0:
                    break
                u = w

    for i in range(nlab):
        mark[i] = 0
    ncyc = 0
    for v in range(N):
        if pending[v] == 0 or cyc_len[v] != 0:
            continue
        # v is the least node of a cycle not yet seen
        L = 1
        total = sub[v]
        u = succ[v]
        while u != v:
            L += 1
            total += sub[u]
            u = succ[u]
        for _ in range(L):
            cyc_len[u] = L
            if u != 0:
                mark[label[u]] += 1
            u = succ[u]
        lens[ncyc] = L
        sizes[ncyc] = total
        ncyc += 1
    return nlab, ncyc
