# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the _kernels_py permutation loops.

Same functions, same semantics, same list-in/list-out interface; the
cross-backend tests hold the two implementations to identical outputs.
Callers clamp label integers into [-1, n], so C int arithmetic is safe.
"""

from cpython cimport array

import array as _array

BACKEND_NAME = "compiled"

cdef array.array _INT_TEMPLATE = _array.array("i", [])


def lehmer_encode(seq):
    """Rank-among-remaining codes; seq must be a permutation of 0..n-1."""
    cdef int n = len(seq)
    cdef array.array values = _array.array("i", seq)
    cdef array.array out = array.clone(_INT_TEMPLATE, n, zero=False)
    cdef int[::1] v = values
    cdef int[::1] o = out
    cdef int i, j, c
    for i in range(n):
        c = 0
        for j in range(i + 1, n):
            if v[j] < v[i]:
                c += 1
        o[i] = c
    return out.tolist()


def lehmer_decode(codes, n):
    """Each code picks the code-th smallest unused value; out of range
    picks the largest unused value.  Total."""
    cdef int size = n
    cdef array.array carr = _array.array("i", codes)
    cdef array.array out = array.clone(_INT_TEMPLATE, len(codes), zero=False)
    cdef array.array used_arr = array.clone(_INT_TEMPLATE, size, zero=True)
    cdef int[::1] cs = carr
    cdef int[::1] o = out
    cdef int[::1] used = used_arr
    cdef int m = len(codes)
    cdef int left = size
    cdef int i, c, k, pick
    for i in range(m):
        c = cs[i]
        pick = -1
        if 0 <= c < left:
            k = -1
            for pick in range(size):
                if not used[pick]:
                    k += 1
                    if k == c:
                        break
        else:
            for pick in range(size - 1, -1, -1):
                if not used[pick]:
                    break
        if pick >= 0 and left > 0:
            used[pick] = 1
            left -= 1
            o[i] = pick
        else:
            o[i] = 0
    return out.tolist()


def absrel_decode(targets, is_inv, forced):
    """Seat tokens at distinct ranks; see the pure version for the rules."""
    cdef int n = len(targets)
    cdef array.array tarr = _array.array("i", targets)
    cdef array.array iarr = _array.array("i", is_inv)
    cdef array.array pos_arr = array.clone(_INT_TEMPLATE, n, zero=False)
    cdef array.array taken_arr = array.clone(_INT_TEMPLATE, n, zero=True)
    cdef int[::1] tg = tarr
    cdef int[::1] inv = iarr
    cdef int[::1] pos = pos_arr
    cdef int[::1] taken = taken_arr
    cdef int f = forced
    cdef int last = n - 1
    cdef int i, t, d, cand, r, m
    for i in range(n):
        pos[i] = -1
    for i in range(n):
        if inv[i]:
            t = tg[i]
            if f >= 0 and i != f and t == last:
                continue
            if 0 <= t < n and not taken[t]:
                pos[i] = t
                taken[t] = 1
    for i in range(n):
        if pos[i] >= 0:
            continue
        t = tg[i]
        if t < 0:
            t = 0
        elif t > last:
            t = last
        if taken[t]:
            for d in range(1, n):
                cand = t - d
                if cand >= 0 and not taken[cand]:
                    t = cand
                    break
                cand = t + d
                if cand <= last and not taken[cand]:
                    t = cand
                    break
        pos[i] = t
        taken[t] = 1
    if f >= 0 and n > 0 and pos[f] != last:
        r = pos[f]
        for m in range(n):
            if pos[m] == last:
                pos[f] = last
                pos[m] = r
                break
    return pos_arr.tolist()


def pointer_encode(tau, tag_ids):
    """Anchor search and same-tag counting; see the pure version."""
    cdef int n = len(tau)
    cdef array.array tarr = _array.array("i", tau)
    cdef array.array garr = _array.array("i", tag_ids)
    cdef array.array js_arr = array.clone(_INT_TEMPLATE, n, zero=True)
    cdef array.array pr_arr = array.clone(_INT_TEMPLATE, n, zero=False)
    cdef int[::1] t = tarr
    cdef int[::1] g = garr
    cdef int[::1] js = js_arr
    cdef int[::1] preds = pr_arr
    cdef int i, m, best, k, tag, count
    for i in range(n):
        best = -1
        k = -1
        for m in range(i):
            if t[m] < t[i] and t[m] > best:
                best = t[m]
                k = m
        preds[i] = k
        if k < 0 or k == i - 1:
            js[i] = 0
        else:
            tag = g[k]
            count = 0
            for m in range(k, i):
                if g[m] == tag:
                    count += 1
            js[i] = count
    return js_arr.tolist(), pr_arr.tolist()


def pointer_decode(js, label_tids, token_tids):
    """Insertion decoding with the earliest-same-tag fallback; total."""
    cdef int n = len(js)
    cdef array.array jarr = _array.array("i", js)
    cdef array.array larr = _array.array("i", label_tids)
    cdef array.array karr = _array.array("i", token_tids)
    cdef array.array order_arr = array.clone(_INT_TEMPLATE, n if n else 1, zero=True)
    cdef array.array pos_arr = array.clone(_INT_TEMPLATE, n if n else 1, zero=True)
    cdef int[::1] j_ = jarr
    cdef int[::1] ltag = larr
    cdef int[::1] ktag = karr
    cdef int[::1] order = order_arr
    cdef int[::1] pos = pos_arr
    cdef int filled = 0
    cdef int anchor = -1
    cdef int i, j, target, tag, found, first, count, m, q
    for i in range(n):
        j = j_[i]
        target = anchor
        if j > 0:
            tag = ltag[i]
            found = -1
            first = -1
            count = 0
            for m in range(i - 1, -1, -1):
                if ktag[m] == tag:
                    count += 1
                    first = m
                    if count == j:
                        found = m
                        break
            if found >= 0:
                target = found
            elif first >= 0:
                target = first
        if target < 0:
            q = 0
        else:
            q = 0
            for m in range(filled):
                if order[m] == target:
                    q = m + 1
                    break
        for m in range(filled, q, -1):
            order[m] = order[m - 1]
        order[q] = i
        filled += 1
        anchor = i
    if n == 0:
        return []
    for m in range(n):
        pos[order[m]] = m
    return pos_arr.tolist()
