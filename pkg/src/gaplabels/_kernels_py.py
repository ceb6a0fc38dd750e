"""Pure-Python implementations of the permutation codec inner loops.

gaplabels._kernels (a compiled extension) provides the same functions
with identical semantics; _backend picks whichever is available.  All
functions take and return plain lists of ints so the two backends stay
interchangeable.

Decoders here are total: any integer input produces a valid
permutation, applying the documented repairs for unusable values.
"""

from bisect import bisect_left, insort

BACKEND_NAME = "pure"


def lehmer_encode(seq):
    """Rank-among-remaining codes for a permutation sequence.

    code[i] is the rank of seq[i] among the values not consumed by
    seq[:i].  seq must be a permutation of 0..n-1.
    """
    remaining = sorted(seq)
    codes = []
    for v in seq:
        k = bisect_left(remaining, v)
        codes.append(k)
        remaining.pop(k)
    return codes


def lehmer_decode(codes, n):
    """Inverse of lehmer_encode; total.

    Each code picks the code-th smallest unused value of 0..n-1.  A
    code outside [0, len(remaining)) picks the largest unused value.
    """
    remaining = list(range(n))
    out = []
    for c in codes:
        if 0 <= c < len(remaining):
            out.append(remaining.pop(c))
        else:
            out.append(remaining.pop())
    return out


def absrel_decode(targets, is_inv, forced):
    """Assign each token a distinct rank, honoring targets where possible.

    targets[i] is the rank token i asks for (for "stay in place"
    tokens, i itself); is_inv[i] flags those tokens, which are seated
    first, except that none of them may claim the last rank while
    forced >= 0 names a different token.  Remaining tokens are seated
    left to right: each takes its target if free, otherwise the
    nearest free rank (ties to the smaller).  A final swap puts the
    forced token in the last rank.  Returns the rank list; always a
    permutation.
    """
    n = len(targets)
    pos = [-1] * n
    taken = [False] * n
    last = n - 1
    # Stay-in-place tokens first.
    for i in range(n):
        if is_inv[i]:
            t = targets[i]
            if forced >= 0 and i != forced and t == last:
                continue
            if 0 <= t < n and not taken[t]:
                pos[i] = t
                taken[t] = True
    free = [r for r in range(n) if not taken[r]]
    for i in range(n):
        if pos[i] >= 0:
            continue
        t = targets[i]
        if 0 <= t < n and not taken[t]:
            k = bisect_left(free, t)
            free.pop(k)
        else:
            if t < 0:
                t = 0
            elif t >= n:
                t = n - 1
            k = bisect_left(free, t)
            if k == len(free):
                k -= 1
            elif k > 0 and t - free[k - 1] <= free[k] - t:
                # Prefer the smaller rank on ties.
                k -= 1
            t = free.pop(k)
        pos[i] = t
        taken[t] = True
    if forced >= 0 and pos[forced] != last:
        r = pos[forced]
        m = pos.index(last)
        pos[forced] = last
        pos[m] = r
    return pos


def pointer_encode(tau, tag_ids):
    """Pointer codes for a permutation, given token tag ids.

    For token i, the anchor k is the previous token with the largest
    rank below tau[i].  js[i] is 0 when the anchor is token i-1 (the
    common "right after the previous word" case) and otherwise the
    count of tokens in k..i-1 sharing the anchor's tag; preds[i] is the
    anchor index, -1 when none exists.
    """
    n = len(tau)
    js = [0] * n
    preds = [-1] * n
    for i in range(n):
        best = -1
        k = -1
        for m in range(i):
            if tau[m] < tau[i] and tau[m] > best:
                best = tau[m]
                k = m
        preds[i] = k
        if k < 0 or k == i - 1:
            js[i] = 0
        else:
            tag = tag_ids[k]
            count = 0
            for m in range(k, i):
                if tag_ids[m] == tag:
                    count += 1
            js[i] = count
    return js, preds


def pointer_decode(js, label_tids, token_tids):
    """Rebuild a permutation from pointer codes by repeated insertion; total.

    js[i] == 0 inserts token i right after the most recently inserted
    token.  js[i] = j > 0 looks right-to-left for the j-th earlier
    token whose tag id equals label_tids[i]; if fewer than j exist the
    earliest such token is used, and with none at all the token falls
    back to the j == 0 behavior.
    """
    n = len(js)
    order = []
    anchor = -1
    for i in range(n):
        j = js[i]
        target = anchor
        if j > 0:
            tag = label_tids[i]
            found = -1
            first = -1
            count = 0
            for m in range(i - 1, -1, -1):
                if token_tids[m] == tag:
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
            order.insert(0, i)
        else:
            order.insert(order.index(target) + 1, i)
        anchor = i
    pos = [0] * n
    for rank, tok in enumerate(order):
        pos[tok] = rank
    return pos
