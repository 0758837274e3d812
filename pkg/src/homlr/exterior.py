"""Index bookkeeping for exterior powers of a based vector space."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from homlr.linalg import ZERO


@lru_cache(maxsize=None)
def subsets(r: int, n: int) -> tuple:
    """Strictly increasing n-tuples from range(r), in lexicographic order."""
    return tuple(combinations(range(r), n))


@lru_cache(maxsize=None)
def subset_index(r: int, n: int) -> dict:
    return {I: k for k, I in enumerate(subsets(r, n))}


def sort_sign(seq):
    """(sign, sorted tuple) of a sequence of distinct indices; sign 0 on a repeat."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, None
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def merge_sign(I, J):
    """Sign of e_I ^ e_J = sign * e_{I u J}; 0 when they overlap."""
    s, K = sort_sign(tuple(I) + tuple(J))
    return s, K


def wedge(vectors) -> dict:
    """Coordinates {I: c} of v_1 ^ ... ^ v_n on the basis e_I, I increasing."""
    cur = {(): 1}
    for v in vectors:
        nz = [(i, a) for i, a in enumerate(v) if a]
        nxt = {}
        for I, c in cur.items():
            for i, a in nz:
                if i in I:
                    continue
                # e_I ^ e_i: move e_i left past the entries of I larger than i
                pos = sum(1 for t in I if t < i)
                sign = -1 if (len(I) - pos) % 2 else 1
                K = I[:pos] + (i,) + I[pos:]
                val = nxt.get(K, ZERO) + sign * c * a
                if val:
                    nxt[K] = val
                else:
                    nxt.pop(K, None)
        cur = nxt
        if not cur:
            break
    return cur


def wedge_vector(vectors, r: int) -> tuple:
    n = len(vectors)
    idx = subset_index(r, n)
    out = [ZERO] * len(idx)
    for I, c in wedge(vectors).items():
        out[idx[I]] = c
    return tuple(out)
