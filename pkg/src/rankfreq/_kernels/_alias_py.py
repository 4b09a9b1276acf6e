"""Pure numpy alias-table kernels.

Mirrors the compiled kernel operation for operation (same arithmetic, same
stack order, same uniform consumption) so both backends produce bit-identical
samples from the same random stream.
"""

from __future__ import annotations

import numpy as np


def build_tables(probs: np.ndarray):
    """Vose O(K) construction of the (prob, alias) tables."""
    k = probs.shape[0]
    prob = np.empty(k, dtype=np.float64)
    alias = np.zeros(k, dtype=np.int64)
    scaled = (probs * k).tolist()
    small, large = [], []
    for i in range(k):
        if scaled[i] < 1.0:
            small.append(i)
        else:
            large.append(i)
    while small and large:
        s = small.pop()
        l = large.pop()
        prob[s] = scaled[s]
        alias[s] = l
        scaled[l] = (scaled[l] + scaled[s]) - 1.0
        if scaled[l] < 1.0:
            small.append(l)
        else:
            large.append(l)
    # leftovers sit within roundoff of 1
    while large:
        prob[large.pop()] = 1.0
    while small:
        prob[small.pop()] = 1.0
    return prob, alias


def draw_into(prob, alias, u_cat, u_mix, counts):
    """Accumulate category counts for one batch of uniform pairs."""
    k = prob.shape[0]
    j = (u_cat * k).astype(np.int64)
    np.minimum(j, k - 1, out=j)  # u_cat*k can round up to k at the top of [0,1)
    chosen = np.where(u_mix < prob[j], j, alias[j])
    counts += np.bincount(chosen, minlength=k)
