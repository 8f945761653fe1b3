"""Fixed-order pairwise reduction shared by all quadrature code."""

import numpy as np


def pairwise_sum(values) -> np.ndarray:
    """Sum along axis 0 with a fixed binary tree.

    The tree depends only on the length, so results are bit-identical
    across runs and thread counts.
    """
    v = np.asarray(values)
    if v.shape[0] == 0:
        return np.zeros(v.shape[1:], dtype=v.dtype)
    while v.shape[0] > 1:
        if v.shape[0] % 2:
            tail = v[-1:]
            v = np.concatenate([v[0:-1:2] + v[1::2], tail])
        else:
            v = v[0::2] + v[1::2]
    return v[0]


def combine(weights, vectors) -> np.ndarray:
    """``sum_k weights[..., k] * vectors[k]`` in increasing ``k`` order.

    Used instead of ``@`` so that no BLAS reduction order is involved.
    """
    weights = np.asarray(weights)
    vectors = np.asarray(vectors)
    out = np.zeros(weights.shape[:-1] + vectors.shape[1:], dtype=np.result_type(weights, vectors))
    extra = (None,) * (vectors.ndim - 1)
    for k in range(vectors.shape[0]):
        out = out + weights[(..., k) + extra] * vectors[k]
    return out
