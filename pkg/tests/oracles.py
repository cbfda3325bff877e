"""Independent brute-force oracles kept deliberately separate from the
implementation paths they check."""

import itertools
from fractions import Fraction

import numpy as np


def broja_grid_min_mi(s, step=1e-3):
    """Exhaustive grid minimisation of I_Q(X1,X2;Y) over the two-marginal
    polytope for systems with binary single-variable sources.

    Per target outcome the coupling has one free coordinate; the grid scans
    all coordinates jointly with resolution `step`.
    """
    d = s.dist
    (g1,), (g2,) = s.source_groups
    y_vars = s.target
    assert d.variables[g1].cardinality == 2 and d.variables[g2].cardinality == 2
    py = d.exact_marginal(y_vars)
    ys = sorted(py)
    p1 = d.exact_marginal((g1,) + y_vars)
    p2 = d.exact_marginal((g2,) + y_vars)
    # per-y coupling: q_y(a,b) = base + t_y * [[1,-1],[-1,1]] with bounds
    bases, lows, highs = [], [], []
    for y in ys:
        m1 = [float(p1.get((a,) + y, 0)) / float(py[y]) for a in (0, 1)]
        m2 = [float(p2.get((b,) + y, 0)) / float(py[y]) for b in (0, 1)]
        base = np.outer(m1, m2)
        lo = -min(base[0, 0], base[1, 1])
        hi = min(base[0, 1], base[1, 0])
        bases.append(base)
        lows.append(lo)
        highs.append(hi)
    axes = [
        np.linspace(lo, hi, int(np.ceil((hi - lo) / step)) + 1)
        if hi > lo
        else np.array([0.0])
        for lo, hi in zip(lows, highs)
    ]
    pyf = np.array([float(py[y]) for y in ys])
    grids = np.meshgrid(*axes, indexing="ij")
    ts = np.stack([g.ravel() for g in grids], axis=-1)  # (N, ny)
    sign = np.array([[1.0, -1.0], [-1.0, 1.0]])
    # q[n, y, a, b]
    q = np.stack(
        [bases[j] + ts[:, j, None, None] * sign for j in range(len(ys))], axis=1
    )
    q = np.clip(q, 0.0, None)
    joint = q * pyf[None, :, None, None]
    m = joint.sum(axis=1)  # (N, a, b)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = joint / (m[:, None, :, :] * pyf[None, :, None, None])
        terms = np.where(joint > 0, joint * np.log2(ratio), 0.0)
    return float(terms.sum(axis=(1, 2, 3)).min())


def coinformation_exhaustive(arr, blocks):
    """Coinformation from a dense array via the alternating entropy sum."""
    def h(sub):
        axes = tuple(i for i in range(arr.ndim) if i not in sub)
        m = arr.sum(axis=axes) if axes else arr
        m = m[m > 0]
        return float(-(m * np.log2(m)).sum())

    total = 0.0
    for r in range(1, len(blocks) + 1):
        for combo in itertools.combinations(blocks, r):
            sub = tuple(sorted(set(itertools.chain.from_iterable(combo))))
            total += (-1) ** (r + 1) * h(sub)
    return total
