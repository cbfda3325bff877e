"""Redundancy via an auxiliary function of the sources.

Maximises the coinformation of (collection elements; target; f(sources))
over deterministic functions f.  Codomain relabelling leaves coinformation
unchanged, so functions are enumerated as set partitions of the joint-source
support; small supports are exhausted, larger ones fall back to a seeded
random search whose result is flagged approximate.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..dist import SystemSpec
from ..lattice import Antichain
from .base import (
    MeasureDescriptor,
    OptimizerReport,
    node_var_groups,
    register,
)
from .common import _stable_seed, set_partitions

RAV_EXHAUSTIVE_MAX_CELLS = 10
RAV_MAX_CELLS = 16
RAV_RANDOM_TRIES = 3000


class _CoiMachine:
    """Vectorised coinformation of (blocks..., target, F) as a function of
    the partition labelling of the joint-source support."""

    def __init__(self, s: SystemSpec, groups):
        union = tuple(sorted(set(itertools.chain.from_iterable(groups))))
        self.cells = sorted(s.dist.exact_marginal(union))
        cell_idx = {c: i for i, c in enumerate(self.cells)}
        support = list(s.dist.pmf.items())
        self.probs = np.array([float(p) for o, p in support])
        pos = {v: k for k, v in enumerate(union)}
        self.cellarr = np.array(
            [cell_idx[tuple(o[i] for i in union)] for o, _ in support]
        )
        blocks = [tuple(g) for g in groups] + [tuple(s.target)]
        self.n_blocks = len(blocks)
        # keys per nonempty subset of the fixed blocks
        self.subset_keys = {}
        self.const_part = 0.0
        for r in range(0, self.n_blocks + 1):
            for combo in itertools.combinations(range(self.n_blocks), r):
                vars_ = tuple(
                    sorted(set(itertools.chain.from_iterable(blocks[i] for i in combo)))
                )
                outs = {}
                keys = np.empty(len(support), dtype=np.int64)
                for k, (o, _) in enumerate(support):
                    key = tuple(o[i] for i in vars_)
                    keys[k] = outs.setdefault(key, len(outs))
                sign = (-1) ** (len(combo) + 1)
                if combo:
                    self.const_part += sign * self._entropy(keys, len(outs))
                # subsets including F flip sign (|T|+1 more element)
                self.subset_keys[combo] = (keys, len(outs), -sign)

    def _entropy(self, keys, n, labels=None, n_labels=1):
        if labels is None:
            w = np.bincount(keys, weights=self.probs, minlength=n)
        else:
            w = np.bincount(
                keys * n_labels + labels, weights=self.probs, minlength=n * n_labels
            )
        w = w[w > 0]
        return float(-(w * np.log2(w)).sum())

    def coinformation(self, cell_labels: np.ndarray) -> float:
        labels = cell_labels[self.cellarr]
        n_labels = int(cell_labels.max()) + 1
        total = self.const_part
        for keys, n, sign in self.subset_keys.values():
            total += sign * self._entropy(keys, n, labels, n_labels)
        return total

    @property
    def n_cells(self):
        return len(self.cells)


def i_rav(s: SystemSpec, node: Antichain):
    """Auxiliary-variable redundancy at a lattice node.

    Raises ValueError when the joint source support exceeds the brute-force
    bound; reports approximate=True when the random-search fallback was used.
    """
    groups = node_var_groups(s, node)
    machine = _CoiMachine(s, groups)
    n = machine.n_cells
    if n > RAV_MAX_CELLS:
        raise ValueError(
            f"rav brute force bounded at {RAV_MAX_CELLS} joint-source outcomes (got {n})"
        )
    best = 0.0
    evaluated = 0
    approximate = False
    if n <= RAV_EXHAUSTIVE_MAX_CELLS:
        for labels in set_partitions(n):
            val = machine.coinformation(np.array(labels))
            evaluated += 1
            if val > best:
                best = val
    else:
        approximate = True
        rng = np.random.default_rng(_stable_seed(s, node))
        # identity and projections first, then random labellings with local moves
        seeds = [np.arange(n), np.zeros(n, dtype=int)]
        for labels in seeds:
            val = machine.coinformation(labels)
            evaluated += 1
            best = max(best, val)
        for _ in range(RAV_RANDOM_TRIES):
            labels = rng.integers(0, n, size=n)
            val = machine.coinformation(labels)
            evaluated += 1
            if val > best:
                best = val
        # greedy refinement from the identity labelling
        labels = np.arange(n)
        improved = True
        while improved:
            improved = False
            for i in range(n):
                orig = labels[i]
                for l in range(n):
                    if l == orig:
                        continue
                    labels[i] = l
                    val = machine.coinformation(labels)
                    evaluated += 1
                    if val > best + 1e-12:
                        best = val
                        orig = l
                        improved = True
                labels[i] = orig
    report = OptimizerReport(best, evaluated, 0.0, 0, approximate)
    return best, report


register(
    MeasureDescriptor("rav", "auxiliary-variable coinformation", 3, needs_optimizer=True),
    i_rav,
)
