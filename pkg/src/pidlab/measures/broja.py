"""BROJA redundancy via convex optimisation.

Over the polytope of joints that preserve both (source, target) marginals,
the per-source informations are fixed, so maximising coinformation is the
same as minimising I_Q(X1,X2;Y).  That program is convex; it is solved as an
exponential-cone program, with a closed-form shortcut when the marginal
constraints pin the joint completely.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from ..dist import JointDistribution, SystemSpec, mutual_information
from ..lattice import Antichain
from .base import (
    MeasureDescriptor,
    OptimizerReport,
    SolverFailure,
    canonical_system,
    node_var_groups,
    register,
)
from .simple import _require_bottom_pair

OBJECTIVE_TOL = 1e-7


def _marginal_tables(s: SystemSpec, g1, g2):
    d = s.dist
    p1 = d.exact_marginal(g1 + s.target)
    p2 = d.exact_marginal(g2 + s.target)
    py = d.exact_marginal(s.target)
    n1, n2 = len(g1), len(g2)
    x1s = sorted({k[:n1] for k in p1})
    x2s = sorted({k[:n2] for k in p2})
    ys = sorted(py)
    return p1, p2, py, x1s, x2s, ys


def _pinned_joint(p1, p2, py, x1s, x2s, ys, n1, n2):
    """If every per-target slice has a deterministic side, the feasible set
    is the single conditional-product joint; returns it or None."""
    for y in ys:
        s1 = [x for x in x1s if p1.get(x + y, 0) > 0]
        s2 = [x for x in x2s if p2.get(x + y, 0) > 0]
        if len(s1) > 1 and len(s2) > 1:
            return None
    cells = {}
    for y in ys:
        for x1 in x1s:
            a = p1.get(x1 + y, Fraction(0))
            if a == 0:
                continue
            for x2 in x2s:
                b = p2.get(x2 + y, Fraction(0))
                if b == 0:
                    continue
                cells[(x1, x2, y)] = a * b / py[y]
    return cells


def min_joint_target_mi(s: SystemSpec, g1, g2):
    """min over the marginal-preserving polytope of I_Q(X1,X2;Y), in bits.

    Returns (value, OptimizerReport).
    """
    import cvxpy as cp

    p1, p2, py, x1s, x2s, ys = _marginal_tables(s, g1, g2)
    n1, n2 = len(g1), len(g2)
    pinned = _pinned_joint(p1, p2, py, x1s, x2s, ys, n1, n2)
    if pinned is not None:
        total = 0.0
        m = {}
        for (x1, x2, y), v in pinned.items():
            m[(x1, x2)] = m.get((x1, x2), Fraction(0)) + v
        for (x1, x2, y), v in pinned.items():
            total += float(v) * math.log2(v / (m[(x1, x2)] * py[y]))
        return total, OptimizerReport(total, 0, 0.0, 0)
    cells = [
        (x1, x2, y)
        for x1, x2, y in itertools.product(x1s, x2s, ys)
        if p1.get(x1 + y, 0) > 0 and p2.get(x2 + y, 0) > 0
    ]
    index = {c: i for i, c in enumerate(cells)}
    q = cp.Variable(len(cells), nonneg=True)
    constraints = []
    for x1, y in itertools.product(x1s, ys):
        idx = [index[(x1, x2, y)] for x2 in x2s if (x1, x2, y) in index]
        target = float(p1.get(x1 + y, 0))
        if idx:
            constraints.append(cp.sum(q[idx]) == target)
    for x2, y in itertools.product(x2s, ys):
        idx = [index[(x1, x2, y)] for x1 in x1s if (x1, x2, y) in index]
        target = float(p2.get(x2 + y, 0))
        if idx:
            constraints.append(cp.sum(q[idx]) == target)
    terms = []
    for x1, x2 in itertools.product(x1s, x2s):
        idx = [index[(x1, x2, y)] for y in ys if (x1, x2, y) in index]
        if not idx:
            continue
        m = cp.sum(q[idx])
        for y in ys:
            i = index.get((x1, x2, y))
            if i is not None:
                terms.append(cp.rel_entr(q[i], m * float(py[y])))
    problem = cp.Problem(cp.Minimize(cp.sum(cp.hstack(terms))), constraints)
    value = None
    for solver in ("CLARABEL", "SCS"):
        try:
            problem.solve(solver=solver)
        except cp.SolverError:
            continue
        if problem.status in ("optimal", "optimal_inaccurate"):
            value = problem.value / math.log(2)
            break
    if value is None:
        raise SolverFailure(f"broja cone program failed: status {problem.status}")
    qv = np.maximum(np.asarray(q.value), 0.0)
    residual = 0.0
    for x1, y in itertools.product(x1s, ys):
        idx = [index[(x1, x2, y)] for x2 in x2s if (x1, x2, y) in index]
        residual = max(residual, abs(qv[idx].sum() - float(p1.get(x1 + y, 0))))
    for x2, y in itertools.product(x2s, ys):
        idx = [index[(x1, x2, y)] for x1 in x1s if (x1, x2, y) in index]
        residual = max(residual, abs(qv[idx].sum() - float(p2.get(x2 + y, 0))))
    iters = problem.solver_stats.num_iters or 0
    return value, OptimizerReport(value, iters, residual, 0)


def i_broja(s: SystemSpec, node: Antichain):
    """BROJA redundancy: I(X1;Y) + I(X2;Y) - min I_Q(X1,X2;Y) over the
    pairwise-marginal polytope."""
    (g1, g2) = _require_bottom_pair(s, node, "broja")
    cs = canonical_system(s)
    g1c, g2c = node_var_groups(cs, node)
    mi_min, report = min_joint_target_mi(cs, g1c, g2c)
    d = cs.dist
    red = (
        mutual_information(d, g1c, cs.target)
        + mutual_information(d, g2c, cs.target)
        - mi_min
    )
    return red, report


register(
    MeasureDescriptor("broja", "constrained-optimisation redundancy", 2, needs_optimizer=True),
    i_broja,
)
