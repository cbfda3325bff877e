"""Common-variable redundancy family.

- wedge: deterministic Gacs-Korner common variable of the collection,
  built from connected components of the support-agreement graph.
- alpha: the relaxed variant, maximising I(Q;Y) subject to Q adding nothing
  to any collection element about the target (I(Q;Y|A) = 0).
- prec: Blackwell redundancy, maximising I(Q;Y) over target-conditional
  families lying in every element's garbling polytope.  The objective is
  convex, so the optimum sits at a polytope vertex; vertices are reached by
  seeded linear programs plus vertex-hopping ascent.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from ..blackwell import blackwell_leq
from ..dist import JointDistribution, SystemSpec, VariableSpec, mutual_information
from ..lattice import Antichain
from .base import (
    MeasureDescriptor,
    OptimizerReport,
    SolverFailure,
    canonical_system,
    node_var_groups,
    register,
)

ALPHA_FEAS_TOL = 1e-11
ALPHA_PARTITION_MAX_CELLS = 9
PREC_VERTEX_SAMPLES = 256
PREC_ASCENT_RESTARTS = 32
PREC_BATCH = 32


def _stable_seed(s: SystemSpec, node: Antichain) -> int:
    text = repr(sorted(s.dist.pmf.items())) + node.label() + repr(s.source_groups)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def gk_labels(s: SystemSpec, groups):
    """Gacs-Korner common-variable labelling of the union-outcome support.

    Two support outcomes of the source union share a label when they agree on
    some collection element; the component label is then a deterministic
    function of each element.  Returns (union_vars, {union_outcome: label}).
    """
    union = tuple(sorted(set(itertools.chain.from_iterable(groups))))
    cells = sorted(s.dist.exact_marginal(union))
    parent = list(range(len(cells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def join(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    pos = {v: k for k, v in enumerate(union)}
    for g in groups:
        byval = {}
        for idx, c in enumerate(cells):
            key = tuple(c[pos[i]] for i in g)
            byval.setdefault(key, []).append(idx)
        for members in byval.values():
            for other in members[1:]:
                join(members[0], other)
    roots = sorted({find(i) for i in range(len(cells))})
    relabel = {r: k for k, r in enumerate(roots)}
    return union, {c: relabel[find(i)] for i, c in enumerate(cells)}


def joint_with_labels(s: SystemSpec, union, labels) -> JointDistribution:
    """Exact joint of (Q, Y) where Q labels the union outcome."""
    pos = {v: k for k, v in enumerate(union)}
    n_labels = max(labels.values()) + 1
    pmf = {}
    for o, p in s.dist.pmf.items():
        q = labels[tuple(o[i] for i in union)]
        y = tuple(o[i] for i in s.target)
        key = (q,) + y
        pmf[key] = pmf.get(key, Fraction(0)) + p
    variables = (VariableSpec("Q", tuple(range(n_labels))),) + tuple(
        s.dist.variables[i] for i in s.target
    )
    return JointDistribution(variables, pmf)


def i_wedge(s: SystemSpec, node: Antichain):
    """Gacs-Korner common-variable redundancy I(Q;Y)."""
    groups = node_var_groups(s, node)
    union, labels = gk_labels(s, groups)
    joint = joint_with_labels(s, union, labels)
    yidx = tuple(range(1, joint.n_vars))
    return mutual_information(joint, (0,), yidx), None


# -- alpha -------------------------------------------------------------------


def _label_arrays(s: SystemSpec, groups):
    """Support-outcome arrays for fast feasibility checks of candidate Q."""
    union = tuple(sorted(set(itertools.chain.from_iterable(groups))))
    cells = sorted(s.dist.exact_marginal(union))
    cell_idx = {c: i for i, c in enumerate(cells)}
    support = list(s.dist.pmf.items())
    probs = np.array([float(p) for _, p in support])
    uni = np.array([cell_idx[tuple(o[i] for i in union)] for o, _ in support])
    ys = sorted({tuple(o[i] for i in s.target) for o, _ in support})
    y_idx = {y: i for i, y in enumerate(ys)}
    yarr = np.array([y_idx[tuple(o[i] for i in s.target)] for o, _ in support])
    garrs = []
    for g in groups:
        gs = sorted({tuple(o[i] for i in g) for o, _ in support})
        g_idx = {a: i for i, a in enumerate(gs)}
        garrs.append(np.array([g_idx[tuple(o[i] for i in g)] for o, _ in support]))
    return cells, probs, uni, yarr, garrs


def _entropy_w(w: np.ndarray) -> float:
    w = w[w > 0]
    return float(-(w * np.log2(w)).sum())


def _mi_counts(w: np.ndarray) -> float:
    # w indexed (a, b)
    return _entropy_w(w.sum(1)) + _entropy_w(w.sum(0)) - _entropy_w(w.ravel())


def _cmi_counts(w: np.ndarray) -> float:
    # I(A;B|C) from weights indexed (a, b, c)
    return (
        _entropy_w(w.sum(1).ravel())
        + _entropy_w(w.sum(0).ravel())
        - _entropy_w(w.ravel())
        - _entropy_w(w.sum((0, 1)))
    )


def set_partitions(n: int):
    """Restricted-growth-string enumeration of set partitions of range(n)."""
    labels = [0] * n

    def rec(i, maxl):
        if i == n:
            yield tuple(labels)
            return
        for l in range(maxl + 2):
            labels[i] = l
            yield from rec(i + 1, max(maxl, l))

    yield from rec(1, 0) if n else iter(())


def i_alpha(s: SystemSpec, node: Antichain):
    """Relaxed common-information redundancy.

    Maximises I(Q;Y) over auxiliary variables satisfying I(Q;Y|A) = 0 for
    every collection element A.  Candidates are exactly-feasible labellings
    of the joint source outcome: the Gacs-Korner variable, each element
    itself (when feasible), and all deterministic coarsenings when the
    support is small; the best feasible candidate wins.
    """
    s = canonical_system(s)
    groups = node_var_groups(s, node)
    cells, probs, uni, yarr, garrs = _label_arrays(s, groups)
    ny = int(yarr.max()) + 1
    n_cells = len(cells)

    def q_value(labels_arr):
        """I(Q;Y) and max_A I(Q;Y|A); labels_arr maps cell index -> label."""
        q = labels_arr[uni]
        nq = int(q.max()) + 1
        wqy = np.zeros((nq, ny))
        np.add.at(wqy, (q, yarr), probs)
        val = _mi_counts(wqy)
        resid = 0.0
        for garr in garrs:
            na = int(garr.max()) + 1
            w = np.zeros((nq, ny, na))
            np.add.at(w, (q, yarr, garr), probs)
            resid = max(resid, _cmi_counts(w))
        return val, resid

    candidates = []
    union, gk = gk_labels(s, groups)
    candidates.append(np.array([gk[c] for c in cells]))
    pos = {v: k for k, v in enumerate(union)}
    for g in groups:
        proj = {}
        lab = np.empty(n_cells, dtype=int)
        for i, c in enumerate(cells):
            key = tuple(c[pos[v]] for v in g)
            lab[i] = proj.setdefault(key, len(proj))
        candidates.append(lab)
    evaluated = 0
    best, best_resid = 0.0, 0.0
    for lab in candidates:
        val, resid = q_value(lab)
        evaluated += 1
        if resid <= ALPHA_FEAS_TOL and val > best:
            best, best_resid = val, resid
    if n_cells <= ALPHA_PARTITION_MAX_CELLS:
        for labels in set_partitions(n_cells):
            lab = np.array(labels)
            val, resid = q_value(lab)
            evaluated += 1
            if resid <= ALPHA_FEAS_TOL and val > best:
                best, best_resid = val, resid
    report = OptimizerReport(best, evaluated, best_resid, len(candidates))
    return best, report


# -- prec ---------------------------------------------------------------------


class _PrecProblem:
    """LP scaffolding for the garbling-polytope intersection."""

    def __init__(self, s: SystemSpec, groups):
        d = s.dist
        py = d.exact_marginal(s.target)
        self.ys = sorted(py)
        self.py = np.array([float(py[y]) for y in self.ys])
        self.P = []  # per group: (n_x, ny) conditional matrix
        self.group_outcomes = []
        for g in groups:
            pg = d.exact_marginal(g + s.target)
            xs = sorted({k[: len(g)] for k in pg})
            mat = np.zeros((len(xs), len(self.ys)))
            for j, y in enumerate(self.ys):
                for i, x in enumerate(xs):
                    mat[i, j] = float(pg.get(x + y, Fraction(0)) / py[y])
            self.P.append(mat)
            self.group_outcomes.append(xs)
        self.ny = len(self.ys)
        self.nq = max(
            self.ny + len(groups), max(len(xs) for xs in self.group_outcomes)
        )
        nq, ny = self.nq, self.ny
        self.nm = nq * ny
        self.kofs = []
        off = self.nm
        for xs in self.group_outcomes:
            self.kofs.append(off)
            off += nq * len(xs)
        self.nvar = off
        rows, cols, vals, rhs = [], [], [], []
        r = 0
        for gi, (xs, P) in enumerate(zip(self.group_outcomes, self.P)):
            ko = self.kofs[gi]
            nx = len(xs)
            for q in range(nq):
                for j in range(ny):
                    rows.append(r); cols.append(q * ny + j); vals.append(1.0)
                    for i in range(nx):
                        if P[i, j] != 0.0:
                            rows.append(r)
                            cols.append(ko + q * nx + i)
                            vals.append(-P[i, j])
                    rhs.append(0.0)
                    r += 1
            for i in range(nx):
                for q in range(nq):
                    rows.append(r); cols.append(ko + q * nx + i); vals.append(1.0)
                rhs.append(1.0)
                r += 1
        from scipy.sparse import coo_matrix

        self.A_eq = coo_matrix((vals, (rows, cols)), shape=(r, self.nvar)).tocsc()
        self.b_eq = np.array(rhs)

    def lp(self, objective_on_m: np.ndarray) -> np.ndarray:
        c = np.zeros(self.nvar)
        c[: self.nm] = -objective_on_m.ravel()
        res = linprog(
            c, A_eq=self.A_eq, b_eq=self.b_eq, bounds=(0, None), method="highs"
        )
        if not res.success:
            raise SolverFailure(f"prec vertex LP failed: {res.message}")
        return res.x

    def m_of(self, x: np.ndarray) -> np.ndarray:
        return x[: self.nm].reshape(self.nq, self.ny)

    def objective(self, M: np.ndarray) -> float:
        joint = M * self.py
        m = joint.sum(1)
        mask = joint > 0
        ratio = np.divide(
            joint, np.outer(m, self.py), out=np.ones_like(joint), where=mask
        )
        return float((joint[mask] * np.log2(ratio[mask])).sum())

    def gradient(self, M: np.ndarray) -> np.ndarray:
        m = (M * self.py).sum(1)
        safe_m = np.where(m > 0, m, 1.0)
        ratio = np.divide(
            M, safe_m[:, None], out=np.full_like(M, 1e-12), where=M > 0
        )
        ratio = np.maximum(ratio, 1e-12)
        return self.py * np.log2(ratio)

    def residual(self, x: np.ndarray) -> float:
        return float(np.abs(self.A_eq @ x - self.b_eq).max())

    def embed_deterministic(self, label_maps):
        """Feasible point for Q = f_A(X_A) consistent across elements:
        label_maps[gi][i] = Q label of group gi's outcome i."""
        x = np.zeros(self.nvar)
        M = np.zeros((self.nq, self.ny))
        for gi, (xs, P) in enumerate(zip(self.group_outcomes, self.P)):
            ko = self.kofs[gi]
            nx = len(xs)
            for i in range(nx):
                q = label_maps[gi][i]
                x[ko + q * nx + i] = 1.0
        gi = 0
        xs, P = self.group_outcomes[gi], self.P[gi]
        for i in range(len(xs)):
            M[label_maps[gi][i]] += P[i]
        x[: self.nm] = M.ravel()
        return x

    def embed_channels(self, M: np.ndarray, channels):
        x = np.zeros(self.nvar)
        x[: self.nm] = M.ravel()
        for gi, ch in enumerate(channels):
            ko = self.kofs[gi]
            nx = len(self.group_outcomes[gi])
            for i in range(nx):
                for q in range(self.nq):
                    x[ko + q * nx + i] = ch[i][q] if q < len(ch[i]) else 0.0
        return x


def i_prec(s: SystemSpec, node: Antichain):
    """Blackwell redundancy: max I(Q;Y) with Q a garbling of every element.

    Convexity of I(Q;Y) in the conditional family puts the optimum at a
    vertex of the garbling-polytope intersection; the search combines exact
    seeds (the Gacs-Korner variable, single elements via their degradation
    witnesses) with randomly-sampled vertices, each refined by vertex-hopping
    ascent along the objective's linearisation.
    """
    s = canonical_system(s)
    groups = node_var_groups(s, node)
    prob = _PrecProblem(s, groups)
    rng = np.random.default_rng(_stable_seed(s, node))

    def ascend(x):
        val = prob.objective(prob.m_of(x))
        for _ in range(40):
            z = prob.lp(prob.gradient(prob.m_of(x)))
            zval = prob.objective(prob.m_of(z))
            if zval > val + 1e-12:
                x, val = z, zval
            else:
                break
        return x, val

    lp_calls = 0
    restarts = 0
    best_x = None
    best = -np.inf

    seeds = []
    # Gacs-Korner seed: component labels are functions of every element
    union, gk = gk_labels(s, groups)
    pos = {v: k for k, v in enumerate(union)}
    cells = sorted(s.dist.exact_marginal(union))
    label_maps = []
    consistent = True
    for g, xs in zip(groups, prob.group_outcomes):
        lm = {}
        for c in cells:
            key = tuple(c[pos[v]] for v in g)
            lab = gk[c]
            if lm.setdefault(key, lab) != lab:
                consistent = False
        label_maps.append([lm.get(x, 0) for i, x in enumerate(xs)])
    if consistent:
        seeds.append(prob.embed_deterministic(label_maps))
    # single-element seeds: Q = X_A when A is a garbling of every other element
    for gi, g in enumerate(groups):
        a_box = sorted(
            itertools.product(*(range(s.dist.variables[v].cardinality) for v in g))
        )
        a_pos = {x: k for k, x in enumerate(a_box)}
        channels = []
        ok = True
        for gj, g2 in enumerate(groups):
            xs_j = prob.group_outcomes[gj]
            if gi == gj:
                channels.append(
                    [[1.0 if q == i else 0.0 for q in range(prob.nq)] for i in range(len(xs_j))]
                )
                continue
            feas, ch = blackwell_leq(s, g, g2)
            if not feas:
                ok = False
                break
            b_box = sorted(
                itertools.product(*(range(s.dist.variables[v].cardinality) for v in g2))
            )
            rows_by_b = {b: ch.matrix[k] for k, b in enumerate(b_box)}
            xs_i = prob.group_outcomes[gi]
            mat = []
            for b in xs_j:
                row = [0.0] * prob.nq
                for q, a in enumerate(xs_i):
                    row[q] = float(rows_by_b[b][a_pos[a]])
                mat.append(row)
            channels.append(mat)
        if ok:
            M = np.zeros((prob.nq, prob.ny))
            P = prob.P[gi]
            for i in range(len(prob.group_outcomes[gi])):
                M[i] += P[i]
            seeds.append(prob.embed_channels(M, channels))

    for x in seeds:
        if prob.residual(x) > 1e-8:
            continue
        x, val = ascend(x)
        restarts += 1
        if val > best:
            best, best_x = val, x

    stale = 0
    sampled = 0
    while sampled < PREC_VERTEX_SAMPLES and stale < PREC_BATCH:
        c = rng.standard_normal((prob.nq, prob.ny))
        x = prob.lp(c)
        lp_calls += 1
        sampled += 1
        val = prob.objective(prob.m_of(x))
        if restarts < PREC_ASCENT_RESTARTS:
            x, val = ascend(x)
            restarts += 1
        if val > best + 1e-9:
            best, best_x = val, x
            stale = 0
        else:
            stale += 1

    if best_x is None:
        raise SolverFailure("prec found no feasible point")
    report = OptimizerReport(best, lp_calls, prob.residual(best_x), restarts)
    return max(best, 0.0), report


register(MeasureDescriptor("wedge", "Gacs-Korner common variable", 4), i_wedge)
register(MeasureDescriptor("alpha", "relaxed common information", 2, needs_optimizer=True), i_alpha)
register(MeasureDescriptor("prec", "Blackwell redundancy", 3, needs_optimizer=True), i_prec)
