"""Closed-form redundancy measures: minimum-MI, rescaled redundancy, causal
tensors, interventional (do) redundancy, maximum-entropy-star, and
dependency-constraint unique information."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from ..dist import (
    JointDistribution,
    SystemSpec,
    coinformation,
    conditional_mutual_information,
    entropy,
    ipf_fit,
    maxent_pairwise,
    mutual_information,
)
from ..lattice import Antichain
from .base import (
    MeasureDescriptor,
    UnsupportedArity,
    node_var_groups,
    register,
)


def _require_bottom_pair(s: SystemSpec, node: Antichain, measure: str):
    if s.n_sources != 2:
        raise UnsupportedArity(f"{measure} is defined for exactly two source groups")
    if node.sets != ((0,), (1,)):
        raise UnsupportedArity(f"{measure} evaluates redundancy at the bottom node only")
    return node_var_groups(s, node)


def i_mmi(s: SystemSpec, node: Antichain):
    """Minimum mutual information between any collection element and the target."""
    groups = node_var_groups(s, node)
    return min(mutual_information(s.dist, g, s.target) for g in groups), None


def i_rr(s: SystemSpec, node: Antichain):
    """Rescaled redundancy: coinformation floor interpolated toward the
    minimum marginal information by the normalised source dependence."""
    (g1, g2) = _require_bottom_pair(s, node, "rr")
    d = s.dist
    co = coinformation(d, [g1, g2, s.target])
    r_min = max(0.0, co)
    r_mmi = min(
        mutual_information(d, g1, s.target), mutual_information(d, g2, s.target)
    )
    h_min = min(entropy(d, g1), entropy(d, g2))
    if h_min <= 0:
        i_s = 0.0  # a zero-entropy source shares nothing
    else:
        i_s = mutual_information(d, g1, g2) / h_min
    return r_min + i_s * (r_mmi - r_min), None


def _cascade(d: JointDistribution, g_from, g_via, target) -> float:
    """Information transmitted through the path g_from -> g_via -> target."""
    p_fv = d.exact_marginal(g_from + g_via)
    p_f = d.exact_marginal(g_from)
    p_vt = d.exact_marginal(g_via + target)
    p_v = d.exact_marginal(g_via)
    p_ft = d.exact_marginal(g_from + target)
    p_t = d.exact_marginal(target)
    nf, nv = len(g_from), len(g_via)
    total = 0.0
    for key, mass in p_ft.items():
        f, t = key[:nf], key[nf:]
        acc = Fraction(0)
        for kv, pfv in p_fv.items():
            if kv[:nf] != f:
                continue
            v = kv[nf:]
            pvt = p_vt.get(v + t, Fraction(0))
            if pvt:
                acc += (pfv / p_f[f]) * (pvt / p_v[v])
        total += float(mass) * (math.log2(acc) - math.log2(p_t[t]))
    return total


def i_ct(s: SystemSpec, node: Antichain):
    """Causal-tensor redundancy: the weaker of the two directed cascades."""
    (g1, g2) = _require_bottom_pair(s, node, "ct")
    d = s.dist
    return min(
        _cascade(d, g1, g2, s.target), _cascade(d, g2, g1, s.target)
    ), None


def do_joint(d: JointDistribution, g_int, g_other, target) -> JointDistribution:
    """Interventional joint p(x_i', x_j, y) = p(x_i|y) p(x_j, y).

    Variables are ordered (intervened copy, other source, target).
    """
    p_it = d.exact_marginal(g_int + target)
    p_jt = d.exact_marginal(g_other + target)
    p_t = d.exact_marginal(target)
    ni, nj = len(g_int), len(g_other)
    pmf = {}
    for ki, pi in p_it.items():
        t = ki[ni:]
        for kj, pj in p_jt.items():
            if kj[nj:] != t:
                continue
            pmf[ki[:ni] + kj[:nj] + t] = pi / p_t[t] * pj
    variables = tuple(d.variables[i] for i in g_int + g_other + target)
    return JointDistribution(variables, pmf)


def i_do(s: SystemSpec, node: Antichain):
    """Interventional redundancy I(X1'; X2) with X1' drawn from p(x1|y).

    The mirrored construction I(X2'; X1) must agree (both reduce to the
    source coupling of the pairwise max-entropy distribution); the agreement
    is asserted to 1e-9.
    """
    (g1, g2) = _require_bottom_pair(s, node, "do")
    d = s.dist
    q12 = do_joint(d, g1, g2, s.target)
    q21 = do_joint(d, g2, g1, s.target)
    a = tuple(range(len(g1)))
    b = tuple(range(len(g1), len(g1) + len(g2)))
    v12 = mutual_information(q12, a, b)
    a2 = tuple(range(len(g2)))
    b2 = tuple(range(len(g2), len(g2) + len(g1)))
    v21 = mutual_information(q21, a2, b2)
    if abs(v12 - v21) > 1e-9:
        raise AssertionError(f"do-redundancy asymmetry {v12} vs {v21}")
    return v12, None


def i_mes(s: SystemSpec, node: Antichain):
    """Maximum-entropy-star redundancy: source coupling of the pairwise
    max-entropy distribution, I_Q(X1;X2) with Q = p(x1|y)p(x2|y)p(y)."""
    (g1, g2) = _require_bottom_pair(s, node, "mes")
    q = maxent_pairwise(s.dist, g1, g2, s.target)
    a = tuple(range(len(g1)))
    b = tuple(range(len(g1), len(g1) + len(g2)))
    return mutual_information(q, a, b), None


def dep_unique(s: SystemSpec):
    """Unique informations of the dependency-constraint construction.

    unique(X_i) = min over the two maximum-entropy projections (pairwise
    constraints; pairwise constraints plus the source coupling) of
    I(X_i;Y|X_j) evaluated on the projection.
    """
    if s.n_sources != 2:
        raise UnsupportedArity("dep is defined for exactly two source groups")
    g1, g2 = node_var_groups(s, Antichain([(0,), (1,)]))
    d = s.dist
    y = s.target
    q2 = maxent_pairwise(d, g1, g2, y)
    a = tuple(range(len(g1)))
    b = tuple(range(len(g1), len(g1) + len(g2)))
    t = tuple(range(len(g1) + len(g2), q2.n_vars))
    q3 = ipf_fit(d, [g1 + g2, g1 + y, g2 + y], tol=1e-13)
    a3, b3 = g1, g2
    u1 = min(
        conditional_mutual_information(q2, a, t, b),
        conditional_mutual_information(q3, a3, y, b3),
    )
    u2 = min(
        conditional_mutual_information(q2, b, t, a),
        conditional_mutual_information(q3, b3, y, a3),
    )
    return u1, u2


def i_dep(s: SystemSpec, node: Antichain):
    """Dependency-constraint redundancy, derived from unique information.

    Redundancy computed from either source's unique value must agree; the
    consistency is checked to 1e-6.
    """
    (g1, g2) = _require_bottom_pair(s, node, "dep")
    u1, u2 = dep_unique(s)
    d = s.dist
    r1 = mutual_information(d, g1, s.target) - u1
    r2 = mutual_information(d, g2, s.target) - u2
    if abs(r1 - r2) > 1e-6:
        raise AssertionError(f"dep redundancy inconsistent across sources: {r1} vs {r2}")
    return 0.5 * (r1 + r2), None


register(MeasureDescriptor("mmi", "minimum mutual information", 4), i_mmi)
register(MeasureDescriptor("rr", "rescaled redundancy", 2), i_rr)
register(MeasureDescriptor("ct", "causal-tensor redundancy", 2), i_ct)
register(MeasureDescriptor("do", "interventional redundancy", 2, unique_first=True), i_do)
register(MeasureDescriptor("mes", "maximum-entropy star", 2), i_mes)
register(MeasureDescriptor("dep", "dependency constraints", 2, unique_first=True), i_dep)
