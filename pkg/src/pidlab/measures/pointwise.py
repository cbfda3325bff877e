"""Pointwise redundancy measures: Williams-Beer minimum specific information,
specificity/ambiguity (plus-minus), shared exclusions, and common change in
surprisal."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from ..dist import (
    SystemSpec,
    ipf_fit,
    marginalize,
    mutual_information,
    specific_information,
)
from ..lattice import Antichain
from .base import MeasureDescriptor, node_var_groups, register

_SIGN_EPS = 1e-9


def i_min(s: SystemSpec, node: Antichain):
    """Expected minimum specific information over the collection."""
    groups = node_var_groups(s, node)
    d = s.dist
    py = d.exact_marginal(s.target)
    total = 0.0
    for y, p in py.items():
        total += float(p) * min(
            specific_information(d, g, s.target, y) for g in groups
        )
    return total, None


def i_pm(s: SystemSpec, node: Antichain):
    """Specificity minus ambiguity: pointwise min of group surprisals minus
    pointwise min of target-conditional group surprisals.

    Composite collection elements enter through their joint-event surprisal.
    """
    groups = node_var_groups(s, node)
    d = s.dist
    marg = {g: d.exact_marginal(g) for g in groups}
    marg_y = {g: d.exact_marginal(g + s.target) for g in groups}
    py = d.exact_marginal(s.target)
    total = 0.0
    for o, p in d.pmf.items():
        y = tuple(o[i] for i in s.target)
        spec = min(-math.log2(marg[g][tuple(o[i] for i in g)]) for g in groups)
        amb = min(
            -math.log2(
                marg_y[g][tuple(o[i] for i in g) + y] / py[y]
            )
            for g in groups
        )
        total += float(p) * (spec - amb)
    return total, None


def i_sx(s: SystemSpec, node: Antichain):
    """Shared-exclusion redundancy: informative part from the mass of the
    union of the group realisation events, misinformative part from its
    overlap with the target event."""
    groups = node_var_groups(s, node)
    d = s.dist
    py = d.exact_marginal(s.target)
    support = list(d.pmf.items())
    total = 0.0
    for o, p in support:
        y = tuple(o[i] for i in s.target)
        union = Fraction(0)
        union_and_y = Fraction(0)
        for o2, p2 in support:
            if any(
                all(o2[i] == o[i] for i in g) for g in groups
            ):
                union += p2
                if tuple(o2[i] for i in s.target) == y:
                    union_and_y += p2
        i_plus = -math.log2(union)
        i_minus = math.log2(py[y] / union_and_y)
        total += float(p) * (i_plus - i_minus)
    return total, None


def _sign(x: float) -> int:
    if x > _SIGN_EPS:
        return 1
    if x < -_SIGN_EPS:
        return -1
    return 0


def i_ccs(s: SystemSpec, node: Antichain):
    """Common-change-in-surprisal redundancy.

    Evaluated on the max-entropy distribution constrained by every
    (group, target) marginal plus the joint source coupling; an outcome
    contributes its local coinformation only when every group's surprisal
    change, the joint change, and the local coinformation share one sign.
    """
    groups = node_var_groups(s, node)
    d = s.dist
    y = s.target
    union = tuple(sorted(set(itertools.chain.from_iterable(groups))))
    constraints = [union] + [g + y for g in groups]
    q = ipf_fit(d, constraints, tol=1e-13)
    blocks = list(groups) + [y]
    # entropic fingerprints of every nonempty block subset, for the local
    # coinformation alternating sum
    subset_margs = {}
    for r in range(1, len(blocks) + 1):
        for combo in itertools.combinations(range(len(blocks)), r):
            vars_ = tuple(
                sorted(set(itertools.chain.from_iterable(blocks[i] for i in combo)))
            )
            subset_margs[combo] = (vars_, q.exact_marginal(vars_))
    qy = q.exact_marginal(y)
    q_joint = q.exact_marginal(union + y)
    q_union = q.exact_marginal(union)
    g_marg = {g: q.exact_marginal(g) for g in groups}
    gy_marg = {g: q.exact_marginal(g + y) for g in groups}
    total = 0.0
    for o, p in q.pmf.items():
        yo = tuple(o[i] for i in y)
        log_py = math.log2(qy[yo])
        d_joint = (
            math.log2(q_joint[tuple(o[i] for i in union) + yo])
            - math.log2(q_union[tuple(o[i] for i in union)])
            - log_py
        )
        d_groups = []
        for g in groups:
            go = tuple(o[i] for i in g)
            d_groups.append(
                math.log2(gy_marg[g][go + yo]) - math.log2(g_marg[g][go]) - log_py
            )
        coi = 0.0
        for combo, (vars_, marg) in subset_margs.items():
            h = -math.log2(marg[tuple(o[i] for i in vars_)])
            coi += (-1) ** (len(combo) + 1) * h
        signs = {_sign(v) for v in d_groups}
        signs.add(_sign(d_joint))
        signs.add(_sign(coi))
        if len(signs) == 1:
            total += float(p) * coi
    return total, None


register(MeasureDescriptor("min", "minimum specific information", 4, pointwise=True), i_min)
register(MeasureDescriptor("pm", "specificity/ambiguity", 4, pointwise=True), i_pm)
register(MeasureDescriptor("sx", "shared exclusions", 4, pointwise=True), i_sx)
register(MeasureDescriptor("ccs", "common change in surprisal", 3, pointwise=True), i_ccs)
