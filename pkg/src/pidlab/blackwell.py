"""Blackwell (degradation) order between sources relative to a target.

A is Blackwell-inferior to B relative to Y when a stochastic channel k
reproduces A's target-conditional family from B's:

    p(a|y) = sum_b k(a|b) p(b|y)   for every y in supp(Y).

Decided by exact-rational LP feasibility, so the boolean cannot flip on
rounding; a witness channel is returned when one exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dist import JointDistribution, SystemSpec, DistributionError
from .rational_lp import (
    equalities_to_inequalities,
    feasible,
    fourier_motzkin_feasible,
)


@dataclass(frozen=True)
class Channel:
    """Row-stochastic rational matrix: rows = input outcomes."""

    matrix: tuple  # tuple of tuples of Fraction

    def __post_init__(self):
        mat = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", mat)
        for row in mat:
            if any(v < 0 or v > 1 for v in row):
                raise DistributionError("channel entries must lie in [0,1]")
            if sum(row) != 1:
                raise DistributionError("channel rows must sum to 1 exactly")

    @property
    def input_card(self):
        return len(self.matrix)

    @property
    def output_card(self):
        return len(self.matrix[0]) if self.matrix else 0

    def apply(self, p):
        """Push an input pmf (sequence of Fractions) through the channel."""
        out = [Fraction(0)] * self.output_card
        for b, pb in enumerate(p):
            for a in range(self.output_card):
                out[a] += self.matrix[b][a] * pb
        return out


def conditional_family(d: JointDistribution, group, target):
    """Exact conditionals p(g|y) for y in supp(Y), as {y: [Fraction per g]}.

    Group outcomes are enumerated over the full outcome box of the group.
    """
    group, target = tuple(group), tuple(target)
    joint = d.exact_marginal(group + target)
    py = d.exact_marginal(target)
    cards = [d.variables[i].cardinality for i in group]
    import itertools

    outcomes = list(itertools.product(*(range(c) for c in cards)))
    fam = {}
    for y, mass in py.items():
        fam[y] = [joint.get(g + y, Fraction(0)) / mass for g in outcomes]
    return fam, outcomes


def _degradation_lp(fam_a, fam_b, card_a, card_b):
    """Equality system for p(a|y) = sum_b k(a|b) p(b|y), k row-stochastic.

    Variables are k[b][a] flattened as b*card_a + a.
    """
    n = card_a * card_b
    A, rhs = [], []
    for y, pa in fam_a.items():
        pb = fam_b[y]
        for a in range(card_a):
            row = [Fraction(0)] * n
            for b in range(card_b):
                row[b * card_a + a] = pb[b]
            A.append(row)
            rhs.append(pa[a])
    for b in range(card_b):
        row = [Fraction(0)] * n
        for a in range(card_a):
            row[b * card_a + a] = Fraction(1)
        A.append(row)
        rhs.append(Fraction(1))
    return A, rhs


def blackwell_leq(s: SystemSpec, a_group, b_group, target=None):
    """Decide A <=_Y B (A is a garbling of B given the target).

    Returns (bool, Channel or None); the channel, when present, satisfies
    p(a|y) = sum_b k(a|b) p(b|y) exactly on supp(Y).
    """
    target = s.target if target is None else tuple(target)
    d = s.dist
    fam_a, out_a = conditional_family(d, a_group, target)
    fam_b, out_b = conditional_family(d, b_group, target)
    card_a, card_b = len(out_a), len(out_b)
    A, rhs = _degradation_lp(fam_a, fam_b, card_a, card_b)
    ok, x = feasible(A, rhs)
    if not ok:
        return False, None
    rows = tuple(
        tuple(x[b * card_a + a] for a in range(card_a)) for b in range(card_b)
    )
    return True, Channel(rows)


def blackwell_leq_fm(s: SystemSpec, a_group, b_group, target=None):
    """Independent Fourier-Motzkin route to the same boolean (oracle use)."""
    target = s.target if target is None else tuple(target)
    d = s.dist
    fam_a, out_a = conditional_family(d, a_group, target)
    fam_b, out_b = conditional_family(d, b_group, target)
    A, rhs = _degradation_lp(fam_a, fam_b, len(out_a), len(out_b))
    ineqs = equalities_to_inequalities(A, rhs)
    return fourier_motzkin_feasible(ineqs, len(A[0]))
