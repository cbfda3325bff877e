"""Canonical logic-gate systems and seeded random systems.

These are the fixtures used throughout the test suite and by the axiom
falsification harness.  All pmfs are exact rationals; random systems use
integer weights so downstream rational LPs stay exact.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .dist import (
    DistributionError,
    JointDistribution,
    SystemSpec,
    VariableSpec,
    as_fraction,
)


def tbc(correlation=0) -> SystemSpec:
    """Two-Bit Copy: two bit sources with p(X1=X2) = (1+c)/2 and a 4-ary
    target that names the joint outcome {A,B,C,D}."""
    c = as_fraction(correlation)
    if not (0 <= c <= 1):
        raise ValueError("correlation must lie in [0, 1]")
    same = (1 + c) / 4
    diff = (1 - c) / 4
    variables = (
        VariableSpec("X1", (0, 1)),
        VariableSpec("X2", (0, 1)),
        VariableSpec("Y", ("A", "B", "C", "D")),
    )
    pmf = {}
    for x1, x2 in itertools.product((0, 1), repeat=2):
        p = same if x1 == x2 else diff
        if p > 0:
            pmf[(x1, x2, 2 * x1 + x2)] = p
    return SystemSpec(JointDistribution(variables, pmf), ((0,), (1,)), (2,))


def tbc_pair_target(correlation=0) -> SystemSpec:
    """TBC variant whose target is the two copied bits as separate variables
    (useful for target-monotonicity / chain-rule witnesses)."""
    c = as_fraction(correlation)
    if not (0 <= c <= 1):
        raise ValueError("correlation must lie in [0, 1]")
    same = (1 + c) / 4
    diff = (1 - c) / 4
    variables = (
        VariableSpec("X1", (0, 1)),
        VariableSpec("X2", (0, 1)),
        VariableSpec("Y1", (0, 1)),
        VariableSpec("Y2", (0, 1)),
    )
    pmf = {}
    for x1, x2 in itertools.product((0, 1), repeat=2):
        p = same if x1 == x2 else diff
        if p > 0:
            pmf[(x1, x2, x1, x2)] = p
    return SystemSpec(JointDistribution(variables, pmf), ((0,), (1,)), (2, 3))


def _binary_gate(table) -> SystemSpec:
    """Uniform independent bit sources with deterministic target `table`."""
    out_labels = tuple(sorted(set(table.values())))
    variables = (
        VariableSpec("X1", (0, 1)),
        VariableSpec("X2", (0, 1)),
        VariableSpec("Y", out_labels),
    )
    pmf = {}
    for (x1, x2), y in table.items():
        pmf[(x1, x2, out_labels.index(y))] = Fraction(1, 4)
    return SystemSpec(JointDistribution(variables, pmf), ((0,), (1,)), (2,))


def xor() -> SystemSpec:
    return _binary_gate({(a, b): a ^ b for a, b in itertools.product((0, 1), repeat=2)})


def and_gate() -> SystemSpec:
    return _binary_gate({(a, b): a & b for a, b in itertools.product((0, 1), repeat=2)})


def or_gate() -> SystemSpec:
    return _binary_gate({(a, b): a | b for a, b in itertools.product((0, 1), repeat=2)})


def sum_gate() -> SystemSpec:
    """Y = X1 + X2 (three-outcome target)."""
    return _binary_gate({(a, b): a + b for a, b in itertools.product((0, 1), repeat=2)})


def copy_single() -> SystemSpec:
    """One uniform bit source copied into the target."""
    variables = (VariableSpec("X", (0, 1)), VariableSpec("Y", (0, 1)))
    pmf = {(0, 0): Fraction(1, 2), (1, 1): Fraction(1, 2)}
    return SystemSpec(JointDistribution(variables, pmf), ((0,),), (1,))


def xor_source_copy() -> SystemSpec:
    """Three pairwise-independent bits with X3 = X1 xor X2, target = all three.

    Any two sources determine the third; this is the classic counterexample
    system behind several axiom incompatibilities.
    """
    variables = tuple(
        VariableSpec(n, (0, 1)) for n in ("X1", "X2", "X3")
    ) + (VariableSpec("Y", tuple(range(8))),)
    pmf = {}
    for x1, x2 in itertools.product((0, 1), repeat=2):
        x3 = x1 ^ x2
        pmf[(x1, x2, x3, 4 * x1 + 2 * x2 + x3)] = Fraction(1, 4)
    return SystemSpec(JointDistribution(variables, pmf), ((0,), (1,), (2,)), (3,))


def noisy_copy(flip="1/4") -> SystemSpec:
    """Binary symmetric channel: one bit source, target flipped with prob `flip`."""
    e = as_fraction(flip)
    variables = (VariableSpec("X", (0, 1)), VariableSpec("Y", (0, 1)))
    pmf = {
        (0, 0): (1 - e) / 2,
        (0, 1): e / 2,
        (1, 0): e / 2,
        (1, 1): (1 - e) / 2,
    }
    return SystemSpec(JointDistribution(variables, pmf), ((0,),), (1,))


def random_system(n_sources, cards, seed, n_target_vars=1) -> SystemSpec:
    """Seeded random rational system with full support.

    `cards` lists the cardinalities of the n_sources source variables followed
    by the n_target_vars target variables.  Cell weights are integers drawn
    uniformly from 1..100, so the pmf is exact and has full support.
    """
    cards = tuple(int(c) for c in cards)
    if n_sources > 3:
        raise ValueError("random_system supports at most 3 sources")
    if any(c > 4 or c < 1 for c in cards):
        raise ValueError("cardinalities must lie in 1..4")
    if len(cards) != n_sources + n_target_vars:
        raise ValueError("cards must list source then target cardinalities")
    rng = random.Random(seed)
    weights = {}
    total = 0
    for outcome in itertools.product(*(range(c) for c in cards)):
        w = rng.randint(1, 100)
        weights[outcome] = w
        total += w
    variables = tuple(
        VariableSpec(f"X{i+1}", tuple(range(cards[i]))) for i in range(n_sources)
    ) + tuple(
        VariableSpec(f"Y{j+1}" if n_target_vars > 1 else "Y", tuple(range(cards[n_sources + j])))
        for j in range(n_target_vars)
    )
    pmf = {o: Fraction(w, total) for o, w in weights.items()}
    dist = JointDistribution(variables, pmf)
    groups = tuple((i,) for i in range(n_sources))
    target = tuple(range(n_sources, n_sources + n_target_vars))
    return SystemSpec(dist, groups, target)


def random_independent_copy(seed, card=2) -> SystemSpec:
    """Two independent random sources whose joint copy is the target.

    The identity witnesses use this family: redundancy of an (IID)-measure
    must vanish on it.
    """
    rng = random.Random(seed)

    def rand_marginal():
        w = [rng.randint(1, 100) for _ in range(card)]
        t = sum(w)
        return [Fraction(a, t) for a in w]

    m1, m2 = rand_marginal(), rand_marginal()
    variables = (
        VariableSpec("X1", tuple(range(card))),
        VariableSpec("X2", tuple(range(card))),
        VariableSpec("Y", tuple(range(card * card))),
    )
    pmf = {}
    for a in range(card):
        for b in range(card):
            p = m1[a] * m2[b]
            if p > 0:
                pmf[(a, b, card * a + b)] = p
    return SystemSpec(JointDistribution(variables, pmf), ((0,), (1,)), (2,))


def correlated_copy(seed, card=2) -> SystemSpec:
    """Random correlated source pair with joint-copy target (identity witnesses)."""
    rng = random.Random(seed)
    weights = {}
    total = 0
    for a in range(card):
        for b in range(card):
            w = rng.randint(1, 100)
            weights[(a, b)] = w
            total += w
    variables = (
        VariableSpec("X1", tuple(range(card))),
        VariableSpec("X2", tuple(range(card))),
        VariableSpec("Y", tuple(range(card * card))),
    )
    pmf = {
        (a, b, card * a + b): Fraction(w, total) for (a, b), w in weights.items()
    }
    return SystemSpec(JointDistribution(variables, pmf), ((0,), (1,)), (2,))


GATES = {
    "tbc": tbc,
    "tbc-pair": tbc_pair_target,
    "xor": xor,
    "and": and_gate,
    "or": or_gate,
    "sum": sum_gate,
    "copy": copy_single,
    "xsc": xor_source_copy,
    "noisy-copy": noisy_copy,
}

PARAMETRIC = {"tbc", "tbc-pair", "noisy-copy"}


def gate_ids():
    return sorted(GATES)


def make_gate(spec: str) -> SystemSpec:
    """Instantiate a gate from an id, with optional `id:param` shorthand."""
    name, _, arg = spec.partition(":")
    if name not in GATES:
        raise DistributionError(f"unknown gate {name!r}; known: {', '.join(gate_ids())}")
    factory = GATES[name]
    if arg:
        if name not in PARAMETRIC:
            raise DistributionError(f"gate {name!r} takes no parameter")
        return factory(arg)
    return factory()
