"""Exact discrete joint distributions and information functionals.

Probabilities are stored as exact rationals (``fractions.Fraction``), so
support calculations, marginalisation and conditioning are free of rounding.
Information quantities (entropy, mutual information, coinformation, specific
information) are evaluated in double precision, in bits.

All objects are immutable after construction and all operations are pure
functions, so everything here is safe to evaluate concurrently.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np


class DistributionError(ValueError):
    """Invalid probability mass function (negative mass, mass != 1, bad index)."""


class ZeroProbabilityEvent(ValueError):
    """Conditioning or specific-information request on a null event."""


class IPFConvergenceError(RuntimeError):
    """Iterative proportional fitting failed to reach tolerance."""

    def __init__(self, message, residual, iterations):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


def as_fraction(x) -> Fraction:
    """Coerce ints, strings like '3/4', floats and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # exact binary expansion
    raise TypeError(f"cannot interpret {x!r} as a rational probability")


@dataclass(frozen=True)
class VariableSpec:
    """A finite random variable: a name plus its ordered outcome labels."""

    name: str
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) < 1:
            raise DistributionError(f"variable {self.name!r} needs >= 1 outcome")
        if len(set(self.labels)) != len(self.labels):
            raise DistributionError(f"variable {self.name!r} has duplicate labels")

    @property
    def cardinality(self) -> int:
        return len(self.labels)


def _bit_vars(names, card=2):
    return tuple(VariableSpec(n, tuple(range(card))) for n in names)


class JointDistribution:
    """Exact-rational pmf over a tuple of finite variables.

    Parameters
    ----------
    variables : sequence of VariableSpec
    pmf : mapping from outcome index tuple to probability
        Probabilities may be ints, Fractions, 'num/den' strings or floats.
        Zero-probability outcomes may be omitted.
    """

    __slots__ = ("variables", "pmf", "_array", "_hash")

    def __init__(self, variables: Sequence[VariableSpec], pmf: Mapping):
        variables = tuple(variables)
        cards = tuple(v.cardinality for v in variables)
        clean = {}
        total = Fraction(0)
        for outcome, p in pmf.items():
            outcome = tuple(outcome)
            if len(outcome) != len(variables):
                raise DistributionError(f"outcome {outcome} has wrong arity")
            for i, o in enumerate(outcome):
                if not (0 <= o < cards[i]):
                    raise DistributionError(f"outcome {outcome} out of range")
            p = as_fraction(p)
            if p < 0:
                raise DistributionError(f"negative probability at {outcome}")
            total += p
            if p > 0:
                clean[outcome] = clean.get(outcome, Fraction(0)) + p
        if total != 1:
            raise DistributionError(f"total mass is {total}, expected exactly 1")
        self.variables = variables
        self.pmf = clean
        self._array = None
        self._hash = None

    # -- basic structure --------------------------------------------------

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    @property
    def cards(self) -> tuple:
        return tuple(v.cardinality for v in self.variables)

    @property
    def support(self):
        return sorted(self.pmf.keys())

    def p(self, outcome) -> Fraction:
        return self.pmf.get(tuple(outcome), Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, JointDistribution)
            and self.cards == other.cards
            and self.pmf == other.pmf
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.cards, tuple(sorted(self.pmf.items()))))
        return self._hash

    def __repr__(self):
        names = ",".join(v.name for v in self.variables)
        return f"JointDistribution({names}; {len(self.pmf)} atoms)"

    def array(self) -> np.ndarray:
        """Dense float array over the full outcome box (cached)."""
        if self._array is None:
            arr = np.zeros(self.cards)
            for outcome, p in self.pmf.items():
                arr[outcome] = float(p)
            arr.setflags(write=False)
            self._array = arr
        return self._array

    def exact_marginal(self, keep: Sequence[int]) -> dict:
        """Rational marginal pmf over `keep` (in the given order)."""
        keep = tuple(keep)
        out = {}
        for outcome, p in self.pmf.items():
            key = tuple(outcome[i] for i in keep)
            out[key] = out.get(key, Fraction(0)) + p
        return out


def _check_indices(d: JointDistribution, idx: Iterable[int], what="index"):
    idx = tuple(idx)
    for i in idx:
        if not (0 <= i < d.n_vars):
            raise DistributionError(f"{what} {i} out of range for {d.n_vars} variables")
    if len(set(idx)) != len(idx):
        raise DistributionError(f"duplicate {what} in {idx}")
    return idx


def marginalize(d: JointDistribution, keep: Sequence[int]) -> JointDistribution:
    """Marginal distribution over `keep`, variables reordered as given."""
    keep = _check_indices(d, keep)
    variables = tuple(d.variables[i] for i in keep)
    return JointDistribution(variables, d.exact_marginal(keep))


def condition(d: JointDistribution, on: Sequence[int], outcome) -> JointDistribution:
    """Distribution of the remaining variables given `on` = `outcome`.

    Raises ZeroProbabilityEvent if the conditioning event has no mass.
    """
    on = _check_indices(d, on, "conditioning index")
    outcome = tuple(outcome)
    if len(outcome) != len(on):
        raise DistributionError("conditioning outcome arity mismatch")
    rest = tuple(i for i in range(d.n_vars) if i not in on)
    pos = {v: k for k, v in enumerate(on)}
    mass = Fraction(0)
    cond = {}
    for o, p in d.pmf.items():
        if all(o[v] == outcome[pos[v]] for v in on):
            key = tuple(o[i] for i in rest)
            cond[key] = cond.get(key, Fraction(0)) + p
            mass += p
    if mass == 0:
        raise ZeroProbabilityEvent(f"conditioning event {outcome} has zero probability")
    cond = {k: v / mass for k, v in cond.items()}
    return JointDistribution(tuple(d.variables[i] for i in rest), cond)


# -- information functionals (float, bits) --------------------------------


def _marginal_array(d: JointDistribution, vars: Sequence[int]) -> np.ndarray:
    arr = d.array()
    drop = tuple(i for i in range(d.n_vars) if i not in set(vars))
    m = arr.sum(axis=drop) if drop else arr
    # axes of m follow the original variable order; reorder to requested order
    kept = [i for i in range(d.n_vars) if i not in set(drop)]
    perm = [kept.index(i) for i in vars]
    return np.transpose(m, perm)


def _h(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


def entropy(d: JointDistribution, vars: Sequence[int] | None = None) -> float:
    """Shannon entropy in bits of the marginal over `vars` (default: all)."""
    if vars is None:
        vars = tuple(range(d.n_vars))
    vars = _check_indices(d, vars)
    if not vars:
        raise DistributionError("entropy of empty variable set")
    return _h(_marginal_array(d, vars))


def mutual_information(d: JointDistribution, a: Sequence[int], b: Sequence[int]) -> float:
    """I(A;B) = H(A) + H(B) - H(A,B), in bits."""
    a, b = tuple(a), tuple(b)
    if set(a) & set(b):
        raise DistributionError("mutual information groups overlap")
    return entropy(d, a) + entropy(d, b) - entropy(d, a + b)


def conditional_mutual_information(
    d: JointDistribution, a: Sequence[int], b: Sequence[int], c: Sequence[int]
) -> float:
    """I(A;B|C) in bits; empty C reduces to plain mutual information."""
    a, b, c = tuple(a), tuple(b), tuple(c)
    groups = set(a) | set(b) | set(c)
    if len(groups) != len(a) + len(b) + len(c):
        raise DistributionError("CMI groups overlap")
    if not c:
        return mutual_information(d, a, b)
    # I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)
    return (
        entropy(d, a + c)
        + entropy(d, b + c)
        - entropy(d, a + b + c)
        - entropy(d, c)
    )


def coinformation(d: JointDistribution, groups: Sequence[Sequence[int]]) -> float:
    """Interaction-information coinformation of >= 2 disjoint groups, in bits.

    Follows the recursion I(G1;..;G_{k+1}) = I(G1;..;Gk) - I(G1;..;Gk|G_{k+1});
    equivalently the alternating entropy sum over subsets of the groups.
    """
    groups = [tuple(g) for g in groups]
    if len(groups) < 2:
        raise DistributionError("coinformation needs at least two groups")
    seen = set()
    for g in groups:
        if seen & set(g):
            raise DistributionError("coinformation groups overlap")
        seen |= set(g)
    total = 0.0
    for k in range(1, len(groups) + 1):
        for combo in itertools.combinations(groups, k):
            joint = tuple(itertools.chain.from_iterable(combo))
            total += (-1) ** (k + 1) * entropy(d, joint)
    return total


def specific_information(
    d: JointDistribution, source: Sequence[int], target: Sequence[int], y
) -> float:
    """Williams-Beer specific information I(A;Y=y) in bits.

    I(A;Y=y) = sum_a p(a|y) [log2 p(y|a) - log2 p(y)].  Its expectation over
    y recovers I(A;Y).
    """
    source, target = tuple(source), tuple(target)
    y = tuple(y)
    p_ay = d.exact_marginal(source + target)
    p_a = d.exact_marginal(source)
    p_y = Fraction(0)
    for k, v in p_ay.items():
        if k[len(source):] == y:
            p_y += v
    if p_y == 0:
        raise ZeroProbabilityEvent(f"target outcome {y} has zero probability")
    total = 0.0
    for k, v in p_ay.items():
        if k[len(source):] != y or v == 0:
            continue
        a = k[: len(source)]
        p_a_given_y = v / p_y
        p_y_given_a = v / p_a[a]
        total += float(p_a_given_y) * (np.log2(float(p_y_given_a)) - np.log2(float(p_y)))
    return total


# -- maximum-entropy projections ------------------------------------------


def maxent_pairwise(
    d: JointDistribution,
    g1: Sequence[int] = (0,),
    g2: Sequence[int] = (1,),
    target: Sequence[int] = (2,),
) -> JointDistribution:
    """Exact max-entropy distribution preserving the (g1,target) and
    (g2,target) marginals: q(x1,x2,y) = p(x1,y) p(x2,y) / p(y).

    The result is expressed over the variables in order g1 + g2 + target.
    Outcomes with p(y) = 0 carry zero mass.
    """
    g1, g2, target = tuple(g1), tuple(g2), tuple(target)
    _check_indices(d, g1 + g2 + target, "group index")
    p1 = d.exact_marginal(g1 + target)
    p2 = d.exact_marginal(g2 + target)
    py = d.exact_marginal(target)
    pmf = {}
    for k1, v1 in p1.items():
        y = k1[len(g1):]
        for k2, v2 in p2.items():
            if k2[len(g2):] != y:
                continue
            q = v1 * v2 / py[y]
            if q > 0:
                pmf[k1[: len(g1)] + k2[: len(g2)] + y] = q
    variables = tuple(d.variables[i] for i in g1 + g2 + target)
    return JointDistribution(variables, pmf)


def _ipf_sweeps(q, targets, n_vars, cards, tol, max_iter):
    residual = np.inf
    for _ in range(max_iter):
        prev = q.copy()
        for c, axes, tmarg in targets:
            qmarg = q.sum(axis=axes) if axes else q
            ratio = np.ones_like(tmarg)
            np.divide(tmarg, qmarg, out=ratio, where=qmarg > 0)
            shape = [1] * n_vars
            for i in c:
                shape[i] = cards[i]
            order = np.argsort(c)
            q = q * np.transpose(ratio, order).reshape(shape)
        residual = max(
            float(np.abs((q.sum(axis=axes) if axes else q) - tmarg).sum())
            for c, axes, tmarg in targets
        )
        mask = (q > 0) & (prev > 0)
        kl_step = float(np.abs(q[mask] * np.log(q[mask] / prev[mask])).sum())
        if residual < tol and kl_step < tol:
            return q, residual, True
    return q, residual, False


def _maxent_support(d: JointDistribution, constraints):
    """Exact maximal support of {q >= 0 : all constraint marginals match d}.

    The max-entropy point lies in the relative interior of the feasible
    polytope, so its support is the union of all feasible supports; decided
    per cell by exact-rational LP (maximise the cell mass).
    """
    from .rational_lp import solve_lp

    cells = list(itertools.product(*(range(c) for c in d.cards)))
    index = {o: i for i, o in enumerate(cells)}
    A, rhs = [], []
    for c in constraints:
        marg = d.exact_marginal(c)
        cards_c = [d.cards[i] for i in c]
        for key in itertools.product(*(range(k) for k in cards_c)):
            row = [Fraction(0)] * len(cells)
            for o in cells:
                if tuple(o[i] for i in c) == key:
                    row[index[o]] = Fraction(1)
            A.append(row)
            rhs.append(marg.get(key, Fraction(0)))
    support = set()
    for o in cells:
        if o in support:
            continue
        obj = [Fraction(0)] * len(cells)
        obj[index[o]] = Fraction(1)
        status, x, value = solve_lp(A, rhs, obj, maximize=True)
        if status != "optimal":
            raise IPFConvergenceError("constraint system is infeasible", np.inf, 0)
        # every strictly positive cell of the maximiser is supported
        support.update(c2 for c2 in cells if x[index[c2]] > 0)
    return support


def ipf_fit(
    d: JointDistribution,
    constraints: Sequence[Sequence[int]],
    tol: float = 1e-12,
    max_iter: int = 5000,
) -> JointDistribution:
    """Iterative proportional fitting from the uniform seed.

    Rescales the dense table so every marginal named in `constraints` matches
    the corresponding marginal of `d`.  Stops when every constraint marginal
    is within `tol` (L1) and the KL step between iterates falls below `tol`.

    When the max-entropy point lies on the simplex boundary plain IPF stalls
    at O(1/k); in that case the exact support is computed by rational LP and
    the fit rerun on the restricted support, which restores geometric
    convergence.

    Raises IPFConvergenceError with the residual if max_iter is exhausted.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    constraints = [tuple(c) for c in constraints]
    for c in constraints:
        _check_indices(d, c, "constraint index")
    p = d.array()
    targets = []
    for c in constraints:
        axes = tuple(i for i in range(d.n_vars) if i not in c)
        targets.append((c, axes, p.sum(axis=axes) if axes else p))
    q = np.full(d.cards, 1.0 / np.prod(d.cards))
    q, residual, ok = _ipf_sweeps(q, targets, d.n_vars, d.cards, tol, max_iter)
    if not ok:
        support = _maxent_support(d, constraints)
        q = np.zeros(d.cards)
        for o in support:
            q[o] = 1.0 / len(support)
        q, residual, ok = _ipf_sweeps(q, targets, d.n_vars, d.cards, tol, max_iter)
        if not ok:
            raise IPFConvergenceError(
                f"IPF did not converge within {max_iter} iterations "
                f"(marginal residual {residual:.3e})",
                residual,
                max_iter,
            )
    # exact renormalised rational table
    flat = {}
    total = Fraction(0)
    for outcome in itertools.product(*(range(c) for c in d.cards)):
        v = q[outcome]
        if v > 0:
            f = Fraction(float(v))
            flat[outcome] = f
            total += f
    pmf = {k: v / total for k, v in flat.items()}
    return JointDistribution(d.variables, pmf)


# -- systems ----------------------------------------------------------------


@dataclass(frozen=True)
class SystemSpec:
    """A joint distribution plus source groups and a (possibly joint) target."""

    dist: JointDistribution
    source_groups: tuple
    target: tuple

    def __post_init__(self):
        groups = tuple(tuple(g) for g in self.source_groups)
        target = tuple(self.target)
        object.__setattr__(self, "source_groups", groups)
        object.__setattr__(self, "target", target)
        if not groups:
            raise DistributionError("need at least one source group")
        if not target:
            raise DistributionError("target must be nonempty")
        seen = set()
        for g in groups + (target,):
            if not g:
                raise DistributionError("empty variable group")
            _check_indices(self.dist, g, "group index")
            if seen & set(g):
                raise DistributionError("source/target groups must be disjoint")
            seen |= set(g)

    @property
    def n_sources(self) -> int:
        return len(self.source_groups)

    def source_mi(self, i: int) -> float:
        return mutual_information(self.dist, self.source_groups[i], self.target)

    def joint_mi(self) -> float:
        joint = tuple(itertools.chain.from_iterable(self.source_groups))
        return mutual_information(self.dist, joint, self.target)

    def group_union(self, groups=None) -> tuple:
        groups = self.source_groups if groups is None else groups
        return tuple(sorted(itertools.chain.from_iterable(groups)))


def product_system(s1: SystemSpec, s2: SystemSpec) -> SystemSpec:
    """Independent product of two systems, concatenating groups pairwise.

    Both systems must have the same number of source groups; group i of the
    product is (group i of s1) + (group i of s2), and likewise for targets.
    """
    if s1.n_sources != s2.n_sources:
        raise DistributionError("product requires matching source-group counts")
    d1, d2 = s1.dist, s2.dist
    variables = d1.variables + d2.variables
    off = d1.n_vars
    pmf = {}
    for o1, p1 in d1.pmf.items():
        for o2, p2 in d2.pmf.items():
            pmf[o1 + o2] = p1 * p2
    dist = JointDistribution(variables, pmf)
    groups = tuple(
        g1 + tuple(i + off for i in g2)
        for g1, g2 in zip(s1.source_groups, s2.source_groups)
    )
    target = s1.target + tuple(i + off for i in s2.target)
    return SystemSpec(dist, groups, target)


def relabel_outcomes(s: SystemSpec, var: int, perm: Mapping) -> SystemSpec:
    """Transport the pmf through a bijection on the outcome labels of `var`.

    `perm` maps old labels to new labels and must be a bijection on the
    variable's label set.  Entropic quantities are unchanged.
    """
    d = s.dist
    _check_indices(d, (var,))
    v = d.variables[var]
    if set(perm.keys()) != set(v.labels) or set(perm.values()) != set(v.labels):
        raise DistributionError("perm is not a permutation of the outcome labels")
    index_map = {v.labels.index(k): v.labels.index(val) for k, val in perm.items()}
    pmf = {}
    for o, p in d.pmf.items():
        o2 = list(o)
        o2[var] = index_map[o[var]]
        pmf[tuple(o2)] = p
    dist = JointDistribution(d.variables, pmf)
    return SystemSpec(dist, s.source_groups, s.target)


def append_function_variable(
    d: JointDistribution, func: Callable, labels, name: str
) -> JointDistribution:
    """Adjoin a new variable computed as a deterministic function of each
    outcome tuple.  `func` maps an outcome tuple to an index into `labels`."""
    labels = tuple(labels)
    new_vars = d.variables + (VariableSpec(name, labels),)
    pmf = {}
    for o, p in d.pmf.items():
        k = func(o)
        if not (0 <= k < len(labels)):
            raise DistributionError(f"function value {k} outside label range")
        pmf[o + (k,)] = pmf.get(o + (k,), Fraction(0)) + p
    return JointDistribution(new_vars, pmf)


# -- system file format ------------------------------------------------------


def system_to_json(s: SystemSpec) -> dict:
    d = s.dist
    return {
        "variables": [
            {"name": v.name, "cardinality": v.cardinality, "labels": list(v.labels)}
            for v in d.variables
        ],
        "sources": [list(g) for g in s.source_groups],
        "target": list(s.target),
        "pmf": [
            {
                "outcome": [d.variables[i].labels[o[i]] for i in range(d.n_vars)],
                "p": f"{p.numerator}/{p.denominator}",
            }
            for o, p in sorted(d.pmf.items())
        ],
    }


def system_from_json(obj: dict) -> SystemSpec:
    try:
        variables = tuple(
            VariableSpec(v["name"], tuple(v["labels"])) for v in obj["variables"]
        )
        for v, spec in zip(obj["variables"], variables):
            if v["cardinality"] != spec.cardinality:
                raise DistributionError(
                    f"cardinality mismatch for variable {spec.name!r}"
                )
        pmf = {}
        for rec in obj["pmf"]:
            outcome = tuple(
                variables[i].labels.index(lab) for i, lab in enumerate(rec["outcome"])
            )
            pmf[outcome] = pmf.get(outcome, Fraction(0)) + Fraction(rec["p"])
        dist = JointDistribution(variables, pmf)
        return SystemSpec(dist, tuple(map(tuple, obj["sources"])), tuple(obj["target"]))
    except (KeyError, ValueError, TypeError) as e:
        if isinstance(e, DistributionError):
            raise
        raise DistributionError(f"malformed system file: {e}") from e


def save_system(s: SystemSpec, path):
    with open(path, "w") as f:
        json.dump(system_to_json(s), f, indent=1)


def load_system(path) -> SystemSpec:
    with open(path) as f:
        return system_from_json(json.load(f))
