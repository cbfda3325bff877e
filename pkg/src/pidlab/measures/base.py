"""Measure registry, decomposition driver, and shared plumbing.

Every redundancy measure maps (SystemSpec, Antichain) to a value in bits;
antichain elements index the system's source groups.  Singleton collections
are always evaluated as plain mutual information (self-redundancy is imposed
by construction, as several of the published definitions do themselves).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..dist import DistributionError, JointDistribution, SystemSpec, mutual_information
from ..lattice import Antichain, Decomposition, RedundancyLattice, moebius_atoms


class UnsupportedArity(DistributionError):
    """Measure does not support this number of source groups."""


class SolverFailure(RuntimeError):
    """An optimizer-backed measure failed to converge."""


@dataclass(frozen=True)
class OptimizerReport:
    objective_value: float
    iterations: int
    residual: float
    restarts_used: int = 0
    approximate: bool = False


@dataclass(frozen=True)
class MeasureDescriptor:
    id: str
    name: str
    max_sources: int
    pointwise: bool = False
    needs_optimizer: bool = False
    unique_first: bool = False

    def __post_init__(self):
        if self.max_sources not in (2, 3, 4):
            raise ValueError("max_sources must be 2, 3 or 4")


_REGISTRY = {}


def register(descriptor: MeasureDescriptor, fn):
    if descriptor.id in _REGISTRY:
        raise ValueError(f"duplicate measure id {descriptor.id}")
    _REGISTRY[descriptor.id] = (descriptor, fn)


def measure_ids():
    return sorted(_REGISTRY)


def descriptor(measure_id: str) -> MeasureDescriptor:
    try:
        return _REGISTRY[measure_id][0]
    except KeyError:
        raise KeyError(f"unknown measure {measure_id!r}; known: {', '.join(measure_ids())}")


def node_var_groups(s: SystemSpec, node: Antichain):
    """Map a lattice node's source-index sets to variable-index groups."""
    return tuple(
        tuple(sorted(itertools.chain.from_iterable(s.source_groups[i] for i in a)))
        for a in node.sets
    )


def canonical_system(s: SystemSpec) -> SystemSpec:
    """Relabel every variable's outcomes by a label-invariant fingerprint.

    Informationally equivalent inputs (outcome permutations) map to the same
    canonical system, which makes sampling-based optimizers exactly invariant
    under relabelling.
    """
    d = s.dist
    keys = [
        {o: (float(p),) for o, p in d.exact_marginal((v,)).items()}
        for v in range(d.n_vars)
    ]
    for v in range(d.n_vars):
        for o in range(d.variables[v].cardinality):
            keys[v].setdefault(o, (0.0,))
    for _ in range(3):
        new_keys = []
        for v in range(d.n_vars):
            nk = {}
            for o in range(d.variables[v].cardinality):
                rows = sorted(
                    (float(p),) + tuple(keys[w][out[w]] for w in range(d.n_vars) if w != v)
                    for out, p in d.pmf.items()
                    if out[v] == o
                )
                nk[o] = (keys[v][o], tuple(rows))
            new_keys.append(nk)
        keys = new_keys
    perms = []
    for v in range(d.n_vars):
        order = sorted(range(d.variables[v].cardinality), key=lambda o: (keys[v][o], o))
        perms.append({old: new for new, old in enumerate(order)})
    pmf = {}
    for out, p in d.pmf.items():
        new_out = tuple(perms[v][out[v]] for v in range(d.n_vars))
        pmf[new_out] = p
    variables = tuple(
        type(v)(v.name, tuple(range(v.cardinality))) for v in d.variables
    )
    dist = JointDistribution(variables, pmf)
    return SystemSpec(dist, s.source_groups, s.target)


_VALUE_CACHE = {}


def evaluate(measure_id: str, s: SystemSpec, node: Antichain):
    """I_cap of `measure_id` at `node`, with self-redundancy short-circuit.

    Returns (value_in_bits, OptimizerReport or None).  Values are cached per
    (measure, system, node).
    """
    desc, fn = _REGISTRY[measure_id]
    if max(max(a) for a in node.sets) >= s.n_sources:
        raise DistributionError(f"node {node.label()} indexes beyond the sources")
    if len(node.sets) > 1 and s.n_sources > desc.max_sources:
        raise UnsupportedArity(
            f"measure {measure_id} supports at most {desc.max_sources} sources"
        )
    if node.is_singleton:
        group = node_var_groups(s, node)[0]
        return mutual_information(s.dist, group, s.target), None
    key = (measure_id, s, node)
    if key not in _VALUE_CACHE:
        _VALUE_CACHE[key] = fn(s, node)
    return _VALUE_CACHE[key]


def value(measure_id: str, s: SystemSpec, node: Antichain | None = None) -> float:
    """Convenience: I_cap at `node` (default: bottom node of the system)."""
    from ..lattice import bottom_node

    if node is None:
        node = bottom_node(s.n_sources)
    return evaluate(measure_id, s, node)[0]


def decompose(measure_id: str, s: SystemSpec) -> Decomposition:
    """Evaluate I_cap on every lattice node and Moebius-invert into atoms.

    Unique-information-first bivariate measures (dep, do) fill the four-node
    lattice from their unique values; every other measure is evaluated node
    by node, with singleton nodes pinned to mutual information.
    """
    desc, fn = _REGISTRY[measure_id]
    n = s.n_sources
    if n > desc.max_sources:
        raise UnsupportedArity(
            f"measure {measure_id} supports at most {desc.max_sources} sources "
            f"(got {n})"
        )
    lattice = RedundancyLattice(n)
    icap, reports = {}, {}
    for a in lattice.nodes:
        v, rep = evaluate(measure_id, s, a)
        icap[a] = v
        if rep is not None:
            reports[a] = rep
    atoms = moebius_atoms(lattice, icap)
    return Decomposition(measure_id, lattice, icap, atoms, reports)
