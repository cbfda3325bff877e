"""Redundancy lattice: antichain enumeration, partial order, Moebius inversion.

Nodes are antichains of nonempty source-index sets (no set contains another),
ordered by: alpha <= beta iff every B in beta contains some A in alpha.  The
node counts are 1, 4, 18, 166 for n = 1..4 sources; n is hard-capped at 4
because the counts grow with the Dedekind numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

MAX_SOURCES = 4


class LatticeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Antichain:
    """Canonicalised collection of pairwise-incomparable source-index sets.

    Source indices are 0-based; `sets` is a tuple of sorted tuples, itself
    sorted, so equal antichains hash identically and print deterministically.
    """

    sets: tuple

    def __init__(self, sets):
        canon = tuple(sorted(tuple(sorted(set(s))) for s in sets))
        object.__setattr__(self, "sets", canon)
        if not canon:
            raise LatticeError("antichain must contain at least one set")
        for s in canon:
            if not s:
                raise LatticeError("antichain sets must be nonempty")
        for a, b in itertools.combinations(canon, 2):
            if set(a) <= set(b) or set(b) <= set(a):
                raise LatticeError(f"{a} and {b} are comparable; not an antichain")

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    @property
    def is_singleton(self):
        return len(self.sets) == 1

    def label(self) -> str:
        """Paper-style 1-based label, e.g. '{1}{23}'."""
        return "".join("{" + "".join(str(i + 1) for i in s) + "}" for s in self.sets)

    def __repr__(self):
        return f"Antichain({self.label()})"


def bottom_node(n: int) -> Antichain:
    return Antichain([(i,) for i in range(n)])


def top_node(n: int) -> Antichain:
    return Antichain([tuple(range(n))])


def below(alpha: Antichain, beta: Antichain) -> bool:
    """alpha <= beta iff for every B in beta some A in alpha satisfies A ⊆ B."""
    return all(any(set(a) <= set(b) for a in alpha.sets) for b in beta.sets)


def enumerate_antichains(n: int):
    """All antichains of nonempty subsets of {0..n-1} (excluding the empty
    antichain), in canonical order.  Counts: 1, 4, 18, 166 for n = 1..4."""
    if not (1 <= n <= MAX_SOURCES):
        raise LatticeError(f"n must be in 1..{MAX_SOURCES} (Dedekind blowup beyond)")
    subsets = []
    for k in range(1, n + 1):
        subsets.extend(itertools.combinations(range(n), k))
    result = []
    for mask in range(1, 1 << len(subsets)):
        chosen = [subsets[i] for i in range(len(subsets)) if mask >> i & 1]
        ok = True
        for a, b in itertools.combinations(chosen, 2):
            if set(a) <= set(b) or set(b) <= set(a):
                ok = False
                break
        if ok:
            result.append(Antichain(chosen))
    result.sort(key=lambda a: (sorted(len(s) for s in a.sets), a.sets))
    return result


class RedundancyLattice:
    """All antichains over n sources with the Williams-Beer order.

    Precomputes strict down-sets and Hasse covers; instances are cached per n
    and immutable.
    """

    _cache = {}

    def __new__(cls, n_sources: int):
        if n_sources in cls._cache:
            return cls._cache[n_sources]
        self = super().__new__(cls)
        self.n_sources = n_sources
        self.nodes = enumerate_antichains(n_sources)
        index = {a: i for i, a in enumerate(self.nodes)}
        self._index = index
        leq = [[False] * len(self.nodes) for _ in self.nodes]
        for i, a in enumerate(self.nodes):
            for j, b in enumerate(self.nodes):
                leq[i][j] = below(a, b)
        self._leq = leq
        self.downsets = {}
        for j, b in enumerate(self.nodes):
            self.downsets[b] = [
                self.nodes[i] for i in range(len(self.nodes)) if leq[i][j] and i != j
            ]
        # Hasse predecessors: maximal elements of each strict down-set
        self.covers = {}
        for b in self.nodes:
            down = self.downsets[b]
            self.covers[b] = [
                a
                for a in down
                if not any(c != a and leq[index[a]][index[c]] for c in down)
            ]
        # canonical node order: topological by down-set size, bottom first
        self.topo = sorted(self.nodes, key=lambda a: (len(self.downsets[a]), a.sets))
        self.nodes = self.topo
        cls._cache[n_sources] = self
        return self

    def leq(self, a: Antichain, b: Antichain) -> bool:
        return self._leq[self._index[a]][self._index[b]]

    @property
    def bottom(self) -> Antichain:
        return bottom_node(self.n_sources)

    @property
    def top(self) -> Antichain:
        return top_node(self.n_sources)

    def __len__(self):
        return len(self.nodes)


def moebius_atoms(lattice: RedundancyLattice, icap: dict) -> dict:
    """Invert icap into per-node atoms: atom(a) = icap(a) - sum of atoms
    strictly below a, accumulated in topological order."""
    missing = [a for a in lattice.nodes if a not in icap]
    if missing:
        raise LatticeError(f"icap missing nodes: {missing[:3]}")
    atoms = {}
    for a in lattice.topo:
        atoms[a] = icap[a] - sum(atoms[b] for b in lattice.downsets[a])
    return atoms


def recompose(lattice: RedundancyLattice, atoms: dict) -> dict:
    """Inverse of moebius_atoms: icap(a) = sum of atoms at or below a."""
    icap = {}
    for a in lattice.nodes:
        icap[a] = atoms[a] + sum(atoms[b] for b in lattice.downsets[a])
    return icap


@dataclass
class Decomposition:
    """A measure's redundancy values and Moebius atoms over a lattice."""

    measure_id: str
    lattice: RedundancyLattice
    icap: dict
    atoms: dict
    reports: dict = field(default_factory=dict)
    warnings: tuple = ()

    def atom(self, *sets) -> float:
        return self.atoms[Antichain(sets)]

    def redundancy(self) -> float:
        return self.icap[self.lattice.bottom]

    def rows(self):
        """(node, icap, atom, residual) in canonical node order."""
        out = []
        for a in self.lattice.nodes:
            rep = self.reports.get(a)
            out.append((a, self.icap[a], self.atoms[a], rep))
        return out


def union_information(decomp: Decomposition) -> float:
    """Union information by inclusion-exclusion over singleton collections.

    I_cup = sum over nonempty J of (-1)^(|J|+1) icap({{i} : i in J}).
    """
    n = decomp.lattice.n_sources
    total = 0.0
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            node = Antichain([(i,) for i in combo])
            total += (-1) ** (k + 1) * decomp.icap[node]
    return total


def dump_lines(lattice: RedundancyLattice, atoms: dict | None = None):
    """Lattice dump: node id, Hasse predecessors, atom value per line."""
    lines = []
    for a in lattice.nodes:
        preds = ",".join(p.label() for p in lattice.covers[a]) or "-"
        atom = "" if atoms is None else f"\t{atoms[a]:.9f}"
        lines.append(f"{a.label()}\t{preds}{atom}")
    return lines
