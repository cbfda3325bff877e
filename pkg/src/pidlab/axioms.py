"""Executable axiom checkers and the falsification harness.

Each property is a falsifier: it sweeps a finite corpus plus
property-specific constructed witnesses, and returns the first violation
found (with a witness) or `no-counterexample`.  No-counterexample verdicts
are never proofs; they carry the number of systems tested.

Equality predicates use a 1e-6 tolerance for closed-form measures and 1e-4
for optimizer-backed ones, so solver residuals cannot create spurious
counterexamples.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import gates
from .blackwell import blackwell_leq
from .dist import (
    JointDistribution,
    SystemSpec,
    VariableSpec,
    append_function_variable,
    condition,
    marginalize,
    mutual_information,
    product_system,
    relabel_outcomes,
)
from .lattice import Antichain, bottom_node
from .measures import (
    UnsupportedArity,
    decompose,
    descriptor,
    evaluate,
    i_wedge,
    measure_ids,
)

PROPERTY_IDS = (
    "SR", "S0", "M0", "GP", "LP0", "LP1", "IID", "ID", "TM", "TC",
    "SE", "LB", "TE", "M1", "S1", "AST", "BP", "AD", "CO", "EI",
)

CLOSED_FORM_TOL = 1e-6
OPTIMIZER_TOL = 1e-4


@dataclass(frozen=True)
class PropertySpec:
    id: str
    checker_kind: str  # equation | inequality | constructed-witness | perturbation
    description: str


@dataclass
class PropertyVerdict:
    measure_id: str
    property_id: str
    status: str  # no-counterexample | counterexample | not-applicable
    witness: object = None
    detail: str = ""
    systems_tested: int = 0

    @property
    def found(self):
        return self.status == "counterexample"


PROPERTIES = {
    p.id: p
    for p in (
        PropertySpec("SR", "equation", "single-source redundancy equals mutual information"),
        PropertySpec("S0", "equation", "invariance under source permutations"),
        PropertySpec("M0", "inequality", "adding a source cannot increase redundancy"),
        PropertySpec("GP", "inequality", "redundancy is non-negative"),
        PropertySpec("LP0", "inequality", "bivariate atoms are non-negative"),
        PropertySpec("LP1", "inequality", "atoms non-negative for three or more sources"),
        PropertySpec("IID", "constructed-witness", "independent copied sources share nothing"),
        PropertySpec("ID", "constructed-witness", "copied-source redundancy equals source MI"),
        PropertySpec("TM", "inequality", "extending the target cannot reduce redundancy"),
        PropertySpec("TC", "equation", "chain rule over target parts"),
        PropertySpec("SE", "constructed-witness", "dropping a less-informative derived source preserves redundancy"),
        PropertySpec("LB", "inequality", "common coarsenings lower-bound redundancy"),
        PropertySpec("TE", "constructed-witness", "adding the target as a source changes nothing"),
        PropertySpec("M1", "constructed-witness", "monotonicity with target-aware equality"),
        PropertySpec("S1", "equation", "invariance under source-target swaps"),
        PropertySpec("AST", "constructed-witness", "dependence on pairwise marginals only"),
        PropertySpec("BP", "equation", "unique information vanishes iff Blackwell-inferior"),
        PropertySpec("AD", "equation", "additivity over independent subsystems"),
        PropertySpec("CO", "perturbation", "continuity under small pmf changes"),
        PropertySpec("EI", "equation", "invariance under outcome relabelling"),
    )
}


def tolerance(measure_id: str) -> float:
    return OPTIMIZER_TOL if descriptor(measure_id).needs_optimizer else CLOSED_FORM_TOL


def _value(mid, s, node=None):
    node = bottom_node(s.n_sources) if node is None else node
    return evaluate(mid, s, node)[0]


# -- corpora ------------------------------------------------------------------


@functools.cache
def core_corpus():
    """Named bivariate systems driving most falsifications."""
    systems = [
        ("tbc(0)", gates.tbc(0)),
        ("tbc(1/4)", gates.tbc("1/4")),
        ("tbc(1/2)", gates.tbc("1/2")),
        ("tbc(3/4)", gates.tbc("3/4")),
        ("tbc(1)", gates.tbc(1)),
        ("xor", gates.xor()),
        ("and", gates.and_gate()),
        ("or", gates.or_gate()),
        ("sum", gates.sum_gate()),
    ]
    for seed in range(5):
        systems.append((f"rand2x2x2/{seed}", gates.random_system(2, (2, 2, 2), seed=seed)))
    systems.append(("rand2x2x3/1", gates.random_system(2, (2, 2, 3), seed=1)))
    systems.append(("rand2x3x2/2", gates.random_system(2, (2, 3, 2), seed=2)))
    systems.append(("rand3x2x2/4", gates.random_system(2, (3, 2, 2), seed=4)))
    return tuple(systems)


@functools.cache
def full_support_corpus():
    import numpy as np

    return tuple(
        (n, s) for n, s in core_corpus() if len(s.dist.pmf) == int(np.prod(s.dist.cards))
    )


@functools.cache
def trisource_corpus():
    systems = [("xsc", gates.xor_source_copy())]
    for seed in (0, 1):
        systems.append((f"rand3/{seed}", gates.random_system(3, (2, 2, 2, 2), seed=seed)))
    return tuple(systems)


@functools.cache
def pair_target_corpus():
    """Systems whose target splits into two variables, for TM/TC witnesses."""
    systems = [
        ("tbc-pair(0)", gates.tbc_pair_target(0)),
        ("tbc-pair(1/2)", gates.tbc_pair_target("1/2")),
    ]
    for seed in (0, 1, 2):
        systems.append(
            (f"rand-t2/{seed}", gates.random_system(2, (2, 2, 2, 2), seed=seed, n_target_vars=2))
        )
    return tuple(systems)


def _copy_labels(v):
    return v.labels


def with_duplicate_source(s: SystemSpec, which: int = 0):
    """(X1, copy(X1); Y): the copy is appended as the second source group."""
    g = s.source_groups[which]
    d = s.dist
    for k, i in enumerate(g):
        d = append_function_variable(
            d, lambda o, i=i: o[i], _copy_labels(s.dist.variables[i]),
            f"{s.dist.variables[i].name}~copy",
        )
    new = tuple(range(s.dist.n_vars, d.n_vars))
    return SystemSpec(d, (g, new), s.target)


def with_constant_source(s: SystemSpec, which: int = 0):
    """(const, X_which; Y): a point-mass source joins the system."""
    d = append_function_variable(s.dist, lambda o: 0, (0,), "const")
    return SystemSpec(d, ((d.n_vars - 1,), s.source_groups[which]), s.target)


def with_target_source(s: SystemSpec, keep=None) -> SystemSpec:
    """(sources..., copy(Y); Y): the target joins the sources."""
    d = s.dist
    for i in s.target:
        d = append_function_variable(
            d, lambda o, i=i: o[i], s.dist.variables[i].labels,
            f"{s.dist.variables[i].name}~src",
        )
    new = tuple(range(s.dist.n_vars, d.n_vars))
    groups = (s.source_groups if keep is None else tuple(s.source_groups[i] for i in keep))
    return SystemSpec(d, groups + (new,), s.target)


def swap_source_target(s: SystemSpec, which: int) -> SystemSpec:
    """Exchange source group `which` with the target."""
    groups = list(s.source_groups)
    new_target = groups[which]
    groups[which] = s.target
    return SystemSpec(s.dist, tuple(groups), new_target)


def witness_ast_pair(s: SystemSpec):
    """The system and its pairwise max-entropy surrogate: identical
    (source, target) marginals, generally different source coupling."""
    from .dist import maxent_pairwise

    g1, g2 = s.source_groups
    q = maxent_pairwise(s.dist, g1, g2, s.target)
    n1, n2 = len(g1), len(g2)
    qs = SystemSpec(
        q,
        (tuple(range(n1)), tuple(range(n1, n1 + n2))),
        tuple(range(n1 + n2, q.n_vars)),
    )
    return s, qs


def witness_equality_cases(s: SystemSpec):
    """Duplicated-source, constant-source and target-as-source systems."""
    out = [
        ("dup", with_duplicate_source(s)),
        ("const", with_constant_source(s)),
    ]
    if s.n_sources >= 1:
        base1 = SystemSpec(s.dist, (s.source_groups[0],), s.target)
        out.append(("target", with_target_source(base1)))
    return out


def witness_target_ops(s: SystemSpec):
    """Target-split witnesses: (sources;Y1), (sources;Y1Y2) and the
    conditional family {(sources; Y2 | Y1 = y1)} with weights p(y1)."""
    if len(s.target) < 2:
        raise ValueError("target is not decomposable into two groups")
    y1, y2 = (s.target[0],), tuple(s.target[1:])
    part = SystemSpec(s.dist, s.source_groups, y1)
    full = s
    cond_family = []
    py1 = s.dist.exact_marginal(y1)
    for outcome, p in sorted(py1.items()):
        c = condition(s.dist, y1, outcome)
        # conditioning removed y1; remap indices
        remap = {}
        k = 0
        for i in range(s.dist.n_vars):
            if i not in y1:
                remap[i] = k
                k += 1
        groups = tuple(tuple(remap[i] for i in g) for g in s.source_groups)
        tgt = tuple(remap[i] for i in y2)
        cond_family.append((float(p), SystemSpec(c, groups, tgt)))
    return part, full, cond_family


# -- checkers -----------------------------------------------------------------


def _verdict(mid, pid, status, witness=None, detail="", tested=0):
    return PropertyVerdict(mid, pid, status, witness, detail, tested)


def check_sr(mid, corpus):
    from .measures.base import _REGISTRY, node_var_groups

    desc, fn = _REGISTRY[mid]
    tol = tolerance(mid)
    tested = 0
    for name, s in corpus:
        for node in (Antichain([(0,)]), Antichain([tuple(range(s.n_sources))])):
            try:
                got, _ = fn(s, node)
            except UnsupportedArity:
                # redundancy defined constructively on single collections
                continue
            tested += 1
            want = mutual_information(s.dist, node_var_groups(s, node)[0], s.target)
            if abs(got - want) > tol:
                return _verdict(mid, "SR", "counterexample", (name, node.label()),
                                f"I_cap={got:.6f} vs MI={want:.6f}", tested)
    return _verdict(mid, "SR", "no-counterexample", tested=max(tested, len(corpus)))


def check_s0(mid, corpus):
    tol = tolerance(mid)
    tested = 0
    for name, s in corpus:
        base = _value(mid, s)
        swapped = SystemSpec(s.dist, tuple(reversed(s.source_groups)), s.target)
        tested += 1
        v = _value(mid, swapped)
        if abs(v - base) > tol:
            return _verdict(mid, "S0", "counterexample", name,
                            f"{base:.6f} vs swapped {v:.6f}", tested)
    return _verdict(mid, "S0", "no-counterexample", tested=tested)


def check_m0(mid, corpus):
    tol = tolerance(mid)
    tested = 0
    for name, s in corpus:
        red = _value(mid, s)
        tested += 1
        for i in range(s.n_sources):
            mi = mutual_information(s.dist, s.source_groups[i], s.target)
            if red > mi + tol:
                return _verdict(mid, "M0", "counterexample", name,
                                f"I_cap={red:.6f} > I(X{i+1};Y)={mi:.6f}", tested)
    se = check_se(mid, corpus)
    if se.found:
        return _verdict(mid, "M0", "counterexample", se.witness,
                        "equality clause: " + se.detail, tested + se.systems_tested)
    return _verdict(mid, "M0", "no-counterexample", tested=tested + se.systems_tested)


def check_gp(mid, corpus):
    tol = tolerance(mid)
    tested = 0
    for name, s in corpus:
        v = _value(mid, s)
        tested += 1
        if v < -tol:
            return _verdict(mid, "GP", "counterexample", name, f"I_cap={v:.6f} < 0", tested)
    return _verdict(mid, "GP", "no-counterexample", tested=tested)


def _check_lp_tier(mid, pid, corpus, n_required):
    if descriptor(mid).max_sources < n_required:
        return _verdict(mid, pid, "not-applicable",
                        detail=f"measure limited to n<{n_required}")
    tol = tolerance(mid)
    tested = 0
    for name, s in corpus:
        try:
            dec = decompose(mid, s)
        except (UnsupportedArity, ValueError):
            continue
        tested += 1
        for node, atom in dec.atoms.items():
            if atom < -tol:
                return _verdict(mid, pid, "counterexample", (name, node.label()),
                                f"atom={atom:.6f} < 0", tested)
    if tested == 0:
        return _verdict(mid, pid, "not-applicable", detail="no evaluable systems")
    return _verdict(mid, pid, "no-counterexample", tested=tested)


def check_lp0(mid, corpus):
    return _check_lp_tier(mid, "LP0", corpus, 2)


def check_lp1(mid, corpus=None):
    if corpus is None:
        corpus = trisource_corpus()
        if descriptor(mid).needs_optimizer:
            corpus = corpus[:1]  # xsc only; keeps optimizer grids tractable
    return _check_lp_tier(mid, "LP1", corpus, 3)


def _identity_witnesses():
    out = [("tbc(0)", gates.tbc(0), True)]
    for seed in (0, 1, 2):
        out.append((f"ind-copy/{seed}", gates.random_independent_copy(seed), True))
    for c in ("0", "1/4", "1/2", "3/4", "1"):
        out.append((f"tbc({c})", gates.tbc(c), False))
    for seed in (0, 1):
        out.append((f"corr-copy/{seed}", gates.correlated_copy(seed), False))
    return out


def check_iid(mid, corpus=None):
    tol = tolerance(mid)
    tested = 0
    for name, s, independent in _identity_witnesses():
        if not independent:
            continue
        v = _value(mid, s)
        tested += 1
        if abs(v) > tol:
            return _verdict(mid, "IID", "counterexample", name,
                            f"I_cap={v:.6f} on independent copy", tested)
    return _verdict(mid, "IID", "no-counterexample", tested=tested)


def check_id(mid, corpus=None):
    tol = tolerance(mid)
    tested = 0
    for name, s, _ in _identity_witnesses():
        want = mutual_information(s.dist, s.source_groups[0], s.source_groups[1])
        v = _value(mid, s)
        tested += 1
        if abs(v - want) > tol:
            return _verdict(mid, "ID", "counterexample", name,
                            f"I_cap={v:.6f} vs I(X1;X2)={want:.6f}", tested)
    return _verdict(mid, "ID", "no-counterexample", tested=tested)


def check_tm(mid, corpus=None):
    tol = tolerance(mid)
    tested = 0
    for name, s in pair_target_corpus():
        part, full, _ = witness_target_ops(s)
        v_part = _value(mid, part)
        v_full = _value(mid, full)
        tested += 1
        if v_full < v_part - tol:
            return _verdict(mid, "TM", "counterexample", name,
                            f"I_cap(Y1Y2)={v_full:.6f} < I_cap(Y1)={v_part:.6f}", tested)
    return _verdict(mid, "TM", "no-counterexample", tested=tested)


def check_tc(mid, corpus=None):
    tol = tolerance(mid)
    tested = 0
    for name, s in pair_target_corpus():
        part, full, fam = witness_target_ops(s)
        chain = _value(mid, part) + sum(w * _value(mid, cs) for w, cs in fam)
        v_full = _value(mid, full)
        tested += 1
        if abs(v_full - chain) > tol:
            return _verdict(mid, "TC", "counterexample", name,
                            f"I_cap(Y1Y2)={v_full:.6f} vs chain={chain:.6f}", tested)
    return _verdict(mid, "TC", "no-counterexample", tested=tested)


def check_se(mid, corpus):
    tol = tolerance(mid)
    tested = 0
    for name, s in corpus:
        for kind, w in (("dup", with_duplicate_source(s)),
                        ("const", with_constant_source(s))):
            # the surviving source is the more informative one; redundancy
            # must match the removed collection's value
            if kind == "dup":
                want = mutual_information(s.dist, s.source_groups[0], s.target)
            else:
                want = 0.0
            v = _value(mid, w)
            tested += 1
            if abs(v - want) > tol:
                return _verdict(mid, "SE", "counterexample", (name, kind),
                                f"I_cap={v:.6f} vs I(Z;Y)={want:.6f}", tested)
    return _verdict(mid, "SE", "no-counterexample", tested=tested)


def check_lb(mid, corpus):
    tol = tolerance(mid)
    tested = 0
    for name, s in corpus:
        bound, _ = i_wedge(s, bottom_node(s.n_sources))
        v = _value(mid, s)
        tested += 1
        if v < bound - tol:
            return _verdict(mid, "LB", "counterexample", name,
                            f"I_cap={v:.6f} < I(Q;Y)={bound:.6f}", tested)
    return _verdict(mid, "LB", "no-counterexample", tested=tested)


def check_te(mid, corpus):
    tol = tolerance(mid)
    tested = 0
    for name, s in corpus:
        base1 = SystemSpec(s.dist, (s.source_groups[0],), s.target)
        w = with_target_source(base1)
        want = mutual_information(s.dist, s.source_groups[0], s.target)
        v = _value(mid, w)
        tested += 1
        if abs(v - want) > tol:
            return _verdict(mid, "TE", "counterexample", (name, "X1+target"),
                            f"I_cap={v:.6f} vs {want:.6f}", tested)
    return _verdict(mid, "TE", "no-counterexample", tested=tested)


def check_m1(mid, corpus):
    m0 = check_m0(mid, corpus)
    if m0.found:
        return _verdict(mid, "M1", "counterexample", m0.witness,
                        "monotone clause: " + m0.detail, m0.systems_tested)
    te = check_te(mid, corpus)
    if te.found:
        return _verdict(mid, "M1", "counterexample", te.witness,
                        "target clause: " + te.detail, m0.systems_tested + te.systems_tested)
    return _verdict(mid, "M1", "no-counterexample",
                    tested=m0.systems_tested + te.systems_tested)


def check_s1(mid, corpus):
    tol = tolerance(mid)
    tested = 0
    for name, s in corpus:
        base = _value(mid, s)
        for i in range(s.n_sources):
            try:
                v = _value(mid, swap_source_target(s, i))
            except UnsupportedArity:
                continue
            tested += 1
            if abs(v - base) > tol:
                return _verdict(mid, "S1", "counterexample", (name, f"swap X{i+1}<->Y"),
                                f"{base:.6f} vs {v:.6f}", tested)
    return _verdict(mid, "S1", "no-counterexample", tested=tested)


def check_ast(mid, corpus=None):
    """Assumption (*): value must agree across systems sharing all
    (source, target) marginals.  Witnesses keep full support, matching the
    regime in which the positive claims are made."""
    tol = tolerance(mid)
    tested = 0
    for name, s in full_support_corpus():
        a, b = witness_ast_pair(s)
        va, vb = _value(mid, a), _value(mid, b)
        tested += 1
        if abs(va - vb) > tol:
            return _verdict(mid, "AST", "counterexample", name,
                            f"{va:.6f} vs maxent twin {vb:.6f}", tested)
    return _verdict(mid, "AST", "no-counterexample", tested=tested)


def check_bp(mid, corpus):
    """Unique information vanishes iff the source is Blackwell-inferior.

    Falsified only with a clear margin: unique values inside
    [tol, 10*tol] are treated as inconclusive to keep solver noise out.
    """
    tol = tolerance(mid)
    tested = 0
    if descriptor(mid).max_sources < 2:
        return _verdict(mid, "BP", "not-applicable")
    witnesses = list(corpus)
    for name, s in corpus[:4]:
        witnesses.append((f"{name}+dup", with_duplicate_source(s)))
    for name, s in witnesses:
        if s.n_sources != 2:
            continue
        try:
            dec = decompose(mid, s)
        except (UnsupportedArity, ValueError):
            continue
        tested += 1
        for i, node in enumerate((Antichain([(0,)]), Antichain([(1,)]))):
            unique = dec.atoms[node]
            other = 1 - i
            bw, _ = blackwell_leq(s, s.source_groups[i], s.source_groups[other])
            if bw and abs(unique) > 10 * tol:
                return _verdict(mid, "BP", "counterexample", (name, f"X{i+1}"),
                                f"Blackwell-inferior but unique={unique:.6f}", tested)
            if not bw and abs(unique) < tol:
                return _verdict(mid, "BP", "counterexample", (name, f"X{i+1}"),
                                f"unique~0 without Blackwell order", tested)
    return _verdict(mid, "BP", "no-counterexample", tested=tested)


@functools.cache
def _ad_pairs():
    pairs = [
        ("tbc(0)^2", gates.tbc(0), gates.tbc(0)),
        ("xor*tbc(0)", gates.xor(), gates.tbc(0)),
        ("xor^2", gates.xor(), gates.xor()),
        ("and*mirror", gates.and_gate(),
         SystemSpec(gates.and_gate().dist, ((1,), (0,)), (2,))),
        ("rand0*rand1", gates.random_system(2, (2, 2, 2), seed=0),
         gates.random_system(2, (2, 2, 2), seed=1)),
    ]
    return tuple(pairs)


def check_ad(mid, corpus=None):
    tol = tolerance(mid)
    tested = 0
    for name, s1, s2 in _ad_pairs():
        prod = product_system(s1, s2)
        try:
            v = _value(mid, prod)
        except (UnsupportedArity, ValueError):
            continue
        want = _value(mid, s1) + _value(mid, s2)
        tested += 1
        if abs(v - want) > tol:
            return _verdict(mid, "AD", "counterexample", name,
                            f"I_cap(product)={v:.6f} vs sum={want:.6f}", tested)
    return _verdict(mid, "AD", "no-counterexample", tested=tested)


def _perturb(s: SystemSpec, rng, epsilon: float) -> SystemSpec:
    """A system within L1 distance ~epsilon, renormalised, full box support."""
    d = s.dist
    cells = list(itertools.product(*(range(c) for c in d.cards)))
    n = len(cells)
    weights = {}
    for o in cells:
        w = float(d.p(o)) + epsilon * rng.random() / n
        weights[o] = Fraction(w).limit_denominator(10**12)
    total = sum(weights.values())
    pmf = {o: w / total for o, w in weights.items() if w > 0}
    dist = JointDistribution(d.variables, pmf)
    return SystemSpec(dist, s.source_groups, s.target)


def check_continuity(mid, corpus, n_perturbations=4, epsilon=1e-4):
    """Continuity falsifier: flags |delta I_cap| > K * epsilon at the largest
    escalation factor K = 1000.  A pass is NOT a continuity proof."""
    tested = 0
    names = {"tbc(1)", "tbc(0)", "xor", "and", "rand2x2x2/0"}
    for name, s in corpus:
        if name not in names:
            continue
        base = _value(mid, s)
        rng = random.Random(f"co/{name}")
        for k in range(n_perturbations):
            t = _perturb(s, rng, epsilon)
            v = _value(mid, t)
            tested += 1
            if abs(v - base) > 1000 * epsilon:
                return _verdict(mid, "CO", "counterexample", (name, f"perturbation {k}"),
                                f"|delta|={abs(v - base):.6f} under eps={epsilon}", tested)
    return _verdict(mid, "CO", "no-counterexample", tested=tested)


def check_ei(mid, corpus):
    tested = 0
    names_limit = 3 if descriptor(mid).needs_optimizer else 6
    for name, s in corpus[:names_limit]:
        base = _value(mid, s)
        for var in range(s.dist.n_vars):
            labels = s.dist.variables[var].labels
            perms = [tuple(reversed(labels))]
            if len(labels) <= 3:
                perms = list(itertools.permutations(labels))
            rng = random.Random(f"ei/{name}/{var}")
            if len(labels) == 4:
                extra = list(labels)
                rng.shuffle(extra)
                perms.append(tuple(extra))
            for p in perms:
                t = relabel_outcomes(s, var, dict(zip(labels, p)))
                v = _value(mid, t)
                tested += 1
                if abs(v - base) > 1e-9:
                    return _verdict(mid, "EI", "counterexample", (name, var, p),
                                    f"{base:.9f} vs {v:.9f}", tested)
    return _verdict(mid, "EI", "no-counterexample", tested=tested)


CHECKERS = {
    "SR": check_sr,
    "S0": check_s0,
    "M0": check_m0,
    "GP": check_gp,
    "LP0": check_lp0,
    "LP1": lambda mid, corpus: check_lp1(mid),
    "IID": lambda mid, corpus: check_iid(mid),
    "ID": lambda mid, corpus: check_id(mid),
    "TM": lambda mid, corpus: check_tm(mid),
    "TC": lambda mid, corpus: check_tc(mid),
    "SE": check_se,
    "LB": check_lb,
    "TE": check_te,
    "M1": check_m1,
    "S1": check_s1,
    "AST": lambda mid, corpus: check_ast(mid),
    "BP": check_bp,
    "AD": lambda mid, corpus: check_ad(mid),
    "CO": check_continuity,
    "EI": check_ei,
}

def check_property(property_id, measure_id, corpus=None):
    """Run one falsifier; corpus defaults to the core bivariate corpus."""
    corpus = core_corpus() if corpus is None else tuple(corpus)
    return CHECKERS[property_id](measure_id, corpus)


def verify_table(measures=None, properties=None, corpus=None):
    """Full verification grid: {measure: {property: PropertyVerdict}}."""
    measures = measure_ids() if measures is None else list(measures)
    properties = list(PROPERTY_IDS) if properties is None else list(properties)
    corpus = core_corpus() if corpus is None else tuple(corpus)
    grid = {}
    for mid in measures:
        grid[mid] = {}
        for pid in properties:
            grid[mid][pid] = check_property(pid, mid, corpus)
    return grid
