"""Calculi, varieties of components, and their structural algebra.

A calculus is a finite axiom set under a named ruleset; its theorems are
never materialized, membership being decided by classical entailment on
demand.  A variety indexes several calculi as components, optionally
renaming each component's symbols into the shared language, and the
operations here ask structural questions about the family: whether
components overlap (connectedness), whether they fit inside one consistent
calculus together (compatibility), and what changes when components are kept
apart by labeling (discretization).

Theorem sets are infinite, so theorem-level comparisons are relativized to a
finite probe universe of ground formulas.  Discretization labels are
metadata: they qualify formulas in the set comparisons behind discreteness
and connectedness, and they are erased before anything reaches the
satisfiability engine, so upper levels and compatibility never see them.

Set intersections for connectedness and the depth check are taken on axiom
(generator) sets rather than theorem sets: classical theorem sets always
share the tautologies, which would make those notions vacuous.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Hashable, Iterable, Mapping, Optional, Sequence, Union

from . import sat
from .engine import DomainOfRules, maximal_positions
from .errors import IncompleteRenaming
from .formula import (
    And,
    Atom,
    Formula,
    Not,
    Signature,
    atoms_of,
    is_ground,
    print_formula,
)

RULESET_CLASSICAL = "CLASSICAL"

Label = Optional[Hashable]


def _unique(formulas: Iterable[Formula]) -> tuple[Formula, ...]:
    out: list[Formula] = []
    for f in formulas:
        if f not in out:
            out.append(f)
    return tuple(out)


class Calculus:
    """A finite axiom set with a ruleset identifier and a lazy theorem set.

    Only the classical propositional ruleset is implemented; theorem
    membership is `theorem_in`, which routes through the satisfiability
    engine.  Equality compares the axiom set and the ruleset, ignoring the
    signature, so structurally equal calculi over the same language compare
    equal no matter where they were built.
    """

    def __init__(
        self,
        axioms: Iterable[Formula],
        signature: Signature,
        ruleset: str = RULESET_CLASSICAL,
    ) -> None:
        if ruleset != RULESET_CLASSICAL:
            raise ValueError(f"unsupported ruleset: {ruleset!r}")
        self.axioms = _unique(axioms)
        for f in self.axioms:
            if not is_ground(f):
                raise ValueError(
                    f"calculus axiom contains variables: {print_formula(f)}"
                )
            signature.register_formula(f)
        self.signature = signature
        self.ruleset = ruleset

    @property
    def axiom_set(self) -> frozenset[Formula]:
        return frozenset(self.axioms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Calculus):
            return NotImplemented
        return (
            self.axiom_set == other.axiom_set and self.ruleset == other.ruleset
        )

    def __hash__(self) -> int:
        return hash((self.axiom_set, self.ruleset))

    def __repr__(self) -> str:
        return f"Calculus({len(self.axioms)} axioms, {self.ruleset})"


def theorem_in(
    c: Calculus, phi: Formula, max_decisions: Optional[int] = None
) -> bool:
    """Whether phi belongs to the calculus's theorem set."""
    if not is_ground(phi):
        raise ValueError(f"not ground: {print_formula(phi)}")
    return sat.entails(c.axioms, phi, c.signature, max_decisions)


class RenamingMap:
    """A bijective renaming of predicate and constant names.

    Applying the map atom-wise turns formulas over the source names into
    formulas over the target names; names the map does not cover raise
    IncompleteRenaming on use.  Arity preservation is enforced where the
    renamed atoms are declared, since the target signature knows both
    arities.
    """

    def __init__(
        self,
        predicates: Optional[Mapping[str, str]] = None,
        constants: Optional[Mapping[str, str]] = None,
    ) -> None:
        self.predicates = dict(predicates or {})
        self.constants = dict(constants or {})
        for table, kind in (
            (self.predicates, "predicate"),
            (self.constants, "constant"),
        ):
            if len(set(table.values())) != len(table):
                raise ValueError(f"{kind} renaming is not injective: {table}")

    @classmethod
    def identity(cls, signature: Signature) -> "RenamingMap":
        return cls(
            {name: name for name, _ in signature.predicates},
            {name: name for name in signature.constants},
        )

    def inverse(self) -> "RenamingMap":
        return RenamingMap(
            {new: old for old, new in self.predicates.items()},
            {new: old for old, new in self.constants.items()},
        )

    def rename_atom(self, atom: Atom) -> Atom:
        try:
            predicate = self.predicates[atom.predicate]
            args = tuple(self.constants[a] for a in atom.args)
        except KeyError as missing:
            raise IncompleteRenaming(
                f"renaming does not cover {missing.args[0]!r} "
                f"in atom {atom}"
            ) from None
        return Atom(predicate, args)

    def rename_formula(self, formula: Formula) -> Formula:
        if isinstance(formula, Atom):
            return self.rename_atom(formula)
        if isinstance(formula, Not):
            return Not(self.rename_formula(formula.operand))
        return type(formula)(
            self.rename_formula(formula.left),
            self.rename_formula(formula.right),
        )


def apply_renaming(m: RenamingMap, c: Calculus) -> Calculus:
    """The calculus with every axiom renamed atom-wise.

    The map must cover every predicate and constant name occurring in the
    axioms (IncompleteRenaming otherwise).  Theorem membership commutes:
    renamed theorems of the renamed calculus are exactly the renamed
    theorems of the original.
    """
    return Calculus(
        [m.rename_formula(f) for f in c.axioms], c.signature, c.ruleset
    )


class ProbeUniverse:
    """A finite, ordered, duplicate-free window onto infinite theorem sets.

    Comparisons between theorem sets quantify over a probe instead of the
    whole language.  `covering` builds the default probe for a variety: every
    component axiom, plus whatever extra formulas the caller wants observed.
    Custom probes may be narrower than the covering one.
    """

    def __init__(self, formulas: Iterable[Formula]) -> None:
        unique = _unique(formulas)
        for f in unique:
            if not is_ground(f):
                raise ValueError(f"probe formula not ground: {print_formula(f)}")
        self.formulas = unique

    @classmethod
    def covering(
        cls, variety: "Variety", extra: Iterable[Formula] = ()
    ) -> "ProbeUniverse":
        collected: list[Formula] = []
        for i in range(len(variety)):
            collected.extend(variety.renamed_axioms(i))
        collected.extend(extra)
        return cls(collected)

    def __iter__(self):
        return iter(self.formulas)

    def __len__(self) -> int:
        return len(self.formulas)

    def __contains__(self, formula: object) -> bool:
        return formula in self.formulas


Probe = Union[ProbeUniverse, Sequence[Formula]]


def _probe_formulas(probe: Probe) -> tuple[Formula, ...]:
    if isinstance(probe, ProbeUniverse):
        return probe.formulas
    return ProbeUniverse(probe).formulas


class Variety:
    """An indexed family of calculi amalgamated into one language.

    Each component may carry a renaming map (None means inclusion: the
    component's formulas are already in the shared language) and an optional
    discretization label.  Renamed axiom tuples are computed eagerly, so an
    incomplete renaming fails at construction time, not at first query.
    """

    def __init__(
        self,
        components: Sequence[Calculus],
        signature: Signature,
        maps: Optional[Sequence[Optional[RenamingMap]]] = None,
        labels: Optional[Sequence[Label]] = None,
    ) -> None:
        self.components = tuple(components)
        if not self.components:
            raise ValueError("a variety needs at least one component")
        n = len(self.components)
        self.maps = tuple(maps) if maps is not None else (None,) * n
        self.labels = tuple(labels) if labels is not None else (None,) * n
        if len(self.maps) != n:
            raise ValueError("one renaming map entry per component required")
        if len(self.labels) != n:
            raise ValueError("one label entry per component required")
        self.signature = signature
        renamed = []
        for calculus, mapping in zip(self.components, self.maps):
            if mapping is None:
                renamed.append(calculus.axioms)
            else:
                renamed.append(
                    tuple(mapping.rename_formula(f) for f in calculus.axioms)
                )
            for f in renamed[-1]:
                signature.register_formula(f)
        self._renamed = tuple(renamed)

    def __len__(self) -> int:
        return len(self.components)

    def renamed_axioms(self, i: int) -> tuple[Formula, ...]:
        """Component i's axioms, carried into the shared language."""
        return self._renamed[i]

    def axiom_set(self, i: int) -> frozenset[Formula]:
        return frozenset(self._renamed[i])

    def qualified_axiom_set(
        self, i: int
    ) -> frozenset[tuple[Label, Formula]]:
        """Axioms tagged with the component's label (None when unlabeled)."""
        label = self.labels[i]
        return frozenset((label, f) for f in self._renamed[i])

    def generators(self) -> tuple[Formula, ...]:
        """Union of the renamed component axiom sets, in component order."""
        return _unique(
            f for axioms in self._renamed for f in axioms
        )

    def check_indices(self, subset: Iterable[int]) -> tuple[int, ...]:
        indices = tuple(subset)
        if not indices:
            raise ValueError("empty component subset")
        if len(set(indices)) != len(indices):
            raise ValueError(f"repeated component index in {indices}")
        for i in indices:
            if not 0 <= i < len(self.components):
                raise IndexError(f"component index out of range: {i}")
        return indices


def variety_of(domain: DomainOfRules) -> Variety:
    """The variety whose components close the domain's maximal positions.

    One component per maximal position, in the positions' order; component
    axioms are the position's formulas (shared axioms included), inclusion
    maps, no labels.
    """
    components = [
        Calculus(position.formulas, domain.signature)
        for position in maximal_positions(domain)
    ]
    return Variety(components, domain.signature)


def upper_level(
    v: Variety, probe: Probe, max_decisions: Optional[int] = None
) -> tuple[Formula, ...]:
    """Probe formulas that are theorems of at least one component.

    Labels never matter here: theorems are decided on plain formulas.  The
    result keeps the probe's order, making aggregation deterministic.
    """
    out = []
    for phi in _probe_formulas(probe):
        if any(
            sat.entails(v.renamed_axioms(i), phi, v.signature, max_decisions)
            for i in range(len(v))
        ):
            out.append(phi)
    return tuple(out)


def is_discrete(v: Variety) -> bool:
    """Whether the label-qualified component axiom sets are pairwise disjoint."""
    sets = [v.qualified_axiom_set(i) for i in range(len(v))]
    return all(
        not (sets[i] & sets[j])
        for i, j in itertools.combinations(range(len(sets)), 2)
    )


def is_connected(v: Variety) -> bool:
    """Whether every pair of components shares an axiom.

    Intersections are taken on label-qualified generator sets, so a
    discretized variety with several components is never connected.  A
    single-component variety is vacuously connected.
    """
    sets = [v.qualified_axiom_set(i) for i in range(len(v))]
    return all(
        bool(sets[i] & sets[j])
        for i, j in itertools.combinations(range(len(sets)), 2)
    )


def is_compatible(
    v: Variety,
    subset: Iterable[int],
    max_decisions: Optional[int] = None,
) -> bool:
    """Whether the selected components fit into one consistent calculus.

    Decided as consistency of the union of their (label-erased) axiom sets:
    a consistent union generates a consistent classical calculus containing
    every selected component, and an inconsistent union embeds in none.
    """
    indices = v.check_indices(subset)
    union = _unique(
        f for i in sorted(indices) for f in v.renamed_axioms(i)
    )
    return sat.is_consistent(union, v.signature, max_decisions)


def discretize(v: Variety) -> Variety:
    """The same components kept apart by per-component labels.

    The result is discrete by construction, and since labels are erased at
    every observation point (upper levels, compatibility, depth checks),
    those verdicts are unchanged.
    """
    return Variety(
        v.components, v.signature, v.maps, labels=tuple(range(len(v)))
    )


@dataclass(frozen=True)
class DepthCheckResult:
    """Outcome of check_variety_depth; falsy when a subset fails.

    On failure, `failing_components` is the first bad k-subset in index
    order and `counterexample` the first probe formula the candidate
    calculus cannot reach.
    """

    holds: bool
    failing_components: Optional[tuple[int, ...]] = None
    counterexample: Optional[Formula] = None

    def __bool__(self) -> bool:
        return self.holds


def check_variety_depth(
    v: Variety,
    k: int,
    probe: Probe,
    max_decisions: Optional[int] = None,
) -> DepthCheckResult:
    """Verify that k-wise component intersections are calculus-generated.

    For every k-subset of components, either the axiom-set intersection and
    the probed theorem-set intersection are both empty, or the calculus
    generated by the axiom-set intersection entails every probe formula the
    components' theorem sets share.  Labels are erased throughout.
    """
    n = len(v)
    if not 1 <= k <= n:
        raise ValueError(f"k must be between 1 and {n}, got {k}")
    formulas = _probe_formulas(probe)
    axiom_sets = [v.axiom_set(i) for i in range(n)]
    probed = [
        frozenset(
            phi
            for phi in formulas
            if sat.entails(v.renamed_axioms(i), phi, v.signature, max_decisions)
        )
        for i in range(n)
    ]
    entail_memo: dict[tuple[frozenset[Formula], Formula], bool] = {}
    for combo in itertools.combinations(range(n), k):
        shared_axioms = frozenset.intersection(
            *(axiom_sets[i] for i in combo)
        )
        shared_theorems = [
            phi for phi in formulas if all(phi in probed[i] for i in combo)
        ]
        if not shared_axioms and not shared_theorems:
            continue
        candidate = sorted(shared_axioms, key=print_formula)
        for phi in shared_theorems:
            key = (shared_axioms, phi)
            verdict = entail_memo.get(key)
            if verdict is None:
                verdict = sat.entails(
                    candidate, phi, v.signature, max_decisions
                )
                entail_memo[key] = verdict
            if not verdict:
                return DepthCheckResult(False, combo, phi)
    return DepthCheckResult(True)


def witness_variety(n: int) -> Variety:
    """A connected n-component variety compatible in every proper part only.

    Component i holds {q, p_i, -(p_1 & ... & p_n)}.  Dropping any one
    component leaves the excluded p_j free to be false, so every
    (n-1)-subset is compatible; all n components together force every p_i
    true against the shared negation, so the whole family is not.  The
    certification leans on the classical ruleset: compatibility is decided
    by classical consistency of the union.
    """
    if n < 2:
        raise ValueError(f"need at least 2 components, got {n}")
    signature = Signature()
    q = Atom("q")
    ps = [Atom(f"p{i}") for i in range(1, n + 1)]
    veto = Not(reduce(And, ps))
    components = [Calculus((q, p, veto), signature) for p in ps]
    return Variety(components, signature)


# ---------------------------------------------------------------------------
# Partition graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionNode:
    index: int
    formulas: tuple[Formula, ...]
    atoms: tuple[Atom, ...]


@dataclass(frozen=True)
class PartitionEdge:
    left: int
    right: int
    shared: tuple[Atom, ...]


@dataclass(frozen=True)
class PartitionGraph:
    nodes: tuple[PartitionNode, ...]
    edges: tuple[PartitionEdge, ...]


def _atom_key(atom: Atom) -> tuple:
    return (atom.predicate, atom.args)


def _node(index: int, formulas: Sequence[Formula]) -> PartitionNode:
    atoms: set[Atom] = set()
    for f in formulas:
        atoms |= atoms_of(f)
    return PartitionNode(
        index, tuple(formulas), tuple(sorted(atoms, key=_atom_key))
    )


def partition_graph(
    formulas: Sequence[Formula] = (),
    groups: Optional[Sequence[Sequence[Formula]]] = None,
) -> PartitionGraph:
    """Partition formulas by atom co-occurrence, or relate given groups.

    With no pre-grouping, formulas land in the same partition exactly when
    they are connected through shared atoms; partitions become nodes and the
    edge set is empty by construction.  With a pre-grouping, each group is a
    node and edges link groups sharing at least one atom, labeled by the
    shared atoms.
    """
    if groups is not None:
        nodes = [_node(i, _unique(group)) for i, group in enumerate(groups)]
        edges = []
        for i, j in itertools.combinations(range(len(nodes)), 2):
            shared = set(nodes[i].atoms) & set(nodes[j].atoms)
            if shared:
                edges.append(
                    PartitionEdge(i, j, tuple(sorted(shared, key=_atom_key)))
                )
        return PartitionGraph(tuple(nodes), tuple(edges))

    ordered = _unique(formulas)
    parent = list(range(len(ordered)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    first_use: dict[Atom, int] = {}
    for i, f in enumerate(ordered):
        for atom in atoms_of(f):
            if atom in first_use:
                union(first_use[atom], i)
            else:
                first_use[atom] = i

    clusters: dict[int, list[Formula]] = {}
    for i, f in enumerate(ordered):
        clusters.setdefault(find(i), []).append(f)
    nodes = [
        _node(index, clusters[root])
        for index, root in enumerate(sorted(clusters))
    ]
    return PartitionGraph(tuple(nodes), ())


# ---------------------------------------------------------------------------
# DOT rendering
# ---------------------------------------------------------------------------


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def partition_dot(graph: PartitionGraph) -> str:
    """Graphviz source for a partition graph, deterministically ordered."""
    lines = ["graph partitions {"]
    for node in graph.nodes:
        label = "\\n".join(print_formula(f) for f in node.formulas)
        lines.append(f'  n{node.index} [label="{_dot_escape(label)}"];')
    for edge in graph.edges:
        label = ", ".join(str(a) for a in edge.shared)
        lines.append(
            f'  n{edge.left} -- n{edge.right} [label="{_dot_escape(label)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def overlap_dot(v: Variety) -> str:
    """Graphviz source for the component overlap graph of a variety.

    Nodes are components; an edge appears where two components' (plain)
    axiom sets intersect, labeled with the intersection size.
    """
    lines = ["graph components {"]
    for i in range(len(v)):
        lines.append(f'  c{i} [label="component {i} ({len(v.axiom_set(i))} axioms)"];')
    for i, j in itertools.combinations(range(len(v)), 2):
        shared = v.axiom_set(i) & v.axiom_set(j)
        if shared:
            lines.append(f'  c{i} -- c{j} [label="{len(shared)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
