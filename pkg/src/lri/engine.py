"""Reasoning over rule bases that need not be consistent as a whole.

A domain of rules pairs a consistent set of axioms (formulas every line of
reasoning must respect) with an indexed list of hypotheses (defeasible rules
that may be adopted or left aside).  A position adopts a consistent selection
of hypotheses; a conclusion is reasonably inferable when at least one
position classically entails it.  Because each inference is carried by a
consistent position, an inconsistent rule base never licenses arbitrary
conclusions: the explosion of classical logic stays confined to selections
nobody can consistently hold.

Justifications pin each conclusion to minimal support: positions entailing
the conclusion whose hypothesis selection has no entailing proper subset.
Contexts combine conclusions drawn simultaneously and are consistent only
when their justifications can be adopted together, which is how reasoning
tracks that two individually reasonable conclusions may rest on mutually
exclusive readings of the rules.

Hypothesis selections are represented throughout as frozen sets of indices
into the domain's hypothesis list, so equality of positions is equality of
selections, and minimality is measured over selections, never over the
shared axioms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import sat
from .cnf import CnfBuilder
from .errors import (
    AxiomHypothesisOverlap,
    DuplicateHypothesis,
    InconsistentAxioms,
    MixedDomains,
)
from .formula import Formula, Signature, is_ground, print_formula

# Context extraction enumerates justification choices per query formula, which
# grows exponentially with the query count; refuse silly sizes outright.
MAX_CONTEXT_QUERIES = 12


class DomainOfRules:
    """A consistent axiom set plus an indexed list of hypotheses.

    Axioms are deduplicated preserving order; hypotheses must be duplicate
    free and disjoint from the axioms, since a hypothesis that is also an
    axiom would make selections ambiguous.  All formulas must be ground.
    Construction verifies axiom consistency and fails with
    InconsistentAxioms otherwise.

    The domain owns one incremental clausifier holding every rule, so
    consistency checks for different selections share all clause structure,
    and it memoizes selection consistency because the position and context
    machinery revisits the same selections many times.
    """

    def __init__(
        self,
        axioms: Iterable[Formula],
        hypotheses: Iterable[Formula],
        signature: Signature,
        max_decisions: Optional[int] = None,
    ) -> None:
        unique_axioms: list[Formula] = []
        for formula in axioms:
            _require_ground(formula, "axiom")
            if formula not in unique_axioms:
                unique_axioms.append(formula)
        self.axioms: tuple[Formula, ...] = tuple(unique_axioms)

        hyp_list = list(hypotheses)
        axiom_set = set(self.axioms)
        seen: set[Formula] = set()
        for formula in hyp_list:
            _require_ground(formula, "hypothesis")
            if formula in seen:
                raise DuplicateHypothesis(
                    f"hypothesis repeated: {print_formula(formula)}"
                )
            seen.add(formula)
            if formula in axiom_set:
                raise AxiomHypothesisOverlap(
                    f"formula is both axiom and hypothesis: "
                    f"{print_formula(formula)}"
                )
        self.hypotheses: tuple[Formula, ...] = tuple(hyp_list)

        self.signature = signature
        self.max_decisions = max_decisions
        # Register atoms in rule order so registry indices, and with them the
        # solver's branching order, follow the order rules were stated in.
        for formula in self.axioms + self.hypotheses:
            signature.register_formula(formula)
        self._builder = CnfBuilder(signature)
        self._axiom_tops = tuple(self._builder.add(f) for f in self.axioms)
        self._hyp_tops = tuple(self._builder.add(f) for f in self.hypotheses)
        self._consistency: dict[frozenset[int], bool] = {}
        self._maximal: Optional[tuple["Position", ...]] = None
        if not self.consistent(frozenset()):
            raise InconsistentAxioms("the axioms are jointly unsatisfiable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DomainOfRules):
            return NotImplemented
        return (
            self.axioms == other.axioms
            and self.hypotheses == other.hypotheses
        )

    def __hash__(self) -> int:
        return hash((self.axioms, self.hypotheses))

    def __repr__(self) -> str:
        return (
            f"DomainOfRules({len(self.axioms)} axioms, "
            f"{len(self.hypotheses)} hypotheses)"
        )

    def selection_formulas(self, chosen: frozenset[int]) -> tuple[Formula, ...]:
        """Axioms plus the selected hypotheses, in stated order."""
        return self.axioms + tuple(
            self.hypotheses[i] for i in sorted(chosen)
        )

    def _tops(self, chosen: frozenset[int]) -> list[int]:
        return list(self._axiom_tops) + [
            self._hyp_tops[i] for i in sorted(chosen)
        ]

    def consistent(self, chosen: frozenset[int]) -> bool:
        """Whether axioms plus this hypothesis selection are satisfiable."""
        cached = self._consistency.get(chosen)
        if cached is not None:
            return cached
        result = sat.solve(
            self._builder.clause_set(self._tops(chosen)), self.max_decisions
        ).satisfiable
        self._consistency[chosen] = result
        return result

    def selection_entails(
        self, chosen: frozenset[int], conclusion: Formula
    ) -> bool:
        """Whether axioms plus the selection classically entail conclusion."""
        top = self._builder.add(conclusion)
        clause_set = self._builder.clause_set(self._tops(chosen) + [-top])
        return not sat.solve(clause_set, self.max_decisions).satisfiable


def _require_ground(formula: Formula, role: str) -> None:
    if not is_ground(formula):
        raise ValueError(
            f"{role} contains variables: {print_formula(formula)}; "
            "ground it over the constant domain first"
        )


@dataclass(frozen=True)
class Position:
    """A consistent hypothesis selection within a domain of rules.

    Construction re-checks consistency (a cache hit when the selection came
    out of the domain's own enumeration), so no inconsistent Position can
    exist.
    """

    domain: DomainOfRules
    chosen: frozenset[int]

    def __post_init__(self) -> None:
        for i in self.chosen:
            if not 0 <= i < len(self.domain.hypotheses):
                raise IndexError(f"hypothesis index out of range: {i}")
        if not self.domain.consistent(self.chosen):
            raise ValueError(
                "selection is inconsistent with the axioms: "
                f"{sorted(self.chosen)}"
            )

    @property
    def formulas(self) -> tuple[Formula, ...]:
        return self.domain.selection_formulas(self.chosen)

    def entails(self, conclusion: Formula) -> bool:
        _require_ground(conclusion, "conclusion")
        return self.domain.selection_entails(self.chosen, conclusion)


@dataclass(frozen=True)
class Justification:
    """A minimal position entailing a particular conclusion.

    Minimality: no proper subset of the chosen hypothesis indices still
    entails the conclusion.  The constructor verifies entailment; minimality
    is the producer's obligation (see `justifications`).
    """

    conclusion: Formula
    position: Position

    def __post_init__(self) -> None:
        if not self.position.entails(self.conclusion):
            raise ValueError(
                "position does not entail the conclusion: "
                f"{print_formula(self.conclusion)}"
            )


@dataclass(frozen=True)
class Context:
    """Conclusions drawn together, each carried by a justification."""

    pairs: frozenset[tuple[Formula, Justification]]

    def conclusions(self) -> tuple[Formula, ...]:
        return tuple(sorted(
            (c for c, _ in self.pairs), key=print_formula
        ))


# ---------------------------------------------------------------------------
# Positions and reasonable inference
# ---------------------------------------------------------------------------


def new_domain(
    axioms: Iterable[Formula],
    hypotheses: Iterable[Formula],
    signature: Optional[Signature] = None,
    max_decisions: Optional[int] = None,
) -> DomainOfRules:
    """Build a domain of rules, creating a fresh signature when none is given."""
    if signature is None:
        signature = Signature()
    return DomainOfRules(axioms, hypotheses, signature, max_decisions)


def maximal_positions(domain: DomainOfRules) -> list[Position]:
    """All positions whose selection no consistent selection properly extends.

    Enumerates selections largest first so that every accepted selection can
    prune its subsets, and returns positions sorted by their index tuples in
    ascending order.  Results are cached on the domain.
    """
    if domain._maximal is None:
        n = len(domain.hypotheses)
        accepted: list[frozenset[int]] = []
        for size in range(n, -1, -1):
            for combo in itertools.combinations(range(n), size):
                selection = frozenset(combo)
                if any(selection <= bigger for bigger in accepted):
                    continue
                if domain.consistent(selection):
                    accepted.append(selection)
        accepted.sort(key=lambda s: tuple(sorted(s)))
        domain._maximal = tuple(
            Position(domain, selection) for selection in accepted
        )
    return list(domain._maximal)


def reasonably_infers(
    domain: DomainOfRules, conclusion: Formula
) -> Optional[Position]:
    """First maximal position entailing the conclusion, or None.

    A conclusion entailed by any consistent selection is also entailed by
    every maximal extension of it, so checking maximal positions suffices.
    """
    _require_ground(conclusion, "conclusion")
    for position in maximal_positions(domain):
        if position.entails(conclusion):
            return position
    return None


def in_reasonable_theory(domain: DomainOfRules, conclusion: Formula) -> bool:
    """Whether some position of the domain classically entails the conclusion."""
    return reasonably_infers(domain, conclusion) is not None


def justifications(
    domain: DomainOfRules, conclusion: Formula
) -> list[Justification]:
    """All minimal positions entailing the conclusion.

    Enumerates selections smallest first.  A selection is skipped when it
    extends an already-found justification (not minimal) or fits inside no
    maximal position (inconsistent, since consistency is closed under
    subsets).  Survivors get one entailment check each.
    """
    _require_ground(conclusion, "conclusion")
    maximal = [p.chosen for p in maximal_positions(domain)]
    n = len(domain.hypotheses)
    found: list[frozenset[int]] = []
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            selection = frozenset(combo)
            if any(small <= selection for small in found):
                continue
            if not any(selection <= m for m in maximal):
                continue
            if domain.selection_entails(selection, conclusion):
                found.append(selection)
    return [
        Justification(conclusion, Position(domain, selection))
        for selection in found
    ]


# ---------------------------------------------------------------------------
# Contexts
# ---------------------------------------------------------------------------


def _context_domain(context: Context) -> Optional[DomainOfRules]:
    domains = []
    for _, justification in context.pairs:
        domain = justification.position.domain
        if not any(domain == d for d in domains):
            domains.append(domain)
    if len(domains) > 1:
        raise MixedDomains(
            "context mixes justifications from different domains of rules"
        )
    return domains[0] if domains else None


def is_consistent_context(context: Context) -> bool:
    """Whether the union of the context's selections is itself consistent.

    An empty context is vacuously consistent.  All justifications must come
    from the same domain of rules; otherwise MixedDomains is raised.
    """
    domain = _context_domain(context)
    if domain is None:
        return True
    union = frozenset().union(
        *(j.position.chosen for _, j in context.pairs)
    )
    return domain.consistent(union)


def maximal_consistent_contexts(
    domain: DomainOfRules, queries: Sequence[Formula]
) -> list[Context]:
    """Largest consistent ways to justify the query formulas together.

    Each query is either covered by one of its justifications or left out;
    a combination is a candidate when the union of its selections is
    consistent, and kept when no left-out query could be covered by any of
    its justifications without breaking consistency.  Queries with no
    justification at all (not reasonably inferable) are simply never covered.

    The result order follows the enumeration: for each query in input order,
    covering justifications in their `justifications` order before leaving
    the query out.
    """
    query_list = list(queries)
    for q in query_list:
        _require_ground(q, "query")
    if len(set(query_list)) != len(query_list):
        raise ValueError("duplicate query formulas")
    if len(query_list) > MAX_CONTEXT_QUERIES:
        raise ValueError(
            f"too many query formulas (limit {MAX_CONTEXT_QUERIES})"
        )

    options = [justifications(domain, q) for q in query_list]

    def union_of(choice: tuple[int, ...]) -> frozenset[int]:
        parts = [
            options[i][j].position.chosen
            for i, j in enumerate(choice)
            if j < len(options[i])
        ]
        return frozenset().union(*parts) if parts else frozenset()

    contexts: list[Context] = []
    # Choice i == len(options[i]) means query i is left uncovered.
    for choice in itertools.product(
        *(range(len(opts) + 1) for opts in options)
    ):
        union = union_of(choice)
        if not domain.consistent(union):
            continue
        maximal = True
        for i, j in enumerate(choice):
            if j < len(options[i]):
                continue
            for alternative in options[i]:
                extended = union | alternative.position.chosen
                if domain.consistent(extended):
                    maximal = False
                    break
            if not maximal:
                break
        if maximal:
            pairs = frozenset(
                (query_list[i], options[i][j])
                for i, j in enumerate(choice)
                if j < len(options[i])
            )
            contexts.append(Context(pairs))
    return contexts
