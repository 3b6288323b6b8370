import pytest

from lri import DomainOfRules, Signature, parse_formula


def build_domain(axiom_texts, hypothesis_texts, max_decisions=None):
    """Parse statement texts into a fresh-signature domain of rules."""
    sig = Signature()
    axioms = [parse_formula(t, sig) for t in axiom_texts]
    hypotheses = [parse_formula(t, sig) for t in hypothesis_texts]
    return DomainOfRules(axioms, hypotheses, sig, max_decisions)


@pytest.fixture
def permit_domain():
    """The environmental-permit rule base used across the suite."""
    return build_domain(["act"], ["act -> perm", "ex", "ex -> -perm"])
