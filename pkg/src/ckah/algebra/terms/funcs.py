from typing import Mapping

from ckah.algebra.closure import decision
from ckah.algebra.closure.models import HypothesisSet
from ckah.algebra.terms import syntax as termSyntax
from ckah.algebra.terms.models import Act, Term
from ckah.core.exceptions import raise_precondition
from ckah.models.baseModels import Budget


def leq_semantic(
    e: Term,
    f: Term,
    hypotheses: HypothesisSet,
    bound: int | None = None,
    budget: Budget | None = None,
) -> bool:
    """The closure of ⟦e⟧ sits inside the closure of ⟦f⟧, up to the size bound."""
    verdict = decision.decide_terms(e, f, hypotheses, bound, budget)
    if verdict.leq is None:
        raise_precondition(f"cannot compare the closures: {verdict.reason}")
    return verdict.leq


def substitute_letters(e: Term, substitution: Mapping[str, Term]) -> Term:
    """Replace every action of e by its image; observations are kept."""
    missing = termSyntax.letters(e) - substitution.keys()
    if missing:
        raise_precondition(f"no image for {', '.join(sorted(missing))}")

    def image(leaf: Term) -> Term:
        return substitution[leaf.label] if isinstance(leaf, Act) else leaf

    return termSyntax.map_leaves(e, image)

