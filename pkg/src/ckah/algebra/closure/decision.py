"""Size-bounded equivalence of terms under a hypothesis set."""
import logging
import math
from dataclasses import dataclass

from ckah.algebra.closure import funcs as closureFuncs
from ckah.algebra.closure.models import (
    ClosureResult,
    ClosureStatus,
    Hypothesis,
    HypothesisSet,
    Verdict,
    VerdictKind,
)
from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets.models import PomsetLanguage
from ckah.algebra.terms import parser as termParser
from ckah.algebra.terms import semantics as termSemantics
from ckah.algebra.terms import syntax as termSyntax
from ckah.algebra.terms.models import Act, Dot, Obs, One, Par, Plus, Star, Term, Zero
from ckah.core.config import config
from ckah.models.baseModels import Budget


logger = logging.getLogger(__name__)


def max_letter_count(e: Term, letters: frozenset[str]) -> float:
    """Most occurrences of `letters` in one member of ⟦e⟧; infinite under a star."""
    match e:
        case Zero():
            return -math.inf
        case One() | Obs():
            return 0
        case Act(label=label):
            return 1 if label in letters else 0
        case Plus(left=left, right=right):
            return max(max_letter_count(left, letters), max_letter_count(right, letters))
        case Dot(left=left, right=right) | Par(left=left, right=right):
            return max_letter_count(left, letters) + max_letter_count(right, letters)
        case Star(inner=inner):
            return math.inf if max_letter_count(inner, letters) > 0 else 0
    raise TypeError(f"not a term: {e!r}")


def is_bounded_exact(hypothesis: Hypothesis) -> bool:
    """Size-k members of a closure only come from members of size k, or from contractions."""
    if hypothesis.contracted_letter is not None:
        return True
    sizes = {v.size for v in hypothesis.rhs_language}
    return len(sizes) == 1 and all(u.size in sizes for u in hypothesis.lhs_language)


@dataclass
class BoundedClosure:
    """Closure of ⟦e⟧ cut down to the bound."""

    result: ClosureResult
    definitive: bool = True
    evaluated_at: int = 0

    @property
    def language(self) -> PomsetLanguage:
        return self.result.language


def _slack(e: Term, letters: frozenset[str]) -> tuple[int, bool]:
    count = max_letter_count(e, letters)
    if count == math.inf:
        return config.star_slack, False
    return (int(count), True) if count > 0 else (0, True)


def close_term(
    e: Term,
    hypotheses: HypothesisSet,
    bound: int | None = None,
    budget: Budget | None = None,
    shrinking_letters: frozenset[str] | None = None,
) -> BoundedClosure:
    """Members of the closure of ⟦e⟧ with at most `bound` leaves.

    Contractions shrink pomsets, so e is evaluated a little above the bound
    before it is closed and cut back down. `shrinking_letters` names the
    letters whose occurrences bound the shrinkage when the hypotheses are not
    plain contractions; each application must then remove at most one of them.
    """
    bound = config.default_bound if bound is None else bound
    budget = budget or Budget()
    if shrinking_letters is None:
        letters = hypotheses.contracted_letters
        exact = all(is_bounded_exact(h) for h in hypotheses)
    else:
        letters = shrinking_letters
        exact = not hypotheses.is_growing

    slack, slack_exact = _slack(e, letters)
    evaluated = termSemantics.semantics_bounded(e, bound + slack)
    logger.debug(
        "%s: %d members up to %d leaves",
        termParser.render_term(e),
        len(evaluated),
        bound + slack,
    )
    if len(evaluated) > budget.max_language_size:
        reason = (
            f"⟦{termParser.render_term(e)}⟧ has more than "
            f"{budget.max_language_size} members below the bound"
        )
        return BoundedClosure(
            ClosureResult(evaluated, ClosureStatus.TRUNCATED, reason), False, bound + slack
        )

    result = closureFuncs.closure_of(
        evaluated, hypotheses, budget.with_leaf_count(bound + slack)
    )
    return BoundedClosure(
        result.new(language=pomsetFuncs.lang_size_filter(result.language, bound)),
        exact and slack_exact,
        bound + slack,
    )


def decide_terms(
    e: Term,
    f: Term,
    hypotheses: HypothesisSet,
    bound: int | None = None,
    budget: Budget | None = None,
    shrinking_letters: frozenset[str] | None = None,
) -> Verdict:
    """Compare the closures of ⟦e⟧ and ⟦f⟧ on pomsets with at most `bound` leaves."""
    bound = config.default_bound if bound is None else bound
    sides = []
    for term in (e, f):
        closed = close_term(term, hypotheses, bound, budget, shrinking_letters)
        if not closed.result.complete:
            return Verdict(
                VerdictKind.INCONCLUSIVE, bound, definitive=False, reason=closed.result.reason
            )
        sides.append(closed)

    left, right = (side.language for side in sides)
    definitive = all(side.definitive for side in sides)
    leq = left <= right
    geq = right <= left
    if leq and geq:
        total = all(
            not termSyntax.contains_star(term) and termSyntax.max_leaves(term) <= bound
            for term in (e, f)
        )
        kind = VerdictKind.EQUIVALENT if total and definitive else VerdictKind.EQUIVALENT_UP_TO
        return Verdict(kind, bound, leq=True, geq=True, left_language=left, right_language=right)

    witness = closureFuncs.language_witness(left, right)
    if not definitive:
        logger.warning("difference at bound %d is provisional", bound)
    return Verdict(
        VerdictKind.DIFFERENT,
        bound,
        witness=witness,
        witness_in_left=witness in left,
        leq=leq,
        geq=geq,
        definitive=definitive,
        reason=None if definitive else "slack under a star or hypotheses that change size",
        left_language=left,
        right_language=right,
    )
