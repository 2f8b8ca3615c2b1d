import logging

from ckah.algebra.contexts.models import SpContext
from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets.models import EMPTY, PomsetLanguage, Prim, SpPomset
from ckah.algebra.terms import parser as termParser
from ckah.algebra.terms.models import Act, Dot, Obs, One, Par, Plus, Star, Term, Zero
from ckah.core.exceptions import ContainsObs, ContainsStar, raise_precondition
from ckah.models.baseModels import UnrollBudget


logger = logging.getLogger(__name__)


def semantics_starfree(e: Term) -> PomsetLanguage:
    match e:
        case Zero():
            return frozenset()
        case One():
            return frozenset({EMPTY})
        case Act(label=label):
            return frozenset({Prim(label)})
        case Obs():
            raise ContainsObs(
                f"{termParser.render_term(e)} is an observation; reify the term first"
            )
        case Plus(left=left, right=right):
            return pomsetFuncs.lang_union(semantics_starfree(left), semantics_starfree(right))
        case Dot(left=left, right=right):
            return pomsetFuncs.lang_seq(semantics_starfree(left), semantics_starfree(right))
        case Par(left=left, right=right):
            return pomsetFuncs.lang_par(semantics_starfree(left), semantics_starfree(right))
        case Star():
            raise ContainsStar(
                f"{termParser.render_term(e)} has a star; use the size-bounded semantics"
            )
    raise TypeError(f"not a term: {e!r}")


def semantics_bounded(e: Term, budget: UnrollBudget | int) -> PomsetLanguage:
    """Members of ⟦e⟧ with at most `budget` leaves, stars included."""
    bound = budget.max_nodes if isinstance(budget, UnrollBudget) else budget
    return _bounded(e, bound)


def _bounded(e: Term, bound: int) -> PomsetLanguage:
    match e:
        case Zero():
            return frozenset()
        case One():
            return frozenset({EMPTY})
        case Act(label=label):
            return frozenset({Prim(label)}) if bound >= 1 else frozenset()
        case Obs():
            raise ContainsObs(
                f"{termParser.render_term(e)} is an observation; reify the term first"
            )
        case Plus(left=left, right=right):
            return _bounded(left, bound) | _bounded(right, bound)
        case Dot(left=left, right=right):
            return pomsetFuncs.lang_seq_bounded(
                _bounded(left, bound), _bounded(right, bound), bound
            )
        case Par(left=left, right=right):
            return pomsetFuncs.lang_par_bounded(
                _bounded(left, bound), _bounded(right, bound), bound
            )
        case Star(inner=inner):
            # Every non-empty factor adds a leaf, so powers beyond `bound` contribute nothing new.
            factors = _bounded(inner, bound) - {EMPTY}
            result: set[SpPomset] = {EMPTY}
            layer: PomsetLanguage = frozenset({EMPTY})
            while layer:
                layer = pomsetFuncs.lang_seq_bounded(layer, factors, bound) - result
                result |= layer
            logger.debug("star unrolled to %d members below %d leaves", len(result), bound)
            return frozenset(result)
    raise TypeError(f"not a term: {e!r}")


def single_pomset(e: Term) -> SpPomset:
    """The only member of ⟦e⟧, for terms that spell one pomset."""
    language = semantics_starfree(e)
    if len(language) != 1:
        raise_precondition(
            f"{termParser.render_term(e)} denotes {len(language)} pomsets, not one"
        )
    (member,) = language
    return member


def parse_pomset(text: str) -> SpPomset:
    return single_pomset(termParser.parse_term(text))


def parse_context(text: str) -> SpContext:
    return SpContext(single_pomset(termParser.parse_context_term(text)))
