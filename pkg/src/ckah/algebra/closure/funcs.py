import logging
from collections import deque
from typing import Iterable

from ckah.algebra.closure.models import (
    ClosureResult,
    ClosureStatus,
    Hypothesis,
    HypothesisSet,
)
from ckah.algebra.contexts import funcs as contextFuncs
from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets.models import Empty, PomsetLanguage, Prim, SpPomset
from ckah.algebra.terms import semantics as termSemantics
from ckah.common import join_with_commas
from ckah.core.exceptions import raise_precondition
from ckah.models.baseModels import Budget


logger = logging.getLogger(__name__)

# Exch instance over fresh letters; enough to tell whether a set derives exch.
EXCH_INSTANCE = ("(e1||e2);(e3||e4)", "(e1;e3)||(e2;e4)")


# Generic engine


def close(
    language: Iterable[SpPomset],
    hypotheses: HypothesisSet,
    budget: Budget | None = None,
) -> ClosureResult:
    """Least language containing `language` and closed under every hypothesis.

    A hypothesis e <= f fires in context C once every member of C[⟦f⟧] is
    present, adding C[⟦e⟧]. Budget exhaustion gives a Truncated result.
    """
    if hypotheses.includes_exch:
        raise_precondition("exch is schematic; use close_exch or close_factorized")
    return _close(frozenset(language), hypotheses, budget or Budget(), sequential=False)


def close_seq(
    language: Iterable[SpPomset],
    hypotheses: HypothesisSet,
    budget: Budget | None = None,
) -> ClosureResult:
    """Closure restricted to sequential contexts, for words under grounded hypotheses."""
    language = frozenset(language)
    if hypotheses.includes_exch or not hypotheses.grounded:
        raise_precondition("sequential closure needs a grounded set without exch")
    if not all(pomsetFuncs.is_word(u) for u in language):
        raise_precondition("sequential closure needs a language of words")
    if not all(h.is_sequential for h in hypotheses):
        raise_precondition("sequential closure needs hypotheses without '||'")
    return _close(language, hypotheses, budget or Budget(), sequential=True)


def _close(
    language: PomsetLanguage,
    hypotheses: HypothesisSet,
    budget: Budget,
    sequential: bool,
) -> ClosureResult:
    for hypothesis in hypotheses:
        if not hypothesis.rhs_language:
            raise_precondition(
                f"{hypothesis} has an empty right-hand side and would fire in every context"
            )

    members: set[SpPomset] = set()
    queue: deque[SpPomset] = deque()
    dropped = 0

    def admit(u: SpPomset):
        nonlocal dropped
        if u in members:
            return
        if u.size > budget.max_leaf_count:
            dropped += 1
            return
        members.add(u)
        queue.append(u)

    for u in pomsetFuncs.sorted_language(language):
        admit(u)

    iterations = 0
    while queue:
        w = queue.popleft()
        for hypothesis in hypotheses:
            premises = hypothesis.rhs_language
            for v in pomsetFuncs.sorted_language(premises):
                for c in contextFuncs.occurrences(w, v):
                    if sequential and not contextFuncs.is_sequential(c):
                        continue
                    iterations += 1
                    if iterations > budget.max_iterations:
                        return _truncated(
                            members, f"more than {budget.max_iterations} iterations", iterations
                        )
                    if all(contextFuncs.plug(c, other) in members for other in premises):
                        for u in hypothesis.lhs_language:
                            admit(contextFuncs.plug(c, u))
                    if len(members) > budget.max_language_size:
                        return _truncated(
                            members,
                            f"more than {budget.max_language_size} pomsets",
                            iterations,
                        )
        if iterations and iterations % 10_000 == 0:
            logger.debug("closure: %d iterations, %d members", iterations, len(members))

    if dropped:
        return _truncated(
            members,
            f"{dropped} pomsets above {budget.max_leaf_count} leaves were dropped",
            iterations,
        )
    logger.debug("closure complete: %d members after %d iterations", len(members), iterations)
    return ClosureResult(frozenset(members), ClosureStatus.COMPLETE, None, iterations)


def _truncated(members: set[SpPomset], reason: str, iterations: int) -> ClosureResult:
    logger.warning("closure truncated: %s", reason)
    return ClosureResult(frozenset(members), ClosureStatus.TRUNCATED, reason, iterations)


# Exch


def close_exch(language: Iterable[SpPomset]) -> PomsetLanguage:
    return pomsetFuncs.downward_closure_lang(language)


def is_down_closed(language: PomsetLanguage) -> bool:
    return all(pomsetFuncs.downward_closure(v) <= language for v in language)


def has_factorizable_shape(hypothesis: Hypothesis) -> bool:
    """Every member of ⟦lhs⟧ is 1 or a single letter."""
    return all(isinstance(u, (Empty, Prim)) for u in hypothesis.lhs_language)


def close_factorized(
    language: Iterable[SpPomset],
    hypotheses: HypothesisSet,
    budget: Budget | None = None,
    verify: bool = False,
) -> ClosureResult:
    """exch closure first, then the remaining hypotheses."""
    for hypothesis in hypotheses:
        if not has_factorizable_shape(hypothesis):
            raise_precondition(
                f"{hypothesis} has a left-hand side other than 1 or a letter"
            )

    down = close_exch(language)
    rest = hypotheses.without_exch()
    if not rest.hypotheses:
        return ClosureResult(down)

    result = close(down, rest, budget)
    if verify and result.complete and not is_down_closed(result.language):
        raise AssertionError("factorized closure is not downward closed")
    return result


def close_alternating(
    language: Iterable[SpPomset],
    hypotheses: HypothesisSet,
    budget: Budget | None = None,
) -> ClosureResult:
    """Alternate exch and the generic engine until neither adds anything."""
    rest = hypotheses.without_exch()
    current = frozenset(language)
    iterations = 0
    rounds = 0
    while True:
        rounds += 1
        result = close(close_exch(current), rest, budget)
        iterations += result.iterations
        if not result.complete:
            return result.new(iterations=iterations)
        if result.language == current:
            logger.debug("alternating closure stable after %d rounds", rounds)
            return result.new(iterations=iterations)
        current = result.language


def closure_of(
    language: Iterable[SpPomset],
    hypotheses: HypothesisSet,
    budget: Budget | None = None,
) -> ClosureResult:
    """Pick the exact engine that fits the hypothesis set."""
    language = frozenset(language)
    if not hypotheses.includes_exch:
        return close(language, hypotheses, budget)
    if not hypotheses.hypotheses:
        return ClosureResult(close_exch(language))
    if all(has_factorizable_shape(h) for h in hypotheses):
        return close_factorized(language, hypotheses, budget, verify=True)
    return close_alternating(language, hypotheses, budget)


# Comparison


def language_equal(left: Iterable[SpPomset], right: Iterable[SpPomset]) -> bool:
    return frozenset(left) == frozenset(right)


def language_witness(
    left: Iterable[SpPomset], right: Iterable[SpPomset]
) -> SpPomset | None:
    """Smallest member of the symmetric difference, or None when the languages agree."""
    difference = frozenset(left) ^ frozenset(right)
    return min(difference) if difference else None


def implies(
    hypotheses: HypothesisSet,
    implied: HypothesisSet,
    budget: Budget | None = None,
) -> bool:
    """Each hypothesis of `implied` holds as a closure inclusion under `hypotheses`."""
    checks = [(h.lhs_language, h.rhs_language) for h in implied]
    if implied.includes_exch:
        lhs, rhs = (termSemantics.parse_pomset(text) for text in EXCH_INSTANCE)
        checks.append((frozenset({lhs}), frozenset({rhs})))

    for lhs, rhs in checks:
        result = closure_of(rhs, hypotheses, budget)
        if not lhs <= result.language:
            logger.info(
                "not implied: %s is missing from the closure of %s",
                join_with_commas(sorted(lhs - result.language)),
                join_with_commas(sorted(rhs)),
            )
            return False
    return True
