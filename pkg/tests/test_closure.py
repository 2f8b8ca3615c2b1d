import math

import pydantic
import pytest

from ckah.algebra.closure import decision
from ckah.algebra.closure import funcs as closureFuncs
from ckah.algebra.closure import oracles as closureOracles
from ckah.algebra.closure import packs as closurePacks
from ckah.algebra.closure.hypothesisFile import parse_hypotheses
from ckah.algebra.closure.models import (
    ClosureStatus,
    Hypothesis,
    HypothesisSet,
    VerdictKind,
)
from ckah.algebra.contexts import funcs as contextFuncs
from ckah.algebra.contexts import oracles as contextOracles
from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets import oracles as pomsetOracles
from ckah.algebra.pomsets.models import EMPTY
from ckah.algebra.terms.models import Act
from ckah.algebra.terms.parser import parse_term
from ckah.algebra.terms.semantics import parse_pomset
from ckah.core.exceptions import PreconditionViolated
from ckah.models.baseModels import Budget


GROUNDED = parse_hypotheses(
    """
    a <= b;c
    b||c <= c;b
    c <= a
    a;b + b <= b;a
    """
)
GROUNDED_SEQUENTIAL = parse_hypotheses(
    """
    a <= b;c
    c <= a
    b;a <= a;b
    b <= c;c
    """
)
LETTER_SHAPED = parse_hypotheses(
    """
    a <= b;c
    b <= a||c
    c <= b;b
    1 <= a;a
    """
)
GENERAL = parse_hypotheses(
    """
    a <= b+c
    b||c <= c;b
    c <= a;a
    """
)


def lang(*texts):
    return frozenset(parse_pomset(text) for text in texts)


def random_language(rng, count=2, max_leaves=3, labels="abc"):
    return frozenset(
        pomsetOracles.random_sp(rng, labels, max_leaves) for _ in range(rng.randint(1, count))
    )


def random_words(rng, count=2, max_length=3, labels="abc"):
    return frozenset(
        pomsetFuncs.word(*(rng.choice(labels) for _ in range(rng.randint(0, max_length))))
        for _ in range(rng.randint(1, count))
    )


def random_subset(rng, hypotheses: HypothesisSet) -> HypothesisSet:
    return HypothesisSet(
        hypotheses=tuple(h for h in hypotheses if rng.random() < 0.6),
        includes_exch=hypotheses.includes_exch,
    )


def closed(language, hypotheses):
    result = closureFuncs.close(language, hypotheses)
    assert result.complete
    return result.language


# Generic engine


def test_close_contraction():
    result = closureFuncs.close(lang("x;x"), closurePacks.contraction_pack("x"))
    assert result.status is ClosureStatus.COMPLETE
    assert result.language == lang("x;x", "x")


def test_close_without_hypotheses():
    language = lang("a||b", "a;b;c")
    assert closureFuncs.close(language, closurePacks.empty_pack()).language == language


def test_close_does_not_commute_with_union():
    hypotheses = parse_hypotheses("a <= b+c")
    assert closed(lang("b", "c"), hypotheses) == lang("a", "b", "c")
    assert closed(lang("b"), hypotheses) | closed(lang("c"), hypotheses) == lang("b", "c")


def test_close_fires_in_context():
    hypotheses = parse_hypotheses("a <= b;c")
    assert closed(lang("(b;c)||d"), hypotheses) == lang("(b;c)||d", "a||d")
    assert closed(lang("b||c"), hypotheses) == lang("b||c")


def test_close_preconditions():
    with pytest.raises(PreconditionViolated):
        closureFuncs.close(lang("a"), closurePacks.exch_pack())
    with pytest.raises(PreconditionViolated):
        closureFuncs.close(lang("a"), parse_hypotheses("b <= 0"))


def test_close_truncates_growing_hypotheses():
    growing = parse_hypotheses("a;a <= a")
    result = closureFuncs.close(lang("a"), growing, Budget(max_leaf_count=4))
    assert result.status is ClosureStatus.TRUNCATED
    assert lang("a", "a;a", "a;a;a", "a;a;a;a") == result.language
    assert "dropped" in result.reason

    result = closureFuncs.close(lang("a"), growing, Budget(max_iterations=1))
    assert not result.complete
    assert "iterations" in result.reason


def test_closure_laws(rng):
    for _case in range(300):
        hypotheses = random_subset(rng, GROUNDED)
        left, right = random_language(rng), random_language(rng)
        closed_left = closed(left, hypotheses)

        assert left <= closed_left
        assert closed(closed_left, hypotheses) == closed_left
        assert closed_left <= closed(left | right, hypotheses)
        assert closed(closed_left | right, hypotheses) == closed(left | right, hypotheses)


def test_containment_in_a_closure_lifts_to_the_closure(rng):
    for _case in range(300):
        hypotheses = random_subset(rng, GROUNDED)
        closed_right = closed(random_language(rng), hypotheses)
        left = frozenset(u for u in sorted(closed_right) if rng.random() < 0.3)
        if rng.random() < 0.5:
            left |= random_language(rng)
        closed_left = closed(left, hypotheses)

        assert (left <= closed_right) == (closed_left <= closed_right)
        assert all(pomsetFuncs.is_canonical(u) for u in closed_left)


def test_closure_inclusion_is_preserved_by_contexts(rng):
    for _case in range(300):
        hypotheses = random_subset(rng, GROUNDED)
        right = random_language(rng)
        closed_right = closed(right, hypotheses)
        left = frozenset(u for u in sorted(closed_right) if rng.random() < 0.5)
        c = contextOracles.random_context(rng, "abc", 2)

        plugged_left = closed(contextFuncs.plug_lang(c, left), hypotheses)
        plugged_right = closed(contextFuncs.plug_lang(c, right), hypotheses)
        assert plugged_left <= plugged_right
        assert all(pomsetFuncs.is_canonical(u) for u in plugged_right)



def test_closure_commutes_with_composition(rng):
    for _case in range(150):
        hypotheses = random_subset(rng, GROUNDED)
        left, right = random_language(rng), random_language(rng)
        closed_left, closed_right = closed(left, hypotheses), closed(right, hypotheses)

        assert closed(pomsetFuncs.lang_seq(left, right), hypotheses) == closed(
            pomsetFuncs.lang_seq(closed_left, closed_right), hypotheses
        )
        assert closed(pomsetFuncs.lang_par(left, right), hypotheses) == closed(
            pomsetFuncs.lang_par(closed_left, closed_right), hypotheses
        )


def test_close_agrees_with_round_robin_closure(rng):
    for _case in range(100):
        hypotheses = random_subset(rng, GENERAL)
        language = random_language(rng)
        largest = max(u.size for u in language)
        assert closed(language, hypotheses) == closureOracles.close_naive(
            language, hypotheses, largest
        )


# Sequential closure


def test_close_seq():
    contraction = closurePacks.contraction_pack("x")
    assert closureFuncs.close_seq(lang("x;x"), contraction).language == lang("x;x", "x")
    words = lang("a;b", "c")
    assert closureFuncs.close_seq(words, closurePacks.empty_pack()).language == words


def test_close_seq_preconditions():
    with pytest.raises(PreconditionViolated):
        closureFuncs.close_seq(lang("a||b"), closurePacks.empty_pack())
    with pytest.raises(PreconditionViolated):
        closureFuncs.close_seq(lang("a"), parse_hypotheses("a <= b+c"))
    with pytest.raises(PreconditionViolated):
        closureFuncs.close_seq(lang("a"), parse_hypotheses("a||b <= b;a"))


def test_closure_lifts_to_words_and_parallel_composition(rng):
    for _case in range(200):
        hypotheses = random_subset(rng, GROUNDED_SEQUENTIAL)
        left, right = random_words(rng), random_words(rng)
        closed_left = closed(left, hypotheses)

        assert closureFuncs.close_seq(left, hypotheses).language == closed_left
        assert closed(pomsetFuncs.lang_par(left, right), hypotheses) == pomsetFuncs.lang_par(
            closed_left, closed(right, hypotheses)
        )


# Exch


def test_close_exch():
    assert closureFuncs.close_exch(lang("a||b")) == lang("a||b", "a;b", "b;a")
    assert closureFuncs.close_exch(lang("a")) == lang("a")


def test_close_exch_is_subsumption_closure(rng):
    for _case in range(100):
        language = random_language(rng, count=3, max_leaves=4)
        expected = frozenset().union(
            *(pomsetOracles.oracle_downward_closure(v) for v in language)
        )
        assert closureFuncs.close_exch(language) == expected


def test_close_factorized():
    hypotheses = closurePacks.exch_pack().union(closurePacks.contraction_pack("x"))
    assert closureFuncs.close_factorized(lang("x;x"), hypotheses).language == lang("x;x", "x")
    assert closureFuncs.close_factorized(lang("x||a"), hypotheses).language == lang(
        "x||a", "x;a", "a;x"
    )
    with pytest.raises(PreconditionViolated):
        closureFuncs.close_factorized(lang("a"), parse_hypotheses("a;b <= c"))


def test_factorized_closure_is_down_closed(rng):
    for _case in range(200):
        hypotheses = random_subset(rng, LETTER_SHAPED).union(closurePacks.exch_pack())
        result = closureFuncs.close_factorized(random_language(rng), hypotheses, verify=True)
        assert result.complete
        assert closureFuncs.is_down_closed(result.language)


def test_factorized_closure_matches_alternation(rng):
    for _case in range(100):
        hypotheses = random_subset(rng, LETTER_SHAPED).union(closurePacks.exch_pack())
        language = random_language(rng)
        assert (
            closureFuncs.close_factorized(language, hypotheses).language
            == closureFuncs.close_alternating(language, hypotheses).language
        )


def test_closure_of_dispatch():
    exch = closurePacks.exch_pack()
    assert closureFuncs.closure_of(lang("a||b"), exch).language == lang("a||b", "a;b", "b;a")
    mixed = exch.union(parse_hypotheses("a;b <= c"))
    assert closureFuncs.closure_of(lang("c||d"), mixed).language >= lang("(a;b)||d", "a;b;d")


def test_closure_of_verifies_factorized_results(rng, monkeypatch):
    for _case in range(100):
        hypotheses = random_subset(rng, LETTER_SHAPED).union(closurePacks.exch_pack())
        result = closureFuncs.closure_of(random_language(rng), hypotheses)
        assert result.complete
        assert closureFuncs.is_down_closed(result.language)

    monkeypatch.setattr(closureFuncs, "is_down_closed", lambda language: False)
    hypotheses = closurePacks.exch_pack().union(closurePacks.contraction_pack("x"))
    with pytest.raises(AssertionError):
        closureFuncs.closure_of(lang("x||a"), hypotheses)



# Comparison


def test_language_equal_and_witness():
    language = lang("a", "b;c")
    assert closureFuncs.language_equal(language, set(reversed(sorted(language))))
    assert not closureFuncs.language_equal(lang("a"), lang("a", "1"))
    assert closureFuncs.language_witness(lang("a"), lang("a", "1")) == EMPTY
    assert closureFuncs.language_witness(language, language) is None


def test_implies():
    exch = closurePacks.exch_pack()
    none = closurePacks.empty_pack()
    assert closureFuncs.implies(exch, exch)
    assert not closureFuncs.implies(none, exch)
    assert closureFuncs.implies(exch, parse_hypotheses("a;b <= a||b"))
    assert not closureFuncs.implies(exch, parse_hypotheses("a||b <= a;b"))
    assert closureFuncs.implies(parse_hypotheses("a <= b\nb <= c"), parse_hypotheses("a <= c"))


# Models


def test_hypothesis_properties():
    (contraction,) = closurePacks.contraction_pack("x")
    assert contraction.contracted_letter == "x"
    assert contraction.is_grounded and contraction.is_sequential
    assert contraction.leaf_delta == (-1, -1)
    assert not contraction.is_growing
    assert str(contraction) == "x <= x;x"

    (growing,) = parse_hypotheses("a;a <= a")
    assert growing.is_growing and growing.contracted_letter is None
    (parallel,) = parse_hypotheses("a <= b||c")
    assert not parallel.is_grounded and not parallel.is_sequential


def test_hypotheses_must_be_star_free():
    with pytest.raises(pydantic.ValidationError):
        Hypothesis(lhs=parse_term("a*"), rhs=Act("a"))
    with pytest.raises(pydantic.ValidationError):
        Hypothesis(lhs=Act("a"), rhs=parse_term("{o}"))


def test_hypothesis_set_grounded_flag():
    assert GROUNDED.grounded
    assert not GENERAL.grounded
    assert not closurePacks.exch_pack().grounded
    with pytest.raises(pydantic.ValidationError):
        HypothesisSet(hypotheses=GENERAL.hypotheses, grounded=True)


def test_hypothesis_set_helpers():
    merged = closurePacks.exch_pack().union(closurePacks.contraction_pack("xy"))
    assert merged.includes_exch and len(merged) == 2
    assert merged.contracted_letters == {"x", "y"}
    assert not merged.without_exch().includes_exch
    assert closurePacks.empty_pack().is_empty
    assert closurePacks.empty_pack().describe() == "none"


# Bounded decisions


def test_max_letter_count():
    letters = frozenset({"x"})
    assert decision.max_letter_count(parse_term("x;(x+y)"), letters) == 2
    assert decision.max_letter_count(parse_term("x;x*"), letters) == math.inf
    assert decision.max_letter_count(parse_term("y*;x"), letters) == 1
    assert decision.max_letter_count(parse_term("0"), letters) == -math.inf


def test_is_bounded_exact():
    (contraction,) = closurePacks.contraction_pack("x")
    assert decision.is_bounded_exact(contraction)
    assert decision.is_bounded_exact(parse_hypotheses("b||c <= c;b").hypotheses[0])
    assert not decision.is_bounded_exact(parse_hypotheses("a <= b;c").hypotheses[0])


def test_close_term_evaluates_above_the_bound():
    contraction = closurePacks.contraction_pack("x")
    bounded = decision.close_term(parse_term("x;x;x"), contraction, bound=1)
    assert bounded.language == lang("x")
    assert bounded.definitive
    assert bounded.evaluated_at == 4


def test_decide_terms():
    none = closurePacks.empty_pack()
    verdict = decision.decide_terms(parse_term("a;b"), parse_term("a;b + 0"), none, 4)
    assert verdict.kind is VerdictKind.EQUIVALENT and verdict.equivalent

    verdict = decision.decide_terms(parse_term("a*"), parse_term("a*;a*"), none, 5)
    assert verdict.kind is VerdictKind.EQUIVALENT_UP_TO
    assert verdict.headline() == "EQUIVALENT-UP-TO 5"

    contraction = closurePacks.contraction_pack("x")
    verdict = decision.decide_terms(parse_term("x;x"), parse_term("x"), contraction, 4)
    assert verdict.kind is VerdictKind.DIFFERENT
    assert verdict.witness == parse_pomset("x;x") and verdict.witness_in_left
    assert verdict.leq is False and verdict.geq is True


def test_decide_terms_reports_exhausted_budgets():
    verdict = decision.decide_terms(
        parse_term("a+b"),
        parse_term("a"),
        closurePacks.empty_pack(),
        4,
        Budget(max_language_size=1),
    )
    assert verdict.kind is VerdictKind.INCONCLUSIVE
    assert verdict.leq is None and verdict.reason
