import pytest

from ckah.algebra.closure import decision
from ckah.algebra.closure import funcs as closureFuncs
from ckah.algebra.closure import packs as closurePacks
from ckah.algebra.closure.hypothesisFile import parse_hypotheses
from ckah.algebra.closure.models import VerdictKind
from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets.models import EMPTY
from ckah.algebra.terms import funcs as termFuncs
from ckah.algebra.terms import oracles as termOracles
from ckah.algebra.terms import syntax as termSyntax
from ckah.algebra.terms.models import Act, Plus, Zero
from ckah.algebra.terms.parser import parse_term
from ckah.algebra.terms.semantics import (
    parse_pomset,
    semantics_bounded,
    semantics_starfree,
    single_pomset,
)
from ckah.core.exceptions import ContainsObs, ContainsStar, PreconditionViolated
from ckah.models.baseModels import UnrollBudget


def lang(*texts):
    return frozenset(parse_pomset(text) for text in texts)


def test_starfree_semantics():
    assert semantics_starfree(parse_term("0")) == frozenset()
    assert semantics_starfree(parse_term("1")) == {EMPTY}
    assert semantics_starfree(parse_term("(a+b);c")) == lang("a;c", "b;c")
    assert semantics_starfree(parse_term("(a+1)||b")) == lang("a||b", "b")
    assert semantics_starfree(parse_term("a;0 + b")) == lang("b")


def test_starfree_semantics_rejects_stars_and_observations():
    with pytest.raises(ContainsStar):
        semantics_starfree(parse_term("a*"))
    with pytest.raises(ContainsObs):
        semantics_starfree(parse_term("{o};a"))


def test_bounded_semantics():
    assert semantics_bounded(parse_term("a*"), 2) == lang("1", "a", "a;a")
    assert semantics_bounded(parse_term("1*"), 5) == lang("1")
    assert semantics_bounded(parse_term("(a||b)*"), UnrollBudget(max_nodes=2)) == lang(
        "1", "a||b"
    )
    assert semantics_bounded(parse_term("a;b*"), 0) == frozenset()


def test_bounded_semantics_matches_starfree_semantics(rng):
    for _case in range(200):
        e = termOracles.random_term(rng, "abc", 6)
        exact = semantics_starfree(e)
        for bound in (0, 2, 6):
            assert semantics_bounded(e, bound) == pomsetFuncs.lang_size_filter(exact, bound)


def test_bounded_semantics_is_monotone(rng):
    for _case in range(50):
        e = termOracles.random_term(rng, "ab", 5, stars=1)
        previous = semantics_bounded(e, 1)
        for bound in range(2, 9):
            current = semantics_bounded(e, bound)
            assert previous <= current
            assert pomsetFuncs.lang_size_filter(current, bound - 1) == previous
            previous = current


def test_verdicts_do_not_flip_as_the_bound_grows(rng):
    none = closurePacks.empty_pack()
    for _case in range(50):
        e = termOracles.random_term(rng, "ab", 4, stars=1)
        f = termOracles.random_term(rng, "ab", 4, stars=1)
        seen_different = False
        for bound in range(2, 9):
            verdict = decision.decide_terms(e, f, none, bound)
            assert verdict.kind is not VerdictKind.INCONCLUSIVE
            if seen_different:
                assert verdict.kind is VerdictKind.DIFFERENT
            seen_different = verdict.kind is VerdictKind.DIFFERENT


def test_single_pomset():
    assert single_pomset(parse_term("a;(b||c)")) == parse_pomset("a;(c||b)")
    with pytest.raises(PreconditionViolated):
        single_pomset(parse_term("a+b"))


def test_leq_semantic():
    none = closurePacks.empty_pack()
    exch = closurePacks.exch_pack()
    assert termFuncs.leq_semantic(parse_term("a"), parse_term("a+b"), none)
    assert not termFuncs.leq_semantic(parse_term("a+b"), parse_term("a"), none)
    assert termFuncs.leq_semantic(
        parse_term("(a||b);(c||d)"), parse_term("(a;c)||(b;d)"), exch
    )
    assert not termFuncs.leq_semantic(
        parse_term("(a;c)||(b;d)"), parse_term("(a||b);(c||d)"), exch
    )


def test_substitute_letters():
    e = parse_term("a;b*||c")
    substitution = {"a": Act("a"), "b": parse_term("a+b"), "c": Act("c")}
    assert termFuncs.substitute_letters(e, substitution) == parse_term("a;(a+b)*||c")
    identity = {letter: Act(letter) for letter in "abc"}
    assert termFuncs.substitute_letters(e, identity) == e
    assert termFuncs.substitute_letters(Zero(), {}) == Zero()
    with pytest.raises(PreconditionViolated):
        termFuncs.substitute_letters(e, {"a": Act("a")})


def test_syntax_helpers():
    e = parse_term("a;(b+{o & p})||c*")
    assert termSyntax.letters(e) == {"a", "b", "c"}
    assert termSyntax.observation_names(e) == {"o", "p"}
    assert termSyntax.contains_star(e) and termSyntax.contains_obs(e)
    assert termSyntax.starred_letters(e) == {"c"}
    assert termSyntax.max_leaves(parse_term("a;(b+c;d)||e")) == 4
    assert termSyntax.plus_all([]) == Zero()
    assert termSyntax.plus_all([Act("a"), Act("b")]) == Plus(Act("a"), Act("b"))
    assert semantics_starfree(termSyntax.word_term("abc")) == lang("a;b;c")


def test_axiom_rewrites_preserve_semantics_and_closure(rng):
    hypotheses = parse_hypotheses("a <= b;c\nc <= a")
    for _case in range(300):
        e = termOracles.random_term(rng, "abc", 12)
        rewritten = termOracles.rewrite_randomly(rng, e)
        language = semantics_starfree(e)
        assert semantics_starfree(rewritten) == language
        closure = closureFuncs.closure_of(language, hypotheses)
        assert closure.complete
        again = closureFuncs.closure_of(semantics_starfree(rewritten), hypotheses)
        assert again.language == closure.language


def test_axiom_steps():
    e = parse_term("(a+b);c")
    steps = termOracles.axiom_steps(e)
    assert parse_term("a;c+b;c") in steps
    assert Plus(e, Zero()) in steps
    assert termOracles.axiom_steps(parse_term("a;c+a;b"))[5:] == [
        parse_term("a;b+a;c"),
        parse_term("a;(c+b)"),
    ]
