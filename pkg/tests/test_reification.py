from ckah.algebra.closure import funcs as closureFuncs
from ckah.algebra.closure import packs as closurePacks
from ckah.algebra.closure.models import VerdictKind
from ckah.algebra.observations import reification
from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets import oracles as pomsetOracles
from ckah.algebra.terms.models import Act, Dot, Zero
from ckah.algebra.terms.parser import parse_term
from ckah.algebra.terms.semantics import semantics_starfree


TERMS = (parse_term("{o};a;{!o}"), parse_term("{o | !o};a"))


def test_letterize():
    assert reification.letterize(parse_term("{o};a")) == Dot(Act("{o}"), Act("a"))


def test_instantiate_obs():
    instance = reification.instantiate_obs(TERMS, ("o",))
    assert {"{o}", "{!o}", "{o | !o}", "@{}", "@{o}"} <= instance.letters
    assert instance.hypotheses.includes_exch
    sources = {h.source for h in instance.hypotheses}
    assert sources == {"glue", "contr", "bool"}

    letter_map = instance.letter_map()
    assert letter_map["{o}"] == Act("@{o}")
    assert letter_map["{!o}"] == Act("@{}")


def test_obs_reification_passes():
    reified = reification.obs_reification(TERMS, ("o",))
    report = reification.check_reification_conditions(
        reified.letter_map,
        reified.hypotheses,
        reified.reduced,
        reified.gamma,
        skip=reified.unsatisfiable,
        samples=8,
    )
    assert report.passed, [(check.name, check.detail) for check in report.failures]


def test_obs_reification_passes_with_two_observations():
    terms = (parse_term("{o & p};a"), parse_term("{!p}"))
    reified = reification.obs_reification(terms, ("o", "p"))
    report = reification.check_reification_conditions(
        reified.letter_map,
        reified.hypotheses,
        reified.reduced,
        reified.gamma,
        skip=reified.unsatisfiable,
        samples=4,
    )
    assert report.passed, [(check.name, check.detail) for check in report.failures]


def test_identity_is_a_reification():
    none = closurePacks.empty_pack()
    report = reification.check_reification_conditions({}, none, none, {"a", "b"})
    assert report.passed
    assert report.checks


def test_erasing_a_letter_is_not_a_reification():
    none = closurePacks.empty_pack()
    report = reification.check_reification_conditions({"a": Zero()}, none, none, ())
    assert not report.passed
    assert {check.name for check in report.failures} == {"image of a is equivalent to it"}


def test_decide_raw_agrees_with_reification():
    verdict = reification.decide_raw(parse_term("{o};a;{!o}"), Zero())
    assert verdict.kind is VerdictKind.DIFFERENT

    verdict = reification.decide_raw(parse_term("{o} + {!o}"), parse_term("{T}"))
    assert verdict.equivalent

    verdict = reification.decide_raw(parse_term("{o};{o}"), parse_term("{o}"))
    assert verdict.kind is VerdictKind.DIFFERENT
    assert verdict.geq is True and verdict.leq is False


def test_reification_maps_closures_into_the_reduced_closure(rng):
    instances = (
        (TERMS, ("o",)),
        ((parse_term("{o & p};a"), parse_term("{!p}")), ("o", "p")),
    )
    for terms, omega in instances:
        reified = reification.obs_reification(terms, omega)
        images = {
            letter: semantics_starfree(term) for letter, term in reified.letter_map.items()
        }
        letters = sorted(reified.letter_map) + ["a"]
        for _case in range(10):
            language = frozenset(
                pomsetOracles.random_sp(rng, letters, 2) for _ in range(rng.randint(1, 2))
            )
            observed = closureFuncs.closure_of(language, reified.hypotheses)
            reduced = closureFuncs.closure_of(
                pomsetFuncs.substitute_lang(language, images), reified.reduced
            )
            assert observed.complete and reduced.complete
            assert pomsetFuncs.substitute_lang(observed.language, images) <= reduced.language
