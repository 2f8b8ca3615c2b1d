"""The observation laws instantiated over a finite pool of tests, and an
empirical checker for the conditions that make a letter map a reification.

Tests become letters `{p}` and atoms the letters `@{..}`. Only tests that
occur in the inputs, their subterms, the atoms, the atom normal forms and
the conjunctions of pairs of these are instantiated.
"""
import logging
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from ckah.algebra.closure import OBS_PACK
from ckah.algebra.closure import decision
from ckah.algebra.closure import funcs as closureFuncs
from ckah.algebra.closure.models import Hypothesis, HypothesisSet, Verdict
from ckah.algebra.contexts import funcs as contextFuncs
from ckah.algebra.contexts import oracles as contextOracles
from ckah.algebra.observations import atom_label
from ckah.algebra.observations import funcs as obsFuncs
from ckah.algebra.observations import models as boolModels
from ckah.algebra.observations.models import Atom, BoolTerm
from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets import oracles as pomsetOracles
from ckah.algebra.terms import funcs as termFuncs
from ckah.algebra.terms import parser as termParser
from ckah.algebra.terms import semantics as termSemantics
from ckah.algebra.terms import syntax as termSyntax
from ckah.algebra.terms.models import Act, Dot, Obs, Par, Plus, Term, Zero
from ckah.models.baseModels import Budget


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PoolLetter:
    """A test spelled as a letter, with the atoms below it."""

    label: str
    atoms: frozenset[Atom]
    spelling: str

    @property
    def term(self) -> Term:
        return Act(self.label)


def obs_letter(p: BoolTerm) -> str:
    return "{" + termParser.render_bool(p) + "}"


def test_letter(p: BoolTerm, omega: Sequence[str]) -> PoolLetter:
    return PoolLetter(obs_letter(p), obsFuncs.atoms_below(p, omega), termParser.render_bool(p))


def atom_pool_letter(atom: Atom) -> PoolLetter:
    label = atom_label(atom)
    return PoolLetter(label, frozenset({atom}), label)


def _combined(x: PoolLetter, y: PoolLetter, operator: str) -> PoolLetter:
    spelling = f"({x.spelling}) {operator} ({y.spelling})"
    atoms = x.atoms | y.atoms if operator == "|" else x.atoms & y.atoms
    return PoolLetter("{" + spelling + "}", atoms, spelling)


def letterize(e: Term) -> Term:
    """Turn every observation into the letter that spells it."""

    def image(leaf: Term) -> Term:
        return Act(obs_letter(leaf.test)) if isinstance(leaf, Obs) else leaf

    return termSyntax.map_leaves(e, image)


def _bool_subterms(p: BoolTerm) -> Iterable[BoolTerm]:
    yield p
    match p:
        case boolModels.Or(left=left, right=right) | boolModels.And(left=left, right=right):
            yield from _bool_subterms(left)
            yield from _bool_subterms(right)
        case boolModels.Not(inner=inner):
            yield from _bool_subterms(inner)


@dataclass
class ObsInstance:
    """Instantiated observation laws plus the letters they talk about."""

    hypotheses: HypothesisSet
    pool: dict[str, PoolLetter] = field(default_factory=dict)

    @property
    def letters(self) -> frozenset[str]:
        return frozenset(self.pool)

    def letter_map(self) -> dict[str, Term]:
        """Every pool letter sent to the sum of its atoms."""
        return {
            label: termSyntax.plus_all(
                Act(atom_label(atom)) for atom in sorted(letter.atoms, key=sorted)
            )
            for label, letter in self.pool.items()
        }


def instantiate_obs(terms: Sequence[Term], omega: Sequence[str]) -> ObsInstance:
    tests = {sub for e in terms for test in termSyntax.tests(e) for sub in _bool_subterms(test)}
    base = [test_letter(p, omega) for p in sorted(tests, key=termParser.render_bool)]
    atoms = [atom_pool_letter(atom) for atom in obsFuncs.all_atoms(omega)]

    pool: dict[str, PoolLetter] = {}
    glue: list[tuple[PoolLetter, PoolLetter, PoolLetter]] = []
    contr: list[tuple[PoolLetter, PoolLetter, PoolLetter]] = []

    def add(letter: PoolLetter) -> PoolLetter:
        return pool.setdefault(letter.label, letter)

    for letter in base + atoms:
        add(letter)

    for p in tests:
        if isinstance(p, boolModels.Or):
            left, right, whole = (test_letter(q, omega) for q in (p.left, p.right, p))
            glue.append((pool[left.label], pool[right.label], pool[whole.label]))
        if isinstance(p, boolModels.And):
            left, right, whole = (test_letter(q, omega) for q in (p.left, p.right, p))
            contr.append((pool[left.label], pool[right.label], pool[whole.label]))

    # Atom normal forms, built up one disjunct at a time
    for letter in base:
        disjuncts = [
            pool[atom_label(atom)]
            for atom in obsFuncs.all_atoms(omega)
            if atom in letter.atoms
        ]
        if not disjuncts:
            continue
        prefix = disjuncts[0]
        for disjunct in disjuncts[1:]:
            joined = add(_combined(prefix, disjunct, "|"))
            glue.append((prefix, disjunct, joined))
            prefix = joined

    for x, y in product(base + atoms, repeat=2):
        contr.append((x, y, add(_combined(x, y, "&"))))

    hypotheses: list[Hypothesis] = []
    for x, y, joined in glue:
        hypotheses.append(Hypothesis(lhs=joined.term, rhs=Plus(x.term, y.term), source="glue"))
        hypotheses.append(Hypothesis(lhs=x.term, rhs=joined.term, source="glue"))
        hypotheses.append(Hypothesis(lhs=y.term, rhs=joined.term, source="glue"))
    bottom = obs_letter(boolModels.Bot())
    if bottom in pool:
        hypotheses.append(Hypothesis(lhs=Zero(), rhs=Act(bottom), source="glue"))
    for x, y, met in contr:
        hypotheses.append(Hypothesis(lhs=met.term, rhs=Dot(x.term, y.term), source="contr"))

    # One cycle per class of equivalent tests
    classes: dict[frozenset[Atom], list[PoolLetter]] = {}
    for letter in pool.values():
        classes.setdefault(letter.atoms, []).append(letter)
    for members in classes.values():
        members.sort(key=lambda letter: letter.label)
        if len(members) < 2:
            continue
        for x, y in zip(members, members[1:] + members[:1]):
            hypotheses.append(Hypothesis(lhs=x.term, rhs=y.term, source="bool"))

    logger.debug("instantiated %d observation laws over %d letters", len(hypotheses), len(pool))
    return ObsInstance(
        HypothesisSet(
            hypotheses=tuple(dict.fromkeys(hypotheses)), includes_exch=True, name=OBS_PACK
        ),
        pool,
    )


def decide_raw(
    e: Term,
    f: Term,
    omega: Iterable[str] | None = None,
    bound: int | None = None,
    budget: Budget | None = None,
) -> Verdict:
    """Decide with the instantiated observation laws directly, without reification."""
    names = obsFuncs.resolve_omega((e, f), omega)
    instance = instantiate_obs((e, f), names)
    return decision.decide_terms(
        letterize(e),
        letterize(f),
        instance.hypotheses,
        bound,
        budget,
        shrinking_letters=instance.letters,
    )


# Reification conditions


@dataclass
class ConditionCheck:
    name: str
    passed: bool
    detail: str | None = None


@dataclass
class ReificationReport:
    checks: list[ConditionCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[ConditionCheck]:
        return [check for check in self.checks if not check.passed]

    def add(self, name: str, passed: bool, detail: str | None = None):
        self.checks.append(ConditionCheck(name, passed, detail))


def _image(letter_map: Mapping[str, Term], letter: str) -> Term:
    return letter_map.get(letter, Act(letter))


def _apply(letter_map: Mapping[str, Term], e: Term) -> Term:
    return termFuncs.substitute_letters(
        e, {letter: _image(letter_map, letter) for letter in termSyntax.letters(e)}
    )


def _exch_instances(rng, letters: Sequence[str], count: int) -> list[Hypothesis]:
    instances = []
    for _sample in range(count):
        a, b, c, d = (Act(rng.choice(letters)) for _letter in range(4))
        instances.append(
            Hypothesis(lhs=Dot(Par(a, b), Par(c, d)), rhs=Par(Dot(a, c), Dot(b, d)), source="exch")
        )
    return instances


def check_reification_conditions(
    letter_map: Mapping[str, Term],
    hypotheses: HypothesisSet,
    reduced: HypothesisSet,
    gamma: Iterable[str],
    *,
    skip: Iterable[str] = (),
    samples: int = 20,
    seed: int = 0,
    budget: Budget | None = None,
) -> ReificationReport:
    """Sample the conditions under which `letter_map` reduces `hypotheses` to `reduced`.

    Letters outside `letter_map` are sent to themselves; `skip` lists letters
    left out of the first condition, such as unsatisfiable tests.
    """
    rng = random.Random(seed)
    gamma = frozenset(gamma)
    skip = frozenset(skip)
    report = ReificationReport()

    mentioned = {
        letter
        for h in hypotheses
        for side in (h.lhs, h.rhs)
        for letter in termSyntax.letters(side)
    }
    domain = sorted(set(letter_map) | gamma | mentioned)

    for letter in domain:
        if letter in skip:
            continue
        image = termSemantics.semantics_starfree(_image(letter_map, letter))
        left = closureFuncs.closure_of(image, hypotheses, budget)
        right = closureFuncs.closure_of({pomsetFuncs.word(letter)}, hypotheses, budget)
        witness = closureFuncs.language_witness(left.language, right.language)
        report.add(
            f"image of {letter} is equivalent to it",
            witness is None,
            None if witness is None else f"closures differ on {witness}",
        )

    for letter in sorted(gamma):
        image = termSemantics.semantics_starfree(_image(letter_map, letter))
        report.add(
            f"image of {letter} contains it",
            pomsetFuncs.word(letter) in image,
        )

    gamma_letters = sorted(gamma)
    for _sample in range(samples if gamma_letters else 0):
        language = {pomsetOracles.random_sp(rng, gamma_letters, 3) for _member in range(3)}
        result = closureFuncs.closure_of(language, reduced, budget)
        outside = {
            label for u in result.language for label in u.leaves() if label not in gamma
        }
        report.add(
            "closure stays inside gamma",
            not outside,
            f"letters {', '.join(sorted(outside))} appear" if outside else None,
        )

    chosen = list(hypotheses.hypotheses)
    rng.shuffle(chosen)
    chosen = chosen[:samples]
    if hypotheses.includes_exch and domain:
        chosen += _exch_instances(rng, domain, max(1, samples // 4))
    for hypothesis in chosen:
        lhs = termSemantics.semantics_starfree(_apply(letter_map, hypothesis.lhs))
        rhs = termSemantics.semantics_starfree(_apply(letter_map, hypothesis.rhs))
        missing = lhs - closureFuncs.closure_of(rhs, reduced, budget).language
        report.add(
            f"image of {hypothesis} is derivable",
            not missing,
            f"{min(missing)} is not derivable" if missing else None,
        )

    languages = {
        letter: termSemantics.semantics_starfree(_image(letter_map, letter)) for letter in domain
    }
    for _sample in range(samples if domain else 0):
        e = pomsetOracles.random_sp(rng, domain, 3)
        lifted = pomsetFuncs.substitute(e, languages)
        spelled = termSemantics.semantics_starfree(
            _apply(letter_map, termParser.parse_term(e.key))
        )
        report.add(
            f"letterwise image of {e} matches the image term",
            lifted == spelled,
        )
        context = contextOracles.random_context(rng, domain, 2)
        images = contextFuncs.reify_context(context, languages)
        report.add(
            f"images of {context} are contexts",
            all(contextFuncs.satisfies_context_grammar(image) for image in images),
        )

    for failure in report.failures:
        logger.info("reification check failed: %s (%s)", failure.name, failure.detail)
    return report


@dataclass
class ObsReification:
    letter_map: dict[str, Term]
    hypotheses: HypothesisSet
    reduced: HypothesisSet
    gamma: frozenset[str]
    unsatisfiable: frozenset[str]


def obs_reification(terms: Sequence[Term], omega: Sequence[str]) -> ObsReification:
    """Tests to sums of atoms, from the instantiated laws to exch with atom contraction."""
    instance = instantiate_obs(terms, omega)
    actions = {letter for e in terms for letter in termSyntax.letters(e)}
    return ObsReification(
        letter_map=instance.letter_map(),
        hypotheses=instance.hypotheses,
        reduced=obsFuncs.obs_pack(omega),
        gamma=frozenset(actions) | obsFuncs.atom_letters(omega),
        unsatisfiable=frozenset(
            label for label, letter in instance.pool.items() if not letter.atoms
        ),
    )
