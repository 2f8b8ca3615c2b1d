from itertools import product
from typing import Iterable, Iterator, Sequence

from ckah.algebra.contexts import funcs as contextFuncs
from ckah.algebra.contexts.models import GeneralContext, SpContext
from ckah.algebra.pomsets import HOLE
from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets import oracles as pomsetOracles
from ckah.algebra.pomsets.models import LabelledPoset, SpPomset
from ckah.common import multiset_difference


def oracle_occurrences(w: SpPomset, v: SpPomset) -> frozenset[SpContext]:
    """Enumerate every context over the residual letters of w and keep those that plug to w."""
    residual = multiset_difference(pomsetFuncs.leaf_multiset(w), v.leaves())
    if residual is None:
        return frozenset()
    candidates = pomsetOracles.enumerate_sp(tuple(sorted([*residual, HOLE])))
    contexts = (SpContext(body) for body in candidates)
    return frozenset(c for c in contexts if contextFuncs.plug(c, v) == w)


def all_contexts(alphabet: Sequence[str], max_letters: int) -> Iterator[SpContext]:
    for size in range(max_letters + 1):
        for letters in product(sorted(alphabet), repeat=size):
            if list(letters) != sorted(letters):
                continue
            for body in sorted(pomsetOracles.enumerate_sp((*letters, HOLE))):
                yield SpContext(body)


def random_context(rng, labels: Sequence[str], max_letters: int) -> SpContext:
    """Random context: a random pomset with one leaf turned into the hole."""
    body = pomsetOracles.random_sp_of_size(rng, labels, rng.randint(0, max_letters) + 1)
    target = rng.randrange(body.size)
    positions = iter(range(body.size))
    return SpContext(
        pomsetFuncs.relabel(
            body, lambda label: HOLE if next(positions) == target else label
        )
    )


def random_subsumed_context(rng, c: SpContext) -> SpContext:
    """Random context below c in the subsumption order, hole kept."""
    below = sorted(pomsetFuncs.downward_closure(c.body))
    return SpContext(rng.choice(below))


def enumerate_general_contexts(
    letters: Sequence[str], holes: Iterable[int] | None = None
) -> Iterator[GeneralContext]:
    """Every poset on the letters plus one hole node, the hole tried at each position.

    `holes` restricts the positions tried, so a large enumeration can be split up.
    """
    for poset in pomsetOracles.enumerate_posets([*letters, HOLE]):
        positions = sorted(poset.carrier)
        for hole in positions if holes is None else sorted(set(holes) & set(positions)):
            labels = [*letters]
            labels.insert(hole, HOLE)
            yield GeneralContext(
                LabelledPoset(poset.carrier, poset.order, dict(enumerate(labels)))
            )


def erased_poset(c: GeneralContext) -> LabelledPoset:
    return contextFuncs.plug_general(c, pomsetFuncs.word())
