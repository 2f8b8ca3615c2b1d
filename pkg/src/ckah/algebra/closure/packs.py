from typing import Iterable

from ckah.algebra.closure import (
    CONTRACTION_PACK,
    DEMO_BAKE_PACK,
    DEMO_PRINT_PACK,
    EXCH_PACK,
    NO_PACK,
    OBS_PACK,
)
from ckah.algebra.closure.hypothesisFile import parse_hypotheses
from ckah.algebra.closure.models import Hypothesis, HypothesisSet
from ckah.algebra.terms.models import Act, Dot
from ckah.core.exceptions import raise_precondition


# Only one oven: two batches are never baked at the same time.
DEMO_BAKE = """\
bake || bake;mix == bake;bake;mix + bake;mix;bake
"""

# print sees a consistent state, so it never overlaps an increment.
DEMO_PRINT = """\
incr || print == incr;print + print;incr
"""

DEMO_PACKS = {DEMO_BAKE_PACK: DEMO_BAKE, DEMO_PRINT_PACK: DEMO_PRINT}


def empty_pack() -> HypothesisSet:
    return HypothesisSet(name=NO_PACK)


def exch_pack() -> HypothesisSet:
    return HypothesisSet(includes_exch=True, name=EXCH_PACK)


def contraction_pack(letters: Iterable[str], name: str = CONTRACTION_PACK) -> HypothesisSet:
    """x <= x;x for every letter x."""
    return HypothesisSet(
        hypotheses=tuple(
            Hypothesis(lhs=Act(letter), rhs=Dot(Act(letter), Act(letter)), source=name)
            for letter in sorted(set(letters))
        ),
        name=name,
    )


def demo_pack(name: str) -> HypothesisSet:
    if name not in DEMO_PACKS:
        raise_precondition(f"no demo pack named {name}")
    return parse_hypotheses(DEMO_PACKS[name], source=name, name=name)


def builtin_pack(name: str) -> HypothesisSet:
    """Packs that need no observation alphabet."""
    if name == NO_PACK:
        return empty_pack()
    if name == EXCH_PACK:
        return exch_pack()
    if name in DEMO_PACKS:
        return demo_pack(name)
    if name in (OBS_PACK, CONTRACTION_PACK):
        raise_precondition(f"the {name} pack is built from the observation alphabet")
    raise_precondition(f"unknown hypothesis pack {name}")
