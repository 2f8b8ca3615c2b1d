import logging
from functools import lru_cache
from typing import Iterable

from ckah.algebra.contexts import HOLE_LEAF
from ckah.algebra.contexts.models import GeneralContext, Side, SpContext
from ckah.algebra.pomsets import HOLE
from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets.models import (
    EMPTY,
    Empty,
    LabelledPoset,
    Par,
    PomsetLanguage,
    Prim,
    Seq,
    SpPomset,
    make_poset,
)
from ckah.common import distinct_sub_multisets, multiset_difference, same_multiset
from ckah.core.exceptions import NotSeriesParallel, raise_precondition


logger = logging.getLogger(__name__)

HOLE_CONTEXT = SpContext(HOLE_LEAF)


# Construction


def context_seq(c: SpContext, v: SpPomset) -> SpContext:
    """C;V"""
    return SpContext(pomsetFuncs.seq(c.body, v))


def context_seq_left(v: SpPomset, c: SpContext) -> SpContext:
    """V;C"""
    return SpContext(pomsetFuncs.seq(v, c.body))


def context_par(c: SpContext, v: SpPomset) -> SpContext:
    return SpContext(pomsetFuncs.par(c.body, v))


def to_general(c: SpContext) -> GeneralContext:
    return GeneralContext(pomsetFuncs.to_poset(c.body))


def from_general(g: GeneralContext) -> SpContext:
    return SpContext(pomsetFuncs.from_poset(g.poset, allow_hole=True))


def satisfies_context_grammar(c: SpContext) -> bool:
    """Exactly one branch of every node on the path to the hole carries the hole."""

    def carries_hole(node: SpPomset) -> bool:
        return HOLE in node.leaves()

    def check(node: SpPomset) -> bool:
        match node:
            case Prim(label=label):
                return label == HOLE
            case Seq(children=children) | Par(children=children):
                carrying = [child for child in children if carries_hole(child)]
                return len(carrying) == 1 and check(carrying[0])
        return False

    return check(c.body)


def is_sequential(c: SpContext) -> bool:
    return pomsetFuncs.is_word(c.body)


def context_subsumes(larger: SpContext, smaller: SpContext) -> bool:
    """smaller ⊑ larger, comparing both as pomsets where `*` is an ordinary label."""
    return pomsetFuncs.poset_subsumes(
        pomsetFuncs.to_poset(larger.body), pomsetFuncs.to_poset(smaller.body)
    )


# Plugging


def plug(c: SpContext, u: SpPomset) -> SpPomset:
    return _substitute_hole(c.body, u)


def _substitute_hole(node: SpPomset, u: SpPomset) -> SpPomset:
    match node:
        case Prim(label=label):
            return u if label == HOLE else node
        case Seq(children=children):
            return pomsetFuncs.seq(*(_substitute_hole(child, u) for child in children))
        case Par(children=children):
            return pomsetFuncs.par(*(_substitute_hole(child, u) for child in children))
    return node


def plug_lang(c: SpContext, language: Iterable[SpPomset]) -> PomsetLanguage:
    return frozenset(plug(c, u) for u in language)


def plug_general(c: GeneralContext, u: SpPomset) -> LabelledPoset:
    """Replace the hole node by u; u inherits the hole's up-set and down-set."""
    hole = c.hole
    base = c.poset
    offset = max(base.carrier, default=-1) + 1
    inner = pomsetFuncs.to_poset(u)
    inserted = [offset + node for node in sorted(inner.carrier)]

    labels = {node: label for node, label in base.labels.items() if node != hole}
    labels |= {offset + node: label for node, label in inner.labels.items()}
    order = {(s, t) for (s, t) in base.order if hole not in (s, t)}
    order |= {(offset + s, offset + t) for (s, t) in inner.order}
    for s in base.carrier - {hole}:
        if base.leq(s, hole):
            order.update((s, node) for node in inserted)
        if base.leq(hole, s):
            order.update((node, s) for node in inserted)
    return LabelledPoset(frozenset(labels), frozenset(order), labels)


def reify_context(
    c: SpContext, letter_map: pomsetFuncs.LetterMap
) -> frozenset[SpContext]:
    """Apply a letter map to every letter of c; the hole is left alone."""
    if HOLE in letter_map:
        raise_precondition("the hole cannot be substituted")
    return frozenset(SpContext(body) for body in pomsetFuncs.substitute(c.body, letter_map))


# Constructive lemmas


def factor_parallel(
    c: SpContext, u: SpPomset, v: SpPomset, w: SpPomset
) -> tuple[Side, SpContext]:
    """Split c along plug(c, u) = v || w, putting the hole on the side that received u."""
    if isinstance(u, Empty) or not pomsetFuncs.is_word(u):
        raise_precondition(f"{u} is not a non-empty word")
    if plug(c, u) != pomsetFuncs.par(v, w):
        raise_precondition(f"plugging {u} into {c} does not give {v} || {w}")

    if isinstance(w, Empty):
        return Side.LEFT, c
    if isinstance(v, Empty):
        return Side.RIGHT, c

    # Both sides are non-empty, so c is a parallel composition and its hole
    # branch becomes a single connected component once u is plugged in.
    branches = pomsetFuncs.parallel_components(c.body)
    hole_branch = next(b for b in branches if HOLE in b.leaves())
    rest = list(branches)
    rest.remove(hole_branch)
    plugged = _substitute_hole(hole_branch, u)

    for side, own, other in ((Side.LEFT, v, w), (Side.RIGHT, w, v)):
        own_rest = multiset_difference(pomsetFuncs.parallel_components(own), [plugged])
        if own_rest is None:
            continue
        if same_multiset(rest, own_rest + list(pomsetFuncs.parallel_components(other))):
            return side, SpContext(pomsetFuncs.par(hole_branch, *own_rest))
    raise AssertionError(f"no parallel factor of {c} fits {v} || {w}")


def erase_to(c: SpContext, v: SpPomset) -> SpContext:
    """Context c' ⊑ c with plug(c', 1) = v, for v ⊑ plug(c, 1)."""
    general = to_general(c)
    hole = general.hole
    erased = general.poset.restrict(general.poset.carrier - {hole})
    target = pomsetFuncs.to_poset(v)
    bijection = pomsetFuncs.subsumption_bijection(erased, target)
    if bijection is None:
        raise_precondition(f"{v} is not subsumed by plug({c}, 1)")

    transported = {
        (s, t)
        for s in erased.carrier
        for t in erased.carrier
        if target.leq(bijection[s], bijection[t])
    }
    extended = make_poset(general.poset.labels, set(general.poset.order) | transported)
    return spify_context(GeneralContext(extended))


def subsume_to(c: SpContext, letter: str, v: SpPomset) -> SpContext:
    """Context c' ⊑ c with plug(c', letter) = v, for v ⊑ plug(c, letter)."""
    general = to_general(c)
    hole = general.hole
    filled = general.poset.relabel(hole, letter)
    target = pomsetFuncs.to_poset(v)
    bijection = pomsetFuncs.subsumption_bijection(filled, target)
    if bijection is None:
        raise_precondition(f"{v} is not subsumed by plug({c}, {letter})")
    return SpContext(
        pomsetFuncs.from_poset(target.relabel(bijection[hole], HOLE), allow_hole=True)
    )


def spify_context(c: GeneralContext) -> SpContext:
    """Add order edges at the hole until no N-pattern is left."""
    hole = c.hole
    erased = c.poset.restrict(c.poset.carrier - {hole})
    if not pomsetFuncs.is_n_free(erased):
        raise_precondition("plugging the empty pomset gives a poset with an N-pattern")

    poset = c.poset
    while (pattern := pomsetFuncs.find_n_pattern(poset)) is not None:
        s1, s2, s3, s4 = pattern
        if hole == s1:
            edge = (hole, s4)
        elif hole == s2:
            edge = (hole, s1)
        elif hole == s3:
            edge = (s4, hole)
        elif hole == s4:
            edge = (s1, hole)
        else:
            raise AssertionError(f"N-pattern {pattern} avoids the hole")
        logger.debug("spify: N-pattern %s, adding edge %s", pattern, edge)
        poset = make_poset(poset.labels, set(poset.order) | {edge})

    try:
        return SpContext(pomsetFuncs.from_poset(poset, allow_hole=True))
    except NotSeriesParallel as exception:
        raise AssertionError("spify left an N-pattern behind") from exception


# Occurrences


def occurrences(w: SpPomset, v: SpPomset) -> frozenset[SpContext]:
    """Every context c with plug(c, v) = w."""
    return frozenset(SpContext(body) for body in _occurrence_bodies(w, v))


@lru_cache(maxsize=None)
def _occurrence_bodies(w: SpPomset, v: SpPomset) -> frozenset[SpPomset]:
    if isinstance(v, Empty):
        return _insertions(w)
    if v.size > w.size:
        return frozenset()

    bodies: set[SpPomset] = set()
    if w == v:
        bodies.add(HOLE_LEAF)
    match w:
        case Seq(children=children):
            if isinstance(v, Seq):
                width = len(v.children)
                for start in range(len(children) - width + 1):
                    if children[start : start + width] == v.children:
                        bodies.add(
                            pomsetFuncs.seq(
                                *children[:start], HOLE_LEAF, *children[start + width :]
                            )
                        )
            for index, child in enumerate(children):
                for body in _occurrence_bodies(child, v):
                    bodies.add(
                        pomsetFuncs.seq(*children[:index], body, *children[index + 1 :])
                    )
        case Par(children=children):
            if isinstance(v, Par):
                rest = multiset_difference(children, v.children)
                if rest is not None:
                    bodies.add(pomsetFuncs.par(HOLE_LEAF, *rest))
            for index, child in enumerate(children):
                if index and children[index - 1] == child:
                    continue
                for body in _occurrence_bodies(child, v):
                    bodies.add(
                        pomsetFuncs.par(body, *children[:index], *children[index + 1 :])
                    )
    return frozenset(bodies)


@lru_cache(maxsize=None)
def _insertions(w: SpPomset) -> frozenset[SpPomset]:
    """Every context body that gives w once the hole is erased."""
    if isinstance(w, Empty):
        return frozenset({HOLE_LEAF})

    bodies = {
        pomsetFuncs.seq(HOLE_LEAF, w),
        pomsetFuncs.seq(w, HOLE_LEAF),
        pomsetFuncs.par(HOLE_LEAF, w),
    }
    match w:
        case Seq(children=children):
            for gap in range(len(children) + 1):
                bodies.add(pomsetFuncs.seq(*children[:gap], HOLE_LEAF, *children[gap:]))
            for start in range(len(children)):
                for stop in range(start + 1, len(children) + 1):
                    window = pomsetFuncs.seq(*children[start:stop])
                    bodies.add(
                        pomsetFuncs.seq(
                            *children[:start],
                            pomsetFuncs.par(HOLE_LEAF, window),
                            *children[stop:],
                        )
                    )
            for index, child in enumerate(children):
                for body in _insertions(child):
                    bodies.add(
                        pomsetFuncs.seq(*children[:index], body, *children[index + 1 :])
                    )
        case Par(children=children):
            for chosen, rest in distinct_sub_multisets(children):
                for body in _connected_insertions(chosen):
                    bodies.add(pomsetFuncs.par(body, *rest))
    return frozenset(bodies)


def _connected_insertions(group: tuple[SpPomset, ...]) -> frozenset[SpPomset]:
    if len(group) == 1:
        return frozenset(b for b in _insertions(group[0]) if not isinstance(b, Par))
    joined = pomsetFuncs.par(*group)
    return frozenset({pomsetFuncs.seq(HOLE_LEAF, joined), pomsetFuncs.seq(joined, HOLE_LEAF)})


def plug_empty(c: SpContext) -> SpPomset:
    return plug(c, EMPTY)
