"""Brute-force reference implementations, used by the tests and by --cross-check."""
from collections import defaultdict
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Sequence

import more_itertools

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
)
from ckah.common import distinct_sub_multisets
from ckah.core.config import config
from ckah.core.exceptions import PreconditionViolated


@lru_cache(maxsize=None)
def enumerate_sp(labels: tuple[str, ...]) -> PomsetLanguage:
    """Every sp-pomset whose leaves are exactly the multiset `labels`."""
    labels = tuple(sorted(labels))
    return _connected(labels) | _parallel(labels)


@lru_cache(maxsize=None)
def _connected(labels: tuple[str, ...]) -> PomsetLanguage:
    if not labels:
        return frozenset()
    if len(labels) == 1:
        return frozenset({Prim(labels[0])})
    members = set()
    for first, second in distinct_sub_multisets(labels, max_size=len(labels) - 1):
        for x, y in product(enumerate_sp(first), enumerate_sp(second)):
            members.add(pomsetFuncs.seq(x, y))
    return frozenset(members)


@lru_cache(maxsize=None)
def _parallel(labels: tuple[str, ...]) -> PomsetLanguage:
    if not labels:
        return frozenset({EMPTY})
    members = set()
    for partition in more_itertools.set_partitions(labels):
        if len(partition) < 2:
            continue
        blocks = [_connected(tuple(sorted(block))) for block in partition]
        members.update(pomsetFuncs.par(*choice) for choice in product(*blocks))
    return frozenset(members)


def oracle_subsumes(v: SpPomset, u: SpPomset) -> bool:
    if v.size > config.oracle_limit:
        raise PreconditionViolated(
            f"bijection search is limited to {config.oracle_limit} nodes"
        )
    return pomsetFuncs.poset_subsumes(pomsetFuncs.to_poset(v), pomsetFuncs.to_poset(u))


def oracle_downward_closure(v: SpPomset) -> PomsetLanguage:
    return frozenset(
        u
        for u in enumerate_sp(pomsetFuncs.leaf_multiset(v))
        if oracle_subsumes(v, u)
    )


@lru_cache(maxsize=None)
def linear_words(u: SpPomset) -> frozenset[tuple[str, ...]]:
    """Label sequences of the linearisations of u."""
    match u:
        case Empty():
            return frozenset({()})
        case Prim(label=label):
            return frozenset({(label,)})
        case Seq(children=children):
            words = frozenset({()})
            for child in children:
                words = frozenset(x + y for x in words for y in linear_words(child))
            return words
        case Par(children=children):
            words = frozenset({()})
            for child in children:
                words = frozenset(
                    z for x in words for y in linear_words(child) for z in _shuffles(x, y)
                )
            return words


@lru_cache(maxsize=None)
def _shuffles(x: tuple[str, ...], y: tuple[str, ...]) -> frozenset[tuple[str, ...]]:
    if not x or not y:
        return frozenset({x + y})
    return frozenset(
        {(x[0],) + rest for rest in _shuffles(x[1:], y)}
        | {(y[0],) + rest for rest in _shuffles(x, y[1:])}
    )


def _maps_into(larger: LabelledPoset, smaller: LabelledPoset) -> bool:
    """Some label-preserving bijection carries the order of `larger` into `smaller`."""
    groups, sources = defaultdict(list), defaultdict(list)
    for node in sorted(smaller.carrier):
        groups[smaller.labels[node]].append(node)
    for node in sorted(larger.carrier):
        sources[larger.labels[node]].append(node)
    for images in product(*(permutations(groups[label]) for label in groups)):
        mapping = {}
        for label, image in zip(groups, images):
            mapping.update(zip(sources[label], image))
        if all(smaller.leq(mapping[s], mapping[t]) for (s, t) in larger.order):
            return True
    return False


def oracle_down_closures(labels: tuple[str, ...]) -> dict[SpPomset, PomsetLanguage]:
    """Downward closure of every sp-pomset over the multiset `labels`, by bijection search.

    Pairs are first filtered by linearisation inclusion, which subsumption implies.
    """
    members = sorted(enumerate_sp(tuple(sorted(labels))))
    posets = {u: pomsetFuncs.to_poset(u) for u in members}
    closures = {}
    for v in members:
        words = linear_words(v)
        closures[v] = frozenset(
            u
            for u in members
            if linear_words(u) <= words and _maps_into(posets[v], posets[u])
        )
    return closures



def rewriting_downward_closure(v: SpPomset) -> PomsetLanguage:
    seen = {v}
    frontier = [v]
    while frontier:
        current = frontier.pop()
        for rewritten in pomsetFuncs.exchange_rewrites(current):
            if rewritten not in seen:
                seen.add(rewritten)
                frontier.append(rewritten)
    return frozenset(seen)


def enumerate_posets(labels: Sequence[str]) -> Iterator[LabelledPoset]:
    """Every naturally labelled partial order on nodes 0..n-1 (i < j whenever i is below j).

    Each partial order appears at least once up to isomorphism; nodes carry
    `labels` positionally.
    """
    size = len(labels)
    label_map = dict(enumerate(labels))

    def extend(order: frozenset[tuple[int, int]], count: int) -> Iterator[LabelledPoset]:
        if count == size:
            yield LabelledPoset(frozenset(range(size)), order, label_map)
            return
        for below in _down_sets(order, count):
            grown = order | {(node, count) for node in below} | {(count, count)}
            yield from extend(grown, count + 1)

    yield from extend(frozenset(), 0)


def _down_sets(order: frozenset[tuple[int, int]], count: int) -> Iterator[set[int]]:
    for mask in range(1 << count):
        chosen = {node for node in range(count) if mask >> node & 1}
        if all(s in chosen for (s, t) in order if t in chosen):
            yield chosen


def random_sp(rng, labels: Sequence[str], max_leaves: int) -> SpPomset:
    """Random sp-pomset with between 0 and `max_leaves` leaves."""
    size = rng.randint(0, max_leaves)
    return random_sp_of_size(rng, labels, size)


def random_sp_of_size(rng, labels: Sequence[str], size: int) -> SpPomset:
    if size == 0:
        return EMPTY
    if size == 1:
        return Prim(rng.choice(labels))
    cut = rng.randint(1, size - 1)
    left = random_sp_of_size(rng, labels, cut)
    right = random_sp_of_size(rng, labels, size - cut)
    if rng.random() < 0.5:
        return pomsetFuncs.seq(left, right)
    return pomsetFuncs.par(left, right)


def random_linearisation(rng, u: SpPomset) -> SpPomset:
    """A random member of the downward closure of u; used to build subsumption pairs."""
    candidates = sorted(pomsetFuncs.downward_closure(u))
    return rng.choice(candidates)


def all_words(alphabet: Sequence[str], max_length: int) -> Iterator[SpPomset]:
    for length in range(max_length + 1):
        for letters in product(alphabet, repeat=length):
            yield pomsetFuncs.word(*letters)


def all_sp_up_to(alphabet: Sequence[str], max_leaves: int) -> Iterator[SpPomset]:
    for size in range(max_leaves + 1):
        for labels in more_itertools.distinct_combinations(
            sorted(list(alphabet) * size), size
        ):
            yield from sorted(enumerate_sp(tuple(labels)))
