from collections import Counter
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Mapping

import more_itertools
import networkx as nx
from networkx.algorithms import isomorphism

from ckah.algebra.pomsets import HOLE
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
from ckah.core.exceptions import NotSeriesParallel


NPattern = tuple[int, int, int, int]
LetterMap = Mapping[str, PomsetLanguage]


# Composition


def seq(*parts: SpPomset) -> SpPomset:
    children: list[SpPomset] = []
    for part in parts:
        if isinstance(part, Seq):
            children.extend(part.children)
        elif not isinstance(part, Empty):
            children.append(part)
    if not children:
        return EMPTY
    if len(children) == 1:
        return children[0]
    return Seq(tuple(children))


def par(*parts: SpPomset) -> SpPomset:
    children: list[SpPomset] = []
    for part in parts:
        if isinstance(part, Par):
            children.extend(part.children)
        elif not isinstance(part, Empty):
            children.append(part)
    if not children:
        return EMPTY
    if len(children) == 1:
        return children[0]
    return Par(tuple(sorted(children, key=lambda child: child.key)))


def seq_all(parts: Iterable[SpPomset]) -> SpPomset:
    return seq(*parts)


def par_all(parts: Iterable[SpPomset]) -> SpPomset:
    return par(*parts)


def word(*labels: str) -> SpPomset:
    return seq(*(Prim(label) for label in labels))


def is_canonical(u: SpPomset) -> bool:
    """Check flattening, unit-freeness and child order of a term tree."""
    return _is_canonical(u, top=True)


def _is_canonical(u: SpPomset, top: bool) -> bool:
    match u:
        case Empty():
            return top
        case Prim(label=label):
            return bool(label)
        case Seq(children=children):
            return len(children) >= 2 and all(
                not isinstance(child, Seq) and _is_canonical(child, top=False)
                for child in children
            )
        case Par(children=children):
            keys = [child.key for child in children]
            return (
                len(children) >= 2
                and keys == sorted(keys)
                and all(
                    not isinstance(child, Par) and _is_canonical(child, top=False)
                    for child in children
                )
            )
    return False


def leaf_multiset(u: SpPomset) -> tuple[str, ...]:
    return tuple(sorted(u.leaves()))


def is_word(u: SpPomset) -> bool:
    """True for totally ordered pomsets, the empty word included."""
    match u:
        case Empty() | Prim():
            return True
        case Seq(children=children):
            return all(isinstance(child, Prim) for child in children)
    return False


def is_connected(u: SpPomset) -> bool:
    return not isinstance(u, (Empty, Par))


def parallel_components(u: SpPomset) -> tuple[SpPomset, ...]:
    match u:
        case Empty():
            return ()
        case Par(children=children):
            return children
    return (u,)


def sequential_factors(u: SpPomset) -> tuple[SpPomset, ...]:
    match u:
        case Empty():
            return ()
        case Seq(children=children):
            return children
    return (u,)


# Languages


def lang_seq(left: PomsetLanguage, right: PomsetLanguage) -> PomsetLanguage:
    return frozenset(seq(u, v) for u, v in product(left, right))


def lang_par(left: PomsetLanguage, right: PomsetLanguage) -> PomsetLanguage:
    return frozenset(par(u, v) for u, v in product(left, right))


def lang_union(left: PomsetLanguage, right: PomsetLanguage) -> PomsetLanguage:
    return frozenset(left) | frozenset(right)


def lang_size_filter(language: Iterable[SpPomset], bound: int) -> PomsetLanguage:
    return frozenset(u for u in language if u.size <= bound)


def lang_seq_bounded(
    left: PomsetLanguage, right: PomsetLanguage, bound: int
) -> PomsetLanguage:
    return frozenset(
        seq(u, v) for u, v in product(left, right) if u.size + v.size <= bound
    )


def lang_par_bounded(
    left: PomsetLanguage, right: PomsetLanguage, bound: int
) -> PomsetLanguage:
    return frozenset(
        par(u, v) for u, v in product(left, right) if u.size + v.size <= bound
    )


def sorted_language(language: Iterable[SpPomset]) -> list[SpPomset]:
    """Canonical listing order: by leaf count, then by spelling."""
    return sorted(language)


# Letter substitution


def substitute(u: SpPomset, letter_map: LetterMap) -> PomsetLanguage:
    """Apply a letter map pointwise; letters outside the map are kept."""
    match u:
        case Empty():
            return frozenset({EMPTY})
        case Prim(label=label):
            return frozenset(letter_map.get(label, frozenset({u})))
        case Seq(children=children):
            result = frozenset({EMPTY})
            for child in children:
                result = lang_seq(result, substitute(child, letter_map))
            return result
        case Par(children=children):
            result = frozenset({EMPTY})
            for child in children:
                result = lang_par(result, substitute(child, letter_map))
            return result
    raise TypeError(f"not a pomset: {u!r}")


def substitute_lang(language: Iterable[SpPomset], letter_map: LetterMap) -> PomsetLanguage:
    result: set[SpPomset] = set()
    for u in language:
        result |= substitute(u, letter_map)
    return frozenset(result)


def relabel(u: SpPomset, rename: Callable[[str], str]) -> SpPomset:
    match u:
        case Empty():
            return u
        case Prim(label=label):
            return Prim(rename(label))
        case Seq(children=children):
            return seq(*(relabel(child, rename) for child in children))
        case Par(children=children):
            return par(*(relabel(child, rename) for child in children))
    raise TypeError(f"not a pomset: {u!r}")


# Posets


def to_poset(u: SpPomset) -> LabelledPoset:
    labels: dict[int, str] = {}
    order: set[tuple[int, int]] = set()

    def build(node: SpPomset) -> list[int]:
        match node:
            case Empty():
                return []
            case Prim(label=label):
                index = len(labels)
                labels[index] = label
                order.add((index, index))
                return [index]
            case Seq(children=children):
                blocks = [build(child) for child in children]
                for earlier, later in combinations(blocks, 2):
                    order.update(product(earlier, later))
                return [index for block in blocks for index in block]
            case Par(children=children):
                return [index for child in children for index in build(child)]
        raise TypeError(f"not a pomset: {node!r}")

    build(u)
    return LabelledPoset(frozenset(labels), frozenset(order), labels)


def find_n_pattern(p: LabelledPoset) -> NPattern | None:
    """First N-pattern (s1, s2, s3, s4) in lexicographic node order.

    s1 <= s3, s2 <= s3, s2 <= s4, while s1 !<= s4, s2 !<= s1 and s4 !<= s3.
    """
    nodes = sorted(p.carrier)
    for s1 in nodes:
        for s2 in nodes:
            if s2 == s1 or p.leq(s2, s1):
                continue
            for s3 in nodes:
                if s3 in (s1, s2) or not (p.leq(s1, s3) and p.leq(s2, s3)):
                    continue
                for s4 in nodes:
                    if s4 in (s1, s2, s3):
                        continue
                    if p.leq(s2, s4) and not p.leq(s1, s4) and not p.leq(s4, s3):
                        return (s1, s2, s3, s4)
    return None


def is_n_free(p: LabelledPoset) -> bool:
    return find_n_pattern(p) is None


def from_poset(p: LabelledPoset, *, allow_hole: bool = False) -> SpPomset:
    if not allow_hole and HOLE in p.labels.values():
        raise NotSeriesParallel("poset carries a hole label")
    return _decompose(p, p.carrier)


def _decompose(p: LabelledPoset, nodes: frozenset[int]) -> SpPomset:
    if not nodes:
        return EMPTY
    if len(nodes) == 1:
        (node,) = nodes
        return Prim(p.labels[node])

    comparability = nx.Graph()
    comparability.add_nodes_from(nodes)
    incomparability = nx.Graph()
    incomparability.add_nodes_from(nodes)
    for s, t in combinations(sorted(nodes), 2):
        if p.comparable(s, t):
            comparability.add_edge(s, t)
        else:
            incomparability.add_edge(s, t)

    components = list(nx.connected_components(comparability))
    if len(components) > 1:
        return par(*(_decompose(p, frozenset(c)) for c in components))

    blocks = list(nx.connected_components(incomparability))
    if len(blocks) > 1:
        # Blocks are totally ordered; the minimal elements of a block see exactly the earlier blocks below them.
        def depth(block: set[int]) -> int:
            return min(
                sum(1 for s in nodes if p.less(s, t)) for t in block
            )

        return seq(*(_decompose(p, frozenset(b)) for b in sorted(blocks, key=depth)))

    pattern = find_n_pattern(p.restrict(nodes))
    raise NotSeriesParallel(
        f"poset contains the N-pattern {pattern}", pattern=pattern
    )


def _label_match(first: dict, second: dict) -> bool:
    return first["label"] == second["label"]


def iso(p: LabelledPoset, q: LabelledPoset) -> bool:
    if len(p.carrier) != len(q.carrier) or Counter(p.labels.values()) != Counter(
        q.labels.values()
    ):
        return False
    if is_n_free(p) and is_n_free(q):
        return from_poset(p, allow_hole=True) == from_poset(q, allow_hole=True)
    matcher = isomorphism.DiGraphMatcher(
        p.to_graph(), q.to_graph(), node_match=_label_match
    )
    return matcher.is_isomorphic()


def subsumption_bijection(
    larger: LabelledPoset, smaller: LabelledPoset
) -> dict[int, int] | None:
    """Label preserving bijection h from `larger` onto `smaller` with s <= t => h(s) <= h(t).

    `smaller` carries at least the order of `larger`; the result maps nodes of
    `larger` to nodes of `smaller`.
    """
    if len(larger.carrier) != len(smaller.carrier) or Counter(
        larger.labels.values()
    ) != Counter(smaller.labels.values()):
        return None
    if not larger.carrier:
        return {}
    matcher = isomorphism.DiGraphMatcher(
        smaller.to_graph(), larger.to_graph(), node_match=_label_match
    )
    for mapping in matcher.subgraph_monomorphisms_iter():
        # mapping goes from `smaller` nodes to `larger` nodes
        return {target: source for source, target in mapping.items()}
    return None


def poset_subsumes(larger: LabelledPoset, smaller: LabelledPoset) -> bool:
    return subsumption_bijection(larger, smaller) is not None


# Subsumption on canonical terms


def subsumes(v: SpPomset, u: SpPomset) -> bool:
    """u ⊑ v: u has the events of v and at least its ordering."""
    return is_subsumed_sp(v, u)


@lru_cache(maxsize=None)
def is_subsumed_sp(v: SpPomset, u: SpPomset) -> bool:
    if u.size != v.size or leaf_multiset(u) != leaf_multiset(v):
        return False
    match u:
        case Empty():
            return isinstance(v, Empty)
        case Prim():
            return u == v
        case Seq(children=children):
            head, tail = children[0], seq(*children[1:])
            return any(
                is_subsumed_sp(down, head) and is_subsumed_sp(up, tail)
                for down, up in prefix_splits(v)
                if down.size == head.size
            )
        case Par(children=children):
            return _match_components(children, parallel_components(v))
    return False


def _match_components(
    u_children: tuple[SpPomset, ...], v_components: tuple[SpPomset, ...]
) -> bool:
    """Group the parallel components of v so that each group lies above one child of u."""
    if not u_children:
        return not v_components
    if len(u_children) > len(v_components):
        return False
    head, rest = u_children[0], u_children[1:]
    for chosen, remaining in distinct_sub_multisets(
        v_components, max_size=len(v_components) - len(rest)
    ):
        if sum(c.size for c in chosen) != head.size:
            continue
        if is_subsumed_sp(par(*chosen), head) and _match_components(rest, remaining):
            return True
    return False


@lru_cache(maxsize=None)
def prefix_splits(v: SpPomset) -> frozenset[tuple[SpPomset, SpPomset]]:
    """All (down, up) with down a down-closed part of v and up the rest."""
    match v:
        case Empty():
            return frozenset({(EMPTY, EMPTY)})
        case Prim():
            return frozenset({(EMPTY, v), (v, EMPTY)})
        case Seq(children=children):
            splits = set()
            for index, child in enumerate(children):
                before, after = children[:index], children[index + 1 :]
                for down, up in prefix_splits(child):
                    splits.add((seq(*before, down), seq(up, *after)))
            return frozenset(splits)
        case Par(children=children):
            splits = set()
            for choice in product(*(prefix_splits(child) for child in children)):
                splits.add(
                    (
                        par(*(down for down, _ in choice)),
                        par(*(up for _, up in choice)),
                    )
                )
            return frozenset(splits)
    raise TypeError(f"not a pomset: {v!r}")


# Downward closure


@lru_cache(maxsize=None)
def downward_closure(v: SpPomset) -> PomsetLanguage:
    match v:
        case Empty() | Prim():
            return frozenset({v})
        case Seq(children=children):
            return frozenset(
                seq(*choice)
                for choice in product(*(downward_closure(child) for child in children))
            )
        case Par(children=children):
            members = set()
            for partition in more_itertools.set_partitions(children):
                blocks = [_down_connected(tuple(block)) for block in partition]
                members.update(par(*choice) for choice in product(*blocks))
            return frozenset(members)
    raise TypeError(f"not a pomset: {v!r}")


@lru_cache(maxsize=None)
def _down_connected(group: tuple[SpPomset, ...]) -> PomsetLanguage:
    """Connected members of the downward closure of the parallel composition of `group`."""
    if len(group) == 1:
        return downward_closure(group[0])
    whole = par(*group)
    members = set()
    for down, up in prefix_splits(whole):
        if isinstance(down, Empty) or isinstance(up, Empty):
            continue
        members.update(
            seq(x, y)
            for x, y in product(downward_closure(down), downward_closure(up))
        )
    return frozenset(members)


def downward_closure_lang(language: Iterable[SpPomset]) -> PomsetLanguage:
    result: set[SpPomset] = set()
    for v in language:
        result |= downward_closure(v)
    return frozenset(result)


# Exchange rewriting


def _seq_factorings(term: SpPomset) -> Iterator[tuple[SpPomset, SpPomset]]:
    """Ways of reading `term` literally as U;W, units allowed."""
    factors = sequential_factors(term)
    for index in range(len(factors) + 1):
        yield seq(*factors[:index]), seq(*factors[index:])


def exchange_rewrites(u: SpPomset) -> frozenset[SpPomset]:
    """One step of (U;W)||(V;X) -> (U||V);(W||X) anywhere inside u."""
    results: set[SpPomset] = set()
    match u:
        case Seq(children=children):
            for index, child in enumerate(children):
                for rewritten in exchange_rewrites(child):
                    results.add(seq(*children[:index], rewritten, *children[index + 1 :]))
        case Par(children=children):
            for index, child in enumerate(children):
                for rewritten in exchange_rewrites(child):
                    results.add(par(*children[:index], rewritten, *children[index + 1 :]))
            indices = range(len(children))
            for left_size in range(1, len(children)):
                for left in combinations(indices, left_size):
                    remaining = [i for i in indices if i not in left]
                    for right_size in range(1, len(remaining) + 1):
                        for right in combinations(remaining, right_size):
                            rest = [children[i] for i in remaining if i not in right]
                            left_term = par(*(children[i] for i in left))
                            right_term = par(*(children[i] for i in right))
                            for (first, second), (third, fourth) in product(
                                _seq_factorings(left_term), _seq_factorings(right_term)
                            ):
                                exchanged = seq(par(first, third), par(second, fourth))
                                results.add(par(exchanged, *rest))
    results.discard(u)
    return frozenset(results)
