from dataclasses import dataclass, field
from typing import Iterator, Mapping

import networkx as nx

from ckah.algebra.pomsets import (
    EMPTY_KEY,
    HOLE,
    PAR_SEPARATOR,
    SEQ_SEPARATOR,
    render_label,
)
from ckah.core.exceptions import NotAPartialOrder


class SpPomset:
    """Canonical series-parallel pomset.

    Instances are compared and hashed through `key`, the canonical spelling of
    the term in the grammar of the terms module. Canonical forms are built by
    the smart constructors in `funcs`; the classes themselves do not normalise.
    """

    key: str
    size: int

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SpPomset) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "SpPomset") -> bool:
        return (self.size, self.key) < (other.size, other.key)

    def __str__(self) -> str:
        return self.key

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.key!r})"

    def leaves(self) -> Iterator[str]:
        raise NotImplementedError


@dataclass(frozen=True, eq=False, repr=False)
class Empty(SpPomset):
    def __post_init__(self):
        object.__setattr__(self, "key", EMPTY_KEY)
        object.__setattr__(self, "size", 0)

    def leaves(self) -> Iterator[str]:
        return iter(())


@dataclass(frozen=True, eq=False, repr=False)
class Prim(SpPomset):
    label: str

    def __post_init__(self):
        object.__setattr__(self, "key", render_label(self.label))
        object.__setattr__(self, "size", 1)

    def leaves(self) -> Iterator[str]:
        yield self.label


@dataclass(frozen=True, eq=False, repr=False)
class Seq(SpPomset):
    children: tuple[SpPomset, ...]

    def __post_init__(self):
        spelled = (
            f"({child.key})" if isinstance(child, Par) else child.key
            for child in self.children
        )
        object.__setattr__(self, "key", SEQ_SEPARATOR.join(spelled))
        object.__setattr__(self, "size", sum(child.size for child in self.children))

    def leaves(self) -> Iterator[str]:
        for child in self.children:
            yield from child.leaves()


@dataclass(frozen=True, eq=False, repr=False)
class Par(SpPomset):
    children: tuple[SpPomset, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "key", PAR_SEPARATOR.join(child.key for child in self.children)
        )
        object.__setattr__(self, "size", sum(child.size for child in self.children))

    def leaves(self) -> Iterator[str]:
        for child in self.children:
            yield from child.leaves()


EMPTY = Empty()

PomsetLanguage = frozenset[SpPomset]


@dataclass(frozen=True)
class LabelledPoset:
    """Explicit finite poset: carrier, reflexive-transitive order, labelling."""

    carrier: frozenset[int]
    order: frozenset[tuple[int, int]]
    labels: Mapping[int, str] = field(hash=False)

    def leq(self, left: int, right: int) -> bool:
        return (left, right) in self.order

    def less(self, left: int, right: int) -> bool:
        return left != right and (left, right) in self.order

    def comparable(self, left: int, right: int) -> bool:
        return self.leq(left, right) or self.leq(right, left)

    def strict_pairs(self) -> Iterator[tuple[int, int]]:
        return ((s, t) for (s, t) in self.order if s != t)

    def holes(self) -> list[int]:
        return sorted(node for node in self.carrier if self.labels[node] == HOLE)

    def to_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for node in sorted(self.carrier):
            graph.add_node(node, label=self.labels[node])
        graph.add_edges_from(self.strict_pairs())
        return graph

    def restrict(self, nodes: frozenset[int] | set[int]) -> "LabelledPoset":
        kept = frozenset(nodes)
        return LabelledPoset(
            carrier=kept,
            order=frozenset((s, t) for (s, t) in self.order if s in kept and t in kept),
            labels={node: self.labels[node] for node in kept},
        )

    def relabel(self, node: int, label: str) -> "LabelledPoset":
        return LabelledPoset(self.carrier, self.order, dict(self.labels) | {node: label})

    def validate(self) -> "LabelledPoset":
        if set(self.labels) != set(self.carrier):
            raise NotAPartialOrder("labelling is not total on the carrier")
        for node in self.carrier:
            if (node, node) not in self.order:
                raise NotAPartialOrder(f"order is not reflexive at node {node}")
        for s, t in self.order:
            if s not in self.carrier or t not in self.carrier:
                raise NotAPartialOrder(f"pair ({s}, {t}) leaves the carrier")
            if s != t and (t, s) in self.order:
                raise NotAPartialOrder(f"nodes {s} and {t} violate antisymmetry")
        for s, t in self.order:
            for u in self.carrier:
                if (t, u) in self.order and (s, u) not in self.order:
                    raise NotAPartialOrder(f"order is not transitive at {s}, {t}, {u}")
        return self


def make_poset(
    labels: Mapping[int, str], relation: set[tuple[int, int]] | frozenset[tuple[int, int]]
) -> LabelledPoset:
    """Least partial order containing `relation`; fails on cycles."""
    graph = nx.DiGraph()
    graph.add_nodes_from(labels)
    graph.add_edges_from((s, t) for (s, t) in relation if s != t)
    if not nx.is_directed_acyclic_graph(graph):
        raise NotAPartialOrder("relation has a cycle, antisymmetry fails")
    closure = nx.transitive_closure_dag(graph)
    order = set(closure.edges()) | {(node, node) for node in labels}
    return LabelledPoset(frozenset(labels), frozenset(order), dict(labels))
