"""Hasse diagrams of pomsets in Graphviz DOT."""
import json
from pathlib import Path

import networkx as nx

from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets.models import SpPomset


def hasse_edges(u: SpPomset) -> list[tuple[int, int]]:
    """Covering pairs of the strict order, sorted."""
    graph = pomsetFuncs.to_poset(u).to_graph()
    return sorted(nx.transitive_reduction(graph).edges())


def to_dot(u: SpPomset, name: str = "pomset") -> str:
    poset = pomsetFuncs.to_poset(u)
    lines = [f"digraph {name} {{"]
    lines += [
        f"  n{node} [label={json.dumps(poset.labels[node])}];"
        for node in sorted(poset.carrier)
    ]
    lines += [f"  n{s} -> n{t};" for s, t in hasse_edges(u)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(u: SpPomset, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_dot(u), encoding="utf-8")
    return path


def export_language(language, directory: str | Path, prefix: str = "pomset") -> list[Path]:
    """One file per member, numbered in canonical order."""
    return [
        export_dot(u, Path(directory) / f"{prefix}-{index:03d}.dot")
        for index, u in enumerate(pomsetFuncs.sorted_language(language))
    ]
