from collections import Counter
from typing import Any, Hashable, Iterable, Iterator, Sequence, TypeVar
import itertools

H = TypeVar("H", bound=Hashable)


def join_with_commas(values: Iterable[Any]):
    return ", ".join(str(v) for v in values) if values else ""


def multiset_difference(items: Sequence[H], removed: Iterable[H]) -> list[H] | None:
    """Remove `removed` from `items` counting multiplicities; None if not contained."""
    remaining = list(items)
    for item in removed:
        try:
            remaining.remove(item)
        except ValueError:
            return None
    return remaining


def same_multiset(left: Iterable[H], right: Iterable[H]) -> bool:
    return Counter(left) == Counter(right)


def sub_multiset_indices(
    size: int, *, min_size: int = 1, max_size: int | None = None
) -> Iterator[tuple[int, ...]]:
    top = size if max_size is None else min(size, max_size)
    for chosen_size in range(min_size, top + 1):
        yield from itertools.combinations(range(size), chosen_size)


def distinct_sub_multisets(
    items: Sequence[H], *, min_size: int = 1, max_size: int | None = None
) -> Iterator[tuple[tuple[H, ...], tuple[H, ...]]]:
    """Yield (chosen, rest) once per distinct chosen sub-multiset of `items`."""
    seen: set[tuple[H, ...]] = set()
    for indices in sub_multiset_indices(
        len(items), min_size=min_size, max_size=max_size
    ):
        chosen = tuple(items[i] for i in indices)
        if chosen in seen:
            continue
        seen.add(chosen)
        index_set = set(indices)
        rest = tuple(item for i, item in enumerate(items) if i not in index_set)
        yield chosen, rest
