from typing import Callable, Iterable, Iterator

from ckah.algebra.observations.models import BoolTerm
from ckah.algebra.terms.models import Act, Dot, Obs, One, Par, Plus, Star, Term, Zero


def subterms(e: Term) -> Iterator[Term]:
    yield e
    match e:
        case Plus(left=left, right=right) | Dot(left=left, right=right) | Par(
            left=left, right=right
        ):
            yield from subterms(left)
            yield from subterms(right)
        case Star(inner=inner):
            yield from subterms(inner)


def contains_star(e: Term) -> bool:
    return any(isinstance(sub, Star) for sub in subterms(e))


def contains_obs(e: Term) -> bool:
    return any(isinstance(sub, Obs) for sub in subterms(e))


def letters(e: Term) -> frozenset[str]:
    return frozenset(sub.label for sub in subterms(e) if isinstance(sub, Act))


def tests(e: Term) -> frozenset[BoolTerm]:
    return frozenset(sub.test for sub in subterms(e) if isinstance(sub, Obs))


def observation_names(e: Term) -> frozenset[str]:
    return frozenset(name for test in tests(e) for name in test.observations())


def starred_letters(e: Term) -> frozenset[str]:
    """Letters occurring under some star."""
    return frozenset(
        label for sub in subterms(e) if isinstance(sub, Star) for label in letters(sub)
    )


def max_leaves(e: Term) -> int:
    """Largest leaf count of a member of ⟦e⟧; meaningful for star-free e only."""
    match e:
        case Zero() | One():
            return 0
        case Act() | Obs():
            return 1
        case Plus(left=left, right=right):
            return max(max_leaves(left), max_leaves(right))
        case Dot(left=left, right=right) | Par(left=left, right=right):
            return max_leaves(left) + max_leaves(right)
        case Star():
            raise ValueError("a starred term has no largest member")
    raise TypeError(f"not a term: {e!r}")


def size(e: Term) -> int:
    """Number of symbols: leaves, operators and stars."""
    return sum(1 for _ in subterms(e))


def map_leaves(e: Term, leaf: Callable[[Term], Term]) -> Term:
    """Rebuild e with every Act/Obs leaf replaced by `leaf(node)`."""
    match e:
        case Act() | Obs():
            return leaf(e)
        case Zero() | One():
            return e
        case Plus(left=left, right=right):
            return Plus(map_leaves(left, leaf), map_leaves(right, leaf))
        case Dot(left=left, right=right):
            return Dot(map_leaves(left, leaf), map_leaves(right, leaf))
        case Par(left=left, right=right):
            return Par(map_leaves(left, leaf), map_leaves(right, leaf))
        case Star(inner=inner):
            return Star(map_leaves(inner, leaf))
    raise TypeError(f"not a term: {e!r}")


def plus_all(terms: Iterable[Term]) -> Term:
    """Sum of the terms, 0 when there are none."""
    return _fold(Plus, list(terms), Zero())


def dot_all(terms: Iterable[Term]) -> Term:
    return _fold(Dot, list(terms), One())


def par_all(terms: Iterable[Term]) -> Term:
    return _fold(Par, list(terms), One())


def _fold(constructor, terms: list[Term], unit: Term) -> Term:
    if not terms:
        return unit
    result = terms[0]
    for term in terms[1:]:
        result = constructor(result, term)
    return result


def word_term(labels: Iterable[str]) -> Term:
    return dot_all(Act(label) for label in labels)
