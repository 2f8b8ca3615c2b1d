"""Random terms for the property tests and the cross-checks."""
import dataclasses
from typing import Iterator, Sequence

from ckah.algebra.observations import models as boolModels
from ckah.algebra.observations.models import BoolTerm
from ckah.algebra.terms.models import Act, Dot, Obs, One, Par, Plus, Star, Term, Zero


def random_bool(rng, omega: Sequence[str], depth: int = 2) -> BoolTerm:
    if depth == 0 or rng.random() < 0.4:
        choice = rng.random()
        if choice < 0.1:
            return boolModels.Top()
        if choice < 0.2 or not omega:
            return boolModels.Bot()
        return boolModels.Prim(rng.choice(omega))
    kind = rng.choice(("or", "and", "not"))
    if kind == "not":
        return boolModels.Not(random_bool(rng, omega, depth - 1))
    left, right = random_bool(rng, omega, depth - 1), random_bool(rng, omega, depth - 1)
    return boolModels.Or(left, right) if kind == "or" else boolModels.And(left, right)


def random_term(
    rng,
    labels: Sequence[str],
    max_leaves: int,
    omega: Sequence[str] = (),
    stars: int = 0,
) -> Term:
    """Random term with at most `max_leaves` leaves and at most `stars` stars.

    Observations appear only when `omega` is given.
    """
    if max_leaves <= 1 or rng.random() < 0.25:
        choice = rng.random()
        if choice < 0.05:
            return Zero()
        if choice < 0.12:
            return One()
        if omega and choice < 0.4:
            return Obs(random_bool(rng, omega))
        return Act(rng.choice(labels))
    if stars and rng.random() < 0.3:
        return Star(random_term(rng, labels, max_leaves - 1, omega, 0))
    constructor = rng.choice((Plus, Dot, Par))
    cut = rng.randint(1, max_leaves - 1)
    if stars and rng.random() < 0.5:
        left = random_term(rng, labels, cut, omega, stars)
        right = random_term(rng, labels, max_leaves - cut, omega, 0)
    else:
        left = random_term(rng, labels, cut, omega, 0)
        right = random_term(rng, labels, max_leaves - cut, omega, stars)
    return constructor(left, right)


def axiom_steps(e: Term) -> list[Term]:
    """Terms one CKA axiom away from e, rewriting at the root only."""
    steps = [Plus(e, Zero()), Plus(e, e), Dot(One(), e), Dot(e, One()), Par(e, One())]
    match e:
        case Plus(left=left, right=right):
            steps.append(Plus(right, left))
            if isinstance(left, Plus):
                steps.append(Plus(left.left, Plus(left.right, right)))
            if isinstance(right, Plus):
                steps.append(Plus(Plus(left, right.left), right.right))
            if right == Zero():
                steps.append(left)
            if left == right:
                steps.append(left)
            for constructor in (Dot, Par):
                if isinstance(left, constructor) and isinstance(right, constructor):
                    if left.left == right.left:
                        steps.append(constructor(left.left, Plus(left.right, right.right)))
                    if left.right == right.right:
                        steps.append(constructor(Plus(left.left, right.left), left.right))
        case Dot(left=left, right=right) | Par(left=left, right=right):
            constructor = type(e)
            if isinstance(left, constructor):
                steps.append(constructor(left.left, constructor(left.right, right)))
            if isinstance(right, constructor):
                steps.append(constructor(constructor(left, right.left), right.right))
            if left == One():
                steps.append(right)
            if right == One():
                steps.append(left)
            if Zero() in (left, right):
                steps.append(Zero())
            if isinstance(left, Plus):
                steps.append(Plus(constructor(left.left, right), constructor(left.right, right)))
            if isinstance(right, Plus):
                steps.append(Plus(constructor(left, right.left), constructor(left, right.right)))
            if constructor is Par:
                steps.append(Par(right, left))
    return steps


def _paths(e: Term, prefix: tuple[str, ...] = ()) -> Iterator[tuple[str, ...]]:
    yield prefix
    for name in ("left", "right", "inner"):
        if hasattr(e, name):
            yield from _paths(getattr(e, name), prefix + (name,))


def _replace(e: Term, path: tuple[str, ...], new: Term) -> Term:
    if not path:
        return new
    head, *rest = path
    return dataclasses.replace(e, **{head: _replace(getattr(e, head), tuple(rest), new)})


def rewrite_randomly(rng, e: Term, steps: int = 4) -> Term:
    """Apply `steps` CKA axioms at random positions; the result denotes the same language."""
    for _step in range(steps):
        path = rng.choice(list(_paths(e)))
        target = e
        for name in path:
            target = getattr(target, name)
        e = _replace(e, path, rng.choice(axiom_steps(target)))
    return e
