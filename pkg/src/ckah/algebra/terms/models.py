from dataclasses import dataclass

from ckah.algebra.observations import models as boolModels
from ckah.algebra.observations.models import BoolTerm


class Term:
    """CKA term; binary nodes only, flattening happens on pomsets."""

    def __repr__(self) -> str:
        return term_repr(self)


@dataclass(frozen=True, repr=False)
class Zero(Term):
    pass


@dataclass(frozen=True, repr=False)
class One(Term):
    pass


@dataclass(frozen=True, repr=False)
class Act(Term):
    label: str


@dataclass(frozen=True, repr=False)
class Obs(Term):
    test: BoolTerm


@dataclass(frozen=True, repr=False)
class Plus(Term):
    left: Term
    right: Term


@dataclass(frozen=True, repr=False)
class Dot(Term):
    left: Term
    right: Term


@dataclass(frozen=True, repr=False)
class Par(Term):
    left: Term
    right: Term


@dataclass(frozen=True, repr=False)
class Star(Term):
    inner: Term


def term_repr(e: Term) -> str:
    """Constructor spelling, e.g. Dot(Act(a), Star(Act(b)))."""
    match e:
        case Zero():
            return "Zero"
        case One():
            return "One"
        case Act(label=label):
            return f"Act({label})"
        case Obs(test=test):
            return f"Obs({bool_repr(test)})"
        case Plus(left=left, right=right) | Dot(left=left, right=right) | Par(
            left=left, right=right
        ):
            return f"{type(e).__name__}({term_repr(left)}, {term_repr(right)})"
        case Star(inner=inner):
            return f"Star({term_repr(inner)})"
    raise TypeError(f"not a term: {e!r}")


def bool_repr(p: BoolTerm) -> str:
    match p:
        case boolModels.Bot():
            return "Bot"
        case boolModels.Top():
            return "Top"
        case boolModels.Prim(name=name):
            return name
        case boolModels.Or(left=left, right=right) | boolModels.And(
            left=left, right=right
        ):
            return f"{type(p).__name__}({bool_repr(left)}, {bool_repr(right)})"
        case boolModels.Not(inner=inner):
            return f"Not({bool_repr(inner)})"
    raise TypeError(f"not a Boolean term: {p!r}")

