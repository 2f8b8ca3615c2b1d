from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import pydantic

from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets.models import PomsetLanguage, SpPomset
from ckah.algebra.terms import parser as termParser
from ckah.algebra.terms import semantics as termSemantics
from ckah.algebra.terms import syntax as termSyntax
from ckah.algebra.terms.models import Term


def validate_star_free(e: Term):
    if termSyntax.contains_star(e):
        raise ValueError(f"{termParser.render_term(e)} has a star; hypotheses must be star-free")
    if termSyntax.contains_obs(e):
        raise ValueError(
            f"{termParser.render_term(e)} has an observation; reify it or spell it as a letter"
        )
    return e


@lru_cache(maxsize=None)
def _language(e: Term) -> PomsetLanguage:
    return termSemantics.semantics_starfree(e)


class Hypothesis(pydantic.BaseModel):
    """Inequation lhs <= rhs between star-free terms."""

    lhs: Term
    rhs: Term
    source: str | None = None

    _validate_lhs = pydantic.validator("lhs", allow_reuse=True)(validate_star_free)
    _validate_rhs = pydantic.validator("rhs", allow_reuse=True)(validate_star_free)

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @property
    def lhs_language(self) -> PomsetLanguage:
        return _language(self.lhs)

    @property
    def rhs_language(self) -> PomsetLanguage:
        return _language(self.rhs)

    @property
    def is_grounded(self) -> bool:
        """⟦rhs⟧ is a single non-empty word."""
        if len(self.rhs_language) != 1:
            return False
        (member,) = self.rhs_language
        return member.size > 0 and pomsetFuncs.is_word(member)

    @property
    def is_sequential(self) -> bool:
        return all(
            pomsetFuncs.is_word(u) for u in self.lhs_language | self.rhs_language
        )

    @property
    def leaf_delta(self) -> tuple[int, int]:
        """Smallest and largest change in leaf count one application can cause."""
        if not self.lhs_language or not self.rhs_language:
            return (0, 0)
        deltas = [
            u.size - v.size for u in self.lhs_language for v in self.rhs_language
        ]
        return (min(deltas), max(deltas))

    @property
    def is_growing(self) -> bool:
        """Applications may add leaves, or premises may span several sizes."""
        sizes = {v.size for v in self.rhs_language}
        return self.leaf_delta[1] > 0 or len(sizes) > 1

    @property
    def contracted_letter(self) -> str | None:
        """x for hypotheses x <= x;...;x with at least two copies of x."""
        if len(self.lhs_language) != 1 or len(self.rhs_language) != 1:
            return None
        (small,) = self.lhs_language
        (large,) = self.rhs_language
        letters = set(large.leaves())
        if (
            small.size == 1
            and large.size >= 2
            and pomsetFuncs.is_word(large)
            and letters == set(small.leaves())
        ):
            return next(iter(letters))
        return None

    def render(self) -> str:
        return f"{termParser.render_term(self.lhs)} <= {termParser.render_term(self.rhs)}"

    def __str__(self) -> str:
        return self.render()


class HypothesisSet(pydantic.BaseModel):
    hypotheses: tuple[Hypothesis, ...] = ()
    includes_exch: bool = False
    grounded: bool | None = None
    name: str | None = None

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @pydantic.root_validator()
    def validate_grounded_flag(cls, values: dict):
        hypotheses = values.get("hypotheses") or ()
        actual = all(h.is_grounded for h in hypotheses) and not values.get("includes_exch")
        if values.get("grounded") is None:
            values["grounded"] = actual
        elif values["grounded"] and not actual:
            raise ValueError("set is flagged grounded but has a hypothesis whose rhs is not a word")
        return values

    def __iter__(self):
        return iter(self.hypotheses)

    def __len__(self) -> int:
        return len(self.hypotheses)

    def union(self, other: "HypothesisSet") -> "HypothesisSet":
        names = [n for n in (self.name, other.name) if n]
        return HypothesisSet(
            hypotheses=self.hypotheses
            + tuple(h for h in other.hypotheses if h not in self.hypotheses),
            includes_exch=self.includes_exch or other.includes_exch,
            name="+".join(names) or None,
        )

    def without_exch(self) -> "HypothesisSet":
        return HypothesisSet(hypotheses=self.hypotheses, name=self.name)

    @property
    def is_empty(self) -> bool:
        return not self.hypotheses and not self.includes_exch

    @property
    def is_growing(self) -> bool:
        return any(h.is_growing for h in self.hypotheses)

    @property
    def contracted_letters(self) -> frozenset[str]:
        return frozenset(
            letter for h in self.hypotheses if (letter := h.contracted_letter) is not None
        )

    def describe(self) -> str:
        parts = ["exch"] if self.includes_exch else []
        if self.hypotheses:
            parts.append(f"{len(self.hypotheses)} hypotheses")
        return self.name or (", ".join(parts) if parts else "none")


class ClosureStatus(str, Enum):
    COMPLETE = "complete"
    TRUNCATED = "truncated"


@dataclass
class ClosureResult:
    language: PomsetLanguage = frozenset()
    status: ClosureStatus = ClosureStatus.COMPLETE
    reason: str | None = None
    iterations: int = 0

    @property
    def complete(self) -> bool:
        return self.status is ClosureStatus.COMPLETE

    def new(
        self,
        language: PomsetLanguage | None = None,
        reason: str | None = None,
        iterations: int | None = None,
    ):
        return ClosureResult(
            language=self.language if language is None else language,
            status=ClosureStatus.TRUNCATED if reason or self.reason else ClosureStatus.COMPLETE,
            reason=reason or self.reason,
            iterations=self.iterations if iterations is None else iterations,
        )


class VerdictKind(str, Enum):
    EQUIVALENT = "EQUIVALENT"
    EQUIVALENT_UP_TO = "EQUIVALENT-UP-TO"
    DIFFERENT = "DIFFERENT"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class Verdict:
    kind: VerdictKind
    bound: int
    witness: SpPomset | None = None
    witness_in_left: bool | None = None
    leq: bool | None = None
    geq: bool | None = None
    definitive: bool = True
    reason: str | None = None
    left_language: PomsetLanguage = field(default_factory=frozenset, repr=False)
    right_language: PomsetLanguage = field(default_factory=frozenset, repr=False)

    @property
    def equivalent(self) -> bool:
        return self.kind in (VerdictKind.EQUIVALENT, VerdictKind.EQUIVALENT_UP_TO)

    def headline(self) -> str:
        if self.kind is VerdictKind.EQUIVALENT_UP_TO:
            return f"{self.kind.value} {self.bound}"
        return self.kind.value
