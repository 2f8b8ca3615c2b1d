from dataclasses import dataclass
from typing import Iterator


class BoolTerm:
    """Propositional term over a finite set of primitive observations."""

    def observations(self) -> Iterator[str]:
        raise NotImplementedError

    def evaluate(self, true_observations: frozenset[str]) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Bot(BoolTerm):
    def observations(self) -> Iterator[str]:
        return iter(())

    def evaluate(self, true_observations: frozenset[str]) -> bool:
        return False


@dataclass(frozen=True)
class Top(BoolTerm):
    def observations(self) -> Iterator[str]:
        return iter(())

    def evaluate(self, true_observations: frozenset[str]) -> bool:
        return True


@dataclass(frozen=True)
class Prim(BoolTerm):
    name: str

    def observations(self) -> Iterator[str]:
        yield self.name

    def evaluate(self, true_observations: frozenset[str]) -> bool:
        return self.name in true_observations


@dataclass(frozen=True)
class Or(BoolTerm):
    left: BoolTerm
    right: BoolTerm

    def observations(self) -> Iterator[str]:
        yield from self.left.observations()
        yield from self.right.observations()

    def evaluate(self, true_observations: frozenset[str]) -> bool:
        return self.left.evaluate(true_observations) or self.right.evaluate(
            true_observations
        )


@dataclass(frozen=True)
class And(BoolTerm):
    left: BoolTerm
    right: BoolTerm

    def observations(self) -> Iterator[str]:
        yield from self.left.observations()
        yield from self.right.observations()

    def evaluate(self, true_observations: frozenset[str]) -> bool:
        return self.left.evaluate(true_observations) and self.right.evaluate(
            true_observations
        )


@dataclass(frozen=True)
class Not(BoolTerm):
    inner: BoolTerm

    def observations(self) -> Iterator[str]:
        return self.inner.observations()

    def evaluate(self, true_observations: frozenset[str]) -> bool:
        return not self.inner.evaluate(true_observations)


Atom = frozenset[str]
