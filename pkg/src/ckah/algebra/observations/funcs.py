import logging
from typing import Iterable, Sequence

import more_itertools
import pydantic

from ckah.algebra.closure import CONTRACTION_PACK, OBS_PACK
from ckah.algebra.closure import decision
from ckah.algebra.closure import packs as closurePacks
from ckah.algebra.closure.models import HypothesisSet, Verdict
from ckah.algebra.observations import atom_label
from ckah.algebra.observations.models import Atom, BoolTerm
from ckah.algebra.terms import syntax as termSyntax
from ckah.algebra.terms.models import Act, Obs, Term
from ckah.core.config import DEFAULT_OMEGA_CAP, config
from ckah.core.exceptions import OmegaTooLarge, raise_precondition
from ckah.models import validatorFuncs
from ckah.models.baseModels import Budget
from ckah.models.modelExceptionFuncs import raise_model_exception


logger = logging.getLogger(__name__)


class ObservationAlphabet(pydantic.BaseModel):
    names: tuple[str, ...] = ()

    _validate_names = pydantic.validator("names", allow_reuse=True)(
        validatorFuncs.validate_omega
    )

    class Config:
        allow_mutation = False


def check_omega(omega: Iterable[str]) -> tuple[str, ...]:
    """Sorted, validated observation names within the configured cap."""
    try:
        names = ObservationAlphabet(names=tuple(omega)).names
    except pydantic.ValidationError as exception:
        raise_model_exception(exception)
    if config.omega_cap > DEFAULT_OMEGA_CAP:
        logger.warning(
            "observation cap raised to %d; reification lists up to %d atoms",
            config.omega_cap,
            2**config.omega_cap,
        )
    if len(names) > config.omega_cap:
        raise OmegaTooLarge(
            f"{len(names)} observations given, at most {config.omega_cap} are allowed"
        )
    return tuple(sorted(names))


def infer_omega(*terms: Term) -> tuple[str, ...]:
    return tuple(sorted({name for e in terms for name in termSyntax.observation_names(e)}))


def resolve_omega(terms: Sequence[Term], omega: Iterable[str] | None = None) -> tuple[str, ...]:
    """The given alphabet, or the names in the terms; the terms must fit in it."""
    inferred = infer_omega(*terms)
    if omega is None:
        return check_omega(inferred)
    names = check_omega(omega)
    missing = set(inferred) - set(names)
    if missing:
        raise_precondition(f"observations {', '.join(sorted(missing))} are not in omega")
    return names


def all_atoms(omega: Sequence[str]) -> list[Atom]:
    """Every subset of omega, smallest first."""
    return [frozenset(subset) for subset in more_itertools.powerset(sorted(omega))]


def _check_test(p: BoolTerm, omega: Sequence[str]):
    unknown = set(p.observations()) - set(omega)
    if unknown:
        raise_precondition(f"observations {', '.join(sorted(unknown))} are not in omega")


def atoms_below(p: BoolTerm, omega: Sequence[str]) -> frozenset[Atom]:
    _check_test(p, omega)
    return frozenset(atom for atom in all_atoms(omega) if p.evaluate(atom))


def ba_equiv(p: BoolTerm, q: BoolTerm, omega: Sequence[str] | None = None) -> bool:
    if omega is None:
        omega = sorted(set(p.observations()) | set(q.observations()))
    return atoms_below(p, omega) == atoms_below(q, omega)


def atom_term(atom: Atom) -> Term:
    return Act(atom_label(atom))


def reify_test(p: BoolTerm, omega: Sequence[str]) -> Term:
    """Sum of the atoms below p; 0 when p is unsatisfiable."""
    below = atoms_below(p, omega)
    return termSyntax.plus_all(atom_term(atom) for atom in all_atoms(omega) if atom in below)


def reify(e: Term, omega: Sequence[str]) -> Term:
    def image(leaf: Term) -> Term:
        return reify_test(leaf.test, omega) if isinstance(leaf, Obs) else leaf

    return termSyntax.map_leaves(e, image)


def atom_letters(omega: Sequence[str]) -> frozenset[str]:
    return frozenset(atom_label(atom) for atom in all_atoms(omega))


def contraction_atoms_pack(omega: Sequence[str]) -> HypothesisSet:
    return closurePacks.contraction_pack(atom_letters(omega), name=CONTRACTION_PACK)


def obs_pack(omega: Sequence[str]) -> HypothesisSet:
    """exch plus x <= x;x for every atom: what the observation laws reduce to."""
    return HypothesisSet(
        hypotheses=contraction_atoms_pack(omega).hypotheses,
        includes_exch=True,
        name=OBS_PACK,
    )


def decide_ckao(
    e: Term,
    f: Term,
    omega: Iterable[str] | None = None,
    bound: int | None = None,
    budget: Budget | None = None,
) -> Verdict:
    """Reify both sides to atoms and compare them under exch and contraction."""
    names = resolve_omega((e, f), omega)
    logger.info("deciding over omega {%s}", ", ".join(names))
    return decision.decide_terms(
        reify(e, names), reify(f, names), obs_pack(names), bound, budget
    )


def leq_ckao(
    e: Term,
    f: Term,
    omega: Iterable[str] | None = None,
    bound: int | None = None,
    budget: Budget | None = None,
) -> bool:
    verdict = decide_ckao(e, f, omega, bound, budget)
    if verdict.leq is None:
        raise_precondition(f"cannot compare the closures: {verdict.reason}")
    return verdict.leq
