from pathlib import Path

import pydantic

from ckah.algebra.closure import NO_PACK, PACK_NAMES
from ckah.core.config import config
from ckah.models import validatorFuncs


def validate_pack(name: str | None):
    if name is not None and name not in PACK_NAMES:
        raise ValueError(f"unknown pack {name!r}, choose one of {', '.join(PACK_NAMES)}")
    return name


class HypothesisChoice(pydantic.BaseModel):
    hyp: str | None = None
    hyp_file: Path | None = None

    _validate_hyp = pydantic.validator("hyp", allow_reuse=True)(validate_pack)

    @pydantic.root_validator()
    def validate_one_source(cls, values: dict):
        return validatorFuncs.validate_single_property_specified(values, ("hyp", "hyp_file"))

    @property
    def pack(self) -> str:
        return self.hyp or NO_PACK


class ClosureRequest(HypothesisChoice):
    term: str
    omega: tuple[str, ...] | None = None
    bound: int = config.default_bound
    dot: Path | None = None

    _validate_omega = pydantic.validator("omega", allow_reuse=True)(
        validatorFuncs.validate_omega
    )
    _validate_bound = pydantic.validator("bound", allow_reuse=True)(
        validatorFuncs.validate_bound
    )


class CheckRequest(HypothesisChoice):
    left: str
    right: str
    omega: tuple[str, ...] | None = None
    bound: int = config.default_bound
    witness: bool = False
    dot: Path | None = None
    cross_check: bool = False

    _validate_omega = pydantic.validator("omega", allow_reuse=True)(
        validatorFuncs.validate_omega
    )
    _validate_bound = pydantic.validator("bound", allow_reuse=True)(
        validatorFuncs.validate_bound
    )
