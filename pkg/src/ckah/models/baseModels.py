import pydantic

from ckah.core.config import config
from ckah.models import validatorFuncs


class UnrollBudget(pydantic.BaseModel):
    """Per-pomset leaf bound; star is exact below it."""

    max_nodes: int = config.default_bound

    _validate_max_nodes = pydantic.validator("max_nodes", allow_reuse=True)(
        validatorFuncs.validate_bound
    )

    class Config:
        allow_mutation = False


class Budget(pydantic.BaseModel):
    max_language_size: int = config.max_language_size
    max_leaf_count: int = config.max_leaf_count
    max_iterations: int = config.max_iterations

    _validate_language_size = pydantic.validator(
        "max_language_size", allow_reuse=True
    )(validatorFuncs.validate_positive_budget)
    _validate_leaf_count = pydantic.validator("max_leaf_count", allow_reuse=True)(
        validatorFuncs.validate_positive_budget
    )
    _validate_iterations = pydantic.validator("max_iterations", allow_reuse=True)(
        validatorFuncs.validate_positive_budget
    )

    class Config:
        allow_mutation = False

    def with_leaf_count(self, max_leaf_count: int) -> "Budget":
        return Budget(**self.dict() | {"max_leaf_count": max(1, max_leaf_count)})
