import re
from typing import Any, Iterable


MAX_BOUND = 64
MAX_BUDGET = 10**9
IDENTIFIER_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
RESERVED_OBSERVATIONS = frozenset({"T", "F"})


def validate_between_values(
    value: int | float | None,
    min_value: int | float,
    max_value: int | float,
    value_name: str,
):
    """Inclusive min and max"""
    if value is not None and not (min_value <= value <= max_value):
        raise ValueError(f"{value_name} must be between {min_value} and {max_value}")
    else:
        return value


def validate_bound(value: int | None):
    return validate_between_values(value, 0, MAX_BOUND, "bound")


def validate_positive_budget(value: int | None):
    return validate_between_values(value, 1, MAX_BUDGET, "budget")


def validate_identifier(name: str | None, value_name: str = "name"):
    if name is not None and not IDENTIFIER_PATTERN.fullmatch(name):
        raise ValueError(f"{value_name} {name!r} is not an identifier")
    return name


def validate_observation_name(name: str | None):
    validate_identifier(name, "observation")
    if name in RESERVED_OBSERVATIONS:
        raise ValueError(f"observation {name!r} is reserved for a constant")
    return name


def validate_observation_names(names: Iterable[str] | None):
    if names:
        for name in names:
            validate_observation_name(name)
    return names


def validate_unique(values: tuple[Any, ...] | None, value_name: str):
    if values and len(set(values)) != len(values):
        raise ValueError(f"{value_name} contains duplicates")
    return values


def validate_omega(names: tuple[str, ...] | None):
    validate_observation_names(names)
    return validate_unique(names, "omega")


def validate_single_property_specified(
    values: dict[str, Any], property_names: tuple[str, ...] | None = None
):
    values_to_check = (
        values.values()
        if property_names is None
        else tuple(value for key, value in values.items() if key in property_names)
    )
    if sum(map(value_is_not_none, values_to_check)) <= 1:
        return values
    property_names_joined = (
        ", ".join(property_names) if property_names else ", ".join(values.keys())
    )
    error_message = f"{property_names_joined} are mutually exclusive"
    raise ValueError(error_message)


def value_is_not_none(value: Any):
    return value is not None
