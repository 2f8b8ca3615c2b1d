import re


ATOM_LABEL_PATTERN = re.compile(r"@\{([A-Za-z0-9_,]*)\}")


def atom_label(atom: frozenset[str]) -> str:
    """Letter standing for an atom: the true observations, sorted, as `@{o1,o3}`."""
    return "@{" + ",".join(sorted(atom)) + "}"


def parse_atom_label(label: str) -> frozenset[str] | None:
    match = ATOM_LABEL_PATTERN.fullmatch(label)
    if match is None:
        return None
    body = match.group(1)
    return frozenset(body.split(",")) if body else frozenset()


def is_atom_label(label: str) -> bool:
    return ATOM_LABEL_PATTERN.fullmatch(label) is not None
