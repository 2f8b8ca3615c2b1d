import re


HOLE = "*"
EMPTY_KEY = "1"
SEQ_SEPARATOR = ";"
PAR_SEPARATOR = "||"

IDENTIFIER_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
ATOM_LABEL = re.compile(r"@\{[A-Za-z0-9_,]*\}")


def render_label(label: str) -> str:
    """Spell a label in the term grammar, quoting anything that is not a bare token."""
    if label == HOLE or IDENTIFIER_LABEL.fullmatch(label) or ATOM_LABEL.fullmatch(label):
        return label
    return '"' + label + '"'
