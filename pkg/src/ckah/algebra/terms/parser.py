"""Term grammar, parser and printer.

Precedence, loosest first: `+`, `||`, `;` (or `.`), postfix `*`. Atoms are
`0`, `1`, identifiers (actions), quoted labels `"..."`, atom letters
`@{o1,o2}`, Boolean observations `{...}` and, in contexts only, the hole `*`.
Inside braces: `|`, `&`, prefix `!`, `T`, `F` and observation names.
"""
from arpeggio import EOF, NoMatch, ParserPython, PTNodeVisitor, StrMatch, ZeroOrMore
from arpeggio import RegExMatch as _
from arpeggio import visit_parse_tree

from ckah.algebra.observations import models as boolModels
from ckah.algebra.observations.models import BoolTerm
from ckah.algebra.pomsets import ATOM_LABEL, HOLE, render_label
from ckah.algebra.terms import (
    AND_LEVEL,
    ATOMIC_LEVEL,
    BOOL_ATOMIC_LEVEL,
    NOT_LEVEL,
    OR_LEVEL,
    PAR_LEVEL,
    PLUS_LEVEL,
    SEQ_LEVEL,
    STAR_LEVEL,
)
from ckah.algebra.terms.models import Act, Dot, Obs, One, Par, Plus, Star, Term, Zero
from ckah.core.exceptions import TermSyntaxError


# Grammar


def zero():
    return _(r"0(?![A-Za-z0-9_])")


def one():
    return _(r"1(?![A-Za-z0-9_])")


def action():
    return _(r"[A-Za-z_][A-Za-z0-9_]*")


def quoted_label():
    return _(r'"[^"\n]+"')


def atom_letter():
    return _(r"@\{[A-Za-z0-9_,]*\}")


def hole():
    return _(r"\*")


def star_op():
    return _(r"\*")


def bool_top():
    return _(r"T(?![A-Za-z0-9_])")


def bool_bottom():
    return _(r"F(?![A-Za-z0-9_])")


def bool_name():
    return _(r"(?![TF](?![A-Za-z0-9_]))[A-Za-z_][A-Za-z0-9_]*")


def bool_primary():
    return [bool_top, bool_bottom, bool_name, ("(", bool_or, ")")]


def bool_negation():
    return "!", bool_unary


def bool_unary():
    return [bool_negation, bool_primary]


def bool_and():
    return bool_unary, ZeroOrMore("&", bool_unary)


def bool_or():
    return bool_and, ZeroOrMore("|", bool_and)


def observation():
    return "{", bool_or, "}"


def primary():
    return [
        zero,
        one,
        atom_letter,
        quoted_label,
        action,
        observation,
        hole,
        ("(", plus_expr, ")"),
    ]


def star_expr():
    return primary, ZeroOrMore(star_op)


def seq_expr():
    return star_expr, ZeroOrMore([";", "."], star_expr)


def par_expr():
    return seq_expr, ZeroOrMore("||", seq_expr)


def plus_expr():
    return par_expr, ZeroOrMore("+", par_expr)


def term_root():
    return plus_expr, EOF


def bool_root():
    return bool_or, EOF


class _StarMarker:
    pass


STAR_MARKER = _StarMarker()


class TermVisitor(PTNodeVisitor):
    """Builds Term / BoolTerm values; operands are picked out of the children by type."""

    def __init__(self, text: str, allow_hole: bool = False, **kwargs):
        super().__init__(**kwargs)
        self.text = text
        self.allow_hole = allow_hole

    @staticmethod
    def _terms(children) -> list[Term]:
        return [child for child in children if isinstance(child, Term)]

    @staticmethod
    def _tests(children) -> list[BoolTerm]:
        return [child for child in children if isinstance(child, BoolTerm)]

    def visit_zero(self, node, children):
        return Zero()

    def visit_one(self, node, children):
        return One()

    def visit_action(self, node, children):
        return Act(node.value)

    def visit_quoted_label(self, node, children):
        label = node.value[1:-1]
        if label == HOLE or ATOM_LABEL.fullmatch(label):
            raise TermSyntaxError(
                f"{node.value} spells a reserved letter", self.text, node.position
            )
        return Act(label)

    def visit_atom_letter(self, node, children):
        return Act(node.value)

    def visit_hole(self, node, children):
        if not self.allow_hole:
            raise TermSyntaxError("the hole '*' only appears in contexts", self.text, node.position)
        return Act(HOLE)

    def visit_star_op(self, node, children):
        return STAR_MARKER

    def visit_bool_top(self, node, children):
        return boolModels.Top()

    def visit_bool_bottom(self, node, children):
        return boolModels.Bot()

    def visit_bool_name(self, node, children):
        return boolModels.Prim(node.value)

    def visit_bool_primary(self, node, children):
        return self._tests(children)[0]

    def visit_bool_negation(self, node, children):
        return boolModels.Not(self._tests(children)[0])

    def visit_bool_unary(self, node, children):
        return self._tests(children)[0]

    def visit_bool_and(self, node, children):
        tests = self._tests(children)
        result = tests[0]
        for test in tests[1:]:
            result = boolModels.And(result, test)
        return result

    def visit_bool_or(self, node, children):
        tests = self._tests(children)
        result = tests[0]
        for test in tests[1:]:
            result = boolModels.Or(result, test)
        return result

    def visit_observation(self, node, children):
        return Obs(self._tests(children)[0])

    def visit_primary(self, node, children):
        return self._terms(children)[0]

    def visit_star_expr(self, node, children):
        result = self._terms(children)[0]
        for _star in range(sum(1 for child in children if child is STAR_MARKER)):
            result = Star(result)
        return result

    def visit_seq_expr(self, node, children):
        return _fold_left(Dot, self._terms(children))

    def visit_par_expr(self, node, children):
        return _fold_left(Par, self._terms(children))

    def visit_plus_expr(self, node, children):
        return _fold_left(Plus, self._terms(children))

    def visit_term_root(self, node, children):
        return self._terms(children)[0]

    def visit_bool_root(self, node, children):
        return self._tests(children)[0]


def _fold_left(constructor, operands: list[Term]) -> Term:
    result = operands[0]
    for operand in operands[1:]:
        result = constructor(result, operand)
    return result


_PARSERS: dict[str, ParserPython] = {}


def _parser(root) -> ParserPython:
    if root.__name__ not in _PARSERS:
        _PARSERS[root.__name__] = ParserPython(root)
    return _PARSERS[root.__name__]


def _parse(root, text: str, allow_hole: bool = False):
    try:
        tree = _parser(root).parse(text)
    except NoMatch as exception:
        raise TermSyntaxError(
            _describe(exception, allow_hole), text, exception.position
        ) from exception
    return visit_parse_tree(tree, TermVisitor(text, allow_hole=allow_hole))


_TOKENS = {
    "zero": "'0'",
    "one": "'1'",
    "action": "an action",
    "quoted_label": "a quoted label",
    "atom_letter": "an atom letter",
    "hole": "'*'",
    "star_op": "'*'",
    "bool_top": "'T'",
    "bool_bottom": "'F'",
    "bool_name": "an observation",
    "EOF": "end of input",
}


def _describe(exception: NoMatch, allow_hole: bool = False) -> str:
    expected = set()
    for rule in getattr(exception, "rules", []):
        name = getattr(rule, "rule_name", "")
        if name == "hole" and not allow_hole:
            continue
        if name in _TOKENS:
            expected.add(_TOKENS[name])
        elif isinstance(rule, StrMatch):
            expected.add(f"'{rule.to_match}'")
    return f"syntax error, expected {' or '.join(sorted(expected))}" if expected else "syntax error"


def parse_term(text: str) -> Term:
    return _parse(term_root, text)


def parse_context_term(text: str) -> Term:
    """Parse a term that may contain the hole `*`."""
    return _parse(term_root, text, allow_hole=True)


def parse_bool(text: str) -> BoolTerm:
    return _parse(bool_root, text)


# Printer


_SEPARATORS = {Plus: " + ", Par: " || ", Dot: ";"}
_LEVELS = {Plus: PLUS_LEVEL, Par: PAR_LEVEL, Dot: SEQ_LEVEL}


def term_level(e: Term) -> int:
    match e:
        case Plus() | Par() | Dot():
            return _LEVELS[type(e)]
        case Star():
            return STAR_LEVEL
    return ATOMIC_LEVEL


def render_term(e: Term) -> str:
    """Spell a term so that parse_term gives it back unchanged."""
    match e:
        case Zero():
            return "0"
        case One():
            return "1"
        case Act(label=label):
            return render_label(label)
        case Obs(test=test):
            return "{" + render_bool(test) + "}"
        case Star(inner=inner):
            return _wrap(render_term(inner), term_level(inner) < STAR_LEVEL) + "*"
        case Plus(left=left, right=right) | Par(left=left, right=right) | Dot(
            left=left, right=right
        ):
            level = _LEVELS[type(e)]
            return (
                _wrap(render_term(left), term_level(left) < level)
                + _SEPARATORS[type(e)]
                + _wrap(render_term(right), term_level(right) <= level)
            )
    raise TypeError(f"not a term: {e!r}")


def bool_level(p: BoolTerm) -> int:
    match p:
        case boolModels.Or():
            return OR_LEVEL
        case boolModels.And():
            return AND_LEVEL
        case boolModels.Not():
            return NOT_LEVEL
    return BOOL_ATOMIC_LEVEL


def render_bool(p: BoolTerm) -> str:
    match p:
        case boolModels.Bot():
            return "F"
        case boolModels.Top():
            return "T"
        case boolModels.Prim(name=name):
            return name
        case boolModels.Not(inner=inner):
            return "!" + _wrap(render_bool(inner), bool_level(inner) < NOT_LEVEL)
        case boolModels.Or(left=left, right=right) | boolModels.And(
            left=left, right=right
        ):
            level = bool_level(p)
            separator = " | " if level == OR_LEVEL else " & "
            return (
                _wrap(render_bool(left), bool_level(left) < level)
                + separator
                + _wrap(render_bool(right), bool_level(right) <= level)
            )
    raise TypeError(f"not a Boolean term: {p!r}")


def _wrap(text: str, needed: bool) -> str:
    return f"({text})" if needed else text

