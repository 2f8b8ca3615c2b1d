"""Group terms over letters: `u` is the unit, `.` composes, prefix `-` inverts.

A CKA term whose letters spell group terms reduces letterwise to the free
group normal form, e.g. "a.-a" || "b.c.-c" becomes u || b.
"""
from arpeggio import EOF, NoMatch, ParserPython, PTNodeVisitor, ZeroOrMore
from arpeggio import RegExMatch as _
from arpeggio import visit_parse_tree

from ckah.algebra.observations import is_atom_label
from ckah.algebra.terms import syntax as termSyntax
from ckah.algebra.terms.models import Act, Term
from ckah.core.exceptions import TermSyntaxError


UNIT = "u"

# (letter, inverted)
GroupLetter = tuple[str, bool]
GroupWord = tuple[GroupLetter, ...]


def group_unit():
    return _(r"u(?![A-Za-z0-9_])")


def group_letter():
    return _(r"[A-Za-z_][A-Za-z0-9_]*")


def group_inverse():
    return "-", group_factor


def group_factor():
    return [group_unit, group_letter, group_inverse, ("(", group_product, ")")]


def group_product():
    return group_factor, ZeroOrMore(".", group_factor)


def group_root():
    return group_product, EOF


class GroupVisitor(PTNodeVisitor):
    """Every node becomes the word it spells, unreduced."""

    @staticmethod
    def _words(children) -> list[GroupWord]:
        return [child for child in children if isinstance(child, tuple)]

    def visit_group_unit(self, node, children):
        return ()

    def visit_group_letter(self, node, children):
        return ((node.value, False),)

    def visit_group_inverse(self, node, children):
        (word,) = self._words(children)
        return invert(word)

    def visit_group_factor(self, node, children):
        return self._words(children)[0]

    def visit_group_product(self, node, children):
        return tuple(letter for word in self._words(children) for letter in word)

    def visit_group_root(self, node, children):
        return self._words(children)[0]


_PARSER: ParserPython | None = None


def parse_group_term(text: str) -> GroupWord:
    global _PARSER
    if _PARSER is None:
        _PARSER = ParserPython(group_root)
    try:
        tree = _PARSER.parse(text)
    except NoMatch as exception:
        raise TermSyntaxError("not a group term", text, exception.position) from exception
    return visit_parse_tree(tree, GroupVisitor())


def invert(word: GroupWord) -> GroupWord:
    return tuple((letter, not inverted) for letter, inverted in reversed(word))


def group_reduce(word: GroupWord) -> GroupWord:
    """Free group normal form: cancel adjacent x.-x and -x.x until none is left."""
    stack: list[GroupLetter] = []
    for letter, inverted in word:
        if stack and stack[-1] == (letter, not inverted):
            stack.pop()
        else:
            stack.append((letter, inverted))
    return tuple(stack)


def render_group_term(word: GroupWord) -> str:
    if not word:
        return UNIT
    return ".".join(f"-{letter}" if inverted else letter for letter, inverted in word)


def reduce_group_text(text: str) -> str:
    return render_group_term(group_reduce(parse_group_term(text)))


def reify_group_letters(e: Term) -> Term:
    """Replace every letter that spells a group term by its normal form."""

    def image(leaf: Term) -> Term:
        if not isinstance(leaf, Act) or is_atom_label(leaf.label):
            return leaf
        try:
            return Act(reduce_group_text(leaf.label))
        except TermSyntaxError:
            return leaf

    return termSyntax.map_leaves(e, image)
