"""Hypothesis files: one `lhs <= rhs` or `lhs == rhs` per line, `#` starts a comment."""
import logging
from pathlib import Path

from arpeggio import EOF, NoMatch, ParserPython
from arpeggio import RegExMatch as _
from arpeggio import visit_parse_tree
from pydantic import ValidationError

from ckah.algebra.closure.models import Hypothesis, HypothesisSet
from ckah.algebra.terms import parser as termParser
from ckah.core.exceptions import HypothesisFileError, TermSyntaxError


logger = logging.getLogger(__name__)

LEQ = "<="
EQ = "=="


def relation():
    return _(r"<=|==")


def comment():
    return _(r"#.*")


def hypothesis_line():
    return termParser.plus_expr, relation, termParser.plus_expr, EOF


class HypothesisVisitor(termParser.TermVisitor):
    def visit_relation(self, node, children):
        return node.value

    def visit_hypothesis_line(self, node, children):
        lhs, rhs = self._terms(children)
        kind = next(child for child in children if child in (LEQ, EQ))
        return lhs, kind, rhs


_PARSER: ParserPython | None = None


def _parser() -> ParserPython:
    global _PARSER
    if _PARSER is None:
        _PARSER = ParserPython(hypothesis_line, comment)
    return _PARSER


def parse_hypotheses(
    text: str, source: str = "<string>", name: str | None = None
) -> HypothesisSet:
    hypotheses: list[Hypothesis] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.split("#", 1)[0].strip():
            continue
        try:
            tree = _parser().parse(line)
            lhs, kind, rhs = visit_parse_tree(tree, HypothesisVisitor(line))
            where = f"{source}:{line_number}"
            hypotheses.append(Hypothesis(lhs=lhs, rhs=rhs, source=where))
            if kind == EQ:
                hypotheses.append(Hypothesis(lhs=rhs, rhs=lhs, source=where))
        except NoMatch as exception:
            raise HypothesisFileError(
                f"syntax error at column {exception.position + 1}, expected `lhs <= rhs`",
                source,
                line_number,
            ) from exception
        except TermSyntaxError as exception:
            raise HypothesisFileError(exception.detail, source, line_number) from exception
        except ValidationError as exception:
            message = "; ".join(error["msg"] for error in exception.errors())
            raise HypothesisFileError(message, source, line_number) from exception

    logger.info("read %d hypotheses from %s", len(hypotheses), source)
    return HypothesisSet(hypotheses=tuple(hypotheses), name=name)


def load_hypothesis_file(path: str | Path) -> HypothesisSet:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exception:
        raise HypothesisFileError(f"cannot read file: {exception.strerror}", str(path), 0)
    return parse_hypotheses(text, source=str(path), name=path.stem)
