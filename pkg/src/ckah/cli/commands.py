import logging
from pathlib import Path
from typing import Sequence, TextIO

from ckah.algebra.closure import CONTRACTION_PACK, OBS_PACK
from ckah.algebra.closure import decision
from ckah.algebra.closure import funcs as closureFuncs
from ckah.algebra.closure import oracles as closureOracles
from ckah.algebra.closure import packs as closurePacks
from ckah.algebra.closure.hypothesisFile import load_hypothesis_file
from ckah.algebra.closure.models import HypothesisSet, Verdict, VerdictKind
from ckah.algebra.observations import funcs as obsFuncs
from ckah.algebra.observations import reification
from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets import oracles as pomsetOracles
from ckah.algebra.terms import parser as termParser
from ckah.algebra.terms import semantics as termSemantics
from ckah.algebra.terms import syntax as termSyntax
from ckah.algebra.terms.models import Term
from ckah.cli import EXIT_DIFFERENT, EXIT_EQUIVALENT, EXIT_INCONCLUSIVE, EXIT_OK
from ckah.cli import dotExport
from ckah.cli.models import CheckRequest, ClosureRequest, HypothesisChoice
from ckah.core.config import config
from ckah.models.baseModels import Budget


logger = logging.getLogger(__name__)

EXIT_CODES = {
    VerdictKind.EQUIVALENT: EXIT_EQUIVALENT,
    VerdictKind.EQUIVALENT_UP_TO: EXIT_EQUIVALENT,
    VerdictKind.DIFFERENT: EXIT_DIFFERENT,
    VerdictKind.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def resolve_hypotheses(
    choice: HypothesisChoice, terms: Sequence[Term], omega: Sequence[str] | None
) -> tuple[HypothesisSet, tuple[str, ...], list[Term]]:
    """The hypothesis set, the observation alphabet and the terms with tests reified."""
    needs_omega = choice.pack in (OBS_PACK, CONTRACTION_PACK) or any(
        termSyntax.contains_obs(e) for e in terms
    )
    names = obsFuncs.resolve_omega(terms, omega) if needs_omega else ()

    if choice.hyp_file is not None:
        hypotheses = load_hypothesis_file(choice.hyp_file)
    elif choice.pack == OBS_PACK:
        hypotheses = obsFuncs.obs_pack(names)
    elif choice.pack == CONTRACTION_PACK:
        hypotheses = obsFuncs.contraction_atoms_pack(names)
    else:
        hypotheses = closurePacks.builtin_pack(choice.pack)

    prepared = [obsFuncs.reify(e, names) if termSyntax.contains_obs(e) else e for e in terms]
    logger.info("hypotheses %s, omega {%s}", hypotheses.describe(), ", ".join(names))
    return hypotheses, names, prepared


def _header(
    out: TextIO, command: str, bound: int, hypotheses: HypothesisSet, names: Sequence[str]
):
    budget = Budget()
    print(f"# {config.project_name} {config.version} {command}", file=out)
    print(
        f"# bound {bound}, hypotheses {hypotheses.describe()}, omega {{{', '.join(names)}}}",
        file=out,
    )
    print(
        f"# budget: {budget.max_language_size} pomsets, "
        f"{budget.max_leaf_count} leaves, {budget.max_iterations} iterations",
        file=out,
    )


def _yes_no(value: bool | None) -> str:
    return "unknown" if value is None else str(value).lower()


def cmd_check(request: CheckRequest, out: TextIO) -> int:
    left = termParser.parse_term(request.left)
    right = termParser.parse_term(request.right)
    hypotheses, names, (prepared_left, prepared_right) = resolve_hypotheses(
        request, (left, right), request.omega
    )

    _header(out, "check", request.bound, hypotheses, names)
    print(f"# left:  {termParser.render_term(left)}", file=out)
    print(f"# right: {termParser.render_term(right)}", file=out)

    verdict = decision.decide_terms(prepared_left, prepared_right, hypotheses, request.bound)
    _print_verdict(out, verdict)

    if request.cross_check:
        prepared = (prepared_left, prepared_right)
        for line in cross_check(request, (left, right), prepared, hypotheses, names, verdict):
            print(line, file=out)

    if verdict.witness is not None:
        if request.witness:
            out.write(dotExport.to_dot(verdict.witness, "witness"))
        if request.dot is not None:
            path = dotExport.export_dot(verdict.witness, Path(request.dot) / "witness.dot")
            print(f"# wrote {path}", file=out)
    return EXIT_CODES[verdict.kind]


def _print_verdict(out: TextIO, verdict: Verdict):
    print(verdict.headline(), file=out)
    if verdict.kind is VerdictKind.INCONCLUSIVE:
        print(f"reason: {verdict.reason}", file=out)
        return
    if verdict.witness is not None:
        side = "left" if verdict.witness_in_left else "right"
        print(f"witness: {verdict.witness} (only in the {side} closure)", file=out)
    print(f"left <= right: {_yes_no(verdict.leq)}", file=out)
    print(f"right <= left: {_yes_no(verdict.geq)}", file=out)
    if not verdict.definitive:
        print(f"provisional: {verdict.reason}", file=out)


def cross_check(
    request: CheckRequest,
    terms: tuple[Term, Term],
    prepared: tuple[Term, Term],
    hypotheses: HypothesisSet,
    names: Sequence[str],
    verdict: Verdict,
) -> list[str]:
    """Recompute the answer with the brute-force oracles and report agreement."""
    lines = []
    if request.pack == OBS_PACK and request.hyp_file is None:
        raw = reification.decide_raw(*terms, names, request.bound)
        agrees = (raw.kind is VerdictKind.DIFFERENT) == (
            verdict.kind is VerdictKind.DIFFERENT
        )
        lines.append(
            f"cross-check raw observation laws: {'agrees' if agrees else 'DISAGREES'}"
            f" ({raw.headline()})"
        )
        return lines

    for side, term in zip(("left", "right"), prepared):
        closed = decision.close_term(term, hypotheses, request.bound)
        if hypotheses.includes_exch and not hypotheses.hypotheses:
            evaluated = termSemantics.semantics_bounded(term, request.bound)
            oracle = frozenset().union(
                *(pomsetOracles.rewriting_downward_closure(u) for u in evaluated)
            )
            method = "exch rewriting"
        elif hypotheses.includes_exch:
            lines.append(f"cross-check {side}: no oracle for exch with other hypotheses")
            continue
        else:
            evaluated = termSemantics.semantics_bounded(term, closed.evaluated_at)
            oracle = pomsetFuncs.lang_size_filter(
                closureOracles.close_naive(evaluated, hypotheses, closed.evaluated_at),
                request.bound,
            )
            method = "round-robin closure"
        witness = closureFuncs.language_witness(closed.language, oracle)
        lines.append(
            f"cross-check {side} {method}: "
            + ("agrees" if witness is None else f"DISAGREES on {witness}")
        )
    return lines


def cmd_closure(request: ClosureRequest, out: TextIO) -> int:
    term = termParser.parse_term(request.term)
    hypotheses, names, (prepared,) = resolve_hypotheses(request, (term,), request.omega)

    _header(out, "closure", request.bound, hypotheses, names)
    print(f"# term: {termParser.render_term(term)}", file=out)

    closed = decision.close_term(prepared, hypotheses, request.bound)
    for u in pomsetFuncs.sorted_language(closed.language):
        print(u, file=out)

    if request.dot is not None:
        paths = dotExport.export_language(closed.language, request.dot)
        print(f"# wrote {len(paths)} files to {request.dot}", file=out)
    if not closed.result.complete:
        print(f"# truncated: {closed.result.reason}", file=out)
        return EXIT_INCONCLUSIVE
    return EXIT_OK
