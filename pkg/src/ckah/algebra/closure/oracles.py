"""Round-robin closure over brute-force contexts, compared against the worklist engine."""
from ckah.algebra.closure.models import HypothesisSet
from ckah.algebra.contexts import funcs as contextFuncs
from ckah.algebra.contexts import oracles as contextOracles
from ckah.algebra.pomsets.models import PomsetLanguage, SpPomset


def close_naive(
    language: PomsetLanguage, hypotheses: HypothesisSet, max_leaves: int
) -> PomsetLanguage:
    members: set[SpPomset] = {u for u in language if u.size <= max_leaves}
    changed = True
    while changed:
        changed = False
        snapshot = frozenset(members)
        for w in sorted(snapshot):
            for hypothesis in hypotheses:
                premises = hypothesis.rhs_language
                for v in premises:
                    for c in contextOracles.oracle_occurrences(w, v):
                        if not all(contextFuncs.plug(c, other) in snapshot for other in premises):
                            continue
                        for u in hypothesis.lhs_language:
                            plugged = contextFuncs.plug(c, u)
                            if plugged.size <= max_leaves and plugged not in members:
                                members.add(plugged)
                                changed = True
    return frozenset(members)
