"""
Verification suites over the corpus.

Each suite turns corpus entries into ``CheckReport`` records. A check that
runs into a configured cap is reported as skipped; any other library error
raised inside a check becomes a failing report that carries the message.
Reports always come out in corpus order, also when checks run on a thread
pool.
"""

from __future__ import annotations

import contextvars
import logging
import math
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Any

import numpy as np
from sympy import primefactors

from .cdim import (
    cdim,
    centralizer_lattice,
    check_dkr_bound,
    check_finext_bound,
    longest_chain_bruteforce,
    verify_witnesses,
)
from .config import active_caps
from .corpus import CorpusEntry, corpus_default
from .exceptions import CapExceededError, CentraError
from .layer import (
    check_generalized_fitting,
    check_indaut_lemma,
    components,
    generalized_fitting,
    layer,
    subnormal_quasisimple_bruteforce,
)
from .permcore import GroupHandle, SubgroupRef, conjugacy_class_reps, quotient_or_self
from .report import CheckReport, Status, SuiteResult, verdict
from .simplerec import check_factor_count, identify_simple, lambda_invariant
from .subgrp import (
    center,
    centralizer,
    centralizer_by_backtrack,
    centralizer_by_filter,
    derived_length,
    derived_subgroup,
    fitting,
    minimal_normal_subgroups,
    p_soluble_radical,
    socle,
    soluble_radical,
    sylow,
    upper_fitting_series,
)

logger = logging.getLogger(__name__)

Outcome = CheckReport | list[CheckReport]


class Task:
    """One deferred check on one group."""

    __slots__ = ("check_name", "group_name", "run")

    def __init__(self, check_name: str, group_name: str, run: Callable[[], Outcome]) -> None:
        self.check_name = check_name
        self.group_name = group_name
        self.run = run


def run_task(task: Task) -> list[CheckReport]:
    """Run a task, turning cap overruns into skips and library errors into fails."""
    try:
        outcome = task.run()
    except CapExceededError as exc:
        logger.warning("Skipped %s on %s: %s", task.check_name, task.group_name, exc)
        return [CheckReport.skipped(task.check_name, task.group_name, str(exc))]
    except CentraError as exc:
        logger.warning("Failed %s on %s: %s", task.check_name, task.group_name, exc)
        return [
            CheckReport(
                task.check_name,
                task.group_name,
                computed={"error": type(exc).__name__},
                status=Status.FAIL,
                reason=str(exc),
            )
        ]
    reports = outcome if isinstance(outcome, list) else [outcome]
    for report in reports:
        if report.failed:
            logger.warning(
                "Failed %s on %s: %s", report.check_name, report.group_name, report.reason
            )
    return reports


def run_tasks(tasks: Sequence[Task], jobs: int = 1) -> list[CheckReport]:
    """Run tasks, possibly concurrently, keeping their declared order."""
    if jobs <= 1 or len(tasks) <= 1:
        batches = [run_task(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(contextvars.copy_context().run, run_task, t) for t in tasks
            ]
            batches = [f.result() for f in futures]
    return [report for batch in batches for report in batch]


def _entries(corpus: Sequence[CorpusEntry] | None) -> list[CorpusEntry]:
    return list(corpus) if corpus is not None else corpus_default()


def _lookup(corpus: Sequence[CorpusEntry], names: Iterable[str]) -> list[CorpusEntry]:
    by_name = {e.name: e for e in corpus}
    return [by_name[n] for n in names if n in by_name]


# -- cdim-bounds -------------------------------------------------------------

GL_BOUND_GROUPS = {"GL(2,2)": 2, "GL(2,3)": 2, "GL(3,2)": 3}
ALT_BOUND_GROUPS = {f"A{n}": n for n in range(3, 8)}
PSL_GROUPS = [f"PSL(2,{q})" for q in (4, 5, 7, 8, 9, 11, 13)]
PSL_BOUND = 10


def _bound_check(entry: CorpusEntry, n: int, bound: int, check_name: str) -> CheckReport:
    result = cdim(entry.group)
    computed: dict[str, Any] = {
        "cdim_terms": result.value_terms,
        "cdim_steps": result.value_steps,
        "bound_value": bound,
        "lattice_size": result.lattice_size,
    }
    ok = result.value_terms <= bound
    lattice = centralizer_lattice(entry.group)
    if len(lattice) <= active_caps().dfs_oracle_nodes:
        dfs = longest_chain_bruteforce(lattice)
        computed["dfs_terms"] = dfs
        ok = ok and dfs == result.value_terms
    return CheckReport(
        check_name,
        entry.name,
        inputs={"n": n, "order": entry.group.order()},
        computed=computed,
        status=verdict(ok),
        reason=None if ok else "c-dimension above the bound or disagreeing with DFS",
        margin=bound - result.value_terms,
    )


def suite_cdim_bounds(corpus: Sequence[CorpusEntry] | None = None, jobs: int = 1) -> SuiteResult:
    """cdim_terms <= n^2 + 1 for GL(n, q) and A_n; cdim_terms(PSL(2, q)) <= 10."""
    entries = _entries(corpus)
    tasks = []
    for entry in _lookup(entries, GL_BOUND_GROUPS):
        n = GL_BOUND_GROUPS[entry.name]
        tasks.append(
            Task("cdim-gl", entry.name, lambda e=entry, n=n: _bound_check(e, n, n * n + 1, "cdim-gl"))
        )
    for entry in _lookup(entries, ALT_BOUND_GROUPS):
        n = ALT_BOUND_GROUPS[entry.name]
        tasks.append(
            Task("cdim-alt", entry.name, lambda e=entry, n=n: _bound_check(e, n, n * n + 1, "cdim-alt"))
        )
    for entry in _lookup(entries, PSL_GROUPS):
        tasks.append(
            Task("cdim-psl2", entry.name, lambda e=entry: _bound_check(e, 2, PSL_BOUND, "cdim-psl2"))
        )
    return SuiteResult("cdim-bounds", run_tasks(tasks, jobs))


# -- structure ---------------------------------------------------------------


def _socle_factor_names(Gbar: GroupHandle) -> tuple[list[str], int, bool]:
    """Names and total lambda of the simple factors of the socle's pieces.

    The flag is False when some minimal normal subgroup is abelian or is not
    the product of its own minimal normal subgroups.
    """
    names: list[str] = []
    total_lambda = 0
    ok = True
    for M in minimal_normal_subgroups(Gbar):
        M_group = M.as_group()
        if M_group.is_abelian():
            ok = False
            continue
        factors = minimal_normal_subgroups(M_group)
        if math.prod(S.order() for S in factors) != M.order():
            ok = False
        for S in factors:
            ident = identify_simple(S.as_group())
            names.append(ident.name)
            total_lambda += ident.lambda_value
    return names, total_lambda, ok


def _structure_check(entry: CorpusEntry) -> CheckReport:
    G = entry.group
    R = soluble_radical(G)
    Gbar, _ = quotient_or_self(G, R)
    if Gbar.order() == 1:
        return CheckReport.skipped(
            "soluble-radical-quotient", entry.name, "trivial quotient", {"order": G.order()}
        )
    H = socle(Gbar)
    C = centralizer(Gbar, H.generators)
    names, lam, factors_ok = _socle_factor_names(Gbar)
    Fstar = generalized_fitting(Gbar)
    fstar_ok = centralizer(Gbar, Fstar.generators).is_subgroup_of(Fstar)
    top, _ = quotient_or_self(Gbar, H)
    ok = C.order() == 1 and factors_ok and fstar_ok
    return CheckReport(
        "soluble-radical-quotient",
        entry.name,
        inputs={"order": G.order(), "radical_order": R.order()},
        computed={
            "quotient_order": Gbar.order(),
            "socle_order": H.order(),
            "socle_centralizer_order": C.order(),
            "socle_factors": names,
            "socle_lambda": lam,
            "cdim_steps": cdim(G).value_steps,
            "fstar_self_centralizing": fstar_ok,
            "top_order": top.order(),
            "top_abelian": top.is_abelian(),
            "socle_nonabelian_factors": len(names),
        },
        status=verdict(ok),
        reason=None if ok else "socle of G/R(G) is not a self-centralizing product of simple groups",
    )


def suite_structure(corpus: Sequence[CorpusEntry] | None = None, jobs: int = 1) -> SuiteResult:
    """C(Soc(G/R)) = 1, Soc(G/R) a product of nonabelian simples, C_G(F*) <= F*."""
    tasks = []
    for entry in _entries(corpus):
        tasks.append(Task("soluble-radical-quotient", entry.name, lambda e=entry: _structure_check(e)))
        tasks.append(
            Task(
                "generalized-fitting",
                entry.name,
                lambda e=entry: check_generalized_fitting(e.group, e.name),
            )
        )
    return SuiteResult("structure", run_tasks(tasks, jobs))


# -- radical-relations -------------------------------------------------------


def _radical_intersection(entry: CorpusEntry) -> CheckReport:
    G = entry.group
    R = soluble_radical(G)
    primes = [int(p) for p in primefactors(G.order())]
    mask = np.ones(G.table().size, dtype=bool)
    orders = {}
    for p in primes:
        S_p = p_soluble_radical(G, p)
        orders[str(p)] = S_p.order()
        mask &= S_p.mask()
    meet = SubgroupRef.from_mask(G, mask)
    ok = meet == R
    return CheckReport(
        "radical-intersection",
        entry.name,
        inputs={"order": G.order(), "primes": primes},
        computed={
            "radical_order": R.order(),
            "intersection_order": meet.order(),
            "p_soluble_radical_orders": orders,
        },
        status=verdict(ok),
        reason=None if ok else "intersection of p-soluble radicals differs from R(G)",
    )


def _indaut_checks(entry: CorpusEntry) -> list[CheckReport]:
    return [
        check_indaut_lemma(entry.group, Q, entry.name)
        for Q in components(entry.group).components
    ]


def suite_radical_relations(
    corpus: Sequence[CorpusEntry] | None = None, jobs: int = 1
) -> SuiteResult:
    """Intersection of S_p(G) is R(G), factor count < 5k, Aut_G(Q) = Aut_Gbar(Qbar)."""
    tasks = []
    for entry in _entries(corpus):
        tasks.append(Task("radical-intersection", entry.name, lambda e=entry: _radical_intersection(e)))
        tasks.append(
            Task("factor-count", entry.name, lambda e=entry: check_factor_count(e.group, e.name))
        )
        tasks.append(Task("indaut-lemma", entry.name, lambda e=entry: _indaut_checks(e)))
    return SuiteResult("radical-relations", run_tasks(tasks, jobs))


# -- khukhro -----------------------------------------------------------------


def _subgroups_of(E: SubgroupRef) -> list[SubgroupRef]:
    """Every subgroup of a small group, as joins of cyclic subgroups."""
    G = E.ambient
    table = G.table()
    cyclic = {}
    for x in E.indices():
        C = SubgroupRef.from_mask(G, table.closure([int(x)]))
        cyclic.setdefault(np.packbits(C.mask()).tobytes(), C)
    trivial = SubgroupRef.trivial(G)
    found = {np.packbits(trivial.mask()).tobytes(): trivial}
    frontier = [trivial]
    while frontier:
        fresh = []
        for K in frontier:
            for C in cyclic.values():
                gens = [table.index_of(g) for g in (*K.generators, *C.generators)]
                J = SubgroupRef.from_mask(G, table.closure(gens))
                key = np.packbits(J.mask()).tobytes()
                if key not in found:
                    found[key] = J
                    fresh.append(J)
        frontier = fresh
    return sorted(found.values(), key=lambda K: (K.order(), np.packbits(K.mask()).tobytes()))


def find_centralizer_series(
    G: GroupHandle, Q: SubgroupRef, E: SubgroupRef, p: int
) -> list[SubgroupRef] | None:
    """E = E_0 > E_1 > ... > E_n = 1 with C_Q(E_0) < C_Q(E_1) < ... < C_Q(E_n).

    Each step has index p. Returns None when no such series exists.
    """
    subgroups = _subgroups_of(E)

    def fixed_order(K: SubgroupRef) -> int:
        return centralizer(G, K.generators).intersection(Q).order()

    def extend(chain: list[SubgroupRef]) -> list[SubgroupRef] | None:
        top = chain[-1]
        if top.order() == 1:
            return chain
        here = fixed_order(top)
        for K in subgroups:
            if K.order() * p != top.order() or not K.is_subgroup_of(top):
                continue
            if fixed_order(K) <= here:
                continue
            found = extend([*chain, K])
            if found is not None:
                return found
        return None

    return extend([E])


def _khukhro_check(entry: CorpusEntry) -> CheckReport:
    action = entry.affine
    assert action is not None
    G, Q, E = action.group, action.Q, action.E
    kernel = E.intersection(centralizer(G, Q.generators))
    inputs = {"p": action.p, "n": action.n, "Q_order": Q.order(), "E_order": E.order()}
    if kernel.order() > 1:
        return CheckReport(
            "khukhro-series",
            entry.name,
            inputs=inputs,
            computed={"kernel_order": kernel.order()},
            status=Status.FAIL,
            reason="action is not faithful",
        )
    series = find_centralizer_series(G, Q, E, action.p) if action.n else [E]
    ok = series is not None and len(series) == action.n + 1
    computed: dict[str, Any] = {"found": ok}
    if series is not None:
        computed["series_orders"] = [K.order() for K in series]
        computed["fixed_point_orders"] = [
            centralizer(G, K.generators).intersection(Q).order() for K in series
        ]
    return CheckReport(
        "khukhro-series",
        entry.name,
        inputs=inputs,
        computed=computed,
        status=verdict(ok),
        reason=None if ok else "no strictly increasing centralizer series",
    )


def suite_khukhro(corpus: Sequence[CorpusEntry] | None = None, jobs: int = 1) -> SuiteResult:
    """Centralizer series for faithful elementary abelian actions."""
    tasks = [
        Task("khukhro-series", e.name, lambda e=e: _khukhro_check(e))
        for e in _entries(corpus)
        if e.affine is not None
    ]
    return SuiteResult("khukhro", run_tasks(tasks, jobs))


# -- finext ------------------------------------------------------------------

# Named normal subgroups N of corpus groups, as functions of G.
FINEXT_PAIRS: list[tuple[str, str, Callable[[GroupHandle], SubgroupRef]]] = [
    ("S4", "V4", fitting),
    ("S4", "A4", derived_subgroup),
    ("S5", "A5", derived_subgroup),
    ("SL(2,5)", "Z", center),
    ("A5xC6", "1xC6", center),
]

# Subgroups H of index at most 6.
DKR_PAIRS: list[tuple[str, str, Callable[[GroupHandle], SubgroupRef]]] = [
    ("S4", "A4", derived_subgroup),
    ("S5", "A5", derived_subgroup),
    ("S6", "A6", derived_subgroup),
    ("A4", "V4", fitting),
    ("S4", "D8", lambda G: sylow(G, 2)),
    ("D12", "C3", derived_subgroup),
    ("A5xC6", "A5x1", derived_subgroup),
]


def suite_finext(corpus: Sequence[CorpusEntry] | None = None, jobs: int = 1) -> SuiteResult:
    """Finite-extension bound on declared pairs and on (G, 1), (G, G); DKR bound."""
    entries = _entries(corpus)
    by_name = {e.name: e for e in entries}
    tasks = []
    for g_name, n_name, make in FINEXT_PAIRS:
        if g_name in by_name:
            e = by_name[g_name]
            tasks.append(
                Task(
                    "finext-bound",
                    e.name,
                    lambda e=e, make=make, n_name=n_name: _labelled(
                        check_finext_bound(e.group, make(e.group), e.name), n_name
                    ),
                )
            )
    for e in entries:
        tasks.append(
            Task(
                "finext-bound",
                e.name,
                lambda e=e: _labelled(
                    check_finext_bound(e.group, SubgroupRef.trivial(e.group), e.name), "1"
                ),
            )
        )
        tasks.append(
            Task(
                "finext-bound",
                e.name,
                lambda e=e: _labelled(
                    check_finext_bound(e.group, SubgroupRef.whole(e.group), e.name), "G"
                ),
            )
        )
    for g_name, h_name, make in DKR_PAIRS:
        if g_name in by_name:
            e = by_name[g_name]
            tasks.append(
                Task(
                    "dkr-bound",
                    e.name,
                    lambda e=e, make=make, h_name=h_name: _labelled(
                        check_dkr_bound(e.group, make(e.group), e.name), h_name
                    ),
                )
            )
    for e in entries:
        tasks.append(
            Task(
                "dkr-bound",
                e.name,
                lambda e=e: _labelled(check_dkr_bound(e.group, SubgroupRef.whole(e.group), e.name), "G"),
            )
        )
    return SuiteResult("finext", run_tasks(tasks, jobs))


def _labelled(report: CheckReport, subgroup: str) -> CheckReport:
    report.inputs["subgroup"] = subgroup
    return report


# -- theorem2-data -----------------------------------------------------------


def _quotient_pair(entry: CorpusEntry) -> CheckReport:
    G = entry.group
    R = soluble_radical(G)
    Gbar, _ = quotient_or_self(G, R)
    c = cdim(G).value_steps
    c_bar = cdim(Gbar).value_steps
    ok = c_bar == c if R.order() == 1 else True
    return CheckReport(
        "radical-quotient-cdim",
        entry.name,
        inputs={"order": G.order(), "radical_order": R.order()},
        computed={"cdim_steps": c, "quotient_cdim_steps": c_bar, "quotient_order": Gbar.order()},
        status=verdict(ok),
        reason=None if ok else "c-dimension changed under a trivial radical quotient",
    )


def suite_theorem2_data(corpus: Sequence[CorpusEntry] | None = None, jobs: int = 1) -> SuiteResult:
    """Pairs (cdim_steps(G), cdim_steps(G/R(G))); equal when R(G) = 1."""
    tasks = [
        Task("radical-quotient-cdim", e.name, lambda e=e: _quotient_pair(e))
        for e in _entries(corpus)
    ]
    return SuiteResult("theorem2-data", run_tasks(tasks, jobs))


# -- witnesses ---------------------------------------------------------------


def _witness_check(entry: CorpusEntry) -> CheckReport:
    result = cdim(entry.group)
    ok = verify_witnesses(entry.group, result)
    return CheckReport(
        "witness-extraction",
        entry.name,
        inputs={"order": entry.group.order()},
        computed={
            "cdim_terms": result.value_terms,
            "witness_count": len(result.witnesses),
            "chain_orders": [H.order() for H in result.chain],
        },
        status=verdict(ok),
        reason=None if ok else "witnessing subgroup has a different c-dimension",
    )


def suite_witnesses(corpus: Sequence[CorpusEntry] | None = None, jobs: int = 1) -> SuiteResult:
    """verify_witnesses on every corpus group."""
    tasks = [
        Task("witness-extraction", e.name, lambda e=e: _witness_check(e))
        for e in _entries(corpus)
    ]
    return SuiteResult("witnesses", run_tasks(tasks, jobs))


# -- oracles -----------------------------------------------------------------


def _mask_keys(subgroups: Iterable[SubgroupRef]) -> set[bytes]:
    return {np.packbits(H.mask()).tobytes() for H in subgroups}


def _component_oracle(entry: CorpusEntry) -> CheckReport:
    G = entry.group
    brute = subnormal_quasisimple_bruteforce(G)
    fast = components(G).components
    ok = _mask_keys(brute) == _mask_keys(fast)
    return CheckReport(
        "component-oracle",
        entry.name,
        inputs={"order": G.order()},
        computed={"components": len(fast), "bruteforce": len(brute)},
        status=verdict(ok),
        reason=None if ok else "components differ from exhaustive search",
    )


def _centralizer_oracle(entry: CorpusEntry) -> CheckReport:
    G = entry.group
    cap = active_caps().filter_limit
    if G.order() > cap:
        raise CapExceededError("filter_limit", cap, G.order())
    samples = [[g] for g in G.generators] + [list(G.generators)]
    samples += [[x] for x in conjugacy_class_reps(G)[1:4]]
    mismatches = 0
    for S in samples:
        if centralizer_by_filter(G, S) != centralizer_by_backtrack(G, S):
            mismatches += 1
    return CheckReport(
        "centralizer-oracle",
        entry.name,
        inputs={"order": G.order(), "samples": len(samples)},
        computed={"mismatches": mismatches},
        status=verdict(mismatches == 0),
        reason=None if mismatches == 0 else "backtrack centralizer differs from filtering",
    )


def _lattice_oracle(entry: CorpusEntry) -> CheckReport:
    lattice = centralizer_lattice(entry.group)
    dfs = longest_chain_bruteforce(lattice)
    dp = cdim(entry.group).value_terms
    return CheckReport(
        "lattice-oracle",
        entry.name,
        inputs={"lattice_size": len(lattice)},
        computed={"dp_terms": dp, "dfs_terms": dfs},
        status=verdict(dp == dfs),
        reason=None if dp == dfs else "longest path disagrees with DFS",
    )


def suite_oracles(corpus: Sequence[CorpusEntry] | None = None, jobs: int = 1) -> SuiteResult:
    """Fast algorithms against their brute-force oracles."""
    tasks = []
    for e in _entries(corpus):
        tasks.append(Task("component-oracle", e.name, lambda e=e: _component_oracle(e)))
        tasks.append(Task("centralizer-oracle", e.name, lambda e=e: _centralizer_oracle(e)))
        tasks.append(Task("lattice-oracle", e.name, lambda e=e: _lattice_oracle(e)))
    return SuiteResult("oracles", run_tasks(tasks, jobs))


# -- constants ---------------------------------------------------------------


def _constant_data(entry: CorpusEntry) -> CheckReport:
    G = entry.group
    k = cdim(G).value_steps
    lam = lambda_invariant(G)
    E = layer(G)
    lam_layer = lambda_invariant(E.as_group()) if E.order() > 1 else 0
    R = soluble_radical(G)
    computed: dict[str, Any] = {
        "cdim_steps": k,
        "lambda": lam,
        "layer_lambda": lam_layer,
        "radical_derived_length": derived_length(R.as_group()) if R.order() > 1 else 0,
    }
    if k:
        computed["lambda_ratio"] = round(lam / k, 6)
        computed["layer_lambda_ratio"] = round(lam_layer / k, 6)
    ok = lam_layer <= lam
    return CheckReport(
        "constant-data",
        entry.name,
        inputs={"order": G.order()},
        computed=computed,
        status=verdict(ok),
        reason=None if ok else "lambda of the layer exceeds lambda of the group",
    )


def _maxima(reports: Sequence[CheckReport]) -> CheckReport:
    def best(key: str) -> tuple[float, str]:
        values = [(r.computed[key], r.group_name) for r in reports if key in r.computed]
        return max(values, default=(0.0, ""))

    d_value, d_group = best("lambda_ratio")
    b_value, b_group = best("layer_lambda_ratio")
    r_value, r_group = best("radical_derived_length")
    return CheckReport(
        "constant-maxima",
        "",
        inputs={"groups": len(reports)},
        computed={
            "max_lambda_ratio": d_value,
            "max_lambda_ratio_group": d_group,
            "max_layer_lambda_ratio": b_value,
            "max_layer_lambda_ratio_group": b_group,
            "max_radical_derived_length": r_value,
            "max_radical_derived_length_group": r_group,
        },
        status=Status.PASS,
    )


def suite_constants(corpus: Sequence[CorpusEntry] | None = None, jobs: int = 1) -> SuiteResult:
    """Empirical maxima of lambda(G)/cdim and lambda(E(G))/cdim (data only)."""
    tasks = [
        Task("constant-data", e.name, lambda e=e: _constant_data(e)) for e in _entries(corpus)
    ]
    reports = run_tasks(tasks, jobs)
    data = [r for r in reports if r.passed]
    return SuiteResult("constants", [*reports, _maxima(data)])


# -- fitting-layer -----------------------------------------------------------


def _fitting_layer(entry: CorpusEntry) -> CheckReport:
    G = entry.group
    F3 = upper_fitting_series(G, 3)
    Gbar, _ = quotient_or_self(G, F3)
    computed: dict[str, Any] = {"f3_order": F3.order(), "quotient_order": Gbar.order()}
    if Gbar.order() == 1:
        computed.update(layer_index=1, layer_quotient_abelian=True, fstar_self_centralizing=True)
        return CheckReport("fitting-layer", entry.name, {"order": G.order()}, computed)
    E = layer(Gbar)
    top, _ = quotient_or_self(Gbar, E)
    Fstar = generalized_fitting(Gbar)
    ok = centralizer(Gbar, Fstar.generators).is_subgroup_of(Fstar)
    computed.update(
        layer_index=top.order(),
        layer_quotient_abelian=top.is_abelian(),
        fstar_self_centralizing=ok,
    )
    return CheckReport(
        "fitting-layer",
        entry.name,
        inputs={"order": G.order()},
        computed=computed,
        status=verdict(ok),
        reason=None if ok else "F*(G/F_3(G)) is not self-centralizing",
    )


def suite_fitting_layer(corpus: Sequence[CorpusEntry] | None = None, jobs: int = 1) -> SuiteResult:
    """G/F_3(G): |Gbar/E(Gbar)| as data, C(F*(Gbar)) <= F*(Gbar) asserted."""
    tasks = [
        Task("fitting-layer", e.name, lambda e=e: _fitting_layer(e)) for e in _entries(corpus)
    ]
    return SuiteResult("fitting-layer", run_tasks(tasks, jobs))


Suite = Callable[..., SuiteResult]

SUITES: dict[str, Suite] = {
    "cdim-bounds": suite_cdim_bounds,
    "structure": suite_structure,
    "radical-relations": suite_radical_relations,
    "khukhro": suite_khukhro,
    "finext": suite_finext,
    "theorem2-data": suite_theorem2_data,
    "witnesses": suite_witnesses,
    "oracles": suite_oracles,
    "constants": suite_constants,
    "fitting-layer": suite_fitting_layer,
}


def run_suites(
    names: Sequence[str] | None = None,
    corpus: Sequence[CorpusEntry] | None = None,
    jobs: int = 1,
) -> list[SuiteResult]:
    """Run suites by name (all of them by default), in the given order.

    Raises:
        KeyError: On an unknown suite name
    """
    selected = list(names) if names else list(SUITES)
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise KeyError(f"Unknown suite(s): {', '.join(unknown)}")
    entries = _entries(corpus)
    results = []
    for name in selected:
        logger.info("Running suite %s on %d groups", name, len(entries))
        result = SUITES[name](entries, jobs)
        logger.info("Suite %s finished: %s", name, result.counts)
        results.append(result)
    return results
