"""Minimum rank by determinantal ideals.

For ``k = 1, 2, ...`` the driver asks whether some matrix in S(G) has all
k-minors zero, i.e. rank below ``k``.  The question is posed as the
k-minors plus ``y_e * yh_e - 1`` for every edge and settled by a reduced
Groebner basis: the basis is ``{1}`` exactly when no complex solution
exists.  The first solvable level ``k`` gives ``mr = k - 1`` over C.  A
rational witness matrix of that rank then shows the value is attained over
R too; without one the report only claims a lower bound for the real
minimum rank.
"""

from __future__ import annotations

import enum
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

import numpy as np

from .graph import Graph, connected_components, spanning_forest, zero_forcing_number
from .groebner import GroebnerBasis, GroebnerLimitExceeded, Limits, PolySystem, buchberger, is_trivial
from .linalg import RationalMatrix, block_diagonal, full_rank_witness, pattern_matches, rank
from .minors import build_symbolic, k_minors, rabinowitsch_generators
from .poly import Polynomial, VarKind, Variable, x, y, yh

log = logging.getLogger(__name__)


class Status(str, enum.Enum):
    EXACT = "EXACT"
    LOWER_BOUND_ONLY = "LOWER_BOUND_ONLY"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class SolveOptions:
    use_bounds: bool = True
    strategy: str = "linear"
    witness_search: bool = True
    witness_bound: int = 4
    witness_attempts: int = 100_000
    witness_restarts: int = 8
    random_seed: int = 0
    limits: Limits = field(default_factory=Limits)
    decompose_components: bool = True
    normalize_forest: bool = True
    keep_bases: bool = False
    threads: int = 1

    def __post_init__(self) -> None:
        if self.strategy not in ("linear", "binary"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.witness_bound < 1:
            raise ValueError("witness coefficient bound must be at least 1")
        if self.witness_attempts < 1:
            raise ValueError("witness attempts must be at least 1")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


@dataclass
class Iteration:
    """One level of the scan; ``gb_trivial`` is None when undecided."""

    k: int
    minors_total: int
    minors_distinct: Optional[int]
    gb_trivial: Optional[bool]
    skipped_by_bound: bool = False
    decided_by: str = "groebner"
    elapsed_ms: float = 0.0
    component: int = 0
    gb_size: Optional[int] = None
    generators: int = 0
    basis: Optional[GroebnerBasis] = field(default=None, repr=False, compare=False)
    system: Optional[PolySystem] = field(default=None, repr=False, compare=False)


@dataclass
class SolveReport:
    graph: Graph
    mr_complex: Optional[int]
    status: Status
    certified_real: bool
    witness: Optional[RationalMatrix]
    lower_bound: int
    upper_bound: int
    iterations: list[Iteration]
    options: SolveOptions = field(repr=False, default_factory=SolveOptions)
    components: int = 1

    @property
    def mr(self) -> Optional[int]:
        return self.mr_complex

    @property
    def max_nullity(self) -> Optional[int]:
        return None if self.mr_complex is None else self.graph.n - self.mr_complex

    @property
    def max_multiplicity(self) -> Optional[int]:
        return self.max_nullity


class ReportInvariantError(AssertionError):
    pass


# -- one level ---------------------------------------------------------------

def level_system(G: Graph, k: int, normalize_forest: bool = True) -> tuple[PolySystem, int, int]:
    """The k-th system for ``G`` with its total and distinct minor counts."""
    unit = spanning_forest(G) if normalize_forest else frozenset()
    M = build_symbolic(G, unit_edges=unit)
    minors = k_minors(M, k)
    system = PolySystem(minors.distinct + rabinowitsch_generators(M), M.ring)
    return system, minors.all_count, len(minors.distinct)


def _evaluate_level(G: Graph, k: int, opts: SolveOptions, component: int) -> Iteration:
    start = time.perf_counter()
    system, total, distinct = level_system(G, k, opts.normalize_forest)
    it = Iteration(k, total, distinct, None, component=component, generators=len(system))
    try:
        gb = buchberger(system, opts.limits)
    except GroebnerLimitExceeded as exc:
        log.info("level k=%d undecided by Groebner basis: %s", k, exc.reason)
        it.decided_by = "undecided"
        if opts.witness_search and find_witness(G, k - 1, opts) is not None:
            it.gb_trivial = False
            it.decided_by = "witness"
    else:
        it.gb_trivial = is_trivial(gb)
        it.gb_size = len(gb)
        if opts.keep_bases:
            it.basis = gb
            it.system = system
    it.elapsed_ms = (time.perf_counter() - start) * 1000
    log.debug("component %d, k=%d: trivial=%s (%.1f ms)", component, k, it.gb_trivial, it.elapsed_ms)
    return it


def _skipped_level(n: int, k: int, component: int) -> Iteration:
    return Iteration(k, comb(n, k) ** 2, None, True, skipped_by_bound=True, decided_by="bound", component=component)


@dataclass
class _ComponentResult:
    mr: Optional[int]
    lower: int
    upper: int
    iterations: list[Iteration]


def _scan(G: Graph, opts: SolveOptions, component: int = 0) -> _ComponentResult:
    """Find the first solvable level of a single graph."""
    n = G.n
    if n == 0:
        return _ComponentResult(0, 0, 0, [])
    bound = n - zero_forcing_number(G) if opts.use_bounds else 0
    iterations = [_skipped_level(n, k, component) for k in range(1, bound + 1)]
    lower = bound          # mr >= lower
    upper = n - 1          # mr <= n-1 for every graph with n >= 1 (shift the diagonal by an eigenvalue)
    evaluated: dict[int, Iteration] = {}

    def solvable(k: int) -> Optional[bool]:
        it = _evaluate_level(G, k, opts, component)
        evaluated[k] = it
        return None if it.gb_trivial is None else not it.gb_trivial

    if opts.strategy == "linear":
        for k in range(bound + 1, n + 1):
            s = solvable(k)
            if s is None:
                continue
            if s:
                upper = min(upper, k - 1)
                break
            lower = max(lower, k)
    else:
        lo, hi = bound + 1, n
        while lo < hi:
            mid = (lo + hi) // 2
            s = solvable(mid)
            if s is None:
                break
            if s:
                hi = mid
                upper = min(upper, mid - 1)
            else:
                lo = mid + 1
                lower = max(lower, mid)
        else:
            if hi not in evaluated:
                s = solvable(hi)
                if s:
                    upper = min(upper, hi - 1)
                elif s is False:
                    lower = max(lower, hi)
    iterations += [evaluated[k] for k in sorted(evaluated)]
    # An undecided level can still be pinned down by decided levels around it.
    decided = lower == upper
    return _ComponentResult(lower if decided else None, lower, upper, iterations)


# -- witnesses ---------------------------------------------------------------

def _random_search(G: Graph, r: int, opts: SolveOptions, rng: np.random.Generator) -> Optional[RationalMatrix]:
    """Integer matrices in S(G) drawn uniformly (edges nonzero), checked by exact rank.

    A batched floating-point rank filters candidates; every candidate it
    passes is confirmed exactly, so the float step can only cost time.
    """
    n, B = G.n, opts.witness_bound
    edges = G.sorted_edges
    remaining = opts.witness_attempts
    batch = 2048
    while remaining > 0:
        size = min(batch, remaining)
        remaining -= size
        A = np.zeros((size, n, n), dtype=np.int64)
        diag = rng.integers(-B, B + 1, size=(size, n))
        A[:, np.arange(n), np.arange(n)] = diag
        if edges:
            raw = rng.integers(0, 2 * B, size=(size, len(edges)))
            vals = np.where(raw < B, raw - B, raw - B + 1)
            ii = np.array([e[0] for e in edges])
            jj = np.array([e[1] for e in edges])
            A[:, ii, jj] = vals
            A[:, jj, ii] = vals
        approx = np.linalg.matrix_rank(A.astype(float))
        for idx in np.flatnonzero(approx <= r):
            M = RationalMatrix.from_rows(A[idx].tolist())
            if rank(M) <= r:
                return M
    return None


def _linear_value(p: Polynomial) -> Optional[tuple[Variable, Fraction]]:
    """If ``p`` is ``a*v + b``, return ``(v, -b/a)``."""
    if p.total_degree != 1:
        return None
    vs = p.variables()
    if len(vs) != 1:
        return None
    d = p.as_dict()
    v = vs[0]
    i = p.ring.index[v]
    a = b = 0
    for m, c in d.items():
        if m[i]:
            a = c
        else:
            b = c
    return v, Fraction(-b) / Fraction(a)


def _specialize(gens: list[Polynomial], values: dict, ring, limits: Limits) -> Optional[GroebnerBasis]:
    """Reduced basis after substituting ``values``; None if the result is {1}."""
    out = []
    for p in gens:
        q = p.substitute(values) if values else p
        if q.is_zero():
            continue
        if q.is_constant():
            return None
        out.append(q)
    if not out:
        return GroebnerBasis((), ring)
    gb = buchberger(PolySystem(tuple(out), ring), limits)
    return None if is_trivial(gb) else gb


def _specialization_search(
    G: Graph, r: int, opts: SolveOptions, rng: np.random.Generator
) -> Optional[RationalMatrix]:
    """Fix matrix entries one at a time, keeping the level-(r+1) system solvable.

    Spanning-forest entries are 1 from the start.  A variable pinned to a
    single value by a linear basis element takes that value; otherwise small
    integers are tried (0 first on the diagonal) and kept when the
    specialized basis is still not {1}.
    """
    n, B = G.n, opts.witness_bound
    forest = spanning_forest(G)
    M = build_symbolic(G, unit_edges=forest)
    ring = M.ring
    system, _, _ = level_system(G, r + 1, True)
    budget = opts.witness_attempts
    for attempt in range(opts.witness_restarts):
        values: dict[Variable, Fraction] = {}
        try:
            gb = _specialize(list(system.generators), {}, ring, opts.limits)
        except GroebnerLimitExceeded:
            return None
        if gb is None:
            return None
        pending = list(M.edge_variables) + list(M.diagonal_variables)
        failed = False
        while not failed:
            pinned = None
            for p in gb.elements:
                pinned = _linear_value(p)
                if pinned:
                    break
            if pinned:
                v, val = pinned
                step = {v: val}
                if v.kind is not VarKind.DIAG:
                    if val == 0:
                        failed = True
                        break
                    partner = yh(*v.index) if v.kind is VarKind.EDGE else y(*v.index)
                    step[partner] = 1 / val
                values.update(step)
                try:
                    gb = _specialize(list(gb.elements), step, ring, opts.limits)
                except GroebnerLimitExceeded:
                    return None
                if gb is None:
                    failed = True
                continue
            todo = [v for v in pending if v not in values]
            if not todo:
                break
            v = todo[0]
            used = {u for p in gb.elements for u in p.variables()}
            if v.kind is VarKind.DIAG:
                draws = [0] + [int(c) for c in rng.integers(-B, B + 1, size=6)]
            else:
                draws = [int(c) for c in rng.integers(1, B + 1, size=6) * rng.choice([-1, 1], size=6)]
            candidates = list(dict.fromkeys(draws))
            partner = None if v.kind is VarKind.DIAG else yh(*v.index)
            if v not in used and (partner is None or partner not in used):
                c = candidates[0]
                values[v] = Fraction(c)
                if partner is not None:
                    values[partner] = Fraction(1, c)
                continue
            for c in candidates:
                budget -= 1
                if budget < 0:
                    return None
                step = {v: Fraction(c)}
                if partner is not None:
                    step[partner] = Fraction(1, c)
                try:
                    trial = _specialize(list(gb.elements), step, ring, opts.limits)
                except GroebnerLimitExceeded:
                    trial = None
                if trial is not None:
                    values.update(step)
                    gb = trial
                    break
            else:
                failed = True
        if failed:
            log.debug("specialization attempt %d failed", attempt)
            continue
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = values[x(i)]
        for u, w in G.sorted_edges:
            val = Fraction(1) if (u, w) in forest else values[y(u, w)]
            rows[u][w] = rows[w][u] = val
        W = RationalMatrix(tuple(tuple(row) for row in rows))
        if pattern_matches(W, G) and rank(W) <= r:
            return W
    return None


def find_witness(G: Graph, r: int, opts: SolveOptions | None = None) -> Optional[RationalMatrix]:
    """A rational matrix in S(G) of rank at most ``r``, or None if none was found.

    First a seeded random search over integer entries in ``[-B, B]``, then a
    search that fixes entries one by one while checking solvability with
    Groebner bases.
    """
    opts = opts or SolveOptions()
    if r < 0:
        return None
    if r >= G.n:
        return full_rank_witness(G)
    rng = np.random.default_rng(opts.random_seed)
    found = _random_search(G, r, opts, rng)
    if found is None:
        found = _specialization_search(G, r, opts, rng)
    return found


# -- driver ------------------------------------------------------------------

def _solve_component(args) -> tuple[_ComponentResult, Optional[RationalMatrix]]:
    graph, opts, index = args
    res = _scan(graph, opts, index)
    witness = None
    if opts.witness_search and res.mr is not None:
        witness = find_witness(graph, res.mr, opts)
    return res, witness


def minimum_rank(G: Graph, opts: SolveOptions | None = None) -> SolveReport:
    """Run the level scan (and, if enabled, the witness search) on ``G``."""
    opts = opts or SolveOptions()
    if opts.decompose_components and G.n > 0:
        parts = connected_components(G)
    else:
        parts = [G.induced_subgraph(range(G.n))]
    jobs = [(c.graph, opts, i) for i, c in enumerate(parts)]
    if opts.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=opts.threads) as pool:
            results = list(pool.map(_solve_component, jobs))
    else:
        results = [_solve_component(j) for j in jobs]

    iterations = [it for res, _ in results for it in res.iterations]
    lower = sum(res.lower for res, _ in results)
    upper = sum(res.upper for res, _ in results)
    decided = all(res.mr is not None for res, _ in results)
    mr = sum(res.mr for res, _ in results) if decided else None

    witness = None
    certified = False
    if decided and opts.witness_search and all(w is not None for _, w in results):
        blocks = [(c.labels, w) for c, (_, w) in zip(parts, results)]
        witness = block_diagonal(G.n, blocks)
        certified = True
    if not decided:
        status = Status.UNDECIDED
    elif certified:
        status = Status.EXACT
    else:
        status = Status.LOWER_BOUND_ONLY
    return SolveReport(
        graph=G,
        mr_complex=mr,
        status=status,
        certified_real=certified,
        witness=witness,
        lower_bound=lower,
        upper_bound=upper,
        iterations=iterations,
        options=opts,
        components=len(parts),
    )


def check_report(report: SolveReport) -> None:
    """Raise :class:`ReportInvariantError` if the report is inconsistent."""
    G = report.graph

    def fail(msg: str) -> None:
        raise ReportInvariantError(msg)

    if report.certified_real:
        if report.witness is None:
            fail("certified report without a witness")
        if not pattern_matches(report.witness, G):
            fail("witness does not have the graph's zero pattern")
        if rank(report.witness) != report.mr_complex:
            fail(f"witness rank {rank(report.witness)} != mr {report.mr_complex}")
    if report.status is Status.EXACT:
        if report.max_nullity != G.n - report.mr_complex:
            fail("max nullity is not n - mr")
    by_component: dict[int, list[Iteration]] = {}
    for it in report.iterations:
        by_component.setdefault(it.component, []).append(it)
    for comp, its in by_component.items():
        ks = [it.k for it in its]
        if ks != sorted(set(ks)):
            fail(f"component {comp}: iteration levels are not strictly increasing")
        if report.status is not Status.UNDECIDED and report.options.strategy == "linear":
            flags = [it.gb_trivial for it in its]
            if flags[-1] is not False or any(f is not True for f in flags[:-1]):
                fail(f"component {comp}: only the last level may be solvable")


def certify(G: Graph, opts: SolveOptions | None = None) -> SolveReport:
    """:func:`minimum_rank` followed by a consistency check of the report."""
    report = minimum_rank(G, opts)
    check_report(report)
    return report
