"""Minor-construction strategies and the orchestrator that runs them.

Every strategy returns prevertices of size at most three; witnesses are
checked with ``verify_minor`` before they are reported.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import (Edge, Graph, VertexSet, antitriangle, components, dominating_edges, graph_hash,
                    iter_bits, mask_of, max_clique, min_vertex_cut)
from .labeling import (MEDIUM, EdgeLabeling, LabelingError, LabelingInfeasible, axiom_check,
                       clique_cover_labeling, complement_3coloring_cliques, labeling_certificate,
                       refine_labeling, solve_2sat_labeling, untouching_counts)
from .matching import hall_matching, max_matching
from .structure import K5_PAIRS, quotient, recognize_blownup
from .witness import MAX_ORACLE_VERTICES, MinorWitness, brute_force_max_minor, format_witness, verify_minor

log = logging.getLogger(__name__)

ORACLE_AUTO_LIMIT = 10


class AntitriangleError(ValueError):
    def __init__(self, triple: tuple[int, int, int], context: str = ""):
        super().__init__(f"antitriangle {triple}" + (f" ({context})" if context else ""))
        self.triple = triple


@dataclass(frozen=True)
class Failure:
    """Structured reason a strategy produced no witness.

    ``kind`` is one of ``not-applicable``, ``hall-violation``, ``tutte-berge``,
    ``petersen-exception``, ``axiom-infeasible``, ``unverified-witness``.
    """

    kind: str
    message: str
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class StrategyReport:
    strategy: str
    witness: Optional[MinorWitness] = None
    failure: Optional[Failure] = None
    peeled: tuple[Edge, ...] = ()
    branch: str = ""

    @property
    def size(self) -> int:
        return self.witness.size if self.witness is not None else 0

    @property
    def ok(self) -> bool:
        return self.witness is not None


def _checked(name: str, g: Graph, w: MinorWitness, peeled=(), branch: str = "") -> StrategyReport:
    w = MinorWitness(w.prevertices, graph_hash(g))
    verdict = verify_minor(g, w)
    if not verdict:
        log.warning("%s produced an invalid witness: %s", name, verdict.reason)
        return StrategyReport(name, failure=Failure("unverified-witness", verdict.reason,
                                                    {"prevertices": w.prevertices}), peeled=tuple(peeled), branch=branch)
    return StrategyReport(name, witness=w, peeled=tuple(peeled), branch=branch)


def _require_free(g: Graph, context: str) -> None:
    t = antitriangle(g)
    if t is not None:
        raise AntitriangleError(t, context)


# --- peeling ---------------------------------------------------------------

@dataclass(frozen=True)
class PeelResult:
    prevertices: tuple[Edge, ...]   # in the input's vertex ids
    residual: Graph
    labels: VertexSet               # labels[residual vertex] = input vertex


def peel_dominating(g: Graph) -> PeelResult:
    """Remove the lexicographically first dominating edge until none is left."""
    peeled: list[Edge] = []
    current, labels = g, tuple(range(g.n))
    while True:
        dom = dominating_edges(current)
        if not dom:
            return PeelResult(tuple(peeled), current, labels)
        u, v = dom[0]
        peeled.append((labels[u], labels[v]))
        current, kept = current.without((u, v))
        labels = tuple(labels[i] for i in kept)


def _lift(w: MinorWitness, labels: Sequence[int]) -> list[tuple[int, ...]]:
    return [tuple(labels[v] for v in p) for p in w.prevertices]


# --- induced paths of length two ---------------------------------------------

def p3_packing(g: Graph) -> list[tuple[int, int, int]]:
    """Greedy maximal family of vertex-disjoint induced P3s, first-fit over
    vertex triples in lexicographic order."""
    free = g.full_mask
    found = []
    for a in range(g.n):
        if not free >> a & 1:
            continue
        hit = None
        for b in iter_bits(free & ~((2 << a) - 1)):
            later = free & ~((2 << b) - 1)
            if g.has_edge(a, b):
                cand = later & (g.rows[a] ^ g.rows[b])
            else:
                cand = later & g.rows[a] & g.rows[b]
            if cand:
                hit = (a, b, (cand & -cand).bit_length() - 1)
                break
        if hit:
            found.append(hit)
            free &= ~mask_of(hit)
    return found


def p3_packing_minor(g: Graph) -> MinorWitness:
    _require_free(g, "induced P3s are only universal without antitriangles")
    paths = p3_packing(g)
    rest = g.full_mask & ~mask_of(v for p in paths for v in p)
    comps = components(g, rest)
    if len(comps) > 2:
        raise AssertionError("more than two residual cliques")  # pragma: no cover
    biggest = max(comps, key=lambda c: (c.bit_count(), -c), default=0)
    w = MinorWitness(tuple(paths) + tuple((v,) for v in iter_bits(biggest)))
    if 3 * w.size < g.n:
        raise AssertionError("P3 packing fell below n/3")  # pragma: no cover
    return w


# --- conflict graph on edges -------------------------------------------------

def untouching_edge_lists(g: Graph, edges: Sequence[Edge]) -> list[list[int]]:
    """For each edge, the indices of edges it does not touch."""
    index = {e: i for i, e in enumerate(edges)}
    full = g.full_mask
    out = []
    for u, v in edges:
        away = full & ~(g.closed(u) | g.closed(v))
        lst = []
        for x in iter_bits(away):
            for y in iter_bits(g.rows[x] & away & ~((2 << x) - 1)):
                lst.append(index[(x, y)])
        out.append(lst)
    return out


def vedge_count(g: Graph) -> int:
    """Induced subgraphs on three vertices with exactly one edge, counted
    from each vertex's non-neighbourhood."""
    total = 0
    full = g.full_mask
    for v in range(g.n):
        away = full & ~g.closed(v)
        total += sum((g.rows[x] & away).bit_count() for x in iter_bits(away)) // 2
    return total


@dataclass(frozen=True)
class ConflictColoring:
    witness: MinorWitness
    m: int
    dropped: int          # |E'|
    max_degree: int       # conflict degree bound over kept edges
    untouching: tuple[int, ...]  # vertices not touching each edge
    colors: int

    @property
    def bound(self) -> int:
        kept = self.m - self.dropped
        return -(-kept // (self.max_degree + 1)) if kept else 0


def conflict_graph_coloring(g: Graph) -> ConflictColoring:
    edges = g.edges()
    m = len(edges)
    if m == 0:
        raise ValueError("graph has no edges")
    untouch = untouching_edge_lists(g, edges)
    counts = untouching_counts(g)
    total = sum(counts)
    if total != vedge_count(g):
        raise AssertionError("vedge identity failed")  # pragma: no cover
    # drop edges with many untouching partners; a zero average drops nothing
    limit = 2 * total / m
    keep = [not (c > 0 and c >= limit) for c in counts]
    kept_deg = [0] * g.n
    for (u, v), k in zip(edges, keep):
        if k:
            kept_deg[u] += 1
            kept_deg[v] += 1
    degree = {}
    for i, (u, v) in enumerate(edges):
        if keep[i]:
            degree[i] = kept_deg[u] + kept_deg[v] - 2 + sum(1 for j in untouch[i] if keep[j])
    order = sorted(degree, key=lambda i: (degree[i], i))
    at_vertex = [0] * g.n     # colours used by kept edges at each vertex
    color = {}
    for i in order:
        u, v = edges[i]
        banned = at_vertex[u] | at_vertex[v]
        for j in untouch[i]:
            if j in color:
                banned |= 1 << color[j]
        c = (~banned & (banned + 1)).bit_length() - 1
        color[i] = c
        at_vertex[u] |= 1 << c
        at_vertex[v] |= 1 << c
    classes: dict[int, list[int]] = {}
    for i, c in color.items():
        classes.setdefault(c, []).append(i)
    best = max(classes.values(), key=lambda cl: (len(cl), -min(cl)), default=[])
    delta = max(degree.values(), default=0)
    result = ConflictColoring(MinorWitness(tuple(edges[i] for i in best)), m, m - len(degree),
                              delta, tuple(counts), len(classes))
    if result.witness.size < result.bound:
        raise AssertionError("greedy colouring beat its degree bound")  # pragma: no cover
    return result


def conflict_graph_minor(g: Graph) -> MinorWitness:
    return conflict_graph_coloring(g).witness


# --- small cutsets ---------------------------------------------------------

def _is_cut(g: Graph, cut: int) -> bool:
    return len(components(g, g.full_mask & ~cut)) > 1


def _minimize_cut(g: Graph, cut: int) -> int:
    for v in sorted(iter_bits(cut), reverse=True):
        smaller = cut & ~(1 << v)
        if _is_cut(g, smaller):
            cut = smaller
    return cut


def cutset_minor(g: Graph, cut: Sequence[int]) -> MinorWitness:
    """Witness from a vertex cut: one side's singletons plus a Hall matching
    of the cut into the other side.

    The cut is made inclusion-minimal first; a Hall violation shrinks it
    further and the construction restarts.
    """
    cut_mask = mask_of(cut)
    if cut_mask & ~g.full_mask:
        raise ValueError("cut names a vertex outside the graph")
    if not _is_cut(g, cut_mask):
        raise ValueError(f"{tuple(sorted(cut))} does not separate the graph")
    small = 2 * cut_mask.bit_count() <= g.n
    cut_mask = _minimize_cut(g, cut_mask)
    while True:
        comps = components(g, g.full_mask & ~cut_mask)
        for c in comps:
            for x in iter_bits(c):
                missing = c & ~g.closed(x)
                if missing:
                    raise AntitriangleError(_antitriangle_with(g, comps, x, missing), "side of the cut is not a clique")
        if len(comps) > 2:
            a, b, c = ((m & -m).bit_length() - 1 for m in comps[:3])
            raise AntitriangleError((a, b, c), "cut leaves three components")
        options = []
        for side, other in ((comps[0], comps[1]), (comps[1], comps[0])):
            toward = [x for x in iter_bits(cut_mask) if g.rows[x] & side == side]
            options.append((side.bit_count() + min(len(toward), other.bit_count()), side, other, toward))
        for x in iter_bits(cut_mask):
            if not (g.rows[x] & comps[0] == comps[0] or g.rows[x] & comps[1] == comps[1]):
                y = (comps[0] & ~g.rows[x] & -(comps[0] & ~g.rows[x])).bit_length() - 1
                z = (comps[1] & ~g.rows[x] & -(comps[1] & ~g.rows[x])).bit_length() - 1
                raise AntitriangleError(tuple(sorted((x, y, z))), "cut vertex complete to neither side")
        options.sort(key=lambda o: (-(o[1].bit_count() + len(o[3])), o[1] & -o[1]))
        _, side, other, toward = options[0]
        res = hall_matching(g, toward, iter_bits(other), saturate="min")
        if res.ok:
            w = MinorWitness(tuple((v,) for v in iter_bits(side)) + tuple(res.matching))
            if small and 2 * w.size < g.n:
                raise AssertionError("cut construction fell below n/2")  # pragma: no cover
            return w
        s = mask_of(res.violator)
        nbr = 0
        for x in res.violator:
            nbr |= g.rows[x] & other
        shrunk = (cut_mask & ~s) | nbr
        if shrunk.bit_count() >= cut_mask.bit_count() or not _is_cut(g, shrunk):
            raise AssertionError("Hall violation did not give a smaller cut")  # pragma: no cover
        log.debug("Hall violation %s; cut shrinks to %d", res.violator, shrunk.bit_count())
        cut_mask = _minimize_cut(g, shrunk)


def _antitriangle_with(g: Graph, comps: list[int], x: int, missing: int) -> tuple[int, int, int]:
    y = (missing & -missing).bit_length() - 1
    other = next(c for c in comps if not c >> x & 1)
    z = (other & -other).bit_length() - 1
    return tuple(sorted((x, y, z)))


# --- good matchings ----------------------------------------------------------

# K5 split into five paths of length two along the Euler circuit 0-1-2-3-4-0-2-4-1-3-0
_K5_PATHS = (((0, 1), (1, 2)), ((2, 3), (3, 4)), ((0, 4), (0, 2)), ((2, 4), (1, 4)), ((1, 3), (0, 3)))


def petersen_exception_minor(g: Graph, mapping: Optional[dict] = None) -> Optional[MinorWitness]:
    """Witness for a blown-up Petersen complement.

    Tries, in order, a perfect matching avoiding edges inside twin classes
    (any two such edges cover three points of K5 each and so touch), the
    five-path lift of K5, and the oracle on the 10-vertex quotient.
    """
    if mapping is None:
        mapping = recognize_blownup(g, "petersen-complement")
        if mapping is None:
            return None
    cls_of = {}
    rep = {}
    for cls, target in mapping.items():
        rep[target] = cls[0]
        for v in cls:
            cls_of[v] = target
    candidates = []
    cross = Graph.from_edges(g.n, [(u, v) for u, v in g.edges() if cls_of[u] != cls_of[v]])
    mm = max_matching(cross)
    candidates.append(MinorWitness(mm.pairs))
    index = {pair: i for i, pair in enumerate(K5_PAIRS)}
    candidates.append(MinorWitness(tuple((rep[index[a]], rep[index[b]]) for a, b in _K5_PATHS)))
    q, classes = quotient(g)
    qw = brute_force_max_minor(q, 2)
    candidates.append(MinorWitness(tuple(tuple(classes[i][0] for i in p) for p in qw.prevertices)))
    good = [w for w in candidates if verify_minor(g, w)]
    return max(good, key=lambda w: w.size, default=None)


def good_matching_minor(g: Graph, lab: EdgeLabeling, name: str = "good-matching") -> StrategyReport:
    """Run the dominating-edge, cut, clique, Petersen and good-matching branches in order.

    A clique of the whole graph with at least n/2 vertices is returned instead
    when it beats the pipeline (peeling can waste a large clique).
    """
    if g.n % 2:
        raise ValueError("good matching needs an even number of vertices")
    _require_free(g, "good/bad labelings are defined on antitriangle-free graphs")
    problems = axiom_check(g, lab)
    if problems:
        raise LabelingError(f"labeling violates the axioms: {problems[0]}")
    report = _good_matching_pipeline(g, lab, name)
    clique = max_clique(g)
    if 2 * len(clique) >= g.n and len(clique) > report.size:
        return _checked(name, g, MinorWitness(tuple((v,) for v in clique)), branch="clique")
    return report


def _good_matching_pipeline(g: Graph, lab: EdgeLabeling, name: str) -> StrategyReport:
    peel = peel_dominating(g)
    peeled = peel.prevertices
    h, labels = peel.residual, peel.labels
    sub = lab.restrict(h, labels)

    def done(prevs, branch):
        return _checked(name, g, MinorWitness(tuple(peeled) + tuple(prevs)), peeled, branch)

    if h.n == 0:
        return done((), "dominating")
    cut = min_vertex_cut(h, at_most=h.n // 2)
    if cut is not None:
        w = cutset_minor(h, cut[1])
        return done(_lift(w, labels), "cutset")
    clique = max_clique(h)
    if 2 * len(clique) >= h.n:
        return done(((labels[v],) for v in clique), "clique")
    mapping = recognize_blownup(h, "petersen-complement")
    if mapping is not None:
        w = petersen_exception_minor(h, mapping)
        if w is not None and 2 * w.size >= h.n:
            return done(_lift(w, labels), "petersen")
        return StrategyReport(name, failure=Failure("petersen-exception", "no n/2 minor found for the blown-up Petersen complement",
                                                    {"classes": sorted(mapping)}), peeled=peeled, branch="petersen")
    good_graph = Graph.from_edges(h.n, sorted(sub.good))
    mm = max_matching(good_graph)
    if mm.is_perfect(h.n):
        report = done(_lift(MinorWitness(mm.pairs), labels), "matching")
        if not report.ok and lab.mode == MEDIUM:
            return StrategyReport(name, failure=Failure("unverified-witness", "perfect medium matching does not pairwise touch",
                                                        {"pairs": mm.pairs}), peeled=peeled, branch="matching")
        return report
    certificate = {
        "barrier": tuple(labels[v] for v in mm.certificate),
        "odd_components": tuple(tuple(labels[v] for v in c) for c in mm.odd_components),
        "deficiency": mm.deficiency,
    }
    kind = "medium" if lab.mode == MEDIUM else "good"
    log.warning("%s: no perfect matching of %s edges (deficiency %d)", name, kind, mm.deficiency)
    return StrategyReport(name, failure=Failure("tutte-berge", f"no perfect matching of {kind} edges", certificate),
                          peeled=peeled, branch="matching")


# --- orchestrator ------------------------------------------------------------

@dataclass
class BestMinorReport:
    n: int
    reports: list[StrategyReport]
    skipped: list[tuple[str, str]] = field(default_factory=list)
    peeled: tuple[Edge, ...] = ()
    oracle: Optional[MinorWitness] = None

    @property
    def target(self) -> int:
        return -(-self.n // 2)

    @property
    def best(self) -> Optional[StrategyReport]:
        ok = [r for r in self.reports if r.ok]
        return ok[0] if ok else None

    @property
    def size(self) -> int:
        return self.best.size if self.best else 0

    @property
    def gap(self) -> Optional[int]:
        return None if self.oracle is None else self.oracle.size - self.size

    @property
    def findings(self) -> list[StrategyReport]:
        return [r for r in self.reports if r.failure and r.failure.kind in ("tutte-berge", "unverified-witness", "petersen-exception")]


def _available_labelings(h: Graph) -> list[tuple[str, object]]:
    out: list[tuple[str, object]] = []
    lab = solve_2sat_labeling(h)
    if lab is None:
        cert = labeling_certificate(h)
        out.append(("2sat", Failure("axiom-infeasible", "no good/bad labeling exists",
                                    {"aacw": cert.walk if cert else None})))
    else:
        out.append(("2sat", lab))
    cliques = complement_3coloring_cliques(h)
    if cliques is None:
        out.append(("cover", Failure("not-applicable", "complement is not 3-colourable")))
    else:
        out.append(("cover", clique_cover_labeling(h, cliques)))
    for mode in ("cor1", "cor2"):
        try:
            out.append((mode, refine_labeling(h, mode)))
        except LabelingInfeasible as exc:
            out.append((mode, Failure("axiom-infeasible", str(exc))))
    return out


def best_minor(g: Graph, oracle: Optional[bool] = None, strategies: Optional[Sequence[str]] = None) -> BestMinorReport:
    """Run every applicable strategy and keep the largest verified witness.

    ``oracle=None`` runs the exhaustive search for n <= 10; ``True`` forces it
    up to its size limit.  ``strategies`` filters by name prefix.
    """
    def wanted(name: str) -> bool:
        return strategies is None or any(name.startswith(s) for s in strategies)

    reports: list[StrategyReport] = []
    skipped: list[tuple[str, str]] = []
    if wanted("clique"):
        reports.append(_checked("clique", g, MinorWitness(tuple((v,) for v in max_clique(g)))))
    t = antitriangle(g)
    peel = peel_dominating(g) if t is None else PeelResult((), g, tuple(range(g.n)))
    h, labels, peeled = peel.residual, peel.labels, peel.prevertices

    def run(name: str, prevs, branch: str = "") -> None:
        reports.append(_checked(name, g, MinorWitness(tuple(peeled) + tuple(prevs)), peeled, branch))

    names = ["p3-packing", "conflict-graph", "cutset", "good-matching:2sat", "good-matching:cover",
             "good-matching:cor1", "good-matching:cor2"]
    if t is not None:
        skipped += [(name, f"input has antitriangle {t}") for name in names if wanted(name)]
    else:
        if wanted("p3-packing"):
            run("p3-packing", _lift(p3_packing_minor(h), labels) if h.n else ())
        if wanted("conflict-graph"):
            if h.m:
                run("conflict-graph", _lift(conflict_graph_minor(h), labels))
            else:
                skipped.append(("conflict-graph", "residual has no edges"))
        if wanted("cutset"):
            cut = min_vertex_cut(h, at_most=h.n // 2) if h.n else None
            if cut is None:
                skipped.append(("cutset", "no cut of size at most n/2"))
            else:
                run("cutset", _lift(cutset_minor(h, cut[1]), labels))
        if any(wanted(n) for n in names[3:]):
            # odd residuals drop their last vertex; the guarantee is only for even n
            even, sub_labels = (h, labels) if h.n % 2 == 0 else h.without((h.n - 1,))
            if h.n % 2:
                sub_labels = tuple(labels[v] for v in sub_labels)
            if even.n == 0:
                for lname in ("2sat", "cover", "cor1", "cor2"):
                    if wanted(f"good-matching:{lname}"):
                        run(f"good-matching:{lname}", (), "dominating")
            for lname, lab in _available_labelings(even) if even.n else []:
                name = f"good-matching:{lname}"
                if not wanted(name):
                    continue
                if isinstance(lab, Failure):
                    reports.append(StrategyReport(name, failure=lab, peeled=peeled))
                    continue
                rep = good_matching_minor(even, lab, name)
                if rep.ok:
                    run(name, _lift(rep.witness, sub_labels), rep.branch)
                else:
                    f = rep.failure
                    if f.kind == "tutte-berge":
                        data = dict(f.data)
                        data["barrier"] = tuple(sub_labels[v] for v in data["barrier"])
                        data["odd_components"] = tuple(tuple(sub_labels[v] for v in c) for c in data["odd_components"])
                        f = Failure(f.kind, f.message, data)
                    reports.append(StrategyReport(name, failure=f, peeled=peeled, branch=rep.branch))
    reports.sort(key=lambda r: (-r.size, r.strategy))
    result = BestMinorReport(g.n, reports, skipped, peeled)
    run_oracle = (g.n <= ORACLE_AUTO_LIMIT) if oracle is None else (oracle and g.n <= MAX_ORACLE_VERTICES)
    if run_oracle:
        result.oracle = brute_force_max_minor(g, 2)
        if result.gap:
            log.info("oracle beats best strategy by %d on %s", result.gap, graph_hash(g))
    return result


def format_report(rep: BestMinorReport) -> str:
    lines = [f"best_minor n {rep.n} target {rep.target} size {rep.size}"]
    if rep.peeled:
        lines.append("peeled " + " ".join(f"{u}-{v}" for u, v in rep.peeled))
    lines.append(f"{'strategy':<22} {'size':>5} {'target':>6} verified  note")
    for r in rep.reports:
        note = r.branch if r.ok else f"{r.failure.kind}: {r.failure.message}"
        lines.append(f"{r.strategy:<22} {r.size:>5} {rep.target:>6} {'yes' if r.ok else 'no':<9} {note}".rstrip())
        if r.failure and r.failure.kind == "tutte-berge":
            lines.append(f"  barrier {list(r.failure.data['barrier'])} odd {[list(c) for c in r.failure.data['odd_components']]}")
    for name, reason in rep.skipped:
        lines.append(f"{name:<22} {'-':>5} {rep.target:>6} {'skipped':<9} {reason}")
    if rep.oracle is not None:
        lines.append(f"oracle size {rep.oracle.size} gap {rep.gap}")
    if rep.best:
        lines.append(f"best {rep.best.strategy}")
        lines.append(format_witness(rep.best.witness).rstrip("\n"))
    return "\n".join(lines) + "\n"
