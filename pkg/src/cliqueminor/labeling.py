"""Good/bad edge labelings.

A labeling splits E(G) into good and bad edges.  The good edge axiom asks
every two good edges to touch; the bad edge axiom forbids an induced path
on three vertices whose two edges are both bad.  Both axioms are pairwise
constraints on edges, so finding a labeling is a 2-SAT instance over two
relations on E(G):

* ``untouching``: pairs of edges that do not touch (at least one is bad);
* ``open_p3``: pairs sharing one end whose outer ends are non-adjacent
  (at least one is good).

When no labeling exists, the relations contain an alternating closed walk
that certifies infeasibility (``extract_aacw``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .graph import Edge, Graph, VertexSet, complement, is_c_twin_edge, is_clique, iter_bits, mask_of

GOOD = "G"
BAD = "B"
STRICT = "strict"
MEDIUM = "medium"


class LabelingError(ValueError):
    pass


class CoverageError(LabelingError):
    def __init__(self, vertex: int, count: int, k: int):
        super().__init__(f"vertex {vertex} lies in {count} of {k} cliques, fewer than k/3")
        self.vertex = vertex


class NotACliqueError(LabelingError):
    pass


class LabelingInfeasible(LabelingError):
    def __init__(self, message: str, certificate: Optional["AacwCertificate"] = None):
        super().__init__(message)
        self.certificate = certificate


@dataclass(frozen=True)
class EdgeLabeling:
    """Total labeling of ``edges``; members of ``good`` are good (medium in medium mode)."""

    edges: tuple[Edge, ...]
    good: frozenset
    mode: str = STRICT

    def __post_init__(self):
        if self.mode not in (STRICT, MEDIUM):
            raise ValueError(f"unknown labeling mode {self.mode!r}")
        stray = self.good - set(self.edges)
        if stray:
            raise LabelingError(f"labels on non-edges: {sorted(stray)}")

    @classmethod
    def from_labels(cls, g: Graph, labels: Mapping[Edge, str], mode: str = STRICT) -> "EdgeLabeling":
        edges = tuple(g.edges())
        norm = {(min(e), max(e)): lab for e, lab in labels.items()}
        missing = [e for e in edges if e not in norm]
        if missing:
            raise LabelingError(f"labeling is not total, missing {missing[:5]}")
        extra = set(norm) - set(edges)
        if extra:
            raise LabelingError(f"labels on non-edges: {sorted(extra)[:5]}")
        bad_values = {lab for lab in norm.values()} - {GOOD, BAD}
        if bad_values:
            raise LabelingError(f"unknown labels {sorted(bad_values)}")
        return cls(edges, frozenset(e for e in edges if norm[e] == GOOD), mode)

    @classmethod
    def all_bad(cls, g: Graph, mode: str = STRICT) -> "EdgeLabeling":
        return cls(tuple(g.edges()), frozenset(), mode)

    @classmethod
    def all_good(cls, g: Graph, mode: str = STRICT) -> "EdgeLabeling":
        edges = tuple(g.edges())
        return cls(edges, frozenset(edges), mode)

    def label(self, e: Edge) -> str:
        return GOOD if (min(e), max(e)) in self.good else BAD

    @property
    def bad(self) -> frozenset:
        return frozenset(self.edges) - self.good

    def restrict(self, g: Graph, labels: Sequence[int]) -> "EdgeLabeling":
        """Labeling of the induced subgraph ``g`` whose vertex ``i`` was ``labels[i]``."""
        good = set()
        for u, v in g.edges():
            if (labels[u], labels[v]) in self.good:
                good.add((u, v))
        return EdgeLabeling(tuple(g.edges()), frozenset(good), self.mode)


@dataclass(frozen=True)
class EdgeRelations:
    """The two constraint relations over edge indices, as sorted index pairs."""

    edges: tuple[Edge, ...]
    untouching: tuple[tuple[int, int], ...]
    open_p3: tuple[tuple[int, int], ...]

    def index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def neighbors(self, which: str) -> list[list[int]]:
        pairs = self.untouching if which == "N" else self.open_p3
        out: list[list[int]] = [[] for _ in self.edges]
        for i, j in pairs:
            out[i].append(j)
            out[j].append(i)
        return out


def edge_relations(g: Graph) -> EdgeRelations:
    edges = tuple(g.edges())
    index = {e: i for i, e in enumerate(edges)}
    full = g.full_mask
    untouching = []
    for i, (u, v) in enumerate(edges):
        away = full & ~(g.closed(u) | g.closed(v))
        for x in iter_bits(away):
            for y in iter_bits(g.rows[x] & away & ~((1 << (x + 1)) - 1)):
                j = index[(x, y)]
                if i < j:
                    untouching.append((i, j))
    open_p3 = []
    for v in range(g.n):
        nb = g.rows[v]
        for a in iter_bits(nb):
            for b in iter_bits(nb & ~g.closed(a) & ~((1 << (a + 1)) - 1)):
                i = index[(min(a, v), max(a, v))]
                j = index[(min(b, v), max(b, v))]
                open_p3.append((min(i, j), max(i, j)))
    return EdgeRelations(edges, tuple(sorted(untouching)), tuple(sorted(open_p3)))


def untouching_counts(g: Graph) -> list[int]:
    """Number of vertices not touching each edge (in ``g.edges()`` order)."""
    full = g.full_mask
    return [(full & ~(g.closed(u) | g.closed(v))).bit_count() for u, v in g.edges()]


@dataclass(frozen=True)
class AxiomViolation:
    kind: str  # "good-pair-untouching" or "bad-path-open"
    first: Edge
    second: Edge


def axiom_check(g: Graph, lab: EdgeLabeling, relations: Optional[EdgeRelations] = None) -> list[AxiomViolation]:
    rel = relations or edge_relations(g)
    if set(rel.edges) != set(lab.edges):
        raise LabelingError("labeling does not cover exactly the edges of the graph")
    good = [e in lab.good for e in rel.edges]
    out = []
    if lab.mode == STRICT:
        for i, j in rel.untouching:
            if good[i] and good[j]:
                out.append(AxiomViolation("good-pair-untouching", rel.edges[i], rel.edges[j]))
    for i, j in rel.open_p3:
        if not good[i] and not good[j]:
            out.append(AxiomViolation("bad-path-open", rel.edges[i], rel.edges[j]))
    return out


def _tarjan_scc(graph: list[list[int]]) -> list[int]:
    """Component id per node; ids come out in reverse topological order."""
    n = len(graph)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for start in range(n):
        if index[start] != -1:
            continue
        work = [(start, 0)]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack[start] = True
        while work:
            v, i = work[-1]
            if i < len(graph[v]):
                work[-1] = (v, i + 1)
                w = graph[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return comp


def solve_2sat(num_vars: int, clauses: Iterable[tuple[int, int]]) -> Optional[list[bool]]:
    """Solve a 2-CNF formula.

    Literals are encoded as ``2*i`` (variable i true) and ``2*i + 1`` (false);
    each clause is a pair of literals.  Returns the canonical assignment read
    off the component order, or None if unsatisfiable.
    """
    graph: list[list[int]] = [[] for _ in range(2 * num_vars)]
    for a, b in clauses:
        graph[a ^ 1].append(b)
        graph[b ^ 1].append(a)
    comp = _tarjan_scc(graph)
    values = []
    for i in range(num_vars):
        if comp[2 * i] == comp[2 * i + 1]:
            return None
        values.append(comp[2 * i] < comp[2 * i + 1])
    return values


def solve_partition(size: int, hn: Iterable[tuple[int, int]], hb: Iterable[tuple[int, int]],
                    forced: Optional[Mapping[int, bool]] = None) -> Optional[list[bool]]:
    """Split ``0..size-1`` into good (True) and bad so that no ``hn`` pair is all good
    and no ``hb`` pair is all bad."""
    clauses = [(2 * a + 1, 2 * b + 1) for a, b in hn]
    clauses += [(2 * a, 2 * b) for a, b in hb]
    for v, is_good in (forced or {}).items():
        lit = 2 * v if is_good else 2 * v + 1
        clauses.append((lit, lit))
    return solve_2sat(size, clauses)


def solve_2sat_labeling(g: Graph, forced: Optional[Mapping[Edge, str]] = None,
                        relations: Optional[EdgeRelations] = None) -> Optional[EdgeLabeling]:
    """A labeling satisfying both axioms and the forced labels, or None if none exists."""
    rel = relations or edge_relations(g)
    index = rel.index()
    fixed = {}
    for e, lab in (forced or {}).items():
        key = (min(e), max(e))
        if key not in index:
            raise LabelingError(f"forced label on non-edge {key}")
        if lab not in (GOOD, BAD):
            raise LabelingError(f"unknown label {lab!r}")
        fixed[index[key]] = lab == GOOD
    values = solve_partition(len(rel.edges), rel.untouching, rel.open_p3, fixed)
    if values is None:
        return None
    return EdgeLabeling(rel.edges, frozenset(e for e, ok in zip(rel.edges, values) if ok))


@dataclass(frozen=True)
class AacwCertificate:
    """Even closed alternating walk whose positions 0 and ``repeat`` hold the same vertex.

    Step ``t`` (from ``walk[t]`` to ``walk[t+1]``) uses the N relation for
    even ``t`` and the B relation for odd ``t``.  ``repeat`` is odd, so
    ``walk[0..repeat]`` is an almost alternating closed walk with nose
    ``walk[0]``.
    """

    walk: tuple
    repeat: int

    @property
    def nose(self) -> Hashable:
        return self.walk[0]

    @property
    def length(self) -> int:
        return len(self.walk) - 1


def _adjacency(pairs: Iterable[tuple]) -> dict:
    adj: dict = {}
    for a, b in pairs:
        adj.setdefault(a, []).append(b)
        if a != b:
            adj.setdefault(b, []).append(a)
    return {v: sorted(set(ws)) for v, ws in adj.items()}


def _alternating_path(adj: tuple[dict, dict], start, phase: int, goal, goal_phase: int) -> Optional[list]:
    """Shortest walk from state ``(start, phase)`` to ``(goal, goal_phase)``.

    Phase 0 means the next step uses N, phase 1 means B.  The two states
    must differ.
    """
    origin = (start, phase)
    target = (goal, goal_phase)
    parent: dict = {origin: None}
    queue = deque([origin])
    while queue:
        state = queue.popleft()
        if state == target:
            path = []
            while state is not None:
                path.append(state[0])
                state = parent[state]
            return path[::-1]
        v, ph = state
        for w in adj[ph].get(v, ()):
            nxt = (w, 1 - ph)
            if nxt not in parent:
                parent[nxt] = state
                queue.append(nxt)
    return None


def extract_aacw(hn: Iterable[tuple], hb: Iterable[tuple],
                 vertices: Optional[Iterable] = None) -> Optional[AacwCertificate]:
    """Search for an alternating-walk certificate that no valid partition exists.

    For every vertex ``v`` (in sorted order) look for an odd alternating
    walk from ``v`` back to ``v`` starting and ending with N steps, and an
    odd one starting and ending with B steps; their concatenation is the
    certificate.  Returns None when no vertex admits both walks, which is
    exactly when a partition exists.
    """
    hn = list(hn)
    hb = list(hb)
    adj = (_adjacency(hn), _adjacency(hb))
    universe = set(vertices or ()) | set(adj[0]) | set(adj[1])
    bound = 4 * max(1, len(universe))
    for v in sorted(universe):
        forward = _alternating_path(adj, v, 0, v, 1)
        if forward is None:
            continue
        back = _alternating_path(adj, v, 1, v, 0)
        if back is None:
            continue
        walk = tuple(forward + back[1:])
        if len(walk) - 1 > bound:
            raise CertificateSearchExhausted(f"walk through {v!r} exceeds length bound {bound}")
        return AacwCertificate(walk, len(forward) - 1)
    return None


class CertificateSearchExhausted(RuntimeError):
    pass


def check_aacw(cert: AacwCertificate, hn: Iterable[tuple], hb: Iterable[tuple]) -> list[str]:
    """Problems with ``cert`` as a certificate for (hn, hb); empty when valid."""
    n_rel = {frozenset(p) for p in hn}
    b_rel = {frozenset(p) for p in hb}
    walk = cert.walk
    problems = []
    if len(walk) < 2:
        problems.append("walk too short")
        return problems
    if walk[0] != walk[-1]:
        problems.append("walk is not closed")
    if (len(walk) - 1) % 2:
        problems.append("walk length is odd")
    if cert.repeat % 2 == 0 or not 0 < cert.repeat < len(walk):
        problems.append("repeat position is not odd")
    elif walk[cert.repeat] != walk[0]:
        problems.append("walk does not revisit its nose at the repeat position")
    for t in range(len(walk) - 1):
        rel = n_rel if t % 2 == 0 else b_rel
        if frozenset((walk[t], walk[t + 1])) not in rel:
            name = "N" if t % 2 == 0 else "B"
            problems.append(f"step {t} ({walk[t]!r}, {walk[t + 1]!r}) is not in {name}")
    return problems


def labeling_certificate(g: Graph, relations: Optional[EdgeRelations] = None) -> Optional[AacwCertificate]:
    """AACW over the edges of ``g`` (walk entries are edges), or None if a labeling exists."""
    rel = relations or edge_relations(g)
    hn = [(rel.edges[i], rel.edges[j]) for i, j in rel.untouching]
    hb = [(rel.edges[i], rel.edges[j]) for i, j in rel.open_p3]
    return extract_aacw(hn, hb, rel.edges)


def clique_cover_labeling(g: Graph, cliques: Sequence[Iterable[int]]) -> EdgeLabeling:
    """Label an edge good iff more than half of the ``k`` cliques contain one of its ends.

    Every vertex must lie in at least k/3 of the cliques (counted with
    multiplicity).  For odd ``k`` the result satisfies both axioms.
    """
    cliques = [tuple(sorted(set(c))) for c in cliques]
    k = len(cliques)
    if k == 0:
        if g.n:
            raise CoverageError(0, 0, 0)
        return EdgeLabeling((), frozenset())
    masks = []
    for c in cliques:
        if any(not 0 <= v < g.n for v in c):
            raise NotACliqueError(f"clique {c} names a vertex outside the graph")
        if not is_clique(g, c):
            raise NotACliqueError(f"{c} is not a clique")
        masks.append(mask_of(c))
    for v in range(g.n):
        count = sum(1 for m in masks if m >> v & 1)
        if Fraction(count) < Fraction(k, 3):
            raise CoverageError(v, count, k)
    good = set()
    for u, v in g.edges():
        pair = (1 << u) | (1 << v)
        if 2 * sum(1 for m in masks if m & pair) > k:
            good.add((u, v))
    return EdgeLabeling(tuple(g.edges()), frozenset(good))


def _colorable(adj: list[int], n: int, k: int) -> Optional[list[int]]:
    """Exact k-colouring by DSATUR-ordered backtracking; None if impossible."""
    color = [-1] * n

    def pick() -> int:
        best, best_key = -1, None
        for v in range(n):
            if color[v] != -1:
                continue
            used = {color[w] for w in iter_bits(adj[v]) if color[w] != -1}
            key = (len(used), adj[v].bit_count(), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def solve(colored: int, max_used: int) -> bool:
        if colored == n:
            return True
        v = pick()
        used = {color[w] for w in iter_bits(adj[v]) if color[w] != -1}
        # a colour never seen before is tried only once (symmetry breaking)
        for c in range(min(k, max_used + 2)):
            if c in used:
                continue
            color[v] = c
            if solve(colored + 1, max(max_used, c)):
                return True
            color[v] = -1
        return False

    return color if solve(0, -1) else None


def complement_3coloring_cliques(g: Graph) -> Optional[list[VertexSet]]:
    """Colour classes of a minimum (at most 3) colouring of the complement.

    Each class is a clique of ``g``, so the result is a cover of V(G) by at
    most three cliques; None if the complement needs four or more colours.
    """
    if g.n == 0:
        return []
    comp = complement(g)
    for k in (1, 2, 3):
        colors = _colorable(list(comp.rows), g.n, k)
        if colors is not None:
            classes: dict[int, list[int]] = {}
            for v, c in enumerate(colors):
                classes.setdefault(c, []).append(v)
            return sorted(tuple(vs) for vs in classes.values())
    return None


def _flip_order(rel: EdgeRelations) -> list[int]:
    degree = [0] * len(rel.edges)
    for i, j in rel.untouching:
        degree[i] += 1
        degree[j] += 1
    return sorted(range(len(rel.edges)), key=lambda i: (-degree[i], rel.edges[i]))


def refine_labeling(g: Graph, mode: str = "cor1", trace: Optional[list] = None) -> EdgeLabeling:
    """Labelings with every edge between c-twins bad.

    ``cor1``: start from the 2-SAT labeling with c-twin edges forced bad and
    turn bad edges good while the good edge axiom survives; the good set is
    then maximal under single flips.

    ``cor2``: medium mode.  Only the bad edge axiom is enforced.  Local
    search over single flips minimises the number of untouching medium pairs,
    then maximises the number of medium edges.  ``trace`` (if given) receives
    the objective ``(untouching pairs, -|medium|)`` after every accepted flip,
    starting with the initial labeling.
    """
    rel = edge_relations(g)
    edges = rel.edges
    twin = [is_c_twin_edge(g, u, v) for u, v in edges]
    untouch = rel.neighbors("N")
    p3 = rel.neighbors("B")
    order = _flip_order(rel)
    if mode == "cor1":
        forced = {e: BAD for e, t in zip(edges, twin) if t}
        lab = solve_2sat_labeling(g, forced, rel)
        if lab is None:
            raise LabelingInfeasible("no labeling satisfies the axioms with c-twin edges bad")
        good = [e in lab.good for e in edges]
        changed = True
        while changed:
            changed = False
            for i in order:
                if good[i] or twin[i]:
                    continue
                if not any(good[j] for j in untouch[i]):
                    good[i] = True
                    changed = True
        return EdgeLabeling(edges, frozenset(e for e, ok in zip(edges, good) if ok))
    if mode == "cor2":
        # all non-twin edges medium: two twin edges never form an open path
        medium = [not t for t in twin]
        untouching_pairs = sum(1 for i, j in rel.untouching if medium[i] and medium[j])
        size = sum(medium)
        if trace is not None:
            trace.append((untouching_pairs, -size))
        changed = True
        while changed:
            changed = False
            for i in order:
                if twin[i]:
                    continue
                partners = sum(1 for j in untouch[i] if medium[j])
                if medium[i]:
                    if partners == 0 or any(not medium[j] for j in p3[i]):
                        continue
                    medium[i] = False
                    untouching_pairs -= partners
                    size -= 1
                else:
                    if partners:
                        continue
                    medium[i] = True
                    size += 1
                changed = True
                if trace is not None:
                    trace.append((untouching_pairs, -size))
        return EdgeLabeling(edges, frozenset(e for e, ok in zip(edges, medium) if ok), MEDIUM)
    raise ValueError(f"unknown refinement mode {mode!r}")


def untouching_pair_count(g: Graph, lab: EdgeLabeling, relations: Optional[EdgeRelations] = None) -> int:
    rel = relations or edge_relations(g)
    good = [e in lab.good for e in rel.edges]
    return sum(1 for i, j in rel.untouching if good[i] and good[j])


def format_labeling(lab: EdgeLabeling) -> str:
    tag = "M" if lab.mode == MEDIUM else GOOD
    return "".join(f"{u} {v} {tag if (u, v) in lab.good else BAD}\n" for u, v in lab.edges)


def parse_labeling(g: Graph, text: str) -> EdgeLabeling:
    labels = {}
    mode = STRICT
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3 or parts[2] not in (GOOD, BAD, "M"):
            raise LabelingError(f"line {lineno}: expected 'u v G|B|M', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise LabelingError(f"line {lineno}: non-integer endpoint") from None
        if parts[2] == "M":
            mode = MEDIUM
        labels[(min(u, v), max(u, v))] = BAD if parts[2] == BAD else GOOD
    return EdgeLabeling.from_labels(g, labels, mode)


def _format_item(x) -> str:
    return " ".join(map(str, x)) if isinstance(x, tuple) else str(x)


def format_aacw(cert: AacwCertificate) -> str:
    lines = [f"aacw {cert.length} {cert.repeat}", "nose " + _format_item(cert.nose)]
    lines += [_format_item(x) for x in cert.walk]
    return "\n".join(lines) + "\n"
