"""Complete-minor certificates: the witness type, its verifier, and the exhaustive oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graph import Graph, VertexSet, graph_hash, iter_bits, lowest_bit, mask_of

MAX_ORACLE_VERTICES = 12


class OracleBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class MinorWitness:
    """Prevertices of a complete minor.

    Each prevertex is a sorted tuple of 1 to 3 vertex ids.  ``graph_id`` is
    the short hash of the graph the witness was built for, if known.
    """

    prevertices: tuple[VertexSet, ...]
    graph_id: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        normalized = tuple(sorted(tuple(sorted(p)) for p in self.prevertices))
        object.__setattr__(self, "prevertices", normalized)

    @classmethod
    def of(cls, prevertices: Iterable[Iterable[int]], g: Optional[Graph] = None) -> "MinorWitness":
        return cls(tuple(tuple(p) for p in prevertices), graph_hash(g) if g is not None else None)

    @property
    def size(self) -> int:
        return len(self.prevertices)

    @property
    def ssh_compliant(self) -> bool:
        return all(len(p) <= 2 for p in self.prevertices)

    def __len__(self) -> int:
        return len(self.prevertices)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    reason: str = ""
    offending: tuple = ()

    def __bool__(self) -> bool:
        return self.valid


def verify_minor(g: Graph, w: MinorWitness) -> Verdict:
    """Check that ``w`` certifies a complete minor of ``g``.

    Raises ValueError if a prevertex names a vertex outside the graph;
    every other defect is returned as the first violation found.
    """
    for p in w.prevertices:
        for v in p:
            if not 0 <= v < g.n:
                raise ValueError(f"prevertex {p} references vertex {v} outside 0..{g.n - 1}")
    if w.graph_id is not None and w.graph_id != graph_hash(g):
        return Verdict(False, f"witness was built for graph {w.graph_id}, not {graph_hash(g)}")
    for p in w.prevertices:
        if not 1 <= len(p) <= 3:
            return Verdict(False, f"prevertex {p} has size {len(p)}, expected 1..3", (p,))
        if len(set(p)) != len(p):
            return Verdict(False, f"prevertex {p} repeats a vertex", (p,))
    masks = [mask_of(p) for p in w.prevertices]
    seen = {}
    for p, mask in zip(w.prevertices, masks):
        for v in p:
            if v in seen:
                return Verdict(False, f"prevertices {seen[v]} and {p} share vertex {v}", (seen[v], p))
            seen[v] = p
    for p, mask in zip(w.prevertices, masks):
        if not _connected(g, mask):
            return Verdict(False, f"prevertex {p} does not induce a connected subgraph", (p,))
    reach = [g.closed_union(p) for p in w.prevertices]
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if not reach[i] & masks[j]:
                a, b = w.prevertices[i], w.prevertices[j]
                return Verdict(False, f"prevertices {a} and {b} do not touch", (a, b))
    return Verdict(True)


def _connected(g: Graph, mask: int) -> bool:
    comp = mask & -mask
    frontier = comp
    while frontier:
        reach = 0
        for v in iter_bits(frontier):
            reach |= g.rows[v]
        frontier = reach & mask & ~comp
        comp |= frontier
    return comp == mask


def format_witness(w: MinorWitness) -> str:
    head = f"witness {w.size}" + (f" {w.graph_id}" if w.graph_id else "")
    lines = [head] + [" ".join(map(str, p)) for p in w.prevertices]
    return "\n".join(lines) + "\n"


def parse_witness(text: str) -> MinorWitness:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty witness text")
    head = lines[0].split()
    if len(head) not in (2, 3) or head[0] != "witness":
        raise ValueError(f"bad witness header {lines[0]!r}")
    try:
        k = int(head[1])
        prevertices = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError:
        raise ValueError("witness contains a non-integer token") from None
    if len(prevertices) != k:
        raise ValueError(f"header announces {k} prevertices, found {len(prevertices)}")
    if any(not p for p in prevertices):
        raise ValueError("empty prevertex line")
    return MinorWitness(tuple(prevertices), head[2] if len(head) == 3 else None)


def _candidate_sets(g: Graph, max_size: int) -> list[int]:
    out = [1 << v for v in range(g.n)]
    if max_size >= 2:
        out += [(1 << u) | (1 << v) for u, v in g.edges()]
    if max_size >= 3:
        for u in range(g.n):
            for v in range(u + 1, g.n):
                for x in range(v + 1, g.n):
                    mask = (1 << u) | (1 << v) | (1 << x)
                    if _connected(g, mask):
                        out.append(mask)
    return out


def brute_force_max_minor(g: Graph, max_prevertex_size: int = 2) -> MinorWitness:
    """Exhaustively find a largest complete minor with small prevertices.

    Searches all families of pairwise disjoint, pairwise touching connected
    sets of at most ``max_prevertex_size`` vertices.  Exponential; limited
    to graphs with at most 12 vertices.
    """
    if not 1 <= max_prevertex_size <= 3:
        raise ValueError("max_prevertex_size must be 1, 2 or 3")
    if g.n > MAX_ORACLE_VERTICES:
        raise OracleBudgetError(f"oracle is limited to n <= {MAX_ORACLE_VERTICES}, got {g.n}")
    sets = _candidate_sets(g, max_prevertex_size)
    k = len(sets)
    reach = [g.closed_union(iter_bits(s)) for s in sets]
    compat = [0] * k
    for i in range(k):
        row = 0
        for j in range(k):
            if i != j and not sets[i] & sets[j] and reach[i] & sets[j]:
                row |= 1 << j
        compat[i] = row
    singles = (1 << g.n) - 1  # candidate indices 0..n-1 are the singletons
    best: list[int] = []
    chosen: list[int] = []

    def bound(cand: int) -> int:
        # disjoint prevertices: a singletons (pairwise adjacent) plus b larger
        # sets use at least a + 2b vertices, so a + b <= (free + a) / 2
        free = 0
        for i in iter_bits(cand):
            free |= sets[i]
        nfree = free.bit_count()
        single_cand = cand & singles
        colors = 0
        rest = single_cand
        while rest:
            colors += 1
            avail = rest
            while avail:
                i = lowest_bit(avail)
                avail &= ~compat[i] & ~(1 << i)
                rest &= ~(1 << i)
        return (nfree + min(colors, nfree)) // 2

    def search(cand: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen[:]
        while cand:
            if len(chosen) + bound(cand) <= len(best):
                return
            i = lowest_bit(cand)
            cand &= ~(1 << i)
            chosen.append(i)
            search(cand & compat[i])
            chosen.pop()

    search((1 << k) - 1)
    return MinorWitness(tuple(tuple(iter_bits(sets[i])) for i in best), graph_hash(g))
