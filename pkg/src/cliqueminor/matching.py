"""Maximum matchings with certificates.

``max_matching`` runs Edmonds' blossom algorithm on a general graph and
returns a Gallai-Edmonds barrier as its Tutte-Berge certificate.
``hall_matching`` matches one side of a bipartite subgraph into the other
or exhibits a set violating Hall's condition.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import Edge, Graph, VertexSet, components, iter_bits, mask_of


@dataclass(frozen=True)
class MatchingResult:
    pairs: tuple[Edge, ...]
    certificate: VertexSet
    odd_components: tuple[VertexSet, ...]

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def deficiency(self) -> int:
        return len(self.odd_components) - len(self.certificate)

    def is_perfect(self, n: int) -> bool:
        return 2 * len(self.pairs) == n


def _lca(a: int, b: int, base: list[int], match: list[int], parent: list[int]) -> int:
    seen = set()
    while True:
        a = base[a]
        seen.add(a)
        if match[a] == -1:
            break
        a = parent[match[a]]
    while True:
        b = base[b]
        if b in seen:
            return b
        b = parent[match[b]]


def _search(adj: list[list[int]], match: list[int], root: int) -> tuple[int, list[bool], list[int]]:
    """One alternating-forest search from ``root``.

    Returns ``(end, even, parent)``: ``end`` is the exposed vertex closing an
    augmenting path (or -1) and ``even`` marks outer vertices, blossoms
    included.
    """
    n = len(adj)
    even = [False] * n
    parent = [-1] * n
    base = list(range(n))
    even[root] = True
    queue = deque([root])

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                cur = _lca(v, to, base, match, parent)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not even[i]:
                            even[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    return to, even, parent
                nxt = match[to]
                even[nxt] = True
                queue.append(nxt)
    return -1, even, parent


def _augment(match: list[int], parent: list[int], end: int) -> None:
    v = end
    while v != -1:
        pv = parent[v]
        ppv = match[pv]
        match[v] = pv
        match[pv] = v
        v = ppv


def odd_components_after(g: Graph, removed: Iterable[int]) -> list[VertexSet]:
    rest = g.full_mask & ~mask_of(removed)
    return [tuple(iter_bits(c)) for c in components(g, rest) if c.bit_count() % 2]


def max_matching(g: Graph) -> MatchingResult:
    """Maximum matching plus a deficiency-maximising barrier.

    Exposed vertices are processed in increasing id order.  After the last
    augmentation one more search from every exposed vertex marks the set D
    of vertices missed by some maximum matching; the barrier is
    ``A = N(D) - D``, for which ``odd(G - A) - |A| = n - 2|M|``.
    """
    n = g.n
    adj = [list(g.neighbors(v)) for v in range(n)]
    match = [-1] * n
    for root in range(n):
        if match[root] != -1:
            continue
        end, _even, parent = _search(adj, match, root)
        if end != -1:
            _augment(match, parent, end)
    d_mask = 0
    for root in range(n):
        if match[root] == -1:
            end, even, _parent = _search(adj, match, root)
            if end != -1:
                raise RuntimeError("matching is not maximum")  # pragma: no cover
            d_mask |= mask_of(v for v in range(n) if even[v])
    barrier_mask = 0
    for v in iter_bits(d_mask):
        barrier_mask |= g.rows[v]
    barrier_mask &= ~d_mask
    barrier = tuple(iter_bits(barrier_mask))
    pairs = tuple(sorted((v, match[v]) for v in range(n) if match[v] > v))
    odd = tuple(odd_components_after(g, barrier))
    if len(odd) - len(barrier) != n - 2 * len(pairs):
        raise RuntimeError("Tutte-Berge equality failed")  # pragma: no cover
    return MatchingResult(pairs, barrier, odd)


@dataclass(frozen=True)
class HallResult:
    """Either a saturating ``matching`` or a Hall ``violator`` S in a with |S| > |N(S) & b|."""

    matching: Optional[tuple[Edge, ...]] = None
    violator: Optional[VertexSet] = None

    @property
    def ok(self) -> bool:
        return self.matching is not None


def hall_matching(g: Graph, a: Iterable[int], b: Iterable[int], saturate: str = "a") -> HallResult:
    """Match ``a`` into ``b`` using only a-b edges.

    ``saturate="a"`` asks for every vertex of a to be matched;
    ``saturate="min"`` only for min(|a|, |b|) pairs.  Greedy first pass, then
    augmenting paths.  On failure the violator is the set of a-vertices
    reachable from unmatched ones by alternating paths.
    """
    if saturate not in ("a", "min"):
        raise ValueError("saturate must be 'a' or 'min'")
    a = tuple(sorted(set(a)))
    b = tuple(sorted(set(b)))
    b_mask = mask_of(b)
    if b_mask & mask_of(a):
        raise ValueError("sides must be disjoint")
    mate: dict[int, int] = {}  # b-vertex -> a-vertex
    mate_a: dict[int, int] = {}
    for x in a:
        for y in iter_bits(g.rows[x] & b_mask):
            if y not in mate:
                mate[y] = x
                mate_a[x] = y
                break

    def try_augment(x: int, visited: set[int]) -> bool:
        for y in iter_bits(g.rows[x] & b_mask):
            if y in visited:
                continue
            visited.add(y)
            if y not in mate or try_augment(mate[y], visited):
                mate[y] = x
                mate_a[x] = y
                return True
        return False

    for x in a:
        if x not in mate_a:
            try_augment(x, set())
    target = len(a) if saturate == "a" else min(len(a), len(b))
    if len(mate) >= target:
        return HallResult(matching=tuple(sorted((x, y) for y, x in mate.items())))
    # Koenig: a-vertices reachable from exposed a-vertices by alternating paths
    reach_a = {x for x in a if x not in mate_a}
    queue = deque(reach_a)
    while queue:
        x = queue.popleft()
        for y in iter_bits(g.rows[x] & b_mask):
            z = mate.get(y)
            if z is not None and z not in reach_a:
                reach_a.add(z)
                queue.append(z)
    return HallResult(violator=tuple(sorted(reach_a)))
