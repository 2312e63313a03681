"""Dipole structure over a bipartition, T-graph reconstruction, and blown-up recognition."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .graph import Edge, Graph, VertexSet, c_twin_classes, complement, iter_bits, mask_of
from .labeling import MEDIUM, EdgeLabeling

STRAIGHT = "S"
TWISTED = "T"


class DecompositionError(ValueError):
    """The input breaks the decomposition's precondition (a good edge crosses the sides)."""

    def __init__(self, message: str, edge: Optional[Edge] = None):
        super().__init__(message)
        self.edge = edge


@dataclass(frozen=True)
class Dipole:
    top: VertexSet
    bottom: VertexSet

    @property
    def proper(self) -> bool:
        return bool(self.top) and bool(self.bottom)

    @property
    def vertices(self) -> VertexSet:
        return tuple(sorted(self.top + self.bottom))


@dataclass(frozen=True)
class DipoleDecomposition:
    left: VertexSet
    right: VertexSet
    left_dipoles: tuple[Dipole, ...]
    right_dipoles: tuple[Dipole, ...]
    matrix: tuple[tuple[str, ...], ...]  # matrix[i][j] in {"S", "T"}

    def pole_sizes(self) -> list[tuple[int, int]]:
        return [(len(d.top), len(d.bottom)) for d in self.left_dipoles + self.right_dipoles]


@dataclass(frozen=True)
class DecompositionFailure:
    reason: str
    where: tuple = ()

    def __bool__(self) -> bool:
        return False


def _split_component(g: Graph, comp: int, bad: set) -> Optional[tuple[int, int]]:
    """Two-colour a side component: bad edges keep a colour, non-edges swap it."""
    color: dict[int, int] = {}
    start = (comp & -comp).bit_length() - 1
    color[start] = 0
    stack = [start]
    while stack:
        v = stack.pop()
        for w in iter_bits(comp & ~(1 << v)):
            if g.has_edge(v, w):
                if (min(v, w), max(v, w)) not in bad:
                    continue
                want = color[v]
            else:
                want = 1 - color[v]
            if w in color:
                if color[w] != want:
                    return None
            else:
                color[w] = want
                stack.append(w)
    a = mask_of(v for v, c in color.items() if c == 0)
    b = mask_of(v for v, c in color.items() if c == 1)
    return a, b


def _side_dipoles(g: Graph, side: int, other: int, bad: set):
    # components of (side, bad edges + non-edges)
    links = {}
    for v in iter_bits(side):
        row = side & ~(1 << v) & ~g.rows[v]
        for w in iter_bits(side & g.rows[v]):
            if (min(v, w), max(v, w)) in bad:
                row |= 1 << w
        links[v] = row
    comps = []
    remaining = side
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= links[v]
            frontier = reach & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    dipoles = []
    for comp in comps:
        split = _split_component(g, comp, bad)
        if split is None:
            return DecompositionFailure("odd cycle of non-edges inside a component", tuple(iter_bits(comp)))
        a, b = split
        for pole in (a, b):
            for v in iter_bits(pole):
                if pole & ~g.closed(v):
                    return DecompositionFailure("pole is not a clique", tuple(iter_bits(pole)))
                if g.rows[v] & other != g.rows[(pole & -pole).bit_length() - 1] & other:
                    return DecompositionFailure("pole is not coupled to the other side", tuple(iter_bits(pole)))
        if a and b:
            for v in iter_bits(a):
                if g.rows[v] & b:
                    return DecompositionFailure("pole touches its antipole", (tuple(iter_bits(a)), tuple(iter_bits(b))))
            na = g.rows[(a & -a).bit_length() - 1] & other
            nb = g.rows[(b & -b).bit_length() - 1] & other
            if na != other & ~nb:
                return DecompositionFailure("poles are not anticoupled to the other side",
                                            (tuple(iter_bits(a)), tuple(iter_bits(b))))
        top, bottom = (a, b) if (a & -a) < (b & -b) or not b else (b, a)
        dipoles.append(Dipole(tuple(iter_bits(top)), tuple(iter_bits(bottom))))
    dipoles.sort(key=lambda d: min(d.vertices))
    return dipoles


def _complete(g: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    bm = mask_of(b)
    return all(g.rows[v] & bm == bm for v in a)


def _anticomplete(g: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    bm = mask_of(b)
    return all(not g.rows[v] & bm for v in a)


def dipole_decompose(g: Graph, lab: EdgeLabeling, left: Iterable[int]):
    """Split each side of (left, rest) into dipoles and classify every cross pair.

    Returns a DipoleDecomposition, or a falsy DecompositionFailure naming the
    first structural property that does not hold.  Raises DecompositionError
    if a good edge crosses between the sides.
    """
    left_mask = mask_of(left)
    right_mask = g.full_mask & ~left_mask
    for u, v in sorted(lab.good):
        if (left_mask >> u & 1) != (left_mask >> v & 1):
            raise DecompositionError(f"good edge ({u}, {v}) crosses the bipartition", (u, v))
    bad = set(lab.bad)
    ldip = _side_dipoles(g, left_mask, right_mask, bad)
    if isinstance(ldip, DecompositionFailure):
        return ldip
    rdip = _side_dipoles(g, right_mask, left_mask, bad)
    if isinstance(rdip, DecompositionFailure):
        return rdip
    matrix = []
    for i, md in enumerate(ldip):
        row = []
        for j, nd in enumerate(rdip):
            straight = (_complete(g, md.top, nd.top) and _complete(g, md.bottom, nd.bottom)
                        and _anticomplete(g, md.top, nd.bottom) and _anticomplete(g, md.bottom, nd.top))
            twisted = (_complete(g, md.top, nd.bottom) and _complete(g, md.bottom, nd.top)
                       and _anticomplete(g, md.top, nd.top) and _anticomplete(g, md.bottom, nd.bottom))
            if straight:
                row.append(STRAIGHT)
            elif twisted:
                row.append(TWISTED)
            else:
                return DecompositionFailure("dipole pair is matched neither straight nor twisted", (i, j))
        matrix.append(tuple(row))
    return DipoleDecomposition(tuple(iter_bits(left_mask)), tuple(iter_bits(right_mask)),
                               tuple(ldip), tuple(rdip), tuple(matrix))


@dataclass(frozen=True)
class TGraphSpec:
    """Complete bipartite dipole graph: ``l`` left and ``r`` right dipoles.

    ``twist[i][j]`` is True when left dipole ``i`` and right dipole ``j`` are
    matched twisted.  ``poles[d] = (top, bottom)`` sizes, left dipoles first.
    """

    l: int
    r: int
    twist: tuple[tuple[bool, ...], ...]
    poles: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.l < 0 or self.r < 0:
            raise ValueError("dipole counts must be non-negative")
        if len(self.twist) != self.l or any(len(row) != self.r for row in self.twist):
            raise ValueError(f"twist matrix must be {self.l} x {self.r}")
        if len(self.poles) != self.l + self.r:
            raise ValueError(f"need {self.l + self.r} pole-size pairs")
        for top, bottom in self.poles:
            if top < 0 or bottom < 0:
                raise ValueError("pole sizes must be non-negative")
            if top + bottom == 0:
                raise ValueError("every dipole needs a nonempty pole")

    @property
    def n(self) -> int:
        return sum(t + b for t, b in self.poles)

    @classmethod
    def uniform(cls, l: int, r: int, twisted: Iterable[tuple[int, int]], pole_size: int = 1) -> "TGraphSpec":
        tw = set(twisted)
        twist = tuple(tuple((i, j) in tw for j in range(r)) for i in range(l))
        return cls(l, r, twist, tuple((pole_size, pole_size) for _ in range(l + r)))


def k33_three_twist(k: int = 1, enlarged: bool = False) -> TGraphSpec:
    """T = K_{3,3} with a perfect matching of twisted pairs, all poles of size ``k``.

    With ``enlarged`` the top pole of the first left dipole and of the first
    right dipole get ``k + 1`` vertices (n = 12k + 2).
    """
    spec = TGraphSpec.uniform(3, 3, [(0, 0), (1, 1), (2, 2)], k)
    if not enlarged:
        return spec
    poles = list(spec.poles)
    poles[0] = (k + 1, k)
    poles[3] = (k + 1, k)
    return TGraphSpec(3, 3, spec.twist, tuple(poles))


def _pole_layout(spec: TGraphSpec) -> list[tuple[VertexSet, VertexSet]]:
    layout = []
    start = 0
    for top, bottom in spec.poles:
        t = tuple(range(start, start + top))
        b = tuple(range(start + top, start + top + bottom))
        layout.append((t, b))
        start += top + bottom
    return layout


def reconstruct_from_T(spec: TGraphSpec) -> Graph:
    layout = _pole_layout(spec)
    edges: set[Edge] = set()

    def join(a: Sequence[int], b: Sequence[int]) -> None:
        for x in a:
            for y in b:
                if x != y:
                    edges.add((min(x, y), max(x, y)))

    for top, bottom in layout:
        join(top, top)
        join(bottom, bottom)
    sides = (range(spec.l), range(spec.l, spec.l + spec.r))
    for side in sides:
        for i, j in combinations(side, 2):
            join(layout[i][0] + layout[i][1], layout[j][0] + layout[j][1])
    for i in range(spec.l):
        mt, mb = layout[i]
        for j in range(spec.r):
            nt, nb = layout[spec.l + j]
            if spec.twist[i][j]:
                join(mt, nb)
                join(mb, nt)
            else:
                join(mt, nt)
                join(mb, nb)
    return Graph.from_edges(spec.n, sorted(edges))


def t_graph_left(spec: TGraphSpec) -> VertexSet:
    layout = _pole_layout(spec)
    return tuple(v for top, bottom in layout[:spec.l] for v in top + bottom)


def t_graph_labeling(spec: TGraphSpec) -> EdgeLabeling:
    """Construction labeling (medium mode): edges joining different dipoles of a side are
    medium, pole edges and cross-side edges are bad."""
    g = reconstruct_from_T(spec)
    layout = _pole_layout(spec)
    dipole_of = {}
    for d, (top, bottom) in enumerate(layout):
        for v in top + bottom:
            dipole_of[v] = d
    left = spec.l

    def side(d: int) -> int:
        return 0 if d < left else 1

    medium = frozenset((u, v) for u, v in g.edges()
                       if dipole_of[u] != dipole_of[v] and side(dipole_of[u]) == side(dipole_of[v]))
    return EdgeLabeling(tuple(g.edges()), medium, MEDIUM)


def format_t_spec(spec: TGraphSpec) -> str:
    lines = [f"{spec.l} {spec.r}"]
    lines += ["".join(TWISTED if t else STRAIGHT for t in row) for row in spec.twist]
    lines.append(" ".join(str(x) for pair in spec.poles for x in pair))
    return "\n".join(lines) + "\n"


def parse_t_spec(text: str) -> TGraphSpec:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty T-graph spec")
    try:
        l, r = (int(x) for x in lines[0].split())
    except ValueError:
        raise ValueError(f"bad T-graph header {lines[0]!r}") from None
    rows = lines[1:1 + l]
    if len(rows) != l or any(len(row) != r or set(row) - {STRAIGHT, TWISTED} for row in rows):
        raise ValueError(f"expected {l} rows of {r} S/T characters")
    sizes = " ".join(lines[1 + l:]).split()
    if len(sizes) != 2 * (l + r):
        raise ValueError(f"expected {2 * (l + r)} pole sizes, got {len(sizes)}")
    values = [int(x) for x in sizes]
    poles = tuple((values[2 * i], values[2 * i + 1]) for i in range(l + r))
    return TGraphSpec(l, r, tuple(tuple(c == TWISTED for c in row) for row in rows), poles)


# Fixed quotient targets.  The Petersen complement is the line graph of K5:
# vertex i is the i-th 2-subset of {0..4} in lexicographic order.
K5_PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(range(5), 2))


def petersen_complement_base() -> Graph:
    return Graph.from_edges(10, [(i, j) for i, j in combinations(range(10), 2)
                                 if set(K5_PAIRS[i]) & set(K5_PAIRS[j])])


def petersen_base() -> Graph:
    return complement(petersen_complement_base())


def v8_base() -> Graph:
    """Moebius ladder on 8 vertices: the cycle 0..7 plus chords i -- i+4."""
    edges = {(min(i, (i + 1) % 8), max(i, (i + 1) % 8)) for i in range(8)}
    edges |= {(i, i + 4) for i in range(4)}
    return Graph.from_edges(8, sorted(edges))


def v8_complement_base() -> Graph:
    return complement(v8_base())


TARGETS = {
    "petersen-complement": petersen_complement_base,
    "v8-complement": v8_complement_base,
}


def find_isomorphism(a: Graph, b: Graph) -> Optional[list[int]]:
    """Mapping ``phi`` with ``a.has_edge(u, v) == b.has_edge(phi[u], phi[v])``, or None.

    Backtracking with degree filtering; meant for graphs of a dozen vertices.
    """
    if a.n != b.n or a.m != b.m:
        return None
    if sorted(a.degree(v) for v in range(a.n)) != sorted(b.degree(v) for v in range(b.n)):
        return None
    # order query vertices so each one has many already-placed neighbours
    order: list[int] = []
    placed = 0
    while len(order) < a.n:
        rest = [v for v in range(a.n) if not placed >> v & 1]
        v = max(rest, key=lambda x: ((a.rows[x] & placed).bit_count(), a.degree(x), -x))
        order.append(v)
        placed |= 1 << v
    phi = [-1] * a.n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == a.n:
            return True
        v = order[k]
        for c in range(b.n):
            if used >> c & 1 or b.degree(c) != a.degree(v):
                continue
            if all(a.has_edge(v, order[i]) == b.has_edge(c, phi[order[i]]) for i in range(k)):
                phi[v] = c
                used |= 1 << c
                if extend(k + 1):
                    return True
                used &= ~(1 << c)
                phi[v] = -1
        return False

    return phi if extend(0) else None


def quotient(g: Graph) -> tuple[Graph, list[VertexSet]]:
    """Contract every c-twin class to one vertex."""
    classes = c_twin_classes(g)
    reps = [c[0] for c in classes]
    q = Graph.from_edges(len(classes), [(i, j) for i, j in combinations(range(len(classes)), 2)
                                        if g.has_edge(reps[i], reps[j])])
    return q, classes


def recognize_blownup(g: Graph, target: str) -> Optional[dict[VertexSet, int]]:
    """Class -> target-vertex mapping if ``g`` is a c-blow-up of the named target."""
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {sorted(TARGETS)}")
    base = TARGETS[target]()
    q, classes = quotient(g)
    phi = find_isomorphism(q, base)
    if phi is None:
        return None
    return {classes[i]: phi[i] for i in range(len(classes))}
