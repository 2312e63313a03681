"""Brute-force reference implementations used only by the tests.

Everything here works on plain adjacency sets built from ``g.edges()`` and
enumerates; nothing calls into the package's algorithms.
"""

from __future__ import annotations

from itertools import combinations, product
from math import comb


def adjacency(g):
    adj = {v: set() for v in range(g.n)}
    for u, v in g.edges():
        adj[u].add(v)
        adj[v].add(u)
    return adj


def components_of(adj, vertices):
    vertices = set(vertices)
    seen, comps = set(), []
    for s in sorted(vertices):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            x = stack.pop()
            for y in adj[x] & vertices:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(comp)
    return comps


def has_antitriangle(g):
    adj = adjacency(g)
    return any(b not in adj[a] and c not in adj[a] and c not in adj[b]
               for a, b, c in combinations(range(g.n), 3))


def min_cut_size(g):
    """Smallest S leaving at least two components; None for complete graphs."""
    adj = adjacency(g)
    n = g.n
    if all(len(adj[v]) == n - 1 for v in range(n)):
        return None
    for k in range(n):
        for s in combinations(range(n), k):
            rest = set(range(n)) - set(s)
            if len(components_of(adj, rest)) > 1:
                return k
    return None  # pragma: no cover


def matching_number(g):
    edges = g.edges()

    def best(i, used):
        if i == len(edges):
            return 0
        u, v = edges[i]
        skip = best(i + 1, used)
        if u in used or v in used:
            return skip
        return max(skip, 1 + best(i + 1, used | {u, v}))

    return best(0, frozenset())


def max_deficiency(g):
    """max over S of odd(G - S) - |S|."""
    adj = adjacency(g)
    best = -g.n
    for k in range(g.n + 1):
        for s in combinations(range(g.n), k):
            rest = set(range(g.n)) - set(s)
            odd = sum(1 for c in components_of(adj, rest) if len(c) % 2)
            best = max(best, odd - k)
    return best


def clique_number(g):
    adj = adjacency(g)
    for k in range(g.n, 0, -1):
        for s in combinations(range(g.n), k):
            if all(b in adj[a] for a, b in combinations(s, 2)):
                return k
    return 0


def partition_feasible(k, hn, hb):
    """Exhaustive referee for the good/bad partition of ``k`` items."""
    for bits in product((True, False), repeat=k):   # True = good
        if all(not (bits[a] and bits[b]) for a, b in hn) and all(bits[a] or bits[b] for a, b in hb):
            return True
    return False


def connected(adj, s):
    return len(components_of(adj, s)) == 1


def max_minor(g, max_size):
    """Largest family of disjoint, connected, pairwise touching sets of size <= max_size."""
    adj = adjacency(g)
    sets = [frozenset(s) for k in range(1, max_size + 1) for s in combinations(range(g.n), k)
            if connected(adj, s)]

    def touch(a, b):
        return any(y in adj[x] for x in a for y in b)

    best = 0

    def grow(chosen, start, used):
        nonlocal best
        best = max(best, len(chosen))
        for i in range(start, len(sets)):
            s = sets[i]
            if s & used or not all(touch(s, c) for c in chosen):
                continue
            grow(chosen + [s], i + 1, used | s)

    grow([], 0, frozenset())
    return best


def vedges(g):
    """Induced 3-vertex subgraphs with exactly one edge."""
    adj = adjacency(g)
    return sum(1 for t in combinations(range(g.n), 3)
               if sum(1 for a, b in combinations(t, 2) if b in adj[a]) == 1)


def vedges_by_vertex_literal(g):
    return sum(comb(g.n - len(adjacency(g)[v]), 2) for v in range(g.n))


def vedges_by_vertex_corrected(g):
    adj = adjacency(g)
    return sum(comb(g.n - 1 - len(adj[v]), 2) for v in range(g.n))


def vedges_by_edge(g):
    """Sum over edges of the number of vertices touching neither end."""
    adj = adjacency(g)
    total = 0
    for u, v in g.edges():
        total += sum(1 for x in range(g.n) if x not in (u, v) and x not in adj[u] and x not in adj[v])
    return total


def fixed_partition_probability(n, p):
    """Exact probability by summing over all graphs on n vertices (n small, odd)."""
    pairs = list(combinations(range(n), 2))
    d = (n - 1) // 2
    parts = [(2 * i, 2 * i + 1) for i in range(d)] + [(n - 1,)]
    total = 0.0
    for bits in product((0, 1), repeat=len(pairs)):
        edges = {e for e, b in zip(pairs, bits) if b}
        ok = all((a, b) in edges for a, b in parts[:-1])
        ok = ok and all(any((min(x, y), max(x, y)) in edges for x in A for y in B)
                        for A, B in combinations(parts, 2))
        if ok:
            k = sum(bits)
            total += p**k * (1 - p) ** (len(pairs) - k)
    return total
