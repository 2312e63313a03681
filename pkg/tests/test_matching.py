import random

import pytest

import oracles
from conftest import CUTSET_DEMO, random_graph
from cliqueminor.graph import Graph
from cliqueminor.labeling import MEDIUM
from cliqueminor.matching import hall_matching, max_matching, odd_components_after
from cliqueminor.structure import k33_three_twist, reconstruct_from_T, t_graph_labeling, t_graph_left


def check_result(g, res):
    used = set()
    for u, v in res.pairs:
        assert g.has_edge(u, v)
        assert u not in used and v not in used
        used |= {u, v}
    assert len(res.odd_components) - len(res.certificate) == g.n - 2 * res.size
    assert [set(c) for c in res.odd_components] == [set(c) for c in odd_components_after(g, res.certificate)]


def test_k4():
    res = max_matching(Graph.complete(4))
    assert res.size == 2 and res.certificate == () and res.is_perfect(4)


def test_star():
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    res = max_matching(star)
    assert res.size == 1 and res.certificate == (0,)
    assert len(res.odd_components) == 3 and res.deficiency == 2


def test_medium_graph_of_enlarged_family():
    spec = k33_three_twist(2, enlarged=True)
    g = reconstruct_from_T(spec)
    lab = t_graph_labeling(spec)
    assert lab.mode == MEDIUM and g.n == 26
    medium = Graph.from_edges(g.n, sorted(lab.good))
    res = max_matching(medium)
    left = set(t_graph_left(spec))
    right = set(range(g.n)) - left
    comps = [set(c) for c in res.odd_components]
    assert left in comps and right in comps
    assert not res.is_perfect(g.n) and res.deficiency >= 2
    check_result(medium, res)


def test_matching_against_brute_force():
    rng = random.Random(11)
    for _ in range(150):
        g = random_graph(rng, rng.randint(0, 10), rng.choice([0.2, 0.4, 0.6, 0.9]))
        res = max_matching(g)
        check_result(g, res)
        assert res.size == oracles.matching_number(g)
        assert res.deficiency == oracles.max_deficiency(g)


def test_matching_size_invariant_under_relabeling():
    rng = random.Random(12)
    for _ in range(50):
        g = random_graph(rng, rng.randint(2, 14), 0.3)
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert max_matching(g).size == max_matching(g.relabel(perm)).size


def test_hall_examples():
    g = Graph.from_edges(2, [(0, 1)])
    assert hall_matching(g, [0], [1]).matching == ((0, 1),)
    g = Graph.from_edges(3, [(0, 2), (1, 2)])
    res = hall_matching(g, [0, 1], [2])
    assert not res.ok and res.violator == (0, 1)
    # min-saturation accepts one pair here
    assert hall_matching(g, [0, 1], [2], saturate="min").matching in (((0, 2),), ((1, 2),))
    res = hall_matching(CUTSET_DEMO, [4], [2, 3])
    assert res.matching == ((4, 2),)


def test_hall_certificates_are_genuine():
    rng = random.Random(13)
    for _ in range(300):
        g = random_graph(rng, rng.randint(2, 10), rng.choice([0.2, 0.4, 0.6]))
        verts = list(range(g.n))
        rng.shuffle(verts)
        k = rng.randint(1, g.n - 1)
        a, b = verts[:k], verts[k:]
        for mode in ("a", "min"):
            res = hall_matching(g, a, b, saturate=mode)
            assert (res.matching is None) != (res.violator is None)
            if res.ok:
                want = len(a) if mode == "a" else min(len(a), len(b))
                assert len(res.matching) == want
                assert len({x for x, _ in res.matching}) == len({y for _, y in res.matching}) == want
                assert all(x in a and y in b and g.has_edge(x, y) for x, y in res.matching)
            else:
                s = set(res.violator)
                nb = {y for x in s for y in b if g.has_edge(x, y)}
                assert s <= set(a) and len(s) > len(nb)


def test_hall_rejects_overlap():
    with pytest.raises(ValueError):
        hall_matching(Graph.complete(3), [0, 1], [1, 2])
