import random
from itertools import combinations

import pytest

import oracles
from conftest import PETERSEN_COMPLEMENT, PRISM, TWO_K2, path, random_graph
from cliqueminor.generators import gen_petersen_complement
from cliqueminor.graph import Graph, antitriangle, complement, is_c_twin_edge
from cliqueminor.labeling import (BAD, GOOD, MEDIUM, AacwCertificate, CoverageError, EdgeLabeling, LabelingError,
                                  NotACliqueError, axiom_check, check_aacw, clique_cover_labeling,
                                  complement_3coloring_cliques, edge_relations, extract_aacw, format_aacw,
                                  format_labeling, labeling_certificate, parse_labeling, refine_labeling,
                                  solve_2sat, solve_2sat_labeling, untouching_pair_count)

INFEASIBLE_COMPLEMENT = [
    (0, 3), (0, 9), (0, 10), (0, 11), (1, 2), (1, 4), (1, 5), (1, 8), (1, 11), (2, 9), (2, 10), (2, 13),
    (2, 14), (3, 4), (3, 12), (3, 13), (4, 7), (4, 10), (4, 14), (5, 6), (5, 9), (5, 12), (5, 14), (6, 8),
    (6, 10), (6, 11), (6, 13), (7, 9), (7, 11), (7, 12), (7, 13), (8, 9), (8, 12), (8, 14), (10, 12), (11, 14),
]

PRISM_LAB = EdgeLabeling(tuple(PRISM.edges()), frozenset([(0, 3), (1, 4), (2, 5)]))


def antitriangle_free_graphs(seed, count, n_range=(3, 9), p=0.75):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_graph(rng, rng.randint(*n_range), p)
        if antitriangle(g) is None:
            out.append(g)
    return out


class TestAxioms:
    def test_k6_all_bad(self):
        assert axiom_check(Graph.complete(6), EdgeLabeling.all_bad(Graph.complete(6))) == []

    def test_2k2_all_good(self):
        problems = axiom_check(TWO_K2, EdgeLabeling.all_good(TWO_K2))
        assert len(problems) == 1
        assert problems[0].kind == "good-pair-untouching"
        assert {problems[0].first, problems[0].second} == {(0, 1), (2, 3)}

    def test_prism_matching_good(self):
        assert axiom_check(PRISM, PRISM_LAB) == []

    def test_open_bad_path(self):
        problems = axiom_check(path(3), EdgeLabeling.all_bad(path(3)))
        assert [p.kind for p in problems] == ["bad-path-open"]

    def test_medium_mode_ignores_good_pairs(self):
        lab = EdgeLabeling.all_good(TWO_K2, MEDIUM)
        assert axiom_check(TWO_K2, lab) == []

    def test_labels_must_be_edges(self):
        with pytest.raises(LabelingError):
            EdgeLabeling.from_labels(TWO_K2, {(0, 2): GOOD})


class TestTwoSat:
    def test_examples(self):
        lab = solve_2sat_labeling(Graph.complete(5))
        assert lab is not None and axiom_check(Graph.complete(5), lab) == []
        lab = solve_2sat_labeling(path(3))
        assert lab.good == {(0, 1), (1, 2)}
        assert axiom_check(PETERSEN_COMPLEMENT, EdgeLabeling.all_good(PETERSEN_COMPLEMENT)) == []
        assert solve_2sat_labeling(PETERSEN_COMPLEMENT) is not None

    def test_forced_labels(self):
        lab = solve_2sat_labeling(PRISM, {(0, 2): BAD, (0, 3): GOOD})
        assert lab.label((0, 2)) == BAD and lab.label((0, 3)) == GOOD
        assert solve_2sat_labeling(path(3), {(0, 1): BAD, (1, 2): BAD}) is None
        with pytest.raises(LabelingError):
            solve_2sat_labeling(path(3), {(0, 2): GOOD})

    def test_solver_on_clauses(self):
        # x0 or x1, not x0 or x1, x0 or not x1  ->  x0 = x1 = True
        assert solve_2sat(2, [(0, 2), (1, 2), (0, 3)]) == [True, True]
        assert solve_2sat(1, [(0, 0), (1, 1)]) is None

    def test_feasible_outputs_pass_axioms(self):
        for g in antitriangle_free_graphs(21, 80):
            lab = solve_2sat_labeling(g)
            if lab is None:
                assert labeling_certificate(g) is not None
            else:
                assert axiom_check(g, lab) == []


class TestAacw:
    def test_single_untouching_pair(self):
        assert extract_aacw([("a", "b")], []) is None

    def test_triangle(self):
        tri = [("a", "b"), ("b", "c"), ("a", "c")]
        cert = extract_aacw(tri, tri)
        assert cert is not None and check_aacw(cert, tri, tri) == []
        assert cert.walk == ("a", "b", "c", "a", "b", "c", "a")
        assert cert.repeat == 3 and cert.nose == "a"
        text = format_aacw(cert)
        assert text.splitlines()[1] == "nose a"

    def test_checker_rejects_broken_walks(self):
        tri = [("a", "b"), ("b", "c"), ("a", "c")]
        assert check_aacw(AacwCertificate(("a", "b", "a"), 2), tri, tri)
        assert check_aacw(AacwCertificate(("a", "b", "c", "a", "b", "c", "b"), 3), tri, tri)

    def test_duality_against_exhaustive_referee(self):
        rng = random.Random(5)
        for _ in range(300):
            k = rng.randint(1, 7)
            pairs = list(combinations(range(k), 2))
            hn = [e for e in pairs if rng.random() < 0.35]
            hb = [e for e in pairs if rng.random() < 0.35]
            cert = extract_aacw(hn, hb, range(k))
            feasible = oracles.partition_feasible(k, hn, hb)
            assert (cert is None) == feasible
            if cert is not None:
                assert check_aacw(cert, hn, hb) == []

    def test_certificate_for_infeasible_graph(self):
        # complement of a triangle-free graph, found by random search; no labeling exists
        g = complement(Graph.from_edges(15, INFEASIBLE_COMPLEMENT))
        assert antitriangle(g) is None and solve_2sat_labeling(g) is None
        rel = edge_relations(g)
        cert = labeling_certificate(g, rel)
        hn = [(rel.edges[i], rel.edges[j]) for i, j in rel.untouching]
        hb = [(rel.edges[i], rel.edges[j]) for i, j in rel.open_p3]
        assert check_aacw(cert, hn, hb) == []


class TestCliqueCover:
    def test_k5_single_clique(self):
        lab = clique_cover_labeling(Graph.complete(5), [range(5)])
        assert lab.good == frozenset(Graph.complete(5).edges())

    def test_prism_two_triangles(self):
        lab = clique_cover_labeling(PRISM, [(0, 2, 4), (1, 3, 5)])
        assert lab.good == {(0, 3), (1, 4), (2, 5)}
        assert axiom_check(PRISM, lab) == []

    def test_coverage_error_names_vertex(self):
        with pytest.raises(CoverageError) as exc:
            clique_cover_labeling(PRISM, [(0, 2, 4)])
        assert exc.value.vertex == 1

    def test_not_a_clique(self):
        with pytest.raises(NotACliqueError):
            clique_cover_labeling(PRISM, [(0, 1, 2), (3, 4, 5)])

    def test_three_colorings(self):
        assert complement_3coloring_cliques(PRISM) == [(0, 2, 4), (1, 3, 5)]
        c5c = complement(Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]))
        cl = complement_3coloring_cliques(c5c)
        assert sorted(len(c) for c in cl) == [1, 2, 2]
        assert complement_3coloring_cliques(Graph.empty(4)) is None

    def test_odd_cover_labelings_pass_axioms(self):
        rng = random.Random(8)
        for _ in range(40):
            n = rng.randint(4, 14)
            parts = [rng.randrange(3) for _ in range(n)]
            cliques = [tuple(v for v in range(n) if parts[v] == c) for c in range(3)]
            cliques = [c for c in cliques if c]
            edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                     if parts[u] == parts[v] or rng.random() < 0.5]
            g = Graph.from_edges(n, edges)
            if len(cliques) % 2 == 0:
                continue
            assert axiom_check(g, clique_cover_labeling(g, cliques)) == []


class TestRefine:
    def test_complete_graph_all_bad(self):
        for mode in ("cor1", "cor2"):
            assert refine_labeling(Graph.complete(5), mode).good == frozenset()

    def test_2k2(self):
        lab = refine_labeling(TWO_K2, "cor2")
        assert lab.good == frozenset() and untouching_pair_count(TWO_K2, lab) == 0

    def test_blown_up_petersen(self):
        g = gen_petersen_complement([2, 1, 2, 1, 3, 1, 1, 2, 1, 1])
        lab = refine_labeling(g, "cor1")
        for u, v in g.edges():
            assert (lab.label((u, v)) == BAD) == is_c_twin_edge(g, u, v)
        assert axiom_check(g, lab) == []

    def test_cor1_flip_maximal(self):
        for g in antitriangle_free_graphs(30, 60):
            try:
                lab = refine_labeling(g, "cor1")
            except LabelingError:
                continue
            assert axiom_check(g, lab) == []
            for e in lab.bad:
                if is_c_twin_edge(g, *e):
                    continue
                flipped = EdgeLabeling(lab.edges, lab.good | {e})
                assert axiom_check(g, flipped) != []

    def test_cor2_objective_never_increases(self):
        for g in antitriangle_free_graphs(31, 60):
            trace = []
            lab = refine_labeling(g, "cor2", trace=trace)
            assert lab.mode == MEDIUM and axiom_check(g, lab) == []
            assert all(b[0] <= a[0] for a, b in zip(trace, trace[1:]))
            assert all(b < a for a, b in zip(trace, trace[1:]))
            assert trace[-1] == (untouching_pair_count(g, lab), -len(lab.good))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            refine_labeling(PRISM, "cor3")


def test_labeling_text_round_trip():
    text = format_labeling(PRISM_LAB)
    assert "0 3 G" in text and "0 2 B" in text
    assert parse_labeling(PRISM, text) == PRISM_LAB
    med = refine_labeling(PRISM, "cor2")
    assert parse_labeling(PRISM, format_labeling(med)) == med
    with pytest.raises(ValueError):
        parse_labeling(PRISM, "0 1 G\n")
