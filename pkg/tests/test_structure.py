import random

import pytest

from conftest import PRISM, TWO_K2
from cliqueminor.generators import gen_petersen_complement, gen_v8_complement
from cliqueminor.graph import Graph, antitriangle, min_vertex_cut
from cliqueminor.labeling import MEDIUM, EdgeLabeling
from cliqueminor.structure import (DecompositionError, DecompositionFailure, DipoleDecomposition, TGraphSpec,
                                   dipole_decompose, find_isomorphism, format_t_spec, k33_three_twist,
                                   parse_t_spec, petersen_complement_base, recognize_blownup,
                                   reconstruct_from_T, t_graph_labeling, t_graph_left, v8_base)


def random_spec(rng):
    l, r = rng.randint(1, 3), rng.randint(1, 3)
    twist = tuple(tuple(rng.random() < 0.5 for _ in range(r)) for _ in range(l))
    poles = []
    for _ in range(l + r):
        top, bottom = rng.randint(0, 2), rng.randint(0, 2)
        if top + bottom == 0:
            top = 1
        poles.append((top, bottom))
    return TGraphSpec(l, r, twist, tuple(poles))


class TestReconstruct:
    def test_single_straight_pair(self):
        g = reconstruct_from_T(TGraphSpec.uniform(1, 1, []))
        # poles are anticomplete inside a dipole, so only the two cross edges remain
        assert g.n == 4 and g.edges() == [(0, 2), (1, 3)]

    def test_k33_three_twist(self):
        g = reconstruct_from_T(k33_three_twist(1))
        assert g.n == 12 and min_vertex_cut(g)[0] == 7

    def test_enlarged_family(self):
        g = reconstruct_from_T(k33_three_twist(2, enlarged=True))
        assert g.n == 26 and min_vertex_cut(g)[0] == 14

    def test_outputs_are_antitriangle_free(self):
        rng = random.Random(1)
        for _ in range(100):
            assert antitriangle(reconstruct_from_T(random_spec(rng))) is None

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            TGraphSpec(1, 1, ((False,),), ((0, 0), (1, 1)))
        with pytest.raises(ValueError):
            TGraphSpec(1, 1, ((False,),), ((1, -1), (1, 1)))
        with pytest.raises(ValueError):
            TGraphSpec(1, 2, ((False,),), ((1, 1), (1, 1), (1, 1)))

    def test_text_round_trip(self):
        spec = k33_three_twist(2, enlarged=True)
        text = format_t_spec(spec)
        assert text.splitlines()[:4] == ["3 3", "TSS", "STS", "SST"]
        assert parse_t_spec(text) == spec
        with pytest.raises(ValueError):
            parse_t_spec("1 1\nX\n1 1 1 1\n")


class TestDecompose:
    def test_2k2_improper_dipoles(self):
        res = dipole_decompose(TWO_K2, EdgeLabeling.all_bad(TWO_K2), [0, 1])
        assert isinstance(res, DipoleDecomposition)
        assert [(d.top, d.bottom) for d in res.left_dipoles] == [((0, 1), ())]
        assert [(d.top, d.bottom) for d in res.right_dipoles] == [((2, 3), ())]
        assert not res.left_dipoles[0].proper

    def test_k33_round_trip(self):
        spec = k33_three_twist(1)
        res = dipole_decompose(reconstruct_from_T(spec), t_graph_labeling(spec), t_graph_left(spec))
        assert res.pole_sizes() == [(1, 1)] * 6
        assert res.matrix == (("T", "S", "S"), ("S", "T", "S"), ("S", "S", "T"))

    def test_crossing_good_edge(self):
        with pytest.raises(DecompositionError) as exc:
            dipole_decompose(PRISM, EdgeLabeling.all_good(PRISM), [0, 2, 4])
        assert exc.value.edge == (0, 3)

    def test_random_round_trips(self):
        rng = random.Random(2)
        for _ in range(150):
            spec = random_spec(rng)
            g = reconstruct_from_T(spec)
            lab = t_graph_labeling(spec)
            assert lab.mode == MEDIUM
            res = dipole_decompose(g, lab, t_graph_left(spec))
            assert isinstance(res, DipoleDecomposition), res
            # swapping the poles of a dipole flips its row/column of the matrix
            flips = []
            for d, (top, bottom) in zip(res.left_dipoles + res.right_dipoles, spec.poles):
                if (len(d.top), len(d.bottom)) == (top, bottom):
                    flips.append(False)
                else:
                    assert (len(d.top), len(d.bottom)) == (bottom, top)
                    flips.append(True)
            for i in range(spec.l):
                for j in range(spec.r):
                    twisted = spec.twist[i][j] ^ flips[i] ^ flips[spec.l + j]
                    assert res.matrix[i][j] == ("T" if twisted else "S")
            # edges between different dipoles of one side are the non-bad ones
            dipole_of = {}
            for k, d in enumerate(res.left_dipoles + res.right_dipoles):
                for v in d.vertices:
                    dipole_of[v] = k
            left = set(res.left)
            for u, v in g.edges():
                same_side = (u in left) == (v in left)
                if same_side and dipole_of[u] != dipole_of[v]:
                    assert (u, v) in lab.good

    def test_failure_is_reported(self):
        # C5 with every edge bad: the non-edges inside one side form an odd cycle
        c5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        res = dipole_decompose(c5, EdgeLabeling.all_bad(c5), range(5))
        assert isinstance(res, DecompositionFailure) and not res
        assert "odd cycle" in res.reason


class TestRecognize:
    def test_identity(self):
        mapping = recognize_blownup(gen_petersen_complement([1] * 10), "petersen-complement")
        assert mapping == {(v,): v for v in range(10)}

    def test_one_double_class(self):
        g = gen_petersen_complement([2] + [1] * 9)
        mapping = recognize_blownup(g, "petersen-complement")
        assert sorted(len(c) for c in mapping) == [1] * 9 + [2]

    def test_prism_is_neither(self):
        assert recognize_blownup(PRISM, "petersen-complement") is None
        assert recognize_blownup(PRISM, "v8-complement") is None

    def test_v8(self):
        sizes = [1, 2, 1, 3, 1, 1, 2, 1]
        g = gen_v8_complement(sizes)
        mapping = recognize_blownup(g, "v8-complement")
        assert mapping is not None
        assert sorted(len(c) for c in mapping) == sorted(sizes)
        assert recognize_blownup(g, "petersen-complement") is None
        assert antitriangle(v8_base().__class__.complete(3)) is None

    def test_mapping_is_an_isomorphism_after_relabeling(self):
        rng = random.Random(3)
        base = petersen_complement_base()
        for _ in range(10):
            sizes = [rng.randint(1, 3) for _ in range(10)]
            g = gen_petersen_complement(sizes)
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            mapping = recognize_blownup(h, "petersen-complement")
            assert mapping is not None
            reps = {target: cls[0] for cls, target in mapping.items()}
            for a in range(10):
                for b in range(a + 1, 10):
                    assert h.has_edge(reps[a], reps[b]) == base.has_edge(a, b)

    def test_unknown_target(self):
        with pytest.raises(ValueError):
            recognize_blownup(PRISM, "k5")

    def test_find_isomorphism_rejects(self):
        assert find_isomorphism(PRISM, Graph.complete(6)) is None
