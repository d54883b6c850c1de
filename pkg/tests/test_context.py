import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convneg.context import (
    EntailmentGraph,
    HypernymHierarchy,
    WeightFunction,
    WeightKind,
    build_entailment_graph,
    graph_context_provider,
    hierarchy_context_provider,
    hypernym_weights,
    load_entailment_graph,
    load_hierarchy,
    save_entailment_graph,
    worldly_context_graph,
    worldly_context_hierarchy,
)
from convneg.entailment import k_e
from convneg.errors import (
    DuplicateWordError,
    IsolatedWordError,
    MissingMatrixError,
    ParseError,
    SelfReferenceError,
    UnknownWordError,
    ZeroMatrixError,
)
from convneg.spectral import Dmat


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadHierarchy:
    def test_basic_parse(self, tmp_path):
        path = write(tmp_path, "h.tsv", "apple\tfruit,food,entity\n")
        hierarchy = load_hierarchy(path)
        assert hierarchy.hypernyms("apple") == ("fruit", "food", "entity")

    def test_comments_and_blanks_ignored(self, tmp_path):
        path = write(tmp_path, "h.tsv", "# comment\n\napple\tfruit\n")
        assert "apple" in load_hierarchy(path)

    def test_empty_hypernym_list_rejected(self, tmp_path):
        path = write(tmp_path, "h.tsv", "apple\t\n")
        with pytest.raises(ParseError):
            load_hierarchy(path)

    def test_self_reference_rejected(self, tmp_path):
        path = write(tmp_path, "h.tsv", "x\ty,x\n")
        with pytest.raises(SelfReferenceError):
            load_hierarchy(path)

    def test_duplicate_word_rejected(self, tmp_path):
        path = write(tmp_path, "h.tsv", "a\tb\na\tc\n")
        with pytest.raises(DuplicateWordError) as err:
            load_hierarchy(path)
        assert err.value.line_number == 2

    def test_unknown_word_lookup(self, tmp_path):
        hierarchy = load_hierarchy(write(tmp_path, "h.tsv", "a\tb\n"))
        with pytest.raises(UnknownWordError):
            hierarchy.hypernyms("zzz")

    def test_hyponym_sets_invert_paths(self, tmp_path):
        path = write(tmp_path, "h.tsv", "apple\tfruit,entity\nfig\tfruit,entity\n")
        sets = load_hierarchy(path).hyponym_sets()
        assert sets["fruit"] == {"apple", "fig"}
        assert sets["entity"] == {"apple", "fig"}


HIERARCHY = HypernymHierarchy({"w": ("h1", "h2", "h3")})


class TestHypernymWeights:
    def test_poly(self):
        weights = hypernym_weights(WeightFunction(WeightKind.POLY, 2.0), "w", HIERARCHY)
        np.testing.assert_allclose(weights, [0.8, 0.2, 0.0])

    def test_exp(self):
        weights = hypernym_weights(WeightFunction(WeightKind.EXP, 10.0), "w", HIERARCHY)
        np.testing.assert_allclose(weights, [4 / 7, 2 / 7, 1 / 7])

    def test_hyp_at_zero_is_pure_entailment(self, onb, fruit_raw):
        lexicon = {
            "w": onb["apple"],
            "h1": fruit_raw,
            "h2": onb["orange"],
            "h3": onb["movie"],
        }
        weights = hypernym_weights(WeightFunction(WeightKind.HYP, 0.0), "w", HIERARCHY, lexicon)
        raw = np.array([k_e(onb["apple"], fruit_raw),
                        k_e(onb["apple"], onb["orange"]),
                        k_e(onb["apple"], onb["movie"])])
        np.testing.assert_allclose(weights, raw / raw.sum(), atol=1e-12)

    def test_hyp_requires_lexicon(self):
        with pytest.raises(MissingMatrixError):
            hypernym_weights(WeightFunction(WeightKind.HYP, 1.0), "w", HIERARCHY)

    def test_negative_parameter_rejected(self):
        with pytest.raises(ValueError):
            WeightFunction(WeightKind.POLY, -1.0)

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(2, 8), x=st.floats(0.0, 6.0))
    def test_poly_exp_non_increasing(self, n, x):
        hierarchy = HypernymHierarchy({"w": tuple(f"h{i}" for i in range(n))})
        for kind in (WeightKind.POLY, WeightKind.EXP):
            weights = hypernym_weights(WeightFunction(kind, x), "w", hierarchy)
            assert np.all(np.diff(weights) <= 1e-12)
            if weights.sum() > 0:
                assert weights.sum() == pytest.approx(1.0)


class TestWorldlyContextHierarchy:
    def test_single_hypernym_passthrough(self, onb):
        hierarchy = HypernymHierarchy({"apple": ("h",)})
        lexicon = {"apple": onb["apple"], "h": onb["orange"]}
        out = worldly_context_hierarchy("apple", hierarchy, lexicon, WeightFunction(WeightKind.EXP, 5.0))
        np.testing.assert_allclose(out.matrix, onb["orange"].matrix, atol=1e-12)

    def test_hand_set_toy_context(self, onb, fruit_raw):
        # the worked mixture (1/2, 1/3, 1/6) rescales so the top eigenvalue is 1
        from convneg.spectral import rescale_max_eig

        out = rescale_max_eig(fruit_raw)
        np.testing.assert_allclose(out.matrix, np.diag([1.0, 2 / 3, 1 / 3, 0.0]), atol=1e-12)

    def test_poly_weights_pure_states(self):
        # weights (0.8, 0.2, 0) over orthogonal pure states, rescaled to top 1
        hierarchy = HypernymHierarchy({"w": ("e0", "e1", "e2")})
        basis = np.eye(3)
        lexicon = {f"e{i}": Dmat(np.outer(basis[i], basis[i])) for i in range(3)}
        out = worldly_context_hierarchy("w", hierarchy, lexicon, WeightFunction(WeightKind.POLY, 2.0))
        np.testing.assert_allclose(out.matrix, np.diag([1.0, 0.25, 0.0]), atol=1e-12)

    def test_all_weights_vanish(self, onb):
        # a single hypernym under poly with positive exponent weighs zero
        hierarchy = HypernymHierarchy({"apple": ("h",)})
        lexicon = {"apple": onb["apple"], "h": onb["orange"]}
        with pytest.raises(ZeroMatrixError):
            worldly_context_hierarchy("apple", hierarchy, lexicon, WeightFunction(WeightKind.POLY, 2.0))

    def test_missing_matrix(self, onb):
        hierarchy = HypernymHierarchy({"apple": ("ghost",)})
        with pytest.raises(MissingMatrixError):
            worldly_context_hierarchy("apple", hierarchy, {"apple": onb["apple"]},
                                      WeightFunction(WeightKind.EXP, 5.0))

    def test_equal_pure_hypernyms_reduce_to_the_state(self, onb):
        hierarchy = HypernymHierarchy({"w": ("h", "h2", "h3")})
        lexicon = {"h": onb["orange"], "h2": onb["orange"], "h3": onb["orange"]}
        for kind, x in ((WeightKind.POLY, 3.0), (WeightKind.EXP, 7.0)):
            out = worldly_context_hierarchy("w", hierarchy, lexicon, WeightFunction(kind, x))
            np.testing.assert_allclose(out.matrix, onb["orange"].matrix, atol=1e-12)

    def test_output_normalized(self, onb, fruit_raw):
        hierarchy = HypernymHierarchy({"apple": ("fruit", "orange")})
        lexicon = {"apple": onb["apple"], "fruit": fruit_raw, "orange": onb["orange"]}
        out = worldly_context_hierarchy("apple", hierarchy, lexicon, WeightFunction(WeightKind.EXP, 10.0))
        assert out.normalized
        assert out.max_eigenvalue() == pytest.approx(1.0, abs=1e-9)


class TestEntailmentGraph:
    def test_two_word_graph_weights(self, onb, fruit_raw):
        lexicon = {"apple": onb["apple"], "fruit": fruit_raw}
        graph = build_entailment_graph(lexicon, measure="k_E")
        assert graph.weight("apple", "fruit") == pytest.approx(0.5, abs=1e-12)
        assert graph.weight("fruit", "apple") == pytest.approx(
            k_e(fruit_raw, onb["apple"]), abs=1e-12
        )

    def test_high_threshold_empties_graph(self, onb, fruit_raw):
        lexicon = {"apple": onb["apple"], "fruit": fruit_raw}
        assert len(build_entailment_graph(lexicon, "k_E", threshold=1.1)) == 0

    def test_single_word_no_self_loops(self, onb):
        assert len(build_entailment_graph({"apple": onb["apple"]}, "k_E")) == 0

    def test_parallel_matches_serial(self, onb, fruit_raw):
        lexicon = {"apple": onb["apple"], "orange": onb["orange"], "fruit": fruit_raw}
        serial = build_entailment_graph(lexicon, "k_E")
        parallel = build_entailment_graph(lexicon, "k_E", workers=4)
        assert serial.edges == parallel.edges

    def test_round_trip_file(self, tmp_path, onb, fruit_raw):
        lexicon = {"apple": onb["apple"], "fruit": fruit_raw}
        graph = build_entailment_graph(lexicon, "k_E")
        path = tmp_path / "graph.tsv"
        save_entailment_graph(graph, path)
        loaded = load_entailment_graph(path)
        assert set(loaded.edges) == set(graph.edges)
        for key, w in graph.edges.items():
            assert loaded.edges[key] == pytest.approx(w, rel=1e-8)


class TestWorldlyContextGraph:
    def test_single_neighbor_weight_cancels(self, onb):
        graph = EntailmentGraph({("w", "h"): 0.5})
        out = worldly_context_graph("w", graph, {"h": onb["orange"]})
        np.testing.assert_allclose(out.matrix, onb["orange"].matrix, atol=1e-12)

    def test_zero_combiner_rejected(self, onb):
        graph = EntailmentGraph({("w", "h"): 0.5})
        with pytest.raises(ZeroMatrixError):
            worldly_context_graph("w", graph, {"h": onb["orange"]}, combiner=lambda p, q: 0.0)

    def test_isolated_word(self, onb):
        with pytest.raises(IsolatedWordError):
            worldly_context_graph("w", EntailmentGraph({}), {"h": onb["orange"]})

    def test_two_orthogonal_neighbors(self):
        basis = np.eye(3)
        lexicon = {f"e{i}": Dmat(np.outer(basis[i], basis[i])) for i in range(2)}
        graph = EntailmentGraph({("w", "e0"): 0.6, ("w", "e1"): 0.3})
        out = worldly_context_graph("w", graph, lexicon)
        np.testing.assert_allclose(out.matrix, np.diag([1.0, 0.5, 0.0]), atol=1e-12)

    def test_matches_hierarchy_context_on_fixture(self, onb):
        # a graph whose outgoing weights equal the hierarchy weights reproduces
        # the hierarchy context
        hierarchy = HypernymHierarchy({"w": ("apple", "orange", "fig")})
        lexicon = dict(onb)
        weights = hypernym_weights(WeightFunction(WeightKind.EXP, 10.0), "w", hierarchy)
        graph = EntailmentGraph({("w", h): float(p) for h, p in zip(("apple", "orange", "fig"), weights)})
        via_graph = worldly_context_graph("w", graph, lexicon)
        via_hierarchy = worldly_context_hierarchy("w", hierarchy, lexicon, WeightFunction(WeightKind.EXP, 10.0))
        np.testing.assert_allclose(via_graph.matrix, via_hierarchy.matrix, atol=1e-10)


class TestProviders:
    def test_hierarchy_provider(self, onb, fruit_raw):
        hierarchy = HypernymHierarchy({"apple": ("fruit",)})
        lexicon = {"apple": onb["apple"], "fruit": fruit_raw}
        provider = hierarchy_context_provider(hierarchy, lexicon, WeightFunction(WeightKind.EXP, 5.0))
        np.testing.assert_allclose(
            provider("apple").matrix, np.diag([1.0, 2 / 3, 1 / 3, 0.0]), atol=1e-12
        )

    def test_graph_provider(self, onb):
        graph = EntailmentGraph({("apple", "orange"): 0.7})
        provider = graph_context_provider(graph, {"orange": onb["orange"]})
        np.testing.assert_allclose(provider("apple").matrix, onb["orange"].matrix, atol=1e-12)
