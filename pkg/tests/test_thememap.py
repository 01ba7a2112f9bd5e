import numpy as np
import pytest

from tests._oracles import (average_linkage_oracle, check_layout_invariants,
                            jaccard_oracle, tree_merge_sets)
from tests._synth import random_similarity
from themescope.artifacts import artifact_bytes
from themescope.errors import ConfigError, DataError, NotFoundError
from themescope.thememap import (THEME_MAP_FORMAT, agglomerative_cluster,
                                 assign_colors, build_theme_map, hex_layout,
                                 load_theme_map, map_payload, save_theme_map,
                                 theme_cooccurrence)


def assert_matches_oracle(s, target=None, cut_height=None):
    tree = agglomerative_cluster(s, target=target, cut_height=cut_height)
    oracle = average_linkage_oracle(s, target=target, cut_height=cut_height)
    got_merges = tree_merge_sets(tree)
    assert [(l, r) for l, r, _ in got_merges] == \
        [(l, r) for l, r, _ in oracle["merges"]]
    for (_, _, gh), (_, _, oh) in zip(got_merges, oracle["merges"]):
        assert gh == pytest.approx(oh, abs=1e-9)
    assert tree.kept_merges == oracle["kept"]
    assert tree.cluster_of == oracle["cluster_of"]
    assert tree.n_clusters == len(oracle["partition"])
    return tree


class TestCooccurrence:
    def test_identical_paper_sets_give_unit_similarity(self):
        weights = np.array([
            [0.5, 0.5, 0.0],
            [0.4, 0.6, 0.0],
            [0.0, 0.0, 1.0],
        ])
        sim = theme_cooccurrence(weights, tau=0.1).matrix
        assert sim[0, 1] == 1.0

    def test_disjoint_paper_sets_give_zero(self):
        weights = np.array([
            [0.9, 0.0, 0.1],
            [0.0, 0.9, 0.1],
        ])
        sim = theme_cooccurrence(weights, tau=0.5).matrix
        assert sim[0, 1] == 0.0

    def test_threshold_is_inclusive(self):
        weights = np.array([[0.25, 0.75]])
        result = theme_cooccurrence(weights, tau=0.25)
        assert result.empty_themes == ()
        assert result.matrix[0, 1] == 1.0

    def test_matches_set_oracle(self):
        rng = np.random.default_rng(42)
        raw = rng.dirichlet(np.ones(6), size=20)
        result = theme_cooccurrence(raw, tau=0.05)
        assert np.array_equal(result.matrix, jaccard_oracle(raw, 0.05))

    def test_empty_themes_reported_with_unit_diagonal(self):
        weights = np.array([
            [0.98, 0.01, 0.01],
            [0.97, 0.02, 0.01],
        ])
        result = theme_cooccurrence(weights, tau=0.5)
        assert result.empty_themes == (1, 2)
        assert result.matrix[1, 1] == 1.0
        assert result.matrix[1, 0] == 0.0
        assert result.matrix[1, 2] == 0.0

    def test_validation(self):
        with pytest.raises(ConfigError):
            theme_cooccurrence(np.ones((2, 2)), tau=0.0)
        with pytest.raises(ConfigError):
            theme_cooccurrence(np.ones((2, 2)), tau=1.0)
        with pytest.raises(DataError):
            theme_cooccurrence(np.ones(3), tau=0.5)


class TestClustering:
    def test_highest_similarity_merges_first(self):
        s = np.full((3, 3), 0.1)
        np.fill_diagonal(s, 1.0)
        s[0, 1] = s[1, 0] = 0.9
        tree = agglomerative_cluster(s)
        assert (tree.merges[0].left, tree.merges[0].right) == (0, 1)
        assert tree.merges[0].height == pytest.approx(0.1)

    def test_all_equal_similarities_follow_tie_order(self):
        s = np.full((4, 4), 0.5)
        np.fill_diagonal(s, 1.0)
        tree = assert_matches_oracle(s)
        merge_sets = tree_merge_sets(tree)
        assert [(sorted(l), sorted(r)) for l, r, _ in merge_sets] == [
            ([0], [1]), ([0, 1], [2]), ([0, 1, 2], [3])]
        assert [m.height for m in tree.merges] == [0.5, 0.5, 0.5]
        assert tree.kept_merges == 1
        assert tree.cluster_of == (0, 0, 1, 2)

    def test_eight_themes_target_three_matches_oracle(self):
        rng = np.random.default_rng(7)
        assert_matches_oracle(random_similarity(rng, 8), target=3)

    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
    def test_random_matrices_match_oracle(self, seed):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(8, 16))
        s = random_similarity(rng, k)
        assert_matches_oracle(s)
        assert_matches_oracle(s, target=int(rng.integers(1, k + 1)))
        assert_matches_oracle(s, cut_height=float(rng.uniform(0.2, 0.9)))

    def test_two_scale_matrix_cut_variants(self):
        s = np.full((4, 4), 0.1)
        np.fill_diagonal(s, 1.0)
        s[0, 1] = s[1, 0] = 0.9
        s[2, 3] = s[3, 2] = 0.8
        by_gap = agglomerative_cluster(s)
        assert by_gap.n_clusters == 2
        assert by_gap.cluster_of == (0, 0, 1, 1)
        by_height = agglomerative_cluster(s, cut_height=0.5)
        assert by_height.cluster_of == (0, 0, 1, 1)
        by_target = agglomerative_cluster(s, target=4)
        assert by_target.n_clusters == 4
        assert by_target.cluster_of == (0, 1, 2, 3)

    def test_heights_non_decreasing(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            tree = agglomerative_cluster(random_similarity(rng, 12))
            heights = [m.height for m in tree.merges]
            assert heights == sorted(heights)
            assert len(tree.merges) == 11

    def test_small_matrices_form_single_cluster_by_default(self):
        two = np.array([[1.0, 0.2], [0.2, 1.0]])
        tree = agglomerative_cluster(two)
        assert tree.n_clusters == 1
        one = agglomerative_cluster(np.array([[1.0]]))
        assert one.n_clusters == 1
        assert one.merges == ()

    def test_cluster_ids_ordered_by_smallest_theme(self):
        rng = np.random.default_rng(3)
        tree = agglomerative_cluster(random_similarity(rng, 10), target=4)
        firsts = []
        seen = set()
        for theme, cid in enumerate(tree.cluster_of):
            if cid not in seen:
                seen.add(cid)
                firsts.append(cid)
        assert firsts == sorted(firsts)

    def test_target_validation(self):
        s = random_similarity(np.random.default_rng(0), 5)
        with pytest.raises(ConfigError):
            agglomerative_cluster(s, target=0)
        with pytest.raises(ConfigError):
            agglomerative_cluster(s, target=6)

    def test_similarity_validation(self):
        bad = np.array([[1.0, 0.5], [0.4, 1.0]])
        with pytest.raises(DataError, match="symmetric"):
            agglomerative_cluster(bad)
        with pytest.raises(DataError, match="diagonal"):
            agglomerative_cluster(np.array([[0.5, 0.2], [0.2, 1.0]]))
        with pytest.raises(DataError, match="square"):
            agglomerative_cluster(np.ones((2, 3)))
        over = np.array([[1.0, 1.5], [1.5, 1.0]])
        with pytest.raises(DataError, match="lie in"):
            agglomerative_cluster(over)


class TestLayout:
    def test_single_theme_at_origin(self):
        tree = agglomerative_cluster(np.array([[1.0]]))
        layout = hex_layout(tree)
        assert layout.coords == ((0, 0),)

    def test_seven_theme_cluster_fills_center_and_ring(self):
        s = np.full((7, 7), 0.6)
        np.fill_diagonal(s, 1.0)
        tree = agglomerative_cluster(s, target=1)
        layout = hex_layout(tree)
        cells = set(layout.coords)
        assert (0, 0) in cells
        assert len(cells) == 7
        assert all(abs(q) <= 1 and abs(r) <= 1 and abs(q + r) <= 1
                   for q, r in cells)

    def test_deterministic(self):
        rng = np.random.default_rng(5)
        s = random_similarity(rng, 9)
        tree = agglomerative_cluster(s, target=3)
        assert hex_layout(tree) == hex_layout(tree)

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_invariants_on_random_trees(self, seed):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(8, 30))
        target = int(rng.integers(2, max(3, k // 2)))
        tree = agglomerative_cluster(random_similarity(rng, k), target=target)
        layout = hex_layout(tree)
        check_layout_invariants(layout)
        assert len(layout.colors) == tree.n_clusters
        assert len(layout.centroids) == tree.n_clusters

    def test_colors_distinct_per_cluster(self):
        rng = np.random.default_rng(8)
        tree = agglomerative_cluster(random_similarity(rng, 12), target=5)
        colors = assign_colors(tree)
        assert len(set(colors)) == 5


class TestThemeMapArtifact:
    def test_build_links_model_and_exposes_themes(self, medium_model,
                                                  artifact_dir, medium_map):
        assert medium_map.model_hash == medium_model.content_hash
        assert medium_map.k == medium_model.k
        assert medium_map.theme_ids == tuple(range(medium_model.k))
        for t in range(medium_model.k):
            theme = medium_map.theme(t)
            assert theme.theme_id == t
            assert len(theme.top_terms) <= 30
        with pytest.raises(NotFoundError):
            medium_map.theme(medium_model.k)

    def test_theme_color_lookup(self, medium_map):
        for pos, theme_id in enumerate(medium_map.theme_ids):
            cid = medium_map.layout.cluster_of[pos]
            assert medium_map.theme_color(theme_id) == medium_map.layout.colors[cid]
        assert medium_map.theme_color(999) is None

    def test_payload_schema(self, medium_map, medium_model):
        payload = map_payload(medium_map)
        assert payload["k"] == medium_model.k
        assert payload["model_hash"] == medium_map.model_hash
        assert len(payload["themes"]) == medium_model.k
        assert len(payload["merges"]) == medium_model.k - 1
        assert payload["n_clusters"] == len(payload["clusters"])
        for record in payload["themes"]:
            assert set(record) == {"theme_id", "label", "top_terms",
                                   "cluster", "q", "r", "color"}
            cluster = payload["clusters"][record["cluster"]]
            assert record["color"] == cluster["color"]
            assert record["theme_id"] in cluster["themes"]
        sim = np.asarray(payload["similarity"])
        assert sim.shape == (medium_model.k, medium_model.k)

    def test_round_trip(self, medium_map, tmp_path):
        path = tmp_path / "map.json"
        sha = save_theme_map(medium_map, path)
        loaded = load_theme_map(path)
        assert loaded.content_hash == sha
        assert loaded.tau == medium_map.tau
        assert loaded.model_hash == medium_map.model_hash
        assert loaded.tree == medium_map.tree
        assert loaded.layout == medium_map.layout
        assert loaded.themes == medium_map.themes
        assert loaded.empty_themes == medium_map.empty_themes
        assert np.array_equal(loaded.similarity, medium_map.similarity)

    def test_build_is_deterministic(self, medium_model, artifact_dir):
        a = build_theme_map(medium_model)
        b = build_theme_map(medium_model)
        assert artifact_bytes(THEME_MAP_FORMAT, map_payload(a)) == \
            artifact_bytes(THEME_MAP_FORMAT, map_payload(b))

    def test_layout_invariants_hold(self, medium_map):
        check_layout_invariants(medium_map.layout, require_separation=False)
