import json
import random

import pytest

from dsramsey.constructions import lemma_2col, proper_blowup_bipartite, small_even
from dsramsey.graph import (
    BipartiteColoring,
    Claim,
    ColoringError,
    CompleteColoring,
    DoubleStarPattern,
    Graph,
    Provenance,
    Witness,
    WitnessFormatError,
    color_degree,
    deserialize_witness,
    pair_index,
    serialize_witness,
)


def random_complete(rng, n_vertices, r):
    return CompleteColoring(n_vertices, r, tuple(rng.randint(1, r) for _ in range(n_vertices * (n_vertices - 1) // 2)))


def random_bipartite(rng, x, y, r):
    return BipartiteColoring(x, y, r, tuple(rng.randint(1, r) for _ in range(x * y)))


class TestPattern:
    def test_order(self):
        assert DoubleStarPattern(3, 2).order == 7

    @pytest.mark.parametrize("n,m", [(1, 0), (0, 0), (1, 2)])
    def test_rejects(self, n, m):
        with pytest.raises(ValueError):
            DoubleStarPattern(n, m)


class TestColorDegree:
    def test_single_edge(self):
        c = CompleteColoring.monochromatic(2, 1)
        assert color_degree(c, 0, 1) == 1

    def test_proper_k22(self):
        c = BipartiteColoring.from_function(2, 2, 2, lambda x, y: (x + y) % 2 + 1)
        for v in range(4):
            for i in (1, 2):
                assert color_degree(c, v, i) == 1
        assert color_degree(c, ("y", 1), 2) == 1

    def test_lemma_block_y_side(self):
        c = lemma_2col(4, 4, 2)
        assert all(color_degree(c, ("y", k), 2) == 2 for k in range(4))

    @pytest.mark.parametrize("args", [(5, 1), (0, 3), (-1, 1), (0, 0)])
    def test_out_of_range(self, args):
        c = CompleteColoring.monochromatic(3, 2)
        v, i = args
        with pytest.raises(ValueError):
            color_degree(c, v, i)

    def test_bad_side(self):
        c = BipartiteColoring.monochromatic(2, 2, 1)
        with pytest.raises(ValueError):
            color_degree(c, ("z", 0), 1)
        with pytest.raises(ValueError):
            color_degree(c, ("y", 2), 1)

    def test_degree_sums(self):
        rng = random.Random(1)
        for _ in range(50):
            c = random_complete(rng, rng.randint(2, 9), rng.randint(1, 4))
            for v in range(c.n_vertices):
                assert sum(color_degree(c, v, i) for i in range(1, c.r + 1)) == c.n_vertices - 1
            b = random_bipartite(rng, rng.randint(1, 6), rng.randint(1, 6), rng.randint(1, 4))
            for v in range(b.num_vertices):
                total = sum(b.view(i).degree(v) for i in range(1, b.r + 1))
                assert total == (b.y_size if v < b.x_size else b.x_size)


class TestColorings:
    def test_pair_index_matches_storage(self):
        n = 7
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        assert [pair_index(u, v, n) for u, v in pairs] == list(range(len(pairs)))
        assert pair_index(5, 2, n) == pair_index(2, 5, n)

    def test_symmetric_lookup(self):
        c = CompleteColoring.from_function(5, 3, lambda u, v: (u + 2 * v) % 3 + 1)
        for u in range(5):
            for v in range(u + 1, 5):
                assert c.color(u, v) == c.color(v, u) == (u + 2 * v) % 3 + 1

    def test_rejects_bad_colors(self):
        with pytest.raises(ColoringError, match=r"\(0, 1\)"):
            CompleteColoring(3, 2, (3, 1, 1))
        with pytest.raises(ColoringError):
            CompleteColoring(3, 2, (1, 1))
        with pytest.raises(ColoringError):
            BipartiteColoring(2, 2, 2, (1, 2, 0, 1))

    def test_view(self):
        c = BipartiteColoring.from_function(2, 3, 2, lambda x, y: 1 if x == 0 else 2)
        v1 = c.view(1)
        assert v1.adjacent(("x", 0), ("y", 2))
        assert not v1.adjacent(("x", 1), ("y", 2))
        assert v1.neighbors(0) == [2, 3, 4]
        with pytest.raises(ValueError):
            c.view(3)

    def test_restrict(self):
        c = small_even(4, 2).coloring
        sub = c.restrict([0, 3], [1, 2, 5])
        assert sub.colors == tuple(c.color(x, y) for x in (0, 3) for y in (1, 2, 5))

    def test_graph_helpers(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
        assert list(g.edges()) == [(0, 1), (1, 2), (3, 4)]
        assert g.num_edges == 3 and g.degree(1) == 2
        h = g.induced([0, 1, 4])
        assert list(h.edges()) == [(0, 1)] and h.n_vertices == 5
        assert Graph.complete(4).num_edges == 6
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 0)])


class TestWitnessFormat:
    def test_smallest_blowup(self):
        doc = json.loads(serialize_witness(proper_blowup_bipartite(2, 1)))
        assert doc["setting"] == "bipartite"
        assert (doc["x_size"], doc["y_size"]) == (2, 2)
        assert len(doc["colors"]) == 4
        assert set(doc) == {"setting", "r", "x_size", "y_size", "colors", "claim", "provenance"}

    def test_round_trip(self):
        rng = random.Random(7)
        claims = [Claim.double_star(2, 1), Claim.all_double_stars_on(6), Claim.component_of_order(4)]
        for k in range(30):
            if k % 2:
                c = random_complete(rng, rng.randint(1, 8), rng.randint(1, 4))
            else:
                c = random_bipartite(rng, rng.randint(0, 5), rng.randint(0, 5), rng.randint(1, 4))
            w = Witness(c, claims[k % 3], Provenance("test", {"k": k, "nested": [1, 2]}))
            assert deserialize_witness(serialize_witness(w)) == w

    def _doc(self, **over):
        doc = {"setting": "complete", "r": 3, "n_vertices": 3, "colors": [1, 2, 3],
               "claim": {"avoids": "double_star", "n": 1, "m": 1},
               "provenance": {"construction": "x", "params": {}}}
        doc.update(over)
        return json.dumps(doc)

    def test_color_zero(self):
        with pytest.raises(WitnessFormatError):
            deserialize_witness(self._doc(colors=[1, 0, 1]))

    def test_color_too_large_names_edge(self):
        with pytest.raises(WitnessFormatError, match=r"\(1, 2\)"):
            deserialize_witness(self._doc(colors=[1, 2, 4]))

    def test_incomplete(self):
        with pytest.raises(WitnessFormatError, match="incomplete coloring"):
            deserialize_witness(self._doc(colors=[1, 2]))

    def test_size_mismatch(self):
        with pytest.raises(WitnessFormatError, match="size mismatch"):
            deserialize_witness(self._doc(colors=[1, 2, 3, 1]))

    @pytest.mark.parametrize("payload", [
        b"{not json", b"[]", '{"setting": "torus", "r": 1, "colors": []}',
    ])
    def test_syntax_and_setting(self, payload):
        with pytest.raises(WitnessFormatError):
            deserialize_witness(payload)

    def test_bad_claim(self):
        with pytest.raises(WitnessFormatError, match="claim"):
            deserialize_witness(self._doc(claim={"avoids": "double_star", "n": 1, "m": 0}))
        with pytest.raises(WitnessFormatError, match="claim"):
            deserialize_witness(self._doc(claim={"avoids": "triangles"}))
