import itertools

import pytest

from dsramsey.constructions import bipartite_like_coloring, proper_blowup_bipartite, small_even, verify_witness
from dsramsey.graph import DoubleStarPattern
from dsramsey.search import (
    SearchConfig,
    SearchInconclusive,
    arrows,
    iter_avoiding_colorings,
    local_search_witness,
    ramsey_number,
)

from oracles import brute_arrows, brute_double_star, color_classes

S11, S21, S22 = DoubleStarPattern(1, 1), DoubleStarPattern(2, 1), DoubleStarPattern(2, 2)


def color_edge_sets(coloring):
    out = {}
    for u, v, c in coloring.edges():
        out.setdefault(c, set()).add((u, v))
    return out


class TestArrows:
    def test_k4_witness(self):
        res = arrows("complete", 4, 2, S11)
        assert res.arrows is False and verify_witness(res.witness).valid
        shapes = set()
        for edges in color_edge_sets(res.witness.coloring).values():
            touched = {x for e in edges for x in e}
            shapes.add("triangle" if len(edges) == 3 and len(touched) == 3 else
                       "star" if len(edges) == 3 and len(touched) == 4 else "other")
        assert shapes == {"triangle", "star"}

    def test_k5(self):
        res = arrows("complete", 5, 2, S11)
        assert res.arrows is True and res.witness is None and res.nodes_explored > 0

    def test_bipartite(self):
        res = arrows("bipartite", 2, 2, S11)
        assert res.arrows is False and verify_witness(res.witness).valid
        assert arrows("bipartite", 3, 2, S11).arrows is True

    def test_s21(self):
        assert arrows("complete", 5, 2, S21).arrows is False
        assert arrows("complete", 6, 2, S21).arrows is True

    def test_one_color(self):
        assert arrows("complete", 3, 1, S11).arrows is False
        assert arrows("complete", 4, 1, S11).arrows is True

    @pytest.mark.parametrize("bad", [dict(N=0), dict(r=0), dict(setting="torus")])
    def test_guards(self, bad):
        args = dict(setting="complete", N=4, r=2)
        args.update(bad)
        with pytest.raises(ValueError):
            arrows(args["setting"], args["N"], args["r"], S11)


ORACLE_CASES = [
    ("complete", size, 2, n, m) for size in range(2, 7) for n, m in [(1, 1), (2, 1), (2, 2)]
] + [("complete", size, 3, 1, 1) for size in range(2, 6)] + [
    ("bipartite", size, 2, n, m) for size in range(1, 5) for n, m in [(1, 1), (2, 1), (2, 2)]
] + [("bipartite", size, 3, 1, 1) for size in range(1, 4)] + [("complete", 4, 4, 1, 1)]


class TestOracle:
    @pytest.mark.parametrize("setting,size,r,n,m", ORACLE_CASES)
    def test_agrees(self, setting, size, r, n, m):
        assert arrows(setting, size, r, DoubleStarPattern(n, m)).arrows == brute_arrows(setting, size, r, n, m)

    @pytest.mark.parametrize("setting,size,n,m", [("complete", 4, 1, 1), ("complete", 5, 2, 1),
                                                  ("complete", 6, 2, 2), ("bipartite", 3, 2, 1)])
    def test_avoiding_count(self, setting, size, n, m):
        # with two colors, each canonical coloring stands for two colorings unless it uses one color
        canon = list(iter_avoiding_colorings(setting, size, 2, DoubleStarPattern(n, m)))
        expected = sum(2 if len(set(c.colors)) == 2 else 1 for c in canon)
        n_edges = size * (size - 1) // 2 if setting == "complete" else size * size
        brute = sum(
            all(brute_double_star(g, n, m) is None for g in color_classes(setting, size, colors, 2))
            for colors in itertools.product((1, 2), repeat=n_edges)
        )
        assert brute == expected
        assert [c.colors for c in canon] == sorted(c.colors for c in canon)

    def test_first_witness_is_lex_least(self):
        first = next(iter_avoiding_colorings("complete", 5, 2, S21))
        assert arrows("complete", 5, 2, S21).witness.coloring == first


class TestScan:
    @pytest.mark.parametrize("setting,pattern,value", [("complete", S11, 5), ("bipartite", S11, 3),
                                                       ("complete", S21, 6)])
    def test_values(self, setting, pattern, value):
        scan = ramsey_number(setting, 2, pattern, 8)
        assert scan.value == value
        assert [res.arrows for res in scan.results] == [False] * (value - 1) + [True]

    def test_not_reached(self):
        assert ramsey_number("complete", 2, S11, 4).value is None

    def test_monotone(self):
        for setting, pattern, top in [("complete", S11, 7), ("bipartite", S21, 5), ("complete", S22, 8)]:
            values = [arrows(setting, size, 2, pattern).arrows for size in range(1, top + 1)]
            assert values == sorted(values)

    def test_config(self):
        cfg = SearchConfig("complete", 2, S11, max_N=6)
        assert cfg.ramsey_number().value == 5 and cfg.arrows(4).arrows is False


class TestBudget:
    def test_inconclusive(self):
        res = arrows("complete", 7, 3, S11, node_budget=50)
        assert res.arrows is None and res.status == "inconclusive" and res.nodes_explored == 51

    def test_parallel_inconclusive(self):
        res = arrows("complete", 7, 3, S11, node_budget=50, parallel_width=4)
        assert res.arrows is None and res.nodes_explored == 51

    def test_exact_budget_suffices(self):
        full = arrows("complete", 5, 2, S11)
        assert arrows("complete", 5, 2, S11, node_budget=full.nodes_explored).arrows is True
        assert arrows("complete", 5, 2, S11, node_budget=full.nodes_explored - 1).arrows is None

    def test_scan_raises(self):
        with pytest.raises(SearchInconclusive) as info:
            ramsey_number("complete", 2, S11, 6, node_budget=5)
        assert info.value.result.arrows is None


class TestDeterminism:
    @pytest.mark.parametrize("setting,size,r,pattern", [
        ("complete", 6, 2, S21), ("complete", 8, 2, S22), ("complete", 5, 2, S21), ("bipartite", 4, 2, S21),
        ("complete", 6, 3, S11),
    ])
    def test_widths(self, setting, size, r, pattern):
        results = [arrows(setting, size, r, pattern, parallel_width=w, jobs=1) for w in (1, 4, 16)]
        assert len({(res.arrows, res.nodes_explored) for res in results}) == 1
        assert all(res.witness == results[0].witness for res in results)

    def test_processes(self):
        seq = arrows("complete", 6, 2, S21)
        par = arrows("complete", 6, 2, S21, parallel_width=16, jobs=2)
        assert (par.arrows, par.nodes_explored, par.witness) == (seq.arrows, seq.nodes_explored, seq.witness)


class TestWarmStart:
    @pytest.mark.parametrize("w,setting,r,pattern", [
        (small_even(4, 2), "bipartite", 4, S22),
        (proper_blowup_bipartite(3, 2), "bipartite", 3, S21),
        (bipartite_like_coloring(3, 2), "complete", 3, S22),
    ])
    def test_confirms_instantly(self, w, setting, r, pattern):
        size = w.coloring.x_size if setting == "bipartite" else w.coloring.n_vertices
        res = arrows(setting, size, r, pattern, warm_start=w)
        assert res.arrows is False and res.nodes_explored == 0 and res.witness == w

    def test_mismatch_ignored(self):
        w = bipartite_like_coloring(3, 1)
        res = arrows("complete", 5, 3, S11, warm_start=w)
        assert res.nodes_explored > 0


class TestLocalSearch:
    def test_finds_k4(self):
        found = [local_search_witness("complete", 4, 2, S11, seed=s, max_steps=500) for s in range(10)]
        assert any(found)
        assert all(verify_witness(w).valid for w in found if w)

    def test_never_on_k5(self):
        assert all(local_search_witness("complete", 5, 2, S11, seed=s, max_steps=300) is None for s in range(5))

    def test_bipartite_small(self):
        w = local_search_witness("bipartite", 2, 2, S11, seed=1, max_steps=200)
        assert w is not None and verify_witness(w).valid
