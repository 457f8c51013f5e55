import math

import pytest

from homcover import build_tower, build_zm_cover, girth, named_graph
from homcover.boxspace import girth_vertex_transitive
from homcover.errors import SizeCapExceeded
from homcover.graph import cayley_zm_power, cycle_graph


class TestGirthShortcut:
    def test_cayley_z3_squared(self):
        assert girth_vertex_transitive(cayley_zm_power(2, 3)) == 3

    def test_c8(self):
        assert girth_vertex_transitive(cycle_graph(8)) == 8

    @pytest.mark.parametrize("name", ["k4", "c5", "petersen", "doubled_edge"])
    def test_agrees_with_full_girth(self, name):
        g = named_graph(name)
        assert girth_vertex_transitive(g) == girth(g)

    def test_agrees_on_covers(self):
        for name, m in [("k4", 3), ("c5", 3), ("petersen", 2)]:
            g = build_zm_cover(named_graph(name), m).graph
            assert g.vertex_count <= 10 ** 4
            assert girth_vertex_transitive(g) == girth(g)


class TestTower:
    def test_m3_level_sizes(self):
        tower = build_tower(2, 3, 2)
        assert [lvl.graph.vertex_count for lvl in tower.levels] == [9, 531441]
        assert not tower.truncated
        assert tower.levels[0].girth_value == 3
        assert tower.levels[1].girth_value > 3

    def test_m2_is_cycle_doubling(self):
        tower = build_tower(2, 2, 3)
        sizes = [lvl.graph.vertex_count for lvl in tower.levels]
        girths = [lvl.girth_value for lvl in tower.levels]
        assert sizes == [4, 8, 16]
        assert girths == [4, 8, 16]

    def test_single_level_is_seed(self):
        tower = build_tower(2, 3, 1)
        assert len(tower.levels) == 1
        assert tower.levels[0].cover is None
        g = tower.levels[0].graph
        assert (g.vertex_count, g.edge_count) == (9, 18)

    def test_truncation(self):
        tower = build_tower(2, 3, 5, size_cap=1000)
        assert tower.truncated
        assert len(tower.levels) == 1

    def test_seed_too_big(self):
        with pytest.raises(SizeCapExceeded):
            build_tower(8, 3, 1, size_cap=100)

    def test_girth_strictly_increases(self):
        tower = build_tower(3, 2, 3)
        girths = [lvl.girth_value for lvl in tower.levels]
        assert all(a < b for a, b in zip(girths, girths[1:]))

    def test_cover_relations(self):
        tower = build_tower(2, 2, 3)
        for prev, lvl in zip(tower.levels, tower.levels[1:]):
            assert lvl.cover is not None
            assert lvl.cover.base is prev.graph
            assert lvl.cover.graph is lvl.graph

    def test_rank_validation(self):
        with pytest.raises(ValueError):
            build_tower(1, 3, 1)
        with pytest.raises(ValueError):
            build_tower(2, 3, 0)
