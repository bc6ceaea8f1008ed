from __future__ import annotations

import json

import pytest

from dynkintrans.catalog import (
    BoundViolation,
    Catalog,
    QueryNotADE,
    SINGULARITY_CLASSES,
    build_catalog,
    catalog_from_json,
    catalog_to_json,
    membership,
    milnor_bound_check,
    singularity_class,
)
from dynkintrans.graphs import parse_name
from dynkintrans.transforms import elementary_all, tie_all


BASIC_TABLE = {
    "E12": ("E8", 12),
    "Z11": ("E7", 11),
    "Q10": ("E6", 10),
    "E13": ("E8+BC1", 13),
    "Z12": ("E7+BC1", 12),
    "Q11": ("E6+BC1", 11),
    "E14": ("E8+G2", 14),
    "Z13": ("E7+G2", 13),
    "Q12": ("E6+G2", 12),
}


class TestSingularityTable:
    def test_nine_classes(self):
        assert set(SINGULARITY_CLASSES) == set(BASIC_TABLE)

    @pytest.mark.parametrize("symbol", sorted(BASIC_TABLE))
    def test_basic_graph_and_milnor_number(self, symbol):
        cls = SINGULARITY_CLASSES[symbol]
        basic, milnor = BASIC_TABLE[symbol]
        assert cls.basic == parse_name(basic)
        assert cls.milnor == milnor
        assert cls.milnor == int(symbol[1:])

    def test_basic_graph_has_milnor_minus_four_vertices(self):
        for cls in SINGULARITY_CLASSES.values():
            assert cls.basic.total_vertices == cls.milnor - 4

    def test_unknown_symbol(self):
        with pytest.raises(KeyError, match="X99"):
            singularity_class("X99")


class TestCatalogContents:
    def test_worked_example_members(self, all_catalogs):
        z13 = all_catalogs["Z13"]
        assert parse_name("A7+A4") in z13
        assert parse_name("D8+A2") in z13

    def test_a7a4_witness_is_two_ties_through_e8g2(self, all_catalogs):
        member = all_catalogs["Z13"].get("A7+A4")
        s1, s2 = member.witness
        assert (s1.kind, s2.kind) == ("tie", "tie")
        assert s1.output == parse_name("E8+G2")
        assert s2.input == parse_name("E8+G2")

    def test_basic_graph_of_ade_classes_is_a_member(self, all_catalogs):
        for symbol in ("E12", "Z11", "Q10"):
            cls = SINGULARITY_CLASSES[symbol]
            assert cls.basic in all_catalogs[symbol]

    def test_members_are_ade_and_sorted(self, all_catalogs):
        for catalog in all_catalogs.values():
            ns = catalog.names()
            assert ns == sorted(ns)
            assert len(ns) == len(set(ns))
            for m in catalog.members:
                assert m.graph.is_ade

    def test_empty_graph_is_reachable(self, all_catalogs):
        # removing every vertex twice is a valid pair of elementary steps
        for catalog in all_catalogs.values():
            assert parse_name("") in catalog

    def test_witnesses_replay(self, all_catalogs):
        for symbol in ("Q10", "Z12"):
            catalog = all_catalogs[symbol]
            basic = catalog.singularity.basic
            for m in catalog.members:
                s1, s2 = m.witness
                assert s1.input == basic
                assert s1.replay() == s1.output
                assert s2.input == s1.output
                assert s2.replay() == m.graph

    def test_four_combinations_union(self, all_catalogs):
        # recompute the member set of one class from the four ordered
        # combinations independently
        cls = SINGULARITY_CLASSES["Q12"]
        kinds = {"elementary": elementary_all, "tie": tie_all}
        union = set()
        for first in kinds.values():
            for mid, _ in first(cls.basic):
                for second in kinds.values():
                    for out, _ in second(mid):
                        if out.is_ade:
                            union.add(out.name)
        assert union == set(all_catalogs["Q12"].names())


class TestMilnorBound:
    def test_reports(self, all_catalogs):
        for symbol, catalog in all_catalogs.items():
            report = milnor_bound_check(catalog)
            assert report.max_vertices <= report.bound
            assert sum(count for _, count in report.histogram) == len(catalog)

    def test_bound_is_attained(self, all_catalogs):
        for catalog in all_catalogs.values():
            report = milnor_bound_check(catalog)
            assert report.max_vertices == report.bound

    def test_violation_raises(self, all_catalogs):
        z13 = all_catalogs["Z13"]
        big = next(m for m in z13.members if m.graph.total_vertices == 11)
        fake_cls = SINGULARITY_CLASSES["Q10"]  # bound 8, member has 11 vertices
        broken = Catalog(fake_cls, (big,))
        with pytest.raises(BoundViolation):
            milnor_bound_check(broken)

    def test_empty_catalog_passes(self):
        report = milnor_bound_check(Catalog(SINGULARITY_CLASSES["E12"], ()))
        assert report.max_vertices == 0
        assert report.histogram == ()


class TestMembership:
    def test_yes_with_witness(self, catalog_cache_dir):
        witness = membership("Z13", parse_name("A7+A4"), cache_dir=catalog_cache_dir)
        assert witness is not None
        s1, s2 = witness
        assert s1.replay() == s1.output and s2.replay() == parse_name("A7+A4")

    def test_no_for_too_many_vertices(self, catalog_cache_dir):
        assert membership("Z13", parse_name("A12"), cache_dir=catalog_cache_dir) is None

    def test_no_for_every_ade_graph_with_twelve_vertices(self, all_catalogs):
        z13 = all_catalogs["Z13"]
        count = 0
        for g in _ade_graphs_with_total(12):
            assert g not in z13, g.name
            count += 1
        assert count > 100  # the family is substantial


def _ade_graphs_with_total(total: int):
    """Every ADE graph (multiset of components) with the given vertex count."""
    from dynkintrans.graphs import A, D, DynkinGraph, E

    types = [A(k) for k in range(1, total + 1)]
    types += [D(l) for l in range(4, total + 1)]
    types += [E(n) for n in (6, 7, 8) if n <= total]

    def rec(remaining: int, start: int, chosen: list):
        if remaining == 0:
            yield DynkinGraph(tuple(chosen))
            return
        for i in range(start, len(types)):
            ct = types[i]
            if ct.vertex_count <= remaining:
                chosen.append(ct)
                yield from rec(remaining - ct.vertex_count, i, chosen)
                chosen.pop()

    yield from rec(total, 0, [])

    def test_non_ade_query_rejected(self, catalog_cache_dir):
        with pytest.raises(QueryNotADE):
            membership("E12", parse_name("BC1"), cache_dir=catalog_cache_dir)
        with pytest.raises(QueryNotADE):
            membership("Z13", parse_name("A3+G2"), cache_dir=catalog_cache_dir)


class TestSerialization:
    def test_round_trip(self, all_catalogs):
        catalog = all_catalogs["Q11"]
        text = catalog_to_json(catalog)
        back = catalog_from_json(text)
        assert back.singularity == catalog.singularity
        assert back.names() == catalog.names()
        assert catalog_to_json(back) == text

    def test_schema_fields(self, all_catalogs):
        data = json.loads(catalog_to_json(all_catalogs["Z13"]))
        assert data["class"] == "Z13"
        assert data["milnor"] == 13
        assert data["basic"] == "E7+G2"
        assert isinstance(data["engine_version"], str)
        member_names = [m["name"] for m in data["members"]]
        assert member_names == sorted(member_names)
        entry = next(m for m in data["members"] if m["name"] == "A7+A4")
        step1, step2 = entry["witness"]
        assert step1["kind"] == "tie" and step1["input"] == "E7+G2"
        assert set(step1) == {"kind", "input", "a", "b"}

    def test_deterministic_recomputation(self, all_catalogs, fresh_memory_cache):
        reference = catalog_to_json(all_catalogs["Z13"])
        recomputed = build_catalog("Z13", cache=False)
        assert catalog_to_json(recomputed) == reference

    def test_disk_cache_round_trip(self, tmp_path, fresh_memory_cache):
        first = build_catalog("Q10", cache=True, cache_dir=tmp_path)
        assert (tmp_path / "Q10-v1.json").is_file()
        from dynkintrans.catalog import clear_memory_cache

        clear_memory_cache()
        second = build_catalog("Q10", cache=True, cache_dir=tmp_path)
        assert catalog_to_json(first) == catalog_to_json(second)
        assert second.get("E6") is not None

    def test_witness_replay_after_deserialization(self, all_catalogs):
        catalog = catalog_from_json(catalog_to_json(all_catalogs["Q10"]))
        member = catalog.get("A1")
        assert member is not None
        s1, s2 = member.witness
        assert s2.replay() == member.graph
