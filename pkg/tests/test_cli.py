from __future__ import annotations

import json

import pytest

from dynkintrans.catalog import catalog_from_json
from dynkintrans.cli import main


@pytest.fixture()
def cli(catalog_cache_dir, capsys):
    """Run the CLI against the session catalog cache; returns (code, out, err)."""

    def run(*argv: str, cache: bool = True):
        args = list(argv)
        if cache and argv[0] in ("catalog", "check", "verify"):
            args += ["--cache-dir", str(catalog_cache_dir)]
        code = main(args)
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


class TestCatalogCommand:
    def test_text_output(self, cli, all_catalogs):
        code, out, _ = cli("catalog", "E12")
        assert code == 0
        lines = out.splitlines()
        assert "E8" in lines
        assert "(empty)" in lines
        assert lines == sorted(lines, key=lambda s: "" if s == "(empty)" else s)

    def test_json_output_contains_worked_example(self, cli, all_catalogs):
        code, out, _ = cli("catalog", "Z13", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["class"] == "Z13"
        assert any(m["name"] == "A7+A4" for m in data["members"])

    def test_json_round_trips_through_parser(self, cli, all_catalogs):
        code, out, _ = cli("catalog", "Q10", "--json")
        catalog = catalog_from_json(out)
        assert catalog.singularity.symbol == "Q10"
        assert len(catalog) == len(json.loads(out)["members"])

    def test_unknown_class(self, cli):
        code, _, err = cli("catalog", "X99")
        assert code == 2
        assert "X99" in err and "Z13" in err

    def test_out_file(self, cli, all_catalogs, tmp_path):
        target = tmp_path / "z13.json"
        code, out, _ = cli("catalog", "Z13", "--json", "--out", str(target))
        assert code == 0 and out == ""
        data = json.loads(target.read_text(encoding="utf-8"))
        assert data["class"] == "Z13"

    def test_cached_equals_uncached(self, cli, all_catalogs, fresh_memory_cache):
        code, cold, _ = cli("catalog", "Q11", "--json", "--no-cache", cache=False)
        assert code == 0
        code, warm, _ = cli("catalog", "Q11", "--json")
        assert code == 0
        assert cold == warm


class TestCheckCommand:
    def test_yes_with_witness(self, cli, all_catalogs):
        code, out, _ = cli("check", "Z13", "D8+A2")
        assert code == 0
        assert out.startswith("yes")
        assert "step 1" in out and "step 2" in out

    def test_witness_names_vertices(self, cli, all_catalogs):
        code, out, _ = cli("check", "Z13", "A7+A4")
        assert code == 0
        assert "E8+G2" in out  # the worked-example intermediate
        assert "tie" in out

    def test_no(self, cli, all_catalogs):
        code, out, _ = cli("check", "Z13", "A12")
        assert code == 1
        assert out.startswith("no")

    def test_non_ade_query(self, cli, all_catalogs):
        code, _, err = cli("check", "Z13", "BC1")
        assert code == 2
        assert "BC1" in err

    def test_parse_error(self, cli):
        code, _, err = cli("check", "Z13", "D3")
        assert code == 2
        assert "D3" in err


class TestTransformCommand:
    def test_tie_text(self, cli):
        code, out, _ = cli("transform", "E7+G2", "--op", "tie")
        assert code == 0
        assert "E8+G2" in out.splitlines()

    def test_elementary_text(self, cli):
        code, out, _ = cli("transform", "E8+G2", "--op", "elementary")
        assert code == 0
        assert "D8+A2" in out.splitlines()

    def test_a1_includes_empty(self, cli):
        code, out, _ = cli("transform", "A1", "--op", "elementary")
        assert code == 0
        assert set(out.splitlines()) == {"A1", "(empty)"}

    def test_json_witnesses_replay(self, cli):
        from dynkintrans.graphs import parse_name
        from dynkintrans.transforms import ElementaryChoice, TieChoice, apply

        code, out, _ = cli("transform", "E6+BC1", "--op", "tie", "--json")
        assert code == 0
        data = json.loads(out)
        g = parse_name(data["input"])
        for entry in data["results"]:
            c = entry["choice"]
            choice = (
                ElementaryChoice(tuple(c["removed"]))
                if "removed" in c
                else TieChoice(tuple(c["a"]), tuple(c["b"]))
            )
            assert apply(g, choice).name == entry["name"]

    def test_parse_error(self, cli):
        code, _, err = cli("transform", "E9", "--op", "tie")
        assert code == 2
        assert "E9" in err


class TestVerifyCommand:
    def test_passes(self, cli, all_catalogs):
        code, out, _ = cli("verify")
        assert code == 0
        assert "all checks passed" in out
        assert "FAIL" not in out

    def test_detects_broken_coefficients(self, cli, monkeypatch):
        from dynkintrans import graphs as gmod

        broken = dict(gmod._E_PATH_COEFFS)
        broken[7] = (2, 3, 4, 3, 2, 2)
        monkeypatch.setattr(gmod, "_E_PATH_COEFFS", broken)
        code, out, _ = cli("verify")
        assert code == 1
        assert "FAIL extension-coefficients" in out
