import random

import pytest

from liftgirth import cli, graphs
from liftgirth.construct import high_girth_cover
from liftgirth.lifts import serialize_cover_map


@pytest.fixture
def h23_file(tmp_path):
    p = tmp_path / "h23.g"
    p.write_text(graphs.serialize_graph(graphs.h23()))
    return str(p)


class TestSeedMixing:
    def test_deterministic(self):
        assert cli.mix(0, 0) == cli.mix(0, 0)
        assert cli.mix(123, 45) == cli.mix(123, 45)

    def test_spread(self):
        seeds = {cli.mix(7, i) for i in range(10000)}
        assert len(seeds) == 10000
        assert all(0 <= s < 2 ** 64 for s in seeds)


class TestAnalyze:
    def test_default_base(self, capsys):
        assert cli.main(["analyze", "--gmin", "3", "--gmax", "10"]) == 0
        out = capsys.readouterr().out
        assert "rho        1.521380" in out
        assert "rho == Lambda: no" in out

    def test_csv_output(self, tmp_path, capsys):
        csv = tmp_path / "table.csv"
        assert cli.main(["analyze", "--gmin", "3", "--gmax", "30",
                         "--csv", str(csv)]) == 0
        lines = csv.read_text().splitlines()
        assert lines[0] == "g,moore_raw,moore_adjusted,es_bound,ahl_n0,best_known"
        assert len(lines) == 29

    def test_balls(self, capsys):
        assert cli.main(["analyze", "--g", "5", "--balls", "3"]) == 0
        assert "ball sizes from vertex 1: 1 4 8 14" in capsys.readouterr().out

    def test_inadmissible_exit(self, tmp_path, capsys):
        p = tmp_path / "c6.g"
        p.write_text(graphs.serialize_graph(graphs.cycle_graph(6)))
        assert cli.main(["analyze", "--graph", str(p)]) == cli.EXIT_PRECONDITION

    def test_bad_file_exit(self, tmp_path, capsys):
        p = tmp_path / "bad.g"
        p.write_text("vertices two\n")
        assert cli.main(["analyze", "--graph", str(p)]) == cli.EXIT_PARSE
        assert cli.main(["analyze", "--graph",
                         str(tmp_path / "nope.g")]) == cli.EXIT_PARSE


class TestConstruct:
    def test_gf_g5(self, tmp_path, capsys):
        out = tmp_path / "w.g"
        code = cli.main(["construct", "--alg", "gf", "--g", "5",
                         "--trials", "30", "--seed", "1",
                         "--out", str(out)])
        assert code == 0
        row = capsys.readouterr().out.splitlines()[1]
        assert row.startswith("5,gf,30,")
        assert int(row.split(",")[4]) == 8
        g = graphs.parse_graph(out.read_text())
        assert graphs.girth(g) >= 5 and g.vertex_count == 8

    def test_csv_byte_identical(self, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            cli.main(["construct", "--alg", "gd", "--g", "6",
                      "--trials", "10", "--seed", "3", "--csv", str(p)])
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_zero_successes_budget_exit(self, capsys):
        code = cli.main(["construct", "--alg", "a", "--g", "7", "--n", "12",
                         "--trials", "30", "--seed", "0"])
        assert code == cli.EXIT_BUDGET
        assert capsys.readouterr().out.splitlines()[1] == "7,a,30,0,,"

    def test_missing_n_precondition(self, capsys):
        code = cli.main(["construct", "--alg", "a", "--g", "5",
                         "--trials", "5"])
        assert code == cli.EXIT_PRECONDITION

    def test_es_on_base_file(self, h23_file, capsys):
        code = cli.main(["construct", "--alg", "es", "--g", "6",
                         "--graph", h23_file, "--trials", "2", "--seed", "4"])
        assert code == 0
        row = capsys.readouterr().out.splitlines()[1]
        assert int(row.split(",")[4]) <= 132


class TestSearch:
    def test_minimum(self, capsys):
        assert cli.main(["search", "--g", "6", "--max-n", "10"]) == 0
        assert "g,6,minimum,12," in capsys.readouterr().out

    def test_certificate(self, capsys):
        assert cli.main(["search", "--g", "7", "--max-n", "8",
                         "--certify"]) == 0
        assert "g,7,refuted_up_to,8,nodes," in capsys.readouterr().out

    def test_unresolved_budget_exit(self, capsys):
        assert cli.main(["search", "--g", "9", "--max-n", "4"]) \
            == cli.EXIT_BUDGET


class TestVerify:
    def make_files(self, tmp_path, corrupt=False):
        base = graphs.h23()
        g, m = high_girth_cover(base, 6, random.Random(5))
        gp = tmp_path / "G.g"
        hp = tmp_path / "H.g"
        mp = tmp_path / "m.map"
        gp.write_text(graphs.serialize_graph(g))
        hp.write_text(graphs.serialize_graph(base))
        text = serialize_cover_map(m, g, base)
        if corrupt:
            lines = text.splitlines()
            v, hv = lines[0].split()[1:]
            lines[0] = f"vmap {v} {1 - int(hv)}"
            text = "\n".join(lines) + "\n"
        mp.write_text(text)
        return str(gp), str(hp), str(mp)

    def test_pass(self, tmp_path, capsys):
        gp, hp, mp = self.make_files(tmp_path)
        assert cli.main(["verify", "--graph", gp, "--base", hp,
                         "--map", mp]) == 0
        out = capsys.readouterr().out
        assert "cover: pass" in out and "girth 6" in out

    def test_corrupted_map_fails(self, tmp_path, capsys):
        gp, hp, mp = self.make_files(tmp_path, corrupt=True)
        assert cli.main(["verify", "--graph", gp, "--base", hp,
                         "--map", mp]) == cli.EXIT_PRECONDITION
        assert "cover: FAIL" in capsys.readouterr().out
