import json

from stablemaps.cli import main
from stablemaps.solver import ClassTable


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def entry_for(obj, k, beta):
    for row in obj["entries"]:
        if row["k"] == k and row["beta"] == list(beta):
            return row
    raise KeyError((k, beta))


class TestCompute:
    def test_point_table(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--target", "point", "--kmax", "5")
        assert code == 0
        obj = json.loads(out)
        assert entry_for(obj, 5, ())["class_u"] == ["1", "5", "1"]
        assert entry_for(obj, 5, ())["chi"] == "7"
        assert entry_for(obj, 4, ())["class_q"] == ["1", "0", "1"]

    def test_line_degree_one(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--target", "pn:1",
                               "--kmax", "0", "--dmax", "1")
        assert code == 0
        assert entry_for(json.loads(out), 0, (1,))["class_u"] == ["1"]

    def test_p3_grassmannian(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--target", "pn:3",
                               "--kmax", "0", "--dmax", "1")
        assert code == 0
        assert entry_for(json.loads(out), 0, (1,))["class_u"] == ["1", "1", "2", "1", "1"]

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--target", "point",
                               "--kmax", "4", "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == '"k","beta","class_u","class_q","chi"'
        assert '"4","","1,1","1,0,1","2"' in lines

    def test_deterministic_output(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        for path in (a, b):
            code = main(["compute", "--target", "pn:1", "--kmax", "3",
                         "--dmax", "2", "--out", str(path)])
            assert code == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_table_roundtrip_bytes(self, tmp_path):
        path = tmp_path / "t.json"
        assert main(["compute", "--target", "pn:2", "--kmax", "2",
                     "--dmax", "1", "--out", str(path)]) == 0
        text = path.read_text()
        assert ClassTable.from_json(text).to_json() == text


class TestOracle:
    def test_workers_byte_identical(self, tmp_path, capsys):
        one = tmp_path / "w1.json"
        two = tmp_path / "w2.json"
        for path, workers in ((one, "1"), (two, "2")):
            code = main(["oracle", "--target", "pn:1", "--kmax", "3",
                         "--dmax", "2", "--workers", workers, "--out", str(path)])
            assert code == 0
        capsys.readouterr()
        assert one.read_bytes() == two.read_bytes()

    def test_point_oracle(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--target", "point", "--kmax", "4")
        assert code == 0
        obj = json.loads(out)
        terms = {(t["k"], tuple(t["d"])): t["coeff"] for t in obj["series"]["terms"]}
        assert terms[(3, ())]["num"] == ["1/6"]


class TestVerify:
    def test_ode_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "ode",
                               "--target", "point", "--kmax", "6")
        assert code == 0
        assert "PASS ode" in out

    def test_oracle_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "oracle",
                               "--target", "pn:1", "--kmax", "4", "--dmax", "2")
        assert code == 0
        assert "PASS oracle" in out

    def test_ffcount_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "ffcount",
                               "--n", "1", "--dmaxff", "2", "--primes", "2,3,5")
        assert code == 0
        assert "PASS ffcount" in out

    def test_multiple_suites_and_summary(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "recurrence",
                               "--suite", "chi", "--suite", "dt",
                               "--suite", "potential", "--target", "pn:1",
                               "--kmax", "3", "--dmax", "1", "--n", "2",
                               "--dmaxff", "3")
        assert code == 0
        summary = json.loads(out.strip().split("\n")[-1])
        assert summary["ok"] is True
        assert [r["suite"] for r in summary["results"]] == [
            "recurrence", "chi", "dt", "potential"]

    def test_failure_exit_code(self, capsys):
        # an impossible tolerance forces a verification failure
        code, out, _ = run_cli(capsys, "verify", "--suite", "implicit",
                               "--target", "point", "--kmax", "10",
                               "--tolerance", "1e-30")
        assert code == 1
        assert "FAIL implicit" in out


class TestSmallCommands:
    def test_trees_census(self, capsys):
        code, out, _ = run_cli(capsys, "trees", "--vmax", "5")
        assert code == 0
        rows = out.strip().split("\n")
        assert len(rows) == 8  # 1+1+1+2+3
        assert rows[0].split("\t")[:2] == ["1", "1"]

    def test_count_ff(self, capsys):
        code, out, _ = run_cli(capsys, "count-ff", "--n", "2", "--d", "1", "--p", "3")
        assert code == 0
        assert out.strip() == "312"

    def test_euler_table(self, capsys):
        code, out, _ = run_cli(capsys, "euler", "--target", "pn:1",
                               "--kmax", "4", "--dmax", "2")
        assert code == 0
        obj = json.loads(out)
        assert entry_for(obj, 4, (0,))["chi"] == "4"


class TestErrors:
    def test_unknown_target(self, capsys):
        code, _, err = run_cli(capsys, "compute", "--target", "torus", "--kmax", "2")
        assert code == 2
        assert "error" in err

    def test_point_with_dmax(self, capsys):
        code, _, err = run_cli(capsys, "compute", "--target", "point",
                               "--kmax", "2", "--dmax", "1")
        assert code == 2
        assert "z-grading" in err

    def test_dmax_rank_mismatch(self, capsys):
        code, _, err = run_cli(capsys, "compute", "--target", "pn:1",
                               "--kmax", "2", "--dmax", "1,2")
        assert code == 2
        assert "rank" in err

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "compute", "--target", "file:/nope.json",
                               "--kmax", "2")
        assert code == 2
