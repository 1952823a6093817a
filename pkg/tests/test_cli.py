import json

import pytest

from kkrcrystal.cli import main

from conftest import EX25_JSON


@pytest.fixture
def ex25_file(tmp_path):
    f = tmp_path / "ex25.json"
    f.write_text(EX25_JSON)
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCommands:
    def test_validate(self, capsys, ex25_file):
        code, out, _ = run(capsys, "validate", ex25_file)
        assert (code, out.strip()) == (0, "valid")

    def test_validate_invalid(self, capsys, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text('{"n":2,"quantum":[1],"layers":[{"rows":[[1,1]]}]}')
        code, out, _ = run(capsys, "validate", str(f))
        assert code == 1
        assert out.startswith("invalid")

    def test_kkr(self, capsys, ex25_file):
        code, out, _ = run(capsys, "kkr", ex25_file)
        assert (code, out.strip()) == (0, "1*2*13*2")

    def test_kkr_json_roundtrip(self, capsys, ex25_file):
        code, out, _ = run(capsys, "kkr", ex25_file, "--json")
        doc = json.loads(out)
        assert doc["path"] == "1*2*13*2"
        assert doc["factors"] == ["1", "2", "13", "2"]

    def test_rmatrix(self, capsys):
        code, out, _ = run(capsys, "rmatrix", "1344", "234", "--n", "4")
        assert (code, out.strip()) == (0, "134 2344 H=1")

    def test_energy(self, capsys):
        code, out, _ = run(capsys, "energy", "1344", "234", "--n", "4")
        assert (code, out.strip()) == (0, "1")

    def test_scatter(self, capsys, tmp_path, ex46):
        f = tmp_path / "ex46.json"
        f.write_text(ex46.to_json())
        code, out, _ = run(capsys, "scatter", str(f), "--level", "1", "--all")
        assert code == 0
        assert out.splitlines() == [
            "2222[4]*233[5]*4[5]",
            "2222[4]*3[5]*234[5]",
            "222[4]*2233[5]*4[5]",
            "222[4]*3[5]*2234[5]",
        ]

    def test_normal_order(self, capsys):
        code, out, _ = run(capsys, "normal-order", "22[2]*3[1]", "--n", "3")
        assert (code, out.strip()) == (0, "2[1]*23[2]")

    def test_compose_check(self, capsys, ex25_file):
        code, out, _ = run(capsys, "compose", ex25_file, "--check")
        assert (code, out.strip()) == (0, "MATCH 1*2*13*2")

    def test_bbs_evolve(self, capsys, remark47_rows):
        code, out, _ = run(
            capsys, "bbs-evolve", remark47_rows[1], "--steps", "7", "--n", "4"
        )
        assert code == 0
        assert out.splitlines() == [remark47_rows[t] for t in range(1, 9)]

    def test_bbs_solitons(self, capsys, remark47_rows):
        code, out, _ = run(capsys, "bbs-solitons", remark47_rows[1])
        assert (code, out.strip()) == (0, "2222 233 4")

    def test_bbs_solitons_not_separated(self, capsys, remark47_rows):
        code, out, _ = run(capsys, "bbs-solitons", remark47_rows[4])
        assert (code, out.strip()) == (1, "not-separated")

    def test_verify(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "kss", "--n", "2", "--max-boxes", "3", "--max-row", "2"
        )
        assert code == 0
        assert "failures=0" in out


class TestErrors:
    def test_malformed_json_is_usage_error(self, capsys, tmp_path):
        f = tmp_path / "broken.json"
        f.write_text('{"n": 3,')
        code, _, err = run(capsys, "validate", str(f))
        assert code == 2
        assert "JSON" in err

    def test_missing_file(self, capsys):
        code, _, _ = run(capsys, "kkr", "/nonexistent/rc.json")
        assert code == 2

    def test_usage_error_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["rmatrix", "12", "11"])  # missing required --n
        assert exc.value.code == 2

    def test_byte_identical_runs(self, capsys, ex25_file):
        _, out1, _ = run(capsys, "kkr", ex25_file)
        _, out2, _ = run(capsys, "kkr", ex25_file)
        assert out1 == out2
