import json
import socket

import pytest

import cplanner
from cplanner.cli import main


@pytest.fixture()
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return invoke


@pytest.fixture()
def reference_path():
    return cplanner.reference_map_path()


@pytest.fixture()
def map_file(tmp_path):
    def write(text, name="test.map"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


class TestSolve:
    def test_text_output(self, run, reference_path):
        code, out, err = run("solve", "--map", reference_path)
        assert code == 0
        assert err == ""
        lines = out.strip().splitlines()
        assert len(lines) == 25
        assert "g10 6.667 →" in lines
        assert "g5 7.778 ↓" in lines
        assert "g13 unreachable -" in lines
        assert "g4 0.000 -" in lines

    def test_structured_output(self, run, reference_path):
        code, out, err = run("solve", "--map", reference_path,
                             "--format", "structured")
        assert code == 0
        doc = json.loads(out)
        assert doc["command"] == "solve"
        assert doc["values"]["10"] == pytest.approx(6 / 0.9, abs=1e-4)
        assert doc["values"]["13"] == "unreachable"
        assert doc["choices"]["10"] == "east"
        assert doc["choices"]["4"] is None
        assert doc["property"]["kind"] == "expected-reward"
        assert doc["property"]["direction"] == "min"

    def test_runs_are_deterministic(self, run, reference_path):
        first = run("solve", "--map", reference_path, "--format", "structured")
        second = run("solve", "--map", reference_path, "--format", "structured")
        assert first == second

    def test_combined_cell_map(self, run, map_file):
        path = map_file("grid 2 1 p=1\n@ U\n")
        code, out, _ = run("solve", "--map", path)
        assert code == 0
        assert "g0 0.000 -" in out

    def test_max_reach_property(self, run, reference_path):
        code, out, _ = run("solve", "--map", reference_path,
                           "--property", "max-reach", "--format", "structured")
        assert code == 0
        doc = json.loads(out)
        assert doc["property"]["kind"] == "reach-probability"
        assert doc["values"]["5"] == pytest.approx(1.0, abs=1e-4)
        assert doc["values"]["13"] == pytest.approx(0.0, abs=1e-9)


class TestExplain:
    def test_default_contrastive(self, run, reference_path):
        code, out, err = run("explain", "--map", reference_path)
        assert code == 0
        assert err == ""
        assert out.strip().startswith(
            "First, we move south at critical grid 5 because it leads to the "
            "shortest and most flexible future route.")
        assert out.strip().endswith("All other decisions result in equivalent routes.")

    def test_selective(self, run, reference_path):
        code, out, _ = run("explain", "--map", reference_path,
                           "--type", "selective")
        assert code == 0
        assert "because" not in out
        assert "critical grid 10" in out

    def test_naive_path(self, run, reference_path):
        code, out, _ = run("explain", "--map", reference_path,
                           "--type", "naive-path")
        assert code == 0
        assert "critical" not in out
        assert "Finally, we move east at grid 3." in out

    def test_none_prints_nothing(self, run, reference_path):
        code, out, err = run("explain", "--map", reference_path, "--type", "none")
        assert code == 0
        assert out == ""
        assert err == ""

    def test_focus_types(self, run, reference_path):
        code, out, _ = run("explain", "--map", reference_path,
                           "--type", "naive-one", "--state", "10")
        assert code == 0
        assert out.strip() == "We move east at grid 10."
        code, out, _ = run("explain", "--map", reference_path,
                           "--type", "responsibility", "--state", "10")
        assert out.strip() == ("We move east at grid 10 because it leads to "
                               "the shortest route.")
        code, out, _ = run("explain", "--map", reference_path,
                           "--type", "constrictive", "--state", "10")
        assert out.strip() == ("We move east at grid 10 because it leads to "
                               "the most flexible future route.")

    def test_structured_document(self, run, reference_path):
        code, out, _ = run("explain", "--map", reference_path,
                           "--format", "structured")
        doc = json.loads(out)
        assert doc["type"] == "contrastive"
        assert doc["missing_justification"] is False
        first = doc["sentences"][0]
        assert first["state"] == 5
        assert first["action"] == "south"
        assert first["connective"] == "First"
        assert first["justification"] == {"shortest": True, "most_flexible": True}
        assert doc["sentences"][-1]["justification"] is None

    def test_unknown_type_exits_3(self, run, reference_path):
        code, out, err = run("explain", "--map", reference_path,
                             "--type", "bogus")
        assert code == 3
        assert out == ""
        assert "unknown explanation type" in err

    def test_missing_focus_exits_3(self, run, reference_path):
        code, _, err = run("explain", "--map", reference_path,
                           "--type", "naive-one")
        assert code == 3
        assert "focus" in err

    def test_focus_off_route_exits_3(self, run, reference_path):
        code, _, err = run("explain", "--map", reference_path,
                           "--type", "naive-one", "--state", "14")
        assert code == 3
        assert "not on the route" in err


class TestCritical:
    def test_text_rows(self, run, reference_path):
        code, out, err = run("critical", "--map", reference_path)
        assert code == 0
        assert err == ""
        lines = out.strip().splitlines()
        assert [line.split()[0] for line in lines] == ["g5", "g7", "g10", "g12",
                                                       "g14"]
        assert "g10 min=5.667 max=9.667 gap=4.000" in lines

    def test_structured_gaps(self, run, reference_path):
        code, out, _ = run("critical", "--map", reference_path,
                           "--format", "structured")
        doc = json.loads(out)
        by_state = {row["state"]: row for row in doc["critical"]}
        assert set(by_state) == {5, 7, 10, 12, 14}
        assert by_state[10]["gap"] == pytest.approx(4.0, abs=1e-3)
        assert by_state[14]["max_impact"] == "unreachable"
        assert by_state[14]["gap"] == "unreachable"

    def test_alpha_filters(self, run, reference_path):
        code, out, _ = run("critical", "--map", reference_path,
                           "--alpha", "4.01")
        assert code == 0
        states = [line.split()[0] for line in out.strip().splitlines()]
        assert states == ["g7", "g12", "g14"]

    def test_no_critical_states_prints_nothing(self, run, map_file):
        path = map_file("grid 4 1 p=1\nS U U D\nmask 0 E\nmask 1 E\nmask 2 E\n")
        code, out, err = run("critical", "--map", path)
        assert code == 0
        assert out == ""
        assert err == ""


class TestContrast:
    def test_sentence(self, run, reference_path):
        code, out, _ = run("contrast", "--map", reference_path,
                           "--state", "10", "--chosen", "east", "--alt", "south")
        assert code == 0
        assert out.strip() == (
            "We move east at grid 10 instead of south because east leads to a "
            "route that is 4 grids shorter in expectation and offers 4 future "
            "decision points versus 2."
        )

    def test_dead_end_sentence(self, run, reference_path):
        code, out, _ = run("contrast", "--map", reference_path,
                           "--state", "14", "--chosen", "north", "--alt", "west")
        assert code == 0
        assert out.strip().endswith("west leads to a dead end.")

    def test_structured(self, run, reference_path):
        code, out, _ = run("contrast", "--map", reference_path,
                           "--state", "10", "--chosen", "east", "--alt", "south",
                           "--format", "structured")
        doc = json.loads(out)
        assert doc["state"] == 10
        assert doc["sentence"].startswith("We move east at grid 10")

    def test_same_action_exits_3(self, run, reference_path):
        code, _, err = run("contrast", "--map", reference_path,
                           "--state", "10", "--chosen", "east", "--alt", "east")
        assert code == 3
        assert "differ" in err

    def test_unknown_action_exits_3(self, run, reference_path):
        code, _, err = run("contrast", "--map", reference_path,
                           "--state", "10", "--chosen", "upward", "--alt", "south")
        assert code == 3
        assert "unknown action" in err

    def test_not_enabled_exits_3(self, run, reference_path):
        code, _, err = run("contrast", "--map", reference_path,
                           "--state", "10", "--chosen", "north", "--alt", "south")
        assert code == 3

    def test_non_critical_state_exits_3(self, run, reference_path):
        code, _, err = run("contrast", "--map", reference_path,
                           "--state", "11", "--chosen", "east", "--alt", "west")
        assert code == 3
        assert "not critical" in err


class TestRender:
    def test_route_arrows_and_critical_marks(self, run, reference_path):
        code, out, _ = run("render", "--map", reference_path)
        assert code == 0
        rows = out.splitlines()
        assert len(rows) == 5
        # start row: critical g5 moving south, then urban cells
        assert rows[1].startswith("*↓")
        # g10 and g11 carry east arrows; g12 a north arrow
        assert "*→  →" in rows[2]
        # dead-end marks stay plain
        assert "X" in rows[0]

    def test_buildings_render_as_hash(self, run, map_file):
        path = map_file("grid 2 2 p=1\nS B\nU D\n")
        code, out, _ = run("render", "--map", path)
        assert code == 0
        assert "#" in out

    def test_structured_rows(self, run, reference_path):
        code, out, _ = run("render", "--map", reference_path,
                           "--format", "structured")
        doc = json.loads(out)
        assert len(doc["rows"]) == 5
        assert len(doc["rows"][0]) == 5


class TestExitCodes:
    def test_missing_map_file_exits_1(self, run, tmp_path):
        code, _, err = run("solve", "--map", str(tmp_path / "absent.map"))
        assert code == 1
        assert "error" in err

    def test_malformed_map_exits_1(self, run, map_file):
        path = map_file("grid 2 1 p=0.9\nS Q\n")
        code, _, err = run("solve", "--map", path)
        assert code == 1
        assert "unknown cell code" in err

    def test_non_convergence_exits_2(self, run, map_file):
        # all four cells reach the destination, but a cycle lets the
        # maximising objective grow without bound
        path = map_file("grid 2 2 p=0.9\nS U\nU D\n")
        code, _, err = run("solve", "--map", path,
                           "--property", "max-distance",
                           "--max-iterations", "300")
        assert code == 2
        assert "no convergence" in err

    def test_all_dead_end_maximisation_exits_2(self, run, reference_path):
        # dead ends absorb the maximisation: every value becomes unreachable,
        # so no route can be extracted
        code, _, err = run("solve", "--map", reference_path,
                           "--property", "max-distance",
                           "--max-iterations", "300")
        assert code == 2
        assert "policy undefined" in err

    def test_unroutable_map_exits_2(self, run, map_file):
        path = map_file("grid 3 1 p=1\nS U D\nmask 1 W\n")
        code, _, err = run("solve", "--map", path)
        assert code == 2

    def test_bind_failure_exits_4(self, run, reference_path):
        blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        blocker.bind(("127.0.0.1", 0))
        blocker.listen(1)
        port = blocker.getsockname()[1]
        try:
            code, _, err = run("serve", "--map", reference_path,
                               "--port", str(port))
        finally:
            blocker.close()
        assert code == 4
        assert "cannot bind" in err


class TestLogging:
    def test_quiet_by_default(self, run, reference_path, monkeypatch):
        monkeypatch.delenv("CPLANNER_LOG", raising=False)
        _, _, err = run("solve", "--map", reference_path)
        assert err == ""

    def test_info_level_reports_progress(self, run, reference_path, monkeypatch):
        monkeypatch.setenv("CPLANNER_LOG", "info")
        code, _, err = run("solve", "--map", reference_path)
        assert code == 0
        assert "loaded 5x5 map" in err
        assert "critical states" in err

    def test_unknown_level_falls_back_to_error(self, run, reference_path,
                                               monkeypatch):
        monkeypatch.setenv("CPLANNER_LOG", "chatty")
        _, _, err = run("solve", "--map", reference_path)
        assert err == ""
