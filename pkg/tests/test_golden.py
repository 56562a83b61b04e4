from loopsum.golden import GOLDEN_FILE, compute_golden, diff_golden, load_golden, main


def test_golden_file_is_packaged():
    assert GOLDEN_FILE.is_file()
    data = load_golden()
    assert set(data) == {"values", "constants"}


def test_fresh_computation_matches_golden():
    assert diff_golden(compute_golden(), load_golden()) == []


def test_pinned_constants():
    consts = load_golden()["constants"]
    assert consts["ztilde/v*w/L=1"] == "2"
    others = {k: v for k, v in consts.items() if k != "ztilde/v*w/L=1"}
    assert set(others.values()) == {"1"}


def test_diff_reports_changes():
    stored = load_golden()
    changed = {"values": dict(stored["values"]), "constants": dict(stored["constants"])}
    changed["values"]["pp-fixed/L=1"] = "2"
    out = diff_golden(changed, stored)
    assert len(out) == 1 and "pp-fixed/L=1" in out[0]


def test_check_command_passes(capsys):
    assert main([]) == 0
