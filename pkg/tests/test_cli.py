import json

from azw import cli, monoid
from azw.puiseux import format_puiseux, parse_puiseux
from azw.zeta import parse_product


def run_cli(capsys, *args):
    code = cli.main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_zeta_soule(capsys):
    code, out, _ = run_cli(capsys, "zeta", "soule", "t + 2t^{1/2} + 1")
    assert code == 0
    assert out.strip() == "1 / (s (s-1/2)^2 (s-1))"


def test_zeta_tensor(capsys):
    code, out, _ = run_cli(capsys, "zeta", "tensor", "s / (s-1/2)", "s / (s-1/2)")
    assert code == 0
    assert out.strip() == "(s-1/2)^2 / (s (s-1))"


def test_zeta_reflect_and_funceq(capsys):
    code, out, _ = run_cli(capsys, "zeta", "reflect", "1 / (s (s-1))", "--d", "1")
    assert code == 0 and out.strip() == "sign 1: 1 / (s (s-1))"
    code, out, _ = run_cli(capsys, "zeta", "funceq", "(s-1/2)^2 / (s (s-1))", "--d", "1")
    assert code == 0 and out.strip() == "symmetric true sign 1"
    code, out, _ = run_cli(capsys, "zeta", "funceq", "1 / (s (s-2))", "--d", "1")
    assert out.strip() == "symmetric false sign none"


def test_printed_expressions_reparse(capsys):
    from azw.zeta import soule_zeta

    _, out, _ = run_cli(capsys, "zeta", "soule", "3t^2 - 6t + 3")
    assert parse_product(out.strip()) == soule_zeta(parse_puiseux("3t^2 - 6t + 3"))
    # puiseux round trip through the canonical printer
    f = parse_puiseux("t - 2t^{1/2} + 1")
    assert parse_puiseux(format_puiseux(f)) == f


def test_monoid_subcommands(tmp_path, capsys):
    path = tmp_path / "p1.json"
    monoid.save_scheme(monoid.projective_space(1), str(path))
    code, out, _ = run_cli(capsys, "monoid", "envelopes", "--in", str(path))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "ceiling: t + 1"
    assert lines[1] == "floor: t + 1"
    code, out, _ = run_cli(capsys, "monoid", "counts", "--in", str(path), "--limit", "10", "--format", "csv")
    rows = out.strip().splitlines()
    assert rows[0] == "p,m,q,count"
    assert rows[1] == "2,1,2,3"
    assert rows[3] == "2,2,4,5"
    code, out, _ = run_cli(capsys, "monoid", "zeta", "--in", str(path))
    assert "zeta ceiling: 1 / (s (s-1))" in out


def test_family_counts_csv(capsys):
    code, out, _ = run_cli(capsys, "family", "An:n=3", "counts", "--limit", "10", "--format", "csv")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "p,m,q,count"
    assert rows[1] == "2,1,2,0"
    assert rows[4] == "5,1,5,2"


def test_family_envelopes(capsys):
    code, out, _ = run_cli(capsys, "family", "pell:delta=5", "envelopes")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "ceiling: 2t"
    assert lines[1] == "floor: t - 1"
    assert lines[2] == "qfiber ceiling: t + 1"
    code, out, _ = run_cli(capsys, "family", "Gn:n=5", "envelopes", "--exclude", "2")
    assert out.strip().splitlines()[0] == "ceiling: t - 3"


def test_curve_count_and_classify(capsys):
    code, out, _ = run_cli(capsys, "curve", "count", "--a", "1", "--b", "0", "--p", "5")
    assert code == 0 and out.strip() == "4"
    code, out, _ = run_cli(capsys, "curve", "count", "--a", "1", "--b", "0", "--p", "5", "--m", "2")
    assert out.strip() == "32"
    code, out, _ = run_cli(capsys, "curve", "classify", "--a", "1", "--b", "0", "--p", "7")
    assert out.strip() == "supersingular"


def test_curve_census_files(tmp_path, capsys):
    csv_in = tmp_path / "curves.csv"
    csv_in.write_text("label,a,b\nmx,-1,0\npx,1,0\n")
    out_csv = tmp_path / "census.csv"
    out_json = tmp_path / "summary.json"
    code, out, _ = run_cli(
        capsys, "curve", "census", "--in", str(csv_in), "--label", "mx",
        "--xmax", "2000", "--out", str(out_csv), "--summary", str(out_json),
    )
    assert code == 0
    summary = json.loads(out_json.read_text())
    assert summary["x_max"] == 2000
    assert summary["counts"]["supersingular"] > 0
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0] == "p,a_p,class"
    classes = [line.rsplit(",", 1)[1] for line in lines[1:]]
    assert set(classes) <= {"champion", "trailing", "supersingular", "other"}
    assert classes.count("supersingular") == summary["counts"]["supersingular"]
    assert json.loads(out)["x_max"] == 2000


def test_census_thread_determinism(tmp_path, capsys):
    csv_in = tmp_path / "curves.csv"
    csv_in.write_text("mx,-1,0\n")
    outputs = []
    for threads in ("1", "4"):
        out_csv = tmp_path / f"census{threads}.csv"
        code, _, _ = run_cli(
            capsys, "curve", "census", "--in", str(csv_in), "--label", "mx",
            "--xmax", "3000", "--out", str(out_csv), "--threads", threads,
        )
        assert code == 0
        outputs.append(out_csv.read_bytes())
    assert outputs[0] == outputs[1]


def test_fit_verify_exit_codes(capsys):
    code, out, _ = run_cli(
        capsys, "fit", "verify", "--mode", "ceiling", "--candidate", "t - 2",
        "--source", "An:n=3", "--limit", "2000",
    )
    assert code == 0 and "verified" in out
    code, out, _ = run_cli(
        capsys, "fit", "verify", "--mode", "ceiling", "--candidate", "t - 5",
        "--source", "An:n=1", "--limit", "2000",
    )
    assert code == 2 and "bound_violated" in out
    code, out, _ = run_cli(
        capsys, "fit", "verify", "--mode", "ceiling", "--candidate", "t + 1",
        "--source", "Gn:n=2", "--limit", "500",
    )
    assert code == 3 and "insufficient_witnesses" in out


def test_fit_verify_puiseux_curve_source(capsys):
    code, out, _ = run_cli(
        capsys, "fit", "verify", "--mode", "ceiling", "--puiseux",
        "--candidate", "t + 2t^{1/2} + 1", "--source", "curve:a=-1,b=0",
        "--limit", "5000", "--witnesses", "2",
    )
    assert code == 0 and "verified" in out


def test_fit_search_and_reject(capsys):
    code, out, _ = run_cli(
        capsys, "fit", "search", "--source", "An:n=3", "--degree", "1",
        "--box=-5:5", "--limit", "2000",
    )
    assert code == 0
    assert "ceiling: t - 2" in out
    assert "floor: t - 3" in out
    code, out, _ = run_cli(
        capsys, "fit", "reject-linear", "--source", "curve:a=-1,b=0",
        "--c-from", "0", "--c-to", "2", "--limit", "2000", "--primes-only",
    )
    assert code == 0
    assert "c=0: ceiling bound_violated" in out


def test_monoid_source_spec(tmp_path, capsys):
    path = tmp_path / "f13.json"
    monoid.save_scheme(monoid.spec_f1n(3), str(path))
    code, out, _ = run_cli(
        capsys, "fit", "verify", "--mode", "ceiling", "--candidate", "3",
        "--source", f"monoid:{path}", "--limit", "1000",
    )
    assert code == 0 and "verified" in out


def test_malformed_inputs_exit_1(tmp_path, capsys):
    code, _, err = run_cli(capsys, "monoid", "counts", "--in", str(tmp_path / "missing.json"))
    assert code == 1 and "error:" in err
    code, _, err = run_cli(capsys, "family", "Xn:n=3", "counts")
    assert code == 1
    code, _, err = run_cli(capsys, "fit", "verify", "--candidate", "t+", "--source", "An:n=3")
    assert code == 1
    code, _, err = run_cli(capsys, "curve", "count", "--a", "0", "--b", "0", "--p", "5")
    assert code == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "monoid", "counts", "--in", str(bad))
    assert code == 1


def test_threads_resolution(monkeypatch):
    cfg = cli.RunConfig("curve")
    monkeypatch.setenv("AZW_THREADS", "7")
    assert cli._threads(cfg) == 7
    cfg.threads = 2  # explicit flag beats the environment
    assert cli._threads(cfg) == 2
    monkeypatch.delenv("AZW_THREADS")
    cfg.threads = 0
    assert cli._threads(cfg) >= 1


def test_repro_single_cheap_criterion(capsys):
    code, out, _ = run_cli(capsys, "repro", "--criterion", "1")
    assert code == 0
    assert "criterion 01" in out and "PASS" in out
