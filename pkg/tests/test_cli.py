import json

import pytest

from meanders.cli import main, render_svg
from meanders.meander import cache_path, compute_irreducible_counts, save_irreducible_counts
from meanders.nclat import parse_cycles


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    out = capsys.readouterr().out if capsys else ""
    return code, out


def test_enumerate_text(capsys, tmp_path):
    code, out = run_cli("enumerate", "--n", "3",
                        "--cache-dir", str(tmp_path), capsys=capsys)
    assert code == 0
    assert "loops  1: 8" in out
    assert "loops  3: 5" in out
    assert "[8, 12, 5]" in out


def test_enumerate_json_and_loops_filter(capsys, tmp_path):
    code, out = run_cli("enumerate", "--n", "2", "--format", "json",
                        "--loops", "1", "--cache-dir", str(tmp_path),
                        capsys=capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["counts"] == {"1": 2}


def test_enumerate_guard_exit_code(capsys, tmp_path):
    code, _ = run_cli("enumerate", "--n", "10",
                      "--cache-dir", str(tmp_path), capsys=capsys)
    assert code == 3


def test_enumerate_genfun_slice(capsys, tmp_path):
    code, out = run_cli("enumerate", "--n", "12", "--use-genfun",
                        "--max-r", "2", "--format", "json",
                        "--cache-dir", str(tmp_path), capsys=capsys)
    assert code == 0
    payload = json.loads(out)
    # k = 12 slice is the Catalan diagonal; deficits from the pipeline
    assert payload["counts"]["12"] == 208012
    assert payload["counts"]["11"] == 3922512
    assert payload["counts"]["10"] == 36936988


def test_irreducible_counts_output(capsys, tmp_path):
    code, out = run_cli("irreducible", "--n", "4", "--format", "csv",
                        "--cache-dir", str(tmp_path), capsys=capsys)
    assert code == 0
    assert "4,2,1,1,2" in out
    assert "4,3,1,2,20" in out


def test_irreducible_needs_argument(capsys, tmp_path):
    code, _ = run_cli("irreducible", "--cache-dir", str(tmp_path),
                      capsys=capsys)
    assert code == 3


def test_genfun_json(capsys, tmp_path):
    code, out = run_cli("genfun", "--max-r", "2", "--format", "json",
                        "--cache-dir", str(tmp_path), capsys=capsys)
    assert code == 0
    payload = json.loads(out)
    polys = {entry["r"]: entry["coeffs"] for entry in payload["polys"]}
    assert polys == {1: [2], 2: [8, 4, -12, 4]}
    f0 = next(e for e in payload["f_series"] if e["r"] == 0)
    assert f0["coeffs"][:5] == [1, 2, 5, 14, 42]


def test_genfun_guard(capsys, tmp_path):
    code, _ = run_cli("genfun", "--max-r", "7",
                      "--cache-dir", str(tmp_path), capsys=capsys)
    assert code == 3


def test_asympt_text(capsys, tmp_path):
    code, out = run_cli("asympt", "--max-r", "3",
                        "--cache-dir", str(tmp_path), capsys=capsys)
    assert code == 0
    assert "(2/sqrt(pi))" in out
    assert "(4/3/sqrt(pi))" in out


def test_verify_passes(capsys, tmp_path):
    code, out = run_cli("verify", "--cache-dir", str(tmp_path), capsys=capsys)
    assert code == 0
    assert "VERIFY PASS" in out
    assert "FAIL" not in out.replace("VERIFY PASS", "")


def test_verify_detects_corrupt_cache(capsys, tmp_path):
    counts = compute_irreducible_counts(4)
    save_irreducible_counts(cache_path(tmp_path, 4), 4, counts)
    path = cache_path(tmp_path, 4)
    path.write_text(path.read_text().replace("4,2,1,1,2", "4,2,1,1,3") + "junk")
    code, out = run_cli("verify", "--cache-dir", str(tmp_path), capsys=capsys)
    assert code == 1
    assert "FAIL" in out
    assert "irreducible-n04.txt" in out


def test_verify_recomputes_missing_cache(capsys, tmp_path):
    code, out = run_cli("verify", "--cache-dir", str(tmp_path / "fresh"),
                        capsys=capsys)
    assert code == 0
    assert "VERIFY PASS" in out


def test_render_deterministic(tmp_path, capsys):
    out1 = tmp_path / "a.svg"
    out2 = tmp_path / "b.svg"
    for out in (out1, out2):
        code, _ = run_cli("render", "--n", "3", "--alpha", "(2,3)",
                          "--beta", "(1,2)", "--output", str(out),
                          "--cache-dir", str(tmp_path), capsys=capsys)
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()
    text = out1.read_text()
    assert text.startswith("<svg ")
    assert "1 loop<" in text
    assert text.count("<path ") == 6  # three arcs above, three below


def test_render_colors_loops_separately(tmp_path):
    alpha = parse_cycles("", 2)
    beta = parse_cycles("", 2)
    svg = render_svg(alpha, beta)
    assert "2 loops" in svg
    assert svg.count("#e41a1c") == 2  # first loop: one arc above, one below
    assert svg.count("#377eb8") == 2


def test_render_rejects_bad_cycles(capsys, tmp_path):
    code, _ = run_cli("render", "--n", "4", "--alpha", "(1,3)(2,4)",
                      "--beta", "", "--output", str(tmp_path / "x.svg"),
                      "--cache-dir", str(tmp_path), capsys=capsys)
    assert code == 1


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["enumerate"])  # missing required --n
    assert err.value.code == 2


def test_cache_dir_env_fallback(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("MEANDER_CACHE_DIR", str(tmp_path))
    code, _ = run_cli("irreducible", "--n", "3", capsys=capsys)
    assert code == 0
    assert cache_path(tmp_path, 3).exists()


def test_output_independent_of_workers(tmp_path, capsys):
    outs = []
    for i, workers in enumerate(("1", "2")):
        out_path = tmp_path / f"counts{i}.txt"
        code, _ = run_cli("irreducible", "--n", "6", "--workers", workers,
                          "--output", str(out_path),
                          "--cache-dir", str(tmp_path / f"cache{i}"),
                          capsys=capsys)
        assert code == 0
        outs.append(out_path.read_bytes())
    assert outs[0] == outs[1]
