import io
import sys

from gpforge.cli import EXIT_INPUT, EXIT_OK, EXIT_USAGE, main


def run_cli(argv, stdin_text="", monkeypatch=None, capsys=None):
    if stdin_text:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_text))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


BS23 = "gens a t\nrel t^-1 a^2 t = a^3\n"


def test_abelianize_file_and_stdin(tmp_path, monkeypatch, capsys):
    path = tmp_path / "bs.grp"
    path.write_text(BS23, encoding="utf-8")
    code, out, _ = run_cli(["abelianize", str(path)], capsys=capsys, monkeypatch=monkeypatch)
    assert code == EXIT_OK and out == "rank=1 torsion=[]\n"
    code, out, _ = run_cli(["abelianize", "-"], stdin_text=BS23, capsys=capsys, monkeypatch=monkeypatch)
    assert code == EXIT_OK and out == "rank=1 torsion=[]\n"


def test_abelianize_torsion_format(tmp_path, monkeypatch, capsys):
    path = tmp_path / "p.grp"
    path.write_text("gens a b\nrel a^2\nrel b^6\nrel a^-1 b^-1 a b\n", encoding="utf-8")
    code, out, _ = run_cli(["abelianize", str(path)], capsys=capsys, monkeypatch=monkeypatch)
    assert code == EXIT_OK and out == "rank=0 torsion=[2,6]\n"


def test_normalize(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["normalize", "--bs", "2,3", "t^-1 a^4 t a^-6"], capsys=capsys, monkeypatch=monkeypatch
    )
    assert code == EXIT_OK and out == "1\n"


def test_certify_nontrivial(tmp_path, monkeypatch, capsys):
    path = tmp_path / "bs.grp"
    path.write_text(BS23, encoding="utf-8")
    code, out, _ = run_cli(
        ["certify-nontrivial", str(path), "--word", "a", "--degree", "5"],
        capsys=capsys,
        monkeypatch=monkeypatch,
    )
    assert code == EXIT_OK
    assert out == "hom a: (1 2 3 4 5) t: (2 5)(3 4)\n"
    code, out, _ = run_cli(
        ["certify-nontrivial", str(path), "--word", "a", "--degree", "4"],
        capsys=capsys,
        monkeypatch=monkeypatch,
    )
    assert code == EXIT_OK and out == "not found within bound\n"


def test_triangulate_and_build_pipe(tmp_path, monkeypatch, capsys):
    path = tmp_path / "circle.grp"
    path.write_text("gens a\n", encoding="utf-8")
    out_path = tmp_path / "circle.sc"
    code, _, _ = run_cli(
        ["triangulate", str(path), "-o", str(out_path)], capsys=capsys, monkeypatch=monkeypatch
    )
    assert code == EXIT_OK
    text = out_path.read_text(encoding="utf-8")
    assert text.splitlines()[0] == "vertices 4"

    gx = tmp_path / "mu2.gx"
    gx.write_text('(mu (atom "F1" :pres "gens g") :k 2)\n', encoding="utf-8")
    code, out, _ = run_cli(["build", str(gx)], capsys=capsys, monkeypatch=monkeypatch)
    assert code == EXIT_OK
    assert out.startswith("gens g s_1 d_1 s_2 d_2 t\n")


def test_infer_derivable_and_not(tmp_path, monkeypatch, capsys):
    gx = tmp_path / "tl.gx"
    gx.write_text(
        '(direct (atom "T" :pres "gens p q" :facts (thompson-t))'
        ' (atom "L" :pres "gens x y" :facts ((hyp-manifold 3))))\n',
        encoding="utf-8",
    )
    code, out, _ = run_cli(
        ["infer", str(gx), "--query", "large-hb 6"], capsys=capsys, monkeypatch=monkeypatch
    )
    assert code == EXIT_OK and out == "DERIVED via R17\n"
    code, out, _ = run_cli(
        ["infer", str(gx), "--query", "large-hb 6", "--cert"],
        capsys=capsys,
        monkeypatch=monkeypatch,
    )
    assert "R16" in out and "A0" in out
    code, out, _ = run_cli(
        ["infer", str(gx), "--query", "mitotic"], capsys=capsys, monkeypatch=monkeypatch
    )
    assert code == EXIT_OK and out == "NOT DERIVABLE\n"


def test_reduce_writes_presentation_and_expr(tmp_path, monkeypatch, capsys):
    lam = tmp_path / "f2.grp"
    lam.write_text("gens a b\n", encoding="utf-8")
    out_p = tmp_path / "out.grp"
    out_e = tmp_path / "out.gx"
    code, _, _ = run_cli(
        [
            "reduce",
            "--construction",
            "gamma",
            "--lambda",
            str(lam),
            "--oracle",
            "free",
            "--word",
            "a^-1 b^-1 a b",
            "-o",
            str(out_p),
            "--expr",
            str(out_e),
        ],
        capsys=capsys,
        monkeypatch=monkeypatch,
    )
    assert code == EXIT_OK
    assert out_p.read_text(encoding="utf-8") == "gens a b z t\n"
    assert out_e.read_text(encoding="utf-8").startswith("(free-product")
    # Built expression re-derives the acylindrical-hyperbolicity chain.
    code, out, _ = run_cli(
        ["infer", str(out_e), "--query", "large-hb 2"], capsys=capsys, monkeypatch=monkeypatch
    )
    assert code == EXIT_OK and out == "DERIVED via R11\n"


def test_meier_probe_lines(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["meier-probe", "--max-len", "3", "--budget", "50"], capsys=capsys, monkeypatch=monkeypatch
    )
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "t\tin-F"
    assert all("\t" in line for line in lines)


def test_corpus_deterministic_and_seeded(tmp_path, monkeypatch, capsys):
    code, first, _ = run_cli(
        ["corpus", "--family", "witness", "--count", "3", "--seed", "5"],
        capsys=capsys,
        monkeypatch=monkeypatch,
    )
    assert code == EXIT_OK
    code, second, _ = run_cli(
        ["corpus", "--family", "witness", "--count", "3", "--seed", "5"],
        capsys=capsys,
        monkeypatch=monkeypatch,
    )
    assert first == second
    monkeypatch.setenv("GPFORGE_SEED", "6")
    code, third, _ = run_cli(
        ["corpus", "--family", "witness", "--count", "3", "--seed", "5"],
        capsys=capsys,
        monkeypatch=monkeypatch,
    )
    assert third != first
    monkeypatch.delenv("GPFORGE_SEED")
    code, mu_out, _ = run_cli(
        ["corpus", "--family", "mu", "--depth", "2"], capsys=capsys, monkeypatch=monkeypatch
    )
    assert "## mu stage 2" in mu_out


def test_usage_error_exit_code(monkeypatch, capsys):
    code, _, err = run_cli(["normalize", "--bs", "nonsense", "a"], capsys=capsys, monkeypatch=monkeypatch)
    assert code == EXIT_USAGE
    code, _, _ = run_cli(["no-such-command"], capsys=capsys, monkeypatch=monkeypatch)
    assert code == EXIT_USAGE


def test_input_error_exit_code(tmp_path, monkeypatch, capsys):
    code, _, err = run_cli(["abelianize", str(tmp_path / "missing.grp")], capsys=capsys, monkeypatch=monkeypatch)
    assert code == EXIT_INPUT
    bad = tmp_path / "bad.grp"
    bad.write_text("gens a\nrel b\n", encoding="utf-8")
    code, _, err = run_cli(["abelianize", str(bad)], capsys=capsys, monkeypatch=monkeypatch)
    assert code == EXIT_INPUT and "line 2" in err


def test_build_pipes_into_abelianize(tmp_path, monkeypatch, capsys):
    gx = tmp_path / "mu2.gx"
    gx.write_text('(mu (atom "F1" :pres "gens g") :k 2)\n', encoding="utf-8")
    code, built, _ = run_cli(["build", str(gx)], capsys=capsys, monkeypatch=monkeypatch)
    assert code == EXIT_OK
    code, out, _ = run_cli(["abelianize", "-"], stdin_text=built, capsys=capsys, monkeypatch=monkeypatch)
    assert code == EXIT_OK and out == "rank=1 torsion=[]\n"


def test_triangulate_rejects_invalid_presentation_as_input_error(tmp_path, monkeypatch, capsys):
    bad = tmp_path / "bad.grp"
    bad.write_text("gens a\nrel 1\n", encoding="utf-8")
    code, _, err = run_cli(["triangulate", str(bad)], capsys=capsys, monkeypatch=monkeypatch)
    assert code == EXIT_INPUT and "input error" in err
