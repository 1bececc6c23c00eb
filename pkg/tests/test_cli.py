from osmot.cli import main


def run(args):
    return main(args)


def test_gen_check_smooth_flow(tmp_path, capsys):
    mesh = tmp_path / "patch.mesh"
    out = tmp_path / "smoothed.mesh"
    csv = tmp_path / "report.csv"

    assert run(["gen", "--kind", "patch32", "--seed", "1",
                "--distortion", "0.45", "--output", str(mesh)]) == 0
    assert run(["check", "--input", str(mesh)]) == 0
    captured = capsys.readouterr()
    assert "minQ2" in captured.out

    assert run(["smooth", "--input", str(mesh), "--output", str(out),
                "--max-loops", "10", "--report", str(csv)]) == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == "loop,minQ2,meanQ2,minQ1,flagged,inverted"
    assert len(lines) == 12  # header + initial state + 10 loops
    final_min_q2 = float(lines[-1].split(",")[1])
    assert final_min_q2 >= 0.80


def test_check_invalid_mesh_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.mesh"
    bad.write_text(
        "osmot-mesh v1\nnodes 3\n0 0 0 F\n1 1 0 F\n2 0 1 F\n"
        "triangles 1\n0 0 2 1\n")
    assert run(["check", "--input", str(bad)]) == 1
    captured = capsys.readouterr()
    assert "triangle 0" in captured.err


def test_missing_file_exit_1(tmp_path):
    assert run(["check", "--input", str(tmp_path / "nope.mesh")]) == 1


def test_bad_arguments_exit_2(tmp_path, capsys):
    assert run(["smooth", "--input", "x"]) == 2  # missing --output
    assert run(["gen", "--kind", "nonsense", "--output", "x"]) == 2
    capsys.readouterr()


def test_smoother_none_identity(tmp_path):
    mesh = tmp_path / "patch.mesh"
    out = tmp_path / "copy.mesh"
    run(["gen", "--kind", "patch32", "--seed", "1", "--distortion", "0.45",
         "--output", str(mesh)])
    assert run(["smooth", "--input", str(mesh), "--output", str(out),
                "--smoother", "none"]) == 0
    assert out.read_bytes() == mesh.read_bytes()


def test_laplacian_smoother_runs(tmp_path):
    mesh = tmp_path / "patch.mesh"
    out = tmp_path / "lap.mesh"
    run(["gen", "--kind", "patch32", "--seed", "1", "--distortion", "0.45",
         "--output", str(mesh)])
    assert run(["smooth", "--input", str(mesh), "--output", str(out),
                "--smoother", "laplacian", "--max-loops", "10"]) == 0
    assert out.read_bytes() != mesh.read_bytes()


def test_svg_snapshots(tmp_path):
    mesh = tmp_path / "patch.mesh"
    out = tmp_path / "out.mesh"
    svg_dir = tmp_path / "svgs"
    run(["gen", "--kind", "patch32", "--seed", "1", "--distortion", "0.45",
         "--output", str(mesh)])
    assert run(["smooth", "--input", str(mesh), "--output", str(out),
                "--max-loops", "4", "--no-early-exit",
                "--svg-every", "2", "--svg-dir", str(svg_dir)]) == 0
    names = sorted(p.name for p in svg_dir.iterdir())
    assert names == ["loop0000.svg", "loop0002.svg", "loop0004.svg"]


def test_custom_tolerances_accepted(tmp_path):
    mesh = tmp_path / "patch.mesh"
    out = tmp_path / "out.mesh"
    run(["gen", "--kind", "patch32", "--seed", "2", "--distortion", "0.3",
         "--output", str(mesh)])
    assert run(["smooth", "--input", str(mesh), "--output", str(out),
                "--qmin", "0.7", "--eps", "1e-6", "--delta", "1e-5",
                "--eta", "0.1", "--rref", "0.5", "--reflag"]) == 0


def test_gen_all_kinds(tmp_path):
    for kind in ["patch32", "graded", "horseshoe", "indentedbox"]:
        out = tmp_path / f"{kind}.mesh"
        assert run(["gen", "--kind", kind, "--distortion", "0.5",
                    "--output", str(out)]) == 0
        assert out.exists()
