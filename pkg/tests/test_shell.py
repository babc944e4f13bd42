import json
import re
import shlex
from pathlib import Path

import numpy as np
import pytest
import yaml

from bubbletons.errors import ConfigError
from bubbletons.shell.cli import EXIT_CHECK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_IO, EXIT_OK, main, run
from bubbletons.shell.config import (StageConfig, build_config, load_document, parse_coeffs,
                                     parse_complex, parse_stage, parse_tolerances)
from bubbletons.shell.mesh import export_mesh, grid_mesh, read_obj

README = Path(__file__).resolve().parent.parent / "README.md"


def readme_block(lang):
    text = README.read_text()
    return re.findall(rf"```{lang}\n(.*?)```", text, re.S)


def readme_commands():
    out = []
    for block in readme_block("console"):
        for line in block.splitlines():
            if not line.startswith("$ bubbletons "):
                continue
            cmd, _, comment = line[2:].partition("#")
            code = int(re.search(r"exit (\d)", comment).group(1))
            out.append((shlex.split(cmd)[1:], code))
    return out


def test_parse_complex_forms():
    assert parse_complex("1+2i") == 1 + 2j
    assert parse_complex(" -0.5 - 1.5i ") == -0.5 - 1.5j
    assert parse_complex("3") == 3
    assert parse_complex("i") == 1j
    assert parse_complex(2.5) == 2.5
    with pytest.raises(ConfigError):
        parse_complex("one")


def test_parse_coeffs():
    assert parse_coeffs("1+i,-2") == (1 + 1j, -2)
    assert parse_coeffs([1, "2i"]) == (1, 2j)
    for bad in ("1", "1,2,3", "0,0"):
        with pytest.raises(ConfigError):
            parse_coeffs(bad)


def test_parse_stage():
    assert parse_stage("1,3") == StageConfig((1, 3))
    assert parse_stage("2,5,-1.5") == StageConfig((2, 5), centre=-1.5)
    got = parse_stage({"pair": [1, 2], "branch": "-", "coeffs": "1,i"})
    assert got == StageConfig((1, 2), -1, (1, 1j), None)
    for bad in ("1", {"branch": "+"}, {"pair": [1, 2], "colour": 1},
                {"pair": [1, 2], "coeffs": "1,1", "centre": 0.0}):
        with pytest.raises(ConfigError):
            parse_stage(bad)


def test_parse_tolerances():
    assert parse_tolerances(["closure=1e-6"]) == {"closure": 1e-6}
    with pytest.raises(ConfigError):
        parse_tolerances(["nonsense=1"])
    with pytest.raises(ConfigError):
        parse_tolerances(["closure"])


def test_flags_override_document():
    doc = {"necksize": 0.2, "pair": "1,3", "grid": {"nx": 11, "ny": 21},
           "tolerances": {"closure": 1e-6, "conformal": 1e-7}}
    cfg = build_config(doc, {"necksize": 0.5, "tolerances": ["closure=1e-5"]})
    assert cfg.necksize == 0.5 and cfg.pair == (1, 3) and (cfg.nx, cfg.ny) == (11, 21)
    assert cfg.tolerance("closure") == 1e-5 and cfg.tolerance("conformal") == 1e-7
    assert cfg.tolerance("dihedral") == 2e-2


def test_config_errors(tmp_path):
    for doc in ({"colour": 1}, {"mu": 2.0, "pair": "1,2"}, {"xrange": "1,0"}, {"nx": 0},
                {"mode": "draw"}, {"necksize": "nan"}, {"backend": "gpu"}, {"cover": 1.5}):
        with pytest.raises(ConfigError):
            build_config(doc)
    path = tmp_path / "bad.yaml"
    path.write_text("- just\n- a list\n")
    with pytest.raises(ConfigError):
        load_document(path)
    path.write_text("necksize: [unclosed\n")
    with pytest.raises(ConfigError):
        load_document(path)


def test_grid_mesh_of_one_quad():
    pos = np.array([[[0, 0, 0], [0, 1, 0]], [[1, 0, 0], [1, 1, 0]]], float)
    normals = np.tile([0.0, 0.0, 1.0], (2, 2, 1))
    mesh = grid_mesh(pos, normals)
    assert mesh.faces.shape == (2, 3)
    v = mesh.vertices
    for a, b, c in mesh.faces:
        # winding is counter-clockwise about f_x x f_y = +z
        assert np.cross(v[b] - v[a], v[c] - v[a])[2] > 0
    flipped = grid_mesh(pos, normals, flip=True)
    for a, b, c in flipped.faces:
        assert np.cross(v[b] - v[a], v[c] - v[a])[2] < 0


def test_obj_round_trip(tmp_path, rng):
    pos, nrm = rng.normal(size=(4, 5, 3)), rng.normal(size=(4, 5, 3))
    path = tmp_path / "m.obj"
    mesh = export_mesh(pos, nrm, path)
    back = read_obj(path)
    assert np.array_equal(back.vertices, mesh.vertices)
    assert np.array_equal(back.normals, mesh.normals)
    assert np.array_equal(back.faces, mesh.faces)
    assert len(mesh.faces) == 2 * 3 * 4
    with pytest.raises(ValueError):
        export_mesh(np.full((2, 2, 3), np.nan), nrm[:2, :2], tmp_path / "n.obj")


def test_exported_seam_closes(tmp_path):
    out = tmp_path / "b.obj"
    cfg = build_config({"mode": "export", "necksize": 0.2, "pair": "1,3", "grid": "21,25",
                        "out": str(out)})
    res = run(cfg)
    assert res.report is None and res.exit_code == EXIT_OK
    mesh = read_obj(out)
    grid = mesh.vertices.reshape(21, 25, 3)
    assert np.max(np.abs(grid[:, 0] - grid[:, -1])) < 1e-8
    assert np.allclose(np.linalg.norm(mesh.normals, axis=1), 1.0, atol=1e-12)


@pytest.mark.parametrize("argv,code", readme_commands(), ids=lambda v: " ".join(v)
                         if isinstance(v, list) else str(v))
def test_readme_cli_examples(argv, code, tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == code
    out, err = capsys.readouterr()
    if code == EXIT_OK and argv[0] != "resonance" and argv[0] != "export":
        assert out.rstrip().endswith("all checks passed")
    if code == EXIT_CHECK:
        assert "FAIL" in out
    if code in (EXIT_CONFIG, EXIT_DOMAIN, EXIT_IO):
        assert err and not out
    if "--report" in argv:
        report = json.loads((tmp_path / argv[argv.index("--report") + 1]).read_text())
        assert report["passed"] is True
        assert {c["name"] for c in report["checks"]} == {"conformal", "mean_curvature", "closure",
                                                        "parallel_distance", "dihedral"}


def test_readme_examples_cover_every_exit_code():
    assert {code for _, code in readme_commands()} == {0, 1, 2, 3, 4}


def test_readme_job_file(tmp_path, monkeypatch, capsys):
    (block,) = readme_block("yaml")
    doc = yaml.safe_load(block)
    assert len(doc["stages"]) == 4
    path = tmp_path / "job.yaml"
    path.write_text(block)
    monkeypatch.chdir(tmp_path)
    assert main(["verify", "--config", "job.yaml", "--report", "r.json"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "cover=12" in out
    report = json.loads((tmp_path / "r.json").read_text())
    closure = next(c for c in report["checks"] if c["name"] == "closure")
    assert closure["params"]["m_cover"] == 12 and closure["passed"]


def test_outputs_are_byte_identical(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    argv = ["transform", "--necksize", "-0.125", "--pair", "2,3", "--grid", "21,49"]
    for tag in ("a", "b"):
        assert main(argv + ["--out", f"{tag}.obj", "--report", f"{tag}.json"]) == EXIT_OK
    assert (tmp_path / "a.obj").read_bytes() == (tmp_path / "b.obj").read_bytes()
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    report = json.loads((tmp_path / "a.json").read_text())
    assert report["passed"] and all("params" in c for c in report["checks"])


def test_resonance_table_written(tmp_path):
    out = tmp_path / "table.txt"
    assert main(["resonance", "--necksize", "0.5", "--nmax", "3", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 2 * 3  # (1,2), (1,3), (2,3); m_max defaults to n_max
    assert "13.928203230275509" in out.read_text()


def test_cli_error_paths(tmp_path, capsys):
    assert main(["profile", "--necksize", "0.7"]) == EXIT_DOMAIN
    assert main(["transform", "--necksize", "0.2", "--mu", "-0.25"]) == EXIT_DOMAIN  # branch point
    assert main(["profile", "--config", str(tmp_path / "nope.yaml")]) == EXIT_IO
    assert main(["transform", "--necksize", "0.2", "--tol", "closure=abc"]) == EXIT_CONFIG
    assert main(["bianchi", "--necksize", "0.2"]) == EXIT_CONFIG
    assert main(["bianchi", "--necksize", "0.2", "--stage", "1,2", "--stage", "1,2,2"]) == EXIT_DOMAIN
    with pytest.raises(SystemExit):
        main(["transform", "--mu", "2", "--pair", "1,2"])
    capsys.readouterr()


def test_tolerance_override_can_fail_a_check(tmp_path, capsys):
    argv = ["profile", "--necksize", "0.2", "--grid", "21,25"]
    assert main(argv) == EXIT_OK
    assert main(argv + ["--tol", "mean_curvature=1e-14"]) == EXIT_CHECK
    capsys.readouterr()
