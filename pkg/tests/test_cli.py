import shutil
import subprocess

import pytest

from mapbij.cli import main, series_tsv
from mapbij.enumerate import GenSpec, gen_rooted_maps
from mapbij.flags import SURFACES, distance_labels, plane_loop, pointed_code, single_edge
from mapbij.mapio import format_map, parse_map


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


@pytest.mark.parametrize("name", sorted(SURFACES))
@pytest.mark.parametrize("policy", ["+", "-"])
def test_phi_then_psi_reproduces_the_file(tmp_path, capsys, name, policy):
    for fs in gen_rooted_maps(GenSpec(SURFACES[name], 2)):
        for v in sorted(set(fs.vertex_ids())):
            src = write(tmp_path, "in.map", format_map(fs, v))
            mob = str(tmp_path / "out.mob")
            assert run(capsys, "phi", src, "--policy", policy, "-o", mob)[0] == 0
            code, out, _ = run(capsys, "psi", mob, "--policy", policy)
            assert code == 0
            back, point = parse_map(out)
            assert pointed_code(distance_labels(back, point)) == pointed_code(distance_labels(fs, v))


def test_edge_rooted_minus(tmp_path, capsys):
    src = write(tmp_path, "loop.map", format_map(plane_loop(), 0))
    mob = str(tmp_path / "loop.mob")
    run(capsys, "phi", src, "-o", mob)
    code, _, err = run(capsys, "psi", mob, "--epsilon", "-")
    assert code == 1 and "epsilon=- forbidden for edge-rooted" in err


def test_not_well_labeled(tmp_path, capsys):
    text = format_map(single_edge()) + "white: 1\ngreen: 3\nlabels: 1=2\n"
    code, _, err = run(capsys, "psi", write(tmp_path, "m.mob", text))
    assert code == 1 and "labels must have minimum 1" in err


def test_parse_error_exit_2(tmp_path, capsys):
    bad = format_map(single_edge()).replace("t2: 2 1 4 3", "t2: 2 3 4 1")
    code, _, err = run(capsys, "phi", write(tmp_path, "bad.map", bad))
    assert code == 2 and "line 4" in err and "usage" in err


def test_invalid_map_exit_1(tmp_path, capsys):
    two = "nflags: 8\nt0: 3 4 1 2 7 8 5 6\nt1: 2 1 4 3 6 5 8 7\nt2: 2 1 4 3 6 5 8 7\nroot: 1\n"
    code, _, err = run(capsys, "phi", write(tmp_path, "two.map", two))
    assert code == 1 and "not transitive" in err


def test_argument_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["series", "--surface", "mars"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["count", "--surface", "sphere", "--max-edges", "9"])
    assert e.value.code == 2


def test_series_matches_module(capsys):
    code, out, _ = run(capsys, "series", "--surface", "torus", "--order", "5")
    assert code == 0 and out == series_tsv("torus", 5, False, "auto")
    assert out.splitlines()[1:4] == ["0\t0", "1\t1", "2\t28"]
    code, out, _ = run(capsys, "series", "--surface", "sphere", "--order", "2", "--pointed")
    assert out.splitlines()[-2:] == ["1\t12", "2\t128"]


def test_count_schemes_polygon(tmp_path, capsys):
    code, out, _ = run(capsys, "count", "--surface", "sphere", "--max-edges", "2", "--class", "bipartite")
    assert code == 0 and out.splitlines()[0].startswith("n\trooted_maps") and out.rstrip().endswith("true")
    code, out, _ = run(capsys, "schemes", "--surface", "torus")
    assert code == 0 and len(out.splitlines()) == 12
    code, out, _ = run(capsys, "polygon", write(tmp_path, "e.map", format_map(single_edge())))
    assert out == "polygon: 2\npair: 1 2 straight\n"
    code, _, err = run(capsys, "polygon", write(tmp_path, "l.map", format_map(plane_loop())))
    assert code == 1 and "exactly one face" in err


def test_verify_single_surface(capsys):
    code, out, _ = run(capsys, "verify", "--surface", "torus", "--max-edges", "2")
    assert code == 0 and "FAIL" not in out and out.rstrip().endswith("4 passed, 0 failed")


@pytest.mark.skipif(shutil.which("mapbij") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["mapbij", "series", "--surface", "klein", "--order", "2", "--pointed"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[-1] == "2\t348"
