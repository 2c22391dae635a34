import io
import re
import subprocess
import sys

import pytest

from surfdraw.cli import AttemptBuffer, OptionError, draw_one_map, parse_options, run
from surfdraw.codec import ASCII, write_planarcode
from surfdraw.generators import K33_CODE, k4_torus, k33_torus, triangle
from surfdraw.options import DISJOINT, EDGE, EDGE_FIXED, FACE_FIXED, VERTEX, VERTEX_FIXED


def _run(data: bytes, argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(io.BytesIO(data), argv, out, err)
    return status, out.getvalue(), err.getvalue()


def test_parse_options_examples():
    spec = parse_options("cf 7 2 d 4 red s".split())
    assert spec.center_policy == FACE_FIXED and spec.center_args == (7, 2)
    assert spec.degree_colors == [(4, "red")] and spec.straight_sides
    spec = parse_options("NE 1 2 NE 3 4 NV 5 V b i C".split())
    assert spec.forbidden_edges == [(1, 2), (3, 4)] and spec.forbidden_vertices == [5]
    assert spec.vertex_cutting and spec.letter_labels and spec.info and spec.curved_outer
    assert parse_options(["e"]).center_policy == EDGE
    assert parse_options(["ce", "1", "4"]).center_policy == EDGE_FIXED
    assert parse_options(["v"]).center_policy == VERTEX
    assert parse_options(["v", "cv", "5"]).center_policy == VERTEX_FIXED
    assert parse_options(["-T"]).mode == DISJOINT
    assert parse_options(["if", "--threshold", "0.2"]).quality_threshold == 0.2


@pytest.mark.parametrize(
    "argv",
    [["cf", "1"], ["cf", "a", "b"], ["e", "v"], ["cf", "1", "2", "ce", "1", "2"], ["-T", "e"], ["zz"], ["d", "4"], ["cv", "0"]],
)
def test_bad_options(argv):
    with pytest.raises(OptionError):
        parse_options(argv)
    status, out, err = _run(b"", argv)
    assert status == 2 and out == "" and "usage:" in err


def test_empty_stream():
    assert _run(b"", []) == (0, "", "")
    assert _run(write_planarcode([]), [])[0:2] == (0, "")


def test_two_maps_and_progress_lines():
    status, out, err = _run(write_planarcode([k33_torus(), triangle()]), ["i"])
    assert status == 0
    assert out.count("\\begin{tikzpicture}") == 2
    assert out.startswith("% map 1\n") and "\n% map 2\n" in out
    lines = err.strip().splitlines()
    assert len(lines) == 2
    for k, line in enumerate(lines, start=1):
        assert re.fullmatch(rf"map {k}: attempts=\d+ systems=\d+ score=\d+\.\d{{4}} time=\d+\.\d{{3}}", line)


def test_ascii_input_is_detected():
    status, out, _ = _run(K33_CODE.encode(), [])
    assert status == 0 and out.count("\\begin{tikzpicture}") == 1
    status, out, _ = _run(write_planarcode([k33_torus()], ASCII), ["--ascii"])
    assert status == 0


def test_corrupt_tail_keeps_earlier_pictures():
    data = write_planarcode([k33_torus()]) + bytes([5, 2, 3])
    status, out, err = _run(data, [])
    assert status == 1
    assert out.count("\\begin{tikzpicture}") == 1
    assert "unreadable input" in err


def test_per_map_errors_do_not_stop_the_stream():
    # edge {1,4} of the K33 code is forbidden; the K4 torus map has no vertex 5 or 6
    args = ["cv", "6"]
    status, out, err = _run(write_planarcode([k4_torus(), k33_torus()]), args)
    assert status == 1
    assert "map 1: error" in err
    assert "% map 2" in out and "% map 1" not in out


def test_fixed_center_must_exist():
    status, _, err = _run(write_planarcode([k33_torus()]), ["cf", "1", "2"])
    assert status == 1 and "map 1: error" in err


def test_option_o_needs_a_plane_map():
    status, _, err = _run(write_planarcode([k33_torus()]), ["O"])
    assert status == 1 and "only available for plane maps" in err


def test_interior_faces_mode_searches_every_configuration():
    res = draw_one_map(k33_torus(), parse_options(["if"]))
    assert res.attempts == 18
    plain = draw_one_map(k33_torus(), parse_options([]))
    assert plain.attempts <= 18


def test_attempt_buffer_keeps_the_first_of_equals():
    class Q:
        score = 0.5

    class L:
        quality = Q()

    buf = AttemptBuffer()
    first, second = L(), L()
    assert buf.offer(0.5, first, "a")
    assert not buf.offer(0.5, second, "b")
    assert buf.best_layout is first and buf.best_cutmap == "a"
    assert buf.offer(0.6, second, "b")


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "surfdraw.cli", "-T"],
        input=write_planarcode([k33_torus()]),
        capture_output=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith(b"% map 1\n\\begin{tikzpicture}")
