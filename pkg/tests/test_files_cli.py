"""Facet/cocycle file round-trips, parser diagnostics, and the command-line
front end driven through ``main(argv)`` with captured streams.

Every certificate the CLI prints is validated against the JSON schema
shipped with the package."""

import json
import os

import pytest

jsonschema = pytest.importorskip("jsonschema")

import bcl
from bcl import Cocycle, Coloring, Complex, bits, handle_cocycle
from bcl.cli import main
from bcl.errors import BadParameters
from bcl.files import read_cocycle, read_complex, write_cocycle, write_complex

SCHEMA = json.load(open(os.path.join(
    os.path.dirname(bcl.__file__), "schema", "certificate.schema.json")))


def check_cert(obj):
    jsonschema.validate(obj, SCHEMA)


# ---------------------------------------------------------------------------
# facet files

def test_complex_roundtrip_with_colors(tmp_path, bm3):
    path = tmp_path / "bm3.cplx"
    write_complex(str(path), bm3.complex, bm3.coloring, header="three-family\nbundle")
    C, kappa = read_complex(str(path))
    assert C == bm3.complex
    assert kappa is not None
    assert kappa.as_sorted_items() == bm3.coloring.as_sorted_items()
    text = path.read_text()
    assert text.startswith("# three-family\n# bundle\n")
    assert text.endswith("\n")


def test_complex_roundtrip_without_colors(tmp_path, octahedron):
    path = tmp_path / "oct.cplx"
    write_complex(str(path), octahedron.complex)
    C, kappa = read_complex(str(path))
    assert C == octahedron.complex
    assert kappa is None


def test_empty_complex_roundtrip(tmp_path):
    path = tmp_path / "empty.cplx"
    write_complex(str(path), Complex.empty(5))
    C, kappa = read_complex(str(path))
    assert C.is_empty and C.n == 5


def test_write_is_atomic(tmp_path, bm3):
    path = tmp_path / "out.cplx"
    write_complex(str(path), bm3.complex)
    assert not (tmp_path / "out.cplx.tmp").exists()


def test_comments_and_partial_colors(tmp_path):
    path = tmp_path / "hand.cplx"
    path.write_text(
        "# a hand-written file\n"
        "vertices 4   # inline comment\n"
        "\n"
        "colors 1 2 0 0\n"
        "facet 0 1\n"
    )
    C, kappa = read_complex(str(path))
    assert C.f_vector().counts == (1, 2, 1)
    assert kappa is not None and 2 not in kappa and kappa[1] == 2


@pytest.mark.parametrize("body,fragment", [
    ("facet 0 1\n", "missing 'vertices'"),
    ("vertices 4\ndim 2\nfacet 0 1\n", "declared dim 2"),
    ("vertices 4\nfacet 0 x\n", ":2: expected integers"),
    ("vertices 4\nridge 0 1\n", "unknown directive 'ridge'"),
    ("vertices 4\ncolors 1 2\n", "colors line has 2 entries"),
    ("vertices 4\nfacet\n", "empty facet line"),
    ("vertices\n", "malformed vertices line"),
])
def test_parse_errors_carry_location(tmp_path, body, fragment):
    path = tmp_path / "bad.cplx"
    path.write_text(body)
    with pytest.raises(BadParameters, match="bad.cplx"):
        try:
            read_complex(str(path))
        except BadParameters as exc:
            assert fragment in str(exc)
            raise


# ---------------------------------------------------------------------------
# cocycle files

def test_cocycle_roundtrip(tmp_path, bm3):
    omega = handle_cocycle(bm3, 3)
    path = tmp_path / "omega.cyc"
    write_cocycle(str(path), omega, header="handle")
    back = read_cocycle(str(path))
    assert back.t == omega.t and back.values == omega.values


def test_cocycle_requires_sheet_count(tmp_path):
    path = tmp_path / "nosheets.cyc"
    path.write_text("edge 0 1 1\n")
    with pytest.raises(BadParameters, match="no sheet count"):
        read_cocycle(str(path))
    assert read_cocycle(str(path), t=4).t == 4


def test_cocycle_t_override(tmp_path):
    path = tmp_path / "omega.cyc"
    path.write_text("t 2\nedge 0 1 1\n")
    assert read_cocycle(str(path)).t == 2
    assert read_cocycle(str(path), t=5).t == 5


def test_cocycle_malformed_edge(tmp_path):
    path = tmp_path / "bad.cyc"
    path.write_text("t 2\nedge 0 1\n")
    with pytest.raises(BadParameters, match="edge u v value"):
        read_cocycle(str(path))


# ---------------------------------------------------------------------------
# CLI plumbing

def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    out = json.loads(captured.out) if captured.out.strip() else None
    return code, out, captured.err


@pytest.fixture
def bm3_file(tmp_path, capsys):
    path = str(tmp_path / "bm3.cplx")
    code, out, _ = run_cli(capsys, "build", "bm", "--d", "3", "-o", path)
    assert code == 0
    return path


def test_build_bm(tmp_path, capsys, bm3):
    path = str(tmp_path / "b.cplx")
    code, out, _ = run_cli(capsys, "build", "bm", "--d", "3", "-o", path)
    assert code == 0
    assert out["f_vector"] == [1, 9, 27, 18]
    assert out["facets"] == 18
    C, kappa = read_complex(path)
    assert C == bm3.complex and kappa is not None


def test_build_pipeline_writes_identical_file(tmp_path, capsys):
    direct, piped = str(tmp_path / "a.cplx"), str(tmp_path / "b.cplx")
    assert run_cli(capsys, "build", "bm", "--d", "4", "-o", direct)[0] == 0
    assert run_cli(capsys, "build", "bm", "--d", "4", "--pipeline", "-o", piped)[0] == 0
    assert open(direct).read() == open(piped).read()


def test_build_st_and_cross(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "build", "st", "--d", "3", "--n", "12",
                           "-o", str(tmp_path / "st.cplx"))
    assert code == 0 and out["n"] == 12
    code, out, _ = run_cli(capsys, "build", "cross", "--d", "3",
                           "-o", str(tmp_path / "c.cplx"))
    assert code == 0 and out["f_vector"] == [1, 6, 12, 8]


def test_build_st_without_n_is_usage_error(tmp_path, capsys):
    code, _, err = run_cli(capsys, "build", "st", "--d", "3",
                           "-o", str(tmp_path / "x.cplx"))
    assert code == 2 and "error:" in err


def test_info(bm3_file, capsys):
    code, out, _ = run_cli(capsys, "info", bm3_file, "--field", "Q", "--field", "Z/2")
    assert code == 0
    assert out["n"] == 9 and out["euler"] == 0 and out["balanced"] is True
    assert out["h_vector"] == [1, 6, 12, -1]
    assert out["betti"] == {"Q": [0, 2, 1], "Z/2": [0, 2, 1]}


def test_info_no_betti(bm3_file, capsys):
    code, out, _ = run_cli(capsys, "info", bm3_file, "--no-betti")
    assert code == 0 and "betti" not in out


def test_info_empty_complex(tmp_path, capsys):
    path = tmp_path / "e.cplx"
    path.write_text("vertices 3\n")
    code, out, _ = run_cli(capsys, "info", str(path))
    assert code == 0
    assert out["dim"] == -1 and "h_vector" not in out and "betti" not in out


def test_check_pass_and_fail(bm3_file, capsys):
    code, out, _ = run_cli(capsys, "check", bm3_file,
                           "--pure", "--closed", "--balanced", "--manifold")
    assert code == 0 and out["pass"] is True and all(out["checks"].values())
    code, out, _ = run_cli(capsys, "check", bm3_file, "--sphere")
    assert code == 1 and out["checks"]["homology_sphere"] is False


def test_check_buchsbaum_flags(bm3_file, capsys):
    code, out, _ = run_cli(capsys, "check", bm3_file,
                           "--buchsbaum", "--buchsbaum-star")
    assert code == 0
    assert out["checks"] == {"buchsbaum": True, "buchsbaum_star": True}


def test_check_requires_a_flag(bm3_file, capsys):
    code, _, err = run_cli(capsys, "check", bm3_file)
    assert code == 2 and "no checks requested" in err


def test_missing_file_is_io_error(capsys):
    code, _, err = run_cli(capsys, "info", "/nonexistent/thing.cplx")
    assert code == 2 and "io error:" in err


def test_cover_handle_with_checks(bm3_file, tmp_path, capsys):
    out_path = str(tmp_path / "cover.cplx")
    code, out, _ = run_cli(capsys, "cover", bm3_file, "--t", "2", "--handle",
                           "--check", "h-identity", "--check", "buchsbaum-star",
                           "-o", out_path)
    assert code == 0
    assert out["cover"]["f_vector"] == [1, 18, 54, 36]
    assert out["cover"]["connected"] is True
    for cert in out["certificates"]:
        check_cert(cert)
        assert cert["verdict"] == "pass"
    C, kappa = read_complex(out_path)
    assert C.n == 18 and kappa is not None
    assert bcl.validate_coloring(C, kappa)


def test_cover_from_cocycle_file(bm3_file, tmp_path, capsys):
    cyc = str(tmp_path / "trivial.cyc")
    write_cocycle(cyc, Cocycle(3, {}))
    code, out, _ = run_cli(capsys, "cover", bm3_file, "--t", "3", "--cocycle", cyc)
    assert code == 0
    assert out["cover"]["n"] == 27 and out["cover"]["connected"] is False


def test_cover_disconnected_fails_h_identity_hypotheses(bm3_file, tmp_path, capsys):
    cyc = str(tmp_path / "trivial.cyc")
    write_cocycle(cyc, Cocycle(2, {}))
    code, _, err = run_cli(capsys, "cover", bm3_file, "--t", "2", "--cocycle", cyc,
                           "--check", "h-identity")
    assert code == 2 and "error:" in err


def test_cover_handle_and_cocycle_conflict(bm3_file, capsys):
    code, _, err = run_cli(capsys, "cover", bm3_file, "--t", "2",
                           "--handle", "--cocycle", "x.cyc")
    assert code == 2 and "mutually exclusive" in err


def test_certify_facet_count(capsys):
    code, out, _ = run_cli(capsys, "certify", "facet-count-contradiction", "--d", "6")
    assert code == 0
    check_cert(out)
    assert out["verdict"] == "pass"
    code, out, _ = run_cli(capsys, "certify", "facet-count-contradiction",
                           "--d", "6", "--target", "190")
    assert code == 1 and out["verdict"] == "fail"
    code, _, err = run_cli(capsys, "certify", "facet-count-contradiction")
    assert code == 2 and "needs --d" in err


def test_certify_lbt_and_bm_hypotheses(bm3_file, tmp_path, capsys):
    code, out, _ = run_cli(capsys, "certify", "lbt-inequality", "--input", bm3_file)
    assert code == 0 and out["verdict"] == "pass"
    check_cert(out)
    # the d=3 bundle fails the d >= 4 hypothesis bundle (beta_2 = 1)
    code, out, _ = run_cli(capsys, "certify", "bm-hypotheses", "--input", bm3_file)
    assert code == 1 and out["evidence"]["checks"]["beta2_zero"] is False
    bm4_file = str(tmp_path / "bm4.cplx")
    assert run_cli(capsys, "build", "bm", "--d", "4", "-o", bm4_file)[0] == 0
    code, out, _ = run_cli(capsys, "certify", "bm-hypotheses", "--input", bm4_file)
    assert code == 0 and out["verdict"] == "pass"


def test_certify_graph_triple(capsys):
    code, out, _ = run_cli(capsys, "certify", "graph-triple-witness",
                           "--trials", "5", "--seed", "3")
    assert code == 0
    check_cert(out)
    assert out["evidence"] == {"instances": 6, "failures": []}


def test_certify_link_edge_bound(tmp_path, capsys):
    bm5_file = str(tmp_path / "bm5.cplx")
    assert run_cli(capsys, "build", "bm", "--d", "5", "-o", bm5_file)[0] == 0
    code, out, _ = run_cli(capsys, "certify", "link-edge-bound",
                           "--input", bm5_file, "--vertex", "0")
    assert code == 0 and out["verdict"] == "pass"
    code, out, _ = run_cli(capsys, "certify", "link-edge-bound", "--input", bm5_file)
    assert code == 0 and isinstance(out, list) and len(out) == 15


def test_certify_alexander_duality(tmp_path, capsys):
    oct_file = str(tmp_path / "oct.cplx")
    assert run_cli(capsys, "build", "cross", "--d", "3", "-o", oct_file)[0] == 0
    code, out, _ = run_cli(capsys, "certify", "alexander-duality",
                           "--input", oct_file, "--w", "0,1")
    assert code == 0 and out["verdict"] == "pass"
    code, out, _ = run_cli(capsys, "certify", "alexander-duality",
                           "--input", oct_file, "--trials", "4", "--seed", "9")
    assert code == 0 and isinstance(out, list) and len(out) == 4
    for cert in out:
        check_cert(cert)
        assert cert["verdict"] == "pass"


def test_certify_color_deletion(tmp_path, capsys):
    bm4_file = str(tmp_path / "bm4.cplx")
    assert run_cli(capsys, "build", "bm", "--d", "4", "-o", bm4_file)[0] == 0
    code, out, _ = run_cli(capsys, "certify", "color-deletion-invariance",
                           "--input", bm4_file, "--w", "0,4,8")
    assert code == 0 and out["verdict"] == "pass"
    assert out["evidence"]["color"] == 1


def test_certify_cover_claims(bm3_file, capsys):
    code, out, _ = run_cli(capsys, "certify", "cover-h-identity",
                           "--input", bm3_file, "--handle", "--t", "2")
    assert code == 0 and out["verdict"] == "pass"
    code, out, _ = run_cli(capsys, "certify", "cover-buchsbaum-star",
                           "--input", bm3_file, "--handle", "--t", "2")
    assert code == 0 and out["verdict"] == "pass"
    check_cert(out)


def test_search_cli_writes_census(tmp_path, capsys):
    out_dir = str(tmp_path / "census")
    code, out, err = run_cli(capsys, "search", "--d", "3", "--class-sizes", "3,3,3",
                             "--chi", "0", "--out", out_dir)
    assert code == 0
    assert out["stats"]["exhausted"] is True
    assert len(out["census"]) == 1
    assert out["verification"]["verdict"] == "pass"
    check_cert(out["verification"])
    assert "census written" in err
    C, kappa = read_complex(os.path.join(out_dir, "complex_000.cplx"))
    assert bcl.is_isomorphic(C, bcl.bm(3).complex)
    assert kappa is not None
    on_disk = json.load(open(os.path.join(out_dir, "census.json")))
    assert on_disk == out


def test_search_cli_respects_bcl_jobs(capsys, monkeypatch):
    monkeypatch.setenv("BCL_JOBS", "2")
    code, out, _ = run_cli(capsys, "search", "--d", "3", "--class-sizes", "3,3,3",
                           "--chi", "0")
    assert code == 0 and out["stats"]["workers"] == 2


def test_search_cli_rejects_bad_spec(capsys):
    code, _, err = run_cli(capsys, "search", "--d", "4", "--class-sizes", "3,3,3,3")
    assert code == 2 and "budget" in err


def test_usage_errors(capsys):
    assert run_cli(capsys, "frobnicate")[0] == 2
    assert run_cli(capsys)[0] == 2
    assert run_cli(capsys, "build", "bm", "--d", "3")[0] == 2  # missing -o
