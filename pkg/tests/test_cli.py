"""Command-line interface: reports, exit codes, files, determinism."""

import json

import pytest

from quotbundle.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_groebner_verify_json(capsys):
    code, rep = run_json(capsys, "groebner", "verify", "--n", "5")
    assert code == 0
    assert rep["gb_holds"] and rep["match"]
    assert rep["schema"] == 1
    assert rep["order"] == "layered"
    assert "timings" not in rep


def test_groebner_verify_circular(capsys):
    code, rep = run_json(capsys, "groebner", "verify", "--n", "5", "--order", "circular")
    assert code == 0
    assert rep["counts"]["initial_generators"] == 5


def test_groebner_crosscheck_flag(capsys):
    code, rep = run_json(
        capsys, "groebner", "verify", "--n", "5", "--complete-crosscheck"
    )
    assert code == 0
    assert rep["crosscheck"]["new_leading_monomials"] == 0


def test_degree_human(capsys):
    code, out = run(capsys, "degree", "--n", "5")
    assert code == 0
    assert "12" in out and "equal" in out


def test_ideal_emit_round_trips(capsys):
    from quotbundle.grammar import parse_ideal
    from quotbundle.grassmann import bundle_generators
    from quotbundle.poly import ring

    code, out = run(capsys, "ideal", "emit", "jn", "--n", "5")
    assert code == 0
    assert parse_ideal(ring(5), out) == bundle_generators(5)


def test_complex_build_kn(capsys):
    code, rep = run_json(capsys, "complex", "build", "kn", "--n", "5")
    assert code == 0
    assert rep["f_vector"][-1] == 12


def test_complex_join_and_stellar_files(tmp_path, capsys):
    from quotbundle.complexes import associahedron, format_complex, sphere_zero

    a = tmp_path / "a.txt"
    a.write_text(format_complex(associahedron(5)), encoding="utf-8")
    s = tmp_path / "s.txt"
    s.write_text(format_complex(sphere_zero()), encoding="utf-8")
    code, rep = run_json(capsys, "complex", "build", "join", str(a), str(s))
    assert code == 0
    assert len(rep["facets"]) == 10
    joined = tmp_path / "j.txt"
    code, out = run(
        capsys, "--out", str(joined), "complex", "build", "join", str(a), str(s)
    )
    assert code == 0
    code, rep = run_json(
        capsys,
        "complex",
        "build",
        "stellar",
        str(joined),
        "--face",
        "d[1,4],w1",
        "--label",
        "v",
    )
    assert code == 0
    assert len(rep["facets"]) == 12


def test_syzygy_verify(capsys):
    code, rep = run_json(capsys, "syzygy", "verify", "--n", "5")
    assert code == 0
    assert rep["identities"]["passed"]
    assert rep["generation"]["generates_full_module"]


def test_t1_slice_json(capsys):
    code, rep = run_json(capsys, "t1", "slice", "--n", "5", "--delta=-2,1")
    assert code == 0
    assert rep["t1_dim"] == 1
    assert rep["basis"][0]["images"]["pf[2,3,4,5]"] == "y[1]"


def test_t1_window_small(capsys):
    code, rep = run_json(capsys, "t1", "window", "--n", "5", "--max", "2,2")
    assert code == 0  # n=5 is allowed a nonzero window
    assert rep["coverage"] == "window"
    assert not rep["all_zero"]


def test_lemma_normalform(capsys):
    code, rep = run_json(
        capsys, "lemma", "normalform", "--n", "6", "--trials", "25", "--seed", "11"
    )
    assert code == 0
    assert rep["passed"] and rep["trials"] == 25


def test_hull_k6(capsys):
    code, rep = run_json(capsys, "hull", "k6-polytope")
    assert code == 0
    assert rep["lower_facets"] == 33
    assert rep["unimodular"] and rep["projection_reflexive"]
    assert rep["isomorphic_to_k6_join_point"]
    assert rep["origin_maps_to_cone_vertex"]
    assert rep["witness"]["12"] == "free[0]"


def test_hull_file(tmp_path, capsys):
    f = tmp_path / "pts.txt"
    f.write_text("0 1 0 1\n0 0 1 1\n0 0 0 1\n", encoding="utf-8")
    code, rep = run_json(capsys, "hull", "file", str(f))
    assert code == 0
    assert rep["lower_facets"] == 2


def test_oracle(capsys):
    code, rep = run_json(capsys, "oracle", "--n", "4", "--trials", "20", "--seed", "5")
    assert code == 0
    assert rep["passed"]


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out = run(capsys, "--json", "--out", str(target), "degree", "--n", "5")
    assert code == 0
    assert out == ""
    rep = json.loads(target.read_text(encoding="utf-8"))
    assert rep["all_equal"]


def test_invalid_n_nonzero_exit(capsys):
    code = main(["groebner", "verify", "--n", "3"])
    err = capsys.readouterr().err
    assert code == 1
    assert "error" in err


def test_unknown_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["degree", "--n", "5", "--bogus"])
    assert exc.value.code == 2


PIPELINES = [
    ("groebner", "verify", "--n", "5"),
    ("degree", "--n", "5"),
    ("syzygy", "verify", "--n", "5"),
    ("t1", "slice", "--n", "5", "--delta=-2,1"),
    ("t1", "window", "--n", "5", "--max", "1,1"),
    ("lemma", "normalform", "--n", "6", "--trials", "20", "--seed", "2"),
    ("hull", "k6-polytope"),
    ("oracle", "--n", "4", "--trials", "10", "--seed", "9"),
    ("ideal", "emit", "jn", "--n", "5"),
    ("complex", "build", "kn", "--n", "6"),
]


@pytest.mark.parametrize("argv", PIPELINES, ids=lambda a: " ".join(a[:2]))
def test_json_byte_identical_across_thread_counts(argv, capsys):
    outputs = []
    for threads in (1, 4, 8):
        code, out = run(capsys, "--json", "--threads", str(threads), *argv)
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]
