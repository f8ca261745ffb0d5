"""Command-line behavior: output schemas, exit codes, golden comparisons.

All invocations go through ``main(argv)`` in process, with output captured by
pytest, so the tests cover exactly what a shell user sees.
"""

import json
import pathlib

import pytest

from psw.cli import (
    CORPUS_NAMES,
    EXIT_CORPUS_MISMATCH,
    EXIT_HYPOTHESIS,
    EXIT_INPUT,
    EXIT_OK,
    compute_bundle,
    corpus_entries,
    main,
    parse_class_spec,
)
from psw.complex_model import SimplicialComplex, boundary_of_simplex, parse_complex
from psw.errors import InputError

SCHEMA_KEYS = ["name", "dimension", "orientable", "connected", "betti_z",
               "torsion", "betti_z2", "rho2_image_dims", "wu", "sw",
               "w2_criterion", "intersection_form", "classification"]


def entry_paths(name):
    for entry, corpus_file, golden_file in corpus_entries():
        if entry == name:
            return str(corpus_file), str(golden_file)
    raise KeyError(name)


# -- invariants ---------------------------------------------------------------

def test_invariants_matches_golden(capsys):
    for name in ("s4", "cp2", "rp2", "rp3"):
        corpus_file, golden_file = entry_paths(name)
        assert main(["invariants", corpus_file]) == EXIT_OK
        out = capsys.readouterr().out
        assert out == pathlib.Path(golden_file).read_text(), name


def test_invariants_schema_key_order(capsys):
    for name in ("s4", "rp2"):
        corpus_file, _ = entry_paths(name)
        main(["invariants", corpus_file])
        doc = json.loads(capsys.readouterr().out)
        assert list(doc.keys()) == SCHEMA_KEYS
    # nonorientable surface: no form, no classification
    assert doc["intersection_form"] is None
    assert doc["classification"] is None


def test_invariants_text_format_same_facts(capsys):
    corpus_file, _ = entry_paths("cp2")
    main(["invariants", corpus_file])
    from_json = json.loads(capsys.readouterr().out)
    main(["invariants", "--format", "text", corpus_file])
    text = capsys.readouterr().out
    rebuilt = {}
    for line in text.strip().splitlines():
        key, _, value = line.partition(": ")
        rebuilt[key] = json.loads(value)
    assert rebuilt == from_json
    assert list(rebuilt.keys()) == SCHEMA_KEYS


def test_invariants_deterministic(capsys):
    corpus_file, _ = entry_paths("rp3")
    main(["invariants", corpus_file])
    first = capsys.readouterr().out
    main(["invariants", corpus_file])
    assert capsys.readouterr().out == first


def test_invariants_error_exit_codes(tmp_path, capsys):
    assert main(["invariants", str(tmp_path / "missing.json")]) == EXIT_INPUT
    assert "error:" in capsys.readouterr().err

    bad = tmp_path / "open.json"
    bad.write_text('{"name":"open","dimension":2,"facets":[[1,2,3],[2,3,4]]}')
    assert main(["invariants", str(bad)]) == EXIT_INPUT
    assert "closed pseudomanifold" in capsys.readouterr().err

    garbage = tmp_path / "garbage.json"
    garbage.write_text("{broken")
    assert main(["invariants", str(garbage)]) == EXIT_INPUT
    capsys.readouterr()


def test_bundle_rejects_open_complex():
    strip = SimplicialComplex("strip", 2, [[1, 2, 3], [2, 3, 4]])
    with pytest.raises(InputError):
        compute_bundle(strip)


# -- classify -------------------------------------------------------------------

def test_classify_dim4_matches_golden_fragment(capsys):
    corpus_file, golden_file = entry_paths("s4")
    assert main(["classify", corpus_file]) == EXIT_OK
    got = json.loads(capsys.readouterr().out)
    want = json.loads(pathlib.Path(golden_file).read_text())["classification"]
    assert got == want


def test_classify_dim3_formula_document(capsys):
    corpus_file, _ = entry_paths("t3")
    assert main(["classify", corpus_file]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["degree_group"] == {"rank": 3, "torsion": []}
    assert doc["fiber_formula"] == "Z_{2d}"


def test_classify_dim3_with_class(capsys):
    corpus_file, _ = entry_paths("t3")
    assert main(["classify", "--class", "2,0,0", corpus_file]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["d"] == 2
    assert doc["fiber"] == "Z_4"
    assert doc["class"] == {"free": [2, 0, 0], "torsion": []}

    rp3_file, _ = entry_paths("rp3")
    assert main(["classify", "--class", ";1", rp3_file]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert (doc["d"], doc["fiber"]) == (0, "Z")

    s1xs2_file, _ = entry_paths("s1xs2")
    assert main(["classify", "--class", "3", s1xs2_file]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["fiber"] == "Z_6"


def test_classify_dim4_echoes_validated_class(capsys):
    corpus_file, _ = entry_paths("s4")
    assert main(["classify", "--class", "", corpus_file]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["class"] == {"free": [], "torsion": []}


def test_classify_exit_codes(capsys):
    for name, code in (("rp2", EXIT_HYPOTHESIS), ("rp4", EXIT_HYPOTHESIS)):
        corpus_file, _ = entry_paths(name)
        assert main(["classify", corpus_file]) == code, name
        capsys.readouterr()

    t3_file, _ = entry_paths("t3")
    for spec in ("1,2;3;4", "a,b", "1,2,3,4"):
        assert main(["classify", "--class", spec, t3_file]) == EXIT_INPUT
        capsys.readouterr()


# -- realizable ---------------------------------------------------------------------

def test_realizable_documents(capsys):
    s2xs2_file, _ = entry_paths("s2xs2")
    assert main(["realizable", "--class", "1,0", s2xs2_file]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"realizable": True, "witness_value": 0,
                   "theorem_tag": "2b", "class": {"free": [1, 0],
                                                  "torsion": []}}
    assert main(["realizable", "--class", "1,1", s2xs2_file]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert (doc["realizable"], doc["witness_value"]) == (False, 2)

    cp2xs1_file, _ = entry_paths("cp2xs1")
    assert main(["realizable", "--class", "1", cp2xs1_file]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert (doc["realizable"], doc["witness_value"], doc["theorem_tag"]) \
        == (False, 1, "1b")


def test_realizable_dim3_is_hypothesis_violation(capsys):
    rp3_file, _ = entry_paths("rp3")
    assert main(["realizable", "--class", "", rp3_file]) == EXIT_HYPOTHESIS
    assert "dimension >= 5" in capsys.readouterr().err


def test_realizable_bad_class_spec(capsys):
    s5_file, _ = entry_paths("s5")
    assert main(["realizable", "--class", "1,2", s5_file]) == EXIT_INPUT
    capsys.readouterr()


# -- corpus -----------------------------------------------------------------------

def test_corpus_listing(capsys):
    assert main(["corpus"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == len(CORPUS_NAMES)
    names = [line.split(":")[0] for line in lines]
    assert names == list(CORPUS_NAMES)
    assert lines[2] == "s4: dimension 4, 6 facets"


def _patched_entries(monkeypatch, entries):
    import psw.cli
    monkeypatch.setattr(psw.cli, "corpus_entries", lambda: entries)


def test_corpus_check_pass_on_subset(monkeypatch, capsys):
    entries = []
    for name in ("s1", "s3", "rp2"):
        corpus_file, golden_file = entry_paths(name)
        entries.append((name, pathlib.Path(corpus_file),
                        pathlib.Path(golden_file)))
    _patched_entries(monkeypatch, entries)
    assert main(["corpus", "--check"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out == "s1: pass\ns3: pass\nrp2: pass\n" \
                  "all 3 corpus entries pass\n"


def test_corpus_check_detects_perturbed_golden(monkeypatch, tmp_path, capsys):
    corpus_file, golden_file = entry_paths("s3")
    doc = json.loads(pathlib.Path(golden_file).read_text())
    doc["betti_z"] = [1, 1, 0, 1]
    fake = tmp_path / "s3.json"
    fake.write_text(json.dumps(doc, separators=(",", ":")) + "\n")
    _patched_entries(monkeypatch,
                     [("s3", pathlib.Path(corpus_file), fake)])
    assert main(["corpus", "--check"]) == EXIT_CORPUS_MISMATCH
    out = capsys.readouterr().out
    assert "s3: FAIL (betti_z:" in out
    assert "1 of 1 corpus entries failed" in out


def test_corpus_check_missing_files(monkeypatch, tmp_path, capsys):
    corpus_file, golden_file = entry_paths("s3")
    _patched_entries(monkeypatch,
                     [("s3", tmp_path / "absent.json",
                       pathlib.Path(golden_file))])
    assert main(["corpus", "--check"]) == EXIT_INPUT
    assert "missing" in capsys.readouterr().err

    _patched_entries(monkeypatch,
                     [("s3", pathlib.Path(corpus_file),
                       tmp_path / "absent-golden.json")])
    assert main(["corpus", "--check"]) == EXIT_INPUT
    assert "golden" in capsys.readouterr().err


# -- build ------------------------------------------------------------------------

def test_build_sphere_to_file_and_stdout(tmp_path, capsys):
    out = tmp_path / "s4.json"
    assert main(["build", "sphere", "4", "-o", str(out)]) == EXIT_OK
    built = parse_complex(out.read_text())
    assert built.name == "s4"
    assert built.facets == boundary_of_simplex(4).facets

    assert main(["build", "sphere", "3"]) == EXIT_OK
    printed = parse_complex(capsys.readouterr().out)
    assert printed.facets == boundary_of_simplex(3).facets


def test_build_product(tmp_path, capsys):
    a = tmp_path / "a.json"
    main(["build", "sphere", "1", "-o", str(a)])
    out = tmp_path / "t2.json"
    assert main(["build", "product", str(a), str(a), "-o", str(out)]) \
        == EXIT_OK
    built = parse_complex(out.read_text())
    corpus_file, _ = entry_paths("t2")
    reference = parse_complex(pathlib.Path(corpus_file).read_text())
    assert built.f_vector == reference.f_vector
    capsys.readouterr()


def test_build_error_exits(tmp_path, capsys):
    assert main(["build", "sphere"]) == EXIT_INPUT
    assert main(["build", "sphere", "x"]) == EXIT_INPUT
    assert main(["build", "sphere", "0"]) == EXIT_INPUT
    assert main(["build", "sphere", "2", "3"]) == EXIT_INPUT
    a = tmp_path / "a.json"
    main(["build", "sphere", "1", "-o", str(a)])
    assert main(["build", "product", str(a)]) == EXIT_INPUT
    capsys.readouterr()


# -- the class-spec parser -----------------------------------------------------------

def test_parse_class_spec():
    assert parse_class_spec("1,2,3") == ([1, 2, 3], [])
    assert parse_class_spec("1, 2 ,3;4") == ([1, 2, 3], [4])
    assert parse_class_spec(";1") == ([], [1])
    assert parse_class_spec("") == ([], [])
    assert parse_class_spec(";") == ([], [])
    assert parse_class_spec("-4,6") == ([-4, 6], [])
    with pytest.raises(InputError):
        parse_class_spec("1;2;3")
    with pytest.raises(InputError):
        parse_class_spec("one")
