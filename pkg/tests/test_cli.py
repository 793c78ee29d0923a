import json

import pytest

from src import cache
from src.cli import EXIT_FAILED, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, main
from src.whitehead import enumerate_poset


def _json_lines(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


# -------------------------------------------------
# enumerate
# -------------------------------------------------

def test_enumerate_text(cache_dir, capsys):
    assert main(["enumerate", "--n", "4", "--family", "out"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "WO_4: 29 elements" in out
    assert "Degree histogram" in out
    assert "atoms: 12, maximal: 16" in out


def test_enumerate_single_element(cache_dir, capsys):
    assert main(["enumerate", "--n", "2"]) == EXIT_OK
    assert "WO_2: 1 element\n" in capsys.readouterr().out


def test_enumerate_json(cache_dir, capsys):
    assert main(["enumerate", "--n", "3", "--family", "aut", "--format", "json"]) == EXIT_OK
    (record,) = _json_lines(capsys.readouterr().out)
    assert record["schema_version"] == "1.0"
    assert record["count"] == 19
    assert record["maximal"] == 9
    assert record["digest"] == enumerate_poset(3, "aut").digest()


@pytest.mark.slow
def test_enumerate_wo5(cache_dir, capsys):
    assert main(["enumerate", "--n", "5", "--jobs", "2"]) == EXIT_OK
    assert "WO_5: 311 elements" in capsys.readouterr().out


def test_enumerate_reads_the_cache(cache_dir, capsys):
    main(["enumerate", "--n", "3"])
    assert cache.load(3, "out") is not None
    capsys.readouterr()
    assert main(["enumerate", "--n", "3"]) == EXIT_OK
    assert "WO_3: 4 elements" in capsys.readouterr().out


def test_corrupt_cache_exits_with_failure(cache_dir):
    path = cache.save(enumerate_poset(3, "out"))
    with open(path, "a") as f:
        f.write("garbage\n")
    assert main(["enumerate", "--n", "3"]) == EXIT_FAILED
    assert main(["enumerate", "--n", "3", "--no-cache"]) == EXIT_OK


# -------------------------------------------------
# verify, homology, rao
# -------------------------------------------------

def test_verify_rao_suite(cache_dir, capsys):
    assert main(["verify", "--n", "3", "--suite", "rao"]) == EXIT_OK
    assert "checks passed" in capsys.readouterr().out


def test_verify_all_suites_json(cache_dir, capsys):
    assert main(["verify", "--n", "3", "--format", "json"]) == EXIT_OK
    rows = _json_lines(capsys.readouterr().out)
    assert rows and all(r["passed"] for r in rows)
    assert {r["family"] for r in rows} == {"out", "aut"}
    assert {"relations", "poset", "stabilizers", "homology", "rao", "cm"} <= {r["suite"] for r in rows}


@pytest.mark.slow
def test_verify_n4(cache_dir):
    assert main(["verify", "--n", "4"]) == EXIT_OK


def test_homology_of_proper_part(cache_dir, capsys):
    assert main(["homology", "--n", "4", "--family", "out", "--m", "0", "--format", "json"]) == EXIT_OK
    rows = _json_lines(capsys.readouterr().out)
    assert all(r["betti"] == 0 and r["torsion"] == [] for r in rows)


def test_rao_lists_maximal_trees(cache_dir, capsys):
    assert main(["rao", "--n", "3", "--family", "aut", "--format", "json"]) == EXIT_OK
    rows = _json_lines(capsys.readouterr().out)
    assert len(rows) == 9
    assert all(r["verified"] for r in rows)
    assert all("*" in r["atom"] for r in rows)


# -------------------------------------------------
# sigma
# -------------------------------------------------

def test_sigma_emptiness(capsys):
    assert main(["sigma", "--query", "emptiness", "--n", "4", "--family", "aut", "--m", "3"]) == EXIT_NEGATIVE
    assert "EMPTY" in capsys.readouterr().out
    assert main(["sigma", "--query", "emptiness", "--n", "4", "--family", "aut", "--m", "2"]) == EXIT_OK


def test_sigma_emptiness_table(capsys):
    assert main(["sigma", "--query", "emptiness", "--n", "4", "--format", "json"]) == EXIT_OK
    rows = _json_lines(capsys.readouterr().out)
    assert [r["status"] for r in rows] == ["DENSE", "DENSE", "DENSE", "EMPTY", "EMPTY"]


def test_sigma_ok1(capsys):
    assert main(["sigma", "--query", "ok1", "--char", "ok_condition_two_3.json"]) == EXIT_NEGATIVE
    assert main(["sigma", "--query", "ok1", "--char", "generic_aut_4.json"]) == EXIT_OK


def test_sigma_generic(capsys):
    assert main(["sigma", "--query", "generic", "--char", "generic_out_4.json", "--format", "json"]) == EXIT_OK
    (row,) = _json_lines(capsys.readouterr().out)
    assert row["generic"] is True


def test_sigma_density_small(tmp_path, capsys):
    path = tmp_path / "chi.json"
    path.write_text(json.dumps({"n": 3, "family": "aut", "values": {
        "2,1": "1", "3,1": "3", "1,2": "1", "3,2": "3", "1,3": "1", "2,3": "3",
    }}))
    assert main(["sigma", "--query", "density", "--char", str(path), "--m", "1"]) == EXIT_OK
    assert "[chi] in Sigma^1(PSAut_3)" in capsys.readouterr().out


@pytest.mark.slow
def test_sigma_density_generic_aut_4():
    assert main(["sigma", "--query", "density", "--char", "generic_aut_4.json", "--m", "2"]) == EXIT_OK


def test_sigma_density_outside_range():
    assert main(["sigma", "--query", "density", "--char", "generic_aut_4.json", "--m", "3"]) == EXIT_INPUT
    assert main(["sigma", "--query", "density", "--char", "generic_aut_4.json"]) == EXIT_INPUT


def test_sigma_raag(capsys):
    assert main(["sigma", "--query", "raag", "--char", "ok_condition_one_4.json", "--format", "json"]) in (
        EXIT_OK, EXIT_NEGATIVE)
    rows = _json_lines(capsys.readouterr().out)
    assert {r["invariant"] for r in rows} == {"Sigma^1", "Sigma^2"}


@pytest.mark.slow
def test_sigma_meinert_and_sufficient():
    assert main(["sigma", "--query", "meinert", "--n", "10"]) == EXIT_OK
    assert main(["sigma", "--query", "sigma2-sufficient", "--char", "s_supported_10.json"]) == EXIT_OK


# -------------------------------------------------
# certificate-check and bad input
# -------------------------------------------------

def test_certificate_check(capsys):
    assert main(["certificate-check", "--cert", "toy.json"]) == EXIT_OK
    assert main(["certificate-check", "--cert", "toy_too_tight.json"]) == EXIT_FAILED
    assert "prefix-bound" in capsys.readouterr().out


def test_certificate_with_float_weight(tmp_path):
    path = tmp_path / "cert.json"
    path.write_text(json.dumps({
        "version": "1.0", "alphabet": ["x"], "weighting": {"x": 0.5}, "relators": ["x"],
        "word": "x", "decomposition": [["1", "x", 1]], "claimed_C": "0",
    }))
    assert main(["certificate-check", "--cert", str(path)]) == EXIT_INPUT


@pytest.mark.parametrize("argv", [
    ["enumerate"],
    ["enumerate", "--n", "four"],
    ["enumerate", "--n", "7"],
    ["verify", "--n", "6"],
    ["enumerate", "--n", "3", "--jobs", "0"],
    ["sigma", "--query", "ok1"],
    ["sigma", "--query", "ok1", "--char", "missing.json"],
    ["certificate-check", "--cert", "missing.json"],
])
def test_bad_input_exits_three(argv, cache_dir):
    assert main(argv) == EXIT_INPUT
