import json
from fractions import Fraction

import pytest

from src.data_loader import certificate_to_json, load_certificate, load_character
from src.errors import InputError
from src.utils import emit, format_fraction, parse_fraction, parse_pair_key
from src.words import toy_instance


def test_parse_fraction():
    assert parse_fraction("3/2") == Fraction(3, 2)
    assert parse_fraction(" -4 ") == -4
    for bad in ("0.5", "1e3", "", "1/0", "x"):
        with pytest.raises(InputError):
            parse_fraction(bad)


def test_format_fraction():
    assert format_fraction(Fraction(6, 3)) == "2"
    assert format_fraction(Fraction(-1, 2)) == "-1/2"


def test_parse_pair_key():
    assert parse_pair_key("1,2") == (1, 2)
    with pytest.raises(InputError):
        parse_pair_key("1-2")


def test_bundled_character():
    chi = load_character("ok_condition_one_4.json")
    assert chi.n == 4
    assert chi[(1, 2)] == Fraction(3, 2)
    assert chi.support() == {(1, 2), (2, 1)}


def test_numeric_character_values_are_refused(tmp_path):
    path = tmp_path / "chi.json"
    path.write_text(json.dumps({"n": 3, "family": "aut", "values": {"1,2": 1}}))
    with pytest.raises(InputError):
        load_character(str(path))


def test_character_file_errors(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{")
    with pytest.raises(InputError):
        load_character(str(path))
    path.write_text(json.dumps({"n": 3, "values": {}}))
    with pytest.raises(InputError):
        load_character(str(path))


def test_certificate_json_matches_toy(tmp_path):
    toy = toy_instance()
    doc = certificate_to_json(toy.alphabet, toy.weighting, toy.relators, toy.w, toy.decomposition, toy.C)
    path = tmp_path / "toy.json"
    path.write_text(json.dumps(doc))
    loaded = load_certificate(str(path))
    assert loaded["decomposition"] == toy.decomposition
    assert loaded["claimed_C"] == -2
    assert loaded == load_certificate("toy.json")


def test_certificate_version_mismatch(tmp_path):
    toy = toy_instance()
    doc = certificate_to_json(toy.alphabet, toy.weighting, toy.relators, toy.w, toy.decomposition, toy.C)
    doc["version"] = "2.0"
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InputError):
        load_certificate(str(path))


def test_emit_json_stamps_schema(capsys):
    emit([{"value": Fraction(1, 3), "ok": True}], "json")
    line = json.loads(capsys.readouterr().out)
    assert line == {"schema_version": "1.0", "value": "1/3", "ok": True}
    with pytest.raises(InputError):
        emit([], "xml")
