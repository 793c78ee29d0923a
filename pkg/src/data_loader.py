import json
import os
from fractions import Fraction

from src.config import DATA_DIR, SCHEMA_VERSION
from src.errors import InputError
from src.sigma import Character
from src.utils import parse_fraction, parse_pair_key
from src.words import ConjugacyDecomposition, FormalWord, LetterWeighting, Term

# -------------------------------------------------
# BASE PATHS
# -------------------------------------------------

CHARACTER_DIR = os.path.join(DATA_DIR, "characters")
CERTIFICATE_DIR = os.path.join(DATA_DIR, "certificates")


def _read_json(path: str, what: str) -> dict:
    try:
        with open(path, "r") as f:
            return json.load(f)
    except FileNotFoundError:
        raise InputError(f"{what} file not found: {path}")
    except json.JSONDecodeError as e:
        raise InputError(f"{what} file {path} is not valid JSON: {e}")


def _require(doc: dict, keys, path: str):
    missing = [k for k in keys if k not in doc]
    if missing:
        raise InputError(f"{path} is missing {missing}")


def resolve(path: str, folder: str) -> str:
    """Bare file names are looked up in the bundled data folder."""
    if os.path.exists(path) or os.path.dirname(path):
        return path
    return os.path.join(folder, path)


# -------------------------------------------------
# 1. Character files
# -------------------------------------------------

def load_character(path: str) -> Character:
    """
    {"n": 4, "family": "aut", "values": {"1,2": "3/2", ...}}

    Values must be strings of exact rationals; JSON numbers are refused
    so nothing passes through a float.
    """
    path = resolve(path, CHARACTER_DIR)
    doc = _read_json(path, "Character")
    _require(doc, ["n", "family", "values"], path)
    if not isinstance(doc["n"], int) or isinstance(doc["n"], bool):
        raise InputError(f"{path}: n must be an integer")
    values = {}
    for key, raw in doc["values"].items():
        if not isinstance(raw, str):
            raise InputError(f"{path}: value for '{key}' must be a string like \"3/2\", got {raw!r}")
        values[parse_pair_key(key)] = parse_fraction(raw)
    return Character(doc["n"], doc["family"], values)


# -------------------------------------------------
# 2. Certificate files
# -------------------------------------------------

def load_certificate(path: str) -> dict:
    """
    Returns the pieces verify_sigma2_certificate needs:
    alphabet, weighting, relators, word, decomposition and claimed C.
    """
    path = resolve(path, CERTIFICATE_DIR)
    doc = _read_json(path, "Certificate")
    _require(doc, ["version", "alphabet", "weighting", "relators", "word", "decomposition", "claimed_C"], path)
    if str(doc["version"]).split(".")[0] != SCHEMA_VERSION.split(".")[0]:
        raise InputError(f"{path}: certificate version {doc['version']} does not match schema {SCHEMA_VERSION}")

    alphabet = tuple(doc["alphabet"])
    weighting = {}
    for name, raw in doc["weighting"].items():
        if not isinstance(raw, str):
            raise InputError(f"{path}: weight of '{name}' must be a string, got {raw!r}")
        weighting[name] = parse_fraction(raw)
    if set(weighting) != set(alphabet):
        raise InputError(f"{path}: weighting must cover exactly the alphabet {list(alphabet)}")

    relators = tuple(FormalWord.parse(r) for r in doc["relators"])
    word = FormalWord.parse(doc["word"])
    terms = []
    for entry in doc["decomposition"]:
        if len(entry) != 3:
            raise InputError(f"{path}: decomposition entries are [conjugator, relator, sign], got {entry}")
        conj, rel, sign = entry
        terms.append(Term(FormalWord.parse(conj), FormalWord.parse(rel), int(sign)))
    for w in (word,) + relators + tuple(t.conjugator for t in terms):
        w.check_alphabet(alphabet)

    return {
        "alphabet": alphabet,
        "weighting": LetterWeighting(weighting),
        "relators": relators,
        "word": word,
        "decomposition": ConjugacyDecomposition(tuple(terms)),
        "claimed_C": parse_fraction(str(doc["claimed_C"])),
    }


def certificate_to_json(alphabet, weighting: LetterWeighting, relators, word: FormalWord,
                        decomposition: ConjugacyDecomposition, C: Fraction) -> dict:
    """Inverse of load_certificate, for writing fixtures."""
    return {
        "version": SCHEMA_VERSION,
        "alphabet": list(alphabet),
        "weighting": {k: str(v) for k, v in weighting.values.items()},
        "relators": [str(r) for r in relators],
        "word": str(word),
        "decomposition": [[str(t.conjugator), str(t.relator), t.sign] for t in decomposition.terms],
        "claimed_C": str(C),
    }
