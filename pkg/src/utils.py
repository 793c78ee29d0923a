import json
import sys
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

import pandas as pd

from src.config import SCHEMA_VERSION
from src.errors import InputError

# -------------------------------------------------
# 1. Exact number helpers
# -------------------------------------------------

def parse_fraction(text: str) -> Fraction:
    """'3/2', '-4' or '0'; anything with a decimal point or exponent is refused."""
    text = str(text).strip()
    if any(c in text for c in ".eE") or not text:
        raise InputError(f"'{text}' is not an exact rational (use p/q)")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"Could not parse '{text}' as a rational: {e}")


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def parse_pair_key(key: str) -> Tuple[int, int]:
    """'1,2' -> (1, 2)."""
    try:
        i, j = (int(part) for part in key.split(","))
    except ValueError:
        raise InputError(f"Pair key '{key}' is not of the form 'i,j'")
    return i, j


# -------------------------------------------------
# 2. Report output
# -------------------------------------------------

def banner(title: str) -> str:
    line = "-" * 49
    return f"{line}\n{title}\n{line}"


def _plain(value):
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    return value


def emit(records: Iterable[dict], fmt: str = "text", title: Optional[str] = None, stream=None) -> List[dict]:
    """
    Write records as a text table or as JSON lines. Every JSON record
    is stamped with the schema version.
    """
    stream = stream or sys.stdout
    rows = [{k: _plain(v) for k, v in r.items()} for r in records]
    if fmt == "json":
        for r in rows:
            stream.write(json.dumps({"schema_version": SCHEMA_VERSION, **r}, sort_keys=True) + "\n")
    elif fmt == "text":
        if title:
            stream.write(banner(title) + "\n")
        if rows:
            stream.write(pd.DataFrame(rows).to_string(index=False) + "\n")
    else:
        raise InputError(f"Unknown output format '{fmt}'")
    return rows


def emit_frame(df: pd.DataFrame, fmt: str = "text", title: Optional[str] = None, stream=None) -> List[dict]:
    return emit(df.to_dict(orient="records"), fmt, title, stream)
