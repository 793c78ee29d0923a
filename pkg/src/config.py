import json
import os

# -------------------------------------------------
# PATHS
# -------------------------------------------------

BASE_DIR = os.path.dirname(os.path.dirname(__file__))
DATA_DIR = os.path.join(BASE_DIR, "data")
SETTINGS_PATH = os.path.join(DATA_DIR, "settings.json")


# -------------------------------------------------
# LOAD SETTINGS (once, at import)
# -------------------------------------------------

try:
    with open(SETTINGS_PATH, "r") as f:
        settings = json.load(f)
except Exception as e:
    raise RuntimeError(f"Could not load settings JSON at {SETTINGS_PATH}: {e}")

SCHEMA_VERSION = settings["schema_version"]
ENUMERATION_LIMIT = settings["enumeration_limit"]
DENSE_ORDER_LIMIT = settings["dense_order_limit"]
GENERIC_RANK_LIMIT = settings["generic_rank_limit"]
UNIMODULAR_DET_LIMIT = settings["unimodular_det_limit"]
RAO_SEARCH_BUDGET = settings["rao_search_budget"]
CLOSURE_CHECK_LIMIT = settings["closure_check_limit"]


# -------------------------------------------------
# Environment overrides
# -------------------------------------------------

def get_cache_dir() -> str:
    """
    Cache directory for enumerated posets.
    MCCOOL_CACHE_DIR wins over the settings file; relative
    defaults are resolved against the repository root.
    """
    path = os.environ.get("MCCOOL_CACHE_DIR") or settings["default_cache_dir"]
    if not os.path.isabs(path):
        path = os.path.join(BASE_DIR, path)
    return path


def get_log_level() -> str:
    return os.environ.get("MCCOOL_LOG_LEVEL") or settings["log_level"]


def enumeration_limit(family: str) -> int:
    """Largest n accepted by whitehead.enumerate_poset for the family."""
    try:
        return ENUMERATION_LIMIT[family]
    except KeyError:
        raise KeyError(f"No enumeration limit configured for family '{family}'")
