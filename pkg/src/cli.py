"""
Command-line front end: enumerate, verify, sigma, homology, rao and
certificate-check.

Exit codes: 0 success, 1 a criterion answered OUT or EMPTY, 2 a
verification failed, 3 bad input or a size cap.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import List, Optional

from src.cache import get_poset
from src.complexes import find_rao, flag_complex, reduced_homology, verify_rao
from src.config import SCHEMA_VERSION, enumeration_limit, get_log_level
from src.data_loader import load_certificate, load_character
from src.errors import CacheCorruption, InputError, LimitExceeded, McCoolError, VerificationError
from src.sigma import (
    MEINERT_S,
    Status,
    build_meinert_graph,
    commutation_graph,
    density_certificate,
    emptiness_verdict,
    find_vanishing_generator,
    generator_name,
    is_chordal,
    meinert_graph_properties,
    meinert_instance,
    meinert_quotient_check,
    orlandi_korner_sigma1,
    powers_of_three_character,
    raag_sigma1,
    raag_sigma2,
    sigma2_sufficient,
    sigma_table,
)
from src.suites import SUITES, run_suites
from src.utils import emit, emit_frame
from src.whitehead import FAMILIES, HyperTree, format_tree
from src.words import verify_sigma2_certificate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_FAILED = 2
EXIT_INPUT = 3

QUERIES = ("ok1", "generic", "density", "emptiness", "sigma2-sufficient", "raag", "meinert")


# -------------------------------------------------
# 1. Run configuration
# -------------------------------------------------

@dataclass
class RunConfig:
    command: str
    n: Optional[int] = None
    family: Optional[str] = None
    m: Optional[int] = None
    suite: str = "all"
    query: Optional[str] = None
    char: Optional[str] = None
    cert: Optional[str] = None
    cache: Optional[str] = None
    jobs: int = 1
    fmt: str = "text"
    use_cache: bool = True

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        cfg = cls(
            command=ns.command,
            n=getattr(ns, "n", None),
            family=getattr(ns, "family", None),
            m=getattr(ns, "m", None),
            suite=getattr(ns, "suite", "all"),
            query=getattr(ns, "query", None),
            char=getattr(ns, "char", None),
            cert=getattr(ns, "cert", None),
            cache=ns.cache,
            jobs=ns.jobs,
            fmt=ns.format,
            use_cache=not ns.no_cache,
        )
        cfg.validate()
        return cfg

    def validate(self):
        if self.jobs < 1:
            raise InputError(f"--jobs must be at least 1, got {self.jobs}")
        if self.m is not None and self.m < 0:
            raise InputError(f"--m must be non-negative, got {self.m}")
        if self.n is not None:
            if self.n < 1:
                raise InputError(f"--n must be positive, got {self.n}")
            for family in self.families():
                cap = enumeration_limit(family)
                if self.command in ("enumerate", "verify", "homology", "rao") and self.n > cap:
                    raise LimitExceeded(f"n={self.n} exceeds the {family} enumeration limit {cap}")

    def families(self) -> List[str]:
        return [self.family] if self.family else list(FAMILIES)

    def require_n(self) -> int:
        if self.n is None:
            raise InputError(f"'{self.command}' needs --n")
        return self.n


# -------------------------------------------------
# 2. Commands
# -------------------------------------------------

def _group_name(n: int, family: str) -> str:
    return f"{'WO' if family == 'out' else 'WA'}_{n}"


def cmd_enumerate(cfg: RunConfig) -> int:
    n = cfg.require_n()
    family = cfg.family or "out"
    P = get_poset(n, family, cfg.cache, cfg.jobs, cfg.use_cache)
    B = P.to_bounded()
    atoms, maximal = len(B.atoms()), len(P.maximal_elements())
    count = len(P)
    if cfg.fmt == "json":
        hist = P.degree_histogram()
        emit([{
            "n": n, "family": family, "count": count, "atoms": atoms, "maximal": maximal,
            "histogram": [[int(d), int(c)] for d, c in zip(hist["degree"], hist["count"])],
            "digest": P.digest(),
        }], "json")
    else:
        print(f"{_group_name(n, family)}: {count} element{'' if count == 1 else 's'}")
        emit_frame(P.degree_histogram(), "text", "Degree histogram")
        print(f"atoms: {atoms}, maximal: {maximal}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    n = cfg.require_n()
    rows = []
    for family in cfg.families():
        P = get_poset(n, family, cfg.cache, cfg.jobs, cfg.use_cache)
        rows.extend(run_suites(P, cfg.suite, cfg.jobs))
    emit(rows, cfg.fmt, f"verify n={n} suite={cfg.suite}")
    failed = [r for r in rows if not r["passed"]]
    if cfg.fmt == "text":
        print(f"{len(rows) - len(failed)}/{len(rows)} checks passed")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_homology(cfg: RunConfig) -> int:
    """Reduced homology of the proper part of each requested poset."""
    n = cfg.require_n()
    rows = []
    for family in cfg.families():
        P = get_poset(n, family, cfg.cache, cfg.jobs, cfg.use_cache)
        X = flag_complex(P.to_bounded(), drop_min=True)
        profile = reduced_homology(X, cfg.m)
        for r in profile.records():
            rows.append({"family": family, "n": n, **r})
    emit(rows, cfg.fmt, f"reduced homology of the proper part, n={n}")
    return EXIT_OK


def cmd_rao(cfg: RunConfig) -> int:
    n = cfg.require_n()
    rows = []
    ok = True
    for family in cfg.families():
        P = get_poset(n, family, cfg.cache, cfg.jobs, cfg.use_cache)
        Z = P.zeta()
        ordering = find_rao(Z)
        if ordering is None or not verify_rao(Z, ordering):
            ok = False
            rows.append({"family": family, "n": n, "position": None, "atom": None, "verified": False})
            continue
        for k, atom in enumerate(ordering.atoms, start=1):
            shown = format_tree(atom, family) if isinstance(atom, HyperTree) else str(atom)
            rows.append({"family": family, "n": n, "position": k, "atom": shown, "verified": True})
    emit(rows, cfg.fmt, f"recursive atom orderings, n={n}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_certificate_check(cfg: RunConfig) -> int:
    if not cfg.cert:
        raise InputError("'certificate-check' needs --cert")
    doc = load_certificate(cfg.cert)
    report = verify_sigma2_certificate(
        doc["word"], doc["decomposition"], doc["weighting"], doc["claimed_C"], doc["relators"], doc["alphabet"],
    )
    emit(report.records(), cfg.fmt, f"certificate {cfg.cert}")
    return EXIT_OK if report.passed else EXIT_FAILED


# -------------------------------------------------
# 3. Sigma queries
# -------------------------------------------------

def _verdict_exit(*statuses: Status) -> int:
    return EXIT_NEGATIVE if any(s in (Status.OUT, Status.EMPTY) for s in statuses) else EXIT_OK


def _load_char(cfg: RunConfig):
    if not cfg.char:
        raise InputError(f"Query '{cfg.query}' needs --char")
    return load_character(cfg.char)


def cmd_sigma(cfg: RunConfig) -> int:
    query = cfg.query
    title = f"sigma {query}"

    if query == "emptiness":
        if cfg.char:
            chi = load_character(cfg.char)
            n, family = chi.n, chi.family
        else:
            n, family = cfg.require_n(), cfg.family or "aut"
        if cfg.m is None:
            emit_frame(sigma_table(n, family), cfg.fmt, f"{title} n={n} family={family}")
            return EXIT_OK
        verdict = emptiness_verdict(n, cfg.m, family)
        emit(verdict.records(), cfg.fmt, f"{title} m={cfg.m}")
        return _verdict_exit(verdict.status)

    if query == "meinert":
        chi = load_character(cfg.char) if cfg.char else powers_of_three_character(cfg.n or 10, "aut")
        G = build_meinert_graph(chi.n, MEINERT_S)
        rows = [{"check": k, "passed": ok, "detail": ""} for k, ok in meinert_graph_properties(G).items()]
        chordal = is_chordal(G)
        rows.append({"check": "chordal", "passed": bool(chordal), "detail": "" if chordal else str(chordal.cycle)})
        X, R, R1, witnesses = meinert_instance(chi.n, MEINERT_S, G)
        report = meinert_quotient_check(X, R, R1, {generator_name(v): chi[v] for v in G.nodes}, witnesses)
        rows.append({
            "check": "relator-witnesses", "passed": report.passed,
            "detail": f"{report.checked} relators outside R1" if report.passed else str(report.failures[0]),
        })
        emit(rows, cfg.fmt, f"{title} n={chi.n}")
        return EXIT_OK if all(r["passed"] for r in rows) else EXIT_FAILED

    chi = _load_char(cfg)
    if query == "ok1":
        verdict = orlandi_korner_sigma1(chi)
        emit(verdict.records(), cfg.fmt, title)
        return _verdict_exit(verdict.status)

    if query == "generic":
        witness = find_vanishing_generator(chi)
        detail = "" if witness is None else f"vanishes on alpha_({','.join(map(str, witness[0]))}),{witness[1]}"
        emit([{"generic": witness is None, "detail": detail}], cfg.fmt, title)
        return EXIT_OK

    if query == "density":
        if cfg.m is None:
            raise InputError("Query 'density' needs --m")
        cert = density_certificate(chi, cfg.m, cfg.jobs)
        emit(cert.records(), cfg.fmt, f"{title} m={cfg.m}")
        return EXIT_OK if cert.passed else EXIT_FAILED

    if query == "sigma2-sufficient":
        verdict = sigma2_sufficient(chi)
        emit(verdict.records(), cfg.fmt, title)
        return _verdict_exit(verdict.status)

    if query == "raag":
        G = commutation_graph(chi.n)
        values = chi.vertex_values()
        one, two = raag_sigma1(G, values), raag_sigma2(G, values)
        rows = [{"invariant": "Sigma^1", **r} for r in one.records()]
        rows += [{"invariant": "Sigma^2", **r} for r in two.records()]
        emit(rows, cfg.fmt, f"{title} on {G.number_of_nodes()} generators")
        return _verdict_exit(one.status, two.status)

    raise InputError(f"Unknown query '{query}'")


COMMANDS = {
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "sigma": cmd_sigma,
    "homology": cmd_homology,
    "rao": cmd_rao,
    "certificate-check": cmd_certificate_check,
}


# -------------------------------------------------
# 4. Argument parsing and entry point
# -------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", default=None, help="poset cache directory (default: MCCOOL_CACHE_DIR or settings)")
    common.add_argument("--no-cache", action="store_true", help="enumerate without reading or writing the cache")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="mccool", description=f"McCool group invariants (schema {SCHEMA_VERSION})")
    sub = parser.add_subparsers(dest="command", required=True)

    def poset_command(name: str, help_text: str, family_default=None):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--family", choices=FAMILIES, default=family_default)
        return p

    poset_command("enumerate", "enumerate a Whitehead poset and cache it", "out")
    verify = poset_command("verify", "run verification suites (both families unless --family)")
    verify.add_argument("--suite", choices=SUITES + ("all",), default="all")
    homology = poset_command("homology", "reduced homology of the proper part of the poset")
    homology.add_argument("--m", type=int, default=None, help="highest degree to compute")
    poset_command("rao", "find and verify a recursive atom ordering of the dual poset")

    sigma = sub.add_parser("sigma", parents=[common], help="query a character against the known criteria")
    sigma.add_argument("--query", choices=QUERIES, required=True)
    sigma.add_argument("--char", default=None, help="character file")
    sigma.add_argument("--n", type=int, default=None)
    sigma.add_argument("--family", choices=FAMILIES, default=None)
    sigma.add_argument("--m", type=int, default=None)

    cert = sub.add_parser("certificate-check", parents=[common], help="check a chi_min certificate file")
    cert.add_argument("--cert", required=True)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        # usage errors count as bad input
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    logging.basicConfig(
        level=logging.DEBUG if ns.verbose else get_log_level(),
        format="%(name)s:%(levelname)s:%(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (InputError, LimitExceeded) as e:
        logger.error("%s", e)
        return EXIT_INPUT
    except (VerificationError, CacheCorruption, McCoolError) as e:
        logger.error("%s", e)
        return EXIT_FAILED
