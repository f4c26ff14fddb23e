"""Command-line front end.

Exit codes: 0 verified, 1 argument or input error, 2 hypothesis not met,
3 constructed but verification skipped at this scale, 4 verification failed.
Errors are also written to stderr as a one-line JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .codes import (
    GeneratorMatrix,
    concatenate,
    identity_generator,
    parity_check_generator,
    rs_generator,
    simplex_generator,
    to_projective_system,
)
from .config import Caps, RunConfig, default_threads
from .constants import TABLE_HEADER, table1, table2, table3
from .errors import (
    AvoidanceNotCertified,
    BlocksmithError,
    CertificateError,
    DegenerateSpectrum,
    HypothesisUnmet,
    IntegrityHypothesisUnmet,
)
from .field import field_of_order, make_field, prime_power
from .graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    is_ramanujan,
    lps_graph,
    path_graph,
    petersen_graph,
    random_regular,
    spectrum,
)
from .integrity import integrity_exact, spectral_integrity_lb, z_exact
from .reduction import derive_sbs, repeat_derivation
from .sbs import IntegrityEvidence, LineSet, SBSCertificate, construct_main

EXIT_OK, EXIT_ARGS, EXIT_HYPOTHESIS, EXIT_SKIPPED, EXIT_FAILED = 0, 1, 2, 3, 4


class ArgumentError(BlocksmithError, ValueError):
    pass


def _kv(spec: str) -> tuple[str, dict[str, str]]:
    kind, _, rest = spec.partition(":")
    params = {}
    if rest and "=" in rest:
        for item in rest.split(","):
            k, _, v = item.partition("=")
            params[k.strip()] = v.strip()
    elif rest:
        params["_"] = rest
    return kind, params


def _int(params: dict, key: str) -> int:
    try:
        return int(params[key])
    except (KeyError, ValueError):
        raise ArgumentError(f"missing or invalid integer parameter {key!r}") from None


def parse_code(spec: str) -> GeneratorMatrix:
    """rs:q=,n=,k= | identity:q=,k= | concat:q=,e=,n=,k=,inner=simplex|parity | file:PATH"""
    kind, p = _kv(spec)
    if kind == "rs":
        return rs_generator(field_of_order(_int(p, "q")), _int(p, "n"), _int(p, "k"))
    if kind == "identity":
        return identity_generator(field_of_order(_int(p, "q")), _int(p, "k"))
    if kind == "concat":
        q, e = _int(p, "q"), _int(p, "e")
        base, m = prime_power(q)
        outer = rs_generator(make_field(base, m * e), _int(p, "n"), _int(p, "k"))
        small = field_of_order(q)
        inner_kind = p.get("inner", "simplex")
        if inner_kind == "simplex":
            inner = simplex_generator(small, e)
        elif inner_kind == "parity":
            inner = parity_check_generator(small, e)
        else:
            raise ArgumentError(f"unknown inner code {inner_kind!r}")
        return concatenate(outer, inner)
    if kind == "file":
        path = Path(p.get("_") or p.get("path", ""))
        return GeneratorMatrix.from_json(json.loads(path.read_text()))
    raise ArgumentError(f"unknown code source {kind!r}")


def parse_graph(spec: str, seed: int = 0) -> Graph:
    """lps:p=,r= | regular:n=,d=[,seed=] | cycle:N | path:N | complete:N | empty:N | petersen | file:PATH"""
    kind, p = _kv(spec)
    if kind == "lps":
        return lps_graph(_int(p, "p"), _int(p, "r"))
    if kind == "regular":
        return random_regular(_int(p, "n"), _int(p, "d"), int(p.get("seed", seed)))
    if kind == "petersen":
        return petersen_graph()
    named = {"cycle": cycle_graph, "path": path_graph, "complete": complete_graph, "empty": empty_graph}
    if kind in named:
        n = p.get("_") or p.get("n")
        if n is None or not n.isdigit():
            raise ArgumentError(f"{kind} graph needs a vertex count")
        return named[kind](int(n))
    if kind == "file":
        path = Path(p.get("_") or p.get("path", ""))
        text = path.read_text()
        if path.suffix == ".json":
            return Graph.from_json(json.loads(text))
        return Graph.from_edgelist(text)
    raise ArgumentError(f"unknown graph source {kind!r}")


def _evidence(G: Graph, mode: str, caps: Caps) -> IntegrityEvidence:
    if mode == "auto":
        mode = "exact" if G.n <= caps.integrity_max_n else "spectral"
    if mode == "exact":
        return IntegrityEvidence.exact(G, caps.integrity_max_n)
    if mode == "spectral":
        return IntegrityEvidence.spectral(G, spectrum(G))
    raise ArgumentError(f"unknown evidence mode {mode!r}")


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text + "\n")
    else:
        out.write_text(text + "\n")


def _cert_exit(cert: SBSCertificate) -> int:
    strong = cert.checked.get("strong")
    if strong is True:
        return EXIT_OK
    if strong == "skipped":
        return EXIT_SKIPPED
    return EXIT_FAILED


def cmd_construct(args, cfg: RunConfig) -> int:
    code = parse_code(args.code)
    G = parse_graph(args.graph, cfg.seed)
    M = to_projective_system(code, budget=2**22, hyperplane_limit=cfg.caps.max_hyperplanes)
    if G.n != M.n:
        raise ArgumentError(f"graph has {G.n} vertices but the code has length {M.n}")
    cert = construct_main(M, G, _evidence(G, args.evidence, cfg.caps), cfg.caps, cfg.seed)
    _emit(cert.dumps(), cfg.output)
    return _cert_exit(cert)


def cmd_verify(args, cfg: RunConfig) -> int:
    cert = SBSCertificate.from_json(json.loads(Path(args.cert).read_text()))
    res = cert.reverify(cfg.caps)
    report = {"strong": res.holds, "witness": res.witness, "size": len(cert.points),
              "k": cert.k, "q": cert.q}
    _emit(json.dumps(report, sort_keys=True), cfg.output)
    return EXIT_OK if res.holds else EXIT_FAILED


def cmd_derive(args, cfg: RunConfig) -> int:
    if args.cert:
        src = SBSCertificate.from_json(json.loads(Path(args.cert).read_text()))
        L = LineSet.from_pairs(src.spec, src.lines)
        chain = repeat_derivation(L, args.steps, cfg.caps, cfg.seed)
        out = {"chain": [c.to_json() for c in chain.steps], "hashes": chain.hashes()}
        _emit(json.dumps(out, sort_keys=True, indent=1), cfg.output)
        return _cert_exit(chain.final)
    if not (args.code and args.graph):
        raise ArgumentError("derive needs --code and --graph, or --cert")
    code = parse_code(args.code)
    G = parse_graph(args.graph, cfg.seed)
    M = to_projective_system(code)
    if G.n != M.n:
        raise ArgumentError(f"graph has {G.n} vertices but the code has length {M.n}")
    ev = _evidence(G, args.evidence, cfg.caps) if args.evidence != "check" else None
    cert = derive_sbs(M, G, ev, cfg.caps, cfg.seed)
    _emit(cert.dumps(), cfg.output)
    return _cert_exit(cert)


def cmd_graph(args, cfg: RunConfig) -> int:
    if args.lps:
        G = lps_graph(*args.lps)
    elif args.spec:
        G = parse_graph(args.spec, cfg.seed)
    else:
        raise ArgumentError("graph needs --spec or --lps P R")
    report: dict = {"n": G.n, "m": G.m, "degree": G.regular_degree(), "connected": G.is_connected()}
    if args.spectrum:
        sp = spectrum(G)
        report["spectrum"] = sp.to_json()
        if G.regular_degree() is not None:
            report["ramanujan"] = is_ramanujan(G, sp)
            try:
                report["integrity_lower_bound"] = spectral_integrity_lb(G.n, G.regular_degree(), sp.lam)
            except DegenerateSpectrum:
                report["integrity_lower_bound"] = None
    if args.integrity:
        if G.n <= cfg.caps.integrity_max_n:
            report["integrity"] = integrity_exact(G, cfg.caps.integrity_max_n).to_json()
        if G.n <= cfg.caps.z_max_n:
            report["z"] = z_exact(G, cfg.caps.z_max_n).to_json()
    _emit(json.dumps(report, sort_keys=True), cfg.output)
    return EXIT_OK


def cmd_tables(args, cfg: RunConfig) -> int:
    rows = {1: table1, 2: table2, 3: table3}[args.table]()
    if args.format == "json":
        data = [dict(zip(TABLE_HEADER, r.as_csv_row())) for r in rows]
        _emit(json.dumps(data, sort_keys=True, indent=1), cfg.output)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TABLE_HEADER)
        w.writerows(r.as_csv_row() for r in rows)
        _emit(buf.getvalue().rstrip("\n"), cfg.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand default from masking a value given before it
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON run configuration")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the primary output here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)
    ap = argparse.ArgumentParser(prog="blocksmith", parents=[common],
                                 description="Strong blocking sets from graphs and codes.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build B(M, G) and certify it")
    p.add_argument("--code", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--evidence", default="auto", choices=["auto", "exact", "spectral"])
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="re-check a stored certificate")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derive", parents=[common], help="field-reduce a construction over GF(q^2)")
    p.add_argument("--code")
    p.add_argument("--graph")
    p.add_argument("--cert", help="source certificate for repeated derivation")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--evidence", default="auto", choices=["auto", "exact", "spectral", "check"])
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("graph", parents=[common], help="spectrum and integrity report")
    p.add_argument("--spec")
    p.add_argument("--lps", nargs=2, type=int, metavar=("P", "R"))
    p.add_argument("--spectrum", action="store_true")
    p.add_argument("--integrity", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("tables", parents=[common], help="reproduce the coefficient tables")
    p.add_argument("--table", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_tables)
    return ap


def _config(args) -> RunConfig:
    path = getattr(args, "config", None)
    cfg = RunConfig.load(path) if path else RunConfig(threads=default_threads())
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    if getattr(args, "out", None):
        cfg = replace(cfg, output=Path(args.out))
    return replace(cfg, verbosity=max(cfg.verbosity, getattr(args, "verbose", 0)))


def _fail(code: int, exc: BaseException) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit": code},
                                sort_keys=True) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ARGS if e.code else EXIT_OK
    try:
        return args.func(args, _config(args))
    except (IntegrityHypothesisUnmet, HypothesisUnmet, AvoidanceNotCertified, DegenerateSpectrum) as e:
        return _fail(EXIT_HYPOTHESIS, e)
    except CertificateError as e:
        return _fail(EXIT_FAILED, e)
    except (BlocksmithError, ValueError, OSError, KeyError) as e:
        return _fail(EXIT_ARGS, e)


if __name__ == "__main__":
    sys.exit(main())
