"""Batch command line interface (``nv``).

Data goes to stdout, logs to stderr. Exit status is 0 on success, 1 on a
domain error and 2 when a search budget runs out; failures print
``error code=<code> message=<text>`` on stderr.
"""

import argparse
import csv
import json
import logging
import random
import sys
from collections.abc import Iterable
from fractions import Fraction
from pathlib import Path

from pydantic import ValidationError

from app.core.config import settings
from app.core.errors import NVError, ParseError
from app.core.logging import setup_logging
from app.models.element import Element, PrefixPoint, compose, evaluate, inverse
from app.models.gridform import element_fineness, length_lower_bound
from app.models.word import GroupWord
from app.schemas.certificates import DivergenceParams, PathCertificate, RunConfig
from app.services.divergence import DivergenceService, empirical_divergence
from app.services.elements import describe, read_element
from app.services.genset import GeneratorTable, load_generators
from app.services.metric import MetricService
from app.services.validation import validate_table

logger = logging.getLogger(__name__)

BALL_HEADER = ["radius", "sphere_size", "ball_size"]
BALL_ELEMENTS_HEADER = ["distance", "word", "fineness", "lower_bound"]
DIVPATH_HEADER = [
    "word",
    "n_hat",
    "length_mode",
    "orientation",
    "subpath1_case",
    "subpath4_case",
    "word_length",
    "length_budget",
    "budgets_ok",
    "endpoint_ok",
    "endpoint_exponent_cap",
]
DIVMEASURE_HEADER = ["x", "delta", "phi", "working_radius", "symbols", "witness_from", "witness_to"]


def _read_text(value: str) -> str:
    if value == "-":
        return sys.stdin.read()
    try:
        return Path(value).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {value}: {exc}") from exc


def _operand(table: GeneratorTable, value: str) -> Element:
    """A word, or an element file when prefixed with ``@``."""
    if value.startswith("@"):
        return read_element(table, element=_read_text(value[1:]))
    return read_element(table, word=value)


def _single(table: GeneratorTable, args: argparse.Namespace) -> Element:
    if args.element is not None:
        return read_element(table, element=_read_text(args.element))
    if args.word is not None:
        return read_element(table, word=args.word)
    raise ParseError("give --word or --element")


def _writer(rows: Iterable[list], header: list[str]) -> None:
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(header)
    out.writerows(rows)


def _emit_element(g: Element, fmt: str) -> None:
    info = describe(g)
    if fmt == "jsonl":
        print(info.model_dump_json())
    elif fmt == "csv":
        _writer([[info.key.replace("\n", ";"), info.fineness, info.identity]], ["element", "fineness", "identity"])
    else:
        print(info.element)


def _table(args: argparse.Namespace, symbols: list[str] | None = None) -> GeneratorTable:
    table = load_generators(args.generators)
    return table.subset(symbols) if symbols else table


def _params(args: argparse.Namespace) -> DivergenceParams:
    return DivergenceParams(M=args.M, Q=args.Q, delta=args.delta, allow_small=args.allow_small_params)


def _delta(value: str) -> Fraction:
    try:
        return DivergenceParams(delta=value).delta_value
    except ValidationError as exc:
        raise ParseError(f"bad --delta {value!r}: {exc.errors()[0]['msg']}") from exc


# Subcommands


def cmd_nf(args: argparse.Namespace, config: RunConfig) -> int:
    _emit_element(_single(_table(args), args), config.output_format)
    return 0


def cmd_mul(args: argparse.Namespace, config: RunConfig) -> int:
    table = _table(args)
    _emit_element(compose(_operand(table, args.left), _operand(table, args.right)), config.output_format)
    return 0


def cmd_inv(args: argparse.Namespace, config: RunConfig) -> int:
    _emit_element(inverse(_single(_table(args), args)), config.output_format)
    return 0


def cmd_eval(args: argparse.Namespace, config: RunConfig) -> int:
    u1, _, u2 = args.point.partition(",")
    image = evaluate(_single(_table(args), args), PrefixPoint(u1.strip("-"), u2.strip("-")))
    print(f"{image.u1 or '-'},{image.u2 or '-'}")
    return 0


def cmd_len(args: argparse.Namespace, config: RunConfig) -> int:
    table = _table(args)
    metric = MetricService(table, config.bfs_node_cap)
    witness = GroupWord.parse(args.word) if args.word is not None else None
    cert = metric.exact_length(_single(table, args), args.max_radius, witness=witness)
    if config.output_format == "jsonl":
        print(cert.model_dump_json())
    elif cert.exact:
        print(f"exact {cert.lower}")
    else:
        print(f"bounds {cert.lower} {cert.upper if cert.upper is not None else 'unknown'}")
    return 0


def cmd_ball(args: argparse.Namespace, config: RunConfig) -> int:
    table = _table(args, args.symbols)
    ball = MetricService(table, config.bfs_node_cap).ball(args.radius)
    if args.elements or args.sample:
        entries = sorted(ball.entries.values(), key=lambda e: (e.distance, str(e.word)))
        if args.sample:
            entries = sorted(
                random.Random(config.seed).sample(entries, min(args.sample, len(entries))),
                key=lambda e: (e.distance, str(e.word)),
            )
        rows = [[e.distance, str(e.word), element_fineness(e.element), length_lower_bound(e.element)] for e in entries]
        _writer(rows, BALL_ELEMENTS_HEADER)
        return 0
    rows, total = [], 0
    for r in range(ball.radius + 1):
        size = len(ball.sphere(r))
        total += size
        rows.append([r, size, total])
    _writer(rows, BALL_HEADER)
    return 0


def cmd_gen(args: argparse.Namespace, config: RunConfig) -> int:
    table = _table(args)
    if args.action == "list":
        _writer(
            [[d.symbol, d.provenance, len(d.element)] for d in table.defs.values()],
            ["symbol", "provenance", "pairs"],
        )
        return 0
    if args.action == "show":
        print(table.resolve(args.symbol))
        return 0
    report = validate_table(table, args.exponent)
    if config.output_format == "jsonl":
        print(report.model_dump_json())
    else:
        for check in report.checks:
            print(f"{'ok  ' if check.ok else 'FAIL'} {check.name}{' ' + check.detail if check.detail else ''}")
        if not report.complete:
            print(f"FAIL complete: missing {' '.join(table.missing)}")
    return 0 if report.ok else 1


def _divpath_row(cert: PathCertificate, source: str) -> list:
    return [
        source,
        cert.n_hat,
        cert.length_mode,
        cert.orientation,
        cert.subpath1_case,
        cert.subpath4_case,
        cert.word_length,
        cert.length_budget,
        cert.budgets_ok,
        cert.endpoint_ok,
        cert.endpoint_exponent_cap,
    ]


def cmd_divpath(args: argparse.Namespace, config: RunConfig) -> int:
    table = _table(args)
    service = DivergenceService(
        table, config.params, MetricService(table, config.bfs_node_cap), max_radius=args.max_radius
    )
    sources = list(args.word or [])
    certificates = []
    for source in sources:
        word = GroupWord.parse(source)
        certificates.append((source, service.build_path(table.word_to_element(word), word, config.exponent_cap)))
    if args.element is not None:
        g = read_element(table, element=_read_text(args.element))
        certificates.append((args.element, service.build_path(g, None, config.exponent_cap)))
    if not certificates:
        raise ParseError("give --word or --element")
    if config.output_format == "jsonl":
        for _, cert in certificates:
            print(cert.model_dump_json())
    elif config.output_format == "csv":
        _writer([_divpath_row(cert, source) for source, cert in certificates], DIVPATH_HEADER)
    else:
        for source, cert in certificates:
            print(f"element {source}")
            print(f"  length {cert.n_hat} ({cert.length_mode})")
            print(f"  orientation {cert.orientation} cases {cert.subpath1_case}/{cert.subpath4_case}")
            for s in cert.subpaths:
                print(f"  {s.name} length={s.length} budget={s.budget} {'ok' if s.ok else 'OVER'}")
            print(f"  total {cert.word_length} < {cert.length_budget}: {cert.length_ok}")
            print(f"  endpoint {cert.endpoint_ok} (exponent cap {cert.endpoint_exponent_cap})")
    ok = all(cert.endpoint_ok and cert.budgets_ok and cert.length_ok for _, cert in certificates)
    return 0 if ok else 1


def cmd_divmeasure(args: argparse.Namespace, config: RunConfig) -> int:
    delta = _delta(args.delta)
    table = _table(args, args.symbols)
    metric = MetricService(table, config.bfs_node_cap)
    rows = []
    for x in sorted(set(args.x)):
        result = empirical_divergence(x, delta, metric, args.working_radius)
        witness = result.witness or ("", "")
        rows.append(
            [
                result.x,
                result.delta,
                "" if result.phi is None else result.phi,
                result.working_radius,
                " ".join(result.symbols) if args.symbols else "all",
                witness[0],
                witness[1],
            ]
        )
    if config.output_format == "jsonl":
        for row in rows:
            print(json.dumps(dict(zip(DIVMEASURE_HEADER, row, strict=True))))
    else:
        _writer(rows, DIVMEASURE_HEADER)
    return 0


COMMANDS = {
    "nf": cmd_nf,
    "mul": cmd_mul,
    "inv": cmd_inv,
    "eval": cmd_eval,
    "len": cmd_len,
    "ball": cmd_ball,
    "gen": cmd_gen,
    "divpath": cmd_divpath,
    "divmeasure": cmd_divmeasure,
}


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--word", help="word over the generators, e.g. 'x0 y1^-1'")
    parser.add_argument("--element", help="element file ('-' for stdin)")


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--M", type=int, default=settings.DIVERGENCE_M)
    parser.add_argument("--Q", type=int, default=settings.DIVERGENCE_Q)
    parser.add_argument("--delta", default="1/64")
    parser.add_argument("--allow-small-params", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nv", description="Exact computations in the Thompson group 2V.")
    parser.add_argument("--generators", type=Path, default=None, help="generator file (env NV_GENERATORS)")
    parser.add_argument("--format", dest="output_format", choices=["text", "csv", "jsonl"], default="text")
    parser.add_argument("--node-cap", type=int, default=settings.BFS_NODE_CAP)
    parser.add_argument("--seed", type=int, default=settings.SEED)
    parser.add_argument("--debug", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("nf", "inv"):
        _add_input(sub.add_parser(name))

    mul = sub.add_parser("mul", help="product, left applied first")
    mul.add_argument("--left", required=True, help="word, or @file for an element")
    mul.add_argument("--right", required=True, help="word, or @file for an element")

    ev = sub.add_parser("eval")
    _add_input(ev)
    ev.add_argument("--point", required=True, help="prefixes 'u1,u2', '-' for empty")

    ln = sub.add_parser("len")
    _add_input(ln)
    ln.add_argument("--max-radius", type=int, default=settings.BFS_MAX_RADIUS)

    ball = sub.add_parser("ball")
    ball.add_argument("--radius", type=int, required=True)
    ball.add_argument("--out", choices=["csv"], default="csv")
    ball.add_argument("--symbols", nargs="+")
    ball.add_argument("--elements", action="store_true", help="one row per element")
    ball.add_argument("--sample", type=int, default=0, help="seeded sample of elements")

    gen = sub.add_parser("gen")
    gen.add_argument("action", choices=["list", "show", "validate"])
    gen.add_argument("symbol", nargs="?")
    gen.add_argument("--exponent", type=int, default=3)

    dp = sub.add_parser("divpath")
    dp.add_argument("--word", action="append", help="start element as a word; repeatable")
    dp.add_argument("--element", help="start element file")
    dp.add_argument("--max-radius", type=int, default=settings.BFS_MAX_RADIUS)
    dp.add_argument("--cap-exponents", type=int, default=None)
    _add_params(dp)

    dm = sub.add_parser("divmeasure")
    dm.add_argument("--x", type=int, action="append", required=True)
    dm.add_argument("--delta", default="1/64")
    dm.add_argument("--working-radius", type=int, default=None)
    dm.add_argument("--symbols", nargs="+")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    fields = {
        "subcommand": args.command,
        "output_format": args.output_format,
        "bfs_node_cap": args.node_cap,
        "seed": args.seed,
    }
    if args.command == "divpath":
        fields["params"] = _params(args)
        fields["exponent_cap"] = args.cap_exponents
        fields["inputs"] = list(args.word or []) + ([args.element] if args.element else [])
    return RunConfig(**fields)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(debug=args.debug or None)
    try:
        config = _run_config(args)
        if args.command == "gen" and args.action == "show" and not args.symbol:
            raise ParseError("gen show needs a symbol")
        return COMMANDS[args.command](args, config)
    except ValidationError as exc:
        message = "; ".join(e["msg"] for e in exc.errors())
        print(f"error code=invalid_config message={message}", file=sys.stderr)
        return 1
    except NVError as exc:
        logger.debug("command failed", exc_info=True)
        print(f"error code={exc.code} message={exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
