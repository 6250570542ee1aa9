#!/usr/bin/env python3
"""
Certifier CLI - 命令行接口
Batch driver: bounds, degree lookups, proofs, group searches, Weil enumeration, certificate checks
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
import argparse
import json
import logging
import sys

from adapters.certificate_adapter import CertificateAdapter
from core.bounds import ExactBound, decimal_digits, fontaine_bound
from core.certifier_coordinator import CertifierCoordinator
from core.config import OUTPUT_FORMATS, RunConfig
from core.errors import CertifierError
from core.glgroup import (
    gl,
    gl_block,
    has_element_of_order,
    subgroups_of_order,
    unipotent_subgroup,
)
from core.minorations import MinorationTable, format_report, load_table_file, max_admissible_degree, pin_report
from core.prover import (
    ELLIPTIC,
    PRESET_ALIASES,
    PRESET_NAMES,
    TARGETS,
    ProofEngine,
    ProverSettings,
    Scenario,
    check_certificate,
    prove_preset,
    resolve_preset,
    surviving_degrees,
    to_text,
)
from core.weil import count_local_lfactors, enumerate_weil, hasse_interval

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

SCENARIO = "scenario"


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1; 2 is reserved for inconclusive proofs"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _emit(args: argparse.Namespace, text: str, data: Any) -> None:
    if args.format == "structured":
        print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig.from_env(
        table_path=Path(args.table) if args.table else None,
        output_format=args.format,
        order_cap=args.order_cap,
        search_order_cap=args.search_order_cap,
        workers=args.workers,
    )


def _table(args: argparse.Namespace) -> MinorationTable:
    path = _config(args).table_path
    try:
        return load_table_file(path)
    except OSError as exc:
        raise CertifierError(f"cannot read table {path}: {exc.strerror or exc}") from exc


def _settings(args: argparse.Namespace) -> ProverSettings:
    config = _config(args)
    return ProverSettings(search_order_cap=config.search_order_cap, order_cap=config.order_cap)


def _requested_bound(args: argparse.Namespace) -> ExactBound:
    if getattr(args, "bound", None):
        return ExactBound.parse(args.bound)
    if args.p is None:
        raise CertifierError("give either --bound or --p")
    return fontaine_bound(args.p, args.r, args.S)


# ---------------------------------------------------------------- subcommands

def cmd_bound(args: argparse.Namespace) -> int:
    bound = fontaine_bound(args.p, args.r, args.S)
    digits = decimal_digits(bound, args.digits)
    _emit(args, f"{digits} (display only; exact value {bound})", {"bound": str(bound), "decimal": digits})
    return EXIT_OK


def cmd_degrees(args: argparse.Namespace) -> int:
    bound = _requested_bound(args)
    table = _table(args)
    degree = max_admissible_degree(table, bound)
    _emit(args, f"bound {bound}: n <= {degree}", {"bound": str(bound), "max_degree": degree})
    return EXIT_OK


def _scenario_from_flags(args: argparse.Namespace) -> Scenario:
    return Scenario(
        p=args.p[0],
        m=args.m,
        r=args.r,
        S=tuple(args.S),
        odd=args.odd,
        target=args.target,
        semistable_at_S=args.semistable,
    )


def _write_or_print(args: argparse.Namespace, cert, output: Optional[Path]) -> None:
    if args.format == "structured":
        payload = json.dumps(CertificateAdapter.to_structured(cert), indent=2, sort_keys=True) + "\n"
    else:
        payload = to_text(cert)
    if output is None:
        sys.stdout.write(payload)
    else:
        output.write_text(payload, encoding="utf-8")


def cmd_prove(args: argparse.Namespace) -> int:
    if args.p is None:
        if args.preset == SCENARIO or resolve_preset(args.preset) != ELLIPTIC:
            raise CertifierError("--p is required for this preset")
        args.p = [5]
    table = _table(args)
    settings = _settings(args)
    if len(args.p) > 1:
        return _prove_batch(args, table)

    if args.preset == SCENARIO:
        verdict, cert = ProofEngine(table, settings).prove(_scenario_from_flags(args))
    else:
        verdict, cert = prove_preset(args.preset, args.p[0], table, settings, q=args.q)
    output = Path(args.output) if args.output else None
    _write_or_print(args, cert, output)
    if output is not None:
        print(f"{verdict} ({len(cert.steps)} steps) -> {output}")
    for branch, degrees in surviving_degrees(cert).items():
        logger.info(f"{branch}: surviving degrees {degrees}")
    return EXIT_OK if verdict.is_non_existence else EXIT_INCONCLUSIVE


def _prove_batch(args: argparse.Namespace, table: MinorationTable) -> int:
    if args.preset == SCENARIO:
        raise CertifierError("several --p values need a preset, not explicit scenario flags")
    coordinator = CertifierCoordinator(_config(args), table=table)
    result = coordinator.prove_many_sync([(args.preset, p) for p in args.p])
    directory = Path(args.output) if args.output else None
    if directory is not None:
        directory.mkdir(parents=True, exist_ok=True)
    rows: List[Dict[str, Any]] = []
    lines = []
    for job in result["results"]:
        if "error" in job:
            lines.append(f"{job['preset']} p={job['p']}: error: {job['error']}")
            rows.append({"preset": job["preset"], "p": job["p"], "error": job["error"]})
            continue
        cert = job.pop("certificate")
        if directory is not None:
            (directory / f"{job['preset']}-p{job['p']}.cert").write_text(to_text(cert), encoding="utf-8")
        lines.append(f"{job['preset']} p={job['p']}: {job['verdict']} ({job['steps']} steps)")
        rows.append(job)
    _emit(args, "\n".join(lines), {"results": rows, "synthesis": result["synthesis"]})
    synthesis = result["synthesis"]
    if not synthesis["all_checked"]:
        return EXIT_ERROR
    return EXIT_INCONCLUSIVE if synthesis["inconclusive"] else EXIT_OK


def _ambient(args: argparse.Namespace):
    return gl_block(args.m, args.p) if args.block else gl(args.m, args.p)


def cmd_subgroups(args: argparse.Namespace) -> int:
    spec = _ambient(args)
    seed = unipotent_subgroup(spec) if args.containing_unipotent else None
    found = subgroups_of_order(spec, args.order, containing=seed, max_order=_config(args).search_order_cap)
    records = [h.to_dict() for h in found]
    lines = [f"{len(found)} classes of subgroups of order {args.order} in {spec.label}"]
    lines += [f"  {record['label']}: generators {record['generators']}" for record in records]
    _emit(args, "\n".join(lines), {"ambient": spec.label, "order": args.order, "classes": records})
    return EXIT_OK


def cmd_element_orders(args: argparse.Namespace) -> int:
    spec = _ambient(args)
    found, witness = has_element_of_order(spec, args.order)
    if found:
        text = f"{spec.label} has an element of order {args.order}: {witness.rows()}"
    else:
        text = f"{spec.label} has no element of order {args.order} (full scan)"
    _emit(args, text, {
        "ambient": spec.label,
        "order": args.order,
        "found": found,
        "witness": witness.rows() if witness is not None else None,
    })
    return EXIT_OK


def cmd_weil(args: argparse.Namespace) -> int:
    if args.count:
        frame = count_local_lfactors(args.q, args.k, args.n)
        _emit(args, frame.to_string(index=False), frame.to_dict(orient="records"))
        return EXIT_OK
    found = enumerate_weil(args.q, args.k, args.n)
    lines = [f"{len(found)} Weil polynomials for q={args.q}, k={args.k}, n={args.n}"]
    lines += [f"  {poly}" for poly in found]
    if found.undecided:
        lines.append(f"  ({len(found.undecided)} undecided)")
    _emit(args, "\n".join(lines), {
        "certified": [poly.to_dict() for poly in found],
        "undecided": [poly.to_dict() for poly in found.undecided],
    })
    return EXIT_OK


def cmd_hasse(args: argparse.Namespace) -> int:
    interval = hasse_interval(args.q)
    _emit(args, f"#E(F_{args.q}) in {interval}", interval.to_dict())
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    path = Path(args.certificate)
    try:
        payload = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CertifierError(f"cannot read certificate {path}: {exc.strerror or exc}") from exc
    cert = CertificateAdapter.load(payload)
    report = check_certificate(cert, _table(args))
    data = report.to_dict()
    data["verdict"] = cert.verdict.to_dict()
    text = f"{report}; verdict {cert.verdict}" if report else str(report)
    _emit(args, text, data)
    return EXIT_OK if report else EXIT_ERROR


def cmd_pins(args: argparse.Namespace) -> int:
    table = _table(args)
    results = pin_report(table)
    _emit(args, format_report(table, results), [result.to_dict() for result in results])
    return EXIT_ERROR if any(result.status == "fail" for result in results) else EXIT_OK


# ---------------------------------------------------------------- parser

def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool = False) -> None:
    """Flags accepted before or after the subcommand; the subcommand copy only overrides when given"""
    def default(value: Any) -> Any:
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--table", default=default(None),
                        help="minoration table (default: $CERTIFIER_TABLE or the shipped table)")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default=default("text"), help="output format")
    parser.add_argument("--order-cap", type=int, default=default(None), help="closure order cap")
    parser.add_argument("--search-order-cap", type=int, default=default(None), help="largest subgroup order searched")
    parser.add_argument("--workers", type=int, default=default(None), help="parallel proofs for several --p values")
    parser.add_argument("-v", "--verbose", action="store_true", default=default(False), help="log progress to stderr")


def _add_bound_flags(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--p", type=int, required=required, help="the prime p")
    parser.add_argument("--r", type=int, default=1, help="Hodge-Tate weight (default: 1)")
    parser.add_argument("--S", type=int, nargs="*", default=[], help="extra ramified primes")


def _add_ambient_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True, help="field size")
    parser.add_argument("--m", type=int, default=2, help="matrix size (default: 2)")
    parser.add_argument("--block", action="store_true", help="use GL(m,p) x GL(1,p)")
    parser.add_argument("--order", type=int, required=True, help="target order")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cli.py",
        description="Discriminant-bound certifier - 判别式界非存在性证明",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  # 判别式上界（十进制仅用于显示）
  python cli.py bound --p 3 --S 2 --digits 2

  # 证明并写出证书，再独立校验
  python cli.py prove weight-one --p 13 -o w1-13.cert
  python cli.py check w1-13.cert

  # 子群搜索
  python cli.py subgroups --p 5 --block --order 15

退出码: 0 = proved / ok, 2 = inconclusive, 1 = usage or data error
        """,
    )
    _add_global_flags(parser)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, suppress=True)
    commands = parser.add_subparsers(dest="command", required=True)

    bound = commands.add_parser("bound", parents=[common], help="root-discriminant upper bound")
    _add_bound_flags(bound)
    bound.add_argument("--digits", type=int, default=2, help="digits after the point (default: 2)")
    bound.set_defaults(handler=cmd_bound)

    degrees = commands.add_parser("degrees", parents=[common], help="largest admissible degree for a bound")
    degrees.add_argument("--bound", help="bound in canonical form, e.g. '2 * 3^(3/2)'")
    _add_bound_flags(degrees, required=False)
    degrees.set_defaults(handler=cmd_degrees)

    prove = commands.add_parser("prove", parents=[common], help="prove a preset or an explicit scenario")
    prove.add_argument("preset", choices=PRESET_NAMES + tuple(PRESET_ALIASES) + (SCENARIO,))
    prove.add_argument("--p", type=int, nargs="+", help=f"the prime(s) p (default for '{ELLIPTIC}': 5)")
    prove.add_argument("--q", type=int, help=f"reduction prime for '{ELLIPTIC}'")
    prove.add_argument("--m", type=int, default=2, help="dimension (scenario mode)")
    prove.add_argument("--r", type=int, default=1, help="weight (scenario mode)")
    prove.add_argument("--S", type=int, nargs="*", default=[], help="extra primes (scenario mode)")
    prove.add_argument("--odd", action="store_true", help="rho is odd (scenario mode)")
    prove.add_argument("--target", choices=TARGETS, default=TARGETS[0], help="property to refute")
    prove.add_argument("--semistable", action="store_true", help="semi-stable at S (scenario mode)")
    prove.add_argument("-o", "--output", help="certificate file (directory for several --p)")
    prove.set_defaults(handler=cmd_prove)

    subgroups = commands.add_parser("subgroups", parents=[common], help="subgroup classes of a given order")
    _add_ambient_flags(subgroups)
    subgroups.add_argument("--containing-unipotent", action="store_true",
                           help="only subgroups containing the upper unitriangular group")
    subgroups.set_defaults(handler=cmd_subgroups)

    orders = commands.add_parser("element-orders", parents=[common], help="is there an element of a given order")
    _add_ambient_flags(orders)
    orders.set_defaults(handler=cmd_element_orders)

    weil = commands.add_parser("weil", parents=[common], help="enumerate Weil polynomials")
    weil.add_argument("--q", type=int, required=True)
    weil.add_argument("--k", type=int, default=1)
    weil.add_argument("--n", type=int, required=True)
    weil.add_argument("--count", action="store_true", help="count per degree 1..n instead of listing")
    weil.set_defaults(handler=cmd_weil)

    hasse = commands.add_parser("hasse", parents=[common], help="Hasse interval for point counts over F_q")
    hasse.add_argument("--q", type=int, required=True)
    hasse.set_defaults(handler=cmd_hasse)

    check = commands.add_parser("check", parents=[common], help="independently check a certificate")
    check.add_argument("certificate", help="certificate file, text or JSON")
    check.set_defaults(handler=cmd_check)

    pins = commands.add_parser("pins", parents=[common], help="reference lookups the table must reproduce")
    pins.set_defaults(handler=cmd_pins)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """主函数"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except CertifierError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        # pydantic validation errors for caps and workers
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
