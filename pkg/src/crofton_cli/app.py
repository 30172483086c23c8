"""
crofton command line.

Every command that writes a file also writes `<file>.manifest.json` beside it,
recording the exact argument list (with the seed and angle count pinned) so
`crofton rerun` reproduces the output.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from rich.logging import RichHandler

from .errors import CroftonError, DegenerateLineError, InvalidArgumentError, ResourceLimitError, SetFormatError
from .models import (
    Disk,
    EvaluatorChoice,
    RectifiableSet,
    RunManifest,
    ScheduleChoice,
    SearchConfig,
    SteinhausParams,
)
from .services import config as cfg
from .services import setio
from .services.construct import disk_construction, steinhaus_clip, steinhaus_for_length
from .services.discrepancy import lower_bound_certificate, scaling_study, sup_discrepancy_mc, sup_discrepancy_scan
from .services.domain_spec import parse_domain
from .services.geom import set_inside
from .services.search import optimize
from .services.verify import SUITES, run_suite
from .ui import RenderStyle, console, render_svg, report_table, scaling_table, settings_table, verify_panel

log = logging.getLogger("crofton")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_IO = 4

EPILOG = """\
exit codes:
  0  success
  1  verification failed
  2  usage error or invalid argument
  3  resource limit exceeded (primitive or breakpoint cap)
  4  I/O or file-format error

environment:
  CROFTON_HOME         config directory (default ~/.crofton)
  CROFTON_THREADS      default worker threads
  CROFTON_THETA_COUNT  default scan angle count
  CROFTON_SEED         default seed
"""


class Run:
    """Per-invocation state: resolved settings and the files read and written."""

    def __init__(self, command: str, argv: List[str], args: argparse.Namespace):
        self.command = command
        self.argv = argv
        self.args = args
        self.settings = cfg.EvaluatorSettings.from_env()
        self.inputs: List[str] = []
        self.outputs: List[str] = []
        self.started_at = setio.utc_now()

    @property
    def threads(self) -> int:
        return self.args.threads if self.args.threads else self.settings.workers

    @property
    def seed(self) -> int:
        return self.settings.seed if self.args.seed is None else self.args.seed

    def pinned_argv(self) -> List[str]:
        argv = list(self.argv)
        pins = {"--seed": self.seed}
        for flag, attr in (("--theta-count", "theta_count"), ("--samples", "samples")):
            value = getattr(self.args, attr, None)
            if value is not None:
                pins[flag] = value
        for flag, value in pins.items():
            if flag not in argv and not any(a.startswith(flag + "=") for a in argv):
                argv += [flag, str(value)]
        return argv

    def config_echo(self) -> Dict[str, Any]:
        echo = {k: v for k, v in vars(self.args).items() if k != "handler"}
        echo["seed"] = self.seed
        echo["threads"] = self.threads
        echo["degeneracy_tol"] = self.settings.degeneracy_tol
        echo["max_primitives"] = self.settings.max_primitives
        return echo

    def wrote(self, path: Path) -> None:
        self.outputs.append(str(path))

    def finish(self) -> None:
        if not self.outputs:
            return
        manifest = RunManifest(
            command=self.command,
            argv=self.pinned_argv(),
            config=self.config_echo(),
            version=setio.artifact_version(),
            seeds=[self.seed],
            inputs=self.inputs,
            outputs=self.outputs,
            started_at=self.started_at,
            finished_at=setio.utc_now(),
        )
        for output in self.outputs:
            target = setio.manifest_path(output)
            setio.write_manifest(manifest, target)
            log.debug("manifest written to %s", target)


def _emit_json(doc: Any) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, allow_nan=False) + "\n")


def _float_list(text: str) -> List[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one number")
    return values


def _load_set(run: Run, path: str) -> RectifiableSet:
    run.inputs.append(path)
    return setio.read_set(path)


def _domain_for(rset: RectifiableSet, spec: Optional[str]):
    if spec:
        return parse_domain(spec)
    return rset.domain if rset.domain is not None else Disk()


# ----------------------------- Commands -----------------------------

def cmd_gen(run: Run) -> int:
    args = run.args
    if args.kind == "disk-circles":
        if args.L is None:
            raise InvalidArgumentError("disk-circles needs --L")
        if args.domain and parse_domain(args.domain) != Disk():
            raise InvalidArgumentError("disk-circles is built in the unit disk about the origin")
        rset = disk_construction(args.L)
    else:
        domain = parse_domain(args.domain or "disk")
        if args.L is not None:
            if args.n is not None or args.eps is not None:
                raise InvalidArgumentError("give either --L or --n/--eps, not both")
            _, rset = steinhaus_for_length(args.L, domain, max_primitives=run.settings.max_primitives)
        else:
            if args.n is None or args.eps is None:
                raise InvalidArgumentError("steinhaus needs --L or both --n and --eps")
            rset = steinhaus_clip(
                SteinhausParams(args.n, args.eps),
                domain,
                max_primitives=run.settings.max_primitives,
                tol=run.settings.degeneracy_tol,
            )
    log.info("generated %d primitives, total length %.9g", len(rset), rset.total_length)
    if args.out:
        run.wrote(setio.write_set(rset, args.out))
    else:
        _emit_json(setio.set_to_dict(rset))
    return EXIT_OK


def cmd_eval(run: Run) -> int:
    args = run.args
    rset = _load_set(run, args.set)
    domain = _domain_for(rset, args.domain)
    tol = run.settings.degeneracy_tol
    if not set_inside(rset, domain, tol):
        log.warning("set is not contained in the domain; the target still uses the domain chord")
    if args.method == "scan":
        args.theta_count = args.theta_count or run.settings.theta_count
        report = sup_discrepancy_scan(
            rset,
            domain,
            args.theta_count,
            factor=args.factor,
            threads=run.threads,
            tol=tol,
            max_primitives=run.settings.max_primitives,
        )
    else:
        args.samples = args.samples or run.settings.mc_samples
        report = sup_discrepancy_mc(rset, domain, args.samples, run.seed, factor=args.factor, tol=tol)
    extra: Dict[str, Any] = {"domain": domain.to_dict()}
    if report.witness is not None:
        extra["lower_bound"] = lower_bound_certificate(report, rset, domain, tol=tol)
    console.print(report_table(report))
    doc = setio.report_document(report, run.config_echo(), **extra)
    if args.out:
        run.wrote(setio.write_json(doc, args.out))
    else:
        _emit_json(doc)
    return EXIT_OK


def _suite_params(run: Run) -> Dict[str, Any]:
    args = run.args
    by_suite: Dict[str, Dict[str, Any]] = {
        "crofton": {"sets": args.sets, "resolution": args.resolution, "seed": run.seed},
        "theorem1": {"lengths": args.L, "theta_count": args.theta_count, "grid": args.grid, "threads": run.threads},
        "proposition": {
            "lengths": args.L,
            "steinhaus_lengths": args.steinhaus_L,
            "theta_count": args.theta_count,
            "threads": run.threads,
        },
        "scaling": {"lengths": args.L, "theta_count": args.theta_count, "threads": run.threads},
        "harmonic": {"n_max": args.n_max, "samples": args.samples, "terms": args.terms, "seed": run.seed},
        "longimeter": {"n": args.n},
    }
    return by_suite[args.suite]


def cmd_verify(run: Run) -> int:
    args = run.args
    result = run_suite(args.suite, **_suite_params(run))
    console.print(verify_panel(result.suite, result.passed, result.checks))
    doc = result.to_dict()
    if args.out:
        run.wrote(setio.write_json(doc, args.out))
    else:
        _emit_json(doc)
    return EXIT_OK if result.passed else EXIT_VERIFY_FAILED


def cmd_scan(run: Run) -> int:
    args = run.args
    domain = parse_domain(args.domain or "disk")
    args.theta_count = args.theta_count or run.settings.theta_count
    study = scaling_study(
        domain,
        args.L,
        theta_count=args.theta_count,
        threads=run.threads,
        max_primitives=run.settings.max_primitives,
        pencil=args.pencil,
    )
    console.print(scaling_table(study))
    doc = dict(study.to_dict(), domain=domain.to_dict())
    if args.csv:
        run.wrote(setio.write_scaling_csv(study, args.csv))
    if args.json:
        run.wrote(setio.write_json(doc, args.json))
    if not (args.csv or args.json):
        _emit_json(doc)
    return EXIT_OK


def cmd_render(run: Run) -> int:
    args = run.args
    rset = _load_set(run, args.set)
    domain = _domain_for(rset, args.domain)
    witness = None
    if args.witness:
        run.inputs.append(args.witness)
        witness = setio.read_report(args.witness).witness
    settings = cfg.render_settings()
    if args.size:
        settings["size"] = args.size
    svg = render_svg(rset, domain, args.out, witness=witness, style=RenderStyle.from_settings(settings))
    if args.out:
        run.wrote(Path(args.out))
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_optimize(run: Run) -> int:
    args = run.args
    domain = parse_domain(args.domain or "disk")
    config = SearchConfig(
        segment_count=args.segments,
        length_budget=args.L,
        iterations=args.iterations,
        proposal_scale=args.scale,
        seed=run.seed,
        evaluator=EvaluatorChoice(args.evaluator, args.samples, args.theta_count),
        schedule=ScheduleChoice(args.schedule, args.t0, args.cooling),
        final_theta_count=args.final_theta_count,
    )
    result, report, history = optimize(domain, config, threads=run.threads)
    console.print(report_table(report, title="optimized set"))
    run.wrote(setio.write_set(result, args.out))
    report_path = args.report or str(Path(args.out).with_suffix(".report.json"))
    history_path = args.history or str(Path(args.out).with_suffix(".history.jsonl"))
    run.wrote(setio.write_report(report, report_path, config.to_dict(), domain=domain.to_dict()))
    run.wrote(setio.write_history(history, history_path))
    return EXIT_OK


def cmd_rerun(run: Run) -> int:
    manifest = setio.read_manifest(run.args.manifest)
    if not manifest.argv or manifest.argv[0] == "rerun":
        raise InvalidArgumentError(f"{run.args.manifest}: manifest does not record a rerunnable command")
    log.info("re-running %s (recorded with crofton %s)", " ".join(manifest.argv), manifest.version)
    if manifest.version != setio.artifact_version():
        log.warning("manifest was written by crofton %s, running %s", manifest.version, setio.artifact_version())
    return main(manifest.argv)


def cmd_config(run: Run) -> int:
    args = run.args
    if args.action == "set":
        if args.key is None or args.value is None:
            raise InvalidArgumentError("config set needs KEY and VALUE")
        try:
            value = cfg.set_setting(args.key, args.value)
        except KeyError as e:
            raise InvalidArgumentError(str(e)) from e
        console.print(f"[bold]{args.key}[/bold] = {value!r}  ({cfg.get_config_path()})")
        return EXIT_OK
    console.print(settings_table(cfg.load_config()))
    return EXIT_OK


# ----------------------------- Parser -----------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (default from config)")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: CROFTON_THREADS or auto)")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")

    parser = argparse.ArgumentParser(
        prog="crofton",
        description="Buffon discrepancy of planar sets: constructions, evaluators and checks.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[Run], int], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(handler=handler)
        return p

    p = add("gen", cmd_gen, "generate a set")
    p.add_argument("kind", choices=["disk-circles", "steinhaus"])
    p.add_argument("--L", type=float, help="target length")
    p.add_argument("--n", type=int, help="Steinhaus direction count")
    p.add_argument("--eps", type=float, help="Steinhaus line spacing")
    p.add_argument("--domain", help="domain spec, e.g. disk, square:1, reuleaux:1")
    p.add_argument("--out", help="set JSON path (stdout when omitted)")

    p = add("eval", cmd_eval, "measure the sup discrepancy of a set")
    p.add_argument("set", help="set JSON path")
    p.add_argument("--domain", help="domain spec (default: the set's own domain, else the unit disk)")
    p.add_argument("--method", choices=["scan", "mc"], default="scan")
    p.add_argument("--theta-count", type=int, default=None)
    p.add_argument("--samples", type=int, default=None, help="Monte Carlo line count")
    p.add_argument("--factor", type=float, default=None, help="override the target factor c")
    p.add_argument("--out", help="report JSON path (stdout when omitted)")

    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--resolution", type=int, default=None, help="crofton: angle nodes")
    p.add_argument("--sets", type=int, default=None, help="crofton: random sets")
    p.add_argument("--L", type=_float_list, default=None, help="theorem1/proposition/scaling: comma-separated lengths")
    p.add_argument("--steinhaus-L", type=_float_list, default=None, help="proposition: Steinhaus set lengths")
    p.add_argument("--theta-count", type=int, default=None)
    p.add_argument("--grid", type=int, default=None, help="theorem1: radius grid size")
    p.add_argument("--n-max", type=int, default=None, help="harmonic: largest n")
    p.add_argument("--samples", type=int, default=None, help="harmonic: random angles per n")
    p.add_argument("--terms", type=int, default=None, help="harmonic: Fourier terms")
    p.add_argument("--n", type=int, default=None, help="longimeter: direction count")
    p.add_argument("--out", help="summary JSON path (stdout when omitted)")

    p = add("scan", cmd_scan, "Steinhaus scaling sweep")
    p.add_argument("--L", type=_float_list, required=True, help="comma-separated lengths")
    p.add_argument("--domain", help="domain spec with pose, e.g. disk:1:1,0 for the origin on the boundary")
    p.add_argument("--theta-count", type=int, default=None)
    p.add_argument("--pencil", action="store_true", help="also report the deviation of lines near the origin")
    p.add_argument("--csv", help="CSV table path")
    p.add_argument("--json", help="JSON study path")

    p = add("render", cmd_render, "render a set as SVG")
    p.add_argument("set", help="set JSON path")
    p.add_argument("--domain")
    p.add_argument("--witness", help="report JSON whose witness line is overlaid")
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--out", help="SVG path (stdout when omitted)")

    p = add("optimize", cmd_optimize, "search for a low-discrepancy segment set")
    p.add_argument("--domain")
    p.add_argument("--segments", type=int, required=True)
    p.add_argument("--L", type=float, required=True, help="length budget")
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--scale", type=float, default=0.05, help="proposal standard deviation")
    p.add_argument("--evaluator", choices=["mc", "scan"], default="mc")
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--theta-count", type=int, default=256)
    p.add_argument("--schedule", choices=["greedy", "simulated_annealing"], default="greedy")
    p.add_argument("--t0", type=float, default=1.0)
    p.add_argument("--cooling", type=float, default=0.999)
    p.add_argument("--final-theta-count", type=int, default=1024)
    p.add_argument("--out", required=True, help="set JSON path")
    p.add_argument("--report", help="report JSON path (default beside --out)")
    p.add_argument("--history", help="history JSON-lines path (default beside --out)")

    p = add("rerun", cmd_rerun, "re-execute the command recorded in a manifest")
    p.add_argument("manifest")

    p = add("config", cmd_config, "show or change settings")
    p.add_argument("action", choices=["show", "set"])
    p.add_argument("key", nargs="?")
    p.add_argument("value", nargs="?")
    return parser


def _setup_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False, rich_tracebacks=False)],
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _setup_logging(args)
    run = Run(args.command, argv, args)
    try:
        code = args.handler(run)
        run.finish()
        return code
    except ResourceLimitError as e:
        log.error("%s", e)
        return EXIT_RESOURCE
    except (SetFormatError, OSError) as e:
        log.error("%s", e)
        return EXIT_IO
    except (InvalidArgumentError, DegenerateLineError) as e:
        log.error("%s", e)
        return EXIT_USAGE
    except CroftonError as e:
        log.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
