"""Main entry point for sigma-spectra."""

import argparse
import asyncio
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from pydantic import ValidationError as PydanticValidationError

from core.config import LOG_LEVELS, Config, reload_config
from core.constants import ExitCodes, RandomDefaults, SchemaInfo
from core.constructions import construct, scheme_bounds
from core.errors import (
    EdgeCapExceeded,
    InputFormatError,
    PreconditionError,
    SigmaError,
    ValidationError,
)
from core.formatters import get_formatter_factory
from core.hypergraph import check_explicit, random_colouring
from core.logger import get_logger, setup_logging
from core.models import (
    Colouring,
    ColourBounds,
    SchemeId,
    SigmaInstance,
    WalkDirection,
    serialize_model,
)
from core.partition import parse_partition
from core.profile_checker import build_profile, check_fast, distinct_colour_range
from core.recolour import spectrum_walk
from core.verifier import sweep, verify_instance, verify_instance_async
from execution.spectrum_engine import SpectrumEngine

logger = get_logger(__name__)

COMMANDS = ("spectrum", "check", "construct", "walk", "verify", "sweep")
SCHEME_NAMES = [scheme.value for scheme in SchemeId]


class RunConfig(BaseModel):
    """One validated CLI invocation."""
    model_config = ConfigDict(extra='forbid')

    command: str
    n: Optional[int] = None
    r: Optional[int] = None
    q: Optional[int] = None
    sigma: Optional[str] = None
    instance_file: Optional[str] = None
    bounds: Optional[str] = None
    alpha: Optional[int] = None
    beta: Optional[int] = None
    k_min: int = 1
    k_max: Optional[int] = None
    budget: Optional[int] = None
    format: Optional[str] = None
    seed: int = RandomDefaults.SEED
    parallel: bool = False
    colouring_file: Optional[str] = None
    random_k: Optional[int] = None
    explicit: bool = False
    scheme: Optional[str] = None
    param: Optional[int] = None
    direction: str = "down"
    target_k: Optional[int] = None
    min_delta: int = 1

    @field_validator('command')
    @classmethod
    def _known_command(cls, value: str) -> str:
        if value not in COMMANDS:
            raise ValueError(f"unknown subcommand {value!r}")
        return value

    @field_validator('bounds')
    @classmethod
    def _known_bounds(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in ("nmnr", "classical"):
            raise ValueError("bounds must be 'nmnr' or 'classical'")
        return value

    @field_validator('format')
    @classmethod
    def _known_format(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in ("json", "text"):
            raise ValueError("format must be 'json' or 'text'")
        return value

    @field_validator('budget')
    @classmethod
    def _positive_budget(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError(f"budget must be a positive node count, got {value}")
        return value

    @field_validator('direction')
    @classmethod
    def _known_direction(cls, value: str) -> str:
        if value not in ("up", "down"):
            raise ValueError("direction must be 'up' or 'down'")
        return value

    @field_validator('scheme')
    @classmethod
    def _known_scheme(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value.upper() not in SCHEME_NAMES:
            raise ValueError(f"scheme must be one of {SCHEME_NAMES}")
        return value.upper() if value else value

    @model_validator(mode='after')
    def _consistent(self) -> 'RunConfig':
        flags = [self.n, self.r, self.q, self.sigma]
        if self.command == "sweep":
            if self.sigma is not None or self.instance_file is not None:
                raise ValueError("sweep takes --r, --n and --q only, not --sigma or --file")
            if None in (self.n, self.r, self.q):
                raise ValueError("sweep needs --r, --n and --q")
        elif self.instance_file is not None:
            if any(v is not None for v in flags):
                raise ValueError("give the instance either as --file or as --n/--r/--q/--sigma, not both")
        elif any(v is None for v in flags):
            missing = [name for name, v in zip(("--n", "--r", "--q", "--sigma"), flags) if v is None]
            raise ValueError(f"instance needs --file or all of --n/--r/--q/--sigma; missing {missing}")

        if (self.alpha is None) != (self.beta is None):
            raise ValueError("--alpha and --beta must be given together")
        if self.alpha is not None and self.bounds is not None:
            raise ValueError("give either --bounds or --alpha/--beta, not both")
        if self.alpha is not None and self.alpha < 2:
            raise ValueError(f"alpha must be >= 2, got {self.alpha}")

        if self.command == "check" and (self.colouring_file is None) == (self.random_k is None):
            raise ValueError("check needs exactly one of --colouring or --random")
        if self.command == "construct" and self.scheme is None:
            raise ValueError("construct needs --scheme")
        if self.command == "walk":
            if self.target_k is None:
                raise ValueError("walk needs --target")
            if (self.colouring_file is None) == (self.scheme is None):
                raise ValueError("walk needs exactly one start: --colouring or --scheme")
        return self

    def resolve_bounds(self, r: int) -> ColourBounds:
        """--bounds nmnr is (2, r-1), classical is (2, r); NMNR when nothing is given."""
        if self.alpha is not None:
            bounds = ColourBounds(self.alpha, self.beta)
        elif self.bounds == "classical":
            bounds = ColourBounds.classical(r)
        else:
            bounds = ColourBounds.nmnr(r)
        bounds.validate_for(r)
        return bounds


@dataclass
class CliResult:
    """Exit status, report for stdout and diagnostic for stderr."""
    exit_code: int
    output: str = ""
    diagnostic: str = ""


def _load_json(path: str, what: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise InputFormatError(f"{what} file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise InputFormatError(f"{what} file {path} is not valid JSON: {e.msg} at line {e.lineno}") from e


def load_instance(path: str) -> SigmaInstance:
    data = _load_json(path, "instance")
    try:
        return SigmaInstance.from_dict(data)
    except SigmaError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise InputFormatError(f"instance file {path} needs integer n, r, q and a sigma list: {e!r}") from e


def load_colouring(path: str) -> Colouring:
    """Read {"classes": [[...], ...]} or a bare list of classes."""
    data = _load_json(path, "colouring")
    if isinstance(data, list):
        data = {'classes': data}
    try:
        return Colouring.from_dict(data)
    except SigmaError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise InputFormatError(f"colouring file {path} needs a list of integer classes: {e!r}") from e


def _instance(cfg: RunConfig) -> SigmaInstance:
    if cfg.instance_file is not None:
        return load_instance(cfg.instance_file)
    return SigmaInstance(n=cfg.n, r=cfg.r, q=cfg.q, sigma=parse_partition(cfg.sigma))


def _spectrum(cfg: RunConfig, engine: SpectrumEngine) -> Tuple[int, Dict[str, Any]]:
    inst = _instance(cfg)
    bounds = cfg.resolve_bounds(inst.r)
    if cfg.parallel:
        report = asyncio.run(engine.compute_spectrum_async(inst, bounds, cfg.k_max, cfg.budget, cfg.k_min))
    else:
        report = engine.compute_spectrum(inst, bounds, cfg.k_max, cfg.budget, cfg.k_min)
    return ExitCodes.SUCCESS, report.to_dict()


def _check(cfg: RunConfig, app: Config) -> Tuple[int, Dict[str, Any]]:
    inst = _instance(cfg)
    bounds = cfg.resolve_bounds(inst.r)
    if cfg.colouring_file is not None:
        col = load_colouring(cfg.colouring_file)
    else:
        col = random_colouring(inst, cfg.random_k, np.random.default_rng(cfg.seed))
    verdict = check_fast(inst, col, bounds)
    data: Dict[str, Any] = {
        'schema': SchemaInfo.SCHEMA,
        'instance': inst.to_dict(),
        'bounds': bounds.to_dict(),
        'k': col.k,
        'colouring': col.to_dict(),
        'verdict': verdict.to_dict(),
        'distinct_range': distinct_colour_range(build_profile(inst, col), inst.sigma).to_dict(),
        'explicit': None,
    }
    code = ExitCodes.SUCCESS
    if cfg.explicit:
        explicit = check_explicit(inst, col, bounds, cap=app.search.edge_cap)
        data['explicit'] = explicit.to_dict()
        data['agree'] = explicit.status is verdict.status
        if not data['agree']:
            logger.error(f"Checker disagreement on {inst.label()}: fast {verdict.status.value}, "
                         f"explicit {explicit.status.value}")
            code = ExitCodes.FAILURE
    return code, data


def _start_colouring(cfg: RunConfig, inst: SigmaInstance) -> Colouring:
    if cfg.colouring_file is not None:
        return load_colouring(cfg.colouring_file)
    return construct(inst, SchemeId(cfg.scheme), cfg.param)


def _construct(cfg: RunConfig) -> Tuple[int, Dict[str, Any]]:
    inst = _instance(cfg)
    scheme = SchemeId(cfg.scheme)
    col = construct(inst, scheme, cfg.param)
    bounds = scheme_bounds(scheme, inst)
    return ExitCodes.SUCCESS, {
        'schema': SchemaInfo.SCHEMA,
        'instance': inst.to_dict(),
        'scheme': scheme.value,
        'param': cfg.param,
        'k': col.k,
        'bounds': bounds.to_dict(),
        'colouring': col.to_dict(),
        'verdict': check_fast(inst, col, bounds).to_dict(),
    }


def _verify(cfg: RunConfig, engine: SpectrumEngine) -> Tuple[int, Dict[str, Any]]:
    inst = _instance(cfg)
    bounds = cfg.resolve_bounds(inst.r)
    if cfg.parallel:
        report = asyncio.run(verify_instance_async(inst, bounds, cfg.budget, cfg.k_max, engine))
    else:
        report = verify_instance(inst, bounds, cfg.budget, cfg.k_max, engine)
    return (ExitCodes.REFUTED if report.refuted else ExitCodes.SUCCESS), report.to_dict()


def _sweep(cfg: RunConfig, engine: SpectrumEngine) -> Tuple[int, Dict[str, Any]]:
    bounds = cfg.resolve_bounds(cfg.r)
    report = sweep(cfg.r, cfg.n, cfg.q, bounds, cfg.min_delta, cfg.budget, engine)
    return (ExitCodes.REFUTED if report.refuted else ExitCodes.SUCCESS), report.to_dict()


def _render(data: Dict[str, Any], report_type: str, fmt: str, indent: Optional[int]) -> str:
    if fmt == "text":
        return get_formatter_factory().format_data(data, report_type)
    return serialize_model(data, indent=indent)


def _dispatch(cfg: RunConfig, app: Config) -> Tuple[int, str]:
    fmt = cfg.format or app.output.format
    engine = SpectrumEngine(app.search)

    if cfg.command == "walk":
        inst = _instance(cfg)
        trace = spectrum_walk(inst, _start_colouring(cfg, inst), WalkDirection(cfg.direction),
                              cfg.target_k, app.search.walk_step_limit)
        if fmt == "text":
            data = dict(trace.to_dict(), instance=inst.to_dict())
            return ExitCodes.SUCCESS, get_formatter_factory().format_data(data, "walk")
        return ExitCodes.SUCCESS, trace.to_json_lines({'instance': inst.to_dict()})

    if cfg.command == "spectrum":
        code, data = _spectrum(cfg, engine)
        report_type = "spectrum"
    elif cfg.command == "check":
        code, data = _check(cfg, app)
        report_type = "check"
    elif cfg.command == "construct":
        code, data = _construct(cfg)
        report_type = "construction"
    elif cfg.command == "verify":
        code, data = _verify(cfg, engine)
        report_type = "verification"
    else:
        code, data = _sweep(cfg, engine)
        report_type = "sweep"

    output = _render(data, report_type, fmt, app.output.indent)
    if fmt == "text" and cfg.command in ("spectrum", "verify", "sweep"):
        summary = engine.metrics.get_summary()
        output += f"search time {summary['total_seconds']:.3f}s over {summary['answered']} k\n"
    return code, output


def run(cfg: RunConfig, app: Optional[Config] = None) -> CliResult:
    """
    Execute one subcommand.

    Args:
        cfg: Validated invocation
        app: Loaded configuration; read from disk and environment when None

    Returns:
        CliResult: exit 0 on success, 2 when a claim is refuted, 3 on invalid
        input or unmet hypotheses, 1 on anything unexpected
    """
    app = app or reload_config()
    try:
        code, output = _dispatch(cfg, app)
        return CliResult(exit_code=code, output=output)
    except ValidationError as e:
        conditions = f" [{', '.join(e.conditions)}]" if e.conditions else ""
        return CliResult(ExitCodes.VALIDATION, diagnostic=f"validation error: {e}{conditions}")
    except PreconditionError as e:
        condition = f" [{e.condition}]" if e.condition else ""
        return CliResult(ExitCodes.VALIDATION, diagnostic=f"precondition not met: {e}{condition}")
    except InputFormatError as e:
        return CliResult(ExitCodes.VALIDATION, diagnostic=f"input error: {e}")
    except EdgeCapExceeded as e:
        return CliResult(ExitCodes.VALIDATION, diagnostic=f"explicit check refused: {e}")
    except Exception as e:
        logger.error(f"Fatal error in {cfg.command}: {e}", exc_info=True)
        return CliResult(ExitCodes.FAILURE, diagnostic=f"error: {e}")


class SigmaArgumentParser(argparse.ArgumentParser):
    """Argument errors are validation failures: exit 3, not argparse's 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(ExitCodes.VALIDATION, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = SigmaArgumentParser(add_help=False)
    common.add_argument('--bounds', choices=['nmnr', 'classical'], help='Named colour bounds (default nmnr)')
    common.add_argument('--alpha', type=int, help='Fewest distinct colours allowed on an edge')
    common.add_argument('--beta', type=int, help='Most distinct colours allowed on an edge')
    common.add_argument('--budget', type=int, help='Search-node budget per k')
    common.add_argument('--format', choices=['json', 'text'], help='Output format (default from config)')
    common.add_argument('--config', type=str, help='Path to configuration file')
    common.add_argument('--log-level', type=str, help='Logging level for stderr')
    common.add_argument('--parallel', action='store_true', help='Search different k concurrently')

    instance = SigmaArgumentParser(add_help=False)
    instance.add_argument('--n', type=int, help='Number of classes')
    instance.add_argument('--r', type=int, help='Edge size')
    instance.add_argument('--q', type=int, help='Vertices per class')
    instance.add_argument('--sigma', type=str, help='Parts of sigma, comma separated')
    instance.add_argument('--file', dest='instance_file', type=str, help='Instance JSON file')

    k_range = SigmaArgumentParser(add_help=False)
    k_range.add_argument('--k-min', type=int, default=1, help='Smallest k examined')
    k_range.add_argument('--k-max', type=int, help='Largest k examined (default nq)')

    parser = SigmaArgumentParser(prog=SchemaInfo.PROGRAM,
                                 description="Colour spectra of sigma-hypergraphs")
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('spectrum', parents=[common, instance, k_range], help='Decide every k in a range')

    check = sub.add_parser('check', parents=[common, instance], help='Check one colouring')
    check.add_argument('--colouring', dest='colouring_file', type=str, help='Colouring JSON file')
    check.add_argument('--random', dest='random_k', type=int, help='Check a random colouring with K colours')
    check.add_argument('--seed', type=int, default=RandomDefaults.SEED, help='Seed for --random')
    check.add_argument('--explicit', action='store_true', help='Cross-check by enumerating every edge')

    cons = sub.add_parser('construct', parents=[common, instance], help='Build an explicit colouring')
    cons.add_argument('--scheme', choices=SCHEME_NAMES, required=True, type=str.upper)
    cons.add_argument('--k', '--t', dest='param', type=int, help='k for ZONE, t for TWO_ZONE')

    walk = sub.add_parser('walk', parents=[common, instance], help='Greedy re-colouring walk (heuristic)')
    walk.add_argument('--colouring', dest='colouring_file', type=str, help='Start colouring JSON file')
    walk.add_argument('--scheme', choices=SCHEME_NAMES, type=str.upper, help='Start from a construction')
    walk.add_argument('--k', '--t', dest='param', type=int, help='Construction parameter')
    walk.add_argument('--direction', choices=['up', 'down'], default='down')
    walk.add_argument('--target', dest='target_k', type=int, required=True, help='Colour count to walk toward')

    sub.add_parser('verify', parents=[common, instance, k_range], help='Grade known claims on one instance')

    sweep_parser = sub.add_parser('sweep', parents=[common], help='Verify every sigma of r at fixed n, q')
    sweep_parser.add_argument('--r', type=int, required=True)
    sweep_parser.add_argument('--n', type=int, required=True)
    sweep_parser.add_argument('--q', type=int, required=True)
    sweep_parser.add_argument('--min-delta', type=int, default=1, help='Keep sigma with smallest part >= this')
    return parser


def parse_run_config(argv: Optional[List[str]] = None) -> Tuple[RunConfig, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(args).items()
              if k in RunConfig.model_fields and v is not None and v is not False}
    return RunConfig(**fields), args


def main(argv: Optional[List[str]] = None) -> None:
    """Main entry point."""
    try:
        cfg, args = parse_run_config(argv)
    except PydanticValidationError as e:
        messages = "; ".join(err['msg'] for err in e.errors())
        print(f"{SchemaInfo.PROGRAM}: invalid arguments: {messages}", file=sys.stderr)
        sys.exit(ExitCodes.VALIDATION)

    try:
        app = reload_config(args.config)
    except PydanticValidationError as e:
        print(f"{SchemaInfo.PROGRAM}: invalid configuration: {e}", file=sys.stderr)
        sys.exit(ExitCodes.VALIDATION)

    level = args.log_level or app.logging.level
    if level.upper() not in LOG_LEVELS:
        print(f"{SchemaInfo.PROGRAM}: unknown log level {level!r}", file=sys.stderr)
        sys.exit(ExitCodes.VALIDATION)
    setup_logging(app.logging, level=level)

    try:
        result = run(cfg, app)
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        sys.exit(ExitCodes.FAILURE)

    if result.output:
        print(result.output.rstrip("\n"))
    if result.diagnostic:
        print(f"{SchemaInfo.PROGRAM}: {result.diagnostic}", file=sys.stderr)
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
