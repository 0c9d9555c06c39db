#!/usr/bin/env python3
"""
Isogeny Sum Verifier - command-line front end

    python run.py fiber-sum --p 7 --d 1
    python run.py surface-sum --p 31 --method all
    python run.py class-number --p 131
    python run.py verify --from 7 --to 199 --workers 4 --format csv --out report.csv
    python run.py two-isogeny --p 131
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from arith import Prime
from arith.errors import IsoSumError, NoRationalIsomorphismError
from config.settings import FORMATS, Config
from sums import CyclotomicSum, IntStr
from sums.class_number import h_star_dirichlet, h_star_forms, reduced_forms
from sums.isogeny3 import (
    FiberIsogeny,
    Orientation,
    character_orientation,
    fiber_sum,
    t_in_image,
)
from sums.orchestrator import SweepConfig, SweepInterrupted, SweepReport, run_sweep
from sums.surface import SURFACE_METHODS, SurfaceMethod
from sums.two_isogeny import ASSERTED_PRIMES, build_two_isogeny, is_ordinary, two_isogeny_sum

logger = logging.getLogger("isosum")

SURFACE_CHOICES = ("naive", "direct", "fast", "pointwise", "all")
CLASS_NUMBER_CHOICES = ("dirichlet", "forms", "both")


class FiberRecord(BaseModel):
    p: IntStr
    d: IntStr
    alpha: IntStr
    S_tau: IntStr
    quotient: IntStr
    buckets: CyclotomicSum
    orientation: Orientation
    minus_four_d_exponent: int
    t_in_image: bool

    @property
    def passed(self) -> bool:
        return self.S_tau == self.p * self.quotient


class SurfaceRecord(BaseModel):
    p: IntStr
    sums: Dict[str, IntStr]
    quotient: IntStr
    h_star_dirichlet: IntStr
    h_star_forms: IntStr
    expected: IntStr
    methods_agree: bool
    main_theorem_pass: bool

    @property
    def passed(self) -> bool:
        return self.methods_agree and self.main_theorem_pass


class ClassNumberRecord(BaseModel):
    p: IntStr
    h_star_dirichlet: Optional[IntStr] = None
    h_star_forms: Optional[IntStr] = None
    forms: Optional[List[Tuple[int, int, int]]] = None
    agree: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.agree is not False


class TwoIsogenyRecord(BaseModel):
    p: IntStr
    ordinary: bool
    S_tau: Optional[IntStr] = None
    quotient: Optional[IntStr] = None
    h_star: IntStr
    matches_h_star: Optional[bool] = None
    note: str = ""

    @property
    def passed(self) -> bool:
        if self.p in ASSERTED_PRIMES:
            return self.matches_h_star is True
        return True


def cmd_fiber_sum(p: int, d: int) -> FiberRecord:
    prime = Prime(p)
    f = FiberIsogeny(prime, d)
    total, value = fiber_sum(f)
    return FiberRecord(
        p=p,
        d=f.d.value,
        alpha=f.alpha.value,
        S_tau=value,
        quotient=value // p,
        buckets=total,
        orientation=character_orientation(f),
        minus_four_d_exponent=f.minus_four_d_exponent(),
        t_in_image=t_in_image(f),
    )


def _surface_methods(choice: str) -> List[SurfaceMethod]:
    if choice == "all":
        return [SurfaceMethod.FIBERWISE, SurfaceMethod.DIRECT, SurfaceMethod.FAST]
    if choice == "naive":
        return [SurfaceMethod.FIBERWISE]
    return [SurfaceMethod(choice)]


def cmd_surface_sum(p: int, methods: Sequence[SurfaceMethod]) -> SurfaceRecord:
    prime = Prime(p)
    prime.require_cubic()
    sums = {m.value: SURFACE_METHODS[m](prime).integer_value for m in methods}

    h_dirichlet = h_star_dirichlet(prime).h_star
    h_forms = h_star_forms(prime).h_star
    expected = p * (h_forms - (p - 1) // 2)
    values = set(sums.values())
    first = next(iter(sums.values()))

    return SurfaceRecord(
        p=p,
        sums=sums,
        quotient=first // p,
        h_star_dirichlet=h_dirichlet,
        h_star_forms=h_forms,
        expected=expected,
        methods_agree=len(values) == 1,
        main_theorem_pass=values == {expected} and h_dirichlet == h_forms,
    )


def cmd_class_number(p: int, method: str = "both") -> ClassNumberRecord:
    prime = Prime(p)
    record = ClassNumberRecord(p=p)
    if method in ("dirichlet", "both"):
        record.h_star_dirichlet = h_star_dirichlet(prime).h_star
    if method in ("forms", "both"):
        record.h_star_forms = h_star_forms(prime).h_star
        record.forms = reduced_forms(-p) if p % 4 == 3 else []
    if method == "both":
        record.agree = record.h_star_dirichlet == record.h_star_forms
    return record


def cmd_verify_sweep(config: SweepConfig) -> SweepReport:
    return run_sweep(config)


def cmd_two_isogeny(p: int) -> TwoIsogenyRecord:
    prime = Prime(p)
    h_star = h_star_forms(prime).h_star
    if not is_ordinary(prime):
        return TwoIsogenyRecord(p=p, ordinary=False, h_star=h_star, note="supersingular: comparison skipped")

    try:
        case = build_two_isogeny(prime)
    except NoRationalIsomorphismError as e:
        return TwoIsogenyRecord(p=p, ordinary=True, h_star=h_star, note=f"{e}: comparison skipped")

    total = two_isogeny_sum(case)
    quotient = -total // p
    return TwoIsogenyRecord(
        p=p,
        ordinary=True,
        S_tau=total,
        quotient=quotient,
        h_star=h_star,
        matches_h_star=quotient == h_star,
    )


def render_record(record: BaseModel, output_format: str) -> str:
    if output_format == "json":
        return record.model_dump_json(indent=2)
    lines = []
    for key in type(record).model_fields:
        value = getattr(record, key)
        if value is None:
            continue
        lines.append(f"{key:>24}: {value}")
    lines.append(f"{'verdict':>24}: {'✅ pass' if record.passed else '❌ FAIL'}")
    return "\n".join(lines)


def _truthy(raw: str) -> bool:
    return raw.strip().lower() in ("1", "true", "yes", "on")


def resolve_sweep_config(args: argparse.Namespace) -> SweepConfig:
    """Flags win over the config file, which wins over the environment defaults"""
    file_values = Config.load_file(args.config)

    def pick(flag, key, default, convert=str):
        if flag is not None:
            return flag
        if key in file_values:
            return convert(file_values[key])
        return default

    lo = pick(args.lo, "from", None, int)
    hi = pick(args.hi, "to", None, int)
    if lo is None or hi is None:
        raise ValueError("verify needs --from and --to (or from/to in the config file)")

    method = pick(args.method, "method", "all")
    return SweepConfig(
        lo=lo,
        hi=hi,
        methods=tuple(m.strip() for m in method.split(",") if m.strip()),
        workers=pick(args.workers, "workers", Config.worker_count(), int),
        output_format=pick(args.format, "format", Config.OUTPUT_FORMAT),
        out=pick(args.out, "out", None),
        fail_fast=pick(args.fail_fast, "fail_fast", False, _truthy),
        allow_large=pick(args.allow_large, "allow_large", False, _truthy),
        timing=pick(args.timing, "timing", True, _truthy),
    )


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
        print(f"✅ Report written to {out}", file=sys.stderr)
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isosum", description="Isogeny character sum verifier")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")
    sub = parser.add_subparsers(dest="command", required=True)

    fiber = sub.add_parser("fiber-sum", help="S_tau_d on one fiber")
    fiber.add_argument("--p", type=int, required=True)
    fiber.add_argument("--d", type=int, required=True)
    fiber.add_argument("--format", choices=("json", "table"), default="table")

    surface = sub.add_parser("surface-sum", help="The global surface sum against the class number")
    surface.add_argument("--p", type=int, required=True)
    surface.add_argument("--method", choices=SURFACE_CHOICES, default="all")
    surface.add_argument("--format", choices=("json", "table"), default="table")

    class_number = sub.add_parser("class-number", help="h_p* by both oracles")
    class_number.add_argument("--p", type=int, required=True)
    class_number.add_argument("--method", choices=CLASS_NUMBER_CHOICES, default="both")
    class_number.add_argument("--format", choices=("json", "table"), default="table")

    verify = sub.add_parser("verify", help="Sweep a prime range and report every check")
    verify.add_argument("--from", dest="lo", type=int, default=None)
    verify.add_argument("--to", dest="hi", type=int, default=None)
    verify.add_argument(
        "--workers", type=int, default=None, help="worker processes; pair with --no-timing for comparable reports"
    )
    verify.add_argument("--format", choices=FORMATS, default=None)
    verify.add_argument("--out", default=None)
    verify.add_argument("--method", default=None, help="naive, direct, fast or all; comma-separated")
    verify.add_argument("--config", default=None, help="KEY=VALUE file with the same keys as the flags")
    verify.add_argument("--fail-fast", dest="fail_fast", action="store_true", default=None)
    verify.add_argument("--allow-large", dest="allow_large", action="store_true", default=None)
    verify.add_argument(
        "--no-timing",
        dest="timing",
        action="store_false",
        default=None,
        help="leave elapsed_ms blank; reports are then identical for any --workers",
    )

    two = sub.add_parser("two-isogeny", help="The degree-2 sum on y^2 = (x+2)(x^2-2)")
    two.add_argument("--p", type=int, required=True)
    two.add_argument("--format", choices=("json", "table"), default="table")

    return parser


def _configure_logging(verbosity: int):
    level = {0: Config.LOG_LEVEL, 1: "INFO"}.get(verbosity, "DEBUG")
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand; 0 on success, 1 when a check fails, 2 on errors"""
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    try:
        Config.validate()
        if args.command == "verify":
            config = resolve_sweep_config(args)
            try:
                report = cmd_verify_sweep(config)
            except SweepInterrupted as e:
                _emit(e.report.render(config.output_format), config.out)
                print(f"⚠️  {e}", file=sys.stderr)
                return 1
            _emit(report.render(config.output_format), config.out)
            return 0 if report.passed else 1

        if args.command == "fiber-sum":
            record = cmd_fiber_sum(args.p, args.d)
        elif args.command == "surface-sum":
            record = cmd_surface_sum(args.p, _surface_methods(args.method))
        elif args.command == "class-number":
            record = cmd_class_number(args.p, args.method)
        else:
            record = cmd_two_isogeny(args.p)
    except (IsoSumError, ValueError, ArithmeticError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2

    print(render_record(record, args.format))
    return 0 if record.passed else 1


if __name__ == "__main__":
    sys.exit(main())
