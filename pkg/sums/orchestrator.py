"""
Sweep Orchestrator - verifies every identity across a range of primes
"""

import asyncio
import csv
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from arith import Prime, is_prime, legendre_value
from arith.errors import IsoSumError, LemmaViolationError
from config.settings import FORMATS, Config

from . import IntStr, VerifierBase
from .class_number import h_star_dirichlet, h_star_forms
from .surface import (
    count_y_quadratic,
    row_sum,
    surface_sum_direct,
    surface_sum_fast,
    surface_sum_fiberwise,
)

logger = logging.getLogger(__name__)

WORD_LIMIT = 2 ** 63

CSV_COLUMNS = (
    "p",
    "S_tau_naive",
    "S_tau_direct",
    "S_tau_fast",
    "quotient",
    "h_star_dirichlet",
    "h_star_forms",
    "main_theorem_pass",
    "fiber_divisibility_pass",
    "elapsed_ms",
    "lemma_pass",
)


class SweepMethod(str, Enum):
    NAIVE = "naive"
    DIRECT = "direct"
    FAST = "fast"
    ALL = "all"

    @classmethod
    def expand(cls, methods) -> Tuple["SweepMethod", ...]:
        chosen = {cls(m) for m in methods}
        if cls.ALL in chosen:
            chosen = {cls.NAIVE, cls.DIRECT, cls.FAST}
        return tuple(m for m in (cls.NAIVE, cls.DIRECT, cls.FAST) if m in chosen)


_SWEEP_SUMS = {
    SweepMethod.NAIVE: surface_sum_fiberwise,
    SweepMethod.DIRECT: surface_sum_direct,
    SweepMethod.FAST: surface_sum_fast,
}


class SweepConfig(BaseModel):
    lo: int = Field(ge=5)
    hi: int
    methods: Tuple[SweepMethod, ...] = Field(default=(SweepMethod.ALL,), validate_default=True)
    workers: int = Field(default=1, ge=1)
    output_format: str = "table"
    out: Optional[str] = None
    fail_fast: bool = False
    allow_large: bool = False
    timing: bool = True

    @field_validator("methods", mode="after")
    @classmethod
    def _expand_methods(cls, value):
        expanded = SweepMethod.expand(value)
        if not expanded:
            raise ValueError("at least one method is required")
        return expanded

    @field_validator("output_format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in FORMATS:
            raise ValueError(f"unknown output format {value!r}")
        return value

    @model_validator(mode="after")
    def _range_is_sane(self):
        if self.hi < self.lo:
            raise ValueError(f"--to {self.hi} is below --from {self.lo}")
        if self.hi >= WORD_LIMIT:
            raise ValueError(f"--to {self.hi} exceeds the word size")
        quadratic = {SweepMethod.NAIVE, SweepMethod.DIRECT} & set(self.methods)
        if quadratic and self.hi > Config.NAIVE_CAP and not self.allow_large:
            raise ValueError(
                f"--to {self.hi} exceeds the cap {Config.NAIVE_CAP} for naive/direct; "
                "pass --allow-large to run anyway"
            )
        return self

    def admissible_primes(self) -> List[int]:
        """Primes p = 1 mod 3 in [lo, hi], ascending"""
        return [n for n in range(max(self.lo, 7), self.hi + 1) if n % 3 == 1 and is_prime(n)]


class PrimeRecord(BaseModel):
    p: IntStr
    S_tau_naive: Optional[IntStr] = None
    S_tau_direct: Optional[IntStr] = None
    S_tau_fast: Optional[IntStr] = None
    quotient: Optional[IntStr] = None
    h_star_dirichlet: IntStr
    h_star_forms: IntStr
    main_theorem_pass: bool
    fiber_divisibility_pass: Optional[bool] = None
    elapsed_ms: Optional[float] = None
    lemma_pass: bool = True

    @property
    def passed(self) -> bool:
        return self.main_theorem_pass and self.lemma_pass and self.fiber_divisibility_pass is not False

    def csv_row(self) -> Dict[str, str]:
        row = {}
        for key, value in self.model_dump(mode="json").items():
            if value is None:
                row[key] = ""
            elif isinstance(value, bool):
                row[key] = "true" if value else "false"
            else:
                row[key] = str(value)
        return row


class SweepReport(BaseModel):
    schema_version: str = Config.SCHEMA_VERSION
    records: List[PrimeRecord] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> List[int]:
        return [r.p for r in self.records if not r.passed]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, text: str) -> "SweepReport":
        return cls.model_validate_json(text)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for record in self.records:
            writer.writerow(record.csv_row())
        return buffer.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SweepReport":
        rows = csv.DictReader(io.StringIO(text))
        records = [
            PrimeRecord.model_validate({k: (v if v != "" else None) for k, v in row.items()})
            for row in rows
        ]
        return cls(records=records)

    def to_table(self) -> str:
        header = f"{'p':>7} {'naive':>12} {'direct':>12} {'fast':>12} {'quotient':>9} {'h*':>5}  verdict"
        lines = [header, "-" * len(header)]
        for r in self.records:
            cells = [("" if v is None else str(v)) for v in (r.S_tau_naive, r.S_tau_direct, r.S_tau_fast)]
            verdict = "✅ pass" if r.passed else "❌ FAIL"
            lines.append(
                f"{r.p:>7} {cells[0]:>12} {cells[1]:>12} {cells[2]:>12} "
                f"{'' if r.quotient is None else r.quotient:>9} {r.h_star_forms:>5}  {verdict}"
            )
        lines.append(f"{len(self.records)} primes, {len(self.failures)} failed")
        return "\n".join(lines)

    def render(self, output_format: str) -> str:
        if output_format == "json":
            return self.to_json()
        if output_format == "csv":
            return self.to_csv()
        return self.to_table()


class SweepInterrupted(Exception):
    """Raised when a sweep is cut short; carries whatever finished"""

    def __init__(self, report: SweepReport):
        super().__init__(f"sweep interrupted after {len(report.records)} primes")
        self.report = report


def _spot_check_xs(p: int) -> List[int]:
    if p <= Config.EXHAUSTIVE_LIMIT:
        return list(range(1, p))
    nonresidue = next(a for a in range(2, p) if legendre_value(a, p) == -1)
    return sorted({1, 2, 3, 4, nonresidue, p - 2, p - 1})


def lemma_checks(prime: Prime) -> bool:
    """Row sums and the quadratic y-count against their closed forms"""
    p = prime.p
    for x in _spot_check_xs(p):
        try:
            row_sum(prime, x)
        except LemmaViolationError as e:
            logger.warning("p=%d: %s", p, e)
            return False
        expected = (p - 1) // 2 if legendre_value(x, p) == -1 else (p - 3) // 2
        if count_y_quadratic(prime, x) != expected:
            logger.warning("p=%d: quadratic y-count at x=%d is off", p, x)
            return False
    return True


def verify_prime(p: int, methods: Tuple[str, ...], timing: bool = True) -> PrimeRecord:
    """Every per-prime check; runs in worker processes, so it takes and returns plain data"""
    started = time.perf_counter()
    prime = Prime(p)
    chosen = SweepMethod.expand(methods)

    values: Dict[SweepMethod, Optional[int]] = {}
    fiber_pass: Optional[bool] = None
    for method in chosen:
        try:
            values[method] = _SWEEP_SUMS[method](prime).integer_value
        except IsoSumError as e:
            logger.warning("p=%d: %s method failed: %s", p, method.value, e)
            values[method] = None
        if method is SweepMethod.NAIVE:
            fiber_pass = values[method] is not None

    h_dirichlet = h_star_dirichlet(prime).h_star
    h_forms = h_star_forms(prime).h_star
    expected = p * (h_forms - (p - 1) // 2)

    computed = [v for v in values.values() if v is not None]
    main_pass = (
        len(computed) == len(chosen)
        and all(v == expected for v in computed)
        and h_dirichlet == h_forms
    )

    return PrimeRecord(
        p=p,
        S_tau_naive=values.get(SweepMethod.NAIVE),
        S_tau_direct=values.get(SweepMethod.DIRECT),
        S_tau_fast=values.get(SweepMethod.FAST),
        quotient=computed[0] // p if computed else None,
        h_star_dirichlet=h_dirichlet,
        h_star_forms=h_forms,
        main_theorem_pass=main_pass,
        fiber_divisibility_pass=fiber_pass,
        elapsed_ms=round((time.perf_counter() - started) * 1000, 3) if timing else None,
        lemma_pass=lemma_checks(prime),
    )


class SweepOrchestrator(VerifierBase):
    """
    Plans a sweep over the admissible primes, fans the primes out to worker
    processes, and folds the records into one report ordered by p.
    """

    def __init__(self, config: SweepConfig):
        self.config = config
        self._completed: Dict[int, PrimeRecord] = {}

    async def process_sweep(self) -> SweepReport:
        """Main entry point: plan, execute, synthesize"""
        await self.log_interaction("process_sweep", {
            "lo": self.config.lo,
            "hi": self.config.hi,
            "methods": [m.value for m in self.config.methods],
            "workers": self.config.workers,
        })

        primes = self._plan_sweep()
        try:
            await self._execute_sweep(primes)
        except (KeyboardInterrupt, asyncio.CancelledError):
            raise SweepInterrupted(self._synthesize_report())
        return self._synthesize_report()

    def _plan_sweep(self) -> List[int]:
        primes = self.config.admissible_primes()
        logger.info("Sweep over %d admissible primes in [%d, %d]", len(primes), self.config.lo, self.config.hi)
        return primes

    def _job(self, p: int) -> Tuple[Any, ...]:
        return (verify_prime, p, tuple(m.value for m in self.config.methods), self.config.timing)

    def _record(self, record: PrimeRecord) -> bool:
        """Store a finished record; True when the sweep should stop"""
        self._completed[record.p] = record
        if not record.passed:
            logger.warning("p=%d failed verification", record.p)
            return self.config.fail_fast
        return False

    async def _verify(self, loop, pool, p: int) -> bool:
        return self._record(await loop.run_in_executor(pool, *self._job(p)))

    async def _execute_sweep(self, primes: List[int]):
        """Run verify_prime for every prime, inline or across a process pool"""
        if self.config.workers == 1:
            for p in primes:
                fn, *args = self._job(p)
                if self._record(fn(*args)):
                    break
            return

        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=self.config.workers) as pool:
            tasks = [asyncio.ensure_future(self._verify(loop, pool, p)) for p in primes]
            try:
                if not self.config.fail_fast:
                    await asyncio.gather(*tasks)
                    return

                for finished in asyncio.as_completed(tasks):
                    if await finished:
                        logger.info("Fail-fast: stopping with %d primes verified", len(self._completed))
                        break
            finally:
                # queued primes must not start once the sweep stops; only in-flight ones are waited for
                pool.shutdown(wait=False, cancel_futures=True)
                for task in tasks:
                    task.cancel()

    def _synthesize_report(self) -> SweepReport:
        records = [self._completed[p] for p in sorted(self._completed)]
        return SweepReport(records=records)


def run_sweep(config: SweepConfig) -> SweepReport:
    return asyncio.run(SweepOrchestrator(config).process_sweep())
