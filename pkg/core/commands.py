# core/commands.py
"""
Dispatch for build-code, weight-dist and verify over validated parameter sets.
Results come back as pydantic documents; printing and exit codes belong to the CLI.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Literal, Optional

import galois
from pydantic import BaseModel, Field, model_validator

from core import cyclic_codes as codes
from core import weight_tools
from core.cyclotomy import MAX_COSETS
from core.errors import ParameterError, VerificationFailure
from core.field_tower import prime_power
from core.poly_ring import coefficients
from core.schemas import CodeDescriptor, VerifyReport, WeightDistributionModel
from core.suites import SUITES, ParamSet, SuiteContext

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

COMMANDS = ("build-code", "weight-dist", "verify")


class RunConfig(BaseModel):
    """Everything one invocation needs; validated before dispatch"""
    command: Literal["build-code", "weight-dist", "verify"]
    target: Optional[str] = None
    p: Optional[int] = None
    m: Optional[int] = Field(default=None, ge=1)
    delta: Optional[int] = None
    h: int = Field(default=1, ge=1)
    w: Optional[int] = Field(default=None, ge=1)
    u0: Optional[int] = None
    side: Literal["primary", "dual"] = "primary"
    method: Optional[Literal["exhaustive", "trace", "macwilliams"]] = None
    output_format: Literal["json", "text"] = "json"
    threads: int = Field(default=1, ge=1)
    seed: int = 0
    samples: int = Field(default=100, ge=1)
    max_messages: int = Field(default=weight_tools.MAX_MESSAGES, ge=1)
    max_trace_params: int = Field(default=weight_tools.MAX_TRACE_PARAMS, ge=1)
    max_supports: int = Field(default=weight_tools.MAX_SUPPORTS, ge=1)
    max_cosets: int = Field(default=MAX_COSETS, ge=1)
    progress: bool = False

    @model_validator(mode="after")
    def _check_parameters(self) -> "RunConfig":
        if self.p is not None and not galois.is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.delta is not None:
            if self.p is None:
                raise ValueError("--delta needs --p")
            if self.delta < 2:
                raise ValueError("δ must be at least 2")
            base, _ = prime_power(self.delta)
            if base != self.p:
                raise ValueError(f"δ={self.delta} is not a power of p={self.p}")
            if self.m is not None and self.m < 2:
                raise ParameterError(f"m={self.m}: codes with δ need q = δ^m with m ≥ 2")
        if (self.p is None) != (self.m is None):
            raise ValueError("--p and --m go together")
        return self

    @property
    def q(self) -> Optional[int]:
        if self.p is None:
            return None
        return ((self.delta or self.p) ** self.m)

    def parameter_sets(self) -> List[ParamSet]:
        """The single set given on the command line, or [] to fall back on presets"""
        if self.p is None:
            return []
        return [ParamSet(p=self.p, m=self.m, delta=self.delta, h=self.h)]

    def suite_context(self) -> SuiteContext:
        return SuiteContext(
            threads=self.threads,
            seed=self.seed,
            samples=self.samples,
            u0=self.u0,
            w=self.w,
            max_messages=self.max_messages,
            max_trace_params=self.max_trace_params,
            max_supports=self.max_supports,
            max_cosets=self.max_cosets,
            progress=self.progress,
        )


@dataclass
class CommandResult:
    """Result of processing a command"""
    exit_code: int
    documents: List[BaseModel] = field(default_factory=list)


# ---------- build-code ----------

def describe_code(params: ParamSet, side: str = "primary") -> CodeDescriptor:
    delta = _require_delta(params)
    C = codes.antiprimitive_bch(params.q, delta)
    if side == "dual":
        C = codes.dual(C)
    return CodeDescriptor(
        q=C.q,
        n=C.n,
        delta=delta,
        h=1,
        dimension=C.dimension,
        generator=coefficients(C.generator),
        defining_set=sorted(C.defining_set),
    )


# ---------- weight-dist ----------

def _trace_fits(q: int, delta: int, config: RunConfig) -> bool:
    return (q * q) ** (delta - 1) <= config.max_trace_params


def weight_distribution(params: ParamSet, config: RunConfig) -> WeightDistributionModel:
    delta = _require_delta(params)
    q, n = params.q, params.q + 1
    C = codes.antiprimitive_bch(q, delta)
    side = config.side
    method = config.method or ("trace" if side == "dual" else "exhaustive")
    threads, progress = config.threads, config.progress

    def primary_exhaustive():
        return weight_tools.weight_distribution_exhaustive(C, config.max_messages, threads, progress)

    def dual_trace():
        return weight_tools.weight_distribution_trace(q, delta, config.max_trace_params, threads, progress)

    if side == "dual":
        if method == "trace":
            dist = dual_trace()
        elif method == "exhaustive":
            dist = weight_tools.weight_distribution_exhaustive(
                codes.dual(C), config.max_messages, threads, progress)
        else:
            dist = weight_tools.macwilliams(primary_exhaustive(), n, C.dimension, q)
    else:
        if method == "trace":
            raise ParameterError("the trace method enumerates the dual code; use --side dual")
        if method == "macwilliams":
            dist = weight_tools.macwilliams(dual_trace(), n, 2 * delta - 2, q)
        else:
            dist = primary_exhaustive()
            if _trace_fits(q, delta, config):
                transformed = weight_tools.macwilliams(dual_trace(), n, 2 * delta - 2, q)
                if transformed != dist:
                    raise VerificationFailure("MacWilliams transform of the dual disagrees with enumeration")
                logger.info("primary distribution agrees with MacWilliams of the dual")

    return WeightDistributionModel(q=q, n=n, delta=delta, side=side, method=method, counts=dist.to_json())


# ---------- verify ----------

def run_suite(suite_id: str, params: ParamSet, ctx: SuiteContext) -> VerifyReport:
    if suite_id not in SUITES:
        raise ParameterError(f"unknown verification id {suite_id!r}; choose from {', '.join(SUITES)}")
    logger.info("verify %s at %s", suite_id, params.as_dict())
    checks = SUITES[suite_id](params, ctx)
    report = VerifyReport(suite=suite_id, parameters=params.as_dict(), checks=checks)
    logger.info("verify %s: %d/%d checks passed", suite_id, sum(c.passed for c in checks), len(checks))
    return report


def _require_delta(params: ParamSet) -> int:
    if params.delta is None:
        raise ParameterError("this command needs --delta")
    if params.m < 2:
        raise ParameterError(f"m={params.m}: codes with δ need q = δ^m with m ≥ 2")
    return params.delta


def handle_command(config: RunConfig, parameter_sets: Optional[List[ParamSet]] = None) -> CommandResult:
    """
    Run one command over each parameter set.
    Pure function - raises ParameterError / GuardExceeded, never exits.
    """
    if config.command == "verify" and config.target not in SUITES:
        raise ParameterError(f"unknown verification id {config.target!r}; choose from {', '.join(SUITES)}")
    sets = parameter_sets if parameter_sets is not None else config.parameter_sets()
    if not sets:
        raise ParameterError(f"no parameters for {config.command}; pass --p and --m")

    if config.command == "build-code":
        return CommandResult(EXIT_OK, [describe_code(params, config.side) for params in sets])

    if config.command == "weight-dist":
        return CommandResult(EXIT_OK, [weight_distribution(params, config) for params in sets])

    ctx = config.suite_context()
    reports = [run_suite(config.target, params, ctx) for params in sets]
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED
    return CommandResult(code, reports)

