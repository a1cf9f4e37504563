"""Command-line pipeline: generate, decompose, certify, verify, report.

Exit codes: 0 success or verified, 1 verification rejected or no
certificate, 2 usage error, 3 capacity error. Documents go to stdout
(or --output); identical configurations produce byte-identical
documents. Diagnostics are single lines on stderr.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import documents
from .branching import (
    DEFAULT_ENUMERATION_CAP,
    CertifyStatus,
    certify,
    coverage_stats,
    enumerate_intervals,
    verify_certificate,
)
from .decompose import Method, decompose_with_fallback
from .errors import (
    CapacityError,
    DomainError,
    Error,
    ParseError,
)
from .model import Instance, generate_instance
from .oracle import infeasible_coverage_report

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3

_DECIMAL_RE = re.compile(r"-?\d+\Z")


@dataclass
class RunConfig:
    command: str
    output: str | None = None
    instance: str | None = None
    decomposition: str | None = None
    certificate: str | None = None
    n: int | None = None
    seed: str | None = None
    beta: str | None = None
    method: str = Method.FRANK_TARDOS.value
    mode: str = "exact"
    sample_size: int = 10**4
    k_lo: str | None = None
    k_hi: str | None = None
    cap: int = DEFAULT_ENUMERATION_CAP
    workers: int = 1
    normalize_gcd: bool = False


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _diag(message: str) -> None:
    print(f"sscert: {message}", file=sys.stderr)


def _decimal(value: str, what: str) -> int:
    if not _DECIMAL_RE.match(value or ""):
        raise DomainError(f"{what} must be a decimal integer string")
    return int(value)


def _load_instance(config: RunConfig) -> tuple[Instance, int]:
    if not config.instance:
        raise DomainError("an --instance document is required")
    return documents.parse_instance(
        _read(config.instance), normalize_gcd=config.normalize_gcd
    )


def _load_decomposition(config: RunConfig, inst: Instance):
    if not config.decomposition:
        raise DomainError("a --decomposition document is required")
    dec = documents.parse_decomposition(_read(config.decomposition))
    if dec.reconstruct_a() != tuple(inst.a):
        raise DomainError("decomposition does not match the instance weights")
    return dec


def _cmd_generate(config: RunConfig) -> int:
    if config.n is None or config.seed is None:
        raise DomainError("generate needs --n and --seed")
    inst = generate_instance(config.n, _decimal(config.seed, "seed"))
    _emit(documents.serialize_instance(inst), config.output)
    return EXIT_OK


def _cmd_decompose(config: RunConfig) -> int:
    inst, _ = _load_instance(config)
    try:
        method = Method(config.method)
    except ValueError:
        raise DomainError(f"unknown method {config.method!r}") from None
    dec = decompose_with_fallback(inst, method)
    _emit(documents.serialize_decomposition(dec), config.output)
    return EXIT_OK


def _cmd_certify(config: RunConfig) -> int:
    if config.beta is None:
        raise DomainError("certify needs --beta")
    beta = _decimal(config.beta, "beta")
    inst, divisor = _load_instance(config)
    if divisor != 1:
        if beta % divisor != 0:
            _emit(
                documents.serialize_certify_status(
                    CertifyStatus.TRIVIALLY_INFEASIBLE_GCD, beta
                ),
                config.output,
            )
            return EXIT_OK
        beta //= divisor
    dec = _load_decomposition(config, inst)
    if not dec.nonnegative():
        raise DomainError("decomposition direction has negative components")
    result = certify(inst.a, dec.v, beta)
    if result.status is CertifyStatus.CERTIFIED:
        _emit(
            documents.serialize_certificate(result.certificate, dec.v), config.output
        )
        return EXIT_OK
    _emit(documents.serialize_certify_status(result.status, beta), config.output)
    if result.status is CertifyStatus.NO_CERTIFICATE:
        return EXIT_REJECTED
    return EXIT_OK


def _cmd_verify(config: RunConfig) -> int:
    inst, _ = _load_instance(config)
    if not config.certificate:
        raise DomainError("verify needs a --certificate document")
    try:
        cert, v = documents.parse_certificate(_read(config.certificate))
    except ParseError as exc:
        _diag(f"certificate rejected: {exc}")
        return EXIT_REJECTED
    if verify_certificate(inst.a, v, cert):
        _diag("verified")
        return EXIT_OK
    _diag("rejected")
    return EXIT_REJECTED


def _cmd_intervals(config: RunConfig) -> int:
    inst, _ = _load_instance(config)
    dec = _load_decomposition(config, inst)
    k_lo = _decimal(config.k_lo, "k_lo") if config.k_lo is not None else 0
    k_hi = _decimal(config.k_hi, "k_hi") if config.k_hi is not None else None
    cover = enumerate_intervals(
        inst.a, dec.v, dec.scale, dec.residual, k_lo=k_lo, k_hi=k_hi, cap=config.cap
    )
    _emit(documents.serialize_interval_cover(cover), config.output)
    return EXIT_OK


def _cmd_stats(config: RunConfig) -> int:
    inst, _ = _load_instance(config)
    dec = _load_decomposition(config, inst)
    seed = _decimal(config.seed, "seed") if config.seed is not None else None
    stats = coverage_stats(
        inst.a,
        dec.v,
        dec.scale,
        dec.residual,
        mode=config.mode,
        sample_size=config.sample_size,
        seed=seed,
        cap=config.cap,
        workers=config.workers,
    )
    _emit(documents.serialize_coverage_stats(stats), config.output)
    return EXIT_OK


def _cmd_cor1(config: RunConfig) -> int:
    inst, _ = _load_instance(config)
    dec = _load_decomposition(config, inst)
    seed = _decimal(config.seed, "seed") if config.seed is not None else None
    report = infeasible_coverage_report(
        inst.a,
        dec.v,
        mode=config.mode,
        sample_size=config.sample_size,
        seed=seed,
    )
    _emit(documents.serialize_infeasible_coverage(report), config.output)
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "decompose": _cmd_decompose,
    "certify": _cmd_certify,
    "verify": _cmd_verify,
    "intervals": _cmd_intervals,
    "stats": _cmd_stats,
    "cor1": _cmd_cor1,
}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    handler = _COMMANDS.get(config.command)
    if handler is None:
        _diag(f"unknown command {config.command!r}")
        return EXIT_USAGE
    try:
        return handler(config)
    except CapacityError as exc:
        _diag(str(exc))
        return EXIT_CAPACITY
    except (Error, OSError) as exc:
        _diag(str(exc))
        return EXIT_USAGE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sscert",
        description="infeasibility certificates for low density subset sum",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    def add_instance(p):
        p.add_argument("--instance", required=True, help="instance document path or -")
        p.add_argument(
            "--normalize-gcd",
            action="store_true",
            help="divide non-coprime weights by their gcd instead of rejecting",
        )

    p = sub.add_parser("generate", help="generate a low density instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", required=True, help="64-bit seed, decimal string")
    add_common(p)

    p = sub.add_parser("decompose", help="compute the branching direction")
    add_instance(p)
    p.add_argument(
        "--method",
        choices=[m.value for m in Method],
        default=Method.FRANK_TARDOS.value,
    )
    add_common(p)

    p = sub.add_parser("certify", help="certify one right-hand side")
    add_instance(p)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--beta", required=True, help="right-hand side, decimal string")
    add_common(p)

    p = sub.add_parser("verify", help="verify a certificate document")
    add_instance(p)
    p.add_argument("--certificate", required=True)
    add_common(p)

    p = sub.add_parser("intervals", help="enumerate bad/good intervals")
    add_instance(p)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--k-lo", dest="k_lo", default=None, help="decimal string")
    p.add_argument("--k-hi", dest="k_hi", default=None, help="decimal string")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    add_common(p)

    p = sub.add_parser("stats", help="coverage statistics over right-hand sides")
    add_instance(p)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    p.add_argument("--sample-size", dest="sample_size", type=int, default=10**4)
    p.add_argument("--seed", default=None, help="required for sampled mode")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    p.add_argument("--workers", type=int, default=1)
    add_common(p)

    p = sub.add_parser("cor1", help="certified share of infeasible right-hand sides")
    add_instance(p)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    p.add_argument("--sample-size", dest="sample_size", type=int, default=10**4)
    p.add_argument("--seed", default=None, help="required for sampled mode")
    add_common(p)

    return parser


def parse_args(argv=None) -> RunConfig:
    namespace = _build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(namespace).items() if v is not None}
    return RunConfig(**fields)


def main(argv=None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
