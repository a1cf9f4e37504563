"""Canonical text documents for every domain object.

Documents are JSON with sorted keys, two-space indent, and a trailing
newline, so identical objects serialize to identical bytes. All big
integers are decimal strings; rationals are "numerator/denominator" in
lowest terms with positive denominator. Parsing is lenient about
non-canonical rationals (plain integers allowed) but strict about
structure, and reports a location with every error.
"""

from __future__ import annotations

import json
import math
import re
import sys
from fractions import Fraction
from typing import Any

from .branching import Certificate, CertifyStatus, CoverageStats, IntervalCover
from .decompose import BoundCheck, Decomposition, Method
from .diophantine import ApproxResult
from .errors import DomainError, InvariantViolation, ParseError
from .lll import ReductionStats
from .model import Instance
from .oracle import InfeasibleCoverageReport

_INT_RE = re.compile(r"-?\d+\Z")
_FRACTION_RE = re.compile(r"(-?\d+)(?:/(\d+))?\Z")


def _unlimited(operation):
    """Run an int/str conversion with the digit-count guard lifted.

    Exact witnesses (for example the cleared-exponent bound values of a
    reduction decomposition) routinely exceed CPython's default 4300
    digit conversion limit; documents must still round-trip them.
    """
    try:
        return operation()
    except ValueError as exc:
        if "int_max_str_digits" not in str(exc):
            raise
        sys.set_int_max_str_digits(0)
        return operation()


def _dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def _object(doc: Any, kind: str) -> dict:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object", "$")
    if doc.get("kind") != kind:
        raise ParseError(f"expected kind '{kind}', got {doc.get('kind')!r}", "$.kind")
    return doc


def _req(doc: dict, key: str, path: str = "$") -> Any:
    if key not in doc:
        raise ParseError(f"missing field '{key}'", path)
    return doc[key]


def format_int(x: int) -> str:
    return _unlimited(lambda: str(x))


def parse_int(value: Any, path: str) -> int:
    if not isinstance(value, str) or not _INT_RE.match(value):
        raise ParseError("expected a decimal integer string", path)
    return _unlimited(lambda: int(value))


def format_fraction(f: Fraction) -> str:
    return _unlimited(lambda: f"{f.numerator}/{f.denominator}")


def parse_fraction(value: Any, path: str) -> Fraction:
    if not isinstance(value, str):
        raise ParseError("expected a rational string", path)
    match = _FRACTION_RE.match(value)
    if not match:
        raise ParseError("expected 'numerator/denominator'", path)
    num = _unlimited(lambda: int(match.group(1)))
    den = _unlimited(lambda: int(match.group(2))) if match.group(2) is not None else 1
    if den == 0:
        raise ParseError("zero denominator", path)
    return Fraction(num, den)


def _parse_int_list(value: Any, path: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise ParseError("expected an array", path)
    return tuple(parse_int(x, f"{path}[{i}]") for i, x in enumerate(value))


def _parse_fraction_list(value: Any, path: str) -> tuple[Fraction, ...]:
    if not isinstance(value, list):
        raise ParseError("expected an array", path)
    return tuple(parse_fraction(x, f"{path}[{i}]") for i, x in enumerate(value))


# -- instance ---------------------------------------------------------------


def serialize_instance(inst: Instance) -> str:
    payload: dict[str, Any] = {
        "kind": "instance",
        "n": inst.n,
        "a": [format_int(x) for x in inst.a],
    }
    if inst.seed is not None:
        payload["seed"] = format_int(inst.seed)
    return _dump(payload)


def parse_instance(text: str, normalize_gcd: bool = False) -> tuple[Instance, int]:
    """Parse an instance document; returns (instance, gcd_divided_out).

    Without ``normalize_gcd`` non-coprime weights are a parse error and
    the returned divisor is always 1.
    """
    doc = _object(_load(text), "instance")
    n = _req(doc, "n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("n must be a positive JSON integer", "$.n")
    weights = _parse_int_list(_req(doc, "a"), "$.a")
    if len(weights) != n:
        raise ParseError(f"expected {n} weights, got {len(weights)}", "$.a")
    if any(x < 1 for x in weights):
        raise ParseError("weights must be >= 1", "$.a")
    seed = parse_int(doc["seed"], "$.seed") if "seed" in doc else None
    divisor = math.gcd(*weights)
    if divisor != 1:
        if not normalize_gcd:
            raise ParseError("weights not coprime", "$.a")
        weights = tuple(x // divisor for x in weights)
    try:
        return Instance(n=n, a=weights, seed=seed), divisor
    except DomainError as exc:
        raise ParseError(str(exc), "$") from None


# -- decomposition ----------------------------------------------------------


def serialize_decomposition(dec: Decomposition) -> str:
    if isinstance(dec.provenance, ApproxResult):
        provenance: dict[str, Any] = {
            "type": "dioph_approx",
            "q": format_int(dec.provenance.q),
            "precision": format_int(dec.provenance.precision),
            "err_inf": format_fraction(dec.provenance.err_inf),
        }
    else:
        provenance = {
            "type": "lattice_reduction",
            "dim": dec.provenance.dim,
            "swaps": dec.provenance.swaps,
            "size_reductions": dec.provenance.size_reductions,
        }
    payload = {
        "kind": "decomposition",
        "method": dec.method.value,
        "v": [format_int(x) for x in dec.v],
        "lambda": format_fraction(dec.scale),
        "r": [format_fraction(x) for x in dec.residual],
        "bounds": [
            {
                "name": b.name,
                "relation": b.relation,
                "holds": b.holds,
                "lhs": format_fraction(b.lhs),
                "rhs": format_fraction(b.rhs),
                "note": b.note,
            }
            for b in dec.bounds
        ],
        "provenance": provenance,
        "warnings": list(dec.warnings),
    }
    return _dump(payload)


def parse_decomposition(text: str) -> Decomposition:
    doc = _object(_load(text), "decomposition")
    method_value = _req(doc, "method")
    try:
        method = Method(method_value)
    except ValueError:
        raise ParseError(f"unknown method {method_value!r}", "$.method") from None
    v = _parse_int_list(_req(doc, "v"), "$.v")
    scale = parse_fraction(_req(doc, "lambda"), "$.lambda")
    residual = _parse_fraction_list(_req(doc, "r"), "$.r")
    bounds = []
    raw_bounds = _req(doc, "bounds")
    if not isinstance(raw_bounds, list):
        raise ParseError("expected an array", "$.bounds")
    for i, raw in enumerate(raw_bounds):
        path = f"$.bounds[{i}]"
        if not isinstance(raw, dict):
            raise ParseError("expected an object", path)
        holds = _req(raw, "holds", path)
        if not isinstance(holds, bool):
            raise ParseError("holds must be a boolean", f"{path}.holds")
        bounds.append(
            BoundCheck(
                name=str(_req(raw, "name", path)),
                holds=holds,
                lhs=parse_fraction(_req(raw, "lhs", path), f"{path}.lhs"),
                rhs=parse_fraction(_req(raw, "rhs", path), f"{path}.rhs"),
                relation=str(_req(raw, "relation", path)),
                note=str(raw.get("note", "")),
            )
        )
    raw_prov = _req(doc, "provenance")
    if not isinstance(raw_prov, dict):
        raise ParseError("expected an object", "$.provenance")
    prov_type = raw_prov.get("type")
    try:
        if prov_type == "dioph_approx":
            provenance: ApproxResult | ReductionStats = ApproxResult(
                q=parse_int(_req(raw_prov, "q", "$.provenance"), "$.provenance.q"),
                v=v,
                precision=parse_int(
                    _req(raw_prov, "precision", "$.provenance"),
                    "$.provenance.precision",
                ),
                err_inf=parse_fraction(
                    _req(raw_prov, "err_inf", "$.provenance"), "$.provenance.err_inf"
                ),
            )
        elif prov_type == "lattice_reduction":
            provenance = ReductionStats(
                dim=int(_req(raw_prov, "dim", "$.provenance")),
                swaps=int(_req(raw_prov, "swaps", "$.provenance")),
                size_reductions=int(_req(raw_prov, "size_reductions", "$.provenance")),
            )
        else:
            raise ParseError(f"unknown provenance type {prov_type!r}", "$.provenance.type")
        warnings = _req(doc, "warnings")
        if not isinstance(warnings, list) or any(
            not isinstance(w, str) for w in warnings
        ):
            raise ParseError("warnings must be an array of strings", "$.warnings")
        return Decomposition(
            v=v,
            scale=scale,
            residual=residual,
            method=method,
            provenance=provenance,
            bounds=tuple(bounds),
            warnings=tuple(warnings),
        )
    except (DomainError, InvariantViolation) as exc:
        raise ParseError(str(exc), "$") from None


# -- certificate ------------------------------------------------------------


def serialize_certificate(cert: Certificate, v: tuple[int, ...]) -> str:
    payload = {
        "kind": "certificate",
        "beta": format_int(cert.beta),
        "ell": format_int(cert.level),
        "vmin": format_fraction(cert.vmin),
        "vmax": format_fraction(cert.vmax),
        "arg_min": [format_fraction(x) for x in cert.arg_min],
        "arg_max": [format_fraction(x) for x in cert.arg_max],
        "v": [format_int(x) for x in v],
    }
    return _dump(payload)


def parse_certificate(text: str) -> tuple[Certificate, tuple[int, ...]]:
    doc = _object(_load(text), "certificate")
    try:
        cert = Certificate(
            beta=parse_int(_req(doc, "beta"), "$.beta"),
            level=parse_int(_req(doc, "ell"), "$.ell"),
            vmin=parse_fraction(_req(doc, "vmin"), "$.vmin"),
            vmax=parse_fraction(_req(doc, "vmax"), "$.vmax"),
            arg_min=_parse_fraction_list(_req(doc, "arg_min"), "$.arg_min"),
            arg_max=_parse_fraction_list(_req(doc, "arg_max"), "$.arg_max"),
        )
    except DomainError as exc:
        raise ParseError(str(exc), "$") from None
    return cert, _parse_int_list(_req(doc, "v"), "$.v")


def serialize_certify_status(status: CertifyStatus, beta: int) -> str:
    return _dump(
        {"kind": "certify_status", "status": status.value, "beta": format_int(beta)}
    )


def parse_certify_status(text: str) -> tuple[CertifyStatus, int]:
    doc = _object(_load(text), "certify_status")
    try:
        status = CertifyStatus(_req(doc, "status"))
    except ValueError:
        raise ParseError("unknown status", "$.status") from None
    return status, parse_int(_req(doc, "beta"), "$.beta")


# -- interval cover ---------------------------------------------------------


def _format_interval(pair: tuple[Fraction, Fraction]) -> list[str]:
    return [format_fraction(pair[0]), format_fraction(pair[1])]


def _parse_interval(value: Any, path: str) -> tuple[Fraction, Fraction]:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError("expected a [lo, hi] pair", path)
    return parse_fraction(value[0], f"{path}[0]"), parse_fraction(value[1], f"{path}[1]")


def serialize_interval_cover(cover: IntervalCover) -> str:
    payload = {
        "kind": "interval_cover",
        "k_lo": format_int(cover.k_lo),
        "k_hi": format_int(cover.k_hi),
        "bad": [_format_interval(p) for p in cover.bad],
        "good": [_format_interval(p) for p in cover.good],
        "min_good_length": None
        if cover.min_good_length is None
        else format_fraction(cover.min_good_length),
        "good_length_bound": format_fraction(cover.good_length_bound),
        "good_length_bound_holds": cover.good_length_bound_holds,
    }
    return _dump(payload)


def parse_interval_cover(text: str) -> IntervalCover:
    doc = _object(_load(text), "interval_cover")
    raw_bad = _req(doc, "bad")
    raw_good = _req(doc, "good")
    if not isinstance(raw_bad, list):
        raise ParseError("expected an array", "$.bad")
    if not isinstance(raw_good, list):
        raise ParseError("expected an array", "$.good")
    raw_min = _req(doc, "min_good_length")
    holds = _req(doc, "good_length_bound_holds")
    if not isinstance(holds, bool):
        raise ParseError("expected a boolean", "$.good_length_bound_holds")
    return IntervalCover(
        k_lo=parse_int(_req(doc, "k_lo"), "$.k_lo"),
        k_hi=parse_int(_req(doc, "k_hi"), "$.k_hi"),
        bad=tuple(_parse_interval(p, f"$.bad[{i}]") for i, p in enumerate(raw_bad)),
        good=tuple(_parse_interval(p, f"$.good[{i}]") for i, p in enumerate(raw_good)),
        min_good_length=None
        if raw_min is None
        else parse_fraction(raw_min, "$.min_good_length"),
        good_length_bound=parse_fraction(
            _req(doc, "good_length_bound"), "$.good_length_bound"
        ),
        good_length_bound_holds=holds,
    )


# -- coverage statistics ----------------------------------------------------


def serialize_coverage_stats(stats: CoverageStats) -> str:
    payload: dict[str, Any] = {
        "kind": "coverage_stats",
        "mode": stats.mode,
        "g": format_int(stats.g),
        "b": format_int(stats.b),
        "bad_fraction": format_fraction(stats.bad_fraction),
        "bad_fraction_bound": format_fraction(stats.bad_fraction_bound),
        "two_pow_n_bound": format_fraction(stats.two_pow_n_bound),
    }
    if stats.sample_size is not None:
        payload["sample_size"] = stats.sample_size
    if stats.seed is not None:
        payload["seed"] = format_int(stats.seed)
    return _dump(payload)


def parse_coverage_stats(text: str) -> CoverageStats:
    doc = _object(_load(text), "coverage_stats")
    mode = _req(doc, "mode")
    if mode not in ("exact", "sampled"):
        raise ParseError("mode must be 'exact' or 'sampled'", "$.mode")
    sample_size = doc.get("sample_size")
    if sample_size is not None and (
        not isinstance(sample_size, int) or isinstance(sample_size, bool)
    ):
        raise ParseError("sample_size must be a JSON integer", "$.sample_size")
    return CoverageStats(
        mode=mode,
        g=parse_int(_req(doc, "g"), "$.g"),
        b=parse_int(_req(doc, "b"), "$.b"),
        bad_fraction=parse_fraction(_req(doc, "bad_fraction"), "$.bad_fraction"),
        bad_fraction_bound=parse_fraction(
            _req(doc, "bad_fraction_bound"), "$.bad_fraction_bound"
        ),
        two_pow_n_bound=parse_fraction(
            _req(doc, "two_pow_n_bound"), "$.two_pow_n_bound"
        ),
        sample_size=sample_size,
        seed=parse_int(doc["seed"], "$.seed") if "seed" in doc else None,
    )


# -- infeasible coverage report ---------------------------------------------


def serialize_infeasible_coverage(report: InfeasibleCoverageReport) -> str:
    payload: dict[str, Any] = {
        "kind": "infeasible_coverage",
        "mode": report.mode,
        "infeasible": format_int(report.infeasible_count),
        "certified_infeasible": format_int(report.certified_infeasible_count),
        "fraction": format_fraction(report.fraction),
        "bound": format_fraction(report.bound),
    }
    if report.sample_size is not None:
        payload["sample_size"] = report.sample_size
    if report.seed is not None:
        payload["seed"] = format_int(report.seed)
    return _dump(payload)


def parse_infeasible_coverage(text: str) -> InfeasibleCoverageReport:
    doc = _object(_load(text), "infeasible_coverage")
    mode = _req(doc, "mode")
    if mode not in ("exact", "sampled"):
        raise ParseError("mode must be 'exact' or 'sampled'", "$.mode")
    sample_size = doc.get("sample_size")
    if sample_size is not None and (
        not isinstance(sample_size, int) or isinstance(sample_size, bool)
    ):
        raise ParseError("sample_size must be a JSON integer", "$.sample_size")
    try:
        return InfeasibleCoverageReport(
            mode=mode,
            infeasible_count=parse_int(_req(doc, "infeasible"), "$.infeasible"),
            certified_infeasible_count=parse_int(
                _req(doc, "certified_infeasible"), "$.certified_infeasible"
            ),
            fraction=parse_fraction(_req(doc, "fraction"), "$.fraction"),
            bound=parse_fraction(_req(doc, "bound"), "$.bound"),
            sample_size=sample_size,
            seed=parse_int(doc["seed"], "$.seed") if "seed" in doc else None,
        )
    except DomainError as exc:
        raise ParseError(str(exc), "$") from None


def document_kind(text: str) -> str:
    doc = _load(text)
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError("document must be a JSON object with a 'kind'", "$")
    return str(doc["kind"])
