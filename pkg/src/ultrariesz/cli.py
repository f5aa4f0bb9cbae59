"""Command-line front end: deterministic CSV/JSON reports for every
verifiable quantity in the library.

Subcommands
-----------
coeffs          exact derivative-expansion coefficient tables
faa-check       expansion vs jet-oracle residuals on random points
kernel          kernel sweep with region labels and envelope ratios
poisson         spectral vs kernel Poisson consistency
h-limit         circle-kernel limit constants
riesz-spectral  spectral-route transform values
riesz-pv        truncated/extrapolated principal-value route
compare         both routes plus the identity error
variation       oscillation/variation convergence report

Reports are byte-identical for identical configuration: fixed enumeration
orders, 17 significant digits, and no wall-clock content.  Exit status is 0
when every asserted tolerance holds, 1 on a tolerance failure, 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import faa_di_bruno
from .kernels import (
    circle_H,
    envelope_residual,
    h_limit_even,
    m_k_estimate,
    region_classify,
    riesz_kernel,
)
from .quadrature import build_rule
from .transforms import (
    SpectralCoefficients,
    TruncationSchedule,
    band_limited,
    poisson_spectral,
    poisson_via_kernel,
    riesz_pv,
    riesz_spectral,
)
from .variation import DyadicBands, convergence_report

__all__ = ["RunConfig", "main"]

#: %.16e prints 17 significant digits
_FMT = "%.16e"

_EXIT_OK = 0
_EXIT_TOLERANCE = 1
_EXIT_CONFIG = 2


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated run parameters; every CLI flag has a config-file twin."""

    lam: float = 1.0
    k: int = 1
    n_max: int = 16
    quad_order: int = 64
    eps_start: float = 0.05
    eps_ratio: float = 0.5
    eps_count: int = 9
    rho: float = 3.0
    thetas: list[float] = field(default_factory=lambda: [0.7, math.pi / 2, 2.2])
    tolerance: float = 1e-3
    ell: int = 2
    output: str = ""

    def validate(self) -> "RunConfig":
        checks = [
            (self.lam > 0.0, "lambda", "must be positive"),
            (self.k >= 1, "k", "must be a positive integer"),
            (self.n_max >= 1, "n-max", "must be at least 1"),
            (self.quad_order >= 2, "quad-order", "must be at least 2"),
            (0.0 < self.eps_start < math.pi, "eps-start", "must lie in (0, pi)"),
            (0.0 < self.eps_ratio < 1.0, "eps-ratio", "must lie in (0, 1)"),
            (self.eps_count >= 3, "eps-count", "needs at least 3 radii for extrapolation"),
            (self.rho >= 1.0, "rho", "must be at least 1"),
            (len(self.thetas) > 0, "theta", "need at least one evaluation point"),
            (all(0.0 < t < math.pi for t in self.thetas), "theta", "must lie in (0, pi)"),
            (self.tolerance > 0.0, "tolerance", "must be positive"),
            (1 <= self.ell <= faa_di_bruno.MAX_ORDER, "ell", f"must lie in [1, {faa_di_bruno.MAX_ORDER}]"),
        ]
        for ok, name, message in checks:
            if not ok:
                raise ConfigError(f"field '{name}': {message}")
        return self

    def schedule(self) -> TruncationSchedule:
        return TruncationSchedule.geometric(self.eps_start, self.eps_ratio, self.eps_count)


_CONFIG_KEYS = {
    "lambda": ("lam", float),
    "k": ("k", int),
    "n-max": ("n_max", int),
    "quad-order": ("quad_order", int),
    "eps-start": ("eps_start", float),
    "eps-ratio": ("eps_ratio", float),
    "eps-count": ("eps_count", int),
    "rho": ("rho", float),
    "theta": ("thetas", None),
    "tolerance": ("tolerance", float),
    "ell": ("ell", int),
    "output": ("output", str),
}


def load_config_file(path: str) -> dict:
    """Parse a `key = value` file with # comments into config field values."""
    values: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        attr, cast = _CONFIG_KEYS[key]
        try:
            if key == "theta":
                values[attr] = [float(tok) for tok in value.replace(",", " ").split()]
            else:
                values[attr] = cast(value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: field '{key}': {exc}") from exc
    return values


def _default_family(lam: float) -> dict[str, SpectralCoefficients]:
    """The standard band-limited test functions."""
    return {
        "e0": SpectralCoefficients(lam, [1.0]),
        "e1": SpectralCoefficients(lam, [0.0, 1.0]),
        "e2+0.5e4": SpectralCoefficients(lam, [0.0, 0.0, 1.0, 0.0, 0.5]),
    }


def _write_csv(path: str | None, header: list[str], rows: list[list]) -> None:
    stream = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_FMT % v if isinstance(v, float) else v for v in row])
    finally:
        if path:
            stream.close()


def _write_json(path: str | None, payload) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _thread_count() -> int:
    raw = os.environ.get("ULTRA_RIESZ_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_items(fn, items):
    workers = _thread_count()
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_coeffs(config: RunConfig) -> int:
    table = faa_di_bruno.coefficients(config.ell)
    rows = [
        [table.ell, s, i, j, str(coeff)]
        for (s, i, j), coeff in sorted(table.entries.items())
    ]
    _write_csv(config.output or None, ["ell", "s", "i", "j", "coefficient"], rows)
    return _EXIT_OK


def cmd_faa_check(config: RunConfig) -> int:
    points = faa_di_bruno.sample_points(50)
    rows = []
    worst = 0.0
    for index, point in enumerate(points):
        oracle = faa_di_bruno.jet_oracle(config.ell, config.lam, point)
        corrected = faa_di_bruno.expansion_eval(config.ell, config.lam, point, "pochhammer-corrected")
        printed = faa_di_bruno.expansion_eval(config.ell, config.lam, point, "as-printed")
        rel = abs(corrected - oracle) / max(abs(oracle), 1e-300)
        worst = max(worst, rel)
        rows.append(
            [index, point.theta, point.phi, point.r, point.t, oracle, corrected, printed, rel]
        )
    _write_csv(
        config.output or None,
        ["index", "theta", "phi", "r", "t", "jet_oracle", "corrected", "as_printed", "rel_residual"],
        rows,
    )
    if worst > 1e-10:
        print(f"FAIL: corrected expansion deviates from the jet oracle by {worst:.3e}", file=sys.stderr)
        return _EXIT_TOLERANCE
    return _EXIT_OK


def cmd_kernel(config: RunConfig) -> int:
    grid = np.linspace(0.15, math.pi - 0.15, 20)

    def row(pair):
        theta, phi = pair
        region = region_classify(theta, phi)
        value = riesz_kernel(config.lam, config.k, theta, phi)
        ratio = envelope_residual(config.lam, config.k, theta, phi)
        return [theta, phi, region, value, ratio]

    pairs = [
        (float(theta), float(phi))
        for theta in grid
        for phi in grid
        if abs(theta - phi) > 1e-3
    ]
    rows = _map_items(row, pairs)
    _write_csv(config.output or None, ["theta", "phi", "region", "value", "envelope_ratio"], rows)
    finite = all(math.isfinite(r[3]) and math.isfinite(r[4]) for r in rows)
    return _EXIT_OK if finite else _EXIT_TOLERANCE


def cmd_poisson(config: RunConfig) -> int:
    rule = build_rule(config.lam, config.quad_order)
    family = _default_family(config.lam)
    rows = []
    worst = 0.0
    for name, coeffs in sorted(family.items()):
        f = band_limited(coeffs)
        for t in (0.1, 1.0):
            for theta in config.thetas:
                spectral = poisson_spectral(coeffs, t, theta)
                kernel = poisson_via_kernel(f, config.lam, t, theta, rule)
                err = abs(spectral - kernel)
                worst = max(worst, err)
                rows.append([name, t, theta, spectral, kernel, err])
    _write_csv(
        config.output or None,
        ["f", "t", "theta", "spectral", "kernel", "abs_error"],
        rows,
    )
    if worst > 1e-6:
        print(f"FAIL: Poisson two-sided identity error {worst:.3e} > 1e-6", file=sys.stderr)
        return _EXIT_TOLERANCE
    return _EXIT_OK


def cmd_h_limit(config: RunConfig) -> int:
    rows = []
    failed = False
    for k in range(1, config.k + 1):
        if k % 2 == 0:
            limit = h_limit_even(k)
            numeric = circle_H(k, 1e-3)
            residual = abs(numeric - limit) / abs(limit)
            ok = residual < 1e-2
            rows.append([k, limit, numeric, residual, "pass" if ok else "fail"])
        else:
            big = abs(1e-2 * circle_H(k, 1e-2))
            small = abs(1e-3 * circle_H(k, 1e-3))
            ok = small * 5.0 <= big
            rows.append([k, 0.0, small, big / max(small, 1e-300), "pass" if ok else "fail"])
        failed = failed or not ok
    _write_csv(
        config.output or None,
        ["k", "even_limit", "numeric", "residual_or_decay", "status"],
        rows,
    )
    return _EXIT_TOLERANCE if failed else _EXIT_OK


def _pv_records(config: RunConfig, *, spectral_side: bool, pv_side: bool) -> tuple[list[dict], float]:
    rule = build_rule(config.lam, config.quad_order)
    schedule = config.schedule()
    family = _default_family(config.lam)
    records = []
    worst = 0.0
    for name, coeffs in sorted(family.items()):
        f = band_limited(coeffs)
        n_max = max(config.n_max, coeffs.degree)
        for theta in config.thetas:
            record: dict = {
                "f": name,
                "lambda": config.lam,
                "k": config.k,
                "theta": theta,
                "epsilons": [],
                "truncated": [],
                "extrapolated": None,
                "gamma_term": None,
                "spectral": None,
                "abs_error": None,
            }
            if spectral_side:
                record["spectral"] = riesz_spectral(f, config.lam, config.k, theta, n_max, rule)
            if pv_side:
                result = riesz_pv(f, config.lam, config.k, theta, schedule, tolerance=config.tolerance)
                record["epsilons"] = list(result.epsilons)
                record["truncated"] = list(result.truncated)
                record["extrapolated"] = result.extrapolated
                record["gamma_term"] = result.gamma_term
                if spectral_side:
                    record["abs_error"] = abs(
                        result.value - record["spectral"]
                    )
                    worst = max(
                        worst,
                        record["abs_error"] / (1.0 + abs(record["spectral"])),
                    )
            records.append(record)
    return records, worst


def cmd_riesz_spectral(config: RunConfig) -> int:
    records, _ = _pv_records(config, spectral_side=True, pv_side=False)
    _write_json(config.output or None, {"records": records})
    return _EXIT_OK


def cmd_riesz_pv(config: RunConfig) -> int:
    records, _ = _pv_records(config, spectral_side=False, pv_side=True)
    _write_json(config.output or None, {"records": records})
    return _EXIT_OK


def cmd_compare(config: RunConfig) -> int:
    records, worst = _pv_records(config, spectral_side=True, pv_side=True)
    payload = {"records": records, "max_relative_error": worst, "tolerance": config.tolerance}
    _write_json(config.output or None, payload)
    if worst > config.tolerance:
        failing = max(records, key=lambda r: r["abs_error"] or 0.0)
        print(
            f"FAIL: identity error {worst:.3e} > {config.tolerance:g} "
            f"(f={failing['f']}, theta={failing['theta']})",
            file=sys.stderr,
        )
        return _EXIT_TOLERANCE
    return _EXIT_OK


def _global_summary(config: RunConfig, max_abs_error: float) -> dict:
    """Constants the report is judged against: diagonal constant, circle
    limit behavior and fitted envelope constants for the configured order."""
    k = config.k
    if k % 2 == 0:
        limit = h_limit_even(k)
        h_residual = abs(circle_H(k, 1e-3) - limit) / abs(limit)
        h_entry = {"even_limit": limit, "relative_residual": h_residual}
    else:
        h_entry = {
            "w_h_decay": abs(1e-2 * circle_H(k, 1e-2)) / abs(1e-3 * circle_H(k, 1e-3))
        }
    envelope = {"A1": 0.0, "A2": 0.0, "A3": 0.0}
    for theta in np.linspace(0.3, math.pi - 0.3, 6):
        for phi in np.linspace(0.3, math.pi - 0.3, 6):
            if abs(theta - phi) < 5e-2:
                continue
            region = region_classify(float(theta), float(phi))
            ratio = envelope_residual(config.lam, k, float(theta), float(phi))
            envelope[region] = max(envelope[region], ratio)
    return {
        "max_abs_error": max_abs_error,
        "m_k": m_k_estimate(config.lam, k),
        "circle_limit": h_entry,
        "envelope_constants": envelope,
    }


def cmd_variation(config: RunConfig) -> int:
    rule = build_rule(config.lam, config.quad_order)
    schedule = config.schedule()
    bands = DyadicBands.dyadic()
    coeffs = _default_family(config.lam)["e2+0.5e4"]
    report = convergence_report(
        coeffs,
        config.lam,
        config.k,
        config.thetas,
        schedule,
        bands,
        config.rho,
        rule,
        n_max=config.n_max,
    )
    base = config.output or "variation"
    csv_rows = [
        [record.theta, eps, value]
        for record in report.records
        for eps, value in zip(record.trace.epsilons, record.trace.values)
    ]
    _write_csv(f"{base}.csv" if config.output else None, ["theta", "epsilon", "truncated_value"], csv_rows)
    summary = {
        "config": {f.name: getattr(config, f.name) for f in fields(RunConfig)},
        "lambda": report.lam,
        "k": report.k,
        "rho": report.rho,
        "band_edges": list(report.band_edges),
        "per_theta": [
            {
                "theta": r.theta,
                "oscillation": r.oscillation,
                "variation": r.variation,
                "maximal": r.maximal,
                "pv": r.pv,
                "spectral": r.spectral,
                "error": r.abs_error,
            }
            for r in report.records
        ],
        "norms": report.norms,
        "summary": _global_summary(config, report.max_abs_error()),
    }
    _write_json(f"{base}.json" if config.output else None, summary)
    if report.max_abs_error() > config.tolerance * 10.0:
        print(f"FAIL: PV-vs-spectral error {report.max_abs_error():.3e}", file=sys.stderr)
        return _EXIT_TOLERANCE
    return _EXIT_OK


_COMMANDS = {
    "coeffs": cmd_coeffs,
    "faa-check": cmd_faa_check,
    "kernel": cmd_kernel,
    "poisson": cmd_poisson,
    "h-limit": cmd_h_limit,
    "riesz-spectral": cmd_riesz_spectral,
    "riesz-pv": cmd_riesz_pv,
    "compare": cmd_compare,
    "variation": cmd_variation,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultra-riesz",
        description="Ultraspherical Riesz transform reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--lambda", dest="lam", type=float, default=None)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--n-max", dest="n_max", type=int, default=None)
        p.add_argument("--quad-order", dest="quad_order", type=int, default=None)
        p.add_argument("--eps-start", dest="eps_start", type=float, default=None)
        p.add_argument("--eps-ratio", dest="eps_ratio", type=float, default=None)
        p.add_argument("--eps-count", dest="eps_count", type=int, default=None)
        p.add_argument("--rho", type=float, default=None)
        p.add_argument("--theta", dest="thetas", type=float, action="append", default=None)
        p.add_argument("--tolerance", type=float, default=None)
        p.add_argument("--ell", type=int, default=None)
        p.add_argument("--config", dest="config_path", type=str, default=None)
        p.add_argument("--output", type=str, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        values: dict = {}
        if args.config_path:
            values.update(load_config_file(args.config_path))
        for f in fields(RunConfig):
            flag_value = getattr(args, f.name, None)
            if flag_value is not None:
                values[f.name] = flag_value
        config = RunConfig(**values).validate()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    return _COMMANDS[args.command](config)


if __name__ == "__main__":
    sys.exit(main())
