"""``rindler-kit`` command line: spectra, responses, forces, verification and sweeps."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import detector as det
from . import modes
from . import report
from .correlators import VacuumState
from .errors import ConfigError, DomainError, RindlerKitError, SizeCapExceeded
from .numerics import DEFAULT_CONFIG, QuadratureConfig
from .spacetime import WorldlineParams

COMMANDS = ("spectrum", "response", "force", "verify", "sweep")
DEFAULT_KERNELS = ";".join(det.kernel_label(k) for k in det.DEFAULT_CATALOG)
SWEEP_OBSERVABLES = ("force_inertial", "qdot_rindler", "qdot_series", "qdot_spectral", "qdot_time")
ROW_CAP = 100_000

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str = "verify"
    a: str = "0.5,1,2"
    kernel: str = DEFAULT_KERNELS
    vacuum: str = "inertial"
    route: str = "all"
    out: str = ""
    format: str = "csv"
    tol: float = DEFAULT_CONFIG.rel_tol
    strict: bool = False
    filter: str = ""
    seed: int = 0
    q: float = 1.0
    nu_grid: str = "0.05:2:40"
    packet_width: float = 0.01
    jobs: int = 4
    skip_existing: bool = False

    def accelerations(self) -> list[float]:
        vals = _parse_list(self.a, "a")
        if any(v < 0 for v in vals):
            raise ConfigError("accelerations must be >= 0")
        return vals

    def kernels(self) -> list[det.ResponseKernel]:
        specs = [s for s in self.kernel.split(";") if s.strip()]
        if not specs:
            raise ConfigError("no kernel given")
        try:
            return [det.parse_kernel(s) for s in specs]
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc

    def quadrature(self) -> QuadratureConfig:
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        return replace(DEFAULT_CONFIG, rel_tol=self.tol, abs_tol=min(DEFAULT_CONFIG.abs_tol, self.tol * 1e-2))

    def vacuum_state(self) -> VacuumState:
        try:
            return VacuumState(self.vacuum)
        except ValueError:
            raise ConfigError(f"unknown vacuum {self.vacuum!r}") from None


def _parse_list(text: str, name: str) -> list[float]:
    """Comma list ``0.5,1,2`` or linear range ``lo:hi:n``."""
    text = text.strip()
    try:
        if ":" in text:
            lo, hi, n = text.split(":")
            lo, hi, n = float(lo), float(hi), int(n)
            vals = [float(x) for x in np.linspace(lo, hi, max(n, 0))]
        else:
            vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad {name} list {text!r}") from exc
    if not vals:
        raise ConfigError(f"{name} grid is empty")
    return vals


_BOOL_KEYS = {"strict", "skip_existing"}


def _coerce(key: str, value: str):
    types = {f.name: f.type for f in fields(RunConfig)}
    if key not in types:
        raise ConfigError(f"unknown config key {key!r}")
    if key in _BOOL_KEYS:
        if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
            raise ConfigError(f"{key} must be a boolean")
        return value.lower() in ("true", "1", "yes")
    try:
        if types[key] in ("float", float):
            return float(value)
        if types[key] in ("int", int):
            return int(value)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {value!r}") from exc
    return value


def read_config_file(path: str) -> dict:
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    for i, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{i}: expected key=value")
        k, v = (s.strip() for s in line.split("=", 1))
        k = k.replace("-", "_")
        out[k] = _coerce(k, v)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rindler-kit", description=__doc__)
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="key=value file; flags override it")
    ap.add_argument("--a", help="accelerations: comma list or lo:hi:n")
    ap.add_argument("--kernel", action="append",
                    help="powerexp:a0,p,tau0 | oscillator:kappa,Omega,gamma | abrupt:tau0; repeat or join with ';'")
    ap.add_argument("--vacuum", choices=[v.value for v in VacuumState])
    ap.add_argument("--route", choices=list(det.QDOT_ROUTES) + ["all"])
    ap.add_argument("--out")
    ap.add_argument("--format", choices=("csv", "json"))
    ap.add_argument("--tol", type=float, help="relative quadrature tolerance")
    ap.add_argument("--strict", action="store_const", const=True)
    ap.add_argument("--filter")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--q", type=float)
    ap.add_argument("--nu-grid", dest="nu_grid")
    ap.add_argument("--packet-width", dest="packet_width", type=float)
    ap.add_argument("--jobs", type=int)
    ap.add_argument("--skip-existing", dest="skip_existing", action="store_const", const=True)
    return ap


def resolve_config(argv: list[str]) -> RunConfig:
    """defaults < config file < flags."""
    ns = build_parser().parse_args(argv)
    layered = {}
    if ns.config:
        layered.update(read_config_file(ns.config))
    flags = {k: v for k, v in vars(ns).items() if v is not None and k != "config"}
    if "kernel" in flags:
        flags["kernel"] = ";".join(flags["kernel"])
    layered.update(flags)
    return RunConfig(**layered)


# ---------------------------------------------------------------- formatting


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ""
    return str(v)


_EXECUTION_KEYS = ("out", "jobs", "skip_existing")


def _config_dict(cfg: RunConfig, physics_only: bool = False) -> dict:
    d = asdict(cfg)
    if physics_only:
        for k in _EXECUTION_KEYS:
            d.pop(k)
    return d


def render(cfg: RunConfig, columns: list[str], rows: list[dict], extra: dict | None = None,
           physics_only: bool = False) -> str:
    if cfg.format == "json":
        payload = {"config": _config_dict(cfg, physics_only), "rows": rows}
        if extra:
            payload.update(extra)
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    for k, v in _config_dict(cfg, physics_only).items():
        buf.write(f"# {k}={v}\n")
    for k, v in (extra or {}).items():
        buf.write(f"# {k}={json.dumps(v, sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def emit(cfg: RunConfig, text: str):
    if cfg.out and cfg.command != "sweep":
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _status(exc: Exception) -> str:
    return f"error:{type(exc).__name__}"


# ---------------------------------------------------------------- commands


def cmd_spectrum(cfg: RunConfig) -> int:
    nus = _parse_list(cfg.nu_grid, "nu")
    if any(v <= 0 for v in nus):
        raise ConfigError("nu grid must be positive")
    rows, fits = [], {}
    for a in cfg.accelerations():
        if a <= 0:
            raise ConfigError("spectrum needs a > 0")
        p = WorldlineParams(a)
        n_an = modes.occupation_spectrum(np.array(nus))
        if len(set(nus)) >= 2:
            slope = float(np.polyfit(nus, np.log1p(1 / n_an), 1)[0])
            fits[repr(a)] = {"slope": slope, "temperature": a / slope}
        else:
            fits[repr(a)] = None
        for nu, n in zip(nus, n_an):
            width = min(cfg.packet_width, nu / 4)
            pk = modes.WavePacket(nu, width)
            z = 6 / width
            val = modes.smeared_number_expectation(pk, p, z_cut=z)
            err = abs(modes.smeared_number_expectation(pk, p, z_cut=1.25 * z) - val)
            rows.append({"a": a, "nu": nu, "omega": nu * a, "n_analytic": float(n), "n_smeared": val,
                         "n_smeared_err": err, "ratio": val / float(n), "packet_width": width})
    cols = ["a", "nu", "omega", "n_analytic", "n_smeared", "n_smeared_err", "ratio", "packet_width"]
    emit(cfg, render(cfg, cols, rows, {"fit": fits}))
    return EXIT_OK


def _route_list(cfg: RunConfig) -> list[str]:
    return list(det.QDOT_ROUTES) if cfg.route == "all" else [cfg.route]


def cmd_response(cfg: RunConfig) -> int:
    qc = cfg.quadrature()
    vac = cfg.vacuum_state()
    rows, failed = [], False
    for k in cfg.kernels():
        for a in cfg.accelerations():
            c = det.CouplingParams(cfg.q, a)
            group = []
            routes = ["rindler"] if a == 0 else _route_list(cfg)
            for route in routes:
                row = {"kernel": det.kernel_label(k), "a": a, "vacuum": vac.value, "route": route}
                try:
                    if route == "rindler":
                        r = det.qdot_rindler(k, c, qc)
                    else:
                        r = det.qdot(k, c, route, qc, vac)
                    row.update(value=r.value, error=r.error_estimate, discrepancy_factor=r.discrepancy_factor,
                               status="ok")
                    group.append(row)
                except RindlerKitError as exc:
                    row.update(status=_status(exc))
                    failed = True
                rows.append(row)
            vals = [g["value"] for g in group]
            for g in group:
                g["routes_agree"] = all(abs(g["value"] - v) <= 1e-4 * max(abs(v), 1e-300) for v in vals)
    cols = ["kernel", "a", "vacuum", "route", "value", "error", "discrepancy_factor", "routes_agree", "status"]
    emit(cfg, render(cfg, cols, rows))
    return EXIT_NUMERIC if failed and cfg.strict else EXIT_OK


def cmd_force(cfg: RunConfig) -> int:
    qc = cfg.quadrature()
    vac = cfg.vacuum_state()
    rows, failed = [], False
    for k in cfg.kernels():
        for a in cfg.accelerations():
            c = det.CouplingParams(cfg.q, a)
            row = {"kernel": det.kernel_label(k), "a": a, "vacuum": vac.value}
            try:
                if vac is VacuumState.RINDLER:
                    fq = det.force_rindler(k, c, qc, verify=True)
                    fc = 0.0
                else:
                    fq = det.force_inertial(k, c, qc)
                    fc = det.force_inertial_closed(k, c, qc).value
                row.update(F_quadrature=fq.value, F_quadrature_err=fq.error_estimate, F_closed=fc,
                           residual=abs(fq.value - fc), F_over_a=fq.value / a if a > 0 else None, status="ok")
            except RindlerKitError as exc:
                row.update(status=_status(exc))
                failed = True
            rows.append(row)
    cols = ["kernel", "a", "vacuum", "F_quadrature", "F_quadrature_err", "F_closed", "residual", "F_over_a", "status"]
    emit(cfg, render(cfg, cols, rows))
    return EXIT_NUMERIC if failed and cfg.strict else EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    rep = report.full_report(cfg.quadrature(), cfg.seed, cfg.filter or None,
                             with_constants=not cfg.filter)
    text = json.dumps({"config": _config_dict(cfg), **rep}, indent=2) + "\n"
    emit(cfg, text)
    for c in rep["checks"]:
        sys.stderr.write(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}: {c['detail']}\n")
    return EXIT_OK if rep["passed"] else EXIT_VERIFY


def _sweep_value(obs: str, k: det.ResponseKernel, a: float, q: float, qc: QuadratureConfig):
    c = det.CouplingParams(q, a)
    fn = {
        "force_inertial": lambda: det.force_inertial(k, c, qc),
        "qdot_rindler": lambda: det.qdot_rindler(k, c, qc),
        "qdot_series": lambda: det.qdot_inertial_series(k, c, cfg=qc),
        "qdot_spectral": lambda: det.qdot_inertial_spectral(k, c, qc),
        "qdot_time": lambda: det.qdot_inertial_time(k, c, qc),
    }[obs]
    return fn()


SWEEP_COLUMNS = ["kernel", "a", "observable", "value", "error", "discrepancy_factor", "status"]


def _sweep_kernel_rows(k: det.ResponseKernel, accel: list[float], q: float, qc: QuadratureConfig) -> list[dict]:
    rows = []
    for a in sorted(accel):
        for obs in SWEEP_OBSERVABLES:
            row = {"kernel": det.kernel_label(k), "a": a, "observable": obs}
            try:
                r = _sweep_value(obs, k, a, q, qc)
                row.update(value=r.value, error=r.error_estimate, discrepancy_factor=r.discrepancy_factor,
                           status="ok")
            except RindlerKitError as exc:
                row.update(status=_status(exc))
            rows.append(row)
    return rows


def _csv_rows(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in SWEEP_COLUMNS])
    return buf.getvalue()


def cmd_sweep(cfg: RunConfig) -> int:
    if not cfg.out:
        raise ConfigError("sweep needs --out <directory>")
    accel = cfg.accelerations()
    kernels = sorted(cfg.kernels(), key=det.kernel_label)
    n_rows = len(accel) * len(kernels) * len(SWEEP_OBSERVABLES)
    if n_rows > ROW_CAP:
        raise SizeCapExceeded(f"sweep would produce {n_rows} rows (cap {ROW_CAP})")
    qc = cfg.quadrature()
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    parts = [outdir / f"part-{i:04d}.csv" for i in range(len(kernels))]
    todo = [i for i, path in enumerate(parts) if not (cfg.skip_existing and path.exists())]

    def work(i):
        text = _csv_rows(_sweep_kernel_rows(kernels[i], accel, cfg.q, qc))
        tmp = parts[i].with_suffix(".tmp")
        tmp.write_text(text)
        tmp.replace(parts[i])  # parts appear atomically, so resumption never sees half a file

    with ThreadPoolExecutor(max_workers=max(1, cfg.jobs)) as pool:
        list(pool.map(work, todo))
    header = render(replace(cfg, format="csv"), SWEEP_COLUMNS, [], physics_only=True)
    body = "".join(p.read_text() for p in parts)
    (outdir / "sweep.csv").write_text(header + body)
    if cfg.format == "json":
        rows = list(csv.DictReader(io.StringIO(",".join(SWEEP_COLUMNS) + "\n" + body)))
        (outdir / "sweep.json").write_text(
            json.dumps({"config": _config_dict(cfg, physics_only=True), "rows": rows}, indent=2) + "\n")
    failed = any(",error:" in line for line in body.splitlines())
    return EXIT_NUMERIC if failed and cfg.strict else EXIT_OK


HANDLERS = {
    "spectrum": cmd_spectrum,
    "response": cmd_response,
    "force": cmd_force,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = resolve_config(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    except (ConfigError, TypeError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    try:
        return HANDLERS[cfg.command](cfg)
    except (ConfigError, SizeCapExceeded) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except RindlerKitError as exc:
        sys.stderr.write(f"numerical failure: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
