"""Command-line frontend.

Exit codes: 0 success, 1 parse/usage error, 2 invalid mathematical input,
3 time outside the flow's existence interval.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .catalog import (
    SURFACE_PARAMS,
    SURFACES,
    CatalogError,
    ParseError,
    ValidationError,
    ingest_spec_file,
    load_surface,
    spec_to_json,
    validate,
)
from .curvature import chern_connection, chern_ricci_form, curvature_tensor, gauduchon_connection, levi_civita
from .flow import OutOfInterval, default_times, metric_at, solve_flow, trajectory_csv, trajectory_rows
from .formality import PROPERTIES, is_preserved, table1, verdict, verdict_along_flow
from .forms import INDEX_NAMES
from .harmonic import KINDS, gradings, harmonic_basis
from .hodge import InvalidMetric, Metric, parse_metric, random_metric
from .scalars import Scalar, ScalarParseError, format_scalar, parse_rational

FORMAT_ENV = "HERMITIAN_FORMALITY_FORMAT"
FORMATS = ("table", "json", "csv")

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_INTERVAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    surface: Optional[str] = None
    spec_file: Optional[str] = None
    params: Dict[str, Fraction] = field(default_factory=dict)
    metric: Optional[Metric] = None
    fmt: str = "table"
    times: Optional[List[Fraction]] = None
    seed: Optional[int] = None
    sweep: int = 0
    along_flow: bool = False
    table1: bool = False
    connection: str = "chern"

    def spec(self):
        if self.spec_file is not None:
            return ingest_spec_file(self.spec_file)
        return load_surface(self.surface, self.params)

    def source(self) -> str:
        if self.spec_file is not None:
            return self.spec_file
        if self.params:
            return self.surface + "[" + ",".join(f"{k}={v}" for k, v in self.params.items()) + "]"
        return self.surface


def _grading_text(g) -> str:
    return str(g) if isinstance(g, int) else f"({g[0]},{g[1]})"


def _parse_params(items) -> Dict[str, Fraction]:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = parse_rational(v)
        except ScalarParseError as exc:
            raise UsageError(f"--param {k}: {exc}") from None
    return out


def _parse_times(text: Optional[str]) -> Optional[List[Fraction]]:
    if text is None:
        return None
    out = []
    for piece in text.split(","):
        try:
            out.append(parse_rational(piece))
        except ScalarParseError as exc:
            raise UsageError(f"--times: {exc}") from None
    if out != sorted(out):
        raise UsageError("--times must be sorted")
    return out


def _metrics(cfg: RunConfig) -> List[Metric]:
    if cfg.sweep:
        rng = random.Random(cfg.seed)
        return [random_metric(rng) for _ in range(cfg.sweep)]
    return [cfg.metric]


def _emit_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _header(cfg: RunConfig) -> List[str]:
    lines = [f"# surface: {cfg.source()}"]
    if cfg.sweep:
        lines.append(f"# sweep: {cfg.sweep} metrics, seed {cfg.seed}")
    return lines


# -- commands ---------------------------------------------------------------------


def cmd_catalog(cfg: RunConfig) -> str:
    if cfg.surface is None and cfg.spec_file is None:
        rows = [(name, ",".join(SURFACE_PARAMS[name]) or "-") for name in SURFACES]
        if cfg.fmt == "json":
            return json.dumps([{"surface": n, "params": list(SURFACE_PARAMS[n])} for n, _ in rows], indent=2)
        if cfg.fmt == "csv":
            return _emit_csv(("surface", "params"), rows)
        return "\n".join(f"{n:<20} params: {p}" for n, p in rows)
    spec = cfg.spec()
    report = validate(spec)
    data = spec_to_json(spec)
    if cfg.fmt == "json":
        data["checks"] = {k: c.passed for k, c in report.checks.items()}
        return json.dumps(data, indent=2)
    if cfg.fmt == "csv":
        return _emit_csv(("i", "h", "k", "value"), [(r["i"], r["h"], r["k"], r["value"]) for r in data["constants"]])
    d1, d2 = spec.structure_equations()
    lines = [f"{spec.name}  {data['params'] or ''}".rstrip(), f"d phi^1 = {d1}", f"d phi^2 = {d2}"]
    lines.extend(f"{k}: {c.describe()}" for k, c in report.checks.items())
    return "\n".join(lines)


def cmd_harmonics(cfg: RunConfig) -> str:
    spec = cfg.spec()
    m = cfg.metric
    data = {}
    for kind in KINDS:
        data[kind] = [harmonic_basis(kind, spec, m, g) for g in gradings(kind)]
    if cfg.fmt == "json":
        return json.dumps(
            {
                "surface": cfg.source(),
                "metric": m.to_json(),
                "harmonics": {k: [hb.to_json() for hb in v if hb.basis] for k, v in data.items()},
            },
            indent=2,
        )
    if cfg.fmt == "csv":
        rows = []
        for kind, spaces in data.items():
            for hb in spaces:
                for n, f in enumerate(hb.basis):
                    rows.append((kind, _grading_text(hb.grading), n, str(f)))
        return _emit_csv(("kind", "grading", "index", "form"), rows)
    lines = _header(cfg) + [f"# metric: r2,s2,u = {m.as_text()}  V = {format_scalar(Scalar(m.V))}"]
    for kind, spaces in data.items():
        dims = " ".join(str(len(hb)) for hb in spaces)
        lines.append(f"{kind}  dims: {dims}")
        for hb in spaces:
            for f in hb.basis:
                lines.append(f"  {_grading_text(hb.grading):<6} {f}")
    return "\n".join(lines)


def _entry_name(idx) -> str:
    return ",".join(INDEX_NAMES[a] for a in idx)


def cmd_curvature(cfg: RunConfig) -> str:
    spec = cfg.spec()
    m = cfg.metric
    if cfg.connection == "chern":
        conn = chern_connection(spec, m)
    elif cfg.connection == "levi-civita":
        conn = levi_civita(spec, m)
    else:
        conn = gauduchon_connection(spec, m, Fraction(1, 2), 0)
    R = curvature_tensor(spec, m, conn)
    rho = chern_ricci_form(spec, m)
    gam = {_entry_name(k): format_scalar(v) for k, v in conn.nonzero().items()}
    curv = {_entry_name(k): format_scalar(v) for k, v in R.nonzero().items()}
    if cfg.fmt == "json":
        return json.dumps(
            {
                "surface": cfg.source(),
                "metric": m.to_json(),
                "connection": cfg.connection,
                "christoffel": gam,
                "curvature": curv,
                "ricci_form": rho.to_json(),
            },
            indent=2,
        )
    if cfg.fmt == "csv":
        rows = [("Gamma", k, v) for k, v in gam.items()] + [("R", k, v) for k, v in curv.items()]
        return _emit_csv(("tensor", "indices", "value"), rows)
    lines = _header(cfg) + [f"# metric: {m.as_text()}  connection: {cfg.connection}"]
    lines += [f"Gamma_{k} = {v}" for k, v in gam.items()]
    lines += [f"R_{k} = {v}" for k, v in curv.items()]
    lines.append(f"Ric = {rho.form()}")
    return "\n".join(lines)


def cmd_flow(cfg: RunConfig) -> str:
    spec = cfg.spec()
    sol = solve_flow(spec, cfg.metric)
    times = cfg.times if cfg.times is not None else default_times(sol)
    metrics = [metric_at(sol, t) for t in times]
    if cfg.fmt == "csv":
        return trajectory_csv(times, metrics).rstrip("\n")
    if cfg.fmt == "json":
        return json.dumps(
            {
                "surface": cfg.source(),
                "initial": cfg.metric.to_json(),
                "ricci_form": sol.rho.to_json(),
                "t_max": sol.t_max_text(),
                "trajectory": [dict(zip(("t", "r2", "s2", "re_u", "im_u", "V"), r)) for r in trajectory_rows(times, metrics)],
            },
            indent=2,
        )
    lines = _header(cfg)
    lines.append(f"Ric = {sol.rho.form()}")
    lines.append(f"t_max = {sol.t_max_text()}")
    lines.append("t | r2 | s2 | u | V")
    for t, m in zip(times, metrics):
        u = format_scalar(m.u)
        lines.append(f"{format_scalar(Scalar(t))} | {format_scalar(Scalar(m.r2))} | {format_scalar(Scalar(m.s2))} | {u} | {format_scalar(Scalar(m.V))}")
    return "\n".join(lines)


def cmd_report(cfg: RunConfig) -> str:
    if cfg.table1:
        tables = [table1("diagonal"), table1("generic")]
        if cfg.fmt == "json":
            return json.dumps([t.to_json() for t in tables], indent=2)
        if cfg.fmt == "csv":
            rows = []
            for t in tables:
                for r in t.rows:
                    rows.append([t.metric_choice, r.surface] + ["varies" if v is None else v for v in r.values])
            return _emit_csv(("metrics", "surface") + PROPERTIES, rows)
        return "\n\n".join(t.render() for t in tables)

    spec = cfg.spec()
    if cfg.along_flow:
        sol = solve_flow(spec, cfg.metric)
        times = cfg.times if cfg.times is not None else default_times(sol, 3)
        traj = verdict_along_flow(spec, cfg.metric, times)
        preserved = is_preserved(traj)
        if cfg.fmt == "json":
            return json.dumps(
                {
                    "surface": cfg.source(),
                    "initial": cfg.metric.to_json(),
                    "t_max": sol.t_max_text(),
                    "trajectory": [{"t": format_scalar(Scalar(t)), "verdict": v.to_json()} for t, v in traj],
                    "preserved": preserved,
                },
                indent=2,
            )
        if cfg.fmt == "csv":
            rows = [[format_scalar(Scalar(t))] + list(v.as_tuple()) for t, v in traj]
            return _emit_csv(("t",) + PROPERTIES, rows)
        lines = _header(cfg) + [f"# t_max = {sol.t_max_text()}"]
        lines += [f"t = {format_scalar(Scalar(t))}: {v.letters()}" for t, v in traj]
        lines.append("verdict constant along the flow" if preserved else "verdict changes along the flow")
        return "\n".join(lines)

    results = [(m, verdict(spec, m)) for m in _metrics(cfg)]
    if cfg.fmt == "json":
        out = [{"metric": m.to_json(), "verdict": v.to_json()} for m, v in results]
        return json.dumps({"surface": cfg.source(), "seed": cfg.seed, "results": out}, indent=2)
    if cfg.fmt == "csv":
        rows = [[m.as_text()] + list(v.as_tuple()) for m, v in results]
        return _emit_csv(("metric",) + PROPERTIES, rows)
    lines = _header(cfg)
    for m, v in results:
        lines.append(f"metric {m.as_text()}: {v.letters()}")
        for p in PROPERTIES:
            w = v.witnesses.get(p)
            lines.append(f"  {p:<17} {'T' if getattr(v, p) else 'F'}" + (f"   witness: {w}" if w else ""))
    return "\n".join(lines)


COMMANDS = {
    "catalog": cmd_catalog,
    "harmonics": cmd_harmonics,
    "curvature": cmd_curvature,
    "flow": cmd_flow,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    default_fmt = os.environ.get(FORMAT_ENV, "table")
    parser = _Parser(prog="hermitian-formality", description="Exact invariant Hermitian geometry of compact complex surfaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, metric=True):
        src = p.add_mutually_exclusive_group()
        src.add_argument("--surface", choices=SURFACES)
        src.add_argument("--spec-file", help="structure-constant table (see catalog --format json)")
        p.add_argument("--param", action="append", metavar="KEY=VALUE", help="family parameter, exact rational")
        if metric:
            p.add_argument("--metric", metavar="R2,S2,U", help="exact metric coefficients, e.g. 1,1,1/2-i")
        p.add_argument("--format", choices=FORMATS, default=default_fmt if default_fmt in FORMATS else "table")

    common(sub.add_parser("catalog", help="list surfaces or show one structure table"), metric=False)
    common(sub.add_parser("harmonics", help="harmonic bases of all four Laplacians"))
    p = sub.add_parser("curvature", help="connection, curvature and Chern-Ricci form")
    common(p)
    p.add_argument("--connection", choices=("chern", "levi-civita", "bismut"), default="chern")
    p = sub.add_parser("flow", help="Chern-Ricci flow from an initial metric")
    common(p)
    p.add_argument("--times", help="comma-separated exact times")
    p = sub.add_parser("report", help="formality verdicts")
    common(p)
    p.add_argument("--times", help="comma-separated exact times (with --along-flow)")
    p.add_argument("--along-flow", action="store_true")
    p.add_argument("--table1", action="store_true", help="summary matrix over all surfaces")
    p.add_argument("--sweep", type=int, default=0, metavar="N", help="use N seeded random metrics")
    p.add_argument("--seed", type=int, default=0)
    return parser


def make_config(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        surface=args.surface,
        spec_file=args.spec_file,
        params=_parse_params(args.param),
        fmt=args.format,
        times=_parse_times(getattr(args, "times", None)),
        seed=getattr(args, "seed", None),
        sweep=getattr(args, "sweep", 0),
        along_flow=getattr(args, "along_flow", False),
        table1=getattr(args, "table1", False),
        connection=getattr(args, "connection", "chern"),
    )
    if cfg.sweep < 0:
        raise UsageError("--sweep must be non-negative")
    if cfg.command == "catalog" or cfg.table1:
        return cfg
    if cfg.surface is None and cfg.spec_file is None:
        raise UsageError("one of --surface or --spec-file is required")
    metric_text = getattr(args, "metric", None)
    if metric_text is None and not cfg.sweep:
        raise UsageError("--metric is required")
    if metric_text is not None:
        cfg.metric = parse_metric(metric_text)
    if cfg.sweep and (cfg.along_flow or cfg.metric is not None):
        raise UsageError("--sweep replaces --metric and cannot be combined with --along-flow")
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        out = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidMetric as exc:
        print(f"error: invalid metric: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (CatalogError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except OutOfInterval as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERVAL
    print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
