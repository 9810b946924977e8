"""Command line: self-checks, vertex links, waterworlds, decompositions and figure data.

Exit status is 0 when everything passes, 1 when a check fails, 2 for usage
errors and 3 for a form that is not integral and indefinite.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import serial
from .figures import horoball_slice, link_slice, render_svg, value_table
from .form import NotIndefinite, NotIntegral, trace_form
from .order import get_order, load_order_config, parse_rational
from .spine import NotAVertex, decompose, example_vertex, in_sl2, vertex_link
from .suites import SUITES
from .water import Region, extract

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FORM = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Config:
    preset: str = "hurwitz"
    denominator_norm_max: int = 2
    box_radius: Fraction = Fraction(2)
    json_path: str | None = None
    plot_path: str | None = None
    precision_digits: int = 6
    order_file: str | None = None

    def validate(self):
        if self.denominator_norm_max < 1 or self.box_radius <= 0:
            raise UsageError("bounds must be positive")
        if self.precision_digits < 0:
            raise UsageError("precision must be non-negative")

    def order(self):
        if self.order_file:
            return load_order_config(self.order_file)
        try:
            return get_order(self.preset)
        except (KeyError, ValueError) as e:
            raise UsageError(f"unknown preset {self.preset!r}") from e


_CONFIG_KEYS = {
    "preset": str,
    "denominator_norm_max": int,
    "box_radius": parse_rational,
    "json_path": str,
    "plot_path": str,
    "precision_digits": int,
    "order_file": str,
}


def read_config(path) -> Config:
    """key = value lines; '#' starts a comment."""
    cfg = Config()
    for ln, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = (t.strip() for t in line.partition("="))
        if not sep or key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{ln}: bad config line {raw!r}")
        try:
            setattr(cfg, key, _CONFIG_KEYS[key](val))
        except ValueError as e:
            raise UsageError(f"{path}:{ln}: {e}") from e
    return cfg


def _config(args) -> Config:
    cfg = read_config(args.config) if args.config else Config()
    if args.preset:
        cfg.preset = args.preset
    if args.bound_denominator is not None:
        cfg.denominator_norm_max = args.bound_denominator
    if args.box is not None:
        cfg.box_radius = args.box
    if args.out:
        cfg.json_path = cfg.plot_path = args.out
    cfg.validate()
    return cfg


def _emit(text: str, path):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json_arg(s: str):
    if s.startswith("@"):
        s = Path(s[1:]).read_text()
    try:
        return json.loads(s)
    except json.JSONDecodeError as e:
        raise UsageError(f"bad JSON: {e}") from e


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_verify(args, cfg: Config) -> int:
    order = cfg.order()
    checks = SUITES[args.suite](order, random.Random(args.seed))
    for c in checks:
        line = f"{'PASS' if c.ok else 'FAIL'}  {args.suite}: {c.name}"
        if not c.ok:
            line += "  " + json.dumps(c.detail, sort_keys=True, default=str)
        print(line)
    ok = all(c.ok for c in checks)
    report = {"suite": args.suite, "preset": order.name, "seed": args.seed, "passed": ok,
              "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]}
    if cfg.json_path:
        Path(cfg.json_path).write_text(json.dumps(report, sort_keys=True, indent=2, default=str) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_waterworld(args, cfg: Config) -> int:
    order = cfg.order()
    if args.form is None:
        f = trace_form(order.alg)
    else:
        try:
            f = serial.form_in(order, _load_json_arg(args.form))
        except (ValueError, TypeError, ZeroDivisionError) as e:
            raise UsageError(f"bad form: {e}") from e
    try:
        rep = extract(order, f, Region(cfg.denominator_norm_max, cfg.box_radius))
    except (NotIntegral, NotIndefinite) as e:
        print(f"invalid form: {e}", file=sys.stderr)
        return EXIT_FORM
    if args.format == "csv":
        rows = [[str(p), str(v)] for p, v in rep.unit_table]
        _emit(_csv(["cusp", "F"], rows), cfg.json_path)
    else:
        _emit(serial.dumps(serial.report_out(rep)), cfg.json_path)
    return EXIT_OK if rep.bound_holds() else EXIT_FAIL


def cmd_plot(args, cfg: Config) -> int:
    order = cfg.order()
    if args.kind == "link_slice":
        t = link_slice(order)
    elif args.kind == "horoball_slice":
        t = horoball_slice(order)
    else:
        f = None
        if args.form is not None:
            try:
                f = serial.form_in(order, _load_json_arg(args.form))
            except (ValueError, TypeError, ZeroDivisionError) as e:
                raise UsageError(f"bad form: {e}") from e
        t = value_table(order, f)
    fmt = args.format or "csv"
    if fmt == "svg":
        _emit(render_svg(t, order.alg.sc_i, cfg.precision_digits), cfg.plot_path)
    elif fmt == "json":
        _emit(serial.dumps({"kind": t.kind, "header": t.header, "rows": t.rows}), cfg.plot_path)
    else:
        _emit(_csv(t.header, t.rows), cfg.plot_path)
    return EXIT_OK


def cmd_link(args, cfg: Config) -> int:
    order = cfg.order()
    try:
        v = example_vertex(order) if args.vertex is None else serial.point_in(order, _load_json_arg(args.vertex))
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as e:
        raise UsageError(f"bad vertex: {e}") from e
    try:
        rep = vertex_link(order, v)
    except NotAVertex as e:
        print(str(e), file=sys.stderr)
        return EXIT_FAIL
    index = {p: k for k, p in enumerate(rep.cusps)}
    out = {
        "vertex": serial.point_out(v),
        "cusps": [serial.cusp_out(p) for p in rep.cusps],
        "edges": [[index[p], index[q], lab.value] for p, q, lab in rep.edges],
        "top_cell_count": rep.top_cell_count,
        "degree_histogram": {str(k): n for k, n in rep.degree_histogram.items()},
        "neighbour_bound": rep.neighbour_bound_ok,
    }
    _emit(serial.dumps(out), cfg.json_path)
    return EXIT_OK if rep.neighbour_bound_ok else EXIT_FAIL


def cmd_decompose(args, cfg: Config) -> int:
    order = cfg.order()
    try:
        M = serial.matrix_in(order, _load_json_arg(args.matrix))
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise UsageError(f"bad matrix: {e}") from e
    if not in_sl2(order, M):
        print("matrix is not in SL2 of the order", file=sys.stderr)
        return EXIT_FAIL
    w = decompose(order, M)
    ok = w.product(order.alg) == M
    out = {"word": str(w), "c_norms": [str(n) for n in w.c_norms], "reassembles": ok}
    _emit(serial.dumps(out), cfg.json_path)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=["hurwitz", "da3"])
    common.add_argument("--config", help="key = value file (preset, denominator_norm_max, box_radius, ...)")
    common.add_argument("--bound-denominator", type=int, help="largest n(y) for cusps x/y in a region")
    common.add_argument("--box", type=parse_rational, help="region radius around the origin")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=["json", "csv", "svg"],
                        help="output format (default json; csv for plot)")

    p = argparse.ArgumentParser(prog="hbforms", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a named self-check suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("waterworld", parents=[common], help="sign pattern of a form on a region of cells")
    w.add_argument("--form", help='JSON {"a": .., "b": [4 rationals], "c": ..} or @file; default trace form')
    w.set_defaults(func=cmd_waterworld)

    pl = sub.add_parser("plot", parents=[common], help="figure data as exact CSV or decimal SVG")
    pl.add_argument("--kind", choices=["link_slice", "horoball_slice", "values"], required=True)
    pl.add_argument("--form", help="form for --kind values; default trace form")
    pl.set_defaults(func=cmd_plot)

    lk = sub.add_parser("link", parents=[common], help="cusps and contacts at a vertex of the spine")
    lk.add_argument("--vertex", help='JSON {"z": [4 rationals], "rsq": ".."}; default the example vertex')
    lk.set_defaults(func=cmd_link)

    d = sub.add_parser("decompose", parents=[common], help="write a matrix of SL2(O) in the generators")
    d.add_argument("--matrix", required=True, help="JSON [[a, b], [c, d]] with quaternion entries, or @file")
    d.set_defaults(func=cmd_decompose)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
