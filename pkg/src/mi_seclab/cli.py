"""Command-line front end: ``mi-seclab {list,run,freq-sweep,validate,report}``.

Data (CSV, reports, listings) goes to stdout or ``--out``; diagnostics go to
stderr. Exit codes: 0 success, 1 bad input or usage, 2 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import warnings
from collections import Counter
from pathlib import Path

import numpy as np

from . import __version__
from .circuit import Node, frequency_response
from .errors import (
    DegenerateGeometryError,
    InvalidArgumentError,
    NumericError,
    ScenarioError,
    UnknownScenarioError,
)
from .geometry import FOOT
from .scenario import (
    BUILTIN_NAMES,
    COLUMNS,
    ResultTable,
    Scenario,
    apply_overrides,
    builtin_description,
    builtin_dict,
    read_scenario_dict,
    run,
    scenario_from_dict,
    write_csv,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERIC = 2

DEFAULT_GRID = (80e3, 120e3, 100.0)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:stop:step")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric grid {text!r}")
    if not (step > 0 and 0 < start <= stop):
        raise argparse.ArgumentTypeError("grid needs 0 < start <= stop and step > 0")
    return start, stop, step


def _positive(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _nonnegative(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _add_source(p, required=True):
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--builtin", metavar="NAME", help="built-in scenario name (see `list`)")
    src.add_argument("--file", metavar="PATH", help="TOML scenario file")


def _add_overrides(p):
    p.add_argument("--noise", type=_positive, metavar="W", help="receiver noise power")
    p.add_argument("--sigma", type=_nonnegative, metavar="S/m", help="medium conductivity")
    p.add_argument("--threshold", type=_positive, metavar="REL",
                   help="detector relative threshold")
    p.add_argument("--freq", type=_positive, metavar="HZ", help="drive frequency")


def build_parser():
    parser = _Parser(prog="mi-seclab",
                     description="Underwater MI link eavesdropping simulator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("list", help="list built-in scenarios")

    p = sub.add_parser("run", help="run a scenario sweep and write CSV")
    _add_source(p)
    p.add_argument("--out", metavar="PATH", help="CSV output path (default stdout)")
    _add_overrides(p)

    p = sub.add_parser("freq-sweep", help="solve the scenario's base geometry over a frequency grid")
    _add_source(p)
    p.add_argument("--out", metavar="PATH", help="CSV output path (default stdout)")
    p.add_argument("--grid", type=_grid, default=DEFAULT_GRID, metavar="START:STOP:STEP",
                   help="frequency grid in Hz (default 80e3:120e3:100)")
    p.add_argument("--two-coil", action="store_true", help="leave the eavesdropper out")
    _add_overrides(p)

    p = sub.add_parser("validate", help="parse and validate a scenario file")
    p.add_argument("path", nargs="?", help="TOML scenario file")
    _add_source(p, required=False)
    _add_overrides(p)

    p = sub.add_parser("report", help="run a scenario and print a text summary")
    _add_source(p)
    _add_overrides(p)
    return parser


def _load(args) -> Scenario:
    if args.builtin is not None:
        data = builtin_dict(args.builtin)
        name = args.builtin
    else:
        path = args.file if args.file is not None else getattr(args, "path", None)
        if path is None:
            raise ScenarioError("no scenario given (use a path, --file or --builtin)")
        data = read_scenario_dict(path)
        name = None
    data = apply_overrides(data, noise_power=args.noise, conductivity=args.sigma,
                           threshold=args.threshold, frequency=args.freq)
    try:
        return scenario_from_dict(data, name=name or Path(path).stem)
    except ScenarioError as exc:
        if args.builtin is None:
            raise ScenarioError(f"{path}: {exc}", exc.field) from exc
        raise


def _emit(text, out):
    if out:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_len(value, units):
    scale = FOOT if units == "ft" else 1.0
    return f"{round(value / scale, 9) + 0.0:g}"


def _label(table: ResultTable, value):
    if table.angular:
        return f"{value:g} deg"
    return f"{_fmt_len(value, table.units)} {table.units}"


def _where(table: ResultTable, i):
    row = table.rows[i]
    text = f"sweep {_label(table, row[0])}"
    pos = row[1:4]
    if not any(math.isnan(c) for c in pos):
        coords = ",".join(_fmt_len(c, table.units) for c in pos)
        text += f", eve at ({coords}) {table.units}"
    return text


def report(table: ResultTable) -> str:
    """Extremes of |V_E| and secrecy capacity, plus rows the detector flags."""
    if len(table) == 0:
        raise InvalidArgumentError("cannot report on an empty result table")
    lines = [f"scenario {table.scenario}: {len(table)} sweep points"]
    ok = [i for i, row in enumerate(table.rows) if row[-1] == "ok"]
    failed = len(table) - len(ok)
    if failed:
        lines.append(f"failed points: {failed}")
    if not ok:
        return "\n".join(lines) + "\n"

    v_e = table.column("v_e_V")
    sc = table.column("sc_bits")
    if not np.all(np.isnan(v_e[ok])):
        i_max = max(ok, key=lambda i: v_e[i])
        i_min = min(ok, key=lambda i: v_e[i])
        lines.append(f"max |V_E| = {v_e[i_max]:.6g} V at {_where(table, i_max)}")
        lines.append(f"min |V_E| = {v_e[i_min]:.6g} V at {_where(table, i_min)}")
    i_max = max(ok, key=lambda i: sc[i])
    i_min = min(ok, key=lambda i: sc[i])
    lines.append(f"max SC = {sc[i_max]:.6g} bits/s/Hz at {_where(table, i_max)}")
    lines.append(f"min SC = {sc[i_min]:.6g} bits/s/Hz at {_where(table, i_min)}")
    flagged = [i for i in ok if table.rows[i][COLUMNS.index("detector")] == "suspected"]
    if flagged:
        lines.append("detector suspected at: " + "; ".join(_where(table, i) for i in flagged))
    else:
        lines.append("detector suspected at: none")
    return "\n".join(lines) + "\n"


def _cmd_list(args):
    for name in BUILTIN_NAMES:
        sys.stdout.write(f"{name}\t{builtin_description(name)}\n")
    return EXIT_OK


def _cmd_run(args):
    scenario = _load(args)
    table = run(scenario)
    buf = io.StringIO()
    write_csv(table, buf)
    _emit(buf.getvalue(), args.out)
    failed = [r for r in table.rows if r[-1] != "ok"]
    if failed:
        for r in failed:
            print(f"mi-seclab: sweep value {r[0]:g}: {r[-1]}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_freq_sweep(args):
    scenario = _load(args)
    start, stop, step = args.grid
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    grid = start + step * np.arange(count)
    nodes = [Node(n.name, n.coil, n.pose) for n in scenario.nodes
             if not (args.two_coil and n.name == "eve")]
    response = frequency_response(nodes, scenario.drive, scenario.medium, grid)
    has_eve = any(n.name == "eve" for n in nodes)

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["frequency_Hz", "v_rx_V", "v_e_V", "i_tx_A"])
    for f, sol in response:
        w.writerow([format(f, ".9g"), format(sol.voltage("rx"), ".9g"),
                    format(sol.voltage("eve"), ".9g") if has_eve else "nan",
                    format(abs(sol.current("tx")), ".9g")])
    _emit(buf.getvalue(), args.out)
    f_peak, sol = max(response, key=lambda fs: fs[1].voltage("rx"))
    print(f"mi-seclab: |V_Rx| peaks at {f_peak:g} Hz ({sol.voltage('rx'):.6g} V)",
          file=sys.stderr)
    return EXIT_OK


def _cmd_validate(args):
    scenario = _load(args)
    sys.stdout.write(f"ok: {scenario.name} ({scenario.n_points()} sweep points, "
                     f"nodes {', '.join(n.name for n in scenario.nodes)})\n")
    return EXIT_OK


def _cmd_report(args):
    table = run(_load(args))
    sys.stdout.write(report(table))
    return EXIT_OK


_COMMANDS = {
    "list": _cmd_list,
    "run": _cmd_run,
    "freq-sweep": _cmd_freq_sweep,
    "validate": _cmd_validate,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            return _COMMANDS[args.command](args)
        except (ScenarioError, UnknownScenarioError, InvalidArgumentError,
                DegenerateGeometryError) as exc:
            print(f"mi-seclab: error: {exc}", file=sys.stderr)
            return EXIT_INVALID
        except NumericError as exc:
            print(f"mi-seclab: numeric error: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        except OSError as exc:
            print(f"mi-seclab: error: {exc}", file=sys.stderr)
            return EXIT_INVALID
        finally:
            _summarise_warnings(caught)


def _summarise_warnings(caught):
    counts = Counter(w.category.__name__ for w in caught)
    for name, n in sorted(counts.items()):
        first = next(str(w.message) for w in caught if w.category.__name__ == name)
        more = f" (and {n - 1} similar)" if n > 1 else ""
        print(f"mi-seclab: warning: {name}: {first}{more}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
