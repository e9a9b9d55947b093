"""Command-line front end: ``msdyn run`` and ``msdyn list``.

Run configurations are INI files::

    [run]
    scenario = x-fstirap        ; a preset name or "custom"
    adiabatic_exponent = 1.5
    emit = timeseries, diagnostics, summary

    [grid]
    t_start = 26
    t_end = 54
    n_steps = 150000

    [linkage]
    preset = X5                 ; npod(N), W5 or X5
    sets = 2, 2, 2              ; explicit set sizes (custom linkages)
    couplings = g1-m1:vp, g2-m2:vs, m1-e1:wp, m2-e2:ws
    detuning = delta

    [pulse:vp1]
    kind = gaussian
    amplitude = 85
    center = 50
    width = 1

    [initial]
    state = bright-ground       ; or one "label = amplitude" line per state

    [target]
    g1 = 0.5
    g2 = 0.5
    e1 = -0.7071067811865476

For a preset scenario every section is optional and overrides the preset
field by field.  Exit codes: 0 success, 2 configuration error, 3 violated
precondition, 4 integration failure.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from . import scenarios
from .errors import ConfigError, IntegrationError, MsdynError, PreconditionError
from .linkage import Coupling
from .pulses import PulseProfile, TimeGrid

EXIT_CODES = {"config": 2, "precondition": 3, "integration": 4}
EMIT_KINDS = ("timeseries", "diagnostics", "summary")

_SECTION_KEYS = {
    "run": {"scenario", "adiabatic_exponent", "emit", "name"},
    "grid": {"t_start", "t_end", "n_steps"},
    "linkage": {"preset", "sets", "couplings", "detuning"},
}
_PULSE_FLOATS = ("amplitude", "center", "width", "slope", "offset", "fall_center", "fall_width")


@dataclass
class RunConfig:
    scenario: scenarios.ScenarioSpec
    label: str
    out: str = "."
    emit: tuple = EMIT_KINDS
    exponent: float = 1.5


# ---------------------------------------------------------------- parsing


def _float(section, key, raw):
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected a number, got {raw!r}") from None


def _int(section, key, raw):
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected an integer, got {raw!r}") from None


def _complex(section, key, raw):
    try:
        return complex(raw.replace(" ", ""))
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected an amplitude, got {raw!r}") from None


def _parse_couplings(raw):
    out = []
    for item in raw.replace(";", ",").split(","):
        item = item.strip()
        if not item:
            continue
        try:
            pair, profile = item.split(":")
            lower, upper = pair.split("-")
        except ValueError:
            raise ConfigError(f"[linkage] couplings: entry {item!r} is not 'lower-upper:pulse'") from None
        out.append(Coupling(lower.strip(), upper.strip(), profile.strip()))
    if not out:
        raise ConfigError("[linkage] couplings is empty")
    return tuple(out)


def _parse_state(parser, section):
    items = dict(parser.items(section))
    if "state" in items:
        if len(items) > 1:
            raise ConfigError(f"[{section}] use either 'state' or per-label amplitudes, not both")
        return items["state"].strip()
    if not items:
        raise ConfigError(f"[{section}] is empty")
    return {k: _complex(section, k, v) for k, v in items.items()}


def _parse_pulse(section, items, base: PulseProfile | None):
    unknown = set(items) - set(_PULSE_FLOATS) - {"kind"}
    if unknown:
        raise ConfigError(f"[{section}] unknown keys: {sorted(unknown)}")
    fields = {k: _float(section, k, v) for k, v in items.items() if k != "kind"}
    if "kind" in items or base is None:
        if "kind" not in items:
            raise ConfigError(f"[{section}] needs 'kind' (gaussian, constant or linear)")
        return PulseProfile(kind=items["kind"].strip(), **fields)
    return replace(base, **fields)


def _read(paths):
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    parser.optionxform = str
    for path in paths:
        try:
            with open(path) as fh:
                parser.read_file(fh, source=str(path))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except configparser.Error as exc:
            raise ConfigError(f"malformed config {path}: {exc}") from None
    return parser


def load_config(paths, scenario: str | None = None) -> RunConfig:
    """Build a :class:`RunConfig` from one or more INI files (later files win)."""
    parser = _read(paths)
    for section in parser.sections():
        if section in _SECTION_KEYS:
            unknown = set(parser.options(section)) - _SECTION_KEYS[section]
            if unknown:
                raise ConfigError(f"[{section}] unknown keys: {sorted(unknown)}")
        elif section in ("initial", "target") or section.startswith("pulse:"):
            continue
        else:
            raise ConfigError(f"unknown section [{section}]")

    run = dict(parser.items("run")) if parser.has_section("run") else {}
    name = scenario or run.get("scenario", "").strip()
    if not name:
        raise ConfigError("no scenario given: set [run] scenario or pass --scenario")
    exponent = _float("run", "adiabatic_exponent", run.get("adiabatic_exponent", "1.5"))
    emit = EMIT_KINDS
    if "emit" in run:
        emit = tuple(x.strip() for x in run["emit"].split(",") if x.strip())
        bad = set(emit) - set(EMIT_KINDS)
        if bad:
            raise ConfigError(f"[run] emit: unknown kinds {sorted(bad)}")

    if name == "custom":
        spec = _custom_scenario(parser)
    else:
        spec = scenarios.get_preset(name)
        spec = _apply_overrides(spec, parser)
    label = run.get("name", "").strip() or spec.name
    return RunConfig(spec, label, emit=emit, exponent=exponent)


def _grid(parser, base: TimeGrid | None):
    if not parser.has_section("grid"):
        if base is None:
            raise ConfigError("custom scenarios need a [grid] section")
        return base
    items = dict(parser.items("grid"))
    if base is None and set(items) != _SECTION_KEYS["grid"]:
        raise ConfigError("[grid] needs t_start, t_end and n_steps")
    t0 = _float("grid", "t_start", items["t_start"]) if "t_start" in items else base.t_start
    t1 = _float("grid", "t_end", items["t_end"]) if "t_end" in items else base.t_end
    n = _int("grid", "n_steps", items["n_steps"]) if "n_steps" in items else base.n_steps
    return TimeGrid(t0, t1, n)


def _pulses(parser, base: dict):
    table = dict(base)
    for section in parser.sections():
        if section.startswith("pulse:"):
            pid = section.split(":", 1)[1].strip()
            if not pid:
                raise ConfigError(f"section [{section}] has an empty pulse id")
            table[pid] = _parse_pulse(section, dict(parser.items(section)), table.get(pid))
    return table


def _linkage_fields(parser):
    if not parser.has_section("linkage"):
        return {}
    items = dict(parser.items("linkage"))
    out = {}
    if "preset" in items:
        out["linkage"] = items["preset"].strip()
    if "detuning" in items:
        out["detuning"] = items["detuning"].strip()
    if "sets" in items:
        out["set_sizes"] = tuple(_int("linkage", "sets", s) for s in items["sets"].split(",") if s.strip())
    if "couplings" in items:
        out["couplings"] = _parse_couplings(items["couplings"])
    return out


def _apply_overrides(spec, parser):
    fields = {"grid": _grid(parser, spec.grid), "pulses": _pulses(parser, spec.pulses)}
    fields.update(_linkage_fields(parser))
    if "set_sizes" in fields and "couplings" not in fields:
        raise ConfigError("[linkage] sets requires couplings")
    if parser.has_section("initial"):
        fields["initial"] = _parse_state(parser, "initial")
    if parser.has_section("target"):
        fields["target"] = _parse_state(parser, "target")
    return replace(spec, **fields)


def _custom_scenario(parser):
    link = _linkage_fields(parser)
    if "linkage" not in link and "couplings" not in link:
        raise ConfigError("custom scenarios need [linkage] preset or sets + couplings")
    if "couplings" in link and "set_sizes" not in link and "linkage" not in link:
        raise ConfigError("[linkage] couplings without a preset need sets")
    for section in ("initial", "target"):
        if not parser.has_section(section):
            raise ConfigError(f"custom scenarios need an [{section}] section")
    return scenarios.ScenarioSpec(
        name="custom",
        linkage=link.get("linkage", "custom"),
        pulses=_pulses(parser, {}),
        grid=_grid(parser, None),
        initial=_parse_state(parser, "initial"),
        target=_parse_state(parser, "target"),
        detuning=link.get("detuning", "delta"),
        description="user-defined linkage",
        set_sizes=link.get("set_sizes"),
        couplings=link.get("couplings"),
    )


# ---------------------------------------------------------------- running


def execute(cfg: RunConfig) -> dict:
    """Run one configuration, write its outputs and return the summary."""
    result = scenarios.run_scenario(cfg.scenario, exponent=cfg.exponent)
    os.makedirs(cfg.out, exist_ok=True)
    written = []
    if "timeseries" in cfg.emit:
        path = os.path.join(cfg.out, f"{cfg.label}_timeseries.csv")
        scenarios.write_table(path, *scenarios.timeseries_table(result))
        written.append(path)
    if "diagnostics" in cfg.emit:
        path = os.path.join(cfg.out, f"{cfg.label}_diagnostics.csv")
        scenarios.write_table(path, *scenarios.diagnostics_table(result))
        written.append(path)
    if "summary" in cfg.emit:
        path = os.path.join(cfg.out, f"{cfg.label}_summary.json")
        scenarios.write_summary(path, result)
        written.append(path)
    summary = result.summary()
    summary["outputs"] = written
    return summary


def _job(cfg: RunConfig):
    try:
        return 0, execute(cfg)
    except MsdynError as exc:
        return EXIT_CODES.get(exc.category, 1), {"error": exc.category, "message": str(exc), "run": cfg.label}


def _configs(args):
    emit = tuple(k for k in EMIT_KINDS if not getattr(args, f"no_{k}"))
    if args.config:
        groups = [[p] for p in args.config] if args.jobs > 1 or args.separate else [args.config]
        cfgs = [load_config(g, args.scenario) for g in groups]
    elif args.scenario:
        if args.scenario == "custom":
            raise ConfigError("the custom scenario needs --config")
        cfgs = [RunConfig(scenarios.get_preset(args.scenario), args.scenario)]
    else:
        raise ConfigError("run needs --scenario or --config")
    out = []
    for cfg in cfgs:
        spec = cfg.scenario
        if args.steps is not None:
            if args.steps < 1:
                raise ConfigError("--steps must be positive")
            spec = spec.with_steps(args.steps)
        exponent = cfg.exponent if args.adiabatic_exponent is None else args.adiabatic_exponent
        emit_cfg = tuple(k for k in cfg.emit if k in emit)
        out.append(replace(cfg, scenario=spec, out=args.out, emit=emit_cfg, exponent=exponent))
    labels = [c.label for c in out]
    if len(set(labels)) != len(labels):
        out = [replace(c, label=f"{c.label}_{i + 1}") for i, c in enumerate(out)]
    return out


def cmd_run(args) -> int:
    try:
        cfgs = _configs(args)
    except MsdynError as exc:
        _error(exc.category, str(exc))
        return EXIT_CODES.get(exc.category, 1)
    if args.jobs > 1 and len(cfgs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_job, cfgs))
    else:
        outcomes = [_job(c) for c in cfgs]
    code = 0
    for status, payload in outcomes:
        if status:
            print(json.dumps(payload, sort_keys=True), file=sys.stderr)
        else:
            print(json.dumps(payload, indent=2, sort_keys=True))
        code = max(code, status)
    return code


def cmd_list(args) -> int:
    rows = scenarios.listing()
    if args.json:
        data = [{"name": n, "provenance": p, "description": d} for n, p, d in rows]
        print(json.dumps(data, indent=2))
    else:
        for name, prov, desc in rows:
            print(f"{name}: {prov}. {desc}")
    return 0


def _error(category, message):
    print(json.dumps({"error": category, "message": message}, sort_keys=True), file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msdyn", description="Morris-Shore dynamics of multilevel linkages.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a preset scenario or a config file")
    run.add_argument("--scenario", help="preset name (see 'list') or 'custom'")
    run.add_argument("--config", action="append", help="INI config; repeat to merge, or with --jobs/--separate to run each")
    run.add_argument("--out", default=".", help="output directory")
    run.add_argument("--steps", type=int, help="override the number of grid steps")
    run.add_argument("--adiabatic-exponent", type=float, help="exponent p of the two-state condition")
    run.add_argument("--jobs", type=int, default=1, help="parallel workers for several configs")
    run.add_argument("--separate", action="store_true", help="treat each --config as its own run")
    for kind in EMIT_KINDS:
        run.add_argument(f"--no-{kind}", action="store_true", help=f"skip the {kind} output")
    run.set_defaults(func=cmd_run)
    lst = sub.add_parser("list", help="list preset scenarios")
    lst.add_argument("--json", action="store_true", help="machine-readable listing")
    lst.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
