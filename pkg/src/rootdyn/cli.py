"""Command-line front end: plane rendering, reports, curves, verification.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O error.
Values can come from a flat ``key = value`` config file (--config); flags
take precedence.  The effective configuration is echoed to a ``.cfg``
sidecar next to each output file.  ROOTDYN_THREADS is the fallback for
--threads.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .fixedpoints import critical_points_b, critical_set_ank, fixed_points_ank, multiplier_and_class
from .operators import BehlParams, GeneralParams, reparam_a_of_b, reparam_b_of_a
from .orbits import EscapeConfig, detect_cycle
from .render import (
    GridSpec,
    Window,
    classification_summary,
    colorize,
    render_dynamical_plane,
    render_parameter_plane,
    summary_to_csv,
    write_grid,
    write_image,
)
from .stability import (
    StabilityRegionQuery,
    antenna_b_image,
    antenna_intervals,
    boundary_to_csv,
    boundary_to_json,
    region_z1_ank,
    region_zm1_ank,
    region_zpm_a,
    trace_boundary,
)
from .verify import run_checks

#: named window/resolution presets matching the published figures
PRESETS = {
    "fig-pparam-left": dict(command="param-plane", family="behl",
                            window="-50,10,-15,15", res="3001x1501"),
    "fig-pparam-right": dict(command="param-plane", family="general", n=4, k=1,
                             window="-6,6,-6,6", res="1501x1501"),
    "fig-planonuevo44": dict(command="param-plane", family="general", n=4, k=1,
                             window="-3.2,3.2,-3.2,3.2", res="1501x1501"),
    "fig-pparpar-e": dict(command="param-plane", family="general", n=3, k=5,
                          window="-70,70,-70,70", res="1501x1501"),
    "fig-dynam-a": dict(command="dyn-plane", a="3", n=4, k=1,
                        window="-1.1,1.1,-1.1,1.1", res="1501x1501"),
    "fig-dynam-small-basin": dict(command="dyn-plane", a="-10", n=3, k=5,
                                  window="-0.02,0.02,-0.02,0.02",
                                  res="601x601"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_complex(s):
    try:
        return complex(str(s).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError("cannot parse complex value %r" % s)


def _parse_window(s):
    parts = str(s).split(",")
    if len(parts) != 4:
        raise UsageError("--window needs x_min,x_max,y_min,y_max")
    try:
        return Window(*map(float, parts))
    except ValueError as exc:
        raise UsageError("bad --window: %s" % exc)


def _parse_res(s):
    try:
        w, h = str(s).lower().split("x")
        return GridSpec(int(w), int(h))
    except ValueError as exc:
        raise UsageError("bad --res (use WIDTHxHEIGHT): %s" % exc)


def build_parser():
    ap = _Parser(prog="rootdyn", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command")

    def common(p, windowed=True):
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output file path")
        if windowed:
            p.add_argument("--preset", choices=sorted(PRESETS))
            p.add_argument("--window", help="x_min,x_max,y_min,y_max")
            p.add_argument("--res", help="WIDTHxHEIGHT", default="301x301")
            p.add_argument("--max-iter", type=int, default=100)
            p.add_argument("--grid-out", help="also write the raw binary grid")
            p.add_argument("--summary-csv", help="write outcome counts as CSV")

    pp = sub.add_parser("param-plane", help="render a parameter plane")
    common(pp)
    pp.add_argument("--family", choices=["behl", "general"])
    pp.add_argument("--n", type=int, default=4)
    pp.add_argument("--k", type=int, default=1)

    dp = sub.add_parser("dyn-plane", help="render a dynamical plane")
    common(dp)
    dp.add_argument("--a", help="general-family parameter a")
    dp.add_argument("--b", help="raw-family parameter b")
    dp.add_argument("--n", type=int, default=4)
    dp.add_argument("--k", type=int, default=1)

    rp = sub.add_parser("report", help="fixed points, critical set, regions")
    common(rp, windowed=False)
    rp.add_argument("--a")
    rp.add_argument("--b")
    rp.add_argument("--n", type=int, default=4)
    rp.add_argument("--k", type=int, default=1)
    rp.add_argument("--json", action="store_true", help="print JSON")

    vp = sub.add_parser("verify", help="run the property-check suite")
    common(vp, windowed=False)
    vp.add_argument("--only", help="substring filter on check names")
    vp.add_argument("--inject-reparam-error", type=float, default=0.0,
                    help=argparse.SUPPRESS)

    cp = sub.add_parser("curves", help="trace stability-region boundaries")
    common(cp, windowed=False)
    cp.add_argument("--point", choices=["z1", "zm1", "zpm"], required=True)
    cp.add_argument("--family", choices=["behl", "general"], required=True)
    cp.add_argument("--n", type=int, default=4)
    cp.add_argument("--k", type=int, default=1)
    cp.add_argument("--samples", type=int, default=256)
    return ap


def _load_config(path):
    vals = {}
    try:
        with open(path) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError("bad config line %r" % line)
                key, _, val = line.partition("=")
                vals[key.strip().replace("-", "_")] = val.strip()
        return vals
    except OSError as exc:
        raise UsageError("cannot read config %s: %s" % (path, exc))


def _merge(args, parser_defaults):
    """Layer preset < config file < explicit flags into the namespace."""
    layers = {}
    preset = getattr(args, "preset", None)
    if preset:
        layers.update({k.replace("-", "_"): v for k, v in
                       PRESETS[preset].items() if k != "command"})
    if args.config:
        layers.update(_load_config(args.config))
    for key, val in layers.items():
        if key not in vars(args):
            raise UsageError("unknown config key %r" % key)
        if vars(args)[key] == parser_defaults.get(key):  # flag not given
            default = parser_defaults.get(key)
            if isinstance(default, int) and not isinstance(default, bool):
                val = int(val)
            setattr(args, key, val)
    return args


def _threads(args):
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("ROOTDYN_THREADS")
    return max(1, int(env)) if env else 1


def _sidecar(path, args):
    skip = {"config", "command"}
    lines = ["%s = %s" % (k.replace("_", "-"), v)
             for k, v in sorted(vars(args).items())
             if k not in skip and v is not None]
    with open(str(path) + ".cfg", "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _emit_plane(plane, args, mode):
    out = args.out or ("plane.png" if mode == "parameter" else "dyn.png")
    try:
        write_image(colorize(plane, mode), out)
        _sidecar(out, args)
        if args.grid_out:
            write_grid(plane, args.grid_out)
            _sidecar(args.grid_out, args)
        if args.summary_csv:
            summary_to_csv(plane, args.summary_csv)
    except OSError as exc:
        print("I/O error: %s" % exc, file=sys.stderr)
        return 3
    for row in classification_summary(plane):
        print("%-12s %8d  %.4f" % (row["outcome"], row["count"], row["fraction"]))
    print("wrote %s" % out)
    return 0


def cmd_param_plane(args):
    if not args.family:
        raise UsageError("--family is required (behl or general)")
    window = _parse_window(args.window or "-3.2,3.2,-3.2,3.2")
    grid = _parse_res(args.res)
    cfg = EscapeConfig(max_iter=args.max_iter)
    plane = render_parameter_plane(args.family, window, grid, cfg,
                                   threads=_threads(args), nk=(args.n, args.k))
    return _emit_plane(plane, args, "parameter")


def cmd_dyn_plane(args):
    p = _pick_params(args)
    window = _parse_window(args.window or "-1.5,1.5,-1.5,1.5")
    grid = _parse_res(args.res)
    cfg = EscapeConfig(max_iter=args.max_iter)
    plane = render_dynamical_plane(p, window, grid, cfg, threads=_threads(args))
    return _emit_plane(plane, args, "dynamical")


def _pick_params(args):
    if getattr(args, "b", None) is not None:
        return BehlParams(_parse_complex(args.b))
    if getattr(args, "a", None) is not None:
        return GeneralParams(_parse_complex(args.a), args.n, args.k)
    raise UsageError("one of --a or --b is required")


def cmd_report(args):
    p = _pick_params(args)
    doc = {"degenerate": p.degenerate}
    if isinstance(p, BehlParams):
        doc["family"] = "behl"
        doc["b"] = _cstr(p.b)
        if not p.degenerate:
            a = reparam_a_of_b(p.b)
            doc["a_of_b"] = _cstr(a)
            p_gen = GeneralParams(a, 4, 1)
        else:
            doc["banner"] = "degenerate parameter: reduced monomial operator"
            p_gen = None
        if not p.degenerate and p.b * p.b - 6 * p.b - 11 != 0:
            cp, cm = critical_points_b(p.b)
            doc["free_critical"] = [_cstr(cp), _cstr(cm)]
    else:
        doc["family"] = "general"
        doc["a"] = _cstr(p.a)
        doc["n"], doc["k"] = p.n, p.k
        p_gen = p
        if p.degenerate:
            doc["banner"] = "degenerate parameter: reduced monomial operator"
        bs = reparam_b_of_a(p.a) if (p.n, p.k) == (4, 1) else None
        if bs:
            doc["b_of_a"] = [_cstr(b) for b in bs]
        cs = critical_set_ank(p)
        doc["critical_set"] = {
            "fixed": [[_cstr(c.to_complex()), m] for c, m in cs.fixed_critical],
            "preimage": [[_cstr(c.to_complex()), m] for c, m in cs.preimage_critical],
            "free": [_cstr(c) for c in cs.free] if cs.free else None,
            "monomial": cs.monomial,
        }
    if p_gen is not None:
        fps = fixed_points_ank(p_gen)
        doc["fixed_points"] = [{
            "z": _cstr(r.location.to_complex()),
            "multiplier": _cstr(r.multiplier),
            "stability": r.stability,
            "strange": r.strange,
            "multiplicity": r.multiplicity,
        } for r in fps]
        a = p_gen.a
        doc["regions"] = {"z1": region_z1_ank(a, p_gen.n, p_gen.k),
                          "zm1": region_zm1_ank(a, p_gen.n, p_gen.k)}
        if (p_gen.n, p_gen.k) == (4, 1):
            doc["regions"]["zpm"] = region_zpm_a(a)
        if p_gen.n != p_gen.k and a.imag == 0:
            iv = antenna_intervals(p_gen.n, p_gen.k).intervals
            doc["antenna"] = any(lo <= a.real <= hi for lo, hi in iv)
    if args.json:
        text = json.dumps(doc, indent=1)
    else:
        text = "\n".join(_pretty(doc))
    print(text)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
            _sidecar(args.out, args)
        except OSError as exc:
            print("I/O error: %s" % exc, file=sys.stderr)
            return 3
    return 0


def _cstr(z):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return "inf"
    return "%.12g%+.12gj" % (z.real, z.imag)


def _pretty(doc, indent=0):
    pad = "  " * indent
    for key, val in doc.items():
        if isinstance(val, dict):
            yield "%s%s:" % (pad, key)
            yield from _pretty(val, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            yield "%s%s:" % (pad, key)
            for item in val:
                yield pad + "  - " + ", ".join(
                    "%s=%s" % kv for kv in item.items())
        else:
            yield "%s%s: %s" % (pad, key, val)


def cmd_verify(args):
    results = run_checks(only=args.only, seed=args.seed or 12345,
                         inject_reparam_error=args.inject_reparam_error)
    if not results:
        raise UsageError("no checks match --only %r" % args.only)
    failed = 0
    for r in results:
        print("%-20s %s  %s" % (r["check"],
                                "PASS" if r["passed"] else "FAIL",
                                r["detail"]))
        failed += not r["passed"]
    print("%d/%d checks passed" % (len(results) - failed, len(results)))
    return 2 if failed else 0


def cmd_curves(args):
    par = "b_behl" if args.family == "behl" else "a_general"
    try:
        query = StabilityRegionQuery(args.point, par, args.n, args.k)
    except ValueError as exc:
        raise UsageError(str(exc))
    comps = trace_boundary(query, samples=args.samples)
    out = args.out or ("curve_%s_%s.csv" % (args.point, args.family))
    try:
        if out.endswith(".json"):
            boundary_to_json(comps, query, out)
        else:
            boundary_to_csv(comps, out)
        _sidecar(out, args)
    except OSError as exc:
        print("I/O error: %s" % exc, file=sys.stderr)
        return 3
    print("traced %d component(s), %d points total -> %s"
          % (len(comps), sum(len(c) for c in comps), out))
    return 0


COMMANDS = {
    "param-plane": cmd_param_plane,
    "dyn-plane": cmd_dyn_plane,
    "report": cmd_report,
    "verify": cmd_verify,
    "curves": cmd_curves,
}


#: flags whose values may legitimately start with a minus sign
_NEGATIVE_OK = {"--window", "--a", "--b", "--inject-reparam-error"}


def _preprocess(argv):
    """Join '--flag -value' into '--flag=-value' so argparse accepts it."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _NEGATIVE_OK:
            val = next(it, None)
            if val is None:
                out.append(tok)
            else:
                out.append("%s=%s" % (tok, val))
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(_preprocess(sys.argv[1:] if argv is None
                                             else list(argv)))
        if args.command is None:
            raise UsageError("a command is required (see --help)")
        defaults = {a.dest: a.default
                    for g in parser._subparsers._group_actions
                    for a in g.choices[args.command]._actions}
        args = _merge(args, defaults)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    except ValueError as exc:
        print("invalid value: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("I/O error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
