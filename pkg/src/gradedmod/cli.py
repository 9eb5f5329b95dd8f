"""Command-line interface: workspace subcommands and the scenario runner.

Workspaces are loaded from repeatable ``--input`` files; names in
subcommand arguments resolve first in the loaded workspaces, then among
the built-in named instances (``z4_to_z2``, ``frobenius``,
``frobenius_ungraded``, ``d25e``, ``d25e_z3``, ``zgraded``; each instance
also exposes ``<name>.R``, ``<name>.S``, ``<name>.RR``, ``<name>.SS``,
``<name>.psi`` and one shifted copy ``<name>.SS_<g>`` of S per support
degree g).  Reports are deterministic: degrees sorted lexicographically,
matrices row-major, flags alphabetical.  Exit codes: 0 success, 1 failed
assertion, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analyze, corpus, scenarios
from .graded import (GradedError, GradedModule, GradedMorphism,
                     coarsen_module, ring_as_module, shift)
from .functors import coextend, extend, hom_graded, restrict, tensor
from .textio import ParseError, ValidationError, Workspace, parse_workspace

FORMAT_VERSION = "1"

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_INPUT = 2


class CliError(Exception):
    """Input error: unknown name, unreadable file, malformed arguments."""


# ---------------------------------------------------------------------------
# name resolution


def _corpus_env() -> dict:
    env = {}
    for name, inst in corpus.named_instances().items():
        env[name] = inst["h"]
        env[name + ".R"] = inst["ring_r"]
        env[name + ".S"] = inst["ring_s"]
        env[name + ".RR"] = ring_as_module(inst["ring_r"])
        s_mod = ring_as_module(inst["ring_s"])
        env[name + ".SS"] = s_mod
        env[name + ".psi"] = inst["psi"]
        grp = inst["ring_s"].group
        for g in sorted(inst["ring_s"].components):
            if any(g):
                label = "_".join(str(x) for x in g)
                env[f"{name}.SS_{label}"] = shift(s_mod, grp.neg(g))
    return env


def build_environment(inputs) -> dict:
    env = _corpus_env()
    merged = Workspace()
    for path in inputs:
        try:
            with open(path) as f:
                text = f.read()
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc}")
        parse_workspace(text, merged)
    env.update(scenarios.build_env(merged))
    return env


def _get(env, name, what):
    if name not in env:
        raise CliError(f"unknown {what} {name!r}")
    return env[name]


# ---------------------------------------------------------------------------
# report rendering


def _fmt_deg(deg) -> str:
    return "(" + ",".join(str(x) for x in deg) + ")"


def _fmt_vec(vec) -> str:
    return "[" + " ".join(str(x) for x in vec) + "]"


def _fmt_matrix(mat) -> str:
    if not mat:
        return "[]"
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in mat) + "]"


def _module_summary(module: GradedModule) -> dict:
    comps = {}
    for d in sorted(module.components):
        c = module.components[d]
        comps[_fmt_deg(d)] = {"generators": c.ngens,
                              "relations": [list(r) for r in c.rels]}
    return {"cardinality": module.cardinality(),
            "components": comps,
            "modulus": module.ring.n,
            "support": [_fmt_deg(d) for d in sorted(module.components)]}


def _witness_value(value):
    if value is None:
        return None
    if isinstance(value, GradedMorphism):
        return {_fmt_deg(d): _fmt_matrix(value.maps[d])
                for d in sorted(value.maps)}
    if isinstance(value, tuple) and len(value) == 2 \
            and isinstance(value[0], tuple):
        deg, vec = value
        return {"degree": _fmt_deg(deg), "element": _fmt_vec(vec)}
    if isinstance(value, dict):
        return {_fmt_deg(d): list(v) if isinstance(v, tuple) else v
                for d, v in sorted(value.items())}
    if isinstance(value, (list, tuple)):
        return [_fmt_deg(d) for d in value]
    return value


def _analysis_payload(report) -> dict:
    return {"flags": {k: report.flags[k] for k in sorted(report.flags)},
            "witnesses": {k: _witness_value(report.witnesses[k])
                          for k in sorted(report.witnesses)}}


def _morphism_payload(u: GradedMorphism) -> dict:
    report = analyze.analyze_morphism(u)
    degs = sorted(set(u.source.components) | set(u.target.components))
    return {"analysis": _analysis_payload(report),
            "matrices": {_fmt_deg(d): _fmt_matrix(u.matrix(d))
                         for d in degs},
            "source": _module_summary(u.source),
            "target": _module_summary(u.target)}


def _render_text(payload, indent=0) -> list[str]:
    lines = []
    pad = "  " * indent
    if isinstance(payload, dict):
        for key in payload:
            value = payload[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}-")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(value)}")
    else:
        lines.append(f"{pad}{_scalar(payload)}")
    return lines


def _scalar(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[]"
    if isinstance(value, dict):
        return "{}"
    return str(value)


def emit_report(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    return "\n".join(_render_text(payload)) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_validate(args, env):
    merged = Workspace()
    for path in args.input:
        with open(path) as f:
            parse_workspace(f.read(), merged)
    env = scenarios.build_env(merged)
    results = scenarios.run_checks(merged, env)
    checks = []
    for res in results:
        entry = {"line": res.line, "check": res.text, "ok": res.ok}
        if not res.ok:
            entry["diff"] = f"expected {res.expected}, got {res.actual}"
        checks.append(entry)
    ok = all(res.ok for res in results)
    payload = {
        "modulus": merged.n,
        "objects": {
            "groups": sorted(merged.groups),
            "epimorphisms": sorted(merged.epis),
            "rings": sorted(merged.rings),
            "ring_morphisms": sorted(merged.ringhoms),
            "modules": sorted(merged.modules),
            "morphisms": sorted(merged.morphisms),
            "derived": sorted(name for _, name, _ in merged.derivations),
        },
        "checks": checks,
        "status": "ok" if ok else "failed",
    }
    return payload, EXIT_OK if ok else EXIT_ASSERTION


def _module_report(module, subject):
    return {"subject": subject,
            "module": _module_summary(module),
            "analysis": _analysis_payload(analyze.analyze_module(module))}


def _cmd_tensor(args, env):
    m = _get(env, args.a, "module")
    n = _get(env, args.b, "module")
    result = tensor(m, n).module
    return _module_report(result, f"tensor {args.a} {args.b}"), EXIT_OK


def _cmd_hom(args, env):
    m = _get(env, args.a, "module")
    n = _get(env, args.b, "module")
    result = hom_graded(m, n).module
    return _module_report(result, f"hom {args.a} {args.b}"), EXIT_OK


def _cmd_coarsen(args, env):
    m = _get(env, args.module, "module")
    psi = _get(env, args.psi, "group epimorphism")
    result = coarsen_module(m, psi)
    return _module_report(result,
                          f"coarsen {args.module} --psi {args.psi}"), EXIT_OK


def _cmd_change_of_ring(args, env):
    h = _get(env, args.h, "ring morphism")
    m = _get(env, args.module, "module")
    if args.cmd == "restrict":
        result = restrict(h, m)
    elif args.cmd == "extend":
        result = extend(h, m).module
    else:
        result = coextend(h, m).module
    return _module_report(result,
                          f"{args.cmd} --h {args.h} {args.module}"), EXIT_OK


def _cmd_canon(args, env):
    tokens = [args.name] + args.args
    try:
        cmap, used = scenarios.build_canon(env, tokens, 0)
    except scenarios.ScenarioError as exc:
        raise CliError(str(exc))
    except IndexError:
        raise CliError(f"canonical map {args.name!r}: missing arguments")
    if used != len(tokens):
        raise CliError(f"canonical map {args.name!r}: too many arguments")
    payload = {"subject": "canon " + " ".join(tokens),
               "canonical_map": cmap.name,
               "has_inverse": cmap.inverse is not None}
    payload.update(_morphism_payload(cmap.morphism))
    return payload, EXIT_OK


def _cmd_analyze(args, env):
    obj = _get(env, args.name, "module or morphism")
    if isinstance(obj, GradedModule):
        return _module_report(obj, f"analyze {args.name}"), EXIT_OK
    if isinstance(obj, GradedMorphism):
        payload = {"subject": f"analyze {args.name}"}
        payload.update(_morphism_payload(obj))
        return payload, EXIT_OK
    raise CliError(f"{args.name!r} is not a module or morphism")


def _cmd_epitest(args, env):
    h = _get(env, args.h, "ring morphism")
    verdict = analyze.is_ring_epimorphism(h)
    return {"subject": f"epitest --h {args.h}",
            "ring epimorphism": verdict}, EXIT_OK


def _cmd_battery(args, env):
    h = _get(env, args.h, "ring morphism")
    family = [_get(env, name, "module") for name in args.family]
    report = analyze.d70_battery(h, family)
    return {"subject": f"battery --h {args.h}",
            "decisive": report.decisive,
            "family": list(args.family),
            "verdicts": {k: report.verdicts[k]
                         for k in ("i", "ii", "iii", "iv", "v", "vi",
                                   "vii")}}, EXIT_OK


def _cmd_scenario(args, env):
    if args.action == "list":
        return {"scenarios": sorted(scenarios.available_scenarios())}, EXIT_OK
    try:
        report = scenarios.run_scenario(args.name)
    except scenarios.ScenarioError as exc:
        raise CliError(str(exc))
    checks = []
    for c in report.checks:
        entry = {"check": c.text, "expected": c.expected,
                 "actual": c.actual,
                 "status": "pass" if c.ok else "fail"}
        if c.tag:
            entry["tag"] = c.tag
        if not c.ok:
            entry["diff"] = f"expected {c.expected}, got {c.actual}"
        checks.append(entry)
    payload = {"scenario": report.name,
               "status": "pass" if report.ok else "fail",
               "checks": checks}
    return payload, EXIT_OK if report.ok else EXIT_ASSERTION


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append",
                        default=argparse.SUPPRESS, metavar="FILE",
                        help="workspace file (repeatable)")
    common.add_argument("--format", choices=("text", "json"),
                        default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized corpus generation")
    parser = argparse.ArgumentParser(
        prog="gradedmod", parents=[common],
        description="Exact change-of-ring calculus for finitely supported "
                    "graded modules over Z/nZ.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    add_parser("validate", help="parse and validate all inputs")

    p = add_parser("tensor", help="graded tensor product of two modules")
    p.add_argument("a")
    p.add_argument("b")
    p = add_parser("hom", help="graded Hom module")
    p.add_argument("a")
    p.add_argument("b")

    p = add_parser("coarsen", help="coarsen a module along psi")
    p.add_argument("module")
    p.add_argument("--psi", required=True)

    for name, desc in (("restrict", "scalar restriction h_*"),
                       ("extend", "scalar extension h^*"),
                       ("coextend", "scalar coextension")):
        p = add_parser(name, help=desc)
        p.add_argument("--h", required=True)
        p.add_argument("module")

    p = add_parser("canon", help="construct and analyze a canonical map")
    p.add_argument("name", help="one of: " + ", ".join(
        sorted(scenarios.CANON_SPECS)))
    p.add_argument("args", nargs="*")

    p = add_parser("analyze", help="analyze a named module or morphism")
    p.add_argument("name")

    p = add_parser("epitest", help="decide ring epimorphism")
    p.add_argument("--h", required=True)

    p = add_parser("battery", help="the seven-statement battery")
    p.add_argument("--h", required=True)
    p.add_argument("--family", nargs="+", required=True)

    p = add_parser("scenario", help="run or list shipped scenarios")
    scsub = p.add_subparsers(dest="action", required=True)
    scsub.add_parser("list", parents=[common])
    pr = scsub.add_parser("run", parents=[common])
    pr.add_argument("name")
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "tensor": _cmd_tensor,
    "hom": _cmd_hom,
    "coarsen": _cmd_coarsen,
    "restrict": _cmd_change_of_ring,
    "extend": _cmd_change_of_ring,
    "coextend": _cmd_change_of_ring,
    "canon": _cmd_canon,
    "analyze": _cmd_analyze,
    "epitest": _cmd_epitest,
    "battery": _cmd_battery,
    "scenario": _cmd_scenario,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # the global flags are SUPPRESS-defaulted so that values given before
    # the subcommand survive subparser parsing; fill the defaults here
    args.input = getattr(args, "input", None) or []
    args.format = getattr(args, "format", "text")
    args.seed = getattr(args, "seed", 0)
    try:
        env = build_environment(args.input)
        payload, code = _HANDLERS[args.cmd](args, env)
    except (ParseError, ValidationError, CliError, GradedError,
            analyze.AnalyzeError) as exc:
        message = f"error: {exc}"
        if args.format == "json":
            sys.stdout.write(json.dumps(
                {"format_version": FORMAT_VERSION, "error": str(exc)},
                indent=2) + "\n")
        else:
            sys.stdout.write(message + "\n")
        return EXIT_INPUT
    report = {"format_version": FORMAT_VERSION, "command": args.cmd,
              "seed": args.seed}
    report.update(payload)
    sys.stdout.write(emit_report(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
