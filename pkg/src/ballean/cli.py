"""Command line driver.

Exit status: 0 when every check passes, 1 when a mathematical check fails
(the report carries the violations), 2 for configuration or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from . import asdim, compat, selectors
from .catalog import theorem1_catalog
from .config import (
    Space,
    _get,
    build_space,
    load_config,
    parse_point_set,
    resolve_entourage,
)
from .errors import BalleanError, ConfigError
from .ground import format_point
from .report import canonical_dumps, make_report, render_text
from .structures import exp_related, phi_admissible

COMMANDS = {
    "space": ("validate",),
    "compat": ("check", "witness", "theorem1"),
    "asdim": ("cover", "check", "discrete-zero"),
    "selector": ("build", "check", "min2"),
    "example3": ("verify",),
    "hyper": ("related",),
}


def _space(config: dict) -> Space:
    space = build_space(config)
    _CURRENT["space"] = space
    return space


_CURRENT: dict = {}


def _restore_labels(value, back: dict):
    """Rewrite point strings of a permuted-order space back to the user's labels."""
    if isinstance(value, dict):
        return {k: _restore_labels(v, back) for k, v in value.items()}
    if isinstance(value, list):
        return [_restore_labels(v, back) for v in value]
    if isinstance(value, str) and value in back:
        return back[value]
    return value


def _section(config: dict, key: str) -> dict:
    value = config.get(key, {})
    if not isinstance(value, dict):
        raise ConfigError(key, "expected an object")
    return value


# -- space ------------------------------------------------------------------------


def cmd_space_validate(config, args):
    space = _space(config)
    fam = space.family
    axioms = fam.verify_axioms()
    results = {"kind": space.kind, "axioms": axioms.to_json()}
    passed = axioms.passed
    if space.kind == "example3":
        from .example3 import certify_local_convexity, symbolic_omega_components

        checks = certify_local_convexity(fam)
        results["local_convexity"] = [
            {"index": c.index, "convex_balls": c.convex, "hull_dominated_by": c.hull_dominated_by}
            for c in checks
        ]
        results["small_entourage_components"] = [c.to_json() for c in symbolic_omega_components(fam.small)]
        passed = passed and all(c.convex and c.hull_dominated_by is not None for c in checks)
    else:
        results["ground_size"] = len(space.ground)
    if space.bornology is not None and space.kind == "discrete":
        problems = space.bornology.problems()
        results["bornology_problems"] = [[str(v) for v in p] for p in problems]
        passed = passed and not problems
    if space.phi is not None:
        sweep = _section(config, "space").get("admissible", {})
        top = sweep.get("max", space.ground.points[-1] // 8)
        lo = space.ground.points[0]
        reports = [
            phi_admissible(space.ground, space.phi, a, b, args.margin)
            for a in range(lo, top + 1)
            for b in range(a, top + 1)
        ]
        bad = [r for r in reports if not r.passed]
        results["admissibility"] = {
            "intervals_checked": len(reports),
            "range": [str(lo), str(top)],
            "violations": [
                {"interval": [str(r.a), str(r.b)], "condition": r.condition, "witness": format_point(r.witness)}
                for r in bad[:20]
            ],
            "window_limited": space.ground.ideal_extension != "none",
        }
        passed = passed and not bad
    return results, passed


# -- compat -----------------------------------------------------------------------


def _variants(sec: dict, default) -> list:
    v = sec.get("variant", default)
    vs = [v] if isinstance(v, str) else list(v)
    for x in vs:
        if x not in compat.VARIANTS:
            raise ConfigError("compat.variant", f"unknown variant {x!r}")
    return vs


def _require_finite(space: Space, command: str):
    if space.kind == "example3":
        raise ConfigError("space.kind", f"`{command}` needs a finite ground; use `example3 verify`")


def cmd_compat_check(config, args):
    space = _space(config)
    _require_finite(space, "compat check")
    sec = _section(config, "compat")
    fam = space.family
    targets = (
        [("entourage", resolve_entourage(space, sec["entourage"], "compat.entourage"))]
        if "entourage" in sec
        else [(k, fam.gen(k)) for k in fam.indices]
    )
    witness_ref = sec.get("witness", fam.indices[-1])
    witness = resolve_entourage(space, witness_ref, "compat.witness")
    results = []
    for label, ent in targets:
        for v in _variants(sec, "i"):
            rep = compat.check_condition(v, ent, witness)
            results.append({**rep.to_json(), "entourage": label, "witness": witness_ref})
    return {"checks": results}, all(r["passed"] for r in results)


def cmd_compat_witness(config, args):
    space = _space(config)
    _require_finite(space, "compat witness")
    sec = _section(config, "compat")
    fam = space.family
    targets = (
        [("entourage", resolve_entourage(space, sec["entourage"], "compat.entourage"))]
        if "entourage" in sec
        else [(k, fam.gen(k)) for k in fam.indices]
    )
    results = []
    for label, ent in targets:
        for v in _variants(sec, list(compat.VARIANTS)):
            rep = compat.find_witness(v, ent, fam)
            results.append({**rep.to_json(), "entourage": label})
    return {"witnesses": results}, all(r["passed"] for r in results)


def cmd_compat_theorem1(config, args):
    if "catalog" in config:
        sec = _section(config, "catalog")
        seed = _get(sec, "seed", "catalog", int, 0)
        count = _get(sec, "count", "catalog", int, 120)
        rows = []
        for inst in theorem1_catalog(seed, count):
            rep = compat.verify_theorem1(inst.family())
            rows.append(
                {
                    "id": inst.ident,
                    "size": inst.size,
                    "scrambled": inst.scrambled,
                    "compatible": rep.compatible,
                    "locally_convex": rep.locally_convex,
                    "consistent": rep.consistent,
                }
            )
        mismatches = [r["id"] for r in rows if not r["consistent"]]
        results = {
            "instances": len(rows),
            "compatible_instances": sum(r["compatible"] for r in rows),
            "mismatches": mismatches,
            "rows": rows,
        }
        return results, not mismatches
    space = _space(config)
    _require_finite(space, "compat theorem1")
    rep = compat.verify_theorem1(space.family)
    return rep.to_json(), rep.consistent


# -- asdim ------------------------------------------------------------------------


def _check_results(cert, check):
    return {
        "certificate": cert.to_json(),
        "check": check.to_json(),
        "colors": cert.n_colors,
    }


def cmd_asdim_cover(config, args):
    space = _space(config)
    _require_finite(space, "asdim cover")
    sec = _section(config, "asdim")
    ent = resolve_entourage(space, sec.get("entourage", space.family.indices[0]), "asdim.entourage")
    norm = asdim.normalize(ent)
    centres = None
    if "centres" in sec:
        centres = parse_point_set(space, sec["centres"], "asdim.centres")
    cert = asdim.theorem2_cover(norm, centres)
    check = asdim.check_cover(cert, limit=20)
    results = _check_results(cert, check)
    results["normalized"] = norm != ent
    return results, check.passed and cert.n_colors <= 2


def cmd_asdim_check(config, args):
    if not args.cert:
        raise ConfigError("--cert", "asdim check needs --cert <file>")
    data = load_config(args.cert)
    if "results" in data and "certificate" in data.get("results", {}):
        data = data["results"]["certificate"]
    try:
        cert = asdim.CoverCertificate.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(str(args.cert), f"malformed certificate ({exc})") from None
    check = asdim.check_cover(cert, limit=20)
    return {"check": check.to_json(), "colors": cert.n_colors}, check.passed


def cmd_asdim_discrete_zero(config, args):
    space = _space(config)
    _require_finite(space, "asdim discrete-zero")
    sec = _section(config, "asdim")
    bounded = parse_point_set(space, sec.get("bounded", []), "asdim.bounded")
    from .relations import Entourage

    ent = Entourage.discrete(space.ground, bounded)
    cert = asdim.discrete_zero_cover(ent, bounded)
    check = asdim.check_cover(cert, limit=20)
    return _check_results(cert, check), check.passed and cert.n_colors == 1


# -- selectors --------------------------------------------------------------------


def _family(space: Space, spec, where: str) -> list:
    g = space.ground
    parts = spec if isinstance(spec, list) and spec and isinstance(spec[0], dict) else [spec]
    out, seen = [], set()
    for i, part in enumerate(parts):
        loc = f"{where}[{i}]"
        if not isinstance(part, dict):
            raise ConfigError(loc, "expected a family description object")
        if part.get("intervals"):
            sets = selectors.all_intervals(g)
        elif "sets" in part:
            sets = [parse_point_set(space, s, f"{loc}.sets") for s in _get(part, "sets", loc, list)]
        elif "subsets" in part:
            sub = part["subsets"]
            within = parse_point_set(space, sub.get("within", list(g.points)), f"{loc}.subsets.within")
            if len(within) > 16:
                raise ConfigError(f"{loc}.subsets.within", "at most 16 points")
            sets = selectors.all_subsets(g, sub.get("max_size"), within)
        else:
            raise ConfigError(loc, "expected 'intervals', 'sets' or 'subsets'")
        for s in sets:
            if not s:
                raise ConfigError(loc, "family members must be non-empty")
            if s not in seen:
                seen.add(s)
                out.append(s)
    return out


def _selector_table(config, space):
    sec = _section(config, "selector")
    fam = _family(space, sec.get("family", {"intervals": True}), "selector.family")
    end_ref = sec.get("end_entourage", space.family.indices[0])
    end = resolve_entourage(space, end_ref, "selector.end_entourage")
    return selectors.build_selector(fam, end), end, sec


def cmd_selector_build(config, args):
    space = _space(config)
    _require_finite(space, "selector build")
    table, end, _ = _selector_table(config, space)
    ends = sum(1 for a, c in zip(table.family, table.choice) if c != max(a))
    rows = [
        {"set": [format_point(p) for p in sorted(a)], "choice": format_point(c)}
        for a, c in zip(table.family, table.choice)
    ]
    return {"sets": len(rows), "choices_below_max": ends, "table": rows}, True


def cmd_selector_check(config, args):
    space = _space(config)
    _require_finite(space, "selector check")
    table, end, sec = _selector_table(config, space)
    out = []
    for ref in sec.get("H", list(space.family.indices)):
        h = resolve_entourage(space, ref, "selector.H")
        rep = selectors.check_macro_uniform(table, h, selectors.theorem3_modulus(end, h))
        out.append({"H": ref, **rep.to_json()})
    return {"sets": len(table), "checks": out}, all(r["passed"] for r in out)


def cmd_selector_min2(config, args):
    space = _space(config)
    _require_finite(space, "selector min2")
    sec = _section(config, "selector")
    within = None
    if "pairs_within" in sec:
        within = parse_point_set(space, sec["pairs_within"], "selector.pairs_within")
    res = selectors.min_selector(space.family, within=within)
    data = res.to_json()
    return data, data["passed"]


# -- dyadic space / hyperballean ----------------------------------------------------


def cmd_example3_verify(config, args):
    from .example3 import certify_no_interval_base
    from .intervalsets import interval_ball_escape_witness

    max_n = args.max_n if args.max_n is not None else 10
    if max_n < 2:
        raise ConfigError("--max-n", "must be at least 2")
    cutoff = 12
    if config and "space" in config:
        cutoff = _get(_section(config, "space"), "cutoff", "space", int, 12)
    cutoff = max(cutoff, max_n + 2)
    escapes = [interval_ball_escape_witness(n, cutoff).to_json() for n in range(2, max_n + 2)]
    steps = [certify_no_interval_base(m, cutoff, max_n + 1).to_json() for m in range(2, max_n + 1)]
    passed = all(e["ok"] for e in escapes) and all(s["ok"] for s in steps)
    return {"cutoff": cutoff, "escape_witnesses": escapes, "no_interval_base": steps}, passed


def cmd_hyper_related(config, args):
    space = _space(config)
    _require_finite(space, "hyper related")
    sec = _section(config, "hyper")
    ent = resolve_entourage(space, sec.get("entourage", space.family.indices[0]), "hyper.entourage")
    a = parse_point_set(space, _get(sec, "A", "hyper"), "hyper.A")
    b = parse_point_set(space, _get(sec, "B", "hyper"), "hyper.B")
    related = exp_related(ent, a, b)
    return {
        "A": [format_point(p) for p in sorted(a)],
        "B": [format_point(p) for p in sorted(b)],
        "related": related,
    }, related


HANDLERS = {
    ("space", "validate"): cmd_space_validate,
    ("compat", "check"): cmd_compat_check,
    ("compat", "witness"): cmd_compat_witness,
    ("compat", "theorem1"): cmd_compat_theorem1,
    ("asdim", "cover"): cmd_asdim_cover,
    ("asdim", "check"): cmd_asdim_check,
    ("asdim", "discrete-zero"): cmd_asdim_discrete_zero,
    ("selector", "build"): cmd_selector_build,
    ("selector", "check"): cmd_selector_check,
    ("selector", "min2"): cmd_selector_min2,
    ("example3", "verify"): cmd_example3_verify,
    ("hyper", "related"): cmd_hyper_related,
}

NO_CONFIG = {("asdim", "check"), ("example3", "verify")}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ballean", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)
    for group, actions in COMMANDS.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="action", required=True)
        for action in actions:
            p = sub.add_parser(action)
            p.add_argument("--config", type=Path)
            p.add_argument("--out", type=Path)
            p.add_argument("--format", choices=("json", "text"), default="json")
            p.add_argument("--margin", type=int, default=0)
            p.add_argument("--max-n", dest="max_n", type=int)
            p.add_argument("--cert", type=Path)
    return parser


def run(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    key = (args.group, args.action)
    _CURRENT.clear()
    command = " ".join(key)
    try:
        if args.config is None and key not in NO_CONFIG:
            raise ConfigError("--config", "this command needs --config <file>")
        config = load_config(args.config) if args.config is not None else None
        results, passed = HANDLERS[key](config or {}, args)
    except ConfigError as exc:
        print(f"ballean: {exc}", file=sys.stderr)
        return 2
    except BalleanError as exc:
        print(f"ballean: {command}: {exc}", file=sys.stderr)
        return 2
    space = _CURRENT.pop("space", None)
    if space is not None and any(k != v for k, v in space.relabel.items()):
        back = {format_point(v): format_point(k) for k, v in space.relabel.items()}
        results = _restore_labels(results, back)
    report = make_report(command, config, results, passed)
    text = render_text(report) if args.format == "text" else canonical_dumps(report)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
