"""Space configurations: JSON documents that build a ground and a generator family.

Every error is raised as :class:`ConfigError` carrying the dotted location
of the offending field.  Supported ``space.kind`` values:

``int_window``  ``lo``, ``hi``, ``generators`` (metric radii ``1..generators``)
``nat_window``  ``hi``, optional ``lo``, ``generators``
``discrete``    ``lo``, ``hi``, optional ``extension``, ``bornology``
                (``{"intervals": [[a, b], ...]}`` or ``{"centre": c, "radii": [...]}``)
``phi``         ``hi``, ``phi`` (``p``, ``q``, ``r``, ``s``, optional ``overrides``),
                ``generators`` (powers of the symmetrised ``E_φ``)
``example3``    ``cutoff``
``explicit``    ``points``, optional ``order`` (points listed in their new
                increasing order), ``generators`` (list of ball maps)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .errors import BalleanError, ConfigError
from .ground import OrderedGround, as_point
from .relations import Entourage
from .structures import (
    Bornology,
    GeneratorFamily,
    PhiSpec,
    discrete_from_bornology,
    metric_family,
    phi_family,
)

KINDS = ("int_window", "nat_window", "discrete", "phi", "example3", "explicit")


@dataclass
class Space:
    kind: str
    ground: Any  # OrderedGround, or a RationalIntervalSet for example3
    family: GeneratorFamily
    bornology: Optional[Bornology] = None
    phi: Optional[PhiSpec] = None
    relabel: dict = field(default_factory=dict)  # original point -> order coordinate


def load_config(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(str(path), f"cannot read file ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    if not isinstance(data, dict):
        raise ConfigError("$", "top level must be an object")
    return data


def _get(obj: dict, key: str, where: str, kind=None, default=...):
    if not isinstance(obj, dict):
        raise ConfigError(where, "expected an object")
    if key not in obj:
        if default is ...:
            raise ConfigError(f"{where}.{key}", "missing required field")
        return default
    value = obj[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ConfigError(f"{where}.{key}", f"expected an integer, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise ConfigError(f"{where}.{key}", "expected a list")
    if kind is dict and not isinstance(value, dict):
        raise ConfigError(f"{where}.{key}", "expected an object")
    return value


def parse_point(value, where: str):
    try:
        return as_point(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(where, f"not an exact rational point: {value!r}") from None


def _window(spec: dict, where: str, default_ext: str) -> OrderedGround:
    lo = _get(spec, "lo", where, int, 0)
    hi = _get(spec, "hi", where, int)
    ext = _get(spec, "extension", where, default=default_ext)
    if hi < lo:
        raise ConfigError(f"{where}.hi", "window upper bound below lower bound")
    try:
        return OrderedGround(tuple(range(lo, hi + 1)), ext)
    except ValueError as exc:
        raise ConfigError(where, str(exc)) from None


def _count(spec: dict, where: str) -> int:
    n = _get(spec, "generators", where, int)
    if n < 1:
        raise ConfigError(f"{where}.generators", "need at least one generator")
    return n


def build_space(config: dict) -> Space:
    where = "space"
    spec = _get(config, "space", "$", dict)
    kind = _get(spec, "kind", where)
    if kind not in KINDS:
        raise ConfigError(f"{where}.kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    name = config.get("name", kind)
    try:
        if kind == "int_window":
            g = _window(spec, where, "int_line")
            return Space(kind, g, metric_family(g, _count(spec, where), name))
        if kind == "nat_window":
            g = _window(spec, where, "int_halfline")
            return Space(kind, g, metric_family(g, _count(spec, where), name))
        if kind == "discrete":
            g = _window(spec, where, "int_line")
            born = _bornology(g, _get(spec, "bornology", where, dict), f"{where}.bornology")
            return Space(kind, g, discrete_from_bornology(born, name), bornology=born)
        if kind == "phi":
            g = _window(spec, where, "int_halfline")
            phi = _phi(_get(spec, "phi", where, dict), f"{where}.phi")
            bad = phi.validate(g)
            if bad:
                raise ConfigError(f"{where}.phi", f"image of {bad[0]} is not convex")
            born = Bornology.interval(g, [(g.points[0], g.points[-1])])
            return Space(kind, g, phi_family(g, phi, _count(spec, where), name), bornology=born, phi=phi)
        if kind == "example3":
            from .example3 import example3_family

            cutoff = _get(spec, "cutoff", where, int, 12)
            if cutoff < 3:
                raise ConfigError(f"{where}.cutoff", "cutoff must be at least 3")
            fam = example3_family(cutoff)
            return Space(kind, fam.ground, fam)
        return _explicit(spec, where, name)
    except ConfigError:
        raise
    except BalleanError as exc:
        raise ConfigError(where, str(exc)) from None


def _bornology(g: OrderedGround, spec: dict, where: str) -> Bornology:
    if "intervals" in spec:
        pairs = []
        for i, item in enumerate(_get(spec, "intervals", where, list)):
            if not isinstance(item, list) or len(item) != 2:
                raise ConfigError(f"{where}.intervals[{i}]", "expected [a, b]")
            pairs.append((parse_point(item[0], f"{where}.intervals[{i}][0]"),
                          parse_point(item[1], f"{where}.intervals[{i}][1]")))
        born = Bornology.interval(g, pairs)
    else:
        centre = parse_point(_get(spec, "centre", where), f"{where}.centre")
        radii = _get(spec, "radii", where, list)
        if not all(isinstance(r, int) and r >= 0 for r in radii):
            raise ConfigError(f"{where}.radii", "radii must be non-negative integers")
        born = Bornology.interval_chain(g, centre, radii)
    if not born.base or any(not b for b in born.base):
        raise ConfigError(where, "base sets must be non-empty")
    return born


def _phi(spec: dict, where: str) -> PhiSpec:
    coeffs = {k: parse_point(_get(spec, k, where), f"{where}.{k}") for k in ("p", "q", "r", "s")}
    overrides = {}
    for key, vals in _get(spec, "overrides", where, dict, {}).items():
        x = parse_point(key, f"{where}.overrides.{key}")
        if not isinstance(vals, list):
            raise ConfigError(f"{where}.overrides.{key}", "expected a list of points")
        overrides[x] = [parse_point(v, f"{where}.overrides.{key}") for v in vals]
    return PhiSpec.from_overrides(coeffs["p"], coeffs["q"], coeffs["r"], coeffs["s"], overrides)


def _explicit(spec: dict, where: str, name: str) -> Space:
    raw = _get(spec, "points", where, list)
    points = [parse_point(p, f"{where}.points[{i}]") for i, p in enumerate(raw)]
    if len(set(points)) != len(points) or not points:
        raise ConfigError(f"{where}.points", "points must be distinct and non-empty")
    order = _get(spec, "order", where, list, None)
    if order is None:
        relabel = {p: p for p in points}
    else:
        order = [parse_point(p, f"{where}.order[{i}]") for i, p in enumerate(order)]
        if sorted(order) != sorted(points):
            raise ConfigError(f"{where}.order", "order must list every point exactly once")
        relabel = {p: i for i, p in enumerate(order)}
    g = OrderedGround.explicit(relabel.values(), _get(spec, "extension", where, default="none"))
    gens = []
    for i, balls in enumerate(_get(spec, "generators", where, list)):
        loc = f"{where}.generators[{i}]"
        if not isinstance(balls, dict):
            raise ConfigError(loc, "expected a ball map {point: [points]}")
        mapped = {}
        for key, ys in balls.items():
            x = parse_point(key, f"{loc}.{key}")
            if x not in relabel:
                raise ConfigError(f"{loc}.{key}", "unknown point")
            if not isinstance(ys, list):
                raise ConfigError(f"{loc}.{key}", "expected a list of points")
            targets = []
            for y in ys:
                y = parse_point(y, f"{loc}.{key}")
                if y not in relabel:
                    raise ConfigError(f"{loc}.{key}", f"unknown point {y}")
                targets.append(relabel[y])
            mapped[relabel[x]] = targets
        try:
            gens.append(Entourage.from_balls(g, mapped, add_diagonal=True))
        except BalleanError as exc:
            raise ConfigError(loc, str(exc)) from None
    if not gens:
        raise ConfigError(f"{where}.generators", "need at least one generator")
    return Space("explicit", g, GeneratorFamily.explicit(g, gens, name), relabel=relabel)


def resolve_entourage(space: Space, ref, where: str) -> Entourage:
    """An entourage reference: a generator index, ``{"metric": r}`` or ``{"discrete": [pts]}``."""
    if isinstance(ref, int) and not isinstance(ref, bool):
        if ref not in space.family.indices:
            raise ConfigError(where, f"no generator with index {ref}")
        return space.family.gen(ref)
    if isinstance(ref, dict) and "metric" in ref:
        return Entourage.metric(space.ground, parse_point(ref["metric"], f"{where}.metric"))
    if isinstance(ref, dict) and "discrete" in ref:
        pts = [parse_point(p, f"{where}.discrete") for p in ref["discrete"]]
        try:
            return Entourage.discrete(space.ground, [space.relabel.get(p, p) for p in pts])
        except BalleanError as exc:
            raise ConfigError(where, str(exc)) from None
    raise ConfigError(where, f"cannot interpret entourage reference {ref!r}")


def parse_point_set(space: Space, value, where: str) -> frozenset:
    """A point set: a list of points or ``{"interval": [a, b]}``."""
    g = space.ground
    if isinstance(value, dict) and "interval" in value:
        a, b = value["interval"]
        return g.members(g.interval(parse_point(a, where), parse_point(b, where)))
    if not isinstance(value, list):
        raise ConfigError(where, "expected a list of points or {\"interval\": [a, b]}")
    out = []
    for v in value:
        p = parse_point(v, where)
        p = space.relabel.get(p, p)
        if p not in g:
            raise ConfigError(where, f"{p} is not a point of the ground")
        out.append(p)
    return frozenset(out)
