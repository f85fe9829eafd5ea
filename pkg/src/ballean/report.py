"""Canonical JSON for grounds, entourages and command reports.

Rationals are written as ``"p/q"`` strings (integers as ``"5"``), keys are
sorted, and nothing time- or environment-dependent is emitted, so the same
input always yields the same bytes.
"""

from __future__ import annotations

import hashlib
import json

from . import __version__
from .ground import OrderedGround, as_point, format_point, iter_bits
from .relations import Entourage


def canonical_dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(data) -> str:
    raw = json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(raw.encode("utf-8")).hexdigest()


def ground_to_json(ground: OrderedGround) -> dict:
    pts = ground.points
    if ground.ideal_extension in ("int_line", "int_halfline"):
        return {"extension": ground.ideal_extension, "lo": str(pts[0]), "hi": str(pts[-1])}
    return {"extension": ground.ideal_extension, "points": [format_point(p) for p in pts]}


def ground_from_json(data: dict) -> OrderedGround:
    ext = data.get("extension", "none")
    if "points" in data:
        return OrderedGround(tuple(as_point(p) for p in data["points"]), ext)
    lo, hi = int(data["lo"]), int(data["hi"])
    return OrderedGround(tuple(range(lo, hi + 1)), ext)


def _runs(mask: int) -> list:
    runs = []
    start = prev = None
    for i in iter_bits(mask):
        if start is None:
            start = prev = i
        elif i == prev + 1:
            prev = i
        else:
            runs.append((start, prev))
            start = prev = i
    if start is not None:
        runs.append((start, prev))
    return runs


def entourage_to_json(entourage: Entourage) -> dict:
    """Balls as runs of consecutive ground points: ``{"x": [["lo", "hi"], ...]}``."""
    pts = entourage.ground.points
    return {
        "balls": {
            format_point(pts[i]): [[format_point(pts[a]), format_point(pts[b])] for a, b in _runs(m)]
            for i, m in enumerate(entourage.ball_masks)
        }
    }


def entourage_from_json(ground: OrderedGround, data: dict) -> Entourage:
    masks = [0] * len(ground)
    for key, runs in data["balls"].items():
        i = ground.index_of(as_point(key))
        for lo, hi in runs:
            a, b = ground.index_of(as_point(lo)), ground.index_of(as_point(hi))
            masks[i] |= ((1 << (b - a + 1)) - 1) << a
    return Entourage(ground, masks)


def make_report(command: str, config, results: dict, passed: bool) -> dict:
    return {
        "command": command,
        "config": None if config is None else config.get("name"),
        "config_digest": None if config is None else digest(config),
        "results": results,
        "status": "pass" if passed else "fail",
        "version": f"ballean {__version__}",
    }


def render_text(report: dict) -> str:
    """Indented human rendering of a report (same data as the JSON)."""
    lines = [
        f"{report['command']}: {report['status'].upper()}",
        f"config: {report['config']} ({(report['config_digest'] or '-')[:12]})",
    ]

    def walk(value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            for k in sorted(value):
                v = value[k]
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
        elif isinstance(value, list):
            for v in value[:12]:
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {json.dumps(v, ensure_ascii=False)}")
            if len(value) > 12:
                lines.append(f"{pad}... ({len(value) - 12} more)")

    walk(report["results"], 1)
    lines.append(report["version"])
    return "\n".join(lines) + "\n"
