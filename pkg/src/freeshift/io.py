"""JSON fragments for groups, patterns, families, windows and plans.

Formats::

    group    {"kind": "zd", "d": 2}  |  {"kind": "free", "rank": 2}
    pattern  {"support": [[0], [1]], "values": [0, 1]}       (Z^d)
             {"support": ["", "a", "ab"], "values": [0, 1, 1]} (free group)
    family   [pattern, ...]
    window   {"window_radius": r}  or  {"window": [element, ...]}
    plan     {"base_cover": family, "h": h, "bad_families": [family, ...],
              "auto_epsilon": true}
    action   {"kind": "cyclic", "n": n}  |  {"kind": "perm", "v": v, "seed": s}
"""
from __future__ import annotations

from .constructor import AugmentationPlan
from .covers import CylinderFamily
from .errors import ValidationError
from .groups import Group
from .patterns import Pattern, Window

SCHEMA_VERSION = 1


def _require(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ValidationError(f"missing field {key!r}")
    value = obj[key]
    if kind is not None and (not isinstance(value, kind) or isinstance(value, bool)):
        raise ValidationError(f"field {key!r} has the wrong type")
    return value


def group_from_json(obj):
    kind = _require(obj, "kind", str)
    if kind == "zd":
        return Group.zd(_require(obj, "d", int))
    if kind == "free":
        return Group.free(_require(obj, "rank", int))
    raise ValidationError(f"unknown group kind {kind!r}")


def group_to_json(group):
    if group.kind == "zd":
        return {"kind": "zd", "d": group.rank}
    return {"kind": "free", "rank": group.rank}


def pattern_from_json(obj, group, k):
    support = _require(obj, "support", list)
    values = _require(obj, "values", list)
    if len(support) != len(values):
        raise ValidationError("support and values differ in length")
    if any(type(v) is not int for v in values):
        raise ValidationError("pattern values must be integers")
    return Pattern.from_mapping(group, zip((group.parse(g) for g in support), values), k)


def pattern_to_json(p):
    return {"support": [p.group.format(g) for g in p.support], "values": list(p.values)}


def family_from_json(obj, group, k):
    if not isinstance(obj, list):
        raise ValidationError("a family is a list of patterns")
    return CylinderFamily([pattern_from_json(p, group, k) for p in obj], k, group)


def family_to_json(family):
    return [pattern_to_json(p) for p in family]


def window_from_json(obj, group, radius=None):
    """Window from ``window`` / ``window_radius`` fields; ``radius`` overrides."""
    if radius is not None:
        return Window.ball(group, radius)
    if "window" in obj:
        elems = _require(obj, "window", list)
        return Window(group, [group.parse(g) for g in elems])
    r = _require(obj, "window_radius", int)
    if r < 0:
        raise ValidationError("window_radius must be nonnegative")
    return Window.ball(group, r)


def plan_from_json(obj, group, k):
    base = family_from_json(obj.get("base_cover", []), group, k)
    h = _require(obj, "h", (int, float))
    bad = [family_from_json(f, group, k) for f in obj.get("bad_families", [])]
    eps = None if obj.get("auto_epsilon", True) else _require(obj, "epsilons", list)
    return AugmentationPlan(base, float(h), bad, eps)


def elements_from_json(objs, group):
    if not isinstance(objs, list):
        raise ValidationError("expected a list of group elements")
    return [group.parse(g) for g in objs]
