"""Canonical structured-text (JSON) encoding of the domain values.

Vertices serialize as ``[level, index]``, labels as sorted ``[pos, bit]``
pairs, rectangle blocks row-major.  All dumps sort keys so equal values
serialize byte-identically.
"""

import json

from .. import automorphisms as am
from .. import errors
from ..conditions import Cond0, Cond1, ProductCond
from ..core import FlimTree
from ..errors import ForceLabError
from ..names import CanonicalName


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def loads(text):
    try:
        return json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise ForceLabError(errors.PARSE_ERROR, f"not valid JSON: {exc}")


def cond0_to_dict(p):
    return {
        "kind": "cond0",
        "tree": [
            [list(v), list(par) if par is not None else None]
            for v, par in sorted(p.tree.parent_map().items())
        ],
        "floor": p.tree.floor,
        "labels": [
            [list(v), sorted([pos, bit] for pos, bit in lab.items())]
            for v, lab in sorted(p.label_map().items())
        ],
    }


def cond0_from_dict(data):
    parents = {
        tuple(v): tuple(par) if par is not None else None for v, par in data["tree"]
    }
    labels = {tuple(v): {pos: bit for pos, bit in lab} for v, lab in data["labels"]}
    return Cond0(FlimTree(parents, floor=data.get("floor", 0)), labels)


def cond1_to_dict(p):
    blocks = []
    for level in p.levels():
        xs, ys, bits = p.block(level)
        xs, ys = sorted(xs), sorted(ys)
        blocks.append(
            {
                "level": level,
                "xs": xs,
                "ys": ys,
                "bits": [bits[(x, y)] for x in xs for y in ys],
            }
        )
    return {"kind": "cond1", "blocks": blocks}


def cond1_from_dict(data):
    blocks = {}
    for b in data["blocks"]:
        xs, ys = b["xs"], b["ys"]
        cells = [(x, y) for x in xs for y in ys]
        blocks[b["level"]] = (set(xs), set(ys), dict(zip(cells, b["bits"])))
    return Cond1(blocks)


def product_to_dict(p):
    return {"kind": "product", "c0": cond0_to_dict(p.c0), "c1": cond1_to_dict(p.c1)}


def product_from_dict(data):
    return ProductCond(cond0_from_dict(data["c0"]), cond1_from_dict(data["c1"]))


def cond_to_dict(p):
    if isinstance(p, Cond0):
        return cond0_to_dict(p)
    if isinstance(p, Cond1):
        return cond1_to_dict(p)
    return product_to_dict(p)


def cond_from_dict(data):
    kinds = {"cond0": cond0_from_dict, "cond1": cond1_from_dict, "product": product_from_dict}
    try:
        return kinds[data["kind"]](data)
    except (KeyError, TypeError) as exc:
        raise ForceLabError(errors.PARSE_ERROR, f"bad condition record: {exc}")


def aut0_to_dict(pi):
    return {
        "kind": "aut0",
        "perms": [
            [level, sorted([i, j] for i, j in m.items())]
            for level, m in sorted(pi.perm_map().items())
        ],
    }


def aut0_from_dict(data):
    return am.Aut0({level: {i: j for i, j in m} for level, m in data["perms"]})


def canonical_name_to_dict(c):
    return {
        "kind": "name",
        "tag": c.tag,
        "level": c.level,
        "index": c.index,
        "cut": c.cut,
        "parts": [canonical_name_to_dict(p) for p in c.parts],
        "values": list(c.values),
    }


def canonical_name_from_dict(data):
    try:
        return CanonicalName(
            data["tag"],
            level=data.get("level"),
            index=data.get("index"),
            cut=data.get("cut"),
            parts=tuple(canonical_name_from_dict(p) for p in data.get("parts", ())),
            values=tuple(data.get("values", ())),
        )
    except (KeyError, TypeError) as exc:
        raise ForceLabError(errors.PARSE_ERROR, f"bad name record: {exc}")


def icond_to_dict(p):
    t = p.qtree
    return {
        "kind": "icond",
        "top_level": t.top_level,
        "support": sorted(t.support),
        "partitions": [
            [level, [sorted(c) for c in t.cells(level)]]
            for level in range(t.top_level + 1)
        ],
        "labels": [
            [level, sorted(cell), sorted([pos, bit] for pos, bit in lab.items())]
            for (level, cell), lab in sorted(
                p.label_map().items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))
            )
        ],
        "n": [
            [level, sorted(cell), list(val) if isinstance(val, tuple) else val]
            for (level, cell), val in sorted(
                p.n_map().items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))
            )
        ],
    }


def spec_to_list(spec):
    return [[g.tag, g.level, g.value] for g in spec]


def spec_from_list(data):
    try:
        return am.group_spec(*[am.SubgroupGen(tag, level, value) for tag, level, value in data])
    except (TypeError, ValueError) as exc:
        raise ForceLabError(errors.PARSE_ERROR, f"bad subgroup record: {exc}")
