"""Run configuration: skeleton files in TOML, run parameters, defaults."""

from dataclasses import dataclass, field, replace

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib

from .. import core, errors
from ..core import LevelSpec, Skeleton
from ..errors import ForceLabError


def parse_skeleton(text):
    """Build a skeleton from TOML text.

    Expected shape::

        block_width = 4
        [[levels]]
        name = "0"
        kind = "base"
        [[levels]]
        name = "aleph0"
        kind = "omega"
        f = 2
        [caps]          # optional, per limit level name
        alephw = 5
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ForceLabError(errors.CONFIG_ERROR, f"not valid TOML: {exc}")
    if "levels" not in data or "block_width" not in data:
        raise ForceLabError(errors.CONFIG_ERROR, "need 'levels' and 'block_width'")
    levels = []
    for entry in data["levels"]:
        try:
            levels.append(LevelSpec(str(entry["name"]), entry["kind"], entry.get("f")))
        except (TypeError, KeyError) as exc:
            raise ForceLabError(errors.CONFIG_ERROR, f"bad level entry {entry!r}: {exc}")
    s = Skeleton(tuple(levels), data["block_width"])
    caps = data.get("caps", {})
    if caps:
        try:
            s = Skeleton(
                s.levels,
                s.block_width,
                tuple((s.level_index(name), cap) for name, cap in caps.items()),
            )
        except KeyError as exc:
            raise ForceLabError(errors.CONFIG_ERROR, f"cap for unknown level {exc}")
    errs = core.validate_skeleton(s)
    if errs:
        raise ForceLabError(errors.CONFIG_ERROR, f"invalid skeleton: {errs[0][1]}")
    return s


def load_skeleton(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_skeleton(fh.read())
    except OSError as exc:
        raise ForceLabError(errors.CONFIG_ERROR, f"cannot read {path}: {exc}")


def skeleton_to_dict(s):
    return {
        "block_width": s.block_width,
        "levels": [
            {"name": spec.name, "kind": spec.kind, "f": spec.f_value} for spec in s.levels
        ],
        "caps": {s.levels[lvl].name: cap for lvl, cap in s.caps.items()},
    }


def skeleton_from_dict(data):
    levels = tuple(
        LevelSpec(e["name"], e["kind"], e.get("f")) for e in data["levels"]
    )
    s = Skeleton(levels, data["block_width"])
    caps = data.get("caps") or {}
    if caps:
        s = Skeleton(
            levels,
            data["block_width"],
            tuple((s.level_index(name), cap) for name, cap in caps.items()),
        )
    return core.check_skeleton(s)


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs: the skeleton, bounds, seed, and selection."""

    skeleton: Skeleton
    bound: int = 1
    seed: int = 0
    cases: int = 100
    exhaustive: bool = False
    properties: tuple = ("all",)
    width: int | None = None

    def resolved_skeleton(self):
        if self.width is None:
            return self.skeleton
        return core.check_skeleton(replace(self.skeleton, block_width=self.width))


def validate_run_config(cfg, known_properties):
    if cfg.bound < 1:
        raise ForceLabError(errors.CONFIG_ERROR, "bound must be at least 1")
    if cfg.cases < 1:
        raise ForceLabError(errors.CONFIG_ERROR, "cases must be at least 1")
    for pid in cfg.properties:
        if pid != "all" and pid not in known_properties:
            raise ForceLabError(errors.CONFIG_ERROR, f"unknown property id {pid!r}")
    core.check_skeleton(cfg.resolved_skeleton())
    return cfg
