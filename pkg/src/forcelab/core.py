"""Finite level skeletons and level-indexed trees.

A skeleton is an ordered list of levels (base, omega, successors, limits),
each successor/omega level carrying a positive width value ``f``.  Trees are
finite sets of vertices ``(level, index)`` in which every vertex has exactly
one predecessor on each lower level, there is a single root, and no two
distinct limit-level vertices share the same set of strict predecessors.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from . import errors
from .errors import ForceLabError

BASE = "base"
OMEGA = "omega"
SUCCESSOR = "successor"
LIMIT = "limit"

KINDS = (BASE, OMEGA, SUCCESSOR, LIMIT)


@dataclass(frozen=True)
class LevelSpec:
    """One rung of the skeleton: a name, a kind, and the width value f."""

    name: str
    kind: str
    f_value: int | None = None


@dataclass(frozen=True)
class Skeleton:
    """An ordered finite ladder of levels with block width W.

    ``regular_limit_caps`` optionally bounds, per limit level, the total
    size of the branch label union below any vertex of that level.
    """

    levels: tuple
    block_width: int
    regular_limit_caps: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(
            self, "regular_limit_caps", tuple(sorted(dict(self.regular_limit_caps).items()))
        )

    @property
    def caps(self):
        return dict(self.regular_limit_caps)

    @property
    def n_levels(self):
        return len(self.levels)

    def kind(self, level):
        return self.levels[level].kind

    def f(self, level):
        return self.levels[level].f_value

    def level_index(self, name):
        for i, spec in enumerate(self.levels):
            if spec.name == name:
                return i
        raise KeyError(name)

    def limit_levels(self):
        return [i for i, spec in enumerate(self.levels) if spec.kind == LIMIT]

    def successor_levels(self):
        return [i for i, spec in enumerate(self.levels) if spec.kind == SUCCESSOR]

    def labelable_levels(self):
        """Levels whose vertices carry labels: omega and successor levels."""
        return [i for i, spec in enumerate(self.levels) if spec.kind in (OMEGA, SUCCESSOR)]


def validate_skeleton(s):
    """Check the skeleton invariants; return a list of (code, message)."""
    errs = []
    if s.n_levels < 2:
        errs.append((errors.BAD_LEVEL_ORDER, "need at least a base and an omega level"))
        return errs
    if s.levels[0].kind != BASE:
        errs.append((errors.BAD_LEVEL_ORDER, "first level must be the base level"))
    if s.levels[1].kind != OMEGA:
        errs.append((errors.BAD_LEVEL_ORDER, "second level must be the omega level"))
    for i, spec in enumerate(s.levels):
        if spec.kind not in KINDS:
            errs.append((errors.BAD_LEVEL_ORDER, f"unknown kind {spec.kind!r} at {spec.name}"))
        if i >= 1 and spec.kind == BASE:
            errs.append((errors.BAD_LEVEL_ORDER, f"extra base level {spec.name}"))
        if i >= 2 and spec.kind == OMEGA:
            errs.append((errors.BAD_LEVEL_ORDER, f"extra omega level {spec.name}"))
        if i >= 1 and spec.kind == LIMIT and s.levels[i - 1].kind == BASE:
            errs.append((errors.BAD_LEVEL_ORDER, f"limit level {spec.name} directly above base"))
    if s.block_width < 1:
        errs.append((errors.F_TOO_SMALL, "block width must be positive"))
    prev_f = None
    for spec in s.levels:
        if spec.kind == BASE:
            continue
        if spec.f_value is None or spec.f_value < 2:
            errs.append((errors.F_TOO_SMALL, f"f at {spec.name} must be at least 2"))
            continue
        if prev_f is not None and spec.f_value < prev_f:
            errs.append((errors.NON_MONOTONE_F, f"f drops at {spec.name}"))
        prev_f = spec.f_value
    for level, cap in s.caps.items():
        if not (0 <= level < s.n_levels) or s.kind(level) != LIMIT or cap < 1:
            errs.append((errors.BAD_LEVEL_ORDER, f"bad cap entry for level {level}"))
    return errs


def check_skeleton(s):
    """Raise on an invalid skeleton, return it unchanged otherwise."""
    errs = validate_skeleton(s)
    if errs:
        raise ForceLabError(errs[0][0], errs[0][1], all_errors=errs)
    return s


@lru_cache(maxsize=None)
def _f_lim_table(s):
    table = []
    omega_idx = 1
    for level in range(s.n_levels):
        kind = s.kind(level)
        if kind == BASE:
            table.append(1)
        elif kind == LIMIT:
            table.append(s.f(level))
        else:
            limits_below = [l for l in s.limit_levels() if l < level]
            if limits_below:
                table.append(s.f(max(limits_below)))
            else:
                table.append(s.f(omega_idx))
    return tuple(table)


def f_lim(s, level):
    """Index-space width of a level.

    Limit levels keep their own f; a successor above a limit inherits the f
    of the greatest limit below it; the omega level and the successors below
    the first limit inherit the omega level's f; the base level has width 1.
    """
    return _f_lim_table(s)[level]


def succ_prime(s):
    """Successor levels whose f strictly exceeds the f of every smaller
    successor level (the least successor level belongs vacuously)."""
    out = []
    best = None
    for level in s.successor_levels():
        fv = s.f(level)
        if best is None or fv > best:
            out.append(level)
            best = fv
    return tuple(out)


def block_of(index, width):
    """The block number of an index under width-W blocks."""
    return index // width


class FlimTree:
    """A finite tree of ``(level, index)`` vertices given by a parent map.

    Every non-root vertex points to its parent on the immediately lower
    level; the full predecessor chain is recovered by iterating parents.
    ``floor`` is the level at which roots live (0 for whole trees, higher
    for band restrictions).
    """

    __slots__ = ("_parents", "floor", "_key")

    def __init__(self, parents=(), floor=0):
        items = dict(parents)
        self._parents = items
        self.floor = floor
        self._key = (floor, frozenset(items.items()))

    @property
    def vertices(self):
        return frozenset(self._parents)

    def __contains__(self, v):
        return v in self._parents

    def __len__(self):
        return len(self._parents)

    def __eq__(self, other):
        return isinstance(other, FlimTree) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FlimTree({sorted(self._parents.items())}, floor={self.floor})"

    def parent(self, v):
        return self._parents[v]

    def parent_map(self):
        return dict(self._parents)

    def chain(self, v):
        """The strict-predecessor chain of v, bottom up, excluding v."""
        out = []
        p = self._parents.get(v)
        while p is not None:
            out.append(p)
            p = self._parents.get(p)
        out.reverse()
        return out

    def leq_v(self, u, v):
        """Tree order on vertices: u equals v or lies on v's chain."""
        return u == v or u in self.chain(v)

    def roots(self):
        return sorted(v for v, p in self._parents.items() if p is None)

    def max_points(self):
        parents = set(p for p in self._parents.values() if p is not None)
        return sorted(v for v in self._parents if v not in parents)

    def height(self):
        """Greatest level among maximal points; floor for the empty tree."""
        if not self._parents:
            return self.floor
        return max(level for level, _ in self._parents)

    def levels_used(self):
        return sorted({level for level, _ in self._parents})

    def at_level(self, level):
        return sorted(v for v in self._parents if v[0] == level)

    def indices_at(self, level):
        return {i for (l, i) in self._parents if l == level}

    def pred_at(self, v, level):
        """The unique predecessor of v at the given level (or v itself)."""
        if v[0] == level:
            return v
        for u in self.chain(v):
            if u[0] == level:
                return u
        raise ForceLabError(errors.MISSING_PREDECESSOR, f"{v} has no predecessor at level {level}")


EMPTY_TREE = FlimTree()


def validate_tree(s, t):
    """Check the tree invariants against a skeleton; return (code, message) list."""
    errs = []
    parents = t.parent_map()
    for (level, index), parent in parents.items():
        if not (0 <= level < s.n_levels):
            errs.append((errors.INDEX_OUT_OF_RANGE, f"no level {level}"))
            continue
        if index < 0 or index >= f_lim(s, level):
            errs.append((errors.INDEX_OUT_OF_RANGE, f"index {index} out of range at level {level}"))
        if parent is None:
            if level != t.floor:
                errs.append((errors.MISSING_PREDECESSOR, f"root {(level, index)} above floor"))
        else:
            if parent not in parents:
                errs.append((errors.MISSING_PREDECESSOR, f"parent of {(level, index)} absent"))
            elif parent[0] != level - 1:
                errs.append((errors.MISSING_PREDECESSOR, f"parent of {(level, index)} skips a level"))
    if t.floor == 0:
        for v in t.roots():
            if v != (0, 0):
                errs.append((errors.MISSING_PREDECESSOR, f"root {v} is not (0, 0)"))
    # no splitting at limits: distinct limit-level vertices never share a parent
    for level in s.limit_levels():
        seen = {}
        for v in t.at_level(level):
            p = parents.get(v)
            if p in seen:
                errs.append((errors.LIMIT_SPLIT, f"{seen[p]} and {v} split above {p}"))
            else:
                seen[p] = v
    return errs


def check_tree(s, t):
    errs = validate_tree(s, t)
    if errs:
        raise ForceLabError(errs[0][0], errs[0][1], all_errors=errs)
    return t


def tree_leq(sub, sup):
    """True iff sub extends sup: more vertices, same parents on sup."""
    if sub.floor != sup.floor:
        return False
    sub_parents = sub.parent_map()
    for v, p in sup.parent_map().items():
        if v not in sub_parents or sub_parents[v] != p:
            return False
    return True


def tree_union(s, t1, t2):
    """The union tree of two compatible trees; raises if parents clash or
    the union violates a tree invariant (for example a limit split)."""
    if t1.floor != t2.floor:
        raise ForceLabError(errors.AMBIGUOUS_PREDECESSOR, "floors differ")
    merged = t1.parent_map()
    for v, p in t2.parent_map().items():
        if v in merged and merged[v] != p:
            raise ForceLabError(errors.AMBIGUOUS_PREDECESSOR, f"{v} has two parents")
        merged[v] = p
    out = FlimTree(merged, floor=t1.floor)
    errs = validate_tree(s, out)
    if errs:
        raise ForceLabError(errs[0][0], errs[0][1], all_errors=errs)
    return out


def restrict_band(t, lo, hi):
    """Vertices with lo <= level <= hi; vertices at level lo become roots."""
    parents = {}
    for v, p in t.parent_map().items():
        if lo <= v[0] <= hi:
            parents[v] = p if (p is not None and p[0] >= lo) else None
    return FlimTree(parents, floor=max(lo, t.floor))


def restrict_to(t, vs):
    """The downward closure of the given vertices inside t."""
    keep = set()
    for v in vs:
        if v not in t:
            raise ForceLabError(errors.NOT_AN_EXTENSION, f"{v} not in tree")
        keep.add(v)
        keep.update(t.chain(v))
    parents = {v: t.parent(v) for v in keep}
    return FlimTree(parents, floor=t.floor)
