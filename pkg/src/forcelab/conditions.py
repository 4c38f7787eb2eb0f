"""Conditions of the tree forcing, the rectangular product forcing, and
their product; restrictions, unions, and finitely generated filters.

A tree condition is a validated tree together with finite 0/1 labels at its
omega- and successor-level vertices.  A rectangular condition assigns, to
finitely many distinguished successor levels, a total 0/1 block on a finite
rectangle (positions x column indices).  Lower conditions carry more
information: trees and labels grow, rectangles grow.
"""

import itertools

from . import core, errors
from .core import FlimTree, f_lim, succ_prime, tree_leq, tree_union
from .errors import ForceLabError


def _freeze_label(label):
    return tuple(sorted(label.items()))


class Cond0:
    """A labeled tree condition.

    ``labels`` maps vertices to finite partial 0/1 functions on positions;
    only nonempty labels are stored.
    """

    __slots__ = ("tree", "_labels", "_key")

    def __init__(self, tree=core.EMPTY_TREE, labels=()):
        self.tree = tree
        stored = {}
        for v, label in dict(labels).items():
            label = dict(label)
            if label:
                stored[v] = label
        self._labels = stored
        self._key = (tree, frozenset((v, _freeze_label(l)) for v, l in stored.items()))

    def label(self, v):
        return dict(self._labels.get(v, ()))

    def labeled_vertices(self):
        return sorted(self._labels)

    def label_map(self):
        return {v: dict(l) for v, l in self._labels.items()}

    def __eq__(self, other):
        return isinstance(other, Cond0) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Cond0({self.tree!r}, {self.label_map()!r})"


ONE0 = Cond0()


def branch_union0(p, v):
    """All label bits along the branch of v, as {(level, pos): bit}."""
    out = {}
    for u in p.tree.chain(v) + [v]:
        for pos, bit in p.label(u).items():
            out[(u[0], pos)] = bit
    return out


def validate_cond0(s, p):
    errs = list(core.validate_tree(s, p.tree))
    labelable = set(s.labelable_levels())
    for v in p.labeled_vertices():
        if v not in p.tree:
            errs.append((errors.STRUCTURE_MISMATCH, f"label at {v} outside the tree"))
            continue
        if v[0] not in labelable:
            errs.append((errors.NONEMPTY_LIMIT_LABEL, f"label at {v}"))
        for pos, bit in p.label(v).items():
            if bit not in (0, 1) or pos < 0:
                errs.append((errors.STRUCTURE_MISMATCH, f"bad label entry at {v}"))
    for level, cap in s.caps.items():
        for v in p.tree.at_level(level):
            if len(branch_union0(p, v)) >= cap:
                errs.append((errors.CAP_EXCEEDED, f"branch union at {v} reaches {cap}"))
    return errs


def check_cond0(s, p):
    errs = validate_cond0(s, p)
    if errs:
        raise ForceLabError(errs[0][0], errs[0][1], all_errors=errs)
    return p


def _label_extends(big, small):
    return all(big.get(pos) == bit for pos, bit in small.items())


def leq0(q, p):
    """q is stronger than p: tree extension plus pointwise label extension."""
    if not tree_leq(q.tree, p.tree):
        return False
    for v in p.labeled_vertices():
        if not _label_extends(q.label(v), p.label(v)):
            return False
    return True


def union0(s, p, q):
    """The maximal common extension of two compatible tree conditions."""
    try:
        tree = tree_union(s, p.tree, q.tree)
    except ForceLabError as e:
        raise ForceLabError(errors.INCOMPATIBLE, "trees do not merge", cause=e.code)
    labels = p.label_map()
    for v, label in q.label_map().items():
        merged = labels.setdefault(v, {})
        for pos, bit in label.items():
            if merged.setdefault(pos, bit) != bit:
                raise ForceLabError(errors.INCOMPATIBLE, f"label clash at {v} position {pos}")
    out = Cond0(tree, labels)
    errs = validate_cond0(s, out)
    if errs:
        raise ForceLabError(errors.INCOMPATIBLE, errs[0][1], cause=errs[0][0])
    return out


def compat0(s, p, q):
    try:
        union0(s, p, q)
        return True
    except ForceLabError:
        return False


def restrict0_band(p, lo, hi):
    """Levels lo..hi of p, with the labels at level lo zeroed."""
    tree = core.restrict_band(p.tree, lo, hi)
    labels = {v: l for v, l in p.label_map().items() if lo < v[0] <= hi}
    return Cond0(tree, labels)


def restrict0_tree(p, base):
    """The restriction of p to a tree that p's tree extends (labels kept)."""
    if not tree_leq(p.tree, base):
        raise ForceLabError(errors.NOT_AN_EXTENSION, "condition tree does not extend base")
    labels = {v: l for v, l in p.label_map().items() if v in base}
    return Cond0(base, labels)


def restrict0_max_points(p, vs):
    """The downward closure of the given maximal points, labels kept."""
    tree = core.restrict_to(p.tree, vs)
    labels = {v: l for v, l in p.label_map().items() if v in tree}
    return Cond0(tree, labels)


def restrict0_structural(p, s_tree, kappa_plus):
    """Carry p's labels onto another tree along matching top branches.

    Every maximal point of ``s_tree`` must be a level-``kappa_plus`` vertex
    of p's tree; the label of a vertex of ``s_tree`` is read off from the
    p-branch of any of its top successors.  All choices must agree.
    """
    labels = {}
    tops = s_tree.max_points()
    if any(v[0] != kappa_plus for v in tops):
        raise ForceLabError(errors.STRUCTURE_MISMATCH, "maximal point below the top level")
    for v in s_tree.vertices:
        choices = set()
        for top in tops:
            if s_tree.leq_v(v, top):
                if top not in p.tree:
                    raise ForceLabError(errors.STRUCTURE_MISMATCH, f"{top} missing from source")
                src = p.tree.pred_at(top, v[0])
                choices.add(_freeze_label(p.label(src)))
        if len(choices) != 1:
            raise ForceLabError(errors.STRUCTURE_MISMATCH, f"branch disagreement at {v}")
        label = dict(choices.pop())
        if label:
            labels[v] = label
    return Cond0(s_tree, labels)


def split_glue(s, lower, upper, level):
    """A condition whose band restrictions extend the given split parts.

    ``lower`` lives on levels <= level, ``upper`` on levels >= level with
    roots among lower's level-``level`` vertices and empty labels there.
    """
    for root in upper.tree.roots():
        if root not in lower.tree:
            raise ForceLabError(errors.NOT_AN_EXTENSION, f"upper root {root} not in lower part")
    parents = lower.tree.parent_map()
    for v, par in upper.tree.parent_map().items():
        if par is None:
            continue
        if v in parents and parents[v] != par:
            raise ForceLabError(errors.INCOMPATIBLE, f"{v} has two parents")
        parents[v] = par
    tree = FlimTree(parents, floor=lower.tree.floor)
    errs = core.validate_tree(s, tree)
    if errs:
        raise ForceLabError(errs[0][0], errs[0][1])
    labels = lower.label_map()
    for v, label in upper.label_map().items():
        merged = labels.setdefault(v, {})
        for pos, bit in label.items():
            if merged.setdefault(pos, bit) != bit:
                raise ForceLabError(errors.INCOMPATIBLE, f"label clash at {v}")
    return check_cond0(s, Cond0(tree, labels))


class Cond1:
    """A finite family of total 0/1 rectangles at distinguished levels.

    ``blocks`` maps a level to ``(xs, ys, bits)`` with ``bits`` total on
    ``xs`` x ``ys``.
    """

    __slots__ = ("_blocks", "_key")

    def __init__(self, blocks=()):
        stored = {}
        for level, (xs, ys, bits) in dict(blocks).items():
            xs, ys = frozenset(xs), frozenset(ys)
            if not xs or not ys:
                continue
            stored[level] = (xs, ys, dict(bits))
        self._blocks = stored
        self._key = frozenset(
            (level, xs, ys, tuple(sorted(bits.items())))
            for level, (xs, ys, bits) in stored.items()
        )

    def levels(self):
        return sorted(self._blocks)

    def has_block(self, level):
        return level in self._blocks

    def block(self, level):
        xs, ys, bits = self._blocks[level]
        return xs, ys, dict(bits)

    def block_map(self):
        return {level: (xs, ys, dict(bits)) for level, (xs, ys, bits) in self._blocks.items()}

    def __eq__(self, other):
        return isinstance(other, Cond1) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Cond1({self.block_map()!r})"


ONE1 = Cond1()


def validate_cond1(s, p):
    errs = []
    allowed = set(succ_prime(s))
    for level in p.levels():
        xs, ys, bits = p.block(level)
        if level not in allowed:
            errs.append((errors.STRUCTURE_MISMATCH, f"block at non-distinguished level {level}"))
            continue
        if any(x < 0 for x in xs) or any(not (0 <= y < s.f(level)) for y in ys):
            errs.append((errors.INDEX_OUT_OF_RANGE, f"block domain out of range at level {level}"))
        cells = {(x, y) for x in xs for y in ys}
        if set(bits) != cells or any(b not in (0, 1) for b in bits.values()):
            errs.append((errors.NON_RECTANGULAR, f"bits not total on the rectangle at {level}"))
    return errs


def check_cond1(s, p):
    errs = validate_cond1(s, p)
    if errs:
        raise ForceLabError(errs[0][0], errs[0][1], all_errors=errs)
    return p


def leq1(q, p):
    """q is stronger than p: every block of p is contained in q's."""
    for level in p.levels():
        if not q.has_block(level):
            return False
        xs_p, ys_p, bits_p = p.block(level)
        xs_q, ys_q, bits_q = q.block(level)
        if not (xs_q >= xs_p and ys_q >= ys_p):
            return False
        if any(bits_q[c] != b for c, b in bits_p.items()):
            return False
    return True


def compat1(p, q):
    """No cell carried by both conditions disagrees."""
    for level in set(p.levels()) & set(q.levels()):
        _, _, bits_p = p.block(level)
        _, _, bits_q = q.block(level)
        for cell, b in bits_p.items():
            if cell in bits_q and bits_q[cell] != b:
                return False
    return True


def union1(p, q):
    """The smallest rectangular common extension, when its rectangle
    closure forces every cell; otherwise FREE_CELLS or INCOMPATIBLE."""
    blocks = {}
    for level in sorted(set(p.levels()) | set(q.levels())):
        parts = [c.block(level) for c in (p, q) if c.has_block(level)]
        if len(parts) == 1:
            blocks[level] = parts[0]
            continue
        (xs_p, ys_p, bits_p), (xs_q, ys_q, bits_q) = parts
        xs, ys = xs_p | xs_q, ys_p | ys_q
        bits = {}
        free = []
        for x in xs:
            for y in ys:
                cell = (x, y)
                have_p, have_q = cell in bits_p, cell in bits_q
                if have_p and have_q and bits_p[cell] != bits_q[cell]:
                    raise ForceLabError(errors.INCOMPATIBLE, f"bit clash at level {level} {cell}")
                if have_p or have_q:
                    bits[cell] = bits_p[cell] if have_p else bits_q[cell]
                else:
                    free.append((level,) + cell)
        if free:
            raise ForceLabError(errors.FREE_CELLS, "rectangle closure is unforced", cells=free)
        blocks[level] = (xs, ys, bits)
    return Cond1(blocks)


def restrict1_band(p, lo, hi):
    return Cond1({level: blk for level, blk in p.block_map().items() if lo <= level <= hi})


def restrict1_cols(p, cols):
    """Keep, per level, only the chosen column indices (full position sets)."""
    chosen = {}
    for level, index in cols:
        chosen.setdefault(level, set()).add(index)
    blocks = {}
    for level, (xs, ys, bits) in p.block_map().items():
        if level not in chosen:
            continue
        keep = ys & chosen[level]
        if not keep:
            continue
        blocks[level] = (xs, keep, {(x, y): b for (x, y), b in bits.items() if y in keep})
    return Cond1(blocks)


class ProductCond:
    """A pair of a tree condition and a rectangular condition."""

    __slots__ = ("c0", "c1", "_key")

    def __init__(self, c0=ONE0, c1=ONE1):
        self.c0 = c0
        self.c1 = c1
        self._key = (c0, c1)

    def __eq__(self, other):
        return isinstance(other, ProductCond) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"ProductCond({self.c0!r}, {self.c1!r})"


ONE_P = ProductCond()


def validate_product(s, p):
    return validate_cond0(s, p.c0) + validate_cond1(s, p.c1)


def leq_p(q, p):
    return leq0(q.c0, p.c0) and leq1(q.c1, p.c1)


def compat_p(s, p, q):
    return compat0(s, p.c0, q.c0) and compat1(p.c1, q.c1)


class FilterGen:
    """A finitely generated filter: membership is domination by a generator.

    ``kind`` is 'c0', 'c1', or 'p' and fixes which order is used.
    """

    __slots__ = ("kind", "generators")

    def __init__(self, kind, generators):
        self.kind = kind
        self.generators = tuple(generators)

    def __repr__(self):
        return f"FilterGen({self.kind!r}, {list(self.generators)!r})"


def _leq_for(kind):
    return {"c0": leq0, "c1": leq1, "p": leq_p}[kind]


def validate_filter(s, h):
    errs = []
    compat = {
        "c0": lambda a, b: compat0(s, a, b),
        "c1": compat1,
        "p": lambda a, b: compat_p(s, a, b),
    }[h.kind]
    for a, b in itertools.combinations(h.generators, 2):
        if not compat(a, b):
            errs.append((errors.INCOMPATIBLE, "generators not pairwise compatible"))
    return errs


def filter_member(h, p):
    leq = _leq_for(h.kind)
    return any(leq(g, p) for g in h.generators)


def filter_restrict0_tree(s, h, base):
    """Image filter under restriction to a fixed tree (generators must
    extend the tree)."""
    if h.kind == "c0":
        gens = [restrict0_tree(g, base) for g in h.generators]
        out = FilterGen("c0", gens)
    else:
        gens = [ProductCond(restrict0_tree(g.c0, base), g.c1) for g in h.generators]
        out = FilterGen("p", gens)
    errs = validate_filter(s, out)
    if errs:
        raise ForceLabError(errs[0][0], errs[0][1])
    return out


def filter_restrict1_cols(s, h, cols):
    if h.kind == "c1":
        gens = [restrict1_cols(g, cols) for g in h.generators]
        out = FilterGen("c1", gens)
    else:
        gens = [ProductCond(g.c0, restrict1_cols(g.c1, cols)) for g in h.generators]
        out = FilterGen("p", gens)
    errs = validate_filter(s, out)
    if errs:
        raise ForceLabError(errs[0][0], errs[0][1])
    return out


def weakenings0(p, limit=None):
    """All conditions above p: subtrees spanned by subsets of maximal
    points, with pointwise-smaller labels."""
    out = []
    tops = p.tree.max_points()
    for k in range(len(tops) + 1):
        for chosen in itertools.combinations(tops, k):
            if chosen:
                q = restrict0_max_points(p, chosen)
            else:
                q = ONE0
            items = sorted(
                ((v, pos, bit) for v, l in q.label_map().items() for pos, bit in l.items())
            )
            for r in range(len(items) + 1):
                for sub in itertools.combinations(items, r):
                    labels = {}
                    for v, pos, bit in sub:
                        labels.setdefault(v, {})[pos] = bit
                    out.append(Cond0(q.tree, labels))
                    if limit is not None and len(out) >= limit:
                        return out
    return out


def filter_meets(s, h, dense, bound):
    """Search the filter for a member satisfying the predicate.

    Members are weakenings of generators; label positions are implicitly
    bounded by the generators themselves, ``bound`` caps the search size.
    """
    budget = max(1, bound) * 512
    for g in h.generators:
        if h.kind == "c0":
            cands = weakenings0(g, limit=budget)
        elif h.kind == "p":
            cands = [ProductCond(c0, g.c1) for c0 in weakenings0(g.c0, limit=budget)]
        else:
            cands = [g]
        for cand in cands:
            if dense(cand):
                return True
    return False


def label_extensions(label, pool, max_new=None):
    """All label dictionaries extending ``label`` with new positions drawn
    from ``pool`` (each set to 0 or 1)."""
    fresh = [pos for pos in pool if pos not in label]
    if max_new is not None:
        fresh = fresh[:max_new]
    out = []
    for k in range(len(fresh) + 1):
        for chosen in itertools.combinations(fresh, k):
            for bits in itertools.product((0, 1), repeat=k):
                ext = dict(label)
                ext.update(zip(chosen, bits))
                out.append(ext)
    return out


def subforcing_below0(s, base_tree, floor_labels, bound):
    """All conditions with tree ``base_tree`` whose labels extend
    ``floor_labels``, with new positions below ``bound``."""
    labelable = set(s.labelable_levels())
    verts = [v for v in sorted(base_tree.vertices) if v[0] in labelable]
    per_vertex = []
    pool = range(bound)
    for v in verts:
        per_vertex.append([(v, ext) for ext in label_extensions(floor_labels.get(v, {}), pool)])
    out = []
    for combo in itertools.product(*per_vertex):
        out.append(Cond0(base_tree, {v: ext for v, ext in combo if ext}))
    return out


def dense_lift_check0(s, p, dense, q, bound):
    """Given a predicate dense in the fixed-tree subforcing below p and a
    condition q <= p, graft a witness of the predicate onto q.

    Returns (r, q_bar) where r has tree t(p), satisfies the predicate, and
    q_bar <= q restricts to r on t(p).
    """
    q_low = restrict0_tree(q, p.tree)
    witness = None
    for r in subforcing_below0(s, p.tree, q_low.label_map(), bound):
        if dense(r):
            witness = r
            break
    if witness is None:
        raise ForceLabError(errors.NO_WITNESS, "predicate not dense on the bounded search space")
    labels = q.label_map()
    for v in p.tree.vertices:
        label = witness.label(v)
        if label:
            labels[v] = label
        else:
            labels.pop(v, None)
    q_bar = Cond0(q.tree, labels)
    return witness, q_bar
