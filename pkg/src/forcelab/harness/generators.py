"""Deterministic instance generation: seeded random values, exhaustive
bounded enumerations, and shrinking for counterexample reports.

Every generator is a pure function of (skeleton, seed, size); size 0
yields the maximal element of the respective poset.
"""

import itertools
import random

from .. import automorphisms as am
from .. import conditions as cnd
from .. import core
from ..conditions import ONE0, ONE1, ONE_P, Cond0, Cond1, FilterGen, ProductCond
from ..core import EMPTY_TREE, FlimTree, f_lim


def _rng(s, seed, tag, size):
    return random.Random(f"{s.block_width}:{seed}:{tag}:{size}")


def gen_tree(s, rng, size, max_level=None, index_bound=None):
    """Grow a random valid tree by `size` attachment attempts."""
    if max_level is None:
        max_level = s.n_levels - 1
    tree = EMPTY_TREE
    for _ in range(size):
        attach = [None] if not len(tree) else [None] + sorted(tree.vertices)
        at = rng.choice(attach)
        level = 0 if at is None else at[0] + 1
        if level > max_level:
            continue
        bound = f_lim(s, level)
        if index_bound is not None:
            bound = min(bound, index_bound)
        pool = [i for i in range(bound) if (level, i) not in tree]
        if not pool:
            continue
        v = (level, rng.choice(pool))
        parents = tree.parent_map()
        parents[v] = at
        cand = FlimTree(parents)
        if not core.validate_tree(s, cand):
            tree = cand
    return tree


def gen_cond0(s, seed, size, pos_bound=2):
    """A random valid tree condition; size 0 is the maximal element."""
    if size == 0:
        return ONE0
    rng = _rng(s, seed, "cond0", size)
    tree = gen_tree(s, rng, size)
    labelable = set(s.labelable_levels())
    labels = {}
    for v in sorted(tree.vertices):
        if v[0] not in labelable:
            continue
        lab = {}
        for pos in range(pos_bound):
            roll = rng.random()
            if roll < 0.4:
                lab[pos] = rng.randrange(2)
        if lab:
            labels[v] = lab
    return cnd.check_cond0(s, Cond0(tree, labels))


def gen_cond1(s, seed, size, pos_bound=2):
    """A random valid rectangle condition; size 0 is the maximal element."""
    if size == 0:
        return ONE1
    rng = _rng(s, seed, "cond1", size)
    blocks = {}
    levels = list(core.succ_prime(s))
    rng.shuffle(levels)
    for level in levels[: max(1, size // 2)]:
        xs = {i for i in range(pos_bound) if rng.random() < 0.6}
        ys = {j for j in range(min(s.f(level), max(pos_bound, 2))) if rng.random() < 0.6}
        if not xs or not ys:
            continue
        bits = {(x, y): rng.randrange(2) for x in xs for y in ys}
        blocks[level] = (xs, ys, bits)
    return cnd.check_cond1(s, Cond1(blocks))


def gen_product(s, seed, size, pos_bound=2):
    if size == 0:
        return ONE_P
    return ProductCond(
        gen_cond0(s, seed, size, pos_bound), gen_cond1(s, seed + 1, size, pos_bound)
    )


def gen_aut0(s, seed, size):
    if size == 0:
        return am.IDENT0
    rng = _rng(s, seed, "aut0", size)
    return am.random_aut0(s, rng, max_moves=max(1, size))


def gen_aut1(s, seed, size, pos_bound=2):
    if size == 0:
        return am.IDENT1
    rng = _rng(s, seed, "aut1", size)
    return am.random_aut1(s, rng, pos_bound=pos_bound, max_levels=max(1, size // 2))


def gen_filter(s, seed, size, pos_bound=2):
    """A finitely generated product filter: weakenings of one strong
    condition are pairwise compatible by construction."""
    if size == 0:
        return FilterGen("p", [ONE_P])
    rng = _rng(s, seed, "filter", size)
    strong = gen_product(s, seed, size, pos_bound)
    gens = [strong]
    weaker = cnd.weakenings0(strong.c0, limit=4)
    for c0 in weaker[: size % 3]:
        gens.append(ProductCond(c0, strong.c1))
    return FilterGen("p", gens)


def strengthen_cond0(s, rng, p, pos_bound=2, steps=2):
    """A random extension of a tree condition (more tree, more labels)."""
    out = p
    labelable = set(s.labelable_levels())
    for _ in range(steps):
        if rng.random() < 0.5 and len(out.tree):
            grown = gen_tree(s, rng, 1)
        labels = out.label_map()
        verts = [v for v in sorted(out.tree.vertices) if v[0] in labelable]
        if verts:
            v = rng.choice(verts)
            lab = labels.setdefault(v, {})
            pos = rng.randrange(pos_bound)
            lab.setdefault(pos, rng.randrange(2))
        cand = Cond0(out.tree, labels)
        if not cnd.validate_cond0(s, cand):
            out = cand
    extra = gen_tree(s, rng, 2)
    try:
        merged = core.tree_union(s, out.tree, extra)
        if not core.validate_tree(s, merged):
            out = Cond0(merged, out.label_map())
    except Exception:
        pass
    return out


def strengthen_cond1(s, rng, p, pos_bound=2):
    """A random extension of a rectangle condition on its own levels."""
    blocks = p.block_map()
    for level, (xs, ys, bits) in list(blocks.items()):
        xs = set(xs) | ({rng.randrange(pos_bound)} if rng.random() < 0.5 else set())
        ys = set(ys) | (
            {rng.randrange(s.f(level))} if rng.random() < 0.5 else set()
        )
        bits = dict(bits)
        for cell in itertools.product(xs, ys):
            bits.setdefault(cell, rng.randrange(2))
        blocks[level] = (xs, ys, bits)
    return cnd.check_cond1(s, Cond1(blocks))


# ---------------------------------------------------------------------------
# exhaustive bounded enumerations


def all_trees(s, max_vertices, max_level=None, index_bound=None):
    """All valid trees with at most the given number of vertices."""
    if max_level is None:
        max_level = s.n_levels - 1
    seen = {EMPTY_TREE}
    frontier = [EMPTY_TREE]
    while frontier:
        tree = frontier.pop()
        if len(tree) >= max_vertices:
            continue
        attach = [None] if not len(tree) else list(tree.vertices)
        for at in attach:
            level = 0 if at is None else at[0] + 1
            if level > max_level:
                continue
            bound = f_lim(s, level)
            if index_bound is not None:
                bound = min(bound, index_bound)
            for idx in range(bound):
                v = (level, idx)
                if v in tree:
                    continue
                parents = tree.parent_map()
                parents[v] = at
                cand = FlimTree(parents)
                if cand in seen or core.validate_tree(s, cand):
                    continue
                seen.add(cand)
                frontier.append(cand)
    return sorted(seen, key=lambda t: (len(t), sorted(t.parent_map().items())))


def all_cond0(s, max_vertices, pos_bound=1, max_level=None, index_bound=None):
    """All conditions over the bounded trees with positions < pos_bound."""
    labelable = set(s.labelable_levels())
    out = []
    for tree in all_trees(s, max_vertices, max_level=max_level, index_bound=index_bound):
        slots = [
            (v, pos)
            for v in sorted(tree.vertices)
            if v[0] in labelable
            for pos in range(pos_bound)
        ]
        for choice in itertools.product((None, 0, 1), repeat=len(slots)):
            labels = {}
            for (v, pos), bit in zip(slots, choice):
                if bit is not None:
                    labels.setdefault(v, {})[pos] = bit
            out.append(Cond0(tree, labels))
    return out


def all_cond1(s, pos_bound=1):
    """All rectangle conditions with coordinates < pos_bound per level."""
    per_level = []
    for level in core.succ_prime(s):
        y_cap = min(s.f(level), pos_bound)
        opts = [None]
        for xs in _nonempty_subsets(range(pos_bound)):
            for ys in _nonempty_subsets(range(y_cap)):
                cells = [(x, y) for x in xs for y in ys]
                for fill in itertools.product((0, 1), repeat=len(cells)):
                    opts.append((level, (set(xs), set(ys), dict(zip(cells, fill)))))
        per_level.append(opts)
    out = []
    for combo in itertools.product(*per_level):
        out.append(Cond1({l: b for item in combo if item is not None for l, b in [item]}))
    return out


def _nonempty_subsets(items):
    items = list(items)
    for k in range(1, len(items) + 1):
        yield from itertools.combinations(items, k)


def all_aut0_small_support(s, max_moved=3):
    """All tree automorphisms moving at most max_moved indices overall."""
    per_level = []
    for level in range(s.n_levels):
        width = f_lim(s, level)
        perms = []
        for perm in itertools.permutations(range(width)):
            m = {i: j for i, j in enumerate(perm) if i != j}
            perms.append(m)
        per_level.append([(level, m) for m in perms])
    out = []
    for combo in itertools.product(*per_level):
        moved = sum(len(m) for _, m in combo)
        if moved > max_moved:
            continue
        out.append(am.Aut0({l: m for l, m in combo if m}))
    return out


# ---------------------------------------------------------------------------
# shrinking


def shrink_cond0(p):
    """Structurally smaller variants: drop a leaf vertex or a label bit."""
    for v in sorted(p.tree.max_points()):
        parents = p.tree.parent_map()
        del parents[v]
        tree = FlimTree(parents, floor=p.tree.floor)
        yield Cond0(tree, {w: l for w, l in p.label_map().items() if w in tree})
    for v, lab in sorted(p.label_map().items()):
        for pos in sorted(lab):
            labels = p.label_map()
            labels[v] = {q: b for q, b in lab.items() if q != pos}
            if not labels[v]:
                del labels[v]
            yield Cond0(p.tree, labels)


def shrink_cond1(p):
    """Drop one whole block or one column."""
    for level in p.levels():
        blocks = p.block_map()
        del blocks[level]
        yield Cond1(blocks)
        xs, ys, bits = p.block(level)
        for y in sorted(ys):
            if len(ys) == 1:
                continue
            blocks = p.block_map()
            blocks[level] = (
                xs,
                ys - {y},
                {c: b for c, b in bits.items() if c[1] != y},
            )
            yield Cond1(blocks)


def shrink_value(value):
    if isinstance(value, Cond0):
        yield from shrink_cond0(value)
    elif isinstance(value, Cond1):
        yield from shrink_cond1(value)
    elif isinstance(value, ProductCond):
        for c0 in shrink_cond0(value.c0):
            yield ProductCond(c0, value.c1)
        for c1 in shrink_cond1(value.c1):
            yield ProductCond(value.c0, c1)


def shrink_to_minimal(value, still_fails, max_rounds=32):
    """Greedy descent: keep shrinking while a smaller variant still fails."""
    current = value
    for _ in range(max_rounds):
        for cand in shrink_value(current):
            try:
                if still_fails(cand):
                    current = cand
                    break
            except Exception:
                continue
        else:
            return current
    return current
