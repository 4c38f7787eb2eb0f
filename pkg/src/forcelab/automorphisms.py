"""Automorphisms of the tree forcing and partial automorphisms of the
rectangular forcing, with the Fix/Small subgroup family.

A tree automorphism permutes vertex indices level by level (finite support
per level) and transports labels along vertices.  A partial rectangular
automorphism carries, per distinguished level: a finitely supported row
permutation, a rectangle on which it may act columnwise, per-position
bijections of the support rows, and bit flips for rows outside the support.
It acts only on conditions whose blocks contain its rectangle.
"""

import itertools
from dataclasses import dataclass

from . import conditions as cnd
from . import core, errors
from .core import FlimTree, block_of, f_lim, succ_prime
from .errors import ForceLabError


def _as_perm(mapping):
    """Normalize a finite-support index map: drop fixed points, check
    bijectivity on the support."""
    m = {i: j for i, j in dict(mapping).items() if i != j}
    if set(m) != set(m.values()):
        raise ForceLabError(errors.OVERLAP, "index map is not a finite-support permutation")
    return m


class Aut0:
    """A total tree automorphism: finite-support index permutations per
    level, identity above ``height``."""

    __slots__ = ("height", "_perms", "_key")

    def __init__(self, perms=(), height=None):
        stored = {}
        for level, m in dict(perms).items():
            m = _as_perm(m)
            if m:
                stored[level] = m
        self._perms = stored
        if height is None:
            height = max(stored, default=0)
        self.height = height
        # equality is extensional: the height tag does not affect the action
        self._key = frozenset((l, tuple(sorted(m.items()))) for l, m in stored.items())

    def perm(self, level):
        return dict(self._perms.get(level, ()))

    def perm_map(self):
        return {l: dict(m) for l, m in self._perms.items()}

    def levels(self):
        return sorted(self._perms)

    def index_image(self, level, i):
        return self._perms.get(level, {}).get(i, i)

    def vertex_image(self, v):
        return (v[0], self.index_image(v[0], v[1]))

    def is_identity(self):
        return not self._perms

    def __eq__(self, other):
        return isinstance(other, Aut0) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Aut0({self.perm_map()!r}, height={self.height})"


IDENT0 = Aut0()


def validate_aut0(s, pi):
    errs = []
    for level, m in pi.perm_map().items():
        if not (0 <= level < s.n_levels):
            errs.append((errors.INDEX_OUT_OF_RANGE, f"no level {level}"))
            continue
        if level > pi.height:
            errs.append((errors.STRUCTURE_MISMATCH, f"motion above the height at level {level}"))
        bound = f_lim(s, level)
        if any(not (0 <= i < bound) for i in set(m) | set(m.values())):
            errs.append((errors.INDEX_OUT_OF_RANGE, f"index out of range at level {level}"))
    return errs


def apply0(pi, x):
    """Apply a tree automorphism to a tree or a tree condition."""
    if isinstance(x, FlimTree):
        parents = {}
        for v, par in x.parent_map().items():
            parents[pi.vertex_image(v)] = None if par is None else pi.vertex_image(par)
        return FlimTree(parents, floor=x.floor)
    tree = apply0(pi, x.tree)
    labels = {pi.vertex_image(v): l for v, l in x.label_map().items()}
    return cnd.Cond0(tree, labels)


def compose0(sigma, pi):
    """The automorphism acting as sigma after pi."""
    perms = {}
    for level in set(sigma.levels()) | set(pi.levels()):
        support = set(sigma.perm(level)) | set(pi.perm(level))
        perms[level] = {i: sigma.index_image(level, pi.index_image(level, i)) for i in support}
    return Aut0(perms, height=max(sigma.height, pi.height))


def invert0(pi):
    return Aut0({l: {j: i for i, j in m.items()} for l, m in pi.perm_map().items()}, pi.height)


def is_small0(pi, width):
    """Every index moves only within its width-W block."""
    for m in pi.perm_map().values():
        for i, j in m.items():
            if block_of(i, width) != block_of(j, width):
                return False
    return True


@dataclass(frozen=True)
class SubgroupGen:
    """One Fix/Small subgroup generator.

    ``tag`` is one of fix0/small0/fix1/small1; ``value`` is the fixed index
    (fix) or the cut (small, indices below the cut)."""

    tag: str
    level: int
    value: int


def group_spec(*gens):
    return tuple(gens)


def validate_subgroup_gen(s, g, width):
    errs = []
    if g.tag in ("fix0", "small0"):
        bound = f_lim(s, g.level)
    elif g.tag in ("fix1", "small1"):
        bound = s.f(g.level) if s.kind(g.level) == core.SUCCESSOR else 0
    else:
        return [(errors.STRUCTURE_MISMATCH, f"unknown subgroup tag {g.tag!r}")]
    if g.tag.startswith("fix") and not (0 <= g.value < bound):
        errs.append((errors.INDEX_OUT_OF_RANGE, f"fixed index out of range in {g}"))
    if g.tag.startswith("small") and not (0 < g.value <= bound):
        errs.append((errors.INDEX_OUT_OF_RANGE, f"cut out of range in {g}"))
    if g.tag == "small0" and g.value % width and g.value < bound:
        errs.append((errors.STRUCTURE_MISMATCH, f"cut in {g} straddles a block"))
    return errs


class Level1Aut:
    """Per-level data of a partial rectangular automorphism."""

    __slots__ = ("supp", "f", "xs", "ys", "flips", "colmaps", "_key")

    def __init__(self, supp=(), f=(), xs=(), ys=(), flips=(), colmaps=()):
        self.supp = frozenset(supp)
        self.f = _as_perm(dict(f) or {i: i for i in self.supp})
        self.xs = frozenset(xs)
        self.ys = frozenset(ys) | self.supp
        self.flips = {c: b for c, b in dict(flips).items() if b}
        order = self.coord_order()
        maps = {}
        for x, cm in dict(colmaps).items():
            cm = {tuple(k): tuple(v) for k, v in dict(cm).items()}
            if any(cm.get(v, v) != v for v in _all_vectors(order)):
                maps[x] = cm
        self.colmaps = maps
        self._key = (
            self.supp,
            tuple(sorted(self.f.items())),
            self.xs,
            self.ys,
            tuple(sorted(self.flips.items())),
            tuple(sorted((x, tuple(sorted(cm.items()))) for x, cm in maps.items())),
        )

    def coord_order(self):
        return tuple(sorted(self.supp))

    def colmap(self, x):
        order = self.coord_order()
        return dict(self.colmaps.get(x, {v: v for v in _all_vectors(order)}))

    def is_trivial(self):
        return not (self.supp or self.flips or self.xs or self.ys)

    def __eq__(self, other):
        return isinstance(other, Level1Aut) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (
            f"Level1Aut(supp={sorted(self.supp)}, f={self.f}, xs={sorted(self.xs)}, "
            f"ys={sorted(self.ys)}, flips={self.flips}, colmaps={self.colmaps})"
        )


def _all_vectors(order):
    return [bits for bits in itertools.product((0, 1), repeat=len(order))]


class Aut1:
    """A partial rectangular automorphism: per-level records, acting on
    conditions whose blocks contain every per-level rectangle."""

    __slots__ = ("_levels", "_key")

    def __init__(self, levels=()):
        stored = {l: rec for l, rec in dict(levels).items() if not rec.is_trivial()}
        self._levels = stored
        self._key = frozenset(stored.items())

    def levels(self):
        return sorted(self._levels)

    def has_level(self, level):
        return level in self._levels

    def at(self, level):
        return self._levels.get(level, Level1Aut())

    def level_map(self):
        return dict(self._levels)

    def is_identity_data(self):
        return all(not rec.supp and not rec.flips for rec in self._levels.values())

    def __eq__(self, other):
        return isinstance(other, Aut1) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Aut1({self.level_map()!r})"


IDENT1 = Aut1()


def validate_aut1(s, pi):
    errs = []
    allowed = set(succ_prime(s))
    for level in pi.levels():
        rec = pi.at(level)
        if level not in allowed:
            errs.append((errors.STRUCTURE_MISMATCH, f"record at non-distinguished level {level}"))
            continue
        bound = s.f(level)
        if any(not (0 <= y < bound) for y in rec.ys) or any(x < 0 for x in rec.xs):
            errs.append((errors.INDEX_OUT_OF_RANGE, f"rectangle out of range at level {level}"))
        if set(rec.f) - rec.supp:
            errs.append((errors.STRUCTURE_MISMATCH, f"row map outside the support at {level}"))
        for (x, y) in rec.flips:
            if x not in rec.xs or y not in rec.ys or y in rec.supp:
                errs.append((errors.STRUCTURE_MISMATCH, f"flip outside the rectangle at {level}"))
        order = rec.coord_order()
        vectors = _all_vectors(order)
        for x, cm in rec.colmaps.items():
            if x not in rec.xs:
                errs.append((errors.STRUCTURE_MISMATCH, f"colmap off the rectangle at {level}"))
            if sorted(cm) != sorted(vectors) or sorted(cm.values()) != sorted(vectors):
                errs.append((errors.STRUCTURE_MISMATCH, f"colmap not a bijection at {level}"))
    return errs


def in_dpi(pi, p):
    """Membership in the dense action domain: every level record's
    rectangle is contained in the matching block of p, when p has one."""
    for level in pi.levels():
        if not p.has_block(level):
            continue
        rec = pi.at(level)
        xs, ys, _ = p.block(level)
        if not (rec.xs <= xs and rec.ys <= ys):
            return False
    return True


def dpi(pi):
    return lambda p: in_dpi(pi, p)


def _act_block(rec, xs, ys, bits):
    order = rec.coord_order()
    pos = {i: k for k, i in enumerate(order)}
    out = {}
    for x in xs:
        if x in rec.xs and rec.supp:
            col_in = tuple(bits[(x, i)] for i in order)
            col_out = rec.colmap(x).get(col_in, col_in)
        else:
            col_out = None
        for y in ys:
            if y in rec.supp:
                if col_out is not None:
                    out[(x, y)] = col_out[pos[y]]
                else:
                    out[(x, y)] = bits[(x, rec.f.get(y, y))]
            else:
                out[(x, y)] = bits[(x, y)] ^ rec.flips.get((x, y), 0)
    return (xs, ys, out)


def apply1(pi, p):
    """Apply a partial automorphism to a rectangular condition in its
    action domain; domains and supports are preserved."""
    if not in_dpi(pi, p):
        raise ForceLabError(errors.NOT_IN_DOMAIN, "condition does not cover the rectangle")
    blocks = {}
    for level, (xs, ys, bits) in p.block_map().items():
        rec = pi.at(level)
        if rec.is_trivial():
            blocks[level] = (xs, ys, bits)
        else:
            blocks[level] = _act_block(rec, xs, ys, bits)
    return cnd.Cond1(blocks)


def _col_action(rec, x, order, vec):
    """The bijection a level record induces on bit vectors over ``order``
    (a superset of its support) at position x."""
    pos = {i: k for k, i in enumerate(order)}
    own = rec.coord_order()
    out = list(vec)
    if x in rec.xs and rec.supp:
        col_in = tuple(vec[pos[i]] for i in own)
        col_out = rec.colmap(x).get(col_in, col_in)
        for k, i in enumerate(own):
            out[pos[i]] = col_out[k]
    else:
        for i in rec.supp:
            out[pos[i]] = vec[pos[rec.f.get(i, i)]]
    if x in rec.xs:
        for i in order:
            if i not in rec.supp:
                out[pos[i]] = out[pos[i]] ^ rec.flips.get((x, i), 0)
    return tuple(out)


def compose1(sigma, pi):
    """The partial automorphism acting as sigma after pi; its action
    domain is the intersection of the two domains."""
    levels = {}
    for level in set(sigma.levels()) | set(pi.levels()):
        a, b = pi.at(level), sigma.at(level)
        supp = a.supp | b.supp
        order = tuple(sorted(supp))
        f = {}
        for i in supp:
            f[i] = a.f.get(b.f.get(i, i), b.f.get(i, i))
        xs = a.xs | b.xs
        ys = a.ys | b.ys | supp
        flips = {}
        for x, y in set(a.flips) | set(b.flips):
            if y not in supp:
                bit = a.flips.get((x, y), 0) ^ b.flips.get((x, y), 0)
                if bit:
                    flips[(x, y)] = bit
        colmaps = {}
        for x in xs:
            cm = {}
            for vec in _all_vectors(order):
                cm[vec] = _col_action(b, x, order, _col_action(a, x, order, vec))
            colmaps[x] = cm
        levels[level] = Level1Aut(supp, f, xs, ys, flips, colmaps)
    return Aut1(levels)


def invert1(pi):
    levels = {}
    for level in pi.levels():
        rec = pi.at(level)
        inv_f = {j: i for i, j in rec.f.items()}
        colmaps = {x: {v: k for k, v in rec.colmap(x).items()} for x in rec.colmaps}
        levels[level] = Level1Aut(rec.supp, inv_f, rec.xs, rec.ys, rec.flips, colmaps)
    return Aut1(levels)


def _removable_row(rec, i):
    """A support row is removable when the row map fixes it and every
    colmap treats it as an independent constant flip."""
    if rec.f.get(i, i) != i:
        return None
    order = rec.coord_order()
    pos = order.index(i)
    consts = {}
    for x in rec.xs:
        cm = rec.colmap(x)
        const = None
        for vec, out in cm.items():
            flipped = tuple(b ^ (1 if k == pos else 0) for k, b in enumerate(vec))
            expect = tuple(b ^ (1 if k == pos else 0) for k, b in enumerate(out))
            if cm[flipped] != expect:
                return None
            c = out[pos] ^ vec[pos]
            if const is None:
                const = c
            elif const != c:
                return None
        consts[x] = 0 if const is None else const
    return consts


def normalize_supp(pi):
    """Shrink each level's support to the rows the record really moves,
    converting constant row effects into flips.  Extensionally equal to
    the input on the shared action domain; idempotent."""
    levels = {}
    for level in pi.levels():
        rec = pi.at(level)
        changed = True
        while changed:
            changed = False
            for i in sorted(rec.supp):
                consts = _removable_row(rec, i)
                if consts is None:
                    continue
                supp = rec.supp - {i}
                order = rec.coord_order()
                keep = [k for k, j in enumerate(order) if j != i]
                pos = order.index(i)
                colmaps = {}
                for x in rec.xs:
                    cm = rec.colmap(x)
                    new = {}
                    for vec, out in cm.items():
                        if vec[pos] == 0:
                            new[tuple(vec[k] for k in keep)] = tuple(out[k] for k in keep)
                    colmaps[x] = new
                flips = dict(rec.flips)
                for x, c in consts.items():
                    if c:
                        flips[(x, i)] = 1
                f = {a: b for a, b in rec.f.items() if a != i}
                rec = Level1Aut(supp, f, rec.xs, rec.ys, flips, colmaps)
                changed = True
                break
        levels[level] = rec
    return Aut1(levels)


def in_subgroup(s, pi, g, width):
    """Membership of a tree automorphism (fix0/small0) or a partial
    rectangular automorphism (fix1/small1) in one subgroup generator."""
    if g.tag == "fix0":
        return pi.index_image(g.level, g.value) == g.value
    if g.tag == "small0":
        m = pi.perm(g.level)
        return all(
            block_of(m.get(i, i), width) == block_of(i, width) for i in range(g.value)
        )
    rec = pi.at(g.level)
    if g.tag == "small1":
        return not (rec.supp & set(range(g.value)))
    if g.tag == "fix1":
        i = g.value
        if i in rec.supp:
            if rec.f.get(i, i) != i:
                return False
            pos = rec.coord_order().index(i)
            for x in rec.xs:
                if any(out[pos] != vec[pos] for vec, out in rec.colmap(x).items()):
                    return False
            return True
        return all(y != i for (_, y) in rec.flips)
    raise ForceLabError(errors.STRUCTURE_MISMATCH, f"unknown subgroup tag {g.tag!r}")


def in_spec(s, pi0, pi1, spec, width):
    """Membership of a (tree, rectangular) automorphism pair in a finite
    intersection of subgroup generators."""
    for g in spec:
        pi = pi0 if g.tag.endswith("0") else pi1
        if not in_subgroup(s, pi, g, width):
            return False
    return True


def conjugate_witness(s, pi, g, width):
    """A finite intersection of generators that conjugates into the given
    subgroup: every sigma in the witness has pi sigma pi^{-1} in <g>."""
    if g.tag == "fix0":
        inv = invert0(pi)
        return group_spec(SubgroupGen("fix0", g.level, inv.index_image(g.level, g.value)))
    if g.tag == "small0":
        moved = pi.perm(g.level)
        extra = sorted(
            j for j in moved if j < g.value or pi.index_image(g.level, j) < g.value
        )
        return group_spec(
            SubgroupGen("small0", g.level, g.value),
            *[SubgroupGen("fix0", g.level, j) for j in extra],
        )
    rec = pi.at(g.level)
    if g.tag == "fix1":
        cols = sorted(rec.supp | {g.value})
        return group_spec(*[SubgroupGen("fix1", g.level, j) for j in cols])
    if g.tag == "small1":
        extra = sorted(
            j for j in rec.supp if j < g.value or rec.f.get(j, j) < g.value
        )
        return group_spec(
            SubgroupGen("small1", g.level, g.value),
            *[SubgroupGen("fix1", g.level, j) for j in extra],
        )
    raise ForceLabError(errors.STRUCTURE_MISMATCH, f"unknown subgroup tag {g.tag!r}")


def random_aut0(s, rng, levels=None, max_moves=2):
    """A seeded random tree automorphism built from block-free transpositions."""
    if levels is None:
        levels = [l for l in range(1, s.n_levels) if f_lim(s, l) >= 2]
    perms = {}
    for _ in range(rng.randint(0, max_moves)):
        level = rng.choice(levels)
        bound = f_lim(s, level)
        i, j = rng.randrange(bound), rng.randrange(bound)
        if i != j:
            m = perms.setdefault(level, list(range(bound)))
            m[i], m[j] = m[j], m[i]
    return Aut0({l: dict(enumerate(m)) for l, m in perms.items()}, height=s.n_levels - 1)


def random_aut1(s, rng, pos_bound=2, max_levels=1):
    """A seeded random partial rectangular automorphism."""
    levels = {}
    pool = list(succ_prime(s))
    rng.shuffle(pool)
    for level in pool[: rng.randint(0, max_levels)]:
        bound = s.f(level)
        supp = {i for i in range(bound) if rng.random() < 0.4}
        order = tuple(sorted(supp))
        perm = list(order)
        rng.shuffle(perm)
        f = dict(zip(order, perm))
        xs = {x for x in range(pos_bound) if rng.random() < 0.5}
        ys = set(supp) | {y for y in range(bound) if rng.random() < 0.3}
        flips = {}
        for x in xs:
            for y in ys - supp:
                if rng.random() < 0.3:
                    flips[(x, y)] = 1
        colmaps = {}
        for x in xs:
            vectors = _all_vectors(order)
            image = list(vectors)
            rng.shuffle(image)
            colmaps[x] = dict(zip(vectors, image))
        levels[level] = Level1Aut(supp, f, xs, ys, flips, colmaps)
    return Aut1(levels)


def sample_spec_member(s, spec, rng, width, pos_bound=2, max_tries=400):
    """A random (tree, rectangular) automorphism pair inside a finite
    intersection of subgroup generators, by rejection sampling."""
    for _ in range(max_tries):
        pi0 = random_aut0(s, rng)
        pi1 = random_aut1(s, rng, pos_bound=pos_bound)
        if in_spec(s, pi0, pi1, spec, width):
            return pi0, pi1
    raise ForceLabError(errors.NO_WITNESS, "could not sample a subgroup member")


def _complete_permutation(partial):
    """Extend a partial block-respecting injection to a permutation by
    closing each open chain back to its start."""
    perm = dict(partial)
    sources, targets = set(perm), set(perm.values())
    for start in sorted(sources - targets):
        j = perm[start]
        while j in perm:
            j = perm[j]
        perm[j] = start
    return perm


def _fresh_index(i, used, forbidden, width, bound):
    blk = block_of(i, width)
    for j in range(blk * width, min((blk + 1) * width, bound)):
        if j not in used and j not in forbidden:
            return j
    raise ForceLabError(
        errors.BLOCK_EXHAUSTED, f"no fresh index in block {blk}", index=i, bound=bound
    )


def homog0(s, p, q, floor, protected, width):
    """A small tree automorphism fixing the protected tree, identity at
    levels up to ``floor``, whose image of p is compatible with q.

    Non-protected branches of p that clash with q are moved to fresh
    indices inside their block; limit-level vertices re-attach to q's
    vertex over the same image parent when one exists, so the union never
    splits at a limit.
    """
    partial = {level: {} for level in range(s.n_levels)}
    image = {}
    q_idx = {level: q.tree.indices_at(level) for level in range(s.n_levels)}
    p_idx = {level: p.tree.indices_at(level) for level in range(s.n_levels)}
    limit_levels = set(s.limit_levels())

    def labels_clash(v, w):
        a, b = p.label(v), q.label(w)
        return any(b.get(pos) not in (None, bit) for pos, bit in a.items())

    for v in sorted(p.tree.vertices):
        level, i = v
        par = p.tree.parent(v)
        ipar = image[par] if par is not None else None
        used = set(partial[level].values())
        pinned = level <= floor or v in protected
        target = None
        if not pinned and level in limit_levels:
            match = [w for w in q.tree.at_level(level) if q.tree.parent(w) == ipar]
            if match:
                target = match[0][1]
                if target in used:
                    raise ForceLabError(errors.BLOCK_EXHAUSTED, f"forced target for {v} taken")
        if pinned:
            target = i
            if i in used:
                raise ForceLabError(errors.INCOMPATIBLE, f"pinned vertex {v} collides")
            if v in q.tree and (q.tree.parent(v) != ipar or labels_clash(v, v)):
                raise ForceLabError(
                    errors.INCOMPATIBLE, f"conditions clash at the pinned vertex {v}"
                )
        elif target is None:
            w = (level, i)
            keep_ok = i not in used and (
                i not in q_idx[level]
                or (q.tree.parent(w) == ipar and not labels_clash(v, w))
            )
            if level in limit_levels and i in q_idx[level]:
                keep_ok = False  # q's vertex has a different parent: would split
            if keep_ok:
                target = i
            else:
                target = _fresh_index(
                    i, used, p_idx[level] | q_idx[level], width, f_lim(s, level)
                )
        partial[level][i] = target
        image[v] = (level, target)
    perms = {level: _complete_permutation(m) for level, m in partial.items() if m}
    return Aut0(perms, height=max([s.n_levels - 1] + list(perms)))


def homog1(p, q, floor):
    """A partial rectangular automorphism with empty supports whose image
    of p is compatible with q: flip exactly the cells where they differ,
    on the intersection rectangle, above the floor."""
    levels = {}
    for level in set(p.levels()) & set(q.levels()):
        if level <= floor:
            continue
        xs_p, ys_p, bits_p = p.block(level)
        xs_q, ys_q, bits_q = q.block(level)
        xs, ys = xs_p & xs_q, ys_p & ys_q
        if not xs or not ys:
            continue
        flips = {}
        for x in xs:
            for y in ys:
                if bits_p[(x, y)] != bits_q[(x, y)]:
                    flips[(x, y)] = 1
        levels[level] = Level1Aut((), (), xs, ys, flips, ())
    return Aut1(levels)


def index_swap_aut0(s, targets, cascade=None, width=None):
    """Transpositions of level indices, optionally cascaded along the
    branches of a tree condition to fresh indices at higher levels."""
    if width is None:
        width = s.block_width
    perms = {}
    for level, a, b in targets:
        m = perms.setdefault(level, {})
        if a in m or b in m:
            raise ForceLabError(errors.OVERLAP, f"index reused in a swap at level {level}")
        if a != b:
            m[a], m[b] = b, a
    if cascade is not None:
        tree = cascade.tree if isinstance(cascade, cnd.Cond0) else cascade
        swapped = {(level, a) for level, a, b in targets} | {
            (level, b) for level, a, b in targets
        }
        for v in sorted(tree.vertices):
            level, i = v
            hit = any(
                u[0] < level and (u[0], u[1]) in swapped for u in tree.chain(v)
            )
            if not hit or (level, i) in swapped:
                continue
            m = perms.setdefault(level, {})
            if i in m:
                continue
            j = _fresh_index(
                i, set(m) | set(m.values()), tree.indices_at(level), width, f_lim(s, level)
            )
            m[i], m[j] = j, i
    return Aut0(perms, height=s.n_levels - 1)


def column_swap_aut1(s, swaps, doms):
    """Per-level column transpositions with matching per-position vector
    maps and no flips; ``doms`` gives the rectangle per level."""
    by_level = {}
    for level, j, jp in swaps:
        pairs = by_level.setdefault(level, [])
        seen = {c for pair in pairs for c in pair}
        if j in seen or jp in seen or j == jp:
            raise ForceLabError(errors.OVERLAP, f"column reused in a swap at level {level}")
        pairs.append((j, jp))
    levels = {}
    for level, pairs in by_level.items():
        xs, ys = doms.get(level, ((), ()))
        supp = {c for pair in pairs for c in pair}
        f = {}
        for j, jp in pairs:
            f[j], f[jp] = jp, j
        order = tuple(sorted(supp))
        pos = {i: k for k, i in enumerate(order)}
        cm = {}
        for vec in _all_vectors(order):
            cm[vec] = tuple(vec[pos[f.get(i, i)]] for i in order)
        colmaps = {x: dict(cm) for x in xs}
        levels[level] = Level1Aut(supp, f, xs, set(ys) | supp, (), colmaps)
    return Aut1(levels)
