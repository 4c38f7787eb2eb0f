"""The cut-width quotient layer: partition-coded trees below a successor
level, indexed quotient conditions, projections with lifting, and the
canonical transports between restricted tree forcings.

A quotient tree forgets the indices of a labeled tree below its top
level; only the support at the top and the meet levels of the branches
remain.  The indexing function attached to a quotient condition
remembers protected-branch indices and indices below the small cuts.
"""

import itertools
from dataclasses import dataclass

from . import automorphisms as am
from . import conditions as cnd
from . import core, errors
from .conditions import Cond0, Cond1, ProductCond, union0
from .core import FlimTree, f_lim, succ_prime, tree_leq
from .errors import ForceLabError

STAR = "*"


def _cell_key(cell):
    return tuple(sorted(cell))


class QTree:
    """A tree below the top level, coded by one partition of the support
    per level.  Partitions refine upward, the base is one class, the top
    is discrete, and limit levels repeat the preceding level."""

    __slots__ = ("top_level", "support", "_parts", "_key")

    def __init__(self, top_level, support=(), partitions=()):
        self.top_level = top_level
        self.support = frozenset(support)
        parts = {}
        given = dict(partitions)
        for level in range(top_level + 1):
            cells = given.get(level, ())
            parts[level] = frozenset(frozenset(c) for c in cells if c)
        self._parts = parts
        self._key = (
            top_level,
            self.support,
            tuple(frozenset(parts[l]) for l in range(top_level + 1)),
        )

    def cells(self, level):
        return sorted(self._parts.get(level, ()), key=_cell_key)

    def vertices(self):
        return [
            (level, cell)
            for level in range(self.top_level + 1)
            for cell in self.cells(level)
        ]

    def cell_of(self, level, index):
        for cell in self._parts.get(level, ()):
            if index in cell:
                return cell
        return None

    def parent_cell(self, level, cell):
        if level == 0:
            return None
        return self.cell_of(level - 1, min(cell))

    def partition_map(self):
        return {l: set(self._parts[l]) for l in range(self.top_level + 1)}

    def __contains__(self, v):
        level, cell = v
        return frozenset(cell) in self._parts.get(level, ())

    def __len__(self):
        return sum(len(c) for c in self._parts.values())

    def __eq__(self, other):
        return isinstance(other, QTree) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        shown = {l: sorted(map(_cell_key, cs)) for l, cs in self._parts.items() if cs}
        return f"QTree({self.top_level}, {sorted(self.support)}, {shown})"


def validate_qtree(s, t):
    """Check the partition-sequence invariants; return (code, message) pairs."""
    errs = []
    if not (0 < t.top_level < s.n_levels) or s.kind(t.top_level) != core.SUCCESSOR:
        errs.append((errors.BAD_LEVEL_ORDER, "top level must be a successor level"))
        return errs
    bound = f_lim(s, t.top_level)
    for i in t.support:
        if not 0 <= i < bound:
            errs.append((errors.INDEX_OUT_OF_RANGE, f"support index {i} out of range"))
    for level in range(t.top_level + 1):
        cells = t._parts[level]
        flat = [i for c in cells for i in c]
        if sorted(flat) != sorted(t.support):
            errs.append(
                (errors.STRUCTURE_MISMATCH, f"level {level} does not partition the support")
            )
            return errs
    if t.support:
        if t._parts[0] != frozenset({t.support}):
            errs.append((errors.STRUCTURE_MISMATCH, "base partition must be one class"))
        top = frozenset(frozenset({i}) for i in t.support)
        if t._parts[t.top_level] != top:
            errs.append((errors.STRUCTURE_MISMATCH, "top partition must be discrete"))
    for level in range(1, t.top_level + 1):
        for cell in t._parts[level]:
            if t.parent_cell(level, cell) is None or not cell <= t.parent_cell(level, cell):
                errs.append(
                    (errors.STRUCTURE_MISMATCH, f"partition at level {level} does not refine")
                )
        if s.kind(level) == core.LIMIT and t._parts[level] != t._parts[level - 1]:
            errs.append((errors.LIMIT_SPLIT, f"limit level {level} splits a class"))
    return errs


def check_qtree(s, t):
    errs = validate_qtree(s, t)
    if errs:
        raise ForceLabError(errs[0][0], errs[0][1])
    return t


def qtree_leq(sub, sup):
    """Extension order: larger support, same meet structure on the old
    support.  The empty tree is the maximum."""
    if sub.top_level != sup.top_level:
        return False
    if not sub.support >= sup.support:
        return False
    for level in range(sup.top_level + 1):
        trace = {
            frozenset(c & sup.support) for c in sub._parts[level] if c & sup.support
        }
        if trace != sup._parts[level]:
            return False
    return True


def qtree_embed(t, s):
    """The canonical cell map of t into an extension s: each cell goes to
    the unique containing cell, whose trace on supp t it is."""
    if not qtree_leq(s, t):
        raise ForceLabError(errors.NOT_COMPARABLE, "target does not extend the source")
    out = {}
    for level, cell in t.vertices():
        out[(level, cell)] = (level, s.cell_of(level, min(cell)))
    return out


class ICond:
    """A quotient condition: a partition tree, labels on its cells, and
    the partial indexing of protected and sub-cut cells."""

    __slots__ = ("qtree", "_labels", "_n", "_key")

    def __init__(self, qtree, labels=(), n_index=()):
        self.qtree = qtree
        stored = {}
        for v, lab in dict(labels).items():
            lab = {p: b for p, b in dict(lab).items()}
            if lab:
                stored[(v[0], frozenset(v[1]))] = lab
        self._labels = stored
        self._n = {(v[0], frozenset(v[1])): val for v, val in dict(n_index).items()}
        self._key = (
            qtree,
            frozenset((v, tuple(sorted(l.items()))) for v, l in stored.items()),
            frozenset(self._n.items()),
        )

    def label(self, v):
        return dict(self._labels.get((v[0], frozenset(v[1])), ()))

    def label_map(self):
        return {v: dict(l) for v, l in self._labels.items()}

    def n_value(self, v):
        return self._n.get((v[0], frozenset(v[1])))

    def n_map(self):
        return dict(self._n)

    def __eq__(self, other):
        return isinstance(other, ICond) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        labs = {(v[0], _cell_key(v[1])): l for v, l in self._labels.items()}
        ns = {(v[0], _cell_key(v[1])): n for v, n in self._n.items()}
        return f"ICond({self.qtree!r}, {labs!r}, {ns!r})"


@dataclass(frozen=True)
class SymContext:
    """The protected data of one cut: the reference condition, the top
    cut level, the protected branches, the small cuts on both factors,
    and the two width cuts."""

    r_bar: Cond0
    kappa_plus: int
    protected_tops: tuple = ()
    small0_cuts: tuple = ()
    fix1_cols: tuple = ()
    small1_cuts: tuple = ()
    beta_tilde: int = 0
    beta: int = 1


def i_primes(s, ctx):
    """The top-level projections of the protected branches: predecessors
    for high tops, the least successor for low ones."""
    t = ctx.r_bar.tree
    out = []
    for lvl, i in ctx.protected_tops:
        if (lvl, i) not in t:
            raise ForceLabError(errors.STRUCTURE_MISMATCH, f"protected {(lvl, i)} not in the tree")
        if lvl >= ctx.kappa_plus:
            out.append(t.pred_at((lvl, i), ctx.kappa_plus)[1])
        else:
            succs = sorted(
                j
                for (l2, j) in t.vertices
                if l2 == ctx.kappa_plus and (lvl, i) in t.chain((l2, j))
            )
            if not succs:
                raise ForceLabError(errors.NO_WITNESS, f"no top above {(lvl, i)}")
            out.append(succs[0])
    return tuple(out)


def cut_levels(ctx):
    return {lvl: a for lvl, a in ctx.small0_cuts if lvl < ctx.kappa_plus}


def validate_ctx(s, ctx):
    errs = list(cnd.validate_cond0(s, ctx.r_bar))
    kp = ctx.kappa_plus
    if not (0 < kp < s.n_levels) or s.kind(kp) != core.SUCCESSOR:
        errs.append((errors.BAD_LEVEL_ORDER, "cut level must be a successor level"))
        return errs
    for v in ctx.r_bar.tree.max_points():
        if v[0] < kp:
            errs.append((errors.NOT_TILDE, f"reference branch stops below the cut at {v}"))
    if not 0 <= ctx.beta_tilde < ctx.beta <= f_lim(s, kp):
        errs.append((errors.INDEX_OUT_OF_RANGE, "width cuts out of order"))
    if not errs:
        low = list(i_primes(s, ctx))
        low += [a for lvl, a in ctx.small0_cuts if lvl <= kp]
        low += [i for lvl, i in ctx.fix1_cols if lvl < kp]
        low += [a for lvl, a in ctx.small1_cuts if lvl < kp]
        if any(x >= ctx.beta_tilde for x in low):
            errs.append((errors.INDEX_OUT_OF_RANGE, "lower cut not above the protected data"))
    if not errs:
        errs.extend(tilde_errors(s, ctx.r_bar, ctx))
    return errs


def tilde_errors(s, p, ctx):
    """Membership defects for the dense subforcing below the reference
    condition: tree extension, full height, and the sub-cut reach rule."""
    errs = []
    if not tree_leq(p.tree, ctx.r_bar.tree):
        errs.append((errors.NOT_BELOW_RBAR, "tree does not extend the reference tree"))
        return errs
    kp = ctx.kappa_plus
    for v in p.tree.max_points():
        if v[0] < kp:
            errs.append((errors.NOT_TILDE, f"branch stops below the cut at {v}"))
    tops = [i for (lvl, i) in p.tree.vertices if lvl == kp]
    for lvl, alpha in cut_levels(ctx).items():
        for k in p.tree.indices_at(lvl):
            if k >= alpha:
                continue
            ok = any(
                i < ctx.beta and (lvl, k) in p.tree.chain((kp, i)) for i in tops
            )
            if not ok:
                errs.append(
                    (errors.NOT_TILDE, f"sub-cut vertex {(lvl, k)} has no low top")
                )
    return errs


def in_tilde(s, p, ctx):
    return not tilde_errors(s, p, ctx)


def _project(s, p, ctx):
    """The partition tree of a projection and its embedding back into
    the source tree."""
    kp, beta = ctx.kappa_plus, ctx.beta
    support = frozenset(i for i in p.tree.indices_at(kp) if i < beta)
    parts = {}
    iota = {}
    for level in range(kp + 1):
        classes = {}
        for i in sorted(support):
            pred = p.tree.pred_at((kp, i), level)
            classes.setdefault(pred, set()).add(i)
        parts[level] = [frozenset(c) for c in classes.values()]
        for pred, cell in classes.items():
            iota[(level, frozenset(cell))] = pred
    return QTree(kp, support, parts), iota


def rho0(s, p, ctx):
    """Project a condition of the dense subforcing: forget the indices
    below the cut, pull the labels back along the branch embedding, and
    record the protected and sub-cut indices."""
    errs = tilde_errors(s, p, ctx)
    if errs:
        raise ForceLabError(errs[0][0], errs[0][1])
    qtree, iota = _project(s, p, ctx)
    labels = {}
    for v, target in iota.items():
        lab = p.label(target)
        if lab:
            labels[v] = lab
    n_index = {}
    prot = set(i_primes(s, ctx))
    cuts = cut_levels(ctx)
    for v, target in iota.items():
        level, cell = v
        if cell & prot:
            n_index[v] = target
        elif level in cuts:
            n_index[v] = target if target[1] < cuts[level] else STAR
    return ICond(qtree, labels, n_index)


def one_icond(s, ctx):
    """The maximal quotient condition: the reference tree projected with
    empty labels."""
    stripped = Cond0(ctx.r_bar.tree, {})
    return rho0(s, stripped, ctx)


def required_n_domain(s, qtree, ctx):
    prot = set(i_primes(s, ctx))
    cuts = cut_levels(ctx)
    out = set()
    for level, cell in qtree.vertices():
        if cell & prot or level in cuts:
            out.add((level, cell))
    return out


def validate_icond(s, p, ctx):
    errs = list(validate_qtree(s, p.qtree))
    labelable = set(s.labelable_levels())
    for (level, cell), lab in p.label_map().items():
        if (level, cell) not in p.qtree:
            errs.append((errors.STRUCTURE_MISMATCH, f"label off the tree at {(level, _cell_key(cell))}"))
        elif level not in labelable:
            errs.append((errors.NONEMPTY_LIMIT_LABEL, f"label at non-labelable level {level}"))
    dom = required_n_domain(s, p.qtree, ctx)
    if set(p.n_map()) != dom:
        errs.append((errors.STRUCTURE_MISMATCH, "indexing domain mismatch"))
        return errs
    prot = set(i_primes(s, ctx))
    cuts = cut_levels(ctx)
    rt = ctx.r_bar.tree
    per_level = {}
    for (level, cell), val in p.n_map().items():
        hit = cell & prot
        if hit:
            forced = rt.pred_at((ctx.kappa_plus, min(hit)), level)
            if val != forced:
                errs.append((errors.STRUCTURE_MISMATCH, f"protected cell must carry {forced}"))
            continue
        if val == STAR:
            continue
        if val[0] != level or not 0 <= val[1] < cuts[level]:
            errs.append((errors.INDEX_OUT_OF_RANGE, f"index {val} not below the cut"))
        if val in per_level.setdefault(level, set()):
            errs.append((errors.INCOMPATIBLE, f"index {val} reused at level {level}"))
        per_level[level].add(val)
    return errs


def icond_leq(q, p):
    """Extension of quotient conditions: tree extension, labels grow
    along the cell map, indexing preserved."""
    if not qtree_leq(q.qtree, p.qtree):
        return False
    emb = qtree_embed(p.qtree, q.qtree)
    for v, v_bar in emb.items():
        small = p.label(v)
        big = q.label(v_bar)
        if any(big.get(pos) != bit for pos, bit in small.items()):
            return False
        want = p.n_value(v)
        if want is not None and q.n_value(v_bar) != want:
            return False
    return True


def lift0(s, p, q, ctx):
    """The projection witness: reindex q with fresh indices outside the
    source tree, then merge.  The result extends p and projects below q."""
    rp = rho0(s, p, ctx)
    if not icond_leq(q, rp):
        raise ForceLabError(errors.NOT_AN_EXTENSION, "target does not extend the projection")
    _, iota = _project(s, p, ctx)
    emb = qtree_embed(rp.qtree, q.qtree)
    nbar = {}

    def assign(v, value):
        if nbar.setdefault(v, value) != value:
            raise ForceLabError(errors.INCOMPATIBLE, f"index clash at {v}")

    for cell in q.qtree.cells(ctx.kappa_plus):
        assign((ctx.kappa_plus, cell), (ctx.kappa_plus, min(cell)))
    for v, v_bar in emb.items():
        assign(v_bar, iota[v])
    for v, val in q.n_map().items():
        if val != STAR:
            assign(v, val)
    used = set(nbar.values())
    cuts = cut_levels(ctx)
    for level in range(ctx.kappa_plus + 1):
        for cell in q.qtree.cells(level):
            v = (level, cell)
            if v in nbar:
                continue
            lo = cuts.get(level, 0)
            taken = set(p.tree.indices_at(level)) | {
                i for (l2, i) in used if l2 == level
            }
            pick = next(
                (i for i in range(lo, f_lim(s, level)) if i not in taken), None
            )
            if pick is None:
                raise ForceLabError(errors.POOL_EXHAUSTED, f"no fresh index at level {level}")
            nbar[v] = (level, pick)
            used.add((level, pick))
    parents = {}
    labels = {}
    for level in range(ctx.kappa_plus + 1):
        for cell in q.qtree.cells(level):
            v = (level, cell)
            par = q.qtree.parent_cell(level, cell)
            parents[nbar[v]] = nbar[(level - 1, par)] if par is not None else None
            lab = q.label(v)
            if lab:
                labels[nbar[v]] = lab
    q_bar = cnd.check_cond0(s, Cond0(FlimTree(parents), labels))
    return union0(s, p, q_bar)


def filter_rho0(s, h, ctx):
    """Generator-wise image of a tree filter under the projection."""
    return tuple(rho0(s, g, ctx) for g in h.generators)


def rho1(s, p, kappa_plus, beta):
    """Project a rectangular condition: drop the levels from the cut up
    and truncate the column domains at the width cut."""
    blocks = {}
    for level, (xs, ys, bits) in p.block_map().items():
        if level >= kappa_plus:
            continue
        ys2 = {y for y in ys if y < beta}
        if not ys2:
            continue
        blocks[level] = (xs, ys2, {c: b for c, b in bits.items() if c[1] < beta})
    return Cond1(blocks)


def lift1(s, p, q, kappa_plus, beta):
    """The projection witness on the rectangular factor: merge q into p,
    zero-filling the closure cells the truncation had removed."""
    if not cnd.leq1(q, rho1(s, p, kappa_plus, beta)):
        raise ForceLabError(errors.NOT_AN_EXTENSION, "target does not extend the projection")
    blocks = q.block_map()
    for level, (xs, ys, bits) in p.block_map().items():
        if level not in blocks:
            blocks[level] = (xs, ys, bits)
            continue
        xs2, ys2, bits2 = blocks[level]
        xs2, ys2 = xs2 | xs, ys2 | ys
        merged = dict(bits)
        merged.update(bits2)
        for cell in itertools.product(xs2, ys2):
            merged.setdefault(cell, 0)
        blocks[level] = (xs2, ys2, merged)
    return cnd.check_cond1(s, Cond1(blocks))


def filter_rho1(s, h, kappa_plus, beta):
    return cnd.FilterGen("c1", [rho1(s, g, kappa_plus, beta) for g in h.generators])


def _tops_at(tree, level):
    return sorted(i for i in tree.indices_at(level))


def tqq_vertex_map(s, q0, q1, ctx):
    """The index exchange between two restricted tree forcings whose
    projections share one partition tree: each vertex of the target goes
    to the source predecessor of a common top."""
    kp = ctx.kappa_plus
    r0 = rho0(s, union0(s, q0, ctx.r_bar), ctx)
    r1 = rho0(s, union0(s, q1, ctx.r_bar), ctx)
    if r0.qtree != r1.qtree:
        raise ForceLabError(errors.STRUCTURE_MISMATCH, "projection trees differ")
    tops = _tops_at(q1.tree, kp)
    if tops != _tops_at(q0.tree, kp) or any(i >= ctx.beta for i in tops):
        raise ForceLabError(errors.STRUCTURE_MISMATCH, "top points differ or exceed the cut")
    out = {}
    for v in q1.tree.vertices:
        j = next(i for i in tops if q1.tree.leq_v(v, (kp, i)))
        out[v] = q0.tree.pred_at((kp, j), v[0])
    return out


def transport_cond_tqq(s, p, q0, q1, ctx):
    """Move a labeling of the first restricted tree onto the second."""
    if p.tree != q0.tree:
        raise ForceLabError(errors.DOMAIN_MISMATCH, "condition not over the source tree")
    vmap = tqq_vertex_map(s, q0, q1, ctx)
    labels = {}
    for v in q1.tree.vertices:
        lab = p.label(vmap[v])
        if lab:
            labels[v] = lab
    return Cond0(q1.tree, labels)


def transport_name_tqq(s, x, q0, q1, ctx):
    """Recursive name transport along the index exchange; rectangular
    parts are untouched."""
    entries = set()
    for y, v in x.entries:
        c0 = transport_cond_tqq(s, v.c0, q0, q1, ctx) if len(v.c0.tree) else v.c0
        entries.add((transport_name_tqq(s, y, q0, q1, ctx), ProductCond(c0, v.c1)))
    return type(x)(entries)


def _swap_cols(pi1, level, c1_block):
    xs, ys, bits = c1_block
    f = pi1.at(level).f
    ys2 = {f.get(y, y) for y in ys}
    bits2 = {(x, f.get(y, y)): b for (x, y), b in bits.items()}
    return xs, ys2, bits2


def transport_tpi(s, x, pi0, pi1, s_cond, columns, kappa_plus):
    """Transport a name over a restricted product along a swap pair: the
    tree part moves by the index swap, the designated columns are
    exchanged, the block at the cut level stays."""
    col_levels = {}
    for lvl, j in columns:
        col_levels.setdefault(lvl, set()).add(j)
    entries = set()
    for y, v in x.entries:
        if len(v.c0.tree) and v.c0.tree != s_cond.tree:
            raise ForceLabError(errors.DOMAIN_MISMATCH, "tree part not over the base tree")
        blocks = {}
        for level, block in v.c1.block_map().items():
            if level == kappa_plus:
                blocks[level] = block
            elif level in col_levels and block[1] <= col_levels[level]:
                blocks[level] = _swap_cols(pi1, level, block)
            else:
                raise ForceLabError(errors.DOMAIN_MISMATCH, f"columns at level {level} not designated")
        moved = ProductCond(am.apply0(pi0, v.c0), Cond1(blocks))
        entries.add((transport_tpi(s, y, pi0, pi1, s_cond, columns, kappa_plus), moved))
    return type(x)(entries)


def _supertrees(s, base, kappa_plus, bound):
    """All valid extensions of a tree with new indices below the bound
    and levels up to the cut."""
    seen = {base}
    frontier = [base]
    while frontier:
        t = frontier.pop()
        attach = [None] if not len(t) else list(t.vertices)
        for at in attach:
            level = 0 if at is None else at[0] + 1
            if level > kappa_plus:
                continue
            for idx in range(min(f_lim(s, level), bound)):
                v = (level, idx)
                if v in t:
                    continue
                parents = t.parent_map()
                parents[v] = at
                cand = FlimTree(parents)
                if cand in seen or core.validate_tree(s, cand):
                    continue
                seen.add(cand)
                frontier.append(cand)
    return sorted(seen, key=lambda t: sorted(t.parent_map().items()))


def _label_options(s, tree, fixed, bound, frozen=()):
    """All label maps on a tree extending the fixed part with bounded
    positions on the labelable vertices outside the frozen set."""
    labelable = set(s.labelable_levels())
    free = [
        v
        for v in sorted(tree.vertices)
        if v[0] in labelable and v not in fixed and v not in frozen
    ]
    slots = [(v, pos) for v in free for pos in range(bound)]
    out = []
    for choice in itertools.product((None, 0, 1), repeat=len(slots)):
        labels = {v: dict(l) for v, l in fixed.items()}
        for (v, pos), bit in zip(slots, choice):
            if bit is not None:
                labels.setdefault(v, {})[pos] = bit
        out.append(labels)
    return out


def _widen0(s, c0, s_cond, kappa_plus, bound):
    if len(c0.tree) and c0.tree != s_cond.tree:
        raise ForceLabError(errors.DOMAIN_MISMATCH, "tree part not over the base tree")
    # an empty tree part is the restricted-product maximum, which lives
    # on the base tree with no labels
    base = s_cond.tree
    fixed = c0.label_map()
    out = []
    for tree in _supertrees(s, base, kappa_plus, bound):
        # the widening must restrict back to c0, so the base vertices
        # keep exactly c0's labels
        for labels in _label_options(s, tree, fixed, bound, frozen=base.vertices):
            out.append(Cond0(tree, labels))
    return out


def _widen1(s, c1, columns, kappa_plus, bound):
    col_levels = {}
    for lvl, j in columns:
        col_levels.setdefault(lvl, set()).add(j)
    per_level = []
    for level in succ_prime(s):
        if level > kappa_plus:
            continue
        block = c1.block(level) if c1.has_block(level) else (frozenset(), frozenset(), {})
        xs, ys, bits = block
        if level == kappa_plus:
            if xs:
                per_level.append([(level, (xs, ys, bits))])
            continue
        desig = col_levels.get(level, set())
        opts = []
        if xs:
            extra_pool = sorted(set(range(min(f_lim(s, level), bound))) - ys - desig)
            for extra in _subsets(extra_pool):
                ys2 = ys | set(extra)
                free = sorted((x, y) for x in xs for y in set(extra) if (x, y) not in bits)
                for fill in itertools.product((0, 1), repeat=len(free)):
                    bits2 = dict(bits)
                    bits2.update(zip(free, fill))
                    opts.append((xs, ys2, bits2))
        else:
            opts.append(None)
            x_pool = list(range(bound))
            y_pool = sorted(set(range(min(f_lim(s, level), bound))) - desig)
            for xs2 in _subsets(x_pool):
                for ys2 in _subsets(y_pool):
                    if not xs2 or not ys2:
                        continue
                    cells = [(x, y) for x in xs2 for y in ys2]
                    for fill in itertools.product((0, 1), repeat=len(cells)):
                        opts.append((set(xs2), set(ys2), dict(zip(cells, fill))))
        per_level.append(
            [(level, o) for o in opts]
        )
    out = []
    for combo in itertools.product(*per_level):
        blocks = {l: o for l, o in combo if o is not None}
        out.append(Cond1(blocks))
    return out


def _subsets(items):
    items = list(items)
    for k in range(len(items) + 1):
        yield from itertools.combinations(items, k)


def tilde_extend(s, x, s_cond, columns, kappa_plus, bound):
    """The canonical extension of a restricted-product name: each entry
    condition is replaced by all its bounded widenings that restrict
    back to it."""
    entries = set()
    for y, v in x.entries:
        y_t = tilde_extend(s, y, s_cond, columns, kappa_plus, bound)
        for c0 in _widen0(s, v.c0, s_cond, kappa_plus, bound):
            for c1 in _widen1(s, v.c1, columns, kappa_plus, bound):
                entries.add((y_t, ProductCond(c0, c1)))
    return type(x)(entries)


@dataclass(frozen=True)
class MTuple:
    """One base of the counting argument: a condition topping out at the
    cut level, plus finitely many designated columns below it."""

    cond: Cond0
    columns: tuple = ()


def _m_trees(s, kappa_plus, beta, bound):
    """Trees whose maximal points all sit at the cut level with index
    below the width cut, intermediate indices below the bound."""
    seen = {core.EMPTY_TREE}
    frontier = [core.EMPTY_TREE]
    out = []
    while frontier:
        t = frontier.pop()
        if len(t) and all(v[0] == kappa_plus for v in t.max_points()):
            out.append(t)
        attach = [None] if not len(t) else list(t.vertices)
        for at in attach:
            level = 0 if at is None else at[0] + 1
            if level > kappa_plus:
                continue
            cap = min(beta, f_lim(s, level)) if level == kappa_plus else min(
                f_lim(s, level), bound
            )
            for idx in range(cap):
                v = (level, idx)
                if v in t:
                    continue
                parents = t.parent_map()
                parents[v] = at
                cand = FlimTree(parents)
                if cand in seen or core.validate_tree(s, cand):
                    continue
                seen.add(cand)
                frontier.append(cand)
    return sorted(out, key=lambda t: sorted(t.parent_map().items()))


def enum_m_beta(s, kappa_plus, beta, bound, start=0):
    """Deterministic lexicographic stream of the width-cut tuples; the
    stream restarts from any index."""
    if beta <= 0:
        return
    col_pool = [
        (lvl, j)
        for lvl in succ_prime(s)
        if lvl < kappa_plus
        for j in range(min(s.f(lvl), beta))
    ]
    col_sets = sorted(_subsets(col_pool))
    serial = 0
    for tree in _m_trees(s, kappa_plus, beta, bound):
        for labels in _label_options(s, tree, {}, bound):
            cond = Cond0(tree, labels)
            for cols in col_sets:
                if serial >= start:
                    yield MTuple(cond, tuple(cols))
                serial += 1


def mtuple_rank(s, kappa_plus, beta, bound, m):
    """The enumeration index of a tuple; injective by construction."""
    for rank, cand in enumerate(enum_m_beta(s, kappa_plus, beta, bound)):
        if cand == m:
            return rank
    raise ForceLabError(errors.NO_WITNESS, "tuple outside the enumeration")
