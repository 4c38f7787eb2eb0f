"""The property registry: every checkable invariant of the library is
registered here under a stable id, together with a runner that emits a
deterministic stream of case reports for a given run configuration.

Reports carry a replayable JSON payload; `replay` re-executes exactly
one case from such a payload.
"""

import itertools
import random
import time
from dataclasses import dataclass

from .. import automorphisms as am
from .. import conditions as cnd
from .. import core
from .. import errors
from .. import names as nm
from .. import quotient as qt
from ..conditions import ONE0, ONE1, ONE_P, Cond0, Cond1, FilterGen, ProductCond
from ..core import EMPTY_TREE, FlimTree, LevelSpec, Skeleton, f_lim
from ..errors import ForceLabError
from . import config as hcfg
from . import generators as gen
from . import serialization as ser

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class CaseReport:
    property_id: str
    serial: int
    status: str
    detail: str
    payload: str
    elapsed: float


@dataclass(frozen=True)
class PropertySpec:
    pid: str
    doc: str
    invariants: tuple
    runner: object


def _case_rng(cfg, pid, serial):
    return random.Random(f"{cfg.seed}:{pid}:{serial}")


def _ncases(cfg, exhaustive_total=None):
    if cfg.exhaustive and exhaustive_total is not None:
        return exhaustive_total
    return cfg.cases


# ---------------------------------------------------------------------------
# shared scaffolding


def _chain_cond(s):
    """The reference condition: one branch through index 0 at every level."""
    parents, prev = {}, None
    for level in range(s.n_levels):
        parents[(level, 0)] = prev
        prev = (level, 0)
    return Cond0(FlimTree(parents))


def _default_kappa(s):
    return s.successor_levels()[-1]


def _default_ctx(s, beta=2):
    kp = _default_kappa(s)
    beta = min(beta, f_lim(s, kp))
    return qt.SymContext(
        r_bar=_chain_cond(s),
        kappa_plus=kp,
        protected_tops=((s.n_levels - 1, 0),),
        beta_tilde=max(1, beta - 1),
        beta=beta,
    )


def _tilde_universe(s, ctx, bound, with_labels=True, cap=4000):
    """Conditions of the dense subforcing below the reference condition,
    bounded in index and label positions."""
    out = []
    for tree in qt._supertrees(s, ctx.r_bar.tree, ctx.kappa_plus, max(bound, ctx.beta)):
        if not qt.in_tilde(s, Cond0(tree), ctx):
            continue
        if with_labels:
            for labels in qt._label_options(s, tree, {}, 1):
                out.append(Cond0(tree, labels))
                if len(out) >= cap:
                    return out
        else:
            out.append(Cond0(tree))
            if len(out) >= cap:
                return out
    return out


def _homog_regime(s):
    """An enlarged copy of the skeleton with room for block-free index
    relocation: every block holds spare indices for any bounded input."""
    levels, width = [], 2 * s.block_width
    for spec in s.levels:
        f = None if spec.f_value is None else max(spec.f_value, width)
        levels.append(LevelSpec(spec.name, spec.kind, f))
    return core.check_skeleton(Skeleton(tuple(levels), width))


def _pair_universe(items):
    return [(p, q) for p in items for q in items]


# ---------------------------------------------------------------------------
# P0 order properties


def _p0_poset(s, cfg):
    if cfg.exhaustive:
        conds = gen.all_cond0(s, 5, pos_bound=1)
        trees = sorted(
            {p.tree for p in conds}, key=lambda t: sorted(t.parent_map().items())
        )
        by_tree = {}
        for p in conds:
            by_tree.setdefault(p.tree, []).append(p)
        tree_pairs = [
            (t1, t2) for t1 in trees for t2 in trees if core.tree_leq(t1, t2)
        ]
        # f_lim is monotone along the level order
        ok = all(f_lim(s, l) <= f_lim(s, l + 1) for l in range(s.n_levels - 1))
        yield (PASS if ok else FAIL, "f_lim monotone across levels")
        # reflexivity
        bad = [p for p in conds if not cnd.leq0(p, p)]
        yield (PASS if not bad else FAIL, f"reflexivity over {len(conds)} conditions")
        # edges, antisymmetry
        below = {p: [] for p in conds}
        anti = 0
        for t_low, t_high in tree_pairs:
            for p in by_tree[t_high]:
                for q in by_tree[t_low]:
                    if cnd.leq0(p, q):
                        below[q].append(p)
                        if p != q and cnd.leq0(q, p):
                            anti += 1
        yield (PASS if anti == 0 else FAIL, f"antisymmetry ({anti} violations)")
        trans = 0
        for q in conds:
            for p in below[q]:
                if p is q:
                    continue
                for r in below.get(p, ()):
                    if not cnd.leq0(r, q):
                        trans += 1
        yield (PASS if trans == 0 else FAIL, f"transitivity ({trans} violations)")
        # tree unions are least upper bounds
        bad = 0
        for t1 in trees:
            for t2 in trees:
                try:
                    u = core.tree_union(s, t1, t2)
                except ForceLabError:
                    continue
                if u.vertices != t1.vertices | t2.vertices:
                    bad += 1
                if not (core.tree_leq(u, t1) and core.tree_leq(u, t2)):
                    bad += 1
        yield (PASS if bad == 0 else FAIL, f"tree unions ({bad} violations)")
        # condition unions are greatest lower bounds
        bad = 0
        checked = 0
        for q in conds:
            members = below[q]
            for p in members:
                try:
                    u = cnd.union0(s, p, q)
                except ForceLabError:
                    bad += 1
                    continue
                checked += 1
                if u != p or not cnd.leq0(u, q):
                    bad += 1
        yield (PASS if bad == 0 else FAIL, f"unions below ({checked} pairs, {bad} bad)")
        return
    for serial in range(cfg.cases):
        rng = _case_rng(cfg, "P0-POSET", serial)
        p = gen.gen_cond0(s, rng.randrange(1 << 30), rng.randint(1, 6), cfg.bound)
        q = gen.strengthen_cond0(s, rng, p, cfg.bound)
        r = gen.strengthen_cond0(s, rng, q, cfg.bound)
        ok = cnd.leq0(p, p) and cnd.leq0(q, p) and cnd.leq0(r, q) and cnd.leq0(r, p)
        msg = "chain laws"
        if ok and cnd.leq0(p, q) and p != q:
            ok, msg = False, "antisymmetry"
        if ok and cnd.compat0(s, p, q):
            u = cnd.union0(s, p, q)
            if not (cnd.leq0(u, p) and cnd.leq0(u, q) and cnd.leq0(r, u)):
                ok, msg = False, "union is not the meet"
        yield (PASS if ok else FAIL, msg)


def _p0_split_dense(s, cfg):
    total = None
    if cfg.exhaustive:
        universe = [p for p in gen.all_cond0(s, 4, pos_bound=1) if len(p.tree)]
        total = len(universe)
    for serial in range(_ncases(cfg, total)):
        if cfg.exhaustive:
            p = universe[serial]
        else:
            rng = _case_rng(cfg, "P0-SPLIT-DENSE", serial)
            p = gen.gen_cond0(s, rng.randrange(1 << 30), rng.randint(1, 6), cfg.bound)
            if not len(p.tree):
                yield (SKIP, "empty condition")
                continue
        level = max(v[0] for v in p.tree.vertices) // 2
        lower = cnd.restrict0_band(p, 0, level)
        upper = cnd.restrict0_band(p, level, s.n_levels - 1)
        try:
            glued = cnd.split_glue(s, lower, upper, level)
        except ForceLabError as exc:
            yield (FAIL, f"glue failed: {exc}")
            continue
        ok = glued == p and cnd.leq0(glued, lower)
        yield (PASS if ok else FAIL, f"split/glue at level {level}")


def _p0_antichain(s, cfg):
    """A greedy maximal antichain in the bounded universe is predense."""
    universe = gen.all_cond0(s, 3, pos_bound=1)
    chain = []
    for p in universe:
        if len(p.tree) and all(not cnd.compat0(s, p, q) for q in chain):
            chain.append(p)
    for a, b in itertools.combinations(chain, 2):
        if cnd.compat0(s, a, b):
            yield (FAIL, "antichain members compatible")
            return
    yield (PASS, f"{len(chain)} pairwise incompatible members")
    total = len(universe) if cfg.exhaustive else None
    for serial in range(_ncases(cfg, total)):
        if cfg.exhaustive:
            q = universe[serial]
        else:
            # predensity is a statement about the bounded universe itself
            rng = _case_rng(cfg, "P0-ANTICHAIN", serial)
            q = universe[rng.randrange(len(universe))]
        hits = [a for a in chain if cnd.compat0(s, q, a)]
        if not hits and len(q.tree):
            yield (FAIL, "condition misses the maximal antichain")
            continue
        if hits:
            u = cnd.union0(s, q, hits[0])
            ok = cnd.leq0(u, q) and cnd.leq0(u, hits[0])
            yield (PASS if ok else FAIL, "graft onto an antichain member")
        else:
            yield (PASS, "empty condition is compatible with everything")


def _label_dense_at(v):
    def predicate(r):
        return 0 in r.label(v)

    return predicate


def _p0_restrict_dense(s, cfg):
    total = None
    if cfg.exhaustive:
        universe = [p for p in gen.all_cond0(s, 4, pos_bound=1) if len(p.tree) >= 2]
        total = len(universe)
    for serial in range(_ncases(cfg, total)):
        if cfg.exhaustive:
            p = universe[serial]
            rng = _case_rng(cfg, "P0-RESTRICT-DENSE", serial)
        else:
            rng = _case_rng(cfg, "P0-RESTRICT-DENSE", serial)
            p = gen.gen_cond0(s, rng.randrange(1 << 30), rng.randint(2, 6), cfg.bound)
            if len(p.tree) < 2:
                yield (SKIP, "tree too small")
                continue
        # band restrictions stay valid trees
        hi = max(v[0] for v in p.tree.vertices)
        band = core.restrict_band(p.tree, 0, hi)
        if core.validate_tree(s, band):
            yield (FAIL, "band restriction is not a valid tree")
            continue
        labelable = [v for v in sorted(p.tree.vertices) if v[0] in s.labelable_levels()]
        if not labelable:
            yield (SKIP, "no labelable vertex")
            continue
        v = labelable[rng.randrange(len(labelable))]
        q = gen.strengthen_cond0(s, rng, p, max(cfg.bound, 1))
        if not cnd.leq0(q, p):
            q = p
        try:
            r, q_bar = cnd.dense_lift_check0(s, p, _label_dense_at(v), q, max(cfg.bound, 1))
        except ForceLabError as exc:
            yield (FAIL, f"no dense witness: {exc}")
            continue
        ok = (
            r.tree == p.tree
            and _label_dense_at(v)(r)
            and cnd.leq0(q_bar, q)
            and cnd.restrict0_tree(q_bar, p.tree) == r
        )
        # the filter of weakenings restricts coherently to the base tree
        h = FilterGen("c0", [q_bar])
        h_low = cnd.filter_restrict0_tree(s, h, p.tree)
        ok = ok and not cnd.validate_filter(s, h_low)
        ok = ok and cnd.filter_member(h_low, r)
        yield (PASS if ok else FAIL, f"dense lift at {v}")


def _p1_poset(s, cfg):
    if cfg.exhaustive:
        conds = gen.all_cond1(s, pos_bound=1)
        bad = 0
        for p in conds:
            if not cnd.leq1(p, p):
                bad += 1
        yield (PASS if bad == 0 else FAIL, f"reflexivity over {len(conds)}")
        anti = trans = 0
        for p, q in _pair_universe(conds):
            if p != q and cnd.leq1(p, q) and cnd.leq1(q, p):
                anti += 1
        for p, q, r in itertools.product(conds, repeat=3):
            if cnd.leq1(r, q) and cnd.leq1(q, p) and not cnd.leq1(r, p):
                trans += 1
        yield (PASS if anti == 0 else FAIL, f"antisymmetry ({anti})")
        yield (PASS if trans == 0 else FAIL, f"transitivity ({trans})")
        bad = 0
        for p, q in _pair_universe(conds):
            if cnd.compat1(p, q):
                u = cnd.union1(p, q)
                if not (cnd.leq1(u, p) and cnd.leq1(u, q)):
                    bad += 1
        yield (PASS if bad == 0 else FAIL, f"unions ({bad} bad)")
        return
    for serial in range(cfg.cases):
        rng = _case_rng(cfg, "P1-POSET", serial)
        p = gen.gen_cond1(s, rng.randrange(1 << 30), rng.randint(1, 5), cfg.bound)
        q = gen.strengthen_cond1(s, rng, p, cfg.bound)
        r = gen.strengthen_cond1(s, rng, q, cfg.bound)
        ok = cnd.leq1(p, p) and cnd.leq1(q, p) and cnd.leq1(r, p)
        if ok and p != q and cnd.leq1(p, q):
            ok = False
        if ok and cnd.compat1(p, q):
            u = cnd.union1(p, q)
            ok = cnd.leq1(u, p) and cnd.leq1(u, q) and cnd.leq1(r, u)
        yield (PASS if ok else FAIL, "order laws on an extension chain")


# ---------------------------------------------------------------------------
# automorphism properties


def _dpi_closure(s, cfg):
    for serial in range(cfg.cases):
        rng = _case_rng(cfg, "DPI-CLOSURE", serial)
        pi1 = gen.gen_aut1(s, rng.randrange(1 << 30), 3, cfg.bound + 1)
        p = gen.gen_cond1(s, rng.randrange(1 << 30), rng.randint(1, 4), cfg.bound + 1)
        exts = nm.d_extensions(s, p, pi1, cfg.bound + 1)
        if not exts:
            yield (SKIP, "no bounded extension in the domain")
            continue
        bad = [q for q in exts if not am.in_dpi(pi1, q) or not cnd.leq1(q, p)]
        if bad:
            yield (FAIL, "extension outside the domain or not below")
            continue
        # the action preserves the order inside the domain
        ok = True
        for q in exts[:8]:
            r = gen.strengthen_cond1(s, rng, q, cfg.bound + 1)
            if not am.in_dpi(pi1, r):
                continue
            if not cnd.leq1(am.apply1(pi1, r), am.apply1(pi1, q)):
                ok = False
        # validity of images
        for q in exts[:8]:
            if cnd.validate_cond1(s, am.apply1(pi1, q)):
                ok = False
        yield (PASS if ok else FAIL, f"{len(exts)} domain extensions")


def _a0_group(s, cfg):
    auts = gen.all_aut0_small_support(s, 3)
    conds = [gen.gen_cond0(s, seed, 3, cfg.bound) for seed in range(6)]
    bad = 0
    for a in auts:
        if am.compose0(a, am.invert0(a)).perm_map() != {}:
            bad += 1
        if am.apply0(am.IDENT0, conds[0]) != conds[0]:
            bad += 1
    yield (PASS if bad == 0 else FAIL, f"inverses over {len(auts)} automorphisms")
    bad = 0
    for a, b in itertools.product(auts, repeat=2):
        ab = am.compose0(a, b)
        for p in conds[:2]:
            if am.apply0(ab, p) != am.apply0(a, am.apply0(b, p)):
                bad += 1
    yield (PASS if bad == 0 else FAIL, "composition acts as iterated action")
    bad = 0
    for a, b, c in itertools.islice(itertools.product(auts, repeat=3), 5000):
        lhs = am.compose0(am.compose0(a, b), c)
        rhs = am.compose0(a, am.compose0(b, c))
        if lhs.perm_map() != rhs.perm_map():
            bad += 1
    yield (PASS if bad == 0 else FAIL, "associativity")
    bad = 0
    for a in auts:
        for p in conds:
            q = gen.strengthen_cond0(s, random.Random(1), p, cfg.bound)
            if cnd.leq0(q, p) and not cnd.leq0(am.apply0(a, q), am.apply0(a, p)):
                bad += 1
    yield (PASS if bad == 0 else FAIL, "order preservation")


def _a1_group_ext(s, cfg):
    flip_level = core.succ_prime(s)[0]
    for serial in range(cfg.cases):
        rng = _case_rng(cfg, "A1-GROUP-EXT", serial)
        pi = gen.gen_aut1(s, rng.randrange(1 << 30), 3, cfg.bound + 1)
        sigma = gen.gen_aut1(s, rng.randrange(1 << 30), 3, cfg.bound + 1)
        if serial % 3 == 0:
            # guarantee a flip-bearing automorphism appears regularly
            pi = am.Aut1(
                {
                    flip_level: am.Level1Aut(
                        frozenset(), {}, {0}, {0}, {((0, 0), 1)}, {}
                    )
                }
            )
        p = gen.gen_cond1(s, rng.randrange(1 << 30), rng.randint(1, 4), cfg.bound + 1)
        doms = nm.d_extensions(s, p, pi, cfg.bound + 1)
        if not doms:
            yield (SKIP, "no domain extension")
            continue
        q = doms[rng.randrange(len(doms))]
        moved = am.apply1(pi, q)
        # inverse law on the domain
        back = am.apply1(am.invert1(pi), moved)
        if back != q:
            yield (FAIL, "inverse does not undo the action")
            continue
        if am.apply1(am.IDENT1, q) != q:
            yield (FAIL, "identity moves a condition")
            continue
        # extensional composition where both factors are defined
        if am.in_dpi(sigma, moved):
            comp = am.compose1(sigma, pi)
            if am.in_dpi(comp, q) and am.apply1(comp, q) != am.apply1(sigma, moved):
                yield (FAIL, "composition disagrees with iterated action")
                continue
        norm = am.normalize_supp(pi)
        if am.in_dpi(norm, q) and am.apply1(norm, q) != moved:
            yield (FAIL, "support normalization changes the action")
            continue
        yield (PASS, "group laws on the action domain")


def _fix1_column(s, cfg):
    levels = [l for l in core.succ_prime(s) if s.f(l) >= 2]
    if not levels:
        yield (SKIP, "no level with two columns")
        return
    for serial in range(cfg.cases):
        rng = _case_rng(cfg, "FIX1-COLUMN", serial)
        level = levels[rng.randrange(len(levels))]
        cols = list(range(s.f(level)))
        col = cols[rng.randrange(len(cols))]
        others = [j for j in cols if j != col]
        if serial % 2 == 0 and len(others) >= 2:
            # a genuine column exchange away from the fixed column
            ys = tuple(sorted({others[0], others[1], col}))
            pi = am.column_swap_aut1(
                s, [(level, others[0], others[1])], {level: ((0,), ys)}
            )
        else:
            # a flip on another column only
            pi = am.Aut1(
                {
                    level: am.Level1Aut(
                        frozenset(), {}, {0}, {others[0]}, {((0, others[0]), 1)}, {}
                    )
                }
            )
        g = am.SubgroupGen("fix1", level, col)
        if not am.in_subgroup(s, pi, g, s.block_width):
            yield (FAIL, "constructed automorphism should fix the column")
            continue
        xs = set(range(cfg.bound + 1))
        ys = {col}
        bits = {(x, col): rng.randrange(2) for x in xs}
        p = Cond1({level: (xs, ys, bits)})
        exts = nm.d_extensions(s, p, pi, max(cfg.bound + 1, max(others) + 1))
        if not exts:
            yield (SKIP, "no domain extension")
            continue
        q = exts[rng.randrange(len(exts))]
        moved = am.apply1(pi, q)
        _, _, qb = q.block(level)
        _, _, mb = moved.block(level)
        same = all(mb.get((x, col)) == qb.get((x, col)) for x in xs)
        yield (PASS if same else FAIL, f"column {col} at level {level}")


def _homog0_cases(s, cfg):
    big = _homog_regime(s)
    width = big.block_width
    if cfg.exhaustive:
        universe = [
            p
            for p in gen.all_cond0(big, 3, pos_bound=1, index_bound=2)
            if len(p.tree)
        ]
        pairs = _pair_universe(universe)
        total = len(pairs)
    else:
        total = cfg.cases
    for serial in range(total):
        if cfg.exhaustive:
            p, q = pairs[serial]
        else:
            rng = _case_rng(cfg, "HOMOG0", serial)
            p = gen.gen_cond0(big, rng.randrange(1 << 30), rng.randint(1, 5), cfg.bound)
            q = gen.gen_cond0(big, rng.randrange(1 << 30), rng.randint(1, 5), cfg.bound)
        try:
            pi = am.homog0(big, p, q, 0, EMPTY_TREE, width)
        except ForceLabError as exc:
            yield (FAIL, f"no homogenizing automorphism: {exc.code}")
            continue
        ok = am.is_small0(pi, width)
        ok = ok and cnd.compat0(big, am.apply0(pi, p), q)
        ok = ok and not am.validate_aut0(big, pi)
        yield (PASS if ok else FAIL, "small automorphism matches the pair")


def _homog1_cases(s, cfg):
    if cfg.exhaustive:
        universe = [p for p in gen.all_cond1(s, pos_bound=1)]
        pairs = _pair_universe(universe)
        total = len(pairs)
    else:
        total = cfg.cases
    for serial in range(total):
        if cfg.exhaustive:
            p, q = pairs[serial]
        else:
            rng = _case_rng(cfg, "HOMOG1", serial)
            p = gen.gen_cond1(s, rng.randrange(1 << 30), rng.randint(1, 4), cfg.bound)
            q = gen.gen_cond1(s, rng.randrange(1 << 30), rng.randint(1, 4), cfg.bound)
        try:
            pi = am.homog1(p, q, 0)
        except ForceLabError as exc:
            yield (FAIL, f"homog1 failed: {exc.code}")
            continue
        if not am.in_dpi(pi, p):
            yield (FAIL, "p outside the action domain")
            continue
        ok = cnd.compat1(am.apply1(pi, p), q)
        yield (PASS if ok else FAIL, "flip automorphism matches the pair")


def _normality(s, cfg):
    width = s.block_width
    tags0 = ["fix0", "small0"]
    tags1 = ["fix1", "small1"]
    levels0 = [l for l in range(1, s.n_levels) if f_lim(s, l) >= 2]
    levels1 = list(core.succ_prime(s))
    for serial in range(cfg.cases):
        rng = _case_rng(cfg, "NORMALITY", serial)
        if rng.random() < 0.5:
            tag = tags0[rng.randrange(2)]
            level = levels0[rng.randrange(len(levels0))]
            value = rng.randrange(1, f_lim(s, level) + 1) if tag == "small0" else rng.randrange(
                f_lim(s, level)
            )
            pi = gen.gen_aut0(s, rng.randrange(1 << 30), 3)
            g = am.SubgroupGen(tag, level, value)
            witness = am.conjugate_witness(s, pi, g, width)
            try:
                sig0, sig1 = am.sample_spec_member(s, witness, rng, width, cfg.bound + 1)
            except ForceLabError:
                yield (SKIP, "no sample inside the witness subgroup")
                continue
            conj = am.compose0(am.compose0(pi, sig0), am.invert0(pi))
            ok = am.in_subgroup(s, conj, g, width)
        else:
            tag = tags1[rng.randrange(2)]
            level = levels1[rng.randrange(len(levels1))]
            value = rng.randrange(1, s.f(level) + 1) if tag == "small1" else rng.randrange(
                s.f(level)
            )
            pi = gen.gen_aut1(s, rng.randrange(1 << 30), 3, cfg.bound + 1)
            g = am.SubgroupGen(tag, level, value)
            witness = am.conjugate_witness(s, pi, g, width)
            try:
                sig0, sig1 = am.sample_spec_member(s, witness, rng, width, cfg.bound + 1)
            except ForceLabError:
                yield (SKIP, "no sample inside the witness subgroup")
                continue
            conj = am.normalize_supp(am.compose1(am.compose1(pi, sig1), am.invert1(pi)))
            ok = am.in_subgroup(s, conj, g, width)
        yield (PASS if ok else FAIL, f"conjugation into {tag}({level},{value})")


# ---------------------------------------------------------------------------
# name properties


def _name_universe(s, bound, rank2=True):
    level = core.succ_prime(s)[0]
    atoms = [nm.EMPTY_NAME, nm.check_nat(0), nm.check_nat(1)]
    c1 = Cond1({level: ({0}, {0}, {(0, 0): 1})})
    conds = [ONE_P, ProductCond(ONE0, c1)]
    out = list(atoms)
    for a in atoms:
        for p in conds:
            out.append(nm.PName({(a, p)}))
    if rank2:
        layer = list(out)
        for a in layer[3:6]:
            for b in atoms[:2]:
                out.append(nm.pair_name(a, b))
    out.append(nm.expand(s, nm.g1_column(level, 0), bound))
    out.append(nm.expand(s, nm.g0_branch(level, 0), bound))
    return out


def _decided_filters(s, bound, n):
    """Filters whose generators decide every bounded cell at the probe
    level, so bounded domain extensions stay comparable to a generator."""
    level = core.succ_prime(s)[0]
    filters = [FilterGen("p", [ONE_P])]
    for seed in range(n):
        rng = random.Random(f"decided:{seed}")
        xs = set(range(bound))
        ys = set(range(min(s.f(level), bound)))
        bits = {(x, y): rng.randrange(2) for x in xs for y in ys}
        filters.append(
            FilterGen("p", [ProductCond(ONE0, Cond1({level: (xs, ys, bits)}))])
        )
    return filters


def _aut1_family(s, bound):
    level = core.succ_prime(s)[0]
    fam = [am.IDENT1]
    if s.f(level) >= 2:
        fam.append(am.column_swap_aut1(s, [(level, 0, 1)], {level: ((0,), (0, 1))}))
    fam.append(
        am.Aut1({level: am.Level1Aut(frozenset(), {}, {0}, {0}, {((0, 0), 1)}, {})})
    )
    return fam


def _name_bar_val(s, cfg):
    bound = max(cfg.bound, 2)
    universe = _name_universe(s, bound)
    auts = _aut1_family(s, bound)
    filters = _decided_filters(s, bound, 3)
    if cfg.exhaustive:
        cases = [(x, pi, h) for x in universe for pi in auts for h in filters]
    else:
        rng = _case_rng(cfg, "NAME-BAR-VAL", 0)
        cases = [
            (
                universe[rng.randrange(len(universe))],
                auts[rng.randrange(len(auts))],
                filters[rng.randrange(len(filters))],
            )
            for _ in range(cfg.cases)
        ]
    for x, pi, h in cases:
        x_bar = nm.bar(s, x, pi, bound)
        if nm.val(x_bar, h) != nm.val(x, h):
            yield (FAIL, "bar extension changes the valuation")
            continue
        try:
            nm.act(am.IDENT0, pi, x_bar)
        except ForceLabError:
            yield (FAIL, "bar extension left the action domain")
            continue
        yield (PASS, "valuation preserved and domain reached")


def _name_equivariance(s, cfg):
    bound = max(cfg.bound, 2)
    universe = _name_universe(s, bound)
    auts1 = _aut1_family(s, bound)
    level = core.succ_prime(s)[0]
    auts0 = [am.IDENT0]
    if f_lim(s, level) >= 2:
        auts0.append(am.index_swap_aut0(s, [(level, 0, 1)]))
    filters = _decided_filters(s, bound, 2)
    if cfg.exhaustive:
        cases = [
            (x, p0, p1, h)
            for x in universe
            for p0 in auts0
            for p1 in auts1
            for h in filters
        ]
    else:
        rng = _case_rng(cfg, "NAME-EQUIVARIANCE", 0)
        cases = [
            (
                universe[rng.randrange(len(universe))],
                auts0[rng.randrange(len(auts0))],
                auts1[rng.randrange(len(auts1))],
                filters[rng.randrange(len(filters))],
            )
            for _ in range(cfg.cases)
        ]
    for x, pi0, pi1, h in cases:
        try:
            ok = nm.equivariance_check(s, x, pi0, pi1, h, bound)
        except ForceLabError as exc:
            yield (FAIL, f"equivariance raised {exc.code}")
            continue
        yield (PASS if ok else FAIL, "valuation commutes with transport")


def _sym_canonical(s, cfg):
    bound = max(cfg.bound, 2)
    level = core.succ_prime(s)[0]
    width = s.block_width
    cut = min(width, f_lim(s, level))
    pairs = [
        (nm.g0_branch(level, 0), am.SubgroupGen("fix0", level, 0)),
        (nm.g1_column(level, 0), am.SubgroupGen("fix1", level, 0)),
        (nm.cloud0(level, 0, cut), am.SubgroupGen("small0", level, cut)),
        (nm.check_of(0, 1), am.SubgroupGen("small0", level, 1)),
    ]
    per = max(1, cfg.cases // len(pairs))
    for serial, (c, g) in enumerate(pairs):
        x = nm.expand(s, c, bound)
        hit = nm.sym_check(
            s, x, am.group_spec(g), cfg.seed + serial, per, width=width, bound=bound
        )
        yield (PASS if hit is None else FAIL, f"{c.tag} fixed by {g.tag}({g.level},{g.value})")


def _branch_indices(x):
    out = set()
    for y, p in x.entries:
        for v in p.c0.tree.vertices:
            out.add(v)
        out |= _branch_indices(y)
    return out


def _cloud_disjoint(s, cfg):
    # narrow the block width so the finite level holds several blocks
    from dataclasses import replace

    level = max(core.succ_prime(s), key=lambda l: f_lim(s, l))
    cut = f_lim(s, level)
    if cut < 2:
        yield (SKIP, "no level wide enough for two blocks")
        return
    width = max(1, cut // 2)
    s2 = core.check_skeleton(replace(s, block_width=width))
    blocks = range((cut + width - 1) // width)
    for n, m in itertools.combinations(blocks, 2):
        a = nm.expand(s2, nm.cloud0(level, n * width, cut), max(cfg.bound, 2))
        b = nm.expand(s2, nm.cloud0(level, m * width, cut), max(cfg.bound, 2))
        ia = {v for v in _branch_indices(a) if v[0] == level}
        ib = {v for v in _branch_indices(b) if v[0] == level}
        if ia & ib:
            yield (FAIL, f"blocks {n} and {m} share a branch")
            continue
        ok = all(core.block_of(i, width) == n for (_, i) in ia)
        ok = ok and all(core.block_of(i, width) == m for (_, i) in ib)
        yield (PASS if ok else FAIL, f"blocks {n} and {m} use disjoint index ranges")


def _cloud_diff_dense(s, cfg):
    level = core.succ_prime(s)[0]
    if f_lim(s, level) < 2:
        yield (SKIP, "level too narrow for two branches")
        return
    i, j = 0, 1
    if cfg.exhaustive:
        universe = [
            p
            for p in gen.all_cond0(s, 4, pos_bound=1)
            if (level, i) in p.tree and (level, j) in p.tree
        ]
        total = len(universe)
    else:
        total = cfg.cases
    for serial in range(total):
        if cfg.exhaustive:
            r = universe[serial]
        else:
            rng = _case_rng(cfg, "CLOUD-DIFF-DENSE", serial)
            r = gen.gen_cond0(s, rng.randrange(1 << 30), rng.randint(2, 6), cfg.bound)
            if (level, i) not in r.tree or (level, j) not in r.tree:
                # graft both branches onto the sampled condition
                parents = {(0, 0): None}
                prev = (0, 0)
                for l in range(1, level):
                    parents[(l, 0)] = prev
                    prev = (l, 0)
                parents[(level, i)] = prev
                parents[(level, j)] = prev
                base = FlimTree(parents)
                try:
                    r = Cond0(core.tree_union(s, r.tree, base), r.label_map())
                except ForceLabError:
                    r = Cond0(base, {})
        try:
            r2 = nm.cloud_difference_witness(s, r, level, i, j)
        except ForceLabError as exc:
            yield (FAIL, f"witness failed: {exc.code}")
            continue
        ok = cnd.leq0(r2, r) and nm.cloud_difference_dense(s, level, i, j)(r2)
        yield (PASS if ok else FAIL, "strengthening separates the branches")


# ---------------------------------------------------------------------------
# quotient properties


def _qt_poset(s, cfg):
    ctx = _default_ctx(s, beta=min(2, cfg.bound + 1))
    members = _tilde_universe(s, ctx, cfg.bound, with_labels=False)
    qtrees = []
    for p in members:
        q = qt.rho0(s, p, ctx).qtree
        if q not in qtrees:
            qtrees.append(q)
    bad = sum(1 for t in qtrees if not qt.qtree_leq(t, t))
    yield (PASS if bad == 0 else FAIL, f"reflexivity over {len(qtrees)} partition trees")
    anti = trans = 0
    for a, b in itertools.product(qtrees, repeat=2):
        if a != b and qt.qtree_leq(a, b) and qt.qtree_leq(b, a):
            anti += 1
    for a, b, c in itertools.product(qtrees, repeat=3):
        if qt.qtree_leq(a, b) and qt.qtree_leq(b, c) and not qt.qtree_leq(a, c):
            trans += 1
    yield (PASS if anti == 0 else FAIL, f"antisymmetry ({anti})")
    yield (PASS if trans == 0 else FAIL, f"transitivity ({trans})")
    bad = 0
    for a, b in itertools.product(qtrees, repeat=2):
        if not qt.qtree_leq(a, b):
            continue
        try:
            emb = qt.qtree_embed(b, a)
        except ForceLabError:
            bad += 1
            continue
        for v, w in emb.items():
            if v[0] != w[0]:
                bad += 1
    yield (PASS if bad == 0 else FAIL, f"embeddings exist below ({bad} bad)")


def _rho0_proj(s, cfg):
    betas = [b for b in (1, 2, 3) if b <= f_lim(s, _default_kappa(s))]
    if not cfg.exhaustive:
        betas = betas[:1]
    for beta in betas:
        ctx = _default_ctx(s, beta=beta)
        members = _tilde_universe(s, ctx, cfg.bound, cap=600)
        proj = {}
        for p in members:
            try:
                proj[p] = qt.rho0(s, p, ctx)
            except ForceLabError as exc:
                yield (FAIL, f"projection failed at beta={beta}: {exc.code}")
                proj = None
                break
        if proj is None:
            continue
        bad_valid = sum(
            1 for q in proj.values() if qt.validate_icond(s, q, ctx)
        )
        yield (
            PASS if bad_valid == 0 else FAIL,
            f"beta={beta}: {len(members)} projections valid ({bad_valid} bad)",
        )
        mono = lifts = pool = 0
        pairs = [
            (p, q)
            for p, q in itertools.product(members, repeat=2)
            if p != q and cnd.leq0(p, q)
        ]
        if cfg.exhaustive:
            pairs = pairs[:2000]
        else:
            rng = _case_rng(cfg, "RHO0-PROJ", beta)
            rng.shuffle(pairs)
            pairs = pairs[: cfg.cases]
        for p, q in pairs:
            if not qt.icond_leq(proj[p], proj[q]):
                mono += 1
                continue
            try:
                r = qt.lift0(s, q, proj[p], ctx)
            except ForceLabError as exc:
                if exc.code == errors.POOL_EXHAUSTED:
                    pool += 1
                lifts += 1
                continue
            if not cnd.leq0(r, q) or qt.rho0(s, r, ctx) != proj[p]:
                lifts += 1
        yield (PASS if mono == 0 else FAIL, f"beta={beta}: monotone on {len(pairs)} pairs")
        yield (
            PASS if lifts == 0 and pool == 0 else FAIL,
            f"beta={beta}: lifting sections ({lifts} bad, {pool} pool exhausted)",
        )
        # a filter of tilde-members projects to compatible quotient conditions
        if members:
            h = FilterGen("c0", [members[0]])
            image = qt.filter_rho0(s, h, ctx)
            ok = all(isinstance(q, qt.ICond) for q in image)
            yield (PASS if ok else FAIL, f"beta={beta}: filter image shape")


def _rho1_proj(s, cfg):
    kp = _default_kappa(s)
    beta = min(2, f_lim(s, kp))
    for serial in range(cfg.cases):
        rng = _case_rng(cfg, "RHO1-PROJ", serial)
        p = gen.gen_cond1(s, rng.randrange(1 << 30), rng.randint(1, 5), cfg.bound + 1)
        low = qt.rho1(s, p, kp, beta)
        # the projection lands in the truncated forcing
        in_range = all(
            lvl < kp and all(y < beta for y in low.block(lvl)[1]) for lvl in low.levels()
        )
        if not in_range:
            yield (FAIL, "projection keeps truncated data")
            continue
        if qt.rho1(s, low, kp, beta) != low:
            yield (FAIL, "projection is not idempotent")
            continue
        q = gen.strengthen_cond1(s, rng, low, cfg.bound)
        q = qt.rho1(s, q, kp, beta)
        if not cnd.leq1(q, low):
            yield (SKIP, "no strict truncated extension")
            continue
        try:
            lifted = qt.lift1(s, p, q, kp, beta)
        except ForceLabError as exc:
            yield (FAIL, f"lift failed: {exc.code}")
            continue
        ok = cnd.leq1(lifted, p) and qt.rho1(s, lifted, kp, beta) == q
        yield (PASS if ok else FAIL, "truncation section")


def _limit_swap_candidates(s, ctx):
    """Index swaps at untracked levels strictly between the cut data and
    the top, available for building projection-equal pairs."""
    out = []
    cuts = qt.cut_levels(ctx)
    for level in range(1, ctx.kappa_plus):
        if level in cuts or f_lim(s, level) < 2:
            continue
        out.append(level)
    return out


def _tqq_iso(s, cfg):
    ctx = _default_ctx(s, beta=min(2, cfg.bound + 1))
    kp = ctx.kappa_plus
    levels = _limit_swap_candidates(s, ctx)

    def _reroute(q0, level):
        idx = sorted(q0.tree.indices_at(level))
        spare = [i for i in range(f_lim(s, level)) if i not in idx]
        movable = [i for i in idx if (level, i) not in ctx.r_bar.tree]
        if movable and spare:
            return movable[0], spare[0]
        return None

    members = [
        (p, level)
        for p in _tilde_universe(s, ctx, max(cfg.bound, 2), cap=300)
        if all(i < ctx.beta for i in p.tree.indices_at(kp))
        for level in levels
        if _reroute(p, level) is not None
    ]
    if not members:
        yield (SKIP, "no reroutable member in the bounded universe")
        return
    for serial in range(cfg.cases):
        rng = _case_rng(cfg, "TQQ-ISO", serial)
        q0, level = members[rng.randrange(len(members))]
        a, b = _reroute(q0, level)
        pi = am.index_swap_aut0(s, [(level, a, b)])
        q1 = am.apply0(pi, q0)
        if qt.rho0(s, q0, ctx) != qt.rho0(s, q1, ctx):
            yield (FAIL, "reroute changed the projection")
            continue
        try:
            vmap = qt.tqq_vertex_map(s, q0, q1, ctx)
        except ForceLabError as exc:
            yield (FAIL, f"no transport map: {exc.code}")
            continue
        if sorted(vmap) != sorted(q1.tree.vertices) or sorted(
            vmap.values()
        ) != sorted(q0.tree.vertices):
            yield (FAIL, "transport map is not a vertex bijection")
            continue
        p = Cond0(q0.tree, q0.label_map())
        moved = qt.transport_cond_tqq(s, p, q0, q1, ctx)
        back = qt.transport_cond_tqq(s, moved, q1, q0, ctx)
        if back != p:
            yield (FAIL, "transport composed with its reverse is not the identity")
            continue
        # order isomorphism: a label extension transports to an extension
        labelable = [v for v in sorted(p.tree.vertices) if v[0] in s.labelable_levels()]
        if labelable:
            v = labelable[rng.randrange(len(labelable))]
            labels = p.label_map()
            labels.setdefault(v, {}).setdefault(0, 1)
            stronger = Cond0(p.tree, labels)
            m2 = qt.transport_cond_tqq(s, stronger, q0, q1, ctx)
            if not cnd.leq0(m2, moved):
                yield (FAIL, "transport does not respect the order")
                continue
        yield (PASS, f"transport at level {level}")


def _tpi_commute(s, cfg):
    kp = _default_kappa(s)
    level = core.succ_prime(s)[0]
    bound = max(cfg.bound, 2)
    # a base condition with a second branch parallel to the reference one
    lstar = next(
        (l for l in range(1, s.n_levels) if f_lim(s, l) >= 2), None
    )
    parents, prev0, prevb = {(0, 0): None}, (0, 0), None
    for l in range(1, s.n_levels):
        parents[(l, 0)] = prev0
        if lstar is not None and l >= lstar:
            parents[(l, 1)] = prevb if prevb is not None else prev0
            prevb = (l, 1)
        prev0 = (l, 0)
    s_cond = Cond0(FlimTree(parents), {})
    pi0_opts = [am.IDENT0]
    if lstar is not None:
        swap0 = am.index_swap_aut0(
            s, [(l, 0, 1) for l in range(lstar, s.n_levels) if f_lim(s, l) >= 2]
        )
        if am.apply0(swap0, s_cond).tree == s_cond.tree:
            pi0_opts.append(swap0)
    columns = ((level, 0), (level, 1)) if s.f(level) >= 2 else ((level, 0),)
    pi1_opts = [am.IDENT1]
    if len(columns) == 2:
        pi1_opts.append(
            am.column_swap_aut1(s, [(level, 0, 1)], {level: ((0,), (0, 1))})
        )
    names = [
        nm.check_nat(1),
        nm.PName({(nm.check_nat(0), ProductCond(s_cond, ONE1))}),
        nm.PName(
            {
                (
                    nm.EMPTY_NAME,
                    ProductCond(s_cond, Cond1({level: ({0}, {0}, {(0, 0): 1})})),
                )
            }
        ),
    ]
    for serial in range(cfg.cases):
        rng = _case_rng(cfg, "TPI-COMMUTE", serial)
        x = names[rng.randrange(len(names))]
        pi0 = pi0_opts[rng.randrange(len(pi0_opts))]
        pi1 = pi1_opts[rng.randrange(len(pi1_opts))]
        try:
            moved = qt.transport_tpi(s, x, pi0, pi1, s_cond, columns, kp)
        except ForceLabError as exc:
            yield (FAIL, f"transport failed: {exc.code}")
            continue
        lhs = _dpi_filter(qt.tilde_extend(s, moved, s_cond, columns, kp, bound), pi1)
        try:
            rhs = nm.act(
                pi0,
                pi1,
                _dpi_filter(
                    qt.tilde_extend(s, x, s_cond, columns, kp, bound), pi1
                ),
            )
        except ForceLabError as exc:
            yield (FAIL, f"global action failed: {exc.code}")
            continue
        yield (PASS if lhs == rhs else FAIL, "transport commutes with the action")


def _dpi_filter(x, pi1):
    entries = set()
    for y, p in x.entries:
        if am.in_dpi(pi1, p.c1):
            entries.add((_dpi_filter(y, pi1), p))
    return nm.PName(entries)


def _mbeta_enum(s, cfg):
    kp = _default_kappa(s)
    beta = min(max(cfg.bound, 1), f_lim(s, kp))
    bound = 1 if cfg.exhaustive else min(cfg.bound, 2)
    first = list(qt.enum_m_beta(s, kp, beta, bound))
    second = list(qt.enum_m_beta(s, kp, beta, bound))
    yield (PASS if first == second else FAIL, f"deterministic ({len(first)} tuples)")
    dup = len(first) != len(set(first))
    yield (PASS if not dup else FAIL, "duplicate-free")
    restart = list(qt.enum_m_beta(s, kp, beta, bound, start=len(first) // 2))
    yield (
        PASS if restart == first[len(first) // 2 :] else FAIL,
        "restartable mid-stream",
    )
    probes = sorted({0, len(first) // 2, len(first) - 1}) if first else []
    bad = 0
    for k in probes:
        if qt.mtuple_rank(s, kp, beta, bound, first[k]) != k:
            bad += 1
    yield (PASS if bad == 0 else FAIL, f"rank agrees at {len(probes)} probes")
    ok = all(
        all(v[0] == kp for v in m.cond.tree.max_points()) and len(m.cond.tree)
        for m in first
    )
    yield (PASS if ok else FAIL, "every tuple tops out at the cut level")


# ---------------------------------------------------------------------------
# registry


PROPERTIES = {}


def _register(pid, doc, invariants, runner):
    PROPERTIES[pid] = PropertySpec(pid, doc, tuple(invariants), runner)


_register(
    "P0-POSET",
    "Tree conditions form a poset; unions are meets; f_lim is monotone.",
    ("core.tree-poset", "core.f-lim-monotone", "core.tree-union-lub", "cond.leq-posets-unions"),
    _p0_poset,
)
_register(
    "P0-SPLIT-DENSE",
    "Band splitting and gluing reassembles any tree condition.",
    ("cond.split-density",),
    _p0_split_dense,
)
_register(
    "P0-ANTICHAIN",
    "A greedy maximal antichain is predense in the bounded universe.",
    ("cond.antichain",),
    _p0_antichain,
)
_register(
    "P0-RESTRICT-DENSE",
    "Dense predicates in the fixed-tree subforcing lift constructively.",
    ("core.restrict-valid", "cond.filter-restriction", "cond.dense-lift-witness"),
    _p0_restrict_dense,
)
_register(
    "P1-POSET",
    "Rectangle conditions form a poset with unions as meets.",
    ("cond.leq-posets-unions",),
    _p1_poset,
)
_register(
    "DPI-CLOSURE",
    "Bounded same-support extensions reach the action domain; the action preserves order.",
    ("aut.dpi-closure", "aut.apply1-order"),
    _dpi_closure,
)
_register(
    "A0-GROUP",
    "Tree automorphisms form a group acting on conditions.",
    ("aut.group0",),
    _a0_group,
)
_register(
    "A1-GROUP-EXT",
    "Rectangular automorphisms satisfy the group laws extensionally on their domains.",
    ("aut.group1-ext",),
    _a1_group_ext,
)
_register(
    "FIX1-COLUMN",
    "Column-fixing automorphisms leave the designated column's bits unchanged.",
    ("aut.fix1",),
    _fix1_column,
)
_register(
    "HOMOG0",
    "Any two tree conditions are matched by a small automorphism (enlarged regime).",
    ("aut.homog",),
    _homog0_cases,
)
_register(
    "HOMOG1",
    "Any two rectangle conditions are matched by a flip automorphism.",
    ("aut.homog",),
    _homog1_cases,
)
_register(
    "NORMALITY",
    "Every subgroup generator conjugates into itself along a witness intersection.",
    ("aut.normality",),
    _normality,
)
_register(
    "NAME-BAR-VAL",
    "Bar extension preserves valuations and reaches the action domain.",
    ("names.bar-val",),
    _name_bar_val,
)
_register(
    "NAME-EQUIVARIANCE",
    "Valuation commutes with the automorphism action on names and filters.",
    ("names.equivariance",),
    _name_equivariance,
)
_register(
    "SYM-CANONICAL",
    "Canonical names are fixed by their defining subgroups (sampled).",
    ("names.sym-canonical",),
    _sym_canonical,
)
_register(
    "CLOUD-DISJOINT",
    "Clouds of distinct blocks use disjoint branch index ranges.",
    ("names.cloud-disjoint",),
    _cloud_disjoint,
)
_register(
    "CLOUD-DIFF-DENSE",
    "Separating two branches by a label is dense below any condition holding both.",
    ("names.cloud-diff-dense",),
    _cloud_diff_dense,
)
_register(
    "QT-POSET",
    "Partition trees form a poset with order-respecting embeddings.",
    ("quot.qtree-poset-embed",),
    _qt_poset,
)
_register(
    "RHO0-PROJ",
    "The tree-side projection is monotone, valid, and admits lifting sections.",
    ("quot.rho0-projection", "quot.filter-image"),
    _rho0_proj,
)
_register(
    "RHO1-PROJ",
    "The rectangle-side truncation is idempotent, monotone, and admits sections.",
    ("quot.rho1",),
    _rho1_proj,
)
_register(
    "TQQ-ISO",
    "Projection-equal conditions induce an order isomorphism of their cones.",
    ("quot.tqq-iso",),
    _tqq_iso,
)
_register(
    "TPI-COMMUTE",
    "Designated-column transport commutes with the global action after extension.",
    ("quot.tpi-commute",),
    _tpi_commute,
)
_register(
    "MBETA-ENUM",
    "The width-cut enumeration is deterministic, duplicate-free, and restartable.",
    ("quot.mbeta-enum",),
    _mbeta_enum,
)


ALL_INVARIANTS = tuple(
    sorted({key for spec in PROPERTIES.values() for key in spec.invariants})
)


def selected_properties(cfg):
    if "all" in cfg.properties:
        return list(PROPERTIES)
    return [pid for pid in PROPERTIES if pid in cfg.properties]


def _payload(cfg, pid, serial):
    return ser.dumps(
        {
            "property": pid,
            "serial": serial,
            "seed": cfg.seed,
            "bound": cfg.bound,
            "cases": cfg.cases,
            "exhaustive": cfg.exhaustive,
            "width": cfg.width,
            "skeleton": hcfg.skeleton_to_dict(cfg.skeleton),
        }
    )


def run(cfg):
    """The deterministic case stream for a configuration."""
    hcfg.validate_run_config(cfg, set(PROPERTIES))
    s = cfg.resolved_skeleton()
    for pid in selected_properties(cfg):
        spec = PROPERTIES[pid]
        start = time.perf_counter()
        serial = 0
        try:
            for status, detail in spec.runner(s, cfg):
                now = time.perf_counter()
                yield CaseReport(
                    pid, serial, status, detail, _payload(cfg, pid, serial), now - start
                )
                start, serial = now, serial + 1
        except ForceLabError as exc:
            now = time.perf_counter()
            yield CaseReport(
                pid,
                serial,
                FAIL,
                f"runner raised {exc.code}: {exc}",
                _payload(cfg, pid, serial),
                now - start,
            )


def replay(text):
    """Re-run the single case a report payload describes."""
    data = ser.loads(text)
    if not isinstance(data, dict):
        raise ForceLabError(errors.PARSE_ERROR, "payload is not an object")
    try:
        pid = data["property"]
        serial = data["serial"]
        cfg = hcfg.RunConfig(
            skeleton=hcfg.skeleton_from_dict(data["skeleton"]),
            bound=data["bound"],
            seed=data["seed"],
            cases=data["cases"],
            exhaustive=data["exhaustive"],
            properties=(pid,),
            width=data.get("width"),
        )
    except (KeyError, TypeError) as exc:
        raise ForceLabError(errors.PARSE_ERROR, f"incomplete payload: {exc}")
    if pid not in PROPERTIES:
        raise ForceLabError(errors.PARSE_ERROR, f"unknown property {pid!r}")
    for report in run(cfg):
        if report.serial == serial:
            return report
    raise ForceLabError(errors.PARSE_ERROR, f"serial {serial} out of range for {pid}")
