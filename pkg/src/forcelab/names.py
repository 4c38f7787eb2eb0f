"""Rank-bounded names over the product forcing: valuation, automorphism
transport, bar-extensions, canonical generic names, and clouds.

A name is a finite set of (name, condition) entries; valuation under a
finitely generated filter keeps the entries whose condition is dominated
by a generator.  Naturals inside names are encoded as von Neumann check
names, so valuations are hereditarily finite sets.
"""

import itertools
import random
from dataclasses import dataclass

from . import automorphisms as am
from . import conditions as cnd
from . import core, errors
from .conditions import ONE0, ONE1, ONE_P, Cond0, Cond1, ProductCond, filter_member
from .core import f_lim
from .errors import ForceLabError


class PName:
    """A finite set of (PName, ProductCond) entries."""

    __slots__ = ("entries", "_rank")

    def __init__(self, entries=()):
        self.entries = frozenset(entries)
        self._rank = 1 + max((y.rank() for y, _ in self.entries), default=-1)

    def rank(self):
        return self._rank

    def __eq__(self, other):
        return isinstance(other, PName) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"PName({sorted(map(repr, self.entries))})"


EMPTY_NAME = PName()


def check_nat(n):
    """The check name of a natural number (von Neumann encoding)."""
    out = EMPTY_NAME
    ladder = []
    for _ in range(n):
        ladder.append(out)
        out = PName({(y, ONE_P) for y in ladder})
    return out


def check_set(naturals):
    return PName({(check_nat(n), ONE_P) for n in naturals})


def pair_name(x, y):
    """The canonical name for the ordered pair of two names."""
    return PName(
        {
            (PName({(x, ONE_P)}), ONE_P),
            (PName({(x, ONE_P), (y, ONE_P)}), ONE_P),
        }
    )


def encode_nat(n):
    """The hereditarily finite set a check name of n valuates to."""
    out = frozenset()
    acc = []
    for _ in range(n):
        acc.append(out)
        out = frozenset(acc)
    return out


def val(x, h):
    """Recursive valuation of a name under a finitely generated filter."""
    return frozenset(val(y, h) for y, p in x.entries if filter_member(h, p))


def act(pi0, pi1, x):
    """Transport a name along an automorphism pair.  Every rectangular
    part must lie in the action domain (bar-extend first otherwise)."""
    entries = set()
    for y, p in x.entries:
        c1 = apply_or_raise(pi1, p.c1)
        entries.add((act(pi0, pi1, y), ProductCond(am.apply0(pi0, p.c0), c1)))
    return PName(entries)


def apply_or_raise(pi1, c1):
    if not am.in_dpi(pi1, c1):
        raise ForceLabError(errors.NOT_IN_DOMAIN, "name entry outside the action domain")
    return am.apply1(pi1, c1)


def d_extensions(s, c1, pi1, bound):
    """All bounded extensions of a rectangular condition with the same
    supported levels that land in the action domain of pi1."""
    levels = c1.levels()
    per_level = []
    for level in levels:
        xs0, ys0, bits0 = c1.block(level)
        rec = pi1.at(level)
        xs_min = xs0 | rec.xs
        ys_min = ys0 | rec.ys
        xs_pool = sorted(set(range(bound)) - xs_min)
        ys_pool = sorted(set(range(min(s.f(level), bound))) - ys_min)
        opts = []
        for extra_x in _subsets(xs_pool):
            for extra_y in _subsets(ys_pool):
                xs = xs_min | set(extra_x)
                ys = ys_min | set(extra_y)
                free = sorted((x, y) for x in xs for y in ys if (x, y) not in bits0)
                for fill in itertools.product((0, 1), repeat=len(free)):
                    bits = dict(bits0)
                    bits.update(zip(free, fill))
                    opts.append((xs, ys, bits))
        per_level.append([(level, o) for o in opts])
    out = []
    for combo in itertools.product(*per_level):
        out.append(Cond1({l: o for l, o in combo}))
    return out


def _subsets(items):
    items = list(items)
    for k in range(len(items) + 1):
        yield from itertools.combinations(items, k)


def bar(s, x, pi1, bound):
    """The bar-extension of a name into the action domain of pi1: each
    entry condition is replaced by all its bounded same-support
    extensions inside the domain."""
    entries = set()
    for y, p in x.entries:
        y_bar = bar(s, y, pi1, bound)
        for c1 in d_extensions(s, p.c1, pi1, bound):
            entries.add((y_bar, ProductCond(p.c0, c1)))
    return PName(entries)


def filter_image(s, pi0, pi1, h):
    gens = []
    for g in h.generators:
        gens.append(ProductCond(am.apply0(pi0, g.c0), apply_or_raise(pi1, g.c1)))
    return cnd.FilterGen("p", gens)


def equivariance_check(s, x, pi0, pi1, h, bound):
    """Valuation commutes with transport: the value of the moved name
    under the moved filter equals the value of the name under the filter."""
    x_bar = bar(s, x, pi1, bound)
    moved = act(pi0, pi1, x_bar)
    return val(moved, filter_image(s, pi0, pi1, h)) == val(x_bar, h)


@dataclass(frozen=True)
class CanonicalName:
    """A tagged description of one of the built-in generic names."""

    tag: str
    level: int | None = None
    index: int | None = None
    cut: int | None = None
    parts: tuple = ()
    values: tuple = ()


def g0_branch(level, index):
    return CanonicalName("g0branch", level=level, index=index)


def g1_column(level, index):
    return CanonicalName("g1column", level=level, index=index)


def cloud0(level, index, cut):
    return CanonicalName("cloud0", level=level, index=index, cut=cut)


def cloud1(level, index, cut):
    return CanonicalName("cloud1", level=level, index=index, cut=cut)


def check_of(*naturals):
    return CanonicalName("check", values=tuple(sorted(naturals)))


def pair_of(a, b):
    return CanonicalName("pair", parts=(a, b))


def _branch_conditions(s, level, index, bound):
    """All minimal single-branch conditions deciding one position 1 on
    the branch through (level, index)."""
    inner = list(range(1, level))
    labelable = set(s.labelable_levels())
    out = []
    for mids in itertools.product(*[range(f_lim(s, l)) for l in inner]):
        parents = {(0, 0): None}
        prev = (0, 0)
        for l, i in zip(inner, mids):
            parents[(l, i)] = prev
            prev = (l, i)
        parents[(level, index)] = prev
        tree = core.FlimTree(parents)
        if core.validate_tree(s, tree):
            continue
        for v in tree.vertices:
            if v[0] not in labelable:
                continue
            for zeta in range(bound):
                out.append((zeta, Cond0(tree, {v: {zeta: 1}})))
    return out


def expand(s, c, bound):
    """The bounded name a canonical description stands for."""
    if c.tag == "check":
        return check_set(c.values)
    if c.tag == "pair":
        return pair_name(expand(s, c.parts[0], bound), expand(s, c.parts[1], bound))
    if c.tag == "g0branch":
        entries = set()
        for zeta, p0 in _branch_conditions(s, c.level, c.index, bound):
            entries.add((check_nat(zeta), ProductCond(p0, ONE1)))
        return PName(entries)
    if c.tag == "g1column":
        entries = set()
        for zeta in range(bound):
            c1 = Cond1({c.level: ({zeta}, {c.index}, {(zeta, c.index): 1})})
            entries.add((check_nat(zeta), ProductCond(ONE0, c1)))
        return PName(entries)
    if c.tag in ("cloud0", "cloud1"):
        width = s.block_width
        hi = s.f(c.level) if c.tag == "cloud1" else f_lim(s, c.level)
        hi = min(hi, c.cut if c.cut is not None else hi)
        make = g1_column if c.tag == "cloud1" else g0_branch
        entries = set()
        for i in range(c.index, min(c.index + width, hi)):
            entries.add((expand(s, make(c.level, i), bound), ONE_P))
        return PName(entries)
    raise ForceLabError(errors.STRUCTURE_MISMATCH, f"unknown canonical tag {c.tag!r}")


def cloud_sequence(s, level, cut, bound, kind="cloud0"):
    """The name pairing each block number with its cloud, fixed by every
    small automorphism: entries are ordered pairs (n, cloud at block n)."""
    width = s.block_width
    entries = set()
    for n in range(0, (cut + width - 1) // width):
        cloud = CanonicalName(kind, level=level, index=n * width, cut=cut)
        entries.add((pair_name(check_nat(n), expand(s, cloud, bound)), ONE_P))
    return PName(entries)


def cloud_difference_dense(s, level, i, j):
    """The set of conditions containing both branch tops and labeling some
    position differently along the two branches; dense below every
    condition containing both vertices."""

    def predicate(p):
        u, v = (level, i), (level, j)
        if u not in p.tree or v not in p.tree:
            return False
        bu, bv = cnd.branch_union0(p, u), cnd.branch_union0(p, v)
        return any(bu[k] != bv[k] for k in set(bu) & set(bv))

    return predicate


def cloud_difference_witness(s, r, level, i, j):
    """A strengthening of r inside cloud_difference_dense(s, level, i, j).

    The two branches diverge at a labelable level (limit levels never
    split), so a fresh position labeled 1/0 at the divergence vertices
    separates them.
    """
    u, v = (level, i), (level, j)
    if u not in r.tree or v not in r.tree or i == j:
        raise ForceLabError(errors.STRUCTURE_MISMATCH, "branches missing from the condition")
    if cloud_difference_dense(s, level, i, j)(r):
        return r
    chain_u = r.tree.chain(u) + [u]
    chain_v = r.tree.chain(v) + [v]
    div = next(l for l, (a, b) in enumerate(zip(chain_u, chain_v)) if a != b)
    a, b = chain_u[div], chain_v[div]
    used = {
        pos
        for w in (a, b)
        for pos in r.label(w)
    }
    pos = 0
    while pos in used:
        pos += 1
    labels = r.label_map()
    labels.setdefault(a, {})[pos] = 1
    labels.setdefault(b, {})[pos] = 0
    out = Cond0(r.tree, labels)
    return cnd.check_cond0(s, out)


def sym_check(s, x, spec, seed, n_samples, width=None, bound=2):
    """Sampled fixedness of a name under a subgroup intersection.

    Rejection-samples automorphism pairs from the intersection and tests
    whether the bar-extension is fixed; sound for refutation only.
    Returns None or a counterexample pair.
    """
    if width is None:
        width = s.block_width
    rng = random.Random(seed)
    for _ in range(n_samples):
        pi0, pi1 = am.sample_spec_member(s, spec, rng, width, pos_bound=bound)
        x_bar = bar(s, x, pi1, bound)
        if act(pi0, pi1, x_bar) != x_bar:
            return (pi0, pi1)
    return None


def hs_check(s, x, spec, seed, n_samples, width=None, bound=2):
    """sym_check applied recursively through the entries."""
    hit = sym_check(s, x, spec, seed, n_samples, width=width, bound=bound)
    if hit is not None:
        return hit
    for y, _ in x.entries:
        hit = hs_check(s, y, spec, seed + 1, n_samples, width=width, bound=bound)
        if hit is not None:
            return hit
    return None
