"""Quotient layer: partition trees, indexed conditions, projections with
lifting, transports, and the tuple enumeration."""

import itertools

import pytest

from forcelab import conditions as cnd
from forcelab import errors
from forcelab import names as nm
from forcelab import quotient as qt
from forcelab.automorphisms import apply0, column_swap_aut1, in_dpi, index_swap_aut0
from forcelab.conditions import (
    ONE1,
    Cond0,
    Cond1,
    FilterGen,
    ProductCond,
    leq0,
    leq1,
    union0,
    validate_cond1,
)
from forcelab.core import EMPTY_TREE, FlimTree
from forcelab.errors import ForceLabError
from forcelab.names import PName, check_nat, val
from forcelab.quotient import (
    STAR,
    ICond,
    MTuple,
    QTree,
    SymContext,
    enum_m_beta,
    filter_rho0,
    filter_rho1,
    i_primes,
    icond_leq,
    in_tilde,
    lift0,
    lift1,
    mtuple_rank,
    one_icond,
    qtree_embed,
    qtree_leq,
    required_n_domain,
    rho0,
    rho1,
    tilde_errors,
    tilde_extend,
    tqq_vertex_map,
    transport_cond_tqq,
    transport_name_tqq,
    transport_tpi,
    validate_ctx,
    validate_icond,
    validate_qtree,
)

from conftest import SKEL_A, L_OMEGA, L_S1, L_LIM, L_TOP


def codes(errs):
    return {c for c, _ in errs}


# The reference tree used throughout: one branch to top 0, a second
# splitting at L_S1 index 1 and topping out at index 2.
RBAR_PARENTS = {
    (0, 0): None,
    (1, 0): (0, 0),
    (2, 0): (1, 0),
    (3, 0): (2, 0),
    (4, 0): (3, 0),
    (2, 1): (1, 0),
    (3, 1): (2, 1),
    (4, 2): (3, 1),
}
RBAR = Cond0(FlimTree(RBAR_PARENTS), {})

# Protect the branch through top 0 and cut the L_S1 indices at 1.
CTX = SymContext(
    r_bar=RBAR,
    kappa_plus=L_TOP,
    protected_tops=((L_TOP, 0),),
    small0_cuts=((L_S1, 1),),
    beta_tilde=2,
    beta=3,
)

# A single-branch reference at the lower successor level.
CHAIN_PARENTS = {(0, 0): None, (1, 0): (0, 0), (2, 0): (1, 0), (3, 0): (2, 0), (4, 0): (3, 0)}
CHAIN_RBAR = Cond0(FlimTree(CHAIN_PARENTS), {})
CHAIN_CTX = SymContext(
    r_bar=CHAIN_RBAR,
    kappa_plus=L_TOP,
    protected_tops=((L_TOP, 0),),
    beta_tilde=1,
    beta=2,
)


def qtree(support, parts):
    return QTree(L_TOP, support, parts)


def all_qtrees(support_pool):
    """Every valid partition tree over subsets of the pool (top L_TOP)."""

    def partitions(items):
        items = list(items)
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in partitions(rest):
            for i, cell in enumerate(part):
                yield part[:i] + [cell | {first}] + part[i + 1 :]
            yield part + [{first}]

    def refines(fine, coarse):
        return all(any(c <= d for d in coarse) for c in fine)

    out = []
    for r in range(len(support_pool) + 1):
        for supp in itertools.combinations(support_pool, r):
            supp = set(supp)
            base = [supp] if supp else []
            top = [{i} for i in supp]
            for p1 in partitions(supp):
                if not refines(p1, base):
                    continue
                for p2 in partitions(supp):
                    if not refines(p2, p1):
                        continue
                    # limit level 3 copies level 2; top is discrete
                    t = qtree(supp, {0: base, 1: p1, 2: p2, 3: p2, 4: top})
                    if not validate_qtree(SKEL_A, t):
                        out.append(t)
    return out


class TestQTree:
    def test_valid_example(self):
        t = qtree({0, 2}, {0: [{0, 2}], 1: [{0, 2}], 2: [{0}, {2}], 3: [{0}, {2}], 4: [{0}, {2}]})
        assert validate_qtree(SKEL_A, t) == []

    def test_base_must_be_coarse(self):
        t = qtree({0, 2}, {0: [{0}, {2}], 1: [{0}, {2}], 2: [{0}, {2}], 3: [{0}, {2}], 4: [{0}, {2}]})
        assert errors.STRUCTURE_MISMATCH in codes(validate_qtree(SKEL_A, t))

    def test_top_must_be_discrete(self):
        t = qtree({0, 2}, {0: [{0, 2}], 1: [{0, 2}], 2: [{0, 2}], 3: [{0, 2}], 4: [{0, 2}]})
        assert errors.STRUCTURE_MISMATCH in codes(validate_qtree(SKEL_A, t))

    def test_limit_level_cannot_split(self):
        t = qtree({0, 2}, {0: [{0, 2}], 1: [{0, 2}], 2: [{0, 2}], 3: [{0}, {2}], 4: [{0}, {2}]})
        assert errors.LIMIT_SPLIT in codes(validate_qtree(SKEL_A, t))

    def test_partitions_must_refine(self):
        t = qtree(
            {0, 1, 2},
            {
                0: [{0, 1, 2}],
                1: [{0, 1}, {2}],
                2: [{0, 2}, {1}],
                3: [{0, 2}, {1}],
                4: [{0}, {1}, {2}],
            },
        )
        assert errors.STRUCTURE_MISMATCH in codes(validate_qtree(SKEL_A, t))

    def test_support_index_out_of_range(self):
        t = qtree({0, 5}, {0: [{0, 5}], 1: [{0, 5}], 2: [{0}, {5}], 3: [{0}, {5}], 4: [{0}, {5}]})
        assert errors.INDEX_OUT_OF_RANGE in codes(validate_qtree(SKEL_A, t))

    def test_top_level_must_be_successor(self):
        t = QTree(L_LIM, {0}, {0: [{0}], 1: [{0}], 2: [{0}], 3: [{0}]})
        assert errors.BAD_LEVEL_ORDER in codes(validate_qtree(SKEL_A, t))

    def test_bad_partition_of_support(self):
        t = qtree({0, 2}, {0: [{0, 2}], 1: [{0}], 2: [{0}, {2}], 3: [{0}, {2}], 4: [{0}, {2}]})
        assert errors.STRUCTURE_MISMATCH in codes(validate_qtree(SKEL_A, t))


class TestQTreeOrder:
    def test_empty_is_maximum(self):
        empty = qtree(set(), {})
        for t in all_qtrees((0, 1)):
            assert qtree_leq(t, empty)
            assert qtree_leq(empty, t) == (t == empty)

    def test_support_growth_split_at_top_is_comparable(self):
        # support {0} versus support {0,2} splitting at the top only
        small = qtree({0}, {0: [{0}], 1: [{0}], 2: [{0}], 3: [{0}], 4: [{0}]})
        big = qtree({0, 2}, {0: [{0, 2}], 1: [{0, 2}], 2: [{0, 2}], 3: [{0, 2}], 4: [{0}, {2}]})
        assert qtree_leq(big, small)
        assert not qtree_leq(small, big)

    def test_same_support_different_meet_level_incomparable(self):
        a = qtree({0, 2}, {0: [{0, 2}], 1: [{0, 2}], 2: [{0}, {2}], 3: [{0}, {2}], 4: [{0}, {2}]})
        b = qtree({0, 2}, {0: [{0, 2}], 1: [{0, 2}], 2: [{0, 2}], 3: [{0, 2}], 4: [{0}, {2}]})
        assert not qtree_leq(a, b)
        assert not qtree_leq(b, a)

    def test_poset_laws_exhaustive(self):
        # reflexive, antisymmetric, transitive over all supports <= 3
        ts = all_qtrees((0, 1, 2))
        for a in ts:
            assert qtree_leq(a, a)
        for a, b in itertools.permutations(ts, 2):
            if qtree_leq(a, b) and qtree_leq(b, a):
                assert a == b
        rel = {(i, j) for i, a in enumerate(ts) for j, b in enumerate(ts) if qtree_leq(a, b)}
        for i, j in rel:
            for k in range(len(ts)):
                if (j, k) in rel:
                    assert (i, k) in rel

    def test_embed_traces_back(self):
        small = qtree({0}, {0: [{0}], 1: [{0}], 2: [{0}], 3: [{0}], 4: [{0}]})
        big = qtree({0, 2}, {0: [{0, 2}], 1: [{0, 2}], 2: [{0, 2}], 3: [{0, 2}], 4: [{0}, {2}]})
        emb = qtree_embed(small, big)
        for (level, z), (level2, z_bar) in emb.items():
            assert level == level2
            assert z_bar >= z
            assert z_bar & small.support == z

    def test_embed_is_order_embedding(self):
        small = qtree({0, 2}, {0: [{0, 2}], 1: [{0, 2}], 2: [{0, 2}], 3: [{0, 2}], 4: [{0}, {2}]})
        big = qtree(
            {0, 1, 2},
            {0: [{0, 1, 2}], 1: [{0, 1, 2}], 2: [{0, 1, 2}], 3: [{0, 1, 2}], 4: [{0}, {1}, {2}]},
        )
        emb = qtree_embed(small, big)
        vs = list(emb)
        for u, v in itertools.product(vs, vs):
            below = u[0] <= v[0] and u[1] >= v[1]
            iu, iv = emb[u], emb[v]
            below_img = iu[0] <= iv[0] and iu[1] >= iv[1]
            assert below == below_img

    def test_embed_requires_extension(self):
        a = qtree({0, 2}, {0: [{0, 2}], 1: [{0, 2}], 2: [{0}, {2}], 3: [{0}, {2}], 4: [{0}, {2}]})
        b = qtree({0, 2}, {0: [{0, 2}], 1: [{0, 2}], 2: [{0, 2}], 3: [{0, 2}], 4: [{0}, {2}]})
        with pytest.raises(ForceLabError) as e:
            qtree_embed(a, b)
        assert e.value.code == errors.NOT_COMPARABLE


class TestSymContext:
    def test_valid(self):
        assert validate_ctx(SKEL_A, CTX) == []
        assert i_primes(SKEL_A, CTX) == (0,)

    def test_low_protected_top_projects_up(self):
        ctx = SymContext(
            r_bar=RBAR,
            kappa_plus=L_TOP,
            protected_tops=((L_S1, 1),),
            beta_tilde=2,
            beta=3,
        )
        # the least top above (2,1) is (4,2)
        assert i_primes(SKEL_A, ctx) == (2,)

    def test_cut_must_clear_protected_data(self):
        ctx = SymContext(r_bar=RBAR, kappa_plus=L_TOP, protected_tops=((L_TOP, 2),), beta_tilde=1, beta=3)
        assert errors.INDEX_OUT_OF_RANGE in codes(validate_ctx(SKEL_A, ctx))

    def test_cuts_must_be_ordered(self):
        ctx = SymContext(r_bar=RBAR, kappa_plus=L_TOP, beta_tilde=3, beta=3)
        assert errors.INDEX_OUT_OF_RANGE in codes(validate_ctx(SKEL_A, ctx))

    def test_top_cut_must_be_successor_level(self):
        ctx = SymContext(r_bar=RBAR, kappa_plus=L_LIM, beta_tilde=0, beta=1)
        assert errors.BAD_LEVEL_ORDER in codes(validate_ctx(SKEL_A, ctx))

    def test_reference_branches_must_reach_the_cut(self):
        short = Cond0(FlimTree({(0, 0): None, (1, 0): (0, 0), (2, 0): (1, 0)}), {})
        ctx = SymContext(r_bar=short, kappa_plus=L_TOP, beta_tilde=0, beta=1)
        assert errors.NOT_TILDE in codes(validate_ctx(SKEL_A, ctx))


class TestTildeMembership:
    def test_reference_is_member(self):
        assert in_tilde(SKEL_A, RBAR, CTX)

    def test_foreign_tree_rejected(self):
        other = Cond0(FlimTree({(0, 0): None, (1, 1): (0, 0)}), {})
        assert codes(tilde_errors(SKEL_A, other, CTX)) == {errors.NOT_BELOW_RBAR}

    def test_short_branch_rejected(self):
        parents = dict(RBAR_PARENTS)
        parents[(2, 1)] = (1, 0)
        short = Cond0(FlimTree({**RBAR_PARENTS, (1, 1): (0, 0)}), {})
        assert errors.NOT_TILDE in codes(tilde_errors(SKEL_A, short, CTX))

    def test_sub_cut_vertex_needs_low_top(self):
        # a reference tree whose (2,0)-branch only reaches top index 2
        rbar2 = Cond0(
            FlimTree(
                {
                    (0, 0): None,
                    (1, 0): (0, 0),
                    (2, 0): (1, 0),
                    (3, 0): (2, 0),
                    (4, 2): (3, 0),
                    (2, 1): (1, 0),
                    (3, 1): (2, 1),
                    (4, 0): (3, 1),
                }
            ),
            {},
        )
        ctx = SymContext(
            r_bar=rbar2,
            kappa_plus=L_TOP,
            small0_cuts=((L_S1, 1),),
            beta_tilde=1,
            beta=2,
        )
        # (2,0) sits below the L_S1 cut and its only top has index >= beta
        assert errors.NOT_TILDE in codes(tilde_errors(SKEL_A, rbar2, ctx))
        # in RBAR the roles are reversed: (2,0) reaches top 0 < beta and
        # (2,1), sitting at the cut, is exempt from the rule
        ctx2 = SymContext(
            r_bar=RBAR, kappa_plus=L_TOP, small0_cuts=((L_S1, 1),), beta_tilde=1, beta=2
        )
        assert in_tilde(SKEL_A, RBAR, ctx2)


class TestRho0:
    def test_hand_oracle(self):
        p = Cond0(RBAR.tree, {(1, 0): {0: 1}, (4, 0): {1: 0}})
        r = rho0(SKEL_A, p, CTX)
        assert r.qtree == qtree(
            {0, 2}, {0: [{0, 2}], 1: [{0, 2}], 2: [{0}, {2}], 3: [{0}, {2}], 4: [{0}, {2}]}
        )
        assert r.label((1, {0, 2})) == {0: 1}
        assert r.label((4, {0})) == {1: 0}
        assert r.n_map() == {
            (0, frozenset({0, 2})): (0, 0),
            (1, frozenset({0, 2})): (1, 0),
            (2, frozenset({0})): (2, 0),
            (2, frozenset({2})): STAR,
            (3, frozenset({0})): (3, 0),
            (4, frozenset({0})): (4, 0),
        }
        assert validate_icond(SKEL_A, r, CTX) == []

    def test_high_top_absent_from_support(self):
        ctx = SymContext(
            r_bar=RBAR, kappa_plus=L_TOP, protected_tops=((L_TOP, 0),), beta_tilde=1, beta=2
        )
        r = rho0(SKEL_A, RBAR, ctx)
        assert r.qtree.support == frozenset({0})

    def test_order_preserving(self):
        p = Cond0(RBAR.tree, {(1, 0): {0: 1}})
        q = Cond0(RBAR.tree, {(1, 0): {0: 1}, (2, 1): {3: 0}})
        assert leq0(q, p)
        assert icond_leq(rho0(SKEL_A, q, CTX), rho0(SKEL_A, p, CTX))

    def test_rejects_non_member(self):
        other = Cond0(FlimTree({(0, 0): None, (1, 1): (0, 0)}), {})
        with pytest.raises(ForceLabError) as e:
            rho0(SKEL_A, other, CTX)
        assert e.value.code == errors.NOT_BELOW_RBAR

    def test_one_icond_is_maximum(self):
        top = one_icond(SKEL_A, CTX)
        p = Cond0(RBAR.tree, {(1, 0): {0: 1}})
        assert icond_leq(rho0(SKEL_A, p, CTX), top)

    def test_filter_image_pairwise_compatible(self):
        a = Cond0(RBAR.tree, {(1, 0): {0: 1}})
        b = Cond0(RBAR.tree, {(4, 0): {0: 0}})
        h = FilterGen("c0", [a, b])
        ra, rb = filter_rho0(SKEL_A, h, CTX)
        joint = rho0(SKEL_A, union0(SKEL_A, a, b), CTX)
        assert icond_leq(joint, ra) and icond_leq(joint, rb)


class TestValidateICond:
    def test_indexing_domain_must_match(self):
        r = rho0(SKEL_A, RBAR, CTX)
        trimmed = dict(r.n_map())
        trimmed.pop((2, frozenset({2})))
        bad = ICond(r.qtree, r.label_map(), trimmed)
        assert errors.STRUCTURE_MISMATCH in codes(validate_icond(SKEL_A, bad, CTX))

    def test_protected_cell_index_is_forced(self):
        r = rho0(SKEL_A, RBAR, CTX)
        n = dict(r.n_map())
        n[(3, frozenset({0}))] = (3, 1)
        bad = ICond(r.qtree, r.label_map(), n)
        assert errors.STRUCTURE_MISMATCH in codes(validate_icond(SKEL_A, bad, CTX))

    def test_sub_cut_index_must_be_low(self):
        r = rho0(SKEL_A, RBAR, CTX)
        n = dict(r.n_map())
        n[(2, frozenset({2}))] = (2, 1)  # index 1 is at the cut, not below
        bad = ICond(r.qtree, r.label_map(), n)
        assert errors.INDEX_OUT_OF_RANGE in codes(validate_icond(SKEL_A, bad, CTX))

    def test_off_star_injectivity(self):
        # two separate cells at the cut level may not reuse one index
        big = qtree(
            {0, 1, 2},
            {0: [{0, 1, 2}], 1: [{0, 1, 2}], 2: [{0}, {1}, {2}], 3: [{0}, {1}, {2}], 4: [{0}, {1}, {2}]},
        )
        ctx = SymContext(
            r_bar=RBAR,
            kappa_plus=L_TOP,
            protected_tops=((L_TOP, 0),),
            small0_cuts=((L_S1, 2),),
            beta_tilde=2,
            beta=3,
        )
        n = {}
        for lvl, cell in required_n_domain(SKEL_A, big, ctx):
            if 0 in cell:
                n[(lvl, cell)] = RBAR.tree.pred_at((4, 0), lvl)
            else:
                n[(lvl, cell)] = (2, 1)
        bad = ICond(big, {}, n)
        assert errors.INCOMPATIBLE in codes(validate_icond(SKEL_A, bad, ctx))

    def test_label_at_limit_level_rejected(self):
        r = rho0(SKEL_A, RBAR, CTX)
        bad = ICond(r.qtree, {(3, frozenset({0})): {0: 1}}, r.n_map())
        assert errors.NONEMPTY_LIMIT_LABEL in codes(validate_icond(SKEL_A, bad, CTX))


class TestLift0:
    def test_reflexive(self):
        p = Cond0(RBAR.tree, {(1, 0): {0: 1}})
        s = lift0(SKEL_A, p, rho0(SKEL_A, p, CTX), CTX)
        assert s == p

    def test_one_bit_extension(self):
        p = Cond0(RBAR.tree, {(1, 0): {0: 1}})
        r = rho0(SKEL_A, p, CTX)
        labels = r.label_map()
        labels[(4, frozenset({0}))] = {0: 1}
        q = ICond(r.qtree, labels, r.n_map())
        s = lift0(SKEL_A, p, q, CTX)
        assert s.label((4, 0)) == {0: 1}
        assert leq0(s, p)
        assert icond_leq(rho0(SKEL_A, s, CTX), q)

    def test_fresh_support_grows_a_branch(self):
        p = Cond0(CHAIN_RBAR.tree, {(1, 0): {0: 1}})
        ctx = CHAIN_CTX
        grown = qtree(
            {0, 1},
            {0: [{0, 1}], 1: [{0, 1}], 2: [{0, 1}], 3: [{0, 1}], 4: [{0}, {1}]},
        )
        n = {
            (lvl, cell): CHAIN_RBAR.tree.pred_at((4, 0), lvl)
            for lvl, cell in required_n_domain(SKEL_A, grown, ctx)
        }
        q = ICond(grown, {(1, frozenset({0, 1})): {0: 1}}, n)
        assert validate_icond(SKEL_A, q, ctx) == []
        s = lift0(SKEL_A, p, q, ctx)
        # the smallest fresh top index outside t(p) is 1
        assert (4, 1) in s.tree and s.tree.parent((4, 1)) == (3, 0)
        assert leq0(s, p)
        assert icond_leq(rho0(SKEL_A, s, ctx), q)

    def test_sub_cut_cell_draws_above_the_cut(self):
        # a fresh unprotected branch splitting at L_S1 must take an index
        # at or above the small cut
        p = Cond0(RBAR.tree, {})
        ctx = SymContext(
            r_bar=RBAR,
            kappa_plus=L_TOP,
            protected_tops=(),
            small0_cuts=((L_S1, 1),),
            beta_tilde=2,
            beta=3,
        )
        r = rho0(SKEL_A, p, ctx)
        assert r.n_value((2, {2})) == STAR
        s = lift0(SKEL_A, p, r, ctx)
        assert s == p

    def test_rejects_non_extension(self):
        p = Cond0(RBAR.tree, {(1, 0): {0: 1}})
        q = one_icond(SKEL_A, CTX)  # has no labels, so it is weaker, not stronger
        r = rho0(SKEL_A, p, CTX)
        assert not icond_leq(q, r) or q == r
        other = ICond(r.qtree, {}, r.n_map())
        with pytest.raises(ForceLabError) as e:
            lift0(SKEL_A, p, other, CTX)
        assert e.value.code == errors.NOT_AN_EXTENSION

    def test_pool_exhausted(self):
        # t(p) occupies both L_OMEGA indices; a target splitting the new
        # support point off at the base finds no fresh index there
        parents = {
            **CHAIN_PARENTS,
            (1, 1): (0, 0),
            (2, 1): (1, 1),
            (3, 1): (2, 1),
            (4, 2): (3, 1),
        }
        p = Cond0(FlimTree(parents), {})
        ctx = SymContext(
            r_bar=p, kappa_plus=L_TOP, protected_tops=((L_TOP, 0),), beta_tilde=1, beta=2
        )
        grown = qtree(
            {0, 1},
            {0: [{0, 1}], 1: [{0}, {1}], 2: [{0}, {1}], 3: [{0}, {1}], 4: [{0}, {1}]},
        )
        n = {
            (lvl, cell): p.tree.pred_at((4, 0), lvl)
            for lvl, cell in required_n_domain(SKEL_A, grown, ctx)
        }
        q = ICond(grown, {}, n)
        assert icond_leq(q, rho0(SKEL_A, p, ctx))
        with pytest.raises(ForceLabError) as e:
            lift0(SKEL_A, p, q, ctx)
        assert e.value.code == errors.POOL_EXHAUSTED


class TestRho1:
    def test_one_fixed(self):
        assert rho1(SKEL_A, ONE1, L_TOP, 2) == ONE1

    def test_column_truncation(self):
        p = Cond1({L_S1: ({0}, {0, 1}, {(0, 0): 1, (0, 1): 0})})
        r = rho1(SKEL_A, p, L_TOP, 1)
        assert r.block(L_S1) == (frozenset({0}), frozenset({0}), {(0, 0): 1})

    def test_support_cut(self):
        p = Cond1(
            {
                L_S1: ({0}, {0}, {(0, 0): 1}),
                L_TOP: ({0}, {0}, {(0, 0): 0}),
            }
        )
        r = rho1(SKEL_A, p, L_TOP, 3)
        assert r.levels() == [L_S1]

    def test_wide_cut_is_identity_below(self):
        p = Cond1({L_S1: ({0, 1}, {0, 1}, {(x, y): 1 for x in (0, 1) for y in (0, 1)})})
        assert rho1(SKEL_A, p, L_TOP, 3) == p

    def test_order_preserving(self):
        p = Cond1({L_S1: ({0}, {0}, {(0, 0): 1})})
        q = Cond1({L_S1: ({0, 1}, {0, 1}, {(0, 0): 1, (0, 1): 0, (1, 0): 0, (1, 1): 1})})
        assert leq1(q, p)
        assert leq1(rho1(SKEL_A, q, L_TOP, 1), rho1(SKEL_A, p, L_TOP, 1))

    def test_lift_property(self):
        p = Cond1(
            {
                L_S1: ({0}, {0, 1}, {(0, 0): 1, (0, 1): 0}),
                L_TOP: ({0}, {2}, {(0, 2): 1}),
            }
        )
        q = Cond1({L_S1: ({0, 1}, {0}, {(0, 0): 1, (1, 0): 0})})
        assert leq1(q, rho1(SKEL_A, p, L_TOP, 1))
        s = lift1(SKEL_A, p, q, L_TOP, 1)
        assert leq1(s, p)
        assert leq1(rho1(SKEL_A, s, L_TOP, 1), q)
        # the closure cell (1, 1) at L_S1 was zero-filled
        assert s.block(L_S1)[2][(1, 1)] == 0

    def test_lift_rejects_non_extension(self):
        p = Cond1({L_S1: ({0}, {0}, {(0, 0): 1})})
        q = Cond1({L_S1: ({0}, {0}, {(0, 0): 0})})
        with pytest.raises(ForceLabError) as e:
            lift1(SKEL_A, p, q, L_TOP, 1)
        assert e.value.code == errors.NOT_AN_EXTENSION

    def test_filter_image(self):
        h = FilterGen("c1", [Cond1({L_S1: ({0}, {0, 1}, {(0, 0): 1, (0, 1): 0})})])
        img = filter_rho1(SKEL_A, h, L_TOP, 1)
        assert cnd.validate_filter(SKEL_A, img) == []


# Two trees over CHAIN_RBAR with an extra branch whose intermediate
# L_LIM index differs but whose projection is the same.
Q0 = Cond0(FlimTree({**CHAIN_PARENTS, (2, 1): (1, 0), (3, 1): (2, 1), (4, 1): (3, 1)}), {})
Q1 = Cond0(FlimTree({**CHAIN_PARENTS, (2, 1): (1, 0), (3, 2): (2, 1), (4, 1): (3, 2)}), {})


class TestTqqTransport:
    def test_identity(self):
        vmap = tqq_vertex_map(SKEL_A, Q0, Q0, CHAIN_CTX)
        assert all(v == w for v, w in vmap.items())
        p = Cond0(Q0.tree, {(2, 1): {0: 1}})
        assert transport_cond_tqq(SKEL_A, p, Q0, Q0, CHAIN_CTX) == p

    def test_relabeling_oracle(self):
        vmap = tqq_vertex_map(SKEL_A, Q0, Q1, CHAIN_CTX)
        assert vmap[(3, 2)] == (3, 1)
        assert vmap[(4, 1)] == (4, 1)
        assert vmap[(2, 1)] == (2, 1)
        p = Cond0(Q0.tree, {(2, 1): {0: 1}, (4, 1): {1: 0}})
        moved = transport_cond_tqq(SKEL_A, p, Q0, Q1, CHAIN_CTX)
        assert moved.tree == Q1.tree
        assert moved.label_map() == {(2, 1): {0: 1}, (4, 1): {1: 0}}

    def test_order_isomorphism(self):
        a = Cond0(Q0.tree, {(2, 1): {0: 1}})
        b = Cond0(Q0.tree, {(2, 1): {0: 1}, (4, 1): {0: 0}})
        ta = transport_cond_tqq(SKEL_A, a, Q0, Q1, CHAIN_CTX)
        tb = transport_cond_tqq(SKEL_A, b, Q0, Q1, CHAIN_CTX)
        assert leq0(b, a) and leq0(tb, ta)
        assert not leq0(a, b) and not leq0(ta, tb)

    def test_structure_mismatch(self):
        # hanging the extra branch off a different L_OMEGA vertex changes
        # the projected meet structure
        other = Cond0(
            FlimTree({**CHAIN_PARENTS, (1, 1): (0, 0), (2, 1): (1, 1), (3, 1): (2, 1), (4, 1): (3, 1)}),
            {},
        )
        with pytest.raises(ForceLabError) as e:
            tqq_vertex_map(SKEL_A, Q0, other, CHAIN_CTX)
        assert e.value.code == errors.STRUCTURE_MISMATCH

    def test_name_transport_valuation_oracle(self):
        p = Cond0(Q0.tree, {(2, 1): {0: 1}})
        x = PName({(check_nat(1), ProductCond(p, ONE1))})
        moved = transport_name_tqq(SKEL_A, x, Q0, Q1, CHAIN_CTX)
        tp = transport_cond_tqq(SKEL_A, p, Q0, Q1, CHAIN_CTX)
        g0 = FilterGen("p", [ProductCond(p, ONE1)])
        g1 = FilterGen("p", [ProductCond(tp, ONE1)])
        assert val(moved, g1) == val(x, g0)

    def test_name_transport_rejects_foreign_tree(self):
        x = PName({(check_nat(0), ProductCond(Cond0(CHAIN_RBAR.tree, {}), ONE1))})
        with pytest.raises(ForceLabError) as e:
            transport_name_tqq(SKEL_A, x, Q0, Q1, CHAIN_CTX)
        assert e.value.code == errors.DOMAIN_MISMATCH


# Restricted-product base for the transport-pi tests: two branches
# topping out at L_TOP 0 and 1, and both L_S1 columns designated.
S_COND = Cond0(
    FlimTree({**CHAIN_PARENTS, (2, 1): (1, 0), (3, 1): (2, 1), (4, 1): (3, 1)}), {}
)
COLS = ((L_S1, 0), (L_S1, 1))
PI0 = index_swap_aut0(SKEL_A, [(L_TOP, 0, 1)])
PI1 = column_swap_aut1(SKEL_A, [(L_S1, 0, 1)], {L_S1: ((0,), (0, 1))})


def dpi_restrict(x, pi1):
    """Keep the entries whose rectangular part the swap can act on."""
    entries = set()
    for y, v in x.entries:
        if in_dpi(pi1, v.c1):
            entries.add((dpi_restrict(y, pi1), v))
    return PName(entries)


class TestTransportTpi:
    def test_identity_swap(self):
        ident0 = index_swap_aut0(SKEL_A, [])
        ident1 = column_swap_aut1(SKEL_A, [], {})
        c1 = Cond1({L_TOP: ({0}, {0}, {(0, 0): 1})})
        x = PName({(check_nat(0), ProductCond(S_COND, c1))})
        assert transport_tpi(SKEL_A, x, ident0, ident1, S_COND, COLS, L_TOP) == x

    def test_column_swap_oracle(self):
        c1 = Cond1({L_S1: ({0}, {0}, {(0, 0): 1})})
        x = PName({(check_nat(0), ProductCond(S_COND, c1))})
        moved = transport_tpi(SKEL_A, x, PI0, PI1, S_COND, COLS, L_TOP)
        ((_, v),) = moved.entries
        assert v.c1.block(L_S1) == (frozenset({0}), frozenset({1}), {(0, 1): 1})
        assert apply0(PI0, S_COND).tree == v.c0.tree

    def test_top_block_unchanged(self):
        c1 = Cond1({L_TOP: ({1}, {2}, {(1, 2): 0})})
        x = PName({(check_nat(0), ProductCond(S_COND, c1))})
        moved = transport_tpi(SKEL_A, x, PI0, PI1, S_COND, COLS, L_TOP)
        ((_, v),) = moved.entries
        assert v.c1 == c1

    def test_rejects_undesignated_column(self):
        c1 = Cond1({L_OMEGA: ({0}, {0}, {(0, 0): 1})})
        x = PName({(check_nat(0), ProductCond(S_COND, c1))})
        with pytest.raises(ForceLabError) as e:
            transport_tpi(SKEL_A, x, PI0, PI1, S_COND, COLS, L_TOP)
        assert e.value.code == errors.DOMAIN_MISMATCH

    def test_rejects_foreign_tree(self):
        x = PName({(check_nat(0), ProductCond(Cond0(CHAIN_RBAR.tree, {}), ONE1))})
        with pytest.raises(ForceLabError) as e:
            transport_tpi(SKEL_A, x, PI0, PI1, S_COND, COLS, L_TOP)
        assert e.value.code == errors.DOMAIN_MISMATCH

    def test_commuting_square(self):
        # tilde then restrict to the action domain commutes with the swap;
        # the tree swap exchanges the two whole branches so it fixes the
        # base tree setwise
        pi0 = index_swap_aut0(SKEL_A, [(L_S1, 0, 1), (L_LIM, 0, 1), (L_TOP, 0, 1)])
        assert apply0(pi0, S_COND).tree == S_COND.tree
        p0 = Cond0(S_COND.tree, {(4, 0): {0: 1}})
        c1 = Cond1({L_S1: ({0}, {0, 1}, {(0, 0): 1, (0, 1): 0})})
        x = PName(
            {
                (check_nat(0), ProductCond(p0, c1)),
                (check_nat(1), ProductCond(S_COND, ONE1)),
            }
        )
        moved = transport_tpi(SKEL_A, x, pi0, PI1, S_COND, COLS, L_TOP)
        lhs = dpi_restrict(tilde_extend(SKEL_A, moved, S_COND, COLS, L_TOP, 2), PI1)
        rhs = nm.act(pi0, PI1, dpi_restrict(tilde_extend(SKEL_A, x, S_COND, COLS, L_TOP, 2), PI1))
        assert lhs == rhs


class TestTildeExtend:
    def test_empty_name(self):
        assert tilde_extend(SKEL_A, nm.EMPTY_NAME, S_COND, COLS, L_TOP, 2) == nm.EMPTY_NAME

    def test_saturated_base_leaves_one_widening(self):
        # bound 1 leaves no room for new vertices and the base labels are
        # frozen, so the extension is entrywise unique
        base = Cond0(FlimTree({(0, 0): None, (1, 0): (0, 0), (2, 0): (1, 0)}), {(2, 0): {0: 1}})
        x = PName({(check_nat(0), ProductCond(base, ONE1))})
        extended = tilde_extend(SKEL_A, x, base, (), L_S1, 1)
        assert len(extended.entries) == 1

    def test_widening_count_oracle(self):
        # bound 2 admits five supertrees of the chain to (2,0): the base,
        # one new vertex (1,1) or (2,1) under (1,0), and (1,1) plus (2,1)
        # attached either way.  Each new labelable vertex carries two
        # position slots with three states, so the counts are
        # 1 + 9 + 9 + 81 + 81.
        base = Cond0(FlimTree({(0, 0): None, (1, 0): (0, 0), (2, 0): (1, 0)}), {(2, 0): {0: 1}})
        x = PName({(check_nat(0), ProductCond(base, ONE1))})
        extended = tilde_extend(SKEL_A, x, base, (), L_S1, 2)
        assert len(extended.entries) == 181
        for _, v in extended.entries:
            assert cnd.restrict0_tree(v.c0, base.tree) == base

    def test_valuation_identity(self):
        base = Cond0(FlimTree({(0, 0): None, (1, 0): (0, 0), (2, 0): (1, 0)}), {(2, 0): {0: 1}})
        x = PName({(check_nat(0), ProductCond(base, ONE1))})
        extended = tilde_extend(SKEL_A, x, base, (), L_S1, 1)
        wide = Cond0(
            FlimTree({(0, 0): None, (1, 0): (0, 0), (2, 0): (1, 0), (1, 1): (0, 0)}),
            {(2, 0): {0: 1}, (1, 1): {0: 0}},
        )
        h = FilterGen("p", [ProductCond(wide, ONE1)])
        h_restricted = FilterGen("p", [ProductCond(cnd.restrict0_tree(wide, base.tree), ONE1)])
        assert val(extended, h) == val(x, h_restricted)

    def test_rectangle_widening_respects_designated_columns(self):
        c1 = Cond1({L_S1: ({0}, {0}, {(0, 0): 1})})
        x = PName({(check_nat(0), ProductCond(S_COND, c1))})
        extended = tilde_extend(SKEL_A, x, S_COND, COLS, L_TOP, 2)
        for _, v in extended.entries:
            xs, ys, bits = v.c1.block(L_S1)
            assert xs == frozenset({0})
            assert bits[(0, 0)] == 1


class TestEnumMBeta:
    def test_zero_cut_is_empty(self):
        assert list(enum_m_beta(SKEL_A, L_TOP, 0, 1)) == []

    def test_shape_oracle(self):
        # beta = 1, bound = 1: one chain to (4,0); three labelable
        # vertices with one position each give 27 labelings; columns are
        # the empty set or {(L_S1, 0)}
        ms = list(enum_m_beta(SKEL_A, L_TOP, 1, 1))
        assert len(ms) == 54
        assert {m.cond.tree for m in ms} == {
            FlimTree({(0, 0): None, (1, 0): (0, 0), (2, 0): (1, 0), (3, 0): (2, 0), (4, 0): (3, 0)})
        }
        assert {m.columns for m in ms} == {(), ((L_S1, 0),)}
        for m in ms:
            assert m.cond.tree.max_points() == [(4, 0)]

    def test_duplicate_free_and_rank(self):
        ms = list(enum_m_beta(SKEL_A, L_TOP, 1, 1))
        assert len(set(ms)) == len(ms)
        for rank in (0, 7, 53):
            assert mtuple_rank(SKEL_A, L_TOP, 1, 1, ms[rank]) == rank

    def test_restartable(self):
        full = list(enum_m_beta(SKEL_A, L_TOP, 1, 1))
        assert list(enum_m_beta(SKEL_A, L_TOP, 1, 1, start=10)) == full[10:]

    def test_successor_case_by_parameterization(self):
        # the same enumerator serves the lower successor cut
        ms = list(enum_m_beta(SKEL_A, L_S1, 1, 1))
        for m in ms:
            assert m.cond.tree.max_points() == [(L_S1, 0)]
            assert m.columns == ()

    def test_rank_rejects_foreign_tuple(self):
        stray = MTuple(Cond0(EMPTY_TREE, {}), ((L_S1, 1),))
        with pytest.raises(ForceLabError) as e:
            mtuple_rank(SKEL_A, L_TOP, 1, 1, stray)
        assert e.value.code == errors.NO_WITNESS
