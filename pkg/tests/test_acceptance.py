"""Acceptance gate: one test per criterion, each printing a single
pass/fail line.  Every check runs the real harness; nothing is stubbed."""

import random
import time

from conftest import SKEL_A

from forcelab import automorphisms as am
from forcelab import conditions as cnd
from forcelab import core
from forcelab.harness import config as hcfg
from forcelab.harness import generators as gen
from forcelab.harness import mutations as mut
from forcelab.harness import registry as reg


def _run(pid, **kw):
    base = dict(skeleton=SKEL_A, bound=1, seed=0, cases=100)
    base.update(kw)
    cfg = hcfg.RunConfig(properties=(pid,), **base)
    reports = list(reg.run(cfg))
    fails = [r for r in reports if r.status == "fail"]
    return reports, fails


def _line(num, name, ok, extra=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num} {name}: {status} {extra}".rstrip())
    return ok


def test_criterion_1_posets():
    t0 = time.perf_counter()
    _, f0 = _run("P0-POSET", exhaustive=True)
    _, f1 = _run("P1-POSET", exhaustive=True)
    exhaustive_time = time.perf_counter() - t0
    t0 = time.perf_counter()
    _, s0 = _run("P0-POSET", bound=3, cases=500, seed=11)
    _, s1 = _run("P1-POSET", bound=3, cases=500, seed=11)
    sampled_time = time.perf_counter() - t0
    ok = (
        not (f0 or f1 or s0 or s1)
        and exhaustive_time < 10.0
        and sampled_time < 60.0
    )
    assert _line(
        1,
        "order laws",
        ok,
        f"(exhaustive {exhaustive_time:.1f}s, sampled {sampled_time:.1f}s)",
    )


def test_criterion_2_density_witnesses():
    fails = []
    for pid in ("P0-RESTRICT-DENSE", "P0-SPLIT-DENSE", "CLOUD-DIFF-DENSE"):
        _, f = _run(pid, exhaustive=True)
        fails += f
        _, f = _run(pid, bound=3, cases=500, seed=12)
        fails += f
    assert _line(2, "constructive density", not fails, f"({len(fails)} failures)")


def test_criterion_3_homogenization():
    fails = []
    for pid in ("HOMOG0", "HOMOG1"):
        _, f = _run(pid, exhaustive=True)
        fails += f
        _, f = _run(pid, bound=3, cases=500, seed=13)
        fails += f
    # independent postcondition re-check on freshly sampled pairs
    big = reg._homog_regime(SKEL_A)
    width = big.block_width
    rng = random.Random(99)
    bad = 0
    for _ in range(500):
        p = gen.gen_cond0(big, rng.randrange(1 << 30), rng.randint(1, 5), 3)
        q = gen.gen_cond0(big, rng.randrange(1 << 30), rng.randint(1, 5), 3)
        pi = am.homog0(big, p, q, 0, core.EMPTY_TREE, width)
        if not am.is_small0(pi, width):
            bad += 1
        elif not cnd.compat0(big, am.apply0(pi, p), q):
            bad += 1
        r1 = gen.gen_cond1(SKEL_A, rng.randrange(1 << 30), rng.randint(1, 4), 3)
        r2 = gen.gen_cond1(SKEL_A, rng.randrange(1 << 30), rng.randint(1, 4), 3)
        sigma = am.homog1(r1, r2, 0)
        if not cnd.compat1(am.apply1(sigma, r1), r2):
            bad += 1
    ok = not fails and bad == 0
    assert _line(3, "homogenization", ok, f"({len(fails)} harness, {bad} re-check)")


def test_criterion_4_group_laws():
    _, f0 = _run("A0-GROUP", exhaustive=True)
    _, f1 = _run("A1-GROUP-EXT", cases=1000, seed=14)
    _, f2 = _run("DPI-CLOSURE", cases=1000, seed=14)
    ok = not (f0 or f1 or f2)
    assert _line(4, "group laws", ok)


def test_criterion_5_projections():
    reports, f0 = _run("RHO0-PROJ", exhaustive=True)
    _, f1 = _run("RHO0-PROJ", bound=2, cases=300, seed=15)
    _, f2 = _run("RHO1-PROJ", exhaustive=True)
    _, f3 = _run("RHO1-PROJ", bound=2, cases=300, seed=15)
    # the lifting index pool must never run dry on the bounded universe
    pool_dry = [r for r in reports if "pool exhausted" in r.detail and "0 pool" not in r.detail]
    ok = not (f0 or f1 or f2 or f3 or pool_dry)
    assert _line(5, "quotient projections", ok)


def test_criterion_6_names_and_transport():
    fails = []
    for pid in ("NAME-BAR-VAL", "NAME-EQUIVARIANCE"):
        _, f = _run(pid, bound=2, exhaustive=True)
        fails += f
    _, f = _run("SYM-CANONICAL", cases=200, seed=16)
    fails += f
    _, f = _run("CLOUD-DISJOINT", exhaustive=True)
    fails += f
    _, f = _run("TPI-COMMUTE", cases=200, seed=16)
    fails += f
    _, f = _run("TQQ-ISO", cases=200, seed=16)
    fails += f
    assert _line(6, "names and transport", not fails, f"({len(fails)} failures)")


def test_criterion_7_normality():
    _, fails = _run("NORMALITY", cases=500, seed=17)
    assert _line(7, "normality", not fails)


def test_criterion_8_mutation_sensitivity():
    undetected = []
    for name, m in mut.MUTATIONS.items():
        with mut.apply_mutation(name):
            cfg = hcfg.RunConfig(
                skeleton=SKEL_A,
                bound=1,
                seed=0,
                cases=30,
                exhaustive=True,
                properties=m.expected,
            )
            if not any(r.status == "fail" for r in reg.run(cfg)):
                undetected.append(name)
    assert _line(8, "mutation sensitivity", not undetected, f"{undetected or ''}")
