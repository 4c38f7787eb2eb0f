"""Seeded fault injection: each named mutation swaps one library
operation for a subtly broken variant while a context is active.

The acceptance suite runs the property registry under every mutation and
demands at least one property failure each time; this guards the harness
against vacuous checks.
"""

from contextlib import contextmanager
from dataclasses import dataclass

from .. import automorphisms as am
from .. import conditions as cnd
from .. import core
from .. import quotient as qt
from ..conditions import Cond0


@dataclass(frozen=True)
class Mutation:
    name: str
    doc: str
    module: object
    attr: str
    make: object
    expected: tuple


def _leq0_ignores_labels(orig):
    def leq0(q, p):
        return core.tree_leq(q.tree, p.tree)

    return leq0


def _union0_drops_labels(orig):
    def union0(s, p, q):
        return Cond0(orig(s, p, q).tree, {})

    return union0


def _apply1_skips_flips(orig):
    def apply1(pi, p):
        stripped = am.Aut1(
            {
                level: am.Level1Aut(
                    rec.supp, rec.f, rec.xs, rec.ys, {}, rec.colmaps
                )
                for level, rec in ((l, pi.at(l)) for l in pi.levels())
            }
        )
        return orig(stripped, p)

    return apply1


def _rho1_keeps_everything(orig):
    def rho1(s, p, kappa_plus, beta):
        return p

    return rho1


def _enum_duplicates_first(orig):
    def enum_m_beta(s, kappa_plus, beta, bound, start=0):
        items = list(orig(s, kappa_plus, beta, bound, start))
        if items:
            yield items[0]
        yield from items

    return enum_m_beta


MUTATIONS = {
    m.name: m
    for m in (
        Mutation(
            "leq0-ignores-labels",
            "The tree-condition order forgets the label comparison.",
            cnd,
            "leq0",
            _leq0_ignores_labels,
            ("P0-POSET",),
        ),
        Mutation(
            "union0-drops-labels",
            "The tree-condition union discards every label.",
            cnd,
            "union0",
            _union0_drops_labels,
            ("P0-POSET",),
        ),
        Mutation(
            "apply1-skips-flips",
            "The rectangular action ignores the flip data.",
            am,
            "apply1",
            _apply1_skips_flips,
            ("HOMOG1",),
        ),
        Mutation(
            "rho1-keeps-truncated-bits",
            "The rectangle projection returns its input untruncated.",
            qt,
            "rho1",
            _rho1_keeps_everything,
            ("RHO1-PROJ",),
        ),
        Mutation(
            "enum-m-beta-duplicates-first",
            "The counting enumeration emits its first tuple twice.",
            qt,
            "enum_m_beta",
            _enum_duplicates_first,
            ("MBETA-ENUM",),
        ),
    )
}


@contextmanager
def apply_mutation(name):
    m = MUTATIONS[name]
    original = getattr(m.module, m.attr)
    setattr(m.module, m.attr, m.make(original))
    try:
        yield m
    finally:
        setattr(m.module, m.attr, original)
