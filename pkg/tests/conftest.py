import pytest

from forcelab.core import LevelSpec, Skeleton

# The canonical five-level test skeleton: base, omega, one successor,
# one limit, one successor above the limit.  W = 4 covers every index
# space in a single block.
SKEL_A = Skeleton(
    levels=(
        LevelSpec("0", "base"),
        LevelSpec("aleph0", "omega", 2),
        LevelSpec("aleph1", "successor", 2),
        LevelSpec("alephw", "limit", 3),
        LevelSpec("alephw1", "successor", 3),
    ),
    block_width=4,
)

# Level indices of SKEL_A, for readability in tests.
L_BASE, L_OMEGA, L_S1, L_LIM, L_TOP = range(5)


@pytest.fixture
def skel():
    return SKEL_A
