"""
Antichain density and the push-down argument
============================================

An antichain's density is the exact sum, over levels, of the fraction of
the level it occupies.  On a biregular level pair a set's lower shadow is
always at least as dense as the set itself, so replacing the top members of
an antichain by their shadow never loses density; iterating walks any
antichain down to the bottom level, which is why the density can never
exceed 1.  This script measures the quantities on small hosts.
"""

import random

from posetkraft.lym import (
    is_antichain,
    local_lym_check,
    lym_number,
    reduce_top_level,
    sample_antichain,
)
from posetkraft.poset import build_string_poset, build_subset_poset

subsets = build_subset_poset(4)

# a hand-picked antichain: one 1-set and two 2-sets avoiding it
members = [(1, frozenset({1})), (2, frozenset({2, 3})), (2, frozenset({2, 4}))]
print("antichain:", is_antichain(subsets, members).ok)
print("density:", lym_number(subsets, members), "(= 1/4 + 2/6)")
print()

# the local step: a set of 2-subsets versus its shadow of 1-subsets
level2 = [frozenset({1, 2}), frozenset({1, 3})]
step = local_lym_check(subsets, 2, level2)
print("set density   ", step.rhs)
print("shadow density", step.lhs, "->", "holds" if step.holds else "fails")
print()

# pushing the top level down never decreases the density
current = [(2, frozenset({1, 2})), (2, frozenset({3, 4}))]
print("start:   density", lym_number(subsets, current))
reduced = reduce_top_level(subsets, current)
print("reduced:", sorted(str(sorted(x)) for _, x in reduced.members),
      "density", lym_number(subsets, reduced))
print()

# random antichains on a string poset: the density never exceeds 1, exactly
host = build_string_poset(2, "subsequence", 5)
rng = random.Random(2024)
worst = max(lym_number(host, sample_antichain(host, rng)) for _ in range(2000))
print("largest sampled density over 2000 draws:", worst, "<= 1:", worst <= 1)
