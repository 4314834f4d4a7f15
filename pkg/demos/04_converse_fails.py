"""
Where the converse construction breaks
======================================

For prefix trees, any length profile with density sum at most 1 is realized
by a greedy prefix-free code.  On richer level-regular posets the analogous
claim fails: whenever both degrees between two consecutive-by-construction
levels exceed 1, the bipartite graph is weakly connected, and the level
sizes share a divisor g > 1, the profile asking for a (g-1)/g share of the
lower level and a 1/g share of the upper level has density sum exactly 1,
yet no antichain realizes it.  Exhaustive search certifies each instance.
"""

from posetkraft.lym import antichain_exists, counterexample_params
from posetkraft.codes import full_perm_constant, partial_perm_constant
from posetkraft.poset import (
    build_partial_perm_poset,
    build_pattern_poset,
    build_string_poset,
)


def reproduce(host, lower, upper=None):
    outcome = counterexample_params(host, lower, upper)
    if not outcome:
        print(f"{host.family:45s} rejected: {outcome.reason}")
        return
    print(
        f"{host.family:45s} u={outcome.up_degree} d={outcome.down_degree} "
        f"g={outcome.gcd} params {outcome.counts.by_rank(host)} "
        f"sum {outcome.lym_sum}"
    )
    search = antichain_exists(host, outcome.counts)
    verdict = "EXISTS (unexpected!)" if search.exists else "no antichain"
    print(f"{'':45s} exhaustive search: {verdict} ({search.nodes} choices tried)")


# binary strings, levels 1 and 2: sizes 2 and 4, so g = 2 and the profile is
# one word of length 1 plus two of length 2
reproduce(build_string_poset(2, "subsequence", 2), 1)
reproduce(build_string_poset(2, "substring", 2), 1)

# the prefix order is exempt: its Hasse diagram is a tree (down-degree 1)
reproduce(build_string_poset(2, "prefix", 2), 1)
print()

# pattern orders at k = 3, measured between the permutation levels of sizes
# 2 and 6 (the helper level in between is composed through)
reproduce(build_pattern_poset(3, "pattern"), 2, 4)
reproduce(build_pattern_poset(3, "substring_pattern"), 2, 4)
print()

# partial permutations over [1..3]: the profile (2, 2) on lengths 1 and 2
# has constant exactly 1 but admits no antichain either
for rel in ("subsequence", "substring"):
    host = build_partial_perm_poset(3, rel)
    print(f"{host.family:45s} constant for (a_1,a_2)=(2,2):",
          partial_perm_constant((0, 2, 2), 3))
    search = antichain_exists(host, {1: 2, 2: 2})
    print(f"{'':45s} exhaustive search: "
          f"{'exists' if search.exists else 'no antichain'} ({search.nodes} choices tried)")
print()

# sanity: the layered-permutation profile (a_2, a_3) = (1, 3) also sums to 1
print("layered constant for (a_2,a_3)=(1,3):", full_perm_constant((0, 0, 1, 3), 3))
