"""Finite graded posets stored as explicit levels plus a cover multigraph.

A poset here is a list of levels (rank classes) and, for each consecutive
pair of levels, a multiset of directed cover edges.  Edge multiplicity counts
the number of distinct single-symbol insertions/deletions that map one
element to the other, so degree counts line up with the counting arguments
that make the level-density inequalities work.

Builders produce the concrete families of interest: strings under the
prefix/subsequence/substring orders, partial permutations under the same
three orders, full permutations under the pattern and substring-pattern
orders (realized with interleaved helper levels so every consecutive pair is
biregular), and subsets of [n] ordered by inclusion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .perm import (
    PartialPermutation,
    Str,
    format_element,
    full_permutations,
    partial_permutations,
    pattern_of,
    strings,
)

STRING_RELATIONS = ("prefix", "subsequence", "substring")
PATTERN_RELATIONS = ("pattern", "substring_pattern")


def format_poset_element(x) -> str:
    """Render a poset element; partial permutations carry their universe when
    it is not implied by their length, subsets use set syntax."""
    if isinstance(x, frozenset):
        if not x:
            return "∅"
        return "{" + ",".join(str(v) for v in sorted(x)) + "}"
    if isinstance(x, PartialPermutation):
        return format_element(x, with_universe=len(x) != x.universe)
    return format_element(x)


class GradedPoset:
    """Immutable level-indexed poset with a cover multigraph.

    ``levels[p]`` holds the elements of the p-th level; ``covers[p]`` maps
    ``(lower_index, upper_index) -> multiplicity`` between levels p and p+1.
    Levels are addressed publicly by *rank* ``first_rank + p`` (partial
    permutation posets start at rank 1, everything else at 0).
    """

    def __init__(self, levels, covers, family="custom", first_rank=0, level_labels=None):
        self.levels = tuple(tuple(level) for level in levels)
        if not self.levels:
            raise ValueError("poset needs at least one level")
        self.covers = tuple(dict(c) for c in covers)
        if len(self.covers) != len(self.levels) - 1:
            raise ValueError("need exactly one cover map per consecutive level pair")
        self.family = family
        self.first_rank = first_rank
        if level_labels is None:
            level_labels = tuple(f"level {first_rank + p}" for p in range(len(self.levels)))
        self.level_labels = tuple(level_labels)

        self._index = []
        for p, level in enumerate(self.levels):
            if not level:
                raise ValueError(f"level {first_rank + p} is empty")
            idx = {x: i for i, x in enumerate(level)}
            if len(idx) != len(level):
                raise ValueError(f"level {first_rank + p} has duplicate elements")
            self._index.append(idx)

        # adjacency lists per pair, indexed by element position
        self._up = []
        self._down = []
        for p, cov in enumerate(self.covers):
            up = [[] for _ in self.levels[p]]
            down = [[] for _ in self.levels[p + 1]]
            for (lo, hi), mult in cov.items():
                if not (0 <= lo < len(self.levels[p]) and 0 <= hi < len(self.levels[p + 1])):
                    raise ValueError(f"edge ({lo}, {hi}) out of range between levels {p} and {p + 1}")
                if mult < 1:
                    raise ValueError("edge multiplicities must be >= 1")
                up[lo].append((hi, mult))
                down[hi].append((lo, mult))
            self._up.append(up)
            self._down.append(down)
        self._pair_regularity_cache: dict[int, "LevelPairRegularity"] = {}

    # -- level addressing ---------------------------------------------------

    @property
    def num_levels(self) -> int:
        return len(self.levels)

    @property
    def ranks(self) -> range:
        return range(self.first_rank, self.first_rank + len(self.levels))

    def position(self, rank: int) -> int:
        p = rank - self.first_rank
        if not 0 <= p < len(self.levels):
            raise ValueError(f"no level of rank {rank} (have {self.ranks.start}..{self.ranks.stop - 1})")
        return p

    def rank_of_position(self, pos: int) -> int:
        return self.first_rank + pos

    def level(self, rank: int) -> tuple:
        return self.levels[self.position(rank)]

    def level_size(self, rank: int) -> int:
        return len(self.levels[self.position(rank)])

    def index_of(self, rank: int, element) -> int:
        p = self.position(rank)
        try:
            return self._index[p][element]
        except KeyError:
            raise ValueError(
                f"{format_poset_element(element)} is not an element of level {rank} of this poset"
            ) from None

    # -- degrees and shadows --------------------------------------------------

    def up_degree(self, rank: int, element) -> int:
        """Number of cover edges leaving the element upward, with multiplicity."""
        p = self.position(rank)
        if p == len(self.levels) - 1:
            return 0
        return sum(m for _, m in self._up[p][self.index_of(rank, element)])

    def down_degree(self, rank: int, element) -> int:
        """Number of cover edges arriving from below, with multiplicity."""
        p = self.position(rank)
        if p == 0:
            return 0
        return sum(m for _, m in self._down[p - 1][self.index_of(rank, element)])

    def _shadow_down_indices(self, pos: int, indices) -> set[int]:
        down = self._down[pos - 1]
        return {lo for i in indices for lo, _ in down[i]}

    def _shadow_up_indices(self, pos: int, indices) -> set[int]:
        up = self._up[pos]
        return {hi for i in indices for hi, _ in up[i]}

    def lower_shadow(self, rank: int, elements) -> set:
        """Set of elements one level down covered by some element of the input."""
        p = self.position(rank)
        indices = {self.index_of(rank, x) for x in elements}
        if p == 0:
            return set()
        level = self.levels[p - 1]
        return {level[i] for i in self._shadow_down_indices(p, indices)}

    def upper_shadow(self, rank: int, elements) -> set:
        """Set of elements one level up covering some element of the input."""
        p = self.position(rank)
        indices = {self.index_of(rank, x) for x in elements}
        if p == len(self.levels) - 1:
            return set()
        level = self.levels[p + 1]
        return {level[i] for i in self._shadow_up_indices(p, indices)}

    # -- order ----------------------------------------------------------------

    def less_than(self, rank_a: int, a, rank_b: int, b) -> bool:
        """Strict comparability: a (at rank_a) below b (at rank_b) through covers."""
        pa, pb = self.position(rank_a), self.position(rank_b)
        ia, ib = self.index_of(rank_a, a), self.index_of(rank_b, b)
        if pa >= pb:
            return False
        current = {ib}
        for pos in range(pb, pa, -1):
            current = self._shadow_down_indices(pos, current)
            if not current:
                return False
        return ia in current

    def pair_regularity(self, pos: int) -> "LevelPairRegularity":
        """Degree audit of the level pair (pos, pos+1), cached."""
        if pos not in self._pair_regularity_cache:
            up_totals = [0] * len(self.levels[pos])
            down_totals = [0] * len(self.levels[pos + 1])
            edge_count = 0
            for (lo, hi), mult in self.covers[pos].items():
                up_totals[lo] += mult
                down_totals[hi] += mult
                edge_count += mult
            self._pair_regularity_cache[pos] = LevelPairRegularity(
                lower_rank=self.rank_of_position(pos),
                upper_rank=self.rank_of_position(pos + 1),
                lower_size=len(self.levels[pos]),
                upper_size=len(self.levels[pos + 1]),
                up_degrees=tuple(sorted(set(up_totals))),
                down_degrees=tuple(sorted(set(down_totals))),
                edge_count=edge_count,
            )
        return self._pair_regularity_cache[pos]

    # -- connectivity -----------------------------------------------------------

    def is_weakly_connected_pair(self, rank: int) -> bool:
        """True iff the undirected bipartite graph between the levels of rank
        and rank+1 is connected."""
        p = self.position(rank)
        self.position(rank + 1)  # both levels must exist
        n_lo, n_hi = len(self.levels[p]), len(self.levels[p + 1])
        parent = list(range(n_lo + n_hi))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for (lo, hi) in self.covers[p]:
            a, b = find(lo), find(n_lo + hi)
            if a != b:
                parent[a] = b
        return len({find(v) for v in range(n_lo + n_hi)}) == 1

    # -- export -------------------------------------------------------------------

    def to_dot(self, max_vertices: int = 5000) -> str:
        """DOT digraph with one pinned rank per level and multiplicity labels."""
        total = sum(len(level) for level in self.levels)
        if total > max_vertices:
            raise ValueError(
                f"poset has {total} vertices, above the cap of {max_vertices}; "
                "export a smaller instance or raise max_vertices"
            )
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for p, level in enumerate(self.levels):
            nodes = "; ".join(
                f'n{p}_{i} [label="{format_poset_element(x)}"]' for i, x in enumerate(level)
            )
            lines.append("  { rank=same; " + nodes + "; }")
        for p, cov in enumerate(self.covers):
            for (lo, hi) in sorted(cov):
                mult = cov[(lo, hi)]
                suffix = f' [label="{mult}"]' if mult > 1 else ""
                lines.append(f"  n{p}_{lo} -> n{p + 1}_{hi}{suffix};")
        lines.append("}")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        """Compact interchange form: element strings per level, edge triples."""
        names = [[format_poset_element(x) for x in level] for level in self.levels]
        edges = []
        for p, cov in enumerate(self.covers):
            for (lo, hi) in sorted(cov):
                edges.append([names[p][lo], names[p + 1][hi], cov[(lo, hi)]])
        return {
            "family": self.family,
            "first_rank": self.first_rank,
            "levels": names,
            "edges": edges,
        }

    def __repr__(self):
        sizes = ",".join(str(len(level)) for level in self.levels)
        return f"GradedPoset({self.family}; sizes {sizes})"


# ---------------------------------------------------------------------------
# Regularity audit

@dataclass(frozen=True)
class LevelPairRegularity:
    """Observed degrees between one consecutive level pair."""

    lower_rank: int
    upper_rank: int
    lower_size: int
    upper_size: int
    up_degrees: tuple[int, ...]    # distinct up-degrees of lower elements, sorted
    down_degrees: tuple[int, ...]  # distinct down-degrees of upper elements, sorted
    edge_count: int                # with multiplicity

    @property
    def is_biregular(self) -> bool:
        return len(self.up_degrees) == 1 and len(self.down_degrees) == 1

    @property
    def up_degree(self) -> int | None:
        return self.up_degrees[0] if len(self.up_degrees) == 1 else None

    @property
    def down_degree(self) -> int | None:
        return self.down_degrees[0] if len(self.down_degrees) == 1 else None

    @property
    def edge_identity_holds(self) -> bool:
        """u * #lower == d * #upper == edge count, multiplicities included."""
        return (
            self.is_biregular
            and self.up_degree * self.lower_size == self.edge_count
            and self.down_degree * self.upper_size == self.edge_count
        )


@dataclass(frozen=True)
class RegularityReport:
    pairs: tuple[LevelPairRegularity, ...]

    @property
    def is_level_regular(self) -> bool:
        return all(p.is_biregular and p.edge_identity_holds for p in self.pairs)

    def pair(self, lower_rank: int) -> LevelPairRegularity:
        for p in self.pairs:
            if p.lower_rank == lower_rank:
                return p
        raise ValueError(f"no level pair starting at rank {lower_rank}")


def regularity_check(poset: GradedPoset) -> RegularityReport:
    """Audit every consecutive level pair for uniform up/down degrees."""
    return RegularityReport(
        pairs=tuple(poset.pair_regularity(p) for p in range(poset.num_levels - 1))
    )


def lower_shadow(poset: GradedPoset, rank: int, elements) -> set:
    return poset.lower_shadow(rank, elements)


def upper_shadow(poset: GradedPoset, rank: int, elements) -> set:
    return poset.upper_shadow(rank, elements)


def is_weakly_connected_pair(poset: GradedPoset, rank: int) -> bool:
    return poset.is_weakly_connected_pair(rank)


# ---------------------------------------------------------------------------
# Builders

def _deletions(symbols: tuple[int, ...], relation: str):
    """Yield the one-symbol deletions of a sequence under the given order,
    one yield per deletion (repeats encode multiplicity)."""
    if relation == "prefix":
        yield symbols[:-1]
    elif relation == "subsequence":
        for p in range(len(symbols)):
            yield symbols[:p] + symbols[p + 1 :]
    elif relation == "substring":
        if len(symbols) == 1:
            yield ()
        else:
            yield symbols[1:]
            yield symbols[:-1]
    else:
        raise ValueError(f"unknown relation {relation!r}")


def _cover_map(lower_level, upper_level, relation: str) -> dict:
    index = {x.symbols if isinstance(x, Str) else x.entries: i for i, x in enumerate(lower_level)}
    cov: dict[tuple[int, int], int] = {}
    for j, w in enumerate(upper_level):
        syms = w.symbols if isinstance(w, Str) else w.entries
        for lower_syms in _deletions(syms, relation):
            key = (index[lower_syms], j)
            cov[key] = cov.get(key, 0) + 1
    return cov


def build_string_poset(r: int, relation: str, max_level: int) -> GradedPoset:
    """Strings over [1..r] of length 0..max_level under one of the three
    symbol-comparing orders; level 0 is the empty string."""
    if r < 1 or max_level < 0:
        raise ValueError("need r >= 1 and max_level >= 0")
    if relation not in STRING_RELATIONS:
        raise ValueError(f"relation must be one of {STRING_RELATIONS}")
    levels = [strings(r, l) for l in range(max_level + 1)]
    covers = [_cover_map(levels[l], levels[l + 1], relation) for l in range(max_level)]
    return GradedPoset(
        levels,
        covers,
        family=f"string({relation}, r={r})",
        first_rank=0,
        level_labels=tuple(f"len {l}" for l in range(max_level + 1)),
    )


def build_partial_perm_poset(k: int, relation: str) -> GradedPoset:
    """Partial permutations over [1..k], levels by length 1..k, under one of
    the three symbol-comparing orders."""
    if k < 1:
        raise ValueError("need k >= 1")
    if relation not in STRING_RELATIONS:
        raise ValueError(f"relation must be one of {STRING_RELATIONS}")
    levels = [partial_permutations(k, l) for l in range(1, k + 1)]
    covers = [_cover_map(levels[p], levels[p + 1], relation) for p in range(k - 1)]
    return GradedPoset(
        levels,
        covers,
        family=f"partial_perm({relation}, k={k})",
        first_rank=1,
        level_labels=tuple(f"len {l}" for l in range(1, k + 1)),
    )


def build_pattern_poset(k: int, relation: str) -> GradedPoset:
    """Full permutations of sizes 1..k under the pattern or substring-pattern
    order, with an interleaved helper level between consecutive sizes.

    Position 2l-2 holds the permutations of [l]; position 2l-1 holds the
    injective l-sequences over [l+1].  A helper element covers exactly the
    permutation recording its relative order, and is covered by the
    one-longer permutations that delete down to it (any position for the
    pattern order, first or last for the substring-pattern order).  This
    two-step factoring keeps every consecutive pair biregular, and
    reachability between the permutation levels coincides with the direct
    pattern / substring-pattern relations.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if relation not in PATTERN_RELATIONS:
        raise ValueError(f"relation must be one of {PATTERN_RELATIONS}")
    base = "subsequence" if relation == "pattern" else "substring"
    levels: list[list[PartialPermutation]] = []
    labels: list[str] = []
    covers: list[dict] = []
    for l in range(1, k + 1):
        levels.append(full_permutations(l))
        labels.append(f"perms of [{l}]")
        if l == k:
            break
        mid = partial_permutations(l + 1, l)
        # permutations of [l] -> helper level: cover the pattern of each helper
        perm_index = {x: i for i, x in enumerate(levels[-1])}
        cov_lower = {}
        for j, tau in enumerate(mid):
            key = (perm_index[pattern_of(tau)], j)
            cov_lower[key] = cov_lower.get(key, 0) + 1
        covers.append(cov_lower)
        levels.append(mid)
        labels.append(f"{l}-of-[{l + 1}]")
        covers.append(_cover_map(mid, full_permutations(l + 1), base))
    return GradedPoset(
        levels,
        covers,
        family=f"perm_pattern({relation}, k={k})",
        first_rank=0,
        level_labels=tuple(labels),
    )


def build_subset_poset(n: int) -> GradedPoset:
    """Subsets of [1..n] ordered by inclusion, levels by cardinality."""
    if n < 0:
        raise ValueError("need n >= 0")
    levels = [
        [frozenset(c) for c in itertools.combinations(range(1, n + 1), i)]
        for i in range(n + 1)
    ]
    covers = []
    for i in range(n):
        index = {s: j for j, s in enumerate(levels[i])}
        cov = {}
        for j, s in enumerate(levels[i + 1]):
            for x in sorted(s):
                cov[(index[s - {x}], j)] = 1
        covers.append(cov)
    return GradedPoset(
        levels,
        covers,
        family=f"subsets(n={n})",
        first_rank=0,
        level_labels=tuple(f"size {i}" for i in range(n + 1)),
    )
