"""Strings, partial permutations, and the containment relations between them.

Elements are immutable values over a declared symbol universe: partial
permutations draw distinct symbols from [1..k], strings draw (possibly
repeating) digits from {0, .., r-1}.  The universe is part of an element's
identity: ``253`` over universe 6 and ``253`` over universe 5 are different
objects, and the symbol-comparing relations refuse to mix universes.

Five relations are provided: prefix, subsequence, substring (these compare
symbols and require equal universes) and pattern / substring-pattern (these
compare relative order only, so the left side must be a full permutation).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union


@dataclass(frozen=True)
class Str:
    """A string over the digit alphabet {0, .., universe-1}; symbols may
    repeat and the length may be 0 (the empty string)."""

    symbols: tuple[int, ...]
    universe: int

    def __post_init__(self):
        if self.universe < 1:
            raise ValueError("universe size must be >= 1")
        object.__setattr__(self, "symbols", tuple(self.symbols))
        for s in self.symbols:
            if not (isinstance(s, int) and 0 <= s < self.universe):
                raise ValueError(f"symbol {s!r} outside 0..{self.universe - 1}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True)
class PartialPermutation:
    """An injective nonempty sequence of symbols from [1..universe]."""

    entries: tuple[int, ...]
    universe: int

    def __post_init__(self):
        if self.universe < 1:
            raise ValueError("universe size must be >= 1")
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("empty partial permutation")
        if len(set(self.entries)) != len(self.entries):
            raise ValueError(f"entries {self.entries} are not distinct")
        for s in self.entries:
            if not (isinstance(s, int) and 1 <= s <= self.universe):
                raise ValueError(f"entry {s!r} outside [1, {self.universe}]")

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return format_element(self)

    @property
    def is_full_permutation(self) -> bool:
        """True when the entries are a permutation of the whole universe."""
        return len(self.entries) == self.universe


Element = Union[Str, PartialPermutation]


def _symbols(x: Element) -> tuple[int, ...]:
    return x.symbols if isinstance(x, Str) else x.entries


def _check_same_kind(t: Element, u: Element) -> None:
    if type(t) is not type(u):
        raise TypeError(f"cannot relate {type(t).__name__} to {type(u).__name__}")
    if t.universe != u.universe:
        raise ValueError(f"universe mismatch: {t.universe} vs {u.universe}")


def pattern_of(tau: PartialPermutation) -> PartialPermutation:
    """The full permutation recording the relative order of tau's entries.

    Entry i of the result is the rank of tau's i-th entry among all entries,
    so the result lives in the universe of size len(tau).
    """
    order = sorted(tau.entries)
    ranks = tuple(order.index(e) + 1 for e in tau.entries)
    return PartialPermutation(ranks, len(tau.entries))


def is_prefix(t: Element, u: Element, proper: bool = False) -> bool:
    """True iff u = t followed by a suffix (required nonempty when proper)."""
    _check_same_kind(t, u)
    ts, us = _symbols(t), _symbols(u)
    if proper and len(ts) == len(us):
        return False
    return len(ts) <= len(us) and us[: len(ts)] == ts


def is_subsequence(sigma: Element, tau: Element) -> bool:
    """True iff sigma's symbols appear in tau in order, not necessarily adjacent."""
    _check_same_kind(sigma, tau)
    ss, ts = _symbols(sigma), _symbols(tau)
    it = iter(ts)  # each membership test consumes tau up to the match
    return all(s in it for s in ss)


def is_substring(sigma: Element, tau: Element) -> bool:
    """True iff sigma occurs in tau as a consecutive block."""
    _check_same_kind(sigma, tau)
    ss, ts = _symbols(sigma), _symbols(tau)
    m, l = len(ss), len(ts)
    return any(ts[n : n + m] == ss for n in range(l - m + 1))


def _order_pattern(seq: Sequence[int]) -> tuple[int, ...]:
    order = sorted(seq)
    return tuple(order.index(e) + 1 for e in seq)


def _require_full_permutation(sigma: PartialPermutation) -> None:
    if not isinstance(sigma, PartialPermutation) or not sigma.is_full_permutation:
        raise ValueError(f"{sigma} is not a full permutation")


def is_pattern_in(sigma: PartialPermutation, tau: PartialPermutation) -> bool:
    """True iff some subsequence of tau has the relative order sigma.

    sigma must be a full permutation; universes need not match since only
    relative order is compared.
    """
    _require_full_permutation(sigma)
    m = len(sigma)
    if m > len(tau):
        return False
    target = sigma.entries
    return any(
        _order_pattern(sub) == target
        for sub in itertools.combinations(tau.entries, m)
    )


def is_substring_pattern_in(sigma: PartialPermutation, tau: PartialPermutation) -> bool:
    """True iff sigma is the relative order of some consecutive block of tau."""
    _require_full_permutation(sigma)
    m = len(sigma)
    if m > len(tau):
        return False
    target = sigma.entries
    return any(
        _order_pattern(tau.entries[n : n + m]) == target
        for n in range(len(tau) - m + 1)
    )


# ---------------------------------------------------------------------------
# Enumeration (always in lexicographic order)

def strings(r: int, l: int) -> list[Str]:
    """All strings of length l over {0, .., r-1}, lexicographically."""
    if r < 1 or l < 0:
        raise ValueError("need r >= 1 and l >= 0")
    return [Str(p, r) for p in itertools.product(range(r), repeat=l)]


def partial_permutations(k: int, l: int) -> list[PartialPermutation]:
    """All injective length-l sequences over [1..k], lexicographically."""
    if not 1 <= l <= k:
        raise ValueError(f"need 1 <= l <= k, got l={l}, k={k}")
    return [PartialPermutation(p, k) for p in itertools.permutations(range(1, k + 1), l)]


def full_permutations(l: int) -> list[PartialPermutation]:
    """All permutations of [1..l], lexicographically."""
    return partial_permutations(l, l)


def all_partial_permutations(k: int) -> Iterator[PartialPermutation]:
    """Every partial permutation over [1..k], by length then lexicographically."""
    for l in range(1, k + 1):
        yield from partial_permutations(k, l)


def all_full_permutations(k: int) -> Iterator[PartialPermutation]:
    """Every full permutation of [1..l] for l = 1..k, by length then lexicographically."""
    for l in range(1, k + 1):
        yield from full_permutations(l)


def count_partial_permutations(k: int, l: int) -> int:
    return math.comb(k, l) * math.factorial(l)


def enumerate_elements(kind: str, k: int, l: int | None = None) -> list[Element]:
    """Dispatching enumerator: kind 'T' (injective sequences over [1..k]),
    'S' (full permutations, all sizes up to k), or 'str' (strings over a
    k-digit alphabet).

    With l=None the permutation kinds return the whole union over lengths.
    """
    if kind == "T":
        if l is None:
            return list(all_partial_permutations(k))
        return partial_permutations(k, l)
    if kind == "S":
        if l is None:
            return list(all_full_permutations(k))
        if l > k:
            raise ValueError(f"need l <= k, got l={l}, k={k}")
        return full_permutations(l)
    if kind == "str":
        if l is None:
            raise ValueError("string enumeration needs an explicit length")
        return strings(k, l)
    raise ValueError(f"unknown element kind {kind!r}")


# ---------------------------------------------------------------------------
# Textual element syntax: digits when all symbols are <= 9, otherwise
# comma-separated in parentheses; optional '@k' universe suffix.  The empty
# string renders as 'ε'.

def format_element(x: Element, with_universe: bool = False) -> str:
    syms = _symbols(x)
    if not syms:
        body = "ε"
    elif all(s <= 9 for s in syms):
        body = "".join(str(s) for s in syms)
    else:
        body = "(" + ",".join(str(s) for s in syms) + ")"
    if with_universe:
        return f"{body}@{x.universe}"
    return body


def parse_symbols(text: str) -> tuple[tuple[int, ...], int | None]:
    """Parse element syntax into (symbols, universe-or-None)."""
    text = text.strip()
    universe = None
    if "@" in text:
        body, _, suffix = text.rpartition("@")
        universe = int(suffix)
        text = body.strip()
    if text in ("", "ε", "eps"):
        return (), universe
    if text.startswith("("):
        if not text.endswith(")"):
            raise ValueError(f"unbalanced parentheses in {text!r}")
        parts = [p for p in text[1:-1].split(",") if p.strip()]
        return tuple(int(p) for p in parts), universe
    if not text.isdigit():
        raise ValueError(f"cannot parse element {text!r}")
    return tuple(int(ch) for ch in text), universe


def parse_str(text: str, universe: int) -> Str:
    syms, declared = parse_symbols(text)
    if declared is not None and declared != universe:
        raise ValueError(f"declared universe {declared} != expected {universe}")
    return Str(syms, universe)


def parse_partial_permutation(text: str, universe: int | None = None) -> PartialPermutation:
    """Parse a partial permutation; without an explicit or '@' universe the
    entries are taken to be a full permutation."""
    syms, declared = parse_symbols(text)
    if universe is not None and declared is not None and universe != declared:
        raise ValueError(f"declared universe {declared} != expected {universe}")
    k = universe if universe is not None else declared
    if k is None:
        k = len(syms)
    return PartialPermutation(syms, k)
