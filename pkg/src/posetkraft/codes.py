"""Codes into strings and permutations.

A code is an injective assignment of codewords to source symbols 1..n; only
the codeword list is stored.  Three codomains are supported: strings over a
digit alphabet of size r, partial permutations over [1..k], and full
permutations of every size up to k (the codomain where the pattern relations
make sense).

All length-density constants (Kraft number and the two permutation
constants) are exact rationals; no floating point is ever compared against 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .perm import (
    PartialPermutation,
    Str,
    format_element,
    is_pattern_in,
    is_prefix,
    is_subsequence,
    is_substring,
    is_substring_pattern_in,
    parse_partial_permutation,
    parse_str,
)

CODE_RELATIONS = ("prefix", "subsequence", "substring", "pattern", "substring_pattern")


@dataclass(frozen=True)
class Codomain:
    """Output space of a code: kind plus its size parameter (r or k)."""

    kind: str  # "string" | "partial_perm" | "perm_pattern"
    size: int

    def __post_init__(self):
        if self.kind not in ("string", "partial_perm", "perm_pattern"):
            raise ValueError(f"unknown codomain kind {self.kind!r}")
        if self.size < 1:
            raise ValueError("codomain size must be >= 1")


@dataclass(frozen=True)
class Code:
    """An injective code given by its ordered, duplicate-free codeword list."""

    codomain: Codomain
    codewords: tuple

    def __post_init__(self):
        object.__setattr__(self, "codewords", tuple(self.codewords))
        if len(set(self.codewords)) != len(self.codewords):
            raise ValueError("codewords must be distinct (codes are injective)")
        kind, size = self.codomain.kind, self.codomain.size
        for w in self.codewords:
            if kind == "string":
                if not isinstance(w, Str) or w.universe != size:
                    raise ValueError(f"{w!r} is not a string over a {size}-digit alphabet")
            elif kind == "partial_perm":
                if not isinstance(w, PartialPermutation) or w.universe != size:
                    raise ValueError(f"{w!r} is not a partial permutation over [1..{size}]")
            else:  # perm_pattern: full permutations of any size up to k
                if (
                    not isinstance(w, PartialPermutation)
                    or not w.is_full_permutation
                    or len(w) > size
                ):
                    raise ValueError(f"{w!r} is not a full permutation of size <= {size}")

    def __len__(self) -> int:
        return len(self.codewords)

    @classmethod
    def of_strings(cls, r: int, texts: Sequence[str]) -> "Code":
        return cls(Codomain("string", r), tuple(parse_str(t, r) for t in texts))

    @classmethod
    def of_partial_perms(cls, k: int, texts: Sequence[str]) -> "Code":
        return cls(Codomain("partial_perm", k), tuple(parse_partial_permutation(t, k) for t in texts))

    @classmethod
    def of_full_perms(cls, k: int, texts: Sequence[str]) -> "Code":
        return cls(Codomain("perm_pattern", k), tuple(parse_partial_permutation(t) for t in texts))


def code_to_json_dict(code: Code) -> dict:
    dom = code.codomain
    if dom.kind == "string":
        dom_json = {"kind": "string", "r": dom.size}
    else:
        dom_json = {"kind": dom.kind, "k": dom.size}
    return {"codomain": dom_json, "codewords": [format_element(w) for w in code.codewords]}


def code_from_json_dict(data: dict) -> Code:
    dom = data["codomain"]
    kind = dom["kind"]
    texts = data["codewords"]
    if kind == "string":
        return Code.of_strings(dom["r"], texts)
    if kind == "partial_perm":
        return Code.of_partial_perms(dom["k"], texts)
    if kind == "perm_pattern":
        return Code.of_full_perms(dom["k"], texts)
    raise ValueError(f"unknown codomain kind {kind!r}")


# ---------------------------------------------------------------------------
# Parameter sequences and exact constants

@dataclass(frozen=True)
class ParameterSequence:
    """How many codewords there are of each length (finitely supported)."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(self.counts)
        if any(not isinstance(c, int) or c < 0 for c in counts):
            raise ValueError("parameter counts must be non-negative integers")
        while counts and counts[-1] == 0:
            counts = counts[:-1]
        object.__setattr__(self, "counts", counts)

    def __getitem__(self, j: int) -> int:
        return self.counts[j] if 0 <= j < len(self.counts) else 0

    def __iter__(self):
        return iter(self.counts)

    @property
    def max_length(self) -> int:
        return len(self.counts) - 1 if self.counts else -1

    @property
    def total(self) -> int:
        return sum(self.counts)


def as_parameter_sequence(params) -> ParameterSequence:
    if isinstance(params, ParameterSequence):
        return params
    return ParameterSequence(tuple(params))


_counts = as_parameter_sequence


def parameter_sequence(code: Code) -> ParameterSequence:
    """Length histogram of the codewords."""
    if not code.codewords:
        return ParameterSequence(())
    counts = [0] * (max(len(w) for w in code.codewords) + 1)
    for w in code.codewords:
        counts[len(w)] += 1
    return ParameterSequence(tuple(counts))


def kraft_number(params, r: int) -> Fraction:
    """Sum of codeword-length densities a_i / r^i, exact."""
    if r < 1:
        raise ValueError("need r >= 1")
    seq = _counts(params)
    return sum((Fraction(a, r**i) for i, a in enumerate(seq)), Fraction(0))


def _check_perm_support(seq: ParameterSequence, k: int) -> None:
    if seq[0] != 0 or any(seq[j] for j in range(k + 1, len(seq.counts))):
        raise ValueError(f"parameter support must lie within lengths 1..{k}")


def partial_perm_constant(params, k: int) -> Fraction:
    """Density sum against the counts of injective l-sequences over [1..k]:
    sum of a_l / (C(k,l) * l!)."""
    seq = _counts(params)
    _check_perm_support(seq, k)
    return sum(
        (Fraction(seq[l], math.comb(k, l) * math.factorial(l)) for l in range(1, k + 1)),
        Fraction(0),
    )


def full_perm_constant(params, k: int) -> Fraction:
    """Density sum against the counts of full permutations: sum of a_l / l!."""
    seq = _counts(params)
    _check_perm_support(seq, k)
    return sum((Fraction(seq[l], math.factorial(l)) for l in range(1, k + 1)), Fraction(0))


# ---------------------------------------------------------------------------
# Freeness

@dataclass(frozen=True)
class FreenessResult:
    free: bool
    witness: tuple | None  # (inner, outer): inner sits inside outer

    def __bool__(self) -> bool:
        return self.free


_SYMBOL_RELATIONS = {
    "prefix": is_prefix,
    "subsequence": is_subsequence,
    "substring": is_substring,
}

_PATTERN_RELATIONS = {
    "pattern": is_pattern_in,
    "substring_pattern": is_substring_pattern_in,
}


def _comparable_views(code: Code, relation: str):
    """Codewords as objects the chosen relation can compare pairwise."""
    kind, size = code.codomain.kind, code.codomain.size
    if relation in _PATTERN_RELATIONS:
        if kind != "perm_pattern":
            raise ValueError(f"relation {relation!r} needs a perm_pattern codomain, not {kind!r}")
        return code.codewords
    if relation not in _SYMBOL_RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    if kind == "perm_pattern":
        # codewords have different universes; the symbol relations apply to
        # them viewed as strings over [1..k] (alphabet padded by one so the
        # 1-based entries fit the digit string type)
        return tuple(Str(w.entries, size + 1) for w in code.codewords)
    return code.codewords


def is_free(code: Code, relation: str) -> FreenessResult:
    """True iff no codeword sits inside a different codeword under the relation.

    On failure the witness pair is (inner, outer) for the first offending
    ordered pair in codeword order.
    """
    rel = _PATTERN_RELATIONS.get(relation) or _SYMBOL_RELATIONS.get(relation)
    views = _comparable_views(code, relation)
    for i, a in enumerate(views):
        for j, b in enumerate(views):
            if i != j and rel(a, b):
                return FreenessResult(False, (code.codewords[i], code.codewords[j]))
    return FreenessResult(True, None)


# ---------------------------------------------------------------------------
# Extension, decoding, unique decodability

def _word_symbols(w) -> tuple[int, ...]:
    return w.symbols if isinstance(w, Str) else w.entries


def encode(code: Code, message: Sequence[int]):
    """Concatenate the codewords selected by 1-based source indices."""
    words = []
    for s in message:
        if not 1 <= s <= len(code.codewords):
            raise ValueError(f"source symbol {s} outside 1..{len(code.codewords)}")
        words.append(code.codewords[s - 1])
    joined = tuple(itertools.chain.from_iterable(_word_symbols(w) for w in words))
    kind, size = code.codomain.kind, code.codomain.size
    if kind == "string":
        return Str(joined, size)
    if len(set(joined)) != len(joined) or not joined:
        raise ValueError("concatenation leaves codomain")
    return PartialPermutation(joined, size)


def decode_prefix_free(code: Code, output) -> tuple[int, ...]:
    """Invert the extension of a prefix-free code by left-to-right scanning."""
    freeness = is_free(code, "prefix")
    if not freeness:
        inner, outer = freeness.witness
        raise ValueError(
            f"code is not prefix-free: {format_element(inner)} is a prefix of {format_element(outer)}"
        )
    if any(len(w) == 0 for w in code.codewords):
        raise ValueError("a code containing the empty codeword cannot be decoded")
    lookup = {_word_symbols(w): i + 1 for i, w in enumerate(code.codewords)}
    message = []
    block: tuple[int, ...] = ()
    for s in _word_symbols(output):
        block += (s,)
        if block in lookup:
            message.append(lookup[block])
            block = ()
    if block:
        raise ValueError(f"unparseable residue {block} at end of output")
    return tuple(message)


def is_uniquely_decodable(code: Code) -> bool:
    """Decide extension injectivity by the dangling-suffix iteration.

    Starting from the suffixes that witness one codeword being a proper
    prefix of another, repeatedly split dangling suffixes against codewords;
    the code fails to be uniquely decodable exactly when some dangling
    suffix is itself a codeword.
    """
    if code.codomain.kind != "string":
        raise ValueError("unique decodability is defined for string codomains")
    words = {w.symbols for w in code.codewords}
    if not words:
        return True
    if () in words:
        # appending the empty codeword changes the message but not the output
        return False

    def danglings(a, b):
        if len(a) < len(b) and b[: len(a)] == a:
            yield b[len(a):]

    seen: set[tuple[int, ...]] = set()
    work: list[tuple[int, ...]] = []
    for u in words:
        for v in words:
            if u != v:
                for w in danglings(u, v):
                    if w not in seen:
                        seen.add(w)
                        work.append(w)
    while work:
        d = work.pop()
        if d in words:
            return False
        for u in words:
            for w in itertools.chain(danglings(d, u), danglings(u, d)):
                if w not in seen:
                    seen.add(w)
                    work.append(w)
    return True


def brute_force_uniquely_decodable(code: Code, max_total_length: int = 12) -> bool:
    """Extension injectivity checked by enumerating messages outright.

    All messages whose encoded output (and message length) stay within the
    bound are generated breadth-first; any two distinct messages hitting the
    same output is a counterexample.
    """
    if code.codomain.kind != "string":
        raise ValueError("unique decodability is defined for string codomains")
    words = [w.symbols for w in code.codewords]
    if not words:
        return True
    outputs: dict[tuple[int, ...], tuple[int, ...]] = {}
    frontier: list[tuple[tuple[int, ...], tuple[int, ...]]] = [((), ())]
    for _ in range(max_total_length):
        grown = []
        for msg, out in frontier:
            for i, w in enumerate(words, start=1):
                new_out = out + w
                if len(new_out) > max_total_length:
                    continue
                new_msg = msg + (i,)
                if new_out in outputs:
                    return False
                outputs[new_out] = new_msg
                grown.append((new_msg, new_out))
        frontier = grown
        if not frontier:
            break
    return True


# ---------------------------------------------------------------------------
# Ulam distance condition

def _lcs_length(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(cur[j], prev[j + 1]))
        prev = cur
    return prev[-1]


def ulam_subsequence_condition(code: Code, d: int) -> bool:
    """For a fixed-length code of full-length partial permutations: is every
    length-(k-d+1) string a subsequence of at most one codeword?

    Equivalent to minimum Ulam distance >= d.  Strings with repeated symbols
    are never subsequences of a partial permutation, so it suffices that no
    two codewords share a common subsequence of length k-d+1.
    """
    if code.codomain.kind != "partial_perm":
        raise ValueError("the Ulam condition applies to partial_perm codomains")
    k = code.codomain.size
    if any(len(w) != k for w in code.codewords):
        raise ValueError("the Ulam condition applies to codes of full-length codewords")
    if not 1 <= d <= k:
        raise ValueError(f"need 1 <= d <= {k}")
    target = k - d + 1
    words = [w.entries for w in code.codewords]
    for a, b in itertools.combinations(words, 2):
        if _lcs_length(a, b) >= target:
            return False
    return True
