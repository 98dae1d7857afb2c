"""Core word algebra over plain ASCII strings.

A word is a nonempty ASCII string, one character per symbol.  All functions
are pure; the heavier machinery in the other modules builds on these
primitives.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from string import ascii_lowercase
from typing import NamedTuple

__all__ = [
    "InvalidWordError",
    "CircularWord",
    "PrimitiveRoot",
    "validate_word",
    "alphabet",
    "rotations",
    "least_rotation_index",
    "canonical_rotation",
    "is_primitive",
    "primitive_root",
    "factors",
    "circular_factors",
    "smallest_period",
    "has_period",
    "fine_wilf_check",
    "rational_power",
    "rename_by_first_occurrence",
    "word_from_ids",
]


class InvalidWordError(ValueError):
    """An operation received an empty or non-ASCII word."""


def validate_word(w: str) -> str:
    """Return ``w`` unchanged if it is a usable word, else raise.

    A usable word is a nonempty ASCII string; each character is one symbol.
    """
    if not isinstance(w, str):
        raise InvalidWordError(f"expected a string word, got {type(w).__name__}")
    if not w:
        raise InvalidWordError("the empty word is not accepted")
    if not w.isascii():
        raise InvalidWordError("words must be ASCII, one character per symbol")
    return w


def alphabet(w: str) -> set[str]:
    """The set of distinct symbols occurring in ``w``."""
    return set(validate_word(w))


def rotations(w: str) -> list[str]:
    """All ``len(w)`` cyclic rotations of ``w``, starting with ``w`` itself.

    The list may contain duplicates when ``w`` is a proper power.
    """
    validate_word(w)
    return [w[i:] + w[:i] for i in range(len(w))]


def least_rotation_index(w: str) -> int:
    """Index ``k`` such that ``w[k:] + w[:k]`` is the least rotation of ``w``.

    Booth's algorithm, O(n).  Cross-checked against the naive minimum in the
    test suite.
    """
    validate_word(w)
    doubled = w + w
    n2 = len(doubled)
    fail = [-1] * n2
    k = 0
    for j in range(1, n2):
        c = doubled[j]
        i = fail[j - k - 1]
        while i != -1 and c != doubled[k + i + 1]:
            if c < doubled[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if c != doubled[k + i + 1]:
            if c < doubled[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def canonical_rotation(w: str) -> str:
    """The lexicographically least rotation of ``w``."""
    k = least_rotation_index(w)
    return w[k:] + w[:k]


@dataclass(frozen=True)
class CircularWord:
    """A conjugacy class of words, stored by its least rotation.

    Any representative may be passed to the constructor; it is normalized,
    so two circular words compare equal exactly when their classes match.
    """

    canonical: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "canonical", canonical_rotation(self.canonical))

    @property
    def n(self) -> int:
        return len(self.canonical)

    def rotations(self) -> list[str]:
        return rotations(self.canonical)

    def __str__(self) -> str:
        return f"[{self.canonical}]"


class PrimitiveRoot(NamedTuple):
    root: str
    exponent: int


def is_primitive(w: str) -> bool:
    """True when ``w`` is not a repetition ``u * k`` with ``k >= 2``.

    Uses the doubling trick: ``w`` occurs inside ``w + w`` at an interior
    position exactly when ``w`` is a proper power.
    """
    validate_word(w)
    return (w + w).find(w, 1) == len(w)


def primitive_root(w: str) -> PrimitiveRoot:
    """The unique primitive ``u`` and ``k >= 1`` with ``u * k == w``."""
    validate_word(w)
    n = len(w)
    i = (w + w).find(w, 1)
    if n % i:  # the least self-matching shift always divides n
        raise AssertionError(f"shift {i} does not divide length {n} for {w!r}")
    return PrimitiveRoot(w[:i], n // i)


def factors(w: str, m: int) -> set[str]:
    """The set of distinct length-``m`` factors of ``w``."""
    validate_word(w)
    if not 1 <= m <= len(w):
        raise ValueError(f"factor length {m} out of range 1..{len(w)}")
    return {w[i : i + m] for i in range(len(w) - m + 1)}


def circular_factors(w: str, m: int) -> set[str]:
    """Length-``m`` factors of the periodic extension of ``w``.

    For ``m < len(w)`` this is the factor set of ``w * 2``; for larger ``m``
    it is the set of length-``m`` periodic windows, one per distinct
    rotation.  Computed from an explicit power of ``w`` long enough that
    every window starting inside the first period fits.
    """
    validate_word(w)
    if m < 1:
        raise ValueError(f"factor length {m} must be positive")
    n = len(w)
    power = w * (m // n + 2)
    return {power[i : i + m] for i in range(n)}


def _prefix_function(w: str) -> list[int]:
    pi = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[k] != w[i]:
            k = pi[k - 1]
        if w[k] == w[i]:
            k += 1
        pi[i] = k
    return pi


def smallest_period(w: str) -> int:
    """Least ``p >= 1`` with ``w[i] == w[i + p]`` wherever both sides exist.

    Equals ``len(w)`` minus the longest proper border.
    """
    validate_word(w)
    return len(w) - _prefix_function(w)[-1]


def has_period(w: str, p: int) -> bool:
    """True when ``p`` is a period of ``w`` (any ``p >= len(w)`` is)."""
    validate_word(w)
    if p < 1:
        raise ValueError(f"period {p} must be positive")
    if p >= len(w):
        return True
    return w[:-p] == w[p:]


def fine_wilf_check(w: str, p: int, q: int) -> bool:
    """Check the periodicity-interaction law on one instance.

    If ``w`` has periods ``p`` and ``q`` and is at least
    ``p + q - gcd(p, q)`` long, the gcd must also be a period.  Returns the
    truth of that implication; it never assumes it.
    """
    validate_word(w)
    if not (1 <= p <= len(w) and 1 <= q <= len(w)):
        raise ValueError(f"periods {p},{q} out of range 1..{len(w)}")
    d = gcd(p, q)
    if has_period(w, p) and has_period(w, q) and len(w) >= p + q - d:
        return has_period(w, d)
    return True


def rational_power(u: str, num: int) -> str:
    """The length-``num`` prefix of the periodic extension of ``u``.

    ``num`` must be at least ``len(u)`` (exponent at least one).
    """
    validate_word(u)
    if num < len(u):
        raise ValueError(f"target length {num} shorter than the base {len(u)}")
    return (u * (num // len(u) + 1))[:num]


def rename_by_first_occurrence(w: str) -> str:
    """Relabel symbols so they first appear in the order a, b, c, ...

    This is the least word in the alphabet-permutation orbit of ``w``.
    """
    validate_word(w)
    table: dict[str, str] = {}
    out = []
    for ch in w:
        if ch not in table:
            if len(table) >= len(ascii_lowercase):
                raise InvalidWordError("more than 26 distinct symbols")
            table[ch] = ascii_lowercase[len(table)]
        out.append(table[ch])
    return "".join(out)


def word_from_ids(ids: list[int] | tuple[int, ...]) -> str:
    """Build a word from integer symbol ids 0..25 (id ``i`` becomes letter ``i``)."""
    if not ids:
        raise InvalidWordError("the empty word is not accepted")
    try:
        return "".join(ascii_lowercase[i] for i in ids)
    except (IndexError, TypeError) as exc:
        raise InvalidWordError(f"symbol ids must be integers in 0..25: {ids!r}") from exc
