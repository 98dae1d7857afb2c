"""Distinct-square and power-factor counting for linear and circular words.

Square detection is a deliberately naive quadratic scan; it is the oracle
everything else is held to.  Power factors are grouped into classes keyed by
the canonical rotation of their primitive root, split by exponent parity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .words import (
    CircularWord,
    canonical_rotation,
    is_primitive,
    primitive_root,
    validate_word,
)

__all__ = [
    "SquareSet",
    "PowerClass",
    "ClassDecomposition",
    "distinct_squares",
    "distinct_squares_circular",
    "distinct_squares_circular_via_doubling",
    "power_factors",
    "power_factors_circular",
    "class_decomposition",
    "odd_even_counts",
    "decomposition_report",
]


@dataclass(frozen=True)
class SquareSet:
    """A set of distinct squares (words of shape ``u + u``)."""

    squares: frozenset[str]

    def __post_init__(self) -> None:
        for s in self.squares:
            half = len(s) // 2
            if len(s) % 2 or not s or s[:half] != s[half:]:
                raise ValueError(f"{s!r} is not a square")

    @property
    def count(self) -> int:
        return len(self.squares)

    def __len__(self) -> int:
        return len(self.squares)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.squares))

    def __contains__(self, s: str) -> bool:
        return s in self.squares


def distinct_squares(w: str) -> SquareSet:
    """All distinct nonempty squares occurring as factors of ``w``."""
    validate_word(w)
    n = len(w)
    found: set[str] = set()
    for half in range(1, n // 2 + 1):
        for i in range(n - 2 * half + 1):
            if w[i : i + half] == w[i + half : i + 2 * half]:
                found.add(w[i : i + 2 * half])
    return SquareSet(frozenset(found))


def distinct_squares_circular(cw: CircularWord) -> SquareSet:
    """Squares occurring in any rotation of the circular word."""
    found: set[str] = set()
    for v in set(cw.rotations()):
        found |= distinct_squares(v).squares
    return SquareSet(frozenset(found))


def distinct_squares_circular_via_doubling(cw: CircularWord) -> SquareSet:
    """Squares of the doubled word no longer than one period.

    Equals :func:`distinct_squares_circular` and serves as its independent
    route: a single scan of ``w * 2`` instead of a union over rotations.
    """
    n = cw.n
    doubled = cw.canonical * 2
    found = {s for s in distinct_squares(doubled).squares if len(s) <= n}
    return SquareSet(frozenset(found))


def power_factors(w: str) -> set[str]:
    """All factors of ``w`` that are integer powers ``p * k`` with ``k >= 2``.

    A word is such a power exactly when it is not primitive.
    """
    validate_word(w)
    n = len(w)
    seen: set[str] = set()
    for m in range(2, n + 1):
        for i in range(n - m + 1):
            seen.add(w[i : i + m])
    return {f for f in seen if not is_primitive(f)}


def power_factors_circular(cw: CircularWord) -> set[str]:
    """Union of :func:`power_factors` over all rotations."""
    out: set[str] = set()
    for v in set(cw.rotations()):
        out |= power_factors(v)
    return out


@dataclass(frozen=True)
class PowerClass:
    """The power factors of a host word sharing one primitive root class.

    ``root`` is the canonical rotation of the primitive root; ``members``
    are all factors ``q ** k`` (``k >= 2``) whose root is conjugate to it,
    split into ``even`` and ``odd`` by exponent parity.
    """

    root: str
    members: frozenset[str]
    even: frozenset[str]
    odd: frozenset[str]

    def __post_init__(self) -> None:
        if not is_primitive(self.root) or canonical_rotation(self.root) != self.root:
            raise ValueError(f"root {self.root!r} must be primitive and canonical")
        if self.even | self.odd != self.members or self.even & self.odd:
            raise ValueError("even/odd must partition the members")
        for m in self.members:
            root, k = primitive_root(m)
            if k < 2 or canonical_rotation(root) != self.root:
                raise ValueError(f"{m!r} is not a power of a conjugate of {self.root!r}")
            if (m in self.even) != (k % 2 == 0):
                raise ValueError(f"{m!r} is on the wrong parity side")

    @property
    def root_length(self) -> int:
        return len(self.root)

    @property
    def t(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ClassDecomposition:
    """All power classes of a host word, roots pairwise non-conjugate."""

    host: str
    classes: tuple[PowerClass, ...]


def class_decomposition(w: str) -> ClassDecomposition:
    """Partition the power factors of ``w`` by primitive-root conjugacy."""
    validate_word(w)
    groups: dict[str, set[str]] = {}
    parity_even: dict[str, set[str]] = {}
    for q in power_factors(w):
        root, k = primitive_root(q)
        key = canonical_rotation(root)
        groups.setdefault(key, set()).add(q)
        if k % 2 == 0:
            parity_even.setdefault(key, set()).add(q)
    classes = []
    for key in sorted(groups, key=lambda r: (len(r), r)):
        members = frozenset(groups[key])
        even = frozenset(parity_even.get(key, set()))
        classes.append(PowerClass(key, members, even, members - even))
    return ClassDecomposition(w, tuple(classes))


def odd_even_counts(t: int, l: int) -> tuple[int, int]:
    """Predicted ``(|odd|, |even|)`` for a class of ``t`` members, root length ``l``.

    Write ``t = r * l + s`` with ``0 <= s < l``; the members then fill whole
    exponent levels 2..r+1 plus ``s`` extras at level r+2, and the parity
    counts follow from which levels are odd.
    """
    if t < 0 or l < 1:
        raise ValueError(f"need t >= 0 and l >= 1, got t={t}, l={l}")
    r, s = divmod(t, l)
    if r % 2 == 0:
        return (r // 2 * l, r // 2 * l + s)
    return ((r - 1) // 2 * l + s, (r + 1) // 2 * l)


def decomposition_report(w: str) -> dict:
    """JSON-ready summary: square counts plus per-class sizes."""
    decomp = class_decomposition(w)
    return {
        "word": w,
        "n": len(w),
        "sq": distinct_squares(w).count,
        "sq_circular": distinct_squares_circular(CircularWord(w)).count,
        "classes": [
            {
                "root": pc.root,
                "l": pc.root_length,
                "t": pc.t,
                "even": len(pc.even),
                "odd": len(pc.odd),
            }
            for pc in decomp.classes
        ],
    }
