"""Shared brute-force oracles for the test suite.

Everything here is written as plainly as possible, independent of the
library's own algorithms, so the two sides can disagree.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def words_over(k: int, n: int) -> list[str]:
    return ["".join(t) for t in product("abcdefgh"[:k], repeat=n)]


def naive_least_rotation(w: str) -> str:
    return min(w[i:] + w[:i] for i in range(len(w)))


def naive_is_primitive(w: str) -> bool:
    n = len(w)
    for d in range(1, n):
        if n % d == 0 and w == w[:d] * (n // d):
            return False
    return True


def naive_periods(w: str) -> list[int]:
    n = len(w)
    out = []
    for p in range(1, n + 1):
        if all(w[i] == w[i + p] for i in range(n - p)):
            out.append(p)
    return out


def brute_squares(w: str) -> set[str]:
    found = set()
    n = len(w)
    for i in range(n):
        for j in range(i + 2, n + 1, 2):
            s = w[i:j]
            h = len(s) // 2
            if s == s[:h] + s[:h]:
                found.add(s)
    return found


def brute_circular_squares(w: str) -> set[str]:
    out: set[str] = set()
    for i in range(len(w)):
        out |= brute_squares(w[i:] + w[:i])
    return out


def brute_power_factors(w: str) -> set[str]:
    found = set()
    n = len(w)
    for i in range(n):
        for j in range(i + 2, n + 1):
            if not naive_is_primitive(w[i:j]):
                found.add(w[i:j])
    return found


def naive_circuits(graph) -> set[tuple[str, ...]]:
    """All elementary circuits as edge tuples starting at their least vertex."""
    succ = graph.successors()
    found: set[tuple[str, ...]] = set()

    def close(cycle: list[str]) -> tuple[str, ...]:
        r = len(cycle)
        return tuple(cycle[i] + cycle[(i + 1) % r][-1] for i in range(r))

    def extend(path: list[str], start: str) -> None:
        for u in succ[path[-1]]:
            if u == start:
                found.add(close(path))
            elif u > start and u not in path:
                path.append(u)
                extend(path, start)
                path.pop()

    for s in sorted(graph.vertices):
        extend([s], s)
    return found


def fraction_rank(vectors) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    rank = 0
    for col in range(len(rows[0])):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / lead[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], lead)]
        rank += 1
    return rank
