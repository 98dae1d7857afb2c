"""Exhaustive verification sweeps and extremal search over circular words.

Available check ids (run one or all over a :class:`SweepConfig`):

- ``bound-5-3``: every circular word has at most 5n/3 distinct squares.
- ``bound-nonprimitive``: proper powers stay within 3n/2.
- ``circuit-rank``: small circuits per order are independent and their total
  is at most n minus the alphabet size.
- ``class-circuits``: a power class of size t with root length l produces a
  small circuit at each order l .. l+t-1.
- ``class-parity``: per-class odd/even counts obey the parity bounds and,
  for the usual level structure, the exact level formula; even totals
  reproduce the distinct-square count.
- ``splits``: split decompositions are edge-disjoint and sum to the root
  length, and never happen within one order of the root length.
- ``case-bounds``: classify each primitive word by how its circuit family
  splits and assert the bound that classification implies.
- ``count-chain``: on the doubled word, short-rooted power counts equal the
  realized small circuits and are dominated by the total independence
  capacity, itself at most 2n.
- ``large-circuit``: built-in high-power instances where every near-top
  order is rank-deficient without its long circuit.

Sweeps enumerate canonical representatives (least rotation plus
first-occurrence renaming where that is sound, renaming only for
linear-word properties), partition by prefix when running with multiple
jobs, and can checkpoint progress to a small line-oriented file.
"""

from __future__ import annotations

import json
import multiprocessing
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from string import ascii_lowercase

from .rauzy import (
    CircuitCapExceeded,
    build_rauzy_graph,
    circuit_root,
    cyclomatic_number,
    decompose_split,
    enumerate_elementary_circuits,
    independent_rank,
    split_point,
    vector_cycle,
)
from .squares import (
    class_decomposition,
    distinct_squares,
    distinct_squares_circular_via_doubling,
    odd_even_counts,
)
from .words import (
    CircularWord,
    circular_factors,
    factors,
    is_primitive,
    primitive_root,
    rename_by_first_occurrence,
    validate_word,
)

__all__ = [
    "CHECK_ORDER",
    "SweepConfig",
    "CheckReport",
    "SuiteReport",
    "resolve_checks",
    "run_check",
    "run_suite",
    "check_bound_5_3",
    "check_nonprimitive_bound",
    "check_circuit_rank",
    "check_class_circuits",
    "check_class_parity",
    "check_splits",
    "check_case_bounds",
    "check_count_chain",
    "check_large_circuit",
    "LARGE_CIRCUIT_INSTANCES",
    "search_extremal",
    "necklace_form",
    "is_necklace_canonical",
    "circular_square_count",
]

CHECK_ORDER = (
    "bound-5-3",
    "bound-nonprimitive",
    "circuit-rank",
    "class-circuits",
    "class-parity",
    "splits",
    "case-bounds",
    "count-chain",
    "large-circuit",
)

_CHECKPOINT_HEADER = "circsq-checkpoint v1"


# ---------------------------------------------------------------------------
# canonical enumeration


def necklace_form(w: str) -> str:
    """Least representative under rotation plus alphabet renaming."""
    best = rename_by_first_occurrence(w)
    for i in range(1, len(w)):
        cand = rename_by_first_occurrence(w[i:] + w[:i])
        if cand < best:
            best = cand
    return best


def is_necklace_canonical(w: str) -> bool:
    """True when ``w`` equals its own :func:`necklace_form`."""
    return necklace_form(w) == w


def _iter_rename_canonical(k: int, n: int, prefix: str = ""):
    """Words whose symbols first appear in order a, b, c, ... (lex order)."""
    letters = ascii_lowercase[:k]
    used = len(set(prefix))
    buf = list(prefix)

    def rec(pos: int, used: int):
        if pos == n:
            yield "".join(buf)
            return
        for c in range(min(used + 1, k)):
            buf.append(letters[c])
            yield from rec(pos + 1, used + (1 if c == used else 0))
            buf.pop()

    yield from rec(len(prefix), used)


def _rename_prefixes(k: int, d: int) -> list[str]:
    return list(_iter_rename_canonical(k, d))


def _iter_raw(k: int, n: int, prefix: str = ""):
    letters = ascii_lowercase[:k]
    rest = n - len(prefix)
    for tail in product(letters, repeat=rest):
        yield prefix + "".join(tail)


def circular_square_count(w: str) -> int:
    """Number of distinct squares across all rotations of ``w``."""
    return distinct_squares_circular_via_doubling(CircularWord(w)).count


# ---------------------------------------------------------------------------
# configuration and reports


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of one verification sweep."""

    alphabet_size: int = 2
    max_length: int = 8
    checks: frozenset[str] = frozenset(CHECK_ORDER)
    canonicalize: bool = True
    checkpoint_path: str | None = None
    seed: int = 0
    jobs: int = 1
    circuit_cap: int = 1_000_000

    def __post_init__(self) -> None:
        if not 1 <= self.alphabet_size <= 26:
            raise ValueError(f"alphabet size {self.alphabet_size} out of range 1..26")
        if self.max_length < 1:
            raise ValueError("max length must be at least 1")
        if not self.checks:
            raise ValueError("at least one check id is required")
        unknown = set(self.checks) - set(CHECK_ORDER)
        if unknown:
            raise ValueError(f"unknown check ids: {sorted(unknown)}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.circuit_cap < 1:
            raise ValueError("circuit cap must be at least 1")


def resolve_checks(selector: str) -> frozenset[str]:
    """Turn ``"all"`` or one check id into a check set."""
    if selector == "all":
        return frozenset(CHECK_ORDER)
    if selector in CHECK_ORDER:
        return frozenset({selector})
    raise ValueError(
        f"unknown check id {selector!r}; choose from {', '.join(CHECK_ORDER)} or all"
    )


@dataclass
class CheckReport:
    """Outcome of one check: counts, violations, and the extremal witness."""

    check_id: str
    alphabet_size: int
    max_length: int
    canonicalize: bool
    seed: int
    jobs: int
    words_tested: int = 0
    violations: list[tuple[str, str]] = field(default_factory=list)
    flagged: list[tuple[str, str]] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    max_ratio: Fraction | None = None
    witness: str | None = None
    stats: dict[str, int] = field(default_factory=dict)

    @classmethod
    def for_config(cls, check_id: str, cfg: SweepConfig) -> "CheckReport":
        return cls(
            check_id=check_id,
            alphabet_size=cfg.alphabet_size,
            max_length=cfg.max_length,
            canonicalize=cfg.canonicalize,
            seed=cfg.seed,
            jobs=cfg.jobs,
        )

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "check": self.check_id,
            "config": {
                "alphabet_size": self.alphabet_size,
                "max_length": self.max_length,
                "canonicalize": self.canonicalize,
                "seed": self.seed,
                "jobs": self.jobs,
            },
            "words_tested": self.words_tested,
            "violations": [list(v) for v in self.violations],
            "flagged": [list(v) for v in self.flagged],
            "skipped": list(self.skipped),
            "max_ratio": None if self.max_ratio is None else str(self.max_ratio),
            "witness": self.witness,
            "stats": dict(sorted(self.stats.items())),
            "passed": self.passed,
        }


@dataclass
class SuiteReport:
    """Reports of several checks run over one configuration."""

    reports: list[CheckReport]

    @property
    def violations_total(self) -> int:
        return sum(len(r.violations) for r in self.reports)

    @property
    def passed(self) -> bool:
        return self.violations_total == 0

    def to_dict(self) -> dict:
        return {
            "reports": [r.to_dict() for r in self.reports],
            "violations_total": self.violations_total,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


class _Outcome:
    """What evaluating a single word produced."""

    __slots__ = ("violations", "flagged", "skipped", "ratio", "stats")

    def __init__(self) -> None:
        self.violations: list[tuple[str, str]] = []
        self.flagged: list[tuple[str, str]] = []
        self.skipped = False
        self.ratio: Fraction | None = None
        self.stats: dict[str, int] = {}


@dataclass
class _Partial:
    """Accumulated results for one block or one length level."""

    tested: int = 0
    violations: list[tuple[str, str]] = field(default_factory=list)
    flagged: list[tuple[str, str]] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    best: tuple[Fraction, str] | None = None
    stats: dict[str, int] = field(default_factory=dict)

    def fold(self, word: str, out: _Outcome) -> None:
        self.tested += 1
        self.violations.extend(out.violations)
        self.flagged.extend(out.flagged)
        if out.skipped:
            self.skipped.append(word)
        if out.ratio is not None and (self.best is None or out.ratio > self.best[0]):
            self.best = (out.ratio, word)
        for key, val in out.stats.items():
            self.stats[key] = self.stats.get(key, 0) + val

    def merge(self, other: "_Partial") -> None:
        self.tested += other.tested
        self.violations.extend(other.violations)
        self.flagged.extend(other.flagged)
        self.skipped.extend(other.skipped)
        if other.best is not None and (self.best is None or other.best[0] > self.best[0]):
            self.best = other.best
        for key, val in other.stats.items():
            self.stats[key] = self.stats.get(key, 0) + val


def _fold_partial_into_report(rep: CheckReport, part: _Partial) -> None:
    rep.words_tested += part.tested
    rep.violations.extend(part.violations)
    rep.flagged.extend(part.flagged)
    rep.skipped.extend(part.skipped)
    if part.best is not None and (rep.max_ratio is None or part.best[0] > rep.max_ratio):
        rep.max_ratio, rep.witness = part.best
    for key, val in part.stats.items():
        rep.stats[key] = rep.stats.get(key, 0) + val


# ---------------------------------------------------------------------------
# per-word evaluators


def _eval_bound_5_3(w: str, cfg: SweepConfig) -> _Outcome:
    out = _Outcome()
    n = len(w)
    s = circular_square_count(w)
    out.ratio = Fraction(s, n)
    if 3 * s > 5 * n:
        out.violations.append((w, f"Sq={s} exceeds 5n/3 with n={n}"))
    if 2 * s > 3 * n:
        out.flagged.append((w, f"Sq={s} exceeds 3n/2 with n={n}"))
        out.stats["ratio_above_3_2"] = 1
    return out


def _eval_bound_nonprimitive(w: str, cfg: SweepConfig) -> _Outcome:
    out = _Outcome()
    n = len(w)
    s = circular_square_count(w)
    out.ratio = Fraction(s, n)
    if 2 * s > 3 * n:
        out.violations.append((w, f"Sq={s} exceeds 3n/2 with n={n}"))
    return out


def _eval_circuit_rank(w: str, cfg: SweepConfig) -> _Outcome:
    out = _Outcome()
    n = len(w)
    sc_total = 0
    for i in range(1, n):
        g = build_rauzy_graph(w, i)
        try:
            circuits = enumerate_elementary_circuits(g, cfg.circuit_cap)
        except CircuitCapExceeded:
            out.skipped = True
            return out
        small = [c for c in circuits if c.length <= i]
        sc_total += len(small)
        if small:
            vectors = [vector_cycle(c, g) for c in small]
            if independent_rank(vectors) != len(small):
                out.violations.append((w, f"small circuits at order {i} are dependent"))
        if circuits:
            all_rank = independent_rank([vector_cycle(c, g) for c in circuits])
            if all_rank > cyclomatic_number(g):
                out.violations.append((w, f"circuit rank exceeds chi at order {i}"))
    bound = n - len(set(w))
    if sc_total > bound:
        out.violations.append((w, f"sc={sc_total} exceeds n-|alphabet|={bound}"))
    out.stats["small_circuits"] = sc_total
    return out


def _eval_class_circuits(w: str, cfg: SweepConfig) -> _Outcome:
    out = _Outcome()
    n = len(w)
    fac_cache: dict[int, set[str]] = {}

    def fac(m: int) -> set[str]:
        if m not in fac_cache:
            fac_cache[m] = factors(w, m)
        return fac_cache[m]

    def realized(p: str, l: int, order: int) -> bool:
        if order + 1 > n:
            return False
        ring = circular_factors(p, order)
        return (
            len(ring) == l
            and ring <= fac(order)
            and circular_factors(p, order + 1) <= fac(order + 1)
        )

    predicted = 0
    hits = 0
    beyond = 0
    for pc in class_decomposition(w).classes:
        p, l, t = pc.root, pc.root_length, pc.t
        predicted += t
        for i in range(1, t + 1):
            if realized(p, l, i + l - 1):
                hits += 1
            else:
                out.violations.append(
                    (w, f"class {p} (t={t}) has no small circuit at order {i + l - 1}")
                )
        order = t + l
        while order + 1 <= n and realized(p, l, order):
            beyond += 1
            order += 1
    out.stats["predicted"] = predicted
    out.stats["realized"] = hits
    if beyond:
        out.stats["beyond_window"] = beyond
    return out


def _exponent_levels(pc) -> dict[str, set[int]]:
    levels: dict[str, set[int]] = {}
    for m in pc.members:
        root, e = primitive_root(m)
        levels.setdefault(root, set()).add(e)
    return levels


def _has_level_structure(pc) -> bool:
    """Exponent sets are {2..r+1} on every conjugate plus s extras at r+2."""
    l = pc.root_length
    r, s = divmod(pc.t, l)
    base = set(range(2, r + 2))
    extra = base | {r + 2}
    with_extra = 0
    levels = _exponent_levels(pc)
    for exps in levels.values():
        if exps == extra:
            with_extra += 1
        elif exps != base:
            return False
    if l - len(levels) and base:
        return False
    return with_extra == s


def _eval_class_parity(w: str, cfg: SweepConfig) -> _Outcome:
    out = _Outcome()
    even_total = 0
    for pc in class_decomposition(w).classes:
        even_total += len(pc.even)
        t, l = pc.t, pc.root_length
        n_odd, n_even = len(pc.odd), len(pc.even)
        if not n_odd <= n_even <= n_odd + l:
            out.violations.append(
                (w, f"class {pc.root}: |O|={n_odd} |E|={n_even} l={l} breaks parity bounds")
            )
        if 2 * n_odd < t - l:
            out.violations.append(
                (w, f"class {pc.root}: |O|={n_odd} below (t-l)/2 with t={t} l={l}")
            )
        if _has_level_structure(pc):
            if (n_odd, n_even) != odd_even_counts(t, l):
                out.violations.append(
                    (w, f"class {pc.root}: parity counts differ from the level formula")
                )
        else:
            out.flagged.append((w, f"class {pc.root}: exponent levels are not an initial run"))
            out.stats["irregular_classes"] = out.stats.get("irregular_classes", 0) + 1
    sq = distinct_squares(w).count
    if even_total != sq:
        out.violations.append((w, f"even-power total {even_total} differs from Sq={sq}"))
    return out


def _eval_splits(p: str, cfg: SweepConfig) -> _Outcome:
    out = _Outcome()
    m = split_point(p)
    if m is None:
        out.stats["never_splits"] = 1
        return out
    l = len(p)
    if m > l - 2:
        out.violations.append((p, f"splits at {m}, within one of the root length {l}"))
        return out
    parts = decompose_split(p, m)
    lengths = [c.length for c in parts]
    if sum(lengths) != l:
        out.violations.append((p, f"split lengths {lengths} do not sum to {l}"))
    edges = [e for c in parts for e in c.edges]
    if len(edges) != len(set(edges)):
        out.violations.append((p, "split components share an edge"))
    if set(edges) != circular_factors(p, m + 1):
        out.violations.append((p, "split components do not cover the factor set"))
    out.stats["splitting_roots"] = 1
    return out


def _case_by_root(qlen: int, n: int) -> tuple[str, tuple[int, int]]:
    if 4 * qlen <= n:
        return "case2", (8, 13)
    if 3 * qlen <= n:
        return "case3", (3, 5)
    return "unclassified", (1, 0)


def _classify_case(w: str) -> tuple[str, tuple[int, int]]:
    """Which split shape ``w`` has and the (multiplier, bound) pair to assert.

    Returns a label and ``(a, b)`` such that the word must satisfy
    ``a * Sq <= b * n``.  Ties on the n/2 and n/4 thresholds go to the
    stricter bound.
    """
    n = len(w)
    m = split_point(w)
    if m is None or 2 * m <= n:
        return "case1", (2, 3)
    parts = decompose_split(w, m)
    if len(parts) > 2:
        return _case_by_root(min(c.length for c in parts), n)
    parts = sorted(parts, key=lambda c: (-c.length, c.edges))
    q1 = circuit_root(parts[0])
    q2_len = parts[1].length
    m1 = split_point(q1)
    if m1 is None or 2 * m1 <= n:
        return "case1", (2, 3)
    lengths = [c.length for c in decompose_split(q1, m1)] + [q2_len]
    return _case_by_root(min(lengths), n)


def _eval_case_bounds(w: str, cfg: SweepConfig) -> _Outcome:
    out = _Outcome()
    n = len(w)
    label, (a, b) = _classify_case(w)
    out.stats[label] = 1
    if label == "unclassified":
        out.violations.append((w, "no split shape fits; inspect by hand"))
        return out
    s = circular_square_count(w)
    if a * s > b * n:
        out.violations.append((w, f"{label}: Sq={s} exceeds {b}n/{a} with n={n}"))
    return out


def _eval_count_chain(w: str, cfg: SweepConfig) -> _Outcome:
    out = _Outcome()
    n = len(w)
    doubled = w + w
    fac_cache: dict[int, set[str]] = {}

    def fac(m: int) -> set[str]:
        if m not in fac_cache:
            fac_cache[m] = factors(doubled, m)
        return fac_cache[m]

    power_small = 0
    realized = 0
    for pc in class_decomposition(doubled).classes:
        p, l, t = pc.root, pc.root_length, pc.t
        if 2 * l >= n:
            continue
        power_small += t
        for i in range(1, t + 1):
            order = i + l - 1
            if order + 1 > 2 * n:
                continue
            ring = circular_factors(p, order)
            if (
                len(ring) == l
                and ring <= fac(order)
                and circular_factors(p, order + 1) <= fac(order + 1)
            ):
                realized += 1

    small_count = 0
    indep_total = 0
    for order in range(1, n + 1):
        g = build_rauzy_graph(doubled, order)
        try:
            circuits = enumerate_elementary_circuits(g, cfg.circuit_cap)
        except CircuitCapExceeded:
            out.skipped = True
            return out
        small_count += sum(1 for c in circuits if c.length <= order and 2 * c.length < n)
        indep_total += cyclomatic_number(g)

    if power_small != realized:
        out.violations.append(
            (w, f"{power_small} short-rooted powers vs {realized} realized circuits")
        )
    if realized > small_count:
        out.violations.append((w, f"realized={realized} exceeds small count {small_count}"))
    if small_count > indep_total:
        out.violations.append((w, f"small count {small_count} exceeds capacity {indep_total}"))
    if indep_total > 2 * n:
        out.violations.append((w, f"capacity {indep_total} exceeds 2n={2 * n}"))
    out.stats["power_small"] = power_small
    out.stats["small_count"] = small_count
    out.stats["indep_total"] = indep_total
    return out


_EVALUATORS = {
    "bound-5-3": _eval_bound_5_3,
    "bound-nonprimitive": _eval_bound_nonprimitive,
    "circuit-rank": _eval_circuit_rank,
    "class-circuits": _eval_class_circuits,
    "class-parity": _eval_class_parity,
    "splits": _eval_splits,
    "case-bounds": _eval_case_bounds,
    "count-chain": _eval_count_chain,
}


@dataclass(frozen=True)
class _CheckDef:
    mode: str  # "necklace" or "rename"
    stream: str  # "words", "primitive" or "nonprimitive"
    parallel: bool


_CHECK_DEFS = {
    "bound-5-3": _CheckDef("necklace", "words", True),
    "bound-nonprimitive": _CheckDef("necklace", "nonprimitive", False),
    "circuit-rank": _CheckDef("rename", "words", True),
    "class-circuits": _CheckDef("rename", "words", True),
    "class-parity": _CheckDef("rename", "words", True),
    "splits": _CheckDef("necklace", "primitive", False),
    "case-bounds": _CheckDef("necklace", "primitive", True),
    "count-chain": _CheckDef("necklace", "primitive", True),
}


# ---------------------------------------------------------------------------
# enumeration streams


def _iter_nonprimitive(k: int, n: int, canonicalize: bool) -> list[str]:
    words: set[str] = set()
    for l in range(1, n):
        if n % l:
            continue
        e = n // l
        source = _iter_rename_canonical(k, l) if canonicalize else _iter_raw(k, l)
        for u in source:
            if canonicalize and not is_necklace_canonical(u):
                continue
            if is_primitive(u):
                words.add(u * e)
    return sorted(words)


def _stream_items(check_id: str, cfg: SweepConfig, n: int, prefix: str):
    cdef = _CHECK_DEFS[check_id]
    k = cfg.alphabet_size
    if cdef.stream == "nonprimitive":
        yield from _iter_nonprimitive(k, n, cfg.canonicalize)
        return
    if not cfg.canonicalize:
        base = _iter_raw(k, n, prefix)
        necklace = False
    else:
        base = _iter_rename_canonical(k, n, prefix)
        necklace = cdef.mode == "necklace"
    for w in base:
        if necklace and not is_necklace_canonical(w):
            continue
        if cdef.stream == "primitive" and not is_primitive(w):
            continue
        yield w


def _blocks(check_id: str, cfg: SweepConfig, n: int) -> list[str]:
    cdef = _CHECK_DEFS[check_id]
    if cfg.jobs == 1 or not cdef.parallel or n < 3:
        return [""]
    k = cfg.alphabet_size
    depth = 1
    while k**depth < 4 * cfg.jobs and depth < n - 1:
        depth += 1
    if cfg.canonicalize:
        return _rename_prefixes(k, depth)
    return ["".join(t) for t in product(ascii_lowercase[:k], repeat=depth)]


def _run_block(args: tuple[str, SweepConfig, int, str]) -> _Partial:
    check_id, cfg, n, prefix = args
    evaluate = _EVALUATORS[check_id]
    part = _Partial()
    for w in _stream_items(check_id, cfg, n, prefix):
        part.fold(w, evaluate(w, cfg))
    return part


# ---------------------------------------------------------------------------
# checkpointing


class _Checkpoint:
    """Append-only progress file; one record line per (check, k, n) level.

    Lines: a header, then ``R check k n {json}`` progress records (the last
    one per key wins) and ``V``/``F``/``S`` lines replaying violations,
    flags, and skips.  I/O problems are counted and silence further writes;
    the sweep itself continues.
    """

    def __init__(self, path: str) -> None:
        self.path = path
        self.records: dict[tuple[str, int, int], dict] = {}
        self.extras: dict[tuple[str, int, int], list[tuple[str, str, str]]] = {}
        self.io_errors = 0
        self._disabled = False
        self._load()

    def _load(self) -> None:
        try:
            with open(self.path, encoding="ascii") as fh:
                lines = fh.read().splitlines()
        except FileNotFoundError:
            return
        except OSError:
            self.io_errors += 1
            return
        if not lines or lines[0] != _CHECKPOINT_HEADER:
            self.io_errors += 1
            return
        for line in lines[1:]:
            parts = line.split(maxsplit=4)
            if len(parts) != 5:
                continue
            tag, check, k_str, n_str, payload = parts
            try:
                key = (check, int(k_str), int(n_str))
                data = json.loads(payload)
            except (ValueError, json.JSONDecodeError):
                continue
            if tag == "R":
                self.records[key] = data
            elif tag in ("V", "F", "S"):
                entry = (tag, data[0], data[1] if len(data) > 1 else "")
                bucket = self.extras.setdefault(key, [])
                if entry not in bucket:
                    bucket.append(entry)

    def _append(self, line: str) -> None:
        if self._disabled:
            return
        try:
            new = False
            try:
                with open(self.path, encoding="ascii") as fh:
                    has_header = fh.readline().rstrip("\n") == _CHECKPOINT_HEADER
            except FileNotFoundError:
                has_header = False
                new = True
            with open(self.path, "a", encoding="ascii") as fh:
                if new or not has_header:
                    if not new:
                        self._disabled = True
                        self.io_errors += 1
                        return
                    fh.write(_CHECKPOINT_HEADER + "\n")
                fh.write(line + "\n")
        except OSError:
            self.io_errors += 1
            self._disabled = True

    def state(self, key: tuple[str, int, int]) -> dict | None:
        return self.records.get(key)

    def restore(self, key: tuple[str, int, int]) -> tuple[_Partial, str | None]:
        """Rebuild the stored partial result and the last finished word."""
        data = self.records.get(key)
        part = _Partial()
        if data is None:
            return part, None
        part.tested = int(data.get("tested", 0))
        ratio = data.get("ratio")
        witness = data.get("witness")
        if ratio is not None and witness is not None:
            part.best = (Fraction(ratio), witness)
        part.stats = {k: int(v) for k, v in data.get("stats", {}).items()}
        for tag, word, detail in self.extras.get(key, []):
            if tag == "V":
                part.violations.append((word, detail))
            elif tag == "F":
                part.flagged.append((word, detail))
            else:
                part.skipped.append(word)
        return part, data.get("last")

    def save(self, key: tuple[str, int, int], part: _Partial, last: str | None, done: bool) -> None:
        check, k, n = key
        payload = {
            "done": done,
            "tested": part.tested,
            "last": last,
            "ratio": None if part.best is None else str(part.best[0]),
            "witness": None if part.best is None else part.best[1],
            "stats": part.stats,
        }
        self._append(f"R {check} {k} {n} {json.dumps(payload, sort_keys=True)}")
        bucket = self.extras.setdefault(key, [])
        for tag, entries in (("V", part.violations), ("F", part.flagged)):
            for word, detail in entries:
                item = (tag, word, detail)
                if item not in bucket:
                    bucket.append(item)
                    self._append(f"{tag} {check} {k} {n} {json.dumps([word, detail])}")
        for word in part.skipped:
            item = ("S", word, "")
            if item not in bucket:
                bucket.append(item)
                self._append(f"S {check} {k} {n} {json.dumps([word])}")


# ---------------------------------------------------------------------------
# runners


_CHECKPOINT_FLUSH_EVERY = 2000


def run_check(check_id: str, cfg: SweepConfig) -> CheckReport:
    """Run one check over the whole configured range."""
    if check_id == "large-circuit":
        return _run_large_circuit_suite(cfg)
    if check_id not in _CHECK_DEFS:
        raise ValueError(f"unknown check id {check_id!r}")
    evaluate = _EVALUATORS[check_id]
    rep = CheckReport.for_config(check_id, cfg)

    ckpt: _Checkpoint | None = None
    if cfg.checkpoint_path:
        if cfg.jobs == 1:
            ckpt = _Checkpoint(cfg.checkpoint_path)
        else:
            rep.stats["checkpoint_disabled"] = 1

    pool = None
    try:
        for n in range(1, cfg.max_length + 1):
            key = (check_id, cfg.alphabet_size, n)
            if ckpt is not None:
                state = ckpt.state(key)
                if state is not None and state.get("done"):
                    stored, _ = ckpt.restore(key)
                    _fold_partial_into_report(rep, stored)
                    continue

            level = _Partial()
            if cfg.jobs == 1:
                last = None
                if ckpt is not None:
                    level, last = ckpt.restore(key)
                since_flush = 0
                for w in _stream_items(check_id, cfg, n, ""):
                    if last is not None and w <= last:
                        continue
                    level.fold(w, evaluate(w, cfg))
                    last = w
                    since_flush += 1
                    if ckpt is not None and since_flush >= _CHECKPOINT_FLUSH_EVERY:
                        ckpt.save(key, level, last, done=False)
                        since_flush = 0
                if ckpt is not None:
                    ckpt.save(key, level, last, done=True)
            else:
                blocks = _blocks(check_id, cfg, n)
                if len(blocks) == 1:
                    level = _run_block((check_id, cfg, n, blocks[0]))
                else:
                    if pool is None:
                        pool = multiprocessing.Pool(cfg.jobs)
                    for part in pool.map(
                        _run_block, [(check_id, cfg, n, b) for b in blocks]
                    ):
                        level.merge(part)
            _fold_partial_into_report(rep, level)
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    if ckpt is not None and ckpt.io_errors:
        rep.stats["checkpoint_errors"] = ckpt.io_errors
    if cfg.canonicalize and check_id in ("bound-5-3", "bound-nonprimitive"):
        _spot_check_canonicalization(rep, cfg)
    return rep


def _spot_check_canonicalization(rep: CheckReport, cfg: SweepConfig, pairs: int = 1000) -> None:
    """Verify on random pairs that the counted quantity is orbit-invariant.

    Canonical sweeps stand on the square count being identical across a
    word's rotation and renaming orbit; a mismatch here is a violation.
    """
    rng = random.Random(cfg.seed ^ 0x5EED)
    letters = ascii_lowercase[: cfg.alphabet_size]
    for _ in range(pairs):
        n = rng.randint(1, cfg.max_length)
        w = "".join(rng.choice(letters) for _ in range(n))
        rotated = w[n // 2 :] + w[: n // 2]
        table = dict(zip(letters, rng.sample(letters, len(letters))))
        transformed = "".join(table[ch] for ch in rotated)
        if circular_square_count(w) != circular_square_count(transformed):
            rep.violations.append((w, f"count changed under rotation/renaming to {transformed}"))
    rep.stats["canonical_pairs_checked"] = pairs


def run_suite(cfg: SweepConfig) -> SuiteReport:
    """Run every configured check, in the canonical order."""
    return SuiteReport([run_check(cid, cfg) for cid in CHECK_ORDER if cid in cfg.checks])


def check_bound_5_3(cfg: SweepConfig) -> CheckReport:
    return run_check("bound-5-3", cfg)


def check_nonprimitive_bound(cfg: SweepConfig) -> CheckReport:
    return run_check("bound-nonprimitive", cfg)


def check_circuit_rank(cfg: SweepConfig) -> CheckReport:
    return run_check("circuit-rank", cfg)


def check_class_circuits(cfg: SweepConfig) -> CheckReport:
    return run_check("class-circuits", cfg)


def check_class_parity(cfg: SweepConfig) -> CheckReport:
    return run_check("class-parity", cfg)


def check_splits(cfg: SweepConfig) -> CheckReport:
    return run_check("splits", cfg)


def check_case_bounds(cfg: SweepConfig) -> CheckReport:
    return run_check("case-bounds", cfg)


def check_count_chain(cfg: SweepConfig) -> CheckReport:
    return run_check("count-chain", cfg)


# ---------------------------------------------------------------------------
# high-power instances: a long circuit is forced near the top orders

LARGE_CIRCUIT_INSTANCES: tuple[tuple[str, str, int], ...] = (
    ("ababababc", "ab", 4),
    ("abababababc", "ab", 5),
    ("abcabcabcabca", "abc", 4),
    ("abcabcabcabcab", "abc", 4),
    ("aabaabaabaaba", "aab", 4),
)


def _validate_large_circuit_instance(w: str, p: str, k: int) -> None:
    validate_word(w)
    validate_word(p)
    if not is_primitive(p):
        raise ValueError(f"hypothesis failed: p={p!r} is not primitive")
    if k < 4:
        raise ValueError(f"hypothesis failed: k={k} is below 4")
    n, l = len(w), len(p)
    r = n - k * l
    if not 0 < r < l:
        raise ValueError(f"hypothesis failed: n - k*l = {r} is not strictly between 0 and {l}")
    if p * k not in w + w:
        raise ValueError(f"hypothesis failed: p^{k} is not a circular factor of {w!r}")


def check_large_circuit(w: str, p: str, k: int, circuit_cap: int = 1_000_000) -> CheckReport:
    """Verify rank deficiency of the short-circuit span at the top orders.

    ``w`` must contain ``p ** k`` circularly with ``k >= 4`` and
    ``0 < len(w) - k * len(p) < len(p)``.  On the doubled word, for each
    order in the top ``len(p)`` band, the circuits of length at most n/2
    must span strictly less than the full cycle space.
    """
    _validate_large_circuit_instance(w, p, k)
    n, l = len(w), len(p)
    rep = CheckReport(
        check_id="large-circuit",
        alphabet_size=len(set(w)),
        max_length=n,
        canonicalize=False,
        seed=0,
        jobs=1,
    )
    doubled = w + w
    for order in range(n - l + 1, n + 1):
        g = build_rauzy_graph(doubled, order)
        circuits = enumerate_elementary_circuits(g, circuit_cap)
        short = [c for c in circuits if 2 * c.length <= n]
        rank = independent_rank([vector_cycle(c, g) for c in short]) if short else 0
        chi = cyclomatic_number(g)
        if rank >= chi:
            rep.violations.append(
                (w, f"order {order}: short circuits span rank {rank} of chi {chi}")
            )
        rep.stats["orders_checked"] = rep.stats.get("orders_checked", 0) + 1
    rep.words_tested = 1
    return rep


def _run_large_circuit_suite(cfg: SweepConfig) -> CheckReport:
    rep = CheckReport.for_config("large-circuit", cfg)
    for w, p, k in LARGE_CIRCUIT_INSTANCES:
        sub = check_large_circuit(w, p, k, cfg.circuit_cap)
        rep.words_tested += sub.words_tested
        rep.violations.extend(sub.violations)
        for key, val in sub.stats.items():
            rep.stats[key] = rep.stats.get(key, 0) + val
    return rep


# ---------------------------------------------------------------------------
# extremal search


def search_extremal(n: int, k: int, budget: int = 100_000, seed: int = 0) -> CheckReport:
    """Find a word of length ``n`` over ``k`` letters with many circular squares.

    Exhaustive over canonical representatives when ``k ** n`` fits the
    budget; otherwise steepest-ascent hill climbing on single-symbol
    substitutions with seeded random restarts.  The best ratio found must
    stay within 5/3; whether it passes 5/4 or 3/2 is recorded.
    """
    if n < 1:
        raise ValueError("length must be at least 1")
    if not 1 <= k <= 26:
        raise ValueError(f"alphabet size {k} out of range 1..26")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    rep = CheckReport(
        check_id="search",
        alphabet_size=k,
        max_length=n,
        canonicalize=True,
        seed=seed,
        jobs=1,
    )
    best_count = -1
    best_word: str | None = None
    evaluations = 0

    def consider(word: str, count: int) -> None:
        nonlocal best_count, best_word
        if count > best_count or (count == best_count and word < (best_word or word + "a")):
            best_count, best_word = count, word

    if k**n <= budget:
        rep.stats["exhaustive"] = 1
        for w in _iter_rename_canonical(k, n):
            if not is_necklace_canonical(w):
                continue
            evaluations += 1
            consider(w, circular_square_count(w))
    else:
        rep.stats["exhaustive"] = 0
        rng = random.Random(seed)
        letters = ascii_lowercase[:k]
        while evaluations < budget:
            w = "".join(rng.choice(letters) for _ in range(n))
            s = circular_square_count(w)
            evaluations += 1
            consider(w, s)
            improved = True
            while improved and evaluations < budget:
                improved = False
                cand_count, cand_word = s, w
                for pos in range(n):
                    for ch in letters:
                        if ch == w[pos]:
                            continue
                        w2 = w[:pos] + ch + w[pos + 1 :]
                        s2 = circular_square_count(w2)
                        evaluations += 1
                        consider(w2, s2)
                        if s2 > cand_count:
                            cand_count, cand_word = s2, w2
                        if evaluations >= budget:
                            break
                    if evaluations >= budget:
                        break
                if cand_count > s:
                    s, w = cand_count, cand_word
                    improved = True

    rep.words_tested = evaluations
    rep.max_ratio = Fraction(best_count, n)
    rep.witness = best_word
    if 3 * best_count > 5 * n:
        rep.violations.append((best_word or "", f"Sq={best_count} exceeds 5n/3 with n={n}"))
    rep.stats["evaluations"] = evaluations
    rep.stats["best_count"] = best_count
    rep.stats["above_5_4"] = int(4 * best_count > 5 * n)
    rep.stats["above_3_2"] = int(2 * best_count > 3 * n)
    return rep
