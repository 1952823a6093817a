"""Rigged configurations: data model, vacancy numbers, validity, enumeration.

A rigged configuration consists of a quantum space (an ordered composition)
and, for each a = 1..n-1, a list of rows (length, rigging).  The stored order
of the quantum space is the processing order of the bijection: the rightmost
stored row is consumed first and its tableau sits rightmost in the path.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from .errors import CapExceededError, ValidationError

Row = tuple[int, int]
Layer = tuple[Row, ...]


def _normalized_layer(rows: Sequence[Sequence[int]]) -> tuple[Layer, bool]:
    rows = tuple((int(l), int(r)) for l, r in rows)
    ok = True
    for (l1, r1), (l2, r2) in zip(rows, rows[1:]):
        if l1 == l2 and r1 > r2:
            ok = False
            break
    if ok:
        return rows, False
    return tuple(sorted(rows, key=lambda row: (-row[0], row[1]))), True


@dataclass(frozen=True)
class RiggedConfiguration:
    """Quantum space plus rigged layers for a = 1..n-1."""

    n: int
    quantum: tuple[int, ...]
    layers: tuple[Layer, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("alphabet size must be >= 1")
        object.__setattr__(self, "quantum", tuple(int(q) for q in self.quantum))
        if any(q < 1 for q in self.quantum):
            raise ValueError("quantum space rows must be positive")
        if len(self.layers) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} layers, got {len(self.layers)}")
        normalized = []
        touched = False
        for rows in self.layers:
            rows, changed = _normalized_layer(rows)
            touched = touched or changed
            for l, r in rows:
                if l < 1:
                    raise ValueError("layer rows must have positive length")
                if r < 0:
                    raise ValueError("riggings must be nonnegative")
            normalized.append(rows)
        if touched:
            warnings.warn(
                "layer rows reordered to make equal-length riggings weakly increasing",
                stacklevel=2,
            )
        object.__setattr__(self, "layers", tuple(normalized))

    @classmethod
    def from_json(cls, text: str) -> "RiggedConfiguration":
        doc = json.loads(text)
        return cls(
            n=doc["n"],
            quantum=tuple(doc["quantum"]),
            layers=tuple(tuple(tuple(row) for row in layer["rows"]) for layer in doc["layers"]),
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "quantum": list(self.quantum),
                "layers": [{"rows": [list(row) for row in layer]} for layer in self.layers],
            }
        )

    def layer_lengths(self, a: int) -> tuple[int, ...]:
        """Row lengths of mu^(a); a = 0 reads the quantum space."""
        if a == 0:
            return self.quantum
        if a >= self.n:
            return ()
        return tuple(l for l, _ in self.layers[a - 1])


def _q_of(lengths: Sequence[int], j: int) -> int:
    return sum(min(j, l) for l in lengths)


def q_value(rc: RiggedConfiguration, a: int, j: int) -> int:
    """Number of boxes of mu^(a) in columns <= j (Q^(a)_j)."""
    if not 0 <= a <= rc.n:
        raise ValueError(f"level {a} outside 0..{rc.n}")
    if j < 0:
        raise ValueError("column must be nonnegative")
    return _q_of(rc.layer_lengths(a), j)


def vacancy(rc: RiggedConfiguration, a: int, j: int) -> int:
    """Vacancy number p^(a)_j = Q^(a-1)_j - 2 Q^(a)_j + Q^(a+1)_j."""
    if not 1 <= a <= rc.n - 1:
        raise ValueError(f"layer {a} outside 1..{rc.n - 1}")
    return q_value(rc, a - 1, j) - 2 * q_value(rc, a, j) + q_value(rc, a + 1, j)


def validate(rc: RiggedConfiguration) -> str | None:
    """None if rc is a valid rigged configuration, else the first violation."""
    for a in range(1, rc.n):
        for i, (l, r) in enumerate(rc.layers[a - 1]):
            p = vacancy(rc, a, l)
            if p < 0:
                return f"layer {a} row {i} (length {l}): vacancy {p} < 0"
            if r > p:
                return f"layer {a} row {i} (length {l}): rigging {r} > vacancy {p}"
    return None


def is_valid(rc: RiggedConfiguration) -> bool:
    return validate(rc) is None


def is_singular(rc: RiggedConfiguration, a: int, i: int) -> bool:
    """True iff the rigging of row i of layer a equals its vacancy number."""
    l, r = rc.layers[a - 1][i]
    return r == vacancy(rc, a, l)


def restrict(rc: RiggedConfiguration, a: int) -> RiggedConfiguration:
    """Drop levels below a: layer a becomes the quantum space.

    The result is an sl_(n-a) rigged configuration; its letters are shifted
    to {a+1..n} by downstream consumers.  Riggings of layer a are not part of
    the restriction; callers that need them read rc.layers[a-1] directly.
    """
    if not 0 <= a <= rc.n - 1:
        raise ValueError(f"level {a} outside 0..{rc.n - 1}")
    if a == 0:
        return rc
    return RiggedConfiguration(
        n=rc.n - a,
        quantum=rc.layer_lengths(a),
        layers=rc.layers[a:],
    )


def with_quantum_order(rc: RiggedConfiguration, order: Sequence[int]) -> RiggedConfiguration:
    """Reorder the quantum space; order[i] is the stored index moved to slot i."""
    if sorted(order) != list(range(len(rc.quantum))):
        raise ValueError("order must be a permutation of the quantum row indices")
    return RiggedConfiguration(rc.n, tuple(rc.quantum[i] for i in order), rc.layers)


def _partitions(max_total: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """All partitions (weakly decreasing) with total <= max_total, parts <= max_part."""

    def rec(remaining: int, cap: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        yield acc
        for part in range(min(cap, remaining), 0, -1):
            yield from rec(remaining - part, part, acc + (part,))

    yield from rec(max_total, max_part, ())


def _compositions(max_total: int, max_part: int) -> Iterator[tuple[int, ...]]:
    def rec(remaining: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        yield acc
        for part in range(1, min(max_part, remaining) + 1):
            yield from rec(remaining - part, acc + (part,))

    yield from rec(max_total, ())


def _rigging_choices(lengths: tuple[int, ...], bounds: list[int]) -> Iterator[tuple[int, ...]]:
    """All admissible rigging vectors, weakly increasing on equal-length runs."""
    groups: list[tuple[int, int]] = []  # (start, stop) of equal-length runs
    start = 0
    for i in range(1, len(lengths) + 1):
        if i == len(lengths) or lengths[i] != lengths[start]:
            groups.append((start, i))
            start = i

    def rec(gi: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if gi == len(groups):
            yield acc
            return
        lo, hi = groups[gi]
        bound = bounds[lo]  # equal lengths share the vacancy number
        for riggs in combinations_with_replacement(range(bound + 1), hi - lo):
            yield from rec(gi + 1, acc + riggs)

    yield from rec(0, ())


def enumerate_rcs(
    n: int,
    max_quantum_boxes: int,
    max_row_len: int,
    *,
    cap: int = 1_000_000,
    include_empty_quantum: bool = False,
) -> Iterator[RiggedConfiguration]:
    """Yield every valid rigged configuration within the given bounds.

    The quantum space ranges over all compositions of total <= max_quantum_boxes
    with parts <= max_row_len; layer shapes over nested partitions (a valid
    configuration can never have more boxes in a layer than in the level
    above); riggings over every admissible assignment.  Deterministic order.
    """
    if n < 2:
        raise ValueError("enumeration needs n >= 2")
    count = 0
    for quantum in _compositions(max_quantum_boxes, max_row_len):
        if not quantum and not include_empty_quantum:
            continue
        for rc in _enumerate_layers(n, quantum, max_row_len):
            count += 1
            if count > cap:
                raise CapExceededError(f"enumeration exceeded cap of {cap} configurations")
            yield rc


def _enumerate_layers(
    n: int, quantum: tuple[int, ...], max_row_len: int
) -> Iterator[RiggedConfiguration]:
    lengths_by_level: list[tuple[int, ...]] = [()] * (n - 1)

    def vacancies_for(level: int) -> list[int] | None:
        """Vacancy per row of layer `level`, once layers level and level+1 are set."""
        above = quantum if level == 1 else lengths_by_level[level - 2]
        here = lengths_by_level[level - 1]
        below = lengths_by_level[level] if level < n - 1 else ()
        out = []
        for l in here:
            p = _q_of(above, l) - 2 * _q_of(here, l) + _q_of(below, l)
            if p < 0:
                return None
            out.append(p)
        return out

    def rec(level: int) -> Iterator[RiggedConfiguration]:
        if level == n:
            # all shapes fixed and vacancy-checked; assign riggings
            all_bounds = [vacancies_for(a) for a in range(1, n)]
            yield from _assign_riggings(n, quantum, lengths_by_level, all_bounds)
            return
        prev_total = sum(quantum) if level == 1 else sum(lengths_by_level[level - 2])
        for shape in _partitions(prev_total, max_row_len):
            lengths_by_level[level - 1] = shape
            # choosing layer `level` pins the vacancies of layer `level - 1`
            if level >= 2 and vacancies_for(level - 1) is None:
                continue
            if level == n - 1 and shape and vacancies_for(level) is None:
                continue
            yield from rec(level + 1)
        lengths_by_level[level - 1] = ()

    yield from rec(1)


def _assign_riggings(
    n: int,
    quantum: tuple[int, ...],
    lengths_by_level: list[tuple[int, ...]],
    all_bounds: list[list[int] | None],
) -> Iterator[RiggedConfiguration]:
    if any(b is None for b in all_bounds):
        return

    def rec(level: int, acc: list[Layer]) -> Iterator[RiggedConfiguration]:
        if level == n:
            yield RiggedConfiguration(n, quantum, tuple(acc))
            return
        lengths = lengths_by_level[level - 1]
        bounds = all_bounds[level - 1]
        assert bounds is not None
        for riggs in _rigging_choices(lengths, bounds):
            acc.append(tuple(zip(lengths, riggs)))
            yield from rec(level + 1, acc)
            acc.pop()

    yield from rec(1, [])


def enumerate_rcs_bruteforce(
    n: int, max_quantum_boxes: int, max_row_len: int
) -> Iterator[RiggedConfiguration]:
    """Independent oracle enumerator: no pruning, filter by validity afterwards.

    Deliberately structured differently from enumerate_rcs: every combination
    of layer shapes bounded only by the quantum total is generated, riggings
    range over 0..vacancy without grouping shortcuts, and candidates are kept
    only if they pass validate().
    """
    if n < 2:
        raise ValueError("enumeration needs n >= 2")
    for quantum in _compositions(max_quantum_boxes, max_row_len):
        if not quantum:
            continue
        shapes_pool = list(_partitions(sum(quantum), max_row_len))

        def shapes_rec(level: int, acc: list[tuple[int, ...]]) -> Iterator[RiggedConfiguration]:
            if level == n:
                yield from _brute_riggings(n, quantum, acc)
                return
            for shape in shapes_pool:
                acc.append(shape)
                yield from shapes_rec(level + 1, acc)
                acc.pop()

        yield from shapes_rec(1, [])


def _brute_riggings(
    n: int, quantum: tuple[int, ...], shapes: list[tuple[int, ...]]
) -> Iterator[RiggedConfiguration]:
    bounds: list[list[int]] = []
    for a in range(1, n):
        above = quantum if a == 1 else shapes[a - 2]
        here = shapes[a - 1]
        below = shapes[a] if a < n - 1 else ()
        level_bounds = []
        for l in here:
            p = _q_of(above, l) - 2 * _q_of(here, l) + _q_of(below, l)
            if p < 0:
                return
            level_bounds.append(p)
        bounds.append(level_bounds)

    def rec(a: int, acc: list[Layer]) -> Iterator[RiggedConfiguration]:
        if a == n:
            rc = RiggedConfiguration(n, quantum, tuple(acc))
            if is_valid(rc):
                yield rc
            return
        lengths = shapes[a - 1]

        def rows_rec(i: int, row_acc: list[Row]) -> Iterator[RiggedConfiguration]:
            if i == len(lengths):
                acc.append(tuple(row_acc))
                yield from rec(a + 1, acc)
                acc.pop()
                return
            for r in range(bounds[a - 1][i] + 1):
                if i > 0 and lengths[i] == lengths[i - 1] and r < row_acc[-1][1]:
                    continue  # canonical order on equal-length rows
                row_acc.append((lengths[i], r))
                yield from rows_rec(i + 1, row_acc)
                row_acc.pop()

        yield from rows_rec(0, [])

    yield from rec(1, [])
