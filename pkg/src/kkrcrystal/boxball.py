"""Box-ball states, carrier time evolution and soliton extraction.

A state is a finite word over {1..n} sitting in an infinite sea of 1s.  One
time step sweeps a large-capacity carrier across the word via the R matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .crystals import Tableau, TensorWord, r_matrix
from .errors import CapExceededError, NotSeparatedError


@dataclass(frozen=True)
class BoxBallState:
    """Finite cell word with implicit background letter 1 on both sides."""

    cells: tuple[int, ...]
    n: int
    time: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        if self.n < 1:
            raise ValueError("alphabet size must be >= 1")
        for x in self.cells:
            if not 1 <= x <= self.n:
                raise ValueError(f"cell letter {x} outside 1..{self.n}")

    @classmethod
    def from_string(cls, text: str, n: int | None = None, time: int = 0) -> "BoxBallState":
        text = text.strip()
        if "," in text:
            cells = tuple(int(tok) for tok in text.split(",") if tok)
        else:
            cells = tuple(int(ch) for ch in text)
        if n is None:
            n = max(cells, default=1)
        return cls(cells, n, time)

    def to_string(self) -> str:
        if self.n <= 9:
            return "".join(str(x) for x in self.cells)
        return ",".join(str(x) for x in self.cells)

    def ball_count(self) -> int:
        return sum(1 for x in self.cells if x != 1)

    def __str__(self) -> str:
        return self.to_string()


def from_path(path: TensorWord) -> BoxBallState:
    """Identify a path of capacity-1 factors with a box-ball state."""
    letters = []
    for f in path.factors:
        if f.capacity != 1:
            raise ValueError("only paths of capacity-1 factors map to states")
        letters.append(f.letters()[0])
    return BoxBallState(tuple(letters), path.n)


def evolve(state: BoxBallState, carrier_capacity: int | None = None) -> BoxBallState:
    """One time step: sweep a carrier of the given capacity left to right.

    Default capacity is the number of non-background cells (full evolution).
    The carrier must return to pure background by the end of the padded scan;
    trailing padding is extended geometrically up to 16x the occupied span.
    """
    n = state.n
    if carrier_capacity is None:
        carrier_capacity = max(1, state.ball_count())
    if carrier_capacity < 1:
        raise ValueError("carrier capacity must be >= 1")
    carrier = Tableau.pure(1, carrier_capacity, n)
    out: list[int] = []
    for x in state.cells:
        cell_out, carrier, _ = r_matrix(carrier, Tableau.pure(x, 1, n))
        out.append(cell_out.letters()[0])
    span = max(1, len(state.cells))
    pad_cap = 16 * span
    background = Tableau.pure(1, carrier_capacity, n)
    pad_used = 0
    one = Tableau.pure(1, 1, n)
    while carrier != background:
        if pad_used >= pad_cap:
            raise CapExceededError(
                f"carrier failed to empty within {pad_cap} padding cells"
            )
        cell_out, carrier, _ = r_matrix(carrier, one)
        out.append(cell_out.letters()[0])
        pad_used += 1
    last = max(
        (i for i, x in enumerate(out) if x != 1), default=-1
    )
    keep = max(len(state.cells), last + 1)
    cells = tuple(out[:keep]) + (1,) * max(0, keep - len(out))
    return BoxBallState(cells, n, state.time + 1)


def _runs(cells: tuple[int, ...]) -> list[tuple[int, list[int]]]:
    runs: list[tuple[int, list[int]]] = []
    i = 0
    while i < len(cells):
        if cells[i] != 1:
            j = i
            while j < len(cells) and cells[j] != 1:
                j += 1
            runs.append((i, list(cells[i:j])))
            i = j
        else:
            i += 1
    return runs


def is_separated(state: BoxBallState) -> bool:
    """Gaps between consecutive runs must be at least the left run's length."""
    runs = _runs(state.cells)
    for (start1, body1), (start2, _) in zip(runs, runs[1:]):
        if start2 - (start1 + len(body1)) < len(body1):
            return False
    return True


def solitons(state: BoxBallState) -> list[Tableau]:
    """Maximal non-background runs, letters sorted, left to right.

    Raises NotSeparatedError when the state is not well separated.
    """
    if not is_separated(state):
        raise NotSeparatedError(f"state {state} is not well separated")
    return [
        Tableau.from_letters(sorted(body), state.n) for _, body in _runs(state.cells)
    ]


def trajectory(
    state: BoxBallState, steps: int, carrier_capacity: int | None = None
) -> list[BoxBallState]:
    """The state followed by its next `steps` evolutions."""
    out = [state]
    for _ in range(steps):
        out.append(evolve(out[-1], carrier_capacity))
    return out


def evolve_many(
    state: BoxBallState, steps: int, carrier_capacity: int | None = None
) -> BoxBallState:
    for _ in range(steps):
        state = evolve(state, carrier_capacity)
    return state
