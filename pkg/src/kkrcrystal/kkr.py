"""The forward KKR bijection and its Case-2 scattering-data extraction.

The bijection consumes quantum-space rows from the rightmost stored row to
the leftmost, box by box from the right.  For each removed box a chain of
boxes is selected down the layers (choose a shortest singular row wide
enough, remove its rightmost box), the letter produced is one more than the
deepest layer reached, and riggings of shortened rows are reset to their new
vacancy numbers.

Scattering data is read off the same machinery: the mode of the next factor
is max_i { Q^(a)_w - Q^(a+1)_w + r_i } over the remaining rows of layer a,
and the factor itself is the tableau obtained by removing the chosen row
first from the level-a restriction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .crystals import Tableau, TensorWord, AffineFactor, is_highest
from .errors import AlgorithmInvariantError, ValidationError
from .rigged import RiggedConfiguration, q_value, restrict, validate
from .scattering import ScatteringData

Box = tuple[int, int, int]  # (layer, stable row id, column)


@dataclass(frozen=True)
class RowRemoval:
    """Record of one quantum-space row passing through the bijection."""

    row_id: int  # stored index of the quantum row (layer-a row for scattering)
    width: int
    letters: tuple[int, ...]
    boxes: tuple[tuple[Box, ...], ...]  # per removed quantum box, deepest last

    def delta_q(self, layer: int, column: int) -> int:
        """Boxes removed from the given layer in columns <= column."""
        return sum(
            1 for chain in self.boxes for (a, _, c) in chain if a == layer and c <= column
        )


@dataclass(frozen=True)
class KkrTrace:
    """All row removals of one bijection run, in processing order.

    Display positions run opposite to processing order: removal k produced
    the factor at display position N-1-k.
    """

    removals: tuple[RowRemoval, ...]

    def removal_at_display(self, pos: int) -> RowRemoval:
        return self.removals[len(self.removals) - 1 - pos]

    def to_json(self) -> str:
        return json.dumps(
            [
                {
                    "row_id": rem.row_id,
                    "width": rem.width,
                    "letters": list(rem.letters),
                    "boxes": [[list(box) for box in chain] for chain in rem.boxes],
                }
                for rem in self.removals
            ]
        )


def delta_q(trace: KkrTrace, layer: int, column: int, removal_index: int) -> int:
    """Q^(layer)_column difference across one traced quantum-row removal."""
    return trace.removals[removal_index].delta_q(layer, column)


class _State:
    """Mutable working copy: quantum row lengths plus rigged layers."""

    __slots__ = ("quantum", "layers", "row_ids")

    def __init__(self, quantum: Sequence[int], layers) -> None:
        self.quantum = list(quantum)
        self.layers = [[[l, r] for l, r in layer] for layer in layers]
        self.row_ids = [list(range(len(layer))) for layer in self.layers]

    def copy(self) -> "_State":
        st = _State.__new__(_State)
        st.quantum = list(self.quantum)
        st.layers = [[row[:] for row in layer] for layer in self.layers]
        st.row_ids = [ids[:] for ids in self.row_ids]
        return st

    def q(self, a: int, j: int) -> int:
        if a == 0:
            return sum(min(j, l) for l in self.quantum)
        if a > len(self.layers):
            return 0
        return sum(min(j, row[0]) for row in self.layers[a - 1])

    def vac(self, a: int, j: int) -> int:
        return self.q(a - 1, j) - 2 * self.q(a, j) + self.q(a + 1, j)

    def prune(self) -> None:
        for a, layer in enumerate(self.layers):
            keep = [i for i, row in enumerate(layer) if row[0] > 0]
            self.layers[a] = [layer[i] for i in keep]
            self.row_ids[a] = [self.row_ids[a][i] for i in keep]


TieBreak = Callable[[int, list[int], list[list[int]]], int]


def _rule1_first(layer: int, candidates: list[int], rows: list[list[int]]) -> int:
    return min(candidates, key=lambda i: (rows[i][0], i))


def _remove_quantum_row(
    state: _State, idx: int, rule1: TieBreak = _rule1_first
) -> tuple[list[int], list[tuple[Box, ...]]]:
    """Remove quantum row idx box by box; returns (letters, per-box chains)."""
    width = state.quantum[idx]
    letters: list[int] = []
    records: list[tuple[Box, ...]] = []
    last_col_per_layer: dict[int, int] = {}
    for _ in range(width):
        col = state.quantum[idx]
        # select the whole chain against the frozen state, then remove
        chain: list[tuple[int, int, int]] = []
        prev_col = col
        for a in range(1, len(state.layers) + 1):
            rows = state.layers[a - 1]
            candidates = [
                i for i, (l, r) in enumerate(rows) if l >= prev_col and r == state.vac(a, l)
            ]
            if not candidates:
                break
            pick = rule1(a, candidates, rows)
            chain.append((a, pick, rows[pick][0]))
            prev_col = rows[pick][0]
        state.quantum[idx] -= 1
        for a, i, _ in chain:
            state.layers[a - 1][i][0] -= 1
        for a, i, _ in chain:
            new_len = state.layers[a - 1][i][0]
            if new_len > 0:
                state.layers[a - 1][i][1] = state.vac(a, new_len)
        for a, _, c in chain:
            if a in last_col_per_layer and c >= last_col_per_layer[a]:
                raise AlgorithmInvariantError(
                    f"column monotonicity broken in layer {a}: {c} after {last_col_per_layer[a]}"
                )
            last_col_per_layer[a] = c
        letters.append(len(chain) + 1)
        records.append(tuple((a, state.row_ids[a - 1][i], c) for a, i, c in chain))
    if letters != sorted(letters):
        raise AlgorithmInvariantError(f"letters not weakly increasing: {letters}")
    del state.quantum[idx]
    state.prune()
    return letters, records


def kkr_forward(
    rc: RiggedConfiguration, *, rule1: TieBreak = _rule1_first
) -> tuple[TensorWord, KkrTrace]:
    """Map a valid rigged configuration to its highest-weight path.

    The path has one factor per quantum row, in stored display order; the
    rightmost stored row is consumed first and its tableau sits rightmost.
    """
    msg = validate(rc)
    if msg is not None:
        raise ValidationError(msg)
    state = _State(rc.quantum, rc.layers)
    factors: list[Tableau] = []
    removals: list[RowRemoval] = []
    for pos in range(len(rc.quantum) - 1, -1, -1):
        width = state.quantum[-1]
        letters, records = _remove_quantum_row(state, len(state.quantum) - 1, rule1)
        factors.append(Tableau.from_letters(letters, rc.n))
        removals.append(
            RowRemoval(row_id=pos, width=width, letters=tuple(letters), boxes=tuple(records))
        )
    if any(layer for layer in state.layers):
        raise AlgorithmInvariantError("layers not exhausted after consuming the quantum space")
    path = TensorWord(tuple(reversed(factors)), rc.n)
    if not is_highest(path):
        raise AlgorithmInvariantError(f"KKR produced a non-highest path {path}")
    return path, KkrTrace(tuple(removals))


def kkr_forward_all_rule1_ties(rc: RiggedConfiguration, *, cap: int = 20000) -> set[str]:
    """Serialized paths over every Rule-1 tie choice (small instances only)."""
    msg = validate(rc)
    if msg is not None:
        raise ValidationError(msg)
    results: set[str] = set()
    visited = 0

    def remove_row_branching(state: _State, letters: list[int], done_paths: list[Tableau]):
        nonlocal visited
        visited += 1
        if visited > cap:
            raise AlgorithmInvariantError("tie exploration exceeded cap")
        if not state.quantum:
            results.add(str(TensorWord(tuple(reversed(done_paths)), rc.n)))
            return
        idx = len(state.quantum) - 1
        col = state.quantum[idx]
        # enumerate full chains recursively
        def chains(a: int, prev_col: int, acc: list[tuple[int, int, int]]):
            if a > len(state.layers):
                yield list(acc)
                return
            rows = state.layers[a - 1]
            candidates = [
                i for i, (l, r) in enumerate(rows) if l >= prev_col and r == state.vac(a, l)
            ]
            if not candidates:
                yield list(acc)
                return
            shortest = min(rows[i][0] for i in candidates)
            for i in [i for i in candidates if rows[i][0] == shortest]:
                acc.append((a, i, rows[i][0]))
                yield from chains(a + 1, rows[i][0], acc)
                acc.pop()

        for chain in chains(1, col, []):
            st = state.copy()
            st.quantum[idx] -= 1
            for a, i, _ in chain:
                st.layers[a - 1][i][0] -= 1
            for a, i, _ in chain:
                new_len = st.layers[a - 1][i][0]
                if new_len > 0:
                    st.layers[a - 1][i][1] = st.vac(a, new_len)
            new_letters = letters + [len(chain) + 1]
            if st.quantum[idx] == 0:
                del st.quantum[idx]
                st.prune()
                remove_row_branching(
                    st, [], done_paths + [Tableau.from_letters(new_letters, rc.n)]
                )
            else:
                st.prune()
                remove_row_branching(st, new_letters, done_paths)

    remove_row_branching(_State(rc.quantum, rc.layers), [], [])
    return results


def mode_formula(rc: RiggedConfiguration, a: int) -> tuple[int, tuple[int, ...]]:
    """max_i { Q^(a)_w - Q^(a+1)_w + r_i } over rows of layer a, with argmax.

    Works on any (possibly partially removed) configuration; the quantum
    space does not enter the formula.
    """
    rows = rc.layers[a - 1] if 1 <= a <= rc.n - 1 else ()
    if not rows:
        raise ValueError(f"layer {a} is empty")
    best: int | None = None
    argmax: list[int] = []
    for i, (l, r) in enumerate(rows):
        t = q_value(rc, a, l) - q_value(rc, a + 1, l) + r
        if best is None or t > best:
            best, argmax = t, [i]
        elif t == best:
            argmax.append(i)
    assert best is not None
    return best, tuple(argmax)


RowInfo = tuple[int, int, int]  # (original layer-a row index, length, rigging)


def _longest_then_first(candidates: list[RowInfo]) -> int:
    return max(range(len(candidates)), key=lambda i: (candidates[i][1], -candidates[i][0]))


def _case2_runs(
    rc: RiggedConfiguration,
    a: int,
    *,
    all_choices: bool,
    chooser: Callable[[list[RowInfo]], int] | None = None,
) -> Iterator[tuple[ScatteringData, KkrTrace]]:
    msg = validate(rc)
    if msg is not None:
        raise ValidationError(msg)
    if not 1 <= a <= rc.n - 1:
        raise ValueError(f"level {a} outside 1..{rc.n - 1}")
    if not rc.layers[a - 1]:
        yield ScatteringData(a, rc.n, ()), KkrTrace(())
        return
    restricted = restrict(rc, a)
    base = _State(restricted.quantum, restricted.layers)
    metas: list[RowInfo] = [
        (i, l, r) for i, (l, r) in enumerate(rc.layers[a - 1])
    ]
    n_res = rc.n - a

    def dfs(
        state: _State,
        remaining: list[RowInfo],
        acc: list[tuple[AffineFactor, RowRemoval]],
        prev_mode: int | None,
    ) -> Iterator[tuple[ScatteringData, KkrTrace]]:
        if not remaining:
            factors = tuple(f for f, _ in reversed(acc))
            trace = KkrTrace(tuple(rem for _, rem in acc))
            yield ScatteringData(a, rc.n, factors), trace
            return
        values = [
            state.q(0, l) - state.q(1, l) + r for (_, l, r) in remaining
        ]
        d = max(values)
        if prev_mode is not None and d > prev_mode:
            raise AlgorithmInvariantError(
                f"modes increased during Case-2 extraction: {d} after {prev_mode}"
            )
        cand_positions = [i for i, v in enumerate(values) if v == d]
        if all_choices:
            picks = cand_positions
        else:
            cands = [remaining[i] for i in cand_positions]
            sel = (chooser or _longest_then_first)(cands)
            picks = [cand_positions[sel]]
        for pos in picks:
            st = state.copy()
            rem_rows = list(remaining)
            orig_idx, width, _ = rem_rows.pop(pos)
            letters, records = _remove_quantum_row(st, pos)
            tab = Tableau.from_letters(letters, n_res).shift(a, rc.n)
            removal = RowRemoval(
                row_id=orig_idx, width=width, letters=tuple(letters), boxes=tuple(records)
            )
            yield from dfs(st, rem_rows, acc + [(AffineFactor(tab, d), removal)], d)

    yield from dfs(base, metas, [], None)


def kkr_scattering(
    rc: RiggedConfiguration,
    a: int,
    *,
    chooser: Callable[[list[RowInfo]], int] | None = None,
) -> tuple[ScatteringData, KkrTrace]:
    """KKR normal ordered product at level a (Case-2 extraction).

    Factors are displayed with modes weakly increasing left to right; the
    rightmost factor was removed first.  Ties between simultaneously singular
    rows default to the longest row, then the smallest stored index; pass a
    chooser to override.  Trace layers are relative to the restriction
    (layer 1 is the level directly below a).
    """
    return next(_case2_runs(rc, a, all_choices=False, chooser=chooser))


def kkr_scattering_all(
    rc: RiggedConfiguration, a: int
) -> list[tuple[ScatteringData, KkrTrace]]:
    """Every Case-2 output over all tie choices, in deterministic DFS order."""
    return list(_case2_runs(rc, a, all_choices=True))
