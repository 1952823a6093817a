"""Scattering data: modes from riggings, normal ordering, the c word and phi.

Display convention throughout: factors are listed left to right and a normal
ordered datum has weakly increasing modes left to right; the rightmost factor
carries the largest mode.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .crystals import (
    AffineFactor,
    Tableau,
    TensorWord,
    affine_r,
    energy,
    r_matrix,
)
from .errors import (
    AlgorithmInvariantError,
    CapExceededError,
    NormalOrderError,
    ResidueError,
    ValidationError,
)
from .rigged import RiggedConfiguration, restrict, validate

_FACTOR_RE = re.compile(r"^(?P<word>[0-9,]+)\[(?P<mode>-?\d+)\]$")


@dataclass(frozen=True)
class ScatteringData:
    """Element of an affinized tensor product at level a (letters a+1..n)."""

    level: int
    n: int
    factors: tuple[AffineFactor, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if not 0 <= self.level <= self.n - 1:
            raise ValueError(f"level {self.level} outside 0..{self.n - 1}")
        for f in self.factors:
            if f.tableau.n != self.n:
                raise ValueError("factor alphabet mismatch")
            if any(f.tableau.counts[i] for i in range(self.level)):
                raise ValueError(
                    f"factor {f.tableau} uses letters <= level {self.level}"
                )

    @classmethod
    def parse(cls, text: str, n: int, level: int | None = None) -> "ScatteringData":
        factors = []
        for tok in text.strip().split("*"):
            m = _FACTOR_RE.match(tok.strip())
            if m is None:
                raise ValueError(f"cannot parse scattering factor {tok!r}")
            factors.append(
                AffineFactor(Tableau.from_word(m.group("word"), n), int(m.group("mode")))
            )
        if level is None:
            letters = [x for f in factors for x in f.tableau.letters()]
            level = (min(letters) - 1) if letters else 0
        return cls(level, n, tuple(factors))

    def classical(self) -> TensorWord:
        return TensorWord(tuple(f.tableau for f in self.factors), self.n)

    def modes(self) -> tuple[int, ...]:
        return tuple(f.mode for f in self.factors)

    def __str__(self) -> str:
        return "*".join(str(f) for f in self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def modes_from_riggings(
    path: TensorWord, riggings: Sequence[int], a: int
) -> ScatteringData:
    """Attach modes to a level-a path: d_i = r_i + sum of energies picked up
    while transporting factor i leftwards across its predecessors and the
    reference factor (a+1)^(max capacity)."""
    if len(path.factors) != len(riggings):
        raise ValueError(
            f"{len(path.factors)} factors but {len(riggings)} riggings"
        )
    if not path.factors:
        return ScatteringData(a, path.n, ())
    b0 = Tableau.pure(a + 1, max(path.shape()), path.n)
    out = []
    for i, f in enumerate(path.factors):
        cur = f
        total = riggings[i]
        for j in range(i - 1, -1, -1):
            total += energy(path.factors[j], cur)
            cur = r_matrix(path.factors[j], cur)[0]
        total += energy(b0, cur)
        out.append(AffineFactor(f, total))
    return ScatteringData(a, path.n, tuple(out))


def _closure(s: ScatteringData, cap: int, skip_equal: bool) -> frozenset[ScatteringData]:
    seen = {s}
    queue = [s]
    while queue:
        cur = queue.pop()
        for i in range(len(cur.factors) - 1):
            if skip_equal and cur.factors[i].tableau == cur.factors[i + 1].tableau:
                continue
            fa, fb = affine_r(cur.factors[i], cur.factors[i + 1])
            factors = list(cur.factors)
            factors[i], factors[i + 1] = fa, fb
            nxt = ScatteringData(cur.level, cur.n, tuple(factors))
            if nxt not in seen:
                if len(seen) >= cap:
                    raise CapExceededError(f"orbit exceeded cap of {cap} elements")
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def orbit(s: ScatteringData, *, cap: int = 1_000_000) -> frozenset[ScatteringData]:
    """Closure of s under the affine R matrix on adjacent factors."""
    return _closure(s, cap, skip_equal=False)


def permutation_orbit(
    s: ScatteringData, *, cap: int = 1_000_000
) -> frozenset[ScatteringData]:
    """All distinct factor arrangements reachable by the affine R matrix.

    Applications to equal adjacent factors are skipped: they fix the
    arrangement and only redistribute modes, so they produce decorations of
    the same permutation rather than a new one.  (The move set stays
    symmetric: the classical R involution never sends an unequal pair to an
    equal one.)  Normal ordering filters over this set.
    """
    return _closure(s, cap, skip_equal=True)


def normal_ordered_set(
    s: ScatteringData, *, cap: int = 1_000_000
) -> tuple[ScatteringData, ...]:
    """The normal ordered arrangements of s, sorted by serialization.

    Filtering runs over the permutation orbit from the rightmost position
    inward: position i survivors are those maximizing the i-th mode among the
    position-(i+1) survivors.
    """
    candidates = list(permutation_orbit(s, cap=cap))
    for pos in range(len(s.factors), 0, -1):
        best = max(c.factors[pos - 1].mode for c in candidates)
        candidates = [c for c in candidates if c.factors[pos - 1].mode == best]
    if len({c.modes() for c in candidates}) > 1:
        raise AlgorithmInvariantError("normal ordered forms disagree on modes")
    return tuple(sorted(candidates, key=str))


def normal_order(s: ScatteringData, *, cap: int = 1_000_000) -> ScatteringData:
    """Deterministic normal ordered representative (smallest serialization)."""
    return normal_ordered_set(s, cap=cap)[0]


def is_normal_ordered(s: ScatteringData) -> bool:
    """Adjacent gap test: each mode step must dominate the pair energy."""
    for left, right in zip(s.factors, s.factors[1:]):
        if right.mode - left.mode < energy(left.tableau, right.tableau):
            return False
    return True


def build_c(s: ScatteringData) -> TensorWord:
    """Interleave background letters: factor j is preceded by mode_j copies
    of the level letter overall."""
    a = s.level
    if a < 1:
        raise ValueError("the c word needs level >= 1")
    prev = 0
    factors: list[Tableau] = []
    for f in s.factors:
        gap = f.mode - prev
        if gap < 0:
            raise NormalOrderError(f"modes not weakly increasing in {s}")
        factors.extend([Tableau.pure(a, 1, s.n)] * gap)
        factors.append(f.tableau)
        prev = f.mode
    return TensorWord(tuple(factors), s.n)


def phi(s: ScatteringData, target_shape: Sequence[int]) -> TensorWord:
    """Transport the c word into columns of the target shape.

    Columns start as pure level-letter tableaux of the target widths; factors
    of the c word pass through them left to right, rightmost factor first.
    Every pass must exit carrying only the level letter, and the residues must
    total (sum of factor capacities) + (largest mode).
    """
    a, n = s.level, s.n
    if any(w < 1 for w in target_shape):
        raise ValueError("target shape parts must be positive")
    cols = [Tableau.pure(a, w, n) for w in target_shape]
    residue_total = 0
    for g in reversed(build_c(s).factors):
        carry = g
        for i in range(len(cols)):
            cols[i], carry, _ = r_matrix(carry, cols[i])
        if carry.counts[a - 1] != carry.capacity:
            raise ResidueError(f"vertex pass exited with residue {carry}, not {a}^k")
        residue_total += carry.capacity
    expected = sum(f.tableau.capacity for f in s.factors) + (
        s.factors[-1].mode if s.factors else 0
    )
    if residue_total != expected:
        raise AlgorithmInvariantError(
            f"residue count {residue_total} != expected {expected}"
        )
    return TensorWord(tuple(cols), n)


Picker = Callable[[int, tuple[ScatteringData, ...]], ScatteringData]


def compose_theorem(rc: RiggedConfiguration, *, pick: Picker | None = None) -> TensorWord:
    """Build the path of rc by alternating normal ordering and phi, starting
    from the trivial top-level path.  The result equals the KKR image and is
    independent of the normal-ordering representative chosen at each level."""
    msg = validate(rc)
    if msg is not None:
        raise ValidationError(msg)
    n = rc.n
    top = rc.layer_lengths(n - 1)
    path = TensorWord(tuple(Tableau.pure(n, w, n) for w in top), n)
    for a in range(n - 1, 0, -1):
        riggings = [r for _, r in rc.layers[a - 1]]
        sd = modes_from_riggings(path, riggings, a)
        s1 = normal_ordered_set(sd)
        chosen = s1[0] if pick is None else pick(a, s1)
        path = phi(chosen, rc.layer_lengths(a - 1))
    return path


def prop43_isomorphism_check(rc: RiggedConfiguration, a: int) -> bool:
    """Transporting the level-a KKR normal ordered product into the level-(a-1)
    shape must reproduce the level-(a-1) KKR path with pure background residue."""
    from .kkr import kkr_forward, kkr_scattering

    sd, _ = kkr_scattering(rc, a)
    try:
        result = phi(sd, rc.layer_lengths(a - 1))
    except ResidueError:
        return False
    if a == 1:
        expected = kkr_forward(rc)[0]
    else:
        expected = kkr_forward(restrict(rc, a - 1))[0].shift(a - 1, rc.n)
    return result == expected
