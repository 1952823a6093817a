"""Symmetric-power crystal tableaux, the combinatorial R matrix and energy.

A factor of a symmetric-power crystal over the alphabet {1..n} is a multiset
of letters, stored as a counts vector; its row word is weakly increasing by
construction.  The R matrix ``B_k (x) B_l -> B_l (x) B_k`` and the energy
function H are computed by the winding/unwinding dot-pairing rule when
k >= l.  For k < l the map is defined as the unique preimage of the k >= l
rule, found by a memoized exhaustive search over weight-compatible splits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import AlgorithmInvariantError, AlphabetError


@dataclass(frozen=True)
class Tableau:
    """One crystal factor: counts[i] is the number of letters i+1."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(self.counts))
        if len(self.counts) < 1:
            raise ValueError("alphabet size must be at least 1")
        if any(c < 0 for c in self.counts):
            raise ValueError(f"negative letter count in {self.counts!r}")

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def capacity(self) -> int:
        return sum(self.counts)

    @classmethod
    def from_letters(cls, letters: Iterable[int], n: int) -> "Tableau":
        counts = [0] * n
        for x in letters:
            if not 1 <= x <= n:
                raise ValueError(f"letter {x} outside alphabet 1..{n}")
            counts[x - 1] += 1
        return cls(tuple(counts))

    @classmethod
    def from_word(cls, word: str, n: int) -> "Tableau":
        """Parse a digit string ("2233") or comma-separated letters ("2,11")."""
        word = word.strip()
        if "," in word:
            letters = [int(tok) for tok in word.split(",") if tok]
        else:
            letters = [int(ch) for ch in word]
        return cls.from_letters(letters, n)

    @classmethod
    def pure(cls, letter: int, k: int, n: int) -> "Tableau":
        """The tableau letter^k."""
        return cls.from_letters([letter] * k, n)

    def letters(self) -> tuple[int, ...]:
        out: list[int] = []
        for i, c in enumerate(self.counts):
            out.extend([i + 1] * c)
        return tuple(out)

    def word(self) -> str:
        if self.n <= 9:
            return "".join(str(x) for x in self.letters())
        return ",".join(str(x) for x in self.letters())

    def shift(self, delta: int, n: int) -> "Tableau":
        """Re-embed with every letter increased by delta, alphabet size n."""
        return Tableau.from_letters([x + delta for x in self.letters()], n)

    def __str__(self) -> str:
        return self.word()


@dataclass(frozen=True)
class TensorWord:
    """An ordered tensor product of tableaux, displayed left to right."""

    factors: tuple[Tableau, ...]
    n: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.n == 0:
            if not self.factors:
                raise ValueError("empty TensorWord needs an explicit alphabet size")
            object.__setattr__(self, "n", self.factors[0].n)
        for f in self.factors:
            if f.n != self.n:
                raise AlphabetError(f"factor alphabet {f.n} != {self.n}")
            if f.capacity < 1:
                raise ValueError("TensorWord factors must have capacity >= 1")

    @classmethod
    def from_word(cls, text: str, n: int) -> "TensorWord":
        text = text.strip()
        if not text:
            return cls((), n)
        return cls(tuple(Tableau.from_word(tok, n) for tok in text.split("*")), n)

    def shape(self) -> tuple[int, ...]:
        return tuple(f.capacity for f in self.factors)

    def letter_sequence(self) -> tuple[int, ...]:
        out: list[int] = []
        for f in self.factors:
            out.extend(f.letters())
        return tuple(out)

    def shift(self, delta: int, n: int) -> "TensorWord":
        return TensorWord(tuple(f.shift(delta, n) for f in self.factors), n)

    def __str__(self) -> str:
        return "*".join(f.word() for f in self.factors)

    def __len__(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class AffineFactor:
    """A crystal factor decorated with an integer mode."""

    tableau: Tableau
    mode: int

    def __str__(self) -> str:
        return f"{self.tableau.word()}[{self.mode}]"


def _descending(counts: Sequence[int]) -> list[int]:
    out: list[int] = []
    for letter in range(len(counts), 0, -1):
        out.extend([letter] * counts[letter - 1])
    return out


def _pair(left_counts: Sequence[int], right_order: Iterable[int]):
    """Run the dot-pairing rule over the right-column letters in right_order.

    Each right dot pairs with the largest remaining left letter strictly
    smaller than it (unwinding); if none exists it wraps around to the largest
    remaining left letter (winding).  Returns (paired, leftover, H) where
    paired/leftover are per-letter counts of the left column.
    """
    left = list(left_counts)
    paired = [0] * len(left)
    h = 0
    for b in right_order:
        partner = 0
        for c in range(b - 1, 0, -1):
            if left[c - 1]:
                partner = c
                break
        if partner == 0:
            h += 1
            for c in range(len(left), 0, -1):
                if left[c - 1]:
                    partner = c
                    break
            if partner == 0:
                raise AlgorithmInvariantError("dot pairing ran out of left dots")
        left[partner - 1] -= 1
        paired[partner - 1] += 1
    return paired, left, h


def _submultisets(total: tuple[int, ...], size: int) -> Iterator[tuple[int, ...]]:
    for combo in product(*[range(c + 1) for c in total]):
        if sum(combo) == size:
            yield combo


@lru_cache(maxsize=None)
def _r_counts(xc: tuple[int, ...], yc: tuple[int, ...]):
    k, l = sum(xc), sum(yc)
    if k >= l:
        paired, leftover, h = _pair(xc, _descending(yc))
        return tuple(paired), tuple(a + b for a, b in zip(yc, leftover)), h
    # k < l: the unique preimage under the l >= k rule.
    total = tuple(a + b for a, b in zip(xc, yc))
    for u in _submultisets(total, l):
        v = tuple(a - b for a, b in zip(total, u))
        y2, x2, h = _r_counts(u, v)
        if y2 == xc and x2 == yc:
            return u, v, h
    raise AlgorithmInvariantError("no R-matrix preimage found; R must be bijective")


def r_matrix(x: Tableau, y: Tableau) -> tuple[Tableau, Tableau, int]:
    """Apply the combinatorial R matrix to x (x) y.

    Returns (y', x', H): the image pair y' (x) x' with |y'| = |y|, |x'| = |x|,
    and the energy H = number of winding pairs.
    """
    if x.n != y.n:
        raise AlphabetError(f"alphabet sizes differ: {x.n} != {y.n}")
    yc, xc, h = _r_counts(x.counts, y.counts)
    return Tableau(yc), Tableau(xc), h


def energy(x: Tableau, y: Tableau) -> int:
    """The energy H(x (x) y): the number of winding pairs."""
    return r_matrix(x, y)[2]


def unwinding_number(x: Tableau, y: Tableau) -> int:
    """min(|x|, |y|) minus the winding number."""
    return min(x.capacity, y.capacity) - energy(x, y)


def affine_r(a: AffineFactor, b: AffineFactor) -> tuple[AffineFactor, AffineFactor]:
    """Affine R matrix: a[d] (x) b[d'] maps to b'[d'-H] (x) a'[d+H]."""
    y_new, x_new, h = r_matrix(a.tableau, b.tableau)
    return AffineFactor(y_new, b.mode - h), AffineFactor(x_new, a.mode + h)


def weight(w: TensorWord) -> tuple[int, ...]:
    """Total letter counts across all factors."""
    out = [0] * w.n
    for f in w.factors:
        for i, c in enumerate(f.counts):
            out[i] += c
    return tuple(out)


def is_highest(w: TensorWord) -> bool:
    """Lattice-word test: every prefix of the letter sequence, read left to
    right in display order, contains at least as many i as i+1."""
    counts = [0] * w.n
    for x in w.letter_sequence():
        counts[x - 1] += 1
        if x > 1 and counts[x - 1] > counts[x - 2]:
            return False
    return True


def apply_r_at(word: TensorWord, i: int) -> TensorWord:
    """R matrix applied to the adjacent factors at display positions i, i+1."""
    y_new, x_new, _ = r_matrix(word.factors[i], word.factors[i + 1])
    factors = list(word.factors)
    factors[i], factors[i + 1] = y_new, x_new
    return TensorWord(tuple(factors), word.n)
