"""Words in the extended welded braid group and their free-group action.

A braid word on ``n`` strands is a finite sequence of letters drawn from
three generator families, all indexed from 1:

* ``s<i>`` / ``S<i>`` -- the classical crossing ``sigma_i`` and its inverse,
  exchanging strands ``i`` and ``i+1`` (``1 <= i <= n-1``),
* ``r<i>`` -- the welded crossing ``rho_i``, an involution exchanging
  strands ``i`` and ``i+1`` (``1 <= i <= n-1``),
* ``t<i>`` -- the wen ``tau_i``, an involution marking strand ``i``
  (``1 <= i <= n``).

Words multiply by concatenation, read left to right.  Equality of group
elements is decided through a faithful action on the free group
``F_n = <x_1, ..., x_n>``:

* ``sigma_i``:  ``x_i -> x_i x_{i+1} x_i^-1``, ``x_{i+1} -> x_i``
* ``rho_i``:    ``x_i <-> x_{i+1}``
* ``tau_i``:    ``x_i -> x_i^-1``

Automorphisms compose left to right to match word concatenation: the
automorphism of ``a * b`` applies ``a``'s action first.  Every image is a
conjugate ``w x_j^e w^-1`` of a single generator or inverse generator;
``verify_relations`` checks the defining relation suite exhaustively and
is the arbiter for these conventions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator


class FormatError(ValueError):
    """A text input violated one of the flat-file formats."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NotClosableError(ValueError):
    """A braid word with odd wen parity on some component cannot be closed."""


class LetterKind(Enum):
    SIGMA_POS = "s"
    SIGMA_NEG = "S"
    RHO = "r"
    TAU = "t"


_KIND_RANK = {k: rank for rank, k in enumerate(LetterKind)}


@dataclass(frozen=True)
class Letter:
    kind: LetterKind
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"letter index must be >= 1, got {self.index}")

    @property
    def is_sigma(self) -> bool:
        return self.kind in (LetterKind.SIGMA_POS, LetterKind.SIGMA_NEG)

    @property
    def sign(self) -> int:
        """Crossing sign: +1 for sigma, -1 for its inverse, 0 otherwise."""
        if self.kind is LetterKind.SIGMA_POS:
            return 1
        if self.kind is LetterKind.SIGMA_NEG:
            return -1
        return 0

    def inverse(self) -> Letter:
        if self.kind is LetterKind.SIGMA_POS:
            return Letter(LetterKind.SIGMA_NEG, self.index)
        if self.kind is LetterKind.SIGMA_NEG:
            return Letter(LetterKind.SIGMA_POS, self.index)
        return self  # rho and tau are involutions

    def token(self) -> str:
        return f"{self.kind.value}{self.index}"

    def key(self) -> tuple[int, int]:
        """Fixed total order used for deterministic tie-breaking."""
        return (self.index, _KIND_RANK[self.kind])


def sigma(i: int) -> Letter:
    return Letter(LetterKind.SIGMA_POS, i)


def sigma_inv(i: int) -> Letter:
    return Letter(LetterKind.SIGMA_NEG, i)


def rho(i: int) -> Letter:
    return Letter(LetterKind.RHO, i)


def tau(i: int) -> Letter:
    return Letter(LetterKind.TAU, i)


@dataclass(frozen=True)
class BraidWord:
    """A word in the generators, together with its strand count."""

    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise ValueError(f"strand count must be >= 1, got {self.strands}")
        for let in self.letters:
            bound = self.strands if let.kind is LetterKind.TAU else self.strands - 1
            if let.index > bound:
                raise ValueError(
                    f"letter {let.token()} out of range on {self.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return compose(self, other)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(l.inverse() for l in reversed(self.letters)))

    def rotated(self, k: int) -> BraidWord:
        """Move the first ``k`` letters to the end (conjugation by the prefix)."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.strands, self.letters[k:] + self.letters[:k])

    def key(self) -> tuple:
        return (len(self.letters), tuple(l.key() for l in self.letters))

    def tokens(self) -> str:
        return " ".join(l.token() for l in self.letters)


def word(strands: int, *letters: Letter) -> BraidWord:
    return BraidWord(strands, letters)


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    if a.strands != b.strands:
        raise ValueError(f"degree mismatch: {a.strands} vs {b.strands}")
    return BraidWord(a.strands, a.letters + b.letters)


_TOKEN_RE = re.compile(r"([sSrt])([0-9]+)$")


def parse_word(text: str, strands: int) -> BraidWord:
    """Parse a whitespace-separated token stream into a word on ``strands``."""
    letters = []
    for tok in text.split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise ValueError(f"bad letter token {tok!r}")
        letters.append(Letter(LetterKind(m.group(1)), int(m.group(2))))
    try:
        return BraidWord(strands, tuple(letters))
    except ValueError as exc:
        raise ValueError(str(exc)) from None


def parse_word_file(text: str) -> BraidWord:
    """Parse the two-line word format: ``strands <n>`` then letter tokens."""
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise FormatError(1, "empty word file, expected 'strands <n>'")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "strands" or not head[1].isdigit() or int(head[1]) < 1:
        raise FormatError(1, f"expected 'strands <n>', got {lines[0]!r}")
    if len(lines) > 2:
        raise FormatError(3, "unexpected extra line in word file")
    body = lines[1] if len(lines) == 2 else ""
    try:
        return parse_word(body, int(head[1]))
    except ValueError as exc:
        raise FormatError(2, str(exc)) from None


def format_word_file(b: BraidWord) -> str:
    return f"strands {b.strands}\n{b.tokens()}\n"


# --- free group machinery ------------------------------------------------
#
# A free word is a freely reduced tuple of nonzero ints: +i stands for the
# generator x_i, -i for its inverse.


def _reduce(seq: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for g in seq:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[int, ...] = ()

    @staticmethod
    def of(*letters: int) -> FreeWord:
        return FreeWord(_reduce(letters))

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord(_reduce(self.letters + other.letters))

    def inverse(self) -> FreeWord:
        return FreeWord(tuple(-g for g in reversed(self.letters)))

    def conjugate_parts(self) -> tuple[FreeWord, int, int] | None:
        """Split a reduced conjugate ``w x_j^e w^-1`` into (w, j, e), else None."""
        n = len(self.letters)
        if n % 2 == 0:
            return None
        half = n // 2
        prefix = self.letters[:half]
        if self.letters[half + 1:] != tuple(-g for g in reversed(prefix)):
            return None
        mid = self.letters[half]
        return FreeWord(prefix), abs(mid), (1 if mid > 0 else -1)


# Images of the generators under each letter.  Substitution tables keep the
# letter action sparse: generators not listed map to themselves.


def _letter_table(let: Letter) -> dict[int, tuple[int, ...]]:
    i = let.index
    if let.kind is LetterKind.SIGMA_POS:
        return {i: (i, i + 1, -i), i + 1: (i,)}
    if let.kind is LetterKind.SIGMA_NEG:
        return {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}
    if let.kind is LetterKind.RHO:
        return {i: (i + 1,), i + 1: (i,)}
    return {i: (-i,)}


def _substitute(word: tuple[int, ...], table: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
    out: list[int] = []
    for g in word:
        image = table.get(abs(g))
        if image is None:
            piece: Iterable[int] = (g,)
        elif g > 0:
            piece = image
        else:
            piece = (-h for h in reversed(image))
        for h in piece:
            if out and out[-1] == -h:
                out.pop()
            else:
                out.append(h)
    return tuple(out)


@dataclass(frozen=True)
class FreeGroupAutomorphism:
    """An automorphism of ``F_n`` given by generator images.

    ``then`` composes left to right, matching word concatenation; the
    product of two braid words maps to ``first.then(second)``.
    """

    rank: int
    images: tuple[FreeWord, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.rank:
            raise ValueError("image count must equal rank")

    @staticmethod
    def identity(rank: int) -> FreeGroupAutomorphism:
        return FreeGroupAutomorphism(rank, tuple(FreeWord((i,)) for i in range(1, rank + 1)))

    def apply(self, w: FreeWord) -> FreeWord:
        table = {i + 1: self.images[i].letters for i in range(self.rank)}
        return FreeWord(_substitute(w.letters, table))

    def then(self, other: FreeGroupAutomorphism) -> FreeGroupAutomorphism:
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return FreeGroupAutomorphism(self.rank, tuple(other.apply(w) for w in self.images))

    def __mul__(self, other: FreeGroupAutomorphism) -> FreeGroupAutomorphism:
        return self.then(other)


def to_automorphism(b: BraidWord) -> FreeGroupAutomorphism:
    """The action of ``b`` on ``F_n``; equal words yield equal automorphisms."""
    images = [tuple([i]) for i in range(1, b.strands + 1)]
    for let in b.letters:
        table = _letter_table(let)
        images = [_substitute(w, table) for w in images]
    return FreeGroupAutomorphism(b.strands, tuple(FreeWord(w) for w in images))


def words_equal(a: BraidWord, b: BraidWord) -> bool:
    """Whether two words of equal degree represent the same group element."""
    if a.strands != b.strands:
        raise ValueError(f"degree mismatch: {a.strands} vs {b.strands}")
    return to_automorphism(a) == to_automorphism(b)


# --- combinatorial strand data -------------------------------------------


def underlying_permutation(b: BraidWord) -> tuple[int, ...]:
    """Position each strand ends at: entry ``s-1`` is the bottom position of
    the strand starting at top position ``s``."""
    occupant = list(range(b.strands + 1))  # occupant[pos] = strand, 1-based
    for let in b.letters:
        if let.kind is not LetterKind.TAU:
            i = let.index
            occupant[i], occupant[i + 1] = occupant[i + 1], occupant[i]
    final = [0] * b.strands
    for pos in range(1, b.strands + 1):
        final[occupant[pos] - 1] = pos
    return tuple(final)


def strand_wen_counts(b: BraidWord) -> tuple[int, ...]:
    """Wens met by each strand: ``tau_i`` marks whichever strand occupies
    position ``i`` at that point of the word."""
    occupant = list(range(b.strands + 1))
    counts = [0] * (b.strands + 1)
    for let in b.letters:
        if let.kind is LetterKind.TAU:
            counts[occupant[let.index]] += 1
        else:
            i = let.index
            occupant[i], occupant[i + 1] = occupant[i + 1], occupant[i]
    return tuple(counts[1:])


def permutation_cycles(b: BraidWord) -> list[tuple[int, ...]]:
    """Cycles of the underlying permutation, each listed from its smallest
    strand, ordered by that smallest strand."""
    perm = underlying_permutation(b)
    seen = [False] * (b.strands + 1)
    cycles = []
    for start in range(1, b.strands + 1):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start - 1]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt - 1]
        cycles.append(tuple(cycle))
    return cycles


def wen_parity(b: BraidWord) -> tuple[int, ...]:
    """Mod-2 wen count of each closure component (one per permutation cycle)."""
    counts = strand_wen_counts(b)
    return tuple(sum(counts[s - 1] for s in cyc) % 2 for cyc in permutation_cycles(b))


def closable(b: BraidWord) -> bool:
    """Whether every closure component carries an even number of wens."""
    return all(p == 0 for p in wen_parity(b))


def sigma_exponent_parity(b: BraidWord) -> int:
    """Total sigma exponent mod 2; invariant under the defining relations."""
    return sum(1 for l in b.letters if l.is_sigma) % 2


# --- the defining relation suite ------------------------------------------


def presentation_relations(n: int) -> Iterator[tuple[str, BraidWord, BraidWord]]:
    """All defining relations on ``n`` strands, as (label, lhs, rhs) triples.

    Fifteen families: the two braid-like families for sigma and for rho,
    rho involutivity, distant commutations within and across the sigma,
    rho, tau families, the two mixed sigma/rho triples, tau involutivity
    and diagonality, and the three slide rules moving a wen through a
    crossing.
    """

    def w(*letters: Letter) -> BraidWord:
        return BraidWord(n, tuple(letters))

    for i in range(1, n):
        for j in range(i + 2, n):
            yield f"sigma-commute {i},{j}", w(sigma(i), sigma(j)), w(sigma(j), sigma(i))
            yield f"rho-commute {i},{j}", w(rho(i), rho(j)), w(rho(j), rho(i))
    for i in range(1, n - 1):
        yield (f"sigma-braid {i}",
               w(sigma(i), sigma(i + 1), sigma(i)),
               w(sigma(i + 1), sigma(i), sigma(i + 1)))
        yield (f"rho-braid {i}",
               w(rho(i), rho(i + 1), rho(i)),
               w(rho(i + 1), rho(i), rho(i + 1)))
        yield (f"mixed-braid-rrs {i}",
               w(rho(i + 1), rho(i), sigma(i + 1)),
               w(sigma(i), rho(i + 1), rho(i)))
        yield (f"mixed-braid-ssr {i}",
               w(sigma(i + 1), sigma(i), rho(i + 1)),
               w(rho(i), sigma(i + 1), sigma(i)))
    for i in range(1, n):
        yield f"rho-involution {i}", w(rho(i), rho(i)), w()
        for j in range(1, n):
            if abs(i - j) > 1:
                yield f"rho-sigma-commute {i},{j}", w(rho(i), sigma(j)), w(sigma(j), rho(i))
    for i in range(1, n + 1):
        yield f"tau-involution {i}", w(tau(i), tau(i)), w()
        for j in range(i + 1, n + 1):
            yield f"tau-commute {i},{j}", w(tau(i), tau(j)), w(tau(j), tau(i))
    for i in range(1, n):
        for j in range(1, n + 1):
            if abs(i - j) > 1:
                yield f"sigma-tau-commute {i},{j}", w(sigma(i), tau(j)), w(tau(j), sigma(i))
                yield f"rho-tau-commute {i},{j}", w(rho(i), tau(j)), w(tau(j), rho(i))
    for i in range(1, n):
        yield f"wen-through-rho {i}", w(tau(i), rho(i)), w(rho(i), tau(i + 1))
        yield f"wen-through-sigma {i}", w(tau(i), sigma(i)), w(sigma(i), tau(i + 1))
        yield (f"wen-flip-sigma {i}",
               w(tau(i + 1), sigma(i)),
               w(rho(i), sigma_inv(i), rho(i), tau(i)))


def verify_relations(max_strands: int) -> tuple[int, list[str]]:
    """Check every relation instance for degrees up to ``max_strands``.

    Returns the number of instances checked and the labels of any failures.
    """
    checked = 0
    failures = []
    for n in range(1, max_strands + 1):
        for label, lhs, rhs in presentation_relations(n):
            checked += 1
            if to_automorphism(lhs) != to_automorphism(rhs):
                failures.append(f"n={n}: {label}")
    return checked, failures
