"""Markov-style moves on braid words and a bounded equivalence search.

Two words represent isotopic closures exactly when they are joined by a chain
of the moves below.  The vocabulary:

* ``m0``       -- replace the word by another word equal to it in the group
                  (same degree).  Carries the replacement word.
* ``m1 <k>``   -- conjugation: move the first ``k`` letters to the end.
* ``m2+``      -- stabilization: append a positive crossing on a new strand
                  (degree ``n`` to ``n + 1``, appended letter ``s<n>``).
* ``m2-``      -- stabilization by a negative crossing (``S<n>``).
* ``m2w``      -- welded stabilization (``r<n>``).
* ``m2d``      -- destabilization: remove a final ``s/S/r`` letter on the last
                  two strands when no other letter touches the last strand.

``markov_search`` runs a bidirectional breadth-first search over these moves,
keyed by the induced free-group automorphism, and returns a replayable
:class:`MoveWitness` or ``None`` when the budget or caps are exhausted.  A
``None`` result is always inconclusive: the search cannot certify that two
closures are distinct.

The module also hosts the word-level symmetry operators (sign reversal,
mirror image, the wen row) and the canonicalized linking invariant of a
closed diagram.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable

from .braid import (
    BraidWord,
    FormatError,
    Letter,
    LetterKind,
    parse_word,
    rho,
    sigma,
    sigma_inv,
    tau,
    to_automorphism,
    words_equal,
)
from .gauss import GaussData, components, eliminate_wens, validate

MOVE_KINDS = ("m0", "m1", "m2+", "m2-", "m2w", "m2d")

_STAB_LETTER = {"m2+": sigma, "m2-": sigma_inv, "m2w": rho}


@dataclass(frozen=True)
class MarkovMove:
    """One move application.  ``shift`` is used by m1, ``word`` by m0."""

    kind: str
    shift: int = 0
    word: BraidWord | None = None

    def __post_init__(self) -> None:
        if self.kind not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        if self.kind == "m0" and self.word is None:
            raise ValueError("m0 move needs a replacement word")
        if self.kind == "m1" and self.shift < 0:
            raise ValueError("m1 shift must be non-negative")

    def token(self) -> str:
        if self.kind == "m1":
            return f"m1 {self.shift}"
        if self.kind == "m0":
            assert self.word is not None
            return ("m0 " + self.word.tokens()).rstrip()
        return self.kind


def destab_applicable(b: BraidWord) -> bool:
    """Whether ``m2d`` applies: final ``s/S/r`` letter alone on the top strand."""
    n = b.strands
    if n < 2 or not b.letters:
        return False
    last = b.letters[-1]
    if last.kind is LetterKind.TAU or last.index != n - 1:
        return False
    for letter in b.letters[:-1]:
        bound = n - 1 if letter.kind is LetterKind.TAU else n - 2
        if letter.index > bound:
            return False
    return True


def apply_move(b: BraidWord, move: MarkovMove) -> BraidWord:
    """Apply one move, raising ``ValueError`` when it does not apply."""
    if move.kind == "m1":
        return b.rotated(move.shift)
    if move.kind == "m0":
        assert move.word is not None
        if move.word.strands != b.strands:
            raise ValueError("m0 replacement has a different degree")
        if not words_equal(b, move.word):
            raise ValueError("m0 replacement is not equal to the current word")
        return move.word
    if move.kind in _STAB_LETTER:
        n = b.strands
        return BraidWord(n + 1, b.letters + (_STAB_LETTER[move.kind](n),))
    if move.kind == "m2d":
        if not destab_applicable(b):
            raise ValueError("destabilization does not apply to this word")
        return BraidWord(b.strands - 1, b.letters[:-1])
    raise ValueError(f"unknown move kind {move.kind!r}")


def inverse_move(move: MarkovMove, before: BraidWord) -> MarkovMove:
    """The move undoing ``move``, given the word it was applied to."""
    if move.kind == "m1":
        length = len(before.letters)
        if length == 0:
            return MarkovMove("m1", shift=0)
        return MarkovMove("m1", shift=(length - move.shift % length) % length)
    if move.kind == "m0":
        return MarkovMove("m0", word=before)
    if move.kind in _STAB_LETTER:
        return MarkovMove("m2d")
    if move.kind == "m2d":
        kind = {
            LetterKind.SIGMA_POS: "m2+",
            LetterKind.SIGMA_NEG: "m2-",
            LetterKind.RHO: "m2w",
        }[before.letters[-1].kind]
        return MarkovMove(kind)
    raise ValueError(f"unknown move kind {move.kind!r}")


@dataclass(frozen=True)
class MoveWitness:
    """A replayable move chain carrying its endpoints."""

    start: BraidWord
    moves: tuple[MarkovMove, ...]
    end: BraidWord


def replay_witness(witness: MoveWitness) -> BraidWord:
    current = witness.start
    for move in witness.moves:
        current = apply_move(current, move)
    return current


def verify_witness(witness: MoveWitness) -> bool:
    """Replay the chain and compare the result with the recorded endpoint."""
    try:
        final = replay_witness(witness)
    except ValueError:
        return False
    if final.strands != witness.end.strands:
        return False
    return words_equal(final, witness.end)


def format_witness(moves: Iterable[MarkovMove]) -> str:
    return "".join(move.token() + "\n" for move in moves)


def parse_witness(text: str, start: BraidWord) -> tuple[MarkovMove, ...]:
    """Parse one move per line, replaying from ``start`` to resolve degrees."""
    current = start
    moves: list[MarkovMove] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        parts = raw.split()
        if not parts:
            continue
        head = parts[0]
        if head == "m1":
            if len(parts) != 2 or not parts[1].isdigit():
                raise FormatError(lineno, "m1 takes one non-negative shift count")
            move = MarkovMove("m1", shift=int(parts[1]))
        elif head in ("m2+", "m2-", "m2w", "m2d"):
            if len(parts) != 1:
                raise FormatError(lineno, f"{head} takes no arguments")
            move = MarkovMove(head)
        elif head == "m0":
            try:
                word = parse_word(" ".join(parts[1:]), current.strands)
            except ValueError as exc:
                raise FormatError(lineno, str(exc)) from exc
            move = MarkovMove("m0", word=word)
        else:
            raise FormatError(lineno, f"unknown move {head!r}")
        try:
            current = apply_move(current, move)
        except ValueError as exc:
            raise FormatError(lineno, str(exc)) from exc
        moves.append(move)
    return tuple(moves)


# --- word-level symmetry operators ----------------------------------------


def wen_row(strands: int) -> BraidWord:
    """The involution ``t1 ... tn`` that conjugates a word to its sign reversal."""
    return BraidWord(strands, tuple(tau(i) for i in range(1, strands + 1)))


def sign_reversal_word(b: BraidWord) -> BraidWord:
    """Replace each crossing ``s_i^e`` by ``r_i s_i^-e r_i``; fix ``r`` and ``t``.

    Equal in the group to the conjugate of ``b`` by :func:`wen_row`.
    """
    out: list[Letter] = []
    for letter in b.letters:
        if letter.is_sigma:
            flipped = LetterKind.SIGMA_NEG if letter.kind is LetterKind.SIGMA_POS else LetterKind.SIGMA_POS
            out.extend((rho(letter.index), Letter(flipped, letter.index), rho(letter.index)))
        else:
            out.append(letter)
    return BraidWord(b.strands, tuple(out))


def mirror_word(b: BraidWord) -> BraidWord:
    """Reflect strand positions and invert crossings, preserving letter order.

    ``s_i^e -> s_(n-i)^-e``, ``r_i -> r_(n-i)``, ``t_i -> t_(n+1-i)``.  The
    closure of the mirror is the sign reversal of the closure.
    """
    n = b.strands
    out: list[Letter] = []
    for letter in b.letters:
        if letter.kind is LetterKind.TAU:
            out.append(tau(n + 1 - letter.index))
        elif letter.kind is LetterKind.RHO:
            out.append(rho(n - letter.index))
        elif letter.kind is LetterKind.SIGMA_POS:
            out.append(sigma_inv(n - letter.index))
        else:
            out.append(sigma(n - letter.index))
    return BraidWord(n, tuple(out))


# --- closure invariants ------------------------------------------------------


def sign_profile(g: GaussData) -> tuple[int, ...]:
    """Canonical crossing-sign multiset of a closed diagram.

    Wens are eliminated first.  Elimination is only canonical up to
    full-loop slides (pairing the bars the other way around a component
    negates the complementary over-passages), so the sorted sign tuple is
    minimized over all subsets of full-loop slides.  The result is constant
    across words equal in the group.
    """
    message = validate(g)
    if message is not None:
        raise ValueError(message)
    norm = eliminate_wens(g).data
    comps = components(norm)
    if len(comps) + norm.loops > 6:
        raise ValueError("sign canonicalization supports at most 6 components")
    over: dict[str, int] = {}
    for ci, cycle in enumerate(comps):
        for cid, in_slot, _out_slot in cycle:
            if in_slot == 2:
                over[cid] = ci
    best: tuple[int, ...] | None = None
    for mask in range(1 << len(comps)):
        signs = tuple(
            sorted(-s if (mask >> over[cid]) & 1 else s for cid, s in norm.crossings)
        )
        if best is None or signs < best:
            best = signs
    assert best is not None
    return best


def linking_invariant(g: GaussData) -> tuple[tuple[int, ...], ...]:
    """Canonicalized matrix of signed over/under counts between components.

    The diagram is first normalized with :func:`eliminate_wens` (full-loop
    slides negate one row at a time, so raw matrices are only well defined up
    to row flips).  Entry ``(i, j)`` sums the signs of crossings where
    component ``i`` runs over and ``j`` runs under, ``i != j``.  The result is
    the lexicographic minimum over simultaneous row/column permutations
    combined with per-row negations, which makes it invariant under component
    renumbering, full-loop slides, and sign reversal.
    """
    message = validate(g)
    if message is not None:
        raise ValueError(message)
    norm = eliminate_wens(g).data
    comps = components(norm)
    mu = len(comps) + norm.loops
    if mu > 6:
        raise ValueError("linking canonicalization supports at most 6 components")
    if mu == 0:
        return ()
    over: dict[str, int] = {}
    under: dict[str, int] = {}
    for ci, cycle in enumerate(comps):
        for cid, in_slot, _out_slot in cycle:
            if in_slot == 2:
                over[cid] = ci
            else:
                under[cid] = ci
    matrix = [[0] * mu for _ in range(mu)]
    for cid, sign in norm.crossings:
        i, j = over[cid], under[cid]
        if i != j:
            matrix[i][j] += sign
    best: tuple[tuple[int, ...], ...] | None = None
    for perm in permutations(range(mu)):
        rows = []
        for i in perm:
            row = tuple(matrix[i][j] for j in perm)
            rows.append(min(row, tuple(-x for x in row)))
        candidate = tuple(rows)
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return best


# --- bounded bidirectional search ------------------------------------------

# Edges of the stitching tree: (parent state key, word the move was applied
# to, the move, the word it produced).  Only the first arrival at a state is
# recorded; later witness assembly inserts m0 bridge moves wherever the word
# in hand differs from the word an edge expects, which is always legal
# because the two words share a state (equal automorphisms).
_Edge = tuple[tuple, BraidWord, MarkovMove, BraidWord]


def _aut_key(b: BraidWord) -> tuple:
    images = to_automorphism(b).images
    return (b.strands, tuple(image.letters for image in images))


def _neighbors(
    w: BraidWord, max_degree: int, max_length: int
) -> list[tuple[MarkovMove, BraidWord]]:
    out: list[tuple[MarkovMove, BraidWord]] = []
    for k in range(1, len(w.letters)):
        out.append((MarkovMove("m1", shift=k), w.rotated(k)))
    if w.strands + 1 <= max_degree and len(w.letters) + 1 <= max_length:
        for kind in ("m2+", "m2-", "m2w"):
            move = MarkovMove(kind)
            out.append((move, apply_move(w, move)))
    if destab_applicable(w):
        out.append((MarkovMove("m2d"), BraidWord(w.strands - 1, w.letters[:-1])))
    return out


def _edge_chain(
    tree: dict[tuple, _Edge | None], key: tuple
) -> list[tuple[BraidWord, MarkovMove, BraidWord]]:
    chain = []
    while tree[key] is not None:
        parent_key, parent_word, move, produced = tree[key]  # type: ignore[misc]
        chain.append((parent_word, move, produced))
        key = parent_key
    chain.reverse()
    return chain


def _literal(a: BraidWord, b: BraidWord) -> bool:
    return a.strands == b.strands and a.letters == b.letters


def _stitch(
    a: BraidWord,
    b: BraidWord,
    forward: dict[tuple, _Edge | None],
    backward: dict[tuple, _Edge | None],
    meet: tuple,
) -> MoveWitness:
    moves: list[MarkovMove] = []
    current = a
    for parent_word, move, produced in _edge_chain(forward, meet):
        if not _literal(current, parent_word):
            moves.append(MarkovMove("m0", word=parent_word))
            current = parent_word
        moves.append(move)
        current = produced
    for parent_word, move, produced in reversed(_edge_chain(backward, meet)):
        if not _literal(current, produced):
            moves.append(MarkovMove("m0", word=produced))
            current = produced
        moves.append(inverse_move(move, parent_word))
        current = parent_word
    if not _literal(current, b):
        moves.append(MarkovMove("m0", word=b))
    witness = MoveWitness(a, tuple(moves), b)
    assert verify_witness(witness)
    return witness


def markov_search(
    a: BraidWord,
    b: BraidWord,
    *,
    max_degree: int | None = None,
    max_length: int | None = None,
    budget: int = 100_000,
) -> MoveWitness | None:
    """Bidirectional search for a move chain from ``a`` to ``b``.

    States are equivalence classes keyed by degree and induced automorphism,
    which absorbs m0 rewrites into the state itself.  Neighbors are all m1
    shifts, the three stabilizations (gated by ``max_degree`` and
    ``max_length``; defaults are the input maxima plus 2 and plus 6), and
    destabilization when it applies.  A state can be reached by words that
    rotate differently, so each distinct arrival word is expanded once;
    ``budget`` caps the total number of stored (state, word) nodes.  Returns
    a verified witness, or ``None`` when the space within the caps is
    exhausted or the budget runs out -- which is always inconclusive.
    """
    if max_degree is None:
        max_degree = max(a.strands, b.strands) + 2
    if max_length is None:
        max_length = max(len(a.letters), len(b.letters)) + 6
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if max_degree < max(a.strands, b.strands):
        raise ValueError("degree cap is below the degree of an input word")
    if max_length < max(len(a.letters), len(b.letters)):
        raise ValueError("length cap is below the length of an input word")

    key_a, key_b = _aut_key(a), _aut_key(b)
    if key_a == key_b:
        moves = () if _literal(a, b) else (MarkovMove("m0", word=b),)
        return MoveWitness(a, moves, b)

    trees: tuple[dict[tuple, _Edge | None], dict[tuple, _Edge | None]] = (
        {key_a: None},
        {key_b: None},
    )
    seen: tuple[set, set] = ({(key_a, a.letters)}, {(key_b, b.letters)})
    queues: tuple[deque, deque] = (deque([(key_a, a)]), deque([(key_b, b)]))

    nodes = 2
    while queues[0] or queues[1]:
        if not queues[0]:
            side = 1
        elif not queues[1]:
            side = 0
        else:
            side = 0 if len(queues[0]) <= len(queues[1]) else 1
        key, word = queues[side].popleft()
        for move, produced in _neighbors(word, max_degree, max_length):
            next_key = _aut_key(produced)
            if (next_key, produced.letters) in seen[side]:
                continue
            if nodes >= budget:
                return None
            nodes += 1
            seen[side].add((next_key, produced.letters))
            if next_key not in trees[side]:
                trees[side][next_key] = (key, word, move, produced)
                if next_key in trees[1 - side]:
                    return _stitch(a, b, trees[0], trees[1], next_key)
            queues[side].append((next_key, produced))
    return None
