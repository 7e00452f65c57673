"""Closing braid words into Gauss data and braiding Gauss data back.

The closure joins the bottom of each strand position to its top.  Walking
the word top to bottom, every ``sigma`` letter becomes one crossing, named
"1", "2", ... in letter order; ``rho`` letters only reroute strands and
leave no trace; ``tau`` letters add wen parity to whichever arc is passing.
In ``sigma_i`` with exponent +1 the strand entering at position ``i+1``
rides over (slots 2 -> 4, landing at position ``i``) and the other strand
dives under (slots 1 -> 3); a -1 exponent swaps the roles.  Permutation
cycles that meet no crossing close into free loops.

``braid_from_gauss`` inverts the construction up to crossing renaming: one
positive or negative crossing block per crossing on its own strand pair,
a block of welded crossings routing every outgoing corner to the corner
its arc enters through the closure, and one wen per barred arc.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import (
    BraidWord,
    Letter,
    LetterKind,
    NotClosableError,
    closable,
    rho,
    sigma,
    sigma_inv,
    tau,
    wen_parity,
)
from .gauss import Arc, Endpoint, GaussData, Passage, validate


@dataclass(frozen=True)
class StrandPath:
    """One strand's itinerary: passages met, and wen counts in the gaps.

    ``wens`` has one entry more than ``passages``: the count before the
    first passage, between consecutive ones, and after the last.
    """

    start: int
    passages: tuple[Passage, ...]
    wens: tuple[int, ...]


@dataclass(frozen=True)
class ClosureTrace:
    word: BraidWord
    paths: tuple[StrandPath, ...]
    permutation: tuple[int, ...]


def closure_trace(b: BraidWord) -> ClosureTrace:
    """Walk the word once, recording each strand's passages and wens."""
    n = b.strands
    occupant = list(range(n + 1))  # occupant[pos] = strand
    passages: list[list[Passage]] = [[] for _ in range(n + 1)]
    wens: list[list[int]] = [[0] for _ in range(n + 1)]
    crossing = 0
    for let in b.letters:
        i = let.index
        if let.kind is LetterKind.TAU:
            wens[occupant[i]][-1] += 1
            continue
        if let.is_sigma:
            crossing += 1
            cid = str(crossing)
            if let.sign > 0:
                under, over = occupant[i], occupant[i + 1]
            else:
                over, under = occupant[i], occupant[i + 1]
            passages[under].append((cid, 1, 3))
            passages[over].append((cid, 2, 4))
            wens[under].append(0)
            wens[over].append(0)
        occupant[i], occupant[i + 1] = occupant[i + 1], occupant[i]
    perm = [0] * n
    for pos in range(1, n + 1):
        perm[occupant[pos] - 1] = pos
    paths = tuple(
        StrandPath(s, tuple(passages[s]), tuple(wens[s])) for s in range(1, n + 1)
    )
    return ClosureTrace(b, paths, tuple(perm))


def closure(b: BraidWord) -> GaussData:
    """Gauss data of the closed-up word; requires even wens per component."""
    if not closable(b):
        k = next(i for i, p in enumerate(wen_parity(b), start=1) if p)
        raise NotClosableError(f"component {k} has odd wen parity")
    trace = closure_trace(b)
    paths = {p.start: p for p in trace.paths}
    perm = trace.permutation
    signs = {}
    crossing = 0
    for let in b.letters:
        if let.is_sigma:
            crossing += 1
            signs[str(crossing)] = let.sign
    arcs = []
    for path in trace.paths:
        for k in range(len(path.passages) - 1):
            cid, _, out = path.passages[k]
            nid, inn, _ = path.passages[k + 1]
            arcs.append(Arc(Endpoint(cid, out), Endpoint(nid, inn), path.wens[k + 1] % 2))
    loops = 0
    seen_free: set[int] = set()
    for path in trace.paths:
        if not path.passages:
            # Free strands either chain into some crossing-met strand's arc
            # (handled below) or close among themselves into loops.
            if path.start in seen_free:
                continue
            s = path.start
            chain = []
            while True:
                chain.append(s)
                s = perm[s - 1]
                if paths[s].passages or s == path.start:
                    break
            if s == path.start and not paths[s].passages:
                seen_free.update(chain)
                loops += 1
            continue
        parity = path.wens[-1]
        t = perm[path.start - 1]
        while not paths[t].passages:
            parity += paths[t].wens[0]
            t = perm[t - 1]
        cid, _, out = path.passages[-1]
        nid, inn, _ = paths[t].passages[0]
        arcs.append(
            Arc(Endpoint(cid, out), Endpoint(nid, inn), (parity + paths[t].wens[0]) % 2)
        )
    return GaussData.make(signs, arcs, loops)


def braid_from_gauss(g: GaussData) -> BraidWord:
    """A braid word on ``2m + loops`` strands whose closure has data ``g``.

    Crossing ``k`` (in id order) is realised by one sigma letter of its sign
    on strands ``2k-1, 2k``; below the crossing row, welded crossings sort
    each outgoing corner's strand to the position whose closure re-enters
    where its arc points, and each barred arc contributes one wen there.
    """
    problem = validate(g)
    if problem is not None:
        raise ValueError(problem)
    ids = g.crossing_ids()
    m = len(ids)
    degree = 2 * m + g.loops
    letters: list[Letter] = []
    exit_pos: dict[Endpoint, int] = {}
    entry_pos: dict[Endpoint, int] = {}
    for k, cid in enumerate(ids, start=1):
        low, high = 2 * k - 1, 2 * k
        if g.sign_of(cid) > 0:
            letters.append(sigma(low))
            exit_pos[Endpoint(cid, 3)], exit_pos[Endpoint(cid, 4)] = high, low
            entry_pos[Endpoint(cid, 1)], entry_pos[Endpoint(cid, 2)] = low, high
        else:
            letters.append(sigma_inv(low))
            exit_pos[Endpoint(cid, 3)], exit_pos[Endpoint(cid, 4)] = low, high
            entry_pos[Endpoint(cid, 1)], entry_pos[Endpoint(cid, 2)] = high, low
    routing = {p: p for p in range(1, degree + 1)}
    for arc in g.arcs:
        routing[exit_pos[arc.source]] = entry_pos[arc.target]
    inverse = {q: p for p, q in routing.items()}
    occ = list(range(degree + 1))  # occ[pos] = strand below the crossing row
    for q in range(1, degree + 1):
        j = occ.index(inverse[q])
        while j > q:
            occ[j - 1], occ[j] = occ[j], occ[j - 1]
            letters.append(rho(j - 1))
            j -= 1
    for arc in sorted(g.arcs, key=lambda a: entry_pos[a.target]):
        if arc.bar:
            letters.append(tau(entry_pos[arc.target]))
    return BraidWord(degree, tuple(letters))
