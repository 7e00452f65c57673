"""Command-line front end.

Verbs operate on the flat word/Gauss-data/witness file formats and print
either the produced artifact or a report.  Exit codes: 0 for success or a
true verdict, 1 for a false verdict, a failed search, or an inconclusive
result (the report says which), 2 for unreadable or malformed inputs and
misconfigured limits.

Artifact-producing verbs (``close``, ``braid``, ``signrev-word``,
``signrev-gauss``, ``mirror``, ``eliminate-wens``, ``reduce-kinks``) write
their output file to ``--output`` when given and to stdout otherwise, with
no extra chatter, so output can be fed back in.  Report verbs honour
``--format``: ``text`` is for people; ``machine`` is stable line-oriented
``key=value`` output with rows joined by ``;`` and entries by ``,``.

The default search budget for ``markov`` comes from ``--budget``, then the
``EWB_BUDGET_DEFAULT`` environment variable, then 100000.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from .braid import (
    BraidWord,
    FormatError,
    NotClosableError,
    closable,
    compose,
    format_word_file,
    parse_word_file,
    rho,
    sigma,
    sigma_inv,
    tau,
    verify_relations,
    words_equal,
)
from .closure import braid_from_gauss, closure
from .gauss import (
    GaussData,
    components,
    eliminate_wens,
    format_gauss_file,
    parse_gauss_file,
    reduce_kinks,
    same_gauss_data,
    sign_reversal,
    validate,
)
from .markov import (
    apply_move,
    format_witness,
    linking_invariant,
    markov_search,
    mirror_word,
    parse_witness,
    replay_witness,
    sign_profile,
    sign_reversal_word,
    wen_row,
    MoveWitness,
)


class _InputError(Exception):
    """Unreadable or malformed input; reported with exit code 2."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _InputError(str(exc)) from exc


def _load_word(path: str) -> BraidWord:
    try:
        return parse_word_file(_read(path))
    except FormatError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _load_gauss(path: str) -> GaussData:
    try:
        return parse_gauss_file(_read(path))
    except FormatError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _sniff(path: str):
    """A word file starts with a ``strands`` header; anything else is Gauss data."""
    text = _read(path)
    stripped = text.lstrip()
    try:
        if stripped.startswith("strands"):
            return parse_word_file(text)
        return parse_gauss_file(text)
    except FormatError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


# --- verb handlers ----------------------------------------------------------


def _cmd_close(args) -> int:
    g = closure(_load_word(args.input))
    _emit(format_gauss_file(g), args.output)
    return 0


def _cmd_braid(args) -> int:
    b = braid_from_gauss(_load_gauss(args.input))
    _emit(format_word_file(b), args.output)
    return 0


def _cmd_gauss_validate(args) -> int:
    message = validate(_load_gauss(args.input))
    if message is None:
        print("valid=true" if args.format == "machine" else "valid")
        return 0
    if args.format == "machine":
        print("valid=false")
        print(f"reason={message}")
    else:
        print(f"invalid: {message}")
    return 1


def _cmd_eq_word(args) -> int:
    a, b = _load_word(args.a), _load_word(args.b)
    equal = a.strands == b.strands and words_equal(a, b)
    if args.format == "machine":
        print(f"equal={'true' if equal else 'false'}")
    else:
        print("equal" if equal else "not equal")
    return 0 if equal else 1


def _cmd_eq_gauss(args) -> int:
    iso = same_gauss_data(_load_gauss(args.a), _load_gauss(args.b))
    if iso is None:
        print("isomorphic=false" if args.format == "machine" else "not isomorphic")
        return 1
    pairs = ",".join(f"{x}:{y}" for x, y in iso.pairs)
    if args.format == "machine":
        print("isomorphic=true")
        print(f"pairs={pairs}")
    else:
        print(f"isomorphic: {pairs or '(no crossings)'}")
    return 0


def _cmd_signrev_word(args) -> int:
    _emit(format_word_file(sign_reversal_word(_load_word(args.input))), args.output)
    return 0


def _cmd_signrev_gauss(args) -> int:
    _emit(format_gauss_file(sign_reversal(_load_gauss(args.input))), args.output)
    return 0


def _cmd_mirror(args) -> int:
    _emit(format_word_file(mirror_word(_load_word(args.input))), args.output)
    return 0


def _cmd_eliminate_wens(args) -> int:
    result = eliminate_wens(_load_gauss(args.input))
    _emit(format_gauss_file(result.data), args.output)
    if args.output is not None:
        flipped = ",".join(sorted(result.flipped))
        if args.format == "machine":
            print(f"flipped={flipped}")
            print(f"slides={len(result.slides)}")
        else:
            print(f"flipped: {flipped or 'none'} ({len(result.slides)} slides)")
    return 0


def _cmd_reduce_kinks(args) -> int:
    _emit(format_gauss_file(reduce_kinks(_load_gauss(args.input))), args.output)
    return 0


def _cmd_invariants(args) -> int:
    data = _sniff(args.input)
    g = closure(data) if isinstance(data, BraidWord) else data
    message = validate(g)
    if message is not None:
        raise _InputError(f"{args.input}: {message}")
    mu = len(components(g)) + g.loops
    signs = sign_profile(g)
    linking = linking_invariant(g)
    if args.format == "machine":
        print(f"components={mu}")
        print(f"loops={g.loops}")
        print(f"crossings={len(g.crossings)}")
        print(f"signs={','.join(str(s) for s in signs)}")
        print(f"linking={';'.join(','.join(str(e) for e in row) for row in linking)}")
    else:
        print(f"components: {mu}")
        print(f"loops: {g.loops}")
        print(f"crossings: {len(g.crossings)}")
        print(f"signs: {' '.join(str(s) for s in signs) or '(none)'}")
        print("linking:")
        for row in linking:
            print("  " + " ".join(f"{e:3d}" for e in row))
    return 0


def _default_budget() -> int:
    raw = os.environ.get("EWB_BUDGET_DEFAULT", "100000")
    try:
        return int(raw)
    except ValueError as exc:
        raise _InputError(f"EWB_BUDGET_DEFAULT is not an integer: {raw!r}") from exc


def _cmd_markov(args) -> int:
    a, b = _load_word(args.a), _load_word(args.b)
    budget = args.budget if args.budget is not None else _default_budget()
    witness = markov_search(
        a, b, max_degree=args.max_degree, max_length=args.max_length, budget=budget
    )
    if witness is None:
        if args.format == "machine":
            print("found=false")
        else:
            print("inconclusive: no witness within the given limits")
        return 1
    text = format_witness(witness.moves)
    if args.output is not None:
        Path(args.output).write_text(text)
        if args.format == "machine":
            print("found=true")
            print(f"moves={len(witness.moves)}")
        else:
            print(f"found witness of {len(witness.moves)} moves")
    elif args.format == "machine":
        print("found=true")
        print(f"moves={len(witness.moves)}")
        print(f"witness={';'.join(m.token() for m in witness.moves)}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_replay(args) -> int:
    start = _load_word(args.word)
    try:
        moves = parse_witness(_read(args.witness), start)
    except FormatError as exc:
        raise _InputError(f"{args.witness}: {exc}") from exc
    result = replay_witness(MoveWitness(start, moves, start))
    if args.target is None:
        _emit(format_word_file(result), args.output)
        return 0
    target = _load_word(args.target)
    equal = result.strands == target.strands and words_equal(result, target)
    if args.format == "machine":
        print(f"equal={'true' if equal else 'false'}")
        print(f"result={result.tokens()}")
    else:
        print("replay matches target" if equal else "replay does not match target")
    return 0 if equal else 1


def _cmd_verify_relations(args) -> int:
    checked, failures = verify_relations(args.n)
    selftests = selftest_failures = 0
    if args.seed is not None:
        selftests, selftest_failures = _seeded_selftests(args.seed)
    ok = not failures and selftest_failures == 0
    if args.format == "machine":
        print(f"checked={checked}")
        print(f"failures={len(failures)}")
        if args.seed is not None:
            print(f"selftests={selftests}")
            print(f"selftest_failures={selftest_failures}")
    else:
        if ok:
            print(f"all relation instances verified ({checked} instances, n <= {args.n})")
        else:
            for label in failures:
                print(f"FAILED: {label}")
            print(f"{len(failures)} of {checked} relation instances failed")
        if args.seed is not None:
            print(f"seeded self-tests: {selftests - selftest_failures} / {selftests} passed")
    return 0 if ok else 1


def _seeded_selftests(seed: int, count: int = 50) -> tuple[int, int]:
    """Random spot checks: the wen-row conjugation identity and the braiding
    round trip, both exercised end to end."""
    rng = random.Random(seed)
    failures = 0
    for _ in range(count):
        n = rng.randint(2, 5)
        letters = []
        for _ in range(rng.randint(0, 10)):
            kind = rng.randrange(4)
            if kind == 0:
                letters.append(sigma(rng.randint(1, n - 1)))
            elif kind == 1:
                letters.append(sigma_inv(rng.randint(1, n - 1)))
            elif kind == 2:
                letters.append(rho(rng.randint(1, n - 1)))
            else:
                letters.append(tau(rng.randint(1, n)))
        w = BraidWord(n, tuple(letters))
        delta = wen_row(n)
        if not words_equal(sign_reversal_word(w), compose(compose(delta, w), delta)):
            failures += 1
            continue
        if closable(w):
            g = closure(w)
            if same_gauss_data(closure(braid_from_gauss(g)), g) is None:
                failures += 1
    return count, failures


# --- parser -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ewb",
        description="Extended welded braids: closures, Gauss data, Markov moves.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, handler, help_text, *, io=False, fmt=True, pair=None):
        p = sub.add_parser(name, help=help_text)
        if io:
            p.add_argument("--input", required=True, help="input file")
            p.add_argument("--output", help="write the produced file here instead of stdout")
        if pair:
            for dest, help_line in pair:
                p.add_argument(dest, help=help_line)
        if fmt:
            p.add_argument(
                "--format", choices=("text", "machine"), default="text",
                help="report style (machine is stable key=value lines)",
            )
        p.set_defaults(func=handler)
        return p

    add("close", _cmd_close, "closure of a braid word as Gauss data", io=True, fmt=False)
    add("braid", _cmd_braid, "braided word whose closure is the given Gauss data", io=True, fmt=False)
    p = add("gauss-validate", _cmd_gauss_validate, "check Gauss data validity")
    p.add_argument("--input", required=True, help="Gauss data file")
    add("eq-word", _cmd_eq_word, "test two words for equality in the group",
        pair=(("a", "word file"), ("b", "word file")))
    add("eq-gauss", _cmd_eq_gauss, "test two Gauss data files for isomorphism",
        pair=(("a", "Gauss data file"), ("b", "Gauss data file")))
    add("signrev-word", _cmd_signrev_word, "sign reversal of a word", io=True, fmt=False)
    add("signrev-gauss", _cmd_signrev_gauss, "sign reversal of Gauss data", io=True, fmt=False)
    add("mirror", _cmd_mirror, "mirror image of a word", io=True, fmt=False)
    add("eliminate-wens", _cmd_eliminate_wens, "slide and cancel all wen marks", io=True)
    add("reduce-kinks", _cmd_reduce_kinks, "remove unbarred kink crossings", io=True, fmt=False)
    p = add("invariants", _cmd_invariants, "component count, sign profile, linking matrix")
    p.add_argument("--input", required=True, help="word or Gauss data file")
    p = add("markov", _cmd_markov, "search for a Markov move chain between two words",
            pair=(("a", "word file"), ("b", "word file")))
    p.add_argument("--output", help="write the witness here instead of stdout")
    p.add_argument("--max-degree", type=int, help="cap on strand count during search")
    p.add_argument("--max-length", type=int, help="cap on word length during search")
    p.add_argument("--budget", type=int, help="cap on stored search states")
    p = add("replay", _cmd_replay, "replay a witness file from a start word",
            pair=(("word", "start word file"), ("witness", "witness file")))
    p.add_argument("--target", help="word file the replay should match")
    p.add_argument("--output", help="write the resulting word here instead of stdout")
    p = add("verify-relations", _cmd_verify_relations, "check every relation instance")
    p.add_argument("--n", type=int, default=6, help="largest strand count to check")
    p.add_argument("--seed", type=int, help="also run seeded random self-tests")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotClosableError as exc:
        print(f"not closable: {exc}", file=sys.stderr)
        return 2
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
