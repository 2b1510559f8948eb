"""Command line front end.

Exit codes: 0 success (and "irreducible" verdicts), 1 reducible or not
irreducible, 2 usage or parse errors, 3 not-decomposable or failed
precondition, 4 search or output budget exceeded.

Words are written outermost letter first everywhere; --innermost-first
only flips the printed order.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .automaton import (
    InterimAutomaton,
    build_interim,
    count_accepted,
    export,
    merge_dist_reg,
    minimize,
    reverse_subset_prune,
    to_json,
)
from .errors import (
    BudgetExceeded,
    EmptyChain,
    NotDecomposable,
    NotIrreducible,
)
from .finite_field import FiniteField
from .irreducibility import (
    IRREDUCIBLE,
    REDUCIBLE,
    canonicalize,
    chain_irreducible,
    full_decompose,
    iter_levels,
    test_decomposable,
)
from .local_field import (
    PRECONDITION_FAILED,
    DEFAULT_PRECISION,
    PadicInt,
    PadicQuad,
    local_irreducible,
)
from .monoid import Alphabet, MonicQuad, collision_search, freedom_certificate, pi
from .polynomial import Poly

DEFAULT_OUTPUT_BUDGET = 1_000_000


class CliError(Exception):
    """Bad usage or unparseable input; maps to exit code 2."""


def _prime_power(q: int):
    if q < 3:
        raise CliError("q must be an odd prime power >= 3, got %d" % q)
    if q % 2 == 0:
        raise CliError("characteristic 2 unsupported")
    p = None
    f = 3
    while f * f <= q:
        if q % f == 0:
            p = f
            break
        f += 2
    if p is None:
        p = q
    n, k = q, 0
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise CliError("q must be a prime power, got %d" % q)
    return p, k


def _field_from_args(args) -> FiniteField:
    if args.q is not None:
        if args.p is not None:
            raise CliError("give --q or --p (with --k), not both")
        p, k = _prime_power(args.q)
    elif args.p is not None:
        p, k = args.p, args.k
        if p % 2 == 0:
            raise CliError("characteristic 2 unsupported")
    else:
        raise CliError("a field is required: --q or --p (with --k)")
    try:
        return FiniteField(p, k)
    except ValueError as exc:
        raise CliError(str(exc))


def _parse_element(field: FiniteField, text: str):
    try:
        return field.parse_element(text)
    except ValueError as exc:
        raise CliError(str(exc))


def _parse_alphabet(field: FiniteField, text: str) -> Alphabet:
    if text.strip() == "maximal":
        return Alphabet.maximal(field)
    letters: List[MonicQuad] = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            raise CliError("empty letter in alphabet %r" % text)
        a_val = field.zero
        b_val = None
        for piece in part.replace(",", " ").split():
            if piece.startswith("a="):
                a_val = _parse_element(field, piece[2:])
            elif piece.startswith("b="):
                b_val = _parse_element(field, piece[2:])
            else:
                raise CliError("cannot parse %r; expected a=<elem> b=<elem>" % part)
        if b_val is None:
            raise CliError("letter %r is missing b=" % part)
        letters.append(MonicQuad(a_val, b_val))
    try:
        return Alphabet(field, letters)
    except ValueError as exc:
        raise CliError(str(exc))


def _parse_word(alphabet: Alphabet, text: str) -> tuple:
    try:
        word = alphabet.parse_word(text)
    except ValueError as exc:
        raise CliError(str(exc))
    if not word:
        raise CliError("word must be nonempty")
    return word


def _parse_poly(field: FiniteField, text: str) -> Poly:
    try:
        return Poly.parse(field, text)
    except ValueError as exc:
        raise CliError(str(exc))


def _format_word(alphabet: Alphabet, word, innermost_first: bool) -> str:
    if innermost_first:
        word = tuple(reversed(tuple(word)))
    return alphabet.format_word(word)


# -- build -------------------------------------------------------------------


def _text_automaton(name: str, aut) -> List[str]:
    field = aut.field
    names = [aut.alphabet.letter_name(i) for i in range(len(aut.alphabet))]
    lines = []
    if isinstance(aut, InterimAutomaton):
        kind = "merged interim" if aut.merged else "interim"
        lines.append(
            "%s: %s automaton over F_%d, %d states" % (name, kind, field.q, len(aut.states))
        )
        labels = [s.label() for s in aut.states]
        acc = " ".join(labels[s] for s in sorted(aut.accepting))
        lines.append("accepting: %s" % acc)
        for s in range(len(aut.states)):
            for l in range(len(names)):
                lines.append("%s --%s--> %s" % (labels[s], names[l], labels[aut.delta[l][s]]))
    else:
        lines.append(
            "%s: partial DFA over F_%d, %d states, start %d, all states accepting"
            % (name, field.q, aut.n_states, aut.start)
        )
        for (s, l), t in sorted(aut.trans.items()):
            lines.append("%d --%s--> %d" % (s, names[l], t))
    return lines


def cmd_build(args) -> int:
    field = _field_from_args(args)
    alphabet = _parse_alphabet(field, args.alphabet)
    n_aut = build_interim(alphabet)
    if args.merge:
        try:
            n_aut = merge_dist_reg(n_aut)
        except ValueError as exc:
            raise CliError(str(exc))
    pieces = []
    if args.emit in ("N", "both"):
        pieces.append(("N", n_aut))
    if args.emit in ("M", "both"):
        m_aut = reverse_subset_prune(n_aut)
        if args.minimize:
            m_aut = minimize(m_aut)
        pieces.append(("M", m_aut))
    if args.format == "json":
        if len(pieces) == 1:
            print(export(pieces[0][1], "json"))
        else:
            bundle = {name: json.loads(to_json(aut)) for name, aut in pieces}
            print(json.dumps(bundle, indent=2, sort_keys=True))
    elif args.format == "dot":
        for _, aut in pieces:
            print(export(aut, "dot", trim=args.trim))
    else:
        for name, aut in pieces:
            for line in _text_automaton(name, aut):
                print(line)
    return 0


# -- test --------------------------------------------------------------------


def cmd_test(args) -> int:
    field = _field_from_args(args)
    if (args.word is None) == (args.poly is None):
        raise CliError("exactly one of --word or --poly is required")
    if args.word is not None:
        alphabet = _parse_alphabet(field, args.alphabet)
        word = _parse_word(alphabet, args.word)
        report = chain_irreducible(word, alphabet)
        if report.irreducible:
            print("Irreducible")
            return 0
        print("Reducible (witness index %d)" % report.first_failure)
        return 1
    poly = _parse_poly(field, args.poly)
    try:
        verdict = test_decomposable(poly)
    except ValueError as exc:
        raise CliError(str(exc))
    if verdict.status == IRREDUCIBLE:
        print("Irreducible")
        return 0
    if verdict.status == REDUCIBLE:
        print("Reducible (witness index %d)" % verdict.witness)
        return 1
    print("NotDecomposable")
    return 3


# -- enumerate / count -------------------------------------------------------


def _accepted_words(alphabet: Alphabet, n: int, budget: int) -> List[tuple]:
    words: List[tuple] = []
    for level, frontier in iter_levels(alphabet, n):
        if len(frontier) > budget:
            raise BudgetExceeded(
                "level %d holds %d words, budget is %d" % (level, len(frontier), budget)
            )
        if level == n:
            words = [w for w, _ in frontier]
    return words


def _compose_at(alphabet: Alphabet, word, shift) -> Poly:
    field = alphabet.field
    poly = Poly(field, (field.rneg(shift.val), field.one_raw), raw=True)
    for i in reversed(tuple(word)):
        quad = alphabet[i]
        shifted = poly - quad.a
        poly = shifted * shifted - quad.b
    return poly


def cmd_enumerate(args) -> int:
    field = _field_from_args(args)
    alphabet = _parse_alphabet(field, args.alphabet)
    if args.n < 1:
        raise CliError("n must be >= 1")
    words = _accepted_words(alphabet, args.n, args.budget)
    if args.words:
        for word in words:
            print(_format_word(alphabet, word, args.innermost_first))
        return 0
    if alphabet.is_maximal:
        if field.q * len(words) > args.budget:
            raise BudgetExceeded(
                "%d polynomials exceed the budget %d" % (field.q * len(words), args.budget)
            )
        for shift in field.elements():
            for word in words:
                poly = _compose_at(alphabet, word, shift)
                line = poly.csv()
                if args.annotate:
                    line += "  shift=%s word=%s" % (
                        shift,
                        _format_word(alphabet, word, args.innermost_first),
                    )
                print(line)
        return 0
    for word in words:
        line = pi(word, alphabet).csv()
        if args.annotate:
            line += "  word=%s" % _format_word(alphabet, word, args.innermost_first)
        print(line)
    return 0


def cmd_count(args) -> int:
    field = _field_from_args(args)
    alphabet = _parse_alphabet(field, args.alphabet)
    if args.n < 0:
        raise CliError("n must be >= 0")
    m_aut = reverse_subset_prune(build_interim(alphabet))
    words = count_accepted(m_aut, args.n)
    if args.words:
        print(words)
        return 0
    print("words: %d" % words)
    if alphabet.is_maximal and args.n >= 1:
        print("polynomials: %d" % (field.q * words))
    return 0


# -- freedom -----------------------------------------------------------------


def cmd_freedom(args) -> int:
    field = _field_from_args(args)
    alphabet = _parse_alphabet(field, args.alphabet)
    cert = freedom_certificate(alphabet)
    if cert:
        print("Free: %s" % cert.reason)
    else:
        print("Unknown: no criterion applies")
    if args.search_depth is not None:
        found = collision_search(alphabet, args.search_depth, budget=args.budget)
        if found is None:
            print("collision search to length %d: none found" % args.search_depth)
        else:
            u, v = found
            print(
                "collision: %s and %s compose to the same polynomial"
                % (alphabet.format_word(u), alphabet.format_word(v))
            )
    return 0


# -- local -------------------------------------------------------------------


def _parse_local_chain(p: int, prec: int, text: str) -> List[PadicQuad]:
    chain = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            raise CliError("empty letter in chain %r" % text)
        a_int, b_int = 0, None
        for piece in part.replace(",", " ").split():
            if piece.startswith("a="):
                a_int = int(piece[2:])
            elif piece.startswith("b="):
                b_int = int(piece[2:])
            else:
                raise CliError("cannot parse %r; expected a=<int> b=<int>" % part)
        if b_int is None:
            raise CliError("letter %r is missing b=" % part)
        chain.append(PadicQuad(PadicInt(p, a_int, prec), PadicInt(p, b_int, prec)))
    return chain


def cmd_local(args) -> int:
    if args.p is None:
        raise CliError("--p is required")
    if args.precision < 1:
        raise CliError("precision must be >= 1")
    try:
        chain = _parse_local_chain(args.p, args.precision, args.chain)
        verdict = local_irreducible(chain)
    except (EmptyChain, ValueError) as exc:
        raise CliError(str(exc))
    if verdict.status == IRREDUCIBLE:
        print("Irreducible")
        return 0
    if verdict.status == REDUCIBLE:
        print("Reducible (witness index %d)" % verdict.witness)
        return 1
    print("PreconditionFailed")
    return 3


# -- canonicalize / decompose -------------------------------------------------


def cmd_canonicalize(args) -> int:
    field = _field_from_args(args)
    poly = _parse_poly(field, args.poly)
    try:
        shift, word = canonicalize(poly)
    except NotIrreducible:
        print("NotIrreducible")
        return 1
    except NotDecomposable:
        print("NotDecomposable")
        return 3
    except ValueError as exc:
        raise CliError(str(exc))
    print("shift: %s" % shift)
    print("word: %s" % Alphabet.maximal(field).format_word(word))
    return 0


def cmd_decompose(args) -> int:
    field = _field_from_args(args)
    poly = _parse_poly(field, args.poly)
    try:
        chain = full_decompose(poly)
    except NotDecomposable:
        print("NotDecomposable")
        return 3
    except ValueError as exc:
        raise CliError(str(exc))
    print("chain: %s" % ", ".join(str(b) for b in chain.bs))
    print("shift: %s" % chain.shift)
    return 0


# -- parser ------------------------------------------------------------------


def _add_field_args(sub) -> None:
    sub.add_argument("--q", type=int, default=None, help="field size, an odd prime power")
    sub.add_argument("--p", type=int, default=None, help="field characteristic")
    sub.add_argument("--k", type=int, default=1, help="extension degree (with --p)")
    sub.add_argument(
        "--seed", type=int, default=None, help="reserved; all commands are deterministic"
    )


def _add_alphabet_arg(sub, required: bool = False) -> None:
    sub.add_argument(
        "--alphabet",
        default=None if required else "maximal",
        help="'maximal' or letters 'a=<elem> b=<elem>' separated by ';' (a defaults to 0)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadcomp",
        description="Irreducible compositions of monic quadratics over odd finite fields.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("build", help="construct the word automata")
    _add_field_args(s)
    _add_alphabet_arg(s)
    s.add_argument("--emit", choices=["N", "M", "both"], default="both")
    s.add_argument("--format", choices=["text", "dot", "json"], default="text")
    s.add_argument("--merge", action="store_true", help="merge mirrored interim states")
    s.add_argument("--minimize", action="store_true", help="minimize the partial DFA")
    s.add_argument("--trim", action="store_true", help="drop unreachable states (dot only)")
    s.set_defaults(func=cmd_build)

    s = subs.add_parser("test", help="decide irreducibility of a word or polynomial")
    _add_field_args(s)
    _add_alphabet_arg(s)
    s.add_argument("--word", default=None, help="word over the alphabet, outermost first")
    s.add_argument("--poly", default=None, help="coefficients, low degree first, comma separated")
    s.set_defaults(func=cmd_test)

    s = subs.add_parser("enumerate", help="list accepted words or their polynomials")
    _add_field_args(s)
    _add_alphabet_arg(s)
    s.add_argument("-n", type=int, required=True, help="word length, >= 1")
    s.add_argument("--words", action="store_true", help="print words instead of polynomials")
    s.add_argument("--annotate", action="store_true", help="append shift/word annotations")
    s.add_argument("--innermost-first", action="store_true", help="print words reversed")
    s.add_argument("--budget", type=int, default=DEFAULT_OUTPUT_BUDGET)
    s.set_defaults(func=cmd_enumerate)

    s = subs.add_parser("count", help="count accepted words of one length")
    _add_field_args(s)
    _add_alphabet_arg(s)
    s.add_argument("-n", type=int, required=True, help="word length, >= 0")
    s.add_argument("--words", action="store_true", help="print the bare word count")
    s.set_defaults(func=cmd_count)

    s = subs.add_parser("freedom", help="report whether the alphabet composes freely")
    _add_field_args(s)
    _add_alphabet_arg(s)
    s.add_argument("--search-depth", type=int, default=None, help="also search for collisions")
    s.add_argument("--budget", type=int, default=200_000)
    s.set_defaults(func=cmd_freedom)

    s = subs.add_parser("local", help="chain criterion over the p-adic integers")
    s.add_argument("--p", type=int, required=True, help="odd prime")
    s.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    s.add_argument("--chain", required=True, help="letters 'a=<int> b=<int>' separated by ';'")
    s.add_argument(
        "--seed", type=int, default=None, help="reserved; all commands are deterministic"
    )
    s.set_defaults(func=cmd_local)

    s = subs.add_parser("canonicalize", help="canonical shift and word of an irreducible")
    _add_field_args(s)
    s.add_argument("--poly", required=True, help="coefficients, low degree first")
    s.set_defaults(func=cmd_canonicalize)

    s = subs.add_parser("decompose", help="full quadratic decomposition of a polynomial")
    _add_field_args(s)
    s.add_argument("--poly", required=True, help="coefficients, low degree first")
    s.set_defaults(func=cmd_decompose)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
