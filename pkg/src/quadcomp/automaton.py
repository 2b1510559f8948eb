"""Automata deciding irreducibility of quadratic compositions.

build_interim constructs the complete DFA N over a letter alphabet: one
initial state, one distinguished state per field element (first letter
read), one regular state per field element (later letters), with
acceptance encoding the nonsquare test on the tracked value.  Words are
read outermost letter first.

reverse_subset_prune reverses N's arrows, determinizes by the subset
construction from the set of N's accepting states, and keeps only subsets
containing N's initial state.  The result is a partial DFA M, all of
whose states are accepting, that accepts exactly the words whose
composition is irreducible.  lazy_accepts runs the same subset simulation
word by word without materializing M.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import IndexOutOfRange, UnsupportedFormat
from .finite_field import FieldElement, FiniteField
from .monoid import Alphabet, MonicQuad


@dataclass(frozen=True)
class NState:
    """A state of the interim automaton.

    kind is 'initial', 'dist' (value seen as the first chain input) or
    'reg' (value reached after at least one letter application).
    """

    kind: str
    value: Optional[FieldElement]

    def label(self) -> str:
        if self.kind == "initial":
            return "I"
        if self.kind == "dist":
            return "<%s>" % self.value
        return "(%s)" % self.value


class InterimAutomaton:
    """Complete DFA over the alphabet; all transitions defined."""

    def __init__(self, field, alphabet, states, accepting, delta, merged=False):
        self.field = field
        self.alphabet = alphabet
        self.states = tuple(states)
        self.accepting = tuple(accepting)
        self.delta = tuple(tuple(row) for row in delta)
        self.merged = merged
        self._mask = None
        self._pre_memo = {}

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def accepting_mask(self) -> int:
        if self._mask is None:
            m = 0
            for t, acc in enumerate(self.accepting):
                if acc:
                    m |= 1 << t
            self._mask = m
        return self._mask

    def preimage_mask(self, mask: int, letter: int) -> int:
        """Bitmask of states whose `letter` successor lies in `mask`."""
        key = (mask, letter)
        hit = self._pre_memo.get(key)
        if hit is None:
            row = self.delta[letter]
            hit = 0
            for t in range(len(row)):
                if (mask >> row[t]) & 1:
                    hit |= 1 << t
            self._pre_memo[key] = hit
        return hit

    def __eq__(self, other):
        if not isinstance(other, InterimAutomaton):
            return NotImplemented
        return (
            self.field == other.field
            and self.alphabet == other.alphabet
            and self.states == other.states
            and self.accepting == other.accepting
            and self.delta == other.delta
        )


class PartialDfa:
    """Partial DFA with every state accepting; missing transitions reject."""

    def __init__(self, field, alphabet, n_states, trans, subsets=None, start=0):
        self.field = field
        self.alphabet = alphabet
        self.n_states = n_states
        self.trans = dict(trans)
        self.subsets = subsets
        self.start = start

    def __eq__(self, other):
        if not isinstance(other, PartialDfa):
            return NotImplemented
        return (
            self.field == other.field
            and self.alphabet == other.alphabet
            and self.n_states == other.n_states
            and self.start == other.start
            and self.trans == other.trans
        )


def build_interim(alphabet: Alphabet) -> InterimAutomaton:
    """The complete automaton N with 2q + 1 states."""
    alphabet.require_nonempty()
    field = alphabet.field
    q = field.q
    raws = list(field.iter_raw())
    states = [NState("initial", None)]
    states += [NState("dist", FieldElement(field, v)) for v in raws]
    states += [NState("reg", FieldElement(field, v)) for v in raws]
    accepting = [True]
    accepting += [field.is_nonsquare_raw(field.rneg(v)) for v in raws]
    accepting += [field.is_nonsquare_raw(v) for v in raws]
    delta = []
    for quad in alphabet:
        a, b = quad.a.val, quad.b.val
        row = [0] * (2 * q + 1)
        row[0] = 1 + field.index_of_raw(field.rneg(b))
        for i, v in enumerate(raws):
            s = field.rsub(v, a)
            image = field.rsub(field.rmul(s, s), b)
            target = 1 + q + field.index_of_raw(image)
            row[1 + i] = target
            row[1 + q + i] = target
        delta.append(row)
    return InterimAutomaton(field, alphabet, states, accepting, delta)


def merge_dist_reg(n_aut: InterimAutomaton) -> InterimAutomaton:
    """Identify <a> with (a); only language-preserving when -1 is a square."""
    field = n_aut.field
    if field.is_nonsquare_raw(field.rneg(field.one_raw)):
        raise ValueError("merge requires -1 to be a square in the field")
    if n_aut.merged:
        return n_aut
    q = field.q
    raws = list(field.iter_raw())
    states = [NState("initial", None)]
    states += [NState("reg", FieldElement(field, v)) for v in raws]
    accepting = [True] + [field.is_nonsquare_raw(v) for v in raws]
    delta = []
    for quad in n_aut.alphabet:
        a, b = quad.a.val, quad.b.val
        row = [0] * (q + 1)
        row[0] = 1 + field.index_of_raw(field.rneg(b))
        for i, v in enumerate(raws):
            s = field.rsub(v, a)
            image = field.rsub(field.rmul(s, s), b)
            row[1 + i] = 1 + field.index_of_raw(image)
        delta.append(row)
    return InterimAutomaton(field, n_aut.alphabet, states, accepting, delta, merged=True)


def reverse_subset_prune(n_aut: InterimAutomaton) -> PartialDfa:
    """Reverse N, determinize, drop non-accepting subsets.

    Subset states are explored breadth first with letters in alphabet
    order, so state ids are deterministic.  The start subset is the set of
    N's accepting states; a subset accepts iff it contains N's initial
    state, and only accepting subsets are kept.
    """
    start_mask = n_aut.accepting_mask
    ids = {start_mask: 0}
    order = [start_mask]
    trans = {}
    queue = deque([start_mask])
    n_letters = len(n_aut.alphabet)
    while queue:
        mask = queue.popleft()
        sid = ids[mask]
        for j in range(n_letters):
            nxt = n_aut.preimage_mask(mask, j)
            if not nxt & 1:
                continue
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            trans[(sid, j)] = ids[nxt]
    subsets = tuple(
        tuple(t for t in range(n_aut.n_states) if (mask >> t) & 1) for mask in order
    )
    return PartialDfa(n_aut.field, n_aut.alphabet, len(order), trans, subsets=subsets)


def accepts(m_aut: PartialDfa, word: Sequence[int]) -> bool:
    """Walk the partial DFA; undefined transitions reject."""
    state = m_aut.start
    n_letters = len(m_aut.alphabet)
    for j in word:
        if not isinstance(j, int) or not 0 <= j < n_letters:
            raise IndexOutOfRange("letter index %r out of range" % (j,))
        nxt = m_aut.trans.get((state, j))
        if nxt is None:
            return False
        state = nxt
    return True


def lazy_first_failure(n_aut: InterimAutomaton, word: Sequence[int]) -> Optional[int]:
    """Backward subset simulation on N.

    Returns the 1-based position of the first rejecting step, or None if
    the word is accepted.  Cost is O(q) per letter.
    """
    word = n_aut.alphabet.check_word(word)
    mask = n_aut.accepting_mask
    for pos, j in enumerate(word, 1):
        mask = n_aut.preimage_mask(mask, j)
        if not mask & 1:
            return pos
    return None


def lazy_accepts(n_aut: InterimAutomaton, word: Sequence[int]) -> bool:
    return lazy_first_failure(n_aut, word) is None


def count_accepted(m_aut: PartialDfa, n: int) -> int:
    """Number of accepted words of length exactly n (path counting)."""
    if n < 0:
        raise ValueError("word length must be >= 0")
    counts = [0] * m_aut.n_states
    counts[m_aut.start] = 1
    for _ in range(n):
        nxt = [0] * m_aut.n_states
        for (s, j), t in m_aut.trans.items():
            c = counts[s]
            if c:
                nxt[t] += c
        counts = nxt
    return sum(counts)


def minimize(m_aut: PartialDfa) -> PartialDfa:
    """Moore minimization of the partial DFA (via a rejecting sink)."""
    n = m_aut.n_states
    sink = n
    n_letters = len(m_aut.alphabet)
    full = [
        [m_aut.trans.get((s, j), sink) for j in range(n_letters)] for s in range(n)
    ]
    full.append([sink] * n_letters)
    block = [0] * n + [1]
    while True:
        remap = {}
        new_block = []
        for s in range(n + 1):
            key = (block[s],) + tuple(block[t] for t in full[s])
            if key not in remap:
                remap[key] = len(remap)
            new_block.append(remap[key])
        if new_block == block:
            break
        block = new_block
    merged_trans = {}
    for (s, j), t in m_aut.trans.items():
        merged_trans[(block[s], j)] = block[t]
    # renumber blocks by breadth-first discovery from the start block
    start_block = block[m_aut.start]
    number = {start_block: 0}
    queue = deque([start_block])
    while queue:
        b = queue.popleft()
        for j in range(n_letters):
            t = merged_trans.get((b, j))
            if t is not None and t not in number:
                number[t] = len(number)
                queue.append(t)
    trans = {
        (number[s], j): number[t]
        for (s, j), t in merged_trans.items()
        if s in number and t in number
    }
    return PartialDfa(m_aut.field, m_aut.alphabet, len(number), trans, start=0)


def canonical_form(m_aut: PartialDfa) -> tuple:
    """Canonical renumbering by BFS with letters in alphabet order.

    Two trim partial DFAs over the same alphabet are isomorphic iff their
    canonical forms are equal.
    """
    number = {m_aut.start: 0}
    queue = deque([m_aut.start])
    n_letters = len(m_aut.alphabet)
    while queue:
        s = queue.popleft()
        for j in range(n_letters):
            t = m_aut.trans.get((s, j))
            if t is not None and t not in number:
                number[t] = len(number)
                queue.append(t)
    edges = sorted(
        (number[s], j, number[t])
        for (s, j), t in m_aut.trans.items()
        if s in number and t in number
    )
    return (m_aut.n_states, len(number), tuple(edges))


def isomorphic(m1: PartialDfa, m2: PartialDfa) -> bool:
    if len(m1.alphabet) != len(m2.alphabet):
        return False
    return canonical_form(m1) == canonical_form(m2)


# -- serialization -----------------------------------------------------------


def _interim_reachable(n_aut: InterimAutomaton) -> list:
    seen = {0}
    queue = deque([0])
    while queue:
        s = queue.popleft()
        for row in n_aut.delta:
            t = row[s]
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return sorted(seen)


def _dot_name(s) -> str:
    return '"%s"' % str(s).replace('"', '\\"')


def to_dot(aut, trim: bool = False) -> str:
    """Graphviz rendering; accepting states get double circles."""
    lines = ["digraph {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    if isinstance(aut, InterimAutomaton):
        keep = set(_interim_reachable(aut)) if trim else set(range(aut.n_states))
        for t in sorted(keep):
            shape = "doublecircle" if aut.accepting[t] else "circle"
            lines.append("  %s [shape=%s];" % (_dot_name(aut.states[t].label()), shape))
        lines.append("  __start -> %s;" % _dot_name(aut.states[0].label()))
        for j, quad in enumerate(aut.alphabet):
            name = aut.alphabet.letter_name(j)
            for s in sorted(keep):
                t = aut.delta[j][s]
                if t in keep:
                    lines.append(
                        "  %s -> %s [label=\"%s\"];"
                        % (
                            _dot_name(aut.states[s].label()),
                            _dot_name(aut.states[t].label()),
                            name,
                        )
                    )
    elif isinstance(aut, PartialDfa):
        for s in range(aut.n_states):
            lines.append("  %s [shape=doublecircle];" % _dot_name(s))
        lines.append("  __start -> %s;" % _dot_name(aut.start))
        for (s, j), t in sorted(aut.trans.items()):
            lines.append(
                "  %s -> %s [label=\"%s\"];"
                % (_dot_name(s), _dot_name(t), aut.alphabet.letter_name(j))
            )
    else:
        raise UnsupportedFormat("cannot render %r" % type(aut).__name__)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _alphabet_json(alphabet: Alphabet) -> list:
    return [{"a": str(quad.a), "b": str(quad.b)} for quad in alphabet]


def to_json(aut) -> str:
    field = aut.field
    doc = {
        "field": {"p": field.p, "k": field.k},
        "alphabet": _alphabet_json(aut.alphabet),
    }
    if isinstance(aut, InterimAutomaton):
        doc["type"] = "interim"
        doc["merged"] = aut.merged
        doc["start"] = 0
        doc["states"] = [
            {
                "id": t,
                "accepting": aut.accepting[t],
                "kind": st.kind,
                "value": None if st.value is None else str(st.value),
            }
            for t, st in enumerate(aut.states)
        ]
        doc["transitions"] = [
            {"from": s, "letter": j, "to": aut.delta[j][s]}
            for s in range(aut.n_states)
            for j in range(len(aut.alphabet))
        ]
    elif isinstance(aut, PartialDfa):
        doc["type"] = "partial"
        doc["start"] = aut.start
        doc["states"] = [{"id": t, "accepting": True} for t in range(aut.n_states)]
        doc["transitions"] = [
            {"from": s, "letter": j, "to": t} for (s, j), t in sorted(aut.trans.items())
        ]
    else:
        raise UnsupportedFormat("cannot serialize %r" % type(aut).__name__)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _alphabet_from_json(field: FiniteField, items) -> Alphabet:
    letters = [
        MonicQuad(field.parse_element(it["a"]), field.parse_element(it["b"]))
        for it in items
    ]
    return Alphabet(field, letters)


def automaton_from_json(text: str):
    """Inverse of to_json for both automaton kinds."""
    doc = json.loads(text)
    field = FiniteField(doc["field"]["p"], doc["field"]["k"])
    alphabet = _alphabet_from_json(field, doc["alphabet"])
    if doc["type"] == "partial":
        trans = {(t["from"], t["letter"]): t["to"] for t in doc["transitions"]}
        return PartialDfa(field, alphabet, len(doc["states"]), trans, start=doc["start"])
    if doc["type"] == "interim":
        states = []
        accepting = []
        for st in sorted(doc["states"], key=lambda s: s["id"]):
            value = None if st["value"] is None else field.parse_element(st["value"])
            states.append(NState(st["kind"], value))
            accepting.append(bool(st["accepting"]))
        n = len(states)
        delta = [[0] * n for _ in alphabet.letters]
        for t in doc["transitions"]:
            delta[t["letter"]][t["from"]] = t["to"]
        return InterimAutomaton(
            field, alphabet, states, accepting, delta, merged=doc.get("merged", False)
        )
    raise UnsupportedFormat("unknown automaton type %r" % doc.get("type"))


def export(aut, fmt: str, trim: bool = False) -> str:
    if fmt == "dot":
        return to_dot(aut, trim=trim)
    if fmt == "json":
        return to_json(aut)
    raise UnsupportedFormat("unknown export format %r" % (fmt,))
