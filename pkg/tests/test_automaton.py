import json
from itertools import product

import pytest

from quadcomp import (
    Alphabet,
    FiniteField,
    MonicQuad,
    PartialDfa,
    UnsupportedFormat,
    accepts,
    automaton_from_json,
    build_interim,
    canonical_form,
    count_accepted,
    export,
    isomorphic,
    lazy_accepts,
    lazy_first_failure,
    merge_dist_reg,
    minimize,
    reverse_subset_prune,
    to_dot,
    to_json,
)

F3 = FiniteField(3)
F5 = FiniteField(5)
F7 = FiniteField(7)
F9 = FiniteField(3, 2)


def example_alphabet():
    return Alphabet(F5, [MonicQuad(F5.elem(0), F5.elem(2)),
                         MonicQuad(F5.elem(1), F5.elem(3))])


def test_interim_shape():
    for field, letters in ((F3, 3), (F5, 2), (F7, 7)):
        alph = Alphabet.maximal(field) if letters == field.q else example_alphabet()
        aut = build_interim(alph)
        assert len(aut.states) == 2 * field.q + 1
        assert aut.states[0].kind == "initial"
        assert 0 in aut.accepting
        assert not aut.merged


def state_of(aut, kind, value):
    for i, s in enumerate(aut.states):
        if s.kind == kind and s.value == value:
            return i
    raise AssertionError("no state %s %s" % (kind, value))


def test_interim_transitions_follow_the_maps():
    alph = example_alphabet()
    aut = build_interim(alph)
    # start moves to the distinguished state of -b
    assert aut.delta[0][0] == state_of(aut, "dist", F5.elem(3))
    assert aut.delta[1][0] == state_of(aut, "dist", F5.elem(2))
    # dist and reg states move to reg states through the letter map
    d3 = state_of(aut, "dist", F5.elem(3))
    assert aut.delta[0][d3] == state_of(aut, "reg", F5.elem(2))  # f(3) = 2
    assert aut.delta[1][d3] == state_of(aut, "reg", F5.elem(1))  # g(3) = 1
    r2 = state_of(aut, "reg", F5.elem(2))
    assert aut.delta[0][r2] == r2  # f(2) = 2
    # dist(a) accepting iff -a nonsquare; reg(a) iff a nonsquare
    assert aut.accepting[0]
    for i, s in enumerate(aut.states):
        if s.kind == "dist":
            assert aut.accepting[i] == (-s.value).is_nonsquare()
        elif s.kind == "reg":
            assert aut.accepting[i] == s.value.is_nonsquare()


def test_merge_is_legal_iff_minus_one_square():
    merged = merge_dist_reg(build_interim(example_alphabet()))
    assert merged.merged
    assert len(merged.states) == F5.q + 1
    merge_dist_reg(build_interim(Alphabet.maximal(F9)))
    for field in (F3, F7):
        with pytest.raises(ValueError):
            merge_dist_reg(build_interim(Alphabet.maximal(field)))


def test_merged_interim_golden_for_the_two_letter_example():
    # the merged interim automaton of f = x^2-2, g = (x-1)^2-3 over F_5
    aut = merge_dist_reg(build_interim(example_alphabet()))
    v = {x: state_of(aut, "reg", F5.elem(x)) for x in range(5)}
    f, g = 0, 1
    assert aut.delta[f][0] == v[3]
    assert aut.delta[g][0] == v[2]
    assert aut.delta[f][v[3]] == v[2]
    assert aut.delta[g][v[3]] == v[1]
    assert aut.delta[f][v[2]] == v[2]
    assert aut.delta[g][v[2]] == v[3]
    assert aut.delta[f][v[1]] == v[4]
    assert aut.delta[g][v[1]] == v[2]
    assert aut.delta[f][v[4]] == v[4]
    assert aut.delta[g][v[4]] == v[1]
    accepting = {i for i in range(len(aut.states)) if aut.accepting[i]}
    assert accepting == {0, v[2], v[3]}


def test_reverse_subset_prune_marks_all_states_accepting():
    m = reverse_subset_prune(build_interim(example_alphabet()))
    assert m.start == 0
    assert m.n_states == 5
    # every state is accepting: acceptance is just transition existence
    for word in product(range(2), repeat=4):
        path_ok = True
        s = m.start
        for letter in word:
            nxt = m.trans.get((s, letter))
            if nxt is None:
                path_ok = False
                break
            s = nxt
        assert path_ok == accepts(m, word)


def test_raw_dfa_for_the_maximal_f3_alphabet():
    # golden machine: S --h--> 1, 1 --g--> 2, 1 --h--> 3,
    # 2 --f--> 2, and 3 loops on all three letters
    m = reverse_subset_prune(build_interim(Alphabet.maximal(F3)))
    f, g, h = 0, 1, 2
    golden = {(0, h): 1, (1, g): 2, (1, h): 3, (2, f): 2, (3, f): 3, (3, g): 3, (3, h): 3}
    assert m.n_states == 4
    assert m.trans == golden


def test_minimized_dfa_for_the_two_letter_example():
    # golden machine: S --f--> S, S --g--> 1 --g--> 2 --f--> 3
    m = minimize(reverse_subset_prune(build_interim(example_alphabet())))
    golden = PartialDfa(F5, example_alphabet(), 4,
                        {(0, 0): 0, (0, 1): 1, (1, 1): 2, (2, 0): 3})
    assert m.n_states == 4
    assert isomorphic(m, golden)
    assert canonical_form(m) == canonical_form(golden)


def test_minimize_preserves_language_and_counts():
    for alph in (example_alphabet(), Alphabet.maximal(F3), Alphabet.maximal(F5)):
        m = reverse_subset_prune(build_interim(alph))
        mm = minimize(m)
        assert mm.n_states <= m.n_states
        for n in range(7):
            assert count_accepted(m, n) == count_accepted(mm, n)
        for word in product(range(len(alph)), repeat=3):
            assert accepts(m, word) == accepts(mm, word)


def test_accepts_known_words():
    alph = example_alphabet()
    m = reverse_subset_prune(build_interim(alph))
    assert accepts(m, ())
    assert accepts(m, alph.parse_word("ggf"))
    assert accepts(m, alph.parse_word("fgg"))
    assert not accepts(m, alph.parse_word("gf"))
    assert not accepts(m, alph.parse_word("fgf"))
    mx = Alphabet.maximal(F3)
    m3 = reverse_subset_prune(build_interim(mx))
    assert accepts(m3, mx.parse_word("hg"))
    assert accepts(m3, mx.parse_word("hh"))
    assert not accepts(m3, mx.parse_word("hgg"))
    assert accepts(m3, mx.parse_word("hgf"))


def test_lazy_simulation_equals_dfa():
    for alph in (example_alphabet(), Alphabet.maximal(F3)):
        n_aut = build_interim(alph)
        m = reverse_subset_prune(n_aut)
        for t in range(1, 6):
            for word in product(range(len(alph)), repeat=t):
                assert lazy_accepts(n_aut, word) == accepts(m, word)


def test_lazy_failure_index_points_at_first_bad_prefix():
    alph = example_alphabet()
    n_aut = build_interim(alph)
    m = reverse_subset_prune(n_aut)
    for t in range(1, 6):
        for word in product(range(2), repeat=t):
            pos = lazy_first_failure(n_aut, word)
            if pos is None:
                assert accepts(m, word)
            else:
                assert not accepts(m, word[:pos])
                assert pos == 1 or accepts(m, word[: pos - 1])


def test_language_is_prefix_closed():
    for alph in (example_alphabet(), Alphabet.maximal(F3)):
        m = reverse_subset_prune(build_interim(alph))
        for t in range(1, 6):
            for word in product(range(len(alph)), repeat=t):
                if accepts(m, word):
                    assert all(accepts(m, word[:i]) for i in range(t))


def test_count_accepted_matches_exhaustive_filter():
    for alph in (example_alphabet(), Alphabet.maximal(F3)):
        m = reverse_subset_prune(build_interim(alph))
        for n in range(6):
            brute = sum(1 for w in product(range(len(alph)), repeat=n) if accepts(m, w))
            assert count_accepted(m, n) == brute
    with pytest.raises(ValueError):
        count_accepted(m, -1)


def test_example_count_sequences():
    m5 = reverse_subset_prune(build_interim(example_alphabet()))
    assert [count_accepted(m5, n) for n in range(9)] == [1, 2, 3, 4, 4, 4, 4, 4, 4]
    m3 = reverse_subset_prune(build_interim(Alphabet.maximal(F3)))
    assert [count_accepted(m3, n) for n in range(8)] == [1, 1, 2, 4, 10, 28, 82, 244]


def test_merge_preserves_language():
    for alph in (example_alphabet(), Alphabet.maximal(F9)):
        n_aut = build_interim(alph)
        merged = merge_dist_reg(n_aut)
        m1 = reverse_subset_prune(n_aut)
        m2 = reverse_subset_prune(merged)
        for n in range(5):
            assert count_accepted(m1, n) == count_accepted(m2, n)
        width = min(len(alph), 4)
        for t in range(1, 3):
            for word in product(range(width), repeat=t):
                assert accepts(m1, word) == accepts(m2, word)


def test_dot_export():
    m = minimize(reverse_subset_prune(build_interim(example_alphabet())))
    dot = to_dot(m)
    assert dot.startswith("digraph")
    edges = [line for line in dot.splitlines() if "->" in line and "__start" not in line]
    assert len(edges) == 4
    assert dot.count("doublecircle") == 4  # every state accepting
    n_aut = build_interim(example_alphabet())
    assert "(0)" in to_dot(n_aut)
    assert "(0)" not in to_dot(merge_dist_reg(n_aut), trim=True)


def test_json_round_trip():
    n_aut = build_interim(example_alphabet())
    m = reverse_subset_prune(n_aut)
    assert automaton_from_json(to_json(n_aut)) == n_aut
    assert automaton_from_json(to_json(m)) == m
    merged = merge_dist_reg(n_aut)
    assert automaton_from_json(to_json(merged)) == merged
    n9 = build_interim(Alphabet.maximal(F9))
    assert automaton_from_json(to_json(n9)) == n9
    blob = json.loads(to_json(m))
    assert blob["type"] == "partial"
    assert all(s["accepting"] for s in blob["states"])
    assert blob["field"] == {"p": 5, "k": 1}


def test_export_rejects_unknown_format():
    m = reverse_subset_prune(build_interim(example_alphabet()))
    with pytest.raises(UnsupportedFormat):
        export(m, "yaml")


def test_isomorphic_distinguishes():
    m5 = minimize(reverse_subset_prune(build_interim(example_alphabet())))
    m3 = minimize(reverse_subset_prune(build_interim(Alphabet.maximal(F3))))
    assert isomorphic(m5, m5)
    assert not isomorphic(m5, m3)
