import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from releq import (Alphabet, AutomatonError, Dfa, GenParams, Nfa, complete,
                   determinize, disjoint_union, enumerate_language, gen_nfa,
                   hopcroft_minimize, membership, parse,
                   partial_derivative_nfa, read_automaton, reverse,
                   worst_case_family, write_automaton)
from oracles import words_over

AB = Alphabet(("a", "b"))


def nfa_samples(max_n=6):
    params = st.builds(
        GenParams,
        n=st.integers(1, max_n),
        k=st.integers(1, 2),
        d=st.sampled_from([0.1, 0.3, 0.5, 0.8]),
        seed=st.integers(0, 2 ** 48),
    ).filter(lambda p: round(p.d * p.k * p.n * p.n) >= 1)
    return params.map(gen_nfa)


class TestAlphabet:
    def test_order_preserved(self):
        assert tuple(Alphabet(("b", "a"))) == ("b", "a")

    def test_first(self):
        assert Alphabet.first(3).symbols == ("a", "b", "c")

    def test_rejects_duplicates_and_empty(self):
        with pytest.raises(AutomatonError):
            Alphabet(("a", "a"))
        with pytest.raises(AutomatonError):
            Alphabet(())
        with pytest.raises(AutomatonError):
            Alphabet(("A",))

    def test_index(self):
        assert AB.index("b") == 1
        with pytest.raises(AutomatonError):
            AB.index("c")


class TestValidation:
    def test_nfa_rejects_out_of_range_ids(self):
        with pytest.raises(AutomatonError):
            Nfa(2, AB, frozenset({(0, "a", 2)}), frozenset({0}), frozenset())
        with pytest.raises(AutomatonError):
            Nfa(2, AB, frozenset(), frozenset({5}), frozenset())

    def test_nfa_rejects_foreign_symbol(self):
        with pytest.raises(AutomatonError):
            Nfa(1, AB, frozenset({(0, "c", 0)}), frozenset({0}), frozenset())

    def test_dfa_rejects_partial_delta(self):
        with pytest.raises(AutomatonError):
            Dfa(2, AB, ((0, 1),), 0, frozenset())

    def test_dfa_rejects_bad_target(self):
        with pytest.raises(AutomatonError):
            Dfa(1, AB, ((0, 3),), 0, frozenset())


class TestComplete:
    def test_already_complete_unchanged(self):
        d = complete(2, AB, {(0, "a"): 1, (0, "b"): 0, (1, "a"): 0, (1, "b"): 1}, 0, {1})
        assert d.n_states == 2

    def test_missing_all_rows_gets_sink(self):
        d = complete(1, AB, {}, 0, {0})
        assert d.n_states == 2
        sink = 1
        assert all(t == sink for t in d.delta[sink])
        assert sink not in d.finals

    def test_language_unchanged(self):
        partial = {(0, "a"): 1, (1, "b"): 0}
        d = complete(2, AB, partial, 0, {1})
        for w in words_over("ab", 6):
            state, alive = 0, True
            for c in w:
                nxt = partial.get((state, c))
                if nxt is None:
                    alive = False
                    break
                state = nxt
            assert membership(d, w) == (alive and state == 1)


class TestDeterminize:
    def test_ladder_family_minimal_size(self):
        d = determinize(worst_case_family(4, variant="nfa"))
        assert hopcroft_minimize(d).n_states == 2 ** 3

    def test_dfa_shaped_nfa_round_trips(self):
        d = complete(3, AB, {(0, "a"): 1, (0, "b"): 2, (1, "a"): 1, (1, "b"): 2,
                             (2, "a"): 0, (2, "b"): 0}, 0, {2})
        again = determinize(d.to_nfa())
        assert again.n_states == d.n_states
        assert enumerate_language(again, 6) == enumerate_language(d, 6)

    @given(nfa_samples())
    @settings(max_examples=80, deadline=None)
    def test_language_preserved(self, n):
        d = determinize(n)
        assert d.n_states >= 1
        assert len(d.delta) == d.n_states
        for w in words_over([*n.alphabet], 5):
            assert membership(d, w) == membership(n, w)


class TestMembership:
    def test_empty_word_needs_final_initial(self):
        n = Nfa(1, AB, frozenset(), frozenset({0}), frozenset({0}))
        assert membership(n, "")

    def test_ladder_accepts_aa(self):
        three_state = partial_derivative_nfa(worst_case_family(1))
        assert three_state.n_states == 3
        assert membership(three_state, "aa")

    def test_empty_language(self):
        d = complete(1, AB, {(0, "a"): 0, (0, "b"): 0}, 0, set())
        for w in words_over("ab", 4):
            assert not membership(d, w)

    def test_rejects_foreign_symbol(self):
        d = complete(1, AB, {(0, "a"): 0, (0, "b"): 0}, 0, set())
        with pytest.raises(AutomatonError):
            membership(d, "x")


class TestEnumerateLanguage:
    def test_epsilon_machine(self):
        n = Nfa(1, Alphabet(("a",)), frozenset(), frozenset({0}), frozenset({0}))
        assert enumerate_language(n, 3) == [""]

    def test_family_short_words(self):
        d = determinize(partial_derivative_nfa(worst_case_family(1)))
        assert enumerate_language(d, 2) == ["aa", "ab"]

    def test_empty_language(self):
        n = Nfa(1, AB, frozenset(), frozenset({0}), frozenset())
        assert enumerate_language(n, 4) == []

    def test_limit_guard(self):
        n = Nfa(1, AB, frozenset(), frozenset({0}), frozenset({0}))
        with pytest.raises(AutomatonError):
            enumerate_language(n, 13)

    def test_length_lex_order(self):
        d = determinize(partial_derivative_nfa(parse("(a+b)*")))
        assert enumerate_language(d, 2) == ["", "a", "b", "aa", "ab", "ba", "bb"]


class TestReverse:
    def test_involution_on_transitions(self):
        n = gen_nfa(GenParams(n=5, k=2, d=0.4, seed=9))
        assert reverse(reverse(n)).transitions == n.transitions

    def test_mirrors_membership(self):
        n = gen_nfa(GenParams(n=4, k=2, d=0.5, seed=3))
        r = reverse(n)
        for w in words_over("ab", 6):
            assert membership(n, w) == membership(r, w[::-1])

    def test_single_looped_state(self):
        n = Nfa(1, Alphabet(("a",)), frozenset({(0, "a", 0)}), frozenset({0}),
                frozenset({0}))
        r = reverse(n)
        assert r.transitions == n.transitions
        assert r.initials == n.finals and r.finals == n.initials


class TestDisjointUnion:
    def test_sizes_and_offset(self):
        x = gen_nfa(GenParams(n=3, k=2, d=0.5, seed=1))
        y = gen_nfa(GenParams(n=4, k=2, d=0.5, seed=2))
        combined, offset = disjoint_union(x, y)
        assert combined.n_states == 7
        assert offset == 3

    def test_alphabet_mismatch(self):
        x = Nfa(1, Alphabet(("a",)), frozenset(), frozenset({0}), frozenset())
        y = Nfa(1, AB, frozenset(), frozenset({0}), frozenset())
        with pytest.raises(AutomatonError):
            disjoint_union(x, y)

    def test_shifted_half_keeps_language(self):
        x = gen_nfa(GenParams(n=3, k=2, d=0.5, seed=4))
        y = gen_nfa(GenParams(n=4, k=2, d=0.6, seed=5))
        combined, offset = disjoint_union(x, y)
        shifted = Nfa(
            combined.n_states,
            combined.alphabet,
            combined.transitions,
            frozenset(q + offset for q in y.initials),
            combined.finals,
        )
        for w in words_over("ab", 5):
            assert membership(shifted, w) == membership(y, w)


class TestTextFormat:
    def test_round_trip_nfa_bit_exact(self):
        n = gen_nfa(GenParams(n=5, k=2, d=0.3, seed=11))
        text = write_automaton(n)
        assert write_automaton(read_automaton(text)) == text

    def test_round_trip_dfa_bit_exact(self):
        d = determinize(gen_nfa(GenParams(n=5, k=2, d=0.5, seed=12)))
        text = write_automaton(d)
        again = read_automaton(text)
        assert isinstance(again, Dfa)
        assert write_automaton(again) == text

    def test_comments_and_partial_dfa(self):
        text = "# header comment\ndfa k=2 n=2\ninitial: 0\nfinal: 1\n0 a 1\n"
        d = read_automaton(text)
        assert isinstance(d, Dfa)
        assert d.n_states == 3
        assert membership(d, "a") and not membership(d, "b")

    @pytest.mark.parametrize(
        "bad",
        [
            "",
            "pda k=2 n=1\ninitial: 0\nfinal:\n",
            "dfa k=2 n=1\ninitial: 0 1\nfinal:\n",
            "dfa k=2 n=1\ninitial: 0\nfinal:\n0 a 0\n0 a 0\n",
            "nfa k=2 n=1\ninitial: 0\nfinal:\n0 c 0\n",
            "nfa k=2 n=1\ninitial: 2\nfinal:\n",
            "nfa k=2 n=1\ninitial: 0\n0 a 0\n",
        ],
    )
    def test_malformed_inputs_rejected(self, bad):
        with pytest.raises(AutomatonError):
            read_automaton(bad)

    @given(nfa_samples())
    @settings(max_examples=60, deadline=None)
    def test_round_trip_any_generated_machine(self, n):
        text = write_automaton(n)
        assert write_automaton(read_automaton(text)) == text


def test_determinize_language_preserved_over_large_seeded_population():
    densities = (0.1, 0.5, 0.8)
    done = 0
    seed = 0
    while done < 1000:
        seed += 1
        n_states = 2 + seed % 5
        k = 1 + seed % 2
        d = densities[seed % 3]
        if round(d * k * n_states * n_states) < 1:
            continue
        n = gen_nfa(GenParams(n=n_states, k=k, d=d, seed=seed))
        assert enumerate_language(determinize(n), 6) == enumerate_language(n, 6)
        done += 1
