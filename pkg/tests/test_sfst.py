import itertools

import pytest
from hypothesis import given, settings, strategies as st

from subreg import machines
from subreg.core import strings_upto, word
from subreg.errors import AlphabetMismatch, NotTotal, UnknownSymbol
from subreg.sfst import (Sfst, distinguishing_suffix, equivalent, is_onward, isomorphic, make_onward, minimize,
                         onward_violation, outputs_upto, random_sfst, run_trace, transduce, trim)

from conftest import enumerated_translation_classes, random_machines, same_function_upto


def test_transduce_examples(bms):
    assert transduce(bms["syncope"], word("C V C V C")) == word("C C V C")
    assert transduce(bms["reduction"], word("V C V")) == word("@ C V")
    assert transduce(bms["tiosl-not-tssl"], word("b a a b b")) == word("b d c")
    assert transduce(bms["nononward-tssl"], word("b a a")) == word("b a a b")


def test_run_trace_labels(bms):
    run = run_trace(bms["syncope"], word("C V V"))
    assert [a.token for a in run] == ["C:C", "V:", "V:V"]


def test_totality_enforced():
    with pytest.raises(NotTotal):
        Sfst(["p"], "ab", "a", "p", {("p", "a"): ("p", ())}, {"p": ()})
    with pytest.raises(NotTotal):
        Sfst(["p"], "a", "a", "p", {("p", "a"): ("p", ())}, {})
    with pytest.raises(UnknownSymbol):
        Sfst(["p"], "a", "a", "p", {("p", "a"): ("p", ("z",))}, {"p": ()})


def test_onwardness_of_builtins(bms):
    assert is_onward(bms["syncope"])
    assert is_onward(bms["reduction"])
    assert is_onward(bms["tiosl-not-tssl"])
    assert not is_onward(bms["nononward-tssl"])
    q, prefix = onward_violation(bms["nononward-tssl"])
    assert prefix


def test_make_onward_migrates_common_prefix():
    # hand-computed: every output from s1 starts with b, so that b moves onto the entry edge
    T = Sfst(["s0", "s1"], "a", "b", "s0",
             {("s0", "a"): ("s1", ()), ("s1", "a"): ("s1", ("b",))},
             {"s0": (), "s1": ("b",)})
    O = make_onward(T)
    assert O.delta["s0", "a"] == ("s1", ("b",))
    assert O.delta["s1", "a"] == ("s1", ("b",))
    assert O.final["s1"] == ()
    assert is_onward(O)


def test_make_onward_idempotent_on_onward_input(bms):
    T = bms["syncope"]
    assert make_onward(T).delta == T.delta
    assert make_onward(T).final == T.final


def test_make_onward_splits_reentered_start():
    # the start is re-entered and all its outputs begin with x
    T = Sfst(["p"], "a", "x", "p", {("p", "a"): ("p", ("x",))}, {"p": ("x",)})
    O = make_onward(T)
    assert is_onward(O)
    assert O.start != "p"
    assert same_function_upto(T, O, 6)


@pytest.mark.parametrize("name, sigma", [("syncope", "CV"), ("reduction", "CV")])
def test_minimal_state_count_matches_translation_count(bms, name, sigma):
    f = lambda x: transduce(bms[name], x)
    assert len(minimize(bms[name]).states) == enumerated_translation_classes(f, sigma)


def test_minimal_state_counts(bms):
    counts = {name: len(minimize(T).states) for name, T in bms.items()}
    assert counts == {"reduction": 2, "syncope": 2, "tiosl-not-tssl": 5, "nononward-tssl": 3}


def test_minimize_canonical_names(bms):
    M = minimize(bms["syncope"])
    assert M.states == ("q0", "q1") or list(M.states) == ["q0", "q1"]
    assert M.start == "q0"


@pytest.mark.parametrize("seed", range(30))
def test_random_minimize_and_onward(seed):
    (T,) = random_machines(1, seed)
    M = minimize(T)
    assert is_onward(M)
    assert same_function_upto(T, M, 6)
    assert isomorphic(minimize(M), M)
    assert len(M.states) <= len(trim(make_onward(T)).states)


def test_equivalence_against_exhaustive():
    ms = random_machines(40, seed=7, max_states=3, max_alpha=2)
    ms = [T for T in ms if T.input_alphabet == ("a", "b")]
    for T1, T2 in itertools.combinations(ms, 2):
        same = same_function_upto(T1, T2, 8)
        assert equivalent(T1, T2) == same
        if not same:
            y = distinguishing_suffix(T1, T1.start, T2, T2.start)
            assert transduce(T1, y) != transduce(T2, y)
            shorter = [x for x in strings_upto("ab", len(y) - 1) if transduce(T1, x) != transduce(T2, x)]
            assert not shorter


def test_equivalent_alphabet_mismatch(bms):
    with pytest.raises(AlphabetMismatch):
        equivalent(bms["syncope"], bms["nononward-tssl"])


def test_builtin_equivalence_matrix(bms):
    for (n1, T1), (n2, T2) in itertools.product(bms.items(), repeat=2):
        if set(T1.input_alphabet) != set(T2.input_alphabet):
            continue
        assert equivalent(T1, T2) == same_function_upto(T1, T2, 10), (n1, n2)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(1, 4))
def test_onward_preserves_function(rng, n):
    T = random_sfst(rng, n, "ab", "xy")
    assert outputs_upto(make_onward(T), 6) == outputs_upto(T, 6)
    assert is_onward(make_onward(T))
