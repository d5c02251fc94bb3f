"""Acceptance criteria. Each test prints one PASS/FAIL line, then asserts.

Run under pytest (``pytest -s tests/test_acceptance.py`` shows the lines inline;
they also appear in the captured output of ``pytest -v``) or directly with
``python3 tests/test_acceptance.py``.
"""

import functools
import itertools
import random
import sys

import pydot
import pytest

from subreg import formats, machines
from subreg.classes import (LocalityParams, brute_check_tiosl, brute_check_tssl, build_canonical_tssl, check_tiosl,
                            check_tisl, check_tosl, check_tssl, lift_tier_input, lift_tier_output, replay,
                            shape_check_tssl)
from subreg.core import Tier, strings_upto, token_of, word
from subreg.decompose import decompose, hom_apply
from subreg.errors import AlphabetMismatch, NotInClass
from subreg.sfst import actions_of_machine, equivalent, is_onward, isomorphic, make_onward, minimize, outputs_upto, transduce
from subreg.views import FunctionHandle, actions_of_function

sys.path.insert(0, __file__.rsplit("/", 1)[0])
from conftest import all_tiers, random_local_machine, random_machines  # noqa: E402


_capture = {}


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    _capture["capsys"] = capsys
    yield
    _capture.clear()


def report(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    capsys = _capture.get("capsys")
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, line


def builtin_handles():
    return {name: FunctionHandle(T) for name, T in machines.builtins().items()}


def io_tier(F, on):
    return Tier(set(F.input_alphabet) | set(F.output_alphabet), on)


def action_tiers(F):
    return all_tiers(sorted(actions_of_function(F), key=token_of))


@functools.lru_cache(maxsize=None)
def local_suite(size=25, seed=2024):
    """``size`` random functions each accepted as 2-TISL or 2-TOSL on some tier.

    Entries are ``(handle, kind, symbol tier)``. Machines come from
    input- or output-memory generators and random tiers, then are filtered by
    the exact checker.
    """
    rng = random.Random(seed)
    found = []
    while len(found) < size:
        kind = rng.choice(["isl", "osl"])
        T = random_local_machine(rng, kind, sigma=rng.choice(["ab", "abc"]), gamma=rng.choice(["xy", "xyz"]))
        F = FunctionHandle(T)
        symbols = sorted(set(F.input_alphabet) | set(F.output_alphabet))
        tiers = [Tier.full(symbols)] + [Tier.from_mask(symbols, rng.randrange(1 << len(symbols))) for _ in range(3)]
        for t in tiers:
            check = check_tisl if kind == "isl" else check_tosl
            if check(F, 2, t).member:
                found.append((F, kind, t))
                break
    return tuple(found)


# 1 -------------------------------------------------------------------------

def test_criterion_1_reference_machines():
    bms = machines.builtins()
    bad = []
    for x in strings_upto("CV", 12):
        if transduce(bms["syncope"], x) != machines.rs_direct(x):
            bad.append(("syncope", x))
        if transduce(bms["reduction"], x) != machines.reduction_direct(x):
            bad.append(("reduction", x))
    bad_example = transduce(bms["tiosl-not-tssl"], word("b a a b b")) == word("b d c")
    for x in strings_upto("ab", 10):
        if transduce(bms["nononward-tssl"], x) != machines.xyx_direct(x):
            bad.append(("nononward-tssl", x))
    report(1, not bad and bad_example,
           f"reduction and syncope machines agree with direct formulas on |x|<=12, tiosl-not-tssl 'b a a b b' -> 'b d c' ({bad_example}), "
           f"nononward-tssl computes xyx on |x|<=10; {len(bad)} mismatches")


# 2 -------------------------------------------------------------------------

def test_criterion_2_syncope_not_tiosl():
    rs = FunctionHandle(machines.syncope())
    failures = []
    checked = 0
    for t in all_tiers("CV"):
        for i, j in itertools.product((1, 2, 3), repeat=2):
            p = LocalityParams(i, j)
            v = check_tiosl(rs, p, t)
            checked += 1
            if v.member or v.continuation != word("V") or not replay(rs, v, t, params=p):
                failures.append((sorted(t.on_tier), i, j))
    report(2, not failures,
           f"syncope rejected as i,j-TIOSL for {checked} (i,j,tier) triples with witnesses replaying on "
           f"continuation V; failures: {failures}")


# 3 -------------------------------------------------------------------------

def test_criterion_3_syncope_tssl_full_action_tier():
    rs = FunctionHandle(machines.syncope())
    t = Tier.full(actions_of_function(rs))
    v = check_tssl(rs, 2, t)
    try:
        T = build_canonical_tssl(rs, 2, t)
        built = is_onward(T) and shape_check_tssl(T, 2, t) and equivalent(T, machines.syncope())
    except NotInClass:
        built = False
    detail = (f"check_tssl(rs, 2, full action tier) = {v.member}; canonical build valid = {built}")
    if not v.member:
        detail += (f"; counterexample w={' '.join(v.witness_w)!r} x={' '.join(v.witness_x)!r} "
                   f"continuation={' '.join(v.continuation)!r} (replays: {replay(rs, v, t, k=2)})")
    report(3, v.member and built, detail)


def test_criterion_3_companion_vowel_action_tier():
    rs = FunctionHandle(machines.syncope())
    acts = actions_of_function(rs)
    t = Tier(acts, [a for a in acts if a.input == "V"])
    v = check_tssl(rs, 2, t)
    T = build_canonical_tssl(rs, 2, t)
    ok = v.member and is_onward(T) and shape_check_tssl(T, 2, t) and equivalent(T, machines.syncope())
    report("3 (vowel-action tier {V:, V:V})", ok,
           f"check_tssl = {v.member}; canonical build onward, shape-valid, and equivalent to the syncope machine = {ok}")


# 4 -------------------------------------------------------------------------

def test_criterion_4_lifting():
    red = FunctionHandle(machines.reduction())
    t = io_tier(red, ["V", "@"])
    reduction_ok = check_tosl(red, 2, t).member and check_tssl(red, 2, lift_tier_output(t, actions_of_function(red))).member
    suite = local_suite()
    bad = 0
    for F, kind, st in suite:
        lift = lift_tier_input if kind == "isl" else lift_tier_output
        if not check_tssl(F, 2, lift(st, actions_of_function(F))).member:
            bad += 1
    kinds = {k: sum(1 for _, kk, _ in suite if kk == k) for k in ("isl", "osl")}
    report(4, reduction_ok and bad == 0,
           f"reduction lifted {{V,@}} tier is 2-TSSL ({reduction_ok}); {len(suite)} random 2-TISL/2-TOSL functions "
           f"({kinds['isl']} TISL, {kinds['osl']} TOSL), {bad} lifted checks failed")


# 5 -------------------------------------------------------------------------

def test_criterion_5_tiosl_not_tssl():
    F = FunctionHandle(machines.tiosl_not_tssl())
    pos = check_tiosl(F, LocalityParams(2, 2), io_tier(F, "ab")).member
    tiers = action_tiers(F)
    accepted = [(k, sorted(map(token_of, t.on_tier))) for t in tiers for k in (1, 2, 3) if check_tssl(F, k, t).member]
    report(5, pos and len(tiers) == 32 and not accepted,
           f"2,2-TIOSL on {{a,b}} = {pos}; TSSL accepted on {len(accepted)} of {3 * len(tiers)} (k, tier) pairs")


# 6 -------------------------------------------------------------------------

def test_criterion_6_nononward_tssl():
    T = machines.nononward_tssl()
    F = FunctionHandle(T)
    shape = shape_check_tssl(T, 2, Tier.full(actions_of_machine(T)))
    tiers = action_tiers(F)
    accepted = [k for t in tiers for k in (1, 2, 3) if check_tssl(F, k, t).member]
    report(6, shape and not is_onward(T) and len(tiers) == 4 and not accepted,
           f"nononward-tssl shape-valid 2-TSSL = {shape}, onward = {is_onward(T)}; function accepted as TSSL on "
           f"{len(accepted)} of {3 * len(tiers)} (k, tier) pairs over {{a:a, b:b}}")


# 7 -------------------------------------------------------------------------

def _tssl_triples():
    for name, F in builtin_handles().items():
        for t in action_tiers(F):
            for k in (1, 2, 3):
                yield name, F, k, t
    for n, (F, _, _) in enumerate(local_suite()):
        acts = sorted(actions_of_function(F), key=token_of)
        if len(acts) > 6:
            continue
        for t in all_tiers(acts):
            yield f"random{n}", F, 2, t


def test_criterion_7_canonical_construction():
    accepted = rejected = 0
    problems = []
    for name, F, k, t in _tssl_triples():
        v = check_tssl(F, k, t)
        if v.member:
            accepted += 1
            T = build_canonical_tssl(F, k, t)
            if not (is_onward(T) and shape_check_tssl(T, k, t) and equivalent(T, F.canon)):
                problems.append((name, k, sorted(map(token_of, t.on_tier))))
        else:
            rejected += 1
            try:
                build_canonical_tssl(F, k, t)
                problems.append((name, k, "built despite rejection"))
            except NotInClass as exc:
                if not replay(F, exc.verdict, t, k=k):
                    problems.append((name, k, "witness does not replay"))
    report(7, not problems and accepted > 0,
           f"{accepted} accepted triples built onward, shape-valid, equivalent; {rejected} rejected triples "
           f"raised NotInClass with replayable witnesses; problems: {problems[:5]}")


# 8 -------------------------------------------------------------------------

def test_criterion_8_decomposition():
    bad = []
    for name, T in machines.builtins().items():
        g, h = decompose(T)
        for x in strings_upto(T.input_alphabet, 8):
            if hom_apply(h, transduce(g, x)) != transduce(T, x):
                bad.append((name, x))
                break
        full = Tier.full(set(g.input_alphabet) | set(g.output_alphabet))
        if not check_tiosl(g, LocalityParams(1, 2), full).member:
            bad.append((name, "g not 1,2-TIOSL"))
    report(8, not bad, f"h(g(x)) = T(x) for |x|<=8 and g is 1,2-TIOSL on the full tier for all builtins; {bad}")


# 9 -------------------------------------------------------------------------

def test_criterion_9_oracle_agreement():
    disagreements = []
    combos = 0
    for name, F in builtin_handles().items():
        symbols = sorted(set(F.input_alphabet) | set(F.output_alphabet))
        for t in all_tiers(symbols):
            for i, j in itertools.product((1, 2, 3), repeat=2):
                p = LocalityParams(i, j)
                combos += 1
                if check_tiosl(F, p, t).member != brute_check_tiosl(F, p, t, max_len=6).member:
                    disagreements.append((name, "tiosl", i, j, sorted(t.on_tier)))
        for t in action_tiers(F):
            for k in (1, 2, 3):
                combos += 1
                if check_tssl(F, k, t).member != brute_check_tssl(F, k, t, max_len=6).member:
                    disagreements.append((name, "tssl", k, sorted(map(token_of, t.on_tier))))
    report(9, not disagreements, f"{combos} (builtin, class, params, tier) combinations, "
                                 f"{len(disagreements)} disagreements {disagreements[:5]}")


# 10 ------------------------------------------------------------------------

def test_criterion_10_machine_algebra():
    bms = machines.builtins()
    pool = list(bms.values()) + random_machines(100, seed=10, max_states=4, max_alpha=3)
    bad = []
    for n, T in enumerate(pool):
        ref = outputs_upto(T, 8)
        if outputs_upto(make_onward(T), 8) != ref:
            bad.append((n, "make_onward"))
        M = minimize(T)
        if outputs_upto(M, 8) != ref:
            bad.append((n, "minimize"))
        if not isomorphic(minimize(M), M):
            bad.append((n, "idempotence"))
        if not equivalent(T, T):
            bad.append((n, "reflexivity"))
    pairs = 0
    for (n1, T1), (n2, T2) in itertools.product(bms.items(), repeat=2):
        if set(T1.input_alphabet) != set(T2.input_alphabet):
            try:
                equivalent(T1, T2)
                bad.append((n1, n2, "no alphabet error"))
            except AlphabetMismatch:
                pass
            continue
        pairs += 1
        if equivalent(T1, T2) != (outputs_upto(T1, 10) == outputs_upto(T2, 10)):
            bad.append((n1, n2))
    report(10, not bad, f"{len(pool)} machines: onward/minimize preserve outputs to length 8, minimize idempotent, "
                        f"equivalence reflexive; {pairs} builtin pairs agree with length-10 comparison; {bad[:5]}")


# 11 ------------------------------------------------------------------------

def test_criterion_11_formats():
    bad = []
    for name, T in machines.builtins().items():
        if not equivalent(formats.parse(formats.serialize(T)), T):
            bad.append((name, "round trip"))
        graphs = pydot.graph_from_dot_data(formats.to_dot(T))
        if not graphs or graphs[0].get_type() != "digraph" or len(graphs[0].get_edges()) != len(T.delta):
            bad.append((name, "dot"))
    report(11, not bad, f"serialize/parse round trip and DOT export (one edge per transition) for all builtins; {bad}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
