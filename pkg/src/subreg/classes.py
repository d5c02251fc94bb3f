"""Membership deciders and canonical machines for the tier-based local function classes.

Two families:

* TIOSL (and its TISL/TOSL special cases): translations are fixed by the
  tiered (i-1)-suffix of the input together with the tiered (j-1)-suffix of
  the output emitted so far.
* TSSL: translations are fixed by the tiered (k-1)-suffix of the run, the
  sequence of actions the minimal onward machine performs.

The exact deciders explore the product of the minimal machine with the
relevant suffix memory. Because the machine is onward, emitted output is the
function's top, and because it is minimal, distinct states mean distinct
translations. A collision (one key, two states) is a violation.
"""

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .core import LB, Action, Tier, ksuffix, show, strings_upto, strip_prefix, tier_apply, token_of
from .errors import AlphabetMismatch, NotInClass, SearchTooLarge, ShapeUnverifiable
from .sfst import Sfst, actions_of_machine, distinguishing_suffix
from .views import actions_of_function, brute_top, f_top, handle, run_of, translation_apply


@dataclass(frozen=True)
class LocalityParams:
    """Window sizes: ``i`` for input and ``j`` for output (TIOSL), ``k`` for runs (TSSL)."""

    i: int = 1
    j: int = 1
    k: int = 1

    def __post_init__(self):
        for name in ("i", "j", "k"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"locality parameter {name} must be an integer >= 1, got {value!r}")

    @classmethod
    def tisl(cls, k):
        return cls(i=k, j=1)

    @classmethod
    def tosl(cls, k):
        return cls(i=1, j=k)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a membership check.

    A negative verdict carries two inputs ``witness_w`` and ``witness_x`` with
    the same suffix key, and a ``continuation`` on which their translations
    differ.
    """

    member: bool
    witness_w: Optional[Tuple[str, ...]] = None
    witness_x: Optional[Tuple[str, ...]] = None
    continuation: Optional[Tuple[str, ...]] = None
    key: Optional[tuple] = None
    exhaustive: bool = True

    def __bool__(self):
        return self.member

    def line(self):
        """Machine-readable one-line form."""
        parts = [f"VERDICT member={str(self.member).lower()}"]
        if not self.member:
            parts.append(f'witness_w="{" ".join(self.witness_w)}"')
            parts.append(f'witness_x="{" ".join(self.witness_x)}"')
            parts.append(f'continuation="{" ".join(self.continuation)}"')
        return " ".join(parts)

    def describe(self):
        if self.member:
            return "member" if self.exhaustive else "no violation found within the bound"
        return (f"not a member: w = {show(self.witness_w)} and x = {show(self.witness_x)} share "
                f"the suffix key {_show_key(self.key)} but their translations differ on "
                f"y = {show(self.continuation)}")


def _show_key(key):
    if key and all(isinstance(part, tuple) for part in key) and len(key) == 2:
        return "⟨" + ", ".join(show(part) for part in key) + "⟩"
    return show(key)


def _drop_lb(seq):
    return tuple(s for s in seq if s != LB)


def _tiosl_alphabet(F):
    return frozenset(F.input_alphabet) | frozenset(F.output_alphabet)


def _require_tier(t, expected, what):
    if t.alphabet != frozenset(expected):
        raise AlphabetMismatch(
            f"tier alphabet {{{', '.join(sorted(map(token_of, t.alphabet)))}}} does not match {what} "
            f"{{{', '.join(sorted(map(token_of, expected)))}}}")


def _tiosl_stepper(p, t):
    def step(key, a, y):
        left, right = key
        return (ksuffix(_drop_lb(left) + tier_apply(t, (a,)), p.i - 1),
                ksuffix(_drop_lb(right) + tier_apply(t, y), p.j - 1))
    start = ((LB,) * (p.i - 1), (LB,) * (p.j - 1))
    return start, step


def _tssl_stepper(k, t):
    def step(key, a, y):
        return ksuffix(_drop_lb(key) + tier_apply(t, (Action(a, y),)), k - 1)
    return (LB,) * (k - 1), step


def _scan(canon, start_key, step, stop_at_conflict=True):
    """BFS the product of ``canon`` with a suffix memory.

    Returns ``(owner, access, conflict)``: ``owner`` maps each key to the canon
    state first seen with it, ``access`` maps product nodes to their shortest
    token-least input, and ``conflict`` is the first ``(key, node_a, node_b)``
    pairing one key with two states, or None.
    """
    root = (canon.start, start_key)
    owner = {start_key: root}
    access = {root: ()}
    queue = deque([root])
    conflict = None
    while queue:
        node = queue.popleft()
        q, key = node
        for a in canon.input_alphabet:
            r, y = canon.delta[q, a]
            nxt = (r, step(key, a, y))
            if nxt in access:
                continue
            access[nxt] = access[node] + (a,)
            first = owner.setdefault(nxt[1], nxt)
            if first[0] != r and conflict is None:
                conflict = (nxt[1], first, nxt)
                if stop_at_conflict:
                    return owner, access, conflict
            queue.append(nxt)
    return owner, access, conflict


def _conflict_verdict(canon, access, conflict):
    key, first, second = conflict
    y = distinguishing_suffix(canon, first[0], canon, second[0])
    return Verdict(False, access[first], access[second], y, key)


def check_tiosl(F, p: LocalityParams, t: Tier) -> Verdict:
    """Exact decision: is ``F`` i,j-input-output strictly local on tier ``t``?

    ``t`` must be a tier on the union of the input and output alphabets.
    """
    F = handle(F)
    canon = F.canon
    _require_tier(t, _tiosl_alphabet(F), "the input and output alphabets")
    start, step = _tiosl_stepper(p, t)
    _, access, conflict = _scan(canon, start, step)
    if conflict is None:
        return Verdict(True)
    return _conflict_verdict(canon, access, conflict)


def check_tisl(F, k, t):
    return check_tiosl(F, LocalityParams.tisl(k), t)


def check_tosl(F, k, t):
    return check_tiosl(F, LocalityParams.tosl(k), t)


def check_tssl(F, k: int, t: Tier) -> Verdict:
    """Exact decision: is ``F`` k-synchronized strictly local on tier ``t``?

    ``t`` must be a tier on exactly the function's action alphabet.
    """
    F = handle(F)
    canon = F.canon
    LocalityParams(k=k)
    _require_tier(t, actions_of_function(F), "the action alphabet")
    start, step = _tssl_stepper(k, t)
    _, access, conflict = _scan(canon, start, step)
    if conflict is None:
        return Verdict(True)
    return _conflict_verdict(canon, access, conflict)


def replay(F, verdict: Verdict, t: Tier, params=None, k=None) -> bool:
    """Re-check a negative verdict with the view-level definitions.

    Pass ``params`` for a TIOSL verdict or ``k`` for a TSSL one. True iff the
    two witnesses have equal tiered suffixes and differ on the continuation.
    """
    F = handle(F)
    w, x, y = verdict.witness_w, verdict.witness_x, verdict.continuation
    if verdict.member or w is None:
        return False
    if params is not None:
        same = (ksuffix(tier_apply(t, w), params.i - 1) == ksuffix(tier_apply(t, x), params.i - 1)
                and ksuffix(tier_apply(t, f_top(F, w)), params.j - 1)
                == ksuffix(tier_apply(t, f_top(F, x)), params.j - 1))
    else:
        same = ksuffix(tier_apply(t, run_of(F, w)), k - 1) == ksuffix(tier_apply(t, run_of(F, x)), k - 1)
    return same and translation_apply(F, w, y) != translation_apply(F, x, y)


# Bounded enumeration oracles. They treat F as a black box and recompute tops,
# runs, and translations from raw outputs, independently of the product scan.

class _BruteTable:
    def __init__(self, F, max_len, cont_len, ext_len):
        sigma = F.input_alphabet
        cache = {}

        def f(x):
            if x not in cache:
                cache[x] = F(x)
            return cache[x]

        self.words = list(strings_upto(sigma, max_len))
        self.conts = list(strings_upto(sigma, cont_len))
        self.top = {w: brute_top(f, w, sigma, ext_len) for w in self.words}
        self.sig = {w: tuple(strip_prefix(self.top[w], f(w + y)) for y in self.conts) for w in self.words}
        self.run = {}
        for w in self.words:
            self.run[w] = tuple(Action(w[n], strip_prefix(self.top[w[:n]], self.top[w[:n + 1]]))
                                for n in range(len(w)))


def _brute_table(F, max_len, cont_len, ext_len):
    cache = F.__dict__.setdefault("_brute_tables", {})
    key = (max_len, cont_len, ext_len)
    if key not in cache:
        cache[key] = _BruteTable(F, max_len, cont_len, ext_len)
    return cache[key]


def _brute_verdict(table, key_of):
    seen = {}
    for w in table.words:
        key = key_of(w)
        if key not in seen:
            seen[key] = w
            continue
        v = seen[key]
        if table.sig[v] != table.sig[w]:
            y = next(c for c, s1, s2 in zip(table.conts, table.sig[v], table.sig[w]) if s1 != s2)
            return Verdict(False, v, w, y, key, exhaustive=False)
    return Verdict(True, exhaustive=False)


def brute_check_tiosl(F, p: LocalityParams, t: Tier, max_len=6, cont_len=None, ext_len=None) -> Verdict:
    """Enumerate all inputs up to ``max_len`` and compare translations on
    continuations up to ``cont_len`` (default ``max_len``).

    A negative answer is sound; a positive one only means no violation within
    the bounds.
    """
    F = handle(F)
    cont_len = max_len if cont_len is None else cont_len
    ext_len = max_len if ext_len is None else ext_len
    table = _brute_table(F, max_len, cont_len, ext_len)

    def key_of(w):
        return (ksuffix(tier_apply(t, w), p.i - 1), ksuffix(tier_apply(t, table.top[w]), p.j - 1))
    return _brute_verdict(table, key_of)


def brute_check_tssl(F, k, t: Tier, max_len=6, cont_len=None, ext_len=None) -> Verdict:
    """Bounded counterpart of ``check_tssl``; same soundness caveat as the TIOSL version."""
    F = handle(F)
    cont_len = max_len if cont_len is None else cont_len
    ext_len = max_len if ext_len is None else ext_len
    table = _brute_table(F, max_len, cont_len, ext_len)

    def key_of(w):
        return ksuffix(tier_apply(t, table.run[w]), k - 1)
    return _brute_verdict(table, key_of)


# Canonical machines.

def _assemble(F, owner, step, start_key, extra_keys, filler):
    canon = F.canon
    states = [start_key] + [key for key in owner if key != start_key]
    trans, finals = {}, {}
    for key in states:
        q = owner[key][0]
        for a in canon.input_alphabet:
            y = canon.delta[q, a][1]
            trans[key, a] = (step(key, a, y), y)
        finals[key] = canon.final[q]
    reached = set(states)
    for key in extra_keys:
        if key in reached:
            continue
        states.append(key)
        for a in canon.input_alphabet:
            y = filler(a)
            trans[key, a] = (step(key, a, y), y)
        finals[key] = ()
    return Sfst(states, canon.input_alphabet, canon.output_alphabet, start_key, trans, finals)


def _not_in_class(F, access, conflict, label):
    verdict = _conflict_verdict(F.canon, access, conflict)
    raise NotInClass(f"function is not {label}: {verdict.describe()}", verdict)


def build_canonical_tssl(F, k, t: Tier, full=False) -> Sfst:
    """Onward k-TSSL machine for ``F`` whose states are tiered action suffixes.

    Each state's transitions and final output are read off any input reaching
    it; a second input that reaches the same suffix with a different
    translation raises NotInClass. By default only reachable states are
    built; ``full=True`` adds the rest of ``({LB} ∪ A_f)^(k-1)``, each
    completed with a shape-consistent action and empty final output.
    """
    F = handle(F)
    acts = actions_of_function(F)
    _require_tier(t, acts, "the action alphabet")
    start, step = _tssl_stepper(k, t)
    owner, access, conflict = _scan(F.canon, start, step)
    if conflict is not None:
        _not_in_class(F, access, conflict, f"{k}-TSSL on this tier")
    extra = ()
    if full:
        comps = [LB] + sorted(acts, key=token_of)
        extra = itertools.product(comps, repeat=k - 1)
    fallback = {}
    for act in sorted(acts, key=token_of):
        fallback.setdefault(act.input, act.output)
    return _assemble(F, owner, step, start, extra, lambda a: fallback[a])


def build_canonical_tiosl(F, p: LocalityParams, t: Tier, full=False) -> Sfst:
    """Onward i,j-TIOSL machine for ``F`` with states ``(input suffix, output suffix)``.

    Same construction and error discipline as ``build_canonical_tssl``;
    ``full=True`` completes unreachable states with empty outputs.
    """
    F = handle(F)
    _require_tier(t, _tiosl_alphabet(F), "the input and output alphabets")
    start, step = _tiosl_stepper(p, t)
    owner, access, conflict = _scan(F.canon, start, step)
    if conflict is not None:
        _not_in_class(F, access, conflict, f"{p.i},{p.j}-TIOSL on this tier")
    extra = ()
    if full:
        ins = itertools.product([LB] + sorted(F.input_alphabet), repeat=p.i - 1)
        outs = list(itertools.product([LB] + sorted(F.output_alphabet), repeat=p.j - 1))
        extra = [(a, b) for a in ins for b in outs]
    return _assemble(F, owner, step, start, extra, lambda a: ())


# Syntactic shape checks.

def _component_ok(c, allowed):
    return c == LB or c in allowed


def shape_check_tssl(T: Sfst, k, t: Tier, complete=False) -> bool:
    """Does ``T`` have the k-TSSL shape on ``t``?

    States must be (k-1)-tuples over ``{LB} ∪ A_T``, the start ``LB^(k-1)``,
    and every transition ``q --x:y--> r`` must satisfy
    ``r = suff^(k-1)(t(q (x:y)))``. With ``complete=True`` the state set must
    also be all of ``({LB} ∪ A_T)^(k-1)``.
    """
    if not T.is_structured():
        raise ShapeUnverifiable("states do not carry structured tuple names")
    acts = actions_of_machine(T)
    missing = acts - t.alphabet
    if missing:
        raise AlphabetMismatch(f"tier does not cover the actions {sorted(map(token_of, missing))}")
    if T.start != (LB,) * (k - 1):
        return False
    for q in T.states:
        if len(q) != k - 1 or not all(_component_ok(c, acts) for c in q):
            return False
    if complete and len(T.states) != (len(acts) + 1) ** (k - 1):
        return False
    _, step = _tssl_stepper(k, t)
    return all(r == step(q, a, y) for q, a, r, y in T.edges())


def shape_check_tiosl(T: Sfst, p: LocalityParams, t: Tier, complete=False) -> bool:
    """Does ``T`` have the i,j-TIOSL shape on ``t``?

    States must be pairs ``(c, d)`` of an (i-1)-tuple over ``{LB} ∪ Σ`` and a
    (j-1)-tuple over ``{LB} ∪ Γ``, with ``c = suff^(i-1)(t(a x))`` and
    ``d = suff^(j-1)(t(b y))`` on every transition ``(a, b) --x:y--> (c, d)``.
    """
    if not T.is_structured() or not all(
            len(q) == 2 and all(isinstance(part, tuple) for part in q) for q in T.states):
        raise ShapeUnverifiable("states are not (input suffix, output suffix) pairs")
    need = frozenset(T.input_alphabet) | frozenset(T.output_alphabet)
    missing = need - t.alphabet
    if missing:
        raise AlphabetMismatch(f"tier does not cover {sorted(missing)}")
    start, step = _tiosl_stepper(p, t)
    if T.start != start:
        return False
    sigma, gamma = set(T.input_alphabet), set(T.output_alphabet)
    for left, right in T.states:
        if len(left) != p.i - 1 or len(right) != p.j - 1:
            return False
        if not all(_component_ok(c, sigma) for c in left) or not all(_component_ok(c, gamma) for c in right):
            return False
    if complete and len(T.states) != (len(sigma) + 1) ** (p.i - 1) * (len(gamma) + 1) ** (p.j - 1):
        return False
    return all(r == step(q, a, y) for q, a, r, y in T.edges())


# Tier lifting from symbols to actions.

def lift_tier_input(t: Tier, actions) -> Tier:
    """Action tier keeping ``x:y`` exactly when ``x`` is on ``t``."""
    actions = frozenset(actions)
    return Tier(actions, [act for act in actions if act.input in t.on_tier])


def lift_tier_output(t: Tier, actions) -> Tier:
    """Action tier keeping ``x:y`` exactly when ``t(y)`` is nonempty."""
    actions = frozenset(actions)
    return Tier(actions, [act for act in actions if any(b in t.on_tier for b in act.output)])


# Exhaustive tier search.

MAX_SEARCH_ALPHABET = 16


@dataclass
class TierSearchReport:
    """Per-(tier, params) verdicts, in tier-bitmask then parameter order."""

    cls: str
    alphabet: tuple
    results: list = field(default_factory=list)

    def members(self):
        return [(tier, params) for tier, params, verdict in self.results if verdict.member]

    def member_tiers(self):
        found = {}
        for tier, params in self.members():
            found.setdefault(tier, []).append(params)
        return found

    def summary(self):
        tiers = self.member_tiers()
        if not tiers:
            return "no tier"
        parts = []
        for tier, params in tiers.items():
            on = ",".join(sorted(map(token_of, tier.on_tier))) or "∅"
            parts.append(f"{{{on}}} at {', '.join(map(_show_params, params))}")
        return "member under " + "; ".join(parts)


def _show_params(p):
    if isinstance(p, LocalityParams):
        return f"i={p.i},j={p.j}"
    return f"k={p}"


def search_tiers(F, cls, max_k=3, max_i=None, max_j=None, ks=None) -> TierSearchReport:
    """Check every tier over the relevant alphabet at every parameter setting up to the bounds.

    ``cls`` is ``"tssl"`` (tiers over the action alphabet, ``k`` in ``ks`` or
    ``1..max_k``) or ``"tiosl"`` (tiers over Σ ∪ Γ, ``i <= max_i`` and
    ``j <= max_j``, both defaulting to ``max_k``).
    """
    F = handle(F)
    if cls == "tssl":
        symbols = sorted(actions_of_function(F), key=token_of)
        grid = list(ks) if ks is not None else list(range(1, max_k + 1))
        check = check_tssl
    elif cls == "tiosl":
        symbols = sorted(_tiosl_alphabet(F))
        max_i = max_k if max_i is None else max_i
        max_j = max_k if max_j is None else max_j
        grid = [LocalityParams(i, j) for i in range(1, max_i + 1) for j in range(1, max_j + 1)]
        check = check_tiosl
    else:
        raise ValueError(f"unknown class {cls!r}; expected 'tssl' or 'tiosl'")
    if len(symbols) > MAX_SEARCH_ALPHABET:
        raise SearchTooLarge(f"{len(symbols)} tier symbols exceed the search limit of {MAX_SEARCH_ALPHABET}")
    report = TierSearchReport(cls, tuple(symbols))
    for mask in range(1 << len(symbols)):
        tier = Tier.from_mask(symbols, mask)
        for params in grid:
            report.results.append((tier, params, check(F, params, tier)))
    return report


__all__ = [
    "LocalityParams", "Verdict", "check_tiosl", "check_tisl", "check_tosl", "check_tssl", "replay",
    "brute_check_tiosl", "brute_check_tssl", "build_canonical_tssl", "build_canonical_tiosl",
    "shape_check_tssl", "shape_check_tiosl", "lift_tier_input", "lift_tier_output",
    "TierSearchReport", "search_tiers", "MAX_SEARCH_ALPHABET",
]
