"""Subsequential finite-state transducers.

A machine is total and deterministic: every (state, input symbol) pair has
exactly one transition, and every state carries a final output string.
States are any hashable values; canonical machines use tuples whose
components are boundary markers, symbols, or Actions.
"""

from collections import deque

from .core import LB, Action, check_symbol, lcp, show, strip_prefix, token_of
from .errors import AlphabetMismatch, NotTotal, SubregError, UnknownSymbol


class Sfst:
    """Immutable SFST ``<Q, Σ, Γ, q0, →, σ>``.

    ``transitions`` maps ``(state, symbol)`` to ``(target, output)`` and
    ``final_output`` maps each state to its final string. Missing entries
    raise NotTotal.
    """

    def __init__(self, states, input_alphabet, output_alphabet, start, transitions, final_output):
        states = tuple(dict.fromkeys(states))
        sigma = tuple(sorted({check_symbol(a) for a in input_alphabet}))
        gamma = tuple(sorted({check_symbol(b) for b in output_alphabet}))
        if start not in states:
            raise SubregError(f"start state {state_token(start)!r} is not a declared state")
        known = set(states)
        gamma_set = set(gamma)
        delta = {}
        for q in states:
            for a in sigma:
                try:
                    r, y = transitions[q, a]
                except KeyError:
                    raise NotTotal(f"no transition from {state_token(q)} on {a}") from None
                if r not in known:
                    raise SubregError(f"transition target {state_token(r)!r} is not a declared state")
                y = tuple(y)
                bad = [b for b in y if b not in gamma_set]
                if bad:
                    raise UnknownSymbol(f"output symbol {bad[0]!r} is not in the output alphabet")
                delta[q, a] = (r, y)
        extra = [key for key in transitions if key not in delta]
        if extra:
            q, a = extra[0]
            if q in known:
                raise UnknownSymbol(f"transition on undeclared input symbol {a!r}")
            raise SubregError(f"transition from undeclared state {state_token(q)!r}")
        finals = {}
        for q in states:
            try:
                y = tuple(final_output[q])
            except KeyError:
                raise NotTotal(f"no final output for state {state_token(q)}") from None
            bad = [b for b in y if b not in gamma_set]
            if bad:
                raise UnknownSymbol(f"final output symbol {bad[0]!r} is not in the output alphabet")
            finals[q] = y

        self.states = states
        self.input_alphabet = sigma
        self.output_alphabet = gamma
        self.start = start
        self.delta = delta
        self.final = finals

    def __repr__(self):
        return (f"<Sfst {len(self.states)} states, Σ={{{','.join(self.input_alphabet)}}}, "
                f"Γ={{{','.join(self.output_alphabet)}}}>")

    def replace(self, **changes):
        """Copy with some constructor arguments replaced."""
        args = dict(states=self.states, input_alphabet=self.input_alphabet,
                    output_alphabet=self.output_alphabet, start=self.start,
                    transitions=self.delta, final_output=self.final)
        args.update(changes)
        return Sfst(**args)

    def step(self, q, a):
        try:
            return self.delta[q, a]
        except KeyError:
            raise UnknownSymbol(f"{a!r} is not in the input alphabet") from None

    def walk(self, x, q=None):
        """Yield ``(state, symbol, target, output)`` along the run on ``x``."""
        q = self.start if q is None else q
        for a in x:
            r, y = self.step(q, a)
            yield q, a, r, y
            q = r

    def state_after(self, x, q=None):
        q = self.start if q is None else q
        for a in x:
            q = self.step(q, a)[0]
        return q

    def emitted(self, x, q=None):
        """Concatenated transition outputs along the run, without the final output."""
        out = []
        for _, _, _, y in self.walk(x, q):
            out.extend(y)
        return tuple(out)

    def __call__(self, x):
        return transduce(self, x)

    def edges(self):
        """All ``(state, symbol, target, output)`` in state then symbol order."""
        for q in self.states:
            for a in self.input_alphabet:
                r, y = self.delta[q, a]
                yield q, a, r, y

    def incoming(self, q):
        return [(p, a) for p, a, r, _ in self.edges() if r == q]

    def is_structured(self):
        return all(isinstance(q, tuple) for q in self.states)


def state_token(q):
    """Serialized name of a state.

    Opaque names are used as is. Tuples of components become ``(c1,c2)``;
    a pair of tuples (a TIOSL state) becomes ``(a1,a2;b1)``.
    """
    if not isinstance(q, tuple):
        return str(q)
    if len(q) == 2 and all(isinstance(part, tuple) for part in q):
        return "(" + ";".join(",".join(map(token_of, part)) for part in q) + ")"
    return "(" + ",".join(map(token_of, q)) + ")"


def transduce(T: Sfst, x):
    """``f(x) = y σ(q)`` where the run on ``x`` emits ``y`` and ends in ``q``."""
    out = []
    q = T.start
    for a in x:
        q, y = T.step(q, a)
        out.extend(y)
    out.extend(T.final[q])
    return tuple(out)


def run_trace(T: Sfst, x):
    """Transition labels of the run on ``x`` as a tuple of Actions."""
    return tuple(Action(a, y) for _, a, _, y in T.walk(x))


def actions_of_machine(T: Sfst, reachable_only=False):
    """Set of transition labels ``x:y`` of the machine."""
    if reachable_only:
        T = trim(T)
    return frozenset(Action(a, y) for _, a, _, y in T.edges())


def onward_violation(T: Sfst):
    """First non-start state (declaration order) whose outputs share a nonempty prefix.

    Returns ``(state, common_prefix)`` or None.
    """
    for q in T.states:
        if q == T.start:
            continue
        p = lcp([T.final[q]] + [T.delta[q, a][1] for a in T.input_alphabet])
        if p:
            return q, p
    return None


def is_onward(T: Sfst) -> bool:
    return onward_violation(T) is None


def _pending_prefixes(T):
    # For every state, the lcp of all outputs producible from it (final output
    # included). Iterates downward from σ; each round can only shorten an entry.
    pending = {q: T.final[q] for q in T.states}
    changed = True
    while changed:
        changed = False
        for q in T.states:
            cand = [T.final[q]] + [y + pending[r] for r, y in (T.delta[q, a] for a in T.input_alphabet)]
            p = lcp(cand)
            if p != pending[q]:
                pending[q] = p
                changed = True
    return pending


def _fresh_name(T, base):
    name = f"{state_token(base)}'"
    taken = {state_token(q) for q in T.states}
    while name in taken:
        name += "'"
    return name


def make_onward(T: Sfst) -> Sfst:
    """Push output as early as possible without emitting before the first symbol.

    The start state is exempt, so ``f(λ)`` stays ``σ(q0)``. If the start state is
    re-entered and has a pending prefix, it is split into a fresh initial copy
    and an ordinary state.
    """
    pending = _pending_prefixes(T)
    start = T.start
    states = list(T.states)
    split = bool(pending[start]) and bool(T.incoming(start))
    if split:
        start = _fresh_name(T, T.start)
        states = [start] + states

    trans, finals = {}, {}
    for q in T.states:
        exempt = q == T.start and not split
        head = () if exempt else pending[q]
        for a in T.input_alphabet:
            r, y = T.delta[q, a]
            trans[q, a] = (r, strip_prefix(head, y + pending[r]))
        finals[q] = strip_prefix(head, T.final[q])
    if split:
        for a in T.input_alphabet:
            r, y = T.delta[T.start, a]
            trans[start, a] = (r, y + pending[r])
        finals[start] = T.final[T.start]
    return T.replace(states=states, start=start, transitions=trans, final_output=finals)


def reachable_states(T: Sfst):
    """States reachable from the start, in BFS order (symbols in token order)."""
    seen = {T.start: None}
    queue = deque([T.start])
    while queue:
        q = queue.popleft()
        for a in T.input_alphabet:
            r = T.delta[q, a][0]
            if r not in seen:
                seen[r] = None
                queue.append(r)
    return list(seen)


def trim(T: Sfst) -> Sfst:
    """Drop unreachable states."""
    keep = reachable_states(T)
    if len(keep) == len(T.states):
        return T
    keep_set = set(keep)
    order = [q for q in T.states if q in keep_set]
    return T.replace(
        states=order,
        transitions={(q, a): v for (q, a), v in T.delta.items() if q in keep_set},
        final_output={q: T.final[q] for q in order},
    )


def access_strings(T: Sfst):
    """Shortest, then token-least, input string reaching each reachable state."""
    access = {T.start: ()}
    queue = deque([T.start])
    while queue:
        q = queue.popleft()
        for a in T.input_alphabet:
            r = T.delta[q, a][0]
            if r not in access:
                access[r] = access[q] + (a,)
                queue.append(r)
    return access


def renumber(T: Sfst, prefix="q") -> Sfst:
    """Rename reachable states ``q0, q1, ...`` in BFS order; drops unreachable ones."""
    order = reachable_states(T)
    names = {q: f"{prefix}{i}" for i, q in enumerate(order)}
    return Sfst(
        states=[names[q] for q in order],
        input_alphabet=T.input_alphabet,
        output_alphabet=T.output_alphabet,
        start=names[T.start],
        transitions={(names[q], a): (names[r], y) for (q, a), (r, y) in T.delta.items() if q in names},
        final_output={names[q]: T.final[q] for q in order},
    )


def minimize(T: Sfst) -> Sfst:
    """Minimal onward machine for the function ``T`` computes.

    Onwardize, trim, then refine blocks on (final output, per-symbol output,
    per-symbol successor block) until stable. States are renamed ``q0, q1, ...``
    in BFS order from the start, so equal functions give identical machines.
    """
    T = trim(make_onward(T))
    sigma = T.input_alphabet
    block = {}
    signatures = {}
    for q in T.states:
        sig = (T.final[q],) + tuple(T.delta[q, a][1] for a in sigma)
        block[q] = signatures.setdefault(sig, len(signatures))
    n_blocks = len(signatures)
    while True:
        signatures = {}
        refined = {}
        for q in T.states:
            sig = (block[q],) + tuple(block[T.delta[q, a][0]] for a in sigma)
            refined[q] = signatures.setdefault(sig, len(signatures))
        block = refined
        if len(signatures) == n_blocks:
            break
        n_blocks = len(signatures)

    rep = {}
    for q in T.states:
        rep.setdefault(block[q], q)
    quotient = Sfst(
        states=list(rep),
        input_alphabet=sigma,
        output_alphabet=T.output_alphabet,
        start=block[T.start],
        transitions={(b, a): (block[T.delta[q, a][0]], T.delta[q, a][1]) for b, q in rep.items() for a in sigma},
        final_output={b: T.final[q] for b, q in rep.items()},
    )
    return renumber(quotient)


def isomorphic(T1: Sfst, T2: Sfst) -> bool:
    """Label-preserving bijection between the reachable parts, fixing the start states."""
    if T1.input_alphabet != T2.input_alphabet:
        return False
    mapping = {T1.start: T2.start}
    used = {T2.start}
    queue = deque([T1.start])
    while queue:
        p = queue.popleft()
        q = mapping[p]
        if T1.final[p] != T2.final[q]:
            return False
        for a in T1.input_alphabet:
            r1, y1 = T1.delta[p, a]
            r2, y2 = T2.delta[q, a]
            if y1 != y2:
                return False
            if r1 in mapping:
                if mapping[r1] != r2:
                    return False
            else:
                if r2 in used:
                    return False
                mapping[r1] = r2
                used.add(r2)
                queue.append(r1)
    return len(mapping) == len(reachable_states(T2))


def equivalent(T1: Sfst, T2: Sfst) -> bool:
    """True iff both machines compute the same function on all of Σ*."""
    if set(T1.input_alphabet) != set(T2.input_alphabet):
        raise AlphabetMismatch(
            f"input alphabets differ: {{{','.join(T1.input_alphabet)}}} vs {{{','.join(T2.input_alphabet)}}}")
    return isomorphic(minimize(T1), minimize(T2))


def distinguishing_suffix(T1: Sfst, p, T2: Sfst = None, q=None, max_len=64):
    """Shortest (then token-least) ``y`` on which the functions read from ``p`` in
    ``T1`` and from ``q`` in ``T2`` differ, or None if none exists within ``max_len``.

    Searches pairs of states together with the not-yet-matched tail of
    whichever side has emitted more.
    """
    T2 = T1 if T2 is None else T2
    start = (p, q, (), ())
    seen = {start}
    queue = deque([(start, ())])
    sigma = T1.input_alphabet
    while queue:
        (s1, s2, tail1, tail2), y = queue.popleft()
        if tail1 + T1.final[s1] != tail2 + T2.final[s2]:
            return y
        if len(y) >= max_len:
            continue
        for a in sigma:
            r1, o1 = T1.delta[s1, a]
            r2, o2 = T2.delta[s2, a]
            u1, u2 = tail1 + o1, tail2 + o2
            c = len(lcp([u1, u2]))
            node = (r1, r2, u1[c:], u2[c:])
            if node[2] and node[3]:
                # outputs already diverged; every completion differs
                return y + (a,)
            if node not in seen:
                seen.add(node)
                queue.append((node, y + (a,)))
    return None


def outputs_upto(T: Sfst, max_len, symbols=None):
    """``{x: transduce(T, x)}`` for every ``x`` of length <= max_len (shared-prefix DFS)."""
    symbols = sorted(T.input_alphabet if symbols is None else symbols)
    result = {}
    stack = [((), T.start, ())]
    while stack:
        x, q, emitted = stack.pop()
        result[x] = emitted + T.final[q]
        if len(x) < max_len:
            for a in symbols:
                r, y = T.delta[q, a]
                stack.append((x + (a,), r, emitted + y))
    return result


def random_sfst(rng, n_states, input_alphabet, output_alphabet, max_output=2, max_final=2, p_empty=0.3):
    """Random total machine with states ``s0..s{n-1}`` (``s0`` is the start).

    ``rng`` is a ``random.Random``. Each output is empty with probability
    ``p_empty``, else of length 1..max_output.
    """
    states = [f"s{i}" for i in range(n_states)]
    gamma = sorted(output_alphabet)

    def out(limit):
        if limit == 0 or rng.random() < p_empty:
            return ()
        return tuple(rng.choice(gamma) for _ in range(rng.randint(1, limit)))

    trans = {(q, a): (rng.choice(states), out(max_output)) for q in states for a in sorted(input_alphabet)}
    finals = {q: out(max_final) for q in states}
    return Sfst(states, input_alphabet, output_alphabet, states[0], trans, finals)


def describe(T: Sfst) -> str:
    """Multi-line human-readable listing."""
    lines = [repr(T)]
    for q in T.states:
        mark = "->" if q == T.start else "  "
        lines.append(f"{mark} {state_token(q)}  σ={show(T.final[q])}")
        for a in T.input_alphabet:
            r, y = T.delta[q, a]
            lines.append(f"     {a}:{show(y) if y else ''} -> {state_token(r)}")
    return "\n".join(lines)


__all__ = [
    "LB", "Sfst", "state_token", "transduce", "run_trace", "actions_of_machine", "is_onward",
    "onward_violation", "make_onward", "trim", "reachable_states", "access_strings", "renumber",
    "minimize", "isomorphic", "equivalent", "distinguishing_suffix", "outputs_upto", "random_sfst",
    "describe",
]
