"""Line-oriented text formats and DOT export.

Machine files::

    INPUT C V
    OUTPUT C V
    STATE q0 q1
    START q0
    FINAL q0 :
    TRANS q0 C -> q0 : C
    TRANS q0 V -> q1 :

Tokens are whitespace-separated, ``#`` starts a comment, and an empty list
after ``:`` is the empty string.
"""

import os

from .core import LB, parse_action, token_of
from .errors import NotTotal, ParseError, SubregError, UnknownSymbol
from .sfst import Sfst, state_token


def _parse_component(token, output_alphabet):
    if token == LB:
        return LB
    if ":" in token:
        return parse_action(token, output_alphabet)
    return token


def parse_state(token, output_alphabet=None):
    """Inverse of ``state_token``: ``(a,b)`` and ``(a;b)`` become tuples."""
    if not (token.startswith("(") and token.endswith(")")):
        return token
    inner = token[1:-1]

    def parts(text):
        return tuple(_parse_component(c, output_alphabet) for c in text.split(",")) if text else ()

    if ";" in inner:
        left, sep, right = inner.partition(";")
        if ";" in right:
            raise ParseError(f"malformed state name {token!r}")
        return (parts(left), parts(right))
    return parts(inner)


def parse(text) -> Sfst:
    """Parse the machine text format."""
    sigma = gamma = None
    state_names = []
    start = None
    finals = {}
    trans = {}

    def need(cond, msg, lineno):
        if not cond:
            raise ParseError(msg, lineno)

    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if toks:
            rows.append((lineno, toks))

    for lineno, toks in rows:
        kw = toks[0]
        if kw == "INPUT":
            need(sigma is None, "duplicate INPUT", lineno)
            sigma = toks[1:]
        elif kw == "OUTPUT":
            need(gamma is None, "duplicate OUTPUT", lineno)
            gamma = toks[1:]
        elif kw == "STATE":
            state_names.extend(toks[1:])
    need(sigma is not None, "missing INPUT line", None)
    need(gamma is not None, "missing OUTPUT line", None)
    gamma_set = set(gamma)
    sigma_set = set(sigma)
    states = {}
    for name in state_names:
        states[name] = parse_state(name, gamma)

    def state(name, lineno):
        if name not in states:
            raise ParseError(f"undeclared state {name!r}", lineno)
        return states[name]

    def outputs(toks, lineno):
        for b in toks:
            if b not in gamma_set:
                raise UnknownSymbol(f"line {lineno}: output symbol {b!r} not declared in OUTPUT")
        return tuple(toks)

    for lineno, toks in rows:
        kw = toks[0]
        if kw in ("INPUT", "OUTPUT", "STATE"):
            continue
        if kw == "START":
            need(len(toks) == 2, "START takes one state", lineno)
            need(start is None, "duplicate START", lineno)
            start = state(toks[1], lineno)
        elif kw == "FINAL":
            need(len(toks) >= 3 and toks[2] == ":", "expected FINAL state : out...", lineno)
            q = state(toks[1], lineno)
            need(q not in finals, f"duplicate FINAL for {toks[1]}", lineno)
            finals[q] = outputs(toks[3:], lineno)
        elif kw == "TRANS":
            need(len(toks) >= 6 and toks[3] == "->" and toks[5] == ":",
                 "expected TRANS state sym -> state : out...", lineno)
            q = state(toks[1], lineno)
            a = toks[2]
            if a not in sigma_set:
                raise UnknownSymbol(f"line {lineno}: input symbol {a!r} not declared in INPUT")
            need((q, a) not in trans, f"duplicate TRANS for {toks[1]} {a}", lineno)
            trans[q, a] = (state(toks[4], lineno), outputs(toks[6:], lineno))
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno)
    need(start is not None, "missing START line", None)
    for name, q in states.items():
        if q not in finals:
            raise NotTotal(f"state {name} has no FINAL row")
        for a in sigma:
            if (q, a) not in trans:
                raise NotTotal(f"state {name} has no TRANS row for {a}")
    return Sfst(list(states.values()), sigma, gamma, start, trans, finals)


def serialize(T: Sfst) -> str:
    """Machine text format; ``parse(serialize(T))`` rebuilds ``T``."""
    lines = [
        "INPUT " + " ".join(T.input_alphabet),
        "OUTPUT " + " ".join(T.output_alphabet),
        "STATE " + " ".join(state_token(q) for q in T.states),
        "START " + state_token(T.start),
    ]
    for q in T.states:
        lines.append(" ".join(["FINAL", state_token(q), ":", *T.final[q]]))
    for q, a, r, y in T.edges():
        lines.append(" ".join(["TRANS", state_token(q), a, "->", state_token(r), ":", *y]))
    return "\n".join(lines) + "\n"


def load(path) -> Sfst:
    with open(os.fspath(path), encoding="utf-8") as fh:
        return parse(fh.read())


def save(T: Sfst, path):
    with open(os.fspath(path), "w", encoding="utf-8") as fh:
        fh.write(serialize(T))


def _dot_quote(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(T: Sfst, name="sfst") -> str:
    """Graphviz digraph: one node per state, one edge per transition labelled ``in:out``.

    The start state is a double circle; nonempty final outputs appear as
    ``:out`` node annotations.
    """
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=LR;"]
    for q in T.states:
        shape = "doublecircle" if q == T.start else "circle"
        attrs = [f"shape={shape}", f"label={_dot_quote(state_token(q))}"]
        if T.final[q]:
            attrs.append(f"xlabel={_dot_quote(':' + ' '.join(T.final[q]))}")
        lines.append(f"  {_dot_quote(state_token(q))} [{', '.join(attrs)}];")
    for q, a, r, y in T.edges():
        label = f"{a}:{' '.join(y)}"
        lines.append(f"  {_dot_quote(state_token(q))} -> {_dot_quote(state_token(r))} [label={_dot_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_hom(text):
    """``MAP sym : out...`` lines into a ``{symbol: output}`` dict."""
    mapping = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] != "MAP" or len(toks) < 3 or toks[2] != ":":
            raise ParseError("expected MAP sym : out...", lineno)
        if toks[1] in mapping:
            raise ParseError(f"duplicate MAP for {toks[1]}", lineno)
        mapping[toks[1]] = tuple(toks[3:])
    return mapping


def serialize_hom(mapping) -> str:
    return "".join(" ".join(["MAP", a, ":", *mapping[a]]) + "\n" for a in sorted(mapping))


def parse_segment_classes(text):
    """``CLASS segment : C|V`` lines into a ``{segment: class}`` dict.

    ``@`` is also accepted as a class, for surface forms with reduced vowels.
    """
    classes = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] != "CLASS" or len(toks) != 4 or toks[2] != ":":
            raise ParseError("expected CLASS segment : C|V", lineno)
        if toks[3] not in ("C", "V", "@"):
            raise ParseError(f"class must be C, V, or @, got {toks[3]!r}", lineno)
        classes[toks[1]] = toks[3]
    return classes


def parse_word_list(text):
    """One word per line, segments whitespace-separated."""
    return [tuple(line.split()) for line in text.splitlines() if line.split() and not line.lstrip().startswith("#")]


def parse_tier_tokens(tokens, alphabet_symbols, output_alphabet=None):
    """Resolve tier tokens against an alphabet of symbols or Actions."""
    by_token = {token_of(s): s for s in alphabet_symbols}
    on = []
    for tok in tokens:
        if tok in by_token:
            on.append(by_token[tok])
            continue
        if ":" in tok:
            try:
                act = parse_action(tok, output_alphabet)
            except ParseError:
                act = None
            if act is not None and act in set(alphabet_symbols):
                on.append(act)
                continue
        raise UnknownSymbol(f"tier token {tok!r} is not in the alphabet "
                            f"{{{', '.join(sorted(by_token))}}}")
    return on


__all__ = [
    "parse", "serialize", "load", "save", "to_dot", "parse_state", "parse_hom", "serialize_hom",
    "parse_segment_classes", "parse_word_list", "parse_tier_tokens", "SubregError",
]
