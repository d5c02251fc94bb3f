"""Strings, tiers, actions, and the two string primitives (lcp and padded k-suffix).

Strings are tuples of opaque tokens. ``word("C V C")`` is the usual way to
write one down; the empty tuple is the empty string.
"""

import functools
import itertools
import os
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence, Tuple

from .errors import EmptyLcpSet, InvalidSymbol, ParseError, UnknownSymbol

#: Left word boundary. Never a member of a user alphabet.
LB = "⋉"
#: Printable stand-in for the empty string in human-readable output.
LAMBDA = "λ"

# ':' separates action halves, ',' ';' '(' ')' delimit structured state names,
# '#' starts a comment in the text formats.
RESERVED_CHARS = frozenset(":,;()#")

Str = Tuple[str, ...]


def check_symbol(token):
    """Return ``token`` if it is a legal alphabet symbol, else raise InvalidSymbol."""
    if not isinstance(token, str) or not token:
        raise InvalidSymbol(f"symbol must be a non-empty string, got {token!r}")
    if token == LB:
        raise InvalidSymbol(f"{LB!r} is the reserved boundary marker")
    if any(c.isspace() for c in token) or RESERVED_CHARS.intersection(token):
        raise InvalidSymbol(f"symbol {token!r} contains whitespace or a reserved character")
    return token


def alphabet(symbols):
    """Validate and freeze an alphabet. A string is split on whitespace."""
    if isinstance(symbols, str):
        symbols = symbols.split()
    return frozenset(check_symbol(s) for s in symbols)


def word(x) -> Str:
    """Coerce ``x`` to a string (tuple of tokens).

    A Python ``str`` is split on whitespace, so ``word("C V")`` is ``("C", "V")``
    and ``word("")`` is the empty string.
    """
    if isinstance(x, str):
        return tuple(x.split())
    return tuple(x)


def show(x) -> str:
    """Space-separated rendering; the empty string prints as ``λ``."""
    x = tuple(x)
    if not x:
        return LAMBDA
    return " ".join(token_of(s) for s in x)


def strings_upto(symbols, max_len):
    """Yield every string over ``symbols`` of length <= max_len in length-lex order."""
    symbols = sorted(symbols, key=token_of)
    for n in range(max_len + 1):
        yield from itertools.product(symbols, repeat=n)


def lcp(strings) -> Str:
    """Longest common prefix of a non-empty collection of strings."""
    strings = [tuple(s) for s in strings]
    if not strings:
        raise EmptyLcpSet("lcp of an empty set is undefined")
    first = strings[0]
    n = len(first)
    for s in strings[1:]:
        n = min(n, len(s))
        for i in range(n):
            if s[i] != first[i]:
                n = i
                break
        if n == 0:
            break
    return first[:n]


def ksuffix(x: Sequence, k: int) -> tuple:
    """Last ``k`` symbols of ``LB^k x``."""
    if k <= 0:
        return ()
    x = tuple(x)
    if len(x) >= k:
        return x[len(x) - k:]
    return (LB,) * (k - len(x)) + x


def strip_prefix(prefix, x):
    """Return the ``y`` with ``prefix + y == x``; ValueError if prefix is not a prefix."""
    prefix, x = tuple(prefix), tuple(x)
    if x[: len(prefix)] != prefix:
        raise ValueError(f"{show(prefix)} is not a prefix of {show(x)}")
    return x[len(prefix):]


@dataclass(frozen=True)
class Action:
    """One SFST step: a single input symbol paired with the output it emits."""

    input: str
    output: Str = ()

    def __post_init__(self):
        object.__setattr__(self, "output", tuple(self.output))

    @property
    def token(self):
        return f"{self.input}:{'.'.join(self.output)}"

    def __str__(self):
        return f"{self.input}:{'.'.join(self.output) if self.output else LAMBDA}"

    def __repr__(self):
        return f"Action({self.token!r})"


def token_of(item: Hashable) -> str:
    """Serialized token of a symbol, the boundary marker, or an action."""
    if isinstance(item, Action):
        return item.token
    return str(item)


def split_output(text, output_alphabet=None) -> Str:
    """Split the output half of an action token.

    Outputs are joined with '.', but symbols may themselves contain '.', so when
    the output alphabet is known the text is segmented against it and must
    segment in exactly one way.
    """
    if text == "":
        return ()
    if output_alphabet is None:
        return tuple(text.split("."))
    n = len(text)

    @functools.lru_cache(maxsize=None)
    def segment(i):
        # at most two segmentations of text[i:], enough to detect ambiguity
        found = []
        for sym in output_alphabet:
            if not text.startswith(sym, i):
                continue
            end = i + len(sym)
            if end == n:
                found.append((sym,))
            elif text[end] == "." and end + 1 < n:
                found.extend((sym,) + rest for rest in segment(end + 1))
            if len(found) > 1:
                break
        return found[:2]

    ways = segment(0)
    if len(ways) != 1:
        raise ParseError(f"cannot segment action output {text!r} unambiguously")
    return ways[0]


def parse_action(token, output_alphabet=None) -> Action:
    """Inverse of ``Action.token``: ``in:out1.out2``; ``V:`` is a deletion."""
    head, sep, tail = token.partition(":")
    if not sep or not head:
        raise ParseError(f"malformed action token {token!r}")
    return Action(head, split_output(tail, output_alphabet))


class Tier:
    """An erasing homomorphism, given by the subset of the alphabet kept on the tier.

    The alphabet may hold plain symbols or Actions.
    """

    __slots__ = ("alphabet", "on_tier")

    def __init__(self, alphabet: Iterable, on_tier: Iterable):
        alphabet = frozenset(alphabet)
        on_tier = frozenset(on_tier)
        stray = on_tier - alphabet
        if stray:
            raise UnknownSymbol(f"on-tier symbols not in the alphabet: {sorted(map(token_of, stray))}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "on_tier", on_tier)

    def __setattr__(self, name, value):
        raise AttributeError("Tier is immutable")

    @classmethod
    def full(cls, alphabet):
        alphabet = frozenset(alphabet)
        return cls(alphabet, alphabet)

    @classmethod
    def empty(cls, alphabet):
        return cls(alphabet, ())

    @classmethod
    def from_mask(cls, symbols, mask):
        """Tier whose on-tier set is picked by ``mask`` over token-sorted symbols."""
        ordered = sorted(symbols, key=token_of)
        return cls(ordered, [s for i, s in enumerate(ordered) if mask >> i & 1])

    def mask(self):
        ordered = sorted(self.alphabet, key=token_of)
        return sum(1 << i for i, s in enumerate(ordered) if s in self.on_tier)

    def __call__(self, x):
        return tier_apply(self, x)

    def __contains__(self, item):
        return item in self.on_tier

    def __eq__(self, other):
        if not isinstance(other, Tier):
            return NotImplemented
        return self.alphabet == other.alphabet and self.on_tier == other.on_tier

    def __hash__(self):
        return hash((self.alphabet, self.on_tier))

    def __repr__(self):
        on = ",".join(sorted(map(token_of, self.on_tier)))
        off = ",".join(sorted(map(token_of, self.alphabet - self.on_tier)))
        return f"Tier(on={{{on}}}, off={{{off}}})"


def tier_apply(t: Tier, x) -> tuple:
    """Delete the off-tier symbols of ``x``."""
    out = []
    for s in x:
        if s not in t.alphabet:
            raise UnknownSymbol(f"{token_of(s)!r} is not in the tier alphabet")
        if s in t.on_tier:
            out.append(s)
    return tuple(out)


def tiered_suffix(t: Tier, x, k) -> tuple:
    """``ksuffix(tier_apply(t, x), k)``."""
    return ksuffix(tier_apply(t, x), k)


def read_tier_file(path, alphabet_symbols, parse=None) -> Tier:
    """One on-tier token per line; blank lines and ``#`` comments ignored."""
    parse = parse or (lambda tok: tok)
    on = []
    with open(os.fspath(path), encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if len(line.split()) != 1:
                raise ParseError("expected one token per line", lineno)
            on.append(parse(line))
    return Tier(alphabet_symbols, on)
