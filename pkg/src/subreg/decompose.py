"""Factor any subsequential function as a 2-TOSL function followed by a homomorphism."""

from dataclasses import dataclass

from .core import check_symbol, show
from .errors import UnknownSymbol
from .sfst import Sfst, minimize

SIGMA_TAG = "SIGMA"


class Homomorphism:
    """Concatenation-preserving string map given by one image per source symbol."""

    def __init__(self, mapping):
        self.mapping = {a: tuple(y) for a, y in mapping.items()}

    def __call__(self, x):
        return hom_apply(self, x)

    def __eq__(self, other):
        return isinstance(other, Homomorphism) and self.mapping == other.mapping

    def __repr__(self):
        return f"Homomorphism({len(self.mapping)} symbols)"

    @property
    def source_alphabet(self):
        return frozenset(self.mapping)


def hom_apply(h: Homomorphism, x):
    out = []
    for a in x:
        try:
            out.extend(h.mapping[a])
        except KeyError:
            raise UnknownSymbol(f"{a!r} is not in the homomorphism's source alphabet") from None
    return tuple(out)


@dataclass(frozen=True)
class PairSymbol:
    """Output symbol of the tagging factor: a state (or SIGMA) plus the output it stands for."""

    tag: str
    payload: tuple

    @property
    def token(self):
        return check_symbol(f"{self.tag}|{'.'.join(self.payload)}")

    def __str__(self):
        return f"⟨{self.tag}, {show(self.payload)}⟩"


def decompose(T: Sfst):
    """Return ``(g, h)`` with ``h(g(x)) == T(x)`` for every input ``x``.

    ``g`` runs the minimal machine for ``T`` and, on each step into state
    ``q`` emitting ``y``, outputs the single symbol ``q|y``; its final output
    is ``SIGMA|σ(q)``. ``h`` erases the tags.
    """
    M = minimize(T)
    pairs = {}

    def pair(tag, payload):
        sym = PairSymbol(tag, tuple(payload))
        pairs.setdefault(sym.token, sym)
        return sym.token

    trans = {(q, a): (r, (pair(r, y),)) for (q, a), (r, y) in M.delta.items()}
    finals = {q: (pair(SIGMA_TAG, M.final[q]),) for q in M.states}
    g = Sfst(M.states, M.input_alphabet, pairs, M.start, trans, finals)
    h = Homomorphism({tok: sym.payload for tok, sym in pairs.items()})
    return g, h


__all__ = ["Homomorphism", "hom_apply", "PairSymbol", "decompose", "SIGMA_TAG"]
