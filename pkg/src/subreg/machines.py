"""The four reference machines, direct formulas for the two rhythmic processes,
and segment-class transliteration for word lists."""

from importlib import resources

from .core import LB, Action, word
from .errors import UnknownSymbol, UnmappedSegment
from .formats import parse_segment_classes, parse_word_list
from .sfst import Sfst

NAMES = ("reduction", "syncope", "tiosl-not-tssl", "nononward-tssl")


def reduction() -> Sfst:
    """Rhythmic reduction: odd-numbered vowels become @.

    States are 1,2-TIOSL pairs (empty input part, last output vowel) on the
    tier that keeps V and @.
    """
    start, schwa, vowel = ((), (LB,)), ((), ("@",)), ((), ("V",))
    trans = {
        (start, "C"): (start, ("C",)),
        (start, "V"): (schwa, ("@",)),
        (schwa, "C"): (schwa, ("C",)),
        (schwa, "V"): (vowel, ("V",)),
        (vowel, "C"): (vowel, ("C",)),
        (vowel, "V"): (schwa, ("@",)),
    }
    return Sfst([start, schwa, vowel], "CV", ["C", "V", "@"], start, trans,
                {q: () for q in (start, schwa, vowel)})


def syncope() -> Sfst:
    """Rhythmic syncope: odd-numbered vowels are deleted.

    States record the most recent vowel action, 2-TSSL style.
    """
    start = (LB,)
    deleted = (Action("V", ()),)
    kept = (Action("V", ("V",)),)
    trans = {
        (start, "C"): (start, ("C",)),
        (start, "V"): (deleted, ()),
        (deleted, "C"): (deleted, ("C",)),
        (deleted, "V"): (kept, ("V",)),
        (kept, "C"): (kept, ("C",)),
        (kept, "V"): (deleted, ()),
    }
    return Sfst([start, deleted, kept], "CV", "CV", start, trans, {q: () for q in (start, deleted, kept)})


def tiosl_not_tssl() -> Sfst:
    """Copies the first symbol, deletes later a's, and rewrites each later b as
    c when the previous input symbol equals the first one, d otherwise.

    States are (last input, first input) pairs, matching a 2,2-TIOSL shape on
    the tier {a, b}.
    """
    def st(x, y):
        return ((x,), (y,))

    q0, aa, bb, ab, ba = st(LB, LB), st("a", "a"), st("b", "b"), st("a", "b"), st("b", "a")
    trans = {
        (q0, "a"): (aa, ("a",)),
        (q0, "b"): (bb, ("b",)),
        (aa, "a"): (aa, ()),
        (aa, "b"): (ba, ("c",)),
        (ba, "a"): (aa, ()),
        (ba, "b"): (ba, ("d",)),
        (bb, "a"): (ab, ()),
        (bb, "b"): (bb, ("c",)),
        (ab, "a"): (ab, ()),
        (ab, "b"): (bb, ("d",)),
    }
    states = [q0, aa, bb, ab, ba]
    return Sfst(states, "ab", "abcd", q0, trans, {q: () for q in states})


def nononward_tssl() -> Sfst:
    """Computes ``x y -> x y x`` for a first symbol ``x`` without being onward.

    On a leading b it alternates between emitting nothing and emitting two
    symbols, which lets a 2-TSSL shape remember the first symbol.
    """
    def st(a, out):
        return (Action(a, tuple(out)),)

    q0 = (LB,)
    a_a, b_b = st("a", "a"), st("b", "b")
    b_, a_, b_bb, b_ab, a_ba, a_aa = st("b", ""), st("a", ""), st("b", "bb"), st("b", "ab"), st("a", "ba"), st("a", "aa")
    trans = {
        (q0, "a"): (a_a, ("a",)),
        (q0, "b"): (b_, ()),
        (a_a, "a"): (a_a, ("a",)),
        (a_a, "b"): (b_b, ("b",)),
        (b_b, "a"): (a_a, ("a",)),
        (b_b, "b"): (b_b, ("b",)),
        (b_, "a"): (a_ba, ("b", "a")),
        (b_, "b"): (b_bb, ("b", "b")),
        (a_, "a"): (a_aa, ("a", "a")),
        (a_, "b"): (b_ab, ("a", "b")),
    }
    for q in (a_aa, a_ba, b_ab, b_bb):
        trans[q, "a"] = (a_, ())
        trans[q, "b"] = (b_, ())
    finals = {
        q0: (), a_a: ("a",), b_b: ("a",), b_: ("b", "b"), a_: ("a", "b"),
        b_bb: ("b",), b_ab: ("b",), a_ba: ("b",), a_aa: ("b",),
    }
    states = [q0, a_a, b_b, b_, a_aa, a_ba, b_ab, b_bb, a_]
    return Sfst(states, "ab", "ab", q0, trans, finals)


_BUILDERS = {
    "reduction": reduction,
    "syncope": syncope,
    "tiosl-not-tssl": tiosl_not_tssl,
    "nononward-tssl": nononward_tssl,
}


def builtin(name) -> Sfst:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(NAMES)}") from None


def builtins():
    return {name: builder() for name, builder in _BUILDERS.items()}


def _check_cv(x):
    for s in x:
        if s not in ("C", "V"):
            raise UnknownSymbol(f"{s!r} is not C or V")


def rs_direct(x):
    """Delete the 1st, 3rd, 5th, ... vowel; keep consonants."""
    x = word(x)
    _check_cv(x)
    out, vowels = [], 0
    for s in x:
        if s == "V":
            vowels += 1
            if vowels % 2:
                continue
        out.append(s)
    return tuple(out)


def reduction_direct(x):
    """Replace the 1st, 3rd, 5th, ... vowel with @."""
    x = word(x)
    _check_cv(x)
    out, vowels = [], 0
    for s in x:
        if s == "V":
            vowels += 1
            out.append("@" if vowels % 2 else "V")
        else:
            out.append(s)
    return tuple(out)


def xyx_direct(x):
    """Append the first symbol; λ maps to λ."""
    x = word(x)
    return x + x[:1]


class SegmentClasses:
    """Map from surface segments to the classes C, V, and @."""

    def __init__(self, mapping):
        for seg, cls in mapping.items():
            if cls not in ("C", "V", "@"):
                raise ValueError(f"segment {seg!r} has class {cls!r}; expected C, V, or @")
        self.mapping = dict(mapping)

    @classmethod
    def from_text(cls, text):
        return cls(parse_segment_classes(text))

    @classmethod
    def vowels(cls, segments, vowels):
        vowels = set(vowels)
        return cls({s: "V" if s in vowels else "C" for s in segments})

    def covers(self, words):
        return all(s in self.mapping for w in words for s in w)


def transliterate(classes: SegmentClasses, segments):
    """Replace each segment by its class; the length is preserved."""
    out = []
    for s in word(segments):
        try:
            out.append(classes.mapping[s])
        except KeyError:
            raise UnmappedSegment(f"segment {s!r} has no class") from None
    return tuple(out)


def load_data(name):
    """Read a bundled data file (``ojibwe.words``, ``macushi.words``, ``segments.classes``)."""
    return resources.files("subreg.data").joinpath(name).read_text(encoding="utf-8")


def language_data(lang):
    """``(underlying, surface)`` word pairs and segment classes for a bundled language."""
    words = parse_word_list(load_data(f"{lang}.words"))
    classes = SegmentClasses.from_text(load_data("segments.classes"))
    underlying, surface = words[0::2], words[1::2]
    return list(zip(underlying, surface)), classes


__all__ = [
    "NAMES", "reduction", "syncope", "tiosl_not_tssl", "nononward_tssl", "builtin", "builtins",
    "rs_direct", "reduction_direct", "xyx_direct", "SegmentClasses", "transliterate", "load_data",
    "language_data",
]
